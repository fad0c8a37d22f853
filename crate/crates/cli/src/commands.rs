//! Subcommand implementations. Each returns a finished report; errors
//! carry the exit code they map to.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use osculate::constructions::{scenario, scenario_ids, Scenario, ScenarioParams};
use osculate::curvekit::{
    check_embedding, inflectional_locus, osc_dim, osc_subspace, project, symbolic_jet_matrix, Chart, CurvePoint,
    FlexLocus, LocusMode,
};
use osculate::discriminant::{degree_via_oracle, discr_component, has_curve_flexes, Scrollness};
use osculate::error::Error;
use osculate::exactmath::{format_rat, generic_rank, parse_rat};
use osculate::records::{CurveRecord, ScrollRecord, SubspaceRecord};
use osculate::scrollkit::{
    flex_components, generic_osc_dim, in_expected_locus, is_flex, scroll_osc_dim, verify_paper_properties,
    ComponentKind, DecomposableScroll, FlexComponent, ScrollPoint, Verdict, VerifyOptions,
};
use serde::de::DeserializeOwned;

use crate::report::{Report, Status};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotEmbedded(_) | Error::Inconsistent(_) | Error::Sampling(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_record<T: DeserializeOwned>(path: &Path) -> CliResult<(T, Vec<u8>)> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok((value, bytes))
}

fn default_label(path: &Path) -> String {
    path.file_stem().map_or_else(|| "curve".into(), |s| s.to_string_lossy().into_owned())
}

/// One-based index set, as shown to users.
fn show_set(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
}

fn show_points(ps: &[CurvePoint]) -> String {
    ps.iter().map(CurvePoint::to_string).collect::<Vec<_>>().join(", ")
}

/// Accepts `t=<rat>`, `s=<rat>`, `inf` or a bare rational.
pub fn parse_parameter(text: &str) -> CliResult<CurvePoint> {
    CurvePoint::parse(text)
        .or_else(|e| parse_rat(text.trim()).map(CurvePoint::affine).map_err(|_| e))
        .map_err(CliError::from)
}

fn describe_locus(loc: &FlexLocus) -> String {
    match loc.mode {
        LocusMode::Empty => "empty".into(),
        LocusMode::WholeCurve => "whole curve".into(),
        LocusMode::Finite => {
            let mut s = format!("{} point(s)", loc.distinct_count);
            if !loc.rational_points.is_empty() {
                s.push_str(&format!(": {}", show_points(&loc.rational_points)));
            }
            let irrational = loc.distinct_count - loc.rational_points.len();
            if irrational > 0 {
                s.push_str(&format!(" (+{irrational} irrational)"));
            }
            s
        }
    }
}

fn locus_records(report: &mut Report, subject: &str, loc: &FlexLocus) {
    let op = format!("flexes k={}", loc.order);
    report.info(subject, &op, describe_locus(loc));
    if let Some(f) = &loc.defining_form {
        report.info(subject, &format!("{op} defining form"), f.to_string());
    }
}

pub fn curve_analyze(path: &Path) -> CliResult<Report> {
    let (rec, bytes) = read_record::<CurveRecord>(path)?;
    let c = rec.to_parametrization(&default_label(path))?;
    let mut report = Report::new("curve analyze", &bytes);
    let who = c.label().to_string();
    report.info(&who, "parametrization", c.to_string());
    report.info(&who, "ambient dimension", c.ambient_dim().to_string());
    report.info(&who, "degree", c.degree().to_string());
    let emb = check_embedding(&c);
    report.check(&who, "nondegenerate", emb.nondegenerate.to_string(), "embedding", emb.nondegenerate);
    let ram = if emb.unramified { "unramified".into() } else { describe_locus(&emb.ramification) };
    report.check(&who, "immersion", ram, "embedding", emb.unramified);
    match emb.injective {
        Some(ok) => {
            let v = if ok {
                "injective".to_string()
            } else {
                let pairs: Vec<String> = emb.node_pairs.iter().map(|(a, b)| format!("{a}~{b}")).collect();
                format!("nodes [{}]", pairs.join(", "))
            };
            report.check(&who, "injectivity", v, "embedding", ok);
        }
        None if !emb.unramified => report.info(&who, "injectivity", "not checked: the curve is ramified"),
        None => report.info(&who, "injectivity", "not checked: degree above the node search limit"),
    }
    report.check(&who, "embedding", emb.summary(), "embedding", emb.passed());
    for k in 1..=c.ambient_dim() {
        let g = generic_rank(&symbolic_jet_matrix(&c, k, Chart::Affine));
        report.info(&who, &format!("generic osc dim k={k}"), (g.rank - 1).to_string());
    }
    if emb.passed() {
        for k in 2..=c.ambient_dim() {
            locus_records(&mut report, &who, &inflectional_locus(&c, k));
        }
    }
    Ok(report)
}

pub fn curve_flexes(path: &Path, k: usize) -> CliResult<Report> {
    let (rec, bytes) = read_record::<CurveRecord>(path)?;
    let c = rec.to_curve(&default_label(path))?;
    if k == 0 {
        return Err(CliError::input("--k must be at least 1"));
    }
    let mut report = Report::new(format!("curve flexes --k {k}"), &bytes);
    locus_records(&mut report, c.label(), &inflectional_locus(&c, k));
    Ok(report)
}

pub fn curve_osc(path: &Path, k: usize, t: &str) -> CliResult<Report> {
    let (rec, bytes) = read_record::<CurveRecord>(path)?;
    let c = rec.to_curve(&default_label(path))?;
    let p = parse_parameter(t)?;
    let mut report = Report::new(format!("curve osc --k {k} --t {t}"), &bytes);
    let who = format!("{} at {p}", c.label());
    let d = osc_dim(&c, k, &p);
    report.info(&who, &format!("osc dim k={k}"), d.to_string());
    report.check(&who, "expected dimension", format!("{d} vs {}", k.min(c.ambient_dim())), "uninflected", d == k.min(c.ambient_dim()));
    let basis = osc_subspace(&c, k, &p);
    for (i, row) in basis.basis().to_rows().iter().enumerate() {
        let coords: Vec<String> = row.iter().map(format_rat).collect();
        report.info(&who, &format!("basis vector {}", i + 1), format!("({})", coords.join(":")));
    }
    Ok(report)
}

pub fn curve_project(path: &Path, center: &Path, output: Option<&Path>) -> CliResult<Report> {
    let (rec, mut bytes) = read_record::<CurveRecord>(path)?;
    let (crec, cbytes) = read_record::<SubspaceRecord>(center)?;
    bytes.push(0);
    bytes.extend(cbytes);
    let c = rec.to_curve(&default_label(path))?;
    let z = crec.to_subspace()?;
    let mut report = Report::new("curve project", &bytes);
    let who = c.label().to_string();
    report.info(&who, "center dimension", z.dim().to_string());
    let projected = match project(&c, &z) {
        Ok(p) => p,
        Err(Error::NotEmbedded(msg)) => {
            report.check(&who, "projection embeds", msg, "embedding", false);
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    report.check(&who, "projection embeds", "embedding verified", "embedding", true);
    report.info(&who, "projected curve", projected.to_string());
    let pwho = projected.label().to_string();
    for k in 2..=projected.ambient_dim() {
        locus_records(&mut report, &pwho, &inflectional_locus(&projected, k));
    }
    if let Some(out) = output {
        let mut text = serde_json::to_string_pretty(&CurveRecord::from_curve(&projected)).expect("record serializes");
        text.push('\n');
        std::fs::write(out, text).map_err(|e| CliError::input(format!("cannot write {}: {e}", out.display())))?;
        report.info(&pwho, "written", out.display().to_string());
    }
    Ok(report)
}

fn read_scroll(path: &Path) -> CliResult<(DecomposableScroll, Vec<u8>)> {
    let (rec, bytes) = read_record::<ScrollRecord>(path)?;
    Ok((rec.to_scroll()?, bytes))
}

pub fn scroll_osc(path: &Path, k: usize, point: &str) -> CliResult<Report> {
    let (sc, bytes) = read_scroll(path)?;
    let x = ScrollPoint::parse(point)?;
    if x.fiber.len() != sc.n() {
        return Err(CliError::input(format!("point {point} needs {} fiber coordinates", sc.n())));
    }
    let mut report = Report::new(format!("scroll osc --k {k} --point {point}"), &bytes);
    let who = format!("{} at {x}", sc.label());
    let d = scroll_osc_dim(&sc, k, &x)?;
    let g = generic_osc_dim(&sc, k).dim;
    let bound = (sc.n() * k).min(sc.ambient_dim());
    report.info(&who, &format!("osc dim k={k}"), d.to_string());
    report.info(sc.label(), &format!("generic osc dim k={k}"), g.to_string());
    report.check(&who, "upper bound min(nk, N)", format!("{d} <= {bound}"), "upper-bound", d <= bound);
    report.info(&who, "flex (below generic)", is_flex(&sc, k, &x)?.to_string());
    report.info(&who, "inflected (below nk)", in_expected_locus(&sc, k, &x)?.to_string());
    Ok(report)
}

fn describe_component(c: &FlexComponent) -> String {
    match (c.kind, &c.base) {
        (ComponentKind::SegreSubscroll, _) => format!("segre subscroll S={}", show_set(&c.indices)),
        (ComponentKind::Subfiber, Some(p)) => format!("subfiber over {p} S={}", show_set(&c.indices)),
        (ComponentKind::Subfiber, None) => format!("subfiber S={}", show_set(&c.indices)),
    }
}

pub fn scroll_flexes(path: &Path) -> CliResult<Report> {
    let (sc, bytes) = read_scroll(path)?;
    let mut report = Report::new("scroll flexes", &bytes);
    let who = sc.label().to_string();
    let r = flex_components(&sc);
    if r.whole_scroll {
        report.info(&who, "flex components", "whole scroll (all generators are lines)");
        return Ok(report);
    }
    if !r.has_flexes() {
        report.info(&who, "flex components", "empty");
    }
    for c in &r.components {
        report.info(&who, "flex component", describe_component(c));
    }
    for s in &r.symbolic {
        report.info(
            &who,
            "flex component",
            format!("{} irrational subfibers from curve {}: {}", s.count, s.curve + 1, s.defining_form),
        );
    }
    Ok(report)
}

pub fn scroll_verify(path: &Path, budget: usize, seed: u64, max_order: usize) -> CliResult<Report> {
    let (sc, bytes) = read_scroll(path)?;
    let opts = VerifyOptions { sample_budget: budget, seed, max_order };
    let v = verify_paper_properties(&sc, &opts)?;
    let mut report = Report::new(format!("scroll verify --budget {budget} --max-order {max_order}"), &bytes);
    report.seed = Some(seed);
    report.info(&v.scroll, "base points", v.base_points.len().to_string());
    for s in &v.statements {
        let status = match s.verdict() {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Vacuous => Status::Info,
        };
        let mut value = format!("{} instances, {} failures", s.instances, s.failures.len());
        if let Some(first) = s.failures.first() {
            value.push_str(&format!("; first: {first}"));
        }
        report.push(&v.scroll, s.id, value, &format!("check:{}", s.id), status);
        for note in &s.notes {
            report.push(&v.scroll, s.id, note.clone(), "note", Status::Info);
        }
    }
    Ok(report)
}

pub fn scroll_discr(path: &Path, trials: usize, seed: u64) -> CliResult<Report> {
    let (sc, bytes) = read_scroll(path)?;
    let mut report = Report::new(format!("scroll discr --trials {trials}"), &bytes);
    report.seed = Some(seed);
    let r = flex_components(&sc);
    let who = sc.label().to_string();
    if r.whole_scroll {
        report.info(&who, "discriminant", "not defined: every point is a flex");
        return Ok(report);
    }
    if r.components.is_empty() {
        report.info(&who, "discriminant", "no flex components");
    }
    for (i, s) in r.symbolic.iter().enumerate() {
        report.info(
            &who,
            "discriminant",
            format!("{} linear components over irrational flexes of curve {} ({})", s.count, s.curve + 1, i + 1),
        );
    }
    for g in &r.components {
        let d = discr_component(&sc, g)?;
        let subject = format!("{who} {}", describe_component(g));
        report.info(&subject, "dimension", d.dim.to_string());
        report.info(&subject, "degree", d.degree.to_string());
        report.info(&subject, "span dimension", d.span_dim.to_string());
        report.info(&subject, "linear", d.linear.to_string());
        if let Some(c) = &d.classification {
            let scrollness = match c.scrollness {
                Scrollness::Scroll => "scroll",
                Scrollness::NotScroll => "not a scroll",
                Scrollness::NotDetermined => "not determined",
            };
            report.info(&subject, "scrollness", scrollness);
            report.info(&subject, "rational normal scroll", c.rational_normal.to_string());
            report.check(
                &subject,
                "degree vs minimal degree",
                format!("{} >= {}", c.degree, c.minimal_degree),
                "degree-bound",
                c.degree >= c.minimal_degree && (c.degree == c.minimal_degree) == c.rational_normal,
            );
            if trials > 0 {
                match degree_via_oracle(&sc, g, trials, seed) {
                    Ok(o) => {
                        let ties = o.curves.iter().filter(|c| c.tie).count();
                        let mut v = format!("{} (formula {})", o.degree, d.degree);
                        if ties > 0 {
                            v.push_str(&format!(", {ties} tied modes"));
                        }
                        report.check(&subject, "degree via ramification oracle", v, "oracle-degree", o.degree == d.degree);
                    }
                    Err(Error::Inconsistent(msg)) => {
                        report.check(&subject, "degree via ramification oracle", msg, "oracle-degree", false)
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            if has_curve_flexes(&sc) {
                report.info(&subject, "note", "partly covered by subfiber components");
            }
        }
    }
    Ok(report)
}

/// Splits `--key value`, `--key=value` and `key=value` tokens.
pub fn parse_scenario_tokens(tokens: &[String]) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut it = tokens.iter();
    while let Some(tok) = it.next() {
        if let Some(flag) = tok.strip_prefix("--") {
            if let Some((k, v)) = flag.split_once('=') {
                out.push((k.to_string(), v.to_string()));
            } else {
                let v = it.next().ok_or_else(|| CliError::input(format!("--{flag} needs a value")))?;
                out.push((flag.to_string(), v.clone()));
            }
        } else if let Some((k, v)) = tok.split_once('=') {
            out.push((k.to_string(), v.to_string()));
        } else {
            return Err(CliError::input(format!("expected --key value or key=value, got '{tok}'")));
        }
    }
    Ok(out)
}

fn scenario_records(report: &mut Report, s: &Scenario) -> CliResult<()> {
    let subject = format!("{} [{}]", s.id, s.param_summary());
    for (e, o) in s.run()? {
        report.push(
            &subject,
            &format!("{} {}", e.check.operation(), e.check.arguments()),
            format!("{} (expected {})", o.observed, e.check.expected()),
            &e.provenance.to_string(),
            Status::from_bool(o.passed),
        );
    }
    Ok(())
}

pub fn examples_run(id: &str, pairs: &[(String, String)], seed: u64) -> CliResult<Report> {
    let joined: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let params = ScenarioParams::parse_pairs(joined.iter().map(String::as_str), seed)?;
    let s = scenario(id, &params)?;
    let command = format!("examples run {id} {}", s.param_summary());
    let mut report = Report::new(command.clone(), command.as_bytes());
    report.seed = Some(seed);
    scenario_records(&mut report, &s)?;
    Ok(report)
}

pub fn examples_all(seed: u64) -> CliResult<Report> {
    let command = format!("examples all seed={seed}");
    let mut report = Report::new(command.clone(), command.as_bytes());
    report.seed = Some(seed);
    for (id, _) in scenario_ids() {
        let s = scenario(id, &ScenarioParams::with_seed(seed))?;
        scenario_records(&mut report, &s)?;
    }
    Ok(report)
}

pub fn examples_list() -> Report {
    let mut report = Report::new("examples list", b"");
    for (id, description) in scenario_ids() {
        report.info(id, "scenario", *description);
    }
    report
}

