use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Mat;
use super::rat::{denominator_lcm, format_rat, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients and every other
/// polynomial has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    /// `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// `t - a`.
    pub fn linear_root(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplicity of `t = 0` as a root. Zero polynomial gives `None`.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `t^d * p(1/t)`; requires `d >= deg p`.
    pub fn reversed(&self, d: usize) -> Self {
        debug_assert!(self.degree().map_or(true, |e| e <= d));
        let mut out = vec![Rat::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[d - i] = c.clone();
        }
        Self::new(out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * b;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; debug builds assert the remainder is
    /// zero.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g` and
    /// `g` the monic gcd.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u2 = &u0 - &(&q * &u1);
            let v2 = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
            }
            None => (r0, u0, v0),
        }
    }

    /// Integer coefficients of the primitive multiple with positive leading
    /// coefficient. Empty for the zero polynomial.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Newton interpolation through `(xs[i], ys[i])`; the nodes must be
    /// distinct.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rat> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut out = Self::zero();
        for i in (0..n).rev() {
            out = &(&out * &Self::linear_root(&xs[i])) + &Self::constant(dd[i].clone());
        }
        out
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = match i {
                0 => format_rat(&mag),
                _ => {
                    let pw = if i == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{i}")
                    };
                    if mag.is_one() {
                        pw
                    } else {
                        format!("{}*{pw}", format_rat(&mag))
                    }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Monic `p / gcd(p, p')`, whose degree is the number of distinct complex
/// roots of `p`.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_part"));
    }
    let g = p.gcd(&p.derivative());
    Ok(p.exact_div(&g).monic())
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n: BigUint = n.magnitude().clone();
    let mut divisors = vec![BigUint::one()];
    for (prime, mult) in num_prime::nt_funcs::factorize(n) {
        let mut next = Vec::with_capacity(divisors.len() * (mult + 1));
        for d in &divisors {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..mult {
                pw *= &prime;
                next.push(pw.clone());
            }
        }
        divisors = next;
    }
    divisors
        .into_iter()
        .map(|d| BigInt::from_biguint(Sign::Plus, d))
        .collect()
}

/// All rational roots of `p`, each listed once, in ascending order.
///
/// Candidates `±u/v` come from the divisors of the constant and leading
/// coefficients of the primitive integer form of the squarefree part.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("rational_roots"));
    }
    let sqf = squarefree_part(p)?;
    let mut roots = Vec::new();
    let zero_order = sqf.order_at_zero().unwrap_or(0);
    let a: Vec<BigInt> = sqf.primitive_integer_coeffs()[zero_order..].to_vec();
    if zero_order > 0 {
        roots.push(Rat::zero());
    }
    if a.len() >= 2 {
        let deg = a.len() - 1;
        let vanishes = |u: &BigInt, v: &BigInt| {
            // sum a_i u^i v^(deg-i)
            let mut acc = BigInt::zero();
            let mut upow = BigInt::one();
            let mut vpows = vec![BigInt::one(); deg + 1];
            for i in 1..=deg {
                vpows[i] = &vpows[i - 1] * v;
            }
            for (i, c) in a.iter().enumerate() {
                acc += c * &upow * &vpows[deg - i];
                upow *= u;
            }
            acc.is_zero()
        };
        let us = positive_divisors(&a[0]);
        let vs = positive_divisors(&a[deg]);
        for u in &us {
            for v in &vs {
                if !u.gcd(v).is_one() {
                    continue;
                }
                for cand in [u.clone(), -u.clone()] {
                    if vanishes(&cand, v) {
                        roots.push(Rat::new(cand, v.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Sylvester resultant of `p` (coefficients in the top rows) and `q`.
///
/// The resultant of a nonzero polynomial with the zero polynomial is zero.
/// Degrees are the true degrees, so a vanishing leading coefficient never
/// occurs; the value is zero exactly when `p` and `q` share a complex root.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rat> {
    match (p.degree(), q.degree()) {
        (None, None) => Err(Error::ZeroPolynomial("resultant")),
        (None, _) | (_, None) => Ok(Rat::zero()),
        (Some(m), Some(n)) => Ok(sylvester(p.coeffs(), q.coeffs(), m, n).det()),
    }
}

/// Sylvester matrix with formal degrees `m >= deg p`, `n >= deg q`:
/// `n` shifted rows of `p` then `m` shifted rows of `q`, coefficients in
/// descending order.
pub(crate) fn sylvester<T: Clone + Zero>(
    p: &[T],
    q: &[T],
    m: usize,
    n: usize,
) -> Mat<T> {
    let size = m + n;
    let mut data = vec![T::zero(); size * size];
    let coeff = |c: &[T], i: usize| c.get(i).cloned().unwrap_or_else(T::zero);
    for r in 0..n {
        for j in 0..=m {
            data[r * size + r + j] = coeff(p, m - j);
        }
    }
    for r in 0..m {
        for j in 0..=n {
            data[(n + r) * size + r + j] = coeff(q, n - j);
        }
    }
    Mat::from_vec(size, size, data)
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}
