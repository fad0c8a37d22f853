use crate::error::{Error, Result};

/// Generic `dim Osc^k` of the rational normal surface scroll `S(r1, r2)`,
/// `1 <= r1 <= r2`.
///
/// `2k` while `k <= r1 + 1`, then `k + r1 + 1` until the larger curve
/// stops contributing at `k = r2`, and `r1 + r2 + 1` afterwards. Written
/// as a rank count, this is `min(k+1, r2+1) + min(k, r1+1) - 1`: the top
/// block sees the `k`-jet of the larger curve, the lower block the
/// `(k-1)`-jet of the smaller one.
pub fn rns_osc_dim_formula(r1: usize, r2: usize, k: usize) -> Result<usize> {
    if r1 == 0 || r1 > r2 {
        return Err(Error::InvalidParameter(format!("need 1 <= r1 <= r2, got ({r1}, {r2})")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("the order must be at least 1".into()));
    }
    Ok((k + 1).min(r2 + 1) + k.min(r1 + 1) - 1)
}
