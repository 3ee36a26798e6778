//! `log Γ` and `f(x) = Γ(x+1)/x^x` for real arguments.

use crate::error::{Error, Result};

/// The value of `(8/7) f(4/3)^(3/4)` as quoted in the literature.
pub const PROP_097_CONSTANT: f64 = 0.976986;

/// Relative slack allowed when comparing float-evaluated bounds.
pub const PROP_097_TOLERANCE: f64 = 1e-9;

const SHIFT_TO: f64 = 10.0;

/// Stirling series coefficients `B_2k / (2k (2k-1))`.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// `log Γ(x)` for `x > 0`, via the Stirling series after shifting the
/// argument up to at least 10.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Parameter(format!("log gamma needs a positive argument, got {x}")));
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < SHIFT_TO {
        shift += z.ln();
        z += 1.0;
    }
    let z2 = z * z;
    let mut series = 0.0;
    let mut zp = z;
    for c in STIRLING {
        series += c / zp;
        zp *= z2;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok((z - 0.5) * z.ln() - z + half_ln_2pi + series - shift)
}

/// `log f(x) = log Γ(x+1) - x log x` for `x > 0`.
pub fn log_f(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Parameter(format!("log f needs a positive argument, got {x}")));
    }
    Ok(ln_gamma(x + 1.0)? - x * x.ln())
}

/// `(8/7) f(4/3)^(3/4)`.
pub fn prop_097_constant() -> f64 {
    ((8.0f64 / 7.0).ln() + 0.75 * log_f(4.0 / 3.0).expect("positive argument")).exp()
}

/// `log (f(n/s)^s)`, the bound on `P` from log-concavity of `f`.
pub fn gamma_bound_ln(n: u64, s: u64) -> Result<f64> {
    if s == 0 || n < s {
        return Err(Error::Parameter(format!("gamma bound needs 1 <= s <= n, got n = {n}, s = {s}")));
    }
    Ok(s as f64 * log_f(n as f64 / s as f64)?)
}

/// One instance of `f(n/s)^s <= c^n ((n+s)/2n)^n`, compared in log space.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Prop097 {
    pub n: u64,
    pub s: u64,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    /// `ln_lhs <= ln_rhs` up to the relative tolerance.
    pub holds: bool,
    /// `lhs` and `rhs` agree to the relative tolerance.
    pub equal: bool,
}

pub fn prop_097(n: u64, s: u64) -> Result<Prop097> {
    let ln_lhs = gamma_bound_ln(n, s)?;
    let (nf, sf) = (n as f64, s as f64);
    let ln_rhs = nf * (prop_097_constant().ln() + ((nf + sf) / (2.0 * nf)).ln());
    let slack = PROP_097_TOLERANCE.ln_1p();
    Ok(Prop097 {
        n,
        s,
        ln_lhs,
        ln_rhs,
        holds: ln_lhs <= ln_rhs + slack,
        equal: (ln_lhs - ln_rhs).abs() <= slack,
    })
}
