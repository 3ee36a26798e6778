//! Majorisation and the product `h(x) = ∏ f(x_i)`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{factorial_ratio, log_f};
use crate::error::{Error, Result};
use crate::rational::{self, BigRational};

/// A vector of non-negative reals. Rational input keeps every comparison
/// exact; float input uses a small relative tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum RealVector {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

const FLOAT_EPS: f64 = 1e-12;

impl RealVector {
    pub fn from_integers(v: &[u64]) -> Self {
        RealVector::Exact(v.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn from_f64(v: &[f64]) -> Self {
        RealVector::Float(v.to_vec())
    }

    pub fn len(&self) -> usize {
        match self {
            RealVector::Exact(v) => v.len(),
            RealVector::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            RealVector::Exact(v) => v.iter().map(rational::to_f64).collect(),
            RealVector::Float(v) => v.clone(),
        }
    }

    /// Coordinates as non-negative integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<u64>> {
        match self {
            RealVector::Exact(v) => v
                .iter()
                .map(|x| if x.is_integer() && !x.is_negative() { x.to_integer().to_u64() } else { None })
                .collect(),
            RealVector::Float(_) => None,
        }
    }

    fn sorted_decreasing(&self) -> RealVector {
        match self {
            RealVector::Exact(v) => {
                let mut v = v.clone();
                v.sort_by(|a, b| b.cmp(a));
                RealVector::Exact(v)
            }
            RealVector::Float(v) => {
                let mut v = v.clone();
                v.sort_by(|a, b| b.total_cmp(a));
                RealVector::Float(v)
            }
        }
    }

    fn is_decreasing(&self) -> bool {
        match self {
            RealVector::Exact(v) => v.windows(2).all(|w| w[0] >= w[1]),
            RealVector::Float(v) => v.windows(2).all(|w| w[0] >= w[1]),
        }
    }

    fn distinct(&self) -> bool {
        let s = self.sorted_decreasing();
        match s {
            RealVector::Exact(v) => v.windows(2).all(|w| w[0] != w[1]),
            RealVector::Float(v) => v.windows(2).all(|w| w[0] != w[1]),
        }
    }

    fn min_at_least(&self, bound: u64) -> bool {
        match self {
            RealVector::Exact(v) => v.iter().all(|x| *x >= rational::int(bound)),
            RealVector::Float(v) => v.iter().all(|&x| x >= bound as f64),
        }
    }
}

/// Sign of `Σ_{i<=k} x_[i] - Σ_{i<=k} y_[i]` for each `k`, on decreasing
/// rearrangements.
fn prefix_signs(x: &RealVector, y: &RealVector) -> Result<Vec<std::cmp::Ordering>> {
    if x.len() != y.len() {
        return Err(Error::Parameter(format!(
            "majorisation needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let (xs, ys) = (x.sorted_decreasing(), y.sorted_decreasing());
    if let (RealVector::Exact(a), RealVector::Exact(b)) = (&xs, &ys) {
        let (mut sa, mut sb) = (BigRational::zero(), BigRational::zero());
        return Ok(a
            .iter()
            .zip(b)
            .map(|(p, q)| {
                sa += p;
                sb += q;
                sa.cmp(&sb)
            })
            .collect());
    }
    let (a, b) = (xs.to_f64(), ys.to_f64());
    let scale = a.iter().chain(&b).fold(1.0f64, |m, v| m.max(v.abs()));
    let (mut sa, mut sb) = (0.0, 0.0);
    Ok(a.iter()
        .zip(&b)
        .map(|(p, q)| {
            sa += p;
            sb += q;
            let d = sa - sb;
            if d.abs() <= FLOAT_EPS * scale * a.len() as f64 {
                std::cmp::Ordering::Equal
            } else {
                d.partial_cmp(&0.0).unwrap()
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Majorisation {
    /// `x ≺ y`: dominated prefix sums with equal totals.
    pub prec: bool,
    /// `x ≺_w y`: dominated prefix sums.
    pub prec_w: bool,
}

pub fn majorisation(x: &RealVector, y: &RealVector) -> Result<Majorisation> {
    use std::cmp::Ordering::*;
    let signs = prefix_signs(x, y)?;
    let prec_w = signs.iter().all(|&s| s != Greater);
    let total_equal = signs.last().is_none_or(|&s| s == Equal);
    Ok(Majorisation {
        prec: prec_w && total_equal,
        prec_w,
    })
}

/// `log h(x)`, with `f(0) = 1`.
pub fn h_ln(x: &RealVector) -> Result<f64> {
    x.to_f64().iter().try_fold(0.0, |acc, &v| {
        if v == 0.0 {
            Ok(acc)
        } else {
            Ok(acc + log_f(v)?)
        }
    })
}

/// `h(x)` exactly, when every coordinate is a non-negative integer.
pub fn h_exact(x: &RealVector) -> Result<Option<BigRational>> {
    let Some(ints) = x.as_integers() else {
        return Ok(None);
    };
    let mut acc = BigRational::one();
    for t in ints.into_iter().filter(|&t| t > 0) {
        acc *= factorial_ratio(t)?;
    }
    Ok(Some(acc))
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurVerdict {
    /// Hypotheses that failed, in the order they are checked.
    pub failed_hypotheses: Vec<&'static str>,
    /// Smallest `k` from which every prefix sum is strictly dominated.
    pub strict_from: Option<usize>,
    pub ln_h_x: f64,
    pub ln_h_y: f64,
    /// `h(x) > h(y)`, decided exactly for integer input.
    pub conclusion_holds: bool,
    pub consistent: bool,
}

impl SchurVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.failed_hypotheses.is_empty()
    }
}

/// Check the strict form of Schur-concavity of `h` under weak majorisation.
///
/// Hypotheses: `x` and `y` decreasing, every coordinate at least 1,
/// `x ≺_w y`, distinct coordinates in `x`, and strict prefix domination from
/// some index on. Conclusion: `h(x) > h(y)`. Failed hypotheses are
/// reported, not raised.
pub fn schur_strict_check(x: &RealVector, y: &RealVector) -> Result<SchurVerdict> {
    use std::cmp::Ordering::*;
    let signs = prefix_signs(x, y)?;
    let mut failed = Vec::new();
    if !x.is_decreasing() || !y.is_decreasing() {
        failed.push("decreasing");
    }
    if !x.min_at_least(1) || !y.min_at_least(1) {
        failed.push("coordinates >= 1");
    }
    if signs.iter().any(|&s| s == Greater) {
        failed.push("weak majorisation");
    }
    if !x.distinct() {
        failed.push("distinct coordinates");
    }
    let strict_from = signs.iter().rposition(|&s| s != Less).map_or(Some(0), |i| (i + 1 < signs.len()).then_some(i + 1));
    let strict_from = if signs.is_empty() { None } else { strict_from };
    if strict_from.is_none() {
        failed.push("strict from some index");
    }

    let (ln_h_x, ln_h_y) = (h_ln(x)?, h_ln(y)?);
    let conclusion_holds = match (h_exact(x)?, h_exact(y)?) {
        (Some(a), Some(b)) => a > b,
        _ => ln_h_x > ln_h_y,
    };
    Ok(SchurVerdict {
        consistent: !failed.is_empty() || conclusion_holds,
        failed_hypotheses: failed,
        strict_from,
        ln_h_x,
        ln_h_y,
        conclusion_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ints(v: &[u64]) -> RealVector {
        RealVector::from_integers(v)
    }

    #[test]
    fn majorisation_examples() {
        let m = majorisation(&ints(&[3, 1]), &ints(&[3, 1])).unwrap();
        assert!(m.prec && m.prec_w);
        let m = majorisation(&ints(&[2, 2]), &ints(&[3, 1])).unwrap();
        assert!(m.prec && m.prec_w);
        let m = majorisation(&ints(&[5, 3, 1]), &ints(&[5, 4, 1])).unwrap();
        assert!(m.prec_w && !m.prec);
        let m = majorisation(&ints(&[3, 1]), &ints(&[2, 2])).unwrap();
        assert!(!m.prec_w);
        assert!(majorisation(&ints(&[1]), &ints(&[1, 2])).is_err());
    }

    #[test]
    fn majorisation_sorts_inputs() {
        let m = majorisation(&ints(&[1, 3]), &ints(&[2, 1])).unwrap();
        assert!(!m.prec_w);
        let m = majorisation(&RealVector::from_f64(&[1.0, 2.0]), &RealVector::from_f64(&[3.0, 0.0])).unwrap();
        assert!(m.prec);
    }

    #[test]
    fn strict_example() {
        let v = schur_strict_check(&ints(&[3, 2]), &ints(&[4, 2])).unwrap();
        assert!(v.hypotheses_hold(), "{:?}", v.failed_hypotheses);
        assert_eq!(v.strict_from, Some(0));
        assert!(v.conclusion_holds && v.consistent);
        assert_eq!(h_exact(&ints(&[3, 2])).unwrap().unwrap(), ratio(1, 9));
        assert_eq!(h_exact(&ints(&[4, 2])).unwrap().unwrap(), ratio(3, 64));
    }

    #[test]
    fn plain_schur_concavity_example() {
        let m = majorisation(&ints(&[2, 2]), &ints(&[3, 1])).unwrap();
        assert!(m.prec);
        let (a, b) = (h_exact(&ints(&[2, 2])).unwrap().unwrap(), h_exact(&ints(&[3, 1])).unwrap().unwrap());
        assert_eq!(a, ratio(1, 4));
        assert_eq!(b, ratio(2, 9));
        assert!(a > b);
    }

    #[test]
    fn permutation_gives_equal_h() {
        let v = schur_strict_check(&ints(&[3, 2]), &ints(&[3, 2])).unwrap();
        assert!(v.failed_hypotheses.contains(&"strict from some index"));
        assert!(!v.conclusion_holds && v.consistent);
        assert_eq!(h_ln(&ints(&[2, 3])).unwrap(), h_ln(&ints(&[3, 2])).unwrap());
    }

    #[test]
    fn hypotheses_reported_not_raised() {
        let v = schur_strict_check(&ints(&[2, 2]), &ints(&[3, 2])).unwrap();
        assert_eq!(v.failed_hypotheses, vec!["distinct coordinates"]);
        let v = schur_strict_check(&ints(&[2, 3]), &ints(&[3, 2])).unwrap();
        assert!(v.failed_hypotheses.contains(&"decreasing"));
    }

    #[test]
    fn real_inputs() {
        let x = RealVector::from_f64(&[2.5, 1.5]);
        let y = RealVector::from_f64(&[3.5, 1.5]);
        let v = schur_strict_check(&x, &y).unwrap();
        assert!(v.hypotheses_hold() && v.conclusion_holds);
    }
}
