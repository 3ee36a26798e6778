//! Upper and lower bounds on `P` in terms of `n`, `s` and `m`.

use num_traits::One;
use serde::Serialize;

use super::{p_g_full, PgResult};
use crate::arith::{factorial_ratio, gamma_bound_ln, prop_097, Prop097, PROP_097_TOLERANCE};
use crate::error::Result;
use crate::group::{are_conjugate, GroupTable, Subgroup};
use crate::rational::{self, BigRational};

/// One inequality and whether it applies to and holds for the instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub conjugate: bool,
    /// At least one of `H`, `K` is not normal.
    pub non_normal: bool,
    #[serde(with = "crate::rational::as_json")]
    pub p_exact: BigRational,
    /// `n!/n^n`.
    #[serde(with = "crate::rational::as_json")]
    pub lower_factorial: BigRational,
    /// `((n+s)/2n)^n`.
    #[serde(with = "crate::rational::as_json")]
    pub upper_ams: BigRational,
    /// `(n-m)!/(n-m)^(n-m)`.
    #[serde(with = "crate::rational::as_json")]
    pub lower_nontrivial: BigRational,
    /// `2^-(s-m)`.
    #[serde(with = "crate::rational::as_json")]
    pub upper_half_power: BigRational,
    /// `(n-1)!/(n-1)^(n-1)`, for conjugate non-normal pairs.
    #[serde(with = "crate::rational::opt_json")]
    pub lower_conjugate: Option<BigRational>,
    /// `(7/8)^n`, when some subgroup is not normal.
    #[serde(with = "crate::rational::opt_json")]
    pub upper_seven_eighths: Option<BigRational>,
    /// `f(n/s)^s` in double precision.
    pub upper_gamma: f64,
    /// `f(n/s)^s <= c^n ((n+s)/2n)^n`, evaluated when `s <= 3n/4`.
    pub gamma_vs_ams: Option<Prop097>,
    pub clauses: Vec<Clause>,
    pub all_hold: bool,
}

fn ratio_or_one(t: usize) -> BigRational {
    if t == 0 {
        BigRational::one()
    } else {
        factorial_ratio(t as u64).expect("positive")
    }
}

pub fn bounds_report(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<BoundsReport> {
    let r = p_g_full(g, h, k)?;
    bounds_report_of(g, h, k, &r)
}

/// [`bounds_report`] reusing an already computed `P`.
pub fn bounds_report_of(g: &GroupTable, h: &Subgroup, k: &Subgroup, r: &PgResult) -> Result<BoundsReport> {
    let (n, s, m) = (r.graph.n(), r.graph.s(), r.graph.m());
    let p = &r.p;
    let conjugate = are_conjugate(g, h, k).is_some();
    let non_normal = !h.is_normal(g) || !k.is_normal(g);

    let lower_factorial = ratio_or_one(n);
    let upper_ams = rational::pow(&rational::ratio((n + s) as i64, 2 * n as i64), n as u64);
    let lower_nontrivial = ratio_or_one(n - m);
    let upper_half_power = rational::half_pow((s - m) as u64);
    let conj_nn = conjugate && non_normal;
    let lower_conjugate = conj_nn.then(|| ratio_or_one(n - 1));
    let upper_seven_eighths = non_normal.then(|| rational::pow(&rational::ratio(7, 8), n as u64));
    let quarter = 4 * s <= 3 * n;

    let ln_gamma_bound = gamma_bound_ln(n as u64, s as u64)?;
    let slack = PROP_097_TOLERANCE.ln_1p();
    let gamma_holds = rational::ln(p) <= ln_gamma_bound + slack;
    let gamma_vs_ams = if quarter { Some(prop_097(n as u64, s as u64)?) } else { None };

    let half = rational::ratio(1, 2);
    let clauses = vec![
        Clause {
            name: "factorial-lower",
            applies: true,
            holds: lower_factorial <= *p,
        },
        Clause {
            name: "am-gm-upper",
            applies: true,
            holds: *p <= upper_ams,
        },
        Clause {
            name: "nontrivial-factorial-lower",
            applies: true,
            holds: lower_nontrivial <= *p,
        },
        Clause {
            name: "half-power-upper",
            applies: true,
            holds: *p <= upper_half_power,
        },
        Clause {
            name: "conjugate-lower",
            applies: conj_nn,
            holds: lower_conjugate.as_ref().is_none_or(|l| l <= p),
        },
        Clause {
            name: "conjugate-upper",
            applies: conj_nn,
            holds: !conj_nn || *p <= half,
        },
        Clause {
            name: "seven-eighths",
            applies: non_normal,
            holds: upper_seven_eighths
                .as_ref()
                .is_none_or(|b| quarter && *p <= upper_ams && upper_ams <= *b),
        },
        Clause {
            name: "gamma-upper",
            applies: true,
            holds: gamma_holds,
        },
        Clause {
            name: "gamma-vs-am-gm",
            applies: quarter,
            holds: gamma_vs_ams.is_none_or(|c| c.holds),
        },
    ];
    let all_hold = clauses.iter().all(|c| c.holds);
    Ok(BoundsReport {
        n,
        s,
        m,
        conjugate,
        non_normal,
        p_exact: p.clone(),
        lower_factorial,
        upper_ams,
        lower_nontrivial,
        upper_half_power,
        lower_conjugate,
        upper_seven_eighths,
        upper_gamma: ln_gamma_bound.exp(),
        gamma_vs_ams,
        clauses,
        all_hold,
    })
}
