//! Exact `P_G(H, K)` and its cross-checks.
//!
//! The primary route is the closed form over the coset graph's t-vector.
//! The weight-matrix permanent and the transversal enumeration recompute the
//! same number by unrelated means and serve as oracles.

mod bounds;
mod enumerate;
mod permanent;
mod weight;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{factorial_ratio, is_prime};
use crate::coset_graph::{build_coset_graph, CosetGraph, TVector};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{conjugate_subgroup, subgroup_relations, GroupTable, Subgroup};
use crate::rational::{self, BigRational, RationalJson};

pub use bounds::{bounds_report, bounds_report_of, BoundsReport};
pub use enumerate::{dt_enumerate, dt_enumerate_with_budget, ENUMERATION_BUDGET};
pub use permanent::{permanent_ryser, permanent_ryser_with, PERMANENT_MAX_N};
pub use weight::{stochastic_form_checks, weight_matrix, StochasticReport, WeightMatrix};

/// `∏ t!/t^t` over the entries.
pub fn p_from_tvector(t: &TVector) -> BigRational {
    t.entries()
        .iter()
        .map(|&x| factorial_ratio(x as u64).expect("t-vector entries are positive"))
        .product()
}

/// [`p_from_tvector`] on raw entries.
pub fn p_from_entries(entries: &[usize]) -> Result<BigRational> {
    Ok(p_from_tvector(&TVector::new(entries.to_vec())?))
}

/// `P_G(H, K)` together with the graph data it came from.
#[derive(Clone, Debug)]
pub struct PgResult {
    pub p: BigRational,
    pub graph: CosetGraph,
}

impl PgResult {
    pub fn t_vector(&self) -> TVector {
        self.graph.t_vector()
    }
}

/// Serialisable summary of a [`PgResult`].
#[derive(Clone, Debug, Serialize)]
pub struct PgSummary {
    pub p: RationalJson,
    pub t_vector: Vec<usize>,
    pub n: usize,
    pub s: usize,
    pub m: usize,
}

impl From<&PgResult> for PgSummary {
    fn from(r: &PgResult) -> Self {
        PgSummary {
            p: (&r.p).into(),
            t_vector: r.t_vector().entries().to_vec(),
            n: r.graph.n(),
            s: r.graph.s(),
            m: r.graph.m(),
        }
    }
}

pub fn p_g(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<BigRational> {
    Ok(p_g_full(g, h, k)?.p)
}

/// `P_G(H, K)` with the coset graph. Checks that `P = 1` exactly when
/// `H = K` is normal.
pub fn p_g_full(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<PgResult> {
    let graph = build_coset_graph(g, h, k)?;
    let p = p_from_tvector(&graph.t_vector());
    let normal_pair = h == k && h.is_normal(g);
    if p.is_one() != normal_pair {
        return Err(Error::Invariant(format!(
            "P = {} but H = K normal is {normal_pair}",
            rational::display(&p)
        )));
    }
    Ok(PgResult { p, graph })
}

/// `P_G(H)` for `|H| = p` prime as `(p!/p^p)^((n-m)/p)`, `m = (N_G(H) : H)`,
/// checked against the graph computation.
pub fn p_prime_subgroup(g: &GroupTable, h: &Subgroup) -> Result<BigRational> {
    let p = h.order();
    if !is_prime(p as u64) {
        return Err(Error::Parameter(format!("subgroup order {p} is not prime")));
    }
    let n = h.index();
    let m = subgroup_relations(g, h).normalizer.order() / p;
    if (n - m) % p != 0 {
        return Err(Error::Invariant(format!("(n - m)/p = ({n} - {m})/{p} is not an integer")));
    }
    let value = rational::pow(&factorial_ratio(p as u64)?, ((n - m) / p) as u64);
    let direct = p_g(g, h, h)?;
    if value != direct {
        return Err(Error::Invariant(format!(
            "prime-order formula gives {} but the graph gives {}",
            rational::display(&value),
            rational::display(&direct)
        )));
    }
    Ok(value)
}

/// The closed form for pairs where `H ∩ K^g = 1` off `KH`.
///
/// The closed form treats the component through `KH` as trivial, which is
/// right when `H = K` or `H ∩ K = 1`. For `1 < |H ∩ K| < |H|` the
/// hypothesis can hold while the formula fails (two distinct normal
/// subgroups of order 4 in `D4`), so agreement is only required on
/// `covered` pairs.
#[derive(Clone, Debug)]
pub struct FrobGenCheck {
    pub hypothesis: bool,
    pub intersection_order: usize,
    /// Hypothesis holds and `H = K` or `H ∩ K = 1`.
    pub covered: bool,
    /// `(|H|!/|H|^|H|)^((n-m)/|H|)` when the exponent is an integer.
    pub formula: Option<BigRational>,
    pub p: BigRational,
    /// The formula is defined and equals `P`.
    pub agrees: bool,
}

pub fn frob_gen_check(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<FrobGenCheck> {
    let r = p_g_full(g, h, k)?;
    let mut kh = vec![false; g.order()];
    for &a in k.elements() {
        for &b in h.elements() {
            kh[g.mul(a, b)] = true;
        }
    }
    let hypothesis = (0..g.order())
        .filter(|&x| !kh[x])
        .all(|x| h.intersection(&conjugate_subgroup(g, k, x), g).is_trivial());
    let (n, m, ho) = (r.graph.n(), r.graph.m(), h.order());
    let formula = ((n - m) % ho == 0).then(|| {
        rational::pow(&factorial_ratio(ho as u64).expect("positive"), ((n - m) / ho) as u64)
    });
    let intersection_order = h.intersection(k, g).order();
    Ok(FrobGenCheck {
        hypothesis,
        intersection_order,
        covered: hypothesis && (h == k || intersection_order == 1),
        agrees: formula.as_ref() == Some(&r.p),
        formula,
        p: r.p,
    })
}

/// Three independent values of `P_G(H, K)`.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub from_t_vector: BigRational,
    /// `per(W) / |H|^n`.
    pub from_permanent: BigRational,
    /// `|DT| / |H|^n`, when the enumeration fits its budget.
    pub from_enumeration: Option<BigRational>,
}

impl OracleReport {
    pub fn agree(&self) -> bool {
        self.from_t_vector == self.from_permanent
            && self.from_enumeration.as_ref().is_none_or(|e| *e == self.from_t_vector)
    }
}

/// Compute `P` from the t-vector, the permanent and (budget permitting) the
/// enumeration, failing with an invariant error on any disagreement.
pub fn oracle_agreement(g: &GroupTable, h: &Subgroup, k: &Subgroup, exec: Exec) -> Result<OracleReport> {
    let p = p_g(g, h, k)?;
    let w = weight_matrix(g, h, k)?;
    let total = BigInt::from(h.order()).pow(h.index() as u32);
    let per = permanent_ryser_with(&w.to_rows(), exec)?;
    let from_permanent = BigRational::new(per, total.clone());
    let from_enumeration = match dt_enumerate(g, h, k) {
        Ok(c) => Some(BigRational::new(c, total)),
        Err(e) if e.is_size_limit() => None,
        Err(e) => return Err(e),
    };
    let report = OracleReport {
        from_t_vector: p,
        from_permanent,
        from_enumeration,
    };
    if !report.agree() {
        return Err(Error::Invariant(format!("oracles disagree: {report:?}")));
    }
    Ok(report)
}
