//! `tp(G)`, its witnesses, and falsification-style checks of the results
//! that constrain it.
//!
//! [`Analysis`] computes the subgroup lattice, the per-class values of
//! `P_G(H)` and the structure flags once; every verdict family reuses them.

mod extension;
mod gates;
mod monotone;
mod reference;
mod special;

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{classify_structure_in, minimal_generators, GroupTable, Lattice, StructureReport, SUBGROUP_CAP};
use crate::rational::{self, BigRational};
use crate::transversal::p_g_full;

pub use extension::{extension_bounds, Extension};
pub use reference::{half_family, quarter_family, QuarterMatch};

/// Theorem ids understood by [`Analysis::verdicts_for`].
pub const MONOTONICITY_IDS: &[&str] =
    &["subgroup-monotone", "quotient-monotone", "section-monotone", "p-group-bound", "pg-sub", "normal-quotient"];
pub const STRUCTURE_IDS: &[&str] =
    &["half-bound", "solubility-gate", "supersolubility-gate", "nilpotency-gate", "derived-length", "odd-order"];
pub const SPECIAL_IDS: &[&str] = &[
    "tp-half-classification",
    "tp-half-families",
    "tp-quarter-classification",
    "tp-quarter-families",
    "no-two-prime-value",
    "single-prime-dichotomy",
    "two-prime-tvector",
    "classify-p",
    "dagger-groups",
];

#[derive(Clone, Copy, Debug)]
pub struct TpOptions {
    pub exec: Exec,
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup_cap: usize,
    /// Keep the per-class table in the result.
    pub keep_table: bool,
}

impl Default for TpOptions {
    fn default() -> Self {
        TpOptions {
            exec: Exec::default(),
            subgroup_cap: SUBGROUP_CAP,
            keep_table: true,
        }
    }
}

/// One conjugacy class of subgroups; `P` is constant on the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    /// Position of the class representative in the sorted subgroup list.
    pub subgroup: usize,
    pub class_size: usize,
    pub order: usize,
    pub index: usize,
    pub normal: bool,
    #[serde(with = "crate::rational::as_json")]
    pub p: BigRational,
    pub t_vector: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub generators: Vec<usize>,
    pub order: usize,
    pub class_size: usize,
    pub t_vector: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpResult {
    pub group: String,
    pub order: usize,
    #[serde(with = "crate::rational::as_json")]
    pub tp: BigRational,
    /// Class representatives attaining the minimum, in canonical order. A
    /// Dedekind group lists the trivial subgroup.
    pub witnesses: Vec<Witness>,
    pub subgroup_count: usize,
    pub class_count: usize,
    pub dedekind: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<ClassRow>,
}

/// The outcome of checking one theorem on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub group: String,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    /// `!hypothesis_holds || conclusion_holds`.
    pub consistent: bool,
    pub details: BTreeMap<String, String>,
}

impl TheoremVerdict {
    pub fn new(theorem: &str, group: &str, hypothesis_holds: bool, conclusion_holds: bool) -> Self {
        TheoremVerdict {
            theorem: theorem.into(),
            group: group.into(),
            hypothesis_holds,
            conclusion_holds,
            consistent: !hypothesis_holds || conclusion_holds,
            details: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.into(), value.to_string());
        self
    }
}

fn default_id(g: &GroupTable) -> String {
    g.provenance().to_string()
}

pub fn tp(g: &GroupTable) -> Result<TpResult> {
    tp_with(g, &TpOptions::default())
}

pub fn tp_with(g: &GroupTable, opts: &TpOptions) -> Result<TpResult> {
    Ok(Analysis::with_id(&default_id(g), g, opts)?.tp)
}

/// Just the value, with the abelian shortcut. Used for the many small
/// subgroups and quotients in the monotonicity checks.
pub(crate) fn tp_value(g: &GroupTable, opts: &TpOptions) -> Result<BigRational> {
    if g.is_abelian() {
        return Ok(BigRational::one());
    }
    let opts = TpOptions {
        keep_table: false,
        ..*opts
    };
    Ok(Analysis::with_id("", g, &opts)?.tp.tp)
}

/// Lattice, per-class probabilities, structure flags and `tp` for one group.
pub struct Analysis<'g> {
    id: String,
    lattice: Lattice<'g>,
    /// `(P, t-vector)` per conjugacy class id.
    class_values: Vec<(BigRational, Vec<usize>)>,
    structure: StructureReport,
    tp: TpResult,
    opts: TpOptions,
}

impl<'g> Analysis<'g> {
    pub fn new(g: &'g GroupTable, opts: &TpOptions) -> Result<Self> {
        Self::with_id(&default_id(g), g, opts)
    }

    pub fn with_id(id: &str, g: &'g GroupTable, opts: &TpOptions) -> Result<Self> {
        let lattice = Lattice::with_cap(g, opts.subgroup_cap)?;
        let reps = lattice.class_representatives();
        let n = g.order();
        let values = opts.exec.map(&reps, |&i| -> Result<(BigRational, Vec<usize>)> {
            let h = lattice.get(i);
            if lattice.is_normal(i) {
                return Ok((BigRational::one(), vec![1; h.index()]));
            }
            let r = p_g_full(g, h, h)?;
            Ok((r.p, r.graph.t_vector().entries().to_vec()))
        });
        let class_values: Vec<(BigRational, Vec<usize>)> = values.into_iter().collect::<Result<_>>()?;

        let min = class_values.iter().map(|(p, _)| p).min().cloned().unwrap_or_else(BigRational::one);
        let dedekind = lattice.is_dedekind();
        if min.is_one() != dedekind {
            return Err(Error::Invariant(format!(
                "tp = {} but Dedekind is {dedekind}",
                rational::display(&min)
            )));
        }
        let witness = |c: usize| {
            let h = lattice.get(reps[c]);
            Witness {
                generators: minimal_generators(g, h.elements()),
                order: h.order(),
                class_size: lattice.class_size(c),
                t_vector: class_values[c].1.clone(),
            }
        };
        let witnesses = if dedekind {
            vec![witness(0)]
        } else {
            (0..reps.len()).filter(|&c| class_values[c].0 == min).map(witness).collect()
        };
        let table = if opts.keep_table {
            reps.iter()
                .enumerate()
                .map(|(c, &i)| ClassRow {
                    subgroup: i,
                    class_size: lattice.class_size(c),
                    order: lattice.get(i).order(),
                    index: lattice.get(i).index(),
                    normal: lattice.is_normal(i),
                    p: class_values[c].0.clone(),
                    t_vector: class_values[c].1.clone(),
                })
                .collect()
        } else {
            Vec::new()
        };
        let tp = TpResult {
            group: id.into(),
            order: n,
            tp: min,
            witnesses,
            subgroup_count: lattice.len(),
            class_count: reps.len(),
            dedekind,
            table,
        };
        let structure = classify_structure_in(&lattice)?;
        Ok(Analysis {
            id: id.into(),
            lattice,
            class_values,
            structure,
            tp,
            opts: *opts,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn group(&self) -> &'g GroupTable {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &Lattice<'g> {
        &self.lattice
    }

    pub fn tp(&self) -> &TpResult {
        &self.tp
    }

    pub fn into_tp(self) -> TpResult {
        self.tp
    }

    pub fn structure(&self) -> &StructureReport {
        &self.structure
    }

    /// `P_G(H)` for the subgroup at lattice position `i`.
    pub fn p_of(&self, i: usize) -> &BigRational {
        &self.class_values[self.lattice.class_of(i)].0
    }

    pub fn t_vector_of(&self, i: usize) -> &[usize] {
        &self.class_values[self.lattice.class_of(i)].1
    }

    fn verdict(&self, theorem: &str, hypothesis: bool, conclusion: bool) -> TheoremVerdict {
        TheoremVerdict::new(theorem, &self.id, hypothesis, conclusion).with("tp", rational::display(&self.tp.tp))
    }

    pub fn verdicts_for(&self, theorem: &str) -> Result<Vec<TheoremVerdict>> {
        let all = if MONOTONICITY_IDS.contains(&theorem) {
            self.monotonicity()?
        } else if STRUCTURE_IDS.contains(&theorem) {
            self.structure_theorems()?
        } else if SPECIAL_IDS.contains(&theorem) {
            self.special_values()?
        } else {
            return Err(Error::Parameter(format!("unknown theorem id {theorem:?}")));
        };
        Ok(all.into_iter().filter(|v| v.theorem == theorem).collect())
    }

    pub fn all_verdicts(&self) -> Result<Vec<TheoremVerdict>> {
        let mut out = self.structure_theorems()?;
        out.extend(self.special_values()?);
        out.extend(self.monotonicity()?);
        Ok(out)
    }
}

pub fn verify_monotonicity(g: &GroupTable) -> Result<Vec<TheoremVerdict>> {
    Analysis::new(g, &TpOptions::default())?.monotonicity()
}

pub fn verify_structure_theorems(g: &GroupTable) -> Result<Vec<TheoremVerdict>> {
    Analysis::new(g, &TpOptions::default())?.structure_theorems()
}

pub fn classify_special_values(g: &GroupTable) -> Result<Vec<TheoremVerdict>> {
    Analysis::new(g, &TpOptions::default())?.special_values()
}
