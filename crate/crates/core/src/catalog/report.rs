//! Batch scans over a catalog.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::builder::ExtensionParts;
use super::cache::{CacheStats, ResultsCache};
use super::{Catalog, CatalogEntry};
use crate::coset_graph::{double_cosets, s_bounds_of, CosetGraph};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{GroupTable, SUBGROUP_CAP};
use crate::rational::{self, BigRational};
use crate::tp::{
    extension_bounds, Analysis, Extension, TheoremVerdict, TpOptions, Witness, MONOTONICITY_IDS, SPECIAL_IDS,
    STRUCTURE_IDS,
};
use crate::transversal::{bounds_report_of, oracle_agreement, p_g_full};

/// Catalog-level checks, on top of the theorem ids of the tp engine.
pub const CHECK_IDS: &[&str] = &["lemma-values", "bounds", "graph-invariants", "oracles", "extension"];

/// Groups up to this order get the full permanent and enumeration oracles.
pub const ORACLE_ORDER_CAP: usize = 24;

/// Every check id a scan understands.
pub fn all_checks() -> BTreeSet<String> {
    CHECK_IDS
        .iter()
        .chain(MONOTONICITY_IDS)
        .chain(STRUCTURE_IDS)
        .chain(SPECIAL_IDS)
        .map(|s| s.to_string())
        .collect()
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub checks: BTreeSet<String>,
    /// Entries of larger order are skipped.
    pub cap_order: usize,
    pub oracle_cap: usize,
    /// Worker threads for entries; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub exec: Exec,
    /// NDJSON results cache; `None` disables it.
    pub cache: Option<PathBuf>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            checks: all_checks(),
            cap_order: SUBGROUP_CAP,
            oracle_cap: ORACLE_ORDER_CAP,
            jobs: None,
            exec: Exec::default(),
            cache: None,
        }
    }
}

impl ScanOptions {
    pub fn with_checks<I: IntoIterator<Item = S>, S: Into<String>>(mut self, checks: I) -> Result<Self> {
        let known = all_checks();
        self.checks = BTreeSet::new();
        for c in checks {
            let c = c.into();
            if !known.contains(&c) {
                return Err(Error::Parameter(format!("unknown check `{c}`")));
            }
            self.checks.insert(c);
        }
        Ok(self)
    }

    fn tp_options(&self) -> TpOptions {
        TpOptions {
            exec: self.exec,
            subgroup_cap: self.cap_order,
            keep_table: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub builder: String,
    pub order: usize,
    #[serde(with = "crate::rational::as_json")]
    pub tp: BigRational,
    pub dedekind: bool,
    pub witnesses: Vec<Witness>,
    pub subgroup_count: usize,
    pub class_count: usize,
    pub verdicts: Vec<TheoremVerdict>,
    /// Expected values that were not reproduced.
    pub mismatches: Vec<String>,
    pub millis: u64,
}

impl EntryReport {
    pub fn failed(&self) -> bool {
        !self.mismatches.is_empty() || self.verdicts.iter().any(|v| !v.consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub skipped: usize,
    pub verdicts: usize,
    pub inconsistent: usize,
    pub mismatched: usize,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub catalog_hash: String,
    pub checks: Vec<String>,
    pub cap_order: usize,
    pub entries: Vec<EntryReport>,
    pub skipped: Vec<Skipped>,
    pub summary: Summary,
}

impl RunReport {
    /// No inconsistent verdict and every expected value reproduced.
    pub fn passed(&self) -> bool {
        self.summary.failed.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per entry: id, order, tp, verdict counts, mismatches, millis.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,order,tp_num,tp_den,verdicts,inconsistent,mismatches,millis\n");
        for e in &self.entries {
            let bad = e.verdicts.iter().filter(|v| !v.consistent).count();
            out.push_str(&format!(
                "{},{},{},{},{},{},\"{}\",{}\n",
                e.id,
                e.order,
                e.tp.numer(),
                e.tp.denom(),
                e.verdicts.len(),
                bad,
                e.mismatches.join("; ").replace('"', "'"),
                e.millis
            ));
        }
        out
    }

    /// The report with every timing zeroed, for comparing runs.
    pub fn without_millis(&self) -> Self {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.millis = 0;
        }
        r
    }
}

pub struct ScanOutcome {
    pub report: RunReport,
    pub cache: CacheStats,
}

pub fn version_stamp() -> String {
    let mode = if cfg!(feature = "parallel") { "parallel" } else { "sequential" };
    format!("tpgroup {} ({mode})", env!("CARGO_PKG_VERSION"))
}

/// Run the selected checks over every entry, write the JSON report to `out`
/// if given, and return it. Inconsistent verdicts and mismatched
/// expectations are recorded in the report, not raised.
pub fn scan_and_report(catalog: &Catalog, opts: &ScanOptions, out: Option<&Path>) -> Result<ScanOutcome> {
    let checks: Vec<String> = opts.checks.iter().cloned().collect();
    let mut cache = match &opts.cache {
        Some(p) => Some(ResultsCache::load(p, catalog.hash())?),
        None => None,
    };

    let mut slots: Vec<Option<Outcome>> = vec![None; catalog.len()];
    let mut todo: Vec<(usize, &CatalogEntry)> = Vec::new();
    for (i, e) in catalog.entries().iter().enumerate() {
        match cache.as_mut().and_then(|c| c.get(&e.id, &checks)) {
            Some(hit) => slots[i] = Some(Outcome::Done(hit)),
            None => todo.push((i, e)),
        }
    }
    let computed = run_all(&todo, opts)?;
    for ((i, _), outcome) in todo.iter().zip(computed) {
        if let (Some(c), Outcome::Done(e)) = (cache.as_mut(), &outcome) {
            c.store(&checks, e)?;
        }
        slots[*i] = Some(outcome);
    }

    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for o in slots.into_iter().map(|o| o.expect("every entry handled")) {
        match o {
            Outcome::Done(e) => entries.push(e),
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    skipped.sort_by(|a, b| a.id.cmp(&b.id));

    let summary = Summary {
        entries: entries.len(),
        skipped: skipped.len(),
        verdicts: entries.iter().map(|e| e.verdicts.len()).sum(),
        inconsistent: entries.iter().flat_map(|e| &e.verdicts).filter(|v| !v.consistent).count(),
        mismatched: entries.iter().filter(|e| !e.mismatches.is_empty()).count(),
        failed: entries.iter().filter(|e| e.failed()).map(|e| e.id.clone()).collect(),
    };
    let report = RunReport {
        version: version_stamp(),
        catalog_hash: catalog.hash().into(),
        checks,
        cap_order: opts.cap_order,
        entries,
        skipped,
        summary,
    };
    if let Some(path) = out {
        std::fs::write(path, report.to_json()?)?;
    }
    Ok(ScanOutcome {
        report,
        cache: cache.map(|c| c.stats()).unwrap_or_default(),
    })
}

#[derive(Clone)]
enum Outcome {
    Done(EntryReport),
    Skipped(Skipped),
}

fn run_all(todo: &[(usize, &CatalogEntry)], opts: &ScanOptions) -> Result<Vec<Outcome>> {
    let run = |(_, e): &(usize, &CatalogEntry)| run_entry(e, opts);
    #[cfg(feature = "parallel")]
    if opts.exec.is_parallel() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs.unwrap_or(0))
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
        return pool.install(|| opts.exec.map(todo, run)).into_iter().collect();
    }
    todo.iter().map(run).collect()
}

fn skip(e: &CatalogEntry, reason: String) -> Outcome {
    Outcome::Skipped(Skipped {
        id: e.id.clone(),
        reason,
    })
}

fn run_entry(e: &CatalogEntry, opts: &ScanOptions) -> Result<Outcome> {
    if let Some(n) = e.known_order().filter(|&n| n > opts.cap_order) {
        return Ok(skip(e, format!("order {n} exceeds cap {}", opts.cap_order)));
    }
    let start = Instant::now();
    let g = match e.build() {
        Ok(g) => g,
        Err(err) if err.is_size_limit() => return Ok(skip(e, err.to_string())),
        Err(err) => return Err(err),
    };
    if g.order() > opts.cap_order {
        return Ok(skip(e, format!("order {} exceeds cap {}", g.order(), opts.cap_order)));
    }
    match evaluate(e, &g, opts) {
        Ok(mut report) => {
            report.millis = start.elapsed().as_millis() as u64;
            Ok(Outcome::Done(report))
        }
        Err(err) if err.is_size_limit() => Ok(skip(e, err.to_string())),
        Err(err) => Err(Error::Entry {
            id: e.id.clone(),
            source: Box::new(err),
        }),
    }
}

fn evaluate(e: &CatalogEntry, g: &GroupTable, opts: &ScanOptions) -> Result<EntryReport> {
    let tp_opts = opts.tp_options();
    let a = Analysis::with_id(&e.id, g, &tp_opts)?;
    let mut verdicts = Vec::new();
    for check in &opts.checks {
        match check.as_str() {
            "lemma-values" => verdicts.push(lemma_values(e, &a)),
            "bounds" => verdicts.push(bounds(&a)?),
            "graph-invariants" => verdicts.push(graph_invariants(&a)?),
            "oracles" => {
                if g.order() <= opts.oracle_cap {
                    verdicts.push(oracles(&a, opts.exec)?);
                }
            }
            "extension" => {
                if let Some(v) = extension(e, &tp_opts)? {
                    verdicts.push(v);
                }
            }
            id => verdicts.extend(a.verdicts_for(id)?),
        }
    }
    let tp = a.tp();
    Ok(EntryReport {
        id: e.id.clone(),
        builder: e.builder.to_string(),
        order: tp.order,
        tp: tp.tp.clone(),
        dedekind: tp.dedekind,
        witnesses: tp.witnesses.clone(),
        subgroup_count: tp.subgroup_count,
        class_count: tp.class_count,
        mismatches: e.expected.mismatches(tp.order, &tp.tp, tp.dedekind),
        verdicts,
        millis: 0,
    })
}

fn verdict(a: &Analysis<'_>, theorem: &str, hyp: bool, concl: bool) -> TheoremVerdict {
    TheoremVerdict::new(theorem, a.id(), hyp, concl).with("tp", rational::display(&a.tp().tp))
}

fn lemma_values(e: &CatalogEntry, a: &Analysis<'_>) -> TheoremVerdict {
    let expected = e.expected.tp.as_ref();
    verdict(a, "lemma-values", expected.is_some(), expected.is_none_or(|t| *t == a.tp().tp))
        .with("expected", expected.map_or("none".into(), rational::display))
        .with("basis", e.expected.basis.as_deref().unwrap_or("none"))
}

/// Failure descriptions, keeping the first few.
#[derive(Default)]
struct Failures {
    instances: usize,
    failures: Vec<String>,
}

impl Failures {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn into_verdict(self, a: &Analysis<'_>, theorem: &str) -> TheoremVerdict {
        verdict(a, theorem, self.instances > 0, self.failures.is_empty())
            .with("instances", self.instances)
            .with("failures", self.failures.join("; "))
    }
}

/// Pairs `(H, K)` of equal index with `H` a class representative (conjugate
/// `H` give isomorphic data up to relabelling).
fn rep_pairs(a: &Analysis<'_>, non_normal_only: bool) -> Vec<(usize, usize)> {
    let lat = a.lattice();
    let mut out = Vec::new();
    for i in lat.class_representatives() {
        if non_normal_only && lat.is_normal(i) {
            continue;
        }
        for j in 0..lat.len() {
            if lat.get(j).order() == lat.get(i).order() {
                out.push((i, j));
            }
        }
    }
    out
}

/// The asymptotic, factorial and half-power bounds on `P` for every
/// non-normal subgroup against every subgroup of the same index.
fn bounds(a: &Analysis<'_>) -> Result<TheoremVerdict> {
    let (g, lat) = (a.group(), a.lattice());
    let mut f = Failures::default();
    for (i, j) in rep_pairs(a, true) {
        let (h, k) = (lat.get(i), lat.get(j));
        let r = p_g_full(g, h, k)?;
        let b = bounds_report_of(g, h, k, &r)?;
        let failed: Vec<String> = b.clauses.iter().filter(|c| !c.holds).map(|c| c.name.to_string()).collect();
        f.record(b.all_hold, || format!("H{i} K{j}: {}", failed.join(",")));
    }
    Ok(f.into_verdict(a, "bounds"))
}

fn graph_failure(g: &GroupTable, h: &crate::group::Subgroup, k: &crate::group::Subgroup, graph: &CosetGraph) -> Option<String> {
    let n = graph.n();
    let t = graph.t_vector();
    if t.entries().iter().sum::<usize>() != n {
        return Some(format!("sum t != {n}"));
    }
    if graph.components().iter().any(|c| c.weight * c.t != h.order()) {
        return Some("w t != |H|".into());
    }
    let mut blocks = double_cosets(g, h, k);
    let mut comps: Vec<Vec<usize>> = (0..graph.s()).map(|c| graph.component_elements(c)).collect();
    blocks.sort();
    comps.sort();
    if blocks != comps {
        return Some("components differ from double cosets".into());
    }
    if !s_bounds_of(graph).holds {
        return Some(format!("s = {} outside its bracket", graph.s()));
    }
    None
}

/// Structure of the coset intersection graph for every equal-index pair.
/// Building the graph already checks completeness, constant weights and
/// the two expressions for `m`.
fn graph_invariants(a: &Analysis<'_>) -> Result<TheoremVerdict> {
    let (g, lat) = (a.group(), a.lattice());
    let mut f = Failures::default();
    for (i, j) in rep_pairs(a, false) {
        let (h, k) = (lat.get(i), lat.get(j));
        let outcome = match p_g_full(g, h, k) {
            Ok(r) => graph_failure(g, h, k, &r.graph),
            Err(Error::Invariant(msg)) => Some(msg),
            Err(e) => return Err(e),
        };
        f.record(outcome.is_none(), || format!("H{i} K{j}: {}", outcome.clone().unwrap_or_default()));
    }
    Ok(f.into_verdict(a, "graph-invariants"))
}

/// t-vector formula, permanent and enumeration on every equal-index pair.
fn oracles(a: &Analysis<'_>, exec: Exec) -> Result<TheoremVerdict> {
    let (g, lat) = (a.group(), a.lattice());
    let mut f = Failures::default();
    let mut enumerated = 0usize;
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            let (h, k) = (lat.get(i), lat.get(j));
            if h.order() != k.order() {
                continue;
            }
            match oracle_agreement(g, h, k, exec) {
                Ok(r) => {
                    enumerated += r.from_enumeration.is_some() as usize;
                    f.record(r.agree(), || format!("H{i} K{j}"));
                }
                Err(Error::Invariant(msg)) => f.record(false, || format!("H{i} K{j}: {msg}")),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(f.into_verdict(a, "oracles").with("enumerated", enumerated))
}

fn extension(e: &CatalogEntry, opts: &TpOptions) -> Result<Option<TheoremVerdict>> {
    let Some(parts) = e.builder.extension_parts(&e.base)? else {
        return Ok(None);
    };
    let mut v = match &parts {
        ExtensionParts::Direct(tables) => extension_bounds(&Extension::Direct(tables), opts)?,
        ExtensionParts::Semidirect(g, k, action) => extension_bounds(&Extension::Semidirect { g, k, action }, opts)?,
    };
    v.group = e.id.clone();
    Ok(Some(v))
}
