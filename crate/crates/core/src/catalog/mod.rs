//! A curated list of groups with known values, batch scans over it and a
//! flat results cache.
//!
//! A catalog file has one entry per line:
//!
//! ```text
//! # comment
//! a4<TAB>alt 4<TAB>tp=2/9<TAB>basis=tetrahedral group
//! ```
//!
//! The second column is a [`Builder`] expression. Optional `key=value`
//! columns record expected values: `tp`, `order` and `dedekind`, plus a
//! free-text `basis` saying where the expectation comes from.

mod builder;
mod cache;
mod report;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::rational::{self, BigRational};

pub use builder::{ActionSpec, Builder, ExtensionParts};
pub use cache::{CacheStats, ResultsCache};
pub use report::{scan_and_report, EntryReport, RunReport, ScanOptions, ScanOutcome, Skipped, Summary, CHECK_IDS};

/// Known values for an entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(with = "crate::rational::opt_json", default, skip_serializing_if = "Option::is_none")]
    pub tp: Option<BigRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dedekind: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
}

impl Expected {
    /// Differences between the expectations and what was computed.
    pub fn mismatches(&self, order: usize, tp: &BigRational, dedekind: bool) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(o) = self.order.filter(|&o| o != order) {
            out.push(format!("order {order}, expected {o}"));
        }
        if let Some(t) = self.tp.as_ref().filter(|&t| t != tp) {
            out.push(format!("tp {}, expected {}", rational::display(tp), rational::display(t)));
        }
        if let Some(d) = self.dedekind.filter(|&d| d != dedekind) {
            out.push(format!("dedekind {dedekind}, expected {d}"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub builder: Builder,
    pub expected: Expected,
    /// Directory that relative file paths in the builder resolve against.
    pub base: PathBuf,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<GroupTable> {
        self.builder.build(&self.base).map_err(|e| Error::Entry {
            id: self.id.clone(),
            source: Box::new(e),
        })
    }

    /// `|G|` if known without building: from the builder, else from the
    /// expectations.
    pub fn known_order(&self) -> Option<usize> {
        self.builder.predicted_order().or(self.expected.order)
    }
}

impl fmt::Display for CatalogEntry {
    /// The entry as a catalog line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.id, self.builder)?;
        let e = &self.expected;
        if let Some(t) = &e.tp {
            write!(f, "\ttp={}", rational::display(t))?;
        }
        if let Some(o) = e.order {
            write!(f, "\torder={o}")?;
        }
        if let Some(d) = e.dedekind {
            write!(f, "\tdedekind={d}")?;
        }
        if let Some(b) = &e.basis {
            write!(f, "\tbasis={b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    hash: String,
}

fn parse_line(line: &str, base: &Path) -> std::result::Result<CatalogEntry, String> {
    let mut cols = line.split('\t').map(str::trim);
    let id = cols.next().unwrap_or_default();
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(format!("bad id `{id}`"));
    }
    let builder: Builder = cols
        .next()
        .ok_or("missing builder column")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    let mut expected = Expected::default();
    for col in cols.filter(|c| !c.is_empty()) {
        let (key, value) = col.split_once('=').ok_or_else(|| format!("expected key=value, found `{col}`"))?;
        match key.trim() {
            "tp" => expected.tp = Some(rational::parse(value).ok_or_else(|| format!("bad rational `{value}`"))?),
            "order" => expected.order = Some(value.parse().map_err(|_| format!("bad order `{value}`"))?),
            "dedekind" => expected.dedekind = Some(value.parse().map_err(|_| format!("bad flag `{value}`"))?),
            "basis" => expected.basis = Some(value.into()),
            other => return Err(format!("unknown key `{other}`")),
        }
    }
    if let (Some(p), Some(o)) = (builder.predicted_order(), expected.order) {
        if p != o {
            return Err(format!("`{builder}` has order {p}, expected {o}"));
        }
    }
    Ok(CatalogEntry {
        id: id.into(),
        builder,
        expected,
        base: base.to_path_buf(),
    })
}

impl Catalog {
    /// Parse catalog text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let entry = parse_line(line, base).map_err(|msg| Error::Parse { line: i + 1, msg })?;
            if !seen.insert(entry.id.clone()) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("duplicate id `{}`", entry.id),
                });
            }
            entries.push(entry);
        }
        Ok(Catalog::from_entries(entries))
    }

    /// Load a catalog file. A file holding a single Cayley table is accepted
    /// too and becomes one entry named after the file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        if first.is_some_and(|l| l.parse::<usize>().is_ok()) {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("table");
            let id = path.file_stem().and_then(|n| n.to_str()).unwrap_or("table");
            let line = format!("{id}\ttable {name}");
            return Catalog::parse(&line, base);
        }
        Catalog::parse(&text, base)
    }

    /// The curated list of reference groups.
    pub fn builtin() -> Self {
        Catalog::parse(BUILTIN, Path::new(".")).expect("builtin catalog parses")
    }

    pub fn from_entries(entries: Vec<CatalogEntry>) -> Self {
        let hash = hash_entries(&entries);
        Catalog { entries, hash }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// SHA-256 over the canonical entry lines and the bytes of every file
    /// they reference.
    pub fn hash(&self) -> &str {
        &self.hash
    }
}

fn hash_entries(entries: &[CatalogEntry]) -> String {
    let mut h = Sha256::new();
    for e in entries {
        h.update(e.to_string().as_bytes());
        h.update(b"\n");
        for f in e.builder.files() {
            // A missing file surfaces when the entry is built; here it just
            // hashes as empty.
            h.update(std::fs::read(e.base.join(f)).unwrap_or_default());
            h.update(b"\n");
        }
    }
    hex::encode(h.finalize())
}

/// Every group whose value is pinned by a closed form or a classification,
/// the sharpness witnesses of the structure theorems, and small abelian,
/// Hamiltonian and Frobenius groups.
pub const BUILTIN: &str = "\
# C_p ⋊ C_{2^k}: tp = 2^-(p-1)/2
cp3k1\tcpc2n 3 1\ttp=1/2\tbasis=closed form 2^-(p-1)/2
cp3k2\tcpc2n 3 2\ttp=1/2\tbasis=closed form 2^-(p-1)/2
cp3k3\tcpc2n 3 3\ttp=1/2\tbasis=closed form 2^-(p-1)/2
cp5k1\tcpc2n 5 1\ttp=1/4\tbasis=closed form 2^-(p-1)/2
cp5k2\tcpc2n 5 2\ttp=1/4\tbasis=closed form 2^-(p-1)/2
cp5k3\tcpc2n 5 3\ttp=1/4\tbasis=closed form 2^-(p-1)/2
cp7k1\tcpc2n 7 1\ttp=1/8\tbasis=closed form 2^-(p-1)/2
cp7k2\tcpc2n 7 2\ttp=1/8\tbasis=closed form 2^-(p-1)/2
cp7k3\tcpc2n 7 3\ttp=1/8\tbasis=closed form 2^-(p-1)/2
# D_n of order 2n: 2^-(n-1)/2 for odd n, 2^-(n-2)/2 for even n
d03\tdihedral 3\ttp=1/2\tbasis=dihedral closed form
d04\tdihedral 4\ttp=1/2\tbasis=dihedral closed form
d05\tdihedral 5\ttp=1/4\tbasis=dihedral closed form
d06\tdihedral 6\ttp=1/4\tbasis=dihedral closed form
d07\tdihedral 7\ttp=1/8\tbasis=dihedral closed form
d08\tdihedral 8\ttp=1/8\tbasis=dihedral closed form
d09\tdihedral 9\ttp=1/16\tbasis=dihedral closed form
d10\tdihedral 10\ttp=1/16\tbasis=dihedral closed form
d11\tdihedral 11\ttp=1/32\tbasis=dihedral closed form
d12\tdihedral 12\ttp=1/32\tbasis=dihedral closed form
q8\tquaternion 8\ttp=1\tdedekind=true\tbasis=Hamiltonian
q16\tquaternion 16\ttp=1/2\tbasis=reference value
c4c4\tmetacyclic 4 4 3\ttp=1/2\tbasis=reference value
a4\talt 4\ttp=2/9\tbasis=reference value
a5\talt 5\ttp=1/16384\tbasis=reference value 2^-14
psl3_2\tpsl3_2\ttp=1/1099511627776\tbasis=reference value 2^-40
c2cube_c7\tc2cube_c7\ttp=1/4096\tbasis=reference value 2^-12
c3sq_c4\tc3sq_c4\ttp=1/256\tbasis=reference value 2^-8
sl2_3\tsl2 3\ttp=4/81\tbasis=reference value (2/9)^2
c7c3\tmetacyclic 7 3 2\ttp=4/81\tbasis=odd-order sharpness
s4\tsym 4\torder=24
s3xc5\tdp (dihedral 3) (cyclic 5)\ttp=1/32\tbasis=direct-product bound attained
# tp = 1/4 shapes
m4_2\tm4_2\ttp=1/4\tbasis=quarter classification
c4od4\tc4_central_d4\ttp=1/4\tbasis=quarter classification
c2xd4\tdp (cyclic 2) (dihedral 4)\ttp=1/4\tbasis=quarter classification
c2sq_c4\tc2sq_c4\ttp=1/4\tbasis=quarter classification
# field Frobenius groups F_q ⋊ F_q^×
frob3\tfrobenius 3\ttp=1/2\tbasis=isomorphic to D3
frob4\tfrobenius 4\ttp=2/9\tbasis=isomorphic to A4
frob5\tfrobenius 5\torder=20
frob7\tfrobenius 7\torder=42
frob8\tfrobenius 8\torder=56
frob9\tfrobenius 9\torder=72
# abelian and Hamiltonian
c1\tcyclic 1\ttp=1\tdedekind=true\tbasis=abelian
c7\tcyclic 7\ttp=1\tdedekind=true\tbasis=abelian
c12\tcyclic 12\ttp=1\tdedekind=true\tbasis=abelian
c2cube\telemab 2 3\ttp=1\tdedekind=true\tbasis=abelian
c3sq\telemab 3 2\ttp=1\tdedekind=true\tbasis=abelian
c2xc6\tdp (cyclic 2) (cyclic 6)\ttp=1\tdedekind=true\tbasis=abelian
q8xc2\tdp (quaternion 8) (cyclic 2)\ttp=1\tdedekind=true\tbasis=Hamiltonian
# extensions
c2xd6\tdp (cyclic 2) (dihedral 6)\torder=24
c3_by_c4\tsdp (cyclic 3) (cyclic 4) invert\ttp=1/2\tbasis=isomorphic to cp3k2
c7_by_c3\tsdp (cyclic 7) (cyclic 3) power 2\ttp=4/81\tbasis=isomorphic to c7c3
c3sq_by_c4\tsdp (elemab 3 2) (cyclic 4) matrix 0,2;1,0\ttp=1/256\tbasis=isomorphic to c3sq_c4
c5_by_c4\tsdp (cyclic 5) (cyclic 4) power 2\torder=20
# further small groups for the classification sweeps
c3xs3\tdp (cyclic 3) (dihedral 3)\torder=18
gen_d_c3sq\tsdp (elemab 3 2) (cyclic 2) invert\torder=18
c4xs3\tdp (cyclic 4) (dihedral 3)\torder=24
c3xd4\tdp (cyclic 3) (dihedral 4)\torder=24
c3xq8\tdp (cyclic 3) (quaternion 8)\torder=24
c2xa4\tdp (cyclic 2) (alt 4)\torder=24
sd16\tmetacyclic 8 2 3\torder=16
m27\tmetacyclic 9 3 4\torder=27
c3xc3_by_c4\tdp (cyclic 3) (cpc2n 3 2)\torder=36
s3xs3\tdp (dihedral 3) (dihedral 3)\torder=36
c2xs4\tdp (cyclic 2) (sym 4)\torder=48
c4xa4\tdp (cyclic 4) (alt 4)\torder=48
c13_by_c3\tsdp (cyclic 13) (cyclic 3) power 3\torder=39
c11_by_c5\tsdp (cyclic 11) (cyclic 5) power 3\torder=55
a4xc5\tdp (alt 4) (cyclic 5)\torder=60
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_size_and_uniqueness() {
        let c = Catalog::builtin();
        assert!(c.len() >= 40);
        assert_eq!(c.hash().len(), 64);
        assert!(c.entries().iter().all(|e| e.known_order().is_some()));
    }

    #[test]
    fn round_trip_lines() {
        let c = Catalog::builtin();
        let text: String = c.entries().iter().map(|e| format!("{e}\n")).collect();
        let again = Catalog::parse(&text, Path::new(".")).unwrap();
        assert_eq!(again.entries(), c.entries());
        assert_eq!(again.hash(), c.hash());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "a\tcyclic 2\n# c\n\na\tcyclic 3\n";
        assert!(matches!(Catalog::parse(dup, Path::new(".")), Err(Error::Parse { line: 4, .. })));
        let bad = "a\tcyclic 2\nb\tdihedral\n";
        assert!(matches!(Catalog::parse(bad, Path::new(".")), Err(Error::Parse { line: 2, .. })));
        let order = "a\tdihedral 5\torder=12\n";
        assert!(matches!(Catalog::parse(order, Path::new(".")), Err(Error::Parse { line: 1, .. })));
        let key = "a\tcyclic 2\tcolour=red\n";
        assert!(Catalog::parse(key, Path::new(".")).is_err());
    }

    #[test]
    fn empty_and_single_table() {
        assert!(Catalog::parse("# nothing\n", Path::new(".")).unwrap().is_empty());
        let dir = tempfile::tempdir().unwrap();
        let g = crate::group::make_named_family(crate::group::Family::Dihedral(3)).unwrap();
        let path = dir.path().join("s3.tab");
        std::fs::write(&path, crate::group::write_cayley_table(&g)).unwrap();
        let c = Catalog::from_path(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.entries()[0].id, "s3");
        assert_eq!(c.entries()[0].build().unwrap().order(), 6);
    }

    #[test]
    fn hash_tracks_file_contents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.txt");
        std::fs::write(&path, "g\tperm 3 g.txt\n").unwrap();
        std::fs::write(dir.path().join("g.txt"), "3\n1 2 0\n").unwrap();
        let h1 = Catalog::from_path(&path).unwrap().hash().to_owned();
        std::fs::write(dir.path().join("g.txt"), "3\n1 0 2\n").unwrap();
        let h2 = Catalog::from_path(&path).unwrap().hash().to_owned();
        assert_ne!(h1, h2);
    }

    #[test]
    fn build_errors_name_the_entry() {
        let c = Catalog::parse("oops\tsdp (cyclic 4) (cyclic 2) power 2\n", Path::new(".")).unwrap();
        let err = c.entries()[0].build().unwrap_err();
        assert!(err.to_string().contains("oops"), "{err}");
    }
}
