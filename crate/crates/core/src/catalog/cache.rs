//! Line-delimited JSON cache of per-entry results.
//!
//! Each line is one record keyed by `(catalog hash, entry id)`. Records from
//! another catalog hash, or computed under a different set of checks, are
//! stale and ignored. Lines that fail to parse are counted and skipped. The
//! file is only ever appended to; a later record for the same key wins.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::report::EntryReport;
use crate::error::Result;

#[derive(Serialize, Deserialize)]
struct Record {
    catalog_hash: String,
    checks: Vec<String>,
    entry: EntryReport,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub loaded: usize,
    pub stale: usize,
    pub corrupt: usize,
    pub hits: usize,
    pub stored: usize,
}

pub struct ResultsCache {
    path: PathBuf,
    hash: String,
    records: HashMap<String, (Vec<String>, EntryReport)>,
    stats: CacheStats,
}

impl ResultsCache {
    /// Read the cache at `path` (missing is fine) for the catalog `hash`.
    pub fn load(path: &Path, hash: &str) -> Result<Self> {
        let mut cache = ResultsCache {
            path: path.to_path_buf(),
            hash: hash.into(),
            records: HashMap::new(),
            stats: CacheStats::default(),
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str::<Record>(line) {
                Ok(r) if r.catalog_hash == hash => {
                    cache.stats.loaded += 1;
                    cache.records.insert(r.entry.id.clone(), (r.checks, r.entry));
                }
                Ok(_) => cache.stats.stale += 1,
                Err(_) => cache.stats.corrupt += 1,
            }
        }
        Ok(cache)
    }

    /// The stored result for `id`, if it was computed under `checks`.
    pub fn get(&mut self, id: &str, checks: &[String]) -> Option<EntryReport> {
        let (c, e) = self.records.get(id)?;
        if c != checks {
            return None;
        }
        self.stats.hits += 1;
        Some(e.clone())
    }

    /// Append one result to the file.
    pub fn store(&mut self, checks: &[String], entry: &EntryReport) -> Result<()> {
        let record = Record {
            catalog_hash: self.hash.clone(),
            checks: checks.to_vec(),
            entry: entry.clone(),
        };
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        self.records.insert(entry.id.clone(), (checks.to_vec(), entry.clone()));
        self.stats.stored += 1;
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }
}
