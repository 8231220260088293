//! The listing of the eighty STS(15)s.
//!
//! The catalog file is a JSON array of `{"id": n, "blocks": [[a, b, c], ...]}`
//! with 0-based points and ids `1..=80` in file order. A copy generated by
//! `examples/classify_sts15.rs` is embedded; see `data/PROVENANCE.md` for how
//! its classes were found and ordered.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::designs::{pasch_count, Fingerprint, IsomorphismSearch, TripleSystem};
use crate::{Error, Result};

/// Number of isomorphism classes of STS(15).
pub const CATALOG_SIZE: usize = 80;

const EMBEDDED: &str = include_str!("../data/sts15_catalog.json");

#[derive(Deserialize)]
struct Entry {
    id: usize,
    blocks: Vec<[usize; 3]>,
}

/// Validated STS(15) listing, addressed by 1-based id.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<TripleSystem>,
    source_digest: String,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn embedded() -> Result<Catalog> {
        Catalog::from_json(EMBEDDED)
    }

    /// Parses and validates a catalog file's contents.
    pub fn from_json(text: &str) -> Result<Catalog> {
        let raw: Vec<Entry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
        if raw.len() != CATALOG_SIZE {
            return Err(Error::WrongCount {
                expected: CATALOG_SIZE,
                found: raw.len(),
            });
        }
        let entries = raw
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                if e.id != i + 1 {
                    return Err(Error::CatalogEntry {
                        id: e.id,
                        reason: format!("found at position {}", i + 1),
                    });
                }
                TripleSystem::from_blocks(15, e.blocks).map_err(|err| Error::CatalogEntry {
                    id: e.id,
                    reason: err.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog {
            entries,
            source_digest: hex::encode(Sha256::digest(text.as_bytes())),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog> {
        Catalog::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `#id`, 1-based.
    pub fn get(&self, id: usize) -> Option<&TripleSystem> {
        id.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    /// `(id, system)` pairs in listing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &TripleSystem)> {
        self.entries.iter().enumerate().map(|(i, s)| (i + 1, s))
    }

    pub fn systems(&self) -> &[TripleSystem] {
        &self.entries
    }

    /// SHA-256 of the raw catalog text, hex encoded.
    pub fn source_digest(&self) -> &str {
        &self.source_digest
    }

    /// Number of entries with each Pasch count.
    pub fn pasch_distribution(&self) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::new();
        for s in &self.entries {
            *dist.entry(pasch_count(s)).or_insert(0) += 1;
        }
        dist
    }
}

/// Reads the catalog at `path`.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    Catalog::load(path)
}

/// True when no two entries are isomorphic.
///
/// Entries are grouped by [`Fingerprint`]; only pairs inside a group are
/// given to the exact isomorphism search. `budget` bounds the total number
/// of isomorphism-search nodes.
pub fn verify_pairwise_nonisomorphic(cat: &Catalog, budget: Option<u64>) -> Result<bool> {
    let prints: Vec<Fingerprint> = cat.entries.par_iter().map(Fingerprint::of).collect();
    let mut groups: HashMap<&Fingerprint, Vec<usize>> = HashMap::new();
    for (i, fp) in prints.iter().enumerate() {
        groups.entry(fp).or_default().push(i);
    }
    let mut pairs: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|g| {
            g.iter()
                .enumerate()
                .flat_map(move |(k, &a)| g[k + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    pairs.sort_unstable();
    let mut left = budget;
    for (a, b) in pairs {
        let mut search = IsomorphismSearch::new(&cat.entries[a], &cat.entries[b]);
        if let Some(n) = left {
            search = search.with_budget(n);
        }
        let iso = search.first().map_err(|_| Error::NodeLimit {
            task: "pairwise isomorphism check",
            budget: budget.unwrap_or(u64::MAX),
        })?;
        if iso.is_some() {
            return Ok(false);
        }
        left = left.map(|n| n - search.nodes().min(n));
    }
    Ok(true)
}

/// The id of the entry isomorphic to `sys`, if any.
pub fn identify(sys: &TripleSystem, cat: &Catalog) -> Option<usize> {
    if sys.v() != 15 {
        return None;
    }
    let fp = Fingerprint::of(sys);
    let hits: Vec<usize> = cat
        .iter()
        .filter(|(_, s)| Fingerprint::of(s) == fp)
        .filter(|(_, s)| {
            IsomorphismSearch::new(sys, s)
                .first()
                .expect("unbudgeted")
                .is_some()
        })
        .map(|(id, _)| id)
        .collect();
    assert!(hits.len() <= 1, "catalog entries {hits:?} are isomorphic");
    hits.first().copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_loads() {
        let cat = Catalog::embedded().unwrap();
        assert_eq!(cat.len(), 80);
        assert!(cat.iter().all(|(_, s)| s.b() == 35));
        assert_eq!(cat.source_digest().len(), 64);
        assert!(cat.get(0).is_none() && cat.get(81).is_none());
        assert_eq!(
            Catalog::embedded().unwrap().source_digest(),
            cat.source_digest()
        );
    }

    #[test]
    fn wrong_count() {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(EMBEDDED).unwrap();
        v.pop();
        let err = Catalog::from_json(&serde_json::to_string(&v).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::WrongCount {
                expected: 80,
                found: 79
            }
        ));
    }

    #[test]
    fn corrupt_entry() {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(EMBEDDED).unwrap();
        v[4]["blocks"][10] = serde_json::json!([0, 1, 2]);
        let err = Catalog::from_json(&serde_json::to_string(&v).unwrap()).unwrap_err();
        assert!(matches!(err, Error::CatalogEntry { id: 5, .. }), "{err}");
        v.swap(0, 1);
        assert!(Catalog::from_json(&serde_json::to_string(&v).unwrap()).is_err());
        assert!(matches!(Catalog::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn duplicate_is_detected() {
        let mut v: Vec<serde_json::Value> = serde_json::from_str(EMBEDDED).unwrap();
        v[2]["blocks"] = v[1]["blocks"].clone();
        let cat = Catalog::from_json(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(!verify_pairwise_nonisomorphic(&cat, None).unwrap());
    }

    #[test]
    fn identify_self_and_mismatch() {
        let cat = Catalog::embedded().unwrap();
        assert_eq!(identify(cat.get(40).unwrap(), &cat), Some(40));
        assert_eq!(
            identify(&crate::designs::builtin("sts13-1").unwrap(), &cat),
            None
        );
    }
}
