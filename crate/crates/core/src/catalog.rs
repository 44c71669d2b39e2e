//! Named example structures shipped with the library.
//!
//! Each entry is a JSON file in `data/` whose stem is its name. Modules refer
//! to their rings by catalog name.

use std::sync::OnceLock;

use serde_json::Value;

use crate::error::{Error, Limits, Result};
use crate::json::{parse_structure, Structure};

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../data/", $name, ".json")))),*]
    };
}

// sorted by name
const FILES: [(&str, &str); 25] = entries![
    "C3-idem",
    "C3-idem-reg",
    "C3-idem^2",
    "C3-nil",
    "C3-nil-reg",
    "M3",
    "MAT2",
    "MAT2-reg",
    "N5",
    "PM2",
    "PM2-reg",
    "PZ2",
    "PZ2-reg",
    "TWO",
    "TWO-chain",
    "TWO-reg",
    "TWO^2",
    "TWO^2-dual",
    "chain3",
    "diamond",
    "lat-M3",
    "lat-N5",
    "lat-chain3",
    "lat-diamond",
    "one",
];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// `lattice`, `quantale`, `module` or `bimodule`
    pub kind: &'static str,
    pub note: String,
    pub payload: &'static str,
}

fn entries_cell() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        FILES
            .iter()
            .map(|&(name, payload)| {
                let v: Value = serde_json::from_str(payload).expect("catalog file is JSON");
                let kind = match v["kind"].as_str() {
                    Some("monoid") | Some("quantale") => "quantale",
                    Some("module") => "module",
                    Some("bimodule") => "bimodule",
                    _ => "lattice",
                };
                CatalogEntry {
                    name,
                    kind,
                    note: v["note"].as_str().unwrap_or_default().to_string(),
                    payload,
                }
            })
            .collect()
    })
}

/// All entries in name order.
pub fn entries() -> &'static [CatalogEntry] {
    entries_cell()
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let name = name.strip_prefix("catalog:").unwrap_or(name);
    entries()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// Entry names, optionally restricted to one kind, in name order.
pub fn list(kind: Option<&str>) -> Vec<&'static str> {
    entries()
        .iter()
        .filter(|e| kind.is_none_or(|k| e.kind == k))
        .map(|e| e.name)
        .collect()
}

/// Loads and validates an entry. Loaded structures are cached, so every
/// reference to a catalog ring shares one object.
pub fn load(name: &str) -> Result<Structure> {
    static CACHE: OnceLock<Vec<OnceLock<Structure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| FILES.iter().map(|_| OnceLock::new()).collect());
    let e = entry(name)?;
    let i = FILES.iter().position(|(n, _)| *n == e.name).unwrap();
    if let Some(s) = cache[i].get() {
        return Ok(s.clone());
    }
    let s = parse_structure(e.payload, &load, &Limits::with_cap(64))?;
    Ok(cache[i].get_or_init(|| s).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_is_sorted_and_loads() {
        let names = list(None);
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        for n in names {
            load(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
    }

    #[test]
    fn quantales_listed() {
        let q = list(Some("quantale"));
        for n in ["TWO", "C3-nil", "C3-idem", "PZ2"] {
            assert!(q.contains(&n));
        }
    }

    #[test]
    fn examples() {
        assert_eq!(load("TWO").unwrap().into_quantale().unwrap().len(), 2);
        let m3 = load("catalog:M3").unwrap().into_module().unwrap();
        assert_eq!(m3.len(), 5);
        assert_eq!(m3.lattice().join_irreducibles().len(), 3);
        let pz2 = load("PZ2").unwrap().into_quantale().unwrap();
        assert!(pz2.is_commutative() && !pz2.is_integral());
        assert!(matches!(load("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn rings_are_shared() {
        let a = load("diamond").unwrap().into_module().unwrap();
        let b = load("TWO^2").unwrap().into_module().unwrap();
        assert!(std::sync::Arc::ptr_eq(
            a.left_ring().unwrap(),
            b.left_ring().unwrap()
        ));
    }
}
