//! The on-disk category bundle format: a versioned JSON schema carrying
//! labels, duals, fusion coefficients, and optional F/R tables with complex
//! values as `{re, im}` decimal pairs.
//!
//! Loading is a parse-then-validate pipeline: a malformed file is a parse
//! error, while a well-formed file describing bad data (missing dual map,
//! undeclared label, broken ring axiom) is a validation error naming the
//! offending field or axiom.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::category::Category;
use crate::fusion::FusionRing;
use crate::tensor::{FSymbolTable, RSymbolTable};
use crate::{C64, Error, Result};

pub const SCHEMA: &str = "umtc-bundle/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexPair {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexPair> for C64 {
    fn from(p: ComplexPair) -> Self {
        C64::new(p.re, p.im)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FusionEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FEntry {
    pub key: [String; 6],
    pub value: ComplexPair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct REntry {
    pub key: [String; 3],
    pub value: ComplexPair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryBundle {
    pub schema: String,
    pub name: String,
    /// Sector labels in index order; the first is the unit.
    pub labels: Vec<String>,
    /// Dual label per sector, aligned with `labels`. Required for a valid
    /// bundle but optional at the parse level so its absence is a
    /// validation error, not a parse error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<Vec<String>>,
    /// Nonzero fusion coefficients only.
    pub fusion: Vec<FusionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_symbols: Option<Vec<FEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_symbols: Option<Vec<REntry>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl CategoryBundle {
    fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| {
                Error::Validation(format!("undeclared label {label:?} referenced in bundle"))
            })
    }

    /// Validates the bundle and materializes it as a category. Ring axioms
    /// are checked; F/R tables are carried over verbatim (coherence is a
    /// separate, explicit verification step).
    pub fn to_category(&self) -> Result<Category> {
        if self.schema != SCHEMA {
            return Err(Error::Validation(format!(
                "unsupported schema {:?}; expected {SCHEMA:?}",
                self.schema
            )));
        }
        if self.labels.is_empty() {
            return Err(Error::Validation("labels must be nonempty".into()));
        }
        let dual_labels = self
            .dual
            .as_ref()
            .ok_or_else(|| Error::Validation("missing field: dual".into()))?;
        if dual_labels.len() != self.labels.len() {
            return Err(Error::Validation(
                "dual map length does not match labels".into(),
            ));
        }
        let r = self.labels.len();
        let dual: Vec<usize> = dual_labels
            .iter()
            .map(|l| self.index_of(l))
            .collect::<Result<_>>()?;
        let mut n = vec![0u32; r * r * r];
        for e in &self.fusion {
            let (a, b, c) = (self.index_of(&e.a)?, self.index_of(&e.b)?, self.index_of(&e.c)?);
            n[(a * r + b) * r + c] = e.n;
        }
        let ring = FusionRing::new(self.labels.clone(), dual, n)?;
        let f = match &self.f_symbols {
            Some(entries) => {
                let mut table = FSymbolTable::default();
                for e in entries {
                    let mut key = [0usize; 6];
                    for (slot, label) in key.iter_mut().zip(e.key.iter()) {
                        *slot = self.index_of(label)?;
                    }
                    table.entries.insert(key, e.value.clone().into());
                }
                Some(table)
            }
            None => None,
        };
        let r_tab = match &self.r_symbols {
            Some(entries) => {
                let mut table = RSymbolTable::default();
                for e in entries {
                    let mut key = [0usize; 3];
                    for (slot, label) in key.iter_mut().zip(e.key.iter()) {
                        *slot = self.index_of(label)?;
                    }
                    table.entries.insert(key, e.value.clone().into());
                }
                Some(table)
            }
            None => None,
        };
        Category::new(self.name.clone(), ring, f, r_tab)
    }

    /// Deterministic export of an in-memory category.
    pub fn from_category(cat: &Category) -> Self {
        let ring = &cat.ring;
        let r = ring.rank();
        let label = |i: usize| ring.label(i).to_string();
        let mut fusion = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if ring.n(a, b, c) > 0 {
                        fusion.push(FusionEntry {
                            a: label(a),
                            b: label(b),
                            c: label(c),
                            n: ring.n(a, b, c),
                        });
                    }
                }
            }
        }
        let f_symbols = cat.f.as_ref().map(|t| {
            t.entries
                .iter()
                .map(|(k, v)| FEntry {
                    key: [
                        label(k[0]),
                        label(k[1]),
                        label(k[2]),
                        label(k[3]),
                        label(k[4]),
                        label(k[5]),
                    ],
                    value: (*v).into(),
                })
                .collect()
        });
        let r_symbols = cat.r.as_ref().map(|t| {
            t.entries
                .iter()
                .map(|(k, v)| REntry {
                    key: [label(k[0]), label(k[1]), label(k[2])],
                    value: (*v).into(),
                })
                .collect()
        });
        Self {
            schema: SCHEMA.to_string(),
            name: cat.name.clone(),
            labels: (0..r).map(label).collect(),
            dual: Some((0..r).map(|a| label(ring.dual(a))).collect()),
            fusion,
            f_symbols,
            r_symbols,
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialization cannot fail") + "\n"
    }
}

/// Parses and validates a bundle file. Malformed JSON is a parse error;
/// schema or axiom violations are validation errors.
pub fn load_bundle(path: &Path) -> Result<CategoryBundle> {
    let text = std::fs::read_to_string(path)?;
    let bundle: CategoryBundle =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    bundle.to_category()?;
    Ok(bundle)
}

/// Convenience: load a bundle file directly into a category.
pub fn load_category(path: &Path) -> Result<Category> {
    load_bundle(path)?.to_category()
}

/// Writes a category as a bundle file.
pub fn save_category(cat: &Category, path: &Path) -> Result<()> {
    std::fs::write(path, CategoryBundle::from_category(cat).to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TOL: f64 = 1e-9;

    #[test]
    fn round_trip_preserves_fingerprint() {
        let dir = tempfile::tempdir().unwrap();
        for cat in catalog::shipped().unwrap() {
            let path = dir.path().join(format!("{}.json", cat.name));
            save_category(&cat, &path).unwrap();
            let loaded = load_category(&path).unwrap();
            assert_eq!(
                loaded.fingerprint(TOL).unwrap(),
                cat.fingerprint(TOL).unwrap(),
                "round trip broke {}",
                cat.name
            );
        }
    }

    #[test]
    fn export_is_deterministic() {
        let cat = catalog::fibonacci().unwrap();
        let a = CategoryBundle::from_category(&cat).to_json();
        let b = CategoryBundle::from_category(&cat).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_dual_is_a_validation_error_naming_the_field() {
        let cat = catalog::trivial();
        let mut bundle = CategoryBundle::from_category(&cat);
        bundle.dual = None;
        let err = bundle.to_category().unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("dual")),
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.json");
        std::fs::write(&path, "").unwrap();
        assert!(matches!(load_bundle(&path), Err(Error::Parse(_))));
    }

    #[test]
    fn undeclared_label_is_a_validation_error() {
        let cat = catalog::trivial();
        let mut bundle = CategoryBundle::from_category(&cat);
        bundle.fusion.push(FusionEntry {
            a: "ghost".into(),
            b: "1".into(),
            c: "1".into(),
            n: 1,
        });
        assert!(matches!(bundle.to_category(), Err(Error::Validation(_))));
    }

    #[test]
    fn broken_ring_axiom_is_reported() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let mut bundle = CategoryBundle::from_category(&cat);
        // Remove g⊗g → 1, breaking duality.
        bundle.fusion.retain(|e| !(e.a == "g1" && e.b == "g1"));
        assert!(bundle.to_category().is_err());
    }
}
