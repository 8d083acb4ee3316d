//! A category bundle in memory: validated fusion ring plus optional F/R
//! tables and the derived dimension data, with Deligne products and
//! subcategory extraction.

use crate::fusion::{self, DimensionVector, FusionRing};
use crate::modular::{self, ModularDataset, MonodromyMatrix};
use crate::tensor::{self, FSymbolTable, Fingerprint, RSymbolTable};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Category {
    pub name: String,
    pub ring: FusionRing,
    pub f: Option<FSymbolTable>,
    pub r: Option<RSymbolTable>,
    pub dims: DimensionVector,
}

impl Category {
    /// Builds a category from validated parts. The ring must pass every
    /// axiom; dimensions are computed eagerly.
    pub fn new(
        name: impl Into<String>,
        ring: FusionRing,
        f: Option<FSymbolTable>,
        r: Option<RSymbolTable>,
    ) -> Result<Self> {
        ring.require_valid()?;
        let dims = fusion::fp_dimensions(&ring)?;
        Ok(Self {
            name: name.into(),
            ring,
            f,
            r,
            dims,
        })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn require_f(&self) -> Result<&FSymbolTable> {
        self.f
            .as_ref()
            .ok_or_else(|| Error::MissingData(format!("bundle {} carries no F table", self.name)))
    }

    pub fn require_r(&self) -> Result<&RSymbolTable> {
        self.r
            .as_ref()
            .ok_or_else(|| Error::MissingData(format!("bundle {} carries no R table", self.name)))
    }

    pub fn modular_dataset(&self, tol: f64) -> Result<ModularDataset> {
        modular::assemble(&self.ring, &self.dims, self.require_r()?, tol)
    }

    pub fn monodromy(&self) -> Result<MonodromyMatrix> {
        modular::monodromy(&self.ring, &self.dims, self.require_r()?)
    }

    pub fn fingerprint(&self, tol: f64) -> Result<Fingerprint> {
        tensor::invariant_fingerprint(&self.ring, self.require_f()?, self.require_r()?, &self.dims, tol)
    }

    /// Runs pentagon, hexagon, and unitarity sweeps over whatever tables
    /// the bundle carries.
    pub fn verify(&self, tol: f64) -> Result<CoherenceReport> {
        let mut report = CoherenceReport::default();
        if let Some(f) = &self.f {
            report.pentagon = Some(tensor::check_pentagon(&self.ring, f, tol)?);
            if let Some(r) = &self.r {
                report.hexagon = Some(tensor::check_hexagon(&self.ring, f, r, tol)?);
                report.unitarity = Some(tensor::check_unitarity(&self.ring, f, r, tol)?);
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoherenceReport {
    pub pentagon: Option<tensor::ResidualReport>,
    pub hexagon: Option<tensor::ResidualReport>,
    pub unitarity: Option<tensor::UnitarityReport>,
}

impl CoherenceReport {
    pub fn pass(&self) -> bool {
        self.pentagon.as_ref().map(|p| p.pass()).unwrap_or(true)
            && self.hexagon.as_ref().map(|h| h.pass()).unwrap_or(true)
            && self.unitarity.as_ref().map(|u| u.pass()).unwrap_or(true)
    }
}

/// Deligne product: pairwise labels, factorwise fusion, associator, and
/// braiding. Coherence of the product is verified post-construction.
pub fn deligne_product(left: &Category, right: &Category, tol: f64) -> Result<Category> {
    if !left.ring.is_multiplicity_free() || !right.ring.is_multiplicity_free() {
        return Err(Error::Unsupported(
            "Deligne product requires multiplicity-free factors".into(),
        ));
    }
    let ra = left.rank();
    let rb = right.rank();
    let pair = |i: usize, j: usize| i * rb + j;
    let labels: Vec<String> = (0..ra)
        .flat_map(|i| {
            (0..rb).map(move |j| {
                format!("{}.{}", left.ring.label(i), right.ring.label(j))
            })
        })
        .collect();
    let dual: Vec<usize> = (0..ra)
        .flat_map(|i| (0..rb).map(move |j| pair(left.ring.dual(i), right.ring.dual(j))))
        .collect();
    let r = ra * rb;
    let mut n = vec![0u32; r * r * r];
    for a1 in 0..ra {
        for a2 in 0..rb {
            for b1 in 0..ra {
                for b2 in 0..rb {
                    for c1 in 0..ra {
                        for c2 in 0..rb {
                            let v = left.ring.n(a1, b1, c1) * right.ring.n(a2, b2, c2);
                            n[(pair(a1, a2) * r + pair(b1, b2)) * r + pair(c1, c2)] = v;
                        }
                    }
                }
            }
        }
    }
    let ring = FusionRing::new(labels, dual, n)?;

    let f = match (&left.f, &right.f) {
        (Some(fa), Some(fb)) => {
            let mut out = FSymbolTable::default();
            for (ka, va) in &fa.entries {
                for (kb, vb) in &fb.entries {
                    let key = [
                        pair(ka[0], kb[0]),
                        pair(ka[1], kb[1]),
                        pair(ka[2], kb[2]),
                        pair(ka[3], kb[3]),
                        pair(ka[4], kb[4]),
                        pair(ka[5], kb[5]),
                    ];
                    out.entries.insert(key, va * vb);
                }
            }
            Some(out)
        }
        _ => None,
    };
    let r_tab = match (&left.r, &right.r) {
        (Some(ta), Some(tb)) => {
            let mut out = RSymbolTable::default();
            for (ka, va) in &ta.entries {
                for (kb, vb) in &tb.entries {
                    let key = [pair(ka[0], kb[0]), pair(ka[1], kb[1]), pair(ka[2], kb[2])];
                    out.entries.insert(key, va * vb);
                }
            }
            Some(out)
        }
        _ => None,
    };

    let name = format!("{}.x.{}", left.name, right.name);
    let cat = Category::new(name, ring, f, r_tab)?;
    let coherence = cat.verify(tol)?;
    if !coherence.pass() {
        return Err(Error::Inconsistent(format!(
            "Deligne product {} failed post-construction coherence",
            cat.name
        )));
    }
    Ok(cat)
}

/// Extracts a standalone bundle from a fusion-closed member set, restricting
/// fusion, F, and R to the members. Internal channels of member sectors stay
/// inside the set, so the restricted tables are complete.
pub fn extract_subcategory(cat: &Category, members: &[usize], name: impl Into<String>) -> Result<Category> {
    let r = cat.rank();
    if members.first() != Some(&0) {
        return Err(Error::Structural("subcategory must contain the unit at position 0".into()));
    }
    let mut pos = vec![usize::MAX; r];
    for (i, &m) in members.iter().enumerate() {
        if m >= r {
            return Err(Error::Structural(format!("member index {m} out of range")));
        }
        pos[m] = i;
    }
    let labels: Vec<String> = members.iter().map(|&m| cat.ring.label(m).to_string()).collect();
    let dual: Vec<usize> = members
        .iter()
        .map(|&m| {
            let d = cat.ring.dual(m);
            if pos[d] == usize::MAX {
                return Err(Error::Structural(format!(
                    "member set not closed under duals at {}",
                    cat.ring.label(m)
                )));
            }
            Ok(pos[d])
        })
        .collect::<Result<_>>()?;
    let k = members.len();
    let mut n = vec![0u32; k * k * k];
    for (ia, &a) in members.iter().enumerate() {
        for (ib, &b) in members.iter().enumerate() {
            for c in cat.ring.channels(a, b) {
                if pos[c] == usize::MAX {
                    return Err(Error::Structural(format!(
                        "member set not closed under fusion: {}⊗{} ∋ {}",
                        cat.ring.label(a),
                        cat.ring.label(b),
                        cat.ring.label(c)
                    )));
                }
                n[(ia * k + ib) * k + pos[c]] = cat.ring.n(a, b, c);
            }
        }
    }
    let ring = FusionRing::new(labels, dual, n)?;
    let f = cat.f.as_ref().map(|f| {
        let entries = f
            .entries
            .iter()
            .filter(|(key, _)| key.iter().all(|&i| pos[i] != usize::MAX))
            .map(|(key, v)| {
                let mut out = [0usize; 6];
                for (o, &i) in out.iter_mut().zip(key.iter()) {
                    *o = pos[i];
                }
                (out, *v)
            })
            .collect();
        FSymbolTable { entries }
    });
    let r_tab = cat.r.as_ref().map(|t| {
        let entries = t
            .entries
            .iter()
            .filter(|(key, _)| key.iter().all(|&i| pos[i] != usize::MAX))
            .map(|(key, v)| ([pos[key[0]], pos[key[1]], pos[key[2]]], *v))
            .collect();
        RSymbolTable { entries }
    });
    Category::new(name, ring, f, r_tab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TOL: f64 = 1e-9;

    #[test]
    fn product_with_trivial_preserves_fingerprint() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        let triv = catalog::trivial();
        let prod = deligne_product(&cat, &triv, TOL).unwrap();
        assert_eq!(prod.fingerprint(TOL).unwrap(), cat.fingerprint(TOL).unwrap());
    }

    #[test]
    fn ising_times_fibonacci_has_rank_six() {
        let a = catalog::ising_with_spec_braiding(1).unwrap();
        let b = catalog::fibonacci().unwrap();
        let prod = deligne_product(&a, &b, TOL).unwrap();
        assert_eq!(prod.rank(), 6);
    }

    #[test]
    fn product_twists_multiply() {
        let a = catalog::ising_with_spec_braiding(1).unwrap();
        let b = catalog::fibonacci().unwrap();
        let prod = deligne_product(&a, &b, TOL).unwrap();
        let mda = a.modular_dataset(TOL).unwrap();
        let mdb = b.modular_dataset(TOL).unwrap();
        let mdp = prod.modular_dataset(TOL).unwrap();
        let rb = b.rank();
        for i in 0..a.rank() {
            for j in 0..rb {
                let want = mda.theta[i] * mdb.theta[j];
                assert!((mdp.theta[i * rb + j] - want).norm() < TOL);
            }
        }
    }

    #[test]
    fn product_global_dimension_multiplies() {
        let a = catalog::ising_with_spec_braiding(1).unwrap();
        let b = catalog::fibonacci().unwrap();
        let prod = deligne_product(&a, &b, TOL).unwrap();
        assert!((prod.dims.dsq - a.dims.dsq * b.dims.dsq).abs() < 1e-9);
    }

    #[test]
    fn extraction_round_trips_full_category() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        let full: Vec<usize> = (0..cat.rank()).collect();
        let sub = extract_subcategory(&cat, &full, "copy").unwrap();
        assert_eq!(sub.fingerprint(TOL).unwrap(), cat.fingerprint(TOL).unwrap());
    }

    #[test]
    fn extraction_rejects_non_closed_sets() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        // {1, σ} is not fusion-closed (σσ ∋ ψ).
        assert!(extract_subcategory(&cat, &[0, 1], "bad").is_err());
    }
}
