//! Fusion rings: validation, Frobenius–Perron dimensions, global dimension.
//!
//! A fusion ring is the based ring of sector composition: an ordered label
//! set with index 0 the unit, a dual involution, and nonnegative integer
//! structure constants `N_{ab}^c`.

use crate::{Error, Result};

/// A named sector together with its position in the ring's label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorLabel {
    pub id: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    /// `rank^3` tensor, row-major `[a][b][c]`.
    n: Vec<u32>,
}

impl FusionRing {
    /// Structural construction: shape and index-range checks only. Axioms
    /// are checked separately by [`FusionRing::validate`].
    pub fn new(labels: Vec<String>, dual: Vec<usize>, n: Vec<u32>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::Structural("ring must contain the unit sector".into()));
        }
        if dual.len() != r {
            return Err(Error::Structural(format!(
                "dual map has length {} but rank is {}",
                dual.len(),
                r
            )));
        }
        if n.len() != r * r * r {
            return Err(Error::Structural(format!(
                "fusion tensor has {} entries, expected {}^3 = {}",
                n.len(),
                r,
                r * r * r
            )));
        }
        if let Some(&d) = dual.iter().find(|&&d| d >= r) {
            return Err(Error::Structural(format!("dual index {d} out of range")));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if labels[i] == labels[j] {
                    return Err(Error::Structural(format!(
                        "duplicate label id {:?} at indices {i} and {j}",
                        labels[i]
                    )));
                }
            }
        }
        Ok(Self { labels, dual, n })
    }

    /// Convenience constructor from the list of nonzero coefficients.
    pub fn from_entries(
        labels: Vec<String>,
        dual: Vec<usize>,
        entries: &[(usize, usize, usize, u32)],
    ) -> Result<Self> {
        let r = labels.len();
        let mut n = vec![0u32; r * r * r];
        for &(a, b, c, v) in entries {
            if a >= r || b >= r || c >= r {
                return Err(Error::Structural(format!(
                    "fusion entry ({a},{b},{c}) out of range for rank {r}"
                )));
            }
            n[(a * r + b) * r + c] = v;
        }
        Self::new(labels, dual, n)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn sector(&self, index: usize) -> SectorLabel {
        SectorLabel {
            id: self.labels[index].clone(),
            index,
        }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == id)
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> u32 {
        let r = self.rank();
        self.n[(a * r + b) * r + c]
    }

    /// Fusion channels of `a ⊗ b`: all `c` with `N_{ab}^c > 0`.
    pub fn channels(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&c| self.n(a, b, c) > 0).collect()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.n.iter().all(|&v| v <= 1)
    }

    /// Checks every ring axiom and reports each violation with indices.
    /// An empty report means the ring is valid.
    pub fn validate(&self) -> ValidationReport {
        let r = self.rank();
        let mut violations = Vec::new();
        // Unit law.
        for b in 0..r {
            for c in 0..r {
                let want = u32::from(b == c);
                if self.n(0, b, c) != want {
                    violations.push(Violation::new("unit-left", vec![0, b, c]));
                }
                if self.n(b, 0, c) != want {
                    violations.push(Violation::new("unit-right", vec![b, 0, c]));
                }
            }
        }
        // Dual involution.
        if self.dual[0] != 0 {
            violations.push(Violation::new("dual-unit", vec![0]));
        }
        for a in 0..r {
            if self.dual[self.dual[a]] != a {
                violations.push(Violation::new("dual-involution", vec![a]));
            }
        }
        // Dual pairing: N_{ab}^0 = δ_{b,ā}.
        for a in 0..r {
            for b in 0..r {
                let want = u32::from(b == self.dual[a]);
                if self.n(a, b, 0) != want {
                    violations.push(Violation::new("dual-pairing", vec![a, b, 0]));
                }
            }
        }
        // Commutativity (required for any braiding to exist).
        for a in 0..r {
            for b in (a + 1)..r {
                for c in 0..r {
                    if self.n(a, b, c) != self.n(b, a, c) {
                        violations.push(Violation::new("commutativity", vec![a, b, c]));
                    }
                }
            }
        }
        // Associativity: Σ_m N_{ab}^m N_{mc}^l = Σ_m N_{bc}^m N_{am}^l.
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for l in 0..r {
                        let lhs: u32 = (0..r).map(|m| self.n(a, b, m) * self.n(m, c, l)).sum();
                        let rhs: u32 = (0..r).map(|m| self.n(b, c, m) * self.n(a, m, l)).sum();
                        if lhs != rhs {
                            violations.push(Violation::new("associativity", vec![a, b, c, l]));
                        }
                    }
                }
            }
        }
        // Frobenius reciprocity: N_{ab}^c = N_{āc}^b = N_{c b̄}^a.
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let v = self.n(a, b, c);
                    if self.n(self.dual[a], c, b) != v || self.n(c, self.dual[b], a) != v {
                        violations.push(Violation::new("frobenius-reciprocity", vec![a, b, c]));
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidRing(report.summary()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub indices: Vec<usize>,
}

impl Violation {
    fn new(rule: &'static str, indices: Vec<usize>) -> Self {
        Self { rule, indices }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_valid() {
            "valid".into()
        } else {
            let mut rules: Vec<&str> = self.violations.iter().map(|v| v.rule).collect();
            rules.dedup();
            format!("{} violation(s): {}", self.violations.len(), rules.join(", "))
        }
    }
}

/// Quantum dimensions together with the global dimension `D² = Σ d_i²`.
#[derive(Debug, Clone)]
pub struct DimensionVector {
    pub d: Vec<f64>,
    pub dsq: f64,
}

const POWER_ITERATION_CAP: usize = 100_000;

/// Frobenius–Perron dimensions: `d_a` is the Perron–Frobenius eigenvalue of
/// the fusion matrix `(N_a)_{bc} = N_{ab}^c`.
///
/// The dimension vector is the common positive eigenvector of every `N_a`,
/// hence the PF eigenvector of the primitive matrix `M = Σ_a N_a`; power
/// iteration on `M` with the all-ones start vector converges to it.
pub fn fp_dimensions(ring: &FusionRing) -> Result<DimensionVector> {
    let r = ring.rank();
    let mut v = vec![1.0f64; r];
    let apply = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; r];
        for (b, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for a in 0..r {
                for (c, vc) in v.iter().enumerate() {
                    let n = ring.n(a, b, c);
                    if n > 0 {
                        acc += f64::from(n) * vc;
                    }
                }
            }
            *slot = acc;
        }
        out
    };
    let mut converged = false;
    for _ in 0..POWER_ITERATION_CAP {
        let w = apply(&v);
        let norm = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if norm == 0.0 {
            return Err(Error::Numerical("fusion matrix sum annihilated the iterate".into()));
        }
        let w: Vec<f64> = w.iter().map(|x| x / norm).collect();
        let delta = w
            .iter()
            .zip(&v)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        v = w;
        if delta < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "power iteration did not converge within {POWER_ITERATION_CAP} iterations"
        )));
    }
    if v[0] <= 0.0 {
        return Err(Error::Numerical("unit component of PF vector vanished".into()));
    }
    let d: Vec<f64> = v.iter().map(|x| x / v[0]).collect();
    let dsq = d.iter().map(|x| x * x).sum();
    Ok(DimensionVector { d, dsq })
}

/// Largest deviation of `d_a d_b` from `Σ_c N_{ab}^c d_c`.
pub fn multiplicativity_residual(ring: &FusionRing, dims: &DimensionVector) -> f64 {
    let r = ring.rank();
    let mut worst = 0.0f64;
    for a in 0..r {
        for b in 0..r {
            let sum: f64 = (0..r)
                .map(|c| f64::from(ring.n(a, b, c)) * dims.d[c])
                .sum();
            worst = worst.max((dims.d[a] * dims.d[b] - sum).abs());
        }
    }
    worst
}

/// The categorical global dimension `Σ_i d_i²` (the two-interval index).
pub fn global_dimension(dims: &DimensionVector) -> f64 {
    dims.dsq
}
