//! Skeletal associator (F) and braiding (R) data: pentagon/hexagon
//! coherence, unitarity, the gauge action, gauge-invariant fingerprints,
//! and the reverse braiding.
//!
//! Conventions (multiplicity-free): `[F^{abc}_d]_{e,f}` is stored under the
//! key `(a,b,c,d,e,f)` where `e` is a channel of `a⊗b` with `e⊗c ∋ d` and
//! `f` a channel of `b⊗c` with `a⊗f ∋ d`. `R^{ab}_c` is stored under
//! `(a,b,c)` for every `c` with `N_{ab}^c = 1`.

use std::collections::BTreeMap;

use crate::fusion::{DimensionVector, FusionRing};
use crate::modular;
use crate::{C64, Error, Result};

pub type FKey = [usize; 6];
pub type RKey = [usize; 3];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FSymbolTable {
    pub entries: BTreeMap<FKey, C64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RSymbolTable {
    pub entries: BTreeMap<RKey, C64>,
}

/// Channelwise basis rescaling `(a,b;c) ↦ g ∈ ℂ^×`, normalized so that
/// every factor involving the unit equals 1.
#[derive(Debug, Clone, Default)]
pub struct GaugeTransform {
    pub entries: BTreeMap<RKey, C64>,
}

pub fn f_admissible(ring: &FusionRing, k: &FKey) -> bool {
    let [a, b, c, d, e, f] = *k;
    ring.n(a, b, e) > 0 && ring.n(e, c, d) > 0 && ring.n(b, c, f) > 0 && ring.n(a, f, d) > 0
}

pub fn admissible_f_keys(ring: &FusionRing) -> Vec<FKey> {
    let r = ring.rank();
    let mut keys = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for e in ring.channels(a, b) {
                    for d in ring.channels(e, c) {
                        for f in ring.channels(b, c) {
                            if ring.n(a, f, d) > 0 {
                                keys.push([a, b, c, d, e, f]);
                            }
                        }
                    }
                }
            }
        }
    }
    keys
}

pub fn admissible_r_keys(ring: &FusionRing) -> Vec<RKey> {
    let r = ring.rank();
    let mut keys = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in ring.channels(a, b) {
                keys.push([a, b, c]);
            }
        }
    }
    keys
}

impl FSymbolTable {
    pub fn get(&self, key: &FKey) -> Option<C64> {
        self.entries.get(key).copied()
    }

    /// Value of a matrix element: zero on inadmissible tuples, error on a
    /// missing admissible entry (missing entries are never implicit 1's).
    pub fn value(&self, ring: &FusionRing, key: &FKey) -> Result<C64> {
        if !f_admissible(ring, key) {
            return Ok(C64::new(0.0, 0.0));
        }
        self.entries
            .get(key)
            .copied()
            .ok_or(Error::IncompleteTable {
                kind: "F",
                key: key.to_vec(),
            })
    }

    pub fn check_complete(&self, ring: &FusionRing) -> Result<()> {
        for key in admissible_f_keys(ring) {
            if !self.entries.contains_key(&key) {
                return Err(Error::IncompleteTable {
                    kind: "F",
                    key: key.to_vec(),
                });
            }
        }
        Ok(())
    }
}

impl RSymbolTable {
    pub fn get(&self, key: &RKey) -> Option<C64> {
        self.entries.get(key).copied()
    }

    pub fn value(&self, ring: &FusionRing, key: &RKey) -> Result<C64> {
        if ring.n(key[0], key[1], key[2]) == 0 {
            return Ok(C64::new(0.0, 0.0));
        }
        self.entries
            .get(key)
            .copied()
            .ok_or(Error::IncompleteTable {
                kind: "R",
                key: key.to_vec(),
            })
    }

    pub fn check_complete(&self, ring: &FusionRing) -> Result<()> {
        for key in admissible_r_keys(ring) {
            if !self.entries.contains_key(&key) {
                return Err(Error::IncompleteTable {
                    kind: "R",
                    key: key.to_vec(),
                });
            }
        }
        Ok(())
    }
}

/// Residual sweep result. The worst offender is deterministic: strictly
/// larger residuals replace it, ties keep the lexicographically first tuple.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub worst: Option<Vec<usize>>,
    pub instances: usize,
    pub tol: f64,
}

impl ResidualReport {
    fn new(tol: f64) -> Self {
        Self {
            max_residual: 0.0,
            worst: None,
            instances: 0,
            tol,
        }
    }

    fn record(&mut self, residual: f64, key: Vec<usize>) {
        self.instances += 1;
        if residual > self.max_residual {
            self.max_residual = residual;
            self.worst = Some(key);
        }
    }

    pub fn pass(&self) -> bool {
        self.max_residual < self.tol
    }
}

fn require_multiplicity_free(ring: &FusionRing) -> Result<()> {
    if ring.is_multiplicity_free() {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "F/R tables require a multiplicity-free fusion ring".into(),
        ))
    }
}

/// Evaluates every pentagon instance
/// `F^{fcd}_{e;gl} F^{abl}_{e;fk} = Σ_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}`.
pub fn check_pentagon(ring: &FusionRing, f_tab: &FSymbolTable, tol: f64) -> Result<ResidualReport> {
    require_multiplicity_free(ring)?;
    f_tab.check_complete(ring)?;
    let r = ring.rank();
    let mut report = ResidualReport::new(tol);
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for f in ring.channels(a, b) {
                        for g in ring.channels(f, c) {
                            for e in ring.channels(g, d) {
                                for l in ring.channels(c, d) {
                                    for k in ring.channels(b, l) {
                                        if ring.n(a, k, e) == 0 {
                                            continue;
                                        }
                                        let lhs = f_tab.value(ring, &[f, c, d, e, g, l])?
                                            * f_tab.value(ring, &[a, b, l, e, f, k])?;
                                        let mut rhs = C64::new(0.0, 0.0);
                                        for h in ring.channels(b, c) {
                                            if ring.n(a, h, g) == 0 || ring.n(h, d, k) == 0 {
                                                continue;
                                            }
                                            rhs += f_tab.value(ring, &[a, b, c, g, f, h])?
                                                * f_tab.value(ring, &[a, h, d, e, g, k])?
                                                * f_tab.value(ring, &[b, c, d, k, h, l])?;
                                        }
                                        let res = (lhs - rhs).norm();
                                        report.record(res, vec![a, b, c, d, e, f, g, l, k]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Evaluates both hexagon families over all admissible instances:
/// `R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = Σ_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}`
/// and the same with every `R` replaced by its inverse.
pub fn check_hexagon(
    ring: &FusionRing,
    f_tab: &FSymbolTable,
    r_tab: &RSymbolTable,
    tol: f64,
) -> Result<ResidualReport> {
    require_multiplicity_free(ring)?;
    f_tab.check_complete(ring)?;
    r_tab.check_complete(ring)?;
    let r = ring.rank();
    let mut report = ResidualReport::new(tol);
    let braid = |key: &RKey, inverse: bool| -> Result<C64> {
        let v = r_tab.value(ring, key)?;
        if inverse {
            if v.norm() < 1e-300 {
                return Err(Error::Inconsistent(format!(
                    "R entry at {key:?} vanishes; inverse braiding undefined"
                )));
            }
            Ok(v.inv())
        } else {
            Ok(v)
        }
    };
    for (fam, inverse) in [(0usize, false), (1usize, true)] {
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for e in ring.channels(c, a) {
                        for d in ring.channels(e, b) {
                            for g in ring.channels(c, b) {
                                if ring.n(a, g, d) == 0 {
                                    continue;
                                }
                                // The inverse family braids on the other
                                // side: its R indices come in the opposite
                                // order, which is what couples R^{xy} to
                                // R^{yx} across the two families.
                                let lhs_l = if inverse { [a, c, e] } else { [c, a, e] };
                                let lhs_r = if inverse { [b, c, g] } else { [c, b, g] };
                                let lhs = braid(&lhs_l, inverse)?
                                    * f_tab.value(ring, &[a, c, b, d, e, g])?
                                    * braid(&lhs_r, inverse)?;
                                let mut rhs = C64::new(0.0, 0.0);
                                for f in ring.channels(a, b) {
                                    if ring.n(c, f, d) == 0 {
                                        continue;
                                    }
                                    let mid = if inverse { [f, c, d] } else { [c, f, d] };
                                    rhs += f_tab.value(ring, &[c, a, b, d, e, f])?
                                        * braid(&mid, inverse)?
                                        * f_tab.value(ring, &[a, b, c, d, f, g])?;
                                }
                                let res = (lhs - rhs).norm();
                                report.record(res, vec![fam, a, b, c, d, e, g]);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct UnitarityReport {
    pub f_residual: f64,
    pub f_worst: Option<Vec<usize>>,
    pub r_residual: f64,
    pub r_worst: Option<Vec<usize>>,
    pub tol: f64,
}

impl UnitarityReport {
    pub fn pass(&self) -> bool {
        self.f_residual < self.tol && self.r_residual < self.tol
    }
}

/// Verifies `[F^{abc}_d]` is unitary for every fixed `(a,b,c,d)` and that
/// every R entry is unimodular.
pub fn check_unitarity(
    ring: &FusionRing,
    f_tab: &FSymbolTable,
    r_tab: &RSymbolTable,
    tol: f64,
) -> Result<UnitarityReport> {
    require_multiplicity_free(ring)?;
    f_tab.check_complete(ring)?;
    r_tab.check_complete(ring)?;
    let r = ring.rank();
    let mut rep = UnitarityReport {
        f_residual: 0.0,
        f_worst: None,
        r_residual: 0.0,
        r_worst: None,
        tol,
    };
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let es: Vec<usize> = ring
                        .channels(a, b)
                        .into_iter()
                        .filter(|&e| ring.n(e, c, d) > 0)
                        .collect();
                    let fs: Vec<usize> = ring
                        .channels(b, c)
                        .into_iter()
                        .filter(|&f| ring.n(a, f, d) > 0)
                        .collect();
                    if es.is_empty() && fs.is_empty() {
                        continue;
                    }
                    if es.len() != fs.len() {
                        return Err(Error::Inconsistent(format!(
                            "fusion tree count mismatch at ({a},{b},{c};{d}): {} vs {}",
                            es.len(),
                            fs.len()
                        )));
                    }
                    // (F F†)_{e,e'} should be the identity.
                    for (i, &e1) in es.iter().enumerate() {
                        for (j, &e2) in es.iter().enumerate() {
                            let mut acc = C64::new(0.0, 0.0);
                            for &f in &fs {
                                acc += f_tab.value(ring, &[a, b, c, d, e1, f])?
                                    * f_tab.value(ring, &[a, b, c, d, e2, f])?.conj();
                            }
                            let want = C64::new(f64::from(u8::from(i == j)), 0.0);
                            let res = (acc - want).norm();
                            if res > rep.f_residual {
                                rep.f_residual = res;
                                rep.f_worst = Some(vec![a, b, c, d, e1, e2]);
                            }
                        }
                    }
                }
            }
        }
    }
    for (key, v) in &r_tab.entries {
        let res = (v.norm() - 1.0).abs();
        if res > rep.r_residual {
            rep.r_residual = res;
            rep.r_worst = Some(key.to_vec());
        }
    }
    Ok(rep)
}

impl GaugeTransform {
    pub fn identity(ring: &FusionRing) -> Self {
        let entries = admissible_r_keys(ring)
            .into_iter()
            .map(|k| (k, C64::new(1.0, 0.0)))
            .collect();
        Self { entries }
    }

    fn validate(&self, ring: &FusionRing) -> Result<()> {
        for key in admissible_r_keys(ring) {
            let v = self.entries.get(&key).copied().ok_or_else(|| {
                Error::InvalidGauge(format!("missing gauge entry at {key:?}"))
            })?;
            if v.norm() < 1e-300 {
                return Err(Error::InvalidGauge(format!("zero gauge entry at {key:?}")));
            }
            if (key[0] == 0 || key[1] == 0) && (v - C64::new(1.0, 0.0)).norm() > 1e-12 {
                return Err(Error::InvalidGauge(format!(
                    "unit-channel gauge entry at {key:?} must equal 1"
                )));
            }
        }
        Ok(())
    }

    fn factor(&self, key: &RKey) -> C64 {
        self.entries.get(key).copied().unwrap_or(C64::new(1.0, 0.0))
    }
}

/// Gauge action on the tables:
/// `F' = (g_{ab}^e g_{ec}^d)/(g_{bc}^f g_{af}^d) · F` and
/// `R' = (g_{ba}^c / g_{ab}^c) · R`. Coherence pass status is preserved.
pub fn apply_gauge(
    ring: &FusionRing,
    f_tab: &FSymbolTable,
    r_tab: &RSymbolTable,
    gauge: &GaugeTransform,
) -> Result<(FSymbolTable, RSymbolTable)> {
    gauge.validate(ring)?;
    f_tab.check_complete(ring)?;
    r_tab.check_complete(ring)?;
    let mut f_out = FSymbolTable::default();
    for (key, v) in &f_tab.entries {
        let [a, b, c, d, e, f] = *key;
        let num = gauge.factor(&[a, b, e]) * gauge.factor(&[e, c, d]);
        let den = gauge.factor(&[b, c, f]) * gauge.factor(&[a, f, d]);
        f_out.entries.insert(*key, v * num / den);
    }
    let mut r_out = RSymbolTable::default();
    for (key, v) in &r_tab.entries {
        let [a, b, c] = *key;
        // Orientation fixed by hexagon covariance against the F rule above.
        r_out
            .entries
            .insert(*key, v * gauge.factor(&[a, b, c]) / gauge.factor(&[b, a, c]));
    }
    Ok((f_out, r_out))
}

/// Reverse braiding `R^op_{(a,b;c)} = conj(R_{(b,a;c)})`; an involution on
/// tables that preserves the hexagon pass status.
pub fn reverse_braiding(r_tab: &RSymbolTable) -> RSymbolTable {
    let entries = r_tab
        .entries
        .iter()
        .map(|(&[a, b, c], v)| ([b, a, c], v.conj()))
        .collect();
    RSymbolTable { entries }
}

/// Frobenius–Schur indicators: `ν_a = d_a · [F^{a ā a}_a]_{0,0}` for
/// self-dual `a`, zero for the rest (where the scalar is gauge-dependent).
pub fn fs_indicators(
    ring: &FusionRing,
    f_tab: &FSymbolTable,
    dims: &DimensionVector,
) -> Result<Vec<C64>> {
    let r = ring.rank();
    let mut out = Vec::with_capacity(r);
    for a in 0..r {
        if ring.dual(a) == a {
            let v = f_tab.value(ring, &[a, a, a, a, 0, 0])?;
            out.push(v * dims.d[a]);
        } else {
            out.push(C64::new(0.0, 0.0));
        }
    }
    Ok(out)
}

/// Gauge-invariant fingerprint of a braided dataset: the twists, the
/// Frobenius–Schur indicators, and the unnormalized S-matrix, canonicalized
/// over simultaneous sector relabelings that fix the unit. Two datasets with
/// different fingerprints are braided-inequivalent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fingerprint {
    pub rank: usize,
    key: Vec<(i64, i64)>,
}

fn quantize(z: C64) -> (i64, i64) {
    let q = |x: f64| -> i64 {
        let v = (x * 1e6).round();
        if v == 0.0 {
            0
        } else {
            v as i64
        }
    };
    (q(z.re), q(z.im))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    // All permutations of 1..=k, in lexicographic order.
    let mut items: Vec<usize> = (1..=k).collect();
    let mut out = Vec::new();
    loop {
        out.push(items.clone());
        // next_permutation
        let Some(i) = (0..items.len().saturating_sub(1)).rev().find(|&i| items[i] < items[i + 1])
        else {
            break;
        };
        let j = (i + 1..items.len()).rev().find(|&j| items[j] > items[i]).unwrap();
        items.swap(i, j);
        items[i + 1..].reverse();
    }
    out
}

pub fn invariant_fingerprint(
    ring: &FusionRing,
    f_tab: &FSymbolTable,
    r_tab: &RSymbolTable,
    dims: &DimensionVector,
    tol: f64,
) -> Result<Fingerprint> {
    let r = ring.rank();
    let theta = modular::twists(ring, dims, r_tab, tol)?;
    let stilde = modular::s_matrix(ring, dims, &theta);
    let fs = fs_indicators(ring, f_tab, dims)?;
    let mut best: Option<Vec<(i64, i64)>> = None;
    for tail in permutations(r.saturating_sub(1)) {
        let mut perm = Vec::with_capacity(r);
        perm.push(0);
        perm.extend(tail);
        let mut key = Vec::with_capacity(2 * r + r * r);
        for &i in &perm {
            key.push(quantize(theta[i]));
        }
        for &i in &perm {
            key.push(quantize(fs[i]));
        }
        for &i in &perm {
            for &j in &perm {
                key.push(quantize(stilde[i * r + j]));
            }
        }
        if best.as_ref().map(|b| key < *b).unwrap_or(true) {
            best = Some(key);
        }
    }
    Ok(Fingerprint {
        rank: r,
        key: best.unwrap_or_default(),
    })
}
