//! Twists, S/T matrices, modularity (non-degeneracy), Verlinde round-trip,
//! monodromy, and the killing-ring orthogonality identity.

use std::collections::BTreeMap;

use crate::fusion::{DimensionVector, FusionRing};
use crate::tensor::RSymbolTable;
use crate::{C64, Error, Result};

/// Twists, unnormalized S̃, diagonal T, and the global dimension of a
/// coherent braided dataset.
#[derive(Debug, Clone)]
pub struct ModularDataset {
    pub rank: usize,
    pub dims: DimensionVector,
    pub theta: Vec<C64>,
    /// Row-major `rank × rank`.
    pub stilde: Vec<C64>,
    pub dsq: f64,
}

impl ModularDataset {
    #[inline]
    pub fn s(&self, a: usize, b: usize) -> C64 {
        self.stilde[a * self.rank + b]
    }

    /// Diagonal of the T matrix.
    pub fn t(&self, a: usize) -> C64 {
        self.theta[a]
    }
}

/// Ribbon twists `θ_a = d_a⁻¹ Σ_c d_c R_{aa}^c`. A non-unimodular result
/// signals incoherent input data.
pub fn twists(
    ring: &FusionRing,
    dims: &DimensionVector,
    r_tab: &RSymbolTable,
    tol: f64,
) -> Result<Vec<C64>> {
    let r = ring.rank();
    let mut theta = Vec::with_capacity(r);
    for a in 0..r {
        let mut acc = C64::new(0.0, 0.0);
        for c in ring.channels(a, a) {
            acc += dims.d[c] * r_tab.value(ring, &[a, a, c])?;
        }
        let t = acc / dims.d[a];
        if (t.norm() - 1.0).abs() > tol.max(1e-9) * 1e3 {
            return Err(Error::Inconsistent(format!(
                "twist of sector {} has modulus {}; braiding data incoherent",
                ring.label(a),
                t.norm()
            )));
        }
        theta.push(t);
    }
    Ok(theta)
}

/// Unnormalized S-matrix `S̃_{ab} = Σ_c N_{āb}^c d_c θ_c / (θ_a θ_b)`.
pub fn s_matrix(ring: &FusionRing, dims: &DimensionVector, theta: &[C64]) -> Vec<C64> {
    let r = ring.rank();
    let mut s = vec![C64::new(0.0, 0.0); r * r];
    for a in 0..r {
        for b in 0..r {
            let mut acc = C64::new(0.0, 0.0);
            for c in ring.channels(ring.dual(a), b) {
                acc += dims.d[c] * theta[c];
            }
            s[a * r + b] = acc / (theta[a] * theta[b]);
        }
    }
    s
}

/// Assembles the full dataset from a hexagon-coherent R table.
pub fn assemble(
    ring: &FusionRing,
    dims: &DimensionVector,
    r_tab: &RSymbolTable,
    tol: f64,
) -> Result<ModularDataset> {
    let theta = twists(ring, dims, r_tab, tol)?;
    let stilde = s_matrix(ring, dims, &theta);
    Ok(ModularDataset {
        rank: ring.rank(),
        dims: dims.clone(),
        theta,
        stilde,
        dsq: dims.dsq,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModularityVerdict {
    Modular { residual: f64 },
    /// Sectors `a ≠ 0` with `S̃_{ab} = d_a d_b` for all `b`.
    Degenerate { witnesses: Vec<usize>, residual: f64 },
}

impl ModularityVerdict {
    pub fn is_modular(&self) -> bool {
        matches!(self, ModularityVerdict::Modular { .. })
    }
}

/// Largest deviation of `S̃ S̃†` from `D² · Id`.
pub fn s_unitarity_residual(md: &ModularDataset) -> f64 {
    let r = md.rank;
    let mut worst = 0.0f64;
    for i in 0..r {
        for j in 0..r {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..r {
                acc += md.s(i, k) * md.s(j, k).conj();
            }
            let want = if i == j { md.dsq } else { 0.0 };
            worst = worst.max((acc - want).norm());
        }
    }
    worst
}

/// Modular iff `S̃ S̃† = D²·Id` within tol; otherwise lists the degenerate
/// sectors as witnesses.
pub fn modularity_check(md: &ModularDataset, tol: f64) -> ModularityVerdict {
    let residual = s_unitarity_residual(md);
    if residual < tol {
        return ModularityVerdict::Modular { residual };
    }
    let r = md.rank;
    let witnesses = (1..r)
        .filter(|&a| {
            (0..r).all(|b| (md.s(a, b) - md.dims.d[a] * md.dims.d[b]).norm() < tol)
        })
        .collect();
    ModularityVerdict::Degenerate { witnesses, residual }
}

#[derive(Debug, Clone)]
pub struct VerlindeResult {
    /// Reconstructed `rank³` tensor, row-major `[a][b][c]`.
    pub n: Vec<u32>,
    pub max_deviation: f64,
}

const VERLINDE_ROUNDING_THRESHOLD: f64 = 0.01;

/// Verlinde reconstruction
/// `N_{ab}^c = (1/D²) Σ_x S̃_{ax} S̃_{bx} conj(S̃_{cx}) / d_x`,
/// rounded to the nearest integer. Requires a modular dataset.
pub fn verlinde_reconstruct(md: &ModularDataset, tol: f64) -> Result<VerlindeResult> {
    if !modularity_check(md, tol).is_modular() {
        return Err(Error::Unsupported(
            "Verlinde reconstruction requires a non-degenerate S-matrix".into(),
        ));
    }
    let r = md.rank;
    let mut n = vec![0u32; r * r * r];
    let mut max_dev = 0.0f64;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let mut acc = C64::new(0.0, 0.0);
                for x in 0..r {
                    acc += md.s(a, x) * md.s(b, x) * md.s(c, x).conj() / md.dims.d[x];
                }
                acc /= md.dsq;
                let rounded = acc.re.round();
                let dev = (acc - C64::new(rounded, 0.0)).norm();
                max_dev = max_dev.max(dev);
                if dev > VERLINDE_ROUNDING_THRESHOLD || rounded < 0.0 {
                    return Err(Error::Inconsistent(format!(
                        "Verlinde coefficient at ({a},{b},{c}) is {acc} — not close to a nonnegative integer"
                    )));
                }
                n[(a * r + b) * r + c] = rounded as u32;
            }
        }
    }
    Ok(VerlindeResult { n, max_deviation: max_dev })
}

/// Double-braiding data: per-channel scalars `R_{ba}^c R_{ab}^c` and the
/// weighted aggregate `Σ_c N_{ab}^c d_c R_{ba}^c R_{ab}^c`.
#[derive(Debug, Clone)]
pub struct MonodromyMatrix {
    pub rank: usize,
    pub per_channel: BTreeMap<[usize; 2], Vec<(usize, C64)>>,
    /// Row-major `rank × rank`.
    pub aggregate: Vec<C64>,
}

impl MonodromyMatrix {
    pub fn aggregate_at(&self, a: usize, b: usize) -> C64 {
        self.aggregate[a * self.rank + b]
    }

    /// A pair has trivial monodromy iff every per-channel scalar equals 1;
    /// equivalently the aggregate equals `d_a d_b`.
    pub fn trivial_pair(&self, a: usize, b: usize, tol: f64) -> bool {
        self.per_channel
            .get(&[a, b])
            .map(|chs| chs.iter().all(|(_, m)| (m - C64::new(1.0, 0.0)).norm() < tol))
            .unwrap_or(true)
    }
}

pub fn monodromy(
    ring: &FusionRing,
    dims: &DimensionVector,
    r_tab: &RSymbolTable,
) -> Result<MonodromyMatrix> {
    let r = ring.rank();
    let mut per_channel = BTreeMap::new();
    let mut aggregate = vec![C64::new(0.0, 0.0); r * r];
    for a in 0..r {
        for b in 0..r {
            let mut chs = Vec::new();
            let mut acc = C64::new(0.0, 0.0);
            for c in ring.channels(a, b) {
                let m = r_tab.value(ring, &[b, a, c])? * r_tab.value(ring, &[a, b, c])?;
                acc += dims.d[c] * m;
                chs.push((c, m));
            }
            aggregate[a * r + b] = acc;
            per_channel.insert([a, b], chs);
        }
    }
    Ok(MonodromyMatrix {
        rank: r,
        per_channel,
        aggregate,
    })
}

#[derive(Debug, Clone)]
pub struct KillingRingReport {
    pub max_residual: f64,
    pub worst_row: Option<usize>,
}

/// Verifies the orthogonality `Σ_j d_j S̃_{ij} = D² δ_{i,0}` that collapses
/// the harmonic expansion over sectors.
pub fn killing_ring_check(md: &ModularDataset) -> KillingRingReport {
    let r = md.rank;
    let mut worst = 0.0f64;
    let mut worst_row = None;
    for i in 0..r {
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..r {
            acc += md.dims.d[j] * md.s(i, j);
        }
        let want = if i == 0 { md.dsq } else { 0.0 };
        let res = (acc - want).norm();
        if res > worst {
            worst = res;
            worst_row = Some(i);
        }
    }
    KillingRingReport {
        max_residual: worst,
        worst_row,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fusion::fp_dimensions;

    const TOL: f64 = 1e-9;

    fn dataset(cat: &crate::category::Category) -> ModularDataset {
        let dims = fp_dimensions(&cat.ring).unwrap();
        assemble(&cat.ring, &dims, cat.r.as_ref().unwrap(), TOL).unwrap()
    }

    #[test]
    fn rep_z2_twists_are_all_one() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let md = dataset(&cat);
        assert!((md.theta[0] - C64::new(1.0, 0.0)).norm() < TOL);
        assert!((md.theta[1] - C64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn svec_twist_is_minus_one() {
        let cat = catalog::svec().unwrap();
        let md = dataset(&cat);
        assert!((md.theta[1] - C64::new(-1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn fibonacci_twist() {
        let cat = catalog::fibonacci().unwrap();
        let md = dataset(&cat);
        let want = C64::from_polar(1.0, 4.0 * std::f64::consts::PI / 5.0);
        assert!((md.theta[1] - want).norm() < TOL);
    }

    #[test]
    fn ising_twists_and_s_matrix() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        let md = dataset(&cat);
        let want_sigma = C64::from_polar(1.0, std::f64::consts::PI / 8.0);
        assert!((md.theta[1] - want_sigma).norm() < TOL);
        assert!((md.theta[2] - C64::new(-1.0, 0.0)).norm() < TOL);
        // First row equals the dimension vector.
        let rt2 = 2f64.sqrt();
        for (b, want) in [(0usize, 1.0), (1, rt2), (2, 1.0)] {
            assert!((md.s(0, b) - C64::new(want, 0.0)).norm() < TOL);
        }
        assert!(s_unitarity_residual(&md) < TOL);
    }

    #[test]
    fn semion_s_matrix() {
        let cat = catalog::semion(1).unwrap();
        let md = dataset(&cat);
        assert!((md.s(1, 1) - C64::new(-1.0, 0.0)).norm() < TOL);
        assert!(modularity_check(&md, TOL).is_modular());
    }

    #[test]
    fn trivial_category_s_matrix_is_one() {
        let cat = catalog::trivial();
        let md = dataset(&cat);
        assert_eq!(md.rank, 1);
        assert!((md.s(0, 0) - C64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn s_matrix_is_symmetric_on_catalog() {
        for cat in catalog::shipped().unwrap() {
            if cat.r.is_none() {
                continue;
            }
            let md = dataset(&cat);
            for a in 0..md.rank {
                for b in 0..md.rank {
                    assert!(
                        (md.s(a, b) - md.s(b, a)).norm() < TOL,
                        "{} asymmetric at ({a},{b})",
                        cat.name
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_witnesses() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let md = dataset(&cat);
        match modularity_check(&md, TOL) {
            ModularityVerdict::Degenerate { witnesses, .. } => assert_eq!(witnesses, vec![1]),
            v => panic!("expected degenerate, got {v:?}"),
        }
        let cat = catalog::svec().unwrap();
        let md = dataset(&cat);
        match modularity_check(&md, TOL) {
            ModularityVerdict::Degenerate { witnesses, .. } => assert_eq!(witnesses, vec![1]),
            v => panic!("expected degenerate, got {v:?}"),
        }
    }

    #[test]
    fn verlinde_round_trip_ising_and_fibonacci() {
        for cat in [
            catalog::ising_with_spec_braiding(1).unwrap(),
            catalog::fibonacci().unwrap(),
        ] {
            let md = dataset(&cat);
            let v = verlinde_reconstruct(&md, TOL).unwrap();
            let r = md.rank;
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        assert_eq!(v.n[(a * r + b) * r + c], cat.ring.n(a, b, c));
                    }
                }
            }
            assert!(v.max_deviation < 1e-9);
        }
    }

    #[test]
    fn verlinde_rejects_degenerate() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let md = dataset(&cat);
        assert!(matches!(
            verlinde_reconstruct(&md, TOL),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn ising_monodromy_channels() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        let dims = fp_dimensions(&cat.ring).unwrap();
        let mon = monodromy(&cat.ring, &dims, cat.r.as_ref().unwrap()).unwrap();
        // Braiding with the unit is always trivial.
        for b in 0..3 {
            assert!(mon.trivial_pair(0, b, TOL));
        }
        // (ψ,ψ): (−1)² = 1.
        assert!(mon.trivial_pair(2, 2, TOL));
        // (σ,ψ): (−i)(−i) = −1.
        assert!(!mon.trivial_pair(1, 2, TOL));
        assert!((mon.aggregate_at(1, 2) - C64::new(-(2f64.sqrt()), 0.0)).norm() < TOL);
    }

    #[test]
    fn monodromy_aggregate_matches_s_entry_criterion_on_catalog() {
        // {a : monodromy(a,b) trivial ∀b} = {a : S̃_{ab} = d_a d_b ∀b}
        for cat in catalog::shipped().unwrap() {
            if cat.r.is_none() {
                continue;
            }
            let dims = fp_dimensions(&cat.ring).unwrap();
            let md = dataset(&cat);
            let mon = monodromy(&cat.ring, &dims, cat.r.as_ref().unwrap()).unwrap();
            let r = md.rank;
            for a in 0..r {
                let by_mon = (0..r).all(|b| mon.trivial_pair(a, b, TOL));
                let by_s = (0..r).all(|b| (md.s(a, b) - dims.d[a] * dims.d[b]).norm() < TOL);
                assert_eq!(by_mon, by_s, "criterion mismatch in {} at {a}", cat.name);
            }
        }
    }

    #[test]
    fn killing_ring_on_ising_and_rep_z2() {
        let cat = catalog::ising_with_spec_braiding(1).unwrap();
        let md = dataset(&cat);
        assert!(killing_ring_check(&md).max_residual < TOL);

        let cat = catalog::pointed_zn(2, 0).unwrap();
        let md = dataset(&cat);
        let rep = killing_ring_check(&md);
        assert!(rep.max_residual > 1.0);
        assert_eq!(rep.worst_row, Some(1));
    }

    #[test]
    fn killing_ring_exact_on_trivial() {
        let md = dataset(&catalog::trivial());
        assert_eq!(killing_ring_check(&md).max_residual, 0.0);
    }
}
