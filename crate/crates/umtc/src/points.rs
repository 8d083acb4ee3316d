//! Abstract-point machinery at the categorical level: trivial-pairing
//! tests between subcategories, intersection categories, modular-spectrum
//! checks, and comparability resolution under primality.

use crate::category::Category;
use crate::lattice::{self, FusionSubcategory, PrimalityVerdict};
use crate::modular::{modularity_check, ModularityVerdict};
use crate::{C64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingMode {
    /// Per-channel monodromy scalars must be 1 — gauge invariant.
    Monodromy,
    /// Every raw R entry must be 1 in the bundle's gauge — gauge dependent,
    /// but for pointed bundles it is exactly the ε = 1 condition.
    BraidingStrict,
}

/// Ordered pair of subcategories with a trivialization mode. Only the
/// finite categorical content of an abstract point is represented; the
/// algebraic conditions (factoriality, normality) have no finite shadow and
/// are deliberately not modeled.
#[derive(Debug, Clone)]
pub struct AbstractPointCandidate {
    pub left: FusionSubcategory,
    pub right: FusionSubcategory,
    pub mode: PairingMode,
}

#[derive(Debug, Clone)]
pub struct PairingFailure {
    pub a: usize,
    pub b: usize,
    pub channel: usize,
    pub value: C64,
}

#[derive(Debug, Clone)]
pub struct PairingReport {
    pub mode: PairingMode,
    pub failures: Vec<PairingFailure>,
    /// Set for braiding-strict mode: the verdict depends on the gauge in
    /// which the bundle's R table is presented.
    pub gauge_dependent: bool,
    pub tol: f64,
}

impl PairingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the two subcategories pair trivially: all mutual monodromies
/// vanish (monodromy mode), or all mutual R entries are literally 1
/// (braiding-strict mode). One representative pair per sector pair suffices
/// at the skeletal level.
pub fn trivial_pairing(
    cat: &Category,
    d1: &FusionSubcategory,
    d2: &FusionSubcategory,
    mode: PairingMode,
    tol: f64,
) -> Result<PairingReport> {
    let r_tab = cat.require_r()?;
    let ring = &cat.ring;
    let mut failures = Vec::new();
    for &a in &d1.members {
        for &b in &d2.members {
            for c in ring.channels(a, b) {
                match mode {
                    PairingMode::Monodromy => {
                        let scalar = r_tab.value(ring, &[b, a, c])? * r_tab.value(ring, &[a, b, c])?;
                        if (scalar - C64::new(1.0, 0.0)).norm() > tol {
                            failures.push(PairingFailure {
                                a,
                                b,
                                channel: c,
                                value: scalar,
                            });
                        }
                    }
                    PairingMode::BraidingStrict => {
                        let value = r_tab.value(ring, &[a, b, c])?;
                        if (value - C64::new(1.0, 0.0)).norm() > tol {
                            failures.push(PairingFailure {
                                a,
                                b,
                                channel: c,
                                value,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(PairingReport {
        mode,
        failures,
        gauge_dependent: mode == PairingMode::BraidingStrict,
        tol,
    })
}

/// Member-set intersection of two subcategories. Intersections of
/// fusion-closed sets are automatically closed; this is re-verified.
pub fn intersection_category(
    cat: &Category,
    d1: &FusionSubcategory,
    d2: &FusionSubcategory,
) -> Result<FusionSubcategory> {
    let members: Vec<usize> = d1
        .members
        .iter()
        .copied()
        .filter(|m| d2.contains(*m))
        .collect();
    let out = FusionSubcategory::new(members);
    let closed = lattice::closure(&cat.ring, &out.members);
    if closed.members != out.members {
        return Err(Error::Inconsistent(
            "intersection of fusion-closed sets failed to be fusion-closed".into(),
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum SpectrumVerdict {
    Pass,
    /// A sector of D (other than the unit) whose monodromy with every
    /// member of D is trivial.
    Witness { sector: usize },
}

impl SpectrumVerdict {
    pub fn pass(&self) -> bool {
        matches!(self, SpectrumVerdict::Pass)
    }
}

/// Checks that D has modular spectrum: its relative centralizer inside
/// itself is only the unit, `Z_D(D) = {1}`.
pub fn modular_spectrum_check(
    cat: &Category,
    d: &FusionSubcategory,
    tol: f64,
) -> Result<SpectrumVerdict> {
    let r_tab = cat.require_r()?;
    let ring = &cat.ring;
    for &a in d.members.iter().filter(|&&a| a != 0) {
        let mut degenerate = true;
        'scan: for &b in &d.members {
            for c in ring.channels(a, b) {
                let scalar = r_tab.value(ring, &[b, a, c])? * r_tab.value(ring, &[a, b, c])?;
                if (scalar - C64::new(1.0, 0.0)).norm() > tol {
                    degenerate = false;
                    break 'scan;
                }
            }
        }
        if degenerate {
            return Ok(SpectrumVerdict::Witness { sector: a });
        }
    }
    Ok(SpectrumVerdict::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureSide {
    Left,
    Right,
}

#[derive(Debug, Clone)]
pub enum ObstructionWitness {
    /// A member pair of the closures with nontrivial monodromy: the
    /// mutual-centralizer inclusion fails.
    MonodromyPair {
        a: usize,
        b: usize,
        channel: usize,
        scalar: C64,
    },
    /// A closure fails the modular-spectrum hypothesis; the trichotomy's
    /// premises do not apply to this pair.
    DegenerateSector { side: ClosureSide, sector: usize },
    /// The ambient bundle is not prime; the trichotomy does not apply.
    NonPrime { witness: FusionSubcategory },
}

#[derive(Debug, Clone)]
pub enum ComparabilityOutcome {
    LeftCollapses,
    RightCollapses,
    BothTrivial,
    Obstruction(ObstructionWitness),
}

#[derive(Debug, Clone)]
pub struct ComparabilityVerdict {
    pub outcome: ComparabilityOutcome,
    /// Replete closures of the two inputs, in input order.
    pub closures: (FusionSubcategory, FusionSubcategory),
    /// Human-readable record of the checks that were run, in order.
    pub certificates: Vec<String>,
}

impl ComparabilityVerdict {
    pub fn collapsed(&self) -> bool {
        matches!(
            self.outcome,
            ComparabilityOutcome::LeftCollapses
                | ComparabilityOutcome::RightCollapses
                | ComparabilityOutcome::BothTrivial
        )
    }
}

/// Resolves comparability for a pair of subcategories of a modular bundle:
/// takes replete closures, verifies the mutual-centralizer inclusion and
/// the modular-spectrum hypothesis for each closure, and — when the bundle
/// is prime — concludes that at least one closure is the trivial
/// subcategory. Failures of the hypotheses are reported as obstructions
/// with concrete witnesses.
pub fn comparability_resolve(
    cat: &Category,
    d1: &FusionSubcategory,
    d2: &FusionSubcategory,
    tol: f64,
) -> Result<ComparabilityVerdict> {
    let md = cat.modular_dataset(tol)?;
    if let ModularityVerdict::Degenerate { witnesses, .. } = modularity_check(&md, tol) {
        return Err(Error::Unsupported(format!(
            "comparability requires a modular bundle; degenerate sectors {witnesses:?}"
        )));
    }
    let c1 = lattice::closure(&cat.ring, &d1.members);
    let c2 = lattice::closure(&cat.ring, &d2.members);
    let mut certificates = Vec::new();

    // Mutual-centralizer inclusion: all cross monodromies vanish. The two
    // inclusions D̃1 ⊆ Z_C(D̃2) and D̃2 ⊆ Z_C(D̃1) are the same condition.
    let pairing = trivial_pairing(cat, &c1, &c2, PairingMode::Monodromy, tol)?;
    if let Some(fail) = pairing.failures.first() {
        certificates.push("mutual-centralizer inclusion: failed".into());
        return Ok(ComparabilityVerdict {
            outcome: ComparabilityOutcome::Obstruction(ObstructionWitness::MonodromyPair {
                a: fail.a,
                b: fail.b,
                channel: fail.channel,
                scalar: fail.value,
            }),
            closures: (c1, c2),
            certificates,
        });
    }
    certificates.push("mutual-centralizer inclusion: holds".into());

    let sides = [(ClosureSide::Left, c1.clone()), (ClosureSide::Right, c2.clone())];
    for (side, closure) in &sides {
        let side = *side;
        if let SpectrumVerdict::Witness { sector } = modular_spectrum_check(cat, closure, tol)? {
            certificates.push(format!("modular spectrum ({side:?} closure): failed"));
            return Ok(ComparabilityVerdict {
                outcome: ComparabilityOutcome::Obstruction(ObstructionWitness::DegenerateSector {
                    side,
                    sector,
                }),
                closures: (c1, c2),
                certificates,
            });
        }
        certificates.push(format!("modular spectrum ({side:?} closure): holds"));
    }

    match lattice::is_prime(cat, tol)? {
        PrimalityVerdict::NotPrime { witness } => {
            certificates.push("primality: failed".into());
            Ok(ComparabilityVerdict {
                outcome: ComparabilityOutcome::Obstruction(ObstructionWitness::NonPrime {
                    witness,
                }),
                closures: (c1, c2),
                certificates,
            })
        }
        PrimalityVerdict::Prime => {
            certificates.push("primality: holds".into());
            let outcome = match (c1.is_trivial(), c2.is_trivial()) {
                (true, true) => ComparabilityOutcome::BothTrivial,
                (true, false) => ComparabilityOutcome::LeftCollapses,
                (false, true) => ComparabilityOutcome::RightCollapses,
                (false, false) => {
                    // Both closures would be proper modular subcategories of
                    // a prime bundle — impossible if the earlier checks ran
                    // correctly.
                    return Err(Error::Inconsistent(
                        "prime bundle admits two nontrivial mutually centralizing \
                         closures with modular spectrum"
                            .into(),
                    ));
                }
            };
            Ok(ComparabilityVerdict {
                outcome,
                closures: (c1, c2),
                certificates,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub enum HolomorphicVerdict {
    Pass,
    Witness { sector: usize },
}

impl HolomorphicVerdict {
    pub fn pass(&self) -> bool {
        matches!(self, HolomorphicVerdict::Pass)
    }
}

/// Checks the holomorphic-intersection obstruction: given a pair that
/// already pairs trivially in monodromy mode, passes iff the intersection
/// category is only the unit.
pub fn holomorphic_obstruction(
    cat: &Category,
    d1: &FusionSubcategory,
    d2: &FusionSubcategory,
    tol: f64,
) -> Result<HolomorphicVerdict> {
    let pairing = trivial_pairing(cat, d1, d2, PairingMode::Monodromy, tol)?;
    if !pairing.pass() {
        return Err(Error::Ordering(
            "holomorphic_obstruction requires a trivially pairing candidate; \
             run trivial_pairing in monodromy mode first"
                .into(),
        ));
    }
    let inter = intersection_category(cat, d1, d2)?;
    match inter.members.iter().find(|&&m| m != 0) {
        Some(&sector) => Ok(HolomorphicVerdict::Witness { sector }),
        None => Ok(HolomorphicVerdict::Pass),
    }
}
