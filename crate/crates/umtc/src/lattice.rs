//! Full replete fusion subcategories, Müger centralizers, double-centralizer
//! verification, primality, and prime factorization via Deligne products.

use std::collections::BTreeSet;

use crate::category::{extract_subcategory, Category};
use crate::fusion::FusionRing;
use crate::modular::{modularity_check, ModularDataset};
use crate::{C64, Error, Result};

/// A label subset containing the unit and closed under fusion and duals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FusionSubcategory {
    pub members: Vec<usize>,
}

impl FusionSubcategory {
    /// Normalizes an arbitrary member list: sorted, deduplicated, and
    /// always containing the unit.
    pub fn new(members: Vec<usize>) -> Self {
        let mut members = members;
        members.push(0);
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn rank(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn is_full(&self, rank: usize) -> bool {
        self.members.len() == rank
    }

    pub fn is_subset_of(&self, other: &FusionSubcategory) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn labels(&self, ring: &FusionRing) -> Vec<String> {
        self.members.iter().map(|&m| ring.label(m).to_string()).collect()
    }
}

/// Least fusion- and dual-closed superset of the seed containing the unit.
/// Idempotent.
pub fn closure(ring: &FusionRing, seed: &[usize]) -> FusionSubcategory {
    let mut members: BTreeSet<usize> = seed.iter().copied().collect();
    members.insert(0);
    loop {
        let mut grew = false;
        let snapshot: Vec<usize> = members.iter().copied().collect();
        for &a in &snapshot {
            if members.insert(ring.dual(a)) {
                grew = true;
            }
            for &b in &snapshot {
                for c in ring.channels(a, b) {
                    if members.insert(c) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    FusionSubcategory {
        members: members.into_iter().collect(),
    }
}

const ENUMERATION_RANK_BOUND: usize = 16;

/// All fusion subcategories, by closure of every subset seed with dedup,
/// sorted by size then lexicographically.
pub fn enumerate_subcategories(ring: &FusionRing) -> Result<Vec<FusionSubcategory>> {
    let r = ring.rank();
    if r > ENUMERATION_RANK_BOUND {
        return Err(Error::Capacity(format!(
            "subcategory enumeration is brute force and bounded at rank {ENUMERATION_RANK_BOUND}; \
             rank {r} requires generator seeds via closure()"
        )));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << (r - 1)) {
        let seed: Vec<usize> = (1..r).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
        seen.insert(closure(ring, &seed).members);
    }
    let mut out: Vec<FusionSubcategory> = seen
        .into_iter()
        .map(|members| FusionSubcategory { members })
        .collect();
    out.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// Per-pair evidence for a sector excluded from a centralizer: the member it
/// fails against and the offending monodromy channel scalar.
#[derive(Debug, Clone)]
pub struct Exclusion {
    pub sector: usize,
    pub against: usize,
    pub channel: usize,
    pub scalar: C64,
}

#[derive(Debug, Clone)]
pub struct CentralizerResult {
    pub source: FusionSubcategory,
    pub centralizer: FusionSubcategory,
    pub exclusions: Vec<Exclusion>,
}

/// Müger centralizer `Z_C(D) = {x : monodromy(x,y) trivial ∀ y ∈ D}`,
/// computed from the per-channel double braiding. The result is itself a
/// fusion subcategory (verified).
pub fn centralizer(cat: &Category, d: &FusionSubcategory, tol: f64) -> Result<CentralizerResult> {
    let mon = cat.monodromy()?;
    let r = cat.rank();
    let mut members = Vec::new();
    let mut exclusions = Vec::new();
    for x in 0..r {
        let mut excluded = None;
        'outer: for &y in &d.members {
            if let Some(chs) = mon.per_channel.get(&[x, y]) {
                for &(c, m) in chs {
                    if (m - C64::new(1.0, 0.0)).norm() >= tol {
                        excluded = Some(Exclusion {
                            sector: x,
                            against: y,
                            channel: c,
                            scalar: m,
                        });
                        break 'outer;
                    }
                }
            }
        }
        match excluded {
            Some(e) => exclusions.push(e),
            None => members.push(x),
        }
    }
    let result = FusionSubcategory { members };
    let closed = closure(&cat.ring, &result.members);
    if closed != result {
        return Err(Error::Inconsistent(format!(
            "centralizer of {:?} in {} is not fusion-closed",
            d.members, cat.name
        )));
    }
    Ok(CentralizerResult {
        source: d.clone(),
        centralizer: result,
        exclusions,
    })
}

#[derive(Debug, Clone)]
pub enum DoubleCentralizerOutcome {
    /// Bundle degenerate; the double-centralizer theorem does not apply.
    Skipped { degenerate_witnesses: Vec<usize> },
    Ran {
        checked: usize,
        failures: Vec<(FusionSubcategory, FusionSubcategory)>,
    },
}

impl DoubleCentralizerOutcome {
    pub fn pass(&self) -> bool {
        match self {
            DoubleCentralizerOutcome::Skipped { .. } => true,
            DoubleCentralizerOutcome::Ran { failures, .. } => failures.is_empty(),
        }
    }
}

/// Verifies `Z(Z(D)) = D` for every enumerated subcategory of a modular
/// bundle (member sets are already replete by construction).
pub fn double_centralizer_check(cat: &Category, tol: f64) -> Result<DoubleCentralizerOutcome> {
    let md = cat.modular_dataset(tol)?;
    match modularity_check(&md, tol) {
        crate::modular::ModularityVerdict::Degenerate { witnesses, .. } => {
            return Ok(DoubleCentralizerOutcome::Skipped {
                degenerate_witnesses: witnesses,
            })
        }
        crate::modular::ModularityVerdict::Modular { .. } => {}
    }
    let subs = enumerate_subcategories(&cat.ring)?;
    let mut failures = Vec::new();
    let checked = subs.len();
    for d in subs {
        let z = centralizer(cat, &d, tol)?.centralizer;
        let zz = centralizer(cat, &z, tol)?.centralizer;
        if zz != d {
            failures.push((d, zz));
        }
    }
    Ok(DoubleCentralizerOutcome::Ran { checked, failures })
}

/// Modular iff the centralizer of `D` computed inside `D` is trivial,
/// i.e. `Z_C(D) ∩ D = {1}`.
pub fn is_modular_sub(cat: &Category, d: &FusionSubcategory, tol: f64) -> Result<bool> {
    let z = centralizer(cat, d, tol)?.centralizer;
    Ok(d.members.iter().filter(|&&x| z.contains(x)).eq([&0usize]))
}

#[derive(Debug, Clone)]
pub enum PrimalityVerdict {
    Prime,
    NotPrime { witness: FusionSubcategory },
}

impl PrimalityVerdict {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimalityVerdict::Prime)
    }
}

/// Prime iff no enumerated subcategory other than `{1}` and the whole
/// category is modular. The trivial category is not prime by definition;
/// degenerate bundles are unsupported.
pub fn is_prime(cat: &Category, tol: f64) -> Result<PrimalityVerdict> {
    let md = cat.modular_dataset(tol)?;
    if !modularity_check(&md, tol).is_modular() {
        return Err(Error::Unsupported(
            "primality is defined for non-degenerate (modular) bundles".into(),
        ));
    }
    if cat.rank() == 1 {
        return Ok(PrimalityVerdict::NotPrime {
            witness: FusionSubcategory { members: vec![0] },
        });
    }
    let subs = enumerate_subcategories(&cat.ring)?;
    for d in subs {
        if d.is_trivial() || d.is_full(cat.rank()) {
            continue;
        }
        if is_modular_sub(cat, &d, tol)? {
            return Ok(PrimalityVerdict::NotPrime { witness: d });
        }
    }
    Ok(PrimalityVerdict::Prime)
}

#[derive(Debug, Clone)]
pub struct Factor {
    /// Member set in the coordinates of the factorized parent.
    pub members: FusionSubcategory,
    /// The factor extracted as a standalone bundle.
    pub category: Category,
}

#[derive(Debug, Clone)]
pub struct PrimeFactorization {
    pub factors: Vec<Factor>,
    /// Parent sector index → tuple of factor-local sector indices.
    pub bijection: Vec<Vec<usize>>,
    pub s_residual: f64,
    pub t_residual: f64,
}

/// Recursively splits off the smallest proper modular subcategory and its
/// centralizer; the sector bijection is found by (dimension, twist)-pruned
/// backtracking and certified against the Kronecker factorization of S̃ and
/// T. Never returns unverified factors.
pub fn prime_factorize(cat: &Category, tol: f64) -> Result<PrimeFactorization> {
    let md = cat.modular_dataset(tol)?;
    if !modularity_check(&md, tol).is_modular() {
        return Err(Error::Unsupported(
            "prime factorization is defined for non-degenerate (modular) bundles".into(),
        ));
    }
    let (factors, bijection) = factorize_rec(cat, tol)?;
    // Certify the flattened factorization.
    let factor_data: Vec<ModularDataset> = factors
        .iter()
        .map(|f| f.category.modular_dataset(tol))
        .collect::<Result<_>>()?;
    let r = cat.rank();
    let mut s_res = 0.0f64;
    let mut t_res = 0.0f64;
    for p in 0..r {
        let mut theta = C64::new(1.0, 0.0);
        for (m, fd) in factor_data.iter().enumerate() {
            theta *= fd.theta[bijection[p][m]];
        }
        t_res = t_res.max((theta - md.theta[p]).norm());
        for q in 0..r {
            let mut s = C64::new(1.0, 0.0);
            for (m, fd) in factor_data.iter().enumerate() {
                s *= fd.s(bijection[p][m], bijection[q][m]);
            }
            s_res = s_res.max((s - md.s(p, q)).norm());
        }
    }
    if s_res >= tol || t_res >= tol {
        return Err(Error::Inconsistent(format!(
            "factorization certificate failed: S residual {s_res:.3e}, T residual {t_res:.3e}"
        )));
    }
    Ok(PrimeFactorization {
        factors,
        bijection,
        s_residual: s_res,
        t_residual: t_res,
    })
}

fn factorize_rec(cat: &Category, tol: f64) -> Result<(Vec<Factor>, Vec<Vec<usize>>)> {
    let whole = || {
        let members = FusionSubcategory {
            members: (0..cat.rank()).collect(),
        };
        let bijection = (0..cat.rank()).map(|p| vec![p]).collect();
        (
            vec![Factor {
                members,
                category: cat.clone(),
            }],
            bijection,
        )
    };
    if cat.rank() == 1 {
        return Ok(whole());
    }
    let witness = match is_prime(cat, tol)? {
        PrimalityVerdict::Prime => return Ok(whole()),
        PrimalityVerdict::NotPrime { witness } => witness,
    };
    let z = centralizer(cat, &witness, tol)?.centralizer;
    if witness.rank() * z.rank() != cat.rank() {
        return Err(Error::Inconsistent(format!(
            "rank({:?}) × rank(Z) = {} ≠ rank {} in {}",
            witness.members,
            witness.rank() * z.rank(),
            cat.rank(),
            cat.name
        )));
    }
    let cat_d = extract_subcategory(cat, &witness.members, format!("{}.left", cat.name))?;
    let cat_z = extract_subcategory(cat, &z.members, format!("{}.right", cat.name))?;
    let pairing = match_pairs(cat, &cat_d, &cat_z, tol)?;
    let (fa, ba) = factorize_rec(&cat_d, tol)?;
    let (fb, bb) = factorize_rec(&cat_z, tol)?;
    // Remap nested factor member sets back into the parent's coordinates.
    let remap = |f: Factor, host: &FusionSubcategory| Factor {
        members: FusionSubcategory {
            members: {
                let mut m: Vec<usize> = f.members.members.iter().map(|&i| host.members[i]).collect();
                m.sort_unstable();
                m
            },
        },
        category: f.category,
    };
    let mut all: Vec<Factor> = fa.into_iter().map(|f| remap(f, &witness)).collect();
    all.extend(fb.into_iter().map(|f| remap(f, &z)));
    let bijection = pairing
        .iter()
        .map(|&(i, j)| {
            let mut t = ba[i].clone();
            t.extend(bb[j].iter().copied());
            t
        })
        .collect();
    Ok((all, bijection))
}

/// Finds the sector bijection `p ↦ (i, j)` between the parent and the
/// product of the two factors, pruned by dimension and twist compatibility
/// and checked incrementally against `S̃`.
fn match_pairs(
    parent: &Category,
    left: &Category,
    right: &Category,
    tol: f64,
) -> Result<Vec<(usize, usize)>> {
    // Pruning runs at a looser tolerance than the final certificate.
    let pre = tol.max(1e-9) * 1e3;
    let md = parent.modular_dataset(tol)?;
    let mda = left.modular_dataset(tol)?;
    let mdb = right.modular_dataset(tol)?;
    let r = parent.rank();
    let mut candidates: Vec<Vec<(usize, usize)>> = Vec::with_capacity(r);
    for p in 0..r {
        let mut cs = Vec::new();
        if p == 0 {
            cs.push((0, 0));
        } else {
            for i in 0..left.rank() {
                for j in 0..right.rank() {
                    if (i, j) == (0, 0) {
                        continue;
                    }
                    let dim_ok =
                        (md.dims.d[p] - mda.dims.d[i] * mdb.dims.d[j]).abs() < pre;
                    let twist_ok =
                        (md.theta[p] - mda.theta[i] * mdb.theta[j]).norm() < pre;
                    if dim_ok && twist_ok {
                        cs.push((i, j));
                    }
                }
            }
        }
        if cs.is_empty() {
            return Err(Error::Inconsistent(format!(
                "no factor pair is compatible with parent sector {}",
                parent.ring.label(p)
            )));
        }
        candidates.push(cs);
    }
    let mut assignment: Vec<(usize, usize)> = Vec::with_capacity(r);
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        p: usize,
        r: usize,
        candidates: &[Vec<(usize, usize)>],
        assignment: &mut Vec<(usize, usize)>,
        used: &mut BTreeSet<(usize, usize)>,
        md: &ModularDataset,
        mda: &ModularDataset,
        mdb: &ModularDataset,
        pre: f64,
    ) -> bool {
        if p == r {
            return true;
        }
        for &(i, j) in &candidates[p] {
            if used.contains(&(i, j)) {
                continue;
            }
            let consistent = assignment.iter().enumerate().all(|(q, &(iq, jq))| {
                (md.s(p, q) - mda.s(i, iq) * mdb.s(j, jq)).norm() < pre
            });
            if !consistent {
                continue;
            }
            used.insert((i, j));
            assignment.push((i, j));
            if backtrack(p + 1, r, candidates, assignment, used, md, mda, mdb, pre) {
                return true;
            }
            assignment.pop();
            used.remove(&(i, j));
        }
        false
    }
    if backtrack(
        0,
        r,
        &candidates,
        &mut assignment,
        &mut used,
        &md,
        &mda,
        &mdb,
        pre,
    ) {
        Ok(assignment)
    } else {
        Err(Error::Inconsistent(
            "factorization bijection search failed: no sector matching satisfies the \
             Kronecker constraints (numeric issue or genuine obstruction)"
                .into(),
        ))
    }
}
