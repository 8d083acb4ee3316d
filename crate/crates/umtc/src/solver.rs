//! Enumeration of all unitary braided structures over a fixed fusion ring
//! and F table by solving the hexagon equations.
//!
//! Strategy: extract every hexagon instance (both families) as a polynomial
//! relation in the channel unknowns `R_{ab}^c` (entries with a unit factor
//! are the constant 1), derive a finite candidate set per unknown by
//! constraint propagation and monomial elimination, exhaust the candidate
//! grid, and re-verify every surviving assignment with the full hexagon
//! sweep. The derivation either bounds every unknown or fails loudly with a
//! solver-incomplete error; it never silently truncates.

use std::collections::BTreeMap;

use crate::fusion::{fp_dimensions, DimensionVector, FusionRing};
use crate::modular::{modularity_check, ModularityVerdict};
use crate::tensor::{
    admissible_r_keys, check_hexagon, check_pentagon, invariant_fingerprint, FSymbolTable,
    Fingerprint, RKey, RSymbolTable,
};
use crate::{C64, Error, Result};

const COMBO_CAP: usize = 4096;
const GRID_CAP: usize = 10_000_000;
const CAND_TOL: f64 = 1e-6;

/// One hexagon instance in the normal form
/// `coeff · Π lhs-unknowns = Σ (c_f · rhs-unknown_f)`.
///
/// The inverse-braiding family is stored with conjugated constants: for
/// unimodular unknowns `conj(X⁻¹) = X`, so conjugating the whole equation
/// brings it to the same form.
#[derive(Debug, Clone)]
pub struct Relation {
    pub coeff: C64,
    pub lhs: Vec<usize>,
    pub rhs: Vec<(C64, Option<usize>)>,
}

#[derive(Debug, Clone)]
pub struct HexagonSystem {
    pub ring: FusionRing,
    pub f: FSymbolTable,
    /// Ordered admissible channels `(a,b;c)` with `a,b ≠ 0`.
    pub unknowns: Vec<RKey>,
    pub relations: Vec<Relation>,
}

/// Extracts the complete hexagon system for a multiplicity-free ring and a
/// pentagon-coherent F table.
pub fn build_system(ring: &FusionRing, f_tab: &FSymbolTable, tol: f64) -> Result<HexagonSystem> {
    if !ring.is_multiplicity_free() {
        return Err(Error::Unsupported(
            "hexagon solving requires a multiplicity-free ring".into(),
        ));
    }
    let pentagon = check_pentagon(ring, f_tab, tol)?;
    if !pentagon.pass() {
        return Err(Error::Inconsistent(format!(
            "F table fails the pentagon (residual {:.3e}); refusing to solve hexagons over it",
            pentagon.max_residual
        )));
    }
    let unknowns: Vec<RKey> = admissible_r_keys(ring)
        .into_iter()
        .filter(|k| k[0] != 0 && k[1] != 0)
        .collect();
    let index: BTreeMap<RKey, usize> = unknowns
        .iter()
        .enumerate()
        .map(|(i, k)| (*k, i))
        .collect();
    let var = |a: usize, b: usize, c: usize| -> Option<usize> {
        if a == 0 || b == 0 {
            None
        } else {
            Some(index[&[a, b, c]])
        }
    };
    let r = ring.rank();
    let mut relations = Vec::new();
    for conjugated in [false, true] {
        let cf = |v: C64| if conjugated { v.conj() } else { v };
        for a in 1..r {
            for b in 1..r {
                for c in 0..r {
                    for e in ring.channels(c, a) {
                        for d in ring.channels(e, b) {
                            for g in ring.channels(c, b) {
                                if ring.n(a, g, d) == 0 {
                                    continue;
                                }
                                // The inverse family uses the opposite R
                                // index order; conjugating the whole
                                // equation turns each inverse unimodular
                                // unknown back into the unknown itself.
                                let coeff = cf(f_tab.value(ring, &[a, c, b, d, e, g])?);
                                let mut lhs = Vec::new();
                                let (l1, l2) = if conjugated {
                                    ((a, c, e), (b, c, g))
                                } else {
                                    ((c, a, e), (c, b, g))
                                };
                                if let Some(u) = var(l1.0, l1.1, l1.2) {
                                    lhs.push(u);
                                }
                                if let Some(u) = var(l2.0, l2.1, l2.2) {
                                    lhs.push(u);
                                }
                                let mut rhs = Vec::new();
                                for fch in ring.channels(a, b) {
                                    if ring.n(c, fch, d) == 0 {
                                        continue;
                                    }
                                    let w = cf(f_tab.value(ring, &[c, a, b, d, e, fch])?
                                        * f_tab.value(ring, &[a, b, c, d, fch, g])?);
                                    let mid = if conjugated { (fch, c, d) } else { (c, fch, d) };
                                    rhs.push((w, var(mid.0, mid.1, mid.2)));
                                }
                                if lhs.is_empty() && rhs.iter().all(|(_, u)| u.is_none()) {
                                    // Constant identity; holds whenever the pentagon does.
                                    let total: C64 = rhs.iter().map(|(w, _)| *w).sum();
                                    if (coeff - total).norm() > 1e-7 {
                                        return Err(Error::Inconsistent(format!(
                                            "constant hexagon instance violated at \
                                             (a={a},b={b},c={c},d={d},e={e},g={g})"
                                        )));
                                    }
                                    continue;
                                }
                                relations.push(Relation { coeff, lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(HexagonSystem {
        ring: ring.clone(),
        f: f_tab.clone(),
        unknowns,
        relations,
    })
}

#[derive(Debug, Clone)]
pub struct BraidedSolutionSet {
    pub solutions: Vec<RSymbolTable>,
    pub fingerprints: Vec<Fingerprint>,
    pub residuals: Vec<f64>,
}

fn quant(z: C64) -> (i64, i64) {
    ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
}

fn push_unique(set: &mut Vec<C64>, v: C64) {
    if (v.norm() - 1.0).abs() > CAND_TOL {
        return; // only unimodular solutions are sought
    }
    if !set.iter().any(|w| quant(*w) == quant(v)) {
        set.push(v);
    }
}

/// Cartesian product of candidate values for the listed distinct unknowns.
/// `None` when some unknown is unbounded or the combination count explodes.
fn combos(ids: &[usize], cands: &[Option<Vec<C64>>]) -> Option<Vec<BTreeMap<usize, C64>>> {
    let mut distinct: Vec<usize> = ids.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut total = 1usize;
    for &id in &distinct {
        let set = cands[id].as_ref()?;
        total = total.checked_mul(set.len().max(1))?;
        if total > COMBO_CAP {
            return None;
        }
    }
    let mut out: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new()];
    for &id in &distinct {
        let set = cands[id].as_ref()?;
        let mut next = Vec::with_capacity(out.len() * set.len());
        for base in &out {
            for &v in set {
                let mut m = base.clone();
                m.insert(id, v);
                next.push(m);
            }
        }
        out = next;
    }
    Some(out)
}

fn rhs_ids(rel: &Relation) -> Vec<usize> {
    rel.rhs.iter().filter_map(|(_, u)| *u).collect()
}

fn eval_rhs(rel: &Relation, assign: &BTreeMap<usize, C64>) -> C64 {
    rel.rhs
        .iter()
        .map(|(c, u)| match u {
            Some(id) => c * assign[id],
            None => *c,
        })
        .sum()
}

/// One pass of constraint propagation; returns whether any unknown became
/// bounded.
fn propagate(rel: &Relation, cands: &mut [Option<Vec<C64>>]) -> bool {
    let bounded = |id: usize, cands: &[Option<Vec<C64>>]| cands[id].is_some();
    let rhs_unknowns = rhs_ids(rel);

    // Forward: solve for an unbounded LHS unknown.
    let unbounded_lhs: Vec<usize> = {
        let mut v: Vec<usize> = rel.lhs.iter().copied().filter(|&u| !bounded(u, cands)).collect();
        v.dedup();
        v
    };
    if unbounded_lhs.len() == 1 {
        let target = unbounded_lhs[0];
        let occurrences = rel.lhs.iter().filter(|&&u| u == target).count();
        let others: Vec<usize> = rel
            .lhs
            .iter()
            .copied()
            .filter(|&u| u != target)
            .chain(rhs_unknowns.iter().copied())
            .collect();
        if let Some(cs) = combos(&others, cands) {
            if rel.coeff.norm() > 1e-12 {
                let mut new_set = Vec::new();
                for assign in &cs {
                    let mut scale = rel.coeff;
                    for &u in rel.lhs.iter().filter(|&&u| u != target) {
                        scale *= assign[&u];
                    }
                    let rhs = eval_rhs(rel, assign);
                    let value = rhs / scale;
                    match occurrences {
                        1 => push_unique(&mut new_set, value),
                        2 => {
                            let root = value.sqrt();
                            push_unique(&mut new_set, root);
                            push_unique(&mut new_set, -root);
                        }
                        _ => {}
                    }
                }
                if occurrences <= 2 {
                    cands[target] = Some(new_set);
                    return true;
                }
            }
        }
    }

    // Backward: all LHS bounded, exactly one distinct RHS unknown unbounded.
    if unbounded_lhs.is_empty() {
        let mut unbounded_rhs: Vec<usize> = rhs_unknowns
            .iter()
            .copied()
            .filter(|&u| !bounded(u, cands))
            .collect();
        unbounded_rhs.sort_unstable();
        unbounded_rhs.dedup();
        if unbounded_rhs.len() == 1 {
            let target = unbounded_rhs[0];
            let target_coeff: C64 = rel
                .rhs
                .iter()
                .filter(|(_, u)| *u == Some(target))
                .map(|(c, _)| *c)
                .sum();
            if target_coeff.norm() > 1e-12 {
                let others: Vec<usize> = rel
                    .lhs
                    .iter()
                    .copied()
                    .chain(rhs_unknowns.iter().copied().filter(|&u| u != target))
                    .collect();
                if let Some(cs) = combos(&others, cands) {
                    let mut new_set = Vec::new();
                    for assign in &cs {
                        let mut lhs_val = rel.coeff;
                        for &u in &rel.lhs {
                            lhs_val *= assign[&u];
                        }
                        let rest: C64 = rel
                            .rhs
                            .iter()
                            .filter(|(_, u)| *u != Some(target))
                            .map(|(c, u)| match u {
                                Some(id) => c * assign[id],
                                None => *c,
                            })
                            .sum();
                        push_unique(&mut new_set, (lhs_val - rest) / target_coeff);
                    }
                    cands[target] = Some(new_set);
                    return true;
                }
            }
        }
    }
    false
}

/// Monomial constraint `Π X_i^{e_i} = coeff` harvested from single-term
/// relations among still-unbounded unknowns.
#[derive(Debug, Clone)]
struct Monomial {
    exps: BTreeMap<usize, i64>,
    coeff: C64,
}

fn harvest_monomials(system: &HexagonSystem, cands: &[Option<Vec<C64>>]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for rel in &system.relations {
        if rel.rhs.len() != 1 || rel.coeff.norm() < 1e-12 {
            continue;
        }
        let all_unbounded = rel
            .lhs
            .iter()
            .chain(rel.rhs.iter().filter_map(|(_, u)| u.as_ref()))
            .all(|&u| cands[u].is_none());
        if !all_unbounded {
            continue;
        }
        let (c, u) = &rel.rhs[0];
        if c.norm() < 1e-12 {
            continue;
        }
        let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
        for &id in &rel.lhs {
            *exps.entry(id).or_insert(0) += 1;
        }
        if let Some(id) = u {
            *exps.entry(*id).or_insert(0) -= 1;
        }
        exps.retain(|_, e| *e != 0);
        if !exps.is_empty() {
            out.push(Monomial {
                exps,
                coeff: c / rel.coeff,
            });
        }
    }
    out
}

/// Durand–Kerner root finding for small dense polynomials
/// `Σ coeffs[k] x^k`.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let deg = match coeffs.iter().rposition(|c| c.norm() > 1e-12) {
        Some(d) if d >= 1 => d,
        _ => return Vec::new(),
    };
    let lead = coeffs[deg];
    let monic: Vec<C64> = coeffs[..=deg].iter().map(|c| c / lead).collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let zk = roots[k];
            let mut denom = C64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != k {
                    denom *= zk - zj;
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(zk) / denom;
            roots[k] = zk - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}

/// Bounds at least one currently unbounded unknown by expressing the
/// unbounded cluster as monomials in a base unknown and reducing some
/// relation to a univariate polynomial.
fn eliminate(system: &HexagonSystem, cands: &mut [Option<Vec<C64>>]) -> Result<bool> {
    let monos = harvest_monomials(system, cands);
    let unbounded: Vec<usize> = (0..system.unknowns.len())
        .filter(|&u| cands[u].is_none())
        .collect();
    for &base in &unbounded {
        // expr[u] = (c, k) meaning X_u = c · base^k.
        let mut expr: BTreeMap<usize, (C64, i64)> = BTreeMap::new();
        expr.insert(base, (C64::new(1.0, 0.0), 1));
        loop {
            let mut grew = false;
            for m in &monos {
                let missing: Vec<(usize, i64)> = m
                    .exps
                    .iter()
                    .filter(|(u, _)| !expr.contains_key(u))
                    .map(|(u, e)| (*u, *e))
                    .collect();
                if missing.len() != 1 || missing[0].1.abs() != 1 {
                    continue;
                }
                let (target, e) = missing[0];
                let mut c_known = C64::new(1.0, 0.0);
                let mut k_known = 0i64;
                for (u, ex) in &m.exps {
                    if *u == target {
                        continue;
                    }
                    let (c, k) = expr[u];
                    c_known *= pow_i(c, *ex);
                    k_known += k * ex;
                }
                // X^e · c_known · base^{k_known} = coeff
                let (c, k) = if e == 1 {
                    (m.coeff / c_known, -k_known)
                } else {
                    (c_known / m.coeff, k_known)
                };
                expr.insert(target, (c, k));
                grew = true;
            }
            if !grew {
                break;
            }
        }
        // Try to reduce a relation to a univariate polynomial in `base`.
        for rel in &system.relations {
            let involved: Vec<usize> = rel
                .lhs
                .iter()
                .copied()
                .chain(rel.rhs.iter().filter_map(|(_, u)| *u))
                .collect();
            if involved.iter().any(|u| cands[*u].is_none() && !expr.contains_key(u)) {
                continue;
            }
            if !involved.iter().any(|u| expr.contains_key(u)) {
                continue;
            }
            let bounded_ids: Vec<usize> = involved
                .iter()
                .copied()
                .filter(|u| cands[*u].is_some())
                .collect();
            let Some(assignments) = combos(&bounded_ids, cands) else {
                continue;
            };
            let mut base_cands: Vec<C64> = Vec::new();
            let mut got_poly = false;
            for assign in &assignments {
                // Collect Σ c·base^k = 0 terms.
                let mut terms: BTreeMap<i64, C64> = BTreeMap::new();
                let mut lhs_c = rel.coeff;
                let mut lhs_k = 0i64;
                for &u in &rel.lhs {
                    if let Some(&(c, k)) = expr.get(&u) {
                        lhs_c *= c;
                        lhs_k += k;
                    } else {
                        lhs_c *= assign[&u];
                    }
                }
                *terms.entry(lhs_k).or_insert(C64::new(0.0, 0.0)) += lhs_c;
                for (c, u) in &rel.rhs {
                    let (tc, tk) = match u {
                        Some(id) => match expr.get(id) {
                            Some(&(ec, ek)) => (c * ec, ek),
                            None => (c * assign[id], 0),
                        },
                        None => (*c, 0),
                    };
                    *terms.entry(tk).or_insert(C64::new(0.0, 0.0)) -= tc;
                }
                terms.retain(|_, c| c.norm() > 1e-10);
                if terms.len() < 2 {
                    continue; // tautology or contradiction; useless for bounding
                }
                let min_k = *terms.keys().next().unwrap();
                let max_k = *terms.keys().last().unwrap();
                let deg = (max_k - min_k) as usize;
                if deg == 0 || deg > 64 {
                    continue;
                }
                let mut coeffs = vec![C64::new(0.0, 0.0); deg + 1];
                for (k, c) in &terms {
                    coeffs[(k - min_k) as usize] = *c;
                }
                got_poly = true;
                for root in poly_roots(&coeffs) {
                    push_unique(&mut base_cands, root);
                }
            }
            if got_poly {
                cands[base] = Some(base_cands.clone());
                for (&u, &(c, k)) in &expr {
                    if u == base || cands[u].is_some() {
                        continue;
                    }
                    let mut set = Vec::new();
                    for &b in &base_cands {
                        push_unique(&mut set, c * pow_i(b, k));
                    }
                    cands[u] = Some(set);
                }
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn pow_i(z: C64, e: i64) -> C64 {
    if e >= 0 {
        z.powu(e as u32)
    } else {
        z.powu((-e) as u32).inv()
    }
}

/// Nearest exact rational turn `e^{2πi p/q}` with `q ≤ 64`, when one is
/// within snapping distance.
fn snap_phase(z: C64) -> Option<C64> {
    if (z.norm() - 1.0).abs() > 1e-6 {
        return None;
    }
    let turn = z.arg() / std::f64::consts::TAU;
    let mut best: Option<(f64, C64)> = None;
    for q in 1..=64u32 {
        let p = (turn * f64::from(q)).round();
        let candidate = C64::from_polar(1.0, std::f64::consts::TAU * p / f64::from(q));
        let err = (z - candidate).norm();
        if err < 1e-7 && best.as_ref().map(|(e, _)| err < *e).unwrap_or(true) {
            best = Some((err, candidate));
        }
    }
    best.map(|(_, c)| c)
}

fn table_from_assignment(system: &HexagonSystem, values: &[C64]) -> RSymbolTable {
    let mut table = RSymbolTable::default();
    for key in admissible_r_keys(&system.ring) {
        if key[0] == 0 || key[1] == 0 {
            table.entries.insert(key, C64::new(1.0, 0.0));
        }
    }
    for (k, v) in system.unknowns.iter().zip(values) {
        table.entries.insert(*k, *v);
    }
    table
}

/// Enumerates all unimodular hexagon solutions over the system, deduplicated
/// by gauge-invariant fingerprint and canonically ordered.
pub fn solve(system: &HexagonSystem, tol: f64) -> Result<BraidedSolutionSet> {
    let n = system.unknowns.len();
    let mut cands: Vec<Option<Vec<C64>>> = vec![None; n];
    loop {
        let mut progress = false;
        for rel in &system.relations {
            if propagate(rel, &mut cands) {
                progress = true;
            }
        }
        if cands.iter().all(|c| c.is_some()) {
            break;
        }
        if progress {
            continue;
        }
        if !eliminate(system, &mut cands)? {
            let stuck: Vec<RKey> = system
                .unknowns
                .iter()
                .zip(&cands)
                .filter(|(_, c)| c.is_none())
                .map(|(k, _)| *k)
                .collect();
            return Err(Error::SolverIncomplete(format!(
                "could not derive a finite candidate set for unknowns {stuck:?}"
            )));
        }
    }
    let mut sets: Vec<Vec<C64>> = cands.into_iter().map(Option::unwrap).collect();
    for set in &mut sets {
        set.sort_by_key(|z| quant(*z));
    }
    let mut grid_size = 1usize;
    for set in &sets {
        grid_size = grid_size.saturating_mul(set.len());
        if grid_size > GRID_CAP {
            return Err(Error::SolverIncomplete(format!(
                "candidate grid exceeds {GRID_CAP} assignments"
            )));
        }
    }
    if sets.iter().any(|s| s.is_empty()) {
        grid_size = 0;
    }

    let dims = fp_dimensions(&system.ring)?;
    // (rounded-phase key, table, hexagon residual)
    type Accepted = (Vec<(i64, i64)>, RSymbolTable, f64);
    let mut accepted: Vec<Accepted> = Vec::new();
    let mut odometer = vec![0usize; n];
    for _ in 0..grid_size {
        let values: Vec<C64> = odometer
            .iter()
            .zip(&sets)
            .map(|(&i, set)| set[i])
            .collect();
        // advance odometer for the next iteration
        for d in (0..n).rev() {
            odometer[d] += 1;
            if odometer[d] < sets[d].len() {
                break;
            }
            odometer[d] = 0;
        }
        // Cheap filter on the extracted relations before the full sweep.
        let quick_ok = system.relations.iter().all(|rel| {
            let mut lhs = rel.coeff;
            for &u in &rel.lhs {
                lhs *= values[u];
            }
            let rhs: C64 = rel
                .rhs
                .iter()
                .map(|(c, u)| match u {
                    Some(id) => c * values[*id],
                    None => *c,
                })
                .sum();
            (lhs - rhs).norm() < CAND_TOL
        });
        if !quick_ok {
            continue;
        }
        let raw = table_from_assignment(system, &values);
        let snapped_values: Option<Vec<C64>> =
            values.iter().map(|&v| snap_phase(v)).collect();
        let mut chosen: Option<(RSymbolTable, f64)> = None;
        if let Some(sv) = snapped_values {
            let table = table_from_assignment(system, &sv);
            let rep = check_hexagon(&system.ring, &system.f, &table, tol)?;
            if rep.pass() {
                chosen = Some((table, rep.max_residual));
            }
        }
        if chosen.is_none() {
            let rep = check_hexagon(&system.ring, &system.f, &raw, tol)?;
            if rep.pass() {
                chosen = Some((raw, rep.max_residual));
            }
        }
        if let Some((table, residual)) = chosen {
            let key: Vec<(i64, i64)> = system
                .unknowns
                .iter()
                .map(|k| quant(table.entries[k]))
                .collect();
            if !accepted.iter().any(|(k, _, _)| *k == key) {
                accepted.push((key, table, residual));
            }
        }
    }
    // Canonical order: lexicographic on rounded phases.
    accepted.sort_by(|a, b| a.0.cmp(&b.0));
    // Dedup by gauge-invariant fingerprint.
    let mut solutions = Vec::new();
    let mut fingerprints: Vec<Fingerprint> = Vec::new();
    let mut residuals = Vec::new();
    for (_, table, residual) in accepted {
        let fp = invariant_fingerprint(&system.ring, &system.f, &table, &dims, tol)?;
        if fingerprints.contains(&fp) {
            continue;
        }
        solutions.push(table);
        fingerprints.push(fp);
        residuals.push(residual);
    }
    Ok(BraidedSolutionSet {
        solutions,
        fingerprints,
        residuals,
    })
}

#[derive(Debug, Clone)]
pub struct UbtcEntry {
    pub f_index: usize,
    pub r: RSymbolTable,
    pub fingerprint: Fingerprint,
    pub residual: f64,
    pub verdict: ModularityVerdict,
}

#[derive(Debug, Clone)]
pub struct UbtcCatalog {
    pub entries: Vec<UbtcEntry>,
}

/// Union of `solve()` outputs over the supplied F classes, deduplicated by
/// invariant fingerprint, with a modularity verdict per entry.
pub fn enumerate_ubtcs(
    ring: &FusionRing,
    f_list: &[FSymbolTable],
    tol: f64,
) -> Result<UbtcCatalog> {
    let dims: DimensionVector = fp_dimensions(ring)?;
    let mut entries: Vec<UbtcEntry> = Vec::new();
    for (f_index, f_tab) in f_list.iter().enumerate() {
        let system = build_system(ring, f_tab, tol)?;
        let set = solve(&system, tol)?;
        for ((r_tab, fp), residual) in set
            .solutions
            .into_iter()
            .zip(set.fingerprints)
            .zip(set.residuals)
        {
            if entries.iter().any(|e| e.fingerprint == fp) {
                continue;
            }
            let md = crate::modular::assemble(ring, &dims, &r_tab, tol)?;
            let verdict = modularity_check(&md, tol);
            entries.push(UbtcEntry {
                f_index,
                r: r_tab,
                fingerprint: fp,
                residual,
                verdict,
            });
        }
    }
    Ok(UbtcCatalog { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tensor::reverse_braiding;

    const TOL: f64 = 1e-9;

    #[test]
    fn z2_trivial_f_has_one_unknown_and_two_solutions() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        assert_eq!(system.unknowns, vec![[1, 1, 0]]);
        let set = solve(&system, TOL).unwrap();
        assert_eq!(set.solutions.len(), 2);
        let mut values: Vec<C64> = set
            .solutions
            .iter()
            .map(|s| s.entries[&[1, 1, 0]])
            .collect();
        values.sort_by_key(|z| quant(*z));
        assert!((values[0] - C64::new(-1.0, 0.0)).norm() < TOL);
        assert!((values[1] - C64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn z2_nontrivial_f_gives_semion_pair() {
        let cat = catalog::semion(1).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        let set = solve(&system, TOL).unwrap();
        assert_eq!(set.solutions.len(), 2);
        for s in &set.solutions {
            let v = s.entries[&[1, 1, 0]];
            assert!((v - C64::new(0.0, 1.0)).norm() < TOL || (v - C64::new(0.0, -1.0)).norm() < TOL);
        }
    }

    #[test]
    fn trivial_ring_has_empty_system() {
        let cat = catalog::trivial();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        assert!(system.unknowns.is_empty());
        let set = solve(&system, TOL).unwrap();
        assert_eq!(set.solutions.len(), 1);
    }

    #[test]
    fn ising_unknowns_are_the_five_channels() {
        let cat = catalog::ising_f_only(1).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        assert_eq!(
            system.unknowns,
            vec![[1, 1, 0], [1, 1, 2], [1, 2, 1], [2, 1, 1], [2, 2, 0]]
        );
    }

    #[test]
    fn ising_kappa_plus_has_four_solutions() {
        let cat = catalog::ising_f_only(1).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        let set = solve(&system, TOL).unwrap();
        assert_eq!(set.solutions.len(), 4);
        for res in &set.residuals {
            assert!(*res < TOL);
        }
        // The spec's shipped table is among them.
        let shipped = catalog::ising_with_spec_braiding(1).unwrap();
        let fp = shipped.fingerprint(TOL).unwrap();
        assert!(set.fingerprints.contains(&fp));
    }

    #[test]
    fn fibonacci_has_two_mutually_reverse_solutions() {
        let cat = catalog::fibonacci().unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        let set = solve(&system, TOL).unwrap();
        assert_eq!(set.solutions.len(), 2);
        let dims = fp_dimensions(&cat.ring).unwrap();
        let rev = reverse_braiding(&set.solutions[0]);
        let fp_rev =
            invariant_fingerprint(&cat.ring, &system.f, &rev, &dims, TOL).unwrap();
        assert_eq!(fp_rev, set.fingerprints[1]);
    }

    #[test]
    fn solution_sets_are_closed_under_reverse_braiding() {
        for cat in [
            catalog::pointed_zn(2, 0).unwrap(),
            catalog::semion(1).unwrap(),
            catalog::ising_f_only(1).unwrap(),
            catalog::ising_f_only(-1).unwrap(),
            catalog::fibonacci().unwrap(),
        ] {
            let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
            let set = solve(&system, TOL).unwrap();
            let dims = fp_dimensions(&cat.ring).unwrap();
            for s in &set.solutions {
                let rev = reverse_braiding(s);
                let fp =
                    invariant_fingerprint(&cat.ring, &system.f, &rev, &dims, TOL).unwrap();
                assert!(set.fingerprints.contains(&fp), "in {}", cat.name);
            }
        }
    }

    #[test]
    fn solver_output_is_re_verified_by_independent_sweep() {
        let cat = catalog::ising_f_only(1).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        let set = solve(&system, TOL).unwrap();
        for s in &set.solutions {
            let hex = check_hexagon(&cat.ring, cat.f.as_ref().unwrap(), s, TOL).unwrap();
            assert!(hex.pass());
            let uni =
                crate::tensor::check_unitarity(&cat.ring, cat.f.as_ref().unwrap(), s, TOL)
                    .unwrap();
            assert!(uni.pass());
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let cat = catalog::ising_f_only(1).unwrap();
        let system = build_system(&cat.ring, cat.f.as_ref().unwrap(), TOL).unwrap();
        let a = solve(&system, TOL).unwrap();
        let b = solve(&system, TOL).unwrap();
        assert_eq!(a.solutions.len(), b.solutions.len());
        for (x, y) in a.solutions.iter().zip(&b.solutions) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn eight_ising_ubtcs() {
        let cat = catalog::ising_f_only(1).unwrap();
        let f_list = vec![
            catalog::ising_f_only(1).unwrap().f.unwrap(),
            catalog::ising_f_only(-1).unwrap().f.unwrap(),
        ];
        let result = enumerate_ubtcs(&cat.ring, &f_list, TOL).unwrap();
        assert_eq!(result.entries.len(), 8);
        for e in &result.entries {
            assert!(e.verdict.is_modular());
        }
    }

    #[test]
    fn z2_both_classes_give_four_ubtcs() {
        let cat = catalog::pointed_zn(2, 0).unwrap();
        let f_list = vec![
            cat.f.clone().unwrap(),
            catalog::semion(1).unwrap().f.unwrap(),
        ];
        let result = enumerate_ubtcs(&cat.ring, &f_list, TOL).unwrap();
        assert_eq!(result.entries.len(), 4);
        let modular = result.entries.iter().filter(|e| e.verdict.is_modular()).count();
        assert_eq!(modular, 2);
    }

    #[test]
    fn dedup_is_idempotent() {
        let cat = catalog::ising_f_only(1).unwrap();
        let f_list = vec![cat.f.clone().unwrap(), cat.f.clone().unwrap()];
        let once = enumerate_ubtcs(&cat.ring, &f_list[..1], TOL).unwrap();
        let twice = enumerate_ubtcs(&cat.ring, &f_list, TOL).unwrap();
        assert_eq!(once.entries.len(), twice.entries.len());
    }
}
