//! Direct-sum decomposition into indecomposables and certified isomorphism
//! testing, driven by the endomorphism ring.
//!
//! Splitting works through Fitting decompositions: a coprime factorization
//! u*v of the minimal polynomial of an endomorphism splits the module as
//! ker u(f) + ker v(f). Candidates are the Hom basis, all pairwise products
//! (which reach idempotent-like elements the basis may hide), and seeded
//! random combinations. A module is certified indecomposable when every
//! basis endomorphism is a scalar plus nilpotent and the span those
//! nilpotent parts generate is a nilpotent algebra; its endomorphism ring
//! is then local with scalar semisimple quotient. When the semisimple
//! quotient is a proper field extension instead, decomposition is reported
//! as uncertified rather than guessed.

use crate::error::{ArqError, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::poly::{bezout_one, coprime_factors, Poly};
use crate::rep::{hom_space, ModuleMap, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_TRIALS: usize = 32;
const ISO_RANDOM_TRIALS: usize = 64;
const ISO_EXHAUSTIVE_CAP: u128 = 512;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Indecomposable iso classes with multiplicities.
    pub summands: Vec<(Representation, usize)>,
    /// One witness per component instance: (class index, inclusion, projection).
    /// The inclusions and projections compose to the identity of the module.
    pub witnesses: Vec<(usize, ModuleMap, ModuleMap)>,
}

impl Decomposition {
    pub fn class_multiset(&self) -> Vec<(Vec<usize>, usize)> {
        self.summands
            .iter()
            .map(|(r, m)| (r.dims.clone(), *m))
            .collect()
    }
}

enum SplitOutcome {
    Indecomposable,
    Split(Vec<(Representation, ModuleMap, ModuleMap)>),
}

fn poly_of_map(map: &ModuleMap, p: &Poly) -> Result<ModuleMap> {
    let blocks: Result<Vec<Matrix>> = map.blocks.iter().map(|b| b.eval_poly(p)).collect();
    Ok(ModuleMap {
        source: map.source.clone(),
        target: map.target.clone(),
        blocks: blocks?,
    })
}

fn total_matrix(map: &ModuleMap) -> Matrix {
    let refs: Vec<&Matrix> = map.blocks.iter().collect();
    Matrix::block_diag(&map.source.algebra.field, &refs)
}

/// Try to split along one endomorphism. Returns the two complementary
/// subrepresentations with inclusion/projection witnesses.
fn try_split_along(m: &Representation, f_endo: &ModuleMap) -> Result<Option<SplitOutcome>> {
    let total = total_matrix(f_endo);
    let mp = total.min_poly()?;
    let factors = coprime_factors(&mp);
    if factors.len() < 2 {
        return Ok(None);
    }
    let u = factors[0].clone();
    let mut v = Poly::one(&m.algebra.field);
    for p in &factors[1..] {
        v = v.mul(p);
    }
    let (bez_a, bez_b) = bezout_one(&u, &v)?;
    // projections onto ker u(f) along ker v(f) and vice versa
    let proj1_full = poly_of_map(f_endo, &bez_b.mul(&v))?;
    let proj2_full = poly_of_map(f_endo, &bez_a.mul(&u))?;
    let mut parts = Vec::new();
    for (poly, proj_full) in [(u, proj1_full), (v, proj2_full)] {
        let umap = poly_of_map(f_endo, &poly)?;
        let kernel = umap.kernel_subspaces();
        let (sub, incl) = m.sub_rep(&kernel)?;
        if sub.total_dim() == 0 || sub.total_dim() == m.total_dim() {
            return Ok(None);
        }
        // coordinates of the projection in the kernel basis
        let blocks: Result<Vec<Matrix>> = kernel
            .iter()
            .zip(&proj_full.blocks)
            .map(|(basis, pf)| {
                let (x, _) = basis.solve(pf)?;
                x.ok_or_else(|| ArqError::Verification("projection misses its kernel".into()))
            })
            .collect();
        let proj = ModuleMap {
            source: m.clone(),
            target: sub.clone(),
            blocks: blocks?,
        };
        debug_assert!(proj.verify().is_ok());
        parts.push((sub, incl, proj));
    }
    // inclusions compose with projections to the identity
    let recomposed = parts[0].1.compose(&parts[0].2)?.add(&parts[1].1.compose(&parts[1].2)?)?;
    let id = ModuleMap::identity(m);
    if recomposed != id {
        return Err(ArqError::Verification(
            "Fitting split witnesses do not sum to the identity".into(),
        ));
    }
    Ok(Some(SplitOutcome::Split(parts)))
}

/// One splitting round: basis maps first, then the locality certificate
/// (scalar-plus-nilpotent basis generating a nilpotent algebra), and only
/// when that is inconclusive the pairwise products and random combinations
/// that reach idempotents hiding behind a nilpotent basis.
fn split_once(m: &Representation, rng: &mut ChaCha8Rng) -> Result<SplitOutcome> {
    let field = m.algebra.field.clone();
    let endos = hom_space(m, m)?;
    if endos.len() <= 1 {
        return Ok(SplitOutcome::Indecomposable);
    }
    // basis elements
    for e in &endos {
        if let Some(s) = try_split_along(m, e)? {
            return Ok(s);
        }
    }
    // locality certificate
    let mut all_scalar_plus_nilpotent = true;
    let mut degenerate_reason = String::new();
    let mut nil_parts: Vec<Matrix> = Vec::new();
    for e in &endos {
        let total = total_matrix(e);
        let mp = total.min_poly()?;
        let sf = mp.squarefree_part();
        if sf.degree() != 1 {
            all_scalar_plus_nilpotent = false;
            degenerate_reason = format!(
                "endomorphism with squarefree minimal polynomial {} of degree {}",
                sf.format("t"),
                sf.degree()
            );
            break;
        }
        let lambda = field.neg(&sf.coeffs[0]);
        let shifted = total.sub(&Matrix::identity(&field, total.rows).scale(&lambda))?;
        if !shifted.is_zero() {
            nil_parts.push(shifted);
        }
    }
    if all_scalar_plus_nilpotent && multiplicative_closure_is_nilpotent(&field, &nil_parts)? {
        return Ok(SplitOutcome::Indecomposable);
    }
    // pairwise products
    for a in &endos {
        for b in &endos {
            let prod = a.compose(b)?;
            if prod.is_zero() {
                continue;
            }
            if let Some(s) = try_split_along(m, &prod)? {
                return Ok(s);
            }
        }
    }
    // seeded random combinations
    for _ in 0..RANDOM_TRIALS {
        let mut acc = ModuleMap::zero(m, m);
        for e in &endos {
            let c = random_scalar(&field, rng);
            acc = acc.add(&e.scale(&c))?;
        }
        if acc.is_zero() {
            continue;
        }
        if let Some(s) = try_split_along(m, &acc)? {
            return Ok(s);
        }
    }
    if all_scalar_plus_nilpotent {
        Err(ArqError::Uncertified(
            "radical candidate generates a non-nilpotent algebra".into(),
        ))
    } else {
        Err(ArqError::Uncertified(degenerate_reason))
    }
}

fn random_scalar(field: &crate::field::Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field.order() {
        Some(q) if q <= 1 << 20 => {
            let all = field.enumerate().unwrap();
            all[rng.gen_range(0..all.len())].clone()
        }
        _ => field.from_i64(rng.gen_range(-9..10)),
    }
}

/// Span-closure of the given matrices under multiplication, then a power
/// chain to decide nilpotency of the generated (non-unital) algebra.
fn multiplicative_closure_is_nilpotent(
    field: &crate::field::Field,
    gens: &[Matrix],
) -> Result<bool> {
    if gens.is_empty() {
        return Ok(true);
    }
    let ambient = gens[0].rows * gens[0].cols;
    let mut basis: Vec<Matrix> = Vec::new();
    let mut span = crate::matrix::SpanTracker::new(field, ambient);
    for g in gens {
        if span.insert(&g.vectorize()) {
            basis.push(g.clone());
        }
    }
    // close under right multiplication by generators
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let prod = b.mul(g)?;
                if span.insert(&prod.vectorize()) {
                    basis.push(prod.clone());
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    // power chain: D_{k+1} = span(D_k * C); nilpotent iff it reaches zero
    let mut layer = basis.clone();
    for _ in 0..=basis.len() + 1 {
        if layer.is_empty() {
            return Ok(true);
        }
        let mut next: Vec<Matrix> = Vec::new();
        let mut next_span = crate::matrix::SpanTracker::new(field, ambient);
        for d in &layer {
            for c in &basis {
                let prod = d.mul(c)?;
                if next_span.insert(&prod.vectorize()) {
                    next.push(prod);
                }
            }
        }
        if next.len() == layer.len() {
            // compare spans: a stable nonzero chain means not nilpotent
            let mut old_span = crate::matrix::SpanTracker::new(field, ambient);
            for m in &layer {
                old_span.insert(&m.vectorize());
            }
            if next.iter().all(|m| old_span.contains(&m.vectorize())) {
                return Ok(false);
            }
        }
        layer = next;
    }
    Ok(layer.is_empty())
}

/// Full decomposition into indecomposables with multiplicities and witness
/// maps. Deterministic for a fixed seed.
pub fn decompose(m: &Representation, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces: Vec<(Representation, ModuleMap, ModuleMap)> = Vec::new();
    if m.total_dim() > 0 {
        let id = ModuleMap::identity(m);
        let mut stack = vec![(m.clone(), id.clone(), id)];
        while let Some((part, incl, proj)) = stack.pop() {
            match split_once(&part, &mut rng)? {
                SplitOutcome::Indecomposable => pieces.push((part, incl, proj)),
                SplitOutcome::Split(subs) => {
                    for (sub, sub_incl, sub_proj) in subs {
                        let new_incl = incl.compose(&sub_incl)?;
                        let new_proj = sub_proj.compose(&proj)?;
                        stack.push((sub, new_incl, new_proj));
                    }
                }
            }
        }
    }
    // deterministic order: by dimension vector, then discovery order
    pieces.sort_by(|a, b| a.0.dims.cmp(&b.0.dims));
    // group by isomorphism
    let mut summands: Vec<(Representation, usize)> = Vec::new();
    let mut witnesses = Vec::new();
    for (part, incl, proj) in pieces {
        let mut found = None;
        for (ci, (class_rep, _)) in summands.iter().enumerate() {
            if indec_iso(class_rep, &part)? {
                found = Some(ci);
                break;
            }
        }
        let ci = match found {
            Some(ci) => {
                summands[ci].1 += 1;
                ci
            }
            None => {
                summands.push((part.clone(), 1));
                summands.len() - 1
            }
        };
        witnesses.push((ci, incl, proj));
    }
    // witnesses recompose to the identity
    if m.total_dim() > 0 {
        let mut acc = ModuleMap::zero(m, m);
        for (_, incl, proj) in &witnesses {
            acc = acc.add(&incl.compose(proj)?)?;
        }
        if acc != ModuleMap::identity(m) {
            return Err(ArqError::Verification(
                "decomposition witnesses do not recompose to the identity".into(),
            ));
        }
    }
    Ok(Decomposition {
        summands,
        witnesses,
    })
}

/// Split one copy of a certified-indecomposable module off `e`, returning
/// the complement when a split exists. Since End(r) is local, a split exists
/// iff some single composite (e -> r) o (r -> e) is invertible, so the pair
/// scan is complete.
pub fn split_off(e: &Representation, r: &Representation) -> Result<Option<Representation>> {
    if r.total_dim() == 0 || r.dims.iter().zip(&e.dims).any(|(a, b)| a > b) {
        return Ok(None);
    }
    let into = hom_space(r, e)?;
    if into.is_empty() {
        return Ok(None);
    }
    let back = hom_space(e, r)?;
    if back.is_empty() {
        return Ok(None);
    }
    for h in &into {
        for g in &back {
            let u = g.compose(h)?;
            if !u.is_iso() {
                continue;
            }
            let beta = u.inverse()?.compose(g)?; // beta o h = id_r
            let kernel = beta.kernel_subspaces();
            let (complement, _) = e.sub_rep(&kernel)?;
            debug_assert_eq!(complement.total_dim() + r.total_dim(), e.total_dim());
            return Ok(Some(complement));
        }
    }
    Ok(None)
}

/// Certified isomorphism test for two certified-indecomposable modules:
/// M and N are isomorphic iff the span of all composites Hom(N,M) o Hom(M,N)
/// contains the identity (that span is an ideal of the local ring End(M)).
pub fn indec_iso(m: &Representation, n: &Representation) -> Result<bool> {
    if m.algebra != n.algebra {
        return Err(ArqError::AlgebraMismatch);
    }
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let fwd = hom_space(m, n)?;
    if fwd.is_empty() {
        return Ok(false);
    }
    let bwd = hom_space(n, m)?;
    if bwd.is_empty() {
        return Ok(false);
    }
    let f = &m.algebra.field;
    let d = m.total_dim();
    let id_vec = Matrix::identity(f, d).vectorize();
    let mut span = crate::matrix::SpanTracker::new(f, d * d);
    for h in &fwd {
        for g in &bwd {
            let comp = total_matrix(&g.compose(h)?).vectorize();
            span.insert(&comp);
            if span.contains(&id_vec) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Isomorphism test for arbitrary modules: invertible-element search in
/// Hom(M,N) (exhaustive over small finite coefficient spaces, then seeded
/// random), falling back to decompose-and-match for a certified answer.
pub fn iso(m: &Representation, n: &Representation, seed: u64) -> Result<bool> {
    if m.algebra != n.algebra {
        return Err(ArqError::AlgebraMismatch);
    }
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let hom = hom_space(m, n)?;
    if hom.is_empty() {
        return Ok(false);
    }
    for h in &hom {
        if h.is_iso() {
            return Ok(true);
        }
    }
    let field = &m.algebra.field;
    let d = hom.len();
    if let Some(q) = field.order() {
        if q.pow(d as u32) <= ISO_EXHAUSTIVE_CAP {
            let elems = field.enumerate().unwrap();
            let mut counters = vec![0usize; d];
            loop {
                // advance odometer
                let mut i = 0;
                loop {
                    if i == d {
                        return Ok(false); // exhausted: certified negative
                    }
                    counters[i] += 1;
                    if counters[i] < elems.len() {
                        break;
                    }
                    counters[i] = 0;
                    i += 1;
                }
                let mut acc = ModuleMap::zero(m, n);
                for (j, &ci) in counters.iter().enumerate() {
                    if ci == 0 {
                        continue;
                    }
                    acc = acc.add(&hom[j].scale(&elems[ci]))?;
                }
                if acc.is_iso() {
                    return Ok(true);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x15015015);
    for _ in 0..ISO_RANDOM_TRIALS {
        let mut acc = ModuleMap::zero(m, n);
        for h in &hom {
            acc = acc.add(&h.scale(&random_scalar(field, &mut rng)))?;
        }
        if acc.is_iso() {
            return Ok(true);
        }
    }
    // certified path: decompose both sides and match classes
    let dm = decompose(m, seed)?;
    let dn = decompose(n, seed.wrapping_add(1))?;
    multisets_match(&dm, &dn)
}

/// Multiset equality of two decompositions under indecomposable isomorphism.
pub fn multisets_match(a: &Decomposition, b: &Decomposition) -> Result<bool> {
    if a.summands.iter().map(|(_, m)| m).sum::<usize>()
        != b.summands.iter().map(|(_, m)| m).sum::<usize>()
    {
        return Ok(false);
    }
    let mut used = vec![false; b.summands.len()];
    for (ra, ma) in &a.summands {
        let mut matched = false;
        for (j, (rb, mb)) in b.summands.iter().enumerate() {
            if used[j] || ma != mb {
                continue;
            }
            if indec_iso(ra, rb)? {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(used.iter().all(|&u| u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presets::{family_module, kronecker, quantum_plane, truncated_poly, uniserial};
    use crate::rep::{projective, syzygy};

    #[test]
    fn simple_plus_simple_over_kronecker() {
        // End(S + S) has a basis that may hide idempotents behind nilpotents;
        // this exercises the product candidates.
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let s = Representation::simple(&alg, 0);
        let (ss, _, _) = Representation::direct_sum(&[&s, &s]).unwrap();
        let d = decompose(&ss, 7).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 2);
        assert_eq!(d.summands[0].0.total_dim(), 1);
    }

    #[test]
    fn projective_kronecker_indecomposable() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let p = projective(&alg, 0).unwrap();
        let d = decompose(&p, 7).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 1);
    }

    #[test]
    fn uniserial_mixed_sum_recovered() {
        let q = Field::rational();
        let alg = truncated_poly(&q, 3);
        let m1 = uniserial(&alg, 1);
        let m2 = uniserial(&alg, 2);
        let m3 = uniserial(&alg, 3);
        let (sum, _, _) = Representation::direct_sum(&[&m2, &m1, &m3, &m2]).unwrap();
        let d = decompose(&sum, 11).unwrap();
        let mut sizes: Vec<(usize, usize)> = d
            .summands
            .iter()
            .map(|(r, m)| (r.total_dim(), *m))
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn randomized_sums_roundtrip() {
        use rand::{Rng, SeedableRng};
        let q = Field::rational();
        let alg = truncated_poly(&q, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0xDEC0);
        for trial in 0..100 {
            let count = rng.gen_range(1..4);
            let parts: Vec<Representation> =
                (0..count).map(|_| uniserial(&alg, rng.gen_range(1..5))).collect();
            let refs: Vec<&Representation> = parts.iter().collect();
            let (sum, _, _) = Representation::direct_sum(&refs).unwrap();
            let d = decompose(&sum, trial as u64).unwrap();
            let mut expect: Vec<usize> = parts.iter().map(|p| p.total_dim()).collect();
            expect.sort();
            let mut got: Vec<usize> = Vec::new();
            for (r, m) in &d.summands {
                for _ in 0..*m {
                    got.push(r.total_dim());
                }
            }
            got.sort();
            assert_eq!(expect, got, "trial {}", trial);
        }
    }

    #[test]
    fn family_modules_pairwise_noniso() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        for g1 in 1..5i64 {
            for g2 in 1..5i64 {
                let m1 = family_module(&alg, &f5.from_i64(g1));
                let m2 = family_module(&alg, &f5.from_i64(g2));
                assert_eq!(iso(&m1, &m2, 3).unwrap(), g1 == g2, "gamma {} vs {}", g1, g2);
            }
        }
    }

    #[test]
    fn syzygy_period_four_over_f5_q2() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let m1 = family_module(&alg, &f5.one());
        let mut cur = m1.clone();
        for k in 1..=4 {
            cur = syzygy(&cur).unwrap();
            let back = iso(&cur, &m1, 5).unwrap();
            assert_eq!(back, k == 4, "period check at k = {}", k);
        }
    }

    #[test]
    fn iso_is_reflexive_and_detects_twists() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let m = family_module(&alg, &f5.from_i64(3));
        assert!(iso(&m, &m, 1).unwrap());
        assert!(indec_iso(&m, &m).unwrap());
    }
}
