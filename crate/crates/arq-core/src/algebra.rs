//! Bound quiver algebras A = kQ/I with an explicit reduced-path basis,
//! multiplication table, Frobenius functionals and the Nakayama automorphism.
//!
//! The basis is computed by truncated linear algebra: all paths of length
//! below the nilpotency bound are reduced modulo the two-sided span of the
//! padded relations. Pivots are chosen at the (length, lex)-largest paths, so
//! the surviving representative of each residue class is the lexicographic
//! minimum under the input arrow order.

use crate::error::{ArqError, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver, RelationSet};
use std::collections::HashMap;
use std::sync::Arc;

/// Hard cap on the number of paths the truncated elimination will handle.
const MAX_PATHS: usize = 40_000;

/// Sparse elimination over path coordinates, pivoting each row on its
/// largest (length, lex) coordinate. Rows come back normalized (pivot
/// coefficient 1, remaining support strictly below the pivot) and sorted by
/// descending pivot, so a single forward sweep reduces any vector.
fn eliminate(
    field: &Field,
    rows: Vec<Vec<(usize, Scalar)>>,
    _ncols: usize,
) -> Vec<(usize, Vec<(usize, Scalar)>)> {
    use std::collections::BTreeMap;
    let mut pivot_rows: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for row in rows {
        let mut work: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in row {
            let cur = work.remove(&i).unwrap_or_else(|| field.zero());
            let nv = field.add(&cur, &c);
            if !field.is_zero(&nv) {
                work.insert(i, nv);
            }
        }
        loop {
            let Some((&max_idx, coeff)) = work.iter().next_back() else {
                break;
            };
            let coeff = coeff.clone();
            match pivot_rows.get(&max_idx) {
                Some(existing) => {
                    work.remove(&max_idx);
                    for (i, ec) in existing {
                        let cur = work.remove(i).unwrap_or_else(|| field.zero());
                        let nv = field.sub(&cur, &field.mul(&coeff, ec));
                        if !field.is_zero(&nv) {
                            work.insert(*i, nv);
                        }
                    }
                }
                None => {
                    let inv = field.inv(&coeff).expect("pivot nonzero");
                    work.remove(&max_idx);
                    let normalized: Vec<(usize, Scalar)> = work
                        .iter()
                        .map(|(&i, c)| (i, field.mul(c, &inv)))
                        .collect();
                    pivot_rows.insert(max_idx, normalized);
                    break;
                }
            }
        }
    }
    pivot_rows.into_iter().rev().collect()
}

#[derive(Debug)]
pub struct AlgebraInner {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: RelationSet,
    /// Reduced paths forming a basis, sorted by (length, lex) ascending.
    pub basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// RREF rows of the relation span over all paths of length <= N,
    /// stored sparsely as (pivot path id, [(path id, coeff)]).
    reduction_rows: Vec<(usize, Vec<(usize, Scalar)>)>,
    /// All paths of length <= N in (length, lex) order with lookup.
    all_paths: Vec<Path>,
    all_index: HashMap<Path, usize>,
    /// mult_table[i][j] = coefficients of basis_i * basis_j over the basis.
    mult_table: Vec<Vec<Vec<(usize, Scalar)>>>,
}

/// A bound quiver algebra, cheap to clone and compared by identity.
#[derive(Clone)]
pub struct Algebra(pub Arc<AlgebraInner>);

impl std::ops::Deref for Algebra {
    type Target = AlgebraInner;
    fn deref(&self) -> &AlgebraInner {
        &self.0
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}
impl Eq for Algebra {}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(dim {}, {} vertices, {} arrows)",
            self.basis.len(),
            self.quiver.num_vertices(),
            self.quiver.arrows.len()
        )
    }
}

/// An element written over the algebra basis.
pub type Elem = Vec<Scalar>;

impl AlgebraInner {
    fn reduce_path_impl(&self, p: &Path) -> Elem {
        let f = &self.field;
        let mut out = vec![f.zero(); self.basis.len()];
        if p.len() > self.relations.nilpotency {
            return out;
        }
        let Some(&pid) = self.all_index.get(p) else {
            return out;
        };
        // single forward sweep: rows are sorted by descending pivot and each
        // row's support lies strictly below its pivot
        let mut work: HashMap<usize, Scalar> = HashMap::new();
        work.insert(pid, f.one());
        for (pivot, row) in &self.reduction_rows {
            let Some(c) = work.get(pivot).cloned() else {
                continue;
            };
            if f.is_zero(&c) {
                work.remove(pivot);
                continue;
            }
            for (idx, rc) in row {
                let cur = work.remove(idx).unwrap_or_else(|| f.zero());
                let nv = f.sub(&cur, &f.mul(&c, rc));
                if !f.is_zero(&nv) {
                    work.insert(*idx, nv);
                }
            }
            work.remove(pivot);
        }
        for (idx, c) in work {
            if let Some(&bi) = self.basis_index.get(&self.all_paths[idx]) {
                out[bi] = c;
            } else {
                debug_assert!(f.is_zero(&c), "reduction left a non-basis coordinate");
            }
        }
        out
    }

    fn build_mult_table(&self) -> Vec<Vec<Vec<(usize, Scalar)>>> {
        let f = &self.field;
        let d = self.basis.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let p = &self.basis[i];
                let q = &self.basis[j];
                if p.source(&self.quiver) != q.target(&self.quiver) {
                    continue;
                }
                let prod = p.compose(q, &self.quiver).unwrap();
                let red = self.reduce_path_impl(&prod);
                table[i][j] = red
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .collect();
            }
        }
        table
    }
}

impl Algebra {
    pub fn build(quiver: Quiver, relations: RelationSet, field: Field) -> Result<Algebra> {
        relations.validate(&quiver, &field)?;
        let n_bound = relations.nilpotency;

        // enumerate paths of length 0..=N in (length, lex) order
        let mut by_len: Vec<Vec<Path>> = Vec::with_capacity(n_bound + 1);
        by_len.push((0..quiver.num_vertices()).map(Path::Trivial).collect());
        let mut total = quiver.num_vertices();
        for d in 1..=n_bound {
            let mut level = Vec::new();
            if d == 1 {
                for (i, _) in quiver.arrows.iter().enumerate() {
                    level.push(Path::Arrows(vec![i]));
                }
            } else {
                // extend by prepending an arrow (left factor acts last)
                for p in &by_len[d - 1] {
                    if let Path::Arrows(seq) = p {
                        for (i, a) in quiver.arrows.iter().enumerate() {
                            if a.from == quiver.arrows[seq[0]].to {
                                let mut v = vec![i];
                                v.extend_from_slice(seq);
                                level.push(Path::Arrows(v));
                            }
                        }
                    }
                }
            }
            level.sort();
            total += level.len();
            if total > MAX_PATHS {
                return Err(ArqError::InvalidInput(format!(
                    "path count exceeds desk-scale cap {}",
                    MAX_PATHS
                )));
            }
            by_len.push(level);
        }
        let mut all_paths = Vec::with_capacity(total);
        for level in &by_len {
            all_paths.extend(level.iter().cloned());
        }
        let all_index: HashMap<Path, usize> = all_paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        // two-sided padded relation span, truncated at length N
        let mut span_rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for rel in &relations.relations {
            let live: Vec<&(Scalar, Path)> = rel
                .terms
                .iter()
                .filter(|(c, _)| !field.is_zero(c))
                .collect();
            if live.is_empty() {
                continue;
            }
            let rel_src = live[0].1.source(&quiver);
            let rel_tgt = live[0].1.target(&quiver);
            let min_len = live.iter().map(|(_, p)| p.len()).min().unwrap();
            for left in &all_paths {
                if left.source(&quiver) != rel_tgt {
                    continue;
                }
                for right in &all_paths {
                    if right.target(&quiver) != rel_src {
                        continue;
                    }
                    if left.len() + min_len + right.len() > n_bound {
                        continue;
                    }
                    let mut row: Vec<(usize, Scalar)> = Vec::new();
                    for (c, term) in &live {
                        if left.len() + term.len() + right.len() > n_bound {
                            continue; // the long term vanishes under J^N = 0
                        }
                        let padded = left
                            .compose(term, &quiver)
                            .and_then(|lp| lp.compose(right, &quiver))
                            .expect("padding endpoints checked");
                        let idx = all_index[&padded];
                        match row.iter_mut().find(|(i, _)| *i == idx) {
                            Some((_, acc)) => *acc = field.add(acc, c),
                            None => row.push((idx, (*c).clone())),
                        }
                    }
                    row.retain(|(_, c)| !field.is_zero(c));
                    if !row.is_empty() {
                        span_rows.push(row);
                    }
                }
            }
        }

        // sparse elimination, pivoting on the largest (length, lex) path
        let reduction_rows = eliminate(&field, span_rows, all_paths.len());
        let pivot_set: std::collections::BTreeSet<usize> =
            reduction_rows.iter().map(|(p, _)| *p).collect();

        // every path of full length N must lie in the span
        let first_full = all_paths
            .iter()
            .position(|p| p.len() == n_bound)
            .unwrap_or(all_paths.len());
        for idx in first_full..all_paths.len() {
            if !pivot_set.contains(&idx) {
                return Err(ArqError::NilpotencyTooSmall(format!(
                    "the length-{} path {} does not vanish; raise the nilpotency bound or add relations",
                    n_bound,
                    all_paths[idx].display(&quiver)
                )));
            }
        }

        let basis: Vec<Path> = all_paths
            .iter()
            .enumerate()
            .filter(|(i, p)| p.len() < n_bound && !pivot_set.contains(i))
            .map(|(_, p)| p.clone())
            .collect();
        let basis_index: HashMap<Path, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        let mut inner = AlgebraInner {
            field,
            quiver,
            relations,
            basis,
            basis_index,
            reduction_rows,
            all_paths,
            all_index,
            mult_table: Vec::new(),
        };
        let table = inner.build_mult_table();
        inner.mult_table = table;
        let alg = Algebra(Arc::new(inner));
        alg.check_associativity()?;
        Ok(alg)
    }

    fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let bi = self.basis_elem(i);
            for j in 0..d {
                let bj = self.basis_elem(j);
                let ij = self.mul_elems(&bi, &bj);
                for k in 0..d {
                    let bk = self.basis_elem(k);
                    let left = self.mul_elems(&ij, &bk);
                    let right = self.mul_elems(&bi, &self.mul_elems(&bj, &bk));
                    if left != right {
                        return Err(ArqError::Inconsistent(format!(
                            "associativity fails on basis triple ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero_elem(&self) -> Elem {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut e = self.zero_elem();
        e[i] = self.field.one();
        e
    }

    /// The multiplicative identity: sum of all trivial paths.
    pub fn one_elem(&self) -> Elem {
        let mut e = self.zero_elem();
        for v in 0..self.quiver.num_vertices() {
            let idx = self.basis_index[&Path::Trivial(v)];
            e[idx] = self.field.one();
        }
        e
    }

    pub fn idempotent_elem(&self, vertex: usize) -> Elem {
        let mut e = self.zero_elem();
        e[self.basis_index[&Path::Trivial(vertex)]] = self.field.one();
        e
    }

    pub fn arrow_basis_index(&self, arrow: usize) -> usize {
        self.basis_index[&Path::Arrows(vec![arrow])]
    }

    /// Reduce an arbitrary valid path to basis coordinates.
    pub fn reduce_path(&self, p: &Path) -> Elem {
        self.0.reduce_path_impl(p)
    }

    pub fn mul_elems(&self, a: &Elem, b: &Elem) -> Elem {
        let f = &self.field;
        let mut out = self.zero_elem();
        for (i, ca) in a.iter().enumerate() {
            if f.is_zero(ca) {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if f.is_zero(cb) {
                    continue;
                }
                let c = f.mul(ca, cb);
                for (k, tc) in &self.mult_table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, tc));
                }
            }
        }
        out
    }

    pub fn add_elems(&self, a: &Elem, b: &Elem) -> Elem {
        let f = &self.field;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    pub fn scale_elem(&self, c: &Scalar, a: &Elem) -> Elem {
        let f = &self.field;
        a.iter().map(|x| f.mul(c, x)).collect()
    }

    pub fn elem_is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|c| self.field.is_zero(c))
    }

    pub fn display_elem(&self, a: &Elem) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let path = self.basis[i].display(&self.quiver);
            if f.is_one(c) {
                parts.push(path);
            } else {
                parts.push(format!("{}*{}", f.format(c), path));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The opposite algebra (arrows and path words reversed).
    pub fn opposite(&self) -> Result<Algebra> {
        Algebra::build(
            self.quiver.opposite(),
            self.relations.opposite(),
            self.field.clone(),
        )
    }

    /// Resolve a path name like "xy", "x.y" or "e_v" against arrow names by
    /// greedy longest-match tokenization.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let s = text.trim();
        if let Some(v) = s.strip_prefix("e_") {
            return Ok(Path::Trivial(self.quiver.vertex_index(v)?));
        }
        let names: Vec<(usize, &str)> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.name.as_str()))
            .collect();
        let mut seq = Vec::new();
        for chunk in s.split(['.', '*']) {
            let mut rest = chunk;
            while !rest.is_empty() {
                let mut best: Option<(usize, usize)> = None;
                for (i, name) in &names {
                    if rest.starts_with(name) {
                        match best {
                            Some((_, l)) if l >= name.len() => {}
                            _ => best = Some((*i, name.len())),
                        }
                    }
                }
                match best {
                    Some((i, l)) => {
                        seq.push(i);
                        rest = &rest[l..];
                    }
                    None => {
                        return Err(ArqError::InvalidInput(format!(
                            "cannot tokenize path {:?} at {:?}",
                            text, rest
                        )))
                    }
                }
            }
        }
        if seq.is_empty() {
            return Err(ArqError::InvalidInput(format!("empty path {:?}", text)));
        }
        let p = Path::Arrows(seq);
        if !p.is_valid(&self.quiver) {
            return Err(ArqError::InvalidInput(format!(
                "{:?} is not a composable walk",
                text
            )));
        }
        Ok(p)
    }
}

/// An algebra automorphism stored as its matrix on the basis (column j is
/// the image of basis element j).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraAutomorphism {
    pub matrix: Matrix,
    pub order: Option<usize>,
}

impl AlgebraAutomorphism {
    pub fn identity(alg: &Algebra) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            matrix: Matrix::identity(&alg.field, alg.dim()),
            order: Some(1),
        }
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        let f = &self.matrix.field;
        let col = Matrix::column(f, a.clone());
        let img = self.matrix.mul(&col).expect("dimension");
        (0..img.rows).map(|i| img.at(i, 0).clone()).collect()
    }

    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        AlgebraAutomorphism {
            matrix: self.matrix.mul(&other.matrix).expect("dimension"),
            order: None,
        }
    }

    pub fn inverse(&self) -> Result<AlgebraAutomorphism> {
        Ok(AlgebraAutomorphism {
            matrix: self
                .matrix
                .inverse()
                .ok_or_else(|| ArqError::NotAutomorphism("matrix not invertible".into()))?,
            order: self.order,
        })
    }

    /// Build from images of the generators: a vertex permutation and one
    /// image element per arrow. Path images are the corresponding products.
    pub fn from_images(
        alg: &Algebra,
        vertex_perm: &[usize],
        arrow_images: &[Elem],
    ) -> Result<AlgebraAutomorphism> {
        let f = &alg.field;
        let d = alg.dim();
        let mut m = Matrix::zeros(f, d, d);
        for (j, path) in alg.basis.iter().enumerate() {
            let img: Elem = match path {
                Path::Trivial(v) => alg.idempotent_elem(vertex_perm[*v]),
                Path::Arrows(seq) => {
                    let mut acc = arrow_images[seq[0]].clone();
                    for &a in &seq[1..] {
                        acc = alg.mul_elems(&acc, &arrow_images[a]);
                    }
                    acc
                }
            };
            for (i, c) in img.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        let aut = AlgebraAutomorphism {
            matrix: m,
            order: None,
        };
        aut.verify(alg)?;
        Ok(aut)
    }

    /// Verify multiplicativity on all basis pairs, unitality and invertibility.
    pub fn verify(&self, alg: &Algebra) -> Result<()> {
        if self.matrix.inverse().is_none() {
            return Err(ArqError::NotAutomorphism("not invertible".into()));
        }
        let one = alg.one_elem();
        if self.apply(&one) != one {
            return Err(ArqError::NotAutomorphism("does not fix the identity".into()));
        }
        for i in 0..alg.dim() {
            let bi = alg.basis_elem(i);
            let gi = self.apply(&bi);
            for j in 0..alg.dim() {
                let bj = alg.basis_elem(j);
                let lhs = self.apply(&alg.mul_elems(&bi, &bj));
                let rhs = alg.mul_elems(&gi, &self.apply(&bj));
                if lhs != rhs {
                    return Err(ArqError::NotAutomorphism(format!(
                        "not multiplicative on basis pair ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }

    /// Multiplicative order, bounded search.
    pub fn compute_order(&self, alg: &Algebra, bound: usize) -> Option<usize> {
        let id = Matrix::identity(&alg.field, alg.dim());
        let mut acc = self.matrix.clone();
        for n in 1..=bound {
            if acc == id {
                return Some(n);
            }
            acc = acc.mul(&self.matrix).ok()?;
        }
        None
    }
}

/// A verified Frobenius structure: the linear form, its Gram matrix on the
/// basis, and the Nakayama automorphism solving f(ab) = f(b nu(a)).
#[derive(Debug, Clone)]
pub struct FrobeniusStructure {
    pub functional: Vec<Scalar>,
    pub gram: Matrix,
    pub nakayama: AlgebraAutomorphism,
}

impl Algebra {
    pub fn apply_functional(&self, functional: &[Scalar], a: &Elem) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (c, fc) in a.iter().zip(functional) {
            acc = f.add(&acc, &f.mul(c, fc));
        }
        acc
    }

    /// Computes the Nakayama automorphism for the given linear form, or
    /// reports a degenerate form. With G[i][j] = f(b_i b_j) the defining
    /// equation f(ab) = f(b nu(a)) becomes G nu = G^T.
    pub fn nakayama(&self, functional: Vec<Scalar>) -> Result<FrobeniusStructure> {
        let f = &self.field;
        let d = self.dim();
        if functional.len() != d {
            return Err(ArqError::DimensionMismatch(
                "functional length differs from algebra dimension".into(),
            ));
        }
        let mut gram = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = f.zero();
                for (k, c) in &self.mult_table[i][j] {
                    acc = f.add(&acc, &f.mul(c, &functional[*k]));
                }
                gram.set(i, j, acc);
            }
        }
        let Some(g_inv) = gram.inverse() else {
            return Err(ArqError::DegenerateForm(
                "the Gram matrix of (a,b) = f(ab) is singular".into(),
            ));
        };
        let nu_matrix = g_inv.mul(&gram.transpose())?;
        let nakayama = AlgebraAutomorphism {
            matrix: nu_matrix,
            order: None,
        };
        nakayama.verify(self)?;
        // defining identity on all basis pairs
        for i in 0..d {
            let bi = self.basis_elem(i);
            let nu_bi = nakayama.apply(&bi);
            for j in 0..d {
                let bj = self.basis_elem(j);
                let lhs = self.apply_functional(&functional, &self.mul_elems(&bi, &bj));
                let rhs = self.apply_functional(&functional, &self.mul_elems(&bj, &nu_bi));
                if lhs != rhs {
                    return Err(ArqError::Inconsistent(format!(
                        "Nakayama identity fails on basis pair ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(FrobeniusStructure {
            functional,
            gram,
            nakayama,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{kronecker, quantum_plane, truncated_poly};
    use crate::quiver::Relation;

    #[test]
    fn kronecker_basis_dimension_four() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        assert_eq!(alg.dim(), 4);
        let display: Vec<String> = alg
            .basis
            .iter()
            .map(|p| p.display(&alg.quiver))
            .collect();
        assert_eq!(display, vec!["e_v", "x", "y", "xy"]);
    }

    #[test]
    fn semisimple_point_algebra() {
        let f2 = Field::prime(2).unwrap();
        let quiver = Quiver::new(vec!["v".into()], vec![]).unwrap();
        let relations = RelationSet {
            relations: vec![],
            nilpotency: 1,
        };
        let alg = Algebra::build(quiver, relations, f2).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn quantum_plane_reduction_yx() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        assert_eq!(alg.dim(), 4);
        // yx reduces to q^{-1} xy = 3 xy
        let yx = alg.parse_path("yx").unwrap();
        let red = alg.reduce_path(&yx);
        let xy_idx = alg.basis_index[&alg.parse_path("xy").unwrap()];
        assert_eq!(red[xy_idx], f5.from_i64(3));
        assert!(red
            .iter()
            .enumerate()
            .all(|(i, c)| i == xy_idx || f5.is_zero(c)));
    }

    #[test]
    fn truncated_poly_dimension() {
        let q = Field::rational();
        for n in 2..=4 {
            assert_eq!(truncated_poly(&q, n).dim(), n);
        }
    }

    #[test]
    fn nilpotency_too_small_reported() {
        let f2 = Field::prime(2).unwrap();
        let quiver = Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        // x^3 = 0 declared, but bound claims J^2 = 0
        let relations = RelationSet {
            relations: vec![Relation {
                terms: vec![(f2.one(), Path::Arrows(vec![0, 0, 0]))],
            }],
            nilpotency: 2,
        };
        assert!(matches!(
            Algebra::build(quiver, relations, f2),
            Err(ArqError::NilpotencyTooSmall(_))
        ));
    }

    #[test]
    fn nakayama_of_quantum_plane() {
        // f = coefficient of xy: nu(x) = 2x, nu(y) = 3y over F5 with q = 2
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let mut functional = vec![f5.zero(); 4];
        let xy_idx = alg.basis_index[&alg.parse_path("xy").unwrap()];
        functional[xy_idx] = f5.one();
        let frob = alg.nakayama(functional).unwrap();
        let x_idx = alg.arrow_basis_index(0);
        let y_idx = alg.arrow_basis_index(1);
        let nu_x = frob.nakayama.apply(&alg.basis_elem(x_idx));
        let nu_y = frob.nakayama.apply(&alg.basis_elem(y_idx));
        let mut expect_x = alg.zero_elem();
        expect_x[x_idx] = f5.from_i64(2);
        let mut expect_y = alg.zero_elem();
        expect_y[y_idx] = f5.from_i64(3);
        assert_eq!(nu_x, expect_x);
        assert_eq!(nu_y, expect_y);
    }

    #[test]
    fn nakayama_symmetric_cases_identity() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let mut functional = vec![f2.zero(); 4];
        functional[alg.basis_index[&alg.parse_path("xy").unwrap()]] = f2.one();
        let frob = alg.nakayama(functional).unwrap();
        assert_eq!(
            frob.nakayama.matrix,
            Matrix::identity(&f2, 4),
            "commutative algebras are symmetric"
        );

        let q = Field::rational();
        let alg3 = truncated_poly(&q, 3);
        let mut functional = vec![q.zero(); 3];
        functional[2] = q.one(); // coefficient of x^2
        let frob3 = alg3.nakayama(functional).unwrap();
        assert_eq!(frob3.nakayama.matrix, Matrix::identity(&q, 3));
    }

    #[test]
    fn degenerate_functional_rejected() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        // coefficient of e is degenerate for this algebra's socle structure
        let mut functional = vec![f2.zero(); 4];
        functional[0] = f2.one();
        assert!(matches!(
            alg.nakayama(functional),
            Err(ArqError::DegenerateForm(_))
        ));
    }

    #[test]
    fn opposite_algebra_same_dimension() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let op = alg.opposite().unwrap();
        assert_eq!(op.dim(), 4);
        // in the opposite algebra xy reduces to q yx (roles swap)
        let xy = op.parse_path("xy").unwrap();
        let red = op.reduce_path(&xy);
        assert!(!op.elem_is_zero(&red));
    }
}
