//! Representations of bound quiver algebras and the functors on them:
//! Hom spaces, radical series, projective covers, syzygies, duals over the
//! opposite algebra, automorphism twists and isomorphism testing.

use crate::algebra::{Algebra, AlgebraAutomorphism, Elem};
use crate::error::{ArqError, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::quiver::Path;

/// A module given by one space per vertex and one matrix per arrow
/// (target-dim x source-dim, acting along the arrow).
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub algebra: Algebra,
    pub dims: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

/// A homomorphism of representations: one matrix per vertex, intertwining
/// every arrow matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub source: Representation,
    pub target: Representation,
    pub blocks: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: &Algebra, dims: Vec<usize>, matrices: Vec<Matrix>) -> Result<Representation> {
        let rep = Representation {
            algebra: algebra.clone(),
            dims,
            matrices,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Check matrix shapes, relation annihilation and radical nilpotency.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = &alg.field;
        if self.dims.len() != alg.quiver.num_vertices() {
            return Err(ArqError::DimensionMismatch(
                "dimension vector length differs from vertex count".into(),
            ));
        }
        if self.matrices.len() != alg.quiver.arrows.len() {
            return Err(ArqError::DimensionMismatch(
                "one matrix per arrow required".into(),
            ));
        }
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            let m = &self.matrices[i];
            if m.rows != self.dims[a.to] || m.cols != self.dims[a.from] {
                return Err(ArqError::DimensionMismatch(format!(
                    "arrow {} expects {}x{}, got {}x{}",
                    a.name, self.dims[a.to], self.dims[a.from], m.rows, m.cols
                )));
            }
            if m.field != *f {
                return Err(ArqError::FieldMismatch);
            }
        }
        for (ri, rel) in alg.relations.relations.iter().enumerate() {
            let mut acc: Option<Matrix> = None;
            for (c, path) in &rel.terms {
                let term = self.path_action(path).scale(c);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term)?,
                });
            }
            if let Some(a) = acc {
                if !a.is_zero() {
                    return Err(ArqError::RelationViolated(format!("#{}", ri)));
                }
            }
        }
        // radical nilpotency: J^N annihilates
        let mut layer = self.full_subspaces();
        for _ in 0..alg.relations.nilpotency {
            layer = self.radical_of_subspaces(&layer);
        }
        if layer.iter().any(|s| s.cols > 0) {
            return Err(ArqError::RelationViolated(format!(
                "radical is not nilpotent of order {}",
                alg.relations.nilpotency
            )));
        }
        Ok(())
    }

    pub fn zero(algebra: &Algebra) -> Representation {
        let f = &algebra.field;
        let dims = vec![0; algebra.quiver.num_vertices()];
        let matrices = algebra
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zeros(f, 0, 0))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims,
            matrices,
        }
    }

    pub fn simple(algebra: &Algebra, vertex: usize) -> Representation {
        let f = &algebra.field;
        let mut dims = vec![0; algebra.quiver.num_vertices()];
        dims[vertex] = 1;
        let matrices = algebra
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.to], dims[a.from]))
            .collect();
        Representation {
            algebra: algebra.clone(),
            dims,
            matrices,
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_module(&self) -> bool {
        self.total_dim() == 0
    }

    /// Offsets of the vertex blocks inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// The action of a path as a matrix between its endpoint spaces.
    pub fn path_action(&self, path: &Path) -> Matrix {
        let f = &self.algebra.field;
        match path {
            Path::Trivial(v) => Matrix::identity(f, self.dims[*v]),
            Path::Arrows(seq) => {
                // product order: the last arrow acts first
                let mut acc = self.matrices[seq[0]].clone();
                for &a in &seq[1..] {
                    acc = acc.mul(&self.matrices[a]).expect("path is composable");
                }
                acc
            }
        }
    }

    /// Total-space action of an algebra element (block matrix by vertex).
    pub fn act_total(&self, elem: &Elem) -> Matrix {
        let f = &self.algebra.field;
        let n = self.total_dim();
        let off = self.offsets();
        let mut out = Matrix::zeros(f, n, n);
        for (bi, c) in elem.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let path = &self.algebra.basis[bi];
            let block = self.path_action(path).scale(c);
            let (src, tgt) = (
                path.source(&self.algebra.quiver),
                path.target(&self.algebra.quiver),
            );
            for r in 0..block.rows {
                for cc in 0..block.cols {
                    let v = f.add(out.at(off[tgt] + r, off[src] + cc), block.at(r, cc));
                    out.set(off[tgt] + r, off[src] + cc, v);
                }
            }
        }
        out
    }

    fn full_subspaces(&self) -> Vec<Matrix> {
        let f = &self.algebra.field;
        self.dims.iter().map(|&d| Matrix::identity(f, d)).collect()
    }

    /// Images of the given per-vertex subspaces under all arrows, i.e. the
    /// radical J * U of the subrepresentation they span.
    fn radical_of_subspaces(&self, subs: &[Matrix]) -> Vec<Matrix> {
        let f = &self.algebra.field;
        let mut collected: Vec<Vec<Matrix>> = self.dims.iter().map(|_| Vec::new()).collect();
        for (i, a) in self.algebra.quiver.arrows.iter().enumerate() {
            let img = self.matrices[i].mul(&subs[a.from]).expect("shape");
            collected[a.to].push(img);
        }
        collected
            .into_iter()
            .enumerate()
            .map(|(v, mats)| {
                let mut acc = Matrix::zeros(f, self.dims[v], 0);
                for m in mats {
                    acc = acc.hstack(&m);
                }
                acc.column_space_basis()
            })
            .collect()
    }

    /// Per-vertex canonical basis of the radical subrepresentation.
    pub fn radical_subspaces(&self) -> Vec<Matrix> {
        self.radical_of_subspaces(&self.full_subspaces())
    }

    /// Per-vertex canonical basis of the socle (joint kernel of all arrows).
    pub fn socle_subspaces(&self) -> Vec<Matrix> {
        let f = &self.algebra.field;
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(f, 0, self.dims[v]);
                for (i, a) in self.algebra.quiver.arrows.iter().enumerate() {
                    if a.from == v {
                        stacked = stacked.vstack(&self.matrices[i]);
                    }
                }
                stacked.kernel_basis().column_space_basis()
            })
            .collect()
    }

    /// Materialize a subrepresentation from arrow-stable per-vertex bases.
    /// Returns the subrepresentation and its inclusion.
    pub fn sub_rep(&self, subs: &[Matrix]) -> Result<(Representation, ModuleMap)> {
        let alg = &self.algebra;
        let dims: Vec<usize> = subs.iter().map(|s| s.cols).collect();
        let mut matrices = Vec::with_capacity(alg.quiver.arrows.len());
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            let mapped = self.matrices[i].mul(&subs[a.from])?;
            let (x, _) = subs[a.to].solve(&mapped)?;
            let x = x.ok_or_else(|| {
                ArqError::InvalidInput(format!(
                    "subspaces are not stable under arrow {}",
                    a.name
                ))
            })?;
            matrices.push(x);
        }
        let sub = Representation {
            algebra: alg.clone(),
            dims,
            matrices,
        };
        let incl = ModuleMap {
            source: sub.clone(),
            target: self.clone(),
            blocks: subs.to_vec(),
        };
        debug_assert!(incl.verify().is_ok());
        Ok((sub, incl))
    }

    /// Quotient by an arrow-stable family of subspaces. Returns the quotient
    /// and the projection.
    pub fn quotient_rep(&self, subs: &[Matrix]) -> Result<(Representation, ModuleMap)> {
        let alg = &self.algebra;
        let f = &alg.field;
        let mut reps = Vec::new(); // complement representatives per vertex
        let mut projs = Vec::new();
        for (v, s) in subs.iter().enumerate() {
            let d = self.dims[v];
            let r = s.cols;
            let (_, pivots) = s.transpose().rref();
            let pivot_set: std::collections::BTreeSet<usize> = pivots.into_iter().collect();
            let free: Vec<usize> = (0..d).filter(|i| !pivot_set.contains(i)).collect();
            debug_assert_eq!(free.len(), d - r, "subspace basis not independent");
            let mut comp = Matrix::zeros(f, d, free.len());
            for (j, &i) in free.iter().enumerate() {
                comp.set(i, j, f.one());
            }
            let full = s.hstack(&comp);
            let inv = full
                .inverse()
                .ok_or_else(|| ArqError::InvalidInput("subspace basis not independent".into()))?;
            let proj = inv.select_rows(&(r..d).collect::<Vec<_>>());
            reps.push(comp);
            projs.push(proj);
        }
        let mut matrices = Vec::with_capacity(alg.quiver.arrows.len());
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            let m = projs[a.to]
                .mul(&self.matrices[i])?
                .mul(&reps[a.from])?;
            matrices.push(m);
        }
        let quo = Representation {
            algebra: alg.clone(),
            dims: reps.iter().map(|c| c.cols).collect(),
            matrices,
        };
        let proj = ModuleMap {
            source: self.clone(),
            target: quo.clone(),
            blocks: projs,
        };
        debug_assert!(proj.verify().is_ok());
        Ok((quo, proj))
    }

    /// Smallest arrow-stable family of subspaces containing the given
    /// per-vertex generating columns.
    pub fn spanned_subspaces(&self, generators: &[Matrix]) -> Vec<Matrix> {
        let mut current: Vec<Matrix> = generators.iter().map(|g| g.column_space_basis()).collect();
        loop {
            let grown = self.radical_of_subspaces(&current);
            let mut changed = false;
            let mut next = Vec::with_capacity(current.len());
            for (cur, extra) in current.iter().zip(&grown) {
                let joined = cur.hstack(extra).column_space_basis();
                if joined.cols != cur.cols {
                    changed = true;
                }
                next.push(joined);
            }
            current = next;
            if !changed {
                return current;
            }
        }
    }

    pub fn radical(&self) -> Result<(Representation, ModuleMap)> {
        self.sub_rep(&self.radical_subspaces())
    }

    pub fn socle(&self) -> Result<(Representation, ModuleMap)> {
        self.sub_rep(&self.socle_subspaces())
    }

    pub fn top(&self) -> Result<(Representation, ModuleMap)> {
        self.quotient_rep(&self.radical_subspaces())
    }

    /// Composition length. All simples of a bound quiver algebra are
    /// one-dimensional, so the length equals the total dimension; the
    /// radical filtration count is computed anyway and asserted equal.
    pub fn length(&self) -> usize {
        let mut layer = self.full_subspaces();
        let mut count = 0usize;
        loop {
            let next = self.radical_of_subspaces(&layer);
            let layer_dim: usize = layer.iter().map(|s| s.cols).sum();
            let next_dim: usize = next.iter().map(|s| s.cols).sum();
            count += layer_dim - next_dim;
            if next_dim == 0 {
                break;
            }
            if next_dim == layer_dim {
                debug_assert!(false, "radical filtration stalled");
                break;
            }
            layer = next;
        }
        debug_assert_eq!(count, self.total_dim());
        count
    }

    /// Direct sum with inclusion and projection witnesses.
    pub fn direct_sum(parts: &[&Representation]) -> Result<(Representation, Vec<ModuleMap>, Vec<ModuleMap>)> {
        assert!(!parts.is_empty());
        let alg = parts[0].algebra.clone();
        if parts.iter().any(|p| p.algebra != alg) {
            return Err(ArqError::AlgebraMismatch);
        }
        let f = &alg.field;
        let nv = alg.quiver.num_vertices();
        let dims: Vec<usize> = (0..nv)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let matrices: Vec<Matrix> = (0..alg.quiver.arrows.len())
            .map(|i| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.matrices[i]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let sum = Representation {
            algebra: alg.clone(),
            dims,
            matrices,
        };
        let mut incls = Vec::new();
        let mut projs = Vec::new();
        for (pi, p) in parts.iter().enumerate() {
            let mut iblocks = Vec::new();
            let mut pblocks = Vec::new();
            for v in 0..nv {
                let before: usize = parts[..pi].iter().map(|q| q.dims[v]).sum();
                let mut ib = Matrix::zeros(f, sum.dims[v], p.dims[v]);
                let mut pb = Matrix::zeros(f, p.dims[v], sum.dims[v]);
                for r in 0..p.dims[v] {
                    ib.set(before + r, r, f.one());
                    pb.set(r, before + r, f.one());
                }
                iblocks.push(ib);
                pblocks.push(pb);
            }
            incls.push(ModuleMap {
                source: (*p).clone(),
                target: sum.clone(),
                blocks: iblocks,
            });
            projs.push(ModuleMap {
                source: sum.clone(),
                target: (*p).clone(),
                blocks: pblocks,
            });
        }
        Ok((sum, incls, projs))
    }

    /// Twist by an algebra automorphism: same total space, action through g.
    /// Vertex spaces are re-cut along the images of the twisted idempotents.
    pub fn twist(&self, g: &AlgebraAutomorphism) -> Result<Representation> {
        let alg = &self.algebra;
        g.verify(alg)?;
        let nv = alg.quiver.num_vertices();
        // new vertex space at v = image of the action of g(e_v)
        let mut bases = Vec::with_capacity(nv);
        for v in 0..nv {
            let idem = g.apply(&alg.idempotent_elem(v));
            let proj = self.act_total(&idem);
            bases.push(proj.column_space_basis());
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let mut matrices = Vec::with_capacity(alg.quiver.arrows.len());
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            let image_of_arrow = g.apply(&alg.basis_elem(alg.arrow_basis_index(i)));
            let act = self.act_total(&image_of_arrow);
            let mapped = act.mul(&bases[a.from])?;
            let (x, _) = bases[a.to].solve(&mapped)?;
            let x = x.ok_or_else(|| {
                ArqError::NotAutomorphism(format!(
                    "twisted action of arrow {} does not respect the regrading",
                    a.name
                ))
            })?;
            matrices.push(x);
        }
        let out = Representation {
            algebra: alg.clone(),
            dims,
            matrices,
        };
        out.validate()?;
        Ok(out)
    }

    /// The dual module over the opposite algebra: transposed arrow matrices.
    pub fn dual(&self, opposite: &Algebra) -> Result<Representation> {
        let rep = Representation {
            algebra: opposite.clone(),
            dims: self.dims.clone(),
            matrices: self.matrices.iter().map(|m| m.transpose()).collect(),
        };
        rep.validate()?;
        Ok(rep)
    }
}

impl ModuleMap {
    pub fn zero(source: &Representation, target: &Representation) -> ModuleMap {
        let f = &source.algebra.field;
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(f, t, s))
            .collect();
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn identity(rep: &Representation) -> ModuleMap {
        let f = &rep.algebra.field;
        ModuleMap {
            source: rep.clone(),
            target: rep.clone(),
            blocks: rep.dims.iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    /// Check the intertwining equations.
    pub fn verify(&self) -> Result<()> {
        let alg = &self.source.algebra;
        for (i, a) in alg.quiver.arrows.iter().enumerate() {
            let lhs = self.target.matrices[i].mul(&self.blocks[a.from])?;
            let rhs = self.blocks[a.to].mul(&self.source.matrices[i])?;
            if lhs != rhs {
                return Err(ArqError::Verification(format!(
                    "map does not intertwine arrow {}",
                    a.name
                )));
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target.dims != self.source.dims {
            return Err(ArqError::DimensionMismatch("map composition".into()));
        }
        let blocks: Result<Vec<Matrix>> = self
            .blocks
            .iter()
            .zip(&inner.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            blocks: blocks?,
        })
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let blocks: Result<Vec<Matrix>> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: blocks?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.blocks.iter().all(|b| b.inverse().is_some())
    }

    pub fn inverse(&self) -> Result<ModuleMap> {
        let blocks: Option<Vec<Matrix>> = self.blocks.iter().map(|b| b.inverse()).collect();
        let blocks = blocks.ok_or_else(|| ArqError::Verification("map is not invertible".into()))?;
        Ok(ModuleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// Canonical per-vertex bases of the kernel (an arrow-stable family).
    pub fn kernel_subspaces(&self) -> Vec<Matrix> {
        self.blocks
            .iter()
            .map(|b| b.kernel_basis().column_space_basis())
            .collect()
    }

    /// Canonical per-vertex bases of the image (an arrow-stable family).
    pub fn image_subspaces(&self) -> Vec<Matrix> {
        self.blocks.iter().map(|b| b.column_space_basis()).collect()
    }
}

/// A short exact sequence 0 -> left -> middle -> right -> 0 with its maps.
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub inj: ModuleMap,
    pub surj: ModuleMap,
}

impl ShortExactSequence {
    /// Injectivity, surjectivity, zero composite, additive dimensions and
    /// image = kernel, all checked exactly.
    pub fn verify_exact(&self) -> Result<()> {
        self.inj.verify()?;
        self.surj.verify()?;
        if !self.inj.is_injective() {
            return Err(ArqError::NotExact("left map is not injective".into()));
        }
        if !self.surj.is_surjective() {
            return Err(ArqError::NotExact("right map is not surjective".into()));
        }
        if !self.surj.compose(&self.inj)?.is_zero() {
            return Err(ArqError::NotExact("composite is nonzero".into()));
        }
        if self.left.total_dim() + self.right.total_dim() != self.middle.total_dim() {
            return Err(ArqError::NotExact("dimensions do not add".into()));
        }
        // image of inj spans the kernel of surj (dimensions already force
        // equality once containment holds)
        let img = self.inj.image_subspaces();
        let ker = self.surj.kernel_subspaces();
        for (i, (im, k)) in img.iter().zip(&ker).enumerate() {
            if im.cols != k.cols {
                return Err(ArqError::NotExact(format!(
                    "image/kernel dimension differs at vertex {}",
                    i
                )));
            }
            for c in 0..im.cols {
                if !k.span_contains(&im.col(c)) {
                    return Err(ArqError::NotExact(format!(
                        "image is not contained in kernel at vertex {}",
                        i
                    )));
                }
            }
        }
        Ok(())
    }

    /// Does a section of the surjection exist?
    pub fn is_split(&self) -> Result<bool> {
        let f = &self.right.algebra.field;
        let sections = hom_space(&self.right, &self.middle)?;
        if sections.is_empty() {
            return Ok(self.right.total_dim() == 0);
        }
        // solve sum c_i (surj o h_i) = id over the hom basis
        let mut cols: Option<Matrix> = None;
        for h in &sections {
            let comp = self.surj.compose(h)?;
            let refs: Vec<&Matrix> = comp.blocks.iter().collect();
            let v = Matrix::block_diag(f, &refs).vectorize();
            cols = Some(match cols {
                None => v,
                Some(c) => c.hstack(&v),
            });
        }
        let id = ModuleMap::identity(&self.right);
        let refs: Vec<&Matrix> = id.blocks.iter().collect();
        let target = Matrix::block_diag(f, &refs).vectorize();
        Ok(cols.unwrap().span_contains(&target))
    }

    /// Length additivity across the sequence.
    pub fn length_additive(&self) -> bool {
        self.left.length() + self.right.length() == self.middle.length()
    }
}

/// Basis of the space Hom(M, N), solved from the intertwining equations.
/// Deterministic: unknowns ordered by vertex then row-major, kernel basis in
/// ascending free-column order.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMap>> {
    if m.algebra != n.algebra {
        return Err(ArqError::AlgebraMismatch);
    }
    let alg = m.algebra.clone();
    let f = &alg.field;
    let nv = alg.quiver.num_vertices();
    let mut var_offset = vec![0usize; nv];
    let mut total_vars = 0usize;
    for v in 0..nv {
        var_offset[v] = total_vars;
        total_vars += n.dims[v] * m.dims[v];
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, a) in alg.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.from, a.to);
        // N_a phi_s - phi_t M_a = 0, entry (r, c): r < n.dims[t], c < m.dims[s]
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); total_vars];
                for k in 0..n.dims[s] {
                    // coefficient of phi_s[k][c]
                    let idx = var_offset[s] + k * m.dims[s] + c;
                    row[idx] = f.add(&row[idx], n.matrices[i].at(r, k));
                }
                for k in 0..m.dims[t] {
                    let idx = var_offset[t] + r * m.dims[t] + k;
                    row[idx] = f.sub(&row[idx], m.matrices[i].at(k, c));
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let coeff = if rows.is_empty() {
        Matrix::zeros(f, 0, total_vars)
    } else {
        let flat: Vec<Scalar> = rows.concat();
        Matrix::new(f, rows.len(), total_vars, flat)
    };
    let kernel = coeff.kernel_basis();
    let mut out = Vec::with_capacity(kernel.cols);
    for j in 0..kernel.cols {
        let mut blocks = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut b = Matrix::zeros(f, n.dims[v], m.dims[v]);
            for r in 0..n.dims[v] {
                for c in 0..m.dims[v] {
                    b.set(r, c, kernel.at(var_offset[v] + r * m.dims[v] + c, j).clone());
                }
            }
            blocks.push(b);
        }
        let map = ModuleMap {
            source: m.clone(),
            target: n.clone(),
            blocks,
        };
        debug_assert!(map.verify().is_ok());
        out.push(map);
    }
    Ok(out)
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// The projective indecomposable at a vertex: basis the reduced paths
/// starting there, arrows acting by left multiplication.
pub fn projective(alg: &Algebra, vertex: usize) -> Result<Representation> {
    if vertex >= alg.quiver.num_vertices() {
        return Err(ArqError::UnknownVertex(format!("#{}", vertex)));
    }
    let f = &alg.field;
    let nv = alg.quiver.num_vertices();
    // basis paths with source = vertex, grouped by their target vertex
    let member: Vec<usize> = alg
        .basis
        .iter()
        .enumerate()
        .filter(|(_, p)| p.source(&alg.quiver) == vertex)
        .map(|(i, _)| i)
        .collect();
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); nv]; // basis ids per vertex
    for &bi in &member {
        local[alg.basis[bi].target(&alg.quiver)].push(bi);
    }
    let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
    let mut matrices = Vec::with_capacity(alg.quiver.arrows.len());
    for (ai, a) in alg.quiver.arrows.iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[a.to], dims[a.from]);
        for (col, &bi) in local[a.from].iter().enumerate() {
            let arrow_path = Path::Arrows(vec![ai]);
            let product = arrow_path
                .compose(&alg.basis[bi], &alg.quiver)
                .expect("arrow source matches path target");
            let red = alg.reduce_path(&product);
            for (bj, c) in red.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let row = local[a.to]
                    .iter()
                    .position(|&x| x == bj)
                    .expect("product stays in the projective");
                m.set(row, col, c.clone());
            }
        }
        matrices.push(m);
    }
    let rep = Representation {
        algebra: alg.clone(),
        dims,
        matrices,
    };
    debug_assert!(rep.validate().is_ok());
    Ok(rep)
}

/// Minimal projective cover: P = sum of P(v)^{top multiplicity} with the
/// lifted surjection and the list of generator vertices.
pub fn projective_cover(m: &Representation) -> Result<(Representation, ModuleMap, Vec<usize>)> {
    let alg = &m.algebra;
    let f = &alg.field;
    let nv = alg.quiver.num_vertices();
    let rad = m.radical_subspaces();
    // top representatives per vertex: standard coordinates missing from rad
    let mut gens: Vec<(usize, Matrix)> = Vec::new(); // (vertex, column in M_v)
    for v in 0..nv {
        let (_, pivots) = rad[v].transpose().rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.into_iter().collect();
        for i in 0..m.dims[v] {
            if !pivot_set.contains(&i) {
                let mut col = Matrix::zeros(f, m.dims[v], 1);
                col.set(i, 0, f.one());
                gens.push((v, col));
            }
        }
    }
    if gens.is_empty() {
        let zero = Representation::zero(alg);
        return Ok((zero.clone(), ModuleMap::zero(&zero, m), vec![]));
    }
    let projectives: Vec<Representation> = gens
        .iter()
        .map(|(v, _)| projective(alg, *v))
        .collect::<Result<_>>()?;
    let refs: Vec<&Representation> = projectives.iter().collect();
    let (cover, incls, _) = Representation::direct_sum(&refs)?;
    // surjection: basis path p of P(v) maps to act(p) * generator
    let mut blocks: Vec<Matrix> = m
        .dims
        .iter()
        .zip(&cover.dims)
        .map(|(&md, &cd)| Matrix::zeros(f, md, cd))
        .collect();
    let off = m.offsets();
    for (gi, (v, gen_col)) in gens.iter().enumerate() {
        // enumerate the basis paths of P(v) per target vertex, in the same
        // order used by `projective`
        let member: Vec<usize> = alg
            .basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.source(&alg.quiver) == *v)
            .map(|(i, _)| i)
            .collect();
        let mut local: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &bi in &member {
            local[alg.basis[bi].target(&alg.quiver)].push(bi);
        }
        // total-space generator vector
        let mut gen_total = Matrix::zeros(f, m.total_dim(), 1);
        for r in 0..m.dims[*v] {
            gen_total.set(off[*v] + r, 0, gen_col.at(r, 0).clone());
        }
        for w in 0..nv {
            for (li, &bi) in local[w].iter().enumerate() {
                let act = m.act_total(&alg.basis_elem(bi));
                let img = act.mul(&gen_total)?;
                // img is supported on vertex w
                let col_in_cover = {
                    // column index of this path inside cover's w-block
                    let mut idx = 0usize;
                    for (pj, p) in projectives.iter().enumerate() {
                        if pj == gi {
                            break;
                        }
                        idx += p.dims[w];
                    }
                    idx + li
                };
                for r in 0..m.dims[w] {
                    blocks[w].set(r, col_in_cover, img.at(off[w] + r, 0).clone());
                }
            }
        }
    }
    let surj = ModuleMap {
        source: cover.clone(),
        target: m.clone(),
        blocks,
    };
    surj.verify()?;
    if !surj.is_surjective() {
        return Err(ArqError::Verification(
            "projective cover map is not surjective".into(),
        ));
    }
    let _ = incls;
    let verts = gens.iter().map(|(v, _)| *v).collect();
    Ok((cover, surj, verts))
}

/// Column layout of a direct sum of projectives P(v_i): for each vertex w,
/// the (summand, algebra basis path) pairs occupying its columns, in order.
pub fn cover_layout(alg: &Algebra, verts: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let nv = alg.quiver.num_vertices();
    let mut layout: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, &v) in verts.iter().enumerate() {
        for (bi, p) in alg.basis.iter().enumerate() {
            if p.source(&alg.quiver) == v {
                layout[p.target(&alg.quiver)].push((i, bi));
            }
        }
    }
    layout
}

/// Direct basis of Hom(P, N) for a direct sum of projectives with known
/// generator vertices: a homomorphism is freely determined by the images of
/// the generators, so no elimination is needed.
pub fn maps_from_cover(
    p0: &Representation,
    verts: &[usize],
    n: &Representation,
) -> Result<Vec<ModuleMap>> {
    let alg = &p0.algebra;
    if alg != &n.algebra {
        return Err(ArqError::AlgebraMismatch);
    }
    let f = &alg.field;
    let nv = alg.quiver.num_vertices();
    let layout = cover_layout(alg, verts);
    // cache path actions on N per algebra basis path
    let mut action_cache: Vec<Option<Matrix>> = vec![None; alg.basis.len()];
    let mut out = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        for gen_coord in 0..n.dims[v] {
            let mut blocks: Vec<Matrix> = n
                .dims
                .iter()
                .zip(&p0.dims)
                .map(|(&nd, &pd)| Matrix::zeros(f, nd, pd))
                .collect();
            for w in 0..nv {
                for (col, &(summand, bi)) in layout[w].iter().enumerate() {
                    if summand != i {
                        continue;
                    }
                    let act = action_cache[bi]
                        .get_or_insert_with(|| n.path_action(&alg.basis[bi]))
                        .clone();
                    // image of the generator coordinate under the path
                    for r in 0..n.dims[w] {
                        blocks[w].set(r, col, act.at(r, gen_coord).clone());
                    }
                }
            }
            let map = ModuleMap {
                source: p0.clone(),
                target: n.clone(),
                blocks,
            };
            debug_assert!(map.verify().is_ok());
            out.push(map);
        }
    }
    Ok(out)
}

/// Lift an endomorphism e of M through a projective cover pi: P -> M to a
/// map P -> P with pi o lift = e o pi, constructed on the generators.
pub fn lift_endo_to_cover(
    p0: &Representation,
    verts: &[usize],
    pi: &ModuleMap,
    e: &ModuleMap,
) -> Result<ModuleMap> {
    let alg = &p0.algebra;
    let f = &alg.field;
    let nv = alg.quiver.num_vertices();
    let layout = cover_layout(alg, verts);
    // generator columns: position of the trivial path of each summand
    let mut gen_cols: Vec<(usize, usize)> = Vec::with_capacity(verts.len()); // (vertex, col)
    for (i, &v) in verts.iter().enumerate() {
        let col = layout[v]
            .iter()
            .position(|&(s, bi)| s == i && alg.basis[bi].is_trivial())
            .expect("cover summand contains its generator");
        gen_cols.push((v, col));
    }
    // preimages of e(pi(g_i)) under pi, per generator
    let mut gen_images: Vec<Matrix> = Vec::with_capacity(verts.len());
    for &(v, col) in &gen_cols {
        let mut target = Matrix::zeros(f, e.target.dims[v], 1);
        {
            let img = e.blocks[v].mul(&pi.blocks[v].col(col))?;
            for r in 0..img.rows {
                target.set(r, 0, img.at(r, 0).clone());
            }
        }
        let (x, _) = pi.blocks[v].solve(&target)?;
        let x = x.ok_or_else(|| {
            ArqError::Inconsistent("cover surjection misses an endomorphism image".into())
        })?;
        gen_images.push(x);
    }
    // lift columns: path action of P applied to the generator preimages
    let mut blocks: Vec<Matrix> = p0
        .dims
        .iter()
        .map(|&d| Matrix::zeros(f, d, d))
        .collect();
    let mut action_cache: Vec<Option<Matrix>> = vec![None; alg.basis.len()];
    for w in 0..nv {
        for (col, &(summand, bi)) in layout[w].iter().enumerate() {
            let act = action_cache[bi]
                .get_or_insert_with(|| p0.path_action(&alg.basis[bi]))
                .clone();
            let img = act.mul(&gen_images[summand])?;
            for r in 0..p0.dims[w] {
                blocks[w].set(r, col, img.at(r, 0).clone());
            }
        }
    }
    let lift = ModuleMap {
        source: p0.clone(),
        target: p0.clone(),
        blocks,
    };
    debug_assert!(lift.verify().is_ok());
    debug_assert!(pi.compose(&lift).is_ok());
    Ok(lift)
}

/// Syzygy: the kernel of a projective cover, materialized with its induced
/// arrow matrices.
pub fn syzygy(m: &Representation) -> Result<Representation> {
    let (cover, surj, _) = projective_cover(m)?;
    let kernel = surj.kernel_subspaces();
    let (omega, _) = cover.sub_rep(&kernel)?;
    Ok(omega)
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    if m.is_zero_module() {
        return Ok(true);
    }
    let om = syzygy(m)?;
    Ok(om.is_zero_module())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presets::{kronecker, quantum_plane, truncated_poly, uniserial};

    fn family_module(alg: &Algebra, gamma: i64) -> Representation {
        crate::presets::family_module(alg, &alg.field.from_i64(gamma))
    }

    #[test]
    fn projective_of_kronecker() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let p = projective(&alg, 0).unwrap();
        assert_eq!(p.total_dim(), 4);
        assert_eq!(p.length(), 4);
        let (rad, _) = p.radical().unwrap();
        assert_eq!(rad.total_dim(), 3);
        let (soc, _) = p.socle().unwrap();
        assert_eq!(soc.total_dim(), 1);
    }

    #[test]
    fn projective_of_truncated_poly_uniserial() {
        let q = Field::rational();
        let alg = truncated_poly(&q, 3);
        let p = projective(&alg, 0).unwrap();
        assert_eq!(p.total_dim(), 3);
        // uniserial: radical series dims 3, 2, 1
        let (rad, _) = p.radical().unwrap();
        assert_eq!(rad.total_dim(), 2);
        let (rad2, _) = rad.radical().unwrap();
        assert_eq!(rad2.total_dim(), 1);
    }

    #[test]
    fn semisimple_projective_is_simple() {
        let f2 = Field::prime(2).unwrap();
        let quiver = crate::quiver::Quiver::new(vec!["v".into()], vec![]).unwrap();
        let relations = crate::quiver::RelationSet {
            relations: vec![],
            nilpotency: 1,
        };
        let alg = Algebra::build(quiver, relations, f2).unwrap();
        let p = projective(&alg, 0).unwrap();
        assert_eq!(p.total_dim(), 1);
    }

    #[test]
    fn structure_ops_on_simple_and_family() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let s = Representation::simple(&alg, 0);
        assert_eq!(s.length(), 1);
        let (rad, _) = s.radical().unwrap();
        assert!(rad.is_zero_module());
        let (soc, _) = s.socle().unwrap();
        assert_eq!(soc.total_dim(), 1);

        let m = family_module(&alg, 1);
        assert_eq!(m.length(), 2);
        let (top, _) = m.top().unwrap();
        assert_eq!(top.total_dim(), 1);
        let (soc, _) = m.socle().unwrap();
        assert_eq!(soc.total_dim(), 1);
    }

    #[test]
    fn hom_dims_for_uniserials_match_min_formula() {
        let q = Field::rational();
        let alg = truncated_poly(&q, 3);
        for i in 1..=3 {
            for j in 1..=3 {
                let mi = uniserial(&alg, i);
                let mj = uniserial(&alg, j);
                assert_eq!(
                    hom_dim(&mi, &mj).unwrap(),
                    i.min(j),
                    "dim Hom(M_{}, M_{})",
                    i,
                    j
                );
            }
        }
    }

    #[test]
    fn hom_with_zero_module() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let s = Representation::simple(&alg, 0);
        let z = Representation::zero(&alg);
        assert_eq!(hom_dim(&s, &z).unwrap(), 0);
        assert_eq!(hom_dim(&s, &s).unwrap(), 1);
    }

    #[test]
    fn cover_of_projective_is_iso() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let p = projective(&alg, 0).unwrap();
        let (cover, surj, _) = projective_cover(&p).unwrap();
        assert_eq!(cover.total_dim(), 4);
        assert!(surj.is_iso());
        assert!(is_projective(&p).unwrap());
    }

    #[test]
    fn cover_of_family_module() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let m = family_module(&alg, 1);
        let (cover, surj, _) = projective_cover(&m).unwrap();
        assert_eq!(cover.total_dim(), 4);
        assert!(surj.is_surjective());
        let om = syzygy(&m).unwrap();
        assert_eq!(om.total_dim(), 2);
    }

    #[test]
    fn syzygy_of_simple_over_kronecker() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let s = Representation::simple(&alg, 0);
        let om = syzygy(&s).unwrap();
        assert_eq!(om.total_dim(), 3);
    }

    #[test]
    fn twist_by_identity_is_equal() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let m = family_module(&alg, 3);
        let id = AlgebraAutomorphism::identity(&alg);
        let t = m.twist(&id).unwrap();
        assert_eq!(t, m);
    }

    #[test]
    fn double_twist_is_composite_twist() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        // g: x -> 2x, y -> 3y is the Nakayama automorphism of A_2
        let mut functional = vec![f5.zero(); 4];
        functional[3] = f5.one();
        let frob = alg.nakayama(functional).unwrap();
        let g = &frob.nakayama;
        let m = family_module(&alg, 1);
        let tg = m.twist(g).unwrap().twist(g).unwrap();
        let gg = g.compose(g);
        let tgg = m.twist(&gg).unwrap();
        assert_eq!(tg, tgg);
    }

    #[test]
    fn dual_round_trip_dimensions() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let op = alg.opposite().unwrap();
        let m = family_module(&alg, 2);
        let d = m.dual(&op).unwrap();
        assert_eq!(d.total_dim(), 2);
        let dd = d.dual(&alg).unwrap();
        assert_eq!(dd, m);
    }
}
