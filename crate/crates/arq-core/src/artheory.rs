//! The Auslander-Reiten layer: the translate tau = syzygy-squared after the
//! Nakayama twist, almost-split sequences built from the socle of
//! Ext^1(M, tau M) under the End(M)-action, knitting of stable component
//! windows, predecessor counts and tree-class consistency reports.

use crate::algebra::{Algebra, AlgebraAutomorphism, FrobeniusStructure};
use crate::decompose::{decompose, indec_iso};
use crate::error::{ArqError, Result};
use crate::field::Scalar;
use crate::grothform::IsoRegistry;
use crate::matrix::Matrix;
use crate::rep::{
    hom_space, is_projective, lift_endo_to_cover, maps_from_cover, projective, projective_cover,
    syzygy, ModuleMap, Representation,
    ShortExactSequence,
};
use crate::tquiver::TreeCatalogEntry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const DEFAULT_DEPTH: usize = 4;
pub const MAX_DEPTH: usize = 8;
pub const MAX_NODE_DIM: usize = 512;

/// Frobenius bookkeeping for one algebra and its opposite, shared by all
/// translate computations.
pub struct ArContext {
    pub algebra: Algebra,
    pub frob: FrobeniusStructure,
    pub op_algebra: Algebra,
    pub op_frob: FrobeniusStructure,
    pub seed: u64,
}

impl ArContext {
    pub fn new(algebra: &Algebra, functional: Vec<Scalar>, seed: u64) -> Result<ArContext> {
        let frob = algebra.nakayama(functional.clone())?;
        let op_algebra = algebra.opposite()?;
        // transported functional: evaluate on the reversed word, reduced
        let mut op_functional = Vec::with_capacity(op_algebra.dim());
        for p in &op_algebra.basis {
            let rev = p.reversed();
            let red = algebra.reduce_path(&rev);
            op_functional.push(algebra.apply_functional(&functional, &red));
        }
        let op_frob = op_algebra.nakayama(op_functional)?;
        Ok(ArContext {
            algebra: algebra.clone(),
            frob,
            op_algebra,
            op_frob,
            seed,
        })
    }

    /// tau M = Omega^2 of the Nakayama twist of M. Undefined on projectives.
    pub fn tau(&self, m: &Representation) -> Result<Representation> {
        if is_projective(m)? {
            return Err(ArqError::TauUndefined);
        }
        let twisted = m.twist(&self.frob.nakayama)?;
        syzygy(&syzygy(&twisted)?)
    }

    /// tau^{-1} via the opposite algebra: dualize, translate, dualize back.
    pub fn tau_inverse(&self, m: &Representation) -> Result<Representation> {
        if is_projective(m)? {
            return Err(ArqError::TauUndefined);
        }
        let dm = m.dual(&self.op_algebra)?;
        let op_ctx = self.opposite_context();
        let t = op_ctx.tau(&dm)?;
        t.dual(&self.algebra)
    }

    fn opposite_context(&self) -> ArContext {
        ArContext {
            algebra: self.op_algebra.clone(),
            frob: self.op_frob.clone(),
            op_algebra: self.algebra.clone(),
            op_frob: self.frob.clone(),
            seed: self.seed,
        }
    }

    /// The shift M -> Omega(M_g).
    pub fn phi_twist(&self, m: &Representation, g: &AlgebraAutomorphism) -> Result<Representation> {
        if is_projective(m)? {
            return Err(ArqError::Projective);
        }
        syzygy(&m.twist(g)?)
    }

    /// The almost-split sequence ending at an indecomposable non-projective
    /// module, materialized by pushing the projective presentation out along
    /// a socle element of Ext^1(M, tau M).
    pub fn almost_split_sequence(&self, m: &Representation) -> Result<AlmostSplitSequence> {
        let dec = decompose(m, self.seed)?;
        if dec.summands.len() != 1 || dec.summands[0].1 != 1 {
            return Err(ArqError::NotIndecomposable);
        }
        self.almost_split_assume_indec(m)
    }

    /// The almost-split sequence without the middle-term decomposition.
    /// Non-splitness holds by construction: the chosen class is a nonzero
    /// element of Ext^1(M, tau M).
    fn almost_split_raw(&self, m: &Representation) -> Result<ShortExactSequence> {
        if is_projective(m)? {
            return Err(ArqError::Projective);
        }
        let f = self.algebra.field.clone();
        let tm = self.tau(m)?;
        // presentation 0 -> K -> P0 -> M -> 0
        let (p0, pi, p0_verts) = projective_cover(m)?;
        let (k_rep, iota) = p0.sub_rep(&pi.kernel_subspaces())?;
        // Ext^1(M, tm) = Hom(K, tm) / restrictions of Hom(P0, tm)
        let hom_k = hom_space(&k_rep, &tm)?;
        if hom_k.is_empty() {
            return Err(ArqError::Inconsistent(
                "Ext^1(M, tau M) vanishes for a non-projective module".into(),
            ));
        }
        let hom_p0 = maps_from_cover(&p0, &p0_verts, &tm)?;
        let restricted: Vec<ModuleMap> = hom_p0
            .iter()
            .map(|psi| psi.compose(&iota))
            .collect::<Result<_>>()?;
        let vec_of = |mm: &ModuleMap| -> Matrix {
            let refs: Vec<&Matrix> = mm.blocks.iter().collect();
            Matrix::block_diag(&f, &refs).vectorize()
        };
        let mut w_stack: Option<Matrix> = None;
        for r in &restricted {
            let v = vec_of(r);
            w_stack = Some(match w_stack {
                None => v,
                Some(s) => s.hstack(&v),
            });
        }
        // greedy complement: Ext class representatives among hom_k
        let ambient = vec_of(&hom_k[0]).rows;
        let mut tracker = crate::matrix::SpanTracker::new(&f, ambient);
        for r in &restricted {
            tracker.insert(&vec_of(r));
        }
        let mut ext_reps: Vec<ModuleMap> = Vec::new();
        for h in &hom_k {
            if tracker.insert(&vec_of(h)) {
                ext_reps.push(h.clone());
            }
        }
        if ext_reps.is_empty() {
            return Err(ArqError::Inconsistent(
                "Ext^1(M, tau M) vanishes for a non-projective module".into(),
            ));
        }
        // coordinates of a class: solve [W | ext_reps] and read the tail
        let w_cols = w_stack.as_ref().map_or(0, |s| s.cols);
        let full_stack = {
            let mut s = w_stack.clone();
            for e in &ext_reps {
                let v = vec_of(e);
                s = Some(match s {
                    None => v,
                    Some(st) => st.hstack(&v),
                });
            }
            s.unwrap()
        };
        // batch coordinate extraction: one elimination for many classes
        let ext_coords_batch = |maps: &[ModuleMap]| -> Result<Vec<Vec<Scalar>>> {
            if maps.is_empty() {
                return Ok(vec![]);
            }
            let mut rhs = vec_of(&maps[0]);
            for mm in &maps[1..] {
                rhs = rhs.hstack(&vec_of(mm));
            }
            let (x, _) = full_stack.solve(&rhs)?;
            let x = x.ok_or_else(|| {
                ArqError::Inconsistent("hom class escapes Ext coordinates".into())
            })?;
            Ok((0..maps.len())
                .map(|col| {
                    (0..ext_reps.len())
                        .map(|j| x.at(w_cols + j, col).clone())
                        .collect()
                })
                .collect())
        };
        // End(M) basis and its scalar parts; the radical acts on Ext classes
        // by precomposition with lifts through the presentation
        let endos = hom_space(m, m)?;
        let lift_through_cover =
            |e: &ModuleMap| -> Result<ModuleMap> { lift_endo_to_cover(&p0, &p0_verts, &pi, e) };
        let restrict_to_kernel = |e_hat: &ModuleMap| -> Result<ModuleMap> {
            let comp = e_hat.compose(&iota)?;
            let blocks: Result<Vec<Matrix>> = iota
                .blocks
                .iter()
                .zip(&comp.blocks)
                .map(|(basis, c)| {
                    let (x, _) = basis.solve(c)?;
                    x.ok_or_else(|| {
                        ArqError::Inconsistent("lift does not preserve the syzygy".into())
                    })
                })
                .collect();
            Ok(ModuleMap {
                source: k_rep.clone(),
                target: k_rep.clone(),
                blocks: blocks?,
            })
        };
        // radical generators e - lambda(e)
        let mut rad_restrictions: Vec<ModuleMap> = Vec::new();
        for e in &endos {
            let refs: Vec<&Matrix> = e.blocks.iter().collect();
            let total = Matrix::block_diag(&f, &refs);
            let mp = total.min_poly()?;
            let sf = mp.squarefree_part();
            if sf.degree() != 1 {
                return Err(ArqError::Uncertified(
                    "endomorphism ring has a non-scalar semisimple quotient; extend the field"
                        .into(),
                ));
            }
            let lambda = f.neg(&sf.coeffs[0]);
            let shifted = e.add(&ModuleMap::identity(m).scale(&f.neg(&lambda)))?;
            if shifted.is_zero() {
                continue;
            }
            let e_hat = lift_through_cover(&shifted)?;
            rad_restrictions.push(restrict_to_kernel(&e_hat)?);
        }
        // socle: classes killed by every radical action
        let socle_coeffs: Vec<Scalar> = if rad_restrictions.is_empty() {
            let mut c = vec![f.zero(); ext_reps.len()];
            c[0] = f.one();
            c
        } else {
            let mut rows: Vec<Scalar> = Vec::new();
            let mut nrows = 0usize;
            for r in &rad_restrictions {
                let composites: Vec<ModuleMap> = ext_reps
                    .iter()
                    .map(|rep| rep.compose(r))
                    .collect::<Result<_>>()?;
                let cols = ext_coords_batch(&composites)?;
                // append ext_reps.len() rows for this action matrix
                for i in 0..ext_reps.len() {
                    for col in cols.iter() {
                        rows.push(col[i].clone());
                    }
                    nrows += 1;
                }
            }
            let mat = Matrix::new(&f, nrows, ext_reps.len(), rows);
            let kernel = mat.kernel_basis();
            if kernel.cols == 0 {
                return Err(ArqError::Uncertified(
                    "Ext socle search failed; field too small".into(),
                ));
            }
            (0..ext_reps.len()).map(|i| kernel.at(i, 0).clone()).collect()
        };
        let mut socle_map = ModuleMap::zero(&k_rep, &tm);
        for (c, rep) in socle_coeffs.iter().zip(&ext_reps) {
            socle_map = socle_map.add(&rep.scale(c))?;
        }
        // pushout E = (tm + P0) / {(phi k, -iota k)}
        let (sum, incls, _projs) = Representation::direct_sum(&[&tm, &p0])?;
        let graph_map = incls[0]
            .compose(&socle_map)?
            .add(&incls[1].compose(&iota)?.scale(&f.from_i64(-1)))?;
        let graph_sub = graph_map.image_subspaces();
        let (e_rep, quot) = sum.quotient_rep(&graph_sub)?;
        let inj = quot.compose(&incls[0])?;
        // induced surjection E -> M from (0, pi)
        let zero_pi = ModuleMap {
            source: sum.clone(),
            target: m.clone(),
            blocks: {
                let z = ModuleMap::zero(&tm, m);
                z.blocks
                    .iter()
                    .zip(&pi.blocks)
                    .map(|(zb, pb)| zb.hstack(pb))
                    .collect()
            },
        };
        // solve surj o quot = zero_pi vertexwise (quot is surjective)
        let surj_blocks: Result<Vec<Matrix>> = quot
            .blocks
            .iter()
            .zip(&zero_pi.blocks)
            .map(|(q, t)| {
                let (x, _) = q.transpose().solve(&t.transpose())?;
                Ok(x.ok_or_else(|| {
                    ArqError::Inconsistent("surjection does not descend to the pushout".into())
                })?
                .transpose())
            })
            .collect();
        let surj = ModuleMap {
            source: e_rep.clone(),
            target: m.clone(),
            blocks: surj_blocks?,
        };
        let seq = ShortExactSequence {
            left: tm.clone(),
            middle: e_rep,
            right: m.clone(),
            inj,
            surj,
        };
        seq.verify_exact()?;
        Ok(seq)
    }

    fn almost_split_assume_indec(&self, m: &Representation) -> Result<AlmostSplitSequence> {
        let seq = self.almost_split_raw(m)?;
        // structural double check of non-splitness on desk-sized middles
        if seq.middle.total_dim() <= 24 && seq.is_split()? {
            return Err(ArqError::Inconsistent(
                "socle extension split; almost split sequence construction failed".into(),
            ));
        }
        let middle_dec = decompose(&seq.middle, self.seed)?;
        // no middle summand may be isomorphic to the right term
        for (part, _) in &middle_dec.summands {
            if part.dims == m.dims && indec_iso(part, m)? {
                return Err(ArqError::Inconsistent(
                    "middle term shares a summand with the right term".into(),
                ));
            }
        }
        Ok(AlmostSplitSequence {
            seq,
            middle_parts: middle_dec.summands,
        })
    }
}

/// An almost-split sequence with its middle term decomposed.
#[derive(Debug, Clone)]
pub struct AlmostSplitSequence {
    pub seq: ShortExactSequence,
    pub middle_parts: Vec<(Representation, usize)>,
}

/// One computed mesh: the almost-split sequence ending at `right`, recorded
/// through registry-backed node ids.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub right: usize,
    pub tau: usize,
    pub stable_middle: Vec<(usize, usize)>,
    /// Projective attachments as (vertex index, multiplicity).
    pub projective_middle: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct WindowNode {
    pub rep: Representation,
    pub level: usize,
}

/// A finite knitted fragment of a stable component.
pub struct ComponentWindow {
    pub algebra: Algebra,
    pub nodes: Vec<WindowNode>,
    /// Meshes keyed by their right-end node.
    pub meshes: BTreeMap<usize, Mesh>,
    pub depth: usize,
    /// Nodes skipped because their dimension exceeded the cap.
    pub capped: BTreeSet<usize>,
    /// Meshes that could not be decomposed with certainty.
    pub uncertified: BTreeMap<usize, String>,
    /// True when knitting closed the component before reaching the depth cap.
    pub complete: bool,
    pub start: usize,
}

impl ComponentWindow {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Distinct projective attachments over the whole window, deduplicated
    /// by mesh (each mesh lists its own attachments).
    pub fn projective_attachment_count(&self) -> usize {
        self.meshes
            .values()
            .map(|m| m.projective_middle.iter().map(|(_, mult)| mult).sum::<usize>())
            .sum()
    }

    /// Valuation (a, b) for the arrow from `u` into `x`: a = multiplicity of
    /// u in the mesh at x, b = multiplicity of x in the mesh at tau^{-1} u
    /// when that mesh lies in the window.
    pub fn valuation(&self, u: usize, x: usize) -> (Option<usize>, Option<usize>) {
        let a = self.meshes.get(&x).and_then(|m| {
            m.stable_middle
                .iter()
                .find(|(id, _)| *id == u)
                .map(|(_, mult)| *mult)
        });
        let b = self
            .meshes
            .values()
            .find(|m| m.tau == u)
            .and_then(|m| {
                m.stable_middle
                    .iter()
                    .find(|(id, _)| *id == x)
                    .map(|(_, mult)| *mult)
            });
        (a, b)
    }

    /// All stable arrows (u, x) known from the meshes.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for mesh in self.meshes.values() {
            for (u, _) in &mesh.stable_middle {
                out.insert((*u, mesh.right));
            }
        }
        out.into_iter().collect()
    }

    /// Union-find tau-orbits of the window nodes.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for mesh in self.meshes.values() {
            let a = find(&mut parent, mesh.right);
            let b = find(&mut parent, mesh.tau);
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }
}

/// Number of distinct predecessors of a node: distinct stable middle classes
/// plus distinct projective attachments of its backward mesh.
pub fn predecessor_count(window: &ComponentWindow, node: usize) -> Result<usize> {
    let mesh = window.meshes.get(&node).ok_or_else(|| {
        ArqError::InvalidInput("mesh not closed at this depth; predecessors unknown".into())
    })?;
    Ok(mesh.stable_middle.len() + mesh.projective_middle.len())
}

/// Knit a window of the stable component containing `start`, breadth first,
/// computing backward and forward meshes up to the depth.
pub fn knit(
    ctx: &ArContext,
    start: &Representation,
    depth: usize,
    max_dim: usize,
) -> Result<ComponentWindow> {
    if depth > MAX_DEPTH {
        return Err(ArqError::InvalidInput(format!(
            "depth {} exceeds the hard cap {}",
            depth, MAX_DEPTH
        )));
    }
    let start_dec = decompose(start, ctx.seed)?;
    if start_dec.summands.len() != 1 || start_dec.summands[0].1 != 1 {
        return Err(ArqError::NotIndecomposable);
    }
    if is_projective(start)? {
        return Err(ArqError::Projective);
    }
    let registry = IsoRegistry::new();
    let mut nodes: Vec<WindowNode> = Vec::new();
    let mut reg_to_node: BTreeMap<usize, usize> = BTreeMap::new();
    let mut meshes: BTreeMap<usize, Mesh> = BTreeMap::new();
    let mut capped: BTreeSet<usize> = BTreeSet::new();
    let mut uncertified: BTreeMap<usize, String> = BTreeMap::new();
    let mut truncated = false;

    let intern = |rep: &Representation,
                      level: usize,
                      nodes: &mut Vec<WindowNode>,
                      reg_to_node: &mut BTreeMap<usize, usize>,
                      queue: &mut VecDeque<usize>|
     -> Result<usize> {
        let rid = registry.insert_or_get(rep)?;
        if let Some(&nid) = reg_to_node.get(&rid) {
            if level < nodes[nid].level {
                nodes[nid].level = level;
            }
            return Ok(nid);
        }
        let nid = nodes.len();
        nodes.push(WindowNode {
            rep: rep.clone(),
            level,
        });
        reg_to_node.insert(rid, nid);
        queue.push_back(nid);
        Ok(nid)
    };

    let projectives: Vec<Representation> = (0..ctx.algebra.quiver.num_vertices())
        .map(|v| projective(&ctx.algebra, v))
        .collect::<Result<_>>()?;
    let classify_projective = |rep: &Representation| -> Result<Option<usize>> {
        for (v, p) in projectives.iter().enumerate() {
            if rep.dims == p.dims && indec_iso(rep, p)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    };

    let mut queue: VecDeque<usize> = VecDeque::new();
    intern(start, 0, &mut nodes, &mut reg_to_node, &mut queue)?;

    // decompose a mesh middle by first splitting off known classes (window
    // nodes and projectives), then fully decomposing the leftover
    enum MiddlePart {
        Stable(Representation, usize),
        Projective(usize, usize),
    }
    let analyze_middle = |middle: &Representation,
                          nodes: &[WindowNode],
                          seed: u64|
     -> Result<Vec<MiddlePart>> {
        let mut rest = middle.clone();
        let mut out: Vec<MiddlePart> = Vec::new();
        for (v, p) in projectives.iter().enumerate() {
            let mut count = 0usize;
            while let Some(comp) = crate::decompose::split_off(&rest, p)? {
                rest = comp;
                count += 1;
            }
            if count > 0 {
                out.push(MiddlePart::Projective(v, count));
            }
        }
        let mut known: Vec<Representation> = nodes.iter().map(|n| n.rep.clone()).collect();
        known.sort_by_key(|r| std::cmp::Reverse(r.total_dim()));
        for cand in &known {
            let mut count = 0usize;
            while let Some(comp) = crate::decompose::split_off(&rest, cand)? {
                rest = comp;
                count += 1;
            }
            if count > 0 {
                out.push(MiddlePart::Stable(cand.clone(), count));
            }
        }
        if rest.total_dim() > 0 {
            let dec = decompose(&rest, seed)?;
            for (part, mult) in dec.summands {
                match classify_projective(&part)? {
                    Some(v) => out.push(MiddlePart::Projective(v, mult)),
                    None => out.push(MiddlePart::Stable(part, mult)),
                }
            }
        }
        Ok(out)
    };

    while let Some(nid) = queue.pop_front() {
        let level = nodes[nid].level;
        if level >= depth {
            truncated = true;
            continue;
        }
        let rep = nodes[nid].rep.clone();
        if rep.total_dim() > max_dim {
            capped.insert(nid);
            continue;
        }
        // backward mesh (sequence ending at this node)
        if !meshes.contains_key(&nid) {
            match ctx.almost_split_raw(&rep) {
                Ok(seq) => {
                    let parts = analyze_middle(&seq.middle, &nodes, ctx.seed);
                    match parts {
                        Ok(parts) => {
                            let tau_id = intern(
                                &seq.left,
                                level + 1,
                                &mut nodes,
                                &mut reg_to_node,
                                &mut queue,
                            )?;
                            let mut stable: BTreeMap<usize, usize> = BTreeMap::new();
                            let mut projs: BTreeMap<usize, usize> = BTreeMap::new();
                            for part in parts {
                                match part {
                                    MiddlePart::Projective(v, mult) => {
                                        *projs.entry(v).or_default() += mult;
                                    }
                                    MiddlePart::Stable(part, mult) => {
                                        let pid = intern(
                                            &part,
                                            level + 1,
                                            &mut nodes,
                                            &mut reg_to_node,
                                            &mut queue,
                                        )?;
                                        *stable.entry(pid).or_default() += mult;
                                    }
                                }
                            }
                            meshes.insert(
                                nid,
                                Mesh {
                                    right: nid,
                                    tau: tau_id,
                                    stable_middle: stable.into_iter().collect(),
                                    projective_middle: projs.into_iter().collect(),
                                },
                            );
                        }
                        Err(ArqError::Uncertified(msg)) => {
                            uncertified.insert(nid, msg);
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(ArqError::Uncertified(msg)) => {
                    uncertified.insert(nid, msg);
                }
                Err(e) => return Err(e),
            }
        }
        // forward mesh: the sequence starting here, computed on the opposite
        // algebra and dualized back; recorded as the mesh at tau^{-1}(node)
        let has_forward = meshes.values().any(|m| m.tau == nid);
        if !has_forward {
            let op_ctx = ctx.opposite_context();
            let dm = rep.dual(&ctx.op_algebra)?;
            match op_ctx.almost_split_raw(&dm) {
                Ok(seq_op) => {
                    let right = seq_op.left.dual(&ctx.algebra)?; // tau^{-1}(node)
                    let middle = seq_op.middle.dual(&ctx.algebra)?;
                    let parts = analyze_middle(&middle, &nodes, ctx.seed.wrapping_add(1));
                    match parts {
                        Ok(parts) => {
                            let right_id = intern(
                                &right,
                                level + 1,
                                &mut nodes,
                                &mut reg_to_node,
                                &mut queue,
                            )?;
                            if let std::collections::btree_map::Entry::Vacant(slot) =
                                meshes.entry(right_id)
                            {
                                let mut stable: BTreeMap<usize, usize> = BTreeMap::new();
                                let mut projs: BTreeMap<usize, usize> = BTreeMap::new();
                                let mut stable_parts: Vec<(Representation, usize)> = Vec::new();
                                for part in parts {
                                    match part {
                                        MiddlePart::Projective(v, mult) => {
                                            *projs.entry(v).or_default() += mult;
                                        }
                                        MiddlePart::Stable(part, mult) => {
                                            stable_parts.push((part, mult));
                                        }
                                    }
                                }
                                for (part, mult) in stable_parts {
                                    let pid = intern(
                                        &part,
                                        level + 1,
                                        &mut nodes,
                                        &mut reg_to_node,
                                        &mut queue,
                                    )?;
                                    *stable.entry(pid).or_default() += mult;
                                }
                                slot.insert(Mesh {
                                    right: right_id,
                                    tau: nid,
                                    stable_middle: stable.into_iter().collect(),
                                    projective_middle: projs.into_iter().collect(),
                                });
                            }
                        }
                        Err(ArqError::Uncertified(msg)) => {
                            uncertified.insert(nid, msg);
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(ArqError::Uncertified(msg)) => {
                    uncertified.insert(nid, msg);
                }
                Err(e) => return Err(e),
            }
        }
    }

    // mesh dimension identity on every closed mesh
    for mesh in meshes.values() {
        let mut lhs = nodes[mesh.right].rep.dims.clone();
        for (d, t) in lhs.iter_mut().zip(&nodes[mesh.tau].rep.dims) {
            *d += t;
        }
        let mut rhs = vec![0usize; lhs.len()];
        for (nid, mult) in &mesh.stable_middle {
            for (r, d) in rhs.iter_mut().zip(&nodes[*nid].rep.dims) {
                *r += mult * d;
            }
        }
        for (v, mult) in &mesh.projective_middle {
            for (r, d) in rhs.iter_mut().zip(&projectives[*v].dims) {
                *r += mult * d;
            }
        }
        if lhs != rhs {
            return Err(ArqError::Inconsistent(format!(
                "mesh identity fails at node {}",
                mesh.right
            )));
        }
    }

    let complete = !truncated && capped.is_empty() && uncertified.is_empty();
    Ok(ComponentWindow {
        algebra: ctx.algebra.clone(),
        nodes,
        meshes,
        depth,
        capped,
        uncertified,
        complete,
        start: 0,
    })
}

/// Orbit-level view of a window: tau-orbits, their adjacency with known
/// valuations, interior flags and projective attachments.
pub struct OrbitGraph {
    pub orbit_of: Vec<usize>,
    pub orbit_count: usize,
    /// (a, b) on the ordered pair (u, v): a = multiplicity of u-orbit members
    /// in meshes at v-orbit members.
    pub valuations: BTreeMap<(usize, usize), usize>,
    pub interior: Vec<bool>,
    pub has_projective: Vec<bool>,
}

pub fn orbit_graph(window: &ComponentWindow) -> Result<OrbitGraph> {
    let orbits = window.orbits();
    let mut orbit_of = vec![0usize; window.nodes.len()];
    for (oi, members) in orbits.iter().enumerate() {
        for &m in members {
            orbit_of[m] = oi;
        }
    }
    let mut valuations: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for mesh in window.meshes.values() {
        let target_orbit = orbit_of[mesh.right];
        for (u, mult) in &mesh.stable_middle {
            let key = (orbit_of[*u], target_orbit);
            if let Some(&prev) = valuations.get(&key) {
                if prev != *mult {
                    return Err(ArqError::Inconsistent(format!(
                        "inconsistent valuation between orbits {:?}",
                        key
                    )));
                }
            }
            valuations.insert(key, *mult);
        }
    }
    let mut interior = vec![false; orbits.len()];
    let mut has_projective = vec![false; orbits.len()];
    for (oi, members) in orbits.iter().enumerate() {
        for &m in members {
            let backward = window.meshes.contains_key(&m);
            let forward = window.meshes.values().any(|mesh| mesh.tau == m);
            let clean = !window.capped.contains(&m) && !window.uncertified.contains_key(&m);
            if backward && forward && clean {
                interior[oi] = true;
            }
            if window
                .meshes
                .get(&m)
                .map_or(false, |mesh| !mesh.projective_middle.is_empty())
            {
                has_projective[oi] = true;
            }
        }
    }
    Ok(OrbitGraph {
        orbit_of,
        orbit_count: orbits.len(),
        valuations,
        interior,
        has_projective,
    })
}

/// Tree-class consistency report: which catalogued classes admit a
/// valuation-compatible embedding of the window's orbit graph (exact at
/// interior orbits, partial at the frontier). Never claims a unique answer
/// for an open window.
pub struct TreeClassReport {
    pub consistent: Vec<String>,
    pub orbit_count: usize,
    pub complete: bool,
    pub uncertified: bool,
    pub notes: Vec<String>,
}

pub fn tree_class_report(window: &ComponentWindow) -> Result<TreeClassReport> {
    let og = orbit_graph(window)?;
    let n = og.orbit_count;
    // undirected orbit adjacency with (a, b) pairs (possibly half known)
    let mut edges: BTreeMap<(usize, usize), (Option<usize>, Option<usize>)> = BTreeMap::new();
    for (&(u, v), &a) in &og.valuations {
        let key = (u.min(v), u.max(v));
        let entry = edges.entry(key).or_insert((None, None));
        if u <= v {
            entry.0 = Some(a);
        } else {
            entry.1 = Some(a);
        }
    }
    let neighbor_sets: Vec<Vec<usize>> = {
        let mut ns = vec![BTreeSet::new(); n];
        for &(u, v) in edges.keys() {
            ns[u].insert(v);
            ns[v].insert(u);
        }
        ns.into_iter().map(|s| s.into_iter().collect()).collect()
    };

    let mut candidates: Vec<TreeCatalogEntry> = Vec::new();
    for size in 1..=n.max(1) {
        candidates.push(TreeCatalogEntry::a_n(size));
    }
    for size in 4..=n.max(4) + 1 {
        candidates.push(TreeCatalogEntry::d_n(size));
    }
    for size in 6..=8 {
        candidates.push(TreeCatalogEntry::e_n(size));
    }
    candidates.push(TreeCatalogEntry::a_tilde_11());
    candidates.push(TreeCatalogEntry::a_tilde_12());
    for size in 4..=(n + 2).max(4) {
        candidates.push(TreeCatalogEntry::d_tilde(size));
    }
    for size in 6..=8 {
        candidates.push(TreeCatalogEntry::e_tilde(size));
    }
    for size in 2..=n.max(2) {
        candidates.push(TreeCatalogEntry::a_tilde_cycle(size));
    }
    // infinite classes cannot show up as fully closed finite components
    if !window.complete {
        candidates.push(TreeCatalogEntry::a_infinity(2 * n + 3));
        candidates.push(TreeCatalogEntry::d_infinity(2 * n + 5));
    }

    let mut consistent = Vec::new();
    for entry in &candidates {
        if entry.infinite && window.complete {
            continue;
        }
        if embeds(&og, &edges, &neighbor_sets, entry) {
            consistent.push(entry.name.clone());
        }
    }
    // the two-sided infinite line: every orbit locally a (1,1)-chain, which
    // finite windows cannot separate from its cyclic quotients
    let line_like = !window.complete
        && n >= 2
        && (0..n).all(|v| {
            neighbor_sets[v].len() <= 2
                && neighbor_sets[v].iter().all(|&w| {
                    let key = (v.min(w), v.max(w));
                    let (a, b) = edges[&key];
                    a.unwrap_or(1) == 1 && b.unwrap_or(1) == 1
                })
        });
    if line_like {
        consistent.push("A∞∞".into());
    }
    consistent.sort();
    consistent.dedup();
    let mut notes = vec!["window-verified at finite depth".into()];
    if !window.uncertified.is_empty() {
        notes.push(format!(
            "{} mesh(es) uncertified; report is not conclusive",
            window.uncertified.len()
        ));
    }
    Ok(TreeClassReport {
        consistent,
        orbit_count: n,
        complete: window.complete,
        uncertified: !window.uncertified.is_empty(),
        notes,
    })
}

/// Backtracking embedding of the window orbit graph into a catalog entry:
/// injective on orbits, valuation-compatible, degree-exact at interior
/// orbits.
fn embeds(
    og: &OrbitGraph,
    edges: &BTreeMap<(usize, usize), (Option<usize>, Option<usize>)>,
    neighbor_sets: &[Vec<usize>],
    entry: &TreeCatalogEntry,
) -> bool {
    let n = og.orbit_count;
    if n == 0 {
        return true;
    }
    if entry.vertices < n {
        return false;
    }
    let mut entry_adj: BTreeMap<(usize, usize), (u32, u32)> = BTreeMap::new();
    let mut entry_nbrs: Vec<Vec<usize>> = vec![Vec::new(); entry.vertices];
    for &(u, v, (a, b)) in &entry.edges {
        entry_adj.insert((u, v), (a, b));
        entry_adj.insert((v, u), (b, a));
        entry_nbrs[u].push(v);
        entry_nbrs[v].push(u);
    }
    let val_window = |u: usize, v: usize| -> (Option<usize>, Option<usize>) {
        let key = (u.min(v), u.max(v));
        let (a, b) = edges[&key];
        if u <= v {
            (a, b)
        } else {
            (b, a)
        }
    };
    // order orbits by BFS over the orbit graph for locality
    let mut order: Vec<usize> = Vec::new();
    {
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let mut queue = VecDeque::new();
            queue.push_back(root);
            seen[root] = true;
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &neighbor_sets[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    fn backtrack(
        pos: usize,
        order: &[usize],
        og: &OrbitGraph,
        neighbor_sets: &[Vec<usize>],
        entry_nbrs: &[Vec<usize>],
        entry_adj: &BTreeMap<(usize, usize), (u32, u32)>,
        val_window: &dyn Fn(usize, usize) -> (Option<usize>, Option<usize>),
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cand: for img in 0..used.len() {
            if used[img] {
                continue;
            }
            // degree condition
            let deg_w = neighbor_sets[v].len();
            let deg_e = entry_nbrs[img].len();
            if og.interior[v] {
                if deg_w != deg_e {
                    continue;
                }
            } else if deg_w > deg_e {
                continue;
            }
            // edges to already-mapped neighbors must exist and match
            for &w in &neighbor_sets[v] {
                if let Some(wi) = map[w] {
                    let Some(&(ea, eb)) = entry_adj.get(&(img, wi)) else {
                        continue 'cand;
                    };
                    // window valuation on (w -> v) corresponds to entry (wi -> img)
                    let (a_wv, b_wv) = val_window(w, v);
                    // entry_adj[(wi, img)] = (d_wi_img, d_img_wi)
                    let &(da, db) = entry_adj.get(&(wi, img)).unwrap();
                    let _ = (ea, eb);
                    if let Some(a) = a_wv {
                        if a as u32 != da {
                            continue 'cand;
                        }
                    }
                    if let Some(b) = b_wv {
                        if b as u32 != db {
                            continue 'cand;
                        }
                    }
                }
            }
            // non-neighbors must stay non-adjacent (injective graph map,
            // exact at interior vertices)
            for w in 0..map.len() {
                if w == v || map[w].is_none() || neighbor_sets[v].contains(&w) {
                    continue;
                }
                if entry_adj.contains_key(&(img, map[w].unwrap()))
                    && (og.interior[v] || og.interior[w])
                {
                    continue 'cand;
                }
            }
            map[v] = Some(img);
            used[img] = true;
            if backtrack(
                pos + 1,
                order,
                og,
                neighbor_sets,
                entry_nbrs,
                entry_adj,
                val_window,
                map,
                used,
            ) {
                return true;
            }
            map[v] = None;
            used[img] = false;
        }
        false
    }
    let mut map = vec![None; n];
    let mut used = vec![false; entry.vertices];
    backtrack(
        0,
        &order,
        og,
        neighbor_sets,
        &entry_nbrs,
        &entry_adj,
        &val_window,
        &mut map,
        &mut used,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::iso;
    use crate::field::Field;
    use crate::presets::{
        family_module, kronecker, quantum_plane, socle_functional, truncated_poly, uniserial,
    };

    fn ctx_for(alg: &Algebra) -> ArContext {
        ArContext::new(alg, socle_functional(alg), 42).unwrap()
    }

    #[test]
    fn tau_fixes_uniserials_of_truncated_poly() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let ctx = ctx_for(&alg);
        for i in 1..=2 {
            let m = uniserial(&alg, i);
            let t = ctx.tau(&m).unwrap();
            assert!(iso(&t, &m, 0).unwrap(), "tau(M_{}) = M_{}", i, i);
        }
        // tau of the projective is undefined
        assert!(matches!(
            ctx.tau(&uniserial(&alg, 3)),
            Err(ArqError::TauUndefined)
        ));
    }

    #[test]
    fn tau_of_simple_over_kronecker_has_dimension_five() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let ctx = ctx_for(&alg);
        let s = Representation::simple(&alg, 0);
        let t = ctx.tau(&s).unwrap();
        assert_eq!(t.total_dim(), 5);
    }

    #[test]
    fn tau_on_family_modules_matches_twist_bookkeeping() {
        // over F5 with q = 2: syzygy multiplies gamma by 2, the Nakayama
        // twist divides by q^2, so tau(M_gamma) = M_gamma exactly
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let ctx = ctx_for(&alg);
        for g in 1..5i64 {
            let m = family_module(&alg, &f5.from_i64(g));
            let t = ctx.tau(&m).unwrap();
            assert!(iso(&t, &m, 0).unwrap(), "gamma = {}", g);
        }
    }

    #[test]
    fn tau_inverse_is_inverse_on_tested_modules() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let ctx = ctx_for(&alg);
        let s = Representation::simple(&alg, 0);
        let t = ctx.tau(&s).unwrap();
        let back = ctx.tau_inverse(&t).unwrap();
        assert!(iso(&back, &s, 0).unwrap());
    }

    #[test]
    fn phi_twist_with_identity_is_syzygy() {
        let f5 = Field::prime(5).unwrap();
        let alg = quantum_plane(&f5, 2);
        let ctx = ctx_for(&alg);
        let m = family_module(&alg, &f5.one());
        let id = AlgebraAutomorphism::identity(&alg);
        let a = ctx.phi_twist(&m, &id).unwrap();
        let b = syzygy(&m).unwrap();
        assert!(iso(&a, &b, 0).unwrap());
    }

    #[test]
    fn almost_split_sequences_of_truncated_poly() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let ctx = ctx_for(&alg);
        // at M1: 0 -> M1 -> M2 -> M1 -> 0
        let ass1 = ctx.almost_split_sequence(&uniserial(&alg, 1)).unwrap();
        assert_eq!(ass1.seq.left.total_dim(), 1);
        assert_eq!(ass1.seq.middle.total_dim(), 2);
        assert_eq!(ass1.middle_parts.len(), 1);
        assert!(!ass1.seq.is_split().unwrap());
        assert!(ass1.seq.length_additive());
        // at M2: middle = M1 + M3 with M3 = P projective attached
        let ass2 = ctx.almost_split_sequence(&uniserial(&alg, 2)).unwrap();
        let mut dims: Vec<usize> = ass2
            .middle_parts
            .iter()
            .map(|(r, _)| r.total_dim())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 3]);
    }

    #[test]
    fn almost_split_sequence_at_p_mod_socle_over_kronecker() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let ctx = ctx_for(&alg);
        let p = projective(&alg, 0).unwrap();
        let (psoc, _) = p.quotient_rep(&p.socle_subspaces()).unwrap();
        assert_eq!(psoc.total_dim(), 3);
        let ass = ctx.almost_split_sequence(&psoc).unwrap();
        // middle = P + S^2, left = rad P (dim 3)
        assert_eq!(ass.seq.left.total_dim(), 3);
        assert_eq!(ass.seq.middle.total_dim(), 6);
        let mut parts: Vec<(usize, usize)> = ass
            .middle_parts
            .iter()
            .map(|(r, m)| (r.total_dim(), *m))
            .collect();
        parts.sort();
        assert_eq!(parts, vec![(1, 2), (4, 1)]);
    }

    #[test]
    fn rejects_decomposable_input() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let ctx = ctx_for(&alg);
        let m1 = uniserial(&alg, 1);
        let (sum, _, _) = Representation::direct_sum(&[&m1, &m1]).unwrap();
        assert!(matches!(
            ctx.almost_split_sequence(&sum),
            Err(ArqError::NotIndecomposable)
        ));
    }

    #[test]
    fn knit_truncated_poly_closes_to_a2() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let ctx = ctx_for(&alg);
        let window = knit(&ctx, &uniserial(&alg, 1), 3, MAX_NODE_DIM).unwrap();
        assert_eq!(window.node_count(), 2, "stable nodes M1, M2");
        assert!(window.complete, "finite component closes");
        // projective attachment at the M2 mesh
        assert_eq!(window.projective_attachment_count(), 1);
        // predecessor counts: M2 has 2 (M1 and the projective), M1 has 1
        let m2_node = window
            .nodes
            .iter()
            .position(|n| n.rep.total_dim() == 2)
            .unwrap();
        let m1_node = window
            .nodes
            .iter()
            .position(|n| n.rep.total_dim() == 1)
            .unwrap();
        assert_eq!(predecessor_count(&window, m2_node).unwrap(), 2);
        assert_eq!(predecessor_count(&window, m1_node).unwrap(), 1);
        let report = tree_class_report(&window).unwrap();
        assert!(report.complete);
        assert_eq!(report.consistent, vec!["A2"]);
    }

    #[test]
    fn knit_kronecker_window() {
        let f2 = Field::prime(2).unwrap();
        let alg = kronecker(&f2);
        let ctx = ctx_for(&alg);
        let s = Representation::simple(&alg, 0);
        let window = knit(&ctx, &s, 4, MAX_NODE_DIM).unwrap();
        assert!(window.uncertified.is_empty());
        assert_eq!(window.projective_attachment_count(), 1);
        // all stable valuations are (2,2)
        for (u, x) in window.arrows() {
            let (a, b) = window.valuation(u, x);
            assert_eq!(a, Some(2), "arrow {} -> {}", u, x);
            if let Some(b) = b {
                assert_eq!(b, 2);
            }
        }
        // module lengths alternate +-1 mod 4
        for node in &window.nodes {
            let l = node.rep.length() % 4;
            assert!(l == 1 || l == 3, "length {} mod 4", node.rep.length());
        }
        let report = tree_class_report(&window).unwrap();
        assert_eq!(report.consistent, vec!["A~1,2"]);
        // exactly two tau-orbits
        assert_eq!(window.orbits().len(), 2);
    }

    /// Transpose-dual route for the translate, used as an independent oracle.
    fn dtr_translate(ctx: &ArContext, m: &Representation) -> Representation {
        let alg = &ctx.algebra;
        // minimal presentation P1 -> P0 -> M
        let (p0, pi, p0_verts) = projective_cover(m).unwrap();
        let (k_rep, iota) = p0.sub_rep(&pi.kernel_subspaces()).unwrap();
        let (p1, pi1, p1_verts) = projective_cover(&k_rep).unwrap();
        let d = iota.compose(&pi1).unwrap();
        let _ = (&p0, &p1);
        // entry (i, j): image of the generator of P(v_j) inside the i-th
        // summand P(u_i) of P0, as an algebra element
        let op = &ctx.op_algebra;
        let f = &alg.field;
        // local bases of each projective summand, per vertex, as in `projective`
        let local_paths = |v: usize| -> Vec<Vec<usize>> {
            let mut local: Vec<Vec<usize>> = vec![Vec::new(); alg.quiver.num_vertices()];
            for (bi, p) in alg.basis.iter().enumerate() {
                if p.source(&alg.quiver) == v {
                    local[p.target(&alg.quiver)].push(bi);
                }
            }
            local
        };
        let p0_parts: Vec<Representation> = p0_verts
            .iter()
            .map(|&v| projective(alg, v).unwrap())
            .collect();
        let p1_parts: Vec<Representation> = p1_verts
            .iter()
            .map(|&v| projective(alg, v).unwrap())
            .collect();
        let mut entries: Vec<Vec<crate::algebra::Elem>> = Vec::new(); // [i][j]
        for (i, &ui) in p0_verts.iter().enumerate() {
            let mut row = Vec::new();
            let ui_local = local_paths(ui);
            for (j, &vj) in p1_verts.iter().enumerate() {
                // generator of the j-th summand: local position of e_{vj}
                // inside the vj-block of P1
                let mut col_offset = 0usize;
                for part in &p1_parts[..j] {
                    col_offset += part.dims[vj];
                }
                let vj_local = local_paths(vj);
                let gen_local = vj_local[vj]
                    .iter()
                    .position(|&bi| alg.basis[bi].is_trivial())
                    .unwrap();
                let col = col_offset + gen_local;
                // image under d at vertex vj, restricted to the i-th summand rows
                let mut row_offset = 0usize;
                for part in &p0_parts[..i] {
                    row_offset += part.dims[vj];
                }
                let mut elem = alg.zero_elem();
                for (li, &bi) in ui_local[vj].iter().enumerate() {
                    elem[bi] = d.blocks[vj].at(row_offset + li, col).clone();
                }
                row.push(elem);
            }
            entries.push(row);
        }
        // transposed map over the opposite algebra between the dual
        // projectives, acting by opposite right multiplication
        let op_p0_parts: Vec<Representation> = p0_verts
            .iter()
            .map(|&v| projective(op, v).unwrap())
            .collect();
        let op_p1_parts: Vec<Representation> = p1_verts
            .iter()
            .map(|&v| projective(op, v).unwrap())
            .collect();
        let refs0: Vec<&Representation> = op_p0_parts.iter().collect();
        let refs1: Vec<&Representation> = op_p1_parts.iter().collect();
        let (op_p0, _, op_p0_projs) = Representation::direct_sum(&refs0).unwrap();
        let (op_p1, op_p1_incls, _) = Representation::direct_sum(&refs1).unwrap();
        let _ = (&op_p0, &op_p1);
        // component map op_P(u_i) -> op_P(v_j): q -> q *op rev(a_ij)
        let mut total = ModuleMap::zero(&op_p0, &op_p1);
        for (i, _) in p0_verts.iter().enumerate() {
            for (j, _) in p1_verts.iter().enumerate() {
                let a = &entries[i][j];
                // op element: reverse each basis path and reduce in op
                let mut a_op = op.zero_elem();
                for (bi, c) in a.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let rev = alg.basis[bi].reversed();
                    let red = op.reduce_path(&rev);
                    for (k, rc) in red.iter().enumerate() {
                        a_op[k] = f.add(&a_op[k], &f.mul(c, rc));
                    }
                }
                // map on op projectives: right multiplication by a_op
                let src = &op_p0_parts[i];
                let tgt = &op_p1_parts[j];
                let mut blocks = Vec::new();
                let src_local = {
                    let mut local: Vec<Vec<usize>> = vec![Vec::new(); op.quiver.num_vertices()];
                    for (bi, p) in op.basis.iter().enumerate() {
                        if p.source(&op.quiver) == p0_verts[i] {
                            local[p.target(&op.quiver)].push(bi);
                        }
                    }
                    local
                };
                let tgt_local = {
                    let mut local: Vec<Vec<usize>> = vec![Vec::new(); op.quiver.num_vertices()];
                    for (bi, p) in op.basis.iter().enumerate() {
                        if p.source(&op.quiver) == p1_verts[j] {
                            local[p.target(&op.quiver)].push(bi);
                        }
                    }
                    local
                };
                for w in 0..op.quiver.num_vertices() {
                    let mut mat = Matrix::zeros(f, tgt.dims[w], src.dims[w]);
                    for (col, &qbi) in src_local[w].iter().enumerate() {
                        // product q *op a_op
                        let q_elem = op.basis_elem(qbi);
                        let prod = op.mul_elems(&q_elem, &a_op);
                        for (bk, c) in prod.iter().enumerate() {
                            if f.is_zero(c) {
                                continue;
                            }
                            if let Some(rowpos) = tgt_local[w].iter().position(|&x| x == bk) {
                                mat.set(rowpos, col, c.clone());
                            }
                        }
                    }
                    blocks.push(mat);
                }
                let comp = ModuleMap {
                    source: src.clone(),
                    target: tgt.clone(),
                    blocks,
                };
                let lifted = op_p1_incls[j]
                    .compose(&comp)
                    .unwrap()
                    .compose(&op_p0_projs[i])
                    .unwrap();
                total = total.add(&lifted).unwrap();
            }
        }
        total.verify().unwrap();
        // Tr M = coker(total), then dualize back
        let image = total.image_subspaces();
        let (tr, _) = op_p1.quotient_rep(&image).unwrap();
        tr.dual(alg).unwrap()
    }

    #[test]
    fn tau_agrees_with_transpose_dual_route() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7A0);
        let fields_algs: Vec<Algebra> = vec![
            truncated_poly(&Field::rational(), 3),
            quantum_plane(&Field::prime(5).unwrap(), 2),
            kronecker(&Field::prime(2).unwrap()),
        ];
        let mut tested = 0;
        for alg in &fields_algs {
            let ctx = ctx_for(alg);
            let p = projective(alg, 0).unwrap();
            let (pp, _, _) = Representation::direct_sum(&[&p, &p]).unwrap();
            let mut count = 0;
            let mut guard = 0;
            while count < 17 && guard < 400 {
                guard += 1;
                // random submodule of P + P, then the quotient by it
                let gens: Vec<Matrix> = pp
                    .dims
                    .iter()
                    .map(|&d| {
                        let cols = rng.gen_range(0..=2usize.min(d));
                        let data: Vec<i64> =
                            (0..d * cols).map(|_| rng.gen_range(-2..3)).collect();
                        Matrix::from_i64(&alg.field, d, cols, &data)
                    })
                    .collect();
                let stable = pp.spanned_subspaces(&gens);
                let (m, _) = pp.quotient_rep(&stable).unwrap();
                if m.total_dim() == 0 || m.total_dim() > 8 {
                    continue;
                }
                if is_projective(&m).unwrap() {
                    continue;
                }
                let via_nakayama = ctx.tau(&m).unwrap();
                let via_transpose = dtr_translate(&ctx, &m);
                assert!(
                    iso(&via_nakayama, &via_transpose, 99).unwrap(),
                    "translate routes disagree on a module of dims {:?}",
                    m.dims
                );
                count += 1;
                tested += 1;
            }
        }
        assert!(tested >= 50, "tested {} random modules", tested);
    }
}
