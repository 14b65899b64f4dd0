//! Abstract translation quivers Z[T] for catalogued valued trees, the
//! explicit automorphisms of Z[D~n], their normal forms and orders, and
//! brute-force fixed-point-free scans over the Euclidean catalog.
//!
//! Z[D~n] is indexed as in the usual fork-chain-fork picture: vertices
//! (k, i) with 1 <= i <= n+1, fork tips {1,2} at the chain head 3, chain
//! 3..n-1, fork tips {n, n+1} at the tail n-1, and translation
//! tau(k, i) = (k-1, i).

use crate::error::{ArqError, Result};
use std::collections::{BTreeMap, BTreeSet};

/// A catalogued valued graph. Infinite classes carry a truncation size used
/// whenever a finite piece is needed.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeCatalogEntry {
    pub name: String,
    /// Edges (u, v, (d_uv, d_vu)) on vertices 0..vertices.
    pub vertices: usize,
    pub edges: Vec<(usize, usize, (u32, u32))>,
    pub is_tree: bool,
    pub infinite: bool,
    pub euclidean: bool,
}

impl TreeCatalogEntry {
    fn path_edges(n: usize) -> Vec<(usize, usize, (u32, u32))> {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1, (1, 1))).collect()
    }

    pub fn a_n(n: usize) -> TreeCatalogEntry {
        TreeCatalogEntry {
            name: format!("A{}", n),
            vertices: n,
            edges: Self::path_edges(n),
            is_tree: true,
            infinite: false,
            euclidean: false,
        }
    }

    pub fn d_n(n: usize) -> TreeCatalogEntry {
        assert!(n >= 4);
        // 0,1 fork tips on 2, chain 2..n-1
        let mut edges = vec![(0, 2, (1, 1)), (1, 2, (1, 1))];
        for i in 2..n - 1 {
            edges.push((i, i + 1, (1, 1)));
        }
        TreeCatalogEntry {
            name: format!("D{}", n),
            vertices: n,
            edges,
            is_tree: true,
            infinite: false,
            euclidean: false,
        }
    }

    pub fn e_n(n: usize) -> TreeCatalogEntry {
        assert!((6..=8).contains(&n));
        // chain 0..n-2 with a branch vertex attached at position 2
        let mut edges = Self::path_edges(n - 1);
        edges.push((2, n - 1, (1, 1)));
        TreeCatalogEntry {
            name: format!("E{}", n),
            vertices: n,
            edges,
            is_tree: true,
            infinite: false,
            euclidean: false,
        }
    }

    /// The valued edge with valuation (1,4).
    pub fn a_tilde_11() -> TreeCatalogEntry {
        TreeCatalogEntry {
            name: "A~1,1".into(),
            vertices: 2,
            edges: vec![(0, 1, (1, 4))],
            is_tree: true,
            infinite: false,
            euclidean: true,
        }
    }

    /// The valued edge with valuation (2,2), the valued graph of a double
    /// arrow.
    pub fn a_tilde_12() -> TreeCatalogEntry {
        TreeCatalogEntry {
            name: "A~1,2".into(),
            vertices: 2,
            edges: vec![(0, 1, (2, 2))],
            is_tree: true,
            infinite: false,
            euclidean: true,
        }
    }

    /// Cycle with n+1 vertices (n >= 2); a graph, not a tree.
    pub fn a_tilde_cycle(n: usize) -> TreeCatalogEntry {
        assert!(n >= 2);
        let v = n + 1;
        let mut edges = Self::path_edges(v);
        edges.push((v - 1, 0, (1, 1)));
        TreeCatalogEntry {
            name: format!("A~{}", n),
            vertices: v,
            edges,
            is_tree: false,
            infinite: false,
            euclidean: true,
        }
    }

    /// D~n on n+1 vertices, paper indexing shifted to 0-based: tips {0,1}
    /// joined to 2, chain 2..n-2, tips {n-1, n} joined to n-2.
    pub fn d_tilde(n: usize) -> TreeCatalogEntry {
        assert!(n >= 4);
        let mut edges = vec![(0, 2, (1, 1)), (1, 2, (1, 1))];
        for i in 2..n - 2 {
            edges.push((i, i + 1, (1, 1)));
        }
        edges.push((n - 2, n - 1, (1, 1)));
        edges.push((n - 2, n, (1, 1)));
        TreeCatalogEntry {
            name: format!("D~{}", n),
            vertices: n + 1,
            edges,
            is_tree: true,
            infinite: false,
            euclidean: true,
        }
    }

    pub fn e_tilde(n: usize) -> TreeCatalogEntry {
        assert!((6..=8).contains(&n));
        let (chain, branch_at, branch_len) = match n {
            6 => (5, 2, 2),  // three arms of length 2 around a center
            7 => (7, 3, 1),
            8 => (8, 2, 1),
            _ => unreachable!(),
        };
        let mut edges = Self::path_edges(chain);
        let mut v = chain;
        let mut prev = branch_at;
        for _ in 0..branch_len {
            edges.push((prev, v, (1, 1)));
            prev = v;
            v += 1;
        }
        TreeCatalogEntry {
            name: format!("E~{}", n),
            vertices: v,
            edges,
            is_tree: true,
            infinite: false,
            euclidean: true,
        }
    }

    /// Truncation of the one-sided infinite path.
    pub fn a_infinity(truncation: usize) -> TreeCatalogEntry {
        TreeCatalogEntry {
            name: "A∞".into(),
            vertices: truncation,
            edges: Self::path_edges(truncation),
            is_tree: true,
            infinite: true,
            euclidean: false,
        }
    }

    /// Truncation of the two-sided infinite path.
    pub fn a_infinity_infinity(truncation: usize) -> TreeCatalogEntry {
        TreeCatalogEntry {
            name: "A∞∞".into(),
            vertices: truncation,
            edges: Self::path_edges(truncation),
            is_tree: true,
            infinite: true,
            euclidean: false,
        }
    }

    /// Truncation of D-infinity: a fork whose chain continues indefinitely.
    pub fn d_infinity(truncation: usize) -> TreeCatalogEntry {
        let n = truncation.max(4);
        let mut edges = vec![(0, 2, (1, 1)), (1, 2, (1, 1))];
        for i in 2..n - 1 {
            edges.push((i, i + 1, (1, 1)));
        }
        TreeCatalogEntry {
            name: "D∞".into(),
            vertices: n,
            edges,
            is_tree: true,
            infinite: true,
            euclidean: false,
        }
    }

    /// The Euclidean entries scanned for fixed-point-free automorphisms.
    pub fn euclidean_catalog(max_d: usize) -> Vec<TreeCatalogEntry> {
        let mut out = vec![Self::a_tilde_11(), Self::a_tilde_12()];
        for n in 4..=max_d {
            out.push(Self::d_tilde(n));
        }
        for n in 6..=8 {
            out.push(Self::e_tilde(n));
        }
        out
    }

    pub fn by_name(name: &str, truncation: usize) -> Result<TreeCatalogEntry> {
        let parse_size = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| ArqError::InvalidInput(format!("bad tree size in {:?}", name)))
        };
        if let Some(rest) = name.strip_prefix("D~") {
            let n = parse_size(rest)?;
            if n < 4 {
                return Err(ArqError::InvalidInput("D~n needs n >= 4".into()));
            }
            return Ok(Self::d_tilde(n));
        }
        if name == "A~1,1" || name == "A~11" {
            return Ok(Self::a_tilde_11());
        }
        if name == "A~1,2" || name == "A~12" {
            return Ok(Self::a_tilde_12());
        }
        if let Some(rest) = name.strip_prefix("A~") {
            return Ok(Self::a_tilde_cycle(parse_size(rest)?));
        }
        if let Some(rest) = name.strip_prefix("E~") {
            return Ok(Self::e_tilde(parse_size(rest)?));
        }
        match name {
            "Ainf" | "A∞" => return Ok(Self::a_infinity(truncation)),
            "Ainfinf" | "A∞∞" => return Ok(Self::a_infinity_infinity(truncation)),
            "Dinf" | "D∞" => return Ok(Self::d_infinity(truncation)),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix('A') {
            return Ok(Self::a_n(parse_size(rest)?));
        }
        if let Some(rest) = name.strip_prefix('D') {
            return Ok(Self::d_n(parse_size(rest)?));
        }
        if let Some(rest) = name.strip_prefix('E') {
            return Ok(Self::e_n(parse_size(rest)?));
        }
        Err(ArqError::InvalidInput(format!("unknown tree {:?}", name)))
    }

    /// Valued adjacency as a map, for automorphism checks.
    fn valued_adjacency(&self) -> BTreeMap<(usize, usize), (u32, u32)> {
        let mut adj = BTreeMap::new();
        for &(u, v, (a, b)) in &self.edges {
            adj.insert((u, v), (a, b));
            adj.insert((v, u), (b, a));
        }
        adj
    }

    /// All valued-graph automorphisms, by exhaustive backtracking.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.vertices;
        let adj = self.valued_adjacency();
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v, _) in &self.edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        let mut out = Vec::new();
        let mut perm: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        fn backtrack(
            pos: usize,
            n: usize,
            adj: &BTreeMap<(usize, usize), (u32, u32)>,
            perm: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if pos == n {
                out.push(perm.iter().map(|p| p.unwrap()).collect());
                return;
            }
            'cand: for img in 0..n {
                if used[img] {
                    continue;
                }
                for prev in 0..pos {
                    let want = adj.get(&(pos, prev));
                    let have = adj.get(&(img, perm[prev].unwrap()));
                    if want != have {
                        continue 'cand;
                    }
                }
                perm[pos] = Some(img);
                used[img] = true;
                backtrack(pos + 1, n, adj, perm, used, out);
                perm[pos] = None;
                used[img] = false;
            }
        }
        backtrack(0, n, &adj, &mut perm, &mut used, &mut out);
        // full-degree check is implied; verify edge counts as a safety net
        out.retain(|p| {
            self.edges
                .iter()
                .all(|&(u, v, val)| adj.get(&(p[u], p[v])) == Some(&val))
        });
        out
    }

    /// Automorphisms without fixed vertices.
    pub fn fixed_point_free_automorphisms(&self) -> Vec<Vec<usize>> {
        self.automorphisms()
            .into_iter()
            .filter(|p| p.iter().enumerate().all(|(i, &img)| i != img))
            .collect()
    }
}

/// A vertex (k, i) of Z[D~n], 1 <= i <= n+1 (paper indexing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZtVertex {
    pub k: i64,
    pub i: usize,
}

/// Normal form tau^k alpha^a beta^b gamma^g (gamma applied first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TqAutomorphism {
    pub tau_exp: i64,
    pub alpha: bool,
    pub beta: bool,
    pub gamma: bool,
}

impl TqAutomorphism {
    pub fn identity() -> TqAutomorphism {
        TqAutomorphism {
            tau_exp: 0,
            alpha: false,
            beta: false,
            gamma: false,
        }
    }

    pub fn word(&self) -> String {
        let mut parts = Vec::new();
        if self.tau_exp != 0 {
            parts.push(format!("t^{}", self.tau_exp));
        }
        if self.alpha {
            parts.push("a".into());
        }
        if self.beta {
            parts.push("b".into());
        }
        if self.gamma {
            parts.push("g".into());
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

fn check_vertex(v: ZtVertex, n: usize) -> Result<()> {
    if v.i < 1 || v.i > n + 1 {
        return Err(ArqError::InvalidInput(format!(
            "vertex index {} outside 1..={}",
            v.i,
            n + 1
        )));
    }
    Ok(())
}

pub fn apply_tau(v: ZtVertex, exp: i64) -> ZtVertex {
    ZtVertex {
        k: v.k - exp,
        i: v.i,
    }
}

pub fn apply_alpha(v: ZtVertex) -> ZtVertex {
    match v.i {
        1 => ZtVertex { k: v.k, i: 2 },
        2 => ZtVertex { k: v.k, i: 1 },
        _ => v,
    }
}

pub fn apply_beta(v: ZtVertex, n: usize) -> ZtVertex {
    if v.i == n {
        ZtVertex { k: v.k, i: n + 1 }
    } else if v.i == n + 1 {
        ZtVertex { k: v.k, i: n }
    } else {
        v
    }
}

pub fn apply_gamma(v: ZtVertex, n: usize) -> ZtVertex {
    let ni = n as i64;
    match v.i {
        1 => ZtVertex { k: v.k, i: n },
        2 => ZtVertex { k: v.k, i: n + 1 },
        i if i == n => ZtVertex {
            k: v.k + ni - 4,
            i: 1,
        },
        i if i == n + 1 => ZtVertex {
            k: v.k + ni - 4,
            i: 2,
        },
        i => ZtVertex {
            k: v.k + i as i64 - 3,
            i: n + 2 - i,
        },
    }
}

/// Evaluate the normal form on a vertex (gamma first, then beta, alpha, tau).
pub fn apply(aut: &TqAutomorphism, v: ZtVertex, n: usize) -> Result<ZtVertex> {
    check_vertex(v, n)?;
    let mut w = v;
    if aut.gamma {
        w = apply_gamma(w, n);
    }
    if aut.beta {
        w = apply_beta(w, n);
    }
    if aut.alpha {
        w = apply_alpha(w);
    }
    Ok(apply_tau(w, aut.tau_exp))
}

/// Compose two normal forms and renormalize by matching the action on a
/// window with k in [-2n, 2n]. An unmatched composite would contradict the
/// normal-form description of the automorphism group and is reported.
pub fn compose_normalize(
    a: &TqAutomorphism,
    b: &TqAutomorphism,
    n: usize,
) -> Result<TqAutomorphism> {
    let probe: Vec<ZtVertex> = (1..=n + 1)
        .flat_map(|i| [ZtVertex { k: 0, i }, ZtVertex { k: 1, i }])
        .collect();
    let composite: Vec<ZtVertex> = probe
        .iter()
        .map(|&v| apply(a, apply(b, v, n)?, n))
        .collect::<Result<_>>()?;
    // the composite's tau exponent is bounded by the summands' plus the
    // largest shift a gamma can contribute
    let shift_bound = a.tau_exp.abs() + b.tau_exp.abs() + n as i64 + 4;
    for tau_exp in -shift_bound..=shift_bound {
        for flags in 0..8u8 {
            let cand = TqAutomorphism {
                tau_exp,
                alpha: flags & 1 != 0,
                beta: flags & 2 != 0,
                gamma: flags & 4 != 0,
            };
            let mut ok = true;
            for (p, expect) in probe.iter().zip(&composite) {
                if apply(&cand, *p, n)? != *expect {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(cand);
            }
        }
    }
    Err(ArqError::Inconsistent(
        "composite does not normalize to tau^k a^i b^j g^l".into(),
    ))
}

/// Order of a normal-form automorphism, bounded search; None when no power
/// up to the bound is the identity.
pub fn order(aut: &TqAutomorphism, n: usize, bound: usize) -> Result<Option<usize>> {
    // powers of a finite-order element keep a bounded tau exponent
    let escape = 4 * (aut.tau_exp.abs() + n as i64 + 4);
    let mut acc = *aut;
    for m in 1..=bound {
        if acc.is_identity() {
            return Ok(Some(m));
        }
        if acc.tau_exp.abs() > escape {
            return Ok(None);
        }
        acc = compose_normalize(&acc, aut, n)?;
    }
    Ok(None)
}

/// All normal forms with |tau exponent| <= k_bound that have finite order,
/// with their orders.
pub fn finite_order_classification(
    n: usize,
    k_bound: i64,
) -> Result<Vec<(TqAutomorphism, usize)>> {
    let mut out = Vec::new();
    for tau_exp in -k_bound..=k_bound {
        for flags in 0..8u8 {
            let aut = TqAutomorphism {
                tau_exp,
                alpha: flags & 1 != 0,
                beta: flags & 2 != 0,
                gamma: flags & 4 != 0,
            };
            let bound = 4 * (n + 2);
            if let Some(ord) = order(&aut, n, bound)? {
                out.push((aut, ord));
            }
        }
    }
    Ok(out)
}

/// Arrows of Z[D~n] incident to a window: within copy k, the orientation is
/// 3 -> {1,2}, 3 -> 4 -> ... -> n-1, n-1 -> {n, n+1}; each tree edge u -> v
/// also contributes the mesh return arrow (k, v) -> (k+1, u).
pub fn zt_arrows_from(v: ZtVertex, n: usize) -> Vec<ZtVertex> {
    let mut out = Vec::new();
    let i = v.i;
    // in-copy arrows
    if i == 3 {
        out.push(ZtVertex { k: v.k, i: 1 });
        out.push(ZtVertex { k: v.k, i: 2 });
    }
    if (3..n - 1).contains(&i) {
        out.push(ZtVertex { k: v.k, i: i + 1 });
    }
    if i == n - 1 {
        out.push(ZtVertex { k: v.k, i: n });
        out.push(ZtVertex { k: v.k, i: n + 1 });
    }
    // mesh return arrows (k, v) -> (k+1, u) for each in-copy arrow u -> v
    match i {
        1 | 2 => out.push(ZtVertex { k: v.k + 1, i: 3 }),
        _ if i == n || i == n + 1 => out.push(ZtVertex {
            k: v.k + 1,
            i: n - 1,
        }),
        _ if i > 3 && i <= n - 1 => out.push(ZtVertex {
            k: v.k + 1,
            i: i - 1,
        }),
        _ => {}
    }
    out
}

/// Exhaustive window check of the normal-form description: enumerate all
/// arrow- and tau-preserving injections of the inner window into the full
/// window and match each against a normal form. Returns the matched words.
pub fn window_automorphism_scan(n: usize, k_window: i64) -> Result<Vec<TqAutomorphism>> {
    let outer: BTreeSet<ZtVertex> = (-k_window..=k_window)
        .flat_map(|k| (1..=n + 1).map(move |i| ZtVertex { k, i }))
        .collect();
    let margin = n as i64 - 3;
    let inner_k = k_window - margin.max(1);
    let inner: Vec<ZtVertex> = (-inner_k..=inner_k)
        .flat_map(|k| (1..=n + 1).map(move |i| ZtVertex { k, i }))
        .collect();
    // adjacency restricted to the outer window
    let arrows = |v: ZtVertex| -> Vec<ZtVertex> {
        zt_arrows_from(v, n)
            .into_iter()
            .filter(|w| outer.contains(w))
            .collect()
    };
    let rev_arrows = |v: ZtVertex| -> Vec<ZtVertex> {
        outer
            .iter()
            .copied()
            .filter(|&w| zt_arrows_from(w, n).contains(&v))
            .collect()
    };

    // candidate words: all normal forms whose action keeps the inner window
    // inside the outer window
    let mut words = Vec::new();
    for tau_exp in -(2 * k_window)..=(2 * k_window) {
        for flags in 0..8u8 {
            let cand = TqAutomorphism {
                tau_exp,
                alpha: flags & 1 != 0,
                beta: flags & 2 != 0,
                gamma: flags & 4 != 0,
            };
            let total: Result<Vec<ZtVertex>> =
                inner.iter().map(|&v| apply(&cand, v, n)).collect();
            match total {
                Ok(imgs) if imgs.iter().all(|w| outer.contains(w)) => words.push((cand, imgs)),
                _ => {}
            }
        }
    }

    // enumerate injections by anchored backtracking over BFS order
    let anchor = ZtVertex { k: 0, i: 3 };
    let mut bfs_order: Vec<ZtVertex> = Vec::new();
    {
        let mut seen = BTreeSet::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(anchor);
        seen.insert(anchor);
        while let Some(v) = queue.pop_front() {
            bfs_order.push(v);
            let mut nbrs = arrows(v);
            nbrs.extend(rev_arrows(v));
            nbrs.sort();
            for w in nbrs {
                if inner.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }

    let mut found: Vec<BTreeMap<ZtVertex, ZtVertex>> = Vec::new();
    let mut assignment: BTreeMap<ZtVertex, ZtVertex> = BTreeMap::new();
    let mut used: BTreeSet<ZtVertex> = BTreeSet::new();
    fn backtrack(
        pos: usize,
        bfs: &[ZtVertex],
        outer: &BTreeSet<ZtVertex>,
        n: usize,
        arrows: &dyn Fn(ZtVertex) -> Vec<ZtVertex>,
        assignment: &mut BTreeMap<ZtVertex, ZtVertex>,
        used: &mut BTreeSet<ZtVertex>,
        found: &mut Vec<BTreeMap<ZtVertex, ZtVertex>>,
    ) {
        if pos == bfs.len() {
            found.push(assignment.clone());
            return;
        }
        let v = bfs[pos];
        let candidates: Vec<ZtVertex> = outer.iter().copied().collect();
        'cand: for img in candidates {
            if used.contains(&img) {
                continue;
            }
            // consistency with already-assigned neighbors (arrows both ways
            // and the tau relation)
            for (&u, &uimg) in assignment.iter() {
                let uv = arrows(u).contains(&v);
                if uv && !arrows(uimg).contains(&img) {
                    continue 'cand;
                }
                let vu = arrows(v).contains(&u);
                if vu && !arrows(img).contains(&uimg) {
                    continue 'cand;
                }
                // tau: (k, i) and (k-1, i) must map to tau-related vertices
                if u.i == v.i {
                    let dk = u.k - v.k;
                    if uimg.i != img.i || uimg.k - img.k != dk {
                        if dk.abs() == 1 || dk == 0 {
                            continue 'cand;
                        }
                    }
                }
            }
            assignment.insert(v, img);
            used.insert(img);
            backtrack(pos + 1, bfs, outer, n, arrows, assignment, used, found);
            assignment.remove(&v);
            used.remove(&img);
        }
    }
    backtrack(
        0,
        &bfs_order,
        &outer,
        n,
        &arrows,
        &mut assignment,
        &mut used,
        &mut found,
    );

    // each found injection must agree with exactly one candidate word
    let mut matched = BTreeSet::new();
    for map in &found {
        let mut hits = Vec::new();
        for (cand, imgs) in &words {
            let agree = inner
                .iter()
                .zip(imgs)
                .all(|(v, w)| map.get(v).map_or(true, |m| m == w));
            if agree {
                hits.push(*cand);
            }
        }
        if hits.len() != 1 {
            return Err(ArqError::Inconsistent(format!(
                "window automorphism matched {} normal forms",
                hits.len()
            )));
        }
        matched.insert(hits[0]);
    }
    Ok(matched.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_and_generator_formulas() {
        let n = 7;
        let v = ZtVertex { k: 2, i: 5 };
        assert_eq!(apply_tau(v, 1), ZtVertex { k: 1, i: 5 });
        // alpha fixes the chain
        assert_eq!(apply_alpha(v), v);
        assert_eq!(apply_alpha(ZtVertex { k: 0, i: 1 }), ZtVertex { k: 0, i: 2 });
        // gamma on the chain: (k, 3) -> (k, n-1), (k, n-1) -> (k+n-4, 3)
        assert_eq!(
            apply_gamma(ZtVertex { k: 0, i: 3 }, n),
            ZtVertex { k: 0, i: n - 1 }
        );
        assert_eq!(
            apply_gamma(ZtVertex { k: 0, i: n - 1 }, n),
            ZtVertex {
                k: n as i64 - 4,
                i: 3
            }
        );
    }

    #[test]
    fn gamma_squared_is_tau_power() {
        for n in [5usize, 7, 9] {
            let g = TqAutomorphism {
                tau_exp: 0,
                alpha: false,
                beta: false,
                gamma: true,
            };
            let gg = compose_normalize(&g, &g, n).unwrap();
            assert_eq!(
                gg,
                TqAutomorphism {
                    tau_exp: 4 - n as i64,
                    alpha: false,
                    beta: false,
                    gamma: false
                },
                "n = {}",
                n
            );
        }
    }

    #[test]
    fn alpha_beta_commute_and_involute() {
        let n = 7;
        let a = TqAutomorphism {
            tau_exp: 0,
            alpha: true,
            beta: false,
            gamma: false,
        };
        let b = TqAutomorphism {
            tau_exp: 0,
            alpha: false,
            beta: true,
            gamma: false,
        };
        assert_eq!(
            compose_normalize(&a, &a, n).unwrap(),
            TqAutomorphism::identity()
        );
        let ab = compose_normalize(&a, &b, n).unwrap();
        let ba = compose_normalize(&b, &a, n).unwrap();
        assert_eq!(ab, ba);
        assert!(ab.alpha && ab.beta && !ab.gamma && ab.tau_exp == 0);
    }

    #[test]
    fn generators_preserve_arrows() {
        for n in [5usize, 6, 7] {
            for k in -3..=3i64 {
                for i in 1..=n + 1 {
                    let v = ZtVertex { k, i };
                    for g in [
                        TqAutomorphism { tau_exp: 1, alpha: false, beta: false, gamma: false },
                        TqAutomorphism { tau_exp: 0, alpha: true, beta: false, gamma: false },
                        TqAutomorphism { tau_exp: 0, alpha: false, beta: true, gamma: false },
                        TqAutomorphism { tau_exp: 0, alpha: false, beta: false, gamma: true },
                    ] {
                        let gv = apply(&g, v, n).unwrap();
                        let mut expected: Vec<ZtVertex> = zt_arrows_from(v, n)
                            .into_iter()
                            .map(|w| apply(&g, w, n).unwrap())
                            .collect();
                        let mut actual = zt_arrows_from(gv, n);
                        expected.sort();
                        actual.sort();
                        assert_eq!(expected, actual, "generator {:?} at {:?}", g.word(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn finite_orders_for_odd_n() {
        let n = 7;
        let finite = finite_order_classification(n, 6).unwrap();
        let words: BTreeSet<String> = finite.iter().map(|(a, _)| a.word()).collect();
        let expected: BTreeSet<String> =
            ["id", "a", "b", "a b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(words, expected);
        // orders: id 1, others 2
        for (aut, ord) in finite {
            assert_eq!(ord, if aut.is_identity() { 1 } else { 2 });
        }
    }

    #[test]
    fn finite_orders_for_even_n_include_gamma_family() {
        // n = 6: tau^{n/2-2} gamma = tau^1 gamma has finite order
        let n = 6;
        let finite = finite_order_classification(n, 6).unwrap();
        let has_gamma = finite.iter().any(|(a, _)| a.gamma && a.tau_exp == 1);
        assert!(has_gamma, "expected t^1 g to have finite order for n=6");
    }

    #[test]
    fn fpf_scan_over_euclidean_catalog() {
        let names: Vec<String> = TreeCatalogEntry::euclidean_catalog(11)
            .into_iter()
            .filter(|e| !e.fixed_point_free_automorphisms().is_empty())
            .map(|e| e.name)
            .collect();
        assert_eq!(
            names,
            vec!["A~1,2", "D~5", "D~7", "D~9", "D~11"],
            "exactly the symmetric valued edge and odd forks admit fixed-point-free automorphisms"
        );
    }

    #[test]
    fn e7_has_no_fpf_automorphism() {
        let e7 = TreeCatalogEntry::e_tilde(7);
        assert!(e7.fixed_point_free_automorphisms().is_empty());
        // but it does have the flip
        assert!(e7.automorphisms().len() >= 2);
    }

    #[test]
    fn window_scan_matches_normal_forms_small() {
        // n = 5, small window: every window automorphism is a normal form
        let words = window_automorphism_scan(5, 3).unwrap();
        assert!(words.contains(&TqAutomorphism::identity()));
        // alpha, beta and their product must appear
        assert!(words.iter().any(|w| w.alpha && !w.beta && !w.gamma && w.tau_exp == 0));
        assert!(words.iter().any(|w| w.gamma));
    }
}
