//! The free abelian group on registered indecomposables with the bilinear
//! form dim Hom, classes of exact sequences, and the splitting of a class
//! along a decomposition of its right term.

use crate::decompose::{decompose, indec_iso};
use crate::error::{ArqError, Result};
use crate::matrix::Matrix;
use crate::rep::{hom_dim, Representation, ShortExactSequence};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// Cheap iso-invariant pre-filter key: dimension vector, radical series
/// dimensions, socle dimensions and arrow rank profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PreKey {
    dims: Vec<usize>,
    radical_series: Vec<usize>,
    socle: Vec<usize>,
    arrow_ranks: Vec<usize>,
}

fn prekey(rep: &Representation) -> PreKey {
    let mut radical_series = Vec::new();
    let mut layer = rep.clone();
    loop {
        let (rad, _) = layer.radical().expect("radical exists");
        radical_series.push(rad.total_dim());
        if rad.total_dim() == 0 {
            break;
        }
        layer = rad;
    }
    PreKey {
        dims: rep.dims.clone(),
        radical_series,
        socle: rep.socle_subspaces().iter().map(|s| s.cols).collect(),
        arrow_ranks: rep.matrices.iter().map(Matrix::rank).collect(),
    }
}

struct RegistryInner {
    entries: Vec<Representation>,
    buckets: HashMap<PreKey, Vec<usize>>,
    pair_cache: HashMap<(usize, usize), usize>,
}

/// Registry of certified-indecomposable iso classes. Two modules share a key
/// iff a certified isomorphism exists; insert-or-get is serialized.
pub struct IsoRegistry {
    inner: Mutex<RegistryInner>,
}

impl Default for IsoRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl IsoRegistry {
    pub fn new() -> IsoRegistry {
        IsoRegistry {
            inner: Mutex::new(RegistryInner {
                entries: Vec::new(),
                buckets: HashMap::new(),
                pair_cache: HashMap::new(),
            }),
        }
    }

    /// Register a certified-indecomposable module, returning its class id.
    pub fn insert_or_get(&self, rep: &Representation) -> Result<usize> {
        let key = prekey(rep);
        let mut inner = self.inner.lock().unwrap();
        if let Some(bucket) = inner.buckets.get(&key) {
            for &id in bucket {
                if indec_iso(&inner.entries[id], rep)? {
                    return Ok(id);
                }
            }
        }
        let id = inner.entries.len();
        inner.entries.push(rep.clone());
        inner.buckets.entry(key).or_default().push(id);
        Ok(id)
    }

    /// Look up without inserting.
    pub fn find(&self, rep: &Representation) -> Result<Option<usize>> {
        let key = prekey(rep);
        let inner = self.inner.lock().unwrap();
        if let Some(bucket) = inner.buckets.get(&key) {
            for &id in bucket {
                if indec_iso(&inner.entries[id], rep)? {
                    return Ok(Some(id));
                }
            }
        }
        Ok(None)
    }

    pub fn representative(&self, id: usize) -> Representation {
        self.inner.lock().unwrap().entries[id].clone()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// dim Hom between two registered classes, memoized.
    pub fn pair_classes(&self, a: usize, b: usize) -> Result<usize> {
        {
            let inner = self.inner.lock().unwrap();
            if let Some(&d) = inner.pair_cache.get(&(a, b)) {
                return Ok(d);
            }
        }
        let (ra, rb) = {
            let inner = self.inner.lock().unwrap();
            (inner.entries[a].clone(), inner.entries[b].clone())
        };
        let d = hom_dim(&ra, &rb)?;
        self.inner.lock().unwrap().pair_cache.insert((a, b), d);
        Ok(d)
    }

    /// Dimension-vector label with a disambiguating suffix on collision.
    pub fn label(&self, id: usize) -> String {
        let inner = self.inner.lock().unwrap();
        let dims = &inner.entries[id].dims;
        let same: Vec<usize> = inner
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| &e.dims == dims)
            .map(|(i, _)| i)
            .collect();
        let base = format!(
            "[{}]",
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        );
        if same.len() > 1 {
            let pos = same.iter().position(|&i| i == id).unwrap();
            format!("{}{}", base, (b'a' + pos as u8) as char)
        } else {
            base
        }
    }
}

/// A formal integer combination of registered indecomposable classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrothElement {
    coeffs: BTreeMap<usize, i64>,
}

impl GrothElement {
    pub fn zero() -> GrothElement {
        GrothElement::default()
    }

    pub fn class(id: usize) -> GrothElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id, 1);
        GrothElement { coeffs }
    }

    pub fn add_class(&mut self, id: usize, mult: i64) {
        let e = self.coeffs.entry(id).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.coeffs.remove(&id);
        }
    }

    pub fn add(&self, other: &GrothElement) -> GrothElement {
        let mut out = self.clone();
        for (&id, &c) in &other.coeffs {
            out.add_class(id, c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> GrothElement {
        if c == 0 {
            return GrothElement::zero();
        }
        GrothElement {
            coeffs: self.coeffs.iter().map(|(&i, &x)| (i, c * x)).collect(),
        }
    }

    pub fn sub(&self, other: &GrothElement) -> GrothElement {
        self.add(&other.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, i64> {
        &self.coeffs
    }

    pub fn display(&self, registry: &IsoRegistry) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, (&id, &c)) in self.coeffs.iter().enumerate() {
            let label = registry.label(id);
            let piece = match c {
                1 => label,
                -1 => format!("-{}", label),
                c => format!("{}·{}", c, label),
            };
            if i == 0 {
                parts.push(piece);
            } else if c > 0 {
                parts.push(format!("+ {}", piece));
            } else {
                parts.push(format!("- {}", piece.trim_start_matches('-').to_string()));
            }
        }
        parts.join(" ")
    }
}

/// Decompose a module, register its summands and return its class in G(A).
pub fn register_module(
    registry: &IsoRegistry,
    m: &Representation,
    seed: u64,
) -> Result<GrothElement> {
    let mut out = GrothElement::zero();
    if m.total_dim() == 0 {
        return Ok(out);
    }
    let dec = decompose(m, seed)?;
    for (rep, mult) in &dec.summands {
        let id = registry.insert_or_get(rep)?;
        out.add_class(id, *mult as i64);
    }
    Ok(out)
}

/// Bilinear form dim Hom extended to G(A).
pub fn pair(registry: &IsoRegistry, u: &GrothElement, v: &GrothElement) -> Result<i64> {
    let mut acc = 0i64;
    for (&a, &ca) in u.coeffs() {
        for (&b, &cb) in v.coeffs() {
            acc += ca * cb * registry.pair_classes(a, b)? as i64;
        }
    }
    Ok(acc)
}

/// The class [[Q]] = [left] + [right] - [middle] of a verified exact sequence.
pub fn seq_class(
    registry: &IsoRegistry,
    q: &ShortExactSequence,
    seed: u64,
) -> Result<GrothElement> {
    q.verify_exact()?;
    let b = register_module(registry, &q.left, seed)?;
    let c = register_module(registry, &q.middle, seed)?;
    let d = register_module(registry, &q.right, seed)?;
    Ok(b.add(&d).sub(&c))
}

/// Split an exact sequence along a 2-summand decomposition of its right term
/// given by projections p1, p2 of right onto the two summands: classes add.
pub fn split_along_summand(
    registry: &IsoRegistry,
    q: &ShortExactSequence,
    p1: &crate::rep::ModuleMap,
    p2: &crate::rep::ModuleMap,
    seed: u64,
) -> Result<(ShortExactSequence, ShortExactSequence, GrothElement, GrothElement)> {
    q.verify_exact()?;
    if p1.target.total_dim() == 0 || p2.target.total_dim() == 0 {
        return Err(ArqError::InvalidInput(
            "both summands of the right term must be nonzero".into(),
        ));
    }
    // preimage of W1 = kernel of p2 o surj
    let p2pi = p2.compose(&q.surj)?;
    let pre = p2pi.kernel_subspaces();
    let (pre_rep, pre_incl) = q.middle.sub_rep(&pre)?;
    // Q1: 0 -> pre -> middle -> W2 -> 0
    let q1 = ShortExactSequence {
        left: pre_rep.clone(),
        middle: q.middle.clone(),
        right: p2.target.clone(),
        inj: pre_incl.clone(),
        surj: p2pi,
    };
    q1.verify_exact()?;
    // Q2: 0 -> U -> pre -> W1 -> 0; U includes into pre
    let u_in_pre: Result<Vec<Matrix>> = pre
        .iter()
        .zip(&q.inj.blocks)
        .map(|(basis, ublock)| {
            let (x, _) = basis.solve(ublock)?;
            x.ok_or_else(|| ArqError::Verification("kernel misses the preimage".into()))
        })
        .collect();
    let inj2 = crate::rep::ModuleMap {
        source: q.left.clone(),
        target: pre_rep.clone(),
        blocks: u_in_pre?,
    };
    let surj2 = p1.compose(&q.surj)?.compose(&pre_incl)?;
    let q2 = ShortExactSequence {
        left: q.left.clone(),
        middle: pre_rep,
        right: p1.target.clone(),
        inj: inj2,
        surj: surj2,
    };
    q2.verify_exact()?;
    let c1 = seq_class(registry, &q1, seed)?;
    let c2 = seq_class(registry, &q2, seed)?;
    // the defining identity of the split
    let total = seq_class(registry, q, seed)?;
    if total != c1.add(&c2) {
        return Err(ArqError::Verification(
            "classes of the split do not add to the class of the sequence".into(),
        ));
    }
    Ok((q1, q2, c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presets::{truncated_poly, uniserial};
    use crate::rep::{projective, projective_cover, ModuleMap};

    /// 0 -> rad P -> P -> top P -> 0 over k[x]/(x^3).
    fn radical_sequence(alg: &crate::algebra::Algebra) -> ShortExactSequence {
        let p = projective(alg, 0).unwrap();
        let (rad, incl) = p.radical().unwrap();
        let (top, proj) = p.top().unwrap();
        ShortExactSequence {
            left: rad,
            middle: p,
            right: top,
            inj: incl,
            surj: proj,
        }
    }

    #[test]
    fn split_sequence_has_zero_class() {
        let q = Field::rational();
        let alg = truncated_poly(&q, 3);
        let m1 = uniserial(&alg, 1);
        let m2 = uniserial(&alg, 2);
        let (sum, incls, projs) = Representation::direct_sum(&[&m1, &m2]).unwrap();
        let seq = ShortExactSequence {
            left: m1.clone(),
            middle: sum.clone(),
            right: m2.clone(),
            inj: incls[0].clone(),
            surj: projs[1].clone(),
        };
        seq.verify_exact().unwrap();
        assert!(seq.is_split().unwrap());
        let reg = IsoRegistry::new();
        assert!(seq_class(&reg, &seq, 0).unwrap().is_zero());
    }

    #[test]
    fn radical_sequence_class_and_pairing() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let seq = radical_sequence(&alg);
        seq.verify_exact().unwrap();
        assert!(!seq.is_split().unwrap());
        assert!(seq.length_additive());
        let reg = IsoRegistry::new();
        let class = seq_class(&reg, &seq, 0).unwrap();
        // [M2] + [M1] - [M3]
        assert_eq!(class.coeffs().len(), 3);
        // pair([M2], class) with min-formula oracle: min(2,2)+min(2,1)-min(2,3) = 1
        let m2 = register_module(&reg, &uniserial(&alg, 2), 0).unwrap();
        assert_eq!(pair(&reg, &m2, &class).unwrap(), 1);
    }

    #[test]
    fn projective_dual_element() {
        // X_3 = [M3] - [M2] over k[x]/(x^3); pair([M_i], X_3) = delta_{i3}
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let reg = IsoRegistry::new();
        let m3 = register_module(&reg, &uniserial(&alg, 3), 0).unwrap();
        let m2 = register_module(&reg, &uniserial(&alg, 2), 0).unwrap();
        let m1 = register_module(&reg, &uniserial(&alg, 1), 0).unwrap();
        let x3 = m3.sub(&m2);
        assert_eq!(pair(&reg, &m1, &x3).unwrap(), 0);
        assert_eq!(pair(&reg, &m2, &x3).unwrap(), 0);
        assert_eq!(pair(&reg, &m3, &x3).unwrap(), 1);
        // min-formula oracle: pair([M2], X_1) where X_1 = 2[M1] - [M2]
        let x1 = m1.scale(2).sub(&m2);
        assert_eq!(pair(&reg, &m2, &x1).unwrap(), 0);
    }

    #[test]
    fn registry_deduplicates_iso_classes() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let reg = IsoRegistry::new();
        let a = reg.insert_or_get(&uniserial(&alg, 2)).unwrap();
        // a conjugated copy of the same uniserial
        let g = Matrix::from_i64(&f, 2, 2, &[1, 0, 1, 1]);
        let gi = g.inverse().unwrap();
        let conj = Representation::new(
            &alg,
            vec![2],
            vec![g.mul(&uniserial(&alg, 2).matrices[0]).unwrap().mul(&gi).unwrap()],
        )
        .unwrap();
        let b = reg.insert_or_get(&conj).unwrap();
        assert_eq!(a, b);
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn split_along_summand_classes_add() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 3);
        let m1 = uniserial(&alg, 1);
        // right term M1 + M1, middle a projective cover of it
        let (w, incls, projs) = Representation::direct_sum(&[&m1, &m1]).unwrap();
        let (cover, surj, _) = projective_cover(&w).unwrap();
        let kernel = surj.kernel_subspaces();
        let (k, incl) = cover.sub_rep(&kernel).unwrap();
        let seq = ShortExactSequence {
            left: k,
            middle: cover,
            right: w,
            inj: incl,
            surj,
        };
        seq.verify_exact().unwrap();
        let reg = IsoRegistry::new();
        let (_q1, _q2, c1, c2) = split_along_summand(&reg, &seq, &projs[0], &projs[1], 0).unwrap();
        let total = seq_class(&reg, &seq, 0).unwrap();
        assert_eq!(total, c1.add(&c2));
        let _ = incls;
    }

    #[test]
    fn modulemap_identity_shape() {
        let f = Field::rational();
        let alg = truncated_poly(&f, 2);
        let m = uniserial(&alg, 2);
        let id = ModuleMap::identity(&m);
        assert!(id.is_iso());
    }
}
