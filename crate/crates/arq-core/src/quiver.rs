//! Quivers, paths and admissible relation sets.
//!
//! Paths are stored in product order: `[f1, f2, ..., fm]` denotes the
//! algebra element f1*f2*...*fm, whose operator on representations applies
//! fm first. Consequently `source(p) = source(fm)` and `target(p) = target(f1)`,
//! and a product p*q requires `source(p) = target(q)`.

use crate::error::{ArqError, Result};
use crate::field::{Field, Scalar};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(ArqError::InvalidQuiver(format!("duplicate vertex {:?}", v)));
            }
        }
        let vertex_index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| ArqError::UnknownVertex(name.to_string()))
        };
        let mut arrow_names = BTreeSet::new();
        let mut built = Vec::new();
        for (name, from, to) in arrows {
            if !arrow_names.insert(name.clone()) {
                return Err(ArqError::InvalidQuiver(format!("duplicate arrow {:?}", name)));
            }
            built.push(Arrow {
                from: vertex_index(&from)?,
                to: vertex_index(&to)?,
                name,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: built,
        })
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ArqError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| ArqError::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Quiver with all arrows reversed (names preserved).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    from: a.to,
                    to: a.from,
                })
                .collect(),
        }
    }
}

/// A path in product order (see module docs). `Trivial(v)` is the idempotent e_v.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(v) => v.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn source(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(seq) => q.arrows[*seq.last().unwrap()].from,
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(seq) => q.arrows[seq[0]].to,
        }
    }

    /// Product self * other (other acts first). None when endpoints mismatch.
    pub fn compose(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.source(q) != other.target(q) {
            return None;
        }
        Some(match (self, other) {
            (Path::Trivial(_), _) => other.clone(),
            (_, Path::Trivial(_)) => self.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut v = a.clone();
                v.extend_from_slice(b);
                Path::Arrows(v)
            }
        })
    }

    /// Whether the arrow sequence walks consistently through the quiver.
    pub fn is_valid(&self, q: &Quiver) -> bool {
        match self {
            Path::Trivial(v) => *v < q.num_vertices(),
            Path::Arrows(seq) => {
                if seq.is_empty() {
                    return false;
                }
                seq.windows(2)
                    .all(|w| q.arrows[w[0]].from == q.arrows[w[1]].to)
            }
        }
    }

    /// Same walk with arrows reversed, a path of the opposite quiver.
    pub fn reversed(&self) -> Path {
        match self {
            Path::Trivial(v) => Path::Trivial(*v),
            Path::Arrows(seq) => Path::Arrows(seq.iter().rev().copied().collect()),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Path::Trivial(v) => format!("e_{}", q.vertices[*v]),
            Path::Arrows(seq) => {
                let names: Vec<&str> = seq.iter().map(|&i| q.arrows[i].name.as_str()).collect();
                if names.iter().all(|n| n.chars().count() == 1) {
                    names.concat()
                } else {
                    names.join(".")
                }
            }
        }
    }
}

/// One relation: a linear combination of parallel paths of length >= 2.
#[derive(Debug, Clone)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Debug, Clone)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
    /// Nilpotency bound: the radical to this power vanishes.
    pub nilpotency: usize,
}

impl RelationSet {
    /// Checks admissibility: terms of length >= 2, parallel within each
    /// relation, valid walks.
    pub fn validate(&self, q: &Quiver, field: &Field) -> Result<()> {
        if self.nilpotency < 1 || self.nilpotency > 12 {
            return Err(ArqError::InvalidInput(format!(
                "nilpotency bound {} outside supported range 1..=12",
                self.nilpotency
            )));
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            let live: Vec<&(Scalar, Path)> = rel
                .terms
                .iter()
                .filter(|(c, _)| !field.is_zero(c))
                .collect();
            if live.is_empty() {
                continue;
            }
            for (_, p) in &live {
                if !p.is_valid(q) {
                    return Err(ArqError::InvalidQuiver(format!(
                        "relation {} contains an invalid walk",
                        ri
                    )));
                }
                if p.len() < 2 {
                    return Err(ArqError::NonAdmissible(format!(
                        "relation {} contains the length-{} term {}",
                        ri,
                        p.len(),
                        p.display(q)
                    )));
                }
            }
            let s = live[0].1.source(q);
            let t = live[0].1.target(q);
            if !live.iter().all(|(_, p)| p.source(q) == s && p.target(q) == t) {
                return Err(ArqError::NonAdmissible(format!(
                    "relation {} mixes non-parallel paths",
                    ri
                )));
            }
        }
        Ok(())
    }

    /// Relations of the opposite algebra: every path reversed.
    pub fn opposite(&self) -> RelationSet {
        RelationSet {
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| (c.clone(), p.reversed()))
                        .collect(),
                })
                .collect(),
            nilpotency: self.nilpotency,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_endpoints_product_order() {
        let q = Quiver::new(
            vec!["u".into(), "v".into(), "w".into()],
            vec![
                ("a".into(), "u".into(), "v".into()),
                ("b".into(), "v".into(), "w".into()),
            ],
        )
        .unwrap();
        // b*a applies a first: u -> v -> w, so source u, target w
        let ba = Path::Arrows(vec![1, 0]);
        assert!(ba.is_valid(&q));
        assert_eq!(ba.source(&q), 0);
        assert_eq!(ba.target(&q), 2);
        // a*b is not a valid walk
        assert!(!Path::Arrows(vec![0, 1]).is_valid(&q));
        let b = Path::Arrows(vec![1]);
        let a = Path::Arrows(vec![0]);
        assert_eq!(b.compose(&a, &q), Some(ba.clone()));
        assert_eq!(a.compose(&b, &q), None);
        // opposite quiver reverses everything
        let qop = q.opposite();
        assert!(ba.reversed().is_valid(&qop));
    }

    #[test]
    fn admissibility_rejects_short_terms() {
        let q = Quiver::new(
            vec!["v".into()],
            vec![("x".into(), "v".into(), "v".into())],
        )
        .unwrap();
        let f = Field::prime(2).unwrap();
        let bad = RelationSet {
            relations: vec![Relation {
                terms: vec![(f.one(), Path::Arrows(vec![0]))],
            }],
            nilpotency: 3,
        };
        assert!(matches!(
            bad.validate(&q, &f),
            Err(ArqError::NonAdmissible(_))
        ));
    }
}
