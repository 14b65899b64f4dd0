//! Small named algebras and actions used by the CLI demos, the browser demo
//! and the test suites.

use crate::algebra::Algebra;
use crate::field::Field;
use crate::quiver::{Path, Quiver, Relation, RelationSet};

/// k<x,y>/(x^2, y^2, xy - q yx) over the given field, nilpotency 3.
pub fn quantum_plane(field: &Field, q: i64) -> Algebra {
    quantum_plane_scalar(field, &field.from_i64(q))
}

pub fn quantum_plane_scalar(field: &Field, q: &crate::field::Scalar) -> Algebra {
    let quiver = Quiver::new(
        vec!["v".into()],
        vec![
            ("x".into(), "v".into(), "v".into()),
            ("y".into(), "v".into(), "v".into()),
        ],
    )
    .unwrap();
    let relations = RelationSet {
        relations: vec![
            Relation {
                terms: vec![(field.one(), Path::Arrows(vec![0, 0]))],
            },
            Relation {
                terms: vec![(field.one(), Path::Arrows(vec![1, 1]))],
            },
            Relation {
                terms: vec![
                    (field.one(), Path::Arrows(vec![0, 1])),
                    (field.neg(q), Path::Arrows(vec![1, 0])),
                ],
            },
        ],
        nilpotency: 3,
    };
    Algebra::build(quiver, relations, field.clone()).unwrap()
}

/// The Kronecker algebra k[x,y]/(x^2, y^2, xy - yx).
pub fn kronecker(field: &Field) -> Algebra {
    quantum_plane(field, 1)
}

/// k[x]/(x^n): one loop, relation x^n, nilpotency n.
pub fn truncated_poly(field: &Field, n: usize) -> Algebra {
    let quiver = Quiver::new(
        vec!["v".into()],
        vec![("x".into(), "v".into(), "v".into())],
    )
    .unwrap();
    let relations = RelationSet {
        relations: vec![Relation {
            terms: vec![(field.one(), Path::Arrows(vec![0; n]))],
        }],
        nilpotency: n,
    };
    Algebra::build(quiver, relations, field.clone()).unwrap()
}

/// The two-parameter family over the quantum plane: Span{v, xv} with
/// y v = gamma * x v.
pub fn family_module(alg: &Algebra, gamma: &crate::field::Scalar) -> crate::rep::Representation {
    let f = &alg.field;
    let x = crate::matrix::Matrix::from_i64(f, 2, 2, &[0, 0, 1, 0]);
    let mut y = crate::matrix::Matrix::zeros(f, 2, 2);
    y.set(1, 0, gamma.clone());
    crate::rep::Representation::new(alg, vec![2], vec![x, y]).unwrap()
}

/// The uniserial module k[x]/(x^i) over k[x]/(x^n), i <= n.
pub fn uniserial(alg: &Algebra, i: usize) -> crate::rep::Representation {
    let f = &alg.field;
    let mut m = crate::matrix::Matrix::zeros(f, i, i);
    for r in 1..i {
        m.set(r, r - 1, f.one());
    }
    crate::rep::Representation::new(alg, vec![i], vec![m]).unwrap()
}

/// The coefficient-of-xy functional on the quantum plane / Kronecker basis
/// {e, x, y, xy}.
pub fn socle_functional(alg: &Algebra) -> Vec<crate::field::Scalar> {
    let f = &alg.field;
    let mut functional = vec![f.zero(); alg.dim()];
    let top = alg
        .basis
        .iter()
        .enumerate()
        .max_by_key(|(_, p)| p.len())
        .map(|(i, _)| i)
        .unwrap();
    functional[top] = f.one();
    functional
}
