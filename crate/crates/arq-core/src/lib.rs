//! Exact-arithmetic computations with bound quiver algebras, their module
//! categories, and stable Auslander-Reiten quivers: syzygies, twists,
//! almost-split sequences, knitting, translation-quiver automorphisms,
//! mesh length congruences, smash products with abelian group actions, and
//! the Hom bilinear form on the free group of indecomposables.

pub mod algebra;
pub mod artheory;
pub mod error;
pub mod field;
pub mod grothform;
pub mod lengthsolver;
pub mod matrix;
pub mod poly;
pub mod presets;
pub mod quiver;
pub mod decompose;
pub mod rep;
pub mod tquiver;

pub use algebra::{Algebra, AlgebraAutomorphism, FrobeniusStructure};
pub use error::{ArqError, Result};
pub use field::{Field, FieldSpec, Scalar};
pub use matrix::Matrix;
pub use quiver::{Path, Quiver, Relation, RelationSet};
