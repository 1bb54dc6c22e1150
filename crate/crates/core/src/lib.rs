//! Finite fields, subspaces of F_q^n, and q-analog covering, Turán and
//! Steiner designs: exact verifiers, bounds and explicit constructions.

pub mod bounds;
pub mod constructions;
pub mod design;
pub mod error;
pub mod field;
pub mod grassmannian;
pub mod subspace;
pub mod vector;

pub use design::{CoverageReport, SetSystem, Strategy, SubspaceDesign};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldTower};
pub use grassmannian::{GrassmannIndex, GrassmannianCursor};
pub use subspace::Subspace;
pub use vector::{FqSpace, VectorFq};
