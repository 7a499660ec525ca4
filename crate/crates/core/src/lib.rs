//! Isomorphism-free lexicographic enumeration of triangulated surfaces and
//! combinatorial 3-manifolds, with topological classification and equivelar
//! arithmetic.

pub mod canonical;
pub mod complex;
pub mod enumerate;
pub mod equivelar;
pub mod error;
pub mod facet;
pub mod io;
pub mod snf;
pub mod topology;

pub use canonical::{apply_relabeling, canonical_form, is_isomorphic, partial_is_lex_minimal, Relabeling};
pub use complex::{PartialComplex, Triangulation, VertexState};
pub use enumerate::{EnumerationConfig, EnumerationEvent, EventKind, Reason, Stats};
pub use error::*;
pub use facet::{Facet, Ridge, Simplex, Vertex};
