//! Self-orthogonal codes from weakly self-orthogonal 1-designs.
//!
//! The pipeline runs finite fields and matrices, permutation groups, designs
//! built from group actions, orbit matrices, code constructions, and finally
//! analysis of the resulting codes.

pub mod code;
pub mod construct;
pub mod data;
pub mod design;
pub mod error;
pub mod field;
pub mod matrix;
pub mod orbitmat;
pub mod perm;
pub mod tables;

pub use code::{Distance, LinearCode, DEFAULT_BUDGET};
pub use construct::{ConstructionReport, Family, Theorem};
pub use design::{Design, GroupDesign, SearchHit, WsoCase, WsoProfile};
pub use error::{Error, Result};
pub use field::{Embedding, Field, FieldElement};
pub use matrix::GfMatrix;
pub use orbitmat::{FixedSplit, OrbitMatrix};
pub use perm::{OrbitProfile, PermGroup, Permutation};
