//! Exact decision procedures for quadrilaterals inside orbits of finite
//! permutation groups.
//!
//! Given a quadrilateral relation `w = z + alpha (x - z) + beta (y - z)` and
//! a permutation group `G`, the [`criterion::Engine`] decides whether some
//! orbit of `G` (acting on the sum-zero hyperplane by coordinate
//! permutation) contains such a quadrilateral. It produces explicit
//! [`EmbeddingWitness`]es when one exists and [`NonEmbeddingCertificate`]s
//! covering every transcendental `beta` when none can.

pub mod criterion;
pub mod error;
pub mod exactnum;
pub mod geometry;
pub mod oracle;
pub mod permgroup;
pub mod poly;
pub mod representation;

pub use criterion::{
    witness_beta, Beta, ClassRecord, EmbeddingWitness, Engine, MembershipHit,
    NonEmbeddingCertificate, ParamQuery, Pencil,
};
pub use error::{CriterionError, GeometryError, GroupError, LinalgError, PolyError};
pub use exactnum::{
    det, format_rational, kernel_basis, parse_rational, solve, RatMatrix, RatVector, Rational,
    Solve,
};
pub use geometry::{
    convex_position, is_concyclic, kite_params, orbit, quad_params, Degeneracy, Orbit,
    Quadrilateral,
};
pub use permgroup::{
    catalog, class_representative, close, is_transitive, parse_cycles, Perm, PermGroup, Triple,
    TripleClass,
};
pub use poly::{BivarPoly, UniPoly};
pub use representation::{DeletedRep, SubgroupContext};
