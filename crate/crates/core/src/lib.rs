//! Exact-arithmetic toolkit for the topological complexity of aspherical
//! spaces, `TC(pi)`.
//!
//! Everything here is computed over the integers, with no floating point and
//! no sampling in place of proofs: group elements are canonical normal forms,
//! subgroups are closed-form descriptors with decidable membership, and all
//! homology is Smith normal form over `Z`.
//!
//! The catalog of fundamental groups is `Z^k`, the free group `F_k`, the
//! Klein bottle group and the discrete Heisenberg group. On top of the group
//! arithmetic the crate builds:
//!
//! * centralizer descriptors `Z(S)` and their exact intersection algebra,
//! * the family of subgroups of `pi x pi` generated by the diagonal under
//!   conjugation and finite intersection,
//! * principality verdicts with machine-checkable certificates,
//! * Bredon cohomology of `Z^k x Z^k` over the two-object orbit category,
//!   the comparison map to ordinary group cohomology, and `cd_D` reports,
//! * zero-divisor cup-length in the exterior algebra of a torus product,
//! * finite join complexes and their integral homology,
//! * `TC` bound reports combining the lower and upper bounds.
//!
//! Core arithmetic is generic over the integer scalar through the [`Int`]
//! trait (`i64`, `i128`, or any `num` integer); the aliases at the crate root
//! fix the default scalar used by the command line tool.

pub mod bredon;
pub mod centralizer;
pub mod diagonal;
pub mod error;
pub mod exterior;
pub mod group;
pub mod int;
pub mod join;
pub mod laurent;
pub mod linalg;
pub mod principality;
pub mod selftest;
pub mod tc;
pub mod word;

pub use error::{Error, Result};
pub use int::Int;

/// Default exact scalar. Ball radii are capped, so exponents stay small and
/// `i64` never overflows at the configured limits; swap in `i128` (or a big
/// integer) through the generic API if a caller needs more headroom.
pub type Scalar = i64;

/// A catalog group element over the default scalar.
pub type Element = group::GroupElement<Scalar>;
/// A pair `(g, h)` in `pi x pi` over the default scalar.
pub type Pair = group::PairElement<Scalar>;
/// A centralizer-type subgroup descriptor over the default scalar.
pub type Subgroup = centralizer::SubgroupDescriptor<Scalar>;
/// A member of the diagonal family of `pi x pi` over the default scalar.
pub type Diagonal = diagonal::DiagonalSubgroup<Scalar>;
/// An integer matrix over the default scalar.
pub type IntMatrix = linalg::Matrix<Scalar>;
/// An exterior-algebra class over the default scalar.
pub type Exterior = exterior::ExteriorClass<Scalar>;

/// Default cap on ball enumeration radii.
pub const DEFAULT_RADIUS_CAP: u32 = 8;
