//! Reconstruction of Wigner symmetries on finite-dimensional complex
//! Hilbert spaces.
//!
//! A map `f` on rank-one projections that preserves transition
//! probabilities `tr P[v]P[w] = |<v, w>|^2` is induced by a linear or
//! antilinear isometry `W`, `f(P[v]) = P[W v]`. This crate recovers `W` from
//! black-box queries of `f` (see [`reconstruct::reconstruct`]), inverts
//! distance profiles against the resolving set of the projective space
//! ([`resolving`]), and provides generators of ground-truth instances and of
//! maps that are *not* symmetries ([`generators`]).
//!
//! All numerics are generic over the real scalar type ([`Real`]: `f32` or
//! `f64`); the `*64` aliases below fix double precision.

// Tolerance checks are written `!(x <= tol)` on purpose, so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod generators;
pub mod hilbert;
pub mod matrix;
pub mod reconstruct;
pub mod resolving;
pub mod sampling;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use generators::{GeneratorKind, GeneratorSpec};
pub use hilbert::{
    canonicalize, gap_distance, inner_product, transition_probability, ComplexScalar, ComplexVector,
    RankOneProjection, Tolerances,
};
pub use matrix::CMatrix;
pub use reconstruct::{reconstruct, run_pipeline, validate_symmetry, ReconstructionReport, SymmetryMap};
pub use resolving::{build_resolving_set, profile_of, recover_from_profile, DistanceProfile, ResolvingSet};
pub use scalar::Real;
pub use witness::{compose_witness, IsometryWitness, Linearity};

pub type Complex64 = num_complex::Complex<f64>;
pub type Vector64 = ComplexVector<f64>;
pub type Projection64 = RankOneProjection<f64>;
pub type Matrix64 = CMatrix<f64>;
pub type Witness64 = IsometryWitness<f64>;
pub type Report64 = ReconstructionReport<f64>;
pub type Tolerances64 = Tolerances<f64>;

pub type Complex32 = num_complex::Complex<f32>;
pub type Vector32 = ComplexVector<f32>;
pub type Projection32 = RankOneProjection<f32>;
pub type Witness32 = IsometryWitness<f32>;
pub type Report32 = ReconstructionReport<f32>;
pub type Tolerances32 = Tolerances<f32>;
