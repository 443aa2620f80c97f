//! Invariant theory of finite unitary matrix groups.
//!
//! Given generators of a finite group `G ⊂ U(n)`, this crate closes the group,
//! builds the induced action on homogeneous polynomials of each degree, and
//! computes the dimensions `a_d` of the invariant subspaces in three
//! independent ways:
//!
//! * expanding the Molien series `(1/|G|)·Σ_g 1/det(id − λ·A_g)`,
//! * taking the trace of the degree-`d` Reynolds (averaging) matrix,
//! * counting an explicit basis of averaged monomials.
//!
//! Two scalar backends are available: exact Gaussian rationals
//! ([`GaussianRational`]) and tolerance-compared complex floats
//! ([`ComplexFloat`]) for groups whose entries leave `ℚ(i)`.
//!
//! ```
//! use molien::{close_group, cross_check, GaussianRational, SquareMatrix};
//!
//! let rot: SquareMatrix<GaussianRational> = SquareMatrix::from_rows(vec![
//!     vec![0.into(), (-1).into()],
//!     vec![1.into(), 0.into()],
//! ])
//! .unwrap();
//! let c4 = close_group(&[rot], 100, 0.0).unwrap();
//! let report = cross_check(&c4, 4).unwrap();
//! assert_eq!(report.a, [1, 0, 1, 0, 3]);
//! assert!(report.all_agree());
//! ```
//!
//! With the default `parallel` feature, per-element and per-degree work runs
//! on rayon's thread pool. Float sums are still reduced in element order, so
//! results are identical with or without the feature.

pub mod action;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod molien;
pub mod par;
pub mod polyring;
pub mod scalar;

pub use action::{act, induced_first, induced_matrix, InducedAction, InducedMatrix};
pub use error::{Error, Result};
pub use group::{
    close_group, from_permutations, parse_cycles, FiniteMatrixGroup, DEFAULT_MAX_ORDER,
};
pub use invariants::{
    invariant_basis, invariant_basis_from, invariant_dimension, reynolds_from_action,
    reynolds_matrix, verify_invariant, InvariantBasis, ReynoldsMatrix,
};
pub use linalg::{det_one_minus_lambda, row_reduce_rank, RowEchelon, SquareMatrix, UnivariatePoly};
pub use molien::{
    averaged_reciprocal_series, cross_check, expand_rational, molien_coefficients, molien_rational,
    molien_series, series_reciprocal, Method, MolienReport, TruncatedSeries,
};
pub use polyring::{
    homogeneous_dimension, monomial_basis, parse_polynomial, Monomial, MonomialBasis,
    SparsePolynomial,
};
pub use scalar::{
    field_arith, parse_complex_float, parse_scalar, BackendKind, ComplexFloat, FieldOp,
    GaussianRational, Scalar, ScalarBackend, DEFAULT_TOLERANCE, ROUNDING_TOLERANCE,
};
