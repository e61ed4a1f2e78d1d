//! Numerical verification in matrix models of the compact duals.
//!
//! Rank-one factors are modelled as Cartan decompositions `g = k ⊕ p` of
//! `su(n+1)` (complex projective spaces, and more generally Grassmannians
//! `G_k(C^{n+k})`) and `so(n+1)` (spheres). Products are block-diagonal
//! direct sums. Tangent vectors are elements of `p`, and the curvature tensor
//! at the base point is `R(X, Y)Z = -[[X, Y], Z]`.
//!
//! # Metric and sign conventions
//!
//! The inner product on each summand is a positive multiple of
//! `Re tr(X* Y)`. The multiple is calibrated numerically: the `CP^1` model
//! (and every sphere model) of unit curvature parameter is scaled to
//! sectional curvature [`CALIBRATION`] `= 4`. A factor with curvature
//! parameter `c` is scaled to read `4c`, so totally real planes of `CP^n(c)`
//! read `c`. A non-compact space with sectional curvature `-κ` therefore
//! corresponds to a measured compact curvature `4κ`.
//!
//! Sectional curvature is `K(X, Y) = -⟨[[X, Y], Y], X⟩ / |X ∧ Y|²`, which is
//! non-negative on compact models with this ad-invariant inner product.
//!
//! Quaternionic and octonionic factors have no model here; verification
//! reports them as unsupported.

mod cartan;
mod construct;
mod matrix;
mod subspace;
mod verify;

pub use cartan::{
    grassmannian_decomp, sphere_decomp, Ambient, BlockUnitary, CartanDecomp, ModelKind,
    Summand,
};
pub use construct::{construct_diagonal_cp, construct_grassmannian_product, GrassmannianProduct};
pub use matrix::{
    bracket, random_element, random_special_unitary, re_trace_inner, CMatrix, MatrixElement,
};
pub use subspace::{
    is_lie_triple_system, kahler_angle_of, sectional_curvature, LieTripleReport, SubspaceBasis,
};
pub use verify::{verify_classification_entry, RowReport, VerificationReport, VerifyOptions, VerifyStatus};

/// Sectional curvature of the unit `CP^1` model after calibration.
pub const CALIBRATION: f64 = 4.0;

/// Constructive checks (built subspaces, measured angles).
pub const TOL_CONSTRUCTIVE: f64 = 1e-9;
/// Structural residuals (bracket relations, invariance).
pub const TOL_STRUCTURAL: f64 = 1e-10;
/// Arithmetic identities (skew-Hermitian, orthonormality).
pub const TOL_ARITHMETIC: f64 = 1e-12;
/// Relative threshold below which Gram–Schmidt declares a basis degenerate.
pub const RANK_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("matrix is {0}×{1}, not square")]
    NotSquare(usize, usize),
    #[error("matrix is not skew-Hermitian (residual {0:e})")]
    NotSkewHermitian(f64),
    #[error("matrix is not traceless (residual {0:e})")]
    NotTraceless(f64),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
    #[error("basis is rank-deficient at vector {0}")]
    RankDeficient(usize),
    #[error("empty subspace")]
    EmptySubspace,
    #[error("vector not in p (residual {0:e})")]
    NotInP(f64),
    #[error("vector not in the subspace (residual {0:e})")]
    NotInSubspace(f64),
    #[error("basis not orthonormal (residual {0:e})")]
    NotOrthonormal(f64),
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("zero vector")]
    ZeroVector,
    #[error("ambient has no complex structure")]
    NoComplexStructure,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
