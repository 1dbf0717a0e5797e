//! Multivariate geometric means of symmetric positive definite matrices.
//!
//! The crate is organised in three layers:
//!
//! - [`kernel`]: dense real symmetric matrices, a cyclic Jacobi eigensolver,
//!   the spectral functional calculus `f(A) = U f(Λ) Uᵀ`, congruences and
//!   Löwner-order predicates.
//! - [`means`]: the two-variable weighted geometric mean, the perspective of a
//!   regular map, the inductive mean, its variant, the arithmetic and harmonic
//!   means and a fixed-point solver for the Karcher mean.
//! - [`harness`]: seeded generators of SPD tuples and randomized checks of the
//!   order, convexity and regularity properties the means satisfy.

pub mod error;
pub mod harness;
pub mod kernel;
pub mod means;

pub use error::{Error, Result};
pub use kernel::{
    congruence, exp_m, inv_sqrt, inverse, is_spd, log_m, loewner_leq, power, spd_tol,
    spectral_apply, sqrt, sym_eigen, EigenDecomposition, GeneralMatrix, SpdMatrix, SymMatrix,
};
pub use means::{
    arithmetic_mean, harmonic_mean, inductive_mean, karcher_mean, karcher_residual, mean,
    perspective, variant_mean, weighted_geometric_2, FnMap, InitPolicy, MeanKind, RegularMap,
    SolverConfig, SpdTuple,
};
