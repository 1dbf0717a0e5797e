//! Dense symmetric linear algebra: eigendecomposition, functional calculus,
//! congruences and the Löwner order.

mod eigen;
mod funcs;
mod matrix;
mod order;
mod spd;

pub use eigen::{sym_eigen, EigenDecomposition, MAX_SWEEPS, OFF_DIAGONAL_TOL, ORTHO_TOL, RECON_TOL};
pub(crate) use funcs::certify_with_roots;
pub use funcs::{exp_m, inv_sqrt, inverse, log_m, power, spectral_apply, sqrt, sqrt_pair};
pub use matrix::{GeneralMatrix, SymMatrix, SYMMETRY_TOL};
pub use order::{congruence, loewner_leq, min_eig_gap};
pub use spd::{is_spd, spd_tol, SpdMatrix};
