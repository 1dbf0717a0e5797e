//! Multivariate means of SPD tuples.

mod classic;
mod geometric;
mod karcher;
mod perspective;
mod tuple;

pub use classic::{arithmetic_mean, harmonic_mean};
pub use geometric::{inductive_mean, variant_mean, weighted_geometric_2};
pub use karcher::{karcher_mean, karcher_residual, MAX_HALVINGS};
pub use perspective::{perspective, FnMap, RegularMap};
pub use tuple::{InitPolicy, MeanKind, SolverConfig, SpdTuple};

use crate::error::Result;
use crate::kernel::SpdMatrix;

/// Computes the mean of the given kind. `cfg` only affects [`MeanKind::Karcher`].
pub fn mean(kind: MeanKind, tuple: &SpdTuple, cfg: &SolverConfig) -> Result<SpdMatrix> {
    if tuple.len() == 1 {
        return Ok(tuple.items()[0].clone());
    }
    match kind {
        MeanKind::Inductive => inductive_mean(tuple),
        MeanKind::Variant => variant_mean(tuple),
        MeanKind::Karcher => karcher_mean(tuple, cfg),
        MeanKind::Arithmetic => arithmetic_mean(tuple),
        MeanKind::Harmonic => harmonic_mean(tuple),
    }
}
