//! The two-variable weighted mean and the inductive and variant multivariate means.

use crate::error::{Error, Result};
use crate::kernel::{power, sqrt_pair, SpdMatrix};
use crate::means::perspective::sandwich;
use crate::means::tuple::SpdTuple;

/// `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` for `t ∈ [0, 1]`.
pub fn weighted_geometric_2(a: &SpdMatrix, b: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "geodesic parameter must lie in [0, 1], got {t}"
        )));
    }
    if a.dim() != b.dim() {
        return Err(Error::Shape {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let (root, inv_root) = sqrt_pair(a)?;
    let relative = sandwich(&inv_root, b)?;
    let moved = power(&relative, t)?;
    sandwich(&root, &moved)
}

/// Shared recursion skeleton: with `B` the last item,
/// `M_{k+1}(A₁, …, A_k, B) = B^{1/2} step(B^{-1/2} A₁ B^{-1/2}, …) B^{1/2}`.
fn reduce_by_last<F>(items: &[SpdMatrix], inner: F) -> Result<SpdMatrix>
where
    F: FnOnce(Vec<SpdMatrix>, f64) -> Result<SpdMatrix>,
{
    let (last, leading) = items.split_last().ok_or(Error::EmptyTuple)?;
    let (root, inv_root) = sqrt_pair(last)?;
    let reduced = leading
        .iter()
        .map(|a| sandwich(&inv_root, a))
        .collect::<Result<Vec<_>>>()?;
    let k = leading.len() as f64;
    let core = inner(reduced, k / (k + 1.0))?;
    sandwich(&root, &core)
}

fn inductive_items(items: &[SpdMatrix]) -> Result<SpdMatrix> {
    if items.len() == 1 {
        return Ok(items[0].clone());
    }
    reduce_by_last(items, |reduced, exponent| {
        power(&inductive_items(&reduced)?, exponent)
    })
}

fn variant_items(items: &[SpdMatrix]) -> Result<SpdMatrix> {
    if items.len() == 1 {
        return Ok(items[0].clone());
    }
    reduce_by_last(items, |reduced, exponent| {
        let powered = reduced
            .iter()
            .map(|a| power(a, exponent))
            .collect::<Result<Vec<_>>>()?;
        variant_items(&powered)
    })
}

/// The inductive geometric mean `G_k`.
///
/// `G₁(A) = A` and
/// `G_{k+1}(A₁, …, A_{k+1}) = A_{k+1}^{1/2} G_k(A_{k+1}^{-1/2} Aᵢ A_{k+1}^{-1/2})^{k/(k+1)} A_{k+1}^{1/2}`.
pub fn inductive_mean(tuple: &SpdTuple) -> Result<SpdMatrix> {
    inductive_items(tuple.items())
}

/// The variant geometric mean `H_k`.
///
/// `H₁(A) = A` and
/// `H_{k+1}(A₁, …, A_{k+1}) = A_{k+1}^{1/2} H_k((A_{k+1}^{-1/2} Aᵢ A_{k+1}^{-1/2})^{k/(k+1)}) A_{k+1}^{1/2}`.
pub fn variant_mean(tuple: &SpdTuple) -> Result<SpdMatrix> {
    variant_items(tuple.items())
}
