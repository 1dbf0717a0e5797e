use crate::error::Result;
use crate::kernel::{inverse, SpdMatrix, SymMatrix};
use crate::means::tuple::SpdTuple;

fn average<'a, I>(items: I, dim: usize, k: usize) -> Result<SymMatrix>
where
    I: Iterator<Item = &'a SymMatrix>,
{
    let mut sum = SymMatrix::zeros(dim);
    for item in items {
        sum = sum.add(item)?;
    }
    Ok(sum.scale(1.0 / k as f64))
}

/// `(A₁ + ⋯ + A_k) / k`.
pub fn arithmetic_mean(tuple: &SpdTuple) -> Result<SpdMatrix> {
    if tuple.len() == 1 {
        return Ok(tuple.items()[0].clone());
    }
    SpdMatrix::new(average(
        tuple.items().iter().map(SpdMatrix::as_sym),
        tuple.dim(),
        tuple.len(),
    )?)
}

/// `k (A₁⁻¹ + ⋯ + A_k⁻¹)⁻¹`.
pub fn harmonic_mean(tuple: &SpdTuple) -> Result<SpdMatrix> {
    if tuple.len() == 1 {
        return Ok(tuple.items()[0].clone());
    }
    let inverses = tuple
        .items()
        .iter()
        .map(inverse)
        .collect::<Result<Vec<_>>>()?;
    let avg = SpdMatrix::new(average(
        inverses.iter().map(SpdMatrix::as_sym),
        tuple.dim(),
        tuple.len(),
    )?)?;
    inverse(&avg)
}
