use crate::error::{Error, Result};
use crate::kernel::eigen::sym_eigen;
use crate::kernel::matrix::{matmul, GeneralMatrix, SymMatrix};

/// The congruence `Cᵀ A C`, symmetrized.
pub fn congruence(c: &GeneralMatrix, a: &SymMatrix) -> Result<SymMatrix> {
    let n = a.dim();
    if c.dim() != n {
        return Err(Error::Shape {
            expected: n,
            got: c.dim(),
        });
    }
    let ac = matmul(a.as_slice(), c.as_slice(), n);
    let ct = c.transpose();
    SymMatrix::from_computed(n, matmul(ct.as_slice(), &ac, n))
}

/// Smallest eigenvalue of `b - a`.
pub fn min_eig_gap(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    Ok(sym_eigen(&b.sub(a)?)?.min_value())
}

/// Löwner order `A ≤ B` up to `tol`: the smallest eigenvalue of `B − A` is at least `−tol`.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<bool> {
    Ok(min_eig_gap(a, b)? >= -tol)
}
