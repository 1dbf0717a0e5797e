use std::ops::Deref;

use crate::error::{Error, Result};
use crate::kernel::eigen::sym_eigen;
use crate::kernel::matrix::SymMatrix;

/// Default positive-definiteness floor: `1e-12 · (1 + max|entry|)`.
pub fn spd_tol(a: &SymMatrix) -> f64 {
    1e-12 * (1.0 + a.max_abs())
}

/// True iff the smallest eigenvalue of `a` exceeds `tol`.
pub fn is_spd(a: &SymMatrix, tol: f64) -> bool {
    sym_eigen(a).map(|e| e.min_value() > tol).unwrap_or(false)
}

/// A symmetric matrix certified positive definite.
///
/// Certification never repairs: a matrix whose smallest eigenvalue is at or
/// below the floor is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    base: SymMatrix,
    min_eig_witness: f64,
}

impl SpdMatrix {
    /// Certifies `base` against [`spd_tol`].
    pub fn new(base: SymMatrix) -> Result<Self> {
        let tol = spd_tol(&base);
        Self::with_tol(base, tol)
    }

    pub fn with_tol(base: SymMatrix, tol: f64) -> Result<Self> {
        let min_eig = sym_eigen(&base)?.min_value();
        if min_eig > tol {
            Ok(Self {
                base,
                min_eig_witness: min_eig,
            })
        } else {
            Err(Error::NotPositiveDefinite { min_eig, tol })
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(SymMatrix::from_rows(rows)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(SymMatrix::from_diagonal(diag)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            base: SymMatrix::identity(dim),
            min_eig_witness: 1.0,
        }
    }

    /// Certifies a matrix assembled as `U diag(values) Uᵀ` whose smallest
    /// spectral value is already known, avoiding a second eigensolve.
    pub(crate) fn from_spectrum(base: SymMatrix, min_value: f64) -> Result<Self> {
        let tol = spd_tol(&base);
        if min_value > tol {
            Ok(Self {
                base,
                min_eig_witness: min_value,
            })
        } else {
            Err(Error::NotPositiveDefinite {
                min_eig: min_value,
                tol,
            })
        }
    }

    /// Smallest eigenvalue found at certification.
    pub fn min_eig_witness(&self) -> f64 {
        self.min_eig_witness
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.base
    }

    pub fn into_sym(self) -> SymMatrix {
        self.base
    }

    /// `t · A` for `t > 0`.
    pub fn scale(&self, t: f64) -> Result<SpdMatrix> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive and finite, got {t}"
            )));
        }
        Self::from_spectrum(self.base.scale(t), self.min_eig_witness * t)
    }

    /// Determinant as the product of eigenvalues.
    pub fn det(&self) -> Result<f64> {
        Ok(self.log_det()?.exp())
    }

    /// `log det A = Σ log λᵢ`.
    pub fn log_det(&self) -> Result<f64> {
        Ok(sym_eigen(&self.base)?.values.iter().map(|v| v.ln()).sum())
    }
}

impl Deref for SpdMatrix {
    type Target = SymMatrix;

    fn deref(&self) -> &SymMatrix {
        &self.base
    }
}

impl AsRef<SymMatrix> for SpdMatrix {
    fn as_ref(&self) -> &SymMatrix {
        &self.base
    }
}

impl From<SpdMatrix> for SymMatrix {
    fn from(value: SpdMatrix) -> Self {
        value.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::matrix::GeneralMatrix;

    #[test]
    fn identity_is_spd() {
        assert!(is_spd(&SymMatrix::identity(3), 0.0));
    }

    #[test]
    fn indefinite_is_rejected() {
        let a = SymMatrix::from_diagonal(&[1.0, -1.0]).unwrap();
        assert!(!is_spd(&a, 0.0));
        assert!(matches!(
            SpdMatrix::new(a),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn gram_plus_shift_is_spd() {
        let c = GeneralMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![0.5, -1.0, 0.0],
        ])
        .unwrap();
        let tol = 1e-9;
        // CᵀC is singular here (rank 2); the 2·tol shift makes it strictly exceed tol.
        let shifted = c.gram().add(&SymMatrix::scaled_identity(3, 2.0 * tol)).unwrap();
        assert!(is_spd(&shifted, tol));
        assert!(!is_spd(&c.gram(), tol));
    }

    #[test]
    fn witness_is_smallest_eigenvalue() {
        let a = SpdMatrix::from_diagonal(&[3.0, 0.5, 2.0]).unwrap();
        assert_eq!(a.min_eig_witness(), 0.5);
        assert!((a.det().unwrap() - 3.0).abs() < 1e-14);
    }
}
