//! Spectral functional calculus.

use crate::error::{Error, Result};
use crate::kernel::eigen::{sym_eigen, EigenDecomposition};
use crate::kernel::matrix::SymMatrix;
use crate::kernel::spd::SpdMatrix;

fn map_values<F: Fn(f64) -> f64>(e: &EigenDecomposition, f: F) -> Result<Vec<f64>> {
    e.values
        .iter()
        .map(|&v| {
            let fv = f(v);
            if fv.is_finite() {
                Ok(fv)
            } else {
                Err(Error::Domain { eigenvalue: v })
            }
        })
        .collect()
}

fn min_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `f(A) = U f(Λ) Uᵀ`.
///
/// Fails with [`Error::Domain`] when `f` is not finite at some eigenvalue.
pub fn spectral_apply<F: Fn(f64) -> f64>(a: &SymMatrix, f: F) -> Result<SymMatrix> {
    let e = sym_eigen(a)?;
    let mapped = map_values(&e, f)?;
    e.recompose(&mapped)
}

fn positive_spectral<F: Fn(f64) -> f64>(a: &SymMatrix, f: F) -> Result<SpdMatrix> {
    let e = sym_eigen(a)?;
    let mapped = map_values(&e, f)?;
    SpdMatrix::from_spectrum(e.recompose(&mapped)?, min_of(&mapped))
}

/// `A^p` for real `p`.
pub fn power(a: &SpdMatrix, p: f64) -> Result<SpdMatrix> {
    if p == 1.0 {
        return Ok(a.clone());
    }
    positive_spectral(a, |t| t.powf(p))
}

pub fn sqrt(a: &SpdMatrix) -> Result<SpdMatrix> {
    positive_spectral(a, f64::sqrt)
}

pub fn inv_sqrt(a: &SpdMatrix) -> Result<SpdMatrix> {
    positive_spectral(a, |t| 1.0 / t.sqrt())
}

pub fn inverse(a: &SpdMatrix) -> Result<SpdMatrix> {
    positive_spectral(a, |t| 1.0 / t)
}

fn roots(e: &EigenDecomposition) -> Result<(SpdMatrix, SpdMatrix)> {
    let roots = map_values(e, f64::sqrt)?;
    let inv_roots = map_values(e, |t| 1.0 / t.sqrt())?;
    let root = SpdMatrix::from_spectrum(e.recompose(&roots)?, min_of(&roots))?;
    let inv_root = SpdMatrix::from_spectrum(e.recompose(&inv_roots)?, min_of(&inv_roots))?;
    Ok((root, inv_root))
}

/// `(A^{1/2}, A^{-1/2})` from a single eigendecomposition.
pub fn sqrt_pair(a: &SpdMatrix) -> Result<(SpdMatrix, SpdMatrix)> {
    roots(&sym_eigen(a)?)
}

/// Certifies `a` and returns `(A, A^{1/2}, A^{-1/2})` from one eigendecomposition.
pub(crate) fn certify_with_roots(a: SymMatrix) -> Result<(SpdMatrix, SpdMatrix, SpdMatrix)> {
    let e = sym_eigen(&a)?;
    let (root, inv_root) = roots(&e)?;
    Ok((SpdMatrix::from_spectrum(a, e.min_value())?, root, inv_root))
}

/// Principal matrix logarithm. Any non-positive eigenvalue is a domain error.
pub fn log_m(a: &SymMatrix) -> Result<SymMatrix> {
    spectral_apply(a, |t| if t > 0.0 { t.ln() } else { f64::NAN })
}

/// Matrix exponential of a symmetric matrix; always positive definite.
pub fn exp_m(a: &SymMatrix) -> Result<SpdMatrix> {
    positive_spectral(a, f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &SymMatrix, b: &SymMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    fn sample() -> SpdMatrix {
        SpdMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()
    }

    #[test]
    fn sqrt_of_diagonal() {
        let a = SpdMatrix::from_diagonal(&[1.0, 4.0]).unwrap();
        let r = spectral_apply(&a, f64::sqrt).unwrap();
        assert!(close(&r, &SymMatrix::from_diagonal(&[1.0, 2.0]).unwrap(), 1e-15));
    }

    #[test]
    fn identity_function_returns_input() {
        let a = sample();
        assert!(close(&spectral_apply(&a, |t| t).unwrap(), &a, 1e-14));
    }

    #[test]
    fn sqrt_of_two_by_two() {
        // eigenpairs (1, (1,-1)/√2), (3, (1,1)/√2):
        // sqrt = ½[[√3+1, √3-1], [√3-1, √3+1]]
        let r3 = 3f64.sqrt();
        let expected =
            SymMatrix::from_rows(&[vec![(r3 + 1.0) / 2.0, (r3 - 1.0) / 2.0], vec![(r3 - 1.0) / 2.0, (r3 + 1.0) / 2.0]])
                .unwrap();
        let r = spectral_apply(&sample(), f64::sqrt).unwrap();
        assert!(close(&r, &expected, 1e-14));
        assert!((r.get(0, 0) - 1.36603).abs() < 1e-4);
        assert!((r.get(0, 1) - 0.36603).abs() < 1e-4);
        assert!(close(&sqrt(&sample()).unwrap(), &expected, 1e-14));
    }

    #[test]
    fn named_powers() {
        let a = SpdMatrix::from_diagonal(&[2.0, 8.0]).unwrap();
        let half = power(&a, 0.5).unwrap();
        let expected = SymMatrix::from_diagonal(&[2f64.sqrt(), 2.0 * 2f64.sqrt()]).unwrap();
        assert!(close(&half, &expected, 1e-15));
        let inv = inverse(&a).unwrap();
        assert!(close(&inv, &SymMatrix::from_diagonal(&[0.5, 0.125]).unwrap(), 1e-16));
        let (root, inv_root) = sqrt_pair(&a).unwrap();
        assert!(close(&root, &expected, 1e-15));
        assert!(close(&inv_root, &inv_sqrt(&a).unwrap(), 1e-16));
    }

    #[test]
    fn log_of_identity_is_zero() {
        let l = log_m(&SymMatrix::identity(3)).unwrap();
        assert_eq!(l.max_abs(), 0.0);
        let e = exp_m(&SymMatrix::zeros(3)).unwrap();
        assert!(close(&e, &SymMatrix::identity(3), 0.0));
    }

    #[test]
    fn log_rejects_indefinite_input() {
        let a = SymMatrix::from_diagonal(&[1.0, -1.0]).unwrap();
        assert!(matches!(log_m(&a), Err(Error::Domain { .. })));
        let z = SymMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(log_m(&z), Err(Error::Domain { .. })));
    }

    #[test]
    fn overflow_is_a_domain_error() {
        let a = SpdMatrix::from_diagonal(&[1e300]).unwrap();
        assert!(matches!(power(&a, 3.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn functions_preserve_eigenvectors() {
        let a = sample();
        let e = sym_eigen(&a).unwrap();
        let fa = spectral_apply(&a, |t| t.ln() + 2.0 * t).unwrap();
        for (k, &lambda) in e.values.iter().enumerate() {
            let fl = lambda.ln() + 2.0 * lambda;
            for i in 0..2 {
                let fav: f64 = (0..2).map(|j| fa.get(i, j) * e.vectors.get(j, k)).sum();
                assert!((fav - fl * e.vectors.get(i, k)).abs() < 1e-10);
            }
        }
    }
}
