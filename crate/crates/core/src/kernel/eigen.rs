//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use crate::error::{Error, Result};
use crate::kernel::matrix::{GeneralMatrix, SymMatrix};

pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to ‖A‖_F.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Orthogonality and reconstruction tolerance of a decomposition.
pub const ORTHO_TOL: f64 = 1e-10;
pub const RECON_TOL: f64 = 1e-10;

/// `A = V diag(values) Vᵀ` with orthonormal eigenvector columns and ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub vectors: GeneralMatrix,
    pub values: Vec<f64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `V diag(mapped) Vᵀ`, symmetrized.
    pub(crate) fn recompose(&self, mapped: &[f64]) -> Result<SymMatrix> {
        let n = self.dim();
        let v = self.vectors.as_slice();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += v[i * n + k] * mapped[k] * v[j * n + k];
                }
                out[i * n + j] = acc;
                out[j * n + i] = acc;
            }
        }
        SymMatrix::from_computed(n, out)
    }

    /// `‖VᵀV − I‖_max`.
    pub fn orthogonality_error(&self) -> f64 {
        let gram = self.vectors.gram();
        gram.sub(&SymMatrix::identity(self.dim()))
            .map(|d| d.max_abs())
            .unwrap_or(f64::INFINITY)
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    acc.sqrt()
}

/// Eigendecomposition by cyclic Jacobi rotations.
///
/// One cyclic sweep over all `(p, q)` pairs in row order. With `relative`,
/// entries already negligible against their diagonal pair are left alone.
fn sweep(m: &mut [f64], v: &mut [f64], n: usize, relative: bool) {
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = m[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let app = m[p * n + p];
            let aqq = m[q * n + q];
            if relative && apq.abs() <= f64::EPSILON * (app * aqq).abs().sqrt() {
                continue;
            }
            // Rutishauser's stable rotation: t = tan θ with |θ| ≤ π/4.
            let theta = (aqq - app) / (2.0 * apq);
            let t = if theta.is_infinite() {
                0.0
            } else {
                theta.signum() / (theta.abs() + theta.hypot(1.0))
            };
            if t == 0.0 {
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                continue;
            }
            let c = 1.0 / t.hypot(1.0);
            let s = t * c;

            for k in 0..n {
                let mkp = m[k * n + p];
                let mkq = m[k * n + q];
                m[k * n + p] = c * mkp - s * mkq;
                m[k * n + q] = s * mkp + c * mkq;
            }
            for k in 0..n {
                let mpk = m[p * n + k];
                let mqk = m[q * n + k];
                m[p * n + k] = c * mpk - s * mqk;
                m[q * n + k] = s * mpk + c * mqk;
            }
            m[p * n + p] = app - t * apq;
            m[q * n + q] = aqq + t * apq;
            m[p * n + q] = 0.0;
            m[q * n + p] = 0.0;

            for k in 0..n {
                let vkp = v[k * n + p];
                let vkq = v[k * n + q];
                v[k * n + p] = c * vkp - s * vkq;
                v[k * n + q] = s * vkp + c * vkq;
            }
        }
    }
}

/// Eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm drops below `1e-13 · ‖A‖_F`,
/// at most 100 sweeps, then runs one polishing sweep. Convergence is
/// quadratic, so the extra sweep brings the off-diagonal part down to rounding
/// level and gives small eigenvalues of ill-conditioned matrices (and the
/// functions built on them, such as `A^{-1/2}`) their full relative accuracy.
pub fn sym_eigen(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.as_slice().to_vec();
    let mut v = GeneralMatrix::identity(n).as_slice().to_vec();
    let threshold = OFF_DIAGONAL_TOL * a.frobenius();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m, n) <= threshold {
            converged = true;
            sweep(&mut m, &mut v, n, true);
            break;
        }
        sweep(&mut m, &mut v, n, false);
    }
    if !converged {
        let off_norm = off_diagonal_norm(&m, n);
        if off_norm > threshold {
            return Err(Error::EigenNoConvergence {
                sweeps: MAX_SWEEPS,
                off_norm,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = v[row * n + old_col];
        }
    }
    Ok(EigenDecomposition {
        vectors: GeneralMatrix::new(n, vectors)?,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruction_error(a: &SymMatrix, e: &EigenDecomposition) -> f64 {
        e.recompose(&e.values).unwrap().max_abs_diff(a).unwrap()
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = sym_eigen(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        assert!(e.orthogonality_error() <= ORTHO_TOL);
    }

    #[test]
    fn diagonal_keeps_coordinate_axes() {
        let e = sym_eigen(&SymMatrix::from_diagonal(&[4.0, 1.0]).unwrap()).unwrap();
        assert_eq!(e.values, vec![1.0, 4.0]);
        assert_eq!(e.vectors.get(1, 0).abs(), 1.0);
        assert_eq!(e.vectors.get(0, 1).abs(), 1.0);
    }

    #[test]
    fn two_by_two_matches_characteristic_polynomial() {
        // det([[2-λ,1],[1,2-λ]]) = (2-λ)² - 1 = 0  ⇒  λ ∈ {1, 3}
        let a = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = sym_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // columns are ±(1,-1)/√2 and ±(1,1)/√2
        assert!((e.vectors.get(0, 0).abs() - h).abs() < 1e-14);
        assert!((e.vectors.get(0, 0) + e.vectors.get(1, 0)).abs() < 1e-14);
        assert!((e.vectors.get(0, 1) - e.vectors.get(1, 1)).abs() < 1e-14);
        assert!(reconstruction_error(&a, &e) < 1e-14);
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let e = sym_eigen(&SymMatrix::zeros(4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
        let e = sym_eigen(&SymMatrix::from_diagonal(&[-2.5]).unwrap()).unwrap();
        assert_eq!(e.values, vec![-2.5]);
    }

    #[test]
    fn indefinite_dense_matrix() {
        let a = SymMatrix::from_rows(&[
            vec![4.0, -2.0, 1.0, 0.5],
            vec![-2.0, -3.0, 0.25, 2.0],
            vec![1.0, 0.25, 0.0, -1.0],
            vec![0.5, 2.0, -1.0, 6.0],
        ])
        .unwrap();
        let e = sym_eigen(&a).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(e.orthogonality_error() <= ORTHO_TOL);
        assert!(reconstruction_error(&a, &e) <= RECON_TOL * a.max_abs());
        assert!((e.values.iter().sum::<f64>() - a.trace()).abs() < 1e-12);
    }
}
