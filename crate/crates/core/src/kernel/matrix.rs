//! Dense square matrices, row-major.

use std::fmt;

use crate::error::{Error, Result};

/// Asymmetry tolerated on construction, relative to the largest entry.
pub const SYMMETRY_TOL: f64 = 1e-12;

fn check_len(dim: usize, data: &[f64]) -> Result<()> {
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    if data.len() != dim * dim {
        return Err(Error::DataLength {
            expected: dim * dim,
            got: data.len(),
        });
    }
    Ok(())
}

fn check_finite(dim: usize, data: &[f64]) -> Result<()> {
    match data.iter().position(|x| !x.is_finite()) {
        Some(idx) => Err(Error::NonFinite {
            row: idx / dim,
            col: idx % dim,
        }),
        None => Ok(()),
    }
}

fn rows_to_flat(rows: &[Vec<f64>]) -> Result<(usize, Vec<f64>)> {
    let dim = rows.len();
    let mut data = Vec::with_capacity(dim * dim);
    for row in rows {
        if row.len() != dim {
            return Err(Error::DataLength {
                expected: dim,
                got: row.len(),
            });
        }
        data.extend_from_slice(row);
    }
    Ok((dim, data))
}

pub(crate) fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            let brow = &b[k * n..(k + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    out
}

fn transpose_flat(a: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}

fn max_abs(data: &[f64]) -> f64 {
    data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// A dense real symmetric matrix with finite entries.
///
/// Entries are stored row-major and are exactly symmetric: `get(i, j) == get(j, i)`.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds a symmetric matrix from row-major data.
    ///
    /// Input whose asymmetry is within `1e-12 · max|entry|` is symmetrized as
    /// `(M + Mᵀ)/2`; anything larger is rejected.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_len(dim, &data)?;
        check_finite(dim, &data)?;
        let bound = SYMMETRY_TOL * max_abs(&data);
        let mut asymmetry = 0.0_f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                asymmetry = asymmetry.max((data[i * dim + j] - data[j * dim + i]).abs());
            }
        }
        if asymmetry > bound {
            return Err(Error::Asymmetric { asymmetry, bound });
        }
        Ok(Self::symmetrize(dim, data))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (dim, data) = rows_to_flat(rows)?;
        Self::new(dim, data)
    }

    /// Symmetrizes the output of an internal computation. Only finiteness is checked.
    pub(crate) fn from_computed(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_finite(dim, &data)?;
        Ok(Self::symmetrize(dim, data))
    }

    fn symmetrize(dim: usize, mut data: Vec<f64>) -> Self {
        for i in 0..dim {
            for j in (i + 1)..dim {
                let avg = 0.5 * (data[i * dim + j] + data[j * dim + i]);
                data[i * dim + j] = avg;
                data[j * dim + i] = avg;
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, value: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = value;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = vec![0.0; dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            data[i * dim + i] = d;
        }
        check_finite(dim, &data)?;
        Ok(Self { dim, data })
    }

    /// Block-diagonal matrix `upper ⊕ lower`.
    pub fn block_diag(upper: &SymMatrix, lower: &SymMatrix) -> SymMatrix {
        let (p, q) = (upper.dim, lower.dim);
        let n = p + q;
        let mut data = vec![0.0; n * n];
        for i in 0..p {
            data[i * n..i * n + p].copy_from_slice(&upper.data[i * p..(i + 1) * p]);
        }
        for i in 0..q {
            let row = (p + i) * n + p;
            data[row..row + q].copy_from_slice(&lower.data[i * q..(i + 1) * q]);
        }
        SymMatrix { dim: n, data }
    }

    /// The principal sub-block on rows/columns `start..start + len`.
    pub fn principal_block(&self, start: usize, len: usize) -> Result<SymMatrix> {
        if len == 0 || start + len > self.dim {
            return Err(Error::InvalidArgument(format!(
                "block {start}..{} outside dimension {}",
                start + len,
                self.dim
            )));
        }
        let mut data = Vec::with_capacity(len * len);
        for i in start..start + len {
            data.extend_from_slice(&self.data[i * self.dim + start..i * self.dim + start + len]);
        }
        Ok(SymMatrix { dim: len, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn check_same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Shape {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(SymMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(SymMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, factor: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())))
    }

    /// The (generally non-symmetric) product `self · other`.
    pub fn matmul(&self, other: &SymMatrix) -> Result<GeneralMatrix> {
        self.check_same_dim(other)?;
        Ok(GeneralMatrix {
            dim: self.dim,
            data: matmul(&self.data, &other.data, self.dim),
        })
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix {
            dim: self.dim,
            data: self.data.clone(),
        }
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix")
            .field("dim", &self.dim)
            .field("rows", &self.to_rows())
            .finish()
    }
}

/// A dense real square matrix, not necessarily symmetric.
#[derive(Clone, PartialEq)]
pub struct GeneralMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl GeneralMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_len(dim, &data)?;
        check_finite(dim, &data)?;
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let (dim, data) = rows_to_flat(rows)?;
        Self::new(dim, data)
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix::identity(dim).to_general()
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Ok(SymMatrix::from_diagonal(diag)?.to_general())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    pub fn transpose(&self) -> GeneralMatrix {
        GeneralMatrix {
            dim: self.dim,
            data: transpose_flat(&self.data, self.dim),
        }
    }

    pub fn matmul(&self, other: &GeneralMatrix) -> Result<GeneralMatrix> {
        if self.dim != other.dim {
            return Err(Error::Shape {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(GeneralMatrix {
            dim: self.dim,
            data: matmul(&self.data, &other.data, self.dim),
        })
    }

    pub fn scale(&self, factor: f64) -> GeneralMatrix {
        GeneralMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self - otherᵀ`; used for commutators `AB - BA = AB - (AB)ᵀ` of symmetric pairs.
    pub fn minus_transpose(&self) -> GeneralMatrix {
        let t = transpose_flat(&self.data, self.dim);
        GeneralMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&t).map(|(a, b)| a - b).collect(),
        }
    }

    /// The Gram matrix `selfᵀ · self`.
    pub fn gram(&self) -> SymMatrix {
        let t = transpose_flat(&self.data, self.dim);
        SymMatrix::symmetrize(self.dim, matmul(&t, &self.data, self.dim))
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                .unwrap_or(col);
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for i in (col + 1)..n {
                let factor = a[i * n + col] / p;
                if factor != 0.0 {
                    for j in col..n {
                        a[i * n + j] -= factor * a[col * n + j];
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for GeneralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralMatrix")
            .field("dim", &self.dim)
            .field("rows", &self.to_rows())
            .finish()
    }
}

impl From<&SymMatrix> for GeneralMatrix {
    fn from(value: &SymMatrix) -> Self {
        value.to_general()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizes_round_off() {
        let m = SymMatrix::new(2, vec![1.0, 0.5, 0.5 + 1e-14, 2.0]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let err = SymMatrix::new(2, vec![1.0, 0.5, 0.6, 2.0]).unwrap_err();
        assert!(matches!(err, Error::Asymmetric { .. }));
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        assert!(matches!(
            SymMatrix::new(2, vec![1.0, f64::NAN, f64::NAN, 1.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            SymMatrix::new(2, vec![1.0; 3]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(SymMatrix::new(0, vec![]), Err(Error::EmptyMatrix)));
        assert!(matches!(
            SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0]]),
            Err(Error::DataLength { .. })
        ));
    }

    #[test]
    fn block_diag_and_principal_block() {
        let a = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]).unwrap();
        let b = SymMatrix::from_diagonal(&[7.0]).unwrap();
        let c = SymMatrix::block_diag(&a, &b);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.get(1, 1), 5.0);
        assert_eq!(c.get(2, 2), 7.0);
        assert_eq!(c.get(0, 2), 0.0);
        assert_eq!(c.principal_block(0, 2).unwrap(), a);
        assert_eq!(c.principal_block(2, 1).unwrap(), b);
        assert!(c.principal_block(2, 2).is_err());
    }

    #[test]
    fn determinant_by_lu() {
        let m = GeneralMatrix::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![3.0, 0.0, 1.0],
        ])
        .unwrap();
        // cofactor expansion along the first row: 0 - 2·(1 - 0) + 1·(0 - 3) = -5
        assert!((m.det() + 5.0).abs() < 1e-14);
        assert_eq!(GeneralMatrix::from_diagonal(&[2.0, 0.0]).unwrap().det(), 0.0);
    }

    #[test]
    fn commutator_of_diagonals_vanishes() {
        let a = SymMatrix::from_diagonal(&[1.0, 2.0]).unwrap();
        let b = SymMatrix::from_diagonal(&[3.0, 4.0]).unwrap();
        assert_eq!(a.matmul(&b).unwrap().minus_transpose().max_abs(), 0.0);
    }
}
