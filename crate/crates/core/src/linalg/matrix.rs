use std::fmt;

use super::{check_finite, ComplexScalar, LinalgError, QuantumState};

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexScalar>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols)).finish()
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::Length {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for results of operations on valid matrices.
    pub(crate) fn from_parts(rows: usize, cols: usize, data: Vec<ComplexScalar>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(LinalgError::Length {
                expected: ncols,
                actual: bad.len(),
            });
        }
        Self::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self::from_parts(rows, cols, vec![ComplexScalar::new(0.0, 0.0); rows * cols])
    }

    /// The Kronecker delta as a `d x d` matrix.
    pub fn identity(d: usize) -> Self {
        Self::diagonal(&vec![ComplexScalar::new(1.0, 0.0); d])
    }

    pub fn diagonal(entries: &[ComplexScalar]) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(d, d);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * d + i] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.data
    }

    /// Entry at row `i`, column `j`. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[ComplexScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn square_dim(&self, op: &'static str) -> Result<usize, LinalgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `(self * other)_ij = sum_k self_ik other_kj`.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ComplexScalar::new(0.0, 0.0);
                for k in 0..self.cols {
                    acc += self.data[i * self.cols + k] * other.data[k * other.cols + j];
                }
                data.push(acc);
            }
        }
        Ok(Self::from_parts(self.rows, other.cols, data))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].conj());
            }
        }
        Self::from_parts(self.cols, self.rows, data)
    }

    pub fn trace(&self) -> Result<ComplexScalar, LinalgError> {
        let d = self.square_dim("trace")?;
        Ok((0..d).map(|i| self.data[i * d + i]).sum())
    }

    /// Kronecker product; `self` indexes the outer blocks.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![ComplexScalar::new(0.0, 0.0); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a * other.get(k, l);
                    }
                }
            }
        }
        Self::from_parts(rows, cols, data)
    }

    pub fn scale(&self, factor: ComplexScalar) -> ComplexMatrix {
        Self::from_parts(
            self.rows,
            self.cols,
            self.data.iter().map(|z| z * factor).collect(),
        )
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(ComplexScalar, ComplexScalar) -> ComplexScalar,
    ) -> Result<ComplexMatrix, LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self::from_parts(self.rows, self.cols, data))
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64, LinalgError> {
        Ok(self
            .sub(other)?
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    }

    /// Tolerance-based equality; shape mismatch compares unequal.
    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// Max-abs entry of `U^dagger U - I`.
    pub fn unitarity_deviation(&self) -> Result<f64, LinalgError> {
        let d = self.square_dim("is_unitary")?;
        self.dagger().matmul(self)?.max_abs_diff(&Self::identity(d))
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool, LinalgError> {
        Ok(self.unitarity_deviation()? <= tol)
    }

    /// Matrix-vector product `M|v>`.
    pub fn apply(&self, v: &QuantumState) -> Result<QuantumState, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::Shape {
                op: "apply",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        let out = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(m, a)| m * a)
                    .sum()
            })
            .collect();
        Ok(QuantumState::from_parts(out))
    }
}
