use crate::linalg::{ComplexMatrix, ComplexScalar, QuantumState};

use super::NetworkError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub name: String,
    pub dim: usize,
}

impl Leg {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            dim,
        }
    }
}

/// A box with named index lines. Entries are row-major over the legs in
/// declared order, so the last leg varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    legs: Vec<Leg>,
    data: Vec<ComplexScalar>,
}

impl Tensor {
    pub fn new(legs: Vec<Leg>, data: Vec<ComplexScalar>) -> Result<Self, NetworkError> {
        for (i, leg) in legs.iter().enumerate() {
            if leg.dim == 0 {
                return Err(NetworkError::ZeroDimLeg(leg.name.clone()));
            }
            if legs[..i].iter().any(|l| l.name == leg.name) {
                return Err(NetworkError::DuplicateLegName(leg.name.clone()));
            }
        }
        let expected: usize = legs.iter().map(|l| l.dim).product();
        if data.len() != expected {
            return Err(NetworkError::TensorSize {
                expected,
                actual: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NetworkError::NonFinite);
        }
        Ok(Self { legs, data })
    }

    pub(crate) fn from_parts(legs: Vec<Leg>, data: Vec<ComplexScalar>) -> Self {
        debug_assert_eq!(data.len(), legs.iter().map(|l| l.dim).product::<usize>());
        Self { legs, data }
    }

    /// Rank-0 tensor.
    pub fn scalar(value: ComplexScalar) -> Self {
        Self::from_parts(Vec::new(), vec![value])
    }

    /// A matrix viewed as a rank-2 tensor with legs `(out, in)`.
    pub fn from_matrix(m: &ComplexMatrix, out: &str, input: &str) -> Result<Self, NetworkError> {
        Self::new(
            vec![Leg::new(out, m.rows()), Leg::new(input, m.cols())],
            m.as_slice().to_vec(),
        )
    }

    pub fn from_state(v: &QuantumState, leg: &str) -> Self {
        Self::from_parts(vec![Leg::new(leg, v.dim())], v.amplitudes().to_vec())
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn leg(&self, name: &str) -> Option<&Leg> {
        self.legs.iter().find(|l| l.name == name)
    }

    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.dim).collect()
    }

    pub fn data(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn get(&self, index: &[usize]) -> ComplexScalar {
        assert_eq!(index.len(), self.legs.len(), "index rank mismatch");
        let offset = index.iter().zip(&self.legs).fold(0, |acc, (&i, leg)| {
            assert!(i < leg.dim, "index {i} out of range for leg {}", leg.name);
            acc * leg.dim + i
        });
        self.data[offset]
    }

    /// The single entry of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<ComplexScalar> {
        self.legs.is_empty().then(|| self.data[0])
    }

    pub fn to_matrix(&self) -> Option<ComplexMatrix> {
        match self.legs.as_slice() {
            [rows, cols] => ComplexMatrix::new(rows.dim, cols.dim, self.data.clone()).ok(),
            _ => None,
        }
    }

    pub fn to_state(&self) -> Option<QuantumState> {
        (self.rank() == 1).then(|| QuantumState::from_parts(self.data.clone()))
    }

    /// Entry-wise distance; `None` when the leg dimensions differ.
    pub fn max_abs_diff(&self, other: &Tensor) -> Option<f64> {
        (self.dims() == other.dims()).then(|| {
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }
}

/// Advances a row-major multi-index; returns false after the last one.
pub(crate) fn next_index(index: &mut [usize], dims: &[usize]) -> bool {
    for pos in (0..index.len()).rev() {
        index[pos] += 1;
        if index[pos] < dims[pos] {
            return true;
        }
        index[pos] = 0;
    }
    false
}
