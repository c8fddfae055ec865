use super::{check_finite, ComplexScalar, LinalgError, NORM_TOL};

/// A ket: a finite complex vector. Normalization is never implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<ComplexScalar>,
}

impl QuantumState {
    pub fn new(amplitudes: Vec<ComplexScalar>) -> Result<Self, LinalgError> {
        if amplitudes.is_empty() {
            return Err(LinalgError::Empty);
        }
        check_finite(&amplitudes)?;
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_parts(amplitudes: Vec<ComplexScalar>) -> Self {
        debug_assert!(!amplitudes.is_empty());
        Self { amplitudes }
    }

    pub fn from_real(values: &[f64]) -> Result<Self, LinalgError> {
        Self::new(values.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    /// The computational basis ket `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::Empty);
        }
        if index >= dim {
            return Err(LinalgError::BasisIndex { index, dim });
        }
        let mut amplitudes = vec![ComplexScalar::new(0.0, 0.0); dim];
        amplitudes[index] = ComplexScalar::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    pub fn get(&self, i: usize) -> ComplexScalar {
        self.amplitudes[i]
    }

    /// `sum_i |a_i|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<QuantumState, LinalgError> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(Self::from_parts(
            self.amplitudes.iter().map(|z| z / n).collect(),
        ))
    }

    pub fn conj(&self) -> QuantumState {
        Self::from_parts(self.amplitudes.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, factor: ComplexScalar) -> QuantumState {
        Self::from_parts(self.amplitudes.iter().map(|z| z * factor).collect())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Result<ComplexScalar, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::Shape {
                op: "inner_product",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|self> (x) |other>`, with `self` as the outer factor.
    pub fn kron(&self, other: &QuantumState) -> QuantumState {
        Self::from_parts(
            self.amplitudes
                .iter()
                .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &QuantumState) -> Result<f64, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::Shape {
                op: "max_abs_diff",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &QuantumState, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_bounds() {
        assert_eq!(
            QuantumState::basis(2, 2),
            Err(LinalgError::BasisIndex { index: 2, dim: 2 })
        );
        assert_eq!(QuantumState::basis(0, 0), Err(LinalgError::Empty));
    }

    #[test]
    fn normalization_is_explicit() {
        let v = QuantumState::from_real(&[3.0, 4.0]).unwrap();
        assert!(!v.is_normalized());
        let n = v.normalized().unwrap();
        assert!(n.is_normalized());
        assert!((n.get(0).re - 0.6).abs() < 1e-15);
        let zero = QuantumState::from_real(&[0.0, 0.0]).unwrap();
        assert_eq!(zero.normalized(), Err(LinalgError::ZeroVector));
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            QuantumState::from_real(&[1.0, f64::INFINITY]),
            Err(LinalgError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn kron_orders_outer_factor_first() {
        let one = QuantumState::basis(2, 1).unwrap();
        let zero = QuantumState::basis(3, 0).unwrap();
        assert_eq!(one.kron(&zero), QuantumState::basis(6, 3).unwrap());
    }
}
