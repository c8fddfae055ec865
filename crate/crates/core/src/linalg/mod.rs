//! Dense complex linear algebra for small dimensions.
//!
//! Everything here works on `f64` amplitudes stored row-major. Equality is
//! always tolerance-based; see [`ComplexMatrix::max_abs_diff`] and
//! [`QuantumState::max_abs_diff`].

mod matrix;
pub mod random;
mod state;

pub use matrix::ComplexMatrix;
pub use state::QuantumState;

use thiserror::Error;

/// A single complex amplitude.
pub type ComplexScalar = num_complex::Complex64;

/// Tolerance used when deciding whether a state counts as normalized.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("{op}: shape mismatch between {left:?} and {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("expected {expected} entries, got {actual}")]
    Length { expected: usize, actual: usize },
    #[error("dimensions must be positive")]
    Empty,
    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndex { index: usize, dim: usize },
    #[error("cannot normalize the zero vector")]
    ZeroVector,
}

pub(crate) fn check_finite(values: &[ComplexScalar]) -> Result<(), LinalgError> {
    match values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(index) => Err(LinalgError::NonFinite { index }),
        None => Ok(()),
    }
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<ComplexScalar, LinalgError> {
    a.inner(b)
}

/// The outer product `|a><b|`. Rectangular when the dimensions differ.
pub fn ket_bra(a: &QuantumState, b: &QuantumState) -> ComplexMatrix {
    let data = a
        .amplitudes()
        .iter()
        .flat_map(|ai| b.amplitudes().iter().map(move |bj| ai * bj.conj()))
        .collect();
    ComplexMatrix::from_parts(a.dim(), b.dim(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_orthonormal_basis, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn basis_inner_products() {
        let e0 = QuantumState::basis(2, 0).unwrap();
        let e1 = QuantumState::basis(2, 1).unwrap();
        assert_eq!(inner_product(&e0, &e0).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_state(&mut rng, 4);
            let b = random_state(&mut rng, 4);
            let ab = inner_product(&a, &b).unwrap();
            let ba = inner_product(&b, &a).unwrap();
            assert!((ab - ba.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = QuantumState::basis(2, 0).unwrap();
        let b = QuantumState::basis(3, 0).unwrap();
        assert!(matches!(
            inner_product(&a, &b),
            Err(LinalgError::Shape { .. })
        ));
    }

    #[test]
    fn ket_bra_of_basis_vector() {
        let e0 = QuantumState::basis(2, 0).unwrap();
        let p = ket_bra(&e0, &e0);
        let expected = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn ket_bra_squares_to_overlap_times_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_state(&mut rng, 3);
            let b = random_state(&mut rng, 3);
            let p = ket_bra(&a, &b);
            let overlap = inner_product(&b, &a).unwrap();
            let lhs = p.matmul(&p).unwrap();
            let rhs = p.scale(overlap);
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn rectangular_ket_bra() {
        let a = QuantumState::basis(3, 2).unwrap();
        let b = QuantumState::basis(2, 0).unwrap();
        let p = ket_bra(&a, &b);
        assert_eq!((p.rows(), p.cols()), (3, 2));
        assert_eq!(p.get(2, 0), c(1.0, 0.0));
    }

    #[test]
    fn completeness_of_random_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis = random_orthonormal_basis(&mut rng, 4);
        let mut sum = ComplexMatrix::zeros(4, 4);
        for v in &basis {
            sum = sum.add(&ket_bra(v, v)).unwrap();
        }
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-12);
    }
}
