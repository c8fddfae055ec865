//! Measurement, sampling, the Hadamard test and the cup/cap check.

pub mod gates;
mod hadamard;
mod sampling;
mod teleport;

use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError, QuantumState};
use crate::network::NetworkError;

pub use hadamard::{controlled, hadamard_test, hadamard_test_circuit, HadamardTestRecord, Part};
pub use sampling::{sample, MeasurementRecord};
pub use teleport::{teleport_check, CupCapNetwork, TeleportCheck};

/// Unitarity tolerance applied to measured processes.
pub const UNITARY_TOL: f64 = 1e-9;

/// Allowed deviation of a probability vector's sum from one.
pub const PROBABILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("matrix is not unitary (max |U^dagger U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("state is not normalized (|psi|^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("cannot measure the zero vector")]
    ZeroVector,
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("shots must be positive")]
    NoShots,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

pub(crate) fn require_unitary(u: &ComplexMatrix) -> Result<(), MeasureError> {
    let deviation = u.unitarity_deviation()?;
    if deviation <= UNITARY_TOL {
        Ok(())
    } else {
        Err(MeasureError::NotUnitary { deviation })
    }
}

pub(crate) fn require_normalized(psi: &QuantumState) -> Result<(), MeasureError> {
    if psi.is_normalized() {
        Ok(())
    } else {
        Err(MeasureError::NotNormalized {
            norm_sqr: psi.norm_sqr(),
        })
    }
}

/// `p_i = |<i|U|psi>|^2` for unitary `U` and normalized `psi`.
pub fn born_probabilities(u: &ComplexMatrix, psi: &QuantumState) -> Result<Vec<f64>, MeasureError> {
    require_unitary(u)?;
    require_normalized(psi)?;
    Ok(u.apply(psi)?
        .amplitudes()
        .iter()
        .map(|a| a.norm_sqr())
        .collect())
}

/// `p_i = |v_i|^2 / <v|v>`; works on unnormalized vectors.
pub fn general_measure(v: &QuantumState) -> Result<Vec<f64>, MeasureError> {
    let total = v.norm_sqr();
    if total == 0.0 {
        return Err(MeasureError::ZeroVector);
    }
    Ok(v.amplitudes()
        .iter()
        .map(|a| a.norm_sqr() / total)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_state, random_unitary};
    use crate::linalg::ComplexScalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn born_examples() {
        let e0 = QuantumState::basis(2, 0).unwrap();
        assert_eq!(
            born_probabilities(&gates::identity(2), &e0).unwrap(),
            vec![1.0, 0.0]
        );
        let p = born_probabilities(&gates::hadamard(), &e0).unwrap();
        assert!(close(&p, &[0.5, 0.5], 1e-15));
        let hmh = gates::hadamard()
            .matmul(&gates::mirror())
            .unwrap()
            .matmul(&gates::hadamard())
            .unwrap();
        assert!(close(
            &born_probabilities(&hmh, &e0).unwrap(),
            &[1.0, 0.0],
            1e-15
        ));
    }

    #[test]
    fn born_rejects_bad_inputs() {
        let e0 = QuantumState::basis(2, 0).unwrap();
        let shear = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        match born_probabilities(&shear, &e0) {
            Err(MeasureError::NotUnitary { deviation }) => assert!((deviation - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let v = QuantumState::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            born_probabilities(&gates::hadamard(), &v),
            Err(MeasureError::NotNormalized { .. })
        ));
    }

    #[test]
    fn born_sums_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..6 {
            let p = born_probabilities(&random_unitary(&mut rng, d), &random_state(&mut rng, d))
                .unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn general_measure_examples() {
        let v = QuantumState::from_real(&[2.0, 0.0]).unwrap();
        assert_eq!(general_measure(&v).unwrap(), vec![1.0, 0.0]);
        let v = QuantumState::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(general_measure(&v).unwrap(), vec![0.5, 0.5]);
        let z = QuantumState::from_real(&[0.0, 0.0]).unwrap();
        assert_eq!(general_measure(&z), Err(MeasureError::ZeroVector));
    }

    #[test]
    fn general_measure_agrees_with_born_on_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in 2..5 {
            let v = random_state(&mut rng, d).scale(ComplexScalar::new(3.0, -1.0));
            let p = general_measure(&v).unwrap();
            let q = born_probabilities(&gates::identity(d), &v.normalized().unwrap()).unwrap();
            assert!(close(&p, &q, 1e-12));
        }
    }
}
