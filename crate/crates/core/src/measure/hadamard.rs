use crate::linalg::{ComplexMatrix, ComplexScalar, LinalgError, QuantumState};

use super::{gates, require_normalized, require_unitary, sample, MeasureError, MeasurementRecord};

/// Which part of `<psi|U|psi>` the test reads out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Real,
    Imag,
}

/// `diag(I_d, U)`: the ancilla (outer factor) in `|1>` switches `U` on.
pub fn controlled(u: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if !u.is_square() {
        return Err(LinalgError::NotSquare {
            op: "controlled",
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let d = u.rows();
    let mut data = ComplexMatrix::identity(2 * d).as_slice().to_vec();
    for i in 0..d {
        for j in 0..d {
            data[(d + i) * 2 * d + d + j] = u.get(i, j);
        }
    }
    ComplexMatrix::new(2 * d, 2 * d, data)
}

/// Full test circuit on `ancilla (x) system`, ancilla first:
/// `(H (x) I) . controlled(U) . ((P H) (x) I)` with `P = I` for the real
/// part and `P = diag(1, -i)` for the imaginary part.
pub fn hadamard_test_circuit(u: &ComplexMatrix, part: Part) -> Result<ComplexMatrix, LinalgError> {
    let h = gates::hadamard();
    let prep = match part {
        Part::Real => h.clone(),
        Part::Imag => gates::imaginary_phase().matmul(&h)?,
    };
    let id = ComplexMatrix::identity(u.rows());
    h.kron(&id).matmul(&controlled(u)?)?.matmul(&prep.kron(&id))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardTestRecord {
    pub part: Part,
    /// `<psi|U|psi>` computed directly.
    pub expectation: ComplexScalar,
    /// Probability of reading `|0>` on the ancilla, from the circuit.
    pub exact_p0: f64,
    pub sampled_p0: f64,
    /// `2 * sampled_p0 - 1`, an estimate of the selected part.
    pub estimate: f64,
    pub record: MeasurementRecord,
}

impl HadamardTestRecord {
    /// The selected part of `<psi|U|psi>`.
    pub fn exact_value(&self) -> f64 {
        match self.part {
            Part::Real => self.expectation.re,
            Part::Imag => self.expectation.im,
        }
    }
}

/// Runs the circuit on `|0> (x) |psi>` and samples the ancilla.
pub fn hadamard_test(
    u: &ComplexMatrix,
    psi: &QuantumState,
    part: Part,
    shots: u64,
    seed: u64,
) -> Result<HadamardTestRecord, MeasureError> {
    require_unitary(u)?;
    require_normalized(psi)?;
    let expectation = psi.inner(&u.apply(psi)?)?;
    let input = QuantumState::basis(2, 0)?.kron(psi);
    let out = hadamard_test_circuit(u, part)?.apply(&input)?;
    let d = psi.dim();
    let exact_p0: f64 = out.amplitudes()[..d].iter().map(|a| a.norm_sqr()).sum();
    let p0 = exact_p0.clamp(0.0, 1.0);
    let record = sample(&[p0, 1.0 - p0], shots, seed)?;
    let sampled_p0 = record.frequency(0);
    Ok(HadamardTestRecord {
        part,
        expectation,
        exact_p0,
        sampled_p0,
        estimate: 2.0 * sampled_p0 - 1.0,
        record,
    })
}
