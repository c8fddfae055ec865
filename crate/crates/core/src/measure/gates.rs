//! Fixed gates used throughout: the half-silvered mirror (Hadamard), the
//! fully silvered mirror (basis interchange) and a few phase gates.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{ComplexMatrix, ComplexScalar};

/// `H|0> = (|0> + |1>)/sqrt2`, `H|1> = (|0> - |1>)/sqrt2`.
pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
    .expect("finite 2x2")
}

/// Interchanges `|0>` and `|1>`.
pub fn mirror() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("finite 2x2")
}

pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d)
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).expect("finite 2x2")
}

/// `diag(1, e^{i theta})`.
pub fn phase(theta: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[
        ComplexScalar::new(1.0, 0.0),
        ComplexScalar::from_polar(1.0, theta),
    ])
}

/// `diag(1, -i)`, placed on the ancilla to read out imaginary parts in
/// the Hadamard test.
pub fn imaginary_phase() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.0, -1.0)])
}

/// Named qubit gates.
pub fn library() -> Vec<(&'static str, ComplexMatrix)> {
    vec![
        ("H", hadamard()),
        ("M", mirror()),
        ("I", identity(2)),
        ("Z", pauli_z()),
        ("S_dag", imaginary_phase()),
    ]
}
