//! Random matrices, unitaries and states for testing and benchmarking.

use rand::Rng;

use super::{ComplexMatrix, ComplexScalar, QuantumState};

fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    ComplexScalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Entries drawn uniformly from the unit square in the complex plane.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| random_scalar(rng)).collect();
    ComplexMatrix::from_parts(rows, cols, data)
}

/// Unit-norm random state.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> QuantumState {
    loop {
        let v = QuantumState::from_parts((0..dim).map(|_| random_scalar(rng)).collect());
        if v.norm_sqr() > 1e-6 {
            return v.normalized().expect("nonzero vector");
        }
    }
}

/// Q factor of a QR decomposition (modified Gram-Schmidt) of a random
/// complex matrix. Retries in the measure-zero case of a near-singular draw.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    loop {
        if let Some(q) = orthonormalize_columns(&random_matrix(rng, d, d)) {
            return q;
        }
    }
}

/// Columns of a random unitary.
pub fn random_orthonormal_basis<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<QuantumState> {
    let u = random_unitary(rng, d);
    (0..d)
        .map(|j| QuantumState::from_parts(u.column(j)))
        .collect()
}

fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = m.shape();
    let mut q: Vec<Vec<ComplexScalar>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for e in &q {
            let proj: ComplexScalar = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= proj * ei;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= norm);
        q.push(v);
    }
    let mut data = vec![ComplexScalar::new(0.0, 0.0); rows * cols];
    for (j, col) in q.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            data[i * cols + j] = *z;
        }
    }
    Some(ComplexMatrix::from_parts(rows, cols, data))
}
