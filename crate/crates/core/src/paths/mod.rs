//! Path sums over layered compositions of matrices.
//!
//! A [`PathDiagram`] lists layers in time order: the first listed layer acts
//! first, so `[U1, U2, U3]` denotes `U3 U2 U1`. A [`Path`] picks one basis
//! value for the wire after each layer and carries the product of the
//! matrix entries it traverses. Summing the weights of all paths that end in
//! `|j>` reproduces `<j|U_L ... U_1|i>`; nothing is pruned, so zero-weight
//! paths are listed too.

mod lab;

use thiserror::Error;

use crate::linalg::{ComplexMatrix, ComplexScalar, QuantumState};

pub use lab::{LabDiagram, LabEdge, LabNode, LabNodeKind};

/// Default ceiling on the number of materialized paths.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Tolerance used to classify interference.
pub const INTERFERENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error("a path diagram needs at least one layer")]
    NoLayers,
    #[error("layer {layer} is {rows}x{cols}, expected {dim}x{dim}")]
    LayerShape {
        layer: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("diagram has more than {cap} paths")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Fixed(usize),
    Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathDiagram {
    dim: usize,
    layers: Vec<ComplexMatrix>,
    input: usize,
    output: Output,
    cap: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    /// Basis value on the wire after each layer.
    pub indices: Vec<usize>,
    pub weight: ComplexScalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interference {
    /// Paths carry weight but cancel.
    Destructive,
    /// All weights line up in phase.
    Constructive,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceReport {
    pub output: usize,
    pub paths: Vec<Path>,
    /// Running sum of weights after each listed path.
    pub partial_sums: Vec<ComplexScalar>,
    pub amplitude: ComplexScalar,
    /// Sum of the moduli of all weights.
    pub total_weight: f64,
    pub kind: Interference,
}

impl PathDiagram {
    /// Free-output diagram over `layers` (time order) starting in `|input>`.
    pub fn new(layers: Vec<ComplexMatrix>, input: usize) -> Result<Self, PathError> {
        let dim = layers.first().ok_or(PathError::NoLayers)?.rows();
        for (layer, m) in layers.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(PathError::LayerShape {
                    layer,
                    rows: m.rows(),
                    cols: m.cols(),
                    dim,
                });
            }
        }
        check_index(input, dim)?;
        Ok(Self {
            dim,
            layers,
            input,
            output: Output::Free,
            cap: DEFAULT_PATH_CAP,
        })
    }

    pub fn with_output(mut self, output: Output) -> Result<Self, PathError> {
        if let Output::Fixed(j) = output {
            check_index(j, self.dim)?;
        }
        self.output = output;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn layers(&self) -> &[ComplexMatrix] {
        &self.layers
    }

    pub fn input(&self) -> usize {
        self.input
    }

    pub fn output(&self) -> Output {
        self.output
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of paths [`PathDiagram::enumerate_paths`] would produce, or
    /// `None` on overflow.
    pub fn path_count(&self) -> Option<usize> {
        let free = match self.output {
            Output::Fixed(_) => self.layers.len() - 1,
            Output::Free => self.layers.len(),
        };
        self.dim.checked_pow(u32::try_from(free).ok()?)
    }

    /// Product of the traversed entries `(U_t)[k_t, k_{t-1}]`, `k_0 = input`.
    pub fn weight(&self, indices: &[usize]) -> ComplexScalar {
        let mut prev = self.input;
        let mut w = ComplexScalar::new(1.0, 0.0);
        for (m, &k) in self.layers.iter().zip(indices) {
            w *= m.get(k, prev);
            prev = k;
        }
        w
    }

    /// Every index tuple in lexicographic order, with its weight.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>, PathError> {
        let count = self
            .path_count()
            .filter(|&n| n <= self.cap)
            .ok_or(PathError::CapExceeded { cap: self.cap })?;
        let l = self.layers.len();
        let free_len = match self.output {
            Output::Fixed(_) => l - 1,
            Output::Free => l,
        };
        let mut paths = Vec::with_capacity(count);
        let mut indices = vec![0; l];
        if let Output::Fixed(j) = self.output {
            indices[l - 1] = j;
        }
        loop {
            paths.push(Path {
                weight: self.weight(&indices),
                indices: indices.clone(),
            });
            // Odometer over the first `free_len` positions.
            let mut pos = free_len;
            loop {
                if pos == 0 {
                    return Ok(paths);
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < self.dim {
                    break;
                }
                indices[pos] = 0;
            }
        }
    }

    fn pinned(&self, output_index: usize) -> Result<PathDiagram, PathError> {
        self.clone().with_output(Output::Fixed(output_index))
    }

    /// Sum of path weights ending in `|output_index>`.
    pub fn path_sum_amplitude(&self, output_index: usize) -> Result<ComplexScalar, PathError> {
        Ok(self
            .pinned(output_index)?
            .enumerate_paths()?
            .iter()
            .map(|p| p.weight)
            .sum())
    }

    /// `U_L ... U_2 U_1`.
    pub fn composed(&self) -> ComplexMatrix {
        self.layers
            .iter()
            .skip(1)
            .fold(self.layers[0].clone(), |acc, m| {
                m.matmul(&acc).expect("layers share one dimension")
            })
    }

    /// `<output_index| U_L ... U_1 |input>` by matrix multiplication.
    pub fn matrix_amplitude(&self, output_index: usize) -> Result<ComplexScalar, PathError> {
        check_index(output_index, self.dim)?;
        Ok(self.composed().get(output_index, self.input))
    }

    /// The output state `U_L ... U_1 |input>`.
    pub fn evolve(&self) -> QuantumState {
        let input =
            QuantumState::basis(self.dim, self.input).expect("input checked on construction");
        self.composed().apply(&input).expect("square layers")
    }

    pub fn interference_report(
        &self,
        output_index: usize,
    ) -> Result<InterferenceReport, PathError> {
        let paths = self.pinned(output_index)?.enumerate_paths()?;
        let mut acc = ComplexScalar::new(0.0, 0.0);
        let partial_sums: Vec<ComplexScalar> = paths
            .iter()
            .map(|p| {
                acc += p.weight;
                acc
            })
            .collect();
        let total_weight: f64 = paths.iter().map(|p| p.weight.norm()).sum();
        let magnitude = acc.norm();
        let kind = if magnitude <= INTERFERENCE_TOL && total_weight > INTERFERENCE_TOL {
            Interference::Destructive
        } else if (total_weight - magnitude).abs() <= INTERFERENCE_TOL {
            Interference::Constructive
        } else {
            Interference::Mixed
        };
        Ok(InterferenceReport {
            output: output_index,
            paths,
            partial_sums,
            amplitude: acc,
            total_weight,
            kind,
        })
    }

    /// The standardized laboratory diagram; see [`LabDiagram`].
    pub fn lab_diagram(&self) -> LabDiagram {
        LabDiagram::from_diagram(self)
    }
}

fn check_index(index: usize, dim: usize) -> Result<(), PathError> {
    if index < dim {
        Ok(())
    } else {
        Err(PathError::IndexOutOfRange { index, dim })
    }
}
