//! The `.qpd` document format.
//!
//! Line-oriented; `#` starts a comment. Every name must be declared before
//! it is used and a document has exactly one `dim` line, which precedes all
//! gates and states.
//!
//! ```text
//! dim 2
//! gate H = [[1/sqrt2, 1/sqrt2], [1/sqrt2, -1/sqrt2]]
//! gate X = [[0, 1], [1, 0]]
//! state psi = [1/sqrt2, 1/sqrt2i]
//! circuit mz = H X H          # time order: first gate acts first
//! node m : H                  # gate nodes have legs `in`, `out`
//! node v : psi                # state nodes have a single leg `out`
//! edge v.out -> m.in
//! free m.out
//! ```

mod diagnostic;
pub mod literal;
mod parser;

use std::fmt::Write as _;

use crate::linalg::{ComplexMatrix, QuantumState};
use crate::network::{LegRef, Network, NetworkError, Tensor};

pub use diagnostic::{Diagnostic, Severity};
pub use parser::{parse, parse_bytes};

/// 1-based position of a declaration's first token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Gate,
    State,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Dim(usize),
    Gate {
        name: String,
        matrix: ComplexMatrix,
    },
    State {
        name: String,
        state: QuantumState,
    },
    Circuit {
        name: String,
        gates: Vec<String>,
    },
    Node {
        id: String,
        kind: NodeKind,
        target: String,
    },
    Edge {
        from: LegRef,
        to: LegRef,
    },
    Free(LegRef),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declaration {
    pub decl: Decl,
    pub span: Span,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    declarations: Vec<Declaration>,
}

impl Document {
    pub fn declarations(&self) -> &[Declaration] {
        &self.declarations
    }

    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.declarations.iter().map(|d| &d.decl)
    }

    /// Same declarations in the same order, ignoring source positions.
    pub fn structurally_eq(&self, other: &Document) -> bool {
        self.decls().eq(other.decls())
    }

    pub fn dim(&self) -> Option<usize> {
        self.decls().find_map(|d| match d {
            Decl::Dim(n) => Some(*n),
            _ => None,
        })
    }

    pub fn gate(&self, name: &str) -> Option<&ComplexMatrix> {
        self.decls().find_map(|d| match d {
            Decl::Gate { name: n, matrix } if n == name => Some(matrix),
            _ => None,
        })
    }

    pub fn state(&self, name: &str) -> Option<&QuantumState> {
        self.decls().find_map(|d| match d {
            Decl::State { name: n, state } if n == name => Some(state),
            _ => None,
        })
    }

    /// Gate matrices of a circuit in time order.
    pub fn circuit(&self, name: &str) -> Option<Vec<ComplexMatrix>> {
        let gates = self.decls().find_map(|d| match d {
            Decl::Circuit { name: n, gates } if n == name => Some(gates),
            _ => None,
        })?;
        gates.iter().map(|g| self.gate(g).cloned()).collect()
    }

    /// Builds the network from the `node`, `edge` and `free` lines.
    pub fn network(&self) -> Result<Network, NetworkError> {
        let mut net = Network::new();
        for d in self.decls() {
            match d {
                Decl::Node { id, kind, target } => {
                    let tensor = match kind {
                        NodeKind::Gate => Tensor::from_matrix(
                            self.gate(target).expect("resolved at parse time"),
                            "out",
                            "in",
                        )?,
                        NodeKind::State => Tensor::from_state(
                            self.state(target).expect("resolved at parse time"),
                            "out",
                        ),
                    };
                    net.add_node(id.clone(), tensor)?;
                }
                Decl::Edge { from, to } => net.connect(from.clone(), to.clone())?,
                Decl::Free(leg) => net.expose(leg.clone())?,
                _ => {}
            }
        }
        Ok(net)
    }

    /// Canonical source text; parsing it yields a structurally equal document.
    pub fn to_source(&self) -> String {
        let mut s = String::new();
        for d in self.decls() {
            match d {
                Decl::Dim(n) => writeln!(s, "dim {n}"),
                Decl::Gate { name, matrix } => {
                    let rows: Vec<String> = (0..matrix.rows())
                        .map(|i| format!("[{}]", join_literals(matrix.row(i))))
                        .collect();
                    writeln!(s, "gate {name} = [{}]", rows.join(", "))
                }
                Decl::State { name, state } => {
                    writeln!(s, "state {name} = [{}]", join_literals(state.amplitudes()))
                }
                Decl::Circuit { name, gates } => {
                    writeln!(s, "circuit {name} = {}", gates.join(" "))
                }
                Decl::Node { id, target, .. } => writeln!(s, "node {id} : {target}"),
                Decl::Edge { from, to } => writeln!(s, "edge {from} -> {to}"),
                Decl::Free(leg) => writeln!(s, "free {leg}"),
            }
            .expect("writing to a String");
        }
        s
    }
}

fn join_literals(values: &[crate::linalg::ComplexScalar]) -> String {
    values
        .iter()
        .map(|&z| literal::format_complex(z))
        .collect::<Vec<_>>()
        .join(", ")
}
