//! Box-and-line tensor networks.
//!
//! Nodes are [`Tensor`]s, lines are [`Edge`]s joining two legs, and the
//! remaining open lines are the network's free legs. A closed line is a
//! summation over its index; free legs index the contracted result.

mod contract;
mod exhaustive;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{ket_bra, ComplexMatrix, ComplexScalar, LinalgError, QuantumState};

pub use exhaustive::contract_exhaustive;
pub(crate) use tensor::next_index;
pub use tensor::{Leg, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegRef {
    pub node: String,
    pub leg: String,
}

impl LegRef {
    pub fn new(node: impl Into<String>, leg: impl Into<String>) -> Self {
        Self {
            node: node.into(),
            leg: leg.into(),
        }
    }
}

impl fmt::Display for LegRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.node, self.leg)
    }
}

/// A line joining two legs. Endpoint order matters only for the order in
/// which [`Network::cut_edge`] exposes them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: LegRef,
    pub b: LegRef,
}

impl Edge {
    pub fn new(a: LegRef, b: LegRef) -> Self {
        Self { a, b }
    }

    fn same_line(&self, other: &Edge) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("tensor expects {expected} entries, got {actual}")]
    TensorSize { expected: usize, actual: usize },
    #[error("duplicate leg name `{0}`")]
    DuplicateLegName(String),
    #[error("leg `{0}` has dimension zero")]
    ZeroDimLeg(String),
    #[error("non-finite tensor entry")]
    NonFinite,
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown leg `{0}`")]
    UnknownLeg(LegRef),
    #[error("leg `{0}` is already wired")]
    LegAlreadyWired(LegRef),
    #[error("leg `{0}` is neither wired nor free")]
    DanglingLeg(LegRef),
    #[error("edge `{a}` -- `{b}` joins legs of dimension {dim_a} and {dim_b}")]
    DimMismatch {
        a: LegRef,
        b: LegRef,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("no edge `{0}`")]
    UnknownEdge(Edge),
    #[error("leg `{0}` is not free")]
    LegNotFree(LegRef),
    #[error("state of dimension {actual} inserted on leg `{leg}` of dimension {expected}")]
    StateDim {
        leg: LegRef,
        expected: usize,
        actual: usize,
    },
    #[error("edge order is not a permutation of 0..{0}")]
    BadOrder(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Where a leg is currently used.
enum Usage {
    Unused,
    Wired,
    Free(usize),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Network {
    nodes: BTreeMap<String, Tensor>,
    edges: Vec<Edge>,
    free_legs: Vec<LegRef>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> &BTreeMap<String, Tensor> {
        &self.nodes
    }

    pub fn node(&self, id: &str) -> Option<&Tensor> {
        self.nodes.get(id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn free_legs(&self) -> &[LegRef] {
        &self.free_legs
    }

    pub fn add_node(&mut self, id: impl Into<String>, tensor: Tensor) -> Result<(), NetworkError> {
        let id = id.into();
        if self.nodes.contains_key(&id) {
            return Err(NetworkError::DuplicateNode(id));
        }
        self.nodes.insert(id, tensor);
        Ok(())
    }

    pub fn leg_dim(&self, leg: &LegRef) -> Result<usize, NetworkError> {
        let node = self
            .nodes
            .get(&leg.node)
            .ok_or_else(|| NetworkError::UnknownNode(leg.node.clone()))?;
        node.leg(&leg.leg)
            .map(|l| l.dim)
            .ok_or_else(|| NetworkError::UnknownLeg(leg.clone()))
    }

    fn usage(&self, leg: &LegRef) -> Usage {
        if self.edges.iter().any(|e| &e.a == leg || &e.b == leg) {
            Usage::Wired
        } else if let Some(pos) = self.free_legs.iter().position(|f| f == leg) {
            Usage::Free(pos)
        } else {
            Usage::Unused
        }
    }

    /// Joins two legs with a line. Legs that were free stop being free.
    pub fn connect(&mut self, a: LegRef, b: LegRef) -> Result<(), NetworkError> {
        let dim_a = self.leg_dim(&a)?;
        let dim_b = self.leg_dim(&b)?;
        if dim_a != dim_b {
            return Err(NetworkError::DimMismatch { a, b, dim_a, dim_b });
        }
        for leg in [&a, &b] {
            if matches!(self.usage(leg), Usage::Wired) {
                return Err(NetworkError::LegAlreadyWired(leg.clone()));
            }
        }
        if a == b {
            return Err(NetworkError::LegAlreadyWired(a));
        }
        self.free_legs.retain(|f| f != &a && f != &b);
        self.edges.push(Edge::new(a, b));
        Ok(())
    }

    /// Marks a leg as an open line of the network.
    pub fn expose(&mut self, leg: LegRef) -> Result<(), NetworkError> {
        self.leg_dim(&leg)?;
        match self.usage(&leg) {
            Usage::Unused => {
                self.free_legs.push(leg);
                Ok(())
            }
            _ => Err(NetworkError::LegAlreadyWired(leg)),
        }
    }

    /// Checks that every leg is used exactly once and edges join equal dims.
    pub fn validate(&self) -> Result<(), NetworkError> {
        let mut seen: BTreeMap<LegRef, ()> = BTreeMap::new();
        let mut claim = |leg: &LegRef| -> Result<(), NetworkError> {
            if seen.insert(leg.clone(), ()).is_some() {
                return Err(NetworkError::LegAlreadyWired(leg.clone()));
            }
            Ok(())
        };
        for e in &self.edges {
            let dim_a = self.leg_dim(&e.a)?;
            let dim_b = self.leg_dim(&e.b)?;
            if dim_a != dim_b {
                return Err(NetworkError::DimMismatch {
                    a: e.a.clone(),
                    b: e.b.clone(),
                    dim_a,
                    dim_b,
                });
            }
            claim(&e.a)?;
            claim(&e.b)?;
        }
        for f in &self.free_legs {
            self.leg_dim(f)?;
            claim(f)?;
        }
        for (id, t) in &self.nodes {
            for leg in t.legs() {
                let r = LegRef::new(id.clone(), leg.name.clone());
                if !seen.contains_key(&r) {
                    return Err(NetworkError::DanglingLeg(r));
                }
            }
        }
        Ok(())
    }

    /// Sums over every closed line; the result's legs follow `free_legs`
    /// and are named `node.leg`.
    pub fn contract(&self) -> Result<Tensor, NetworkError> {
        let order: Vec<usize> = (0..self.edges.len()).collect();
        self.contract_in_order(&order)
    }

    /// As [`Network::contract`], processing edges in the given order.
    pub fn contract_in_order(&self, order: &[usize]) -> Result<Tensor, NetworkError> {
        self.validate()?;
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.edges.len()).collect::<Vec<_>>() {
            return Err(NetworkError::BadOrder(self.edges.len()));
        }
        Ok(contract::contract(self, order))
    }

    fn find_edge(&self, edge: &Edge) -> Result<usize, NetworkError> {
        self.edges
            .iter()
            .position(|e| e.same_line(edge))
            .ok_or_else(|| NetworkError::UnknownEdge(edge.clone()))
    }

    /// Removes a line, exposing both of its ends (stored endpoint order).
    pub fn cut_edge(&self, edge: &Edge) -> Result<Network, NetworkError> {
        let pos = self.find_edge(edge)?;
        let mut out = self.clone();
        let removed = out.edges.remove(pos);
        out.free_legs.push(removed.a);
        out.free_legs.push(removed.b);
        Ok(out)
    }

    fn fresh_id(&self, prefix: &str) -> String {
        (0..)
            .map(|n| format!("{prefix}{n}"))
            .find(|id| !self.nodes.contains_key(id))
            .expect("unbounded id space")
    }

    fn insert_vector(
        &self,
        free_leg: &LegRef,
        amplitudes: QuantumState,
        prefix: &str,
        leg_name: &str,
    ) -> Result<Network, NetworkError> {
        let expected = self.leg_dim(free_leg)?;
        let pos = match self.usage(free_leg) {
            Usage::Free(pos) => pos,
            _ => return Err(NetworkError::LegNotFree(free_leg.clone())),
        };
        if amplitudes.dim() != expected {
            return Err(NetworkError::StateDim {
                leg: free_leg.clone(),
                expected,
                actual: amplitudes.dim(),
            });
        }
        let mut out = self.clone();
        let id = out.fresh_id(prefix);
        out.nodes
            .insert(id.clone(), Tensor::from_state(&amplitudes, leg_name));
        out.free_legs.remove(pos);
        out.edges
            .push(Edge::new(LegRef::new(id, leg_name), free_leg.clone()));
        Ok(out)
    }

    /// Prepares `|state>` on a free line.
    pub fn insert_ket(
        &self,
        free_leg: &LegRef,
        state: &QuantumState,
    ) -> Result<Network, NetworkError> {
        self.insert_vector(free_leg, state.clone(), "ket", "out")
    }

    /// Closes a free line with `<state|`.
    pub fn insert_bra(
        &self,
        free_leg: &LegRef,
        state: &QuantumState,
    ) -> Result<Network, NetworkError> {
        self.insert_vector(free_leg, state.conj(), "bra", "in")
    }

    /// Wires two free legs through a fresh identity (copy) tensor.
    pub fn bridge_with_identity(&self, a: &LegRef, b: &LegRef) -> Result<Network, NetworkError> {
        let dim = self.leg_dim(a)?;
        for leg in [a, b] {
            if !matches!(self.usage(leg), Usage::Free(_)) {
                return Err(NetworkError::LegNotFree(leg.clone()));
            }
        }
        let mut out = self.clone();
        let id = out.fresh_id("id");
        out.add_node(
            id.clone(),
            Tensor::from_matrix(&ComplexMatrix::identity(dim), "out", "in")?,
        )?;
        out.connect(LegRef::new(id.clone(), "in"), a.clone())?;
        out.connect(LegRef::new(id, "out"), b.clone())?;
        Ok(out)
    }
}

/// Single node `M` with its output line looped back into its input.
pub fn trace_network(m: &ComplexMatrix) -> Result<Network, NetworkError> {
    let mut net = Network::new();
    net.add_node("M", Tensor::from_matrix(m, "out", "in")?)?;
    net.connect(LegRef::new("M", "out"), LegRef::new("M", "in"))?;
    Ok(net)
}

/// `<a|M|b>` obtained from the trace network of `M` by cutting its loop,
/// preparing `|b>` on the input line and closing the output with `<a|`.
pub fn amplitude_by_surgery(
    a: &QuantumState,
    m: &ComplexMatrix,
    b: &QuantumState,
) -> Result<ComplexScalar, NetworkError> {
    let out = LegRef::new("M", "out");
    let input = LegRef::new("M", "in");
    let net = trace_network(m)?
        .cut_edge(&Edge::new(out.clone(), input.clone()))?
        .insert_ket(&input, b)?
        .insert_bra(&out, a)?;
    Ok(net
        .contract()?
        .as_scalar()
        .expect("no free legs remain after both insertions"))
}

/// `tr(rho M)` with `rho = |b><a|`, which equals `<a|M|b>`.
pub fn amplitude_via_density(
    a: &QuantumState,
    b: &QuantumState,
    m: &ComplexMatrix,
) -> Result<ComplexScalar, LinalgError> {
    if a.dim() != b.dim() || m.cols() != a.dim() {
        return Err(LinalgError::Shape {
            op: "amplitude_via_density",
            left: (a.dim(), b.dim()),
            right: m.shape(),
        });
    }
    let rho = ket_bra(b, a);
    rho.matmul(m)?.trace()
}
