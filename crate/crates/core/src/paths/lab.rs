use std::fmt::Write as _;

use crate::linalg::ComplexScalar;
use crate::numfmt::complex_g6;

use super::PathDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabNodeKind {
    /// The prepared input ket.
    Source,
    /// Layer `layer` (1-based) receiving basis value `value`.
    Branch { layer: usize, value: usize },
    /// Detector for outcome `value`.
    Detector { value: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabNode {
    pub id: String,
    pub kind: LabNodeKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabEdge {
    pub from: usize,
    pub to: usize,
    pub weight: ComplexScalar,
}

/// Layered laboratory diagram of a [`PathDiagram`].
///
/// Node layout: one source, then for each layer `t` a column of `d` nodes
/// `L<t>_k<i>` (layer `t` fed with `|i>`), then detectors `D<k>`. The source
/// has one line per basis value carrying `<i|input>`; each branch node fans
/// out into `d` lines labeled `(U_t)[k, i]`. That gives `d*L + d + 1` nodes
/// and `d^2*L + d` edges. Walks from the source through its prepared line
/// (the one into `L1_k<input>`) are in bijection with the free-output paths.
#[derive(Debug, Clone, PartialEq)]
pub struct LabDiagram {
    dim: usize,
    layers: usize,
    input: usize,
    nodes: Vec<LabNode>,
    edges: Vec<LabEdge>,
}

impl LabDiagram {
    pub(super) fn from_diagram(pd: &PathDiagram) -> Self {
        let d = pd.dim();
        let l = pd.layers().len();
        let mut nodes = vec![LabNode {
            id: "src".into(),
            kind: LabNodeKind::Source,
        }];
        for layer in 1..=l {
            for value in 0..d {
                nodes.push(LabNode {
                    id: format!("L{layer}_k{value}"),
                    kind: LabNodeKind::Branch { layer, value },
                });
            }
        }
        for value in 0..d {
            nodes.push(LabNode {
                id: format!("D{value}"),
                kind: LabNodeKind::Detector { value },
            });
        }
        let branch = |layer: usize, value: usize| 1 + (layer - 1) * d + value;
        let detector = |value: usize| 1 + l * d + value;

        let mut edges = Vec::with_capacity(d * d * l + d);
        for value in 0..d {
            let w = if value == pd.input() { 1.0 } else { 0.0 };
            edges.push(LabEdge {
                from: 0,
                to: branch(1, value),
                weight: ComplexScalar::new(w, 0.0),
            });
        }
        for (t, m) in pd.layers().iter().enumerate() {
            let layer = t + 1;
            for i in 0..d {
                for k in 0..d {
                    let to = if layer == l {
                        detector(k)
                    } else {
                        branch(layer + 1, k)
                    };
                    edges.push(LabEdge {
                        from: branch(layer, i),
                        to,
                        weight: m.get(k, i),
                    });
                }
            }
        }
        Self {
            dim: d,
            layers: l,
            input: pd.input(),
            nodes,
            edges,
        }
    }

    pub fn nodes(&self) -> &[LabNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[LabEdge] {
        &self.edges
    }

    /// Every walk from the source through its prepared line to a detector,
    /// as `(index sequence, product of line weights)`. Indices are the basis
    /// value after each layer; order follows edge insertion order, which is
    /// lexicographic.
    pub fn walks(&self) -> Vec<(Vec<usize>, ComplexScalar)> {
        let start = self
            .edges
            .iter()
            .find(|e| e.from == 0 && e.to == 1 + self.input)
            .expect("prepared source line");
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.walk_from(start.to, start.weight, &mut stack, &mut out);
        out
    }

    fn walk_from(
        &self,
        node: usize,
        weight: ComplexScalar,
        stack: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, ComplexScalar)>,
    ) {
        for e in self.edges.iter().filter(|e| e.from == node) {
            let value = match self.nodes[e.to].kind {
                LabNodeKind::Branch { value, .. } | LabNodeKind::Detector { value } => value,
                LabNodeKind::Source => unreachable!("no lines into the source"),
            };
            stack.push(value);
            if matches!(self.nodes[e.to].kind, LabNodeKind::Detector { .. }) {
                out.push((stack.clone(), weight * e.weight));
            } else {
                self.walk_from(e.to, weight * e.weight, stack, out);
            }
            stack.pop();
        }
    }

    /// Graphviz DOT rendering with stable node identifiers.
    pub fn to_dot(&self) -> String {
        self.render(false)
    }

    /// DOT rendering that, for qubit diagrams, also tags each line as
    /// transmission (`T`, basis value kept) or reflection (`R`, value
    /// changed), as in a half-silvered-mirror picture.
    pub fn to_dot_mirror_roles(&self) -> String {
        self.render(self.dim == 2)
    }

    fn render(&self, roles: bool) -> String {
        let mut s = String::new();
        s.push_str("digraph lab {\n  rankdir=LR;\n");
        for n in &self.nodes {
            let (label, shape) = match n.kind {
                LabNodeKind::Source => (format!("|{}>", self.input), "box"),
                LabNodeKind::Branch { layer, value } => (format!("U{layer} |{value}>"), "circle"),
                LabNodeKind::Detector { value } => (format!("D{value}"), "doublecircle"),
            };
            writeln!(s, "  {} [label=\"{label}\", shape={shape}];", n.id).unwrap();
        }
        for e in &self.edges {
            let mut label = complex_g6(e.weight);
            if roles {
                if let (LabNodeKind::Branch { value: i, .. }, Some(k)) =
                    (self.nodes[e.from].kind, self.value_of(e.to))
                {
                    label.push_str(if i == k { " T" } else { " R" });
                }
            }
            let style = if e.from == 0 && e.weight == ComplexScalar::new(0.0, 0.0) {
                ", style=dashed"
            } else {
                ""
            };
            writeln!(
                s,
                "  {} -> {} [label=\"{label}\"{style}];",
                self.nodes[e.from].id, self.nodes[e.to].id
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }

    fn value_of(&self, node: usize) -> Option<usize> {
        match self.nodes[node].kind {
            LabNodeKind::Branch { value, .. } | LabNodeKind::Detector { value } => Some(value),
            LabNodeKind::Source => None,
        }
    }

    pub fn layer_count(&self) -> usize {
        self.layers
    }
}
