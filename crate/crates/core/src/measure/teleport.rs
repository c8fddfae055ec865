use crate::linalg::{ComplexMatrix, LinalgError, QuantumState};
use crate::network::{LegRef, Network, Tensor};

use super::MeasureError;

/// Agreement tolerance for [`teleport_check`].
pub const TELEPORT_TOL: f64 = 1e-10;

/// A cap `<M|` fed by the input line, joined to an unnormalized cup
/// `sum_i |ii>`. Following the line through cap then cup carries `|phi>`
/// to `M|phi>` on the cup's free end.
#[derive(Debug, Clone)]
pub struct CupCapNetwork {
    network: Network,
}

impl CupCapNetwork {
    pub fn new(m: &ComplexMatrix) -> Result<Self, MeasureError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                op: "cup_cap",
                rows: m.rows(),
                cols: m.cols(),
            }
            .into());
        }
        let mut network = Network::new();
        network.add_node(
            "cup",
            Tensor::from_matrix(&ComplexMatrix::identity(m.rows()), "a", "b")?,
        )?;
        network.add_node("cap", Tensor::from_matrix(m, "a", "b")?)?;
        network.connect(LegRef::new("cap", "a"), LegRef::new("cup", "a"))?;
        network.expose(Self::input_leg())?;
        network.expose(Self::output_leg())?;
        Ok(Self { network })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn input_leg() -> LegRef {
        LegRef::new("cap", "b")
    }

    pub fn output_leg() -> LegRef {
        LegRef::new("cup", "b")
    }

    /// Inserts `|phi>` on the input line and contracts.
    pub fn transport(&self, phi: &QuantumState) -> Result<QuantumState, MeasureError> {
        let t = self
            .network
            .insert_ket(&Self::input_leg(), phi)?
            .contract()?;
        Ok(t.to_state().expect("one free leg remains"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportCheck {
    pub network_result: QuantumState,
    pub direct_result: QuantumState,
    pub deviation: f64,
    pub agree: bool,
}

/// Compares the cup/cap contraction against `M|phi>`.
pub fn teleport_check(
    m: &ComplexMatrix,
    phi: &QuantumState,
) -> Result<TeleportCheck, MeasureError> {
    let direct_result = m.apply(phi)?;
    let network_result = CupCapNetwork::new(m)?.transport(phi)?;
    let deviation = network_result.max_abs_diff(&direct_result)?;
    Ok(TeleportCheck {
        network_result,
        direct_result,
        deviation,
        agree: deviation <= TELEPORT_TOL,
    })
}
