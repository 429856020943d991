//! Classical descriptions of quantum states: a gate list run from `|0…0⟩`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::index::Layout;
use crate::{check_cap, partial_trace, DensityMatrix, Error, Gate, Result, StateVector};

/// `{wires, gates: [{g, t}], out}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitDescription {
    pub wires: usize,
    pub gates: Vec<GateSpec>,
    pub out: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateSpec {
    pub g: String,
    pub t: Vec<usize>,
}

impl GateSpec {
    pub fn new(g: &str, t: &[usize]) -> Self {
        Self {
            g: g.to_string(),
            t: t.to_vec(),
        }
    }
}

/// Output of [`build_from_description`]: pure when the output register is
/// every wire, reduced otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum BuiltState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl BuiltState {
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            BuiltState::Pure(s) => s.to_density(),
            BuiltState::Mixed(d) => d.clone(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            BuiltState::Pure(s) => s.n_qubits(),
            BuiltState::Mixed(d) => d.n_qubits(),
        }
    }
}

impl CircuitDescription {
    pub fn new(wires: usize, gates: Vec<GateSpec>, out: Vec<usize>) -> Self {
        Self { wires, gates, out }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCircuit(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    fn malformed(msg: impl Into<String>) -> Error {
        Error::MalformedCircuit(msg.into())
    }

    fn check(&self) -> Result<()> {
        if self.wires == 0 {
            return Err(Self::malformed("no wires"));
        }
        check_cap(self.wires)?;
        if self.out.is_empty() {
            return Err(Self::malformed("empty output register"));
        }
        Layout::new(&self.out, self.wires).map_err(|e| Self::malformed(format!("output register: {e}")))?;
        Ok(())
    }
}

fn builtin(name: &str) -> Option<Gate> {
    Some(match name {
        "H" => Gate::H,
        "X" => Gate::X,
        "Y" => Gate::Y,
        "Z" => Gate::Z,
        "CNOT" => Gate::Cnot,
        "SWAP" => Gate::Swap,
        _ => return None,
    })
}

/// Runs the description with only the built-in gates.
pub fn build_from_description(desc: &CircuitDescription) -> Result<BuiltState> {
    build_with_oracles(desc, &BTreeMap::new())
}

/// Runs the description; names outside the built-in set are looked up in `oracles`.
pub fn build_with_oracles(desc: &CircuitDescription, oracles: &BTreeMap<String, Gate>) -> Result<BuiltState> {
    desc.check()?;
    let mut state = StateVector::zero(desc.wires)?;
    for (i, spec) in desc.gates.iter().enumerate() {
        let gate = match builtin(&spec.g) {
            Some(g) => g,
            None => oracles
                .get(&spec.g)
                .cloned()
                .ok_or_else(|| CircuitDescription::malformed(format!("gate {i}: unknown name {:?}", spec.g)))?,
        };
        if spec.t.len() != gate.arity() {
            return Err(CircuitDescription::malformed(format!(
                "gate {i} ({}) takes {} targets, got {}",
                spec.g,
                gate.arity(),
                spec.t.len()
            )));
        }
        state
            .apply(&gate, &spec.t)
            .map_err(|e| CircuitDescription::malformed(format!("gate {i}: {e}")))?;
    }
    if desc.out.len() == desc.wires {
        // Reorder qubits so output qubit k is `out[k]`.
        let layout = Layout::new(&desc.out, desc.wires)?;
        let map: Vec<usize> = (0..state.dim()).map(|i| layout.gather(i)).collect();
        state.permute(&map);
        Ok(BuiltState::Pure(state))
    } else {
        Ok(BuiltState::Mixed(partial_trace(&state.to_density(), &desc.out)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximally_mixed;

    #[test]
    fn empty_circuit_is_all_zero() {
        let desc = CircuitDescription::new(2, vec![], vec![0, 1]);
        assert_eq!(
            build_from_description(&desc).unwrap(),
            BuiltState::Pure(StateVector::zero(2).unwrap())
        );
    }

    #[test]
    fn bell_half_is_maximally_mixed() {
        let desc = CircuitDescription::from_json(r#"{"wires":2,"gates":[{"g":"H","t":[0]},{"g":"CNOT","t":[0,1]}],"out":[0]}"#)
            .unwrap();
        let rho = build_from_description(&desc).unwrap().to_density();
        assert!(rho.max_entry_diff(&maximally_mixed(1).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn output_order_is_respected() {
        let desc = CircuitDescription::new(2, vec![GateSpec::new("X", &[0])], vec![1, 0]);
        assert_eq!(
            build_from_description(&desc).unwrap(),
            BuiltState::Pure(StateVector::basis(2, 0b01).unwrap())
        );
    }

    #[test]
    fn malformed_descriptions_rejected() {
        for desc in [
            CircuitDescription::new(2, vec![GateSpec::new("H", &[2])], vec![0]),
            CircuitDescription::new(2, vec![GateSpec::new("T", &[0])], vec![0]),
            CircuitDescription::new(2, vec![GateSpec::new("CNOT", &[0])], vec![0]),
            CircuitDescription::new(2, vec![], vec![]),
            CircuitDescription::new(2, vec![], vec![0, 0]),
        ] {
            assert!(matches!(build_from_description(&desc), Err(Error::MalformedCircuit(_))), "{desc:?}");
        }
        assert!(CircuitDescription::from_json("{\"wires\":1}").is_err());
    }
}
