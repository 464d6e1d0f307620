//! Circuit JSON interchange.
//!
//! ```text
//! {"wires":[{"name":str,"dim":int}],
//!  "gates":[{"kind":"flip"|"incr"|"swap","targets":[int],"params":[int],
//!            "controls":[{"wire":int,"value":int}]}]}
//! ```
//!
//! Output is compact and field order is fixed, so equal circuits serialize to
//! identical bytes. Interface bounds are not part of the format; a loaded
//! circuit has every bound equal to its wire dimension.

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::ir::{Circuit, Control, Digit, Gate, GateKind, Wire, WireId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireJson {
    name: String,
    dim: Digit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControlJson {
    wire: WireId,
    value: Digit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateJson {
    kind: String,
    targets: Vec<WireId>,
    params: Vec<Digit>,
    controls: Vec<ControlJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    wires: Vec<WireJson>,
    gates: Vec<GateJson>,
}

fn gate_to_json(g: &Gate) -> GateJson {
    let (kind, params) = match g.kind {
        GateKind::Flip(i, j) => ("flip", vec![i, j]),
        GateKind::Increment(k) => ("incr", vec![k]),
        GateKind::Swap => ("swap", vec![]),
    };
    GateJson {
        kind: kind.to_string(),
        targets: g.targets.clone(),
        params,
        controls: g
            .controls
            .iter()
            .map(|c| ControlJson {
                wire: c.wire,
                value: c.value,
            })
            .collect(),
    }
}

fn gate_from_json(index: usize, g: GateJson) -> Result<Gate, FormatError> {
    let expected = match g.kind.as_str() {
        "flip" => 2,
        "incr" => 1,
        "swap" => 0,
        other => return Err(FormatError::UnknownKind(other.to_string())),
    };
    if g.params.len() != expected {
        return Err(FormatError::Params {
            index,
            kind: g.kind,
            expected,
            found: g.params.len(),
        });
    }
    let kind = match expected {
        2 => GateKind::Flip(g.params[0], g.params[1]),
        1 => GateKind::Increment(g.params[0]),
        _ => GateKind::Swap,
    };
    let controls = g.controls.into_iter().map(|c| Control::new(c.wire, c.value)).collect();
    Ok(Gate::new(kind, g.targets, controls))
}

pub fn to_json(c: &Circuit) -> String {
    let doc = CircuitJson {
        wires: c
            .wires()
            .iter()
            .map(|w| WireJson {
                name: w.name.clone(),
                dim: w.dim,
            })
            .collect(),
        gates: c.gates().iter().map(gate_to_json).collect(),
    };
    serde_json::to_string(&doc).expect("circuit serializes")
}

/// Parse and fully validate a circuit.
pub fn from_json(s: &str) -> Result<Circuit, FormatError> {
    let doc: CircuitJson = serde_json::from_str(s)?;
    let wires = doc
        .wires
        .into_iter()
        .enumerate()
        .map(|(i, w)| Wire::new(i, w.name, w.dim))
        .collect();
    let mut c = Circuit::new(wires)?;
    for (index, g) in doc.gates.into_iter().enumerate() {
        let gate = gate_from_json(index, g)?;
        c.push(gate).map_err(|source| FormatError::Gate { index, source })?;
    }
    Ok(c)
}
