//! Mixed-radix circuit representation.
//!
//! A [`Circuit`] is an ordered list of classical-reversible gates over a fixed
//! set of wires. Each wire has a device capacity `dim`; the digits a wire may
//! carry at the circuit boundary are recorded separately as its interface
//! bound, so a qutrit-capable wire can still be declared binary at input and
//! output.

use std::fmt;

use crate::error::CircuitError;

/// A digit stored on one wire.
pub type Digit = u32;

/// A wire index within a circuit.
pub type WireId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wire {
    pub id: WireId,
    pub name: String,
    pub dim: Digit,
}

impl Wire {
    pub fn new(id: WireId, name: impl Into<String>, dim: Digit) -> Self {
        Wire {
            id,
            name: name.into(),
            dim,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Exchange digit values `i` and `j`, leaving every other value fixed.
    Flip(Digit, Digit),
    /// Add `k` modulo the target dimension.
    Increment(Digit),
    /// Exchange the digits of two equal-dimension wires.
    Swap,
}

impl GateKind {
    pub fn target_count(&self) -> usize {
        match self {
            GateKind::Swap => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub wire: WireId,
    pub value: Digit,
}

impl Control {
    pub fn new(wire: WireId, value: Digit) -> Self {
        Control { wire, value }
    }
}

/// Most gates need at most two controls.
pub const MAX_CONTROLS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<WireId>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<WireId>, controls: Vec<Control>) -> Self {
        Gate {
            kind,
            targets,
            controls,
        }
    }

    pub fn flip(i: Digit, j: Digit, target: WireId) -> Self {
        Gate::new(GateKind::Flip(i, j), vec![target], Vec::new())
    }

    pub fn increment(k: Digit, target: WireId) -> Self {
        Gate::new(GateKind::Increment(k), vec![target], Vec::new())
    }

    pub fn swap(a: WireId, b: WireId) -> Self {
        Gate::new(GateKind::Swap, vec![a, b], Vec::new())
    }

    /// Qubit NOT on a wire: `Flip(0, 1)`.
    pub fn x(target: WireId) -> Self {
        Gate::flip(0, 1, target)
    }

    /// `Flip(0, 1)` on `target` when `control` holds 1.
    pub fn cx(control: WireId, target: WireId) -> Self {
        Gate::x(target).controlled(control, 1)
    }

    /// `Flip(0, 1)` on `target` when both controls hold 1.
    pub fn ccx(c0: WireId, c1: WireId, target: WireId) -> Self {
        Gate::x(target).controlled(c0, 1).controlled(c1, 1)
    }

    pub fn controlled(mut self, wire: WireId, value: Digit) -> Self {
        self.controls.push(Control::new(wire, value));
        self
    }

    /// Every wire this gate reads or writes, targets first.
    pub fn wires(&self) -> impl Iterator<Item = WireId> + '_ {
        self.targets
            .iter()
            .copied()
            .chain(self.controls.iter().map(|c| c.wire))
    }

    /// Number of wires the gate touches (targets plus controls).
    pub fn arity(&self) -> usize {
        self.targets.len() + self.controls.len()
    }

    /// Check this gate against a wire list.
    pub fn validate(&self, wires: &[Wire]) -> Result<(), CircuitError> {
        let width = wires.len();
        if self.targets.len() != self.kind.target_count() {
            return Err(CircuitError::TargetCount {
                expected: self.kind.target_count(),
                found: self.targets.len(),
            });
        }
        if self.controls.len() > MAX_CONTROLS {
            return Err(CircuitError::TooManyControls(self.controls.len()));
        }
        let mut seen = Vec::with_capacity(self.arity());
        for w in self.wires() {
            if w >= width {
                return Err(CircuitError::WireOutOfRange { wire: w, width });
            }
            if seen.contains(&w) {
                return Err(CircuitError::WireCollision(w));
            }
            seen.push(w);
        }
        for c in &self.controls {
            let dim = wires[c.wire].dim;
            if c.value >= dim {
                return Err(CircuitError::ControlValue {
                    wire: c.wire,
                    value: c.value,
                    dim,
                });
            }
        }
        let dim = wires[self.targets[0]].dim;
        match self.kind {
            GateKind::Flip(i, j) => {
                if i == j || i >= dim || j >= dim {
                    return Err(CircuitError::BadFlip { i, j, dim });
                }
            }
            GateKind::Increment(k) => {
                if k == 0 || k >= dim {
                    return Err(CircuitError::BadIncrement { k, dim });
                }
            }
            GateKind::Swap => {
                let other = wires[self.targets[1]].dim;
                if dim != other {
                    return Err(CircuitError::SwapDims(dim, other));
                }
                if !self.controls.is_empty() {
                    return Err(CircuitError::ControlledSwap);
                }
            }
        }
        Ok(())
    }

    /// The inverse gate, given the target dimension.
    pub fn inverse(&self, target_dim: Digit) -> Gate {
        let kind = match self.kind {
            GateKind::Increment(k) => GateKind::Increment(target_dim - k),
            other => other,
        };
        Gate {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Flip(i, j) => write!(f, "X{i}{j}")?,
            GateKind::Increment(k) => write!(f, "X+{k}")?,
            GateKind::Swap => write!(f, "SWAP")?,
        }
        write!(f, " {:?}", self.targets)?;
        for c in &self.controls {
            write!(f, " |{}={}", c.wire, c.value)?;
        }
        Ok(())
    }
}

/// An ordered gate list over dimensioned wires.
///
/// Gates are validated on insertion, so every `Circuit` value is well formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    wires: Vec<Wire>,
    interface: Vec<Digit>,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Create an empty circuit. Wire ids must run `0..wires.len()`.
    pub fn new(wires: Vec<Wire>) -> Result<Self, CircuitError> {
        for (pos, w) in wires.iter().enumerate() {
            if w.dim < 2 {
                return Err(CircuitError::DimTooSmall {
                    wire: w.id,
                    dim: w.dim,
                });
            }
            if w.id != pos {
                if wires[..pos].iter().any(|o| o.id == w.id) {
                    return Err(CircuitError::DuplicateWire(w.id));
                }
                return Err(CircuitError::NonContiguous {
                    position: pos,
                    id: w.id,
                });
            }
        }
        let interface = wires.iter().map(|w| w.dim).collect();
        Ok(Circuit {
            wires,
            interface,
            gates: Vec::new(),
        })
    }

    /// Uniform wires named `q0, q1, ...`.
    pub fn with_dims(dims: &[Digit]) -> Result<Self, CircuitError> {
        let wires = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| Wire::new(i, format!("q{i}"), d))
            .collect();
        Circuit::new(wires)
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn width(&self) -> usize {
        self.wires.len()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn dims(&self) -> Vec<Digit> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn dim(&self, wire: WireId) -> Digit {
        self.wires[wire].dim
    }

    /// Declared input/output alphabet bound per wire.
    pub fn interface(&self) -> &[Digit] {
        &self.interface
    }

    /// Declare that `wire` carries digits below `bound` at the boundary.
    pub fn set_interface(&mut self, wire: WireId, bound: Digit) -> Result<(), CircuitError> {
        let width = self.width();
        let w = self
            .wires
            .get(wire)
            .ok_or(CircuitError::WireOutOfRange { wire, width })?;
        if bound == 0 || bound > w.dim {
            return Err(CircuitError::InterfaceBound {
                wire,
                bound,
                dim: w.dim,
            });
        }
        self.interface[wire] = bound;
        Ok(())
    }

    /// Append a gate after validating it against the wires.
    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(&self.wires)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn append_gate(mut self, gate: Gate) -> Result<Self, CircuitError> {
        self.push(gate)?;
        Ok(self)
    }

    /// Append all gates of `other`, which must have identical wires.
    pub fn extend(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        self.check_same_wires(other)?;
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Append the inverse of `other`.
    pub fn extend_inverse(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        self.check_same_wires(other)?;
        for g in other.gates.iter().rev() {
            let d = self.wires[g.targets[0]].dim;
            self.gates.push(g.inverse(d));
        }
        Ok(())
    }

    fn check_same_wires(&self, other: &Circuit) -> Result<(), CircuitError> {
        if self.wires.len() != other.wires.len() {
            return Err(CircuitError::WireMismatch(format!(
                "width {} vs {}",
                self.wires.len(),
                other.wires.len()
            )));
        }
        if let Some(w) = self
            .wires
            .iter()
            .zip(&other.wires)
            .find(|(a, b)| a.dim != b.dim)
        {
            return Err(CircuitError::WireMismatch(format!(
                "wire {} has dim {} vs {}",
                w.0.id, w.0.dim, w.1.dim
            )));
        }
        Ok(())
    }

    /// Gates reversed, increments negated. Wires and interface are kept.
    pub fn inverse(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| g.inverse(self.wires[g.targets[0]].dim))
            .collect();
        Circuit {
            wires: self.wires.clone(),
            interface: self.interface.clone(),
            gates,
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        let mut out = self.clone();
        out.extend(other)?;
        Ok(out)
    }

    /// ASAP layer of every gate (1-based). Controls occupy their wires.
    pub fn layers(&self) -> Vec<usize> {
        let mut front = vec![0usize; self.width()];
        self.gates
            .iter()
            .map(|g| {
                let layer = 1 + g.wires().map(|w| front[w]).max().unwrap_or(0);
                for w in g.wires() {
                    front[w] = layer;
                }
                layer
            })
            .collect()
    }

    /// Longest critical path under ASAP scheduling; 0 for an empty circuit.
    pub fn depth(&self) -> usize {
        self.layers().into_iter().max().unwrap_or(0)
    }
}

pub fn new_circuit(wires: Vec<Wire>) -> Result<Circuit, CircuitError> {
    Circuit::new(wires)
}

pub fn append_gate(c: Circuit, g: Gate) -> Result<Circuit, CircuitError> {
    c.append_gate(g)
}

pub fn inverse(c: &Circuit) -> Circuit {
    c.inverse()
}

pub fn concat(a: &Circuit, b: &Circuit) -> Result<Circuit, CircuitError> {
    a.concat(b)
}

pub fn depth(c: &Circuit) -> usize {
    c.depth()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qutrits(n: usize) -> Circuit {
        Circuit::with_dims(&vec![3; n]).unwrap()
    }

    #[test]
    fn constructor() {
        let c = qutrits(3);
        assert_eq!(c.width(), 3);
        assert!(c.is_empty());
        assert_eq!(Circuit::new(vec![]).unwrap().width(), 0);
    }

    #[test]
    fn rejects_bad_wires() {
        let dup = vec![Wire::new(0, "a", 3), Wire::new(0, "b", 3)];
        assert!(matches!(
            Circuit::new(dup),
            Err(CircuitError::DuplicateWire(0))
        ));
        let gap = vec![Wire::new(0, "a", 3), Wire::new(2, "b", 3)];
        assert!(matches!(
            Circuit::new(gap),
            Err(CircuitError::NonContiguous { .. })
        ));
        let small = vec![Wire::new(0, "a", 1)];
        assert!(matches!(
            Circuit::new(small),
            Err(CircuitError::DimTooSmall { .. })
        ));
    }

    #[test]
    fn append_validation() {
        let mut c = Circuit::with_dims(&[2, 3]).unwrap();
        c.push(Gate::flip(0, 1, 0)).unwrap();
        assert!(matches!(
            c.push(Gate::increment(2, 0)),
            Err(CircuitError::BadIncrement { k: 2, dim: 2 })
        ));
        assert!(matches!(
            c.push(Gate::x(0).controlled(1, 3)),
            Err(CircuitError::ControlValue { .. })
        ));
        assert!(matches!(
            c.push(Gate::x(0).controlled(0, 1)),
            Err(CircuitError::WireCollision(0))
        ));
        assert!(matches!(
            c.push(Gate::flip(1, 1, 1)),
            Err(CircuitError::BadFlip { .. })
        ));
        assert!(matches!(
            c.push(Gate::flip(0, 2, 0)),
            Err(CircuitError::BadFlip { .. })
        ));
        assert!(matches!(
            c.push(Gate::swap(0, 1)),
            Err(CircuitError::SwapDims(2, 3))
        ));
        assert!(matches!(
            c.push(Gate::x(5)),
            Err(CircuitError::WireOutOfRange { .. })
        ));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn control_limit() {
        let mut c = qutrits(4);
        let g = Gate::x(0).controlled(1, 1).controlled(2, 1).controlled(3, 1);
        assert!(matches!(c.push(g), Err(CircuitError::TooManyControls(3))));
    }

    #[test]
    fn inverse_negates_increments() {
        let c = qutrits(1).append_gate(Gate::increment(1, 0)).unwrap();
        assert_eq!(c.inverse().gates()[0].kind, GateKind::Increment(2));
        let f = qutrits(1).append_gate(Gate::flip(0, 2, 0)).unwrap();
        assert_eq!(f.inverse().gates(), f.gates());
    }

    #[test]
    fn double_inverse_is_identity() {
        let mut c = Circuit::with_dims(&[3, 4, 2]).unwrap();
        c.push(Gate::increment(1, 0).controlled(1, 3)).unwrap();
        c.push(Gate::increment(3, 1)).unwrap();
        c.push(Gate::flip(0, 2, 1).controlled(0, 2).controlled(2, 1))
            .unwrap();
        assert_eq!(c.inverse().inverse(), c);
    }

    #[test]
    fn concat_rules() {
        let empty = qutrits(2);
        let c = qutrits(2).append_gate(Gate::increment(1, 1)).unwrap();
        assert_eq!(empty.concat(&c).unwrap(), c);
        let other = Circuit::with_dims(&[3, 4]).unwrap();
        assert!(matches!(
            c.concat(&other),
            Err(CircuitError::WireMismatch(_))
        ));
    }

    #[test]
    fn depth_examples() {
        let mut c = qutrits(4);
        assert_eq!(c.depth(), 0);
        c.push(Gate::x(0)).unwrap();
        assert_eq!(c.depth(), 1);
        c.push(Gate::x(1)).unwrap();
        assert_eq!(c.depth(), 1);

        let mut shared = qutrits(3);
        shared.push(Gate::cx(0, 1)).unwrap();
        shared.push(Gate::cx(0, 2)).unwrap();
        assert_eq!(shared.depth(), 2);
    }

    #[test]
    fn interface_bounds() {
        let mut c = qutrits(2);
        c.set_interface(0, 2).unwrap();
        assert_eq!(c.interface(), &[2, 3]);
        assert!(c.set_interface(1, 4).is_err());
        assert!(c.set_interface(7, 2).is_err());
    }
}
