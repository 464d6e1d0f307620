//! Binary in-place adders.
//!
//! All three builders compute `B <- (A + B + c_in) mod 2^n` in place, leave
//! `A` untouched, and optionally XOR the final carry into a zero-initialized
//! carry-out wire. They only ever use values 0 and 1 on every wire, so they
//! can run on qutrit- or ququart-capable wires without change.

mod cla;
mod ripple;

pub(crate) use cla::{cla_adder_gates, plus_k_gates};
pub use cla::{
    build_cla_adder, build_plus_k, cla_ancilla_used, DEPTH_OFFSET, DEPTH_SLOPE, emit_cla_adder, emit_plus_k, tree_ancilla,
};
pub use ripple::{build_ripple_adder, emit_ripple_adder};

use num_bigint::BigUint;

use crate::error::BuildError;
use crate::ir::{Circuit, Wire, WireId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdderSpec {
    pub n: usize,
    pub carry_in: bool,
    pub carry_out: bool,
}

impl AdderSpec {
    pub fn new(n: usize, carry_in: bool, carry_out: bool) -> Self {
        AdderSpec {
            n,
            carry_in,
            carry_out,
        }
    }

    /// All four carry variants of an `n`-bit adder.
    pub fn variants(n: usize) -> [AdderSpec; 4] {
        [
            AdderSpec::new(n, false, false),
            AdderSpec::new(n, true, false),
            AdderSpec::new(n, false, true),
            AdderSpec::new(n, true, true),
        ]
    }
}

/// Wire assignment for an adder, least significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdderWiring {
    pub a_wires: Vec<WireId>,
    pub b_wires: Vec<WireId>,
    pub carry_in_wire: Option<WireId>,
    pub carry_out_wire: Option<WireId>,
    pub ancilla_wires: Vec<WireId>,
}

impl AdderWiring {
    /// A self-contained layout: `a`, `b`, then carry-in, carry-out and
    /// `ancilla` zeroed qubits. `with_a = false` omits the `A` register.
    pub fn standard(spec: AdderSpec, ancilla: usize, with_a: bool) -> (Vec<Wire>, AdderWiring) {
        let mut wires = Vec::new();
        let mut push = |name: String| {
            let id = wires.len();
            wires.push(Wire::new(id, name, 2));
            id
        };
        let a_wires = if with_a {
            (0..spec.n).map(|i| push(format!("a{i}"))).collect()
        } else {
            Vec::new()
        };
        let b_wires = (0..spec.n).map(|i| push(format!("b{i}"))).collect();
        let carry_in_wire = spec.carry_in.then(|| push("cin".into()));
        let carry_out_wire = spec.carry_out.then(|| push("cout".into()));
        let ancilla_wires = (0..ancilla).map(|i| push(format!("anc{i}"))).collect();
        (
            wires,
            AdderWiring {
                a_wires,
                b_wires,
                carry_in_wire,
                carry_out_wire,
                ancilla_wires,
            },
        )
    }

    fn all(&self) -> impl Iterator<Item = WireId> + '_ {
        self.a_wires
            .iter()
            .chain(&self.b_wires)
            .chain(&self.carry_in_wire)
            .chain(&self.carry_out_wire)
            .chain(&self.ancilla_wires)
            .copied()
    }

    /// Check sizes, carry flags, range and distinctness.
    pub(crate) fn check(&self, spec: AdderSpec, with_a: bool, width: usize) -> Result<(), BuildError> {
        if spec.n == 0 {
            return Err(BuildError::EmptyRegister);
        }
        let want_a = if with_a { spec.n } else { 0 };
        if self.a_wires.len() != want_a || self.b_wires.len() != spec.n {
            return Err(BuildError::RegisterSize(format!(
                "n = {} but |A| = {}, |B| = {}",
                spec.n,
                self.a_wires.len(),
                self.b_wires.len()
            )));
        }
        if spec.carry_in != self.carry_in_wire.is_some() {
            return Err(BuildError::RegisterSize("carry-in flag and wire disagree".into()));
        }
        if spec.carry_out != self.carry_out_wire.is_some() {
            return Err(BuildError::RegisterSize("carry-out flag and wire disagree".into()));
        }
        let mut seen = vec![false; width];
        for w in self.all() {
            if w >= width {
                return Err(crate::error::CircuitError::WireOutOfRange { wire: w, width }.into());
            }
            if seen[w] {
                return Err(BuildError::WiringCollision(w));
            }
            seen[w] = true;
        }
        Ok(())
    }
}

fn floor_log2(m: usize) -> usize {
    (usize::BITS - 1 - m.leading_zeros()) as usize
}

/// Ancilla budget of the logarithmic-depth adder on `m` bits:
/// `2m - w(m) - floor(log2 m)`, with `w` the popcount.
pub fn ancilla_required(m: usize) -> usize {
    assert!(m >= 1, "register size must be positive");
    2 * m - m.count_ones() as usize - floor_log2(m)
}

/// Worst-case ancilla for the constant adder: one fewer than [`ancilla_required`].
pub fn ancilla_required_plus_k(m: usize) -> usize {
    ancilla_required(m) - 1
}

/// Little-endian bits of `k`, rejecting values of `n` bits or more.
pub(crate) fn constant_bits(k: &BigUint, n: usize) -> Result<Vec<bool>, BuildError> {
    if k.bits() > n as u64 {
        return Err(BuildError::ConstantRange {
            k: k.to_string(),
            n,
        });
    }
    Ok((0..n).map(|i| k.bit(i as u64)).collect())
}

pub(crate) fn circuit_for(wires: Vec<Wire>) -> Result<Circuit, BuildError> {
    let mut c = Circuit::new(wires)?;
    for w in 0..c.width() {
        c.set_interface(w, 2)?;
    }
    Ok(c)
}
