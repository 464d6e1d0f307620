//! Linear-depth adders that need no ancilla at all.
//!
//! With a carry-in wire the majority/unmajority ladder uses that wire as its
//! scratch bit and restores it. Without one, the ladder is rearranged so the
//! running carry lives on the `A` wires themselves and is undone afterwards.

use super::{circuit_for, AdderSpec, AdderWiring};
use crate::error::BuildError;
use crate::ir::{Circuit, Gate, Wire, WireId};

fn maj(c: WireId, b: WireId, a: WireId, g: &mut Vec<Gate>) {
    g.push(Gate::cx(a, b));
    g.push(Gate::cx(a, c));
    g.push(Gate::ccx(c, b, a));
}

fn uma(c: WireId, b: WireId, a: WireId, g: &mut Vec<Gate>) {
    g.push(Gate::ccx(c, b, a));
    g.push(Gate::cx(a, c));
    g.push(Gate::cx(c, b));
}

fn ladder_with_carry_in(a: &[WireId], b: &[WireId], cin: WireId, cout: Option<WireId>) -> Vec<Gate> {
    let n = a.len();
    let mut g = Vec::new();
    maj(cin, b[0], a[0], &mut g);
    for i in 1..n {
        maj(a[i - 1], b[i], a[i], &mut g);
    }
    if let Some(z) = cout {
        g.push(Gate::cx(a[n - 1], z));
    }
    for i in (1..n).rev() {
        uma(a[i - 1], b[i], a[i], &mut g);
    }
    uma(cin, b[0], a[0], &mut g);
    g
}

fn ladder_without_carry_in(a: &[WireId], b: &[WireId], cout: Option<WireId>) -> Vec<Gate> {
    let n = a.len();
    let mut g = Vec::new();
    if n == 1 {
        if let Some(z) = cout {
            g.push(Gate::ccx(a[0], b[0], z));
        }
        g.push(Gate::cx(a[0], b[0]));
        return g;
    }
    for i in 1..n {
        g.push(Gate::cx(a[i], b[i]));
    }
    if let Some(z) = cout {
        g.push(Gate::cx(a[n - 1], z));
    }
    for i in (1..n - 1).rev() {
        g.push(Gate::cx(a[i], a[i + 1]));
    }
    for i in 0..n - 1 {
        g.push(Gate::ccx(a[i], b[i], a[i + 1]));
    }
    if let Some(z) = cout {
        g.push(Gate::ccx(a[n - 1], b[n - 1], z));
    }
    for i in (1..n).rev() {
        g.push(Gate::cx(a[i], b[i]));
        g.push(Gate::ccx(a[i - 1], b[i - 1], a[i]));
    }
    for i in 1..n - 1 {
        g.push(Gate::cx(a[i], a[i + 1]));
    }
    for i in 0..n {
        g.push(Gate::cx(a[i], b[i]));
    }
    g
}

/// Append the ripple adder. `wiring.ancilla_wires` is ignored.
pub fn emit_ripple_adder(circ: &mut Circuit, spec: AdderSpec, wiring: &AdderWiring) -> Result<(), BuildError> {
    wiring.check(spec, true, circ.width())?;
    let gates = match wiring.carry_in_wire {
        Some(cin) => ladder_with_carry_in(&wiring.a_wires, &wiring.b_wires, cin, wiring.carry_out_wire),
        None => ladder_without_carry_in(&wiring.a_wires, &wiring.b_wires, wiring.carry_out_wire),
    };
    for g in gates {
        circ.push(g)?;
    }
    Ok(())
}

pub fn build_ripple_adder(wires: Vec<Wire>, spec: AdderSpec, wiring: &AdderWiring) -> Result<Circuit, BuildError> {
    let mut c = circuit_for(wires)?;
    emit_ripple_adder(&mut c, spec, wiring)?;
    Ok(c)
}
