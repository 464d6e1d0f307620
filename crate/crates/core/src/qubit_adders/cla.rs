//! Logarithmic-depth carry-lookahead adder.
//!
//! Layout of one `n`-bit addition:
//!
//! 1. generate bits `a_i b_i` into the carry register, propagate bits
//!    `a_i ^ b_i` into `B`, carry-in folded into position 0;
//! 2. a prefix tree turns generates into carries (P, G, C and P^-1 rounds
//!    over products of propagate bits);
//! 3. `B ^= carries`, which leaves the sum in `B`;
//! 4. the carries are erased by running step 1-2 backwards on `(A, !S)`,
//!    whose carries coincide with those of `(A, B)`.
//!
//! The constant adder uses the same gate schedule with every gate that reads
//! `a_i` either dropped (`k_i = 0`) or stripped of that control (`k_i = 1`).

use num_bigint::BigUint;

use super::{circuit_for, constant_bits, floor_log2, AdderSpec, AdderWiring};
use crate::error::BuildError;
use crate::ir::{Circuit, Gate, Wire, WireId};

#[derive(Clone, Copy)]
enum Addend<'a> {
    Register(&'a [WireId]),
    Constant(&'a [bool]),
}

impl Addend<'_> {
    /// `target ^= a_i`
    fn cx(&self, i: usize, target: WireId, out: &mut Vec<Gate>) {
        match self {
            Addend::Register(a) => out.push(Gate::cx(a[i], target)),
            Addend::Constant(k) => {
                if k[i] {
                    out.push(Gate::x(target));
                }
            }
        }
    }

    /// `target ^= a_i & other`
    fn ccx(&self, i: usize, other: WireId, target: WireId, out: &mut Vec<Gate>) {
        match self {
            Addend::Register(a) => out.push(Gate::ccx(a[i], other, target)),
            Addend::Constant(k) => {
                if k[i] {
                    out.push(Gate::cx(other, target));
                }
            }
        }
    }
}

/// Ancilla holding propagate products inside the prefix tree for `k` bits.
pub fn tree_ancilla(k: usize) -> usize {
    if k < 2 {
        return 0;
    }
    (1..floor_log2(k)).map(|t| (k >> t) - 1).sum()
}

/// Depth bound `DEPTH_SLOPE * floor(log2 n) + DEPTH_OFFSET`, met by every carry
/// variant of both the `A + B` and `+K` builders (checked up to n = 512).
pub const DEPTH_SLOPE: usize = 4;
pub const DEPTH_OFFSET: usize = 12;

/// Ancilla the builder actually draws from the supplied pool.
pub fn cla_ancilla_used(n: usize, carry_out: bool) -> usize {
    let k = if carry_out { n } else { n - 1 };
    (n - 1) + tree_ancilla(k)
}

/// Propagate products `P_t[x]`, `t >= 1`, mapped onto ancilla wires.
struct Tree<'a> {
    b: &'a [WireId],
    offsets: Vec<usize>,
    wires: &'a [WireId],
}

impl<'a> Tree<'a> {
    fn new(k: usize, b: &'a [WireId], wires: &'a [WireId]) -> Self {
        let levels = if k < 2 { 0 } else { floor_log2(k) };
        let mut offsets = vec![0];
        for t in 1..levels {
            offsets.push(offsets[t - 1] + (k >> t) - 1);
        }
        Tree { b, offsets, wires }
    }

    fn p(&self, t: usize, x: usize) -> WireId {
        if t == 0 {
            self.b[x]
        } else {
            debug_assert!(x >= 1);
            self.wires[self.offsets[t - 1] + x - 1]
        }
    }
}

/// Gates taking `(A, B, 0)` to `(A, A ^ B, carries)` over the low `k` bits:
/// afterwards `z[j]` holds the carry into bit `j` for `1 <= j <= k`.
fn carry_gates(
    k: usize,
    addend: Addend,
    b: &[WireId],
    cin: Option<WireId>,
    z: &[WireId],
    tree_wires: &[WireId],
) -> Vec<Gate> {
    let mut g = Vec::new();
    if k == 0 {
        return g;
    }
    // z is indexed from 1: z[j - 1] holds the carry into bit j.
    let zw = |j: usize| z[j - 1];
    for i in 0..k {
        addend.ccx(i, b[i], zw(i + 1), &mut g);
    }
    for i in 0..k {
        addend.cx(i, b[i], &mut g);
    }
    if let Some(c) = cin {
        g.push(Gate::ccx(c, b[0], zw(1)));
    }

    let levels = floor_log2(k);
    let tree = Tree::new(k, b, tree_wires);
    // P rounds
    for t in 1..levels {
        for x in 1..(k >> t) {
            g.push(Gate::ccx(tree.p(t - 1, 2 * x), tree.p(t - 1, 2 * x + 1), tree.p(t, x)));
        }
    }
    // G rounds
    for t in 1..=levels {
        let step = 1 << t;
        let half = step >> 1;
        for m in 0..(k >> t) {
            g.push(Gate::ccx(zw(step * m + half), tree.p(t - 1, 2 * m + 1), zw(step * (m + 1))));
        }
    }
    // C rounds
    let mut top = 0;
    while 3 * (1 << (top + 1)) <= 2 * k {
        top += 1;
    }
    for t in (1..=top).rev() {
        let step = 1 << t;
        let half = step >> 1;
        if k < half {
            continue;
        }
        for m in 1..=((k - half) / step) {
            g.push(Gate::ccx(zw(step * m), tree.p(t - 1, 2 * m), zw(step * m + half)));
        }
    }
    // P^-1 rounds
    for t in (1..levels).rev() {
        for x in 1..(k >> t) {
            g.push(Gate::ccx(tree.p(t - 1, 2 * x), tree.p(t - 1, 2 * x + 1), tree.p(t, x)));
        }
    }
    g
}

fn adder_gates(spec: AdderSpec, addend: Addend, wiring: &AdderWiring) -> Result<Vec<Gate>, BuildError> {
    let n = spec.n;
    let need = cla_ancilla_used(n, spec.carry_out);
    if wiring.ancilla_wires.len() < need {
        return Err(BuildError::InsufficientAncilla {
            need,
            have: wiring.ancilla_wires.len(),
        });
    }
    let b = &wiring.b_wires;
    let cin = wiring.carry_in_wire;
    let k = if spec.carry_out { n } else { n - 1 };
    let mut z: Vec<WireId> = wiring.ancilla_wires[..n - 1].to_vec();
    if let Some(co) = wiring.carry_out_wire {
        z.push(co);
    }
    let tree_wires = &wiring.ancilla_wires[n - 1..];

    let mut g = carry_gates(k, addend, b, cin, &z, tree_wires);
    for i in k..n {
        addend.cx(i, b[i], &mut g);
    }
    // sum layer
    if let Some(c) = cin {
        g.push(Gate::cx(c, b[0]));
    }
    for i in 1..n {
        g.push(Gate::cx(z[i - 1], b[i]));
    }
    // erase the carries into bits 1..n-1
    if n >= 2 {
        for &w in &b[..n - 1] {
            g.push(Gate::x(w));
        }
        for (i, &w) in b[..n - 1].iter().enumerate() {
            addend.cx(i, w, &mut g);
        }
        let undo = carry_gates(n - 1, addend, b, cin, &z[..n - 1], tree_wires);
        // every gate here is a self-inverse flip
        g.extend(undo.into_iter().rev());
        for &w in &b[..n - 1] {
            g.push(Gate::x(w));
        }
    }
    Ok(g)
}

pub(crate) fn cla_adder_gates(spec: AdderSpec, wiring: &AdderWiring, width: usize) -> Result<Vec<Gate>, BuildError> {
    wiring.check(spec, true, width)?;
    adder_gates(spec, Addend::Register(&wiring.a_wires), wiring)
}

pub(crate) fn plus_k_gates(spec: AdderSpec, wiring: &AdderWiring, k: &BigUint, width: usize) -> Result<Vec<Gate>, BuildError> {
    wiring.check(spec, false, width)?;
    let bits = constant_bits(k, spec.n)?;
    adder_gates(spec, Addend::Constant(&bits), wiring)
}

/// Append the `(A + B)` carry-lookahead adder to `circ`.
pub fn emit_cla_adder(circ: &mut Circuit, spec: AdderSpec, wiring: &AdderWiring) -> Result<(), BuildError> {
    for g in cla_adder_gates(spec, wiring, circ.width())? {
        circ.push(g)?;
    }
    Ok(())
}

/// Append the `(+K)` constant adder to `circ`; `wiring.a_wires` must be empty.
pub fn emit_plus_k(circ: &mut Circuit, spec: AdderSpec, wiring: &AdderWiring, k: &BigUint) -> Result<(), BuildError> {
    for g in plus_k_gates(spec, wiring, k, circ.width())? {
        circ.push(g)?;
    }
    Ok(())
}

pub fn build_cla_adder(wires: Vec<Wire>, spec: AdderSpec, wiring: &AdderWiring) -> Result<Circuit, BuildError> {
    let mut c = circuit_for(wires)?;
    emit_cla_adder(&mut c, spec, wiring)?;
    Ok(c)
}

pub fn build_plus_k(wires: Vec<Wire>, spec: AdderSpec, wiring: &AdderWiring, k: &BigUint) -> Result<Circuit, BuildError> {
    let mut c = circuit_for(wires)?;
    emit_plus_k(&mut c, spec, wiring, k)?;
    Ok(c)
}
