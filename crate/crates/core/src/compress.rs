//! Qubit-to-qudit compression.
//!
//! A compressor rewrites `m` binary digits into `n_out` higher-radix digits
//! and leaves the remaining `m - n_out` wires at 0, ready to be borrowed as
//! clean ancilla. Decompression is the inverse circuit run with any zeroed
//! wire in the ancilla position.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::BuildError;
use crate::ir::{Circuit, Digit, Gate, Wire, WireId};

/// An x-y-z compression: `m` radix-`x` inputs into `n_out` radix-`y`
/// outputs, freeing `z = m - n_out` wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompressionScheme {
    pub x: Digit,
    pub y: Digit,
    pub z: usize,
    pub m: usize,
    pub n_out: usize,
}

impl CompressionScheme {
    /// Three qubits into two qutrits and one ancilla.
    pub const TWO_THREE_ONE: CompressionScheme = CompressionScheme {
        x: 2,
        y: 3,
        z: 1,
        m: 3,
        n_out: 2,
    };

    /// Two qubits into one ququart and one ancilla.
    pub const TWO_FOUR_ONE: CompressionScheme = CompressionScheme {
        x: 2,
        y: 4,
        z: 1,
        m: 2,
        n_out: 1,
    };

    /// Build a scheme, checking that it exists.
    pub fn new(x: Digit, y: Digit, m: usize, n_out: usize) -> Option<Self> {
        feasible(x, y, m, n_out).then_some(CompressionScheme {
            x,
            y,
            z: m - n_out,
            m,
            n_out,
        })
    }

    /// Short label such as `2-3-1`.
    pub fn label(&self) -> String {
        format!("{}-{}-{}", self.x, self.y, self.z)
    }

    /// Parse `231`, `2-3-1`, `241` or `2-4-1`.
    pub fn parse_builtin(s: &str) -> Option<Self> {
        match s.trim() {
            "231" | "2-3-1" => Some(Self::TWO_THREE_ONE),
            "241" | "2-4-1" => Some(Self::TWO_FOUR_ONE),
            _ => None,
        }
    }

    fn is_builtin(&self) -> bool {
        *self == Self::TWO_THREE_ONE || *self == Self::TWO_FOUR_ONE
    }

    /// Ancilla produced by compressing `count` wires group by group.
    pub fn ancilla_from(&self, count: usize) -> usize {
        (count / self.m) * self.z
    }
}

/// Does an x-y-z compression with `m` inputs and `n_out` outputs exist?
pub fn feasible(x: Digit, y: Digit, m: usize, n_out: usize) -> bool {
    if x < 2 || y < 2 || n_out == 0 || n_out >= m {
        return false;
    }
    BigUint::from(x).pow(m as u32) <= BigUint::from(y).pow(n_out as u32)
}

/// Bookkeeping for one compressed group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedGroup {
    /// Input wires in order.
    pub orig: Vec<WireId>,
    /// Wires holding the encoded value.
    pub storage: Vec<WireId>,
    /// Wires left at 0.
    pub ancilla: Vec<WireId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedLayout {
    pub groups: Vec<CompressedGroup>,
    pub leftover: Vec<WireId>,
}

impl CompressedLayout {
    /// All generated ancilla, in group order.
    pub fn ancilla(&self) -> Vec<WireId> {
        self.groups
            .iter()
            .flat_map(|g| g.ancilla.iter().copied())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("layout serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn require_dim(c: &Circuit, wire: WireId, need: Digit, what: &'static str) -> Result<(), BuildError> {
    let width = c.width();
    if wire >= width {
        return Err(crate::error::CircuitError::WireOutOfRange { wire, width }.into());
    }
    let dim = c.dim(wire);
    if dim < need {
        return Err(BuildError::InsufficientDim {
            what,
            wire,
            dim,
            need,
        });
    }
    Ok(())
}

/// The 2-3-1 compressor on `(a, b, c)`; `c` ends at 0 on binary input.
///
/// Five singly-controlled gates and one doubly-controlled gate. On binary
/// inputs no digit leaves `{0, 1, 2}`.
fn gates_231(a: WireId, b: WireId, c: WireId) -> Vec<Gate> {
    vec![
        Gate::increment(1, b).controlled(c, 1),
        Gate::x(c).controlled(b, 2),
        Gate::flip(0, 2, a).controlled(c, 1),
        Gate::flip(1, 2, b).controlled(a, 2),
        Gate::flip(1, 2, a).controlled(b, 1).controlled(c, 1),
        Gate::x(c).controlled(a, 2),
    ]
}

/// The 2-4-1 compressor on `(a, b)`: `a' = a + 2b`, `b' = 0`.
fn gates_241(a: WireId, b: WireId) -> Vec<Gate> {
    vec![
        Gate::increment(2, a).controlled(b, 1),
        Gate::x(b).controlled(a, 2),
        Gate::x(b).controlled(a, 3),
    ]
}

pub fn emit_compress_231(circ: &mut Circuit, a: WireId, b: WireId, c: WireId) -> Result<(), BuildError> {
    for w in [a, b, c] {
        require_dim(circ, w, 3, "2-3-1 compression")?;
    }
    for g in gates_231(a, b, c) {
        circ.push(g)?;
    }
    Ok(())
}

pub fn emit_compress_241(circ: &mut Circuit, a: WireId, b: WireId) -> Result<(), BuildError> {
    require_dim(circ, a, 4, "2-4-1 compression")?;
    require_dim(circ, b, 2, "2-4-1 compression")?;
    for g in gates_241(a, b) {
        circ.push(g)?;
    }
    Ok(())
}

/// The 2-3-1 compressor over `wires`.
pub fn build_compress_231(wires: Vec<Wire>, a: WireId, b: WireId, c: WireId) -> Result<Circuit, BuildError> {
    let mut circ = Circuit::new(wires)?;
    emit_compress_231(&mut circ, a, b, c)?;
    Ok(circ)
}

/// The 2-4-1 compressor over `wires`.
pub fn build_compress_241(wires: Vec<Wire>, a: WireId, b: WireId) -> Result<Circuit, BuildError> {
    let mut circ = Circuit::new(wires)?;
    emit_compress_241(&mut circ, a, b)?;
    Ok(circ)
}

/// Three qutrit wires `A, B, C` with binary interface, compressed.
pub fn compress_231_circuit() -> Circuit {
    let wires = ["A", "B", "C"]
        .iter()
        .enumerate()
        .map(|(i, n)| Wire::new(i, *n, 3))
        .collect();
    let mut c = build_compress_231(wires, 0, 1, 2).expect("qutrit wires");
    for w in 0..3 {
        c.set_interface(w, 2).expect("binary interface");
    }
    c
}

/// A ququart `A` and a qubit `B` with binary interface, compressed.
pub fn compress_241_circuit() -> Circuit {
    let wires = vec![Wire::new(0, "A", 4), Wire::new(1, "B", 2)];
    let mut c = build_compress_241(wires, 0, 1).expect("ququart wire");
    c.set_interface(0, 2).expect("binary interface");
    c
}

fn group_gates(circ: &Circuit, scheme: CompressionScheme, orig: &[WireId]) -> Result<Vec<Gate>, BuildError> {
    if !scheme.is_builtin() {
        return Err(BuildError::UnsupportedScheme(scheme.label()));
    }
    if orig.len() != scheme.m {
        return Err(BuildError::RegisterSize(format!(
            "{} group needs {} wires, got {}",
            scheme.label(),
            scheme.m,
            orig.len()
        )));
    }
    if scheme == CompressionScheme::TWO_THREE_ONE {
        for &w in orig {
            require_dim(circ, w, 3, "2-3-1 compression")?;
        }
        Ok(gates_231(orig[0], orig[1], orig[2]))
    } else {
        require_dim(circ, orig[0], 4, "2-4-1 compression")?;
        require_dim(circ, orig[1], 2, "2-4-1 compression")?;
        Ok(gates_241(orig[0], orig[1]))
    }
}

/// Append the compressor for `scheme` on one group (`orig` in order).
pub fn emit_compress_group(circ: &mut Circuit, scheme: CompressionScheme, orig: &[WireId]) -> Result<(), BuildError> {
    for g in group_gates(circ, scheme, orig)? {
        circ.push(g)?;
    }
    Ok(())
}

/// Append the inverse compressor for one group, recovering `storage ++ ancilla`.
pub fn emit_decompress_group(
    circ: &mut Circuit,
    scheme: CompressionScheme,
    storage: &[WireId],
    ancilla: &[WireId],
) -> Result<(), BuildError> {
    let orig: Vec<WireId> = storage.iter().chain(ancilla).copied().collect();
    for g in group_gates(circ, scheme, &orig)?.iter().rev() {
        let inv = g.inverse(circ.dim(g.targets[0]));
        circ.push(inv)?;
    }
    Ok(())
}

/// Decompression with `ancilla` (which must hold 0) standing in for the
/// freed wire of the group.
pub fn build_decompress(
    wires: Vec<Wire>,
    scheme: CompressionScheme,
    storage: &[WireId],
    ancilla: WireId,
) -> Result<Circuit, BuildError> {
    if !scheme.is_builtin() {
        return Err(BuildError::UnsupportedScheme(scheme.label()));
    }
    let mut circ = Circuit::new(wires)?;
    emit_decompress_group(&mut circ, scheme, storage, &[ancilla])?;
    Ok(circ)
}

/// Group consecutive wires of `wires` into `scheme.m`-tuples; the last
/// `scheme.z` wires of each tuple become ancilla.
pub fn plan_layout(wires: &[WireId], scheme: CompressionScheme) -> CompressedLayout {
    let mut groups = Vec::new();
    let mut chunks = wires.chunks_exact(scheme.m);
    for chunk in chunks.by_ref() {
        groups.push(CompressedGroup {
            orig: chunk.to_vec(),
            storage: chunk[..scheme.n_out].to_vec(),
            ancilla: chunk[scheme.n_out..].to_vec(),
        });
    }
    CompressedLayout {
        groups,
        leftover: chunks.remainder().to_vec(),
    }
}

pub fn emit_compress_layout(circ: &mut Circuit, scheme: CompressionScheme, layout: &CompressedLayout) -> Result<(), BuildError> {
    for g in &layout.groups {
        emit_compress_group(circ, scheme, &g.orig)?;
    }
    Ok(())
}

pub fn emit_decompress_layout(circ: &mut Circuit, scheme: CompressionScheme, layout: &CompressedLayout) -> Result<(), BuildError> {
    for g in layout.groups.iter().rev() {
        emit_decompress_group(circ, scheme, &g.storage, &g.ancilla)?;
    }
    Ok(())
}

/// Compress `wires` group by group over the wire list `all`.
pub fn compress_block(
    all: Vec<Wire>,
    wires: &[WireId],
    scheme: CompressionScheme,
) -> Result<(Circuit, CompressedLayout), BuildError> {
    if wires.is_empty() {
        return Err(BuildError::EmptyCompression);
    }
    if !scheme.is_builtin() {
        return Err(BuildError::UnsupportedScheme(scheme.label()));
    }
    let layout = plan_layout(wires, scheme);
    let mut circ = Circuit::new(all)?;
    emit_compress_layout(&mut circ, scheme, &layout)?;
    Ok((circ, layout))
}
