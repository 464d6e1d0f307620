//! Block adders that need no external ancilla.
//!
//! The registers are cut into `c` equal blocks. While one block is being
//! added, every other block sits compressed, and the wires freed by
//! compression feed the carry-lookahead sub-adder and hold the carries passed
//! between blocks. Once all blocks are summed, the carries are erased in
//! reverse block order (undo the block's addition with carry-out, redo it
//! without) and everything is decompressed.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::compress::{emit_compress_layout, emit_decompress_layout, plan_layout, CompressedLayout, CompressionScheme};
use crate::error::BuildError;
use crate::ir::{Circuit, Gate, Wire, WireId};
use crate::qubit_adders::{
    cla_adder_gates, cla_ancilla_used, emit_ripple_adder, plus_k_gates, AdderSpec, AdderWiring,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `B <- A + B` over two registers.
    APlusB,
    /// `B <- B + K` for a classical constant `K`.
    PlusK,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::APlusB => "a+b",
            Mode::PlusK => "+k",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a+b" => Some(Mode::APlusB),
            "+k" => Some(Mode::PlusK),
            _ => None,
        }
    }

    /// Register wires per bit of `n`.
    fn registers(&self) -> usize {
        match self {
            Mode::APlusB => 2,
            Mode::PlusK => 1,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed-form worst-case test: ancilla generated by compressing every other
/// block, `floor((c-1) r n z / (m c))`, must cover `2n/c + c - 1`, where `r`
/// is the number of registers.
pub fn worst_case_feasible(mode: Mode, scheme: CompressionScheme, n: usize, c: usize) -> bool {
    if c < 2 {
        return false;
    }
    let r = mode.registers();
    let generated = ((c - 1) * r * n * scheme.z) / (scheme.m * c);
    // generated >= 2n/c + c - 1, scaled by c
    c * generated >= 2 * n + c * (c - 1)
}

/// Human-readable form of the inequality [`worst_case_feasible`] checks.
pub fn inequality_text(mode: Mode, scheme: CompressionScheme) -> String {
    let per = scheme.m / scheme.z;
    match mode {
        Mode::APlusB => format!("floor((c-1)*2n/({per}c)) >= 2n/c + c - 1"),
        Mode::PlusK => format!("floor((c-1)*n/({per}c)) >= 2n/c + c - 1"),
    }
}

/// Per-step ancilla supply and peak demand for `c` equal blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepBudget {
    /// Ancilla generated by compressing all blocks but the active one.
    pub supply: usize,
    /// Largest number needed at any step: sub-adder scratch, its carry-out
    /// and every live carry slot.
    pub demand: usize,
}

impl StepBudget {
    pub fn fits(&self) -> bool {
        self.supply >= self.demand
    }
}

/// Exact accounting for `c` blocks, `None` unless `c` divides `n`.
pub fn step_budget(mode: Mode, scheme: CompressionScheme, n: usize, c: usize) -> Option<StepBudget> {
    if c < 2 || !n.is_multiple_of(c) {
        return None;
    }
    let s = n / c;
    let per_block = scheme.ancilla_from(mode.registers() * s);
    // Forward step c-2 holds c-2 slots plus a fresh carry-out; the undo of
    // block i holds i slots plus the relocated carry. Both peak at c-1.
    Some(StepBudget {
        supply: (c - 1) * per_block,
        demand: (c - 1) + cla_ancilla_used(s, true),
    })
}

/// Smallest `c` dividing `n` whose exact accounting fits, ignoring the
/// closed-form bound.
pub fn min_blocks_exact(mode: Mode, scheme: CompressionScheme, n: usize) -> Option<usize> {
    (2..=n).find(|&c| step_budget(mode, scheme, n, c).is_some_and(|b| b.fits()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPlan {
    pub mode: Mode,
    pub scheme: CompressionScheme,
    pub n: usize,
    pub c: usize,
    /// Wires of each block, in compression order.
    pub blocks: Vec<Vec<WireId>>,
    pub layouts: Vec<CompressedLayout>,
    /// Carry slot for the carry out of block `i`, `i < c - 1`.
    pub carry_slots: Vec<WireId>,
    pub budget: StepBudget,
    /// Whether the closed-form worst-case inequality also holds.
    pub worst_case_ok: bool,
}

/// Wire ids of the standard register layout.
///
/// `A+B`: `a_i = i`, `b_i = n + i`. `+K`: `b_i = i`. Carry-in and carry-out
/// wires, when present, follow the registers in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    pub a: Vec<WireId>,
    pub b: Vec<WireId>,
    pub carry_in: Option<WireId>,
    pub carry_out: Option<WireId>,
}

impl RegisterLayout {
    pub fn new(mode: Mode, n: usize, carry_in: bool, carry_out: bool) -> Self {
        let (a, b): (Vec<WireId>, Vec<WireId>) = match mode {
            Mode::APlusB => ((0..n).collect(), (n..2 * n).collect()),
            Mode::PlusK => (Vec::new(), (0..n).collect()),
        };
        let mut next = a.len() + b.len();
        let mut take = |on: bool| {
            on.then(|| {
                next += 1;
                next - 1
            })
        };
        let carry_in = take(carry_in);
        let carry_out = take(carry_out);
        RegisterLayout {
            a,
            b,
            carry_in,
            carry_out,
        }
    }

    pub fn width(&self) -> usize {
        self.a.len() + self.b.len() + self.carry_in.is_some() as usize + self.carry_out.is_some() as usize
    }
}

impl BlockPlan {
    /// Plan with a fixed block count, checked only by exact accounting.
    pub fn with_blocks(mode: Mode, scheme: CompressionScheme, n: usize, c: usize) -> Result<Self, BuildError> {
        if n == 0 {
            return Err(BuildError::EmptyRegister);
        }
        if c < 2 {
            return Err(BuildError::Infeasible(format!("need at least 2 blocks, got c = {c}")));
        }
        if !n.is_multiple_of(c) {
            return Err(BuildError::Infeasible(format!(
                "block count c = {c} must divide n = {n}"
            )));
        }
        if scheme != CompressionScheme::TWO_THREE_ONE && scheme != CompressionScheme::TWO_FOUR_ONE {
            return Err(BuildError::UnsupportedScheme(scheme.label()));
        }
        let budget = step_budget(mode, scheme, n, c).expect("c divides n");
        if !budget.fits() {
            return Err(BuildError::Infeasible(format!(
                "{c} blocks of {n} bits generate {} ancilla per step but need {}",
                budget.supply, budget.demand
            )));
        }
        let regs = RegisterLayout::new(mode, n, false, false);
        let s = n / c;
        let blocks: Vec<Vec<WireId>> = (0..c)
            .map(|i| match mode {
                Mode::APlusB => (i * s..(i + 1) * s).flat_map(|j| [regs.a[j], regs.b[j]]).collect(),
                Mode::PlusK => regs.b[i * s..(i + 1) * s].to_vec(),
            })
            .collect();
        let layouts: Vec<CompressedLayout> = blocks.iter().map(|b| plan_layout(b, scheme)).collect();
        let mut carry_slots = Vec::with_capacity(c - 1);
        for (i, layout) in layouts.iter().take(c - 1).enumerate() {
            let slot = layout.ancilla().first().copied().ok_or_else(|| {
                BuildError::Infeasible(format!("block {i} is too small to hold a carry"))
            })?;
            carry_slots.push(slot);
        }
        Ok(BlockPlan {
            mode,
            scheme,
            n,
            c,
            blocks,
            layouts,
            carry_slots,
            budget,
            worst_case_ok: worst_case_feasible(mode, scheme, n, c),
        })
    }

    pub fn block_size(&self) -> usize {
        self.n / self.c
    }

    /// Ancilla generated per compressed block.
    pub fn ancilla_per_block(&self) -> usize {
        self.layouts[0].ancilla().len()
    }

    /// The plan sidecar JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PlanSidecar::from(self)).expect("plan serializes")
    }
}

/// Serialized form of a [`BlockPlan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanSidecar {
    pub mode: String,
    pub scheme: String,
    pub n: usize,
    pub c: usize,
    pub blocks: Vec<Vec<WireId>>,
    pub carry_slots: Vec<WireId>,
}

impl From<&BlockPlan> for PlanSidecar {
    fn from(p: &BlockPlan) -> Self {
        PlanSidecar {
            mode: p.mode.as_str().to_string(),
            scheme: p.scheme.label(),
            n: p.n,
            c: p.c,
            blocks: p.blocks.clone(),
            carry_slots: p.carry_slots.clone(),
        }
    }
}

impl PlanSidecar {
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Rebuild the full plan this sidecar describes.
    pub fn to_plan(&self) -> Result<BlockPlan, BuildError> {
        let mode = Mode::parse(&self.mode).ok_or_else(|| BuildError::Infeasible(format!("unknown mode {:?}", self.mode)))?;
        let scheme = CompressionScheme::parse_builtin(&self.scheme).ok_or_else(|| BuildError::UnsupportedScheme(self.scheme.clone()))?;
        BlockPlan::with_blocks(mode, scheme, self.n, self.c)
    }
}

/// Smallest block count `c >= 2` dividing `n` for which the worst-case
/// inequality holds and exact per-step accounting fits.
pub fn plan_blocks(mode: Mode, scheme: CompressionScheme, n: usize) -> Option<BlockPlan> {
    (2..=n)
        .filter(|&c| n.is_multiple_of(c) && worst_case_feasible(mode, scheme, n, c))
        .find_map(|c| BlockPlan::with_blocks(mode, scheme, n, c).ok())
}

/// Like [`plan_blocks`], with an error naming the violated inequality.
pub fn require_plan(mode: Mode, scheme: CompressionScheme, n: usize) -> Result<BlockPlan, BuildError> {
    plan_blocks(mode, scheme, n).ok_or_else(|| {
        BuildError::Infeasible(format!(
            "no block count c >= 2 dividing n = {n} satisfies {} for {} {} adder",
            inequality_text(mode, scheme),
            scheme.label(),
            mode
        ))
    })
}

/// Wires of a block adder circuit: registers on capacity-`y` wires with a
/// binary interface, carry wires as plain qubits.
pub fn block_wires(plan: &BlockPlan, regs: &RegisterLayout) -> Vec<Wire> {
    let dim = plan.scheme.y;
    let mut wires = Vec::with_capacity(regs.width());
    for (i, _) in regs.a.iter().enumerate() {
        wires.push(Wire::new(wires.len(), format!("a{i}"), dim));
    }
    for (i, _) in regs.b.iter().enumerate() {
        wires.push(Wire::new(wires.len(), format!("b{i}"), dim));
    }
    if regs.carry_in.is_some() {
        wires.push(Wire::new(wires.len(), "cin", 2));
    }
    if regs.carry_out.is_some() {
        wires.push(Wire::new(wires.len(), "cout", 2));
    }
    wires
}

/// Gate index boundaries of the three phases of a block adder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phases {
    /// End of the forward sweep (all blocks summed, every block compressed).
    pub forward_end: usize,
    /// End of carry erasure.
    pub uncompute_end: usize,
}

/// Incremental assembly of a block adder.
pub struct BlockAssembler<'a> {
    plan: &'a BlockPlan,
    regs: RegisterLayout,
    constant: Option<BigUint>,
    circ: Circuit,
    compressed: Vec<bool>,
    live: BTreeSet<WireId>,
}

impl<'a> BlockAssembler<'a> {
    pub fn new(plan: &'a BlockPlan, carry_in: bool, carry_out: bool, constant: Option<BigUint>) -> Result<Self, BuildError> {
        match (plan.mode, &constant) {
            (Mode::APlusB, Some(_)) => {
                return Err(BuildError::ModeMismatch {
                    expected: "+k",
                    found: "a+b",
                })
            }
            (Mode::PlusK, None) => {
                return Err(BuildError::ModeMismatch {
                    expected: "a+b",
                    found: "+k",
                })
            }
            (Mode::PlusK, Some(k)) if k.bits() > plan.n as u64 => {
                return Err(BuildError::ConstantRange {
                    k: k.to_string(),
                    n: plan.n,
                })
            }
            _ => {}
        }
        let regs = RegisterLayout::new(plan.mode, plan.n, carry_in, carry_out);
        let mut circ = Circuit::new(block_wires(plan, &regs))?;
        for w in 0..circ.width() {
            circ.set_interface(w, 2)?;
        }
        Ok(BlockAssembler {
            plan,
            regs,
            constant,
            circ,
            compressed: vec![false; plan.c],
            live: BTreeSet::new(),
        })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circ
    }

    pub fn registers(&self) -> &RegisterLayout {
        &self.regs
    }

    fn compress(&mut self, i: usize) -> Result<(), BuildError> {
        debug_assert!(!self.compressed[i]);
        emit_compress_layout(&mut self.circ, self.plan.scheme, &self.plan.layouts[i])?;
        self.compressed[i] = true;
        Ok(())
    }

    fn decompress(&mut self, i: usize) -> Result<(), BuildError> {
        debug_assert!(self.compressed[i]);
        emit_decompress_layout(&mut self.circ, self.plan.scheme, &self.plan.layouts[i])?;
        self.compressed[i] = false;
        Ok(())
    }

    /// Free generated ancilla outside block `active`, ascending.
    fn pool(&self, active: usize) -> Vec<WireId> {
        let mut pool: Vec<WireId> = (0..self.plan.c)
            .filter(|&j| j != active && self.compressed[j])
            .flat_map(|j| self.plan.layouts[j].ancilla())
            .filter(|w| !self.live.contains(w))
            .collect();
        pool.sort_unstable();
        pool
    }

    fn stage_gates(&self, i: usize, cin: Option<WireId>, cout: Option<WireId>, pool: &[WireId]) -> Result<Vec<Gate>, BuildError> {
        let s = self.plan.block_size();
        let spec = AdderSpec::new(s, cin.is_some(), cout.is_some());
        let need = cla_ancilla_used(s, cout.is_some());
        if pool.len() < need {
            return Err(BuildError::InsufficientAncilla {
                need,
                have: pool.len(),
            });
        }
        let bits = i * s..(i + 1) * s;
        let wiring = AdderWiring {
            a_wires: self.regs.a.get(bits.clone()).map(<[_]>::to_vec).unwrap_or_default(),
            b_wires: self.regs.b[bits].to_vec(),
            carry_in_wire: cin,
            carry_out_wire: cout,
            ancilla_wires: pool[..need].to_vec(),
        };
        match &self.constant {
            None => cla_adder_gates(spec, &wiring, self.circ.width()),
            Some(k) => {
                let chunk = (k >> (i * s)) & ((BigUint::from(1u8) << s) - 1u8);
                plus_k_gates(spec, &wiring, &chunk, self.circ.width())
            }
        }
    }

    fn carry_into(&self, i: usize) -> Option<WireId> {
        if i == 0 {
            self.regs.carry_in
        } else {
            Some(self.plan.carry_slots[i - 1])
        }
    }

    /// Sum every block left to right, chaining carries through slots.
    /// Leaves all blocks compressed.
    pub fn forward(&mut self) -> Result<(), BuildError> {
        let c = self.plan.c;
        for j in 1..c {
            self.compress(j)?;
        }
        for i in 0..c {
            let last = i == c - 1;
            let mut pool = self.pool(i);
            let cout = if last {
                self.regs.carry_out
            } else {
                if pool.is_empty() {
                    return Err(BuildError::InsufficientAncilla { need: 1, have: 0 });
                }
                Some(pool.remove(0))
            };
            for g in self.stage_gates(i, self.carry_into(i), cout, &pool)? {
                self.circ.push(g)?;
            }
            self.compress(i)?;
            if !last {
                let slot = self.plan.carry_slots[i];
                self.circ.push(Gate::swap(cout.expect("inner carry-out"), slot))?;
                self.live.insert(slot);
                self.decompress(i + 1)?;
            }
        }
        Ok(())
    }

    /// Clear every carry slot, last block first, without touching the sums.
    pub fn uncompute_carries(&mut self) -> Result<(), BuildError> {
        for i in (0..self.plan.c - 1).rev() {
            let slot = self.plan.carry_slots[i];
            self.live.remove(&slot);
            let mut pool = self.pool(i);
            if pool.is_empty() {
                return Err(BuildError::InsufficientAncilla { need: 1, have: 0 });
            }
            let held = pool.remove(0);
            self.circ.push(Gate::swap(slot, held))?;
            self.decompress(i)?;
            let cin = self.carry_into(i);
            let with_carry = self.stage_gates(i, cin, Some(held), &pool)?;
            for g in with_carry.iter().rev() {
                let inv = g.inverse(self.circ.dim(g.targets[0]));
                self.circ.push(inv)?;
            }
            for g in self.stage_gates(i, cin, None, &pool)? {
                self.circ.push(g)?;
            }
            self.compress(i)?;
        }
        Ok(())
    }

    /// Decompress everything and return the circuit.
    pub fn finish(mut self) -> Result<Circuit, BuildError> {
        for i in (0..self.plan.c).rev() {
            if self.compressed[i] {
                self.decompress(i)?;
            }
        }
        Ok(self.circ)
    }

    /// Run all three phases.
    pub fn build(mut self) -> Result<(Circuit, Phases), BuildError> {
        self.forward()?;
        let forward_end = self.circ.len();
        self.uncompute_carries()?;
        let uncompute_end = self.circ.len();
        Ok((
            self.finish()?,
            Phases {
                forward_end,
                uncompute_end,
            },
        ))
    }
}

/// Zero-ancilla `B <- (A + B + c_in) mod 2^n`.
pub fn build_block_adder(plan: &BlockPlan, carry_in: bool, carry_out: bool) -> Result<Circuit, BuildError> {
    if plan.mode != Mode::APlusB {
        return Err(BuildError::ModeMismatch {
            expected: "a+b",
            found: plan.mode.as_str(),
        });
    }
    Ok(BlockAssembler::new(plan, carry_in, carry_out, None)?.build()?.0)
}

/// Zero-ancilla `B <- (B + K + c_in) mod 2^n`.
pub fn build_block_plus_k(plan: &BlockPlan, k: &BigUint, carry_in: bool, carry_out: bool) -> Result<Circuit, BuildError> {
    if plan.mode != Mode::PlusK {
        return Err(BuildError::ModeMismatch {
            expected: "+k",
            found: plan.mode.as_str(),
        });
    }
    Ok(BlockAssembler::new(plan, carry_in, carry_out, Some(k.clone()))?.build()?.0)
}

/// Block adder when a plan exists, otherwise the linear-depth ripple adder.
/// Both use exactly the register and carry wires.
pub fn build_zero_ancilla_adder(scheme: CompressionScheme, n: usize, carry_in: bool, carry_out: bool) -> Result<Circuit, BuildError> {
    if let Some(plan) = plan_blocks(Mode::APlusB, scheme, n) {
        return build_block_adder(&plan, carry_in, carry_out);
    }
    let regs = RegisterLayout::new(Mode::APlusB, n, carry_in, carry_out);
    let wires: Vec<Wire> = regs
        .a
        .iter()
        .map(|&i| Wire::new(i, format!("a{i}"), 2))
        .chain(regs.b.iter().enumerate().map(|(i, &w)| Wire::new(w, format!("b{i}"), 2)))
        .chain(regs.carry_in.map(|w| Wire::new(w, "cin", 2)))
        .chain(regs.carry_out.map(|w| Wire::new(w, "cout", 2)))
        .collect();
    let mut circ = Circuit::new(wires)?;
    let wiring = AdderWiring {
        a_wires: regs.a,
        b_wires: regs.b,
        carry_in_wire: regs.carry_in,
        carry_out_wire: regs.carry_out,
        ancilla_wires: Vec::new(),
    };
    emit_ripple_adder(&mut circ, AdderSpec::new(n, carry_in, carry_out), &wiring)?;
    Ok(circ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, BasisState};

    const S231: CompressionScheme = CompressionScheme::TWO_THREE_ONE;
    const S241: CompressionScheme = CompressionScheme::TWO_FOUR_ONE;

    #[test]
    fn thresholds() {
        assert_eq!(plan_blocks(Mode::APlusB, S231, 30).unwrap().c, 5);
        assert_eq!(plan_blocks(Mode::APlusB, S241, 12).unwrap().c, 4);
        assert_eq!(plan_blocks(Mode::PlusK, S231, 168).unwrap().c, 8);
        assert_eq!(plan_blocks(Mode::PlusK, S241, 60).unwrap().c, 6);
        assert!(plan_blocks(Mode::APlusB, S231, 29).is_none());
    }

    #[test]
    fn exact_accounting_can_beat_worst_case() {
        assert_eq!(min_blocks_exact(Mode::APlusB, S241, 12), Some(3));
        assert_eq!(min_blocks_exact(Mode::APlusB, S231, 30), Some(5));
    }

    #[test]
    fn infeasible_message_names_inequality() {
        let err = require_plan(Mode::APlusB, S231, 29).unwrap_err().to_string();
        assert!(err.contains("floor((c-1)*2n/(3c)) >= 2n/c + c - 1"), "{err}");
    }

    #[test]
    fn plan_shape() {
        let p = plan_blocks(Mode::APlusB, S231, 30).unwrap();
        assert_eq!(p.blocks.len(), 5);
        assert_eq!(p.blocks[0][..4], [0, 30, 1, 31]);
        assert_eq!(p.carry_slots.len(), 4);
        assert_eq!(p.carry_slots[0], 1);
        assert!(p.budget.fits() && p.worst_case_ok);
        let json = p.to_json();
        assert!(json.starts_with(r#"{"mode":"a+b","scheme":"2-3-1","n":30,"c":5,"blocks":[[0,30,1,31"#));
        let back: PlanSidecar = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_plan().unwrap(), p);
    }

    fn add(circ: &Circuit, regs: &RegisterLayout, a: u64, b: u64, cin: u32) -> BasisState {
        let mut s = BasisState::zeros(circ.width());
        s.set_bits(&regs.a, &a.into());
        s.set_bits(&regs.b, &b.into());
        if let Some(w) = regs.carry_in {
            s.0[w] = cin;
        }
        run(circ, &s).unwrap()
    }

    #[test]
    fn degenerate_two_blocks_exhaustive() {
        let plan = BlockPlan::with_blocks(Mode::APlusB, S241, 6, 2).unwrap();
        for (ci, co) in [(false, false), (true, false), (false, true), (true, true)] {
            let circ = build_block_adder(&plan, ci, co).unwrap();
            let regs = RegisterLayout::new(Mode::APlusB, 6, ci, co);
            assert_eq!(circ.width(), 12 + ci as usize + co as usize);
            for a in 0..64u64 {
                for b in 0..64u64 {
                    for cin in 0..=(ci as u32) {
                        let out = add(&circ, &regs, a, b, cin);
                        let total = a + b + cin as u64;
                        let got_b: u64 = out.get_bits(&regs.b).try_into().unwrap();
                        assert_eq!(got_b, total % 64);
                        let got_a: u64 = out.get_bits(&regs.a).try_into().unwrap();
                        assert_eq!(got_a, a);
                        if let Some(w) = regs.carry_out {
                            assert_eq!(out.0[w] as u64, total >> 6);
                        }
                        assert!(out.max_digit() <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn plus_k_small_plan() {
        // 2-4-1, +K, n = 8, c = 2: per block 4 wires -> 2 ancilla... check
        // which small plans fit and test one exhaustively.
        let c = (2..=8)
            .find(|&c| BlockPlan::with_blocks(Mode::PlusK, S241, 8, c).is_ok());
        let Some(c) = c else { return };
        let plan = BlockPlan::with_blocks(Mode::PlusK, S241, 8, c).unwrap();
        let regs = RegisterLayout::new(Mode::PlusK, 8, true, true);
        for k in [0u64, 1, 77, 255] {
            let circ = build_block_plus_k(&plan, &k.into(), true, true).unwrap();
            for b in 0..256u64 {
                for cin in 0..2u32 {
                    let out = add(&circ, &regs, 0, b, cin);
                    let total = b + k + cin as u64;
                    let got: u64 = out.get_bits(&regs.b).try_into().unwrap();
                    assert_eq!(got, total % 256);
                    assert_eq!(out.0[regs.carry_out.unwrap()] as u64, total >> 8);
                }
            }
        }
    }

    #[test]
    fn mode_mismatch() {
        let plan = plan_blocks(Mode::APlusB, S241, 12).unwrap();
        assert!(matches!(
            build_block_plus_k(&plan, &1u8.into(), false, false),
            Err(BuildError::ModeMismatch { .. })
        ));
        let kplan = plan_blocks(Mode::PlusK, S241, 60).unwrap();
        assert!(matches!(
            build_block_adder(&kplan, false, false),
            Err(BuildError::ModeMismatch { .. })
        ));
        let big = BigUint::from(1u8) << 60;
        assert!(matches!(
            build_block_plus_k(&kplan, &big, false, false),
            Err(BuildError::ConstantRange { .. })
        ));
    }

    #[test]
    fn fallback_uses_ripple_below_threshold() {
        let c = build_zero_ancilla_adder(S231, 4, true, true).unwrap();
        assert_eq!(c.width(), 10);
        assert!(c.dims().iter().all(|&d| d == 2));
    }
}
