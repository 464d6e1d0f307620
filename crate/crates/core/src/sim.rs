//! Basis-state and dense statevector simulation.
//!
//! Every gate in this crate is a permutation of basis states, so the
//! basis-state simulator is exact. The statevector simulator applies the same
//! gates as permutations of amplitudes and exists as an independent check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::SimError;
use crate::ir::{Circuit, Digit, Gate, GateKind, WireId};

/// One digit per wire, least-indexed wire first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState(pub Vec<Digit>);

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        BasisState(vec![0; width])
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_digit(&self) -> Digit {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Check length and digit bounds against `dims`.
    pub fn check(&self, dims: &[Digit]) -> Result<(), SimError> {
        if self.0.len() != dims.len() {
            return Err(SimError::WidthMismatch {
                expected: dims.len(),
                found: self.0.len(),
            });
        }
        for (wire, (&digit, &dim)) in self.0.iter().zip(dims).enumerate() {
            if digit >= dim {
                return Err(SimError::DigitOutOfRange { wire, digit, dim });
            }
        }
        Ok(())
    }

    /// Write the low `wires.len()` bits of `value` (little-endian) onto `wires`.
    pub fn set_bits(&mut self, wires: &[WireId], value: &num_bigint::BigUint) {
        for (i, &w) in wires.iter().enumerate() {
            self.0[w] = value.bit(i as u64) as Digit;
        }
    }

    /// Read `wires` as a little-endian binary number. Digits above 1 count as 1.
    pub fn get_bits(&self, wires: &[WireId]) -> num_bigint::BigUint {
        let mut v = num_bigint::BigUint::default();
        for (i, &w) in wires.iter().enumerate() {
            if self.0[w] != 0 {
                v.set_bit(i as u64, true);
            }
        }
        v
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisState {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(BasisState(Vec::new()));
        }
        s.split(',')
            .map(|p| p.trim().parse::<Digit>())
            .collect::<Result<Vec<_>, _>>()
            .map(BasisState)
            .map_err(|_| SimError::Parse(s.to_string()))
    }
}

impl From<Vec<Digit>> for BasisState {
    fn from(v: Vec<Digit>) -> Self {
        BasisState(v)
    }
}

#[inline]
fn apply_kind(kind: GateKind, v: Digit, dim: Digit) -> Digit {
    match kind {
        GateKind::Flip(i, j) => {
            if v == i {
                j
            } else if v == j {
                i
            } else {
                v
            }
        }
        GateKind::Increment(k) => (v + k) % dim,
        GateKind::Swap => v,
    }
}

/// Apply one gate in place. `dims` is the circuit's wire dimensions.
#[inline]
pub fn apply_gate_in_place(digits: &mut [Digit], gate: &Gate, dims: &[Digit]) {
    if gate.controls.iter().any(|c| digits[c.wire] != c.value) {
        return;
    }
    match gate.kind {
        GateKind::Swap => digits.swap(gate.targets[0], gate.targets[1]),
        kind => {
            let t = gate.targets[0];
            digits[t] = apply_kind(kind, digits[t], dims[t]);
        }
    }
}

pub fn apply_gate(s: &BasisState, g: &Gate, dims: &[Digit]) -> BasisState {
    let mut out = s.clone();
    apply_gate_in_place(&mut out.0, g, dims);
    out
}

/// Fold every gate of `c` over `s`.
pub fn run(c: &Circuit, s: &BasisState) -> Result<BasisState, SimError> {
    run_instrumented(c, s, |_, _| {})
}

/// Like [`run`], calling `observe(gate_index, digits)` after every gate.
pub fn run_instrumented<F>(c: &Circuit, s: &BasisState, mut observe: F) -> Result<BasisState, SimError>
where
    F: FnMut(usize, &[Digit]),
{
    let dims = c.dims();
    s.check(&dims)?;
    let mut digits = s.0.clone();
    for (i, g) in c.gates().iter().enumerate() {
        apply_gate_in_place(&mut digits, g, &dims);
        observe(i, &digits);
    }
    Ok(BasisState(digits))
}

/// Run `c` and also report the largest digit seen on any wire at any point.
pub fn run_max_digit(c: &Circuit, s: &BasisState) -> Result<(BasisState, Digit), SimError> {
    let mut peak = s.max_digit();
    let out = run_instrumented(c, s, |_, d| {
        peak = peak.max(d.iter().copied().max().unwrap_or(0));
    })?;
    Ok((out, peak))
}

/// Mixed-radix enumeration in lexicographic order, wire 0 most significant.
#[derive(Debug, Clone)]
pub struct MixedRadix {
    bounds: Vec<Digit>,
    next: Option<Vec<Digit>>,
}

impl MixedRadix {
    pub fn new(bounds: &[Digit]) -> Self {
        let next = if bounds.contains(&0) {
            None
        } else {
            Some(vec![0; bounds.len()])
        };
        MixedRadix {
            bounds: bounds.to_vec(),
            next,
        }
    }

    /// Number of states, saturating at `u128::MAX`.
    pub fn size(bounds: &[Digit]) -> u128 {
        bounds
            .iter()
            .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128))
            .unwrap_or(u128::MAX)
    }
}

impl Iterator for MixedRadix {
    type Item = BasisState;

    fn next(&mut self) -> Option<BasisState> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.bounds[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(BasisState(cur))
    }
}

/// Every state of the circuit's full space.
pub fn full_space(c: &Circuit) -> MixedRadix {
    MixedRadix::new(&c.dims())
}

/// Every state allowed by the circuit's declared interface bounds.
pub fn interface_space(c: &Circuit) -> MixedRadix {
    MixedRadix::new(c.interface())
}

/// Map each state of `domain` through `c`.
pub fn permutation_table<I>(c: &Circuit, domain: I) -> Result<BTreeMap<BasisState, BasisState>, SimError>
where
    I: IntoIterator<Item = BasisState>,
{
    domain
        .into_iter()
        .map(|s| run(c, &s).map(|o| (s, o)))
        .collect()
}

/// True when no two entries of the table share an output.
pub fn is_injective(table: &BTreeMap<BasisState, BasisState>) -> bool {
    let mut outs: Vec<&BasisState> = table.values().collect();
    outs.sort();
    outs.windows(2).all(|w| w[0] != w[1])
}

pub const STATEVECTOR_CAP: u128 = 1 << 20;

/// Dense amplitudes over the mixed-radix space, wire 0 most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    dims: Vec<Digit>,
    amps: Vec<Complex64>,
}

impl Statevector {
    fn check_size(dims: &[Digit]) -> Result<usize, SimError> {
        let size = MixedRadix::size(dims);
        if size > STATEVECTOR_CAP {
            return Err(SimError::TooLarge(size));
        }
        Ok(size as usize)
    }

    pub fn basis(dims: &[Digit], s: &BasisState) -> Result<Self, SimError> {
        s.check(dims)?;
        let size = Self::check_size(dims)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); size];
        amps[index_of(dims, s.digits())] = Complex64::new(1.0, 0.0);
        Ok(Statevector {
            dims: dims.to_vec(),
            amps,
        })
    }

    /// Amplitudes must have length equal to the product of `dims`.
    pub fn from_amplitudes(dims: &[Digit], amps: Vec<Complex64>) -> Result<Self, SimError> {
        let size = Self::check_size(dims)?;
        if amps.len() != size {
            return Err(SimError::WidthMismatch {
                expected: size,
                found: amps.len(),
            });
        }
        Ok(Statevector {
            dims: dims.to_vec(),
            amps,
        })
    }

    pub fn uniform(dims: &[Digit]) -> Result<Self, SimError> {
        let size = Self::check_size(dims)?;
        let a = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
        Ok(Statevector {
            dims: dims.to_vec(),
            amps: vec![a; size],
        })
    }

    pub fn dims(&self) -> &[Digit] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, s: &BasisState) -> Complex64 {
        self.amps[index_of(&self.dims, s.digits())]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

fn index_of(dims: &[Digit], digits: &[Digit]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0usize, |acc, (&d, &dim)| acc * dim as usize + d as usize)
}

fn digits_of(dims: &[Digit], mut index: usize, out: &mut [Digit]) {
    for (slot, &dim) in out.iter_mut().zip(dims).rev() {
        *slot = (index % dim as usize) as Digit;
        index /= dim as usize;
    }
}

/// Apply each gate as the induced permutation of amplitudes.
pub fn run_statevector(c: &Circuit, v: &Statevector) -> Result<Statevector, SimError> {
    let dims = c.dims();
    if v.dims != dims {
        return Err(SimError::WidthMismatch {
            expected: dims.len(),
            found: v.dims.len(),
        });
    }
    Statevector::check_size(&dims)?;
    let mut amps = v.amps.clone();
    let mut next = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut digits = vec![0; dims.len()];
    for g in c.gates() {
        for (idx, &a) in amps.iter().enumerate() {
            digits_of(&dims, idx, &mut digits);
            apply_gate_in_place(&mut digits, g, &dims);
            next[index_of(&dims, &digits)] = a;
        }
        std::mem::swap(&mut amps, &mut next);
    }
    Ok(Statevector { dims, amps })
}
