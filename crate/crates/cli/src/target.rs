//! Circuit kinds the CLI can build, and the oracle each one is checked against.

use num_bigint::BigUint;

use qudit_arith::block_builder::{build_block_adder, build_block_plus_k, require_plan, BlockPlan, Mode, RegisterLayout};
use qudit_arith::compress::{compress_231_circuit, compress_241_circuit, CompressionScheme};
use qudit_arith::qubit_adders::{
    ancilla_required, ancilla_required_plus_k, build_cla_adder, build_plus_k, build_ripple_adder, AdderSpec,
    AdderWiring,
};
use qudit_arith::sim::BasisState;
use qudit_arith::{BuildError, Circuit, Digit, WireId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Compress231,
    Compress241,
    ClaAdder,
    PlusK,
    BlockAdder,
    BlockPlusK,
    RippleAdder,
}

#[derive(Debug, Clone)]
pub struct Params {
    pub kind: Kind,
    pub n: Option<usize>,
    pub scheme: CompressionScheme,
    pub carry_in: bool,
    pub carry_out: bool,
    pub k: Option<BigUint>,
}

/// Where an adder keeps its operands. Any other wire must come back as it went in.
#[derive(Debug, Clone)]
pub struct AdderLayout {
    pub n: usize,
    pub a: Vec<WireId>,
    pub b: Vec<WireId>,
    pub carry_in: Option<WireId>,
    pub carry_out: Option<WireId>,
    /// Classical addend for `+K` kinds.
    pub k: Option<BigUint>,
}

#[derive(Debug, Clone)]
pub enum Oracle {
    /// Exact input/output rows on all wires.
    Table(Vec<(Vec<Digit>, Vec<Digit>)>),
    Adder(AdderLayout),
}

pub struct Built {
    pub circuit: Circuit,
    pub oracle: Oracle,
    pub plan: Option<BlockPlan>,
}

#[derive(Debug)]
pub enum TargetError {
    Usage(String),
    Build(BuildError),
}

impl From<BuildError> for TargetError {
    fn from(e: BuildError) -> Self {
        TargetError::Build(e)
    }
}

impl std::fmt::Display for TargetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TargetError::Usage(m) => f.write_str(m),
            TargetError::Build(e) => write!(f, "{e}"),
        }
    }
}

fn table_231() -> Vec<(Vec<Digit>, Vec<Digit>)> {
    [
        ([0, 0, 0], [0, 0, 0]),
        ([0, 0, 1], [2, 2, 0]),
        ([0, 1, 0], [0, 1, 0]),
        ([0, 1, 1], [0, 2, 0]),
        ([1, 0, 0], [1, 0, 0]),
        ([1, 0, 1], [2, 1, 0]),
        ([1, 1, 0], [1, 1, 0]),
        ([1, 1, 1], [1, 2, 0]),
    ]
    .into_iter()
    .map(|(i, o)| (i.to_vec(), o.to_vec()))
    .collect()
}

fn table_241() -> Vec<(Vec<Digit>, Vec<Digit>)> {
    [([0, 0], [0, 0]), ([0, 1], [2, 0]), ([1, 0], [1, 0]), ([1, 1], [3, 0])]
        .into_iter()
        .map(|(i, o)| (i.to_vec(), o.to_vec()))
        .collect()
}

fn from_wiring(n: usize, w: AdderWiring, k: Option<BigUint>) -> AdderLayout {
    AdderLayout {
        n,
        a: w.a_wires,
        b: w.b_wires,
        carry_in: w.carry_in_wire,
        carry_out: w.carry_out_wire,
        k,
    }
}

fn from_regs(n: usize, r: RegisterLayout, k: Option<BigUint>) -> AdderLayout {
    AdderLayout {
        n,
        a: r.a,
        b: r.b,
        carry_in: r.carry_in,
        carry_out: r.carry_out,
        k,
    }
}

impl Params {
    fn n(&self) -> Result<usize, TargetError> {
        match self.n {
            Some(0) => Err(TargetError::Usage("--n must be at least 1".into())),
            Some(n) => Ok(n),
            None => Err(TargetError::Usage(format!("--n is required for {:?}", self.kind))),
        }
    }

    fn k(&self) -> Result<BigUint, TargetError> {
        self.k
            .clone()
            .ok_or_else(|| TargetError::Usage(format!("--k is required for {:?}", self.kind)))
    }

    fn spec(&self) -> Result<AdderSpec, TargetError> {
        Ok(AdderSpec::new(self.n()?, self.carry_in, self.carry_out))
    }

    /// Reject flags that make no sense for the kind.
    fn check_flags(&self) -> Result<(), TargetError> {
        let table = matches!(self.kind, Kind::Compress231 | Kind::Compress241);
        let takes_k = matches!(self.kind, Kind::PlusK | Kind::BlockPlusK);
        if table && (self.n.is_some() || self.carry_in || self.carry_out) {
            return Err(TargetError::Usage("compression kinds take no --n or carry flags".into()));
        }
        if !takes_k && self.k.is_some() {
            return Err(TargetError::Usage(format!("--k is not used by {:?}", self.kind)));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Built, TargetError> {
        self.check_flags()?;
        let plain = |circuit, oracle| Built {
            circuit,
            oracle,
            plan: None,
        };
        Ok(match self.kind {
            Kind::Compress231 => plain(compress_231_circuit(), Oracle::Table(table_231())),
            Kind::Compress241 => plain(compress_241_circuit(), Oracle::Table(table_241())),
            Kind::ClaAdder => {
                let spec = self.spec()?;
                let (wires, w) = AdderWiring::standard(spec, ancilla_required(spec.n), true);
                let c = build_cla_adder(wires, spec, &w)?;
                plain(c, Oracle::Adder(from_wiring(spec.n, w, None)))
            }
            Kind::RippleAdder => {
                let spec = self.spec()?;
                let (wires, w) = AdderWiring::standard(spec, 0, true);
                let c = build_ripple_adder(wires, spec, &w)?;
                plain(c, Oracle::Adder(from_wiring(spec.n, w, None)))
            }
            Kind::PlusK => {
                let spec = self.spec()?;
                let k = self.k()?;
                let (wires, w) = AdderWiring::standard(spec, ancilla_required_plus_k(spec.n), false);
                let c = build_plus_k(wires, spec, &w, &k)?;
                plain(c, Oracle::Adder(from_wiring(spec.n, w, Some(k))))
            }
            Kind::BlockAdder => {
                let n = self.n()?;
                let plan = require_plan(Mode::APlusB, self.scheme, n)?;
                let c = build_block_adder(&plan, self.carry_in, self.carry_out)?;
                let regs = RegisterLayout::new(Mode::APlusB, n, self.carry_in, self.carry_out);
                Built {
                    circuit: c,
                    oracle: Oracle::Adder(from_regs(n, regs, None)),
                    plan: Some(plan),
                }
            }
            Kind::BlockPlusK => {
                let n = self.n()?;
                let k = self.k()?;
                let plan = require_plan(Mode::PlusK, self.scheme, n)?;
                let c = build_block_plus_k(&plan, &k, self.carry_in, self.carry_out)?;
                let regs = RegisterLayout::new(Mode::PlusK, n, self.carry_in, self.carry_out);
                Built {
                    circuit: c,
                    oracle: Oracle::Adder(from_regs(n, regs, Some(k))),
                    plan: Some(plan),
                }
            }
        })
    }
}

impl AdderLayout {
    /// Free input bits: A (unless constant), B, then carry-in.
    pub fn input_bits(&self) -> usize {
        self.a.len() + self.b.len() + self.carry_in.is_some() as usize
    }

    /// Unpack a packed input index, B least significant.
    pub fn split(&self, x: &BigUint) -> (BigUint, BigUint, u32) {
        let n = self.n;
        let mask = (BigUint::from(1u8) << n) - 1u8;
        let b = x & &mask;
        let a = if self.a.is_empty() { BigUint::from(0u8) } else { (x >> n) & &mask };
        let shift = n + self.a.len();
        let cin = if self.carry_in.is_some() { x.bit(shift as u64) as u32 } else { 0 };
        (a, b, cin)
    }

    pub fn state(&self, width: usize, a: &BigUint, b: &BigUint, cin: u32) -> BasisState {
        let mut s = BasisState::zeros(width);
        s.set_bits(&self.a, a);
        s.set_bits(&self.b, b);
        if let Some(w) = self.carry_in {
            s.0[w] = cin;
        }
        s
    }

    /// The expected output state.
    pub fn expected(&self, input: &BasisState, a: &BigUint, b: &BigUint, cin: u32) -> BasisState {
        let addend = self.k.as_ref().unwrap_or(a);
        let total = addend + b + BigUint::from(cin);
        let mut out = input.clone();
        out.set_bits(&self.b, &(&total % (BigUint::from(1u8) << self.n)));
        if let Some(w) = self.carry_out {
            out.0[w] ^= total.bit(self.n as u64) as u32;
        }
        out
    }
}
