use crate::ir::{Digit, WireId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("wire {wire} has dim {dim}, need at least 2")]
    DimTooSmall { wire: WireId, dim: Digit },
    #[error("duplicate wire id {0}")]
    DuplicateWire(WireId),
    #[error("wire at position {position} has id {id}; ids must run 0..width")]
    NonContiguous { position: usize, id: WireId },
    #[error("wire {wire} out of range for width {width}")]
    WireOutOfRange { wire: WireId, width: usize },
    #[error("wire {0} appears more than once in a gate")]
    WireCollision(WireId),
    #[error("gate expects {expected} target(s), got {found}")]
    TargetCount { expected: usize, found: usize },
    #[error("{0} controls given; at most 2 are supported")]
    TooManyControls(usize),
    #[error("control value {value} on wire {wire} exceeds dim {dim}")]
    ControlValue { wire: WireId, value: Digit, dim: Digit },
    #[error("flip({i},{j}) invalid on a dim-{dim} wire")]
    BadFlip { i: Digit, j: Digit, dim: Digit },
    #[error("increment by {k} invalid on a dim-{dim} wire")]
    BadIncrement { k: Digit, dim: Digit },
    #[error("swap between dims {0} and {1}")]
    SwapDims(Digit, Digit),
    #[error("controlled swap is not supported")]
    ControlledSwap,
    #[error("interface bound {bound} invalid for wire {wire} of dim {dim}")]
    InterfaceBound { wire: WireId, bound: Digit, dim: Digit },
    #[error("wire lists differ: {0}")]
    WireMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("state has {found} digits, circuit has {expected} wires")]
    WidthMismatch { expected: usize, found: usize },
    #[error("digit {digit} on wire {wire} exceeds dim {dim}")]
    DigitOutOfRange { wire: WireId, digit: Digit, dim: Digit },
    #[error("state space of {0} amplitudes exceeds the statevector cap of 2^20")]
    TooLarge(u128),
    #[error("cannot parse basis state {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("{what} needs dim >= {need}, wire {wire} has {dim}")]
    InsufficientDim {
        what: &'static str,
        wire: WireId,
        dim: Digit,
        need: Digit,
    },
    #[error("adder needs {need} ancilla, {have} supplied")]
    InsufficientAncilla { need: usize, have: usize },
    #[error("register sizes do not match: {0}")]
    RegisterSize(String),
    #[error("wire {0} used twice in the adder wiring")]
    WiringCollision(WireId),
    #[error("constant {k} does not fit in {n} bits")]
    ConstantRange { k: String, n: usize },
    #[error("register size must be at least 1")]
    EmptyRegister,
    #[error("compression needs a non-empty wire list")]
    EmptyCompression,
    #[error("unsupported compression scheme {0}")]
    UnsupportedScheme(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("plan mode is {found}, builder expects {expected}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown gate kind {0:?}")]
    UnknownKind(String),
    #[error("gate {index}: {kind} expects {expected} param(s), got {found}")]
    Params {
        index: usize,
        kind: String,
        expected: usize,
        found: usize,
    },
    #[error("gate {index}: {source}")]
    Gate {
        index: usize,
        #[source]
        source: CircuitError,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("unknown {field} value {value:?}")]
    UnknownValue { field: &'static str, value: String },
}
