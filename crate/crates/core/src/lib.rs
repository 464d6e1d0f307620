//! Mixed-radix reversible circuits built around qubit-to-qudit compression.
//!
//! Binary inputs are temporarily packed into qutrits or ququarts, freeing
//! wires that serve as clean ancilla for logarithmic-depth carry-lookahead
//! adders. The crate builds those circuits, simulates them on basis states
//! and counts their resources.

pub mod block_builder;
pub mod compress;
pub mod error;
pub mod ir;
pub mod json;
pub mod qubit_adders;
pub mod resources;
pub mod sim;

pub use compress::{CompressedLayout, CompressionScheme};
pub use error::{BuildError, CircuitError, FormatError, SimError};
pub use ir::{Circuit, Control, Digit, Gate, GateKind, Wire, WireId};
pub use sim::{BasisState, Statevector};
