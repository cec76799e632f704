//! Workbench for wire complexity of boolean circuits with arbitrary gates.
//!
//! * [`gf2`]: packed GF(2) vectors and matrices, rank and first-basis extraction.
//! * [`circuit`]: general DAG circuits and depth-2 circuits, evaluation,
//!   exhaustive verification, linearity checks, generators and text formats.
//! * [`transforms`]: fanin capping and the depth-2 linearization pipeline,
//!   each with a checked wire budget.
//! * [`compress`]: the succinct codec for depth-2 circuits with linear middle
//!   gates computing a linear operator.
//! * [`bounds`]: exact big-integer counting bounds on the number of wires.

pub mod bounds;
pub mod circuit;
pub mod compress;
pub mod gf2;
pub mod rng;
pub mod transforms;

pub use circuit::{
    Circuit, CircuitError, Depth2Circuit, GeneralCircuit, LinearDepth2Circuit, LinearForm,
    OperatorTable, TruthTable,
};
pub use compress::{CodecError, OperatorEncoding};
pub use gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
pub use transforms::{LinearizationReport, TransformError};
