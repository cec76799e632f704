//! Circuits with arbitrary gates and the exhaustive machinery used to check them.
//!
//! A circuit over `n` inputs always has `n` outputs and computes an
//! `n`-operator `{0,1}^n -> {0,1}^n`. Size is measured in wires.

mod depth2;
pub mod gen;
mod general;
mod linear;
mod text;
mod truth_table;

use thiserror::Error;

use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector};

pub use depth2::{Depth2Circuit, MiddleGate, OutputGate};
pub use general::{Gate, GeneralCircuit};
pub use linear::LinearDepth2Circuit;
pub use text::{parse_circuit, AnyCircuit};
pub use truth_table::{LinearForm, TruthTable, DEFAULT_MAX_FANIN};

/// Largest `n` for which operators are collapsed to full tables by default.
pub const EXHAUSTIVE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("input vector has length {found}, circuit has {expected} inputs")]
    InputLength { expected: usize, found: usize },
    #[error("fanin {fanin} exceeds the cap {cap}")]
    FaninTooLarge { fanin: usize, cap: usize },
    #[error("truth table of fanin {fanin} must have 2^{fanin} bits, found {found}")]
    TableLength { fanin: usize, found: usize },
    #[error("exhaustive evaluation over {n} inputs exceeds the cap {cap}")]
    ExhaustiveCap { n: usize, cap: usize },
    #[error("circuits have different input counts ({left} vs {right})")]
    InputCountMismatch { left: usize, right: usize },
    #[error("invalid circuit: {0}")]
    Invalid(String),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("circuit text, line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

pub type Result<T> = std::result::Result<T, CircuitError>;

/// Common surface of every circuit representation.
pub trait Circuit {
    /// Number of inputs, which is also the number of outputs.
    fn inputs(&self) -> usize;

    fn eval(&self, x: &Gf2Vector) -> Result<Gf2Vector>;

    /// Total number of wires.
    fn wires(&self) -> usize;

    /// Largest number of wires on a path from an input to an output.
    fn depth(&self) -> usize;
}

pub(crate) fn check_input(expected: usize, x: &Gf2Vector) -> Result<()> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(CircuitError::InputLength {
            expected,
            found: x.len(),
        })
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 64 {
        Err(CircuitError::ExhaustiveCap { n, cap })
    } else {
        Ok(())
    }
}

/// All `2^n` inputs in increasing index order (coordinate 0 = least significant bit).
pub fn all_inputs(n: usize) -> impl Iterator<Item = Gf2Vector> {
    (0..1u64 << n).map(move |x| Gf2Vector::from_index(n, x))
}

/// The full value table of an `n`-operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    n: usize,
    values: Vec<Gf2Vector>,
}

impl OperatorTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The output on the input whose coordinate `k` is bit `k` of `x`.
    pub fn get(&self, x: u64) -> &Gf2Vector {
        &self.values[x as usize]
    }

    pub fn values(&self) -> &[Gf2Vector] {
        &self.values
    }
}

/// Evaluates `c` on every input.
pub fn collapse<C: Circuit + ?Sized>(c: &C, cap: usize) -> Result<OperatorTable> {
    let n = c.inputs();
    check_cap(n, cap)?;
    let values = all_inputs(n).map(|x| c.eval(&x)).collect::<Result<_>>()?;
    Ok(OperatorTable { n, values })
}

/// First input (in index order) on which `c` disagrees with `f`.
pub fn find_disagreement<C, F>(c: &C, cap: usize, mut f: F) -> Result<Option<Gf2Vector>>
where
    C: Circuit + ?Sized,
    F: FnMut(&Gf2Vector) -> Result<Gf2Vector>,
{
    check_cap(c.inputs(), cap)?;
    for x in all_inputs(c.inputs()) {
        if c.eval(&x)? != f(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// First input on which the two circuits differ, if any.
pub fn find_counterexample<A, B>(c1: &A, c2: &B, cap: usize) -> Result<Option<Gf2Vector>>
where
    A: Circuit + ?Sized,
    B: Circuit + ?Sized,
{
    if c1.inputs() != c2.inputs() {
        return Err(CircuitError::InputCountMismatch {
            left: c1.inputs(),
            right: c2.inputs(),
        });
    }
    find_disagreement(c1, cap, |x| c2.eval(x))
}

/// Exhaustive equivalence: true iff both circuits collapse to the same table.
pub fn equivalent<A, B>(c1: &A, c2: &B, cap: usize) -> Result<bool>
where
    A: Circuit + ?Sized,
    B: Circuit + ?Sized,
{
    Ok(find_counterexample(c1, c2, cap)?.is_none())
}

/// Parity set and negation flag of a gate, if it computes an affine function.
pub fn is_linear_gate(t: &TruthTable) -> Option<LinearForm> {
    t.linear_form()
}

/// The matrix `A` with `c(x) = A·x` for all `x`, if one exists.
///
/// The candidate has columns `c(e_i)`; it is accepted only after checking
/// every input, which also rules out `c(0) != 0`.
pub fn computes_linear<C: Circuit + ?Sized>(c: &C, cap: usize) -> Result<Option<Gf2Matrix>> {
    let n = c.inputs();
    check_cap(n, cap)?;
    let columns = (0..n)
        .map(|i| c.eval(&Gf2Vector::unit(n, i)))
        .collect::<Result<Vec<_>>>()?;
    let a = Gf2Matrix::from_columns(n, &columns)?;
    let mismatch = find_disagreement(c, cap, |x| Ok(a.matvec(x)?))?;
    Ok(mismatch.is_none().then_some(a))
}

/// True iff `c(e_i) = A·e_i` for every unit vector.
pub fn weakly_computes<C: Circuit + ?Sized>(c: &C, a: &Gf2Matrix) -> Result<bool> {
    let n = c.inputs();
    if a.rows() != n || a.cols() != n {
        return Err(Gf2Error::DimensionMismatch {
            expected: n,
            found: if a.rows() != n { a.rows() } else { a.cols() },
        }
        .into());
    }
    for i in 0..n {
        if c.eval(&Gf2Vector::unit(n, i))? != a.column(i) {
            return Ok(false);
        }
    }
    Ok(true)
}
