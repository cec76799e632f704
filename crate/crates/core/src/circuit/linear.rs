use super::{
    check_input, Circuit, CircuitError, Depth2Circuit, MiddleGate, OutputGate, Result, TruthTable,
};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A depth-2 circuit of parities: `x ↦ C·(B·x) ⊕ negation`.
///
/// `B` (r x n) is the adjacency matrix of the first level and `C` (n x r) of
/// the second level, so the wire count is `|B| + |C|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearDepth2Circuit {
    b: Gf2Matrix,
    c: Gf2Matrix,
    negation: Gf2Vector,
}

impl LinearDepth2Circuit {
    pub fn new(b: Gf2Matrix, c: Gf2Matrix, negation: Gf2Vector) -> Result<Self> {
        let n = b.cols();
        if c.rows() != n || c.cols() != b.rows() || negation.len() != n {
            return Err(CircuitError::Invalid(format!(
                "incompatible shapes: B {}x{}, C {}x{}, negation {}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                negation.len()
            )));
        }
        Ok(Self { b, c, negation })
    }

    /// `B = C = I`.
    pub fn identity(n: usize) -> Self {
        Self {
            b: Gf2Matrix::identity(n),
            c: Gf2Matrix::identity(n),
            negation: Gf2Vector::zeros(n),
        }
    }

    /// The circuit computing `A·x` with middle gate `j` computing row `j` of `A`.
    ///
    /// # Panics
    /// Panics if `a` is not square.
    pub fn from_matrix(a: &Gf2Matrix) -> Self {
        assert_eq!(a.rows(), a.cols(), "operator matrix must be square");
        Self {
            b: a.clone(),
            c: Gf2Matrix::identity(a.rows()),
            negation: Gf2Vector::zeros(a.rows()),
        }
    }

    pub fn b(&self) -> &Gf2Matrix {
        &self.b
    }

    pub fn c(&self) -> &Gf2Matrix {
        &self.c
    }

    pub fn negation(&self) -> &Gf2Vector {
        &self.negation
    }

    pub fn middle_count(&self) -> usize {
        self.b.rows()
    }

    /// The same circuit with explicit parity truth tables.
    pub fn to_depth2(&self) -> Depth2Circuit {
        let middle = self
            .b
            .row_iter()
            .map(|row| {
                let inputs: Vec<usize> = row.ones().collect();
                let table = TruthTable::xor(inputs.len()).expect("parity fanin within cap");
                MiddleGate { inputs, table }
            })
            .collect();
        let outputs = self
            .c
            .row_iter()
            .enumerate()
            .map(|(i, row)| {
                let middle: Vec<usize> = row.ones().collect();
                let all: Vec<usize> = (0..middle.len()).collect();
                let table = TruthTable::parity(middle.len(), &all, self.negation.get(i))
                    .expect("parity fanin within cap");
                OutputGate {
                    middle,
                    direct: Vec::new(),
                    table,
                }
            })
            .collect();
        Depth2Circuit::new(self.b.cols(), middle, outputs).expect("adjacency lists are valid")
    }
}

impl Circuit for LinearDepth2Circuit {
    fn inputs(&self) -> usize {
        self.b.cols()
    }

    fn eval(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        check_input(self.inputs(), x)?;
        let mut y = self.c.matvec(&self.b.matvec(x)?)?;
        y.xor_assign(&self.negation);
        Ok(y)
    }

    fn wires(&self) -> usize {
        self.b.count_ones() + self.c.count_ones()
    }

    fn depth(&self) -> usize {
        let reaches_input = self.c.ones().any(|(_, j)| !self.b.row(j).is_zero());
        if reaches_input {
            2
        } else {
            0
        }
    }
}
