use std::collections::HashSet;

use super::{check_input, Circuit, CircuitError, LinearDepth2Circuit, Result, TruthTable};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// A middle-layer gate reading the listed inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleGate {
    pub inputs: Vec<usize>,
    pub table: TruthTable,
}

/// An output gate. Its table is over `middle` arguments followed by `direct`
/// input arguments, in listed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputGate {
    pub middle: Vec<usize>,
    pub direct: Vec<usize>,
    pub table: TruthTable,
}

impl OutputGate {
    pub fn fanin(&self) -> usize {
        self.middle.len() + self.direct.len()
    }
}

/// Inputs, one layer of `r` arbitrary middle gates, `n` arbitrary output
/// gates, and optional direct input-to-output wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Depth2Circuit {
    n: usize,
    middle: Vec<MiddleGate>,
    outputs: Vec<OutputGate>,
}

fn check_list(what: &str, list: &[usize], bound: usize) -> Result<()> {
    let mut seen = HashSet::with_capacity(list.len());
    for &k in list {
        if k >= bound {
            return Err(CircuitError::Invalid(format!(
                "{what}: index {k} out of range (< {bound})"
            )));
        }
        if !seen.insert(k) {
            return Err(CircuitError::Invalid(format!(
                "{what}: duplicate index {k}"
            )));
        }
    }
    Ok(())
}

impl Depth2Circuit {
    pub fn new(n: usize, middle: Vec<MiddleGate>, outputs: Vec<OutputGate>) -> Result<Self> {
        if outputs.len() != n {
            return Err(CircuitError::Invalid(format!(
                "{n} inputs but {} output gates",
                outputs.len()
            )));
        }
        for (j, g) in middle.iter().enumerate() {
            check_list(&format!("middle gate {j}"), &g.inputs, n)?;
            if g.table.fanin() != g.inputs.len() {
                return Err(CircuitError::Invalid(format!(
                    "middle gate {j}: table fanin {} but {} inputs",
                    g.table.fanin(),
                    g.inputs.len()
                )));
            }
        }
        for (i, g) in outputs.iter().enumerate() {
            check_list(&format!("output {i} middle list"), &g.middle, middle.len())?;
            check_list(&format!("output {i} direct list"), &g.direct, n)?;
            if g.table.fanin() != g.fanin() {
                return Err(CircuitError::Invalid(format!(
                    "output {i}: table fanin {} but {} arguments",
                    g.table.fanin(),
                    g.fanin()
                )));
            }
        }
        Ok(Self { n, middle, outputs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn middle(&self) -> &[MiddleGate] {
        &self.middle
    }

    pub fn outputs(&self) -> &[OutputGate] {
        &self.outputs
    }

    pub fn middle_count(&self) -> usize {
        self.middle.len()
    }

    pub fn into_parts(self) -> (usize, Vec<MiddleGate>, Vec<OutputGate>) {
        (self.n, self.middle, self.outputs)
    }

    /// Wires from inputs into the middle layer.
    pub fn first_level_wires(&self) -> usize {
        self.middle.iter().map(|g| g.inputs.len()).sum()
    }

    /// Wires from the middle layer into outputs.
    pub fn second_level_wires(&self) -> usize {
        self.outputs.iter().map(|g| g.middle.len()).sum()
    }

    pub fn direct_wires(&self) -> usize {
        self.outputs.iter().map(|g| g.direct.len()).sum()
    }

    pub fn has_direct_wires(&self) -> bool {
        self.outputs.iter().any(|g| !g.direct.is_empty())
    }

    /// Number of output gates reading middle gate `j`.
    pub fn fanout(&self, j: usize) -> usize {
        self.outputs
            .iter()
            .filter(|g| g.middle.contains(&j))
            .count()
    }

    /// Values of all middle gates, the operator `h` of the middle layer.
    pub fn middle_values(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        check_input(self.n, x)?;
        let mut h = Gf2Vector::zeros(self.middle.len());
        for (j, g) in self.middle.iter().enumerate() {
            if g.table.eval(g.inputs.iter().map(|&i| x.get(i))) {
                h.set(j, true);
            }
        }
        Ok(h)
    }

    /// The `(B, C)` form if every gate is a parity of all its listed
    /// arguments, there are no direct wires, and only outputs are negated.
    pub fn to_linear(&self) -> Option<LinearDepth2Circuit> {
        if self.has_direct_wires() {
            return None;
        }
        let r = self.middle.len();
        let mut b = Gf2Matrix::zeros(r, self.n);
        for (j, g) in self.middle.iter().enumerate() {
            if !g.table.linear_form()?.is_pure_parity_of(g.inputs.len()) {
                return None;
            }
            for &i in &g.inputs {
                b.set(j, i, true);
            }
        }
        let mut c = Gf2Matrix::zeros(self.n, r);
        let mut negation = Gf2Vector::zeros(self.n);
        for (i, g) in self.outputs.iter().enumerate() {
            let form = g.table.linear_form()?;
            if form.set.len() != g.middle.len() {
                return None;
            }
            negation.set(i, form.negated);
            for &j in &g.middle {
                c.set(i, j, true);
            }
        }
        Some(LinearDepth2Circuit::new(b, c, negation).expect("shapes agree"))
    }
}

impl Circuit for Depth2Circuit {
    fn inputs(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        let h = self.middle_values(x)?;
        let mut y = Gf2Vector::zeros(self.n);
        for (i, g) in self.outputs.iter().enumerate() {
            let args = g
                .middle
                .iter()
                .map(|&j| h.get(j))
                .chain(g.direct.iter().map(|&k| x.get(k)));
            if g.table.eval(args) {
                y.set(i, true);
            }
        }
        Ok(y)
    }

    fn wires(&self) -> usize {
        self.first_level_wires() + self.second_level_wires() + self.direct_wires()
    }

    fn depth(&self) -> usize {
        self.outputs
            .iter()
            .map(|g| {
                let via_middle = g.middle.iter().any(|&j| !self.middle[j].inputs.is_empty());
                if via_middle {
                    2
                } else if !g.direct.is_empty() {
                    1
                } else {
                    0
                }
            })
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{all_inputs, gen};
    use crate::rng::seeded;

    fn constant_outputs(n: usize, value: bool) -> Vec<OutputGate> {
        (0..n)
            .map(|_| OutputGate {
                middle: vec![],
                direct: vec![],
                table: TruthTable::constant(value),
            })
            .collect()
    }

    #[test]
    fn constant_output_ignores_input() {
        let c = Depth2Circuit::new(1, vec![], constant_outputs(1, true)).unwrap();
        for x in all_inputs(1) {
            assert_eq!(c.eval(&x).unwrap(), Gf2Vector::unit(1, 0));
        }
        assert_eq!(c.wires(), 0);
        assert_eq!(c.depth(), 0);
    }

    #[test]
    fn single_direct_wire() {
        let mut outputs = constant_outputs(2, false);
        outputs[0] = OutputGate {
            middle: vec![],
            direct: vec![0],
            table: TruthTable::identity(),
        };
        let c = Depth2Circuit::new(2, vec![], outputs).unwrap();
        assert_eq!(c.wires(), 1);
        assert_eq!(c.depth(), 1);
    }

    // Straightforward two-pass interpreter working on plain bool slices.
    fn interpret(c: &Depth2Circuit, x: &[bool]) -> Vec<bool> {
        let index = |bits: Vec<bool>| {
            bits.iter()
                .rev()
                .fold(0usize, |acc, &b| acc * 2 + b as usize)
        };
        let h: Vec<bool> = c
            .middle()
            .iter()
            .map(|g| {
                g.table
                    .value_at(index(g.inputs.iter().map(|&i| x[i]).collect()))
            })
            .collect();
        c.outputs()
            .iter()
            .map(|g| {
                let mut args: Vec<bool> = g.middle.iter().map(|&j| h[j]).collect();
                args.extend(g.direct.iter().map(|&i| x[i]));
                g.table.value_at(index(args))
            })
            .collect()
    }

    #[test]
    fn seeded_random_circuit_matches_interpreter() {
        let c = gen::random_depth2(4, 5, 0.5, &mut seeded(5)).unwrap();
        for x in all_inputs(4) {
            let bits: Vec<bool> = x.iter().collect();
            let expected = Gf2Vector::from_bits(&interpret(&c, &bits));
            assert_eq!(c.eval(&x).unwrap(), expected);
        }
    }

    #[test]
    fn structural_validation() {
        let bad_len = Depth2Circuit::new(2, vec![], constant_outputs(1, false));
        assert!(matches!(bad_len, Err(CircuitError::Invalid(_))));
        let dup = MiddleGate {
            inputs: vec![0, 0],
            table: TruthTable::xor(2).unwrap(),
        };
        assert!(Depth2Circuit::new(1, vec![dup], constant_outputs(1, false)).is_err());
        let out_of_range = MiddleGate {
            inputs: vec![3],
            table: TruthTable::identity(),
        };
        assert!(Depth2Circuit::new(2, vec![out_of_range], constant_outputs(2, false)).is_err());
        let wrong_fanin = MiddleGate {
            inputs: vec![0],
            table: TruthTable::xor(2).unwrap(),
        };
        assert!(Depth2Circuit::new(1, vec![wrong_fanin], constant_outputs(1, false)).is_err());
    }

    #[test]
    fn input_length_is_checked() {
        let c = Depth2Circuit::new(2, vec![], constant_outputs(2, false)).unwrap();
        assert_eq!(
            c.eval(&Gf2Vector::zeros(3)).unwrap_err(),
            CircuitError::InputLength {
                expected: 2,
                found: 3
            }
        );
    }
}
