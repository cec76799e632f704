use super::{check_input, Circuit, CircuitError, Result, TruthTable};
use crate::gf2::Gf2Vector;

/// A gate reading the listed nodes. Node ids `0..n` are the inputs and gate
/// `k` has id `n + k`. Repeated predecessors are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    pub preds: Vec<usize>,
    pub table: TruthTable,
}

/// A DAG of arbitrary gates in topological order with `n` designated outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralCircuit {
    n: usize,
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl GeneralCircuit {
    pub fn new(n: usize, gates: Vec<Gate>, outputs: Vec<usize>) -> Result<Self> {
        for (k, g) in gates.iter().enumerate() {
            let id = n + k;
            if let Some(&p) = g.preds.iter().find(|&&p| p >= id) {
                return Err(CircuitError::Invalid(format!(
                    "gate {id}: predecessor {p} does not precede it"
                )));
            }
            if g.table.fanin() != g.preds.len() {
                return Err(CircuitError::Invalid(format!(
                    "gate {id}: table fanin {} but {} predecessors",
                    g.table.fanin(),
                    g.preds.len()
                )));
            }
        }
        if outputs.len() != n {
            return Err(CircuitError::Invalid(format!(
                "{n} inputs but {} outputs",
                outputs.len()
            )));
        }
        let nodes = n + gates.len();
        if let Some(&o) = outputs.iter().find(|&&o| o >= nodes) {
            return Err(CircuitError::Invalid(format!(
                "output node {o} does not exist ({nodes} nodes)"
            )));
        }
        Ok(Self { n, gates, outputs })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn node_count(&self) -> usize {
        self.n + self.gates.len()
    }

    pub fn max_fanin(&self) -> usize {
        self.gates.iter().map(|g| g.preds.len()).max().unwrap_or(0)
    }

    pub fn into_parts(self) -> (usize, Vec<Gate>, Vec<usize>) {
        (self.n, self.gates, self.outputs)
    }

    /// Values of every node (inputs first, then gates).
    pub fn eval_nodes(&self, x: &Gf2Vector) -> Result<Vec<bool>> {
        check_input(self.n, x)?;
        let mut values: Vec<bool> = x.iter().collect();
        values.reserve(self.gates.len());
        for g in &self.gates {
            let v = g.table.eval(g.preds.iter().map(|&p| values[p]));
            values.push(v);
        }
        Ok(values)
    }
}

impl Circuit for GeneralCircuit {
    fn inputs(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        let values = self.eval_nodes(x)?;
        let bits: Vec<bool> = self.outputs.iter().map(|&o| values[o]).collect();
        Ok(Gf2Vector::from_bits(&bits))
    }

    fn wires(&self) -> usize {
        self.gates.iter().map(|g| g.preds.len()).sum()
    }

    fn depth(&self) -> usize {
        // None: the node is not reachable from any input.
        let mut depth: Vec<Option<usize>> = vec![Some(0); self.n];
        for g in &self.gates {
            let d = g
                .preds
                .iter()
                .filter_map(|&p| depth[p])
                .max()
                .map(|d| d + 1);
            depth.push(d);
        }
        self.outputs
            .iter()
            .filter_map(|&o| depth[o])
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gen;
    use crate::rng::seeded;

    #[test]
    fn wires_and_depth_of_chain() {
        // x0 -> g2 = NOT x0 -> g3 = g2 AND x1
        let gates = vec![
            Gate {
                preds: vec![0],
                table: TruthTable::identity().complement(),
            },
            Gate {
                preds: vec![2, 1],
                table: TruthTable::from_fn(2, |i| i == 3).unwrap(),
            },
        ];
        let c = GeneralCircuit::new(2, gates, vec![3, 1]).unwrap();
        assert_eq!(c.wires(), 3);
        assert_eq!(c.depth(), 2);
        let y = c.eval(&"01".parse().unwrap()).unwrap();
        assert_eq!(y.to_string(), "11");
    }

    #[test]
    fn constant_gates_do_not_add_depth() {
        let gates = vec![Gate {
            preds: vec![],
            table: TruthTable::constant(true),
        }];
        let c = GeneralCircuit::new(1, gates, vec![1]).unwrap();
        assert_eq!(c.depth(), 0);
        assert_eq!(c.wires(), 0);
    }

    #[test]
    fn seeded_wire_count_matches_naive_recount() {
        let c = gen::random_general(5, 9, 2, &mut seeded(6)).unwrap();
        let mut naive = 0;
        for g in c.gates() {
            for _ in &g.preds {
                naive += 1;
            }
        }
        assert_eq!(c.wires(), naive);
    }

    #[test]
    fn rejects_forward_references() {
        let gates = vec![Gate {
            preds: vec![3],
            table: TruthTable::identity(),
        }];
        assert!(GeneralCircuit::new(2, gates, vec![0, 1]).is_err());
    }
}
