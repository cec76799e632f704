//! Seeded generators for test instances.
//!
//! Every generator is a deterministic function of its parameters and the
//! state of the supplied generator. The planted properties of the depth-2
//! families are guaranteed by construction; the test suites still re-check
//! them with the exhaustive checkers.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{
    CircuitError, Depth2Circuit, Gate, GeneralCircuit, MiddleGate, OutputGate, Result, TruthTable,
    DEFAULT_MAX_FANIN,
};
use crate::gf2::{solve_in_span, Gf2Matrix, Gf2Vector};

/// A depth-2 circuit together with the matrix of the linear operator it computes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub circuit: Depth2Circuit,
    pub matrix: Gf2Matrix,
}

fn check_density(density: f64) -> Result<()> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(CircuitError::InfeasibleParams(format!(
            "density {density} is outside [0, 1]"
        )))
    }
}

fn check_fanin(what: &str, fanin: usize) -> Result<()> {
    if fanin > DEFAULT_MAX_FANIN {
        Err(CircuitError::InfeasibleParams(format!(
            "{what} may reach fanin {fanin}, above the cap {DEFAULT_MAX_FANIN}"
        )))
    } else {
        Ok(())
    }
}

fn subset<R: Rng + ?Sized>(len: usize, density: f64, rng: &mut R) -> Vec<usize> {
    (0..len).filter(|_| rng.gen_bool(density)).collect()
}

/// A random table, except that fanin-0 gates are the constant 0.
fn random_table<R: Rng + ?Sized>(fanin: usize, rng: &mut R) -> Result<TruthTable> {
    if fanin == 0 {
        Ok(TruthTable::constant(false))
    } else {
        TruthTable::random(fanin, rng)
    }
}

fn random_nonlinear_table<R: Rng + ?Sized>(fanin: usize, rng: &mut R) -> Result<TruthTable> {
    debug_assert!(
        fanin >= 2,
        "every function of fewer than two arguments is affine"
    );
    loop {
        let t = TruthTable::random(fanin, rng)?;
        if t.linear_form().is_none() {
            return Ok(t);
        }
    }
}

/// `rows x cols` matrix with independent entries of probability `density`.
pub fn random_matrix<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    density: f64,
    rng: &mut R,
) -> Result<Gf2Matrix> {
    check_density(density)?;
    Ok(Gf2Matrix::random_with_density(rows, cols, density, rng))
}

/// Depth-2 circuit with `r` middle gates. Every possible wire is present with
/// probability `density` (direct wires with `density / 2`); gate functions are
/// uniformly random except that fanin-0 gates are constant 0.
pub fn random_depth2<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    density: f64,
    rng: &mut R,
) -> Result<Depth2Circuit> {
    check_density(density)?;
    check_fanin("an output gate", n + r)?;
    let middle = (0..r)
        .map(|_| {
            let inputs = subset(n, density, rng);
            let table = random_table(inputs.len(), rng)?;
            Ok(MiddleGate { inputs, table })
        })
        .collect::<Result<Vec<_>>>()?;
    let outputs = (0..n)
        .map(|_| {
            let middle = subset(r, density, rng);
            let direct = subset(n, density / 2.0, rng);
            let table = random_table(middle.len() + direct.len(), rng)?;
            Ok(OutputGate {
                middle,
                direct,
                table,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Depth2Circuit::new(n, middle, outputs)
}

/// General circuit of `gate_count` random gates of fanin at most 3, except
/// `over_fanin` gates whose fanin lies in `n+1..=n+3`. Predecessors are
/// distinct whenever enough earlier nodes exist.
pub fn random_general<R: Rng + ?Sized>(
    n: usize,
    gate_count: usize,
    over_fanin: usize,
    rng: &mut R,
) -> Result<GeneralCircuit> {
    if n == 0 {
        return Err(CircuitError::InfeasibleParams(
            "need at least one input".into(),
        ));
    }
    check_fanin("an over-fanin gate", n + 3)?;
    if over_fanin > gate_count.saturating_sub(1) {
        return Err(CircuitError::InfeasibleParams(format!(
            "cannot place {over_fanin} over-fanin gates among {gate_count} gates (the first gate is never over-fanin)"
        )));
    }
    let mut heavy = vec![false; gate_count];
    for k in index::sample(rng, gate_count - 1, over_fanin) {
        heavy[k + 1] = true;
    }
    let mut gates = Vec::with_capacity(gate_count);
    for (k, &is_heavy) in heavy.iter().enumerate() {
        let available = n + k;
        let fanin = if is_heavy {
            rng.gen_range(n + 1..=n + 3)
        } else {
            rng.gen_range(0..=3.min(available))
        };
        let preds: Vec<usize> = if fanin <= available {
            index::sample(rng, available, fanin).into_vec()
        } else {
            (0..fanin).map(|_| rng.gen_range(0..available)).collect()
        };
        let table = TruthTable::random(fanin, rng)?;
        gates.push(Gate { preds, table });
    }
    let nodes = n + gate_count;
    let outputs = (0..n)
        .map(|_| {
            if gate_count > 0 && rng.gen_bool(0.85) {
                rng.gen_range(n..nodes)
            } else {
                rng.gen_range(0..n)
            }
        })
        .collect();
    GeneralCircuit::new(n, gates, outputs)
}

#[derive(Clone, Copy)]
enum MiddleRole {
    Linear { negated: bool },
    Pair(usize),
    Dead,
}

/// Depth-2 circuit with linear output gates computing a linear operator while
/// its middle layer is genuinely non-linear.
///
/// The base is a random linear circuit whose middle parities may be negated;
/// each output negates its parity exactly when an odd number of its linear
/// arguments are negated, so `f(0) = 0`. Non-linearity enters through pairs
/// of identical non-linear middle gates that always feed the same outputs and
/// therefore cancel, and through dead non-linear gates that feed nothing.
/// Outputs may also list a middle gate that their parity ignores, and may
/// read inputs directly.
pub fn cancelling_middle_instance<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    density: f64,
    rng: &mut R,
) -> Result<Depth2Circuit> {
    check_density(density)?;
    if n == 0 || r == 0 {
        return Err(CircuitError::InfeasibleParams(
            "need n >= 1 and r >= 1".into(),
        ));
    }
    check_fanin("an output gate", n + r)?;
    let nonlinear_ok = n >= 2;
    let pairs = if nonlinear_ok {
        rng.gen_range(0..=(r - 1) / 3)
    } else {
        0
    };
    let dead = if nonlinear_ok && r - 2 * pairs >= 2 {
        rng.gen_range(0..=1)
    } else {
        0
    };
    let mut roles: Vec<MiddleRole> = Vec::with_capacity(r);
    for p in 0..pairs {
        roles.push(MiddleRole::Pair(p));
        roles.push(MiddleRole::Pair(p));
    }
    roles.extend((0..dead).map(|_| MiddleRole::Dead));
    while roles.len() < r {
        roles.push(MiddleRole::Linear {
            negated: rng.gen_bool(0.5),
        });
    }
    roles.shuffle(rng);

    let nonlinear_gate = |rng: &mut R| -> Result<MiddleGate> {
        let fanin = rng.gen_range(2..=n);
        let mut inputs = index::sample(rng, n, fanin).into_vec();
        inputs.sort_unstable();
        let table = random_nonlinear_table(fanin, rng)?;
        Ok(MiddleGate { inputs, table })
    };
    let pair_gates = (0..pairs)
        .map(|_| nonlinear_gate(rng))
        .collect::<Result<Vec<_>>>()?;
    let mut middle = Vec::with_capacity(r);
    for role in &roles {
        middle.push(match *role {
            MiddleRole::Linear { negated } => {
                let inputs = subset(n, density, rng);
                let all: Vec<usize> = (0..inputs.len()).collect();
                let table = TruthTable::parity(inputs.len(), &all, negated)?;
                MiddleGate { inputs, table }
            }
            MiddleRole::Pair(p) => pair_gates[p].clone(),
            MiddleRole::Dead => nonlinear_gate(rng)?,
        });
    }

    let mut outputs = Vec::with_capacity(n);
    for _ in 0..n {
        let pair_used: Vec<bool> = (0..pairs).map(|_| rng.gen_bool(density)).collect();
        // (middle index, counted by the parity)
        let mut args: Vec<(usize, bool)> = Vec::new();
        let mut negated = false;
        for (j, role) in roles.iter().enumerate() {
            match *role {
                MiddleRole::Linear { negated: nj } => {
                    if rng.gen_bool(density) {
                        args.push((j, true));
                        negated ^= nj;
                    }
                }
                MiddleRole::Pair(p) if pair_used[p] => args.push((j, true)),
                _ => {}
            }
        }
        if rng.gen_bool(0.25) {
            let unused: Vec<usize> = (0..r)
                .filter(|j| !args.iter().any(|(a, _)| a == j))
                .collect();
            if let Some(&j) = unused.choose(rng) {
                args.push((j, false));
                args.sort_unstable();
            }
        }
        let direct = subset(n, density / 2.0, rng);
        let mut set: Vec<usize> = args
            .iter()
            .enumerate()
            .filter(|(_, (_, counted))| *counted)
            .map(|(pos, _)| pos)
            .collect();
        set.extend((0..direct.len()).map(|k| args.len() + k));
        let table = TruthTable::parity(args.len() + direct.len(), &set, negated)?;
        outputs.push(OutputGate {
            middle: args.into_iter().map(|(j, _)| j).collect(),
            direct,
            table,
        });
    }
    Depth2Circuit::new(n, middle, outputs)
}

/// Depth-2 circuit with pure-parity middle gates whose output gates look
/// non-linear yet compute a planted linear operator `A`.
///
/// Middle gate `j` computes row `j` of a random `B`. Output `i` reads a random
/// set of middle gates with submatrix `B_i`, picks `a_i = λᵀ·B_i` from the row
/// space of `B_i`, and its table is `v ↦ λ·v` on the column space of `B_i`
/// and a coin flip elsewhere.
pub fn planted_parity_instance<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    density: f64,
    rng: &mut R,
) -> Result<PlantedInstance> {
    check_density(density)?;
    check_fanin("a middle gate", n)?;
    check_fanin("an output gate", r)?;
    let b = Gf2Matrix::random_with_density(r, n, density, rng);
    let middle = b
        .row_iter()
        .map(|row| {
            let inputs: Vec<usize> = row.ones().collect();
            let table = TruthTable::xor(inputs.len())?;
            Ok(MiddleGate { inputs, table })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut a_rows = Vec::with_capacity(n);
    let mut outputs = Vec::with_capacity(n);
    for _ in 0..n {
        let seen = subset(r, density, rng);
        let b_i = b.select_rows(&seen);
        let lambda = Gf2Vector::random(seen.len(), rng);
        let mut a_i = Gf2Vector::zeros(n);
        for k in lambda.ones() {
            a_i.xor_assign(b_i.row(k));
        }
        let basis: Vec<Gf2Vector> = b_i
            .first_basis_columns()
            .into_iter()
            .map(|j| b_i.column(j))
            .collect();
        let d = seen.len();
        let table = TruthTable::from_fn(d, |idx| {
            let v = Gf2Vector::from_index(d, idx as u64);
            if solve_in_span(&basis, &v).is_ok() {
                lambda.dot(&v)
            } else {
                rng.gen_bool(0.5)
            }
        })?;
        a_rows.push(a_i);
        outputs.push(OutputGate {
            middle: seen,
            direct: Vec::new(),
            table,
        });
    }
    Ok(PlantedInstance {
        circuit: Depth2Circuit::new(n, middle, outputs)?,
        matrix: Gf2Matrix::from_rows(n, a_rows)?,
    })
}
