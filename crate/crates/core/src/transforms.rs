//! Semantics-preserving circuit passes with wire budgets.
//!
//! * [`cap_fanin`] replaces every gate of fanin above `n` by the same function
//!   of the inputs wired to all `n` inputs.
//! * [`linearize`] turns a depth-2 circuit with linear output gates that
//!   computes a linear operator into a parity circuit, adding at most `2n`
//!   wires. It runs [`remove_direct_wires`], [`normalize_output_xor`] and
//!   [`zero_normalize_middle`], then replaces the middle operator `h` by
//!   `x ↦ xᵀM` where row `i` of `M` is `h(e_i)`.

use thiserror::Error;

use crate::circuit::{
    all_inputs, check_cap, computes_linear, Circuit, CircuitError, Depth2Circuit, Gate,
    GeneralCircuit, LinearDepth2Circuit, MiddleGate, OutputGate, TruthTable,
};
use crate::gf2::{Gf2Matrix, Gf2Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("circuit has direct input-to-output wires")]
    DirectWires,
    #[error("output gate {index} is not a parity or negated parity")]
    NonLinearOutput { index: usize },
    #[error("output gate {index} is not a plain parity of its arguments")]
    NotPureParity { index: usize },
    #[error("operator is non-zero on the all-zero input")]
    NonZeroAtOrigin,
    #[error("circuit does not compute a linear operator")]
    NotLinearOperator,
}

pub type Result<T> = std::result::Result<T, TransformError>;

/// Rewires every gate of fanin greater than `n` directly to the inputs
/// `x_0..x_{n-1}`, with its table set to the function of `x` the gate
/// computes. Gates of fanin at most `n` are untouched.
pub fn cap_fanin(c: &GeneralCircuit, cap: usize) -> Result<GeneralCircuit> {
    let n = c.inputs();
    check_cap(n, cap)?;
    let heavy: Vec<usize> = c
        .gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.preds.len() > n)
        .map(|(k, _)| k)
        .collect();
    if heavy.is_empty() {
        return Ok(c.clone());
    }
    let mut tables = vec![Gf2Vector::zeros(1 << n); heavy.len()];
    for (x_index, x) in all_inputs(n).enumerate() {
        let values = c.eval_nodes(&x)?;
        for (t, &k) in tables.iter_mut().zip(&heavy) {
            if values[n + k] {
                t.set(x_index, true);
            }
        }
    }
    let (n, mut gates, outputs) = c.clone().into_parts();
    for (table, k) in tables.into_iter().zip(heavy) {
        gates[k] = Gate {
            preds: (0..n).collect(),
            table: TruthTable::new(n, table)?,
        };
    }
    Ok(GeneralCircuit::new(n, gates, outputs)?)
}

/// Routes direct wires through identity middle gates, one per input that has
/// any direct wire, appended in input order. Each output keeps its table: its
/// former direct arguments become trailing middle arguments in the same
/// positions.
pub fn remove_direct_wires(c: &Depth2Circuit) -> Depth2Circuit {
    if !c.has_direct_wires() {
        return c.clone();
    }
    let (n, mut middle, outputs) = c.clone().into_parts();
    let mut relay = vec![None; n];
    for (i, slot) in relay.iter_mut().enumerate() {
        if outputs.iter().any(|g| g.direct.contains(&i)) {
            *slot = Some(middle.len());
            middle.push(MiddleGate {
                inputs: vec![i],
                table: TruthTable::identity(),
            });
        }
    }
    let outputs = outputs
        .into_iter()
        .map(|g| {
            let mut mid = g.middle;
            mid.extend(g.direct.iter().map(|&i| relay[i].expect("relay exists")));
            OutputGate {
                middle: mid,
                direct: Vec::new(),
                table: g.table,
            }
        })
        .collect();
    Depth2Circuit::new(n, middle, outputs).expect("relays keep lists valid")
}

/// Makes every output gate a plain XOR of its arguments. Arguments outside an
/// output's parity set are dropped; negated outputs gain a wire from a single
/// constant-1 middle gate appended to the middle layer.
pub fn normalize_output_xor(c: &Depth2Circuit) -> Result<Depth2Circuit> {
    if c.has_direct_wires() {
        return Err(TransformError::DirectWires);
    }
    let (n, mut middle, outputs) = c.clone().into_parts();
    let forms = outputs
        .iter()
        .enumerate()
        .map(|(index, g)| {
            g.table
                .linear_form()
                .ok_or(TransformError::NonLinearOutput { index })
        })
        .collect::<Result<Vec<_>>>()?;
    let one = forms.iter().any(|f| f.negated).then(|| {
        middle.push(MiddleGate {
            inputs: Vec::new(),
            table: TruthTable::constant(true),
        });
        middle.len() - 1
    });
    let outputs = outputs
        .into_iter()
        .zip(forms)
        .map(|(g, form)| {
            let mut mid: Vec<usize> = form.set.iter().map(|&k| g.middle[k]).collect();
            if form.negated {
                mid.push(one.expect("constant gate exists"));
            }
            let table = TruthTable::xor(mid.len())?;
            Ok(OutputGate {
                middle: mid,
                direct: Vec::new(),
                table,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Depth2Circuit::new(n, middle, outputs)?)
}

/// Complements every middle gate that outputs 1 on the all-zero input, so
/// that afterwards `h(0) = 0`.
///
/// With plain-XOR outputs the circuit computes `C·h(x)`; complementing
/// changes `h` by the constant `h(0)` and the outputs by `C·h(0) = f(0) = 0`.
/// A gate that ignores `x_i` still has `h_j(e_i) = h_j(0) = 0` afterwards.
pub fn zero_normalize_middle(c: &Depth2Circuit) -> Result<Depth2Circuit> {
    if c.has_direct_wires() {
        return Err(TransformError::DirectWires);
    }
    for (index, g) in c.outputs().iter().enumerate() {
        let pure = g
            .table
            .linear_form()
            .is_some_and(|f| f.is_pure_parity_of(g.fanin()));
        if !pure {
            return Err(TransformError::NotPureParity { index });
        }
    }
    if !c.eval(&Gf2Vector::zeros(c.n()))?.is_zero() {
        return Err(TransformError::NonZeroAtOrigin);
    }
    let (n, middle, outputs) = c.clone().into_parts();
    let middle = middle
        .into_iter()
        .map(|g| {
            if g.table.value_at(0) {
                MiddleGate {
                    inputs: g.inputs,
                    table: g.table.complement(),
                }
            } else {
                g
            }
        })
        .collect();
    Ok(Depth2Circuit::new(n, middle, outputs)?)
}

/// Wire accounting for one run of [`linearize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizationReport {
    pub n: usize,
    pub wires_before: usize,
    pub after_direct_removal: usize,
    pub after_output_xor: usize,
    pub after_zero_normalization: usize,
    pub wires_after: usize,
    /// Relay wires added by [`remove_direct_wires`].
    pub added_first_level: usize,
    /// Wires from the constant-1 gate added by [`normalize_output_xor`].
    pub added_second_level: usize,
    /// First-level wires of the fully normalized circuit.
    pub normalized_first_level: usize,
    /// `n x r'` matrix whose row `i` is `h(e_i)`; its ones are the new first-level wires.
    pub m: Gf2Matrix,
}

impl LinearizationReport {
    pub fn budget(&self) -> usize {
        2 * self.n
    }

    /// Net change in wire count; negative when redundant wires were dropped.
    pub fn added(&self) -> i64 {
        self.wires_after as i64 - self.wires_before as i64
    }

    pub fn within_budget(&self) -> bool {
        self.wires_after <= self.wires_before + self.budget()
    }

    /// Per-stage budgets: relays add at most `n`, output normalization at most
    /// `n`, zero normalization nothing, and `|M|` stays within the normalized
    /// first level.
    pub fn stage_budgets_hold(&self) -> bool {
        self.after_direct_removal <= self.wires_before + self.n
            && self.added_first_level <= self.n
            && self.after_output_xor <= self.after_direct_removal + self.n
            && self.added_second_level <= self.n
            && self.after_zero_normalization == self.after_output_xor
            && self.m.count_ones() <= self.normalized_first_level
    }

    pub fn ok(&self) -> bool {
        self.within_budget() && self.stage_budgets_hold()
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        format!(
            "n={}\nwires_before={}\nafter_direct_removal={}\nafter_output_xor={}\nafter_zero_normalization={}\nm_ones={}\nnormalized_first_level={}\nwires_after={}\nadded_first_level={}\nadded_second_level={}\nadded={}\nbudget={}\nok={}\n",
            self.n,
            self.wires_before,
            self.after_direct_removal,
            self.after_output_xor,
            self.after_zero_normalization,
            self.m.count_ones(),
            self.normalized_first_level,
            self.wires_after,
            self.added_first_level,
            self.added_second_level,
            self.added(),
            self.budget(),
            self.ok(),
        )
    }
}

/// Converts a depth-2 circuit whose output gates are linear and which computes
/// a linear operator into an equivalent parity circuit.
pub fn linearize(
    c: &Depth2Circuit,
    cap: usize,
) -> Result<(LinearDepth2Circuit, LinearizationReport)> {
    let n = c.n();
    if computes_linear(c, cap)?.is_none() {
        return Err(TransformError::NotLinearOperator);
    }
    let relayed = remove_direct_wires(c);
    let xored = normalize_output_xor(&relayed)?;
    let normalized = zero_normalize_middle(&xored)?;

    let rows = (0..n)
        .map(|i| normalized.middle_values(&Gf2Vector::unit(n, i)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let r = normalized.middle_count();
    let m = Gf2Matrix::from_rows(r, rows).map_err(CircuitError::from)?;
    let mut second = Gf2Matrix::zeros(n, r);
    for (i, g) in normalized.outputs().iter().enumerate() {
        for &j in &g.middle {
            second.set(i, j, true);
        }
    }
    let linear = LinearDepth2Circuit::new(m.transpose(), second, Gf2Vector::zeros(n))?;
    let added_second_level = if xored.middle_count() > relayed.middle_count() {
        let one = xored.middle_count() - 1;
        xored
            .outputs()
            .iter()
            .filter(|g| g.middle.contains(&one))
            .count()
    } else {
        0
    };
    let report = LinearizationReport {
        n,
        wires_before: c.wires(),
        after_direct_removal: relayed.wires(),
        after_output_xor: xored.wires(),
        after_zero_normalization: normalized.wires(),
        wires_after: linear.wires(),
        added_first_level: relayed.middle_count() - c.middle_count(),
        added_second_level,
        normalized_first_level: normalized.first_level_wires(),
        m,
    };
    Ok((linear, report))
}
