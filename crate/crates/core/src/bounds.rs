//! Exact counting bounds on the number of wires needed for operators.
//!
//! Everything is computed over big integers; no floating point is involved.
//!
//! For circuits with arbitrary gates, `log₂` of the number of distinct
//! operators computable with at most `L` wires is bounded by
//!
//! ```text
//! U(L) = m·⌈log₂(n+1)⌉ + L·⌈log₂ m⌉ + (m − ⌊n/2⌋)·2^⌈2L/n⌉ + ⌈n/2⌉·2^n
//! ```
//!
//! with `m` an upper bound on the number of gates (default `2n²`). When
//! `U(L) < n·2^n` some operator needs more than `L` wires.
//!
//! For linear operators, a depth-2 circuit of parities with at most `L`
//! wires has at most `L` middle gates that are read by an output. Padding to
//! exactly `L` middle gates, its wires form a set of at most `L` slots among
//! the `2nL` possible input-middle and middle-output pairs, giving at most
//! `Σ_{l≤L} C(2nL, l) ≤ C((2n+1)L, L)` circuits. Negations need no extra
//! factor: a circuit of parities and negated parities computing a linear
//! operator computes the same operator with every negation removed.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {n} is too small (need n >= {min})")]
    TooFewInputs { n: u64, min: u64 },
    #[error("gate cap m = {m} must be at least n = {n}")]
    GateCapTooSmall { n: u64, m: u64 },
    #[error("wire count {l} exceeds n^2 = {max}")]
    TooManyWires { l: u64, max: u64 },
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// Parameters of the general counting bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    n: u64,
    m: u64,
}

impl BoundParams {
    /// `m = 2n²`.
    pub fn new(n: u64) -> Result<Self> {
        Self::with_gate_cap(n, 2 * n * n)
    }

    pub fn with_gate_cap(n: u64, m: u64) -> Result<Self> {
        if n == 0 {
            return Err(BoundsError::TooFewInputs { n, min: 1 });
        }
        if m < n {
            return Err(BoundsError::GateCapTooSmall { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// `⌈log₂ x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u64 {
    assert!(x >= 1, "log of zero");
    u64::from(u64::BITS - (x - 1).leading_zeros())
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// `n·2^n`, the log₂ of the number of `n`-operators.
pub fn log2_num_operators(n: u64) -> BigUint {
    BigUint::from(n) * pow2(n)
}

/// The upper bound `U(L)` on log₂ of the number of operators computable
/// with at most `L` wires.
pub fn log2_count_upper(l: u64, params: &BoundParams) -> Result<BigUint> {
    let (n, m) = (params.n, params.m);
    if l > n * n {
        return Err(BoundsError::TooManyWires { l, max: n * n });
    }
    let gates = BigUint::from(m * ceil_log2(n + 1));
    let preds = BigUint::from(l * ceil_log2(m));
    let light = BigUint::from(m - n / 2) * pow2((2 * l).div_ceil(n));
    let heavy = BigUint::from(n.div_ceil(2)) * pow2(n);
    Ok(gates + preds + light + heavy)
}

/// Largest `L <= n²` whose bound `U(L)` stays below `n·2^n`, or 0 if none.
pub fn min_wires_lower_bound(params: &BoundParams) -> Result<u64> {
    if params.n < 2 {
        return Err(BoundsError::TooFewInputs {
            n: params.n,
            min: 2,
        });
    }
    let target = log2_num_operators(params.n);
    largest_below(params.n * params.n, |l| {
        log2_count_upper(l, params).expect("l <= n^2") < target
    })
}

/// True iff `C((2n+1)L, L) < 2^(n²)`.
pub fn linear_count_below_matrices(n: u64, l: u64) -> bool {
    let limit = pow2(n * n);
    let slots = (2 * n + 1) * l;
    // C(N, k) grows with k while k <= N/2, so an early exit is exact.
    let mut c = BigUint::one();
    for k in 1..=l {
        c = c * BigUint::from(slots - k + 1) / BigUint::from(k);
        if c >= limit {
            return false;
        }
    }
    true
}

/// Largest `L <= n²` such that fewer than `2^(n²)` linear operators have
/// depth-2 parity circuits with at most `L` wires.
pub fn linear_circuit_lower_bound(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(BoundsError::TooFewInputs { n, min: 2 });
    }
    largest_below(n * n, |l| linear_count_below_matrices(n, l))
}

/// Binary search for the largest `l` in `0..=max` with `ok(l)`, given that
/// `ok` holds on a prefix. Returns 0 when even `ok(0)` fails.
fn largest_below(max: u64, mut ok: impl FnMut(u64) -> bool) -> Result<u64> {
    if !ok(0) {
        return Ok(0);
    }
    let (mut lo, mut hi) = (0, max);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// One line of the bounds table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsRow {
    pub n: u64,
    pub general: u64,
    pub linear: u64,
}

impl BoundsRow {
    pub fn compute(n: u64) -> Result<Self> {
        Ok(Self {
            n,
            general: min_wires_lower_bound(&BoundParams::new(n)?)?,
            linear: linear_circuit_lower_bound(n)?,
        })
    }

    /// `general / n²` truncated to four decimals.
    pub fn ratio(&self) -> String {
        let scaled = self.general * 10_000 / (self.n * self.n);
        format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
    }
}

pub const TABLE_HEADER: &str = "\
# wire lower bounds, all arithmetic exact
# L_star_general: largest L with m*ceil(log2(n+1)) + L*ceil(log2(m)) + (m - floor(n/2))*2^ceil(2L/n) + ceil(n/2)*2^n < n*2^n, m = 2n^2
# L_star_linear: largest L with C((2n+1)L, L) < 2^(n^2)
# ratio: L_star_general / n^2 truncated to 4 decimals
n,L_star_general,L_star_linear,n^2,ratio
";

pub fn format_table(rows: &[BoundsRow]) -> String {
    let mut s = String::from(TABLE_HEADER);
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            row.general,
            row.linear,
            row.n * row.n,
            row.ratio()
        ));
    }
    s
}

/// Table for `n = n_min, 2·n_min, ...` up to `n_max`.
pub fn doubling_table(n_min: u64, n_max: u64) -> Result<String> {
    let mut rows = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        rows.push(BoundsRow::compute(n)?);
        n *= 2;
    }
    Ok(format_table(&rows))
}
