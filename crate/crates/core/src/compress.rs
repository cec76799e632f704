//! Succinct codec for depth-2 circuits with parity middle gates that compute
//! a linear operator.
//!
//! The encoding keeps only the two adjacency matrices `B` (inputs to middle)
//! and `C` (middle to outputs) as lists of 1-positions, plus for every output
//! `i` the values of its gate on the first basis `u_1..u_t` of the column
//! space of `B_i`, the rows of `B` that output `i` reads. The decoder writes
//! `B_i·x` in that basis and combines the stored values, which is correct
//! because an output gate of a circuit computing `A·x` is linear on the
//! image of `B_i`.
//!
//! # Binary format
//!
//! All fields are packed MSB-first with no alignment:
//!
//! | field | width |
//! |---|---|
//! | magic `OPE1` | 32 |
//! | `n`, then `r` | 32 each, big-endian |
//! | `\|B\|` | `2w` |
//! | each 1 of `B` as (row, col), row-major order | `w` + `w` |
//! | `\|C\|` | `2w` |
//! | each 1 of `C` as (row, col), row-major order | `w` + `w` |
//! | for each output `i`: `g_i(u_1) .. g_i(u_{t_i})` | `t_i` |
//! | zero padding to a byte boundary | 0..7 |
//!
//! where `w = ⌈log₂(max(n, r) + 1)⌉`. `t_i = rank(B_i)` is recomputed from
//! `B` and `C` on reading, so it is not stored. The total length is at most
//! `96 + 16n + 2·L·w + Σ t_i` bits whenever `4w + 7 ≤ 16n`.

use thiserror::Error;

use crate::circuit::{computes_linear, Circuit, CircuitError, Depth2Circuit};
use crate::gf2::{solve_in_span, Gf2Matrix, Gf2Vector};

const MAGIC: &[u8; 4] = b"OPE1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("circuit has direct input-to-output wires")]
    DirectWires,
    #[error("middle gate {index} is not linear")]
    NonLinearMiddle { index: usize },
    #[error("middle gate {index} is a negated parity")]
    NegatedMiddle { index: usize },
    #[error("middle gate {index} lists an input its parity ignores")]
    RedundantMiddleWire { index: usize },
    #[error("operator is non-zero on the all-zero input")]
    NonZeroAtOrigin,
    #[error("circuit does not compute a linear operator")]
    NotLinearOperator,
    #[error("corrupt encoding: B_i·x of output {output} is outside the stored basis span")]
    Corrupt { output: usize },
    #[error("malformed encoding: {0}")]
    Malformed(String),
    #[error("input vector has length {found}, encoding has {expected} inputs")]
    InputLength { expected: usize, found: usize },
    #[error("bit stream, bit offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, CodecError>;

/// Certificate describing a linear operator through a depth-2 circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorEncoding {
    n: usize,
    r: usize,
    b_ones: Vec<(usize, usize)>,
    c_ones: Vec<(usize, usize)>,
    basis_bits: Vec<Gf2Vector>,
}

/// Columns of `B_i` forming its first basis, with their input indices.
fn first_basis(b: &Gf2Matrix, c: &Gf2Matrix, output: usize) -> (Vec<usize>, Gf2Matrix) {
    let rows: Vec<usize> = c.row(output).ones().collect();
    let b_i = b.select_rows(&rows);
    (b_i.first_basis_columns(), b_i)
}

fn positions_to_matrix(
    what: &str,
    rows: usize,
    cols: usize,
    ones: &[(usize, usize)],
) -> Result<Gf2Matrix> {
    let mut m = Gf2Matrix::zeros(rows, cols);
    for (k, &(i, j)) in ones.iter().enumerate() {
        if i >= rows || j >= cols {
            return Err(CodecError::Malformed(format!(
                "{what} position ({i}, {j}) outside {rows}x{cols}"
            )));
        }
        if k > 0 && ones[k - 1] >= (i, j) {
            return Err(CodecError::Malformed(format!(
                "{what} positions must be strictly increasing in row-major order"
            )));
        }
        m.set(i, j, true);
    }
    Ok(m)
}

impl OperatorEncoding {
    /// Assembles an encoding, checking positions and basis-bit lengths.
    pub fn new(
        n: usize,
        r: usize,
        b_ones: Vec<(usize, usize)>,
        c_ones: Vec<(usize, usize)>,
        basis_bits: Vec<Gf2Vector>,
    ) -> Result<Self> {
        let b = positions_to_matrix("B", r, n, &b_ones)?;
        let c = positions_to_matrix("C", n, r, &c_ones)?;
        if basis_bits.len() != n {
            return Err(CodecError::Malformed(format!(
                "{} basis strings for {n} outputs",
                basis_bits.len()
            )));
        }
        for (i, bits) in basis_bits.iter().enumerate() {
            let t = first_basis(&b, &c, i).0.len();
            if bits.len() != t {
                return Err(CodecError::Malformed(format!(
                    "output {i}: {} basis bits but rank(B_i) = {t}",
                    bits.len()
                )));
            }
        }
        Ok(Self {
            n,
            r,
            b_ones,
            c_ones,
            basis_bits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b_ones(&self) -> &[(usize, usize)] {
        &self.b_ones
    }

    pub fn c_ones(&self) -> &[(usize, usize)] {
        &self.c_ones
    }

    pub fn basis_bits(&self) -> &[Gf2Vector] {
        &self.basis_bits
    }

    /// `r x n` first-level adjacency matrix.
    pub fn b(&self) -> Gf2Matrix {
        positions_to_matrix("B", self.r, self.n, &self.b_ones).expect("validated on construction")
    }

    /// `n x r` second-level adjacency matrix.
    pub fn c(&self) -> Gf2Matrix {
        positions_to_matrix("C", self.n, self.r, &self.c_ones).expect("validated on construction")
    }

    /// Wires of the encoded circuit, `|B| + |C|`.
    pub fn wires(&self) -> usize {
        self.b_ones.len() + self.c_ones.len()
    }

    /// Sum of the basis sizes `t_i`.
    pub fn basis_bit_count(&self) -> usize {
        self.basis_bits.iter().map(Gf2Vector::len).sum()
    }

    /// Width of one position field.
    pub fn field_width(&self) -> usize {
        field_width(self.n, self.r)
    }

    /// Exact length of [`OperatorEncoding::serialize`] in bits.
    pub fn bit_length(&self) -> usize {
        let w = self.field_width();
        let payload = 96 + 2 * w * (self.wires() + 2) + self.basis_bit_count();
        payload.div_ceil(8) * 8
    }

    /// The guaranteed ceiling `96 + 16n + 2·L·w + Σ t_i`.
    pub fn length_bound(&self) -> usize {
        96 + 16 * self.n + 2 * self.wires() * self.field_width() + self.basis_bit_count()
    }

    pub fn serialize(&self) -> Vec<u8> {
        let w = self.field_width();
        let mut out = BitWriter::default();
        for &byte in MAGIC {
            out.write(u64::from(byte), 8);
        }
        out.write(self.n as u64, 32);
        out.write(self.r as u64, 32);
        for ones in [&self.b_ones, &self.c_ones] {
            out.write(ones.len() as u64, 2 * w);
            for &(i, j) in ones.iter() {
                out.write(i as u64, w);
                out.write(j as u64, w);
            }
        }
        for bits in &self.basis_bits {
            for b in bits.iter() {
                out.write(u64::from(b), 1);
            }
        }
        out.finish()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        let mut input = BitReader::new(bytes);
        let magic = input.read(32)?;
        if magic != u64::from(u32::from_be_bytes(*MAGIC)) {
            return Err(CodecError::Parse {
                offset: 0,
                message: format!("bad magic {magic:#010x}"),
            });
        }
        let n = input.read(32)? as usize;
        let r = input.read(32)? as usize;
        let w = field_width(n, r);
        let mut lists = Vec::with_capacity(2);
        for (rows, cols) in [(r, n), (n, r)] {
            let start = input.offset();
            let count = input.read(2 * w)? as usize;
            if count > rows * cols {
                return Err(CodecError::Parse {
                    offset: start,
                    message: format!("{count} ones do not fit a {rows}x{cols} matrix"),
                });
            }
            let ones = (0..count)
                .map(|_| Ok((input.read(w)? as usize, input.read(w)? as usize)))
                .collect::<Result<Vec<_>>>()?;
            lists.push(ones);
        }
        let c_ones = lists.pop().expect("two lists");
        let b_ones = lists.pop().expect("two lists");
        let b = positions_to_matrix("B", r, n, &b_ones)?;
        let c = positions_to_matrix("C", n, r, &c_ones)?;
        let basis_bits = (0..n)
            .map(|i| {
                let t = first_basis(&b, &c, i).0.len();
                let bits = (0..t)
                    .map(|_| Ok(input.read(1)? == 1))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Gf2Vector::from_bits(&bits))
            })
            .collect::<Result<Vec<_>>>()?;
        input.expect_padding()?;
        Self::new(n, r, b_ones, c_ones, basis_bits)
    }
}

fn field_width(n: usize, r: usize) -> usize {
    let max = n.max(r) as u64;
    (u64::BITS - max.leading_zeros()) as usize
}

/// Encodes a depth-2 circuit with pure-parity middle gates computing a
/// linear operator. Middle gates read by no output are dropped first.
pub fn encode(c: &Depth2Circuit, cap: usize) -> Result<OperatorEncoding> {
    if c.has_direct_wires() {
        return Err(CodecError::DirectWires);
    }
    for (index, g) in c.middle().iter().enumerate() {
        let form = g
            .table
            .linear_form()
            .ok_or(CodecError::NonLinearMiddle { index })?;
        if form.negated {
            return Err(CodecError::NegatedMiddle { index });
        }
        if form.set.len() != g.inputs.len() {
            return Err(CodecError::RedundantMiddleWire { index });
        }
    }
    let n = c.n();
    let a = match computes_linear(c, cap)? {
        Some(a) => a,
        None if !c.eval(&Gf2Vector::zeros(n))?.is_zero() => {
            return Err(CodecError::NonZeroAtOrigin)
        }
        None => return Err(CodecError::NotLinearOperator),
    };

    let mut renumber = vec![None; c.middle_count()];
    let mut kept = Vec::new();
    for (j, slot) in renumber.iter_mut().enumerate() {
        if c.fanout(j) > 0 {
            *slot = Some(kept.len());
            kept.push(j);
        }
    }
    let r = kept.len();
    let mut b = Gf2Matrix::zeros(r, n);
    for (new, &old) in kept.iter().enumerate() {
        for &i in &c.middle()[old].inputs {
            b.set(new, i, true);
        }
    }
    let mut cm = Gf2Matrix::zeros(n, r);
    for (i, g) in c.outputs().iter().enumerate() {
        for &j in &g.middle {
            cm.set(i, renumber[j].expect("read gates are kept"), true);
        }
    }
    // g_i(u_k) is output i on e_{j_k}, which is A[i][j_k].
    let basis_bits = (0..n)
        .map(|i| {
            let (cols, _) = first_basis(&b, &cm, i);
            let bits: Vec<bool> = cols.iter().map(|&j| a.get(i, j)).collect();
            Gf2Vector::from_bits(&bits)
        })
        .collect();
    OperatorEncoding::new(n, r, b.ones().collect(), cm.ones().collect(), basis_bits)
}

/// Decoder with the per-output bases precomputed.
#[derive(Debug, Clone)]
pub struct Decoder {
    b: Gf2Matrix,
    outputs: Vec<DecoderOutput>,
}

#[derive(Debug, Clone)]
struct DecoderOutput {
    rows: Vec<usize>,
    basis: Vec<Gf2Vector>,
    values: Gf2Vector,
}

impl Decoder {
    pub fn new(enc: &OperatorEncoding) -> Self {
        let b = enc.b();
        let c = enc.c();
        let outputs = (0..enc.n())
            .map(|i| {
                let (cols, b_i) = first_basis(&b, &c, i);
                DecoderOutput {
                    rows: c.row(i).ones().collect(),
                    basis: cols.iter().map(|&j| b_i.column(j)).collect(),
                    values: enc.basis_bits()[i].clone(),
                }
            })
            .collect();
        Self { b, outputs }
    }

    /// Recovers `A·x` from the certificate alone.
    pub fn decode(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        let n = self.outputs.len();
        if x.len() != n {
            return Err(CodecError::InputLength {
                expected: n,
                found: x.len(),
            });
        }
        let middle = self.b.matvec(x).map_err(CircuitError::from)?;
        let mut z = Gf2Vector::zeros(n);
        for (i, out) in self.outputs.iter().enumerate() {
            let y_i =
                Gf2Vector::from_bits(&out.rows.iter().map(|&j| middle.get(j)).collect::<Vec<_>>());
            let lambda =
                solve_in_span(&out.basis, &y_i).map_err(|_| CodecError::Corrupt { output: i })?;
            if lambda.dot(&out.values) {
                z.set(i, true);
            }
        }
        Ok(z)
    }
}

/// One-shot decoding; prefer [`Decoder`] for many inputs.
pub fn decode(enc: &OperatorEncoding, x: &Gf2Vector) -> Result<Gf2Vector> {
    Decoder::new(enc).decode(x)
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    used: usize,
}

impl BitWriter {
    fn write(&mut self, value: u64, width: usize) {
        debug_assert!(
            width == 64 || value >> width == 0,
            "{value} does not fit {width} bits"
        );
        for k in (0..width).rev() {
            if self.used.is_multiple_of(8) {
                self.bytes.push(0);
            }
            if value >> k & 1 == 1 {
                let last = self.bytes.last_mut().expect("byte pushed");
                *last |= 0x80 >> (self.used % 8);
            }
            self.used += 1;
        }
    }

    fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn offset(&self) -> usize {
        self.pos
    }

    fn read(&mut self, width: usize) -> Result<u64> {
        if self.pos + width > self.bytes.len() * 8 {
            return Err(CodecError::Parse {
                offset: self.pos,
                message: format!("unexpected end of stream reading {width} bits"),
            });
        }
        let mut value = 0u64;
        for _ in 0..width {
            let bit = self.bytes[self.pos / 8] >> (7 - self.pos % 8) & 1;
            value = value << 1 | u64::from(bit);
            self.pos += 1;
        }
        Ok(value)
    }

    fn expect_padding(&mut self) -> Result<()> {
        let end = self.pos.div_ceil(8) * 8;
        if self.bytes.len() * 8 != end {
            return Err(CodecError::Parse {
                offset: end,
                message: format!("{} trailing bytes", self.bytes.len() - end / 8),
            });
        }
        let start = self.pos;
        if self.read(end - start)? != 0 {
            return Err(CodecError::Parse {
                offset: start,
                message: "non-zero padding".into(),
            });
        }
        Ok(())
    }
}
