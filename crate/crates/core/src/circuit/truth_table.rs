use std::fmt;

use rand::Rng;

use super::{CircuitError, Result};
use crate::gf2::Gf2Vector;

/// Largest fanin a [`TruthTable`] accepts unless a different cap is given.
pub const DEFAULT_MAX_FANIN: usize = 24;

/// A boolean function of `fanin` ordered arguments stored as `2^fanin` bits.
///
/// Bit `b` is the value when argument `k` carries bit `k` of `b`, so the first
/// listed argument is the least significant bit of the index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    fanin: usize,
    bits: Gf2Vector,
}

/// A gate of the form `(⊕_{k ∈ set} v_k) ⊕ negated`; `set` holds argument
/// positions in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub set: Vec<usize>,
    pub negated: bool,
}

impl LinearForm {
    /// True when the form is the plain XOR of all `fanin` arguments.
    pub fn is_pure_parity_of(&self, fanin: usize) -> bool {
        !self.negated && self.set.len() == fanin && self.set.iter().copied().eq(0..fanin)
    }
}

impl TruthTable {
    pub fn new(fanin: usize, bits: Gf2Vector) -> Result<Self> {
        Self::with_cap(fanin, bits, DEFAULT_MAX_FANIN)
    }

    pub fn with_cap(fanin: usize, bits: Gf2Vector, max_fanin: usize) -> Result<Self> {
        if fanin > max_fanin {
            return Err(CircuitError::FaninTooLarge {
                fanin,
                cap: max_fanin,
            });
        }
        if bits.len() != 1 << fanin {
            return Err(CircuitError::TableLength {
                fanin,
                found: bits.len(),
            });
        }
        Ok(Self { fanin, bits })
    }

    pub fn from_fn(fanin: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        if fanin > DEFAULT_MAX_FANIN {
            return Err(CircuitError::FaninTooLarge {
                fanin,
                cap: DEFAULT_MAX_FANIN,
            });
        }
        let mut bits = Gf2Vector::zeros(1 << fanin);
        for idx in 0..1usize << fanin {
            if f(idx) {
                bits.set(idx, true);
            }
        }
        Ok(Self { fanin, bits })
    }

    pub fn constant(value: bool) -> Self {
        Self {
            fanin: 0,
            bits: Gf2Vector::from_bits(&[value]),
        }
    }

    pub fn identity() -> Self {
        Self {
            fanin: 1,
            bits: Gf2Vector::from_bits(&[false, true]),
        }
    }

    /// XOR of the arguments at positions `set`, complemented if `negated`.
    pub fn parity(fanin: usize, set: &[usize], negated: bool) -> Result<Self> {
        let mut mask = 0usize;
        for &k in set {
            if k >= fanin {
                return Err(CircuitError::Invalid(format!(
                    "parity position {k} out of range for fanin {fanin}"
                )));
            }
            mask |= 1 << k;
        }
        Self::from_fn(fanin, |idx| ((idx & mask).count_ones() & 1 == 1) ^ negated)
    }

    /// Plain XOR of all arguments.
    pub fn xor(fanin: usize) -> Result<Self> {
        Self::parity(fanin, &(0..fanin).collect::<Vec<_>>(), false)
    }

    pub fn random<R: Rng + ?Sized>(fanin: usize, rng: &mut R) -> Result<Self> {
        Self::new(fanin, Gf2Vector::random(1 << fanin, rng))
    }

    pub fn fanin(&self) -> usize {
        self.fanin
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.bits
    }

    pub fn value_at(&self, index: usize) -> bool {
        self.bits.get(index)
    }

    /// Evaluates on arguments given in listed order.
    pub fn eval<I: IntoIterator<Item = bool>>(&self, args: I) -> bool {
        let mut index = 0usize;
        let mut count = 0usize;
        for (k, a) in args.into_iter().enumerate() {
            index |= (a as usize) << k;
            count += 1;
        }
        debug_assert_eq!(count, self.fanin, "argument count differs from fanin");
        self.bits.get(index)
    }

    /// The pointwise negation of the function.
    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        for i in 0..bits.len() {
            bits.flip(i);
        }
        Self {
            fanin: self.fanin,
            bits,
        }
    }

    /// Recovers the parity set and negation flag if the table is affine.
    pub fn linear_form(&self) -> Option<LinearForm> {
        let negated = self.bits.get(0);
        let set: Vec<usize> = (0..self.fanin)
            .filter(|&k| self.bits.get(1 << k) != negated)
            .collect();
        let mask: usize = set.iter().map(|&k| 1usize << k).sum();
        let affine = (0..1usize << self.fanin)
            .all(|idx| self.bits.get(idx) == (((idx & mask).count_ones() & 1 == 1) ^ negated));
        affine.then_some(LinearForm { set, negated })
    }

    /// Whether the function ignores argument `k`.
    pub fn ignores(&self, k: usize) -> bool {
        (0..1usize << self.fanin)
            .filter(|idx| idx & (1 << k) == 0)
            .all(|idx| self.bits.get(idx) == self.bits.get(idx | (1 << k)))
    }

    /// Hex digits in increasing nibble order; nibble `j` holds table bits
    /// `4j..4j+3` with bit `4j` as its least significant bit.
    pub fn to_hex(&self) -> String {
        let digits = self.bits.len().div_ceil(4).max(1);
        (0..digits)
            .map(|j| {
                let nibble = (0..4)
                    .filter(|&b| 4 * j + b < self.bits.len() && self.bits.get(4 * j + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nibble, 16).expect("nibble < 16")
            })
            .collect()
    }

    pub fn from_hex(fanin: usize, hex: &str) -> Result<Self> {
        if fanin > DEFAULT_MAX_FANIN {
            return Err(CircuitError::FaninTooLarge {
                fanin,
                cap: DEFAULT_MAX_FANIN,
            });
        }
        let len = 1usize << fanin;
        let digits = len.div_ceil(4).max(1);
        if hex.len() != digits {
            return Err(CircuitError::Invalid(format!(
                "truth table for fanin {fanin} needs {digits} hex digits, found {}",
                hex.len()
            )));
        }
        let mut bits = Gf2Vector::zeros(len);
        for (j, c) in hex.chars().enumerate() {
            let nibble = c.to_digit(16).ok_or_else(|| {
                CircuitError::Invalid(format!("bad hex digit {c:?} in truth table"))
            })?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    if 4 * j + b >= len {
                        return Err(CircuitError::Invalid(format!(
                            "truth table {hex:?} sets bits beyond 2^{fanin}"
                        )));
                    }
                    bits.set(4 * j + b, true);
                }
            }
        }
        Ok(Self { fanin, bits })
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(fanin={}, {})", self.fanin, self.bits)
    }
}
