//! Dense linear algebra over GF(2).
//!
//! Vectors and matrix rows are packed into `u64` words. Matrices are stored
//! row-major; column access materializes a fresh [`Gf2Vector`].
//!
//! Elimination is column-oriented with columns visited in index order, so
//! [`Gf2Matrix::first_basis_columns`] always returns the lexicographically
//! earliest maximal independent set of columns.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is not in the span of the basis")]
    NotInSpan,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("matrix text, line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Gf2Error>;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2) with a fixed number of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    // Bits at positions >= len are always zero.
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The unit vector with a single 1 at coordinate `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector of length `len` whose coordinate `k` is bit `k` of `index`.
    ///
    /// # Panics
    /// Panics if `len > 64` and `index` is not representable, or if `index` has
    /// bits at or above `len`.
    pub fn from_index(len: usize, index: u64) -> Self {
        assert!(
            len >= 64 || index >> len == 0,
            "index {index:#x} has bits beyond length {len}"
        );
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = index;
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.gen();
        }
        v.trim();
        v
    }

    fn trim(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "coordinate {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "coordinate {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "coordinate {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of 1 coordinates.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest 1 coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Adds `other` into `self`.
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product mod 2.
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the 1 coordinates in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD_BITS + bit)
            })
        })
    }

    /// Inverse of [`Gf2Vector::from_index`]; `None` if the vector is longer than 64.
    pub fn to_index(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD_BITS => Some(self.words[0]),
            _ => None,
        }
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl FromStr for Gf2Vector {
    type Err = Gf2Error;

    /// Parses a string of `0`/`1` characters, coordinate 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .enumerate()
            .map(|(k, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Gf2Error::Parse {
                    line: 1,
                    message: format!("unexpected character {other:?} at column {}", k + 1),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }
}

/// A dense `rows x cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from its rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Gf2Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| Gf2Vector::random(cols, rng)).collect(),
        }
    }

    /// Each entry is 1 independently with probability `density`.
    pub fn random_with_density<R: Rng + ?Sized>(
        rows: usize,
        cols: usize,
        density: f64,
        rng: &mut R,
    ) -> Self {
        Self::from_fn(rows, cols, |_, _| rng.gen_bool(density))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &Gf2Vector> {
        self.data.iter()
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        assert!(
            j < self.cols,
            "column {j} out of range (cols={})",
            self.cols
        );
        let mut v = Gf2Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Number of 1 entries; the wire count when `self` is an adjacency matrix.
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(Gf2Vector::count_ones).sum()
    }

    /// Positions `(row, col)` of the 1 entries in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| (i, j)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j) in self.ones() {
            t.set(j, i, true);
        }
        t
    }

    /// The submatrix formed by `rows`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    pub fn matvec(&self, v: &Gf2Vector) -> Result<Gf2Vector> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if rhs.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Gf2Vector::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.data[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Dimension of the column space.
    pub fn rank(&self) -> usize {
        self.first_basis_columns().len()
    }

    /// Indices of the first basis: column `j` is selected iff it is not in the
    /// span of the selected columns with smaller index.
    pub fn first_basis_columns(&self) -> Vec<usize> {
        let mut span = Echelon::new(self.rows);
        (0..self.cols)
            .filter(|&j| span.insert(self.column(j)).is_some())
            .collect()
    }

    /// Serializes in the line-oriented text format: `<rows> <cols>` then one
    /// line of `0`/`1` characters per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for row in &self.data {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Gf2Error::Parse { line, message };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| parse_err(1, format!("bad dimension {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(1, "header must be `<rows> <cols>`".into()));
        };
        let mut data = Vec::with_capacity(rows);
        for i in 0..rows {
            let (k, line) = lines
                .next()
                .ok_or_else(|| parse_err(i + 2, format!("expected {rows} rows, found {i}")))?;
            let line = line.trim_end_matches('\r');
            if line.chars().count() != cols {
                return Err(parse_err(
                    k + 1,
                    format!("expected {cols} entries, found {}", line.chars().count()),
                ));
            }
            let row = line.parse::<Gf2Vector>().map_err(|e| match e {
                Gf2Error::Parse { message, .. } => parse_err(k + 1, message),
                other => other,
            })?;
            data.push(row);
        }
        if let Some((k, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(parse_err(k + 1, format!("trailing content {extra:?}")));
        }
        Ok(Self { rows, cols, data })
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{row}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Gf2Matrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Incrementally built echelon basis. Each stored vector has a distinct pivot
/// (its lowest 1) and is zero at the pivots of all vectors stored before it.
/// `combo` records which inserted vectors were summed to produce it.
struct Echelon {
    len: usize,
    reduced: Vec<(usize, Gf2Vector, Gf2Vector)>,
    inserted: usize,
}

impl Echelon {
    fn new(len: usize) -> Self {
        Self {
            len,
            reduced: Vec::new(),
            inserted: 0,
        }
    }

    /// Reduces `v` against the basis and returns the residue together with the
    /// combination of inserted vectors that was subtracted.
    fn reduce(&self, mut v: Gf2Vector, capacity: usize) -> (Gf2Vector, Gf2Vector) {
        let mut combo = Gf2Vector::zeros(capacity);
        for (pivot, vec, c) in &self.reduced {
            if v.get(*pivot) {
                v.xor_assign(vec);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns its pivot if `v` was independent of the span.
    fn insert(&mut self, v: Gf2Vector) -> Option<usize> {
        self.insert_tracked(v, 0)
    }

    fn insert_tracked(&mut self, v: Gf2Vector, capacity: usize) -> Option<usize> {
        debug_assert_eq!(v.len(), self.len);
        let (residue, mut combo) = self.reduce(v, capacity);
        let index = self.inserted;
        self.inserted += 1;
        let pivot = residue.first_one()?;
        if capacity > 0 {
            combo.flip(index);
        }
        self.reduced.push((pivot, residue, combo));
        Some(pivot)
    }
}

/// Coordinates of `y` in a linearly independent `basis`: the unique `λ` with
/// `y = ⊕_k λ_k · basis[k]`.
pub fn solve_in_span(basis: &[Gf2Vector], y: &Gf2Vector) -> Result<Gf2Vector> {
    let len = y.len();
    if let Some(bad) = basis.iter().find(|u| u.len() != len) {
        return Err(Gf2Error::DimensionMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    let k = basis.len();
    if k == 0 {
        return if y.is_zero() {
            Ok(Gf2Vector::zeros(0))
        } else {
            Err(Gf2Error::NotInSpan)
        };
    }
    let mut span = Echelon::new(len);
    for u in basis {
        span.insert_tracked(u.clone(), k)
            .ok_or(Gf2Error::DependentBasis)?;
    }
    let (residue, combo) = span.reduce(y.clone(), k);
    if residue.is_zero() {
        Ok(combo)
    } else {
        Err(Gf2Error::NotInSpan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn naive_matvec(m: &Gf2Matrix, v: &[bool]) -> Vec<bool> {
        (0..m.rows())
            .map(|i| {
                let mut acc = 0u8;
                for (j, &vj) in v.iter().enumerate() {
                    acc += (m.get(i, j) && vj) as u8;
                }
                acc % 2 == 1
            })
            .collect()
    }

    // Row reduction on a plain Vec<Vec<u8>>, independent of Echelon.
    #[allow(clippy::needless_range_loop)]
    fn naive_rank(m: &Gf2Matrix) -> usize {
        let mut a: Vec<Vec<u8>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| a[r][col] == 1) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && a[r][col] == 1 {
                    for c in 0..m.cols() {
                        a[r][c] ^= a[rank][c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn matvec_identity_and_zero() {
        let v: Gf2Vector = "1011".parse().unwrap();
        assert_eq!(Gf2Matrix::identity(4).matvec(&v).unwrap(), v);
        let z = Gf2Matrix::zeros(3, 3)
            .matvec(&"110".parse().unwrap())
            .unwrap();
        assert_eq!(z, Gf2Vector::zeros(3));
    }

    #[test]
    fn matvec_seeded_matches_naive_loop() {
        let m = Gf2Matrix::random(5, 5, &mut seeded(1));
        for x in 0..32u64 {
            let v = Gf2Vector::from_index(5, x);
            let bits: Vec<bool> = v.iter().collect();
            let expected = Gf2Vector::from_bits(&naive_matvec(&m, &bits));
            assert_eq!(m.matvec(&v).unwrap(), expected, "x={x}");
        }
    }

    #[test]
    fn matvec_dimension_mismatch() {
        let err = Gf2Matrix::identity(3)
            .matvec(&Gf2Vector::zeros(4))
            .unwrap_err();
        assert_eq!(
            err,
            Gf2Error::DimensionMismatch {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(7).rank(), 7);
        assert_eq!(Gf2Matrix::zeros(4, 6).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(0, 5).rank(), 0);
        assert_eq!(
            Gf2Matrix::zeros(5, 0).first_basis_columns(),
            Vec::<usize>::new()
        );
        let m = Gf2Matrix::random(6, 8, &mut seeded(2));
        assert_eq!(m.rank(), naive_rank(&m));
    }

    #[test]
    fn first_basis_skips_duplicate_column() {
        assert_eq!(Gf2Matrix::identity(3).first_basis_columns(), vec![0, 1, 2]);
        let m: Gf2Matrix = "3 3\n110\n111\n001\n".parse().unwrap();
        assert_eq!(m.first_basis_columns(), vec![0, 2]);
    }

    #[test]
    fn first_basis_seeded_is_greedy_prefix() {
        let m = Gf2Matrix::random(5, 7, &mut seeded(3));
        let chosen = m.first_basis_columns();
        for j in 0..m.cols() {
            let earlier: Vec<Gf2Vector> = chosen
                .iter()
                .filter(|&&c| c < j)
                .map(|&c| m.column(c))
                .collect();
            let before = naive_rank(&Gf2Matrix::from_columns(5, &earlier).unwrap());
            let mut with_j = earlier.clone();
            with_j.push(m.column(j));
            let after = naive_rank(&Gf2Matrix::from_columns(5, &with_j).unwrap());
            assert_eq!(chosen.contains(&j), after > before, "column {j}");
        }
    }

    #[test]
    fn solve_examples() {
        let e1 = Gf2Vector::unit(2, 0);
        let e2 = Gf2Vector::unit(2, 1);
        let basis = [e1.clone(), e2.clone()];
        let mut y = e1.clone();
        y.xor_assign(&e2);
        assert_eq!(solve_in_span(&basis, &y).unwrap(), "11".parse().unwrap());
        assert!(solve_in_span(&basis, &Gf2Vector::zeros(2))
            .unwrap()
            .is_zero());

        let mut rng = seeded(4);
        let basis: Vec<Gf2Vector> = loop {
            let cand = Gf2Matrix::random(6, 4, &mut rng);
            if cand.rank() == 4 {
                break (0..4).map(|j| cand.column(j)).collect();
            }
        };
        let lambda = Gf2Vector::random(4, &mut rng);
        let mut y = Gf2Vector::zeros(6);
        for k in lambda.ones() {
            y.xor_assign(&basis[k]);
        }
        let solved = solve_in_span(&basis, &y).unwrap();
        let mut back = Gf2Vector::zeros(6);
        for k in solved.ones() {
            back.xor_assign(&basis[k]);
        }
        assert_eq!(back, y);
        assert_eq!(solved, lambda);
    }

    #[test]
    fn solve_errors() {
        let basis = [Gf2Vector::unit(3, 0)];
        assert_eq!(
            solve_in_span(&basis, &Gf2Vector::unit(3, 2)),
            Err(Gf2Error::NotInSpan)
        );
        let dependent = [Gf2Vector::unit(3, 0), Gf2Vector::unit(3, 0)];
        assert_eq!(
            solve_in_span(&dependent, &Gf2Vector::zeros(3)),
            Err(Gf2Error::DependentBasis)
        );
        assert_eq!(
            solve_in_span(&[], &Gf2Vector::unit(2, 1)),
            Err(Gf2Error::NotInSpan)
        );
    }

    #[test]
    fn text_format() {
        let m: Gf2Matrix = "2 3\n101\n011\n".parse().unwrap();
        assert_eq!(m.to_text(), "2 3\n101\n011\n");
        assert!(matches!(
            "2 3\n101\n01\n".parse::<Gf2Matrix>(),
            Err(Gf2Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "2 3\n101\n".parse::<Gf2Matrix>(),
            Err(Gf2Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "1 2\n1x\n".parse::<Gf2Matrix>(),
            Err(Gf2Error::Parse { line: 2, .. })
        ));
        let empty: Gf2Matrix = "0 4\n".parse().unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 4));
    }

    #[test]
    fn vector_index_roundtrip_and_ones() {
        let v = Gf2Vector::from_index(7, 0b1010010);
        assert_eq!(v.to_string(), "0100101");
        assert_eq!(v.to_index(), Some(0b1010010));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![1, 4, 6]);
        let long = Gf2Vector::unit(130, 129);
        assert_eq!(long.ones().collect::<Vec<_>>(), vec![129]);
        assert_eq!(long.first_one(), Some(129));
        assert_eq!(long.to_index(), None);
    }
}
