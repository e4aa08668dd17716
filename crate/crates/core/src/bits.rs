//! Packed bit vectors and dense matrices over GF(2).
//!
//! Bits are stored little-endian inside `u64` words: bit `i` lives in word
//! `i / 64` at position `i % 64`. The textual form writes bit 0 first.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitParseError {
    #[error("invalid character {ch:?} at position {pos} (expected 0 or 1)")]
    InvalidChar { pos: usize, ch: char },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, bit 0 first.
    pub fn parse(s: &str) -> Result<Self, BitParseError> {
        let mut v = Self::zeros(s.chars().count());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(pos, true),
                _ => return Err(BitParseError::InvalidChar { pos, ch }),
            }
        }
        Ok(v)
    }

    /// Lowest `len` bits of `value`, with bit `len - 1` of `value` mapped to
    /// position 0 (so the text form reads like the binary literal).
    pub fn from_u64_msb_first(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the standard dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        BitVec::from_bools((start..end).map(|i| self.get(i)))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { cols, rows }
    }

    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = BitVec::zeros(n);
                r.set(i, true);
                r
            })
            .collect();
        Self { cols: n, rows }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).rank()
    }

    /// `self · v` as a column of parities, one per row.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_bools(self.rows.iter().map(|r| r.dot(v)))
    }

    /// Basis of the right null space `{v : self · v = 0}`.
    pub fn null_space(&self) -> BitMatrix {
        let ech = Echelon::new(self);
        let pivots = ech.pivot_cols();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in ech.reduced.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix::new(self.cols, basis)
    }

    /// Rows that are independent of all earlier rows, in original order.
    pub fn independent_rows(&self) -> BitMatrix {
        let mut acc = Echelon::empty(self.cols);
        let mut kept = Vec::new();
        for r in &self.rows {
            if acc.insert(r.clone()) {
                kept.push(r.clone());
            }
        }
        BitMatrix::new(self.cols, kept)
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let a = Echelon::new(self);
        let b = Echelon::new(other);
        a.rank() == b.rank() && other.rows.iter().all(|r| a.in_span(r))
    }
}

/// Reduced row-echelon form that also remembers which original rows were
/// combined to produce each reduced row.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    source_rows: usize,
    reduced: Vec<BitVec>,
    /// `combos[i]` has bit `j` set when original row `j` contributes to `reduced[i]`.
    combos: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn empty(cols: usize) -> Self {
        Self {
            cols,
            source_rows: 0,
            reduced: Vec::new(),
            combos: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn new(m: &BitMatrix) -> Self {
        let source_rows = m.num_rows();
        let mut reduced: Vec<BitVec> = m.rows.clone();
        let mut combos: Vec<BitVec> = (0..source_rows)
            .map(|i| {
                let mut c = BitVec::zeros(source_rows);
                c.set(i, true);
                c
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..reduced.len()).find(|&r| reduced[r].get(col)) else {
                continue;
            };
            reduced.swap(rank, p);
            combos.swap(rank, p);
            for r in 0..reduced.len() {
                if r != rank && reduced[r].get(col) {
                    let (pr, pc) = (reduced[rank].clone(), combos[rank].clone());
                    reduced[r].xor_assign(&pr);
                    combos[r].xor_assign(&pc);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        reduced.truncate(rank);
        combos.truncate(rank);
        Self {
            cols: m.cols,
            source_rows,
            reduced,
            combos,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.clone()
    }

    /// Adds a row, returning `false` if it was already in the span.
    /// Combination tracking is not maintained for inserted rows.
    fn insert(&mut self, mut row: BitVec) -> bool {
        for (r, &p) in self.reduced.iter().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(r);
            }
        }
        let Some(p) = row.first_one() else {
            return false;
        };
        for r in self.reduced.iter_mut() {
            if r.get(p) {
                r.xor_assign(&row);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.reduced.insert(pos, row);
        self.combos.insert(pos, BitVec::zeros(self.source_rows));
        true
    }

    pub fn in_span(&self, v: &BitVec) -> bool {
        self.solve(v).is_some()
    }

    /// Coefficients `c` over the original rows with `Σ c_j row_j = v`, if any.
    pub fn solve(&self, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.cols);
        let mut residual = v.clone();
        let mut coeffs = BitVec::zeros(self.source_rows);
        for ((r, c), &p) in self.reduced.iter().zip(&self.combos).zip(&self.pivots) {
            if residual.get(p) {
                residual.xor_assign(r);
                coeffs.xor_assign(c);
            }
        }
        residual.is_zero().then_some(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let rows: Vec<BitVec> = rows.iter().map(|r| BitVec::parse(r).unwrap()).collect();
        BitMatrix::new(rows[0].len(), rows)
    }

    #[test]
    fn parse_and_display() {
        let v = BitVec::parse("1001").unwrap();
        assert_eq!(v.to_string(), "1001");
        assert_eq!(v.count_ones(), 2);
        assert_eq!(
            BitVec::parse("10a").unwrap_err(),
            BitParseError::InvalidChar { pos: 2, ch: 'a' }
        );
    }

    #[test]
    fn crosses_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(v.dot(&v));
    }

    #[test]
    fn rank_of_hamming_check() {
        let h = m(&["1111000", "1100110", "1010101"]);
        assert_eq!(h.rank(), 3);
        let ns = h.null_space();
        assert_eq!(ns.num_rows(), 4);
        for v in ns.rows() {
            assert!(h.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_reconstructs_combination() {
        let a = m(&["1100", "0110", "0011"]);
        let ech = Echelon::new(&a);
        let target = BitVec::parse("1001").unwrap();
        let c = ech.solve(&target).unwrap();
        let mut acc = BitVec::zeros(4);
        for j in c.ones() {
            acc.xor_assign(a.row(j));
        }
        assert_eq!(acc, target);
        assert!(ech.solve(&BitVec::parse("1000").unwrap()).is_none());
    }

    #[test]
    fn independent_rows_keeps_order() {
        let a = m(&["110", "011", "101", "001"]);
        let ind = a.independent_rows();
        assert_eq!(ind.num_rows(), 3);
        assert_eq!(ind.row(0).to_string(), "110");
        assert_eq!(ind.row(1).to_string(), "011");
        assert_eq!(ind.row(2).to_string(), "001");
    }

    #[test]
    fn msb_first_conversion() {
        assert_eq!(BitVec::from_u64_msb_first(0b100, 3).to_string(), "100");
    }
}
