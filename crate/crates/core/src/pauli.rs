//! The n-qubit Pauli group in binary symplectic form with exact phase tracking.
//!
//! An operator is stored as `i^phase · P_0 ⊗ P_1 ⊗ … ⊗ P_{n-1}` where each
//! factor `P_j` is one of the Hermitian matrices I, X, Y, Z selected by the bit
//! pair `(x_j, z_j)`: `(0,0) = I`, `(1,0) = X`, `(1,1) = Y`, `(0,1) = Z`.
//! With this convention `Y = iXZ`, so `X·Z = −iY`.
//!
//! Qubit 0 is the leftmost character of the string form.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::bits::{BitParseError, BitVec};
use crate::matrix::CMatrix;

/// Largest qubit count for which [`PauliOperator::to_matrix`] is allowed.
pub const MAX_MATRIX_QUBITS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PauliError {
    #[error("invalid Pauli character {ch:?} at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("Pauli string has no qubits")]
    Empty,
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dense matrix requested for {n} qubits (limit {MAX_MATRIX_QUBITS})")]
    TooLarge { n: usize },
    #[error("malformed binary form: {0}")]
    Binary(String),
}

impl From<BitParseError> for PauliError {
    fn from(e: BitParseError) -> Self {
        PauliError::Binary(e.to_string())
    }
}

/// Single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Builds an operator from its symplectic rows and phase exponent.
    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z, phase: phase & 3 })
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set_letter(q, l);
        }
        p
    }

    /// `letter` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(qubit, letter);
        p
    }

    /// Parses a binary form `"<x bits> <z bits>"`.
    pub fn from_binary_str(s: &str) -> Result<Self, PauliError> {
        let mut parts = s.split_whitespace();
        let (Some(xs), Some(zs), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(PauliError::Binary(format!("expected two bit rows, got {s:?}")));
        };
        Self::from_parts(BitVec::parse(xs)?, BitVec::parse(zs)?, 0)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent `e` of the global phase `i^e`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set_letter(&mut self, qubit: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_qubits()).map(|q| self.letter(q)).collect()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Hermitian iff the phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The concatenated symplectic row `(x | z)` of length `2n`.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_row(row: &BitVec, phase: u8) -> Self {
        assert!(row.len().is_multiple_of(2));
        let n = row.len() / 2;
        Self {
            x: row.slice(0, n),
            z: row.slice(n, 2 * n),
            phase: phase & 3,
        }
    }

    /// Same letters with phase exponent 0.
    pub fn without_phase(&self) -> Self {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: (4 - self.phase) & 3,
        }
    }

    fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Matrix product `self · other`, phase included.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_len(other)?;
        let mut plus = 0u32;
        let mut minus = 0u32;
        let words = self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()));
        for ((&x1, &z1), (&x2, &z2)) in words {
            let (xo1, yo1, zo1) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (xo2, yo2, zo2) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and the reverse orders pick up −i.
            plus += ((xo1 & yo2) | (yo1 & zo2) | (zo1 & xo2)).count_ones();
            minus += ((yo1 & xo2) | (zo1 & yo2) | (xo1 & zo2)).count_ones();
        }
        let phase = (self.phase as u32 + other.phase as u32 + plus + 3 * minus) % 4;
        Ok(Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: phase as u8,
        })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Dense `2^n × 2^n` matrix; qubit 0 is the most significant index bit.
    pub fn to_matrix(&self) -> Result<CMatrix, PauliError> {
        let n = self.num_qubits();
        if n > MAX_MATRIX_QUBITS {
            return Err(PauliError::TooLarge { n });
        }
        let dim = 1usize << n;
        let (xmask, zmask) = self.index_masks();
        let base = self.phase as u32 + self.y_count() as u32;
        let mut m = CMatrix::zeros(dim);
        for col in 0..dim {
            let sign = 2 * ((col & zmask).count_ones() % 2);
            m[(col ^ xmask, col)] = i_pow(base + sign);
        }
        Ok(m)
    }

    pub(crate) fn y_count(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Basis-index masks for the X and Z parts (qubit 0 ↦ bit n−1).
    pub(crate) fn index_masks(&self) -> (usize, usize) {
        let n = self.num_qubits();
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..n {
            let bit = 1usize << (n - 1 - q);
            if self.x.get(q) {
                xm |= bit;
            }
            if self.z.get(q) {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// Binary form `"<x bits> <z bits>"`.
    pub fn to_binary_string(&self) -> String {
        format!("{} {}", self.x, self.z)
    }
}

/// `i^k`.
pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    /// Panics on qubit-count mismatch; use [`PauliOperator::multiply`] to handle it.
    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("Pauli qubit count mismatch")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (phase, body, offset) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest, 2)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest, 2)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest, 1)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest, 1)
        } else {
            (0, s, 0)
        };
        let mut letters = Vec::with_capacity(body.len());
        for (i, ch) in body.chars().enumerate() {
            let l = Letter::from_char(ch).ok_or(PauliError::InvalidChar {
                pos: offset + i,
                ch,
            })?;
            letters.push(l);
        }
        if letters.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(Self::from_letters(&letters).with_phase(phase))
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Phase-0 Paulis in canonical order: by weight, then by support (positions
/// in lexicographic order), then by letters with X < Y < Z and the leftmost
/// position varying slowest.
#[derive(Clone, Debug)]
pub struct PauliEnumerator {
    n: usize,
    positions: Vec<usize>,
    max_weight: usize,
    weight: usize,
    /// Indices into `positions` for the current support.
    combo: Vec<usize>,
    /// Letter index (0..3) per support slot.
    letters: Vec<u8>,
    done: bool,
}

impl PauliEnumerator {
    /// All Paulis on `n` qubits with weight at most `max_weight`.
    pub fn new(n: usize, max_weight: usize) -> Self {
        Self::on_support(n, (0..n).collect(), max_weight)
    }

    /// Paulis supported inside `positions` (kept in the given order, which
    /// should be ascending) with weight at most `max_weight`.
    pub fn on_support(n: usize, positions: Vec<usize>, max_weight: usize) -> Self {
        let max_weight = max_weight.min(positions.len());
        Self {
            n,
            positions,
            max_weight,
            weight: 0,
            combo: Vec::new(),
            letters: Vec::new(),
            done: false,
        }
    }

    /// Exactly the weight-`w` Paulis.
    pub fn exact_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
        let mut it = Self::new(n, w);
        if w <= n {
            it.start_weight(w);
        } else {
            it.done = true;
        }
        it.take_while(move |p| p.weight() == w)
    }

    fn start_weight(&mut self, w: usize) {
        self.weight = w;
        self.combo = (0..w).collect();
        self.letters = vec![0; w];
    }

    fn current(&self) -> PauliOperator {
        let mut p = PauliOperator::identity(self.n);
        for (&slot, &l) in self.combo.iter().zip(&self.letters) {
            p.set_letter(self.positions[slot], Letter::NON_IDENTITY[l as usize]);
        }
        p
    }

    fn advance(&mut self) {
        // Letters first, rightmost slot fastest.
        for i in (0..self.letters.len()).rev() {
            if self.letters[i] < 2 {
                self.letters[i] += 1;
                return;
            }
            self.letters[i] = 0;
        }
        // Next combination in lexicographic order.
        let w = self.weight;
        let m = self.positions.len();
        for i in (0..w).rev() {
            if self.combo[i] < m - w + i {
                self.combo[i] += 1;
                for j in i + 1..w {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return;
            }
        }
        if w < self.max_weight {
            self.start_weight(w + 1);
        } else {
            self.done = true;
        }
    }
}

impl Iterator for PauliEnumerator {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}

/// `Σ_{j ≤ max_weight} 3^j · C(n, j)`, the number of operators [`PauliEnumerator::new`] yields.
pub fn count_paulis(n: usize, max_weight: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    let mut pow3 = 1u128;
    for j in 0..=max_weight.min(n) {
        total += binom * pow3;
        binom = binom * (n - j) as u128 / (j as u128 + 1);
        pow3 *= 3;
    }
    total
}
