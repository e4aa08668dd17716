//! GF(4) arithmetic and the dictionary between Pauli operators and GF(4)
//! vectors: I ↔ 0, Z ↔ 1, X ↔ ω, Y ↔ ω².
//!
//! Elements are stored as the bit pair `(x, z)` packed into `2x + z`, so
//! 0 = 00, 1 = 01, ω = 10, ω² = 11 and addition is XOR. The pair is exactly
//! the symplectic bits of the matching Pauli.

use std::fmt;

use thiserror::Error;

use crate::bits::{BitMatrix, BitVec, Echelon};
use crate::pauli::PauliOperator;
use crate::stabilizer::{StabilizerError, StabilizerGroup};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA2: Gf4 = Gf4(3);
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA2];

    pub fn from_bits(x: bool, z: bool) -> Self {
        Gf4(((x as u8) << 1) | z as u8)
    }

    pub fn bits(self) -> (bool, bool) {
        (self.0 & 2 != 0, self.0 & 1 != 0)
    }

    /// Discrete log base ω for nonzero elements: 1 ↦ 0, ω ↦ 1, ω² ↦ 2.
    fn log(self) -> Option<u8> {
        match self.0 {
            1 => Some(0),
            2 => Some(1),
            3 => Some(2),
            _ => None,
        }
    }

    fn exp(k: u8) -> Gf4 {
        [Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA2][(k % 3) as usize]
    }

    /// Swaps ω and ω².
    pub fn conj(self) -> Gf4 {
        match self.0 {
            2 => Gf4::OMEGA2,
            3 => Gf4::OMEGA,
            _ => self,
        }
    }

    /// `x + x²`, which is 0 on {0, 1} and 1 on {ω, ω²}.
    pub fn trace(self) -> bool {
        self.0 & 2 != 0
    }

    pub fn as_char(self) -> char {
        ['0', '1', 'w', 'W'][self.0 as usize]
    }

    pub fn from_char(ch: char) -> Option<Gf4> {
        match ch {
            '0' => Some(Gf4::ZERO),
            '1' => Some(Gf4::ONE),
            'w' => Some(Gf4::OMEGA),
            'W' => Some(Gf4::OMEGA2),
            _ => None,
        }
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

// Characteristic 2: addition is XOR, multiplication adds logs mod 3.
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Gf4 {
    type Output = Gf4;
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        match (self.log(), rhs.log()) {
            (Some(a), Some(b)) => Gf4::exp(a + b),
            _ => Gf4::ZERO,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf4Error {
    #[error("vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("generators {0} and {1} have nonzero trace inner product")]
    NotSelfOrthogonal(usize, usize),
    #[error("invalid GF(4) character {ch:?} at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

pub type Gf4Vector = Vec<Gf4>;

pub fn parse_vector(s: &str) -> Result<Gf4Vector, Gf4Error> {
    s.chars()
        .enumerate()
        .map(|(pos, ch)| Gf4::from_char(ch).ok_or(Gf4Error::InvalidChar { pos, ch }))
        .collect()
}

pub fn format_vector(v: &[Gf4]) -> String {
    v.iter().map(|g| g.as_char()).collect()
}

/// Phase is discarded.
pub fn pauli_to_gf4(p: &PauliOperator) -> Gf4Vector {
    (0..p.num_qubits())
        .map(|q| Gf4::from_bits(p.x_bits().get(q), p.z_bits().get(q)))
        .collect()
}

/// Phase-0 Pauli for a GF(4) vector.
pub fn gf4_to_pauli(v: &[Gf4]) -> PauliOperator {
    let x = BitVec::from_bools(v.iter().map(|g| g.bits().0));
    let z = BitVec::from_bools(v.iter().map(|g| g.bits().1));
    PauliOperator::from_parts(x, z, 0).expect("equal lengths")
}

/// `tr(Σ u_i · conj(v_i))`.
pub fn trace_inner_product(u: &[Gf4], v: &[Gf4]) -> Result<bool, Gf4Error> {
    if u.len() != v.len() {
        return Err(Gf4Error::LengthMismatch(u.len(), v.len()));
    }
    let sum = u
        .iter()
        .zip(v)
        .fold(Gf4::ZERO, |acc, (&a, &b)| acc + a * b.conj());
    Ok(sum.trace())
}

pub fn hamming_weight(v: &[Gf4]) -> usize {
    v.iter().filter(|g| **g != Gf4::ZERO).count()
}

fn scale(v: &[Gf4], s: Gf4) -> Gf4Vector {
    v.iter().map(|&g| g * s).collect()
}

fn to_bits(v: &[Gf4]) -> BitVec {
    // (x | z) layout, identical to the Pauli symplectic row.
    gf4_to_pauli(v).symplectic_row()
}

/// Additive code over GF(4): the span of its generators over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf4AdditiveCode {
    n: usize,
    generators: Vec<Gf4Vector>,
}

impl Gf4AdditiveCode {
    pub fn new(n: usize, generators: Vec<Gf4Vector>) -> Result<Self, Gf4Error> {
        for g in &generators {
            if g.len() != n {
                return Err(Gf4Error::LengthMismatch(n, g.len()));
            }
        }
        Ok(Self { n, generators })
    }

    /// Parses `n=<int>` followed by one vector per line over `{0,1,w,W}`.
    pub fn parse(text: &str) -> Result<Self, Gf4Error> {
        let mut n = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if n.is_none() {
                let v = line.strip_prefix("n=").ok_or_else(|| Gf4Error::Parse {
                    line: line_no,
                    message: format!("expected header \"n=<int>\", got {line:?}"),
                })?;
                n = Some(v.trim().parse::<usize>().map_err(|_| Gf4Error::Parse {
                    line: line_no,
                    message: format!("invalid length {v:?}"),
                })?);
                continue;
            }
            gens.push(parse_vector(line).map_err(|e| Gf4Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?);
        }
        let n = n.ok_or(Gf4Error::Parse {
            line: 0,
            message: "missing \"n=<int>\" header".into(),
        })?;
        Self::new(n, gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for g in &self.generators {
            s.push_str(&format_vector(g));
            s.push('\n');
        }
        s
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn generators(&self) -> &[Gf4Vector] {
        &self.generators
    }

    fn echelon(&self) -> Echelon {
        Echelon::new(&BitMatrix::new(
            2 * self.n,
            self.generators.iter().map(|g| to_bits(g)).collect(),
        ))
    }

    /// Number of GF(2)-independent generators; the code has `2^rank` words.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn contains(&self, v: &[Gf4]) -> bool {
        v.len() == self.n && self.echelon().in_span(&to_bits(v))
    }

    /// Every codeword, by Gray-code walk over the generators.
    pub fn span(&self) -> Vec<Gf4Vector> {
        let m = self.generators.len();
        assert!(m <= 24, "too many generators to enumerate");
        let mut cur = vec![Gf4::ZERO; self.n];
        let mut out = vec![cur.clone()];
        for step in 1u64..1 << m {
            let g = &self.generators[step.trailing_zeros() as usize];
            for (c, &x) in cur.iter_mut().zip(g) {
                *c = *c + x;
            }
            out.push(cur.clone());
        }
        out.sort_by_key(|v| format_vector(v));
        out.dedup();
        out
    }

    /// First pair of generators with nonzero trace inner product, if any.
    pub fn self_orthogonality_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.generators.len() {
            for j in i..self.generators.len() {
                if trace_inner_product(&self.generators[i], &self.generators[j]).unwrap_or(true) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonality_witness().is_none()
    }

    /// `v` is trace-orthogonal to every codeword.
    pub fn in_trace_dual(&self, v: &[Gf4]) -> bool {
        self.generators
            .iter()
            .all(|g| trace_inner_product(v, g) == Ok(false))
    }

    /// Closed under multiplication by ω (hence GF(4)-linear).
    pub fn is_linear(&self) -> bool {
        let ech = self.echelon();
        self.generators
            .iter()
            .all(|g| ech.in_span(&to_bits(&scale(g, Gf4::OMEGA))))
    }
}

pub fn from_stabilizer(s: &StabilizerGroup) -> Gf4AdditiveCode {
    Gf4AdditiveCode {
        n: s.num_qubits(),
        generators: s.generators().iter().map(pauli_to_gf4).collect(),
    }
}

/// Generator-wise inverse map with every sign set to `+1`.
pub fn to_stabilizer(code: &Gf4AdditiveCode) -> Result<StabilizerGroup, Gf4Error> {
    if let Some((i, j)) = code.self_orthogonality_witness() {
        return Err(Gf4Error::NotSelfOrthogonal(i, j));
    }
    let gens = code.generators.iter().map(|g| gf4_to_pauli(g)).collect();
    Ok(StabilizerGroup::with_qubits(code.n, gens)?)
}
