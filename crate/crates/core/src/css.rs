//! Classical binary linear codes and the CSS construction.

use num_complex::Complex64;
use thiserror::Error;

use crate::bits::{BitMatrix, BitParseError, BitVec};
use crate::pauli::PauliOperator;
use crate::stabilizer::{StabilizerError, StabilizerGroup};
use crate::statevector::{StateError, StateVector};

/// Largest code dimension for which codewords are enumerated.
pub const MAX_ENUMERATED_DIMENSION: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum CssError {
    #[error("codes have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dual of C2 is not contained in C1: check row {row} of C2 ({witness}) violates C1")]
    ContainmentViolated { row: usize, witness: BitVec },
    #[error("vector {0} is not a codeword of C1")]
    NotInCode(BitVec),
    #[error("code dimension {0} too large to enumerate (limit {MAX_ENUMERATED_DIMENSION})")]
    TooLarge(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Binary linear code given by a parity-check matrix.
#[derive(Clone, Debug)]
pub struct ClassicalCode {
    parity_check: BitMatrix,
    generator: BitMatrix,
}

impl ClassicalCode {
    pub fn from_parity_check(h: BitMatrix) -> Self {
        let generator = h.null_space();
        Self {
            parity_check: h,
            generator,
        }
    }

    pub fn from_generator(g: BitMatrix) -> Self {
        let parity_check = g.null_space();
        Self {
            parity_check,
            generator: g.independent_rows(),
        }
    }

    /// The `[7,4,3]` Hamming code.
    pub fn hamming7() -> Self {
        let rows = ["1111000", "1100110", "1010101"]
            .iter()
            .map(|r| BitVec::parse(r).unwrap())
            .collect();
        Self::from_parity_check(BitMatrix::new(7, rows))
    }

    /// `{0…0, 1…1}` of length `n`.
    pub fn repetition(n: usize) -> Self {
        Self::from_generator(BitMatrix::new(n, vec![BitVec::from_bools(vec![true; n])]))
    }

    /// All of `GF(2)^n` (no parity checks).
    pub fn full_space(n: usize) -> Self {
        Self::from_parity_check(BitMatrix::empty(n))
    }

    /// Parses `n=<int>` followed by parity-check rows as 0/1 strings.
    pub fn parse(text: &str) -> Result<Self, CssError> {
        let mut n: Option<usize> = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(expected) = n else {
                let v = line.strip_prefix("n=").ok_or_else(|| CssError::Parse {
                    line: line_no,
                    message: format!("expected header \"n=<int>\", got {line:?}"),
                })?;
                n = Some(v.trim().parse().map_err(|_| CssError::Parse {
                    line: line_no,
                    message: format!("invalid length {v:?}"),
                })?);
                continue;
            };
            let row = BitVec::parse(line).map_err(|e: BitParseError| CssError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            if row.len() != expected {
                return Err(CssError::Parse {
                    line: line_no,
                    message: format!("row has length {}, header says {expected}", row.len()),
                });
            }
            rows.push(row);
        }
        let n = n.ok_or(CssError::Parse {
            line: 0,
            message: "missing \"n=<int>\" header".into(),
        })?;
        Ok(Self::from_parity_check(BitMatrix::new(n, rows)))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.len());
        for r in self.parity_check.rows() {
            s.push_str(&format!("{r}\n"));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.parity_check.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.len() && self.parity_check.mul_vec(v).is_zero()
    }

    /// The orthogonal complement: its parity checks are our generators.
    pub fn dual(&self) -> ClassicalCode {
        ClassicalCode {
            parity_check: self.generator.clone(),
            generator: self.parity_check.independent_rows(),
        }
    }

    /// Same set of codewords.
    pub fn same_code(&self, other: &ClassicalCode) -> bool {
        self.generator.same_row_space(&other.generator)
    }

    /// Every codeword of `other` is a codeword of `self`.
    pub fn contains_code(&self, other: &ClassicalCode) -> bool {
        other.generator.rows().iter().all(|r| self.contains(r))
    }

    /// All codewords, enumerated from the generator rows.
    pub fn codewords(&self) -> Result<Vec<BitVec>, CssError> {
        span(&self.generator)
    }

    /// Minimum weight of a nonzero codeword; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>, CssError> {
        Ok(self
            .codewords()?
            .iter()
            .map(BitVec::count_ones)
            .filter(|&w| w > 0)
            .min())
    }
}

fn span(basis: &BitMatrix) -> Result<Vec<BitVec>, CssError> {
    let k = basis.num_rows();
    if k > MAX_ENUMERATED_DIMENSION {
        return Err(CssError::TooLarge(k));
    }
    let mut out = Vec::with_capacity(1 << k);
    let mut cur = BitVec::zeros(basis.cols());
    out.push(cur.clone());
    for step in 1u64..1 << k {
        cur.xor_assign(basis.row(step.trailing_zeros() as usize));
        out.push(cur.clone());
    }
    Ok(out)
}

fn check_lengths(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<(), CssError> {
    if c1.len() != c2.len() {
        return Err(CssError::LengthMismatch(c1.len(), c2.len()));
    }
    Ok(())
}

/// Checks `C2⊥ ⊆ C1`, returning the first violating parity check of `C2`.
pub fn check_containment(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<(), CssError> {
    check_lengths(c1, c2)?;
    for (row, h) in c2.parity_check.rows().iter().enumerate() {
        if !c1.contains(h) {
            return Err(CssError::ContainmentViolated {
                row,
                witness: h.clone(),
            });
        }
    }
    Ok(())
}

/// Z-type generators from the parity checks of `C1`, then X-type generators
/// from the parity checks of `C2`. Redundant check rows are dropped.
pub fn css_build(c1: &ClassicalCode, c2: &ClassicalCode) -> Result<StabilizerGroup, CssError> {
    check_containment(c1, c2)?;
    let n = c1.len();
    let zero = BitVec::zeros(n);
    let mut gens = Vec::new();
    for r in c1.parity_check.independent_rows().rows() {
        gens.push(PauliOperator::from_parts(zero.clone(), r.clone(), 0).expect("equal lengths"));
    }
    for r in c2.parity_check.independent_rows().rows() {
        gens.push(PauliOperator::from_parts(r.clone(), zero.clone(), 0).expect("equal lengths"));
    }
    Ok(StabilizerGroup::with_qubits(n, gens)?)
}

/// Minimum-weight (then lexicographically first) element of `u + C2⊥`.
pub fn coset_representative(c2: &ClassicalCode, u: &BitVec) -> Result<BitVec, CssError> {
    let dual = c2.parity_check.independent_rows();
    Ok(span(&dual)?
        .into_iter()
        .map(|w| w.xor(u))
        .min_by(|a, b| {
            a.count_ones()
                .cmp(&b.count_ones())
                .then_with(|| a.to_string().cmp(&b.to_string()))
        })
        .expect("span is nonempty"))
}

/// `Σ_{w ∈ C2⊥} |u + w⟩`, normalized.
pub fn css_codeword(c1: &ClassicalCode, c2: &ClassicalCode, u: &BitVec) -> Result<StateVector, CssError> {
    check_lengths(c1, c2)?;
    if !c1.contains(u) {
        return Err(CssError::NotInCode(u.clone()));
    }
    let n = c1.len();
    if n > crate::statevector::MAX_STATE_QUBITS {
        return Err(StateError::TooLarge { n }.into());
    }
    let words = span(&c2.parity_check.independent_rows())?;
    let amp = Complex64::new(1.0 / (words.len() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for w in words {
        amps[basis_index(&w.xor(u))] = amp;
    }
    Ok(StateVector::from_amplitudes(n, amps)?)
}

/// Computational basis index of a bit string (bit 0 is the most significant).
pub fn basis_index(v: &BitVec) -> usize {
    let n = v.len();
    v.ones().fold(0, |acc, i| acc | 1 << (n - 1 - i))
}
