//! Stabilizer groups: validation, syndromes, membership, normalizer tests,
//! brute-force distance, logical operators and the built-in codes.

use std::fmt;

use thiserror::Error;

use crate::bits::{BitMatrix, BitVec, Echelon};
use crate::pauli::{PauliEnumerator, PauliError, PauliOperator};

/// Generator count above which the group is never enumerated element by element.
const MAX_ENUMERATED_GENERATORS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("no generators given")]
    Empty,
    #[error("generator {index} acts on {found} qubits, expected {expected}")]
    QubitCountMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {0} has an imaginary phase and squares to -1")]
    ImaginaryPhase(usize),
    #[error("generators {0} and {1} anticommute")]
    NotAbelian(usize, usize),
    #[error("generator {0} is a product of earlier generators")]
    DependentGenerators(usize),
    #[error("-1 is in the group (generator {0} equals minus a product of earlier generators)")]
    MinusOneInGroup(usize),
    #[error("unknown built-in code {0:?} (expected shor9, steane7 or five_qubit)")]
    UnknownBuiltin(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("operation requires k = 1, code has k = {0}")]
    NotSingleLogical(usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Result of a stabilizer membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// In the group with exactly the queried phase.
    Member,
    /// The letters match a group element but the phase differs.
    MemberUpToPhase,
    NotMember,
}

impl Membership {
    pub fn up_to_phase(self) -> bool {
        !matches!(self, Membership::NotMember)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// No logical operator of weight ≤ cap exists.
    AboveCap(usize),
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::AboveCap(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{},{},{}]]", self.n, self.k, d),
            None => write!(f, "[[{},{},?]]", self.n, self.k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Shor9,
    Steane7,
    FiveQubit,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Shor9, Builtin::Steane7, Builtin::FiveQubit];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Shor9 => "shor9",
            Builtin::Steane7 => "steane7",
            Builtin::FiveQubit => "five_qubit",
        }
    }

    pub fn rows(self) -> &'static [&'static str] {
        match self {
            Builtin::Shor9 => &[
                "ZZIIIIIII",
                "IZZIIIIII",
                "IIIZZIIII",
                "IIIIZZIII",
                "IIIIIIZZI",
                "IIIIIIIZZ",
                "XXXXXXIII",
                "IIIXXXXXX",
            ],
            Builtin::Steane7 => &[
                "ZZZZIII",
                "ZZIIZZI",
                "ZIZIZIZ",
                "XXXXIII",
                "XXIIXXI",
                "XIXIXIX",
            ],
            Builtin::FiveQubit => &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        }
    }

    pub fn group(self) -> StabilizerGroup {
        let gens = self.rows().iter().map(|r| r.parse().unwrap()).collect();
        StabilizerGroup::new(gens).expect("built-in stabilizer is valid")
    }
}

impl std::str::FromStr for Builtin {
    type Err = StabilizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| StabilizerError::UnknownBuiltin(s.to_string()))
    }
}

/// Built-in code by name: `shor9`, `steane7` or `five_qubit`.
pub fn builtin(name: &str) -> Result<StabilizerGroup, StabilizerError> {
    Ok(name.parse::<Builtin>()?.group())
}

/// A validated stabilizer group: independent, commuting, Hermitian generators
/// with `−1` not in the group.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    echelon: Echelon,
}

impl StabilizerGroup {
    /// Validates a nonempty generator list.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        let n = generators.first().ok_or(StabilizerError::Empty)?.num_qubits();
        Self::with_qubits(n, generators)
    }

    /// Validates a possibly empty generator list on `n` qubits.
    pub fn with_qubits(n: usize, generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        for (index, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(StabilizerError::QubitCountMismatch {
                    index,
                    expected: n,
                    found: g.num_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(StabilizerError::ImaginaryPhase(index));
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].anticommutes_unchecked(&generators[j]) {
                    return Err(StabilizerError::NotAbelian(i, j));
                }
            }
        }
        let rows: Vec<BitVec> = generators.iter().map(PauliOperator::symplectic_row).collect();
        for i in 1..generators.len() {
            let prefix = Echelon::new(&BitMatrix::new(2 * n, rows[..i].to_vec()));
            if let Some(coeffs) = prefix.solve(&rows[i]) {
                let product = product_of(n, &generators[..i], &coeffs);
                return Err(if product.phase_exp() == generators[i].phase_exp() {
                    StabilizerError::DependentGenerators(i)
                } else {
                    StabilizerError::MinusOneInGroup(i)
                });
            }
        }
        if generators.first().is_some_and(|g| g.is_identity_up_to_phase()) {
            // A lone identity row is dependent on the empty set.
            let g = &generators[0];
            return Err(if g.phase_exp() == 0 {
                StabilizerError::DependentGenerators(0)
            } else {
                StabilizerError::MinusOneInGroup(0)
            });
        }
        let echelon = Echelon::new(&BitMatrix::new(2 * n, rows));
        Ok(Self {
            n,
            generators,
            echelon,
        })
    }

    /// Parses the `.stab` text format: an `n=<int>` header followed by one
    /// signed Pauli string per line. Blank lines and `#` comments are skipped.
    pub fn parse_stab(text: &str) -> Result<Self, StabilizerError> {
        let mut n: Option<usize> = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(expected) = n else {
                let value = line.strip_prefix("n=").ok_or_else(|| StabilizerError::Parse {
                    line: line_no,
                    message: format!("expected header \"n=<int>\", got {line:?}"),
                })?;
                n = Some(value.trim().parse().map_err(|_| StabilizerError::Parse {
                    line: line_no,
                    message: format!("invalid qubit count {value:?}"),
                })?);
                continue;
            };
            let p: PauliOperator = line.parse().map_err(|e: PauliError| StabilizerError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            if p.num_qubits() != expected {
                return Err(StabilizerError::Parse {
                    line: line_no,
                    message: format!("row has {} qubits, header says {expected}", p.num_qubits()),
                });
            }
            gens.push(p);
        }
        let n = n.ok_or(StabilizerError::Parse {
            line: 0,
            message: "missing \"n=<int>\" header".into(),
        })?;
        Self::with_qubits(n, gens)
    }

    pub fn to_stab_string(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_logical(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// The `a × 2n` matrix of `(x | z)` rows.
    pub fn binary_matrix(&self) -> BitMatrix {
        BitMatrix::new(
            2 * self.n,
            self.generators.iter().map(PauliOperator::symplectic_row).collect(),
        )
    }

    /// One `"<x bits> <z bits>"` line per generator.
    pub fn binary_export(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&g.to_binary_string());
            s.push('\n');
        }
        s
    }

    fn check_qubits(&self, p: &PauliOperator) -> Result<(), StabilizerError> {
        if p.num_qubits() != self.n {
            return Err(StabilizerError::Pauli(PauliError::LengthMismatch {
                left: self.n,
                right: p.num_qubits(),
            }));
        }
        Ok(())
    }

    pub fn contains(&self, p: &PauliOperator) -> Result<Membership, StabilizerError> {
        self.check_qubits(p)?;
        Ok(self.membership_unchecked(p))
    }

    pub(crate) fn membership_unchecked(&self, p: &PauliOperator) -> Membership {
        match self.echelon.solve(&p.symplectic_row()) {
            None => Membership::NotMember,
            Some(coeffs) => {
                let product = product_of(self.n, &self.generators, &coeffs);
                if product.phase_exp() == p.phase_exp() {
                    Membership::Member
                } else {
                    Membership::MemberUpToPhase
                }
            }
        }
    }

    /// Bit `i` is set iff `e` anticommutes with generator `i`.
    pub fn syndrome(&self, e: &PauliOperator) -> Result<BitVec, StabilizerError> {
        self.check_qubits(e)?;
        Ok(self.syndrome_unchecked(e))
    }

    pub(crate) fn syndrome_unchecked(&self, e: &PauliOperator) -> BitVec {
        BitVec::from_bools(self.generators.iter().map(|g| g.anticommutes_unchecked(e)))
    }

    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool, StabilizerError> {
        self.check_qubits(p)?;
        Ok(self.in_normalizer_unchecked(p))
    }

    pub(crate) fn in_normalizer_unchecked(&self, p: &PauliOperator) -> bool {
        self.generators.iter().all(|g| !g.anticommutes_unchecked(p))
    }

    /// In `N(S) \ S`, ignoring phase.
    pub(crate) fn is_logical(&self, p: &PauliOperator) -> bool {
        self.in_normalizer_unchecked(p) && self.membership_unchecked(p) == Membership::NotMember
    }

    /// Minimum weight of `N(S) \ S`, searched exhaustively up to `weight_cap`.
    pub fn distance(&self, weight_cap: usize) -> Distance {
        let cap = weight_cap.min(self.n);
        for w in 1..=cap {
            if PauliEnumerator::exact_weight(self.n, w).any(|p| self.is_logical(&p)) {
                return Distance::Exact(w);
            }
        }
        Distance::AboveCap(cap)
    }

    pub fn params(&self, d: Option<usize>) -> CodeParams {
        CodeParams {
            n: self.n,
            k: self.num_logical(),
            d,
        }
    }

    /// Every group element, with phase, in Gray-code order starting at the identity.
    pub fn elements(&self) -> GroupElements<'_> {
        assert!(
            self.generators.len() <= MAX_ENUMERATED_GENERATORS,
            "group too large to enumerate"
        );
        GroupElements {
            group: self,
            step: 0,
            current: PauliOperator::identity(self.n),
        }
    }

    /// Smallest weight of a nonidentity element, or `None` for the trivial group.
    pub fn min_stabilizer_weight(&self) -> Option<usize> {
        if self.generators.is_empty() {
            return None;
        }
        if self.generators.len() <= MAX_ENUMERATED_GENERATORS {
            self.elements().skip(1).map(|p| p.weight()).min()
        } else {
            self.min_stabilizer_weight_by_search()
        }
    }

    pub(crate) fn min_stabilizer_weight_by_search(&self) -> Option<usize> {
        (1..=self.n).find(|&w| {
            PauliEnumerator::exact_weight(self.n, w)
                .any(|p| self.membership_unchecked(&p).up_to_phase())
        })
    }

    /// True iff some nonidentity stabilizer element has weight ≤ 2t, so two
    /// distinct errors of weight ≤ t act identically on the code.
    pub fn is_degenerate(&self, t: usize) -> bool {
        self.min_stabilizer_weight().is_some_and(|w| w <= 2 * t)
    }

    /// Minimum-weight logical pair `(X̄, Z̄)` for a code with one logical qubit.
    ///
    /// `Z̄` is the first element of `N(S) \ S` in canonical enumeration order and
    /// `X̄` the first one anticommuting with it.
    pub fn logical_operators(&self) -> Result<(PauliOperator, PauliOperator), StabilizerError> {
        let k = self.num_logical();
        if k != 1 {
            return Err(StabilizerError::NotSingleLogical(k));
        }
        let z_bar = PauliEnumerator::new(self.n, self.n)
            .find(|p| self.is_logical(p))
            .expect("k = 1 code has a logical operator");
        let x_bar = PauliEnumerator::new(self.n, self.n)
            .find(|p| self.is_logical(p) && p.anticommutes_unchecked(&z_bar))
            .expect("k = 1 code has an anticommuting logical pair");
        Ok((x_bar, z_bar))
    }
}

/// Product of the generators selected by `coeffs`, in index order.
fn product_of(n: usize, gens: &[PauliOperator], coeffs: &BitVec) -> PauliOperator {
    coeffs
        .ones()
        .fold(PauliOperator::identity(n), |acc, j| &acc * &gens[j])
}

pub struct GroupElements<'a> {
    group: &'a StabilizerGroup,
    step: u64,
    current: PauliOperator,
}

impl Iterator for GroupElements<'_> {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        let a = self.group.generators.len();
        if self.step >= 1u64 << a {
            return None;
        }
        let out = self.current.clone();
        self.step += 1;
        if self.step < 1u64 << a {
            // Gray code: flip the generator at the lowest set bit of `step`.
            let j = self.step.trailing_zeros() as usize;
            self.current = &self.current * &self.group.generators[j];
        }
        Some(out)
    }
}
