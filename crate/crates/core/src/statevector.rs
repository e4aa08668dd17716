//! Dense state vectors: the brute-force oracle behind every code-level claim.
//!
//! Amplitude index bit `n − 1 − q` holds qubit `q`, so qubit 0 is the most
//! significant bit and `|q0 q1 … q_{n−1}⟩` reads like the Pauli string form.
//!
//! Tolerances: Pauli-only arithmetic is exact, norm preservation is checked
//! at [`NORM_TOL`], physics assertions at [`PHYSICS_TOL`].

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::matrix::{numerical_rank, CMatrix};
use crate::pauli::{i_pow, PauliEnumerator, PauliOperator};
use crate::stabilizer::StabilizerGroup;

pub const MAX_STATE_QUBITS: usize = 14;
pub const NORM_TOL: f64 = 1e-12;
pub const PHYSICS_TOL: f64 = 1e-10;
/// Gram-Schmidt drops candidate vectors whose residual norm falls below this.
pub const GRAM_SCHMIDT_DROP: f64 = 1e-8;
/// Dump cutoff on amplitude magnitude.
pub const DUMP_CUTOFF: f64 = 1e-12;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum StateError {
    #[error("{n} qubits exceeds the dense-state limit of {MAX_STATE_QUBITS}")]
    TooLarge { n: usize },
    #[error("qubit count mismatch: state has {expected}, operand has {found}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("measured operator {0} does not square to +I")]
    NotInvolution(String),
    #[error("eigenvalue {eigenvalue:+} branch has zero probability")]
    ZeroProbability { eigenvalue: i8 },
    #[error("amplitudes do not satisfy |alpha|^2 + |beta|^2 = 1")]
    NotNormalized,
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("operation requires k = 1, code has k = {0}")]
    NotSingleLogical(usize),
    #[error("amplitude vector has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis_state(n: usize, index: usize) -> Result<Self, StateError> {
        if n > MAX_STATE_QUBITS {
            return Err(StateError::TooLarge { n });
        }
        let mut amps = vec![czero(); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn zero_state(n: usize) -> Result<Self, StateError> {
        Self::basis_state(n, 0)
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self, StateError> {
        if n > MAX_STATE_QUBITS {
            return Err(StateError::TooLarge { n });
        }
        if amps.len() != 1 << n {
            return Err(StateError::BadLength {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn normalize(&mut self) -> Result<(), StateError> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(StateError::ZeroNorm);
        }
        for a in &mut self.amps {
            *a /= norm;
        }
        Ok(())
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &StateVector, s: Complex64) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += b * s;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check(&self, n: usize) -> Result<(), StateError> {
        if n != self.n {
            return Err(StateError::QubitMismatch {
                expected: self.n,
                found: n,
            });
        }
        Ok(())
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), StateError> {
        if qubit >= self.n {
            return Err(StateError::QubitOutOfRange { qubit, n: self.n });
        }
        Ok(())
    }

    /// Exact permutation and phase action of a Pauli operator.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<(), StateError> {
        self.check(p.num_qubits())?;
        let (xmask, zmask) = p.index_masks();
        let base = p.phase_exp() as u32 + p.y_count() as u32;
        let mut out = vec![czero(); self.amps.len()];
        for (col, &a) in self.amps.iter().enumerate() {
            let sign = 2 * ((col & zmask).count_ones() % 2);
            out[col ^ xmask] = a * i_pow(base + sign);
        }
        self.amps = out;
        Ok(())
    }

    pub fn with_pauli(&self, p: &PauliOperator) -> Result<Self, StateError> {
        let mut s = self.clone();
        s.apply_pauli(p)?;
        Ok(s)
    }

    /// Applies a 2×2 unitary to `qubit`.
    pub fn apply_single_qubit(&mut self, qubit: usize, u: &CMatrix) -> Result<(), StateError> {
        self.check_qubit(qubit)?;
        assert_eq!(u.dim(), 2, "single-qubit gate must be 2x2");
        let defect = u.unitarity_defect();
        if defect > PHYSICS_TOL {
            return Err(StateError::NotUnitary(defect));
        }
        self.apply_matrix_unchecked(qubit, u);
        Ok(())
    }

    /// Applies any 2×2 matrix to `qubit`, without a unitarity check.
    pub(crate) fn apply_matrix_unchecked(&mut self, qubit: usize, u: &CMatrix) {
        let bit = 1usize << (self.n - 1 - qubit);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                self.amps[i | bit] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
    }

    /// Hadamard on every qubit.
    pub fn hadamard_all(&mut self) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hm = CMatrix::from_rows(&[
            &[Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            &[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ]);
        for q in 0..self.n {
            self.apply_matrix_unchecked(q, &hm);
        }
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<Complex64, StateError> {
        Ok(self.inner(&self.with_pauli(p)?))
    }

    /// Projects onto the `eigenvalue` eigenspace of `m` (which must square to
    /// `+I`). Returns the branch probability and the renormalized state.
    pub fn project(&self, m: &PauliOperator, eigenvalue: i8) -> Result<(f64, StateVector), StateError> {
        self.check(m.num_qubits())?;
        if !m.is_hermitian() {
            return Err(StateError::NotInvolution(m.to_string()));
        }
        let sign = if eigenvalue >= 0 { 1.0 } else { -1.0 };
        let mut branch = self.with_pauli(m)?.scaled(Complex64::new(sign * 0.5, 0.0));
        branch.add_scaled(self, Complex64::new(0.5, 0.0));
        let prob = branch.norm_sqr();
        if prob <= NORM_TOL * NORM_TOL {
            return Err(StateError::ZeroProbability { eigenvalue: sign as i8 });
        }
        branch.normalize()?;
        Ok((prob, branch))
    }

    /// Projective measurement of `m`, sampled with `rng`.
    pub fn measure_generator<R: Rng + ?Sized>(
        &self,
        m: &PauliOperator,
        rng: &mut R,
    ) -> Result<Measurement, StateError> {
        let plus = self.project(m, 1);
        let p_plus = match &plus {
            Ok((p, _)) => *p / self.norm_sqr(),
            Err(StateError::ZeroProbability { .. }) => 0.0,
            Err(e) => return Err(e.clone()),
        };
        let u: f64 = rng.random();
        if u < p_plus {
            let (_, state) = plus?;
            Ok(Measurement {
                eigenvalue: 1,
                probability: p_plus,
                state,
            })
        } else {
            let (_, state) = self.project(m, -1)?;
            Ok(Measurement {
                eigenvalue: -1,
                probability: 1.0 - p_plus,
                state,
            })
        }
    }

    /// Measures `qubit` in the computational basis and leaves it in `|0⟩`.
    pub fn reset_qubit<R: Rng + ?Sized>(&mut self, qubit: usize, rng: &mut R) -> Result<(), StateError> {
        self.check_qubit(qubit)?;
        let z = PauliOperator::single(self.n, qubit, crate::pauli::Letter::Z);
        let outcome = self.measure_generator(&z, rng)?;
        *self = outcome.state;
        if outcome.eigenvalue < 0 {
            self.apply_pauli(&PauliOperator::single(self.n, qubit, crate::pauli::Letter::X))?;
        }
        Ok(())
    }

    /// Text dump: one `index re im` line per amplitude above [`DUMP_CUTOFF`].
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > DUMP_CUTOFF {
                writeln!(s, "{i} {:+.15e} {:+.15e}", a.re, a.im).unwrap();
            }
        }
        s
    }

    pub fn nonzero_entries(&self) -> Vec<(usize, Complex64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > DUMP_CUTOFF)
            .map(|(i, a)| (i, *a))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    /// `+1` or `−1`.
    pub eigenvalue: i8,
    pub probability: f64,
    pub state: StateVector,
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, StateError> {
    a.check(b.n)?;
    Ok(a.inner(b).norm_sqr())
}

/// Phase gate `diag(1, e^{iθ})`.
pub fn phase_rotation(theta: f64) -> CMatrix {
    CMatrix::from_rows(&[
        &[Complex64::new(1.0, 0.0), czero()],
        &[czero(), Complex64::from_polar(1.0, theta)],
    ])
}

/// `Π (I + g)/2` over the generators, i.e. `|S|⁻¹ Σ_{M∈S} M`.
pub fn stabilizer_projector(s: &StabilizerGroup, state: &StateVector) -> Result<StateVector, StateError> {
    let mut out = state.clone();
    for g in s.generators() {
        let mut next = out.with_pauli(g)?;
        next.add_scaled(&out, Complex64::new(1.0, 0.0));
        out = next.scaled(Complex64::new(0.5, 0.0));
    }
    Ok(out)
}

/// `Σ_{M∈S} M |φ⟩`, summed element by element.
pub fn group_sum(s: &StabilizerGroup, state: &StateVector) -> Result<StateVector, StateError> {
    let mut out = state.scaled(czero());
    for m in s.elements() {
        out.add_scaled(&state.with_pauli(&m)?, Complex64::new(1.0, 0.0));
    }
    Ok(out)
}

fn check_size(n: usize) -> Result<(), StateError> {
    if n > MAX_STATE_QUBITS {
        return Err(StateError::TooLarge { n });
    }
    Ok(())
}

/// Orthonormal basis of the code space: project computational basis states
/// in ascending order, orthogonalize by modified Gram-Schmidt, and keep the
/// survivors until `2^k` vectors are found.
pub fn codeword_basis(s: &StabilizerGroup) -> Result<Vec<StateVector>, StateError> {
    let n = s.num_qubits();
    check_size(n)?;
    let target = 1usize << s.num_logical();
    let mut basis: Vec<StateVector> = Vec::with_capacity(target);
    for seed in 0..1usize << n {
        if basis.len() == target {
            break;
        }
        let mut v = stabilizer_projector(s, &StateVector::basis_state(n, seed)?)?;
        if let Some(w) = orthonormalize_against(&mut v, &basis) {
            basis.push(w);
        }
    }
    Ok(basis)
}

fn orthonormalize_against(v: &mut StateVector, basis: &[StateVector]) -> Option<StateVector> {
    for b in basis {
        let c = b.inner(v);
        v.add_scaled(b, -c);
    }
    if v.norm_sqr().sqrt() < GRAM_SCHMIDT_DROP {
        return None;
    }
    v.normalize().ok()?;
    Some(v.clone())
}

/// Logical basis `(|0̄⟩, |1̄⟩)` for a code with one logical qubit: `|0̄⟩` is the
/// `+1` eigenstate of `Z̄` obtained from the first computational basis seed
/// with nonzero projection, and `|1̄⟩ = X̄|0̄⟩`, with `(X̄, Z̄)` from
/// [`StabilizerGroup::logical_operators`].
pub fn logical_basis(s: &StabilizerGroup) -> Result<(StateVector, StateVector), StateError> {
    let n = s.num_qubits();
    check_size(n)?;
    let (x_bar, z_bar) = s
        .logical_operators()
        .map_err(|_| StateError::NotSingleLogical(s.num_logical()))?;
    for seed in 0..1usize << n {
        let code = stabilizer_projector(s, &StateVector::basis_state(n, seed)?)?;
        let mut zero = code.with_pauli(&z_bar)?;
        zero.add_scaled(&code, Complex64::new(1.0, 0.0));
        if zero.norm_sqr().sqrt() < GRAM_SCHMIDT_DROP {
            continue;
        }
        zero.normalize()?;
        let one = zero.with_pauli(&x_bar)?;
        return Ok((zero, one));
    }
    unreachable!("a k = 1 code space is nonempty")
}

/// `α|0̄⟩ + β|1̄⟩` in the logical basis.
pub fn encode(alpha: Complex64, beta: Complex64, s: &StabilizerGroup) -> Result<StateVector, StateError> {
    if s.num_logical() != 1 {
        return Err(StateError::NotSingleLogical(s.num_logical()));
    }
    if ((alpha.norm_sqr() + beta.norm_sqr()) - 1.0).abs() > PHYSICS_TOL {
        return Err(StateError::NotNormalized);
    }
    let (zero, one) = logical_basis(s)?;
    let mut out = zero.scaled(alpha);
    out.add_scaled(&one, beta);
    Ok(out)
}

/// Outcome of checking `⟨ψ_i|E_a† E_b|ψ_j⟩ = C_ab δ_ij` on a code basis.
#[derive(Clone, Debug)]
pub struct KlReport {
    pub errors: Vec<PauliOperator>,
    /// `C_ab` taken from the first basis vector.
    pub c: Vec<Vec<Complex64>>,
    /// `max |C_ab − conj(C_ba)|`.
    pub hermiticity_defect: f64,
    /// Largest off-diagonal (`i ≠ j`) element or deviation of `C^{(i)}` from `C^{(0)}`.
    pub residual: f64,
    pub rank: usize,
    pub degenerate: bool,
}

impl KlReport {
    pub fn satisfied(&self, tol: f64) -> bool {
        self.residual < tol && self.hermiticity_defect < tol
    }
}

/// Weight-≤t Paulis, the default error set for [`kl_verify`].
pub fn default_error_set(n: usize, t: usize) -> Vec<PauliOperator> {
    PauliEnumerator::new(n, t).collect()
}

pub fn kl_verify(s: &StabilizerGroup, errors: &[PauliOperator]) -> Result<KlReport, StateError> {
    let basis = codeword_basis(s)?;
    let images: Vec<Vec<StateVector>> = errors
        .iter()
        .map(|e| basis.iter().map(|psi| psi.with_pauli(e)).collect())
        .collect::<Result<_, _>>()?;
    let m = errors.len();
    let dim = basis.len();
    let mut c = vec![vec![czero(); m]; m];
    let mut residual = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            for i in 0..dim {
                for j in 0..dim {
                    let v = images[a][i].inner(&images[b][j]);
                    if i != j {
                        residual = residual.max(v.norm());
                    } else if i == 0 {
                        c[a][b] = v;
                    } else {
                        residual = residual.max((v - c[a][b]).norm());
                    }
                }
            }
        }
    }
    let mut hermiticity_defect = 0.0f64;
    for (a, row) in c.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            hermiticity_defect = hermiticity_defect.max((v - c[b][a].conj()).norm());
        }
    }
    let rank = numerical_rank(&c, GRAM_SCHMIDT_DROP);
    Ok(KlReport {
        errors: errors.to_vec(),
        c,
        hermiticity_defect,
        residual,
        rank,
        degenerate: rank < m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{Builtin, Membership};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn table_one_actions() {
        let zero = StateVector::zero_state(1).unwrap();
        let one = StateVector::basis_state(1, 1).unwrap();
        assert_eq!(zero.with_pauli(&p("X")).unwrap(), one);
        assert_eq!(zero.with_pauli(&p("I")).unwrap(), zero);
        assert_eq!(zero.with_pauli(&p("Y")).unwrap(), one.scaled(c(0.0, 1.0)));
        assert_eq!(one.with_pauli(&p("Z")).unwrap(), one.scaled(c(-1.0, 0.0)));
    }

    #[test]
    fn apply_pauli_matches_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let amps: Vec<Complex64> = (0..8).map(|_| c(rng.random(), rng.random())).collect();
        let state = StateVector::from_amplitudes(3, amps.clone()).unwrap();
        for op in PauliEnumerator::new(3, 3) {
            for ph in 0..4 {
                let op = op.clone().with_phase(ph);
                let m = op.to_matrix().unwrap();
                let out = state.with_pauli(&op).unwrap();
                for r in 0..8 {
                    let expect: Complex64 = (0..8).map(|col| m[(r, col)] * amps[col]).sum();
                    assert!((out.amplitudes()[r] - expect).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn rotation_on_one() {
        let theta = 0.7;
        let mut s = StateVector::basis_state(1, 1).unwrap();
        s.apply_single_qubit(0, &phase_rotation(theta)).unwrap();
        assert!((s.amplitudes()[1] - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        let mut id = StateVector::zero_state(2).unwrap();
        id.hadamard_all();
        let before = id.clone();
        id.apply_single_qubit(1, &phase_rotation(0.0)).unwrap();
        assert!(id.max_abs_diff(&before) < 1e-15);
        let bad = CMatrix::from_rows(&[&[c(1., 0.), c(1., 0.)], &[c(0., 0.), c(1., 0.)]]);
        assert!(matches!(id.apply_single_qubit(0, &bad), Err(StateError::NotUnitary(_))));
        assert!(matches!(
            id.apply_single_qubit(5, &phase_rotation(0.1)),
            Err(StateError::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn rotation_decomposes_into_paulis() {
        let theta = 1.3f64;
        let five = Builtin::FiveQubit.group();
        let psi = encode(c(0.6, 0.0), c(0.0, 0.8), &five).unwrap();
        let mut direct = psi.clone();
        direct.apply_single_qubit(2, &phase_rotation(theta)).unwrap();
        // R = e^{iθ/2} (cos(θ/2) I − i sin(θ/2) Z)
        let z = PauliOperator::single(5, 2, crate::pauli::Letter::Z);
        let mut lin = psi.scaled(c((theta / 2.0).cos(), 0.0));
        lin.add_scaled(&psi.with_pauli(&z).unwrap(), c(0.0, -(theta / 2.0).sin()));
        let lin = lin.scaled(Complex64::from_polar(1.0, theta / 2.0));
        assert!(direct.max_abs_diff(&lin) < PHYSICS_TOL);
        assert!((direct.norm_sqr() - 1.0).abs() < NORM_TOL);
    }

    #[test]
    fn hadamard() {
        let mut s = StateVector::zero_state(1).unwrap();
        s.hadamard_all();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - c(h, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(h, 0.0)).norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let amps: Vec<Complex64> = (0..16).map(|_| c(rng.random(), rng.random())).collect();
        let orig = StateVector::from_amplitudes(4, amps).unwrap();
        let mut twice = orig.clone();
        twice.hadamard_all();
        twice.hadamard_all();
        assert!(twice.max_abs_diff(&orig) < NORM_TOL);
    }

    #[test]
    fn codeword_dimensions() {
        for b in Builtin::ALL {
            let s = b.group();
            let basis = codeword_basis(&s).unwrap();
            assert_eq!(basis.len(), 1 << s.num_logical());
            for v in &basis {
                for g in s.generators() {
                    assert!(v.with_pauli(g).unwrap().max_abs_diff(v) < PHYSICS_TOL);
                }
            }
        }
        let five = codeword_basis(&Builtin::FiveQubit.group()).unwrap();
        assert!(five[0].inner(&five[1]).norm() < NORM_TOL);
    }

    #[test]
    fn shor_seeded_states() {
        let shor = Builtin::Shor9.group();
        // Raw projection of |0…0⟩ sums the even number of |111⟩ blocks.
        let raw = &codeword_basis(&shor).unwrap()[0];
        let entries = raw.nonzero_entries();
        let even: Vec<usize> = vec![0, 0b111111000, 0b000111111, 0b111000111];
        let mut idx: Vec<usize> = entries.iter().map(|e| e.0).collect();
        idx.sort();
        let mut expect = even.clone();
        expect.sort();
        assert_eq!(idx, expect);

        let (zero, one) = logical_basis(&shor).unwrap();
        let block = [0usize, 0b111];
        let amp = 1.0 / 8f64.sqrt();
        for (i, a) in zero.amplitudes().iter().enumerate() {
            let (b0, b1, b2) = (i >> 6, (i >> 3) & 7, i & 7);
            let inside = block.contains(&b0) && block.contains(&b1) && block.contains(&b2);
            let expected = if inside { amp } else { 0.0 };
            assert!((a.norm() - expected).abs() < PHYSICS_TOL);
        }
        // |1̄⟩ = (|000⟩ − |111⟩)^⊗3 up to global phase.
        let mut target = vec![czero(); 512];
        for &b0 in &block {
            for &b1 in &block {
                for &b2 in &block {
                    let minus = [b0, b1, b2].iter().filter(|&&b| b == 7).count();
                    target[(b0 << 6) | (b1 << 3) | b2] = c(amp * (-1f64).powi(minus as i32), 0.0);
                }
            }
        }
        let target = StateVector::from_amplitudes(9, target).unwrap();
        assert!((fidelity(&one, &target).unwrap() - 1.0).abs() < PHYSICS_TOL);
    }

    #[test]
    fn logical_operators_act_as_expected() {
        for b in Builtin::ALL {
            let s = b.group();
            let (x_bar, z_bar) = s.logical_operators().unwrap();
            let (zero, one) = logical_basis(&s).unwrap();
            assert!(zero.inner(&one).norm() < PHYSICS_TOL);
            assert!(zero.inner(&zero.with_pauli(&x_bar).unwrap()).norm() < PHYSICS_TOL);
            let ez0 = zero.expectation(&z_bar).unwrap();
            let ez1 = one.expectation(&z_bar).unwrap();
            assert!((ez0 - c(1.0, 0.0)).norm() < PHYSICS_TOL);
            assert!((ez1 + c(1.0, 0.0)).norm() < PHYSICS_TOL);
        }
    }

    #[test]
    fn measurement_of_stabilizer_and_error() {
        let five = Builtin::FiveQubit.group();
        let psi = encode(c(0.6, 0.0), c(0.8, 0.0), &five).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in five.generators() {
            let m = psi.measure_generator(g, &mut rng).unwrap();
            assert_eq!(m.eigenvalue, 1);
            assert!((m.probability - 1.0).abs() < NORM_TOL);
            assert_eq!(
                psi.project(g, -1).unwrap_err(),
                StateError::ZeroProbability { eigenvalue: -1 }
            );
        }
        let e = p("XIIII");
        let corrupted = psi.with_pauli(&e).unwrap();
        let g = &five.generators()[3];
        assert!(!g.commutes(&e).unwrap());
        let m = corrupted.measure_generator(g, &mut rng).unwrap();
        assert_eq!(m.eigenvalue, -1);
        assert!((m.probability - 1.0).abs() < NORM_TOL);
        assert!(matches!(
            psi.project(&p("iXIIII"), 1),
            Err(StateError::NotInvolution(_))
        ));
    }

    #[test]
    fn expectation_and_fidelity_basics() {
        let five = Builtin::FiveQubit.group();
        let psi = encode(c(0.6, 0.0), c(0.8, 0.0), &five).unwrap();
        assert!((psi.expectation(&PauliOperator::identity(5)).unwrap() - c(1.0, 0.0)).norm() < NORM_TOL);
        let zero = StateVector::zero_state(1).unwrap();
        let one = StateVector::basis_state(1, 1).unwrap();
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        let phased = psi.scaled(Complex64::from_polar(1.0, 0.37));
        assert!((fidelity(&psi, &phased).unwrap() - 1.0).abs() < NORM_TOL);
        assert!(fidelity(&zero, &psi).is_err());
    }

    #[test]
    fn weight_two_operators_cannot_distinguish_codewords() {
        let five = Builtin::FiveQubit.group();
        let (zero, one) = logical_basis(&five).unwrap();
        for op in PauliEnumerator::new(5, 2).skip(1) {
            assert_ne!(five.contains(&op).unwrap(), Membership::Member);
            let a = zero.expectation(&op).unwrap();
            let b = one.expectation(&op).unwrap();
            assert!((a - b).norm() < PHYSICS_TOL, "{op}");
        }
    }

    #[test]
    fn encode_contract() {
        let shor = Builtin::Shor9.group();
        let (zero, one) = logical_basis(&shor).unwrap();
        assert_eq!(encode(c(1.0, 0.0), c(0.0, 0.0), &shor).unwrap(), zero);
        assert!(encode(c(0.0, 0.0), c(1.0, 0.0), &shor).unwrap().max_abs_diff(&one) < 1e-15);
        assert_eq!(
            encode(c(1.0, 0.0), c(1.0, 0.0), &shor).unwrap_err(),
            StateError::NotNormalized
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = encode(c(h, 0.0), c(h, 0.0), &shor).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for g in shor.generators() {
            assert_eq!(plus.measure_generator(g, &mut rng).unwrap().eigenvalue, 1);
        }
        let trivial = StabilizerGroup::with_qubits(2, vec![]).unwrap();
        assert_eq!(
            encode(c(1.0, 0.0), c(0.0, 0.0), &trivial).unwrap_err(),
            StateError::NotSingleLogical(2)
        );
    }

    #[test]
    fn projector_routes_agree_and_are_idempotent() {
        for b in Builtin::ALL {
            let s = b.group();
            let size = (1u64 << s.num_generators()) as f64;
            let seed = StateVector::basis_state(s.num_qubits(), 5).unwrap();
            let once = group_sum(&s, &seed).unwrap();
            let twice = group_sum(&s, &once).unwrap();
            assert!(twice.max_abs_diff(&once.scaled(c(size, 0.0))) < 1e-9);
            let prod = stabilizer_projector(&s, &seed).unwrap().scaled(c(size, 0.0));
            assert!(prod.max_abs_diff(&once) < 1e-9);
        }
    }

    #[test]
    fn kl_conditions() {
        let five = Builtin::FiveQubit.group();
        let r = kl_verify(&five, &default_error_set(5, 1)).unwrap();
        assert_eq!(r.errors.len(), 16);
        assert!(r.satisfied(PHYSICS_TOL));
        assert_eq!(r.rank, 16);
        assert!(!r.degenerate);

        let shor = Builtin::Shor9.group();
        let r = kl_verify(&shor, &default_error_set(9, 1)).unwrap();
        assert_eq!(r.errors.len(), 28);
        assert!(r.satisfied(PHYSICS_TOL));
        assert!(r.degenerate);
        // Z errors within a block coincide on the code: 9 collapse to 3.
        assert_eq!(r.rank, 22);

        let id = kl_verify(&shor, &[PauliOperator::identity(9)]).unwrap();
        assert_eq!(id.rank, 1);
        assert!((id.c[0][0] - c(1.0, 0.0)).norm() < NORM_TOL);
    }

    #[test]
    fn kl_necessity_example() {
        // F1 = (Z1+Z2)/2 acts like Z1 on codewords; F2 = (Z1−Z2)/2 annihilates them.
        let shor = Builtin::Shor9.group();
        let z1 = p("ZIIIIIIII");
        let z2 = p("IZIIIIIII");
        for psi in codeword_basis(&shor).unwrap() {
            let a = psi.with_pauli(&z1).unwrap();
            let b = psi.with_pauli(&z2).unwrap();
            let mut f1 = a.clone();
            f1.add_scaled(&b, c(1.0, 0.0));
            let f1 = f1.scaled(c(0.5, 0.0));
            let mut f2 = a.clone();
            f2.add_scaled(&b, c(-1.0, 0.0));
            let f2 = f2.scaled(c(0.5, 0.0));
            assert!(f1.norm_sqr() > 0.5);
            assert!(f2.norm_sqr().sqrt() < PHYSICS_TOL);
        }
    }

    #[test]
    fn errors_never_confuse_logical_states() {
        let five = Builtin::FiveQubit.group();
        let (zero, one) = logical_basis(&five).unwrap();
        let errs = default_error_set(5, 1);
        for e in &errs {
            for f in &errs {
                if e != f {
                    let v = zero.with_pauli(e).unwrap().inner(&one.with_pauli(f).unwrap());
                    assert!(v.norm() < PHYSICS_TOL);
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let mut s = StateVector::zero_state(1).unwrap();
        s.hadamard_all();
        let d = s.dump();
        let lines: Vec<&str> = d.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("0 +7.071067811865"));
        assert!(lines[1].starts_with("1 +7.071067811865"));
    }

    #[test]
    fn size_limits() {
        assert_eq!(
            StateVector::zero_state(15).unwrap_err(),
            StateError::TooLarge { n: 15 }
        );
    }

    #[test]
    fn reset_leaves_qubit_in_zero() {
        let five = Builtin::FiveQubit.group();
        let mut psi = encode(c(0.6, 0.0), c(0.8, 0.0), &five).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        psi.reset_qubit(2, &mut rng).unwrap();
        let z = PauliOperator::single(5, 2, crate::pauli::Letter::Z);
        assert!((psi.expectation(&z).unwrap() - c(1.0, 0.0)).norm() < PHYSICS_TOL);
        assert!((psi.norm_sqr() - 1.0).abs() < NORM_TOL);
    }
}
