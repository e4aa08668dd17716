//! Noise channels and error-correction experiments: exact enumeration of
//! Pauli-channel patterns, Pauli-frame Monte Carlo, coherent phase
//! rotations, and the residual left by a first-order correction.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bits::BitVec;
use crate::decoder::{correct, expected_infidelity_after_correction, DecodeError, SyndromeTable};
use crate::pauli::{Letter, PauliOperator};
use crate::rng::trial_rng;
use crate::stabilizer::{Membership, StabilizerGroup};
use crate::statevector::{encode, fidelity, phase_rotation, StateError, StateVector};

/// Largest code handled by [`exact_analysis`] (4^10 patterns).
pub const MAX_EXACT_QUBITS: usize = 10;

#[derive(Debug, Error, PartialEq)]
pub enum NoiseError {
    #[error("invalid channel parameter: {0}")]
    BadParameter(String),
    #[error("exact analysis is limited to {MAX_EXACT_QUBITS} qubits, code has {0}")]
    TooLarge(usize),
    #[error("channel {0} is not a Pauli channel")]
    NotPauliChannel(String),
    #[error("table was built for {table} qubits, code has {code}")]
    TableMismatch { table: usize, code: usize },
    #[error("{0}")]
    Decode(#[from] DecodeError),
    #[error("{0}")]
    State(#[from] StateError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum NoiseChannel {
    BitFlip(f64),
    PhaseFlip(f64),
    /// `I` with probability `1 - p`, each of `X`, `Y`, `Z` with `p / 3`.
    Depolarizing(f64),
    /// `diag(1, e^{iθ})` on one qubit.
    Rotation { theta: f64, qubit: usize },
    /// `⊗_q (I + ε E_q)`, renormalized.
    Perturbation { eps: f64, errors: Vec<Letter> },
}

impl NoiseChannel {
    /// Builds a single-qubit Pauli channel from its CLI name.
    pub fn pauli_channel(kind: &str, p: f64) -> Result<Self, NoiseError> {
        let ch = match kind {
            "bit_flip" | "bit-flip" => NoiseChannel::BitFlip(p),
            "phase_flip" | "phase-flip" => NoiseChannel::PhaseFlip(p),
            "depolarizing" => NoiseChannel::Depolarizing(p),
            other => return Err(NoiseError::BadParameter(format!("unknown channel {other:?}"))),
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        match self {
            NoiseChannel::BitFlip(p) | NoiseChannel::PhaseFlip(p) | NoiseChannel::Depolarizing(p) => {
                if !(0.0..=1.0).contains(p) {
                    return Err(NoiseError::BadParameter(format!("probability {p} outside [0, 1]")));
                }
            }
            NoiseChannel::Rotation { theta, .. } => {
                if !theta.is_finite() {
                    return Err(NoiseError::BadParameter(format!("angle {theta}")));
                }
            }
            NoiseChannel::Perturbation { eps, .. } => {
                if !eps.is_finite() {
                    return Err(NoiseError::BadParameter(format!("epsilon {eps}")));
                }
            }
        }
        Ok(())
    }

    /// Probabilities of `I, X, Y, Z` for Pauli channels.
    pub fn pauli_weights(&self) -> Option<[f64; 4]> {
        match *self {
            NoiseChannel::BitFlip(p) => Some([1.0 - p, p, 0.0, 0.0]),
            NoiseChannel::PhaseFlip(p) => Some([1.0 - p, 0.0, 0.0, p]),
            NoiseChannel::Depolarizing(p) => Some([1.0 - p, p / 3.0, p / 3.0, p / 3.0]),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NoiseChannel::BitFlip(_) => "bit_flip",
            NoiseChannel::PhaseFlip(_) => "phase_flip",
            NoiseChannel::Depolarizing(_) => "depolarizing",
            NoiseChannel::Rotation { .. } => "rotation",
            NoiseChannel::Perturbation { .. } => "perturbation",
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            NoiseChannel::BitFlip(p) | NoiseChannel::PhaseFlip(p) | NoiseChannel::Depolarizing(p) => p,
            NoiseChannel::Rotation { theta, .. } => theta,
            NoiseChannel::Perturbation { eps, .. } => eps,
        }
    }
}

impl fmt::Display for NoiseChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.parameter())
    }
}

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

/// How a decoded error pattern ends up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `correction · error` lies in S, possibly times a global phase.
    Success,
    /// `correction · error` lies in N(S) \ S.
    LogicalFailure,
    /// The syndrome is missing from the table.
    Residual,
}

/// Classifies `error` against the table. A product that matches a stabilizer
/// only up to sign or `±i` still counts as success: on the code space it acts
/// as a global phase.
pub fn classify(s: &StabilizerGroup, table: &SyndromeTable, error: &PauliOperator) -> Outcome {
    let syn = s.syndrome_unchecked(error);
    match table.lookup(&syn) {
        None => Outcome::Residual,
        Some(c) => match s.membership_unchecked(&(c * error)) {
            Membership::Member | Membership::MemberUpToPhase => Outcome::Success,
            Membership::NotMember => Outcome::LogicalFailure,
        },
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightBreakdown {
    pub weight: usize,
    pub patterns: u64,
    pub success: f64,
    pub failure: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelAnalysis {
    pub success: f64,
    pub failure: f64,
    pub residual: f64,
    /// Indexed by pattern weight `0..=n`.
    pub by_weight: Vec<WeightBreakdown>,
}

impl ChannelAnalysis {
    pub fn total(&self) -> f64 {
        self.success + self.failure + self.residual
    }
}

fn check_table(s: &StabilizerGroup, table: &SyndromeTable) -> Result<(), NoiseError> {
    if table.num_qubits() != s.num_qubits() {
        return Err(NoiseError::TableMismatch {
            table: table.num_qubits(),
            code: s.num_qubits(),
        });
    }
    Ok(())
}

/// Enumerates every pattern of the i.i.d. per-qubit Pauli channel with its
/// exact probability. Letters of probability zero are skipped.
pub fn exact_analysis(
    s: &StabilizerGroup,
    table: &SyndromeTable,
    channel: &NoiseChannel,
) -> Result<ChannelAnalysis, NoiseError> {
    check_table(s, table)?;
    channel.validate()?;
    let weights = channel
        .pauli_weights()
        .ok_or_else(|| NoiseError::NotPauliChannel(channel.to_string()))?;
    let n = s.num_qubits();
    if n > MAX_EXACT_QUBITS {
        return Err(NoiseError::TooLarge(n));
    }
    let alphabet: Vec<usize> = (0..4).filter(|&i| weights[i] > 0.0).collect();
    let mut by_weight: Vec<WeightBreakdown> = (0..=n)
        .map(|weight| WeightBreakdown { weight, ..Default::default() })
        .collect();

    // Odometer over alphabet^n, qubit n-1 fastest.
    let mut digits = vec![0usize; n];
    let mut letters = vec![Letter::I; n];
    loop {
        let mut prob = 1.0;
        for q in 0..n {
            let li = alphabet[digits[q]];
            letters[q] = LETTERS[li];
            prob *= weights[li];
        }
        let e = PauliOperator::from_letters(&letters);
        let slot = &mut by_weight[e.weight()];
        slot.patterns += 1;
        match classify(s, table, &e) {
            Outcome::Success => slot.success += prob,
            Outcome::LogicalFailure => slot.failure += prob,
            Outcome::Residual => slot.residual += prob,
        }

        let mut q = n;
        loop {
            if q == 0 {
                let success = by_weight.iter().map(|w| w.success).sum();
                let failure = by_weight.iter().map(|w| w.failure).sum();
                let residual = by_weight.iter().map(|w| w.residual).sum();
                return Ok(ChannelAnalysis { success, failure, residual, by_weight });
            }
            q -= 1;
            digits[q] += 1;
            if digits[q] < alphabet.len() {
                break;
            }
            digits[q] = 0;
        }
    }
}

/// Sampled rates with binomial standard errors.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub residuals: u64,
}

impl MonteCarloEstimate {
    fn rate(&self, count: u64) -> f64 {
        count as f64 / self.trials as f64
    }

    fn std_error(&self, count: u64) -> f64 {
        let r = self.rate(count);
        (r * (1.0 - r) / self.trials as f64).sqrt()
    }

    /// Probability that correction does not restore the state.
    pub fn error_rate(&self) -> f64 {
        self.rate(self.failures + self.residuals)
    }

    pub fn error_rate_std_error(&self) -> f64 {
        self.std_error(self.failures + self.residuals)
    }

    pub fn failure_rate(&self) -> f64 {
        self.rate(self.failures)
    }

    pub fn failure_std_error(&self) -> f64 {
        self.std_error(self.failures)
    }

    pub fn residual_rate(&self) -> f64 {
        self.rate(self.residuals)
    }

    pub fn residual_std_error(&self) -> f64 {
        self.std_error(self.residuals)
    }
}

fn sample_letter<R: rand::Rng + ?Sized>(weights: &[f64; 4], rng: &mut R) -> Letter {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return LETTERS[i];
        }
    }
    // Rounding left `acc` just below 1; fall back to the last nonzero letter.
    let last = weights.iter().rposition(|&w| w > 0.0).unwrap_or(0);
    LETTERS[last]
}

/// Pauli-frame sampling: trial `i` draws one letter per qubit from stream `i`
/// of `seed` and is classified like [`exact_analysis`]. Trials run in
/// parallel; counts do not depend on scheduling.
pub fn monte_carlo(
    s: &StabilizerGroup,
    table: &SyndromeTable,
    channel: &NoiseChannel,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate, NoiseError> {
    check_table(s, table)?;
    channel.validate()?;
    if trials == 0 {
        return Err(NoiseError::BadParameter("trials must be at least 1".into()));
    }
    let weights = channel
        .pauli_weights()
        .ok_or_else(|| NoiseError::NotPauliChannel(channel.to_string()))?;
    let n = s.num_qubits();
    let (successes, failures, residuals) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let letters: Vec<Letter> = (0..n).map(|_| sample_letter(&weights, &mut rng)).collect();
            match classify(s, table, &PauliOperator::from_letters(&letters)) {
                Outcome::Success => (1u64, 0u64, 0u64),
                Outcome::LogicalFailure => (0, 1, 0),
                Outcome::Residual => (0, 0, 1),
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(MonteCarloEstimate { trials, successes, failures, residuals })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherentOutcome {
    pub fidelity: f64,
    pub syndrome: BitVec,
    pub correction: PauliOperator,
}

impl CoherentOutcome {
    /// True when the measurement projected onto the rotated-error branch.
    pub fn error_branch(&self) -> bool {
        self.syndrome.count_ones() > 0
    }
}

fn rotated_trial(
    encoded: &StateVector,
    s: &StabilizerGroup,
    table: &SyndromeTable,
    theta: f64,
    qubit: usize,
    seed: u64,
    index: u64,
) -> Result<CoherentOutcome, NoiseError> {
    let mut noisy = encoded.clone();
    noisy.apply_single_qubit(qubit, &phase_rotation(theta))?;
    let out = correct(&noisy, s, table, &mut trial_rng(seed, index))?;
    Ok(CoherentOutcome {
        fidelity: fidelity(encoded, &out.state)?,
        syndrome: out.syndrome,
        correction: out.correction,
    })
}

/// Encodes `α|0̄⟩ + β|1̄⟩`, rotates one qubit by `diag(1, e^{iθ})`, and runs
/// a full correction cycle with randomness from `seed`.
#[allow(clippy::too_many_arguments)]
pub fn coherent_trial(
    s: &StabilizerGroup,
    table: &SyndromeTable,
    theta: f64,
    qubit: usize,
    alpha: Complex64,
    beta: Complex64,
    seed: u64,
) -> Result<CoherentOutcome, NoiseError> {
    check_table(s, table)?;
    let encoded = encode(alpha, beta, s)?;
    rotated_trial(&encoded, s, table, theta, qubit, seed, 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchStatistics {
    pub trials: u64,
    pub error_branches: u64,
    pub min_fidelity: f64,
}

impl BranchStatistics {
    pub fn error_fraction(&self) -> f64 {
        self.error_branches as f64 / self.trials as f64
    }

    /// Standard error of the error-branch fraction under the predicted rate.
    pub fn std_error(&self, predicted: f64) -> f64 {
        (predicted * (1.0 - predicted) / self.trials as f64).sqrt()
    }
}

/// `sin²(θ/2)`: the chance that syndrome measurement picks the `Z` branch.
pub fn predicted_error_branch(theta: f64) -> f64 {
    (theta / 2.0).sin().powi(2)
}

/// Repeats [`coherent_trial`] with one RNG substream per trial.
#[allow(clippy::too_many_arguments)]
pub fn coherent_statistics(
    s: &StabilizerGroup,
    table: &SyndromeTable,
    theta: f64,
    qubit: usize,
    alpha: Complex64,
    beta: Complex64,
    trials: u64,
    seed: u64,
) -> Result<BranchStatistics, NoiseError> {
    check_table(s, table)?;
    if trials == 0 {
        return Err(NoiseError::BadParameter("trials must be at least 1".into()));
    }
    let encoded = encode(alpha, beta, s)?;
    let outcomes: Result<Vec<(bool, f64)>, NoiseError> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let o = rotated_trial(&encoded, s, table, theta, qubit, seed, i)?;
            Ok((o.error_branch(), o.fidelity))
        })
        .collect();
    let outcomes = outcomes?;
    Ok(BranchStatistics {
        trials,
        error_branches: outcomes.iter().filter(|o| o.0).count() as u64,
        min_fidelity: outcomes.iter().map(|o| o.1).fold(f64::INFINITY, f64::min),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    pub before: f64,
    pub after: f64,
}

/// Applies `⊗_q (I + ε E_q)` to the encoded state, renormalizes, and reports
/// the infidelity before correction and the expected infidelity after it,
/// averaged exactly over syndrome outcomes.
pub fn first_order_residual(
    s: &StabilizerGroup,
    table: &SyndromeTable,
    eps: f64,
    errors: &[Letter],
    alpha: Complex64,
    beta: Complex64,
) -> Result<ResidualReport, NoiseError> {
    check_table(s, table)?;
    let n = s.num_qubits();
    if errors.len() != n {
        return Err(NoiseError::BadParameter(format!(
            "expected {n} per-qubit errors, got {}",
            errors.len()
        )));
    }
    if !eps.is_finite() || eps.abs() > 0.1 {
        return Err(NoiseError::BadParameter(format!("epsilon {eps} outside [-0.1, 0.1]")));
    }
    let encoded = encode(alpha, beta, s)?;
    let mut noisy = encoded.clone();
    for (q, &letter) in errors.iter().enumerate() {
        if letter == Letter::I {
            continue;
        }
        let kicked = noisy.with_pauli(&PauliOperator::single(n, q, letter))?;
        noisy.add_scaled(&kicked, Complex64::new(eps, 0.0));
    }
    noisy.normalize()?;
    Ok(ResidualReport {
        before: 1.0 - fidelity(&encoded, &noisy)?,
        after: expected_infidelity_after_correction(&noisy, s, table, &encoded)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::correct;
    use crate::rng::seeded;
    use crate::stabilizer::Builtin;
    use crate::statevector::PHYSICS_TOL;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn setup(b: Builtin) -> (StabilizerGroup, SyndromeTable) {
        let s = b.group();
        let t = SyndromeTable::build(&s, 1);
        (s, t)
    }

    #[test]
    fn channel_weights_sum_to_one() {
        for ch in [
            NoiseChannel::BitFlip(0.3),
            NoiseChannel::PhaseFlip(0.0),
            NoiseChannel::Depolarizing(0.75),
        ] {
            let w = ch.pauli_weights().unwrap();
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert!(NoiseChannel::Rotation { theta: 1.0, qubit: 0 }.pauli_weights().is_none());
        assert!(NoiseChannel::pauli_channel("depolarizing", 1.5).is_err());
        assert!(NoiseChannel::pauli_channel("amplitude_damping", 0.1).is_err());
    }

    #[test]
    fn rotation_is_unitary() {
        for theta in [0.0, 0.3, 1.0, std::f64::consts::PI] {
            assert!(phase_rotation(theta).unitarity_defect() < 1e-15);
        }
    }

    #[test]
    fn zero_noise_is_perfect() {
        let (s, t) = setup(Builtin::FiveQubit);
        let a = exact_analysis(&s, &t, &NoiseChannel::Depolarizing(0.0)).unwrap();
        assert_eq!(a.success, 1.0);
        assert_eq!(a.failure + a.residual, 0.0);
        let mc = monte_carlo(&s, &t, &NoiseChannel::Depolarizing(0.0), 500, 1).unwrap();
        assert_eq!(mc.error_rate(), 0.0);
    }

    #[test]
    fn probability_conservation_and_no_weight_one_failures() {
        for b in Builtin::ALL {
            let (s, t) = setup(b);
            for ch in [
                NoiseChannel::BitFlip(0.1),
                NoiseChannel::PhaseFlip(0.07),
                NoiseChannel::Depolarizing(0.05),
            ] {
                let a = exact_analysis(&s, &t, &ch).unwrap();
                assert!((a.total() - 1.0).abs() < 1e-12, "{b:?} {ch}");
                for f in [a.success, a.failure, a.residual] {
                    assert!((0.0..=1.0 + 1e-12).contains(&f));
                }
                assert_eq!(a.by_weight[1].failure, 0.0);
                assert_eq!(a.by_weight[1].residual, 0.0);
                assert_eq!(a.by_weight[0].failure + a.by_weight[0].residual, 0.0);
            }
        }
    }

    #[test]
    fn five_qubit_weight_one_patterns() {
        let (s, t) = setup(Builtin::FiveQubit);
        let a = exact_analysis(&s, &t, &NoiseChannel::Depolarizing(0.05)).unwrap();
        assert_eq!(a.by_weight[1].patterns, 15);
        let p = 0.05f64;
        let expected = 5.0 * p * (1.0 - p).powi(4);
        assert!((a.by_weight[1].success - expected).abs() < 1e-15);
        // Perfect code: every syndrome is in the table.
        assert_eq!(a.residual, 0.0);
    }

    #[test]
    fn bit_flip_on_shor9_matches_closed_form() {
        // A block with 2 or 3 flips ends up as XXX, a logical operator; the
        // logical flips when an odd number of blocks do.
        let (s, t) = setup(Builtin::Shor9);
        let p = 0.1f64;
        let a = exact_analysis(&s, &t, &NoiseChannel::BitFlip(p)).unwrap();
        // Two blocks with a nonzero syndrome are never in a t=1 table.
        let mut success = 0.0;
        let mut failure = 0.0;
        let mut residual = 0.0;
        for m in 0u32..512 {
            let w = m.count_ones() as i32;
            let prob = p.powi(w) * (1.0 - p).powi(9 - w);
            let blocks: Vec<u32> = (0..3).map(|b| (m >> (3 * b)) & 7).collect();
            let flipped: Vec<u32> = blocks.iter().map(|x| x.count_ones()).collect();
            // Syndrome of a block: nonzero unless 0 or 3 flips.
            let active = flipped.iter().filter(|&&f| f == 1 || f == 2).count();
            if active > 1 {
                residual += prob;
            } else {
                let logical = flipped.iter().filter(|&&f| f >= 2).count() % 2;
                if logical == 1 {
                    failure += prob;
                } else {
                    success += prob;
                }
            }
        }
        assert!((a.success - success).abs() < 1e-13);
        assert!((a.failure - failure).abs() < 1e-13);
        assert!((a.residual - residual).abs() < 1e-13);
    }

    #[test]
    fn classification_matches_state_oracle() {
        let (s, t) = setup(Builtin::FiveQubit);
        let encoded = encode(c(0.6), c(0.8), &s).unwrap();
        for e in crate::pauli::PauliEnumerator::new(5, 2) {
            let damaged = encoded.with_pauli(&e).unwrap();
            let out = correct(&damaged, &s, &t, &mut seeded(0)).unwrap();
            let f = fidelity(&encoded, &out.state).unwrap();
            match classify(&s, &t, &e) {
                Outcome::Success => assert!((f - 1.0).abs() < PHYSICS_TOL, "{e}"),
                Outcome::LogicalFailure => assert!(f < 1.0 - 1e-3, "{e}"),
                Outcome::Residual => unreachable!(),
            }
        }
    }

    #[test]
    fn quadratic_leading_order() {
        let (s, t) = setup(Builtin::FiveQubit);
        let ps = [1e-3, 2e-3, 4e-3, 8e-3];
        let fails: Vec<f64> = ps
            .iter()
            .map(|&p| {
                let a = exact_analysis(&s, &t, &NoiseChannel::Depolarizing(p)).unwrap();
                a.failure + a.residual
            })
            .collect();
        let slope = least_squares_slope(
            &ps.iter().map(|p| p.ln()).collect::<Vec<_>>(),
            &fails.iter().map(|f| f.ln()).collect::<Vec<_>>(),
        );
        assert!((1.95..=2.05).contains(&slope), "slope {slope}");
    }

    pub(crate) fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len() as f64;
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let num: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let den: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        num / den
    }

    #[test]
    fn monte_carlo_agrees_with_exact() {
        for (b, ch) in [
            (Builtin::FiveQubit, NoiseChannel::Depolarizing(0.05)),
            (Builtin::Shor9, NoiseChannel::BitFlip(0.1)),
            (Builtin::Steane7, NoiseChannel::PhaseFlip(0.08)),
        ] {
            let (s, t) = setup(b);
            let exact = exact_analysis(&s, &t, &ch).unwrap();
            let mc = monte_carlo(&s, &t, &ch, 100_000, 2024).unwrap();
            let se = mc.error_rate_std_error();
            let target = exact.failure + exact.residual;
            assert!((mc.error_rate() - target).abs() < 4.0 * se, "{b:?} {ch}: {} vs {target}", mc.error_rate());
            assert!((mc.failure_rate() - exact.failure).abs() < 4.0 * mc.failure_std_error() + 1e-12);
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let (s, t) = setup(Builtin::Steane7);
        let ch = NoiseChannel::Depolarizing(0.1);
        let a = monte_carlo(&s, &t, &ch, 2000, 9).unwrap();
        let b = monte_carlo(&s, &t, &ch, 2000, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, monte_carlo(&s, &t, &ch, 2000, 10).unwrap());
    }

    #[test]
    fn coherent_rotation_corrected_exactly() {
        for b in Builtin::ALL {
            let (s, t) = setup(b);
            for theta in [0.0, 0.1, 0.5, 1.0, std::f64::consts::FRAC_PI_2, 3.0] {
                for q in [0, s.num_qubits() - 1] {
                    let o = coherent_trial(&s, &t, theta, q, c(0.6), c(0.8), 5).unwrap();
                    assert!((o.fidelity - 1.0).abs() < PHYSICS_TOL, "{b:?} θ={theta}");
                    if theta == 0.0 {
                        assert!(!o.error_branch());
                    }
                }
            }
        }
    }

    #[test]
    fn coherent_branch_frequency() {
        let (s, t) = setup(Builtin::Shor9);
        let theta = 1.0;
        let st = coherent_statistics(&s, &t, theta, 4, c(0.6), c(0.8), 2000, 77).unwrap();
        let pred = predicted_error_branch(theta);
        assert!((st.error_fraction() - pred).abs() < 4.0 * st.std_error(pred));
        assert!((st.min_fidelity - 1.0).abs() < PHYSICS_TOL);
    }

    #[test]
    fn first_order_residual_scaling() {
        let (s, t) = setup(Builtin::Shor9);
        let zs = vec![Letter::Z; 9];
        let zero = first_order_residual(&s, &t, 0.0, &zs, c(0.6), c(0.8)).unwrap();
        assert!(zero.before.abs() < 1e-12 && zero.after.abs() < 1e-12);
        let r1 = first_order_residual(&s, &t, 0.01, &zs, c(0.6), c(0.8)).unwrap();
        let r2 = first_order_residual(&s, &t, 0.02, &zs, c(0.6), c(0.8)).unwrap();
        assert!(r1.after < 1e-6, "{r1:?}");
        let ratio = r2.after / r1.after;
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
        let r5 = first_order_residual(&s, &t, 0.05, &zs, c(0.6), c(0.8)).unwrap();
        assert!(r5.after < r5.before);
        assert!(first_order_residual(&s, &t, 0.2, &zs, c(0.6), c(0.8)).is_err());
    }
}
