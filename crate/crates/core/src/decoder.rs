//! Lookup-table syndrome decoding, full correction cycles on state vectors,
//! and correction of erasures at known positions.

use std::collections::HashMap;

use rand::Rng;
use thiserror::Error;

use crate::bits::BitVec;
use crate::pauli::{PauliEnumerator, PauliOperator};
use crate::stabilizer::{Membership, StabilizerGroup};
use crate::statevector::{fidelity, StateError, StateVector};

#[derive(Debug, Error, PartialEq)]
pub enum DecodeError {
    #[error("no error of weight <= {t} has syndrome {syndrome}")]
    UnknownSyndrome { syndrome: BitVec, t: usize },
    #[error("syndrome has {found} bits, code has {expected} generators")]
    SyndromeLength { expected: usize, found: usize },
    #[error("no Pauli supported on the erased positions {positions:?} matches syndrome {syndrome}")]
    NoSupportedCorrection { positions: Vec<usize>, syndrome: BitVec },
    #[error("erased position {0} out of range")]
    BadPosition(usize),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Minimum-weight lookup table from syndromes to corrections.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    n: usize,
    num_generators: usize,
    t: usize,
    entries: HashMap<BitVec, PauliOperator>,
    enumerated: usize,
    degenerate_collisions: usize,
    phase_collisions: usize,
    ambiguous: Vec<BitVec>,
}

impl SyndromeTable {
    /// Enumerates all Paulis of weight ≤ t in canonical order; the first error
    /// with a given syndrome becomes its correction. Later collisions are
    /// degenerate when `E·F ∈ S` and ambiguous when `E·F ∈ N(S) \ S`.
    pub fn build(s: &StabilizerGroup, t: usize) -> Self {
        let mut entries: HashMap<BitVec, PauliOperator> = HashMap::new();
        let mut enumerated = 0;
        let mut degenerate_collisions = 0;
        let mut phase_collisions = 0;
        let mut ambiguous = Vec::new();
        for e in PauliEnumerator::new(s.num_qubits(), t) {
            enumerated += 1;
            let syn = s.syndrome_unchecked(&e);
            match entries.get(&syn) {
                None => {
                    entries.insert(syn, e);
                }
                Some(f) => match s.membership_unchecked(&(f * &e)) {
                    Membership::Member => degenerate_collisions += 1,
                    Membership::MemberUpToPhase => phase_collisions += 1,
                    Membership::NotMember => {
                        if !ambiguous.contains(&syn) {
                            ambiguous.push(syn);
                        }
                    }
                },
            }
        }
        ambiguous.sort_by_key(|b| b.to_string());
        Self {
            n: s.num_qubits(),
            num_generators: s.num_generators(),
            t,
            entries,
            enumerated,
            degenerate_collisions,
            phase_collisions,
            ambiguous,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of errors enumerated while building.
    pub fn enumerated(&self) -> usize {
        self.enumerated
    }

    /// Collisions where the stored correction times the error is in `S` with matching sign.
    pub fn degenerate_collisions(&self) -> usize {
        self.degenerate_collisions
    }

    /// Collisions where that product is in `S` only up to a phase.
    pub fn phase_collisions(&self) -> usize {
        self.phase_collisions
    }

    /// Syndromes shared by errors whose product is a logical operator.
    pub fn ambiguous(&self) -> &[BitVec] {
        &self.ambiguous
    }

    pub fn decode(&self, syndrome: &BitVec) -> Result<&PauliOperator, DecodeError> {
        if syndrome.len() != self.num_generators {
            return Err(DecodeError::SyndromeLength {
                expected: self.num_generators,
                found: syndrome.len(),
            });
        }
        self.entries
            .get(syndrome)
            .ok_or_else(|| DecodeError::UnknownSyndrome {
                syndrome: syndrome.clone(),
                t: self.t,
            })
    }

    pub fn lookup(&self, syndrome: &BitVec) -> Option<&PauliOperator> {
        self.entries.get(syndrome)
    }

    /// `(syndrome, correction)` pairs sorted by syndrome bits.
    pub fn sorted_entries(&self) -> Vec<(&BitVec, &PauliOperator)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by_key(|(s, _)| s.to_string());
        v
    }

    /// One `"<syndrome bits> <correction>"` line per entry, sorted by syndrome.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.sorted_entries() {
            out.push_str(&format!("{s} {c}\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionOutcome {
    pub state: StateVector,
    pub syndrome: BitVec,
    pub correction: PauliOperator,
}

/// Measures every generator in row order, returning the syndrome and the
/// collapsed state.
pub fn measure_syndrome<R: Rng + ?Sized>(
    state: &StateVector,
    s: &StabilizerGroup,
    rng: &mut R,
) -> Result<(BitVec, StateVector), DecodeError> {
    let mut current = state.clone();
    let mut bits = Vec::with_capacity(s.num_generators());
    for g in s.generators() {
        let m = current.measure_generator(g, rng)?;
        bits.push(m.eigenvalue < 0);
        current = m.state;
    }
    Ok((BitVec::from_bools(bits), current))
}

/// One full error-correction cycle: measure, look up, apply the correction.
pub fn correct<R: Rng + ?Sized>(
    state: &StateVector,
    s: &StabilizerGroup,
    table: &SyndromeTable,
    rng: &mut R,
) -> Result<CorrectionOutcome, DecodeError> {
    let (syndrome, mut collapsed) = measure_syndrome(state, s, rng)?;
    let correction = table.decode(&syndrome)?.clone();
    collapsed.apply_pauli(&correction)?;
    Ok(CorrectionOutcome {
        state: collapsed,
        syndrome,
        correction,
    })
}

/// Every syndrome branch with nonzero probability, as `(syndrome, probability, state)`.
pub fn syndrome_branches(
    state: &StateVector,
    s: &StabilizerGroup,
) -> Result<Vec<(BitVec, f64, StateVector)>, DecodeError> {
    let norm = state.norm_sqr();
    let mut frontier = vec![(Vec::<bool>::new(), 1.0, state.scaled(num_complex::Complex64::new(1.0 / norm.sqrt(), 0.0)))];
    for g in s.generators() {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (bits, prob, st) in frontier {
            for (eig, bit) in [(1i8, false), (-1i8, true)] {
                match st.project(g, eig) {
                    Ok((p, post)) => {
                        let mut b = bits.clone();
                        b.push(bit);
                        next.push((b, prob * p, post));
                    }
                    Err(StateError::ZeroProbability { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
        frontier = next;
    }
    Ok(frontier
        .into_iter()
        .map(|(b, p, st)| (BitVec::from_bools(b), p, st))
        .collect())
}

/// Average of `1 − |⟨reference|corrected⟩|²` over all syndrome branches of
/// `state`, weighted by branch probability. Branches with an unknown syndrome
/// are left uncorrected.
pub fn expected_infidelity_after_correction(
    state: &StateVector,
    s: &StabilizerGroup,
    table: &SyndromeTable,
    reference: &StateVector,
) -> Result<f64, DecodeError> {
    let mut total = 0.0;
    for (syn, prob, mut st) in syndrome_branches(state, s)? {
        if let Some(c) = table.lookup(&syn) {
            st.apply_pauli(c)?;
        }
        total += prob * (1.0 - fidelity(reference, &st)?);
    }
    Ok(total)
}

/// Simulates loss of the given qubits: each is measured and replaced by `|0⟩`.
pub fn erase_positions<R: Rng + ?Sized>(
    state: &mut StateVector,
    positions: &[usize],
    rng: &mut R,
) -> Result<(), DecodeError> {
    for &q in positions {
        state.reset_qubit(q, rng)?;
    }
    Ok(())
}

/// Corrects errors confined to known positions: measures the syndrome, then
/// applies the first Pauli supported on `erased` (canonical order) with that
/// syndrome.
pub fn erasure_correct<R: Rng + ?Sized>(
    state: &StateVector,
    s: &StabilizerGroup,
    erased: &[usize],
    rng: &mut R,
) -> Result<CorrectionOutcome, DecodeError> {
    let mut positions = erased.to_vec();
    positions.sort_unstable();
    positions.dedup();
    if let Some(&bad) = positions.iter().find(|&&q| q >= s.num_qubits()) {
        return Err(DecodeError::BadPosition(bad));
    }
    let (syndrome, mut collapsed) = measure_syndrome(state, s, rng)?;
    let r = positions.len();
    let correction = PauliEnumerator::on_support(s.num_qubits(), positions.clone(), r)
        .find(|p| s.syndrome_unchecked(p) == syndrome)
        .ok_or_else(|| DecodeError::NoSupportedCorrection {
            positions: positions.clone(),
            syndrome: syndrome.clone(),
        })?;
    collapsed.apply_pauli(&correction)?;
    Ok(CorrectionOutcome {
        state: collapsed,
        syndrome,
        correction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;
    use crate::rng::seeded;
    use crate::stabilizer::Builtin;
    use crate::statevector::{encode, phase_rotation, PHYSICS_TOL};
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn five_qubit_table_is_perfect() {
        let five = Builtin::FiveQubit.group();
        let table = SyndromeTable::build(&five, 1);
        assert_eq!(table.len(), 16);
        assert_eq!(table.enumerated(), 16);
        assert_eq!(table.degenerate_collisions(), 0);
        assert!(table.ambiguous().is_empty());
        // Independent check: the 16 weight-≤1 syndromes are pairwise distinct.
        let syns: Vec<BitVec> = PauliEnumerator::new(5, 1)
            .map(|e| five.syndrome(&e).unwrap())
            .collect();
        for i in 0..syns.len() {
            for j in i + 1..syns.len() {
                assert_ne!(syns[i], syns[j]);
            }
        }
    }

    #[test]
    fn shor_table_is_degenerate_not_ambiguous() {
        let shor = Builtin::Shor9.group();
        let table = SyndromeTable::build(&shor, 1);
        assert_eq!(table.enumerated(), 28);
        // Z errors in each block share a syndrome: 3 blocks × 2 repeats.
        assert_eq!(table.degenerate_collisions(), 6);
        assert_eq!(table.phase_collisions(), 0);
        assert!(table.ambiguous().is_empty());
        assert_eq!(table.len(), 22);
    }

    #[test]
    fn zero_radius_table() {
        for b in Builtin::ALL {
            let table = SyndromeTable::build(&b.group(), 0);
            assert_eq!(table.len(), 1);
            let zero = BitVec::zeros(b.group().num_generators());
            assert!(table.decode(&zero).unwrap().is_identity_up_to_phase());
        }
    }

    #[test]
    fn decode_examples() {
        let five = Builtin::FiveQubit.group();
        let table = SyndromeTable::build(&five, 1);
        let x1 = p("XIIII");
        let f = table.decode(&five.syndrome(&x1).unwrap()).unwrap();
        assert_eq!(five.contains(&(f * &x1)).unwrap(), Membership::Member);
        assert_eq!(
            table.decode(&BitVec::zeros(3)).unwrap_err(),
            DecodeError::SyndromeLength { expected: 4, found: 3 }
        );
        // Beyond the radius: every syndrome is claimed, but the fix is a logical error.
        let e2 = p("XXIII");
        let f = table.decode(&five.syndrome(&e2).unwrap()).unwrap();
        let residue = f * &e2;
        assert!(five.in_normalizer(&residue).unwrap());
        assert_eq!(five.contains(&residue).unwrap(), Membership::NotMember);
    }

    #[test]
    fn unknown_syndrome_reported() {
        let shor = Builtin::Shor9.group();
        let table = SyndromeTable::build(&shor, 1);
        let e = p("XIIXIIXII");
        let syn = shor.syndrome(&e).unwrap();
        assert!(matches!(
            table.decode(&syn),
            Err(DecodeError::UnknownSyndrome { t: 1, .. })
        ));
    }

    #[test]
    fn export_is_sorted() {
        let five = Builtin::FiveQubit.group();
        let export = SyndromeTable::build(&five, 1).export();
        let lines: Vec<&str> = export.lines().collect();
        assert_eq!(lines.len(), 16);
        assert_eq!(lines[0], "0000 IIIII");
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
    }

    #[test]
    fn correction_restores_state() {
        let shor = Builtin::Shor9.group();
        let table = SyndromeTable::build(&shor, 1);
        let psi = encode(c(0.6), c(0.8), &shor).unwrap();
        let mut rng = seeded(5);
        let out = correct(&psi.with_pauli(&p("IZIIIIIII")).unwrap(), &shor, &table, &mut rng).unwrap();
        assert!((fidelity(&psi, &out.state).unwrap() - 1.0).abs() < PHYSICS_TOL);
        assert_eq!(out.correction.to_string(), "ZIIIIIIII");

        let mut rotated = psi.clone();
        rotated.apply_single_qubit(3, &phase_rotation(1.0)).unwrap();
        let out = correct(&rotated, &shor, &table, &mut rng).unwrap();
        assert!((fidelity(&psi, &out.state).unwrap() - 1.0).abs() < PHYSICS_TOL);

        let out = correct(&psi, &shor, &table, &mut rng).unwrap();
        assert!(out.syndrome.is_zero());
        assert!(out.correction.is_identity_up_to_phase());
        assert!(out.state.max_abs_diff(&psi) < PHYSICS_TOL);
    }

    #[test]
    fn correction_is_seed_deterministic() {
        let shor = Builtin::Shor9.group();
        let table = SyndromeTable::build(&shor, 1);
        let mut rotated = encode(c(0.6), c(0.8), &shor).unwrap();
        rotated.apply_single_qubit(4, &phase_rotation(std::f64::consts::FRAC_PI_2)).unwrap();
        let a = correct(&rotated, &shor, &table, &mut seeded(42)).unwrap();
        let b = correct(&rotated, &shor, &table, &mut seeded(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn branches_sum_to_one() {
        let five = Builtin::FiveQubit.group();
        let mut psi = encode(c(0.6), c(0.8), &five).unwrap();
        psi.apply_single_qubit(1, &phase_rotation(0.9)).unwrap();
        let branches = syndrome_branches(&psi, &five).unwrap();
        assert_eq!(branches.len(), 2);
        let total: f64 = branches.iter().map(|b| b.1).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let table = SyndromeTable::build(&five, 1);
        let reference = encode(c(0.6), c(0.8), &five).unwrap();
        let r = expected_infidelity_after_correction(&psi, &five, &table, &reference).unwrap();
        assert!(r.abs() < PHYSICS_TOL);
    }

    #[test]
    fn erasure_pairs_recovered() {
        let five = Builtin::FiveQubit.group();
        let psi = encode(c(0.6), c(0.8), &five).unwrap();
        let mut rng = seeded(17);
        for a in 0..5 {
            for b in a + 1..5 {
                let mut damaged = psi.clone();
                erase_positions(&mut damaged, &[a, b], &mut rng).unwrap();
                let out = erasure_correct(&damaged, &five, &[a, b], &mut rng).unwrap();
                assert!((fidelity(&psi, &out.state).unwrap() - 1.0).abs() < PHYSICS_TOL);
            }
        }
        let out = erasure_correct(&psi, &five, &[], &mut rng).unwrap();
        assert!(out.syndrome.is_zero());
        assert!(out.state.max_abs_diff(&psi) < PHYSICS_TOL);
    }

    #[test]
    fn erasure_errors() {
        let five = Builtin::FiveQubit.group();
        let psi = encode(c(0.6), c(0.8), &five).unwrap();
        let mut rng = seeded(2);
        assert_eq!(
            erasure_correct(&psi, &five, &[7], &mut rng).unwrap_err(),
            DecodeError::BadPosition(7)
        );
        // An error outside the declared support cannot be matched.
        let damaged = psi.with_pauli(&PauliOperator::single(5, 4, Letter::X)).unwrap();
        assert!(matches!(
            erasure_correct(&damaged, &five, &[0], &mut rng),
            Err(DecodeError::NoSupportedCorrection { .. })
        ));
    }
}
