//! Counting and rank bounds on `[[n, k, d]]` codes. Counting bounds use
//! big integers throughout so the verdicts are exact for any `n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("p = {0} outside [0, 1/4]")]
    OutOfDomain(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// `lhs ≤ rhs` test with both sides kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingBound {
    pub satisfied: bool,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl CountingBound {
    fn new(lhs: BigUint, rhs: BigUint) -> Self {
        Self { satisfied: lhs <= rhs, lhs, rhs }
    }

    /// `rhs - lhs`, negative when violated.
    pub fn slack(&self) -> BigInt {
        BigInt::from(self.rhs.clone()) - BigInt::from(self.lhs.clone())
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn binomial(n: usize, j: usize) -> BigUint {
    if j > n {
        return BigUint::ZERO;
    }
    let j = j.min(n - j);
    let mut acc = BigUint::from(1u32);
    for i in 0..j {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn pow2(e: usize) -> BigUint {
    BigUint::from(1u32) << e
}

/// `Σ_{j ≤ r} 3^j C(n, j)`: Paulis of weight at most `r` up to phase.
pub fn ball_size(n: usize, r: usize) -> BigUint {
    let mut total = BigUint::ZERO;
    let mut three = BigUint::from(1u32);
    for j in 0..=r.min(n) {
        total += &three * binomial(n, j);
        three *= 3u32;
    }
    total
}

/// Quantum Hamming bound for a nondegenerate code correcting `t` errors.
pub fn hamming_bound(n: usize, k: usize, t: usize) -> CountingBound {
    CountingBound::new(ball_size(n, t) * pow2(k), pow2(n))
}

/// Gilbert-Varshamov: `satisfied` means a code with these parameters is
/// guaranteed to exist. `d = 0` is treated like `d = 1`.
pub fn gv_bound(n: usize, k: usize, d: usize) -> CountingBound {
    CountingBound::new(ball_size(n, d.saturating_sub(1)) * pow2(k), pow2(n))
}

/// `n - k ≥ 2d - 2`, evaluated in signed arithmetic.
pub fn singleton_bound(n: usize, k: usize, d: usize) -> bool {
    n as i128 - k as i128 >= 2 * d as i128 - 2
}

fn binary_entropy(x: f64) -> f64 {
    let h = |y: f64| if y <= 0.0 { 0.0 } else { -y * y.log2() };
    h(x) + h(1.0 - x)
}

/// Rate window `(1 - 2p log2 3 - H(2p), 1 - p log2 3 - H(p))` with `p = d/2n`.
pub fn asymptotic_window(p: f64) -> Result<(f64, f64), BoundsError> {
    if !(0.0..=0.25).contains(&p) {
        return Err(BoundsError::OutOfDomain(p));
    }
    let l3 = 3f64.log2();
    let lower = 1.0 - 2.0 * p * l3 - binary_entropy(2.0 * p);
    let upper = 1.0 - p * l3 - binary_entropy(p);
    Ok((lower, upper))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub t: usize,
    pub hamming: CountingBound,
    pub gv: CountingBound,
    pub singleton: bool,
}

impl BoundReport {
    pub fn new(n: usize, k: usize, d: usize) -> Self {
        let t = d.saturating_sub(1) / 2;
        Self {
            n,
            k,
            d,
            t,
            hamming: hamming_bound(n, k, t),
            gv: gv_bound(n, k, d),
            singleton: singleton_bound(n, k, d),
        }
    }

    pub fn hamming_verdict(&self) -> Verdict {
        if self.k > self.n {
            Verdict::NotApplicable
        } else if self.hamming.satisfied {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    /// Satisfied here means existence is guaranteed; violated only means the
    /// bound says nothing.
    pub fn gv_verdict(&self) -> Verdict {
        if self.d == 0 || self.k > self.n {
            Verdict::NotApplicable
        } else if self.gv.satisfied {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn singleton_verdict(&self) -> Verdict {
        if self.singleton {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    /// `n - k - (2d - 2)`, negative when the Singleton bound fails.
    pub fn singleton_slack(&self) -> i128 {
        self.n as i128 - self.k as i128 - (2 * self.d as i128 - 2)
    }
}
