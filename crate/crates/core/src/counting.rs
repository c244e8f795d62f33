//! Exact closed-form counts.
//!
//! `R_n`, the number of labeled acyclic digraphs on `n` vertices, follows
//! Robinson's recurrence
//!
//! ```text
//! R_n = Σ_{k=1}^{n} (-1)^{k+1} C(n,k) 2^{k(n-k)} R_{n-k},    R_0 = 1,
//! ```
//!
//! and `O_n`, the number of those whose vertices all have even out-degree
//! (equivalently, orientable small covers over the `n`-cube), is
//!
//! ```text
//! O_n = Σ_{k=1}^{n} (-1)^{k+1} C(n,k) 2^{(k-1)(n-k)} R_{n-k}.
//! ```
//!
//! All terms are exact signed big integers; powers of two are shifts.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;
/// Arbitrary-precision signed integer for alternating sums.
pub type SignedBig = BigInt;

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> Result<BigCount> {
    if k > n {
        return Err(Error::InvalidBinomial { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Row `n` of Pascal's triangle.
fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

/// Memo table of `R_0, R_1, …`.
///
/// The table only grows; every filled entry is the value the recurrence
/// produces from the entries below it.
#[derive(Debug, Clone)]
pub struct CountTable {
    r: Vec<BigCount>,
}

impl Default for CountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CountTable {
    pub fn new() -> Self {
        CountTable {
            r: vec![BigCount::one()],
        }
    }

    /// Starts from precomputed `R_0..R_{k}` (for example, values loaded from
    /// a file). Later entries are derived from these, so a wrong seed
    /// propagates; that is what the verification suite is for.
    pub fn with_seed(r_values: Vec<BigCount>) -> Result<Self> {
        if r_values.is_empty() {
            return Err(Error::InvalidParameter("seed must contain at least R_0"));
        }
        Ok(CountTable { r: r_values })
    }

    /// Number of memoized values.
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// `R_n`, extending the memo as needed.
    pub fn robinson_r(&mut self, n: usize) -> &BigCount {
        while self.r.len() <= n {
            let next = robinson_step(&self.r);
            self.r.push(next);
        }
        &self.r[n]
    }

    /// `O_n`. `O_0 = 1` (the empty digraph).
    pub fn orientable_o(&mut self, n: usize) -> BigCount {
        if n == 0 {
            return BigCount::one();
        }
        self.robinson_r(n);
        let binom = binomial_row(n);
        let mut acc = SignedBig::zero();
        for (k, b) in binom.iter().enumerate().skip(1) {
            let term = (b * BigInt::from(self.r[n - k].clone())) << ((k - 1) * (n - k));
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc.try_into()
            .expect("the inclusion-exclusion sum for O_n is nonnegative")
    }
}

/// `R_m` for `m = r.len()`, given `R_0..R_{m-1}`.
fn robinson_step(r: &[BigCount]) -> BigCount {
    let n = r.len();
    let binom = binomial_row(n);
    let mut acc = SignedBig::zero();
    for k in 1..=n {
        let term = (&binom[k] * BigInt::from(r[n - k].clone())) << (k * (n - k));
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.try_into()
        .expect("the alternating sum for R_n is nonnegative")
}

/// `R_n` from a fresh memo table.
pub fn robinson_r(n: usize) -> BigCount {
    CountTable::new().robinson_r(n).clone()
}

/// `R_n` by direct recursion with no memo. Exponential in `n`; for
/// cross-checking the memoized path on small inputs.
pub fn robinson_r_unmemoized(n: usize) -> BigCount {
    let mut acc = SignedBig::zero();
    for k in 1..=n {
        let b = binomial(n as u64, k as u64).expect("k ≤ n");
        let term = BigInt::from(b * robinson_r_unmemoized(n - k)) << (k * (n - k));
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if n == 0 {
        BigCount::one()
    } else {
        acc.try_into().expect("R_n is nonnegative")
    }
}

/// `O_n` from a fresh memo table.
pub fn orientable_o(n: usize) -> BigCount {
    CountTable::new().orientable_o(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRow {
    pub n: usize,
    pub r: BigCount,
    pub o: BigCount,
}

/// Rows `(n, R_n, O_n)` for `n = 0..=max_n`.
pub fn sequence_table(max_n: usize) -> Vec<SequenceRow> {
    sequence_table_with(&mut CountTable::new(), max_n)
}

pub fn sequence_table_with(table: &mut CountTable, max_n: usize) -> Vec<SequenceRow> {
    (0..=max_n)
        .map(|n| SequenceRow {
            n,
            r: table.robinson_r(n).clone(),
            o: table.orientable_o(n),
        })
        .collect()
}
