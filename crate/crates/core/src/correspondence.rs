//! The bijection `φ: G ↦ A(G)ᵗ + Eₙ` between labeled acyclic digraphs and
//! `M(n)`, plus the brute-force counters that anchor the closed formulas.
//!
//! `φ` is defined on every digraph, not only acyclic ones: `φ(G) ∈ M(n)` iff
//! `G` is acyclic, and `G` has only even out-degrees iff every column of
//! `φ(G)` has odd sum.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Range};

use crate::counting::BigCount;
use crate::digraph::{code_space, Digraph, Digraphs, EnumerationCap};
use crate::error::{Error, Result};
use crate::gf2_linalg::{low_mask, BitMatrix};

/// Largest `n` for the matrix-side oracles, which scan all `2^{n²}` matrices.
pub const MATRIX_ORACLE_MAX: usize = 4;

pub fn phi(g: &Digraph) -> BitMatrix {
    let n = g.vertex_count();
    let a_t = g.adjacency_matrix().transpose();
    a_t.xor(&BitMatrix::identity(n).expect("dimension already validated"))
}

/// Inverse of [`phi`]: edge `(i, j)` iff `M[j][i] = 1` and `i ≠ j`.
pub fn phi_inverse(m: &BitMatrix) -> Result<Digraph> {
    if let Some(index) = m.first_zero_diagonal() {
        return Err(Error::ZeroDiagonal { index });
    }
    let n = m.dim();
    let a = m.xor(&BitMatrix::identity(n)?).transpose();
    Digraph::from_adjacency_rows(n, a.row_masks())
}

/// Counts over a range of digraph codes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    /// Digraphs visited.
    pub total: u64,
    pub acyclic: u64,
    /// Acyclic digraphs whose out-degrees are all even.
    pub orientable: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, rhs: Tally) -> Tally {
        Tally {
            total: self.total + rhs.total,
            acyclic: self.acyclic + rhs.acyclic,
            orientable: self.orientable + rhs.orientable,
        }
    }
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        *self = *self + rhs;
    }
}

impl core::iter::Sum for Tally {
    fn sum<I: Iterator<Item = Tally>>(iter: I) -> Tally {
        iter.fold(Tally::default(), Add::add)
    }
}

/// Tallies the digraphs on `n` vertices whose codes lie in `codes`.
///
/// Disjoint ranges covering `0..code_space(n)` sum to the full tally no matter
/// how the space is cut.
pub fn tally_range(n: usize, codes: Range<u64>) -> Result<Tally> {
    let mut tally = Tally::default();
    for g in Digraphs::over_range(n, codes)? {
        tally.total += 1;
        if g.is_acyclic() {
            tally.acyclic += 1;
            if g.all_out_degrees_even() {
                tally.orientable += 1;
            }
        }
    }
    Ok(tally)
}

/// Splits `0..code_space(n)` into `parts` contiguous ranges of near-equal size.
pub fn partition_codes(n: usize, parts: usize) -> Result<Vec<Range<u64>>> {
    if parts == 0 {
        return Err(Error::InvalidParameter("partition count must be positive"));
    }
    Digraphs::over_range(n, 0..0)?;
    let total = code_space(n);
    let parts = parts as u64;
    Ok((0..parts)
        .map(|i| {
            let lo = (total as u128 * i as u128 / parts as u128) as u64;
            let hi = (total as u128 * (i + 1) as u128 / parts as u128) as u64;
            lo..hi
        })
        .collect())
}

pub fn count_acyclic_bruteforce(n: usize, cap: EnumerationCap) -> Result<BigCount> {
    cap.check(n)?;
    Ok(tally_range(n, 0..u64::MAX)?.acyclic.into())
}

/// Acyclic digraphs all of whose vertices have even out-degree.
pub fn count_orientable_bruteforce(n: usize, cap: EnumerationCap) -> Result<BigCount> {
    cap.check(n)?;
    Ok(tally_range(n, 0..u64::MAX)?.orientable.into())
}

/// All `n × n` GF(2) matrices, in order of their row-major bit encoding.
fn all_matrices(n: usize) -> Result<impl Iterator<Item = BitMatrix>> {
    if n > MATRIX_ORACLE_MAX {
        return Err(Error::EnumerationCap {
            n,
            cap: MATRIX_ORACLE_MAX,
        });
    }
    let mask = low_mask(n) as u64;
    Ok((0u64..1 << (n * n)).map(move |code| {
        let mut rows = [0u32; MATRIX_ORACLE_MAX];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = ((code >> (i * n)) & mask) as u32;
        }
        BitMatrix::from_row_masks(n, &rows[..n]).expect("rows masked to n bits")
    }))
}

/// `|M(n)|` by testing every principal minor of every matrix. `n ≤ 4`.
pub fn count_mn_bruteforce(n: usize) -> Result<BigCount> {
    Ok((all_matrices(n)?.filter(BitMatrix::is_in_mn).count() as u64).into())
}

/// Matrices in `M(n)` passing the column-parity orientability test. `n ≤ 4`.
pub fn count_orientable_mn_bruteforce(n: usize) -> Result<BigCount> {
    Ok((all_matrices(n)?
        .filter(|m| m.is_in_mn() && m.is_orientable_characteristic())
        .count() as u64)
        .into())
}

/// Every matrix in `M(n)` in encoding order, via the definitional minor test. `n ≤ 4`.
pub fn mn_members(n: usize) -> Result<Vec<BitMatrix>> {
    Ok(all_matrices(n)?.filter(BitMatrix::is_in_mn).collect())
}
