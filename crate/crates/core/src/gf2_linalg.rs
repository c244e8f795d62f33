//! Square matrices over GF(2).
//!
//! A [`BitMatrix`] stores each row as a `u32` bitmask (bit `j` of row `i` is
//! the entry at `(i, j)`), so row operations are single XORs. This is the home
//! of the reduced characteristic matrix `Λ*` of a small cover over a cube and
//! of the set `M(n)` of matrices all of whose principal minors are `1`.

use core::fmt;

use crate::error::{Error, Result};
use crate::MAX_DIM;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: [u32; MAX_DIM],
}

/// A set of row/column indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const fn from_mask(mask: u32) -> Self {
        IndexSet(mask)
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: MAX_DIM,
                });
            }
            mask |= 1 << i;
        }
        Ok(IndexSet(mask))
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        IndexSet(low_mask(n))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionTooLarge { n, max: MAX_DIM })
    } else {
        Ok(())
    }
}

impl BitMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(BitMatrix {
            n,
            rows: [0; MAX_DIM],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        Ok(m)
    }

    /// Builds a matrix from row bitmasks; bit `j` of `masks[i]` is entry `(i, j)`.
    /// Bits at or above `n` are rejected.
    pub fn from_row_masks(n: usize, masks: &[u32]) -> Result<Self> {
        let mut m = Self::zero(n)?;
        if masks.len() != n {
            return Err(Error::RaggedRows {
                row: masks.len().min(n),
                expected: n,
                found: masks.len(),
            });
        }
        let allowed = low_mask(n);
        for (i, &mask) in masks.iter().enumerate() {
            if mask & !allowed != 0 {
                let col = (mask & !allowed).trailing_zeros() as usize;
                return Err(Error::IndexOutOfRange { index: col, n });
            }
            m.rows[i] = mask;
        }
        Ok(m)
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// ```
    /// use smallcover::BitMatrix;
    ///
    /// let m = BitMatrix::from_rows(&[[1, 1], [0, 1]]).unwrap();
    /// assert_eq!(m.det(), 1);
    /// ```
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &value) in row.iter().enumerate() {
                match value {
                    0 => {}
                    1 => m.rows[i] |= 1 << j,
                    _ => {
                        return Err(Error::NotABit {
                            row: i,
                            col: j,
                            value,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub const fn dim(&self) -> usize {
        self.n
    }

    /// Row `i` as a bitmask. Panics if `i >= dim()`.
    pub fn row_mask(&self, i: usize) -> u32 {
        assert!(i < self.n, "row {i} out of range for dimension {}", self.n);
        self.rows[i]
    }

    pub fn row_masks(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    /// Entry `(row, col)`. Panics if either index is out of range.
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.n && col < self.n, "({row}, {col}) out of range");
        self.rows[row] & (1 << col) != 0
    }

    /// Sets entry `(row, col)`. Panics if either index is out of range.
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.n && col < self.n, "({row}, {col}) out of range");
        if value {
            self.rows[row] |= 1 << col;
        } else {
            self.rows[row] &= !(1 << col);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = BitMatrix {
            n: self.n,
            rows: [0; MAX_DIM],
        };
        for (i, &row) in self.row_masks().iter().enumerate() {
            for j in IndexSet(row).iter() {
                t.rows[j] |= 1 << i;
            }
        }
        t
    }

    /// Entrywise sum over GF(2). Panics on mismatched dimensions.
    pub fn xor(&self, other: &BitMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = *self;
        for i in 0..self.n {
            out.rows[i] ^= other.rows[i];
        }
        out
    }

    /// Integer sum of column `col`. Panics if `col` is out of range.
    pub fn column_sum(&self, col: usize) -> u32 {
        assert!(col < self.n, "column {col} out of range");
        self.row_masks().iter().map(|row| (row >> col) & 1).sum()
    }

    /// Integer sum of row `row`. Panics if `row` is out of range.
    pub fn row_sum(&self, row: usize) -> u32 {
        self.row_mask(row).count_ones()
    }

    /// Index of the first zero diagonal entry, if any.
    pub fn first_zero_diagonal(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.rows[i] & (1 << i) == 0)
    }

    /// Determinant over GF(2), by Gaussian elimination with row pivoting.
    /// The empty matrix has determinant 1.
    pub fn det(&self) -> u8 {
        det_of_rows(self.rows, self.n)
    }

    /// Determinant of the submatrix on rows and columns `subset`.
    pub fn principal_minor(&self, subset: IndexSet) -> Result<u8> {
        if subset.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if subset.mask() & !low_mask(self.n) != 0 {
            let index = (subset.mask() & !low_mask(self.n)).trailing_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        let mut sub = [0u32; MAX_DIM];
        for (a, i) in subset.iter().enumerate() {
            sub[a] = compress(self.rows[i], subset.mask());
        }
        Ok(det_of_rows(sub, subset.len()))
    }

    /// Membership in `M(n)`: every principal minor, over all `2ⁿ - 1`
    /// nonempty index subsets, equals 1.
    ///
    /// This is the definitional test and costs `O(2ⁿ n²)`; it is meant for
    /// small `n`. For large `n` test acyclicity of the preimage under `φ`
    /// instead (see [`crate::correspondence`]).
    pub fn is_in_mn(&self) -> bool {
        let full = low_mask(self.n) as u64;
        (1..=full).all(|mask| {
            let subset = IndexSet(mask as u32);
            self.principal_minor(subset) == Ok(1)
        })
    }

    /// Orientability criterion for `Λ = (Eₙ | Λ*)`: every column of `Λ` has an
    /// odd entry sum. The identity block always passes, so only the columns
    /// of `self` (taken as `Λ*`) are tested.
    pub fn is_orientable_characteristic(&self) -> bool {
        (0..self.n).all(|col| self.column_sum(col) % 2 == 1)
    }
}

/// Gathers the bits of `row` at the positions set in `mask` into the low bits.
fn compress(row: u32, mask: u32) -> u32 {
    let mut out = 0;
    for (k, j) in IndexSet(mask).iter().enumerate() {
        if row & (1 << j) != 0 {
            out |= 1 << k;
        }
    }
    out
}

fn det_of_rows(mut rows: [u32; MAX_DIM], n: usize) -> u8 {
    for col in 0..n {
        let bit = 1u32 << col;
        let Some(pivot) = (col..n).find(|&r| rows[r] & bit != 0) else {
            return 0;
        };
        rows.swap(col, pivot);
        let pivot_row = rows[col];
        for row in rows.iter_mut().take(n).skip(col + 1) {
            if *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
    }
    1
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}) [", self.n)?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(" ")?;
            }
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

/// One line per row, each row written as `n` characters from `{0, 1}`.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
