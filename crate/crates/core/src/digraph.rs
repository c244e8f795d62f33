//! Labeled simple digraphs on vertices `0..n`.
//!
//! Edges are stored as an adjacency bit field: bit `v` of `rows[u]` is set iff
//! `(u, v)` is an edge. Loops are never allowed.
//!
//! Every digraph on `n ≤ 8` vertices has a canonical *code*: its `n(n - 1)`
//! off-diagonal adjacency bits in row-major order, packed into a `u64` with
//! the pair `(0, 1)` in bit 0. Enumeration walks codes `0..2^{n(n-1)}` in
//! increasing order, so any subrange can be counted independently.

use core::fmt;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::gf2_linalg::{check_dim, low_mask, BitMatrix, IndexSet};
use crate::MAX_DIM;

/// Largest vertex count whose code fits in a `u64`.
pub const MAX_CODED_VERTICES: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    rows: [u32; MAX_DIM],
}

impl Digraph {
    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Digraph {
            n,
            rows: [0; MAX_DIM],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a digraph from adjacency row bitmasks. Diagonal bits are loops
    /// and are rejected.
    pub fn from_adjacency_rows(n: usize, rows: &[u32]) -> Result<Self> {
        let m = BitMatrix::from_row_masks(n, rows)?;
        if let Some(vertex) = (0..n).find(|&i| m.get(i, i)) {
            return Err(Error::Loop { vertex });
        }
        let mut g = Self::empty(n)?;
        g.rows[..n].copy_from_slice(rows);
        Ok(g)
    }

    /// Adds `(u, v)`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop { vertex: u });
        }
        self.rows[u] |= 1 << v;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1 << v) != 0
    }

    pub const fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out_masks()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    /// Edges in lexicographic order of `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_masks()
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| IndexSet::from_mask(row).iter().map(move |v| (u, v)))
    }

    /// Out-neighbourhood of every vertex as a bitmask.
    pub fn out_masks(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    /// The vertex adjacency matrix `A(G)`, with `A[i][j] = 1` iff `(i, j)` is
    /// an edge.
    pub fn adjacency_matrix(&self) -> BitMatrix {
        BitMatrix::from_row_masks(self.n, self.out_masks())
            .expect("adjacency rows are in range by construction")
    }

    pub fn out_degree(&self, v: usize) -> Result<u32> {
        self.check_vertex(v)?;
        Ok(self.rows[v].count_ones())
    }

    pub fn in_degree(&self, v: usize) -> Result<u32> {
        self.check_vertex(v)?;
        Ok(self.out_masks().iter().map(|r| (r >> v) & 1).sum())
    }

    pub fn all_out_degrees_even(&self) -> bool {
        self.out_masks().iter().all(|r| r.count_ones() % 2 == 0)
    }

    /// Acyclicity by repeatedly deleting every vertex with no out-edge into
    /// the surviving set. A digraph is acyclic iff this empties the graph.
    pub fn is_acyclic(&self) -> bool {
        let mut alive = low_mask(self.n);
        while alive != 0 {
            let mut sinks = 0u32;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.rows[v] & alive == 0 {
                    sinks |= 1 << v;
                }
            }
            if sinks == 0 {
                return false;
            }
            alive &= !sinks;
        }
        true
    }

    /// Acyclicity by depth-first search with white/grey/black colouring.
    pub fn is_acyclic_dfs(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }

        fn visit(g: &Digraph, v: usize, colour: &mut [Colour; MAX_DIM]) -> bool {
            colour[v] = Colour::Grey;
            for w in IndexSet::from_mask(g.rows[v]).iter() {
                let state = colour[w];
                match state {
                    Colour::Grey => return false,
                    Colour::White => {
                        if !visit(g, w, colour) {
                            return false;
                        }
                    }
                    Colour::Black => {}
                }
            }
            colour[v] = Colour::Black;
            true
        }

        let mut colour = [Colour::White; MAX_DIM];
        (0..self.n).all(|v| colour[v] != Colour::White || visit(self, v, &mut colour))
    }

    /// The canonical code of this digraph. Requires `n ≤ 8`.
    pub fn code(&self) -> Result<u64> {
        if self.n > MAX_CODED_VERTICES {
            return Err(Error::DimensionTooLarge {
                n: self.n,
                max: MAX_CODED_VERTICES,
            });
        }
        let width = self.n.saturating_sub(1);
        let mut code = 0u64;
        for (u, &row) in self.out_masks().iter().enumerate() {
            let below = row & low_mask(u);
            let above = row >> (u + 1);
            let chunk = below | (above << u);
            code |= (chunk as u64) << (u * width);
        }
        Ok(code)
    }

    /// Inverse of [`Digraph::code`].
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        if n > MAX_CODED_VERTICES {
            return Err(Error::DimensionTooLarge {
                n,
                max: MAX_CODED_VERTICES,
            });
        }
        if code >= code_space(n) {
            return Err(Error::CodeOutOfRange { code, n });
        }
        Ok(Self::decode_unchecked(n, code))
    }

    #[inline]
    fn decode_unchecked(n: usize, code: u64) -> Self {
        let mut rows = [0u32; MAX_DIM];
        let width = n.saturating_sub(1);
        let chunk_mask = low_mask(width) as u64;
        for (u, row) in rows.iter_mut().enumerate().take(n) {
            let chunk = ((code >> (u * width)) & chunk_mask) as u32;
            let below = chunk & low_mask(u);
            let above = chunk >> u;
            *row = below | (above << (u + 1));
        }
        Digraph { n, rows }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}) {{", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {u}->{v}")?;
        }
        f.write_str(" }")
    }
}

/// Number of digraphs on `n` labeled vertices, `2^{n(n-1)}`. Requires `n ≤ 8`.
pub fn code_space(n: usize) -> u64 {
    assert!(n <= MAX_CODED_VERTICES, "n = {n} has no u64 code space");
    1u64 << (n * n.saturating_sub(1))
}

/// Upper bound on `n` for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(usize);

impl EnumerationCap {
    /// `n = 6` means about 1.07e9 digraphs.
    pub const DEFAULT: EnumerationCap = EnumerationCap(6);

    /// Caps above [`MAX_CODED_VERTICES`] are clamped to it.
    pub fn new(cap: usize) -> Self {
        EnumerationCap(cap.min(MAX_CODED_VERTICES))
    }

    pub const fn get(self) -> usize {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::EnumerationCap { n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Digraphs on `n` vertices whose codes lie in a range, in increasing code order.
#[derive(Debug, Clone)]
pub struct Digraphs {
    n: usize,
    codes: Range<u64>,
}

impl Digraphs {
    /// Iterates codes in `codes`, clipped to the code space of `n`.
    pub fn over_range(n: usize, codes: Range<u64>) -> Result<Self> {
        if n > MAX_CODED_VERTICES {
            return Err(Error::DimensionTooLarge {
                n,
                max: MAX_CODED_VERTICES,
            });
        }
        let end = codes.end.min(code_space(n));
        Ok(Digraphs {
            n,
            codes: codes.start.min(end)..end,
        })
    }

    /// Yields `(code, digraph)` pairs.
    pub fn with_codes(self) -> impl Iterator<Item = (u64, Digraph)> {
        let n = self.n;
        self.codes
            .map(move |c| (c, Digraph::decode_unchecked(n, c)))
    }
}

impl Iterator for Digraphs {
    type Item = Digraph;

    #[inline]
    fn next(&mut self) -> Option<Digraph> {
        self.codes
            .next()
            .map(|c| Digraph::decode_unchecked(self.n, c))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.codes.size_hint()
    }
}

/// All `2^{n(n-1)}` digraphs on `n` labeled vertices, in code order.
pub fn enumerate_digraphs(n: usize, cap: EnumerationCap) -> Result<Digraphs> {
    cap.check(n)?;
    Digraphs::over_range(n, 0..u64::MAX)
}

/// The acyclic digraphs on `n` labeled vertices, in code order.
pub fn enumerate_acyclic(n: usize, cap: EnumerationCap) -> Result<impl Iterator<Item = Digraph>> {
    Ok(enumerate_digraphs(n, cap)?.filter(Digraph::is_acyclic))
}
