//! Exact counting and enumeration of orientable small covers over cubes.
//!
//! A small cover over the `n`-cube is determined (up to Davis-Januszkiewicz
//! equivalence) by an `n × n` matrix over GF(2) whose principal minors are all
//! `1`. Those matrices are in bijection with labeled acyclic digraphs via
//! `G ↦ A(G)ᵗ + Eₙ`, and the orientable ones correspond to acyclic digraphs
//! whose vertices all have even out-degree.
//!
//! The crate is split along that story:
//!
//! - [`gf2_linalg`]: [`BitMatrix`], determinants and principal minors over
//!   GF(2), membership in `M(n)`, and the column-parity orientability test.
//! - [`digraph`]: labeled simple digraphs, acyclicity, degrees and exhaustive
//!   enumeration in canonical code order.
//! - [`correspondence`]: the bijection `φ`, its inverse, and the brute-force
//!   counters that every closed formula is checked against.
//! - [`counting`]: Robinson's recurrence for `R_n` and the inclusion-exclusion
//!   formula for `O_n`, in exact big-integer arithmetic.
//! - [`series`]: exact chromatic generating functions and the identities
//!   `F(-x)R(x) = 1` and `O(x) = (1 - F(-x)) / F(-x/2)`.
//! - [`asymptotics`]: the dominant zero `α` of `F`, the constants `C`, `K`,
//!   and the ratio estimate `O_n / R_n ~ (K/C) 2⁻ⁿ`.
//!
//! ```
//! use smallcover::counting::{orientable_o, robinson_r};
//!
//! assert_eq!(robinson_r(4).to_string(), "543");
//! assert_eq!(orientable_o(4).to_string(), "43");
//! ```
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod correspondence;
pub mod counting;
pub mod digraph;
mod error;
pub mod gf2_linalg;
pub mod series;

pub use counting::{BigCount, SignedBig};
pub use digraph::{Digraph, EnumerationCap};
pub use error::{Error, Result};
pub use gf2_linalg::{BitMatrix, IndexSet};
pub use series::{ChromSeries, Rational};

/// Largest matrix dimension / vertex count representable by [`BitMatrix`] and
/// [`Digraph`]. Rows are stored as `u32` bitmasks.
pub const MAX_DIM: usize = 32;
