//! Chromatic generating functions with exact rational coefficients.
//!
//! A [`ChromSeries`] with coefficients `a_0, …, a_N` stands for the truncated
//! series `Σ a_n xⁿ / (n! 2^{C(n,2)})`. In this basis the product of two
//! series has coefficients
//!
//! ```text
//! c_n = Σ_{k=0}^{n} C(n,k) 2^{k(n-k)} a_k b_{n-k},
//! ```
//!
//! which keeps integer sequences integral. `R(x) = Σ R_n xⁿ/(n! 2^{C(n,2)})`
//! and `F(x) = Σ xⁿ/(n! 2^{C(n,2)})` satisfy `F(-x) R(x) = 1`, and the
//! orientable counts satisfy `O(x) = (1 - F(-x)) / F(-x/2)`.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{BigCount, CountTable};
use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Truncated chromatic series. The truncation order is `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromSeries {
    coeffs: Vec<Rational>,
}

/// `C(n,k) 2^{k(n-k)}` for `k = 0..=n`.
fn convolution_weights(n: usize) -> Vec<BigInt> {
    let mut binom = BigInt::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                binom = binom.clone() * BigInt::from(n - k + 1) / BigInt::from(k);
            }
            binom.clone() << (k * (n - k))
        })
        .collect()
}

impl ChromSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(ChromSeries { coeffs })
    }

    pub fn from_counts<'a, I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BigCount>,
    {
        Self::from_coeffs(
            counts
                .into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c.clone())))
                .collect(),
        )
    }

    /// `1 + 0x + …` to order `order`.
    pub fn unit(order: usize) -> Self {
        let mut coeffs = alloc::vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        ChromSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        ChromSeries {
            coeffs: alloc::vec![Rational::zero(); order + 1],
        }
    }

    /// `F(x)`: every chromatic coefficient is 1.
    pub fn f_series(order: usize) -> Self {
        ChromSeries {
            coeffs: alloc::vec![Rational::one(); order + 1],
        }
    }

    /// `R(x)` with coefficients `R_0..R_order`.
    pub fn r_series(order: usize, table: &mut CountTable) -> Self {
        let coeffs = (0..=order)
            .map(|n| Rational::from_integer(table.robinson_r(n).clone().into()))
            .collect();
        ChromSeries { coeffs }
    }

    /// `O(x)` with coefficients `O_0..O_order` from the closed formula.
    pub fn o_series(order: usize, table: &mut CountTable) -> Self {
        let coeffs = (0..=order)
            .map(|n| Rational::from_integer(table.orientable_o(n).into()))
            .collect();
        ChromSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Chromatic coefficient `a_n`; `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Ordinary power-series coefficient of `xⁿ`, `a_n / (n! 2^{C(n,2)})`.
    pub fn plain_coeff(&self, n: usize) -> Option<Rational> {
        self.coeffs.get(n).map(|a| a * chrom_basis(n))
    }

    pub fn truncate(&self, order: usize) -> Self {
        ChromSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Product in the chromatic basis; the result has the smaller of the two
    /// truncation orders.
    pub fn chrom_mul(&self, other: &ChromSeries) -> ChromSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                convolution_weights(n)
                    .into_iter()
                    .enumerate()
                    .filter(|(k, _)| !self.coeffs[*k].is_zero() && !other.coeffs[n - k].is_zero())
                    .fold(Rational::zero(), |acc, (k, w)| {
                        acc + Rational::from_integer(w) * &self.coeffs[k] * &other.coeffs[n - k]
                    })
            })
            .collect();
        ChromSeries { coeffs }
    }

    /// Solves `q · divisor = self` by forward substitution. The divisor must
    /// have a nonzero constant term.
    pub fn chrom_div(&self, divisor: &ChromSeries) -> Result<ChromSeries> {
        let d0 = &divisor.coeffs[0];
        if d0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let weights = convolution_weights(n);
            let known = (0..n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(weights[k].clone()) * &q[k] * &divisor.coeffs[n - k]
            });
            // weights[n] = 1
            q.push((&self.coeffs[n] - known) / d0);
        }
        Ok(ChromSeries { coeffs: q })
    }

    /// The series of `A(s·x)`: coefficient `n` is scaled by `sⁿ`.
    pub fn substitute_scaled(&self, s: &Rational) -> ChromSeries {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let c = a * &power;
                power = &power * s;
                c
            })
            .collect();
        ChromSeries { coeffs }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// First index where `self` and `other` differ, up to the smaller order.
    pub fn first_difference(&self, other: &ChromSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    fn zip_with(&self, other: &ChromSeries, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        ChromSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl Add for &ChromSeries {
    type Output = ChromSeries;
    fn add(self, rhs: &ChromSeries) -> ChromSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ChromSeries {
    type Output = ChromSeries;
    fn sub(self, rhs: &ChromSeries) -> ChromSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ChromSeries {
    type Output = ChromSeries;
    fn mul(self, rhs: &ChromSeries) -> ChromSeries {
        self.chrom_mul(rhs)
    }
}

impl Neg for &ChromSeries {
    type Output = ChromSeries;
    fn neg(self) -> ChromSeries {
        ChromSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// `1 / (n! 2^{C(n,2)})`.
fn chrom_basis(n: usize) -> Rational {
    let mut denom = BigInt::one();
    for i in 2..=n {
        denom *= i;
    }
    denom <<= n * n.saturating_sub(1) / 2;
    Rational::new(BigInt::one(), denom)
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `O(x)` to order `order`, solved from `O(x) · F(-x/2) = 1 - F(-x)`.
/// The constant term is 0; see [`verify_identities`].
pub fn o_series_from_identity(order: usize) -> ChromSeries {
    let f = ChromSeries::f_series(order);
    let numerator = &ChromSeries::unit(order) - &f.substitute_scaled(&ratio(-1, 1));
    let divisor = f.substitute_scaled(&ratio(-1, 2));
    numerator
        .chrom_div(&divisor)
        .expect("F(-x/2) has constant term 1")
}

/// Outcome of checking one series identity coefficientwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub order: usize,
    pub pass: bool,
    /// Lowest coefficient index at which the two sides differ.
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    fn compare(identity: &'static str, order: usize, lhs: &ChromSeries, rhs: &ChromSeries) -> Self {
        let first_failure = lhs.first_difference(rhs);
        IdentityCheck {
            identity,
            order,
            pass: first_failure.is_none(),
            first_failure,
        }
    }
}

pub const IDENTITY_F_R_UNIT: &str = "F(-x)R(x) = 1";
pub const IDENTITY_R_HALF: &str = "R(x/2)F(-x) + O(x) = R(x/2)";
pub const IDENTITY_O_QUOTIENT: &str = "O(x) = (1 - F(-x)) / F(-x/2)";

/// `A(x) - a_0`.
fn without_constant_term(a: &ChromSeries) -> ChromSeries {
    let mut out = a.clone();
    out.coeffs[0] = Rational::zero();
    out
}

/// Checks, in exact arithmetic to order `order`, that
///
/// 1. `F(-x) R(x) = 1`,
/// 2. `R(x/2) F(-x) + O(x) = R(x/2)`,
/// 3. `(1 - F(-x)) / F(-x/2)` has integer coefficients equal to `O_n`,
///
/// with `R_n` and `O_n` taken from `table`. Failures are reported, not raised.
///
/// Both `O(x)` identities force the constant term to 0, since `1 - F(-x)`
/// vanishes at `x = 0`. The counting convention `O_0 = 1` (the empty digraph)
/// is therefore dropped here: `O(x)` means `Σ_{n≥1} O_n xⁿ/(n! 2^{C(n,2)})`.
pub fn verify_identities(order: usize, table: &mut CountTable) -> Vec<IdentityCheck> {
    let f_neg = ChromSeries::f_series(order).substitute_scaled(&ratio(-1, 1));
    let r = ChromSeries::r_series(order, table);
    let o = ChromSeries::o_series(order, table);
    let r_half = r.substitute_scaled(&ratio(1, 2));
    let o = without_constant_term(&o);

    let unit = IdentityCheck::compare(
        IDENTITY_F_R_UNIT,
        order,
        &f_neg.chrom_mul(&r),
        &ChromSeries::unit(order),
    );
    let half = IdentityCheck::compare(
        IDENTITY_R_HALF,
        order,
        &(&r_half.chrom_mul(&f_neg) + &o),
        &r_half,
    );

    let quotient = o_series_from_identity(order);
    let mut o_check = IdentityCheck::compare(IDENTITY_O_QUOTIENT, order, &quotient, &o);
    if let Some(i) = quotient.coeffs().iter().position(|c| !c.is_integer()) {
        o_check.pass = false;
        o_check.first_failure = Some(o_check.first_failure.map_or(i, |j| j.min(i)));
    }
    alloc::vec![unit, half, o_check]
}

/// Checks `F'(x) = F(x/2)` at the coefficient of `x^{n-1}` (`n ≥ 1`):
/// `n f_n = f_{n-1} / 2^{n-1}` with `f_n = 1/(n! 2^{C(n,2)})`.
pub fn derivative_identity_holds(n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let f = ChromSeries::f_series(n);
    let derivative = f.plain_coeff(n).expect("order n") * Rational::from_integer(n.into());
    let halved = f
        .substitute_scaled(&ratio(1, 2))
        .plain_coeff(n - 1)
        .expect("order n");
    derivative == halved
}
