//! The dominant zero of `F` and the asymptotic constants.
//!
//! `F(x) = Σ xⁿ / (n! 2^{C(n,2)})` is entire with `F'(x) = F(x/2)`. Its zero
//! `α ≈ -1.488` closest to the origin governs the growth of both sequences:
//!
//! ```text
//! R_n ~ C 2^{C(n,2)} n! (-1/α)ⁿ,     C = -1 / (α F(α/2))
//! O_n ~ K 2^{C(n,2)} n! (-1/(2α))ⁿ,  K = -(1 - F(2α)) / (α F(α/2))
//! ```
//!
//! so `O_n / R_n ~ (K/C) 2⁻ⁿ` with `K/C = 1 - F(2α) ≈ 1.262`.

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 30;
pub const DEFAULT_TOLERANCE: f64 = 1e-13;
pub const INITIAL_GUESS: f64 = -1.5;
pub const MAX_NEWTON_ITERATIONS: usize = 100;
/// Smallest truncation order `find_alpha` accepts.
pub const MIN_TRUNCATION: usize = 25;
/// Smallest tolerance `find_alpha` accepts.
pub const MIN_TOLERANCE: f64 = 1e-14;
/// `α` must land strictly inside this interval.
pub const ALPHA_BRACKET: (f64, f64) = (-1.6, -1.4);

const MIN_DERIVATIVE: f64 = 1e-12;

/// Neumaier's compensated summation.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}

/// Partial sum `Σ_{n=0}^{truncation} xⁿ / (n! 2^{C(n,2)})`.
///
/// Terms shrink like `2^{-n²/2}`, so for `|x| ≤ 4` and `truncation ≥ 25` the
/// omitted tail is below `1e-30`.
pub fn eval_f(x: f64, truncation: usize) -> Result<f64> {
    finite(x)?;
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    for n in 1..=truncation {
        // t_n = t_{n-1} · x / (n · 2^{n-1})
        term = libm::ldexp(term * x / n as f64, -(n as i32 - 1));
        if term == 0.0 {
            break;
        }
        sum.add(term);
    }
    finite(sum.total())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRoot {
    pub value: f64,
    pub iterations: usize,
    /// `|F(α)|` at the returned value.
    pub residual: f64,
}

/// Newton's method `x ← x - F(x) / F(x/2)` from `-1.5`, stopping once the step
/// is below `tolerance`.
pub fn find_alpha(truncation: usize, tolerance: f64) -> Result<AlphaRoot> {
    if truncation < MIN_TRUNCATION {
        return Err(Error::InvalidParameter("truncation must be at least 25"));
    }
    if !tolerance.is_finite() || tolerance < MIN_TOLERANCE {
        return Err(Error::InvalidParameter(
            "tolerance must be finite and at least 1e-14",
        ));
    }
    let mut x = INITIAL_GUESS;
    for iteration in 1..=MAX_NEWTON_ITERATIONS {
        let value = eval_f(x, truncation)?;
        let derivative = eval_f(x / 2.0, truncation)?;
        if libm::fabs(derivative) < MIN_DERIVATIVE {
            return Err(Error::FlatDerivative { x, derivative });
        }
        let step = value / derivative;
        x = finite(x - step)?;
        if libm::fabs(step) < tolerance {
            let (lo, hi) = ALPHA_BRACKET;
            if !(lo < x && x < hi) {
                return Err(Error::RootOutOfBracket { root: x, lo, hi });
            }
            let residual = libm::fabs(eval_f(x, truncation)?);
            if residual >= 10.0 * tolerance {
                return Err(Error::NoConvergence {
                    iterations: iteration,
                    last: x,
                });
            }
            return Ok(AlphaRoot {
                value: x,
                iterations: iteration,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_NEWTON_ITERATIONS,
        last: x,
    })
}

/// `α`, `C`, `K` and `K/C`, with the numerical settings that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub alpha: f64,
    pub c: f64,
    pub k: f64,
    /// `K / C` as a quotient of the two constants.
    pub ratio_factor: f64,
    /// `1 - F(2α)`, algebraically equal to `K / C`.
    pub ratio_factor_closed_form: f64,
    pub truncation: usize,
    pub tolerance: f64,
    pub iterations: usize,
}

pub fn compute_constants(truncation: usize, tolerance: f64) -> Result<AsymptoticConstants> {
    let root = find_alpha(truncation, tolerance)?;
    let alpha = root.value;
    let f_half = eval_f(alpha / 2.0, truncation)?;
    if libm::fabs(f_half) < MIN_DERIVATIVE {
        return Err(Error::FlatDerivative {
            x: alpha,
            derivative: f_half,
        });
    }
    let one_minus_f_two_alpha = 1.0 - eval_f(2.0 * alpha, truncation)?;
    let c = finite(-1.0 / (alpha * f_half))?;
    let k = finite(-one_minus_f_two_alpha / (alpha * f_half))?;
    Ok(AsymptoticConstants {
        alpha,
        c,
        k,
        ratio_factor: finite(k / c)?,
        ratio_factor_closed_form: one_minus_f_two_alpha,
        truncation,
        tolerance,
        iterations: root.iterations,
    })
}

impl AsymptoticConstants {
    /// Computed with [`DEFAULT_TRUNCATION`] and [`DEFAULT_TOLERANCE`].
    pub fn standard() -> Result<Self> {
        compute_constants(DEFAULT_TRUNCATION, DEFAULT_TOLERANCE)
    }

    /// `ln(C 2^{C(n,2)} n! |α|⁻ⁿ)`.
    pub fn log_r_estimate(&self, n: usize) -> f64 {
        libm::log(self.c) + shared_log_growth(n) - n as f64 * libm::log(libm::fabs(self.alpha))
    }

    /// `ln(K 2^{C(n,2)} n! (2|α|)⁻ⁿ)`.
    pub fn log_o_estimate(&self, n: usize) -> f64 {
        libm::log(self.k) + shared_log_growth(n)
            - n as f64 * libm::log(2.0 * libm::fabs(self.alpha))
    }

    /// `(K/C) / 2ⁿ`, the estimate of `O_n / R_n`.
    pub fn ratio_estimate(&self, n: usize) -> f64 {
        libm::ldexp(self.ratio_factor, -(n.min(i32::MAX as usize) as i32))
    }
}

/// `ln(2^{C(n,2)} n!)`.
fn shared_log_growth(n: usize) -> f64 {
    let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;
    pairs * core::f64::consts::LN_2 + ln_factorial(n)
}

/// `ln n!` by direct summation of `ln k`.
pub fn ln_factorial(n: usize) -> f64 {
    let mut sum = CompensatedSum::default();
    for k in 2..=n {
        sum.add(libm::log(k as f64));
    }
    sum.total()
}

/// Natural logarithm of a big count, accurate to double precision. `ln 0` is `-∞`.
pub fn ln_count(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = value >> shift;
    let mantissa = top.iter_u64_digits().next().unwrap_or(0) as f64;
    libm::log(mantissa) + shift as f64 * core::f64::consts::LN_2
}
