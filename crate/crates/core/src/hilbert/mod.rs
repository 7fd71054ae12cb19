//! Hilbert series, Hilbert coefficients and degree functions.

mod decompose;
mod samuel;
mod tracking;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use thiserror::Error;

use crate::groebner::{buchberger, GroebnerError, Ideal};
use crate::monomial::{tpoly, MonomialIdeal};
use crate::poly::{PolyError, PolyRing, TermOrder};

pub use decompose::{degree_report, irreducible_decomposition, AssociatedPrime, DegreeReport, IrreducibleDecomposition};
pub use samuel::{fit_from_colengths, samuel_fit, samuel_fit_auto};
pub(crate) use samuel::{auto_from, certified_from, PowerTower};
pub use tracking::{tracking_number, tracking_number_monomial, TrackingNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("series over a non-standard grading has no (1-t)^d form")]
    WeightedGrading,
    #[error("quotient ring has dimension 0")]
    ZeroDimensional,
    #[error("quotient ring is not Artinian")]
    NotArtinian,
    #[error("Samuel fit disagrees between windows {window} and {next}: {first:?} vs {second:?}")]
    WindowDisagreement {
        window: u32,
        next: u32,
        first: Vec<String>,
        second: Vec<String>,
    },
    #[error("no agreeing window found up to {0}")]
    NoStableWindow(u32),
    #[error("Hilbert coefficient {0} is not an integer")]
    NonIntegral(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `h(t)/(1-t)^d` with `h(1) != 0`, or the zero series for the zero module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    dim: usize,
}

impl HilbertSeries {
    /// Normalizes `numerator/(1-t)^dim` by cancelling common factors.
    pub fn new(numerator: Vec<i64>, dim: usize) -> Self {
        let mut h = tpoly::trim(numerator);
        let mut d = dim;
        if h.is_empty() {
            return HilbertSeries { numerator: h, dim: 0 };
        }
        while d > 0 && tpoly::eval_one(&h) == 0 {
            h = tpoly::div_one_minus_t_pow(&h, 1).expect("h(1) = 0");
            d -= 1;
        }
        HilbertSeries { numerator: h, dim: d }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Multiplicity `h(1)`.
    pub fn degree(&self) -> i64 {
        tpoly::eval_one(&self.numerator)
    }

    pub fn a_invariant(&self) -> i64 {
        self.numerator.len() as i64 - 1 - self.dim as i64
    }

    /// Coefficient of `t^n` in the expansion.
    pub fn hilbert_function(&self, n: u64) -> i64 {
        let d = self.dim as u64;
        let mut acc = 0i64;
        for (j, &h) in self.numerator.iter().enumerate() {
            let j = j as u64;
            if j > n {
                break;
            }
            let c = if d == 0 {
                i64::from(n == j)
            } else {
                binom(n - j + d - 1, d - 1)
            };
            acc += h * c;
        }
        acc
    }

    /// Difference of two series as `delta(t)/(1-t)^d`, normalized.
    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        let d = self.dim.max(other.dim);
        let lift = |s: &HilbertSeries| {
            let mut h = s.numerator.clone();
            for _ in s.dim..d {
                h = tpoly::mul(&h, &[1, -1]);
            }
            h
        };
        HilbertSeries::new(tpoly::sub(&lift(self), &lift(other)), d)
    }
}

pub(crate) fn binom(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let v = binomial(BigInt::from(n), BigInt::from(k));
    i64::try_from(v).expect("binomial fits in i64")
}

fn format_tpoly(h: &[i64], var: &str) -> String {
    if h.iter().all(|&c| c == 0) {
        return "0".into();
    }
    let mut out = String::new();
    for (k, &c) in h.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_tpoly(&self.numerator, "t");
        match self.dim {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/(1 - t)"),
            d => write!(f, "({num})/(1 - t)^{d}"),
        }
    }
}

/// Where a list of Hilbert coefficients came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSource {
    SeriesDerivative,
    SamuelFit { window: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub values: Vec<i64>,
    pub source: CoefficientSource,
    /// The successive lengths `lambda(F_j/F_{j+1})` used by a fit.
    pub lengths: Vec<u64>,
}

impl HilbertCoefficients {
    pub fn e(&self, i: usize) -> i64 {
        self.values.get(i).copied().unwrap_or(0)
    }
}

/// `e_i = h^{(i)}(1)/i!` for `i = 0..=k`.
pub fn coefficients_from_series(series: &HilbertSeries, k: usize) -> HilbertCoefficients {
    let values = (0..=k)
        .map(|i| {
            series
                .numerator
                .iter()
                .enumerate()
                .map(|(j, &h)| h * binom(j as u64, i as u64))
                .sum()
        })
        .collect();
    HilbertCoefficients {
        values,
        source: CoefficientSource::SeriesDerivative,
        lengths: Vec::new(),
    }
}

pub fn a_invariant(series: &HilbertSeries) -> i64 {
    series.a_invariant()
}

/// Series of `R/I` for a monomial ideal in a standard graded ring.
pub fn hilbert_series_monomial(ideal: &MonomialIdeal) -> Result<HilbertSeries, HilbertError> {
    if !ideal.ring().has_unit_weights() {
        return Err(HilbertError::WeightedGrading);
    }
    Ok(HilbertSeries::new(ideal.k_numerator(), ideal.nvars()))
}

/// Numerator over `prod_i (1 - t^{w_i})` for arbitrary positive weights.
pub fn weighted_numerator(ideal: &MonomialIdeal) -> (Vec<i64>, Vec<u32>) {
    (ideal.k_numerator(), ideal.ring().weights().to_vec())
}

/// Series of `R/I` through the initial ideal in `order`.
pub fn hilbert_series(ideal: &Ideal, order: &TermOrder) -> Result<HilbertSeries, HilbertError> {
    if !ideal.is_homogeneous() {
        return Err(HilbertError::NotHomogeneous);
    }
    let init = buchberger(ideal, order)?.initial_ideal();
    hilbert_series_monomial(&init)
}

/// Series of the Veronese subring `sum_n dim R_{step n} t^n` of a polynomial
/// ring in `vars` variables.
pub fn veronese_series(vars: usize, step: u64) -> HilbertSeries {
    assert!(vars >= 1 && step >= 1);
    let v = vars as u64;
    let values: Vec<i64> = (0..v).map(|n| binom(step * n + v - 1, v - 1)).collect();
    let mut h = values;
    for _ in 0..vars {
        h = tpoly::mul(&h, &[1, -1]);
    }
    h.truncate(vars);
    HilbertSeries::new(h, vars)
}

/// Subring of `ring` on the variables in `vars`, keeping weights and field.
pub(crate) fn subring(ring: &Arc<PolyRing>, vars: &[usize]) -> Arc<PolyRing> {
    PolyRing::build(
        vars.iter().map(|&i| ring.names()[i].clone()).collect(),
        vars.iter().map(|&i| ring.weights()[i]).collect(),
        ring.field().clone(),
        TermOrder::GrevLex,
    )
    .expect("subring of a valid ring")
}

#[cfg(test)]
mod tests;
