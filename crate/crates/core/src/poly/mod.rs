//! Exact multivariate polynomials over the rationals.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod ring;

use std::sync::Arc;

use thiserror::Error;

pub use matrix::{solve_linear, RationalMatrix};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use polynomial::{rat, Polynomial};
pub use ring::{Field, PolyRing, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
}

impl PolyError {
    pub(crate) fn shifted(self, offset: usize) -> PolyError {
        match self {
            PolyError::Syntax { pos, msg } => PolyError::Syntax {
                pos: pos + offset,
                msg,
            },
            PolyError::UnknownVariable { name, pos } => PolyError::UnknownVariable {
                name,
                pos: pos + offset,
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow,
    ExactDiv,
}

/// Binary polynomial arithmetic. For `Pow` the exponent is taken from `b`,
/// which must be a natural-number constant.
pub fn poly_arith(op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if !PolyRing::same(a.ring(), b.ring()) {
        return Err(PolyError::RingMismatch);
    }
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::ExactDiv => a.exact_div(b),
        ArithOp::Pow => {
            let k = b
                .as_constant()
                .filter(|c| c.is_integer())
                .and_then(|c| u32::try_from(c.to_integer()).ok())
                .ok_or(PolyError::NotDivisible)?;
            Ok(a.pow(k))
        }
    }
}

/// All monomials of weighted degree exactly `degree`, in descending term order.
pub fn graded_component_basis(ring: &Arc<PolyRing>, degree: u32) -> Vec<Monomial> {
    let n = ring.nvars();
    let w = ring.weights();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        for k in 0..=left / w[i] {
            exps[i] = k;
            rec(i + 1, left - k * w[i], w, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, degree, w, &mut exps, &mut out);
    out.sort_by(|a, b| ring.cmp(b, a));
    out
}
