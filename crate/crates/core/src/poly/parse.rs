//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' natural)?
//! atom   := natural | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/2*z` is a rational
//! coefficient while `x/y` is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::polynomial::Polynomial;
use super::ring::PolyRing;
use super::PolyError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Num(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(PolyError::Syntax {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.as_constant() {
                    Some(k) if !num_traits::Zero::is_zero(&k) => acc = acc.scale(&k.recip()),
                    Some(_) => {
                        return Err(PolyError::Syntax {
                            pos: at,
                            msg: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(PolyError::Syntax {
                            pos: at,
                            msg: "division by a non-constant".into(),
                        })
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let k: u32 = match n.try_into() {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a natural exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(PolyError::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => format!("'{c}'"),
    }
}

/// Parses one polynomial. Positions in errors are byte offsets into `text`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: text.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_polynomial_list(
    ring: &Arc<PolyRing>,
    text: &str,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let p = parse_polynomial(ring, piece).map_err(|e| e.shifted(offset))?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn zero_parses() {
        assert!(parse_polynomial(&ring(), "0").unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let p = parse_polynomial(&r, "(x+y)*(x-y)").unwrap();
        assert_eq!(p, parse_polynomial(&r, "x^2 - y^2").unwrap());
    }

    #[test]
    fn rational_coefficients() {
        let r = ring();
        let p = parse_polynomial(&r, "x^2*y - 3/2*z").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.terms()[0].1, BigRational::from_integer(1.into()));
        assert_eq!(
            p.terms()[1].1,
            BigRational::new(BigInt::from(-3), BigInt::from(2))
        );
        assert_eq!(p.to_string(), "x^2*y - 3/2*z");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial(&r, "x + w"),
            Err(PolyError::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse_polynomial(&r, "x + * y"),
            Err(PolyError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "x/y"),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "(x"),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "x $"),
            Err(PolyError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn list_offsets() {
        let r = ring();
        let l = parse_polynomial_list(&r, "x^2, y*z,z").unwrap();
        assert_eq!(l.len(), 3);
        assert!(matches!(
            parse_polynomial_list(&r, "x, q"),
            Err(PolyError::UnknownVariable { pos: 3, .. })
        ));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(i64, i64, [u32; 3])>> {
        prop::collection::vec((-9i64..10, 1i64..5, [0u32..4, 0u32..4, 0u32..4]), 0..6)
    }

    fn build(r: &Arc<PolyRing>, spec: &[(i64, i64, [u32; 3])]) -> Polynomial {
        Polynomial::from_terms(
            r,
            spec.iter().map(|(n, d, e)| {
                (
                    super::super::Monomial::new(e.to_vec()),
                    BigRational::new(BigInt::from(*n), BigInt::from(*d)),
                )
            }),
        )
    }

    fn arb_small() -> impl Strategy<Value = Vec<(i64, i64, [u32; 3])>> {
        prop::collection::vec((-9i64..10, 1i64..5, [0u32..3, 0u32..3, 0u32..2]), 0..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn print_parse_roundtrip(spec in arb_poly()) {
            let r = ring();
            let p = build(&r, &spec);
            let q = parse_polynomial(&r, &p.to_string()).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(p.to_string(), q.to_string());
        }

        #[test]
        fn substitution_respects_ring_operations(a in arb_small(), b in arb_small(), imgs in prop::collection::vec(arb_small(), 3)) {
            let r = ring();
            let (p, q) = (build(&r, &a), build(&r, &b));
            let images: Vec<Polynomial> = imgs.iter().map(|s| build(&r, s)).collect();
            let sp = p.substitute(&images).unwrap();
            let sq = q.substitute(&images).unwrap();
            prop_assert_eq!((&p * &q).substitute(&images).unwrap(), &sp * &sq);
            prop_assert_eq!((&p + &q).substitute(&images).unwrap(), &sp + &sq);
        }
    }
}
