use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::PolyRing;
use super::PolyError;

/// Sparse polynomial with exact coefficients. Terms are kept sorted in
/// descending order for the ring's term order, with no zero coefficients and
/// no repeated monomials.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, BigRational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Self {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i), BigRational::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: BigRational) -> Self {
        let c = ring.normalize(c);
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Self {
        Polynomial::term(ring, m, BigRational::one())
    }

    /// Builds the canonical polynomial from arbitrary (possibly repeated,
    /// possibly zero) terms.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<(Monomial, BigRational)> = acc
            .into_iter()
            .map(|(m, c)| (m, ring.normalize(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted descending and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, BigRational)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree in the variables with indices in `vars`.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| vars.iter().map(|&i| m.exp(i)).sum())
            .max()
    }

    pub fn coeff_of(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb.clone() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring.normalize(if negate { ca - cb } else { ca + cb });
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| {
            let c = if negate { -c.clone() } else { c.clone() };
            (m.clone(), ring.normalize(c))
        }));
        Polynomial::from_sorted(ring, out)
    }

    /// `self - c * m * g` in one merge pass.
    pub(crate) fn sub_mul_term(&self, g: &Polynomial, m: &Monomial, c: &BigRational) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |k: usize| -> (Monomial, BigRational) {
            let (n, d) = &g.terms[k];
            (n.mul(m), ring.normalize(-(d * c)))
        };
        while i < self.terms.len() && j < g.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = scaled(j);
            match ring.cmp(ma, &mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    if !cb.is_zero() {
                        out.push((mb, cb));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = ring.normalize(ca + cb);
                    if !v.is_zero() {
                        out.push((mb, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        while j < g.terms.len() {
            let t = scaled(j);
            if !t.1.is_zero() {
                out.push(t);
            }
            j += 1;
        }
        Polynomial::from_sorted(ring, out)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, BigRational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc))
    }

    /// Multiplies by `c * m`. Term order is compatible with multiplication, so
    /// no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), self.ring.normalize(d * c)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.terms.first().ok_or(PolyError::DivisionByZero)?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            let q = m.div(lm).ok_or(PolyError::NotDivisible)?;
            let qc = c / lc;
            rest = rest.merge(&divisor.mul_term(&q, &qc), true);
            quotient.push((q, qc));
        }
        // quotient terms were produced in descending order
        Ok(Polynomial::from_sorted(&self.ring, quotient))
    }

    /// Evaluates the ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !PolyRing::same(&p.ring, &target)) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `map[i]` of the target ring.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &k) in m.exps().iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Same polynomial in a ring that differs only by term order or weights.
    pub fn with_ring(&self, target: &Arc<PolyRing>) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms(target, self.terms.iter().cloned())
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
                let mut e = m.exps().to_vec();
                let k = e[var];
                e[var] -= 1;
                (Monomial::new(e), c * rat(k as i64))
            }),
        )
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let num = self
            .terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * &den / c.denom())));
        let mut factor = BigRational::new(den, num);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// The scalar `c` with `self = c * other`, if one exists.
    pub fn scalar_ratio(&self, other: &Polynomial) -> Option<BigRational> {
        if self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let c = &self.terms[0].1 / &other.terms[0].1;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb || *ca != cb * &c {
                return None;
            }
        }
        Some(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

fn fmt_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.names()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.names()[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", fmt_monomial(&self.ring, m))?;
            } else {
                write!(f, "{}*{}", a, fmt_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}
