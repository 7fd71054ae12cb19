use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::Monomial;
use super::PolyError;

/// Coefficient field of a ring.
///
/// Prime fields are only meant for quick probabilistic checks; every reported
/// value in this crate is computed over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A monomial order. `Block` splits the variables into consecutive blocks,
/// compares block by block and uses graded reverse lexicographic order inside
/// each block; the first block dominates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    DegLex,
    Block(Vec<usize>),
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let n = weights.len();
        match self {
            TermOrder::Lex => lex(a, b, 0, n),
            TermOrder::GrevLex => grevlex(a, b, weights, 0, n),
            TermOrder::DegLex => {
                let da = weighted(a, weights, 0, n);
                let db = weighted(b, weights, 0, n);
                da.cmp(&db).then_with(|| lex(a, b, 0, n))
            }
            TermOrder::Block(sizes) => {
                let mut lo = 0;
                for &size in sizes {
                    let ord = grevlex(a, b, weights, lo, lo + size);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                    lo += size;
                }
                Ordering::Equal
            }
        }
    }

    /// Parses the names accepted on the command line.
    pub fn from_name(name: &str) -> Option<TermOrder> {
        match name {
            "lex" => Some(TermOrder::Lex),
            "grevlex" => Some(TermOrder::GrevLex),
            "deglex" => Some(TermOrder::DegLex),
            _ => None,
        }
    }
}

fn weighted(m: &Monomial, weights: &[u32], lo: usize, hi: usize) -> u64 {
    (lo..hi)
        .map(|i| m.exp(i) as u64 * weights[i] as u64)
        .sum()
}

fn lex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in lo..hi {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &Monomial, b: &Monomial, weights: &[u32], lo: usize, hi: usize) -> Ordering {
    let da = weighted(a, weights, lo, hi);
    let db = weighted(b, weights, lo, hi);
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

/// A polynomial ring `k[x_1, ..., x_n]` with a weighted grading and an
/// active term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: Field,
    order: TermOrder,
}

impl PolyRing {
    /// Rational ring with unit weights and grevlex order.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<PolyRing>, PolyError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let weights = vec![1; names.len()];
        PolyRing::build(names, weights, Field::Rational, TermOrder::GrevLex)
    }

    pub fn build(
        names: Vec<String>,
        weights: Vec<u32>,
        field: Field,
        order: TermOrder,
    ) -> Result<Arc<PolyRing>, PolyError> {
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(PolyError::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {name}")));
            }
        }
        if weights.len() != names.len() {
            return Err(PolyError::InvalidRing("one weight per variable required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(PolyError::InvalidRing("weights must be positive".into()));
        }
        if let TermOrder::Block(sizes) = &order {
            if sizes.iter().sum::<usize>() != names.len() || sizes.contains(&0) {
                return Err(PolyError::InvalidRing(
                    "block sizes must be positive and cover all variables".into(),
                ));
            }
        }
        if let Field::Prime(p) = field {
            if p < 2 || !is_prime(p) {
                return Err(PolyError::InvalidRing(format!("{p} is not prime")));
            }
        }
        Ok(Arc::new(PolyRing {
            names,
            weights,
            field,
            order,
        }))
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Arc<PolyRing>, PolyError> {
        PolyRing::build(self.names.clone(), self.weights.clone(), self.field.clone(), order)
    }

    pub fn with_weights(&self, weights: Vec<u32>) -> Result<Arc<PolyRing>, PolyError> {
        PolyRing::build(self.names.clone(), weights, self.field.clone(), self.order.clone())
    }

    pub fn with_field(&self, field: Field) -> Result<Arc<PolyRing>, PolyError> {
        PolyRing::build(self.names.clone(), self.weights.clone(), field, self.order.clone())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Weighted degree `sum w_i e_i`.
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.exps()
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| e * w)
            .sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    /// Brings a coefficient into the canonical representative of the field.
    pub fn normalize(&self, c: BigRational) -> BigRational {
        match self.field {
            Field::Rational => c,
            Field::Prime(p) => {
                let p = BigInt::from(p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    /// True when both handles describe the same ring.
    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn is_prime(p: u64) -> bool {
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    // a is a unit mod p; a denominator divisible by p has no image in F_p
    assert!(!a.is_zero(), "denominator vanishes in the prime field");
    a.extended_gcd(p).x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let ord = TermOrder::GrevLex;
        let w = [1, 1, 1];
        // x*z vs y^2: same degree, z-exponent decides
        assert_eq!(ord.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0]), &w), Ordering::Less);
        assert_eq!(ord.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0]), &w), Ordering::Greater);
    }

    #[test]
    fn lex_and_deglex() {
        let w = [1, 1];
        assert_eq!(TermOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 5]), &w), Ordering::Greater);
        assert_eq!(TermOrder::DegLex.compare(&m(&[1, 0]), &m(&[0, 5]), &w), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let ord = TermOrder::Block(vec![1, 2]);
        let w = [1, 1, 1];
        assert_eq!(ord.compare(&m(&[1, 0, 0]), &m(&[0, 9, 9]), &w), Ordering::Greater);
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(&["x", "x"]).is_err());
        assert!(PolyRing::new(&[""]).is_err());
        let r = PolyRing::new(&["x", "y"]).unwrap();
        assert!(r.with_weights(vec![1, 0]).is_err());
        assert!(r.with_order(TermOrder::Block(vec![1])).is_err());
        assert_eq!(r.with_weights(vec![1, 2]).unwrap().degree(&m(&[1, 3])), 7);
    }

    #[test]
    fn prime_field_normalizes() {
        let r = PolyRing::new(&["x"]).unwrap().with_field(Field::Prime(7)).unwrap();
        let c = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(r.normalize(c), BigRational::from_integer(BigInt::from(4)));
        let c = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(r.normalize(c), BigRational::from_integer(BigInt::from(6)));
    }
}
