//! Buchberger's algorithm and the ideal operations built on it.

mod ops;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::monomial::MonomialIdeal;
use crate::poly::{parse_polynomial_list, Monomial, PolyError, PolyRing, Polynomial, TermOrder};

pub use ops::{
    artinian_length, colon, colon_poly, intersect, minimal_generators, poly_gcd, poly_lcm,
    saturate, saturate_poly, socle_degree, StaircaseCount,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("desk scale exceeded: {0}")]
    DeskScaleExceeded(String),
    #[error("colon by the zero ideal")]
    ZeroColon,
    #[error("quotient ring is not Artinian")]
    NotArtinian,
    #[error("quotient ring is zero")]
    ZeroQuotient,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Resource caps for a single Gröbner computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 5000,
            max_degree: 256,
            max_pairs: 2_000_000,
        }
    }
}

/// An ideal given by generators; zero generators and repeats are dropped.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            let g = if PolyRing::same(g.ring(), ring) { g } else { g.with_ring(ring) };
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: kept,
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self, PolyError> {
        Ok(Ideal::new(ring, parse_polynomial_list(ring, text)?))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn with_ring(&self, target: &Arc<PolyRing>) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.with_ring(target)).collect())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| g.with_ring(&self.ring)));
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * &b.with_ring(&self.ring));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Reduced Gröbner basis in the ring's own order.
    pub fn groebner(&self) -> Result<GroebnerBasis, GroebnerError> {
        buchberger(self, self.ring.order())
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.groebner()?.contains(p))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        let g = self.groebner()?;
        Ok(other.gens.iter().all(|p| g.contains(p)))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    /// The ring carrying the basis; its order is the order of the basis.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(&self.ring, self.leading_monomials())
    }

    /// Remainder of `p` on division by the basis, expressed in the ring of `p`.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let q = if PolyRing::same(p.ring(), &self.ring) { p.clone() } else { p.with_ring(&self.ring) };
        let r = reduce(q, &self.polys);
        if PolyRing::same(p.ring(), &self.ring) {
            r
        } else {
            r.with_ring(p.ring())
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys.clone())
    }
}

/// Full reduction of `p` by `basis`: no term of the result is divisible by a
/// leading monomial of the basis.
pub(crate) fn reduce(p: Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<(&Monomial, &BigRational)> = basis
        .iter()
        .filter_map(|g| Some((g.leading_monomial()?, g.leading_coeff()?)))
        .collect();
    reduce_with(p, basis, &leads)
}

fn reduce_with(
    mut p: Polynomial,
    basis: &[Polynomial],
    leads: &[(&Monomial, &BigRational)],
) -> Polynomial {
    let ring = p.ring().clone();
    let mut rem = Vec::new();
    loop {
        let Some((m, c)) = p.terms().first() else {
            break;
        };
        match leads.iter().position(|(lm, _)| lm.divides(m)) {
            Some(k) => {
                let q = m.div(leads[k].0).expect("divisible");
                let coef = c / leads[k].1;
                p = p.sub_mul_term(&basis[k], &q, &coef);
            }
            None => rem.push(p.pop_leading().expect("nonzero")),
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

/// Only the leading term is reduced; used inside the main loop.
fn top_reduce(mut p: Polynomial, basis: &[&Polynomial]) -> Polynomial {
    loop {
        let Some((m, c)) = p.terms().first() else {
            return p;
        };
        let Some(g) = basis.iter().find(|g| g.leading_monomial().unwrap().divides(m)) else {
            return p;
        };
        let q = m.div(g.leading_monomial().unwrap()).expect("divisible");
        let coef = c / g.leading_coeff().unwrap();
        p = p.sub_mul_term(g, &q, &coef);
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let a = f.mul_term(&lcm.div(lf).unwrap(), &f.leading_coeff().unwrap().recip());
    a.sub_mul_term(g, &lcm.div(lg).unwrap(), &g.leading_coeff().unwrap().recip())
}

pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_limits(ideal, order, &Limits::default())
}

/// Reduced Gröbner basis with Gebauer-Möller pair management and the normal
/// selection strategy. The basis is returned in a ring equal to the ideal's
/// ring with `order` as its term order.
pub fn buchberger_with_limits(
    ideal: &Ideal,
    order: &TermOrder,
    limits: &Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = if ideal.ring.order() == order {
        ideal.ring.clone()
    } else {
        ideal.ring.with_order(order.clone())?
    };
    let mut input: Vec<Polynomial> = ideal
        .gens
        .iter()
        .map(|g| g.with_ring(&ring).make_monic())
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(GroebnerBasis {
            polys: vec![Polynomial::one(&ring)],
            ring,
            reduced: true,
        });
    }
    input.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        ring.degree(la).cmp(&ring.degree(lb)).then_with(|| ring.cmp(la, lb))
    });

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;

    let mut queue = input.into_iter();
    loop {
        // feed input generators first, reduced against the current basis
        let h = if let Some(g) = queue.next() {
            let basis: Vec<&Polynomial> =
                polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
            top_reduce(g, &basis)
        } else {
            let Some(k) = select_pair(&ring, &pairs) else {
                break;
            };
            let pair = pairs.swap_remove(k);
            processed += 1;
            if processed > limits.max_pairs {
                return Err(GroebnerError::DeskScaleExceeded(format!(
                    "more than {} S-pairs",
                    limits.max_pairs
                )));
            }
            let s = s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm);
            let basis: Vec<&Polynomial> =
                polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
            top_reduce(s, &basis)
        };
        if h.is_zero() {
            continue;
        }
        let h = h.make_monic();
        if h.is_constant() {
            return Ok(GroebnerBasis {
                polys: vec![Polynomial::one(&ring)],
                ring,
                reduced: true,
            });
        }
        let lh = h.leading_monomial().unwrap().clone();
        if ring.degree(&lh) > limits.max_degree {
            return Err(GroebnerError::DeskScaleExceeded(format!(
                "basis element of degree {} exceeds {}",
                ring.degree(&lh),
                limits.max_degree
            )));
        }
        let t = polys.len();
        gm_update(&ring, &polys, &active, &mut pairs, &h, t);
        for (k, p) in polys.iter().enumerate() {
            if active[k] && lh.divides(p.leading_monomial().unwrap()) {
                active[k] = false;
            }
        }
        polys.push(h);
        active.push(true);
        if active.iter().filter(|a| **a).count() > limits.max_basis {
            return Err(GroebnerError::DeskScaleExceeded(format!(
                "basis larger than {} elements",
                limits.max_basis
            )));
        }
    }

    let basis: Vec<Polynomial> =
        polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    Ok(GroebnerBasis {
        polys: interreduce(&ring, basis),
        ring,
        reduced: true,
    })
}

fn select_pair(ring: &PolyRing, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let better = p
                    .degree
                    .cmp(&q.degree)
                    .then_with(|| ring.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
                    .is_lt();
                if better {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer-Möller update for a new element `h` with index `t`.
fn gm_update(
    ring: &PolyRing,
    polys: &[Polynomial],
    active: &[bool],
    pairs: &mut Vec<Pair>,
    h: &Polynomial,
    t: usize,
) {
    let lh = h.leading_monomial().unwrap();
    let cand: Vec<(usize, Monomial, bool)> = (0..polys.len())
        .filter(|&k| active[k])
        .map(|k| {
            let lg = polys[k].leading_monomial().unwrap();
            (k, lh.lcm(lg), lh.is_coprime(lg))
        })
        .collect();

    // chain criterion among the new pairs
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        if cand[a].2 {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&cand[a].1, &cand[b].1);
            if lb.divides(la) && (la != lb || b < a || cand[b].2) {
                keep[a] = false;
                break;
            }
        }
    }
    // among pairs sharing an lcm, a coprime one certifies the rest
    for a in 0..cand.len() {
        if keep[a] && !cand[a].2 && cand.iter().any(|c| c.2 && c.1 == cand[a].1) {
            keep[a] = false;
        }
    }

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(polys[p.i].leading_monomial().unwrap()) != p.lcm
            && lh.lcm(polys[p.j].leading_monomial().unwrap()) != p.lcm)
    });

    for (k, (g, lcm, coprime)) in cand.into_iter().enumerate() {
        if keep[k] && !coprime {
            pairs.push(Pair {
                i: g,
                j: t,
                degree: ring.degree(&lcm),
                lcm,
            });
        }
    }
}

/// Turns a Gröbner basis into the reduced one: minimal leading monomials,
/// monic, tails fully reduced; sorted by degree and then descending order.
fn interreduce(ring: &Arc<PolyRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in basis {
        let lp = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lp)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let (lm, lc) = minimal[k].terms()[0].clone();
        let mut tail = minimal[k].clone();
        tail.pop_leading();
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, q)| q.clone())
            .collect();
        let tail = reduce(tail, &others);
        let mut terms = vec![(lm, lc)];
        terms.extend(tail.terms().iter().cloned());
        out.push(Polynomial::from_sorted(ring, terms).make_monic());
    }
    out.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        ring.degree(la).cmp(&ring.degree(lb)).then_with(|| ring.cmp(lb, la))
    });
    out
}

pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    basis.normal_form(p)
}

pub fn initial_ideal(ideal: &Ideal, order: &TermOrder) -> Result<MonomialIdeal, GroebnerError> {
    Ok(buchberger(ideal, order)?.initial_ideal())
}

/// Equality of ideals through their reduced bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal, order: &TermOrder) -> Result<bool, GroebnerError> {
    let ga = buchberger(a, order)?;
    let gb = buchberger(b, order)?;
    Ok(ga.polys == gb.polys)
}

#[cfg(test)]
mod tests;
