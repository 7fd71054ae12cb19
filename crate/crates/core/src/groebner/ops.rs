use std::sync::Arc;

use num_traits::One;

use super::{buchberger, GroebnerError, Ideal};
use crate::monomial::MonomialIdeal;
use crate::poly::{Field, PolyRing, Polynomial, TermOrder};

/// Standard monomial counts of `R/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StaircaseCount {
    Finite { per_degree: Vec<u64>, total: u64 },
    Infinite,
}

impl StaircaseCount {
    pub fn total(&self) -> Option<u64> {
        match self {
            StaircaseCount::Finite { total, .. } => Some(*total),
            StaircaseCount::Infinite => None,
        }
    }
}

/// Ring `k[w, x_1, ..., x_n]` with `w` eliminated first.
fn extended_ring(ring: &Arc<PolyRing>) -> Result<Arc<PolyRing>, GroebnerError> {
    let mut names = vec!["_w".to_string()];
    names.extend(ring.names().iter().cloned());
    let mut weights = vec![1];
    weights.extend_from_slice(ring.weights());
    let field: Field = ring.field().clone();
    Ok(PolyRing::build(names, weights, field, TermOrder::Block(vec![1, ring.nvars()]))?)
}

fn lift(p: &Polynomial, ext: &Arc<PolyRing>) -> Polynomial {
    let map: Vec<usize> = (1..=p.ring().nvars()).collect();
    p.map_vars(ext, &map)
}

/// Elements of a `w`-eliminating basis that do not involve `w`, pulled back.
fn eliminate_w(basis: &[Polynomial], ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let n = ring.nvars();
    basis
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exp(0) == 0))
        .map(|p| {
            Polynomial::from_terms(
                ring,
                p.terms().iter().map(|(m, c)| {
                    (crate::poly::Monomial::new(m.exps()[1..=n].to_vec()), c.clone())
                }),
            )
        })
        .collect()
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, GroebnerError> {
    let ring = a.ring().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(&ring));
    }
    if let (Some(ma), Some(mb)) = (MonomialIdeal::from_ideal(a), MonomialIdeal::from_ideal(&b.with_ring(&ring))) {
        return Ok(ma.intersection(&mb).to_ideal());
    }
    let ext = extended_ring(&ring)?;
    let w = crate::poly::Polynomial::var(&ext, 0);
    let one_minus_w = &Polynomial::one(&ext) - &w;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&w * &lift(g, &ext));
    }
    for g in b.gens() {
        gens.push(&one_minus_w * &lift(&g.with_ring(&ring), &ext));
    }
    let gb = buchberger(&Ideal::new(&ext, gens), ext.order())?;
    Ok(Ideal::new(&ring, eliminate_w(gb.polys(), &ring)))
}

/// `I : f`, computed as `(I ∩ (f)) / f`.
pub fn colon_poly(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring().clone();
    let f = f.with_ring(&ring);
    if f.is_zero() {
        return Err(GroebnerError::ZeroColon);
    }
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    if f.is_monomial() {
        if let Some(mi) = MonomialIdeal::from_ideal(ideal) {
            return Ok(mi.colon_monomial(f.leading_monomial().unwrap()).to_ideal());
        }
    }
    let meet = intersect(ideal, &Ideal::new(&ring, vec![f.clone()]))?;
    let gens = meet
        .gens()
        .iter()
        .map(|g| g.exact_div(&f).map_err(GroebnerError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&ring, gens))
}

/// `I : J` as the intersection of the colons by the generators of `J`.
pub fn colon(ideal: &Ideal, by: &Ideal) -> Result<Ideal, GroebnerError> {
    if by.is_zero() {
        return Err(GroebnerError::ZeroColon);
    }
    let ring = ideal.ring().clone();
    let by = by.with_ring(&ring);
    if let (Some(mi), Some(mj)) = (MonomialIdeal::from_ideal(ideal), MonomialIdeal::from_ideal(&by)) {
        return Ok(mi.colon(&mj).to_ideal());
    }
    let mut acc: Option<Ideal> = None;
    for g in by.gens() {
        let c = colon_poly(ideal, g)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => intersect(&prev, &c)?,
        });
    }
    let acc = acc.expect("nonzero ideal has generators");
    Ok(buchberger(&acc, ring.order())?.to_ideal())
}

/// `I : J^∞` with the first exponent `k` where `I : J^k = I : J^{k+1}`.
pub fn saturate(ideal: &Ideal, by: &Ideal) -> Result<(Ideal, u32), GroebnerError> {
    let ring = ideal.ring().clone();
    let mut current = buchberger(ideal, ring.order())?.to_ideal();
    let mut k = 0;
    loop {
        let next = colon(&current, by)?;
        if current.contains_ideal(&next)? {
            return Ok((current, k));
        }
        current = buchberger(&next, ring.order())?.to_ideal();
        k += 1;
    }
}

/// `I : f^∞` through `(I, 1 - w f) ∩ k[x]`.
pub fn saturate_poly(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring().clone();
    let f = f.with_ring(&ring);
    if f.is_zero() {
        return Err(GroebnerError::ZeroColon);
    }
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    let ext = extended_ring(&ring)?;
    let w = Polynomial::var(&ext, 0);
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| lift(g, &ext)).collect();
    gens.push(&Polynomial::one(&ext) - &(&w * &lift(&f, &ext)));
    let gb = buchberger(&Ideal::new(&ext, gens), ext.order())?;
    let out = Ideal::new(&ring, eliminate_w(gb.polys(), &ring));
    Ok(buchberger(&out, ring.order())?.to_ideal())
}

/// Standard monomial counts of `R/I` for the initial ideal in `order`.
pub fn artinian_length(ideal: &Ideal, order: &TermOrder) -> Result<StaircaseCount, GroebnerError> {
    let init = buchberger(ideal, order)?.initial_ideal();
    Ok(match init.staircase_counts() {
        None => StaircaseCount::Infinite,
        Some(per_degree) => StaircaseCount::Finite {
            total: per_degree.iter().sum(),
            per_degree,
        },
    })
}

/// Top nonzero degree of an Artinian graded quotient.
pub fn socle_degree(ideal: &Ideal) -> Result<u32, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    match artinian_length(ideal, ideal.ring().order())? {
        StaircaseCount::Infinite => Err(GroebnerError::NotArtinian),
        StaircaseCount::Finite { per_degree, .. } => {
            if per_degree.is_empty() {
                Err(GroebnerError::ZeroQuotient)
            } else {
                Ok(per_degree.len() as u32 - 1)
            }
        }
    }
}

/// A minimal homogeneous generating set, drawn from the given generators in
/// order of increasing degree. Inhomogeneous ideals are returned unchanged.
pub fn minimal_generators(ideal: &Ideal) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring().clone();
    if !ideal.is_homogeneous() {
        return Ok(ideal.clone());
    }
    if let Some(mi) = MonomialIdeal::from_ideal(ideal) {
        return Ok(mi.to_ideal());
    }
    let mut cands: Vec<Polynomial> = ideal.gens().to_vec();
    cands.sort_by_key(|g| g.degree().unwrap_or(0));
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gb = buchberger(&Ideal::zero(&ring), ring.order())?;
    for g in cands {
        if !gb.contains(&g) {
            kept.push(g.primitive());
            gb = buchberger(&Ideal::new(&ring, kept.clone()), ring.order())?;
        }
    }
    Ok(Ideal::new(&ring, kept))
}

/// Generator of `(a) ∩ (b)`, normalized to primitive form.
pub fn poly_lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let ring = a.ring().clone();
    if a.is_zero() || b.is_zero() {
        return Ok(Polynomial::zero(&ring));
    }
    let meet = intersect(&Ideal::new(&ring, vec![a.clone()]), &Ideal::new(&ring, vec![b.clone()]))?;
    let gb = buchberger(&meet, ring.order())?;
    let l = gb
        .polys()
        .iter()
        .min_by_key(|p| p.len())
        .expect("intersection of nonzero principal ideals is nonzero")
        .clone();
    Ok(l.primitive())
}

/// Greatest common divisor as `a b / lcm(a, b)`, primitive.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if a.is_zero() {
        return Ok(b.primitive());
    }
    if b.is_zero() {
        return Ok(a.primitive());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.ring()));
    }
    let l = poly_lcm(a, b)?;
    let g = (a * b).exact_div(&l)?;
    let g = g.primitive();
    debug_assert!(!g.is_zero());
    if g.is_constant() {
        return Ok(Polynomial::constant(a.ring(), num_rational::BigRational::one()));
    }
    Ok(g)
}
