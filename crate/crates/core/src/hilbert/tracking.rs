use std::sync::Arc;

use super::decompose::irreducible_decomposition;
use super::{coefficients_from_series, hilbert_series, hilbert_series_monomial, HilbertError, HilbertSeries};
use crate::groebner::{buchberger, intersect, poly_lcm, saturate_poly, Ideal};
use crate::monomial::MonomialIdeal;
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};

/// `tn = e_1(R/I_top) = e_1(R/I) + ê_0(I_top/I)`, where `ê_0` is the
/// multiplicity of the torsion when it has dimension `d-1` and 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackingNumber {
    pub tn: i64,
    pub dim: usize,
    pub e1: i64,
    pub e1_top: i64,
    /// Dimension of `I_top/I`, `None` when `I` is unmixed.
    pub torsion_dim: Option<usize>,
    /// `e_0(I_top/I)` when the torsion has dimension `d-1`, else 0.
    pub torsion_mult: i64,
    pub top_series: HilbertSeries,
}

fn assemble(series: &HilbertSeries, top: &HilbertSeries) -> TrackingNumber {
    let d = series.dim();
    let e1 = coefficients_from_series(series, 1).e(1);
    let e1_top = coefficients_from_series(top, 1).e(1);
    let torsion = series.sub(top);
    let torsion_dim = (!torsion.is_zero()).then_some(torsion.dim());
    let torsion_mult = if d >= 1 && torsion_dim == Some(d - 1) {
        torsion.degree()
    } else {
        0
    };
    debug_assert_eq!(e1_top, e1 + torsion_mult);
    TrackingNumber {
        tn: e1_top,
        dim: d,
        e1,
        e1_top,
        torsion_dim,
        torsion_mult,
        top_series: top.clone(),
    }
}

/// Intersection of the top-dimensional irreducible components.
pub(crate) fn monomial_top(ideal: &MonomialIdeal, d: usize) -> MonomialIdeal {
    let n = ideal.nvars();
    let dec = irreducible_decomposition(ideal);
    dec.components
        .into_iter()
        .filter(|c| n - (0..n).filter(|&i| c.pure_power(i).is_some()).count() == d)
        .reduce(|a, b| a.intersection(&b))
        .unwrap_or_else(|| MonomialIdeal::unit(ideal.ring()))
}

pub fn tracking_number_monomial(ideal: &MonomialIdeal) -> Result<TrackingNumber, HilbertError> {
    let series = hilbert_series_monomial(ideal)?;
    if series.dim() == 0 {
        return Err(HilbertError::ZeroDimensional);
    }
    let top = monomial_top(ideal, series.dim());
    Ok(assemble(&series, &hilbert_series_monomial(&top)?))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `I : h^∞` for the product `h` of leading coefficients of a basis in an
/// order eliminating the variables outside `u`, or `None` if `I` meets
/// `k[u]`.
fn contraction(ideal: &Ideal, u: &[usize]) -> Result<Option<Ideal>, HilbertError> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let rest: Vec<usize> = (0..n).filter(|i| !u.contains(i)).collect();
    let perm: Vec<usize> = rest.iter().chain(u).copied().collect();
    // position of original variable i in the permuted ring
    let mut map = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        map[i] = pos;
    }
    let pring = PolyRing::build(
        perm.iter().map(|&i| ring.names()[i].clone()).collect(),
        perm.iter().map(|&i| ring.weights()[i]).collect(),
        ring.field().clone(),
        TermOrder::Block(vec![rest.len(), u.len()]),
    )?;
    let pideal = Ideal::new(&pring, ideal.gens().iter().map(|g| g.map_vars(&pring, &map)).collect());
    let gb = buchberger(&pideal, pring.order())?;
    let r = rest.len();
    let mut inverse = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        inverse[pos] = i;
    }
    let mut h: Option<Polynomial> = None;
    for g in gb.polys() {
        let lead_rest: Vec<u32> = g.leading_monomial().unwrap().exps()[..r].to_vec();
        if lead_rest.iter().all(|&e| e == 0) {
            return Ok(None);
        }
        let coeff = Polynomial::from_terms(
            &pring,
            g.terms()
                .iter()
                .filter(|(m, _)| m.exps()[..r] == lead_rest[..])
                .map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e[..r].iter_mut().for_each(|x| *x = 0);
                    (Monomial::new(e), c.clone())
                }),
        )
        .map_vars(&ring, &inverse);
        if coeff.is_constant() {
            continue;
        }
        h = Some(match h {
            None => coeff.primitive(),
            Some(prev) => poly_lcm(&prev, &coeff)?,
        });
    }
    Ok(Some(match h {
        None => ideal.clone(),
        Some(h) => saturate_poly(ideal, &h)?,
    }))
}

/// Intersection of the top-dimensional primary components of a homogeneous
/// ideal whose quotient has dimension `d`.
pub(crate) fn top_part(ideal: &Ideal, d: usize) -> Result<Ideal, HilbertError> {
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return Ok(monomial_top(&m, d).to_ideal());
    }
    let ring: Arc<PolyRing> = ideal.ring().clone();
    let mut acc: Option<Ideal> = None;
    for u in combinations(ring.nvars(), d) {
        if let Some(c) = contraction(ideal, &u)? {
            acc = Some(match acc {
                None => c,
                Some(prev) => intersect(&prev, &c)?,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| ideal.clone()))
}

/// Tracking number of `R/I` for a homogeneous ideal of positive dimension.
pub fn tracking_number(ideal: &Ideal, order: &TermOrder) -> Result<TrackingNumber, HilbertError> {
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return tracking_number_monomial(&m);
    }
    let series = hilbert_series(ideal, order)?;
    if series.dim() == 0 {
        return Err(HilbertError::ZeroDimensional);
    }
    let top = top_part(ideal, series.dim())?;
    Ok(assemble(&series, &hilbert_series(&top, order)?))
}
