use std::sync::Arc;

use super::{hilbert_series_monomial, subring, HilbertError};
use crate::monomial::{tpoly, MonomialIdeal};
use crate::poly::{Monomial, PolyRing};

/// An associated prime `(x_i : i in vars)` of a monomial quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedPrime {
    pub vars: Vec<usize>,
    pub dim: usize,
    /// Length multiplicity `lambda(H^0_p((R/I)_p))`.
    pub mult: u64,
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleDecomposition {
    pub components: Vec<MonomialIdeal>,
    pub primes: Vec<AssociatedPrime>,
}

impl IrreducibleDecomposition {
    pub fn intersection(&self, ring: &Arc<PolyRing>) -> MonomialIdeal {
        self.components
            .iter()
            .cloned()
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| MonomialIdeal::unit(ring))
    }
}

fn split(ideal: MonomialIdeal, out: &mut Vec<MonomialIdeal>) {
    if ideal.is_unit() {
        return;
    }
    let n = ideal.nvars();
    let Some(m) = ideal.gens().iter().find(|g| g.as_pure_power().is_none() && !g.is_one()) else {
        out.push(ideal);
        return;
    };
    let i = m.support()[0];
    let a = m.exp(i);
    let pure = Monomial::var_pow(n, i, a);
    let rest = m.quotient_by(&pure);
    let ring = ideal.ring().clone();
    split(ideal.sum(&MonomialIdeal::new(&ring, vec![pure])), out);
    split(ideal.sum(&MonomialIdeal::new(&ring, vec![rest])), out);
}

fn component_key(c: &MonomialIdeal) -> Vec<u32> {
    (0..c.nvars()).map(|i| c.pure_power(i).unwrap_or(u32::MAX)).collect()
}

/// `lambda(big/small)` for monomial ideals `small ⊆ big` with finite-length
/// quotient.
pub(crate) fn length_between(small: &MonomialIdeal, big: &MonomialIdeal) -> u64 {
    let mut diff = tpoly::sub(&small.k_numerator(), &big.k_numerator());
    for &w in small.ring().weights() {
        diff = tpoly::div_one_minus_t_pow(&diff, w).expect("quotient of finite length");
    }
    tpoly::eval_one(&diff) as u64
}

/// Multiplicity of `R/I` along the monomial prime on `vars`.
fn prime_multiplicity(ideal: &MonomialIdeal, vars: &[usize]) -> u64 {
    let sub = subring(ideal.ring(), vars);
    let local = MonomialIdeal::new(
        &sub,
        ideal
            .gens()
            .iter()
            .map(|g| Monomial::new(vars.iter().map(|&i| g.exp(i)).collect()))
            .collect(),
    );
    let (sat, _) = local.saturate_maximal();
    length_between(&local, &sat)
}

pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> IrreducibleDecomposition {
    let mut raw = Vec::new();
    split(ideal.clone(), &mut raw);
    raw.sort_by_key(component_key);
    raw.dedup();
    // a component containing another one is redundant
    let components: Vec<MonomialIdeal> = raw
        .iter()
        .enumerate()
        .filter(|(k, c)| {
            !raw.iter()
                .enumerate()
                .any(|(j, o)| j != *k && c.contains_ideal(o) && (!o.contains_ideal(c) || j < *k))
        })
        .map(|(_, c)| c.clone())
        .collect();

    let n = ideal.nvars();
    let mut prime_sets: Vec<Vec<usize>> = components
        .iter()
        .map(|c| (0..n).filter(|&i| c.pure_power(i).is_some()).collect())
        .collect();
    prime_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    prime_sets.dedup();
    let primes = prime_sets
        .iter()
        .map(|p| AssociatedPrime {
            vars: p.clone(),
            dim: n - p.len(),
            mult: prime_multiplicity(ideal, p),
            minimal: !prime_sets
                .iter()
                .any(|q| q.len() < p.len() && q.iter().all(|v| p.contains(v))),
        })
        .collect();
    IrreducibleDecomposition { components, primes }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub dim: usize,
    pub deg: u64,
    pub gdeg: u64,
    pub adeg: u64,
    /// `lambda(H^0_m(R/I)) = lambda((I : m^∞)/I)`.
    pub h0: u64,
    /// Extended degree for quotients of dimension at most one.
    pub extended_degree: Option<u64>,
}

impl DegreeReport {
    /// For dimension at most one the extended degree coincides with `adeg`.
    pub fn extended_matches_adeg(&self) -> Option<bool> {
        self.extended_degree.map(|e| e == self.adeg)
    }
}

pub fn degree_report(ideal: &MonomialIdeal) -> Result<DegreeReport, HilbertError> {
    let series = hilbert_series_monomial(ideal)?;
    let dec = irreducible_decomposition(ideal);
    let gdeg = dec.primes.iter().filter(|p| p.minimal).map(|p| p.mult).sum();
    let adeg = dec.primes.iter().map(|p| p.mult).sum();
    let (sat, _) = ideal.saturate_maximal();
    let h0 = length_between(ideal, &sat);
    let deg = series.degree() as u64;
    let extended_degree = match series.dim() {
        0 => Some(deg),
        1 => Some(deg + h0),
        _ => None,
    };
    Ok(DegreeReport {
        dim: series.dim(),
        deg,
        gdeg,
        adeg,
        h0,
        extended_degree,
    })
}
