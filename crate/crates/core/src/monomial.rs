//! Monomial ideals and their Hilbert numerators.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::groebner::Ideal;
use crate::poly::{Monomial, PolyRing, Polynomial, TermOrder};

/// Monomial ideal given by its minimal generators, sorted descending in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    ring: Arc<PolyRing>,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.names() == other.ring.names() && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

/// Keeps the divisibility-minimal elements, sorted descending in lex order.
pub(crate) fn minimalize(ring: &PolyRing, mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| TermOrder::Lex.compare(b, a, ring.weights()));
    kept
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            gens: minimalize(ring, gens),
            ring: ring.clone(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        MonomialIdeal::new(ring, vec![Monomial::one(ring.nvars())])
    }

    /// The maximal homogeneous ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        let n = ring.nvars();
        MonomialIdeal::new(ring, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    /// Builds a monomial ideal from polynomial generators; `None` if some
    /// generator has more than one term.
    pub fn from_ideal(ideal: &Ideal) -> Option<Self> {
        let mut gens = Vec::new();
        for g in ideal.gens() {
            if !g.is_monomial() {
                return None;
            }
            gens.push(g.leading_monomial()?.clone());
        }
        Some(MonomialIdeal::new(ideal.ring(), gens))
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(
            &self.ring,
            self.gens.iter().map(|m| Polynomial::monomial(&self.ring, m.clone())).collect(),
        )
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exps().iter().all(|&e| e <= 1))
    }

    /// Smallest `k` with `x_i^k` in the ideal.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter_map(|g| g.as_pure_power().filter(|(v, _)| *v == i).map(|(_, k)| k))
            .min()
            .or_else(|| self.is_unit().then_some(0))
    }

    /// `R/I` has finite length.
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars()).all(|i| self.pure_power(i).is_some())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        MonomialIdeal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(&self.ring, gens)
    }

    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(&self.ring, self.gens.iter().map(|g| g.quotient_by(m)).collect())
    }

    /// `I : J`; the colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .map(|m| self.colon_monomial(m))
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_else(|| MonomialIdeal::unit(&self.ring))
    }

    /// `I : m^infinity` for the maximal ideal `m`, together with the first
    /// exponent at which the chain of colons stabilizes.
    pub fn saturate_maximal(&self) -> (MonomialIdeal, u32) {
        self.saturate(&MonomialIdeal::maximal(&self.ring))
    }

    pub fn saturate(&self, by: &MonomialIdeal) -> (MonomialIdeal, u32) {
        let mut current = self.clone();
        let mut k = 0;
        loop {
            let next = current.colon(by);
            if next == current {
                return (current, k);
            }
            current = next;
            k += 1;
        }
    }

    /// Sets the variables outside `keep` to 1: the extension of `I` to the
    /// localization at the prime generated by `keep`, read back in the
    /// polynomial ring.
    pub fn localize(&self, keep: &[usize]) -> MonomialIdeal {
        let n = self.nvars();
        MonomialIdeal::new(
            &self.ring,
            self.gens
                .iter()
                .map(|g| {
                    let e = (0..n)
                        .map(|i| if keep.contains(&i) { g.exp(i) } else { 0 })
                        .collect();
                    Monomial::new(e)
                })
                .collect(),
        )
    }

    /// Numerator `N(t)` of the Hilbert series of `R/I` written over
    /// `prod_i (1 - t^{w_i})`, computed by pivot recursion.
    pub fn k_numerator(&self) -> Vec<i64> {
        let mut memo = HashMap::new();
        k_numerator_rec(self.gens.clone(), self.ring.weights(), &mut memo)
    }

    /// Per-degree counts of standard monomials when `R/I` is Artinian.
    pub fn staircase_counts(&self) -> Option<Vec<u64>> {
        if !self.is_artinian() {
            return None;
        }
        let mut num = self.k_numerator();
        for &w in self.ring.weights() {
            num = tpoly::div_one_minus_t_pow(&num, w).expect("Artinian quotient has a finite series");
        }
        Some(num.into_iter().map(|c| c as u64).collect())
    }

    /// `lambda(R/I)` for Artinian quotients.
    pub fn colength(&self) -> Option<u64> {
        self.staircase_counts().map(|c| c.iter().sum())
    }

    /// Brute-force enumeration of the standard monomials of an Artinian
    /// quotient. Kept for cross-checks of the numerator recursion.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.nvars();
        let bounds: Vec<u32> = (0..n).map(|i| self.pure_power(i)).collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::new(e.clone());
            if !self.contains(&m) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.is_coprime(b) {
                return false;
            }
        }
    }
    true
}

fn wdeg(m: &Monomial, w: &[u32]) -> usize {
    m.exps().iter().zip(w).map(|(e, w)| (e * w) as usize).sum()
}

fn minimal_set(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

fn k_numerator_rec(
    gens: Vec<Monomial>,
    w: &[u32],
    memo: &mut HashMap<Vec<Monomial>, Vec<i64>>,
) -> Vec<i64> {
    let gens = minimal_set(gens);
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    if pairwise_coprime(&gens) {
        return gens.iter().fold(vec![1], |acc, g| {
            tpoly::mul(&acc, &tpoly::one_minus_t_pow(wdeg(g, w)))
        });
    }
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }
    let n = w.len();
    // pivot variable: the one occurring in the most generators
    let var = (0..n)
        .max_by_key(|&i| (gens.iter().filter(|g| g.exp(i) > 0).count(), std::cmp::Reverse(i)))
        .expect("at least one variable");
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var_pow(n, var, e);

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.quotient_by(&pivot)).collect();

    let a = k_numerator_rec(with_pivot, w, memo);
    let b = k_numerator_rec(colon, w, memo);
    let result = tpoly::add(&a, &tpoly::shift(&b, wdeg(&pivot, w)));
    memo.insert(gens, result.clone());
    result
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|m| Polynomial::monomial(&self.ring, m.clone()).to_string())
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense integer polynomials in one variable `t`, index = exponent.
pub mod tpoly {
    pub fn trim(mut a: Vec<i64>) -> Vec<i64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, v) in a.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in b.iter().enumerate() {
            out[i] += v;
        }
        trim(out)
    }

    pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = b.iter().map(|v| -v).collect();
        add(a, &neg)
    }

    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn shift(a: &[i64], k: usize) -> Vec<i64> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; k];
        out.extend_from_slice(a);
        out
    }

    pub fn one_minus_t_pow(k: usize) -> Vec<i64> {
        if k == 0 {
            return Vec::new();
        }
        let mut out = vec![0; k + 1];
        out[0] = 1;
        out[k] = -1;
        out
    }

    /// Exact quotient by `1 - t^w`, or `None` if it does not divide.
    pub fn div_one_minus_t_pow(a: &[i64], w: u32) -> Option<Vec<i64>> {
        let w = w as usize;
        let a = trim(a.to_vec());
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() <= w {
            return None;
        }
        let qlen = a.len() - w;
        let mut q = vec![0i64; qlen];
        for k in 0..qlen {
            q[k] = a[k] + if k >= w { q[k - w] } else { 0 };
        }
        for (k, &ak) in a.iter().enumerate().skip(qlen) {
            let carried = if k >= w && k - w < qlen { q[k - w] } else { 0 };
            if ak + carried != 0 {
                return None;
            }
        }
        Some(trim(q))
    }

    pub fn eval_one(a: &[i64]) -> i64 {
        a.iter().sum()
    }

    /// `(1 + t + ... + t^{w-1})`.
    pub fn geometric(w: u32) -> Vec<i64> {
        vec![1; w as usize]
    }
}
