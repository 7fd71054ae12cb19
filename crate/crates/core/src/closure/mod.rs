//! Integral closure of monomial ideals through their Newton polyhedra.

mod polyhedron;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::hilbert::{auto_from, certified_from, samuel_fit_auto, HilbertCoefficients, HilbertError};
use crate::monomial::MonomialIdeal;
use crate::poly::Monomial;

pub use polyhedron::NewtonPolyhedron;

/// Largest window tried when a fit window is not given.
pub const DEFAULT_MAX_WINDOW: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("ideal is not primary to the maximal ideal")]
    NotArtinian,
    #[error("generators are not all of degree {expected}: found degrees {found:?}")]
    MixedDegrees { expected: u32, found: Vec<u32> },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

impl NewtonPolyhedron {
    pub fn of(ideal: &MonomialIdeal) -> Option<Self> {
        if ideal.is_zero() {
            return None;
        }
        let v = ideal.gens().iter().map(|g| g.exps().to_vec()).collect();
        Some(NewtonPolyhedron::new(v, ideal.nvars()))
    }
}

pub fn newton_membership(w: &[u32], m: u32, p: &NewtonPolyhedron) -> bool {
    assert_eq!(w.len(), p.dim(), "exponent length mismatch");
    p.contains(w, m)
}

/// Calls `f` on every point of the box `0 <= w_i < bounds[i]`.
fn for_each_point(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let mut w = vec![0u32; bounds.len()];
    loop {
        f(&w);
        let mut i = 0;
        loop {
            if i == w.len() {
                return;
            }
            w[i] += 1;
            if w[i] < bounds[i] {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Minimal generators of the closure of `I^m`.
pub fn integral_closure_power(ideal: &MonomialIdeal, m: u32) -> MonomialIdeal {
    assert!(m >= 1, "power must be positive");
    let ring = ideal.ring();
    let Some(p) = NewtonPolyhedron::of(ideal) else {
        return MonomialIdeal::zero(ring);
    };
    let n = ideal.nvars();
    if n == 0 || ideal.is_unit() {
        return MonomialIdeal::unit(ring);
    }
    let top: Vec<u32> = (0..n)
        .map(|i| m * ideal.gens().iter().map(|g| g.exp(i)).max().unwrap())
        .collect();
    let bounds: Vec<u32> = top[..n - 1].iter().map(|b| b + 1).collect();
    let mut gens = Vec::new();
    let mut below = Vec::with_capacity(n - 1);
    for_each_point(&bounds, |prefix| {
        let Some(t) = p.column_threshold(prefix, m) else { return };
        if t > top[n - 1] {
            return;
        }
        // minimal iff stepping down in any other coordinate leaves the set
        let minimal = (0..n - 1).filter(|&j| prefix[j] > 0).all(|j| {
            below.clear();
            below.extend_from_slice(prefix);
            below[j] -= 1;
            p.column_threshold(&below, m).is_none_or(|s| s > t)
        });
        if minimal {
            let mut e = prefix.to_vec();
            e.push(t);
            gens.push(Monomial::new(e));
        }
    });
    MonomialIdeal::new(ring, gens)
}

pub fn integral_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    integral_closure_power(ideal, 1)
}

/// `lambda(R/closure(I^m))` for an m-primary monomial ideal.
pub fn closure_colength(ideal: &MonomialIdeal, m: u32) -> Result<u64, ClosureError> {
    let n = ideal.nvars();
    let pure: Vec<u32> = (0..n)
        .map(|i| ideal.pure_power(i).ok_or(ClosureError::NotArtinian))
        .collect::<Result<_, _>>()?;
    if ideal.is_unit() {
        return Ok(0);
    }
    if m == 0 {
        return Ok(0);
    }
    let p = NewtonPolyhedron::of(ideal).ok_or(ClosureError::NotArtinian)?;
    let cap = m * pure[n - 1];
    let bounds: Vec<u32> = pure[..n - 1].iter().map(|a| m * a).collect();
    let mut total = 0u64;
    for_each_point(&bounds, |prefix| {
        let t = p.column_threshold(prefix, m).map_or(cap, |t| t.min(cap));
        total += t as u64;
    });
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationReport {
    pub s0: usize,
    pub s: usize,
    pub verified_up_to: usize,
    /// `closure(I^n)` for `n = 0..=N`.
    pub closures: Vec<MonomialIdeal>,
}

/// Normalization index `s` and generation index `s0`, checked for powers up
/// to `n_max`.
pub fn normalization_indices(ideal: &MonomialIdeal, n_max: usize) -> NormalizationReport {
    assert!(n_max >= 2, "need N >= 2");
    let ring = ideal.ring();
    let mut closures = vec![MonomialIdeal::unit(ring)];
    for k in 1..=n_max {
        closures.push(integral_closure_power(ideal, k as u32));
    }
    // largest n < N with closure(I^{n+1}) != I closure(I^n)
    let s = (0..n_max)
        .rev()
        .find(|&k| closures[k + 1] != ideal.product(&closures[k]))
        .map_or(0, |k| k + 1);
    let s0 = (1..=n_max)
        .find(|&g| {
            let mut generated: Vec<MonomialIdeal> = closures[..=g.min(n_max)].to_vec();
            for k in g + 1..=n_max {
                let mut acc = MonomialIdeal::zero(ring);
                for i in 1..=g {
                    acc = acc.sum(&closures[i].product(&generated[k - i]));
                }
                if acc != closures[k] {
                    return false;
                }
                generated.push(acc);
            }
            true
        })
        .unwrap_or(n_max);
    NormalizationReport {
        s0,
        s,
        verified_up_to: n_max,
        closures,
    }
}

/// Hilbert coefficients of the filtration `closure(I^n)`, fitted from the
/// window starting at `b`.
pub fn bar_coefficients(ideal: &MonomialIdeal, b: u32) -> Result<HilbertCoefficients, ClosureError> {
    if !ideal.is_artinian() {
        return Err(ClosureError::NotArtinian);
    }
    Ok(certified_from(ideal.nvars(), b, |j| {
        closure_colength(ideal, j as u32).map_err(|_| HilbertError::NotArtinian)
    })?)
}

/// As [`bar_coefficients`], trying windows up to `max_b`.
pub fn bar_coefficients_auto(ideal: &MonomialIdeal, max_b: u32) -> Result<HilbertCoefficients, ClosureError> {
    if !ideal.is_artinian() {
        return Err(ClosureError::NotArtinian);
    }
    Ok(auto_from(ideal.nvars(), max_b, |j| {
        closure_colength(ideal, j as u32).map_err(|_| HilbertError::NotArtinian)
    })?)
}

fn samuel_of(ideal: &MonomialIdeal) -> Result<HilbertCoefficients, ClosureError> {
    if !ideal.is_artinian() {
        return Err(ClosureError::NotArtinian);
    }
    let ring = ideal.ring();
    Ok(samuel_fit_auto(&ideal.to_ideal(), ring.order(), DEFAULT_MAX_WINDOW)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalReport {
    pub e1: i64,
    /// `(d-1)(n^d - n^{d-1})/2`.
    pub target: i64,
    pub birational: bool,
}

/// Compares `e_1(I)` with `(d-1)(n^d - n^{d-1})/2` for an m-primary ideal
/// generated in degree `n`.
pub fn birational_test(ideal: &MonomialIdeal, n: u32) -> Result<BirationalReport, ClosureError> {
    let found: Vec<u32> = ideal.gens().iter().map(|g| g.total_degree()).collect();
    if found.iter().any(|&k| k != n) {
        return Err(ClosureError::MixedDegrees { expected: n, found });
    }
    let e1 = samuel_of(ideal)?.e(1);
    let d = ideal.nvars() as u32;
    let nn = n as i64;
    let target = if d == 0 {
        0
    } else {
        (d as i64 - 1) * (nn.pow(d) - nn.pow(d - 1)) / 2
    };
    Ok(BirationalReport {
        e1,
        target,
        birational: e1 == target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeEstimate {
    pub refinement: u32,
    pub colength: u64,
    /// `n! lambda(R/closure(I^m)) / m^n`.
    pub estimate: BigRational,
    pub e0: i64,
    /// `e0 n^2 / m`.
    pub bound: BigRational,
    pub certified: bool,
}

/// Lattice-point estimate of `n! Vol` of the co-Newton region at refinement
/// `m`, next to the exact multiplicity.
pub fn volume_multiplicity(ideal: &MonomialIdeal, refinement: u32) -> Result<VolumeEstimate, ClosureError> {
    assert!(refinement >= 1, "refinement must be positive");
    let n = ideal.nvars() as u32;
    let colength = closure_colength(ideal, refinement)?;
    let e0 = samuel_of(ideal)?.e(0);
    let big = |v: u64| BigInt::from(v);
    let fact: u64 = (1..=n as u64).product();
    let estimate = BigRational::new(big(fact) * big(colength), big(refinement as u64).pow(n));
    let bound = BigRational::new(BigInt::from(e0) * big((n * n) as u64), big(refinement as u64));
    let diff = &estimate - BigRational::from_integer(BigInt::from(e0));
    let certified = diff.clone().max(-diff) <= bound;
    Ok(VolumeEstimate {
        refinement,
        colength,
        estimate,
        e0,
        bound,
        certified,
    })
}
