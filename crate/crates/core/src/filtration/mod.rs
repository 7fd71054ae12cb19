//! Powers, reductions and the Sally fiber of m-primary ideals.


use thiserror::Error;

use crate::groebner::{artinian_length, buchberger, GroebnerError, Ideal, StaircaseCount};
use crate::hilbert::{samuel_fit_auto, HilbertError, PowerTower};
use crate::monomial::MonomialIdeal;

/// Largest window tried for the Hilbert-Samuel fit of `e_1`.
const MAX_WINDOW: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("J is not contained in I")]
    NotContained,
    #[error("quotient ring is not Artinian")]
    NotArtinian,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// `I^n`, as a reduced Gröbner basis in the ring's order.
pub fn ideal_power(ideal: &Ideal, n: u32) -> Result<Ideal, FiltrationError> {
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return Ok(m.power(n).to_ideal());
    }
    let mut acc = Ideal::unit(ideal.ring());
    for _ in 0..n {
        acc = buchberger(&acc.product(ideal), ideal.ring().order())?.to_ideal();
    }
    Ok(acc)
}

fn colength(ideal: &Ideal) -> Result<u64, FiltrationError> {
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return m.colength().ok_or(FiltrationError::NotArtinian);
    }
    match artinian_length(ideal, ideal.ring().order())? {
        StaircaseCount::Finite { total, .. } => Ok(total),
        StaircaseCount::Infinite => Err(FiltrationError::NotArtinian),
    }
}

fn check_contained(j: &Ideal, i: &Ideal) -> Result<(), FiltrationError> {
    if i.contains_ideal(j)? {
        Ok(())
    } else {
        Err(FiltrationError::NotContained)
    }
}

/// Incremental `I^k` and `J I^k`.
struct Pair {
    tower: PowerTower,
    j: Ideal,
}

impl Pair {
    fn new(i: &Ideal, j: &Ideal) -> Self {
        Pair {
            tower: PowerTower::new(i, i.ring().order()),
            j: j.clone(),
        }
    }

    fn j_times_power(&mut self, k: usize) -> Result<Ideal, FiltrationError> {
        let p = self.tower.power(k)?.product(&self.j);
        Ok(buchberger(&p, p.ring().order())?.to_ideal())
    }

    /// `lambda(I^k / J I^{k-1})`.
    fn f(&mut self, k: usize) -> Result<u64, FiltrationError> {
        let low = colength(&self.j_times_power(k - 1)?)?;
        let high = self.tower.colength(k).map_err(|e| match e {
            HilbertError::NotArtinian => FiltrationError::NotArtinian,
            e => e.into(),
        })?;
        Ok(low - high)
    }
}

/// Least `r <= maxr` with `I^{r+1} = J I^r`.
pub fn reduction_number(j: &Ideal, i: &Ideal, maxr: usize) -> Result<Option<usize>, FiltrationError> {
    check_contained(j, i)?;
    let mut pair = Pair::new(i, j);
    for r in 0..=maxr {
        let ji = pair.j_times_power(r)?;
        let next = pair.tower.power(r + 1)?.clone();
        // J I^r ⊆ I^{r+1} always holds
        if ji.contains_ideal(&next)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// `d lambda(R/J) - 2d + 1`.
pub fn reduction_bound(j: &Ideal) -> Result<i64, FiltrationError> {
    let d = j.ring().nvars() as i64;
    Ok(d * colength(j)? as i64 - 2 * d + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FSequence {
    /// `f_1, ..., f_N`.
    pub values: Vec<u64>,
    pub reduction_number: Option<usize>,
}

impl FSequence {
    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }
}

/// `f_j = lambda(R/J I^{j-1}) - lambda(R/I^j)` for `j = 1..=N`; `N` defaults
/// to the reduction-number bound.
pub fn f_sequence(i: &Ideal, j: &Ideal, n: Option<usize>) -> Result<FSequence, FiltrationError> {
    check_contained(j, i)?;
    let n = match n {
        Some(n) => n,
        None => reduction_bound(j)?.max(1) as usize,
    };
    let mut pair = Pair::new(i, j);
    let mut values = Vec::with_capacity(n);
    let mut r = None;
    for k in 1..=n {
        // after the reduction number every term vanishes
        let f = if r.is_some() { 0 } else { pair.f(k)? };
        if f == 0 && r.is_none() {
            r = Some(k - 1);
        }
        values.push(f);
    }
    if r.is_none() && pair.f(n + 1)? == 0 {
        r = Some(n);
    }
    Ok(FSequence {
        values,
        reduction_number: r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AlmostCohenMacaulay,
    NotAlmostCohenMacaulay,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuckabaReport {
    pub e1: i64,
    pub f: FSequence,
    pub f_sum: u64,
    pub verdict: Verdict,
    /// `e_1 - f_1` when positive.
    pub sally_multiplicity: Option<i64>,
    pub hypothesis: &'static str,
}

pub const HUCKABA_HYPOTHESIS: &str =
    "polynomial ring localized at the homogeneous maximal ideal (Cohen-Macaulay), J a minimal reduction of I";

/// Compares `e_1(I)` with `sum f_j`: equality exactly when the Rees algebra
/// of `I` is almost Cohen-Macaulay.
pub fn huckaba_test(i: &Ideal, j: &Ideal, n: Option<usize>) -> Result<HuckabaReport, FiltrationError> {
    let f = f_sequence(i, j, n)?;
    let e1 = samuel_fit_auto(i, i.ring().order(), MAX_WINDOW)?.e(1);
    let f_sum = f.sum();
    let verdict = match f.reduction_number {
        None => Verdict::Inconclusive,
        Some(_) if e1 == f_sum as i64 => Verdict::AlmostCohenMacaulay,
        Some(_) if e1 < f_sum as i64 => Verdict::NotAlmostCohenMacaulay,
        Some(_) => Verdict::Inconclusive,
    };
    let f1 = f.values.first().copied().unwrap_or(0) as i64;
    Ok(HuckabaReport {
        e1,
        f_sum,
        sally_multiplicity: (e1 - f1 > 0).then_some(e1 - f1),
        f,
        verdict,
        hypothesis: HUCKABA_HYPOTHESIS,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionBoundReport {
    pub reduction_number: Option<usize>,
    pub colength_j: u64,
    pub bound: i64,
    pub holds: bool,
}

/// Checks `red_J(I) <= d lambda(R/J) - 2d + 1`, searching `r` up to the
/// bound.
pub fn reduction_bound_check(i: &Ideal, j: &Ideal) -> Result<ReductionBoundReport, FiltrationError> {
    let colength_j = colength(j)?;
    let bound = reduction_bound(j)?;
    let r = reduction_number(j, i, bound.max(0) as usize)?;
    Ok(ReductionBoundReport {
        reduction_number: r,
        colength_j,
        bound,
        holds: r.is_some_and(|r| r as i64 <= bound),
    })
}
