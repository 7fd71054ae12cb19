use num_bigint::BigInt;
use num_rational::BigRational;

use super::{binom, CoefficientSource, HilbertCoefficients, HilbertError};
use crate::groebner::{artinian_length, buchberger, Ideal, StaircaseCount};
use crate::monomial::MonomialIdeal;
use crate::poly::{solve_linear, RationalMatrix, TermOrder};

/// Solves for `e_0, ..., e_d` from `colengths[k] = lambda(R/F_{b+1+k})`,
/// `k = 0..=d`, assuming the Hilbert-Samuel function is polynomial from `b`
/// on. Returns the coefficients and the successive lengths used.
pub fn fit_from_colengths(
    d: usize,
    b: u32,
    colengths: &[u64],
) -> Result<(Vec<BigRational>, Vec<u64>), HilbertError> {
    assert!(colengths.len() > d, "need d+1 colengths");
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let c: Vec<u64> = (0..d).map(|k| colengths[k + 1] - colengths[k]).collect();
    let mut e = Vec::with_capacity(d + 1);
    if d > 0 {
        let rows: Vec<Vec<BigRational>> = (0..d)
            .map(|k| {
                let j = b as u64 + 1 + k as u64;
                (0..d)
                    .map(|i| q(binom(j + (d - i) as u64 - 1, (d - i - 1) as u64)))
                    .collect()
            })
            .collect();
        let a = RationalMatrix::from_rows(rows)?;
        let rhs: Vec<BigRational> = c.iter().map(|&v| q(v as i64)).collect();
        let x = solve_linear(&a, &rhs)?;
        for (i, xi) in x.into_iter().enumerate() {
            e.push(if i % 2 == 0 { xi } else { -xi });
        }
    }
    // lambda(R/F_{b+1}) = sum_i (-1)^i e_i C(b+d-i, d-i)
    let mut rest = q(colengths[0] as i64);
    for (i, ei) in e.iter().enumerate() {
        let term = ei * q(binom(b as u64 + (d - i) as u64, (d - i) as u64));
        if i % 2 == 0 {
            rest -= term;
        } else {
            rest += term;
        }
    }
    e.push(if d % 2 == 0 { rest } else { -rest });
    Ok((e, c))
}

pub(crate) fn to_integers(values: &[BigRational]) -> Result<Vec<i64>, HilbertError> {
    values
        .iter()
        .map(|v| {
            if !v.is_integer() {
                return Err(HilbertError::NonIntegral(v.to_string()));
            }
            i64::try_from(v.to_integer()).map_err(|_| HilbertError::NonIntegral(v.to_string()))
        })
        .collect()
}

/// Powers of an ideal with their colengths, computed on demand.
pub(crate) struct PowerTower {
    order: TermOrder,
    base: Ideal,
    monomial: Option<MonomialIdeal>,
    powers: Vec<Ideal>,
    colengths: Vec<u64>,
}

impl PowerTower {
    pub(crate) fn new(ideal: &Ideal, order: &TermOrder) -> Self {
        PowerTower {
            order: order.clone(),
            base: ideal.clone(),
            monomial: MonomialIdeal::from_ideal(ideal),
            powers: vec![Ideal::unit(ideal.ring())],
            colengths: vec![0],
        }
    }

    /// `I^j` as a reduced basis (or minimal monomial generators).
    pub(crate) fn power(&mut self, j: usize) -> Result<&Ideal, HilbertError> {
        while self.powers.len() <= j {
            let k = self.powers.len() as u32;
            let next = match &self.monomial {
                Some(m) => m.power(k).to_ideal(),
                None => {
                    let prod = self.powers.last().unwrap().product(&self.base);
                    buchberger(&prod, &self.order)?.to_ideal()
                }
            };
            self.powers.push(next);
        }
        Ok(&self.powers[j])
    }

    /// `lambda(R/I^j)`.
    pub(crate) fn colength(&mut self, j: usize) -> Result<u64, HilbertError> {
        while self.colengths.len() <= j {
            let k = self.colengths.len();
            let order = self.order.clone();
            let is_monomial = self.monomial.is_some();
            let p = self.power(k)?;
            let len = if is_monomial {
                MonomialIdeal::from_ideal(p)
                    .expect("monomial power")
                    .colength()
                    .ok_or(HilbertError::NotArtinian)?
            } else {
                match artinian_length(p, &order)? {
                    StaircaseCount::Finite { total, .. } => total,
                    StaircaseCount::Infinite => return Err(HilbertError::NotArtinian),
                }
            };
            self.colengths.push(len);
        }
        Ok(self.colengths[j])
    }
}

/// Fits `e_0, ..., e_d` on the window starting at `b` from an arbitrary
/// filtration colength function and certifies it against window `b + 1`.
pub(crate) fn certified_from<F>(d: usize, b: u32, mut colength: F) -> Result<HilbertCoefficients, HilbertError>
where
    F: FnMut(usize) -> Result<u64, HilbertError>,
{
    let mut window = |b: u32| -> Result<(Vec<BigRational>, Vec<u64>), HilbertError> {
        let lens = (0..=d)
            .map(|k| colength(b as usize + 1 + k))
            .collect::<Result<Vec<_>, _>>()?;
        fit_from_colengths(d, b, &lens)
    };
    let (first, lengths) = window(b)?;
    let (second, _) = window(b + 1)?;
    if first != second {
        return Err(HilbertError::WindowDisagreement {
            window: b,
            next: b + 1,
            first: first.iter().map(|v| v.to_string()).collect(),
            second: second.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(HilbertCoefficients {
        values: to_integers(&first)?,
        source: CoefficientSource::SamuelFit { window: b },
        lengths,
    })
}

/// First certified window in `0..=max_b`.
pub(crate) fn auto_from<F>(d: usize, max_b: u32, mut colength: F) -> Result<HilbertCoefficients, HilbertError>
where
    F: FnMut(usize) -> Result<u64, HilbertError>,
{
    for b in 0..=max_b {
        match certified_from(d, b, &mut colength) {
            Ok(c) => return Ok(c),
            Err(HilbertError::WindowDisagreement { .. }) | Err(HilbertError::NonIntegral(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(HilbertError::NoStableWindow(max_b))
}

/// Hilbert-Samuel coefficients `e_0, ..., e_d` of an m-primary ideal from the
/// window starting at `b`, certified against the window `b + 1`.
pub fn samuel_fit(ideal: &Ideal, b: u32, order: &TermOrder) -> Result<HilbertCoefficients, HilbertError> {
    let d = ideal.ring().nvars();
    let mut tower = PowerTower::new(ideal, order);
    tower.colength(1)?;
    certified_from(d, b, |j| tower.colength(j))
}

/// Tries windows `0..=max_b` and returns the first certified fit.
pub fn samuel_fit_auto(ideal: &Ideal, order: &TermOrder, max_b: u32) -> Result<HilbertCoefficients, HilbertError> {
    let d = ideal.ring().nvars();
    let mut tower = PowerTower::new(ideal, order);
    tower.colength(1)?;
    auto_from(d, max_b, |j| tower.colength(j))
}
