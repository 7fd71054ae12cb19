//! Implicit equations of rational plane curves through Sylvester forms.

mod forms;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::filtration::{reduction_number, FiltrationError};
use crate::groebner::{
    artinian_length, buchberger, colon, ideal_equal, minimal_generators, poly_gcd, GroebnerError, Ideal,
    StaircaseCount,
};
use crate::hilbert::{hilbert_series, HilbertError};
use crate::poly::{Monomial, PolyError, PolyRing, Polynomial, RationalMatrix};

pub use forms::{
    balanced, basic_sylvester, chain_mu1, coeff_degree, coefficient_matrix, decompose, determinant, st_degree,
    SylvesterForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SylvesterError {
    #[error("the parameter ring must have exactly two variables")]
    NotBinaryRing,
    #[error("content generators must be forms in s, t only")]
    NotBinary,
    #[error("expected three nonzero forms of one degree")]
    BadForms,
    #[error("the forms are linearly dependent; the image is a line")]
    LinearlyDependent,
    #[error("the forms have a common factor")]
    CommonFactor,
    #[error("variable name {0} is reserved")]
    NameCollision(String),
    #[error("not homogeneous in s, t: {0}")]
    NotBihomogeneous(String),
    #[error("form is not in the content ideal")]
    NotInContent,
    #[error("scheme needs mu = {expected}, found {found}")]
    MuMismatch { expected: u32, found: u32 },
    #[error("no elimination scheme for degree {n} with mu = {mu}")]
    SchemeNotCovered { n: u32, mu: u32 },
    #[error("determinant vanishes")]
    ZeroDeterminant,
    #[error("determinant is not a power of the elimination equation: leftover {0}")]
    NotAPower(String),
    #[error("resultant vanishes identically")]
    ZeroResultant,
    #[error("generators do not form a regular sequence")]
    NotRegularSequence,
    #[error("colon ideal is the unit ideal")]
    UnitColon,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

/// Names of the image coordinates.
pub const T_NAMES: [&str; 3] = ["T1", "T2", "T3"];

/// Three binary forms of a common degree without common factor.
#[derive(Debug, Clone)]
pub struct Parametrization {
    ring: Arc<PolyRing>,
    forms: [Polynomial; 3],
    degree: u32,
    biform_ring: Arc<PolyRing>,
    t_ring: Arc<PolyRing>,
}

/// Coefficient of `s^(n-j) t^j`.
fn coeff(p: &Polynomial, n: u32, j: u32) -> BigRational {
    p.coeff_of(&Monomial::new(vec![n - j, j]))
}

impl Parametrization {
    pub fn new(ring: &Arc<PolyRing>, forms: [Polynomial; 3]) -> Result<Self, SylvesterError> {
        if ring.nvars() != 2 {
            return Err(SylvesterError::NotBinaryRing);
        }
        if let Some(name) = ring.names().iter().find(|n| T_NAMES.contains(&n.as_str())) {
            return Err(SylvesterError::NameCollision(name.clone()));
        }
        let forms = forms.map(|f| f.with_ring(ring));
        let degree = forms[0].degree().ok_or(SylvesterError::BadForms)?;
        if degree == 0 || forms.iter().any(|f| f.is_zero() || !f.is_homogeneous() || f.degree() != Some(degree)) {
            return Err(SylvesterError::BadForms);
        }
        let rows: Vec<Vec<BigRational>> = forms
            .iter()
            .map(|f| (0..=degree).map(|j| coeff(f, degree, j)).collect())
            .collect();
        if RationalMatrix::from_rows(rows)?.rank() < 3 {
            return Err(SylvesterError::LinearlyDependent);
        }
        let ideal = Ideal::new(ring, forms.to_vec());
        if !matches!(artinian_length(&ideal, ring.order())?, StaircaseCount::Finite { .. }) {
            return Err(SylvesterError::CommonFactor);
        }
        let mut names: Vec<String> = ring.names().to_vec();
        names.extend(T_NAMES.iter().map(|s| s.to_string()));
        Ok(Parametrization {
            biform_ring: PolyRing::new(&names)?,
            t_ring: PolyRing::new(&T_NAMES)?,
            ring: ring.clone(),
            forms,
            degree,
        })
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Self, SylvesterError> {
        let list = crate::poly::parse_polynomial_list(ring, text)?;
        let forms: [Polynomial; 3] = list.try_into().map_err(|_| SylvesterError::BadForms)?;
        Parametrization::new(ring, forms)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial; 3] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `k[s, t, T1, T2, T3]`.
    pub fn biform_ring(&self) -> &Arc<PolyRing> {
        &self.biform_ring
    }

    /// `k[T1, T2, T3]`.
    pub fn t_ring(&self) -> &Arc<PolyRing> {
        &self.t_ring
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.forms.to_vec())
    }

    /// Image of a biform under `T_i -> f_i`.
    pub fn substitute_biform(&self, p: &Polynomial) -> Result<Polynomial, SylvesterError> {
        let images = vec![
            Polynomial::var(&self.ring, 0),
            Polynomial::var(&self.ring, 1),
            self.forms[0].clone(),
            self.forms[1].clone(),
            self.forms[2].clone(),
        ];
        Ok(p.substitute(&images)?)
    }

    /// Image of a polynomial in `T` under `T_i -> f_i`.
    pub fn substitute_t(&self, p: &Polynomial) -> Result<Polynomial, SylvesterError> {
        Ok(p.substitute(&self.forms)?)
    }

    fn to_biform(&self, p: &Polynomial) -> Polynomial {
        p.map_vars(&self.biform_ring, &[0, 1])
    }

    /// An `s, t`-free biform as a polynomial in `T`.
    fn biform_to_t(&self, p: &Polynomial) -> Polynomial {
        debug_assert!(p.terms().iter().all(|(m, _)| m.exp(0) == 0 && m.exp(1) == 0));
        p.map_vars(&self.t_ring, &[0, 0, 0, 1, 2])
    }
}

/// The two columns of the Hilbert-Burch matrix, of degrees `mu <= n - mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuBasis {
    pub mu: u32,
    pub degrees: (u32, u32),
    pub columns: [[Polynomial; 3]; 2],
}

impl MuBasis {
    /// The moving forms `sum_i T_i p_i` of both columns.
    pub fn moving_forms(&self, p: &Parametrization) -> (Polynomial, Polynomial) {
        let ring = p.biform_ring();
        let form = |col: &[Polynomial; 3]| {
            col.iter().enumerate().fold(Polynomial::zero(ring), |acc, (i, c)| {
                &acc + &(&Polynomial::var(ring, 2 + i) * &p.to_biform(c))
            })
        };
        (form(&self.columns[0]), form(&self.columns[1]))
    }

    /// Signed 2x2 minors of the columns.
    pub fn minors(&self) -> [Polynomial; 3] {
        let [p, q] = &self.columns;
        [
            &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
            &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
            &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
        ]
    }
}

/// Linear system for syzygies of degree `d`; unknown `i (d+1) + j` is the
/// coefficient of `s^(d-j) t^j` in `a_i`.
fn syzygy_system(p: &Parametrization, d: u32) -> RationalMatrix {
    let n = p.degree;
    let rows = (n + d + 1) as usize;
    let cols = 3 * (d + 1) as usize;
    let mut m = RationalMatrix::zeros(rows, cols);
    for (i, f) in p.forms.iter().enumerate() {
        for j in 0..=d {
            for k in 0..=n {
                let c = coeff(f, n, k);
                if c.is_zero() {
                    continue;
                }
                let row = (j + k) as usize;
                let col = i * (d + 1) as usize + j as usize;
                let v = m.get(row, col) + &c;
                m.set(row, col, v);
            }
        }
    }
    m
}

fn vector_to_column(p: &Parametrization, d: u32, v: &[BigRational]) -> [Polynomial; 3] {
    std::array::from_fn(|i| {
        Polynomial::from_terms(
            &p.ring,
            (0..=d).map(|j| (Monomial::new(vec![d - j, j]), v[i * (d + 1) as usize + j as usize].clone())),
        )
    })
}

fn column_vector(col: &[Polynomial; 3], n: u32) -> Vec<BigRational> {
    col.iter().flat_map(|c| (0..=n).map(move |j| coeff(c, n, j))).collect()
}

/// Minimal-degree syzygies found degree by degree from the exact kernels.
pub fn mu_basis(p: &Parametrization) -> Result<MuBasis, SylvesterError> {
    let n = p.degree;
    let (mu, first_kernel) = (1..=n)
        .find_map(|d| {
            let k = syzygy_system(p, d).nullspace();
            (!k.is_empty()).then_some((d, k))
        })
        .ok_or(SylvesterError::CommonFactor)?;
    let first = vector_to_column(p, mu, &first_kernel[0]);
    let nu = n - mu;
    let second = if nu == mu {
        first_kernel.get(1).map(|v| vector_to_column(p, mu, v))
    } else {
        // kernel vectors in degree nu outside the multiples of the first column
        let mut span: Vec<Vec<BigRational>> = (0..=nu - mu)
            .map(|j| {
                let m = Polynomial::monomial(&p.ring, Monomial::new(vec![nu - mu - j, j]));
                let col: [Polynomial; 3] = std::array::from_fn(|i| &first[i] * &m);
                column_vector(&col, nu)
            })
            .collect();
        let base = RationalMatrix::from_rows(span.clone())?.rank();
        let mut found = None;
        for v in syzygy_system(p, nu).nullspace() {
            span.push(v.clone());
            if RationalMatrix::from_rows(span.clone())?.rank() > base {
                found = Some(vector_to_column(p, nu, &v));
                break;
            }
            span.pop();
        }
        found
    };
    let second = second.ok_or(SylvesterError::CommonFactor)?;
    let basis = MuBasis {
        mu,
        degrees: (mu, nu),
        columns: [first, second],
    };
    // the minors regenerate the forms up to one scalar
    let minors = basis.minors();
    let ratio = minors[0].scalar_ratio(&p.forms[0]);
    if ratio.is_none() || (0..3).any(|i| minors[i].scalar_ratio(&p.forms[i]) != ratio) {
        return Err(SylvesterError::CommonFactor);
    }
    Ok(basis)
}

/// The ideal of `k[s, t]` generated by the entries of a column.
pub fn content_pair(ring: &Arc<PolyRing>, column: &[Polynomial; 3]) -> Result<Ideal, SylvesterError> {
    let ideal = Ideal::new(ring, column.to_vec());
    Ok(minimal_generators(&buchberger(&ideal, ring.order())?.to_ideal())?)
}

#[derive(Debug, Clone)]
pub struct CmReport {
    pub contents: [Ideal; 2],
    pub cohen_macaulay: bool,
    /// For monomial forms containing `s^n, t^n`: whether `I^2 = J I` for
    /// `J = (s^n, t^n)`.
    pub monomial_check: Option<bool>,
}

pub fn cm_rees_test(p: &Parametrization) -> Result<CmReport, SylvesterError> {
    let basis = mu_basis(p)?;
    let c0 = content_pair(&p.ring, &basis.columns[0])?;
    let c1 = content_pair(&p.ring, &basis.columns[1])?;
    let cm = ideal_equal(&c0, &c1, p.ring.order())? && c0.gens().len() <= 2;
    let n = p.degree;
    let monomial_check = if p.forms.iter().all(|f| f.is_monomial()) {
        let pure = |i: usize| {
            let mut e = vec![0, 0];
            e[i] = n;
            Monomial::new(e)
        };
        let has = |m: &Monomial| p.forms.iter().any(|f| f.leading_monomial() == Some(m));
        if has(&pure(0)) && has(&pure(1)) {
            let j = Ideal::new(
                &p.ring,
                vec![Polynomial::monomial(&p.ring, pure(0)), Polynomial::monomial(&p.ring, pure(1))],
            );
            let r = reduction_number(&j, &p.ideal(), 2)?;
            Some(r.is_some_and(|r| r <= 1))
        } else {
            None
        }
    } else {
        None
    };
    Ok(CmReport {
        contents: [c0, c1],
        cohen_macaulay: cm,
        monomial_check,
    })
}

#[derive(Debug, Clone)]
pub struct EliminationResult {
    pub scheme: &'static str,
    pub mu: u32,
    /// The Sylvester forms produced on the way.
    pub forms: Vec<SylvesterForm>,
    /// Raw determinant, in `k[T]`.
    pub d: Polynomial,
    /// Primitive elimination equation with `D = c F^k`.
    pub f: Polynomial,
    pub k: u32,
    pub c: BigRational,
    pub edeg: u32,
    pub birational: bool,
    /// `F` is a scalar multiple of the square-free resultant.
    pub oracle_agrees: bool,
    /// Every form, `D` and `F` vanish under `T_i -> f_i`.
    pub substitution_vanishes: bool,
}

fn strip_t1(r: &Polynomial) -> Polynomial {
    let k = r.terms().iter().map(|(m, _)| m.exp(0)).min().unwrap_or(0);
    if k == 0 {
        return r.clone();
    }
    Polynomial::from_terms(
        r.ring(),
        r.terms().iter().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e[0] -= k;
            (Monomial::new(e), c.clone())
        }),
    )
}

/// `Res_t(T1 f2 - T2 f1, T1 f3 - T3 f1)` at `s = 1`, without its `T1`
/// content, made square-free.
pub fn resultant_oracle(p: &Parametrization) -> Result<Polynomial, SylvesterError> {
    let ring = &p.t_ring;
    let n = p.degree;
    let tv = |i: usize| Polynomial::var(ring, i);
    let konst = |c: BigRational| Polynomial::constant(ring, c);
    let line = |a: usize| -> Vec<Polynomial> {
        // coefficients of t^j for j = 0..=n
        (0..=n)
            .map(|j| &(&tv(0) * &konst(coeff(&p.forms[a], n, j))) - &(&tv(a) * &konst(coeff(&p.forms[0], n, j))))
            .collect()
    };
    let trim = |mut v: Vec<Polynomial>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    };
    let (a, b) = (trim(line(1)), trim(line(2)));
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let r = if size == 0 {
        Polynomial::one(ring)
    } else {
        let mut m = vec![vec![Polynomial::zero(ring); size]; size];
        for i in 0..db {
            for (j, c) in a.iter().rev().enumerate() {
                m[i][i + j] = c.clone();
            }
        }
        for i in 0..da {
            for (j, c) in b.iter().rev().enumerate() {
                m[db + i][i + j] = c.clone();
            }
        }
        determinant(&m)
    };
    if r.is_zero() {
        return Err(SylvesterError::ZeroResultant);
    }
    let r = strip_t1(&r);
    let mut g = r.clone();
    for i in 0..3 {
        let d = r.derivative(i);
        if !d.is_zero() {
            g = poly_gcd(&g, &d)?;
        }
    }
    Ok(r.exact_div(&g)?.primitive())
}

/// `(F, k, c)` with `D = c F^k`, `F` taken from the resultant.
fn extract_power(d: &Polynomial, oracle: &Polynomial) -> Result<(Polynomial, u32, BigRational), SylvesterError> {
    if d.is_zero() {
        return Err(SylvesterError::ZeroDeterminant);
    }
    let mut f = oracle.primitive();
    if d.exact_div(&f).is_err() {
        f = poly_gcd(oracle, d)?;
    }
    if f.is_constant() {
        return Err(SylvesterError::NotAPower(d.to_string()));
    }
    let mut q = d.clone();
    let mut k = 0;
    while let Ok(next) = q.exact_div(&f) {
        q = next;
        k += 1;
    }
    let c = q.as_constant().ok_or_else(|| SylvesterError::NotAPower(q.to_string()))?;
    Ok((f, k, c))
}

fn finish(
    p: &Parametrization,
    scheme: &'static str,
    mu: u32,
    forms: Vec<SylvesterForm>,
    d_biform: &Polynomial,
) -> Result<EliminationResult, SylvesterError> {
    if d_biform.is_zero() {
        return Err(SylvesterError::ZeroDeterminant);
    }
    let d = p.biform_to_t(d_biform);
    let oracle = resultant_oracle(p)?;
    let (f, k, c) = extract_power(&d, &oracle)?;
    let mut vanishes = p.substitute_t(&d)?.is_zero() && p.substitute_t(&f)?.is_zero();
    for h in &forms {
        vanishes &= p.substitute_biform(&h.poly)?.is_zero();
    }
    let edeg = f.degree().unwrap_or(0);
    Ok(EliminationResult {
        scheme,
        mu,
        oracle_agrees: f.scalar_ratio(&oracle).is_some(),
        forms,
        d,
        edeg,
        birational: edeg == p.degree,
        f,
        k,
        c,
        substitution_vanishes: vanishes,
    })
}

/// The chain `h_{i+1} = det(f, h_i)_{(s,t)}` for `mu = 1`.
pub fn elimination_chain_mu1(p: &Parametrization) -> Result<EliminationResult, SylvesterError> {
    let basis = mu_basis(p)?;
    if basis.mu != 1 {
        return Err(SylvesterError::MuMismatch {
            expected: 1,
            found: basis.mu,
        });
    }
    let (f, g) = basis.moving_forms(p);
    let forms = chain_mu1(&f, &g)?;
    let last = forms.last().map(|h| h.poly.clone()).unwrap_or(g);
    finish(p, "chain", 1, forms, &last)
}

/// The determinant scheme for `mu = floor(n/2)`.
pub fn balanced_scheme(p: &Parametrization) -> Result<EliminationResult, SylvesterError> {
    let basis = mu_basis(p)?;
    let n = p.degree;
    if basis.mu != n / 2 {
        return Err(SylvesterError::SchemeNotCovered { n, mu: basis.mu });
    }
    let (f, g) = basis.moving_forms(p);
    let (forms, d) = balanced(&f, &g)?;
    finish(p, if n % 2 == 0 { "balanced" } else { "odd" }, basis.mu, forms, &d)
}

/// Picks the chain for `mu = 1` and the determinant scheme for
/// `mu = floor(n/2)`.
pub fn implicitize(p: &Parametrization) -> Result<EliminationResult, SylvesterError> {
    let mu = mu_basis(p)?.mu;
    if mu == 1 {
        elimination_chain_mu1(p)
    } else if mu == p.degree / 2 {
        balanced_scheme(p)
    } else {
        Err(SylvesterError::SchemeNotCovered { n: p.degree, mu })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryDegree {
    /// Hilbert function of `R/(J : a)`.
    pub hilbert_function: Vec<u64>,
    pub epsilon: u32,
    pub r: u32,
}

/// `r = eps + 1` where `eps` is the socle degree of `R/(J : a)` for a
/// regular sequence `J`.
pub fn secondary_elim_degree(j: &Ideal, a: &Polynomial) -> Result<SecondaryDegree, SylvesterError> {
    let ring = j.ring().clone();
    let n = ring.nvars();
    let c = j.gens().len();
    if c > n || !j.is_homogeneous() || hilbert_series(j, ring.order())?.dim() != n - c {
        return Err(SylvesterError::NotRegularSequence);
    }
    let q = colon(j, &Ideal::new(&ring, vec![a.clone()]))?;
    match artinian_length(&q, ring.order())? {
        StaircaseCount::Infinite => Err(SylvesterError::Groebner(GroebnerError::NotArtinian)),
        StaircaseCount::Finite { per_degree, .. } if per_degree.is_empty() => Err(SylvesterError::UnitColon),
        StaircaseCount::Finite { per_degree, .. } => {
            let epsilon = per_degree.len() as u32 - 1;
            Ok(SecondaryDegree {
                hilbert_function: per_degree,
                epsilon,
                r: epsilon + 1,
            })
        }
    }
}

/// Secondary elimination degree with `a = f_which` and `J` the other two
/// forms.
pub fn secondary_elim_degree_param(p: &Parametrization, which: usize) -> Result<SecondaryDegree, SylvesterError> {
    let rest: Vec<Polynomial> = (0..3).filter(|&i| i != which).map(|i| p.forms[i].clone()).collect();
    secondary_elim_degree(&Ideal::new(&p.ring, rest), &p.forms[which])
}
