//! Biforms in a ring whose first two variables are `s, t`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::SylvesterError;
use crate::poly::{Monomial, PolyRing, Polynomial, RationalMatrix};

/// Degree in `s, t`, provided every term has the same one.
pub fn st_degree(p: &Polynomial) -> Option<u32> {
    let mut it = p.terms().iter().map(|(m, _)| m.exp(0) + m.exp(1));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// Degree in the variables other than `s, t`, provided it is uniform.
pub fn coeff_degree(p: &Polynomial) -> Option<u32> {
    let mut it = p
        .terms()
        .iter()
        .map(|(m, _)| m.exps()[2..].iter().sum::<u32>());
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

fn is_binary(p: &Polynomial) -> bool {
    p.terms().iter().all(|(m, _)| m.exps()[2..].iter().all(|&e| e == 0))
}

fn st_monomial(ring: &PolyRing, i: u32, j: u32, rest: &[u32]) -> Monomial {
    let mut e = vec![0; ring.nvars()];
    e[0] = i;
    e[1] = j;
    e[2..].copy_from_slice(rest);
    Monomial::new(e)
}

fn st_degree_or_zero(p: &Polynomial) -> Result<u32, SylvesterError> {
    if p.is_zero() {
        return Ok(0);
    }
    st_degree(p).ok_or(SylvesterError::NotBihomogeneous(p.to_string()))
}

/// `a, b` with `f = a u + b v`, solved for each coefficient monomial
/// separately with the unknowns of `a` first and free unknowns set to zero.
pub fn decompose(
    f: &Polynomial,
    u: &Polynomial,
    v: &Polynomial,
) -> Result<(Polynomial, Polynomial), SylvesterError> {
    let ring = f.ring().clone();
    if !is_binary(u) || !is_binary(v) {
        return Err(SylvesterError::NotBinary);
    }
    let (du, dv) = (st_degree_or_zero(u)?, st_degree_or_zero(v)?);
    let zero = Polynomial::zero(&ring);
    if f.is_zero() {
        return Ok((zero.clone(), zero));
    }
    let delta = st_degree_or_zero(f)?;
    // unknowns: coefficients of a (degree delta-du), then of b
    let na = if delta >= du { delta - du + 1 } else { 0 };
    let nb = if delta >= dv { delta - dv + 1 } else { 0 };
    let rows = delta as usize + 1;
    let mut m = RationalMatrix::zeros(rows, (na + nb) as usize);
    let mut col = 0;
    for (g, count) in [(u, na), (v, nb)] {
        // column for the multiplier s^(..) t^k
        for k in 0..count {
            for (mon, c) in g.terms() {
                let row = (mon.exp(1) + k) as usize;
                let v = m.get(row, col) + c;
                m.set(row, col, v);
            }
            col += 1;
        }
    }
    let mut groups: Vec<(Vec<u32>, Vec<BigRational>)> = Vec::new();
    for (mon, c) in f.terms() {
        let key = mon.exps()[2..].to_vec();
        let idx = match groups.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                groups.push((key, vec![BigRational::zero(); rows]));
                groups.len() - 1
            }
        };
        groups[idx].1[mon.exp(1) as usize] += c;
    }
    let mut a_terms = Vec::new();
    let mut b_terms = Vec::new();
    for (key, rhs) in groups {
        let x = m.solve_any(&rhs).ok_or(SylvesterError::NotInContent)?;
        for (k, c) in x.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            if k < na {
                a_terms.push((st_monomial(&ring, delta - du - k, k, &key), c));
            } else {
                let k = k - na;
                b_terms.push((st_monomial(&ring, delta - dv - k, k, &key), c));
            }
        }
    }
    Ok((
        Polynomial::from_terms(&ring, a_terms),
        Polynomial::from_terms(&ring, b_terms),
    ))
}

/// `det(f, g)_{(u, v)}` together with its coefficient matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterForm {
    pub poly: Polynomial,
    /// `[[a_f, b_f], [a_g, b_g]]` with `f = a_f u + b_f v`.
    pub matrix: [[Polynomial; 2]; 2],
    pub basis: (Polynomial, Polynomial),
    pub label: String,
}

impl SylvesterForm {
    /// From an explicit coefficient matrix, checking `f = a u + b v` rows.
    pub fn from_matrix(
        f: &Polynomial,
        g: &Polynomial,
        matrix: [[Polynomial; 2]; 2],
        u: &Polynomial,
        v: &Polynomial,
        label: impl Into<String>,
    ) -> Result<Self, SylvesterError> {
        for (p, row) in [f, g].into_iter().zip(&matrix) {
            if &(&(&row[0] * u) + &(&row[1] * v)) != p {
                return Err(SylvesterError::NotInContent);
            }
        }
        let poly = &(&matrix[0][0] * &matrix[1][1]) - &(&matrix[0][1] * &matrix[1][0]);
        Ok(SylvesterForm {
            poly,
            matrix,
            basis: (u.clone(), v.clone()),
            label: label.into(),
        })
    }

    /// `(deg_{s,t}, deg_T)` when the form is bihomogeneous.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        Some((st_degree(&self.poly)?, coeff_degree(&self.poly)?))
    }
}

impl fmt::Display for SylvesterForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.poly)
    }
}

pub fn basic_sylvester(
    f: &Polynomial,
    g: &Polynomial,
    u: &Polynomial,
    v: &Polynomial,
) -> Result<SylvesterForm, SylvesterError> {
    let (af, bf) = decompose(f, u, v)?;
    let (ag, bg) = decompose(g, u, v)?;
    let label = format!("det(f, g)_({}, {})", u, v);
    SylvesterForm::from_matrix(f, g, [[af, bf], [ag, bg]], u, v, label)
}

/// Columns are the forms, rows the basis `s^deg, s^(deg-1) t, ..., t^deg`;
/// entries are the coefficient polynomials.
pub fn coefficient_matrix(forms: &[Polynomial], deg: u32) -> Result<Vec<Vec<Polynomial>>, SylvesterError> {
    let ring = forms.first().map(|p| p.ring().clone()).ok_or(SylvesterError::ZeroDeterminant)?;
    let mut out = vec![vec![Polynomial::zero(&ring); forms.len()]; deg as usize + 1];
    for (col, p) in forms.iter().enumerate() {
        if !p.is_zero() && st_degree(p) != Some(deg) {
            return Err(SylvesterError::NotBihomogeneous(p.to_string()));
        }
        let mut parts: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in p.terms() {
            let mut e = m.exps().to_vec();
            let row = e[1] as usize;
            e[0] = 0;
            e[1] = 0;
            parts[row].push((Monomial::new(e), c.clone()));
        }
        for (row, terms) in parts.into_iter().enumerate() {
            out[row][col] = Polynomial::from_terms(&ring, terms);
        }
    }
    Ok(out)
}

/// Fraction-free determinant of a square polynomial matrix.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Polynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    assert!(n > 0, "empty matrix");
    let ring: Arc<PolyRing> = matrix[0][0].ring().clone();
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Polynomial::zero(&ring);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(&ring);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

pub(crate) fn s_pow_t_pow(ring: &Arc<PolyRing>, i: u32, j: u32) -> Polynomial {
    let none = vec![0; ring.nvars() - 2];
    Polynomial::monomial(ring, st_monomial(ring, i, j, &none))
}

/// `h_1 = det(f, g)_{(s,t)}`, `h_{i+1} = det(f, h_i)_{(s,t)}` until the
/// forms are free of `s, t`.
pub fn chain_mu1(f: &Polynomial, g: &Polynomial) -> Result<Vec<SylvesterForm>, SylvesterError> {
    let ring = f.ring().clone();
    if st_degree(f) != Some(1) {
        return Err(SylvesterError::NotBihomogeneous(f.to_string()));
    }
    let (s, t) = (s_pow_t_pow(&ring, 1, 0), s_pow_t_pow(&ring, 0, 1));
    let mut forms: Vec<SylvesterForm> = Vec::new();
    let mut prev = g.clone();
    let mut k = 1;
    while st_degree_or_zero(&prev)? > 0 {
        let mut h = basic_sylvester(f, &prev, &s, &t)?;
        h.label = format!("h{k}");
        prev = h.poly.clone();
        forms.push(h);
        k += 1;
        if prev.is_zero() {
            break;
        }
    }
    Ok(forms)
}

/// Even degree `2p` with `f, g` of degree `p`: the forms
/// `h_i = det(f, g)_{(s^i, t^(p+1-i))}` and `det A` for
/// `[h_1 ... h_p] = [s^(p-1) ... t^(p-1)] A`. Odd degree `2p+1` with `f` of
/// degree `p`: `[f, h_1 ... h_p] = [s^p ... t^p] A`.
pub fn balanced(f: &Polynomial, g: &Polynomial) -> Result<(Vec<SylvesterForm>, Polynomial), SylvesterError> {
    let ring = f.ring().clone();
    let p = st_degree_or_zero(f)?;
    let q = st_degree_or_zero(g)?;
    let odd = match q.checked_sub(p) {
        Some(0) => false,
        Some(1) => true,
        _ => return Err(SylvesterError::NotBihomogeneous(g.to_string())),
    };
    if p == 0 {
        return Err(SylvesterError::NotBihomogeneous(f.to_string()));
    }
    let mut forms = Vec::new();
    for i in 1..=p {
        let u = s_pow_t_pow(&ring, i, 0);
        let v = s_pow_t_pow(&ring, 0, p + 1 - i);
        let mut h = basic_sylvester(f, g, &u, &v)?;
        h.label = format!("h{i}");
        forms.push(h);
    }
    let mut cols: Vec<Polynomial> = Vec::new();
    if odd {
        cols.push(f.clone());
    }
    cols.extend(forms.iter().map(|h| h.poly.clone()));
    let deg = if odd { p } else { p - 1 };
    let a = coefficient_matrix(&cols, deg)?;
    Ok((forms, determinant(&a)))
}
