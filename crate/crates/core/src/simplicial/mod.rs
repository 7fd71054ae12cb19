//! Simplicial complexes and their Stanley-Reisner rings.


use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::hilbert::{coefficients_from_series, hilbert_series_monomial, irreducible_decomposition, HilbertSeries};
use crate::monomial::MonomialIdeal;
use crate::poly::{Monomial, PolyError, PolyRing};

/// Vertex sets are bitmasks, so at most this many vertices.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("too many vertices ({0}, at most {MAX_VERTICES})")]
    TooManyVertices(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A simplicial complex on labelled vertices, stored by its facets.
/// A complex without facets is the void complex; the facet `{}` alone is
/// the empty complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<u64>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    // all submasks, including mask and 0
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(cur)
    })
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets as facets.
    pub fn new<S: AsRef<str>>(labels: &[S], faces: &[u64]) -> Result<Self, SimplicialError> {
        if labels.len() > MAX_VERTICES {
            return Err(SimplicialError::TooManyVertices(labels.len()));
        }
        let all = if labels.len() == 64 { u64::MAX } else { (1u64 << labels.len()) - 1 };
        if let Some(f) = faces.iter().find(|f| *f & !all != 0) {
            return Err(SimplicialError::UnknownVertex(format!("#{}", 63 - f.leading_zeros())));
        }
        let mut facets: Vec<u64> = faces
            .iter()
            .copied()
            .filter(|&f| !faces.iter().any(|&g| g != f && g & f == f))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        facets.sort_by(|a, b| {
            let va: Vec<usize> = bits(*a).collect();
            let vb: Vec<usize> = bits(*b).collect();
            va.cmp(&vb)
        });
        Ok(SimplicialComplex {
            labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
            facets,
        })
    }

    /// Facets given as lists of labels.
    pub fn from_labelled<S: AsRef<str>>(labels: &[S], facets: &[Vec<S>]) -> Result<Self, SimplicialError> {
        let masks = facets
            .iter()
            .map(|f| {
                f.iter().try_fold(0u64, |acc, v| {
                    let i = labels
                        .iter()
                        .position(|l| l.as_ref() == v.as_ref())
                        .ok_or_else(|| SimplicialError::UnknownVertex(v.as_ref().to_string()))?;
                    Ok::<u64, SimplicialError>(acc | 1 << i)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::new(labels, &masks)
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Result<Self, SimplicialError> {
        let all = if labels.len() >= 64 { u64::MAX } else { (1u64 << labels.len()) - 1 };
        SimplicialComplex::new(labels, &[all])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn nvertices(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `dim k[Δ]`, the largest face size.
    pub fn krull_dim(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn faces(&self) -> BTreeSet<u64> {
        self.facets.iter().flat_map(|&f| subsets(f)).collect()
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    fn ring(&self) -> Result<Arc<PolyRing>, SimplicialError> {
        Ok(PolyRing::new(&self.labels)?)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.facets.is_empty() {
            return write!(f, "void");
        }
        let parts: Vec<String> = self
            .facets
            .iter()
            .map(|&m| {
                let vs: Vec<&str> = bits(m).map(|i| self.labels[i].as_str()).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `I_Δ = ∩_F (x_i : i ∉ F)`.
pub fn sr_ideal(k: &SimplicialComplex) -> Result<MonomialIdeal, SimplicialError> {
    let ring = k.ring()?;
    let n = k.nvertices();
    Ok(k.facets
        .iter()
        .map(|&f| {
            let gens = (0..n).filter(|i| f >> i & 1 == 0).map(|i| Monomial::var(n, i)).collect();
            MonomialIdeal::new(&ring, gens)
        })
        .reduce(|a, b| a.intersection(&b))
        .unwrap_or_else(|| MonomialIdeal::unit(&ring)))
}

/// The complex whose faces are the squarefree monomials outside `I`.
pub fn sr_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex, SimplicialError> {
    if !ideal.is_squarefree() {
        return Err(SimplicialError::NotSquarefree);
    }
    let n = ideal.nvars();
    if n > MAX_VERTICES {
        return Err(SimplicialError::TooManyVertices(n));
    }
    let dec = irreducible_decomposition(ideal);
    let facets: Vec<u64> = dec
        .components
        .iter()
        .map(|c| (0..n).filter(|&i| c.pure_power(i).is_none()).fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    SimplicialComplex::new(ideal.ring().names(), &facets)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FHVectors {
    /// `f_0, ..., f_{d-1}`.
    pub f: Vec<u64>,
    /// `h_0, ..., h_d`.
    pub h: Vec<i64>,
    /// `sum_{i >= 0} (-1)^i f_i`.
    pub chi: i64,
}

impl FHVectors {
    /// `f_i` with `f_{-1} = 1`.
    pub fn f_at(&self, i: i64) -> u64 {
        match i {
            -1 => 1,
            i if i < -1 => 0,
            i => self.f.get(i as usize).copied().unwrap_or(0),
        }
    }
}

pub fn fh_vectors(k: &SimplicialComplex) -> FHVectors {
    let d = k.krull_dim();
    let mut f = vec![0u64; d];
    for face in k.faces() {
        let s = face.count_ones() as usize;
        if s > 0 {
            f[s - 1] += 1;
        }
    }
    // sum_i h_i t^i = sum_i f_{i-1} t^i (1-t)^{d-i}
    let mut h = vec![0i64; d + 1];
    if !k.is_void() {
        for i in 0..=d {
            let fi = if i == 0 { 1 } else { f[i - 1] as i64 };
            for (j, hj) in h.iter_mut().enumerate().skip(i) {
                let c = crate::hilbert::binom((d - i) as u64, (j - i) as u64);
                let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                *hj += sign * c * fi;
            }
        }
    }
    let chi = f.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
    FHVectors { f, h, chi }
}

/// Hilbert series of `k[Δ]` from the face counts.
pub fn sr_series(k: &SimplicialComplex) -> HilbertSeries {
    let fh = fh_vectors(k);
    HilbertSeries::new(fh.h, k.krull_dim())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrDegrees {
    pub dim: usize,
    /// Facets of maximal dimension.
    pub deg: u64,
    pub gdeg: u64,
    pub adeg: u64,
    /// Maximal faces of dimension `d-2`.
    pub f_prime: u64,
    /// `d f_{d-1} - f_{d-2} + f'_{d-2}`.
    pub tn: i64,
    /// `h(1)` and `h'(1) + f'_{d-2}` from the Hilbert series of `R/I_Δ`.
    pub series_deg: i64,
    pub series_tn: i64,
}

impl SrDegrees {
    pub fn consistent(&self) -> bool {
        self.series_deg == self.deg as i64 && self.series_tn == self.tn
    }
}

pub fn sr_degrees(k: &SimplicialComplex) -> Result<SrDegrees, SimplicialError> {
    let d = k.krull_dim();
    let fh = fh_vectors(k);
    let deg = k.facets.iter().filter(|f| f.count_ones() as usize == d).count() as u64;
    let adeg = k.facets.len() as u64;
    let f_prime = k
        .facets
        .iter()
        .filter(|f| d >= 1 && f.count_ones() as usize == d - 1)
        .count() as u64;
    let di = d as i64;
    let tn = di * fh.f_at(di - 1) as i64 - fh.f_at(di - 2) as i64 + f_prime as i64;
    let series = hilbert_series_monomial(&sr_ideal(k)?).expect("standard grading");
    let c = coefficients_from_series(&series, 1);
    Ok(SrDegrees {
        dim: d,
        deg,
        gdeg: adeg,
        adeg,
        f_prime,
        tn,
        series_deg: c.e(0),
        series_tn: c.e(1) + f_prime as i64,
    })
}
