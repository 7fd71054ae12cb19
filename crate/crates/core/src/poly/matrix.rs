use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PolyError;

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch);
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, PolyError> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &x[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Integer matrix `[A | c]` with each row scaled by the lcm of its
    /// denominators.
    fn integer_augmented(&self, c: &[BigRational]) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row: Vec<&BigRational> =
                    (0..self.cols).map(|j| self.get(i, j)).chain([&c[i]]).collect();
                let den = row.iter().fold(BigInt::one(), |a, v| a.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&den / v.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigRational, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::DimensionMismatch);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let den = (0..n).fold(BigInt::one(), |a, j| a.lcm(self.get(i, j).denom()));
                scale *= &den;
                (0..n)
                    .map(|j| self.get(i, j).numer() * (&den / self.get(i, j).denom()))
                    .collect()
            })
            .collect();
        let sign = bareiss(&mut m, n);
        match sign {
            None => Ok(BigRational::zero()),
            Some(s) => Ok(BigRational::new(&m[n - 1][n - 1] * s, scale)),
        }
    }

    /// Solves `A x = c` for square nonsingular `A` using fraction-free
    /// elimination followed by back substitution.
    pub fn solve(&self, c: &[BigRational]) -> Result<Vec<BigRational>, PolyError> {
        if self.rows != self.cols || c.len() != self.rows {
            return Err(PolyError::DimensionMismatch);
        }
        let n = self.rows;
        let mut m = self.integer_augmented(c);
        if bareiss(&mut m, n).is_none() {
            return Err(PolyError::Singular);
        }
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut rhs = BigRational::from_integer(m[i][n].clone());
            for j in i + 1..n {
                rhs -= BigRational::from_integer(m[i][j].clone()) * &x[j];
            }
            x[i] = rhs / BigRational::from_integer(m[i][i].clone());
        }
        Ok(x)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, col).recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, col).is_zero() {
                    let f = self.get(i, col).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column, in increasing
    /// order of the free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// A particular solution of `A x = c` with every free variable set to
    /// zero, or `None` when the system is inconsistent.
    pub fn solve_any(&self, c: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut aug = RationalMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, c[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// In-place Bareiss elimination on the leading `n` columns. Returns the sign
/// of the row permutation, or `None` if the leading block is singular. On
/// success `m[n-1][n-1]` is the determinant up to that sign and the matrix
/// is upper triangular.
fn bareiss(m: &mut [Vec<BigInt>], n: usize) -> Option<BigInt> {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        let width = m[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(sign)
}

/// `solve_linear` of the module contract: exact solution of a square
/// nonsingular system.
pub fn solve_linear(a: &RationalMatrix, c: &[BigRational]) -> Result<Vec<BigRational>, PolyError> {
    a.solve(c)
}
