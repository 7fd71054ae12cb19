use num_integer::Integer;

/// The Newton polyhedron `conv(V) + R^n_{>=0}` of a set of exponent vectors,
/// kept as the cone `{(w, m) : a.w + c m >= 0}` over it, so that `w` lies in
/// `m P` exactly when every inequality holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    vertices: Vec<Vec<u32>>,
    dim: usize,
    /// Rows `(a_1, ..., a_n, c)`.
    inequalities: Vec<Vec<i128>>,
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, v| acc.gcd(v));
    if g > 1 {
        row.iter_mut().for_each(|v| *v /= g);
    }
}

impl NewtonPolyhedron {
    /// Builds the polyhedron of the given exponent vectors; all must have
    /// length `dim` and there must be at least one.
    pub fn new(vertices: Vec<Vec<u32>>, dim: usize) -> Self {
        assert!(!vertices.is_empty(), "Newton polyhedron needs a generator");
        assert!(vertices.iter().all(|v| v.len() == dim));
        let inequalities = project(&vertices, dim);
        NewtonPolyhedron {
            vertices,
            dim,
            inequalities,
        }
    }

    pub fn vertices(&self) -> &[Vec<u32>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Vec<i128>] {
        &self.inequalities
    }

    /// `w ∈ m P`.
    pub fn contains(&self, w: &[u32], m: u32) -> bool {
        self.inequalities.iter().all(|row| {
            let mut s = row[self.dim] * m as i128;
            for (a, &x) in row[..self.dim].iter().zip(w) {
                s += a * x as i128;
            }
            s >= 0
        })
    }

    /// Smallest `w_last` with `(prefix, w_last) ∈ m P`, or `None` if no
    /// such value exists.
    pub fn column_threshold(&self, prefix: &[u32], m: u32) -> Option<u32> {
        let last = self.dim - 1;
        let mut lower: i128 = 0;
        for row in &self.inequalities {
            let mut s = row[self.dim] * m as i128;
            for (a, &x) in row[..last].iter().zip(prefix) {
                s += a * x as i128;
            }
            let a = row[last];
            if a == 0 {
                if s < 0 {
                    return None;
                }
            } else {
                // a > 0 for an up-closed set
                lower = lower.max(Integer::div_ceil(&-s, &a));
            }
        }
        Some(lower as u32)
    }
}

/// Fourier-Motzkin elimination of the multipliers `r` from
/// `r >= 0, sum r = m, sum r_i v_i <= w`, with Chernikov's rule.
fn project(vertices: &[Vec<u32>], n: usize) -> Vec<Vec<i128>> {
    let k = vertices.len();
    let nr = k - 1;
    let width = nr + n + 1;
    let mcol = nr + n;
    let vk = &vertices[k - 1];
    let mut rows: Vec<(Vec<i128>, u128)> = Vec::new();
    let mut id = 0u32;
    let mut push = |row: Vec<i128>, rows: &mut Vec<(Vec<i128>, u128)>| {
        rows.push((row, 1u128 << id));
        id += 1;
    };
    for i in 0..nr {
        let mut row = vec![0; width];
        row[i] = 1;
        push(row, &mut rows);
    }
    {
        let mut row = vec![0; width];
        row[..nr].iter_mut().for_each(|v| *v = -1);
        row[mcol] = 1;
        push(row, &mut rows);
    }
    for j in 0..n {
        let mut row = vec![0; width];
        for i in 0..nr {
            row[i] = vk[j] as i128 - vertices[i][j] as i128;
        }
        row[nr + j] = 1;
        row[mcol] = -(vk[j] as i128);
        push(row, &mut rows);
    }

    for (step, var) in (0..nr).enumerate() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in rows {
            match r.0[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => next.push(r),
            }
        }
        for (p, hp) in &pos {
            for (q, hq) in &neg {
                let hist = hp | hq;
                if hist.count_ones() as usize > step + 2 {
                    continue;
                }
                let (a, b) = (p[var], -q[var]);
                let mut row: Vec<i128> = p.iter().zip(q).map(|(x, y)| x * b + y * a).collect();
                normalize(&mut row);
                next.push((row, hist));
            }
        }
        next.sort();
        next.dedup_by(|a, b| a.0 == b.0);
        rows = next;
    }

    let mut out: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|(row, _)| row[nr..].to_vec())
        .filter(|row| row.iter().any(|&v| v < 0))
        .collect();
    out.sort();
    out.dedup();
    out
}
