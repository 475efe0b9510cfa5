//! Small dense vector and matrix helpers for dimensions up to four.
//!
//! Everything here works on plain slices; the polytope kernel never needs
//! more than a 5x5 system.

pub type Point = Vec<f64>;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn sub(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub fn add(a: &[f64], b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[inline]
pub fn scale(a: &[f64], s: f64) -> Point {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
#[inline]
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn centroid(points: &[Point]) -> Point {
    let d = points[0].len();
    let mut c = vec![0.0; d];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let n = points.len() as f64;
    c.iter_mut().for_each(|x| *x /= n);
    c
}

/// Removes from `v` its components along the orthonormal vectors in `basis`.
pub fn orthogonalize(v: &mut [f64], basis: &[Point]) {
    // Two passes of modified Gram-Schmidt keep the residual orthogonal to
    // machine precision even for nearly dependent input.
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
    }
}

/// A unit vector orthogonal to every row of `edges` (which must number
/// `dim - 1` and be linearly independent). Picks the standard basis vector
/// with the largest residual, so the result is deterministic.
pub fn normal_to(edges: &[Point], dim: usize) -> Option<Point> {
    let mut q: Vec<Point> = Vec::with_capacity(edges.len());
    for e in edges {
        let mut r = e.clone();
        orthogonalize(&mut r, &q);
        let n = norm(&r);
        if n == 0.0 {
            return None;
        }
        q.push(scale(&r, 1.0 / n));
    }
    let mut best: Option<(f64, Point)> = None;
    for j in 0..dim {
        let mut r = vec![0.0; dim];
        r[j] = 1.0;
        orthogonalize(&mut r, &q);
        let n = norm(&r);
        if best.as_ref().map_or(true, |(bn, _)| n > *bn) {
            best = Some((n, r));
        }
    }
    let (n, r) = best?;
    if n < 1e-12 {
        return None;
    }
    Some(scale(&r, 1.0 / n))
}

/// Solves `m x = rhs` for a small square system by Gaussian elimination
/// with partial pivoting. Returns `None` when a pivot falls below `tol`
/// times the largest entry.
pub fn solve(m: &[Point], rhs: &[f64], tol: f64) -> Option<Point> {
    let n = rhs.len();
    let mut a: Vec<Point> = m
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut row = row.clone();
            row.push(r);
            row
        })
        .collect();
    let max_entry = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    if max_entry == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= tol * max_entry {
            return None;
        }
        a.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..=n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = a[row][n];
        for k in (row + 1)..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Determinant of a small square matrix.
pub fn det(m: &[Point]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => {
            let mut a: Vec<Point> = m.to_vec();
            let mut d = 1.0;
            for col in 0..n {
                let piv = (col..n)
                    .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                    .unwrap();
                if a[piv][col] == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    a.swap(col, piv);
                    d = -d;
                }
                d *= a[col][col];
                for row in (col + 1)..n {
                    let f = a[row][col] / a[col][col];
                    for k in col..n {
                        a[row][k] -= f * a[col][k];
                    }
                }
            }
            d
        }
    }
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Rank of a set of vectors, counting a direction as new when its residual
/// after projection exceeds `tol`.
pub fn rank(vectors: &[&[f64]], tol: f64) -> usize {
    let mut q: Vec<Point> = Vec::new();
    for v in vectors {
        let mut r = v.to_vec();
        orthogonalize(&mut r, &q);
        let n = norm(&r);
        if n > tol {
            q.push(scale(&r, 1.0 / n));
        }
    }
    q.len()
}
