//! Operations on polytopes: Minkowski combinations, faces, projections and
//! hyperplane sections.

use super::body::{ConvexBody, Direction};
use crate::error::{Error, Result};
use crate::linalg::{dot, Point};

/// Convex hull of `points` in R^dim.
pub fn hull(points: &[Point], dim: usize) -> Result<ConvexBody> {
    ConvexBody::hull(points, dim)
}

pub fn volume(k: &ConvexBody) -> f64 {
    k.volume()
}

pub fn support(k: &ConvexBody, v: &[f64]) -> Result<f64> {
    k.support(v)
}

pub fn contains(k: &ConvexBody, x: &[f64], tol: f64) -> bool {
    k.contains(x, tol)
}

fn check_dims(a: &ConvexBody, b: &ConvexBody) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// `alpha * A + beta * B`, as the hull of all pairwise vertex combinations.
pub fn minkowski_combination(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
) -> Result<ConvexBody> {
    check_dims(a, b)?;
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::Invalid(
            "Minkowski coefficients must be positive".into(),
        ));
    }
    let mut pts = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for x in a.vertices() {
        for y in b.vertices() {
            pts.push(x.iter().zip(y).map(|(p, q)| alpha * p + beta * q).collect());
        }
    }
    ConvexBody::from_points(&pts)
}

/// `K + [0, len * v]`.
pub fn stretch(k: &ConvexBody, v: &[f64], len: f64) -> Result<ConvexBody> {
    if v.len() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: v.len(),
        });
    }
    let mut pts: Vec<Point> = k.vertices().to_vec();
    if len != 0.0 {
        pts.extend(
            k.vertices()
                .iter()
                .map(|x| x.iter().zip(v).map(|(p, q)| p + len * q).collect::<Point>()),
        );
    }
    ConvexBody::from_points(&pts)
}

/// The face of maximizers of `<v, x>`; vertices within the body tolerance
/// of the maximum are all included.
pub fn face(k: &ConvexBody, v: &Direction) -> Result<ConvexBody> {
    if v.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: v.dim(),
        });
    }
    let h = k.support_unchecked(v.as_slice());
    let tol = k.eps();
    let pts: Vec<Point> = k
        .vertices()
        .iter()
        .filter(|x| dot(x, v.as_slice()) >= h - tol)
        .cloned()
        .collect();
    ConvexBody::from_points(&pts)
}

/// Coordinates of `x` in the fixed orthonormal basis of `u`'s complement.
pub fn complement_coords(basis: &[Point], x: &[f64]) -> Point {
    basis.iter().map(|e| dot(e, x)).collect()
}

/// Orthogonal projection onto the complement of `u`, in the basis
/// [`Direction::complement_basis`].
pub fn project(k: &ConvexBody, u: &Direction) -> Result<ConvexBody> {
    if u.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: u.dim(),
        });
    }
    let basis = u.complement_basis();
    let pts: Vec<Point> = k
        .vertices()
        .iter()
        .map(|x| complement_coords(&basis, x))
        .collect();
    ConvexBody::from_points(&pts)
}

/// Points of `K ∩ {<x,u> = p}` whose hull is the whole section: vertices on
/// the hyperplane and crossings of triangulation edges.
pub(crate) fn slice_points(k: &ConvexBody, u: &[f64], p: f64) -> Vec<Point> {
    let tol = k.eps();
    let heights: Vec<f64> = k.vertices().iter().map(|x| dot(x, u) - p).collect();
    let mut out: Vec<Point> = k
        .vertices()
        .iter()
        .zip(&heights)
        .filter(|(_, h)| h.abs() <= tol)
        .map(|(x, _)| x.clone())
        .collect();
    for &(i, j) in k.edges() {
        let (hi, hj) = (heights[i], heights[j]);
        if (hi > tol && hj < -tol) || (hi < -tol && hj > tol) {
            let t = hi / (hi - hj);
            let (a, b) = (&k.vertices()[i], &k.vertices()[j]);
            out.push(a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect());
        }
    }
    out
}

/// The section as a (flat) body in ambient coordinates.
pub fn slice(k: &ConvexBody, u: &Direction, p: f64) -> Result<Option<ConvexBody>> {
    if u.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: u.dim(),
        });
    }
    let pts = slice_points(k, u.as_slice(), p);
    if pts.is_empty() {
        return Ok(None);
    }
    ConvexBody::from_points(&pts).map(Some)
}

/// `K ∩ (p u + u^⊥)` in the complement basis of `u` (d - 1 coordinates),
/// or `None` when the hyperplane misses the body.
pub fn section(k: &ConvexBody, u: &Direction, p: f64) -> Result<Option<ConvexBody>> {
    if u.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: u.dim(),
        });
    }
    let pts = slice_points(k, u.as_slice(), p);
    if pts.is_empty() {
        return Ok(None);
    }
    let basis = u.complement_basis();
    let local: Vec<Point> = pts.iter().map(|x| complement_coords(&basis, x)).collect();
    ConvexBody::from_points(&local).map(Some)
}

/// Chord of a full-dimensional body along the line `x + t u`: returns the
/// `t` interval, or `None` if the line misses the body.
pub(crate) fn chord(k: &ConvexBody, x: &[f64], u: &[f64]) -> Option<(f64, f64)> {
    let tol = k.eps();
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for h in k.facets() {
        let au = dot(&h.normal, u);
        let slack = h.offset - dot(&h.normal, x);
        if au.abs() <= 1e-12 {
            if slack < -tol {
                return None;
            }
        } else if au > 0.0 {
            hi = hi.min(slack / au);
        } else {
            lo = lo.max(slack / au);
        }
    }
    if lo > hi + tol {
        return None;
    }
    if lo > hi {
        let m = 0.5 * (lo + hi);
        return Some((m, m));
    }
    Some((lo, hi))
}
