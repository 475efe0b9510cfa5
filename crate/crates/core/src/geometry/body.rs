use serde::{Deserialize, Serialize};

use super::hull::{greedy_simplex, hull_full};
use crate::error::{Error, Result};
use crate::linalg::{det, dot, factorial, norm, orthogonalize, scale, sub, Point};
use crate::tolerance::EPS_GEOM;

/// A unit vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Direction(Point);

impl Direction {
    /// Normalizes `v`.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = norm(&v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self(v.into_iter().map(|x| x / n).collect()))
    }

    /// The `i`-th standard basis vector of R^dim.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// Orthonormal basis of the orthogonal complement: Gram-Schmidt over the
    /// standard basis, skipping the coordinate most aligned with `self`.
    /// Sections and projections along the same direction share this basis.
    pub fn complement_basis(&self) -> Vec<Point> {
        let d = self.dim();
        let skip = (0..d)
            .max_by(|&i, &j| self.0[i].abs().total_cmp(&self.0[j].abs()))
            .unwrap();
        let mut q: Vec<Point> = vec![self.0.clone()];
        for j in (0..d).filter(|&j| j != skip) {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            orthogonalize(&mut e, &q);
            let n = norm(&e);
            q.push(scale(&e, 1.0 / n));
        }
        q.remove(0);
        q
    }

    /// Angle to another direction, in radians.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        dot(&self.0, &other.0).clamp(-1.0, 1.0).acos()
    }
}

impl TryFrom<Vec<f64>> for Direction {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec<f64> {
    fn from(d: Direction) -> Self {
        d.0
    }
}

/// `<normal, x> <= offset`, with a unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let n = norm(&normal);
        if !(n > 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            normal: scale(&normal, 1.0 / n),
            offset: offset / n,
        })
    }

    #[inline]
    pub fn excess(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

/// Affine hull of a body: `origin + span(basis)`.
#[derive(Debug, Clone)]
struct Frame {
    origin: Point,
    basis: Vec<Point>,
    identity: bool,
}

impl Frame {
    fn to_local(&self, x: &[f64]) -> Point {
        if self.identity {
            return x.to_vec();
        }
        let r = sub(x, &self.origin);
        self.basis.iter().map(|b| dot(b, &r)).collect()
    }

    fn to_ambient(&self, y: &[f64]) -> Point {
        if self.identity {
            return y.to_vec();
        }
        let mut x = self.origin.clone();
        for (b, c) in self.basis.iter().zip(y) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }

    /// Distance from `x` to the affine hull.
    fn offset_from_hull(&self, x: &[f64]) -> f64 {
        if self.identity {
            return 0.0;
        }
        let mut r = sub(x, &self.origin);
        orthogonalize(&mut r, &self.basis);
        norm(&r)
    }
}

/// A convex polytope stored by its extreme points, with the facet
/// hyperplanes and a boundary triangulation computed on construction.
///
/// Bodies may be lower dimensional (a flat square in R^3, a segment); the
/// facets then live in intrinsic coordinates of the affine hull.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<Point>,
    frame: Frame,
    facets: Vec<Halfspace>,
    simplices: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    measure: f64,
    centroid: Point,
    scale: f64,
}

impl ConvexBody {
    /// Convex hull of `points` in R^dim, 2 <= dim <= 4.
    pub fn hull(points: &[Point], dim: usize) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(Error::Unsupported(format!("dimension {dim}")));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        Self::from_points(points)
    }

    /// Hull in any ambient dimension 1..=4; used for projections and
    /// sections, which drop one dimension.
    pub(crate) fn from_points(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let dim = first.len();
        if dim == 0 || dim > 4 {
            return Err(Error::Unsupported(format!("dimension {dim}")));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("non-finite coordinate".into()));
        }
        let scale = bbox_diagonal(points);
        let eps = EPS_GEOM * scale;
        let chosen = greedy_simplex(points, eps);
        let k = chosen.len() - 1;
        let frame = if k == dim {
            Frame {
                origin: vec![0.0; dim],
                basis: Vec::new(),
                identity: true,
            }
        } else {
            let origin = points[chosen[0]].clone();
            let mut basis: Vec<Point> = Vec::new();
            for &i in &chosen[1..] {
                let mut r = sub(&points[i], &origin);
                orthogonalize(&mut r, &basis);
                let n = norm(&r);
                basis.push(scale_vec(&r, 1.0 / n));
            }
            Frame {
                origin,
                basis,
                identity: false,
            }
        };

        if k == 0 {
            return Ok(Self {
                dim,
                vertices: vec![points[chosen[0]].clone()],
                centroid: points[chosen[0]].clone(),
                frame,
                facets: Vec::new(),
                simplices: Vec::new(),
                edges: Vec::new(),
                measure: 0.0,
                scale,
            });
        }

        let local: Vec<Point> = points.iter().map(|p| frame.to_local(p)).collect();
        let data = hull_full(&local, eps);
        let vertices: Vec<Point> = data.vertices.iter().map(|&i| points[i].clone()).collect();
        let local_vertices: Vec<Point> = data.vertices.iter().map(|&i| local[i].clone()).collect();
        let facets = data
            .facets
            .into_iter()
            .map(|(normal, offset)| Halfspace { normal, offset })
            .collect();
        let edges = edges_of(&data.simplices, k);
        let (measure, local_centroid) = fan_measure(&local_vertices, &data.simplices, k);
        Ok(Self {
            dim,
            centroid: frame.to_ambient(&local_centroid),
            vertices,
            frame,
            facets,
            simplices: data.simplices,
            edges,
            measure,
            scale,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn intrinsic_dim(&self) -> usize {
        if self.frame.identity {
            self.dim
        } else {
            self.frame.basis.len()
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.frame.identity
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Facet halfspaces in ambient coordinates. Empty for lower-dimensional
    /// bodies; see [`ConvexBody::relative_facets`].
    pub fn facets(&self) -> &[Halfspace] {
        if self.frame.identity {
            &self.facets
        } else {
            &[]
        }
    }

    /// Facets in intrinsic coordinates of the affine hull.
    pub fn relative_facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Boundary triangulation, as vertex index lists.
    pub fn boundary_simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Vertex pairs joined by an edge of the boundary triangulation. This is
    /// a superset of the polytope's edges (facet diagonals are included).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Lebesgue measure in R^dim; zero for lower-dimensional bodies.
    pub fn volume(&self) -> f64 {
        if self.frame.identity {
            self.measure
        } else {
            0.0
        }
    }

    /// Measure in the body's own affine hull.
    pub fn intrinsic_volume(&self) -> f64 {
        self.measure
    }

    /// Center of mass in the affine hull.
    pub fn centroid(&self) -> &[f64] {
        &self.centroid
    }

    pub fn vertex_centroid(&self) -> Point {
        crate::linalg::centroid(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max(crate::linalg::dist(a, b));
            }
        }
        best
    }

    /// Bounding-box diagonal; sets the scale of geometric tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Absolute predicate tolerance for this body.
    pub fn eps(&self) -> f64 {
        EPS_GEOM * self.scale.max(f64::MIN_POSITIVE)
    }

    pub fn support(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if v.iter().all(|x| *x == 0.0) {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_unchecked(v))
    }

    #[inline]
    pub(crate) fn support_unchecked(&self, v: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|x| dot(v, x))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Membership with absolute tolerance `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim {
            return false;
        }
        if self.frame.identity {
            return self.facets.iter().all(|h| h.excess(x) <= tol);
        }
        if self.frame.offset_from_hull(x) > tol {
            return false;
        }
        if self.intrinsic_dim() == 0 {
            return crate::linalg::dist(x, &self.vertices[0]) <= tol;
        }
        let y = self.frame.to_local(x);
        self.facets.iter().all(|h| h.excess(&y) <= tol)
    }

    /// `s * self + t` for `s > 0`, reusing the combinatorics.
    pub fn affine_image(&self, s: f64, t: &[f64]) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::Invalid(format!("scale factor {s} must be positive")));
        }
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.len(),
            });
        }
        let map = |p: &[f64]| -> Point { p.iter().zip(t).map(|(x, ti)| s * x + ti).collect() };
        let frame = if self.frame.identity {
            self.frame.clone()
        } else {
            Frame {
                origin: map(&self.frame.origin),
                basis: self.frame.basis.clone(),
                identity: false,
            }
        };
        // facets live in local coordinates; for the identity frame local = ambient
        let facets = self
            .facets
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: if self.frame.identity {
                    s * h.offset + dot(&h.normal, t)
                } else {
                    s * h.offset
                },
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| map(v)).collect(),
            frame,
            facets,
            simplices: self.simplices.clone(),
            edges: self.edges.clone(),
            measure: self.measure * s.powi(self.intrinsic_dim() as i32),
            centroid: map(&self.centroid),
            scale: self.scale * s,
        })
    }

    pub fn translate(&self, t: &[f64]) -> Result<Self> {
        self.affine_image(1.0, t)
    }

    pub(crate) fn to_ambient(&self, y: &[f64]) -> Point {
        self.frame.to_ambient(y)
    }

    /// Component of a vector (not a point) in the intrinsic frame, together
    /// with the norm of the part orthogonal to the affine hull.
    pub(crate) fn vector_to_local(&self, v: &[f64]) -> (Point, f64) {
        if self.frame.identity {
            return (v.to_vec(), 0.0);
        }
        let local: Point = self.frame.basis.iter().map(|b| dot(b, v)).collect();
        let mut r = v.to_vec();
        orthogonalize(&mut r, &self.frame.basis);
        (local, norm(&r))
    }

    /// Bounding box of the vertices.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for i in 0..self.dim {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo, hi)
    }

    /// Range of `<x, u>` over the body.
    pub fn extent_along(&self, u: &[f64]) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in &self.vertices {
            let h = dot(v, u);
            lo = lo.min(h);
            hi = hi.max(h);
        }
        (lo, hi)
    }
}

fn scale_vec(v: &[f64], s: f64) -> Point {
    scale(v, s)
}

fn bbox_diagonal(points: &[Point]) -> f64 {
    let d = points[0].len();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in points {
        for i in 0..d {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    crate::linalg::dist(&lo, &hi)
}

fn edges_of(simplices: &[Vec<usize>], k: usize) -> Vec<(usize, usize)> {
    if k == 1 {
        return vec![(0, 1)];
    }
    let mut edges: Vec<(usize, usize)> = simplices
        .iter()
        .flat_map(|s| {
            let mut e = Vec::new();
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    e.push((s[i].min(s[j]), s[i].max(s[j])));
                }
            }
            e
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// Measure and center of mass by coning each boundary simplex to the
/// vertex centroid.
fn fan_measure(vertices: &[Point], simplices: &[Vec<usize>], k: usize) -> (f64, Point) {
    let c = crate::linalg::centroid(vertices);
    let kf = factorial(k);
    let mut total = 0.0;
    let mut moment = vec![0.0; k];
    for s in simplices {
        let rows: Vec<Point> = s.iter().map(|&i| sub(&vertices[i], &c)).collect();
        let vol = det(&rows).abs() / kf;
        total += vol;
        // centroid of the cone simplex is (c + sum v) / (k + 1)
        for j in 0..k {
            let sum: f64 = c[j] + s.iter().map(|&i| vertices[i][j]).sum::<f64>();
            moment[j] += vol * sum / (k as f64 + 1.0);
        }
    }
    let cen = if total > 0.0 {
        moment.iter().map(|m| m / total).collect()
    } else {
        c
    };
    (total, cen)
}

/// On-disk and wire form of a body. Facets are never serialized.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyJson {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl From<&ConvexBody> for BodyJson {
    fn from(b: &ConvexBody) -> Self {
        Self {
            dim: b.dim,
            vertices: b.vertices.clone(),
        }
    }
}

impl TryFrom<BodyJson> for ConvexBody {
    type Error = Error;
    fn try_from(j: BodyJson) -> Result<Self> {
        if let Some(p) = j.vertices.iter().find(|p| p.len() != j.dim) {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: p.len(),
            });
        }
        ConvexBody::from_points(&j.vertices)
    }
}

impl Serialize for ConvexBody {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BodyJson::deserialize(d)?;
        ConvexBody::try_from(j).map_err(serde::de::Error::custom)
    }
}
