//! Steiner symmetrization and Schwarz rounding.
//!
//! Steiner symmetrization along `u` recenters every chord parallel to `u`
//! onto the hyperplane `u^⊥`. Schwarz rounding (here only in R^3) replaces
//! every section orthogonal to `u` by a disk of the same area centred on the
//! line `span(u)`. Both preserve volume, and both turn Minkowski
//! combinations into superset-of-combination inclusions, which the two
//! `check_*` functions test numerically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ops::{chord, complement_coords, minkowski_combination, project};
use crate::geometry::{ConvexBody, Direction};
use crate::linalg::Point;
use crate::profile::SectionProfile;

/// Outcome of an inclusion test: the smallest sampled margin (right side
/// minus left side) and whether it stays above the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InclusionCheck {
    pub holds: bool,
    pub min_margin: f64,
    pub tolerance: f64,
}

/// Relative tolerance of the inclusion checks, scaled by the diameter.
pub const INCLUSION_REL_TOL: f64 = 1e-6;

/// The upper and lower chord functions of a body along `u`, over its
/// projection `π_u K` written in the complement basis of `u`. The chord
/// over `y` is `[-g(y), f(y)]` in the `u` coordinate.
#[derive(Debug, Clone)]
pub struct ChordFunction {
    body: ConvexBody,
    u: Direction,
    basis: Vec<Point>,
    base: ConvexBody,
}

impl ChordFunction {
    pub fn new(k: &ConvexBody, u: &Direction) -> Result<Self> {
        if u.dim() != k.dim() {
            return Err(Error::DimensionMismatch {
                expected: k.dim(),
                found: u.dim(),
            });
        }
        if !k.is_full_dimensional() {
            return Err(Error::DegenerateBody);
        }
        Ok(Self {
            body: k.clone(),
            u: u.clone(),
            basis: u.complement_basis(),
            base: project(k, u)?,
        })
    }

    /// `π_u K` in complement coordinates.
    pub fn base(&self) -> &ConvexBody {
        &self.base
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    /// The point of `u^⊥` with complement coordinates `y`.
    pub fn lift(&self, y: &[f64]) -> Point {
        let mut x = vec![0.0; self.body.dim()];
        for (c, e) in y.iter().zip(&self.basis) {
            for (xi, ei) in x.iter_mut().zip(e) {
                *xi += c * ei;
            }
        }
        x
    }

    /// `(f(y), g(y))`, or `None` off the base.
    pub fn eval(&self, y: &[f64]) -> Option<(f64, f64)> {
        chord(&self.body, &self.lift(y), self.u.as_slice()).map(|(lo, hi)| (hi, -lo))
    }

    /// Chord length `f(y) + g(y)` (zero off the base).
    pub fn length(&self, y: &[f64]) -> f64 {
        self.eval(y).map_or(0.0, |(f, g)| (f + g).max(0.0))
    }
}

/// Sample of a (d-1)-body in complement coordinates: lattice points of its
/// bounding box that fall inside, its vertices, and its edges cut into
/// `grid_n` pieces. Samples for `grid_n` are a subset of those for any
/// multiple of `grid_n`.
fn base_samples(base: &ConvexBody, grid_n: usize) -> Vec<Point> {
    let m = base.dim();
    let (lo, hi) = base.bounding_box();
    let tol = base.eps();
    let mut out: Vec<Point> = base.vertices().to_vec();
    let nf = grid_n as f64;
    if m == 1 {
        for i in 0..=grid_n {
            out.push(vec![lo[0] + (hi[0] - lo[0]) * i as f64 / nf]);
        }
        return out;
    }
    let total = (grid_n + 1).pow(m as u32);
    for idx in 0..total {
        let mut r = idx;
        let mut y = Vec::with_capacity(m);
        for j in 0..m {
            let i = r % (grid_n + 1);
            r /= grid_n + 1;
            y.push(lo[j] + (hi[j] - lo[j]) * i as f64 / nf);
        }
        if base.contains(&y, tol) {
            out.push(y);
        }
    }
    for &(i, j) in base.edges() {
        let (a, b) = (&base.vertices()[i], &base.vertices()[j]);
        for s in 1..grid_n {
            let t = s as f64 / nf;
            out.push(a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect());
        }
    }
    out
}

/// Steiner symmetral `S_u K`. Exact in the plane; for `d >= 3` the hull of
/// the symmetrized chords over a nested sample of `π_u K`, hence an inner
/// approximation that grows with `grid_n`.
pub fn steiner(k: &ConvexBody, u: &Direction, grid_n: usize) -> Result<ConvexBody> {
    let cf = ChordFunction::new(k, u)?;
    let samples = if k.dim() == 2 {
        // chord lengths are linear between projected vertices
        k.vertices()
            .iter()
            .map(|v| complement_coords(cf.basis(), v))
            .collect()
    } else {
        if grid_n < 8 {
            return Err(Error::Invalid(format!(
                "steiner needs grid_n >= 8, got {grid_n}"
            )));
        }
        base_samples(cf.base(), grid_n)
    };
    let uu = u.as_slice();
    let pts: Vec<Point> = samples
        .par_iter()
        .flat_map_iter(|y| {
            let x = cf.lift(y);
            let half = 0.5 * cf.length(y);
            let top: Point = x.iter().zip(uu).map(|(a, b)| a + half * b).collect();
            let bottom: Point = x.iter().zip(uu).map(|(a, b)| a - half * b).collect();
            [top, bottom]
        })
        .collect();
    ConvexBody::hull(&pts, k.dim())
}

/// Schwarz rounding about `span(u)` in R^3: `n_slices` equally spaced
/// sections, each replaced by a regular `m_ring`-gon inscribed in the disk
/// of equal area.
pub fn schwarz(
    k: &ConvexBody,
    u: &Direction,
    n_slices: usize,
    m_ring: usize,
) -> Result<ConvexBody> {
    if k.dim() != 3 {
        return Err(Error::Unsupported(format!(
            "Schwarz rounding is implemented for d = 3, got d = {}",
            k.dim()
        )));
    }
    if n_slices < 8 || m_ring < 8 {
        return Err(Error::Invalid(
            "schwarz needs n_slices >= 8 and m_ring >= 8".into(),
        ));
    }
    let prof = SectionProfile::build(k, u)?;
    let basis = u.complement_basis();
    let uu = u.as_slice();
    let mut pts = Vec::with_capacity(n_slices * m_ring);
    for i in 0..n_slices {
        let p = prof.p_min + (prof.p_max - prof.p_min) * i as f64 / (n_slices - 1) as f64;
        let r = (prof.area(p) / std::f64::consts::PI).sqrt();
        let ring = if r > 0.0 { m_ring } else { 1 };
        for j in 0..ring {
            let th = std::f64::consts::TAU * j as f64 / m_ring as f64;
            let (c, s) = (r * th.cos(), r * th.sin());
            pts.push(
                (0..3)
                    .map(|a| p * uu[a] + c * basis[0][a] + s * basis[1][a])
                    .collect(),
            );
        }
    }
    ConvexBody::hull(&pts, 3)
}

fn check_pair(a: &ConvexBody, b: &ConvexBody, alpha: f64, beta: f64) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::Invalid("coefficients must be positive".into()));
    }
    Ok(())
}

/// Tests `α S_uA + β S_uB ⊂ S_u(αA + βB)`. Both sides are symmetric about
/// `u^⊥`, so it is enough to compare half-chords over the projection of the
/// left side. The right side uses exact chords of `αA + βB`.
pub fn check_steiner_inclusion(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    grid_n: usize,
) -> Result<InclusionCheck> {
    check_pair(a, b, alpha, beta)?;
    let sa = steiner(a, u, grid_n)?;
    let sb = steiner(b, u, grid_n)?;
    let left = ChordFunction::new(&minkowski_combination(&sa, &sb, alpha, beta)?, u)?;
    let c = minkowski_combination(a, b, alpha, beta)?;
    let right = ChordFunction::new(&c, u)?;
    let samples = base_samples(left.base(), grid_n);
    let min_margin = samples
        .par_iter()
        .map(|y| 0.5 * (right.length(y) - left.length(y)))
        .reduce(|| f64::INFINITY, f64::min);
    let tolerance = INCLUSION_REL_TOL * c.diameter();
    Ok(InclusionCheck {
        holds: min_margin >= -tolerance,
        min_margin,
        tolerance,
    })
}

/// Tests `α R_lA + β R_lB ⊂ R_l(αA + βB)` for `l = span(u)` in R^3. The
/// left side at offset `αp' + βp''` contains the disk of radius
/// `α r_A(p') + β r_B(p'')`, so the check runs over all pairs of
/// `n_slices` offsets of `A` and `B`.
pub fn check_schwarz_inclusion(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    n_slices: usize,
) -> Result<InclusionCheck> {
    check_pair(a, b, alpha, beta)?;
    if a.dim() != 3 {
        return Err(Error::Unsupported(format!(
            "Schwarz rounding is implemented for d = 3, got d = {}",
            a.dim()
        )));
    }
    if n_slices < 2 {
        return Err(Error::Invalid("need at least two slices".into()));
    }
    let c = minkowski_combination(a, b, alpha, beta)?;
    let (pa, pb, pc) = (
        SectionProfile::build(a, u)?,
        SectionProfile::build(b, u)?,
        SectionProfile::build(&c, u)?,
    );
    let radius = |prof: &SectionProfile, p: f64| (prof.area(p) / std::f64::consts::PI).sqrt();
    let offsets = |prof: &SectionProfile| -> Vec<(f64, f64)> {
        (0..n_slices)
            .map(|i| {
                let p = prof.p_min + (prof.p_max - prof.p_min) * i as f64 / (n_slices - 1) as f64;
                (p, radius(prof, p))
            })
            .collect()
    };
    let (ra, rb) = (offsets(&pa), offsets(&pb));
    let min_margin = ra
        .par_iter()
        .map(|&(p1, r1)| {
            rb.iter()
                .map(|&(p2, r2)| {
                    let p = alpha * p1 + beta * p2;
                    radius(&pc, p) - (alpha * r1 + beta * r2)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let tolerance = INCLUSION_REL_TOL * c.diameter();
    Ok(InclusionCheck {
        holds: min_margin >= -tolerance,
        min_margin,
        tolerance,
    })
}
