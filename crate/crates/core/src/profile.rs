//! Section-volume profiles along a direction.
//!
//! For a body `K` and direction `u`, the profile is the function
//! `p -> vol_{d-1}(K ∩ {<x,u> = p})`. By Brunn-Minkowski in one dimension
//! lower, its `(d-1)`-th root is concave, so the profile is unimodal: it
//! rises to a maximum `Q` (attained on an interval `[q_lo, q_hi]`, possibly a
//! single point) and then falls. The level bounds `k_-(s)`, `k_+(s)` are the
//! ends of the superlevel set `{p : area(p) >= s}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ops::complement_coords;
use crate::geometry::{ConvexBody, Direction};
use crate::linalg::{dot, Point};
use crate::tolerance::{EPS_OFF, EPS_VOL, PLATEAU_LEVEL};

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Evaluates section measures quickly by reusing vertex heights and the
/// edge list of the boundary triangulation.
#[derive(Debug, Clone)]
pub(crate) struct SliceEvaluator {
    heights: Vec<f64>,
    coords: Vec<Point>,
    edges: Vec<(usize, usize)>,
    tol: f64,
    section_dim: usize,
}

impl SliceEvaluator {
    pub(crate) fn new(k: &ConvexBody, u: &Direction) -> Self {
        let basis = u.complement_basis();
        Self {
            heights: k.vertices().iter().map(|v| dot(v, u.as_slice())).collect(),
            coords: k
                .vertices()
                .iter()
                .map(|v| complement_coords(&basis, v))
                .collect(),
            edges: k.edges().to_vec(),
            tol: k.eps(),
            section_dim: k.dim() - 1,
        }
    }

    fn points(&self, p: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for (c, h) in self.coords.iter().zip(&self.heights) {
            if (h - p).abs() <= self.tol {
                out.push(c.clone());
            }
        }
        for &(i, j) in &self.edges {
            let (hi, hj) = (self.heights[i] - p, self.heights[j] - p);
            if (hi > self.tol && hj < -self.tol) || (hi < -self.tol && hj > self.tol) {
                let t = hi / (hi - hj);
                let (a, b) = (&self.coords[i], &self.coords[j]);
                out.push(a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect());
            }
        }
        out
    }

    /// `(d-1)`-measure of the section at offset `p`.
    pub(crate) fn area(&self, p: f64) -> f64 {
        let pts = self.points(p);
        match self.section_dim {
            _ if pts.is_empty() => 0.0,
            1 => {
                let lo = pts.iter().map(|x| x[0]).fold(f64::INFINITY, f64::min);
                let hi = pts.iter().map(|x| x[0]).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            }
            2 => convex_polygon_area(&pts),
            _ => ConvexBody::from_points(&pts)
                .map(|b| b.volume())
                .unwrap_or(0.0),
        }
    }
}

/// Area of the convex hull of points that are all in convex position or on
/// the hull boundary (as section points are).
fn convex_polygon_area(pts: &[Point]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut order: Vec<(f64, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| ((p[1] - cy).atan2(p[0] - cx), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut area = 0.0;
    for w in 0..order.len() {
        let a = &pts[order[w].1];
        let b = &pts[order[(w + 1) % order.len()].1];
        area += (a[0] - cx) * (b[1] - cy) - (b[0] - cx) * (a[1] - cy);
    }
    0.5 * area.abs()
}

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search.
fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// The section profile of a full-dimensional body along `u`.
#[derive(Debug, Clone)]
pub struct SectionProfile {
    u: Direction,
    /// Support interval: sections are nonempty exactly on `[p_min, p_max]`.
    pub p_min: f64,
    pub p_max: f64,
    /// Maximal section measure.
    pub q: f64,
    /// Ends of the arg-max set.
    pub q_lo: f64,
    pub q_hi: f64,
    breakpoints: Vec<f64>,
    breakpoint_areas: Vec<f64>,
    eval: SliceEvaluator,
    eps_off: f64,
}

/// Sections at `[p_min, p_max]` as serializable arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledProfile {
    pub offsets: Vec<f64>,
    pub areas: Vec<f64>,
}

impl SampledProfile {
    /// Offset and value of the largest sample.
    pub fn argmax(&self) -> (f64, f64) {
        let i = (0..self.areas.len())
            .max_by(|&i, &j| self.areas[i].total_cmp(&self.areas[j]))
            .unwrap();
        (self.offsets[i], self.areas[i])
    }

    pub fn step(&self) -> f64 {
        if self.offsets.len() < 2 {
            0.0
        } else {
            self.offsets[1] - self.offsets[0]
        }
    }
}

impl SectionProfile {
    pub fn build(k: &ConvexBody, u: &Direction) -> Result<Self> {
        if u.dim() != k.dim() {
            return Err(Error::DimensionMismatch {
                expected: k.dim(),
                found: u.dim(),
            });
        }
        if !k.is_full_dimensional() {
            return Err(Error::DegenerateBody);
        }
        let eval = SliceEvaluator::new(k, u);
        let mut heights = eval.heights.clone();
        heights.sort_by(f64::total_cmp);
        let mut breakpoints: Vec<f64> = Vec::new();
        for h in heights {
            if breakpoints.last().map_or(true, |&b| h - b > eval.tol) {
                breakpoints.push(h);
            }
        }
        let p_min = breakpoints[0];
        let p_max = *breakpoints.last().unwrap();
        let width = p_max - p_min;
        let eps_off = EPS_OFF * width;
        let breakpoint_areas: Vec<f64> = breakpoints.iter().map(|&b| eval.area(b)).collect();

        // area is polynomial between breakpoints and unimodal overall
        let f = |p: f64| eval.area(p);
        let mut best_p = p_min;
        let mut best = f64::NEG_INFINITY;
        for (b, a) in breakpoints.iter().zip(&breakpoint_areas) {
            if *a > best {
                best = *a;
                best_p = *b;
            }
        }
        for w in breakpoints.windows(2) {
            let (p, a) = golden_max(&f, w[0], w[1], 1e-12 * width.max(f64::MIN_POSITIVE));
            if a > best {
                best = a;
                best_p = p;
            }
        }

        let mut prof = Self {
            u: u.clone(),
            p_min,
            p_max,
            q: best,
            q_lo: best_p,
            q_hi: best_p,
            breakpoints,
            breakpoint_areas,
            eval,
            eps_off,
        };
        prof.locate_plateau(best_p);
        Ok(prof)
    }

    fn plateau_level(&self) -> f64 {
        self.q * (1.0 - PLATEAU_LEVEL)
    }

    /// Sets `q_lo`, `q_hi`. A flat top of a polytope profile is a union of
    /// whole breakpoint intervals, so plateau ends are snapped to
    /// breakpoints; anything narrower is a single maximum.
    fn locate_plateau(&mut self, argmax: f64) {
        let s = self.plateau_level();
        let raw_lo = self.lower_crossing(s, argmax);
        let raw_hi = self.upper_crossing(s, argmax);
        let top: Vec<f64> = self
            .breakpoints
            .iter()
            .zip(&self.breakpoint_areas)
            .filter(|(b, a)| {
                **b >= raw_lo - self.eps_off && **b <= raw_hi + self.eps_off && **a >= s
            })
            .map(|(b, _)| *b)
            .collect();
        let (lo, hi) = match top.as_slice() {
            [first, .., last] if last - first > self.eps_off => (*first, *last),
            [only] => (*only, *only),
            [first, ..] => (*first, *first),
            [] => (argmax, argmax),
        };
        self.q_lo = lo;
        self.q_hi = hi;
    }

    /// Smallest `p` in `[p_min, anchor]` with `area(p) >= s`, given
    /// `area(anchor) >= s`.
    fn lower_crossing(&self, s: f64, anchor: f64) -> f64 {
        if self.breakpoint_areas[0] >= s {
            return self.p_min;
        }
        // bracket with cached breakpoint values
        let mut lo = self.p_min;
        let mut hi = anchor;
        for (b, a) in self.breakpoints.iter().zip(&self.breakpoint_areas) {
            if *b >= anchor {
                break;
            }
            if *a >= s {
                hi = *b;
                break;
            }
            lo = *b;
        }
        while hi - lo > self.eps_off {
            let mid = 0.5 * (lo + hi);
            if self.eval.area(mid) >= s {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Largest `p` in `[anchor, p_max]` with `area(p) >= s`.
    fn upper_crossing(&self, s: f64, anchor: f64) -> f64 {
        if *self.breakpoint_areas.last().unwrap() >= s {
            return self.p_max;
        }
        let mut lo = anchor;
        let mut hi = self.p_max;
        for (b, a) in self.breakpoints.iter().zip(&self.breakpoint_areas).rev() {
            if *b <= anchor {
                break;
            }
            if *a >= s {
                lo = *b;
                break;
            }
            hi = *b;
        }
        while hi - lo > self.eps_off {
            let mid = 0.5 * (lo + hi);
            if self.eval.area(mid) >= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn direction(&self) -> &Direction {
        &self.u
    }

    /// Section measure at offset `p` (zero outside the support interval).
    pub fn area(&self, p: f64) -> f64 {
        if p < self.p_min - self.eval.tol || p > self.p_max + self.eval.tol {
            return 0.0;
        }
        self.eval.area(p)
    }

    /// Sorted distinct vertex offsets.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Absolute offset tolerance used by the bisections.
    pub fn eps_off(&self) -> f64 {
        self.eps_off
    }

    /// Whether the maximal section is attained on an interval.
    pub fn has_plateau(&self) -> bool {
        self.q_hi - self.q_lo > self.eps_off
    }

    /// `(k_-(s), k_+(s))`: the ends of `{p : area(p) >= s}` for `0 < s <= Q`.
    pub fn level_bounds(&self, s: f64) -> Result<(f64, f64)> {
        if !(s > 0.0) || s > self.q * (1.0 + EPS_VOL) {
            return Err(Error::OutOfRange {
                level: s,
                max: self.q,
            });
        }
        if s >= self.plateau_level() {
            return Ok((self.q_lo, self.q_hi));
        }
        Ok((
            self.lower_crossing(s, self.q_lo),
            self.upper_crossing(s, self.q_hi),
        ))
    }

    /// Volume as the integral over levels `s` in `(0, Q]` of
    /// `k_+(s) - k_-(s)`, by the composite midpoint rule.
    pub fn layer_cake_volume(&self, n_levels: usize) -> Result<f64> {
        if n_levels < 16 {
            return Err(Error::Invalid(format!(
                "layer-cake integration needs at least 16 levels, got {n_levels}"
            )));
        }
        let ds = self.q / n_levels as f64;
        let mut total = 0.0;
        for i in 0..n_levels {
            let (lo, hi) = self.level_bounds((i as f64 + 0.5) * ds)?;
            total += hi - lo;
        }
        Ok(total * ds)
    }

    /// Evenly spaced samples over the support interval.
    pub fn sampled(&self, n: usize) -> SampledProfile {
        let n = n.max(2);
        let offsets: Vec<f64> = (0..n)
            .map(|i| self.p_min + (self.p_max - self.p_min) * i as f64 / (n - 1) as f64)
            .collect();
        let areas = offsets.iter().map(|&p| self.area(p)).collect();
        SampledProfile { offsets, areas }
    }
}

/// Builds the section profile of `k` along `u`.
pub fn build_profile(k: &ConvexBody, u: &Direction) -> Result<SectionProfile> {
    SectionProfile::build(k, u)
}
