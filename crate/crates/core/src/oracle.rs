//! Brute-force estimators used to cross-check the exact routines.
//!
//! Everything here touches a body only through [`ConvexBody::contains`] and
//! its raw vertex coordinates, never through volumes, sections or profiles.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Direction};
use crate::harness::rng::SplitMix64;
use crate::linalg::{dot, Point};
use crate::profile::SampledProfile;

/// Inflation applied to the vertex bounding box.
const BOX_PAD: f64 = 1e-6;

/// Regular grid over a padded bounding box.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub n: usize,
    pub lo: Point,
    pub hi: Point,
}

impl GridSpec {
    pub fn new(points: &[Point], n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::Invalid(format!("grid needs n >= 16, got {n}")));
        }
        let d = points[0].len();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in points {
            for i in 0..d {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        lo.iter_mut().for_each(|x| *x -= BOX_PAD);
        hi.iter_mut().for_each(|x| *x += BOX_PAD);
        Ok(Self { n, lo, hi })
    }

    fn step(&self, i: usize) -> f64 {
        (self.hi[i] - self.lo[i]) / self.n as f64
    }

    fn cell_volume(&self) -> f64 {
        (0..self.lo.len()).map(|i| self.step(i)).product()
    }

    /// Number of cell centers accepted by `inside`, sweeping slabs of the
    /// first axis in parallel. `inside` must describe a convex set: along
    /// each grid line of the last axis the accepted cells then form one
    /// interval, whose ends are found by bisection once any accepted cell is
    /// known (the middle of the previous line's interval is tried first).
    fn count<F: Fn(&[f64]) -> bool + Sync>(&self, inside: F) -> u64 {
        let d = self.lo.len();
        let n = self.n;
        let last = d - 1;
        let lines_per_slab = n.pow(d as u32 - 2);
        (0..n)
            .into_par_iter()
            .map(|i0| {
                let mut x = vec![0.0; d];
                x[0] = self.lo[0] + (i0 as f64 + 0.5) * self.step(0);
                let mut hits = 0u64;
                let mut hint: Option<usize> = None;
                for mut idx in 0..lines_per_slab {
                    for axis in 1..last {
                        let i = idx % n;
                        idx /= n;
                        x[axis] = self.lo[axis] + (i as f64 + 0.5) * self.step(axis);
                    }
                    let span = self.line_interval(&mut x, hint, &inside);
                    hint = span.map(|(a, b)| (a + b) / 2);
                    hits += span.map_or(0, |(a, b)| (b - a + 1) as u64);
                }
                hits
            })
            .sum()
    }

    /// Accepted index interval along the last axis, with the other
    /// coordinates of `x` fixed.
    fn line_interval<F: Fn(&[f64]) -> bool>(
        &self,
        x: &mut [f64],
        hint: Option<usize>,
        inside: &F,
    ) -> Option<(usize, usize)> {
        let last = x.len() - 1;
        let (lo, step) = (self.lo[last], self.step(last));
        let mut test = |i: usize| {
            x[last] = lo + (i as f64 + 0.5) * step;
            inside(x)
        };
        let seed = match hint.filter(|&h| test(h)) {
            Some(h) => h,
            None => (0..self.n).find(|&i| test(i))?,
        };
        // first accepted index in [0, seed]
        let (mut a, mut b) = (0, seed);
        if test(0) {
            b = 0;
        } else {
            while b - a > 1 {
                let m = (a + b) / 2;
                if test(m) {
                    b = m;
                } else {
                    a = m;
                }
            }
        }
        let first = b;
        // last accepted index in [seed, n)
        let (mut a, mut b) = (seed, self.n - 1);
        if test(b) {
            a = b;
        } else {
            while b - a > 1 {
                let m = (a + b) / 2;
                if test(m) {
                    a = m;
                } else {
                    b = m;
                }
            }
        }
        Some((first, a))
    }
}

/// Volume by counting grid cell centers inside `k`.
pub fn grid_volume(k: &ConvexBody, n: usize) -> Result<f64> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let grid = GridSpec::new(k.vertices(), n)?;
    let hits = grid.count(|x| k.contains(x, 0.0));
    Ok(hits as f64 * grid.cell_volume())
}

/// Seeded Monte Carlo volume estimate, for spot checks.
pub fn mc_volume(k: &ConvexBody, samples: usize, seed: u64) -> Result<f64> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let (lo, hi) = k.bounding_box();
    let mut rng = SplitMix64::new(seed);
    let mut hits = 0usize;
    let mut x = vec![0.0; k.dim()];
    for _ in 0..samples {
        for i in 0..x.len() {
            x[i] = rng.uniform(lo[i], hi[i]);
        }
        if k.contains(&x, 0.0) {
            hits += 1;
        }
    }
    let boxvol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    Ok(boxvol * hits as f64 / samples as f64)
}

/// Section areas at `n_offsets` cell-centered offsets, each estimated by
/// counting an `n_grid`^(d-1) grid in the complement of `u`.
pub fn grid_section_profile(
    k: &ConvexBody,
    u: &Direction,
    n_offsets: usize,
    n_grid: usize,
) -> Result<SampledProfile> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let basis = u.complement_basis();
    let heights: Vec<f64> = k.vertices().iter().map(|v| dot(v, u.as_slice())).collect();
    let p_min = heights.iter().copied().fold(f64::INFINITY, f64::min);
    let p_max = heights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shadow: Vec<Point> = k
        .vertices()
        .iter()
        .map(|v| basis.iter().map(|e| dot(e, v)).collect())
        .collect();
    let grid = GridSpec::new(&shadow, n_grid)?;
    let dp = (p_max - p_min) / n_offsets as f64;
    let offsets: Vec<f64> = (0..n_offsets)
        .map(|i| p_min + (i as f64 + 0.5) * dp)
        .collect();
    let areas = offsets
        .iter()
        .map(|&p| {
            let hits = grid.count(|y| {
                let mut x: Point = u.as_slice().iter().map(|ui| p * ui).collect();
                for (e, c) in basis.iter().zip(y) {
                    for (xi, ei) in x.iter_mut().zip(e) {
                        *xi += c * ei;
                    }
                }
                k.contains(&x, 0.0)
            });
            hits as f64 * grid.cell_volume()
        })
        .collect();
    Ok(SampledProfile { offsets, areas })
}
