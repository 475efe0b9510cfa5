//! Point-to-polytope distance (GJK with a brute-force simplex solver) and
//! the Hausdorff distance between polytopes.

use super::body::ConvexBody;
use crate::linalg::{dot, norm, solve, sub, Point};

/// Closest point to the origin on the simplex spanned by `pts`. Returns the
/// point and the minimal subset of `pts` supporting it.
fn closest_on_simplex(pts: &[Point]) -> (Point, Vec<Point>) {
    let n = pts.len();
    let mut best: Option<(f64, Point, Vec<Point>)> = None;
    for mask in 1u32..(1u32 << n) {
        let sub_pts: Vec<&Point> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &pts[i])
            .collect();
        let base = sub_pts[0];
        let dirs: Vec<Point> = sub_pts[1..].iter().map(|p| sub(p, base)).collect();
        let m = dirs.len();
        let (y, ok) = if m == 0 {
            (base.clone(), true)
        } else {
            // minimize |base + D mu|^2 : (D^T D) mu = -D^T base
            let gram: Vec<Point> = dirs
                .iter()
                .map(|a| dirs.iter().map(|b| dot(a, b)).collect())
                .collect();
            let rhs: Point = dirs.iter().map(|a| -dot(a, base)).collect();
            match solve(&gram, &rhs, 1e-13) {
                Some(mu) => {
                    let lam0 = 1.0 - mu.iter().sum::<f64>();
                    let ok = lam0 >= -1e-12 && mu.iter().all(|&x| x >= -1e-12);
                    let mut y = base.clone();
                    for (d, c) in dirs.iter().zip(&mu) {
                        for (yi, di) in y.iter_mut().zip(d) {
                            *yi += c * di;
                        }
                    }
                    (y, ok)
                }
                None => (base.clone(), false),
            }
        };
        if !ok {
            continue;
        }
        let d = norm(&y);
        if best.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
            best = Some((d, y, sub_pts.into_iter().cloned().collect()));
        }
    }
    let (_, y, s) = best.expect("single vertices are always feasible");
    (y, s)
}

/// Euclidean distance from `x` to the convex hull of `body`'s vertices.
pub fn point_distance(body: &ConvexBody, x: &[f64]) -> f64 {
    if body.is_full_dimensional() && body.contains(x, 0.0) {
        return 0.0;
    }
    let shifted: Vec<Point> = body.vertices().iter().map(|v| sub(v, x)).collect();
    let scale = body.scale().max(norm(&shifted[0])).max(f64::MIN_POSITIVE);
    let mut simplex = vec![shifted[0].clone()];
    let mut y = shifted[0].clone();
    let mut best = norm(&y);
    for _ in 0..64 {
        let yy = dot(&y, &y);
        if yy <= (1e-15 * scale).powi(2) {
            return 0.0;
        }
        let w = shifted
            .iter()
            .min_by(|a, b| dot(a, &y).total_cmp(&dot(b, &y)))
            .unwrap();
        // no vertex improves beyond rounding: y is optimal
        if yy - dot(w, &y) <= 1e-13 * scale * scale.max(yy.sqrt()) {
            break;
        }
        if simplex.iter().any(|s| s == w) {
            break;
        }
        simplex.push(w.clone());
        let (ny, ns) = closest_on_simplex(&simplex);
        let nd = norm(&ny);
        if nd >= best {
            break;
        }
        best = nd;
        y = ny;
        simplex = ns;
    }
    best
}

/// Largest distance from a vertex of `a` to `b`.
pub fn directed_hausdorff(a: &ConvexBody, b: &ConvexBody) -> f64 {
    a.vertices()
        .iter()
        .map(|v| point_distance(b, v))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two polytopes. Exact: the distance to a
/// convex set is convex, so its maximum over a polytope sits at a vertex.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
