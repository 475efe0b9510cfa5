//! Quickhull in dimension 1 through 4.
//!
//! Input points must affinely span their ambient space; the caller
//! ([`super::body`]) reduces degenerate inputs to intrinsic coordinates first.
//! The output carries the extreme points, a boundary triangulation over
//! them, and the facet hyperplanes after merging coplanar simplices.

use std::collections::{HashMap, VecDeque};

use crate::linalg::{centroid, dot, norm, normal_to, rank, sub, Point};

#[derive(Debug, Clone)]
pub(crate) struct HullData {
    /// Indices into the input of the extreme points.
    pub vertices: Vec<usize>,
    /// Boundary simplices (k vertices each), as positions in `vertices`.
    pub simplices: Vec<Vec<usize>>,
    /// Merged facets as `(unit normal, offset)` pairs.
    pub facets: Vec<(Point, f64)>,
}

/// Picks up to `k + 1` affinely independent points greedily, each maximizing
/// its distance to the affine span of those already chosen. Returns fewer
/// points when the set is lower dimensional (residual below `eps`).
pub(crate) fn greedy_simplex(points: &[Point], eps: f64) -> Vec<usize> {
    let d = points[0].len();
    let first = (0..points.len())
        .min_by(|&i, &j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap();
    let mut chosen = vec![first];
    let mut basis: Vec<Point> = Vec::new();
    while chosen.len() <= d {
        let origin = &points[first];
        let mut best: Option<(f64, usize, Point)> = None;
        for (i, p) in points.iter().enumerate() {
            let mut r = sub(p, origin);
            crate::linalg::orthogonalize(&mut r, &basis);
            let n = norm(&r);
            if best.as_ref().map_or(true, |(bn, _, _)| n > *bn) {
                best = Some((n, i, r));
            }
        }
        let (n, i, r) = best.unwrap();
        if n <= eps {
            break;
        }
        chosen.push(i);
        basis.push(r.iter().map(|x| x / n).collect());
    }
    chosen
}

struct Facet {
    verts: Vec<usize>,
    nbrs: Vec<usize>,
    normal: Point,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Facet {
    #[inline]
    fn distance(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.offset
    }
}

fn plane_through(points: &[Point], verts: &[usize], interior: &[f64]) -> Option<(Point, f64)> {
    let k = interior.len();
    let p0 = &points[verts[0]];
    let edges: Vec<Point> = verts[1..].iter().map(|&v| sub(&points[v], p0)).collect();
    let mut n = normal_to(&edges, k)?;
    let mut off = verts.iter().map(|&v| dot(&n, &points[v])).sum::<f64>() / verts.len() as f64;
    if dot(&n, interior) > off {
        n.iter_mut().for_each(|x| *x = -*x);
        off = -off;
    }
    Some((n, off))
}

/// Convex hull of points spanning R^k (k = point length, 1 <= k <= 4).
pub(crate) fn hull_full(points: &[Point], eps: f64) -> HullData {
    let k = points[0].len();
    if k == 1 {
        return hull_1d(points);
    }
    let first = quickhull(points, eps);
    let extreme = extreme_points(points, &first, eps);
    let used: Vec<usize> = {
        let mut u: Vec<usize> = first.iter().flat_map(|f| f.verts.iter().copied()).collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    if extreme.len() == used.len() {
        return finish(points, &first, &used, eps);
    }
    // Some triangulation vertices are not extreme (coplanar input). Redo the
    // hull on the extreme points only so the triangulation uses vertices.
    let sub_points: Vec<Point> = extreme.iter().map(|&i| points[i].clone()).collect();
    let second = quickhull(&sub_points, eps);
    let mut used2: Vec<usize> = second
        .iter()
        .flat_map(|f| f.verts.iter().copied())
        .collect();
    used2.sort_unstable();
    used2.dedup();
    let mut data = finish(&sub_points, &second, &used2, eps);
    data.vertices = data.vertices.iter().map(|&i| extreme[i]).collect();
    data
}

fn hull_1d(points: &[Point]) -> HullData {
    let lo = (0..points.len())
        .min_by(|&i, &j| points[i][0].total_cmp(&points[j][0]))
        .unwrap();
    let hi = (0..points.len())
        .max_by(|&i, &j| points[i][0].total_cmp(&points[j][0]))
        .unwrap();
    HullData {
        vertices: vec![lo, hi],
        simplices: vec![vec![0], vec![1]],
        facets: vec![(vec![-1.0], -points[lo][0]), (vec![1.0], points[hi][0])],
    }
}

fn quickhull(points: &[Point], eps: f64) -> Vec<Facet> {
    let k = points[0].len();
    let simplex = greedy_simplex(points, eps);
    assert!(
        simplex.len() == k + 1,
        "quickhull requires full-dimensional input"
    );
    let interior = centroid(
        &simplex
            .iter()
            .map(|&i| points[i].clone())
            .collect::<Vec<_>>(),
    );

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=k {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, &v)| v)
            .collect();
        // neighbor opposite verts[s] is the facet that skips that vertex
        let nbrs: Vec<usize> = (0..=k).filter(|j| *j != skip).collect();
        let (normal, offset) =
            plane_through(points, &verts, &interior).expect("initial simplex is non-degenerate");
        facets.push(Facet {
            verts,
            nbrs,
            normal,
            offset,
            outside: Vec::new(),
            alive: true,
        });
    }

    let in_simplex: std::collections::HashSet<usize> = simplex.iter().copied().collect();
    for (i, p) in points.iter().enumerate() {
        if in_simplex.contains(&i) {
            continue;
        }
        if let Some(f) = facets.iter_mut().find(|f| f.distance(p) > eps) {
            f.outside.push(i);
        }
    }

    let mut queue: VecDeque<usize> = (0..facets.len()).collect();
    while let Some(fid) = queue.pop_front() {
        if !facets[fid].alive || facets[fid].outside.is_empty() {
            continue;
        }
        let apex = *facets[fid]
            .outside
            .iter()
            .max_by(|&&a, &&b| {
                facets[fid]
                    .distance(&points[a])
                    .total_cmp(&facets[fid].distance(&points[b]))
            })
            .unwrap();
        let p = &points[apex];

        // visible region by flood fill from fid
        let mut visible = vec![fid];
        let mut is_visible: HashMap<usize, bool> = HashMap::new();
        is_visible.insert(fid, true);
        let mut horizon: Vec<(usize, usize, usize)> = Vec::new();
        let mut idx = 0;
        while idx < visible.len() {
            let f = visible[idx];
            idx += 1;
            for s in 0..k {
                let nb = facets[f].nbrs[s];
                let vis = *is_visible
                    .entry(nb)
                    .or_insert_with(|| facets[nb].distance(p) > eps);
                if vis {
                    if !visible.contains(&nb) {
                        visible.push(nb);
                    }
                } else {
                    horizon.push((f, s, nb));
                }
            }
        }

        let mut orphans: Vec<usize> = Vec::new();
        for &f in &visible {
            facets[f].alive = false;
            orphans.extend(facets[f].outside.drain(..).filter(|&i| i != apex));
        }

        let mut ridge_map: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        let mut new_ids = Vec::with_capacity(horizon.len());
        for &(f, s, nb) in &horizon {
            let mut verts = facets[f].verts.clone();
            let dropped = verts[s];
            verts[s] = apex;
            let (normal, offset) = plane_through(points, &verts, &interior)
                .unwrap_or_else(|| (facets[nb].normal.clone(), facets[nb].offset));
            let id = facets.len();
            let mut nbrs = vec![usize::MAX; k];
            nbrs[s] = nb;
            // point the horizon facet back at the new one
            let ridge: Vec<usize> = facets[f]
                .verts
                .iter()
                .copied()
                .filter(|&v| v != dropped)
                .collect();
            let slot = facets[nb]
                .verts
                .iter()
                .position(|v| !ridge.contains(v))
                .expect("horizon neighbor shares the ridge");
            facets[nb].nbrs[slot] = id;
            for t in 0..k {
                if t == s {
                    continue;
                }
                let mut key: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != t)
                    .map(|(_, &v)| v)
                    .collect();
                key.sort_unstable();
                if let Some((other, oslot)) = ridge_map.remove(&key) {
                    nbrs[t] = other;
                    facets[other].nbrs[oslot] = id;
                } else {
                    ridge_map.insert(key, (id, t));
                }
            }
            facets.push(Facet {
                verts,
                nbrs,
                normal,
                offset,
                outside: Vec::new(),
                alive: true,
            });
            new_ids.push(id);
        }
        debug_assert!(ridge_map.is_empty(), "unmatched ridges in horizon");

        for i in orphans {
            let q = &points[i];
            if let Some(&nf) = new_ids.iter().find(|&&nf| facets[nf].distance(q) > eps) {
                facets[nf].outside.push(i);
            }
        }
        for &nf in &new_ids {
            if !facets[nf].outside.is_empty() {
                queue.push_back(nf);
            }
        }
    }

    // compact, remapping neighbor indices
    let mut remap = vec![usize::MAX; facets.len()];
    let mut out = Vec::new();
    for (i, f) in facets.into_iter().enumerate() {
        if f.alive {
            remap[i] = out.len();
            out.push(f);
        }
    }
    for f in &mut out {
        for n in &mut f.nbrs {
            *n = remap[*n];
        }
    }
    out
}

/// Groups coplanar neighboring simplices into facets. Returns, per simplex,
/// its group index, and the group planes.
fn merge_coplanar(points: &[Point], facets: &[Facet], eps: f64) -> (Vec<usize>, Vec<(Point, f64)>) {
    let mut group = vec![usize::MAX; facets.len()];
    let mut planes: Vec<(Point, f64)> = Vec::new();
    for start in 0..facets.len() {
        if group[start] != usize::MAX {
            continue;
        }
        let g = planes.len();
        let n = facets[start].normal.clone();
        let b = facets[start].offset;
        group[start] = g;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &nb in &facets[f].nbrs {
                if group[nb] != usize::MAX || dot(&facets[nb].normal, &n) <= 0.0 {
                    continue;
                }
                let coplanar = facets[nb]
                    .verts
                    .iter()
                    .all(|&v| (dot(&n, &points[v]) - b).abs() <= eps);
                if coplanar {
                    group[nb] = g;
                    stack.push(nb);
                }
            }
        }
        planes.push((n, b));
    }
    (group, planes)
}

fn extreme_points(points: &[Point], facets: &[Facet], eps: f64) -> Vec<usize> {
    let k = points[0].len();
    let (group, planes) = merge_coplanar(points, facets, eps);
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for &v in &f.verts {
            let e = incident.entry(v).or_default();
            if !e.contains(&group[fi]) {
                e.push(group[fi]);
            }
        }
    }
    let mut out: Vec<usize> = incident
        .into_iter()
        .filter(|(_, gs)| {
            let normals: Vec<&[f64]> = gs.iter().map(|&g| planes[g].0.as_slice()).collect();
            rank(&normals, 1e-7) == k
        })
        .map(|(v, _)| v)
        .collect();
    out.sort_unstable();
    out
}

fn finish(points: &[Point], facets: &[Facet], used: &[usize], eps: f64) -> HullData {
    let (_, planes) = merge_coplanar(points, facets, eps);
    let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let simplices = facets
        .iter()
        .map(|f| f.verts.iter().map(|v| pos[v]).collect())
        .collect();
    let planes = planes
        .into_iter()
        .map(|(n, _)| {
            // offset from the supported vertices, not the seed simplex
            let b = used
                .iter()
                .map(|&v| dot(&n, &points[v]))
                .fold(f64::NEG_INFINITY, f64::max);
            (n, b)
        })
        .collect();
    HullData {
        vertices: used.to_vec(),
        simplices,
        facets: planes,
    }
}
