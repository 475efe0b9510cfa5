//! Equality cases of the Bonnesen inequalities.
//!
//! Equality holds exactly when `A` and `B` are homothetic, or when they are
//! obtained from homothetic bodies `A'`, `B'` by stretching along a common
//! direction `v` (for the projection inequality, `v = u`; for the section
//! inequality, `A'` must also satisfy `π_v(A') = π_v(A' ∩ H)` for its
//! maximal-section hyperplane `H`). The classifiers here recover that data
//! and verify it before returning.

use serde::{Deserialize, Serialize};

use crate::bonnesen::{verify_chain, Mode};
use crate::error::{Error, Result};
use crate::geometry::ops::{chord, slice};
use crate::geometry::{hausdorff, project, stretch, ConvexBody, Direction, Halfspace};
use crate::harness::random::random_body_with;
use crate::harness::rng::SplitMix64;
use crate::harness::scenario::{EqualityKind, GroundTruth, Scenario};
use crate::linalg::{dot, norm, scale, solve, sub, Point};
use crate::profile::SectionProfile;
use crate::tolerance::Tolerances;

/// Largest angle between stretch directions recovered from `A` and `B`.
pub const ANGLE_TOL: f64 = 1e-6;

/// `B = lambda * A + t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Homothety {
    pub lambda: f64,
    pub t: Point,
    /// `Hausdorff(B, lambda A + t) / diam(B)`.
    pub residual: f64,
}

/// Hausdorff residuals of a stretched-pair witness, relative to diameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub a: f64,
    pub b: f64,
    pub homothety: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<f64>,
}

/// `A = A' + [0, lambda_a v]`, `B = B' + [w, w + lambda_b v]`, with `A'`,
/// `B'` homothetic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StretchedPair {
    pub v: Direction,
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub a_prime: ConvexBody,
    pub b_prime: ConvexBody,
    pub w: Point,
    /// Maximal-section hyperplane of `A'` (section case only), stored as
    /// the boundary of a halfspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Halfspace>,
    pub hom: Homothety,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EqualityWitness {
    Homothetic(Homothety),
    StretchedPair(StretchedPair),
    NoEquality { reason: String },
}

impl EqualityWitness {
    pub fn kind_name(&self) -> &'static str {
        match self {
            EqualityWitness::Homothetic(_) => "Homothetic",
            EqualityWitness::StretchedPair(_) => "StretchedPair",
            EqualityWitness::NoEquality { .. } => "NoEquality",
        }
    }

    fn none(reason: impl Into<String>) -> Self {
        EqualityWitness::NoEquality {
            reason: reason.into(),
        }
    }
}

/// Tries `B = λA + t` with `λ` from the volume ratio and `t` from the
/// centroids. Flat bodies are compared through their intrinsic measures.
pub fn detect_homothety(a: &ConvexBody, b: &ConvexBody, tol: f64) -> Result<Option<Homothety>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let k = a.intrinsic_dim();
    if k == 0 || b.intrinsic_dim() == 0 {
        return Err(Error::DegenerateBody);
    }
    if b.intrinsic_dim() != k {
        return Ok(None);
    }
    let lambda = (b.intrinsic_volume() / a.intrinsic_volume()).powf(1.0 / k as f64);
    if !(lambda.is_finite() && lambda > 0.0) {
        return Ok(None);
    }
    let t: Point = b
        .centroid()
        .iter()
        .zip(a.centroid())
        .map(|(cb, ca)| cb - lambda * ca)
        .collect();
    let image = a.affine_image(lambda, &t)?;
    let residual = hausdorff(&image, b) / b.diameter();
    Ok((residual <= tol).then_some(Homothety {
        lambda,
        t,
        residual,
    }))
}

/// Direction and length of the translation between the extreme maximal
/// sections of `K` orthogonal to `u`, or `None` if the maximal section is
/// unique.
pub fn max_slab_stretch(
    k: &ConvexBody,
    u: &Direction,
    tol: &Tolerances,
) -> Result<Option<(Direction, f64)>> {
    let prof = SectionProfile::build(k, u)?;
    if !prof.has_plateau() {
        return Ok(None);
    }
    let lo = slice(k, u, prof.q_lo)?.ok_or(Error::DegenerateBody)?;
    let hi = slice(k, u, prof.q_hi)?.ok_or(Error::DegenerateBody)?;
    let w = sub(hi.centroid(), lo.centroid());
    let residual = hausdorff(&lo.translate(&w)?, &hi) / k.diameter();
    if residual > tol.eps_wit {
        return Err(Error::NotATranslate { residual });
    }
    let len = norm(&w);
    Ok(Some((Direction::new(w)?, len)))
}

/// Vertices of `{x : <a_i, x> <= b_i}` in R^k by brute force over
/// k-subsets of the constraints.
fn enumerate_vertices(hs: &[(Point, f64)], k: usize, tol: f64) -> Vec<Point> {
    let n = hs.len();
    let mut out = Vec::new();
    if n < k {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let m: Vec<Point> = idx.iter().map(|&i| hs[i].0.clone()).collect();
        let rhs: Vec<f64> = idx.iter().map(|&i| hs[i].1).collect();
        if let Some(x) = solve(&m, &rhs, 1e-10) {
            if hs.iter().all(|(a, b)| dot(a, &x) <= b + tol) {
                out.push(x);
            }
        }
        // next combination
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Minkowski erosion `K ⊖ [0, λv] = K ∩ (K - λv)`, returned only if
/// stretching it back reproduces `K` within `eps_wit * diam(K)`.
pub fn destretch(
    k: &ConvexBody,
    v: &Direction,
    lambda: f64,
    tol: &Tolerances,
) -> Option<ConvexBody> {
    if lambda == 0.0 {
        return Some(k.clone());
    }
    if !(lambda > 0.0) || v.dim() != k.dim() || k.intrinsic_dim() == 0 {
        return None;
    }
    let (vl, off) = k.vector_to_local(v.as_slice());
    if off > 1e-12 {
        return None;
    }
    let hs: Vec<(Point, f64)> = k
        .relative_facets()
        .iter()
        .map(|h| {
            let s = dot(&h.normal, &vl).max(0.0);
            (h.normal.clone(), h.offset - lambda * s)
        })
        .collect();
    let local = enumerate_vertices(&hs, k.intrinsic_dim(), 10.0 * k.eps());
    if local.is_empty() {
        return None;
    }
    let pts: Vec<Point> = local.iter().map(|y| k.to_ambient(y)).collect();
    let eroded = ConvexBody::from_points(&pts).ok()?;
    let back = stretch(&eroded, v.as_slice(), lambda).ok()?;
    (hausdorff(&back, k) <= tol.eps_wit * k.diameter()).then_some(eroded)
}

/// Largest `λ` with `K = K' + [0, λu]`: the shortest chord of `K` along
/// `u`. Chord length is concave over `π_u K`, so the minimum sits over a
/// vertex of the projection.
pub fn max_stretch_length(k: &ConvexBody, u: &Direction) -> Result<f64> {
    if !k.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let base = project(k, u)?;
    let basis = u.complement_basis();
    let mut best = f64::INFINITY;
    for y in base.vertices() {
        let mut x = vec![0.0; k.dim()];
        for (c, e) in y.iter().zip(&basis) {
            for (xi, ei) in x.iter_mut().zip(e) {
                *xi += c * ei;
            }
        }
        let len = chord(k, &x, u.as_slice()).map_or(0.0, |(lo, hi)| (hi - lo).max(0.0));
        best = best.min(len);
    }
    Ok(best)
}

fn check_inputs(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
) -> Result<()> {
    if a.dim() != b.dim() || u.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: if b.dim() != a.dim() { b.dim() } else { u.dim() },
        });
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::Invalid("coefficients must be positive".into()));
    }
    Ok(())
}

fn precondition(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    mode: Mode,
    tol: &Tolerances,
) -> Result<()> {
    check_inputs(a, b, alpha, beta, u)?;
    let s = alpha + beta;
    let report = verify_chain(a, b, alpha / s, beta / s, u, mode, tol)?;
    if !report.equality_bonnesen {
        return Err(Error::PreconditionViolated(format!(
            "no equality in the {mode} inequality: gap {:.3e} (relative {:.3e})",
            report.gap_bonnesen,
            report.gap_bonnesen / report.lhs
        )));
    }
    Ok(())
}

/// Offset of the maximal-section hyperplane of `a'` orthogonal to `u`.
fn max_section_offset(a_prime: &ConvexBody, u: &Direction) -> Option<f64> {
    if a_prime.is_full_dimensional() {
        return SectionProfile::build(a_prime, u).ok().map(|p| p.q_lo);
    }
    let (lo, hi) = a_prime.extent_along(u.as_slice());
    (hi - lo <= a_prime.eps()).then_some(0.5 * (lo + hi))
}

/// Moves the largest common stretch into the bases, so that at least one
/// of the two lengths is zero, then verifies the witness.
#[allow(clippy::too_many_arguments)]
fn finish_pair(
    a: &ConvexBody,
    b: &ConvexBody,
    v: Direction,
    lambda_a: f64,
    lambda_b: f64,
    a_prime: ConvexBody,
    b_prime: ConvexBody,
    hom: Homothety,
    u_for_h: Option<&Direction>,
    tol: &Tolerances,
) -> Result<EqualityWitness> {
    let m = lambda_a.min(lambda_b / hom.lambda);
    let (mut lambda_a, mut lambda_b) = (lambda_a - m, lambda_b - hom.lambda * m);
    let (a_prime, b_prime) = if m > 0.0 {
        (
            stretch(&a_prime, v.as_slice(), m)?,
            stretch(&b_prime, v.as_slice(), hom.lambda * m)?,
        )
    } else {
        (a_prime, b_prime)
    };
    let snap = tol.eps_wit * a.diameter().max(b.diameter());
    if lambda_a <= snap {
        lambda_a = 0.0;
    }
    if lambda_b <= snap {
        lambda_b = 0.0;
    }
    if lambda_a == 0.0 && lambda_b == 0.0 {
        return Ok(EqualityWitness::none(
            "stretch lengths cancel; bodies are homothetic",
        ));
    }

    let ra = hausdorff(&stretch(&a_prime, v.as_slice(), lambda_a)?, a) / a.diameter();
    let rb = hausdorff(&stretch(&b_prime, v.as_slice(), lambda_b)?, b) / b.diameter();
    let Some(hom) = detect_homothety(&a_prime, &b_prime, tol.eps_wit)? else {
        return Ok(EqualityWitness::none("canonical bases are not homothetic"));
    };
    if ra > tol.eps_wit || rb > tol.eps_wit {
        return Ok(EqualityWitness::none(format!(
            "reconstruction residuals {ra:.3e}, {rb:.3e} exceed tolerance"
        )));
    }

    let (h, hyperplane) = match u_for_h {
        None => (None, None),
        Some(u) => {
            let Some(q) = max_section_offset(&a_prime, u) else {
                return Ok(EqualityWitness::none(
                    "no maximal-section hyperplane for A'",
                ));
            };
            let Some(sec) = slice(&a_prime, u, q)? else {
                return Ok(EqualityWitness::none("empty maximal section of A'"));
            };
            let r = hausdorff(&project(&a_prime, &v)?, &project(&sec, &v)?) / a_prime.diameter();
            if r > tol.eps_wit {
                return Ok(EqualityWitness::none(format!(
                    "projection of A' along v is not the projection of its maximal section (residual {r:.3e})"
                )));
            }
            (Some(Halfspace::new(u.as_slice().to_vec(), q)?), Some(r))
        }
    };
    let w = vec![0.0; a.dim()];
    Ok(EqualityWitness::StretchedPair(StretchedPair {
        residuals: Residuals {
            a: ra,
            b: rb,
            homothety: hom.residual,
            hyperplane,
        },
        v,
        lambda_a,
        lambda_b,
        a_prime,
        b_prime,
        w,
        h,
        hom,
    }))
}

/// Classifies an equality case of the section inequality.
pub fn classify_section_equality(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    tol: &Tolerances,
) -> Result<EqualityWitness> {
    precondition(a, b, alpha, beta, u, Mode::Section, tol)?;
    if let Some(h) = detect_homothety(a, b, tol.eps_wit)? {
        return Ok(EqualityWitness::Homothetic(h));
    }
    let sa = max_slab_stretch(a, u, tol)?;
    let sb = max_slab_stretch(b, u, tol)?;
    let (v, lambda_a, lambda_b) = match (sa, sb) {
        (None, None) => {
            return Ok(EqualityWitness::none(
                "neither body has a slab of maximal sections",
            ))
        }
        (Some((va, la)), Some((vb, lb))) => {
            let angle = va.angle_to(&vb);
            if angle > ANGLE_TOL {
                return Ok(EqualityWitness::none(format!(
                    "stretch directions differ by {angle:.3e} rad"
                )));
            }
            (va, la, lb)
        }
        (Some((va, la)), None) => (va, la, 0.0),
        (None, Some((vb, lb))) => (vb, 0.0, lb),
    };
    let (Some(ap), Some(bp)) = (
        destretch(a, &v, lambda_a, tol),
        destretch(b, &v, lambda_b, tol),
    ) else {
        return Ok(EqualityWitness::none(
            "de-stretching failed its round-trip check",
        ));
    };
    let Some(hom) = detect_homothety(&ap, &bp, tol.eps_wit)? else {
        return Ok(EqualityWitness::none(
            "de-stretched bodies are not homothetic",
        ));
    };
    finish_pair(a, b, v, lambda_a, lambda_b, ap, bp, hom, Some(u), tol)
}

/// Classifies an equality case of the projection inequality.
pub fn classify_projection_equality(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    tol: &Tolerances,
) -> Result<EqualityWitness> {
    precondition(a, b, alpha, beta, u, Mode::Projection, tol)?;
    if let Some(h) = detect_homothety(a, b, tol.eps_wit)? {
        return Ok(EqualityWitness::Homothetic(h));
    }
    let lambda_a = max_stretch_length(a, u)?;
    let lambda_b = max_stretch_length(b, u)?;
    let (Some(ap), Some(bp)) = (
        destretch(a, u, lambda_a, tol),
        destretch(b, u, lambda_b, tol),
    ) else {
        return Ok(EqualityWitness::none(
            "de-stretching failed its round-trip check",
        ));
    };
    let Some(hom) = detect_homothety(&ap, &bp, tol.eps_wit)? else {
        return Ok(EqualityWitness::none(
            "de-stretched bodies are not homothetic",
        ));
    };
    finish_pair(a, b, u.clone(), lambda_a, lambda_b, ap, bp, hom, None, tol)
}

/// Dispatches on the mode.
pub fn classify(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    mode: Mode,
    tol: &Tolerances,
) -> Result<EqualityWitness> {
    match mode {
        Mode::Section => classify_section_equality(a, b, alpha, beta, u, tol),
        Mode::Projection => classify_projection_equality(a, b, alpha, beta, u, tol),
    }
}

/// Cone over a random `(d-1)`-polytope in `u^⊥` whose apex projects into
/// the base.
fn random_cone(rng: &mut SplitMix64, u: &Direction) -> Result<ConvexBody> {
    let d = u.dim();
    let basis = u.complement_basis();
    let n_base = if d == 2 { 2 } else { 6 };
    for _ in 0..8 {
        let base: Vec<Point> = (0..n_base)
            .map(|_| {
                let y = if d == 2 {
                    vec![rng.uniform(-1.0, 1.0)]
                } else {
                    rng.in_ball(d - 1)
                };
                let mut x = vec![0.0; d];
                for (c, e) in y.iter().zip(&basis) {
                    for (xi, ei) in x.iter_mut().zip(e) {
                        *xi += c * ei;
                    }
                }
                x
            })
            .collect();
        let weights: Vec<f64> = (0..n_base).map(|_| rng.uniform(0.1, 1.0)).collect();
        let total: f64 = weights.iter().sum();
        let mut apex = scale(u.as_slice(), rng.uniform(0.5, 1.5));
        for (w, p) in weights.iter().zip(&base) {
            for (ai, pi) in apex.iter_mut().zip(p) {
                *ai += w / total * pi;
            }
        }
        let mut pts = base;
        pts.push(apex);
        let cone = ConvexBody::hull(&pts, d)?;
        if cone.is_full_dimensional() && cone.volume() > 1e-3 {
            return Ok(cone);
        }
    }
    Err(Error::DegenerateSample { attempts: 8 })
}

/// A random instance of the given equality family:
/// `A = ρ₁A' + t₁ + [0, λ₁u]`, `B = ρ₂A' + t₂ + [0, λ₂u]`.
pub fn build_equality_instance(kind: EqualityKind, seed: u64, d: usize) -> Result<Scenario> {
    if !(2..=3).contains(&d) {
        return Err(Error::Unsupported(format!(
            "equality instances are generated for d = 2, 3; got {d}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let u = Direction::new(rng.unit_vector(d))?;
    let base = match kind {
        EqualityKind::SectionStretch => random_cone(&mut rng, &u)?,
        _ => random_body_with(&mut rng, d, 8)?,
    };
    let alpha = rng.uniform(0.1, 0.9);
    let rho1 = rng.uniform(0.5, 1.5);
    let rho2 = rng.uniform(0.5, 2.0);
    let t1 = rng.in_ball(d);
    let t2 = rng.in_ball(d);
    let (l1, l2) = match kind {
        EqualityKind::Homothety => (0.0, 0.0),
        _ => loop {
            let l1 = if rng.next_f64() < 0.25 {
                0.0
            } else {
                rng.uniform(0.0, 1.0)
            };
            let l2 = if l1 > 0.0 && rng.next_f64() < 0.25 {
                0.0
            } else {
                rng.uniform(0.0, 1.0)
            };
            if (l1 / rho1 - l2 / rho2).abs() >= 0.1 {
                break (l1, l2);
            }
        },
    };
    let a = stretch(&base.affine_image(rho1, &t1)?, u.as_slice(), l1)?;
    let b = stretch(&base.affine_image(rho2, &t2)?, u.as_slice(), l2)?;
    let m = (l1 / rho1).min(l2 / rho2);
    let truth = GroundTruth {
        kind,
        v: u.clone(),
        lambda_a: l1 - rho1 * m,
        lambda_b: l2 - rho2 * m,
        ratio: rho2 / rho1,
    };
    Ok(Scenario {
        a,
        b,
        alpha,
        beta: 1.0 - alpha,
        u,
        mode: match kind {
            EqualityKind::ProjectionStretch => Mode::Projection,
            _ => Mode::Section,
        },
        tolerances: Tolerances::default(),
        seed,
        truth: Some(truth),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn homothety_of_random_body() {
        let a = crate::harness::random::random_body(3, 20, 4).unwrap();
        let b = a.affine_image(2.0, &[1.0, 1.0, 1.0]).unwrap();
        let h = detect_homothety(&a, &b, 1e-6).unwrap().unwrap();
        assert!((h.lambda - 2.0).abs() < 1e-9);
        assert!(h.t.iter().all(|x| (x - 1.0).abs() < 1e-9));
        let o = shapes::cross_polytope(3);
        assert!(detect_homothety(&shapes::cube(3), &o, 1e-6)
            .unwrap()
            .is_none());
    }

    #[test]
    fn homothety_of_flat_bodies() {
        let sq = ConvexBody::hull(
            &[
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![0.0, 1.0, 0.0],
            ],
            3,
        )
        .unwrap();
        let big = sq.affine_image(3.0, &[0.0, 0.0, 2.0]).unwrap();
        let h = detect_homothety(&sq, &big, 1e-9).unwrap().unwrap();
        assert!((h.lambda - 3.0).abs() < 1e-12);
    }

    #[test]
    fn slab_stretch_examples() {
        let u = Direction::axis(3, 2);
        let (v, l) = max_slab_stretch(&shapes::cube(3), &u, &tol())
            .unwrap()
            .unwrap();
        assert!(v.angle_to(&u) < 1e-12 && (l - 1.0).abs() < 1e-12);
        assert!(max_slab_stretch(&shapes::cross_polytope(3), &u, &tol())
            .unwrap()
            .is_none());

        let tri = [
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ];
        let mut pts = tri.to_vec();
        pts.extend(tri.iter().map(|p| vec![p[0] + 0.3, p[1], p[2] + 1.0]));
        let prism = ConvexBody::hull(&pts, 3).unwrap();
        let (v, l) = max_slab_stretch(&prism, &u, &tol()).unwrap().unwrap();
        let w = [0.3, 0.0, 1.0];
        let expect = Direction::new(w.to_vec()).unwrap();
        assert!(v.angle_to(&expect) < 1e-9);
        assert!((l - norm(&w)).abs() < 1e-9);
    }

    #[test]
    fn destretch_examples() {
        let e3 = Direction::axis(3, 2);
        let sq = destretch(&shapes::cube(3), &e3, 1.0, &tol()).unwrap();
        assert_eq!(sq.intrinsic_dim(), 2);
        assert!((sq.intrinsic_volume() - 1.0).abs() < 1e-12);
        assert!(sq.vertices().iter().all(|p| p[2].abs() < 1e-12));

        let tri = ConvexBody::hull(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]], 2).unwrap();
        let e2 = Direction::axis(2, 1);
        let pent = stretch(&tri, e2.as_slice(), 1.0).unwrap();
        let back = destretch(&pent, &e2, 1.0, &tol()).unwrap();
        assert!(hausdorff(&back, &tri) < 1e-12);

        assert!(destretch(&shapes::cross_polytope(3), &e3, 0.5, &tol()).is_none());
        let c = shapes::cube(3);
        assert!(hausdorff(&destretch(&c, &e3, 0.0, &tol()).unwrap(), &c) == 0.0);
    }

    // Erosion by a segment, checked pointwise: x is in K ⊖ [0, λv] iff x and
    // x + λv are both in K.
    #[test]
    fn erosion_matches_pointwise_definition() {
        for seed in 0..5 {
            let k = crate::harness::random::random_body(2, 10, seed).unwrap();
            let v = Direction::new(vec![0.6, 0.8]).unwrap();
            let lambda = 0.3;
            let hs: Vec<(Point, f64)> = k
                .facets()
                .iter()
                .map(|h| {
                    (
                        h.normal.clone(),
                        h.offset - lambda * dot(&h.normal, v.as_slice()).max(0.0),
                    )
                })
                .collect();
            let verts = enumerate_vertices(&hs, 2, 1e-12);
            let eroded = ConvexBody::hull(&verts, 2).unwrap();
            let n = 60;
            for i in 0..=n {
                for j in 0..=n {
                    let x = vec![
                        -1.0 + 2.0 * i as f64 / n as f64,
                        -1.0 + 2.0 * j as f64 / n as f64,
                    ];
                    let y: Point = x
                        .iter()
                        .zip(v.as_slice())
                        .map(|(a, b)| a + lambda * b)
                        .collect();
                    let inside = k.contains(&x, 0.0) && k.contains(&y, 0.0);
                    let margin_ok = k.contains(&x, -1e-6) && k.contains(&y, -1e-6);
                    if margin_ok {
                        assert!(eroded.contains(&x, 1e-9));
                    }
                    if !inside {
                        assert!(!eroded.contains(&x, -1e-6));
                    }
                }
            }
        }
    }

    #[test]
    fn stretch_length_matches_bisection() {
        // cone over a square plus a vertical segment of length 0.7
        let mut pts: Vec<Point> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
            .iter()
            .map(|p| vec![p[0], p[1], 0.0])
            .collect();
        pts.push(vec![0.4, 0.5, 1.0]);
        let cone = ConvexBody::hull(&pts, 3).unwrap();
        let e3 = Direction::axis(3, 2);
        let k = stretch(&cone, e3.as_slice(), 0.7).unwrap();
        let closed = max_stretch_length(&k, &e3).unwrap();
        assert!((closed - 0.7).abs() < 1e-12);
        let (mut lo, mut hi) = (0.0, 2.0);
        while hi - lo > 1e-9 {
            let mid = 0.5 * (lo + hi);
            if destretch(&k, &e3, mid, &tol()).is_some() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // the residual bisection only resolves lengths to about eps_wit * diam
        assert!(
            (lo - closed).abs() <= 2.0 * tol().eps_wit * k.diameter(),
            "{lo} vs {closed}"
        );
    }

    #[test]
    fn stretched_squares_witness() {
        let a = shapes::cube(2);
        let b = shapes::boxed(&[1.0, 2.0]);
        let u = Direction::axis(2, 1);
        let w = classify_section_equality(&a, &b, 0.5, 0.5, &u, &tol()).unwrap();
        let EqualityWitness::StretchedPair(p) = w else {
            panic!("expected a stretched pair, got {w:?}");
        };
        assert!(p.v.angle_to(&u) < 1e-12);
        assert_eq!(p.lambda_a, 0.0);
        assert!((p.lambda_b - 1.0).abs() < 1e-12);
        assert!(hausdorff(&p.a_prime, &shapes::cube(2)) < 1e-12);
    }

    #[test]
    fn box_family_in_projection_mode() {
        let a = shapes::cube(3);
        let b = shapes::boxed(&[1.0, 1.0, 3.0]);
        let u = Direction::axis(3, 2);
        let w = classify_projection_equality(&a, &b, 0.5, 0.5, &u, &tol()).unwrap();
        let EqualityWitness::StretchedPair(p) = w else {
            panic!("expected a stretched pair, got {w:?}");
        };
        assert_eq!(p.lambda_a, 0.0);
        assert!((p.lambda_b - 2.0).abs() < 1e-12);
        assert!((p.hom.lambda - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equal_octahedra_are_homothetic() {
        let o = shapes::cross_polytope(3);
        let u = Direction::axis(3, 2);
        let w = classify_section_equality(&o, &o, 0.5, 0.5, &u, &tol()).unwrap();
        let EqualityWitness::Homothetic(h) = w else {
            panic!("expected homothety");
        };
        assert!((h.lambda - 1.0).abs() < 1e-12 && norm(&h.t) < 1e-12);
    }

    #[test]
    fn cube_and_octahedron_violate_precondition() {
        let u = Direction::axis(3, 2);
        let err = classify_section_equality(
            &shapes::cube(3),
            &shapes::cross_polytope(3),
            0.5,
            0.5,
            &u,
            &tol(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn cone_with_stretched_copy() {
        let mut pts: Vec<Point> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
            .iter()
            .map(|p| vec![p[0], p[1], 0.0])
            .collect();
        pts.push(vec![0.5, 0.5, 1.0]);
        let a = ConvexBody::hull(&pts, 3).unwrap();
        let e3 = Direction::axis(3, 2);
        let b = stretch(&a, e3.as_slice(), 0.7).unwrap();
        let strict = tol().with_eps_eq(1e-9);
        let r = verify_chain(&a, &b, 0.5, 0.5, &e3, Mode::Projection, &strict).unwrap();
        assert!(r.equality_bonnesen);
        let w = classify_projection_equality(&a, &b, 0.5, 0.5, &e3, &tol()).unwrap();
        let EqualityWitness::StretchedPair(p) = w else {
            panic!("expected a stretched pair");
        };
        assert!((p.lambda_b - p.lambda_a - 0.7).abs() < 1e-9);
    }

    #[test]
    fn generated_instances_round_trip() {
        for (kind, seed, d) in [
            (EqualityKind::Homothety, 1, 3),
            (EqualityKind::SectionStretch, 2, 3),
            (EqualityKind::ProjectionStretch, 3, 2),
        ] {
            let s = build_equality_instance(kind, seed, d).unwrap();
            let strict = tol().with_eps_eq(1e-9);
            let modes: &[Mode] = if kind == EqualityKind::Homothety {
                &[Mode::Section, Mode::Projection]
            } else {
                std::slice::from_ref(&s.mode)
            };
            for &mode in modes {
                let r = verify_chain(&s.a, &s.b, s.alpha, s.beta, &s.u, mode, &strict).unwrap();
                assert!(r.equality_bonnesen, "{kind:?}: {r:?}");
            }
            let w = classify(&s.a, &s.b, s.alpha, s.beta, &s.u, s.mode, &tol()).unwrap();
            let truth = s.truth.unwrap();
            match w {
                EqualityWitness::Homothetic(_) => assert_eq!(kind, EqualityKind::Homothety),
                EqualityWitness::StretchedPair(p) => {
                    assert!(p.v.angle_to(&truth.v) < 1e-6);
                    assert!((p.lambda_a - truth.lambda_a).abs() < 1e-6);
                    assert!((p.lambda_b - truth.lambda_b).abs() < 1e-6);
                }
                EqualityWitness::NoEquality { reason } => panic!("{kind:?}: {reason}"),
            }
        }
    }
}
