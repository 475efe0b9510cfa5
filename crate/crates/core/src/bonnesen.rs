//! Brunn-Minkowski and Bonnesen lower bounds for `vol(αA + βB)`.
//!
//! With `M`, `N` either the maximal sections of `A`, `B` orthogonal to `u`
//! or the volumes of their projections along `u`,
//!
//! ```text
//! vol(αA+βB) >= (αM^{1/(d-1)} + βN^{1/(d-1)})^{d-1} (α vol(A)/M + β vol(B)/N)
//!            >= (α vol(A)^{1/d} + β vol(B)^{1/d})^d
//! ```
//!
//! The second step is Hölder's inequality; it is an equality exactly when
//! `vol(A)^{1/d} / M^{1/(d-1)} = vol(B)^{1/d} / N^{1/(d-1)}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{minkowski_combination, project, ConvexBody, Direction};
use crate::profile::SectionProfile;
use crate::tolerance::Tolerances;

/// Which pair of `(d-1)`-measures enters the Bonnesen bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Maximal sections by hyperplanes orthogonal to `u`.
    Section,
    /// Projections onto `u^⊥`.
    Projection,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Section => "section",
            Mode::Projection => "projection",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "section" => Ok(Mode::Section),
            "projection" => Ok(Mode::Projection),
            other => Err(Error::Invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BonnesenReport {
    pub mode: Mode,
    pub lhs: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
    pub bonnesen_rhs: f64,
    pub bm_rhs: f64,
    pub gap_bonnesen: f64,
    pub gap_holder: f64,
    pub equality_bonnesen: bool,
    pub equality_holder: bool,
    pub holder_ratio_lhs: f64,
    pub holder_ratio_rhs: f64,
}

impl BonnesenReport {
    /// Chain violations beyond `eps_eq * lhs`, as `(name, margin)` pairs.
    pub fn violations(&self, eps_eq: f64) -> Vec<(&'static str, f64)> {
        let eps = eps_eq * self.lhs;
        let mut out = Vec::new();
        if self.gap_bonnesen < -eps {
            out.push(("lhs >= bonnesen_rhs", self.gap_bonnesen));
        }
        if self.gap_holder < -eps {
            out.push(("bonnesen_rhs >= bm_rhs", self.gap_holder));
        }
        out
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    if values.iter().all(|&x| x > 0.0 && x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonPositiveVolume)
    }
}

/// `(α vol(A)^{1/d} + β vol(B)^{1/d})^d`.
pub fn bm_bound(vol_a: f64, vol_b: f64, alpha: f64, beta: f64, d: usize) -> Result<f64> {
    check_positive(&[vol_a, vol_b, alpha, beta])?;
    let e = 1.0 / d as f64;
    Ok((alpha * vol_a.powf(e) + beta * vol_b.powf(e)).powi(d as i32))
}

/// `(α M^{1/(d-1)} + β N^{1/(d-1)})^{d-1} (α vol(A)/M + β vol(B)/N)`.
pub fn bonnesen_bound(
    vol_a: f64,
    vol_b: f64,
    m: f64,
    n: f64,
    alpha: f64,
    beta: f64,
    d: usize,
) -> Result<f64> {
    check_positive(&[vol_a, vol_b, m, n, alpha, beta])?;
    if d < 2 {
        return Err(Error::Unsupported(format!("dimension {d}")));
    }
    let e = 1.0 / (d - 1) as f64;
    let head = (alpha * m.powf(e) + beta * n.powf(e)).powi(d as i32 - 1);
    Ok(head * (alpha * vol_a / m + beta * vol_b / n))
}

/// `(M, N)` for the given mode.
pub fn section_measures(
    a: &ConvexBody,
    b: &ConvexBody,
    u: &Direction,
    mode: Mode,
) -> Result<(f64, f64)> {
    match mode {
        Mode::Section => Ok((
            SectionProfile::build(a, u)?.q,
            SectionProfile::build(b, u)?.q,
        )),
        Mode::Projection => Ok((project(a, u)?.volume(), project(b, u)?.volume())),
    }
}

/// Computes `vol(αA+βB)` and both bounds, and flags the equality cases.
pub fn verify_chain(
    a: &ConvexBody,
    b: &ConvexBody,
    alpha: f64,
    beta: f64,
    u: &Direction,
    mode: Mode,
    tol: &Tolerances,
) -> Result<BonnesenReport> {
    if a.dim() != b.dim() || u.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: if b.dim() != a.dim() { b.dim() } else { u.dim() },
        });
    }
    if !a.is_full_dimensional() || !b.is_full_dimensional() {
        return Err(Error::DegenerateBody);
    }
    let d = a.dim();
    let (m, n) = section_measures(a, b, u, mode)?;
    let (va, vb) = (a.volume(), b.volume());
    let lhs = minkowski_combination(a, b, alpha, beta)?.volume();
    let bonnesen_rhs = bonnesen_bound(va, vb, m, n, alpha, beta, d)?;
    let bm_rhs = bm_bound(va, vb, alpha, beta, d)?;
    let gap_bonnesen = lhs - bonnesen_rhs;
    let gap_holder = bonnesen_rhs - bm_rhs;
    let e = 1.0 / (d - 1) as f64;
    let holder_ratio_lhs = va.powf(1.0 / d as f64) / m.powf(e);
    let holder_ratio_rhs = vb.powf(1.0 / d as f64) / n.powf(e);
    Ok(BonnesenReport {
        mode,
        lhs,
        m,
        n,
        bonnesen_rhs,
        bm_rhs,
        gap_bonnesen,
        gap_holder,
        equality_bonnesen: gap_bonnesen.abs() <= tol.eps_eq * lhs,
        equality_holder: (holder_ratio_lhs - holder_ratio_rhs).abs()
            <= tol.eps_eq * holder_ratio_lhs.max(holder_ratio_rhs),
        holder_ratio_lhs,
        holder_ratio_rhs,
    })
}
