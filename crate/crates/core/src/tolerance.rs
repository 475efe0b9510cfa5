//! Numerical tolerances shared by every comparison in the crate.

use serde::{Deserialize, Serialize};

/// Predicate tolerance (coplanarity, extremality), relative to body scale.
pub const EPS_GEOM: f64 = 1e-9;
/// Relative tolerance for volume comparisons.
pub const EPS_VOL: f64 = 1e-6;
/// Relative threshold under which an inequality gap counts as equality.
pub const EPS_EQ: f64 = 1e-6;
/// Witness reconstruction tolerance, relative to body diameter.
pub const EPS_WIT: f64 = 1e-6;
/// Offset tolerance for bisection along a direction, relative to width.
pub const EPS_OFF: f64 = 1e-7;
/// Relative level used to detect the arg-max plateau of a section profile.
pub const PLATEAU_LEVEL: f64 = 1e-9;

/// Environment variable selecting the tolerance profile.
pub const PROFILE_ENV: &str = "BONNESEN_TOLERANCE_PROFILE";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_geom: f64,
    pub eps_vol: f64,
    pub eps_eq: f64,
    pub eps_wit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_geom: EPS_GEOM,
            eps_vol: EPS_VOL,
            eps_eq: EPS_EQ,
            eps_wit: EPS_WIT,
        }
    }
}

impl Tolerances {
    /// `strict` scales the equality and witness tolerances by 0.1.
    pub fn strict() -> Self {
        let d = Self::default();
        Self {
            eps_eq: d.eps_eq * 0.1,
            eps_wit: d.eps_wit * 0.1,
            ..d
        }
    }

    /// Reads [`PROFILE_ENV`]; unknown or missing values give the default.
    pub fn from_env() -> Self {
        match std::env::var(PROFILE_ENV).as_deref() {
            Ok("strict") => Self::strict(),
            _ => Self::default(),
        }
    }

    pub fn with_eps_eq(mut self, eps_eq: f64) -> Self {
        self.eps_eq = eps_eq;
        self
    }

    pub fn with_eps_wit(mut self, eps_wit: f64) -> Self {
        self.eps_wit = eps_wit;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_profile_scales_equality_and_witness() {
        let s = Tolerances::strict();
        assert_eq!(s.eps_geom, EPS_GEOM);
        assert!((s.eps_eq - 1e-7).abs() < 1e-20);
        assert!((s.eps_wit - 1e-7).abs() < 1e-20);
    }
}
