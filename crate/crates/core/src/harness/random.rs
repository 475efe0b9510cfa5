use super::rng::SplitMix64;
use crate::error::{Error, Result};
use crate::geometry::ConvexBody;

/// Resampling attempts before [`Error::DegenerateSample`].
const MAX_ATTEMPTS: usize = 8;

/// Hull of `n_points` uniform points in the unit ball of R^d.
pub fn random_body(d: usize, n_points: usize, seed: u64) -> Result<ConvexBody> {
    let mut rng = SplitMix64::new(seed);
    random_body_with(&mut rng, d, n_points)
}

pub fn random_body_with(rng: &mut SplitMix64, d: usize, n_points: usize) -> Result<ConvexBody> {
    if !(2..=4).contains(&d) {
        return Err(Error::Unsupported(format!("dimension {d}")));
    }
    if n_points < d + 1 {
        return Err(Error::Invalid(format!(
            "need at least {} points in dimension {d}",
            d + 1
        )));
    }
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<Vec<f64>> = (0..n_points).map(|_| rng.in_ball(d)).collect();
        let body = ConvexBody::hull(&pts, d)?;
        // reject near-flat draws as well as exactly degenerate ones
        if body.is_full_dimensional() && body.volume() > 1e-6 {
            return Ok(body);
        }
    }
    Err(Error::DegenerateSample {
        attempts: MAX_ATTEMPTS,
    })
}
