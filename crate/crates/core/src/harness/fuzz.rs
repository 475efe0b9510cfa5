//! Seeded fuzz campaigns over random body pairs.
//!
//! Trial `i` uses seed `base_seed + i` for everything it draws, so trials
//! are independent of each other and of the thread count, and any failing
//! trial can be replayed alone.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::random_body_with;
use super::rng::SplitMix64;
use crate::bonnesen::{verify_chain, Mode};
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Direction};
use crate::profile::SectionProfile;
use crate::symmetrize::{check_schwarz_inclusion, check_steiner_inclusion};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzMode {
    Section,
    Projection,
    Both,
}

impl FuzzMode {
    pub fn modes(self) -> &'static [Mode] {
        match self {
            FuzzMode::Section => &[Mode::Section],
            FuzzMode::Projection => &[Mode::Projection],
            FuzzMode::Both => &[Mode::Section, Mode::Projection],
        }
    }
}

impl std::str::FromStr for FuzzMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "section" => Ok(FuzzMode::Section),
            "projection" => Ok(FuzzMode::Projection),
            "both" => Ok(FuzzMode::Both),
            other => Err(Error::Invalid(format!("unknown fuzz mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub trials: usize,
    pub d: usize,
    pub base_seed: u64,
    pub mode: FuzzMode,
    pub tolerances: Tolerances,
    /// Points drawn per body, chosen per trial in this inclusive range.
    pub points: (usize, usize),
    pub layer_cake_levels: usize,
    pub layer_cake_tol: f64,
    /// Symmetrization checks run on every `symmetrize_every`-th trial in R^3.
    pub symmetrize_every: usize,
    pub steiner_grid: usize,
    pub schwarz_slices: usize,
}

impl FuzzConfig {
    pub fn new(trials: usize, d: usize, base_seed: u64, mode: FuzzMode) -> Self {
        Self {
            trials,
            d,
            base_seed,
            mode,
            tolerances: Tolerances::default(),
            points: (d + 2, 16),
            layer_cake_levels: 1024,
            layer_cake_tol: 5e-3,
            symmetrize_every: 10,
            steiner_grid: 12,
            schwarz_slices: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub seed: u64,
    pub invariant: String,
    /// Signed margin (negative means violated); absent for errors.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityHit {
    pub seed: u64,
    pub mode: Mode,
    pub bonnesen: bool,
    pub holder: bool,
}

/// Per-trial gap values, exported as CSV on request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub seed: u64,
    pub mode: Mode,
    pub lhs: f64,
    pub gap_bonnesen: f64,
    pub gap_holder: f64,
}

/// Wall-clock seconds per phase, summed over trials.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total: f64,
    pub chain: f64,
    pub layer_cake: f64,
    pub symmetrization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub d: usize,
    pub base_seed: u64,
    pub mode: FuzzMode,
    pub violations: Vec<Violation>,
    pub equality_hits: Vec<EqualityHit>,
    pub gaps: Vec<GapRecord>,
    pub timing: Timing,
}

impl FuzzReport {
    /// The report as JSON without the timing block, for determinism checks.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timing");
        v.to_string()
    }

    /// Gap statistics as CSV.
    pub fn gaps_csv(&self) -> String {
        let mut out = String::from("seed,mode,lhs,gap_bonnesen,gap_holder\n");
        for g in &self.gaps {
            out.push_str(&format!(
                "{},{},{:e},{:e},{:e}\n",
                g.seed, g.mode, g.lhs, g.gap_bonnesen, g.gap_holder
            ));
        }
        out
    }
}

#[derive(Default)]
struct TrialOutcome {
    violations: Vec<Violation>,
    hits: Vec<EqualityHit>,
    gaps: Vec<GapRecord>,
    chain: Duration,
    layer_cake: Duration,
    symmetrization: Duration,
}

/// The random inputs of one trial.
pub struct TrialInput {
    pub a: ConvexBody,
    pub b: ConvexBody,
    pub alpha: f64,
    pub beta: f64,
    pub u: Direction,
}

pub fn trial_input(seed: u64, d: usize, points: (usize, usize)) -> Result<TrialInput> {
    let mut rng = SplitMix64::new(seed);
    let span = (points.1.max(points.0) - points.0 + 1) as u64;
    let na = points.0 + (rng.next_u64() % span) as usize;
    let nb = points.0 + (rng.next_u64() % span) as usize;
    let a = random_body_with(&mut rng, d, na)?;
    let b = random_body_with(&mut rng, d, nb)?;
    let alpha = rng.uniform(0.1, 0.9);
    let u = Direction::new(rng.unit_vector(d))?;
    Ok(TrialInput {
        a,
        b,
        alpha,
        beta: 1.0 - alpha,
        u,
    })
}

fn run_trial(cfg: &FuzzConfig, index: usize) -> TrialOutcome {
    let seed = cfg.base_seed.wrapping_add(index as u64);
    let mut out = TrialOutcome::default();
    let error = |invariant: &str, e: Error| Violation {
        seed,
        invariant: format!("{invariant}: {e}"),
        margin: None,
    };
    let input = match trial_input(seed, cfg.d, cfg.points) {
        Ok(x) => x,
        Err(e) => {
            out.violations.push(error("input", e));
            return out;
        }
    };
    let TrialInput {
        a,
        b,
        alpha,
        beta,
        u,
    } = input;

    let t = Instant::now();
    for &mode in cfg.mode.modes() {
        match verify_chain(&a, &b, alpha, beta, &u, mode, &cfg.tolerances) {
            Ok(r) => {
                for (name, margin) in r.violations(cfg.tolerances.eps_eq) {
                    out.violations.push(Violation {
                        seed,
                        invariant: format!("{mode}: {name}"),
                        margin: Some(margin),
                    });
                }
                if r.equality_bonnesen || r.equality_holder {
                    out.hits.push(EqualityHit {
                        seed,
                        mode,
                        bonnesen: r.equality_bonnesen,
                        holder: r.equality_holder,
                    });
                }
                out.gaps.push(GapRecord {
                    seed,
                    mode,
                    lhs: r.lhs,
                    gap_bonnesen: r.gap_bonnesen,
                    gap_holder: r.gap_holder,
                });
            }
            Err(e) => out.violations.push(error(&format!("{mode} chain"), e)),
        }
    }
    out.chain = t.elapsed();

    let t = Instant::now();
    let lc = SectionProfile::build(&a, &u).and_then(|p| p.layer_cake_volume(cfg.layer_cake_levels));
    match lc {
        Ok(v) => {
            let rel = (v - a.volume()).abs() / a.volume();
            if rel > cfg.layer_cake_tol {
                out.violations.push(Violation {
                    seed,
                    invariant: "layer-cake identity".into(),
                    margin: Some(cfg.layer_cake_tol - rel),
                });
            }
        }
        Err(e) => out.violations.push(error("layer-cake identity", e)),
    }
    out.layer_cake = t.elapsed();

    if cfg.d == 3 && cfg.symmetrize_every > 0 && index % cfg.symmetrize_every == 0 {
        let t = Instant::now();
        let checks = [
            (
                "steiner inclusion",
                check_steiner_inclusion(&a, &b, alpha, beta, &u, cfg.steiner_grid),
            ),
            (
                "schwarz inclusion",
                check_schwarz_inclusion(&a, &b, alpha, beta, &u, cfg.schwarz_slices),
            ),
        ];
        for (name, res) in checks {
            match res {
                Ok(c) if !c.holds => out.violations.push(Violation {
                    seed,
                    invariant: name.into(),
                    margin: Some(c.min_margin),
                }),
                Ok(_) => {}
                Err(e) => out.violations.push(error(name, e)),
            }
        }
        out.symmetrization = t.elapsed();
    }
    out
}

/// Runs a campaign with default settings.
pub fn run_fuzz(trials: usize, d: usize, base_seed: u64, mode: FuzzMode) -> Result<FuzzReport> {
    run_fuzz_with(&FuzzConfig::new(trials, d, base_seed, mode))
}

pub fn run_fuzz_with(cfg: &FuzzConfig) -> Result<FuzzReport> {
    if cfg.trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    if !(2..=4).contains(&cfg.d) {
        return Err(Error::Unsupported(format!("dimension {}", cfg.d)));
    }
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, i))
        .collect();
    let mut report = FuzzReport {
        trials: cfg.trials,
        d: cfg.d,
        base_seed: cfg.base_seed,
        mode: cfg.mode,
        violations: Vec::new(),
        equality_hits: Vec::new(),
        gaps: Vec::new(),
        timing: Timing::default(),
    };
    for o in outcomes {
        report.violations.extend(o.violations);
        report.equality_hits.extend(o.hits);
        report.gaps.extend(o.gaps);
        report.timing.chain += o.chain.as_secs_f64();
        report.timing.layer_cake += o.layer_cake.as_secs_f64();
        report.timing.symmetrization += o.symmetrization.as_secs_f64();
    }
    report.violations.sort_by_key(|v| v.seed);
    report.equality_hits.sort_by_key(|h| h.seed);
    report.gaps.sort_by_key(|g| g.seed);
    report.timing.total = start.elapsed().as_secs_f64();
    Ok(report)
}
