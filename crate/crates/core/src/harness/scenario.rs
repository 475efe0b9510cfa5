use serde::{Deserialize, Serialize};

use crate::bonnesen::Mode;
use crate::geometry::{ConvexBody, Direction};
use crate::tolerance::Tolerances;

/// Families of generated equality instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityKind {
    Homothety,
    SectionStretch,
    ProjectionStretch,
}

impl EqualityKind {
    pub const ALL: [EqualityKind; 3] = [
        EqualityKind::Homothety,
        EqualityKind::SectionStretch,
        EqualityKind::ProjectionStretch,
    ];
}

impl std::str::FromStr for EqualityKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "homothety" => Ok(Self::Homothety),
            "section-stretch" => Ok(Self::SectionStretch),
            "projection-stretch" => Ok(Self::ProjectionStretch),
            other => Err(crate::Error::Invalid(format!("unknown kind {other:?}"))),
        }
    }
}

/// Construction parameters of a generated instance, in the canonical form
/// the classifiers report (at most one of the stretch lengths is nonzero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub kind: EqualityKind,
    pub v: Direction,
    pub lambda_a: f64,
    pub lambda_b: f64,
    /// `B' = ratio * A' + t` for the unstretched bases.
    pub ratio: f64,
}

/// One verification instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub a: ConvexBody,
    pub b: ConvexBody,
    pub alpha: f64,
    pub beta: f64,
    pub u: Direction,
    pub mode: Mode,
    pub tolerances: Tolerances,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<GroundTruth>,
}
