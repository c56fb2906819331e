//! Switches for the two places where the counting rules admit more than one
//! reading. Both are recorded alongside every cached value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which factor types the split case of the pruned cut-and-join recursion
/// excludes as unstable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilityReading {
    /// Exclude a factor when `(g_t, |J_t|) = (0, 2)`, counting only the
    /// original faces handed to that factor.
    #[default]
    Literal,
    /// Exclude a factor when it has genus 0 and two faces in total, i.e. the
    /// faces of `J_t` plus the new face (`|J_t| + 1 = 2`).
    FaceCount,
}

impl StabilityReading {
    pub const ALL: [StabilityReading; 2] = [StabilityReading::Literal, StabilityReading::FaceCount];

    pub fn as_str(self) -> &'static str {
        match self {
            StabilityReading::Literal => "literal",
            StabilityReading::FaceCount => "facecount",
        }
    }

    /// True when a split factor of genus `genus` receiving `faces_from_j`
    /// original faces must be dropped.
    pub fn excludes(self, genus: i64, faces_from_j: usize) -> bool {
        match self {
            StabilityReading::Literal => genus == 0 && faces_from_j == 2,
            StabilityReading::FaceCount => genus == 0 && faces_from_j + 1 == 2,
        }
    }
}

impl fmt::Display for StabilityReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StabilityReading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(StabilityReading::Literal),
            "facecount" | "face-count" => Ok(StabilityReading::FaceCount),
            other => Err(format!("unknown stability reading {other:?} (literal|facecount)")),
        }
    }
}

/// Active counting conventions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conventions {
    /// Whether a tuple with no transpositions (a graph with one isolated
    /// vertex) counts as pruned. Off by default, which makes
    /// `PH_0(mu, (d)) = 0` for every `mu`.
    pub m0_pruned: bool,
    pub stability: StabilityReading,
}
