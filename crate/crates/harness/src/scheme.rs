use std::fmt;
use std::str::FromStr;

use maisac_core::assoc::AssociationMode;
use maisac_core::env::{ArrayMode, EnvOptions, TrajectoryMode};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// Compared system variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Movable arrays, clustering association, learned trajectories.
    Proposed,
    /// Movable arrays, nearest-UAV association.
    S1,
    /// Fixed arrays, nearest-UAV association.
    S2,
    /// Movable arrays on lawnmower paths.
    S3,
    /// Fixed arrays on lawnmower paths.
    S4,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Proposed, Scheme::S1, Scheme::S2, Scheme::S3, Scheme::S4];

    pub fn env_options(self) -> EnvOptions {
        let (array, association, trajectory) = match self {
            Scheme::Proposed => (ArrayMode::Movable, AssociationMode::Clustering, TrajectoryMode::Learned),
            Scheme::S1 => (ArrayMode::Movable, AssociationMode::Nearest, TrajectoryMode::Learned),
            Scheme::S2 => (ArrayMode::Fixed, AssociationMode::Nearest, TrajectoryMode::Learned),
            Scheme::S3 => (ArrayMode::Movable, AssociationMode::Clustering, TrajectoryMode::Fixed),
            Scheme::S4 => (ArrayMode::Fixed, AssociationMode::Clustering, TrajectoryMode::Fixed),
        };
        EnvOptions {
            array,
            association,
            trajectory,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::S1 => "s1",
            Scheme::S2 => "s2",
            Scheme::S3 => "s3",
            Scheme::S4 => "s4",
        }
    }

    pub fn movable(self) -> bool {
        self.env_options().array == ArrayMode::Movable
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Invalid(format!("unknown scheme `{s}` (expected proposed, s1, s2, s3 or s4)")))
    }
}
