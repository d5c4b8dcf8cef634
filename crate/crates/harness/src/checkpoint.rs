//! Agent checkpoints tied to the configuration they were trained with.

use std::path::Path;

use maisac_core::ScenarioConfig;
use maisac_optim::{Sac, SacCheckpoint, SacConfig};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::scheme::Scheme;

#[derive(Serialize)]
struct HashInput<'a> {
    scheme: Scheme,
    scenario: &'a ScenarioConfig,
    sac: &'a SacConfig,
}

/// Hex SHA-256 of the scheme, scenario and trainer settings.
pub fn config_hash(scheme: Scheme, scenario: &ScenarioConfig, sac: &SacConfig) -> Result<String> {
    let json = serde_json::to_vec(&HashInput { scheme, scenario, sac })?;
    let digest = Sha256::digest(&json);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn save(path: &Path, agent: &Sac, scheme: Scheme, scenario: &ScenarioConfig) -> Result<()> {
    let hash = config_hash(scheme, scenario, agent.config())?;
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer(file, &agent.checkpoint(&hash))?;
    Ok(())
}

/// Loads a checkpoint and checks it was produced under the same settings.
pub fn load(path: &Path, scheme: Scheme, scenario: &ScenarioConfig) -> Result<Sac> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let ck: SacCheckpoint = serde_json::from_reader(file)?;
    let expected = config_hash(scheme, scenario, &ck.config)?;
    if ck.config_hash != expected {
        return Err(HarnessError::Invalid(format!(
            "checkpoint {} was trained with a different scheme or scenario",
            path.display()
        )));
    }
    Ok(Sac::from_checkpoint(ck)?)
}
