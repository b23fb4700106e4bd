//! Restartable progress files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affine::AffinePermutation;
use crate::pattern::Pattern;

use super::{EnumerationBudget, EnumerationError, Mode};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub pattern: Pattern,
    pub n: usize,
    pub mode: Mode,
    pub budget: EnumerationBudget,
    pub assumes_tight_bound: bool,
    /// BFS: the deepest grade whose count is final.
    pub last_completed_grade: Option<u64>,
    pub counts: BTreeMap<u64, u64>,
    pub elements_seen: u64,
    /// BFS: every element of the last completed grade.
    #[serde(default)]
    pub frontier: Vec<AffinePermutation>,
    /// Window space: the spread cap the partitions were searched under.
    #[serde(default)]
    pub spread_cap: Option<u64>,
    #[serde(default)]
    pub completed_partitions: Vec<usize>,
    #[serde(default)]
    pub avoiders: Vec<AffinePermutation>,
}

impl Checkpoint {
    /// Writes atomically through a sibling temp file.
    pub fn save(&self, path: &Path) -> Result<(), EnumerationError> {
        let text = serde_json::to_string(self).map_err(|e| EnumerationError::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text).map_err(|e| EnumerationError::Checkpoint(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, path).map_err(|e| EnumerationError::Checkpoint(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, EnumerationError> {
        let text =
            fs::read_to_string(path).map_err(|e| EnumerationError::Checkpoint(format!("{}: {e}", path.display())))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| EnumerationError::Checkpoint(e.to_string()))?;
        if cp.version != VERSION {
            return Err(EnumerationError::Checkpoint(format!(
                "unsupported checkpoint version {} (expected {VERSION})",
                cp.version
            )));
        }
        Ok(cp)
    }
}

/// Loads `path` if it exists and belongs to the same run; a checkpoint for a
/// different run is an error rather than silently ignored.
pub(crate) fn load_for(
    path: Option<&Path>,
    n: usize,
    p: &Pattern,
    mode: Mode,
    tight: bool,
) -> Result<Option<Checkpoint>, EnumerationError> {
    let Some(path) = path else { return Ok(None) };
    if !path.exists() {
        return Ok(None);
    }
    let cp = Checkpoint::load(path)?;
    if cp.n != n || &cp.pattern != p || cp.mode != mode || cp.assumes_tight_bound != tight {
        return Err(EnumerationError::Checkpoint(format!(
            "{} belongs to a different run ({} in rank {}, {:?})",
            path.display(),
            cp.pattern,
            cp.n,
            cp.mode
        )));
    }
    Ok(Some(cp))
}
