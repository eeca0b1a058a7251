//! Descent bookkeeping: great sequences concatenated level by level.
//!
//! The script does not compute covers. It lists, for every descent level,
//! one chord system per disk alive at that point, in sequence order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dissect::{dissect, ChordSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerScript {
    /// Number of cells at the top, the last one holding the basepoint.
    pub top_cells: usize,
    /// Per level, one chord system per live disk.
    #[serde(default)]
    pub levels: Vec<Vec<ChordSystem>>,
}

impl TowerScript {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }
}

/// Where a disk of the final sequence came from: its top cell (1-based)
/// and the subscript it received at each level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub top: usize,
    pub path: Vec<String>,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.top)?;
        for s in &self.path {
            if !s.is_empty() {
                write!(f, "F{s}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub sequence: Vec<Provenance>,
    /// Keys `L{level}.G{disk}.{crossing}`, values the marked point over.
    pub resolution: BTreeMap<String, usize>,
    /// Sequence length after each level, starting with the top.
    pub lengths: Vec<usize>,
}

impl PipelineResult {
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.sequence.iter().enumerate() {
            out.push_str(&format!("{} {} path={}\n", i + 1, p, p.path.join("/")));
        }
        for (k, v) in &self.resolution {
            out.push_str(&format!("over {k} {v}\n"));
        }
        out
    }
}

pub fn descend(script: &TowerScript) -> Result<PipelineResult> {
    let mut live: Vec<Provenance> = (1..=script.top_cells).map(|top| Provenance { top, path: vec![] }).collect();
    let mut resolution = BTreeMap::new();
    let mut lengths = vec![live.len()];
    for (level, systems) in script.levels.iter().enumerate() {
        if systems.len() != live.len() {
            return Err(Error::ArityMismatch { level, supplied: systems.len(), live: live.len() });
        }
        let mut next = Vec::new();
        for (g, (disk, system)) in live.iter().zip(systems).enumerate() {
            let (tree, seq) = dissect(system)?;
            for (label, p) in &seq.resolution.over {
                resolution.insert(format!("L{level}.G{g}.{label}"), *p);
            }
            for &l in &seq.leaves {
                let mut path = disk.path.clone();
                path.push(tree.nodes[l].subscript.clone());
                next.push(Provenance { top: disk.top, path });
            }
        }
        live = next;
        lengths.push(live.len());
    }
    Ok(PipelineResult { sequence: live, resolution, lengths })
}

pub fn provenance(result: &PipelineResult, leaf: usize) -> Result<&Provenance> {
    result.sequence.get(leaf).ok_or(Error::IndexOutOfRange { index: leaf, len: result.sequence.len() })
}
