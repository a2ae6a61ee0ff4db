//! Treed bridges: a (finite-cyclic or windowed) bridge with a labelled plane
//! tree grafted at every down-step, the local metric on them, exact samplers
//! for the treed-bridge laws, and contour-process extraction.

pub mod corner;
pub mod sample;
pub mod window;

pub use corner::{contour_processes, ContourPair, Corner, CornerWalk, Host};
pub use window::{PrunedSlot, PrunedWindow};

use planar_core::{Bridge, LabelledTree, TreeJson};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum TbError {
    #[error("invalid treed bridge: {0}")]
    Invalid(String),
    #[error("incomparable: {0}")]
    Incomparable(String),
    #[error("bad serialization: {0}")]
    Serde(String),
    /// Tree growth hit the caller's node budget; expected tree sizes are
    /// infinite under these laws, so honest sampling must be able to abort.
    #[error("sample exceeded cap at {nodes} tree nodes")]
    Censored { nodes: usize },
    #[error(transparent)]
    Laws(#[from] laws::LawsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Positive,
    Unconstrained,
}

/// A bridge with a labelled tree at every down-step; the tree at down-step i
/// has root label x_i. Size = total edge count of the trees.
#[derive(Clone, Debug, PartialEq)]
pub struct TreedBridge {
    pub bridge: Bridge,
    pub trees: BTreeMap<i64, LabelledTree>,
    pub kind: Kind,
}

impl TreedBridge {
    pub fn new(
        bridge: Bridge,
        trees: BTreeMap<i64, LabelledTree>,
        kind: Kind,
    ) -> Result<Self, TbError> {
        let tb = TreedBridge { bridge, trees, kind };
        tb.validate()?;
        Ok(tb)
    }

    pub fn down_steps(&self) -> Vec<i64> {
        self.bridge.down_steps()
    }

    /// Total number of tree edges: the area of the encoded quadrangulation.
    pub fn size(&self) -> usize {
        self.trees.values().map(|t| t.size()).sum()
    }

    pub fn validate(&self) -> Result<(), TbError> {
        self.bridge.check().map_err(|e| TbError::Invalid(e.to_string()))?;
        let ds = self.down_steps();
        if ds.len() != self.trees.len() || ds.iter().any(|i| !self.trees.contains_key(i)) {
            return Err(TbError::Invalid(format!(
                "trees must sit exactly at the {} down-steps",
                ds.len()
            )));
        }
        for (&i, t) in &self.trees {
            if t.root_label() != self.bridge.label(i) {
                return Err(TbError::Invalid(format!(
                    "tree at {i} has root label {}, bridge has {}",
                    t.root_label(),
                    self.bridge.label(i)
                )));
            }
            t.check_label_steps().map_err(|e| TbError::Invalid(e.to_string()))?;
            if self.kind == Kind::Positive && !t.is_positive() {
                return Err(TbError::Invalid(format!("tree at {i} has a label < 1")));
            }
        }
        if self.kind == Kind::Positive && !self.bridge.is_nonnegative() {
            return Err(TbError::Invalid("positive kind requires x ≥ 0".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> TbJson {
        let (labels, origin_index) = match &self.bridge {
            Bridge::Finite { labels } => (labels.clone(), None),
            Bridge::Window { labels, origin } => (labels.clone(), Some(*origin as i64)),
        };
        TbJson {
            bridge: labels,
            origin_index,
            trees: self.trees.iter().map(|(i, t)| (i.to_string(), t.to_json())).collect(),
            kind: self.kind,
        }
    }

    pub fn from_json(j: &TbJson) -> Result<TreedBridge, TbError> {
        let bridge = match j.origin_index {
            None => Bridge::Finite { labels: j.bridge.clone() },
            Some(o) => Bridge::Window { labels: j.bridge.clone(), origin: o as usize },
        };
        let mut trees = BTreeMap::new();
        for (k, t) in &j.trees {
            let i: i64 = k.parse().map_err(|_| TbError::Serde(format!("bad index {k}")))?;
            trees.insert(i, LabelledTree::from_json(t));
        }
        TreedBridge::new(bridge, trees, j.kind)
    }
}

/// JSON shape: {bridge: [labels…], origin_index, trees: {index: tree}, kind};
/// origin_index is the array index of position 0 and is absent for finite
/// (cyclic) bridges; trees use the nested [label, [children…]] format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TbJson {
    pub bridge: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin_index: Option<i64>,
    pub trees: BTreeMap<String, TreeJson>,
    pub kind: Kind,
}

/// Local distance 1/(1 + sup{r : windows of radius r agree}): bridge labels
/// agree on [−r, r] and depth-r tree truncations agree at every down-step in
/// [−r, r]. Identical treed bridges are at distance 0. Finite bridges
/// compare cyclically but only while 2p > 2r; windows compare as far as both
/// sides store data.
pub fn tb_local_distance(a: &TreedBridge, b: &TreedBridge) -> Result<f64, TbError> {
    if a.kind != b.kind {
        return Err(TbError::Incomparable("kind mismatch".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let r_cap = |tb: &TreedBridge| -> i64 {
        match &tb.bridge {
            Bridge::Finite { labels } => (labels.len() as i64) / 2 - 1,
            Bridge::Window { .. } => {
                let (lo, hi) = tb.bridge.pos_range();
                // a down-step at position r needs the label at r + 1
                (-lo).min(hi - 1)
            }
        }
    };
    let r_max = r_cap(a).min(r_cap(b));
    let mut sup = 0i64;
    'outer: for r in 1..=r_max {
        for pos in -r..=r {
            if a.bridge.label(pos) != b.bridge.label(pos) {
                break 'outer;
            }
        }
        for pos in -r..=r {
            match (tree_at(a, pos), tree_at(b, pos)) {
                (None, None) => {}
                (Some(ta), Some(tb)) => {
                    if ta.truncate(r as u32) != tb.truncate(r as u32) {
                        break 'outer;
                    }
                }
                _ => break 'outer,
            }
        }
        sup = r;
    }
    Ok(1.0 / (1.0 + sup as f64))
}

/// Finite-bridge tree lookup must wrap: position −1 is 2p−1.
pub(crate) fn tree_at<'a>(tb: &'a TreedBridge, pos: i64) -> Option<&'a LabelledTree> {
    match &tb.bridge {
        Bridge::Finite { labels } => tb.trees.get(&pos.rem_euclid(labels.len() as i64)),
        Bridge::Window { .. } => tb.trees.get(&pos),
    }
}
