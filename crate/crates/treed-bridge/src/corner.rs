//! Corner walk of a treed bridge: the cyclic (finite) or linear (window)
//! sequence of tree corners taken position by position, with one phantom
//! corner standing in at each position that carries no tree. The walk is the
//! input to the quadrangulation encoding, which never needs the trees again.

use crate::window::{PrunedSlot, PrunedWindow};
use crate::{TbError, TreedBridge};
use planar_core::Bridge;
use std::collections::BTreeMap;

/// Where a corner lives. `Node` corners belong to a real tree vertex
/// (identified by position and node id within that position's tree);
/// `Phantom` corners mark a treeless position and own no vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Host {
    Phantom { pos: i64 },
    Node { pos: i64, node: u32 },
}

impl Host {
    pub fn pos(&self) -> i64 {
        match *self {
            Host::Phantom { pos } | Host::Node { pos, .. } => pos,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Host::Node { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub host: Host,
    pub label: i64,
}

/// The corner sequence, positions ascending (windows) or position 0..2p−1
/// (finite, cyclically closed). The root corner is the first corner at
/// position 0: the walk enters position 0 from the outer/lower region, so its
/// first corner there is the canonical root corner of the encoding.
#[derive(Clone, Debug)]
pub struct CornerWalk {
    pub corners: Vec<Corner>,
    pub root_corner: usize,
    pub cyclic: bool,
    /// Pruning threshold of the source, if it was a pruned window: corners in
    /// subtrees that provably stay above it are absent from the walk.
    pub threshold: Option<i64>,
    ranges: BTreeMap<i64, (usize, usize)>,
}

impl CornerWalk {
    pub fn from_treed_bridge(tb: &TreedBridge) -> CornerWalk {
        let (lo, hi) = tb.bridge.pos_range();
        let cyclic = matches!(tb.bridge, Bridge::Finite { .. });
        let mut corners = Vec::new();
        let mut ranges = BTreeMap::new();
        for pos in lo..=hi {
            let start = corners.len();
            match tb.trees.get(&pos) {
                Some(t) => {
                    for v in t.tree.contour() {
                        corners.push(Corner {
                            host: Host::Node { pos, node: v },
                            label: t.labels[v as usize],
                        });
                    }
                }
                None => {
                    corners.push(Corner { host: Host::Phantom { pos }, label: tb.bridge.label(pos) })
                }
            }
            ranges.insert(pos, (start, corners.len()));
        }
        let root_corner = ranges[&0].0;
        CornerWalk { corners, root_corner, cyclic, threshold: None, ranges }
    }

    pub fn from_pruned(w: &PrunedWindow) -> CornerWalk {
        let (lo, hi) = w.bridge.pos_range();
        let mut corners = Vec::new();
        let mut ranges = BTreeMap::new();
        for pos in lo..=hi {
            let start = corners.len();
            match w.trees.get(&pos) {
                Some(PrunedSlot::Tree(t)) => {
                    for v in t.contour() {
                        corners.push(Corner {
                            host: Host::Node { pos, node: v },
                            label: t.label(v),
                        });
                    }
                }
                // A whole-tree stub: the tree at this down-step never reaches
                // the threshold, so none of its corners can be consulted;
                // it contributes no corners at all.
                Some(PrunedSlot::Stub { .. }) => {}
                None => {
                    corners.push(Corner { host: Host::Phantom { pos }, label: w.bridge.label(pos) })
                }
            }
            ranges.insert(pos, (start, corners.len()));
        }
        let root_corner = ranges[&0].0;
        CornerWalk {
            corners,
            root_corner,
            cyclic: false,
            threshold: Some(w.threshold),
            ranges,
        }
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Half-open corner index range [start, end) of a position; empty for a
    /// stubbed-out down-step in a pruned walk.
    pub fn position_range(&self, pos: i64) -> Option<(usize, usize)> {
        self.ranges.get(&pos).copied()
    }

    pub fn pos_range(&self) -> (i64, i64) {
        let lo = *self.ranges.keys().next().expect("nonempty walk");
        let hi = *self.ranges.keys().next_back().expect("nonempty walk");
        (lo, hi)
    }

    /// Consecutive corner labels move by at most 1 (full walks; pruned walks
    /// may jump across elided subtrees), and the root corner sits at
    /// position 0.
    pub fn check(&self) -> Result<(), TbError> {
        if self.corners.is_empty() {
            return Err(TbError::Invalid("empty corner walk".into()));
        }
        if self.corners[self.root_corner].host.pos() != 0 {
            return Err(TbError::Invalid("root corner not at position 0".into()));
        }
        if self.threshold.is_none() {
            let n = self.corners.len();
            let pairs = if self.cyclic { n } else { n - 1 };
            for i in 0..pairs {
                let a = self.corners[i].label;
                let b = self.corners[(i + 1) % n].label;
                if (a - b).abs() > 1 {
                    return Err(TbError::Invalid(format!(
                        "label step {a}→{b} at corner {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Contour pair (C, V) read corner by corner: C = graph distance from the
/// corner's vertex to the position-0 vertex inside the treed bridge
/// (|position| along the bridge plus depth in the tree), V = corner label.
/// On bridge corners (tree roots and phantoms) V is exactly the bridge label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContourPair {
    pub c: Vec<i64>,
    pub v: Vec<i64>,
}

/// Window treed bridges only: the pair is read left edge to right edge and
/// |ΔC| = 1 holds at every step of a full (unpruned) walk.
pub fn contour_processes(tb: &TreedBridge) -> Result<ContourPair, TbError> {
    if matches!(tb.bridge, Bridge::Finite { .. }) {
        return Err(TbError::Incomparable(
            "contour processes are defined for window treed bridges".into(),
        ));
    }
    let (lo, hi) = tb.bridge.pos_range();
    let mut c = Vec::new();
    let mut v = Vec::new();
    for pos in lo..=hi {
        match tb.trees.get(&pos) {
            Some(t) => {
                let mut depth = vec![0u32; t.tree.node_count()];
                for (i, p) in t.tree.parent.iter().enumerate().skip(1) {
                    depth[i] = depth[p.expect("non-root has parent") as usize] + 1;
                }
                for w in t.tree.contour() {
                    c.push(pos.abs() + depth[w as usize] as i64);
                    v.push(t.labels[w as usize]);
                }
            }
            None => {
                c.push(pos.abs());
                v.push(tb.bridge.label(pos));
            }
        }
    }
    Ok(ContourPair { c, v })
}
