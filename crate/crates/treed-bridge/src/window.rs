//! Threshold-pruned window sampling: the treed-bridge window law with every
//! tree explored only where it can reach labels ≤ m. Subtrees that provably
//! stay above the threshold collapse to stubs (inside trees) or to whole-tree
//! stub slots (at down-steps whose tree never dips), exactly preserving the
//! joint law of everything at labels ≤ m.

use crate::corner::CornerWalk;
use crate::TbError;
use laws::pruned::{sample_pruned_tree, PrunedTree, SampleCounters};
use laws::samplers::sample_walk;
use planar_core::Bridge;
use rand::Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub enum PrunedSlot {
    Tree(PrunedTree),
    /// The whole tree at this down-step never reaches a label ≤ m; only its
    /// root label is retained.
    Stub { root_label: i64 },
}

/// A bridge window whose down-step trees are pruned at a common threshold.
#[derive(Clone, Debug)]
pub struct PrunedWindow {
    pub bridge: Bridge,
    pub threshold: i64,
    pub trees: BTreeMap<i64, PrunedSlot>,
    pub counters: SampleCounters,
}

impl PrunedWindow {
    pub fn corner_walk(&self) -> CornerWalk {
        CornerWalk::from_pruned(self)
    }

    /// Total materialized tree nodes over the window.
    pub fn node_count(&self) -> usize {
        self.trees
            .values()
            .map(|s| match s {
                PrunedSlot::Tree(t) => t.node_count(),
                PrunedSlot::Stub { .. } => 0,
            })
            .sum()
    }

    pub fn check(&self) -> Result<(), TbError> {
        self.bridge.check().map_err(|e| TbError::Invalid(e.to_string()))?;
        let ds = self.bridge.down_steps();
        if ds.len() != self.trees.len() || ds.iter().any(|i| !self.trees.contains_key(i)) {
            return Err(TbError::Invalid("slots must sit exactly at the down-steps".into()));
        }
        for (&i, slot) in &self.trees {
            let x = self.bridge.label(i);
            match slot {
                PrunedSlot::Tree(t) => {
                    if t.threshold != self.threshold {
                        return Err(TbError::Invalid(format!("tree at {i} has foreign threshold")));
                    }
                    if t.label(t.root) != x {
                        return Err(TbError::Invalid(format!("tree at {i} root label mismatch")));
                    }
                    if t.min_label > self.threshold {
                        return Err(TbError::Invalid(format!(
                            "materialized tree at {i} never dips to {}",
                            self.threshold
                        )));
                    }
                }
                PrunedSlot::Stub { root_label } => {
                    if *root_label != x {
                        return Err(TbError::Invalid(format!("stub at {i} root label mismatch")));
                    }
                    if *root_label <= self.threshold {
                        return Err(TbError::Invalid(format!(
                            "stub at {i} with root already ≤ {}",
                            self.threshold
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Prune-sample positive trees at the down-steps of a given window bridge.
/// RNG order: ascending down-step positions.
pub fn pruned_window_from_labels<R: Rng>(
    labels: Vec<i64>,
    origin: usize,
    m: i64,
    rng: &mut R,
) -> Result<PrunedWindow, TbError> {
    let bridge =
        Bridge::window(labels, origin).map_err(|e| TbError::Invalid(e.to_string()))?;
    let mut counters = SampleCounters::default();
    let mut trees = BTreeMap::new();
    for i in bridge.down_steps() {
        let x = bridge.label(i);
        let slot = match sample_pruned_tree(x, m, rng, &mut counters)? {
            Some(t) => PrunedSlot::Tree(t),
            None => PrunedSlot::Stub { root_label: x },
        };
        trees.insert(i, slot);
    }
    let w = PrunedWindow { bridge, threshold: m, trees, counters };
    debug_assert!(w.check().is_ok());
    Ok(w)
}

/// Pruned window of the half-plane limit law on [−l_left, l_right].
/// RNG order: right walk, left walk, trees at ascending positions.
pub fn sample_b_inf_pruned<R: Rng>(
    l_left: usize,
    l_right: usize,
    m: i64,
    rng: &mut R,
) -> Result<PrunedWindow, TbError> {
    let right = sample_walk(l_right, rng);
    let left = sample_walk(l_left, rng);
    let mut labels: Vec<i64> = left[1..].iter().rev().copied().collect();
    labels.extend_from_slice(&right);
    pruned_window_from_labels(labels, l_left, m, rng)
}

/// Pruned window of the doubly-deterministic-bridge law on [−l, l]: staircase
/// labels, pruned trees on the left side only. RNG order: trees at ascending
/// positions.
pub fn sample_b_c_pruned<R: Rng>(
    l: usize,
    m: i64,
    rng: &mut R,
) -> Result<PrunedWindow, TbError> {
    let li = l as i64;
    let labels: Vec<i64> = (-li..=li).map(|i| i.abs()).collect();
    pruned_window_from_labels(labels, l, m, rng)
}
