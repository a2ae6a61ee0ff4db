//! Contour corners of a treed bridge, restricted to the corners a chord
//! construction actually reads. Phantom (tree-less) bridge positions carry no
//! real corner and are dropped. An optional label threshold additionally drops
//! corners above it: such corners are never chord sources in a thresholded
//! construction and never targets of the ones kept (targets sit one below
//! their source), so the rightward scan is unchanged by their absence.

use laws::pruned::PrunedTree;
use planar_core::{Bridge, LabelledTree};
use treed_bridge::TreedBridge;

use crate::SchaefferError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompactCorner {
    pub pos: i64,
    pub node: u32,
    pub label: i64,
}

/// One corner per contour visit of the tree planted at `pos`; a node of
/// degree d contributes d + 1 visits, in contour order.
pub(crate) fn push_tree_corners(
    pos: i64,
    tree: &LabelledTree,
    threshold: Option<i64>,
    out: &mut Vec<CompactCorner>,
) {
    for v in tree.tree.contour() {
        let label = tree.labels[v as usize];
        if threshold.is_none_or(|m| label <= m) {
            out.push(CompactCorner { pos, node: v, label });
        }
    }
}

/// Same, for a pruned tree: elided corners all carry labels above the
/// pruning threshold and the stub slots already split their parents'
/// corners inside `contour()`.
pub(crate) fn push_pruned_corners(
    pos: i64,
    tree: &PrunedTree,
    threshold: i64,
    out: &mut Vec<CompactCorner>,
) {
    for v in tree.contour() {
        let label = tree.label(v);
        if label <= threshold {
            out.push(CompactCorner { pos, node: v, label });
        }
    }
}

/// Corners of a finite treed bridge in cyclic contour order, cut at
/// position 0.
pub fn collect_finite(tb: &TreedBridge) -> Result<Vec<CompactCorner>, SchaefferError> {
    tb.validate()?;
    let len = match &tb.bridge {
        Bridge::Finite { labels } => labels.len() as i64,
        Bridge::Window { .. } => {
            return Err(SchaefferError::Malformed("finite treed bridge required".into()))
        }
    };
    let mut out = Vec::new();
    for pos in 0..len {
        if let Some(t) = tb.trees.get(&pos) {
            push_tree_corners(pos, t, None, &mut out);
        }
    }
    if out.is_empty() {
        return Err(SchaefferError::Malformed("treed bridge has no real corners".into()));
    }
    Ok(out)
}

/// Corners of a treed-bridge window in contour order, optionally dropping
/// labels above `threshold`.
pub fn collect_window(
    tb: &TreedBridge,
    threshold: Option<i64>,
) -> Result<Vec<CompactCorner>, SchaefferError> {
    tb.validate()?;
    let (lo, hi) = match &tb.bridge {
        Bridge::Window { .. } => tb.bridge.pos_range(),
        Bridge::Finite { .. } => {
            return Err(SchaefferError::Malformed("treed-bridge window required".into()))
        }
    };
    let mut out = Vec::new();
    for pos in lo..hi {
        if let Some(t) = tb.trees.get(&pos) {
            push_tree_corners(pos, t, threshold, &mut out);
        }
    }
    if out.is_empty() {
        return Err(SchaefferError::Malformed("window has no corners under threshold".into()));
    }
    Ok(out)
}
