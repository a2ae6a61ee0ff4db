//! Finite correspondences. The pointed map carries the added vertex δ
//! (vertex 0, labelled one below the smallest tree label); forgetting labels
//! but keeping δ as the root vertex gives the positive correspondence, under
//! which tree labels become graph distances from the root.

use planar_core::Bridge;
use treed_bridge::{Kind, TreedBridge};

use crate::assemble::{assemble, Assembly, DELTA};
use crate::corners::collect_finite;
use crate::successor::{build_successors, ScanMode};
use crate::SchaefferError;

/// Image of a finite treed bridge as a quadrangulation with boundary,
/// pointed at δ = vertex 0. Area = total tree size, perimeter = bridge
/// length, and every vertex satisfies d(x, δ) = label(x) − label(δ).
pub fn phi_pointed(tb: &TreedBridge) -> Result<Assembly, SchaefferError> {
    let labels = match &tb.bridge {
        Bridge::Finite { labels } => labels.clone(),
        Bridge::Window { .. } => {
            return Err(SchaefferError::Malformed("finite treed bridge required".into()))
        }
    };
    let corners = collect_finite(tb)?;
    let succ = build_successors(&corners, ScanMode::Cyclic)?;
    let x1 = tb.bridge.label(1);
    let x0_down = x1 == tb.bridge.label(0) - 1;
    let asm = assemble(corners, succ, x1, x0_down)?;

    asm.map.validate_finite()?;
    let size: usize = tb.trees.values().map(|t| t.size()).sum();
    if asm.map.area() != size {
        return Err(SchaefferError::Malformed(format!(
            "area {} differs from tree size {size}",
            asm.map.area()
        )));
    }
    if asm.map.perimeter() != labels.len() {
        return Err(SchaefferError::Malformed(format!(
            "perimeter {} differs from bridge length {}",
            asm.map.perimeter(),
            labels.len()
        )));
    }
    #[cfg(debug_assertions)]
    {
        let dist = asm.map.graph_distances_from(DELTA);
        for (v, &d) in dist.iter().enumerate() {
            debug_assert_eq!(
                d as i64,
                asm.labels[v] - asm.delta_label(),
                "distance from δ must equal relative label at vertex {v}"
            );
        }
    }
    Ok(asm)
}

/// Positive correspondence: the pointed image of a positive treed bridge,
/// whose root vertex is δ itself.
pub fn phi_positive(tb: &TreedBridge) -> Result<Assembly, SchaefferError> {
    if tb.kind != Kind::Positive {
        return Err(SchaefferError::Malformed("positive treed bridge required".into()));
    }
    let asm = phi_pointed(tb)?;
    if asm.delta_label() != 0 {
        return Err(SchaefferError::Malformed(
            "positive treed bridge must have smallest tree label 1".into(),
        ));
    }
    if asm.root_vertex != DELTA {
        return Err(SchaefferError::Malformed(
            "positive image must be rooted at δ".into(),
        ));
    }
    Ok(asm)
}
