//! Window images of the half-planar limits. The positive construction keeps
//! only corners with label ≤ threshold (the rest can never touch the ball it
//! certifies); the unconstrained construction keeps everything and instead
//! marks which vertices are already determined by the window.

use planar_core::{BallMap, Bridge, Quadrangulation, WindowedMap};
use treed_bridge::{Kind, TreedBridge};

use crate::assemble::{assemble, Assembly, DELTA};
use crate::corners::collect_window;
use crate::successor::{build_successors, ScanMode, SuccTarget};
use crate::SchaefferError;

/// Assemble the image of a positive window keeping corners with label ≤
/// `threshold`. Errors if any kept corner has an unresolved successor or the
/// forced label-1 corner is missing — either means the window is too small.
pub fn assemble_positive_window(
    tb: &TreedBridge,
    threshold: i64,
) -> Result<Assembly, SchaefferError> {
    if tb.kind != Kind::Positive {
        return Err(SchaefferError::Malformed("positive treed bridge required".into()));
    }
    if matches!(tb.bridge, Bridge::Finite { .. }) {
        return Err(SchaefferError::Malformed("treed-bridge window required".into()));
    }
    if threshold < 1 {
        return Err(SchaefferError::Malformed("threshold must be ≥ 1".into()));
    }
    let corners = collect_window(tb, Some(threshold))?;
    let succ = build_successors(&corners, ScanMode::Window)?;
    if succ.delta_label != 0 {
        return Err(SchaefferError::Horizon(
            "window misses the forced label-1 corner left of the origin".into(),
        ));
    }
    if let Some(i) = succ.succ.iter().position(|s| *s == SuccTarget::Unresolved) {
        return Err(SchaefferError::Unresolved(format!(
            "corner labelled {} at position {} has no target in the window",
            corners[i].label, corners[i].pos
        )));
    }
    assemble(corners, succ, 1, false)
}

/// Ball of radius r around the root in the image of a positive window. The
/// window must resolve every corner with label ≤ r + 1; the extracted ball
/// is then exactly the ball of the full image.
pub fn phi_infinite_positive_window(
    tb: &TreedBridge,
    r: u32,
) -> Result<BallMap, SchaefferError> {
    if r == 0 {
        return Ok(BallMap { map: Quadrangulation::single_vertex(), radius: 0, residual_risk: 0.0 });
    }
    let asm = assemble_positive_window(tb, r as i64 + 1)?;
    let (map, center) = asm.map.ball_from(DELTA, r);
    debug_assert_eq!(center, DELTA, "δ is vertex 0 in the ball as well");
    Ok(BallMap { map, radius: r, residual_risk: 0.0 })
}

#[derive(Clone, Debug)]
pub struct WindowImage {
    pub assembly: Assembly,
    /// Every vertex within this graph distance of the root has its full
    /// neighborhood determined by the window alone.
    pub trusted_radius: u32,
    pub trusted_vertex: Vec<bool>,
}

impl WindowImage {
    pub fn windowed_map(&self) -> WindowedMap {
        WindowedMap {
            map: self.assembly.map.clone(),
            trusted_radius: self.trusted_radius,
            // statistical mode: no liminf certificate accompanies the window
            residual_risk: 1.0,
        }
    }
}

/// Image of an unconstrained window (no positivity, no certificate). A
/// vertex is trusted when none of its corners can change in a larger
/// window: every outgoing chord was found strictly rightward inside the
/// window, and every corner is shielded by an earlier corner of the same
/// label (so no source revealed later can land on it).
pub fn phi_unconstrained_window(tb: &TreedBridge) -> Result<WindowImage, SchaefferError> {
    if matches!(tb.bridge, Bridge::Finite { .. }) {
        return Err(SchaefferError::Malformed("treed-bridge window required".into()));
    }
    let corners = collect_window(tb, None)?;
    let succ = build_successors(&corners, ScanMode::Window)?;
    let x1 = tb.bridge.label(1);
    let x0_down = x1 == tb.bridge.label(0) - 1;
    let asm = assemble(corners, succ, x1, x0_down)?;

    let ncor = asm.corners.len();
    let mut corner_ok = vec![false; ncor];
    for i in 0..ncor {
        let out_ok = matches!(asm.succ.succ[i], SuccTarget::Corner(_)) && !asm.succ.wrapped[i];
        let shielded = asm.succ.by_label[&asm.corners[i].label][0] != i;
        corner_ok[i] = out_ok && shielded;
    }
    let mut trusted = vec![true; asm.labels.len()];
    trusted[DELTA as usize] = false;
    for i in 0..ncor {
        if !corner_ok[i] {
            trusted[asm.vertex_of_corner[i] as usize] = false;
        }
    }
    let dist = asm.map.graph_distances_from(asm.root_vertex);
    let mut trusted_radius = u32::MAX;
    for (v, &t) in trusted.iter().enumerate() {
        if !t && dist[v] != u32::MAX {
            trusted_radius = trusted_radius.min(dist[v].saturating_sub(1));
        }
    }
    if trusted_radius == u32::MAX {
        trusted_radius = *dist.iter().filter(|&&d| d != u32::MAX).max().unwrap_or(&0);
    }
    Ok(WindowImage { assembly: asm, trusted_radius, trusted_vertex: trusted })
}
