//! Certified ball sampler for the uniform infinite half-planar
//! quadrangulation. The bridge is streamed outward one side at a time; trees
//! at down-steps with root ≤ m = r + 1 are materialized pruned at m, higher
//! roots are resolved by a Bernoulli dip indicator and, when it fires, a
//! dip-conditioned pruned tree. The walk extends until the residual risk —
//! the exact probability that the unexplored part of either side still
//! touches labels ≤ m: bridge hitting ≤ m plus the expected number of far
//! dipping trees, both at the frontier label — falls below the target, or
//! the extent cap is reached (reported, never silent). Only corners with
//! label ≤ m are kept, so memory scales with the ball, not the window.

use laws::kernel::{far_dip_expectation, hit_below_prob_f64, step_up_f64};
use laws::pruned::{sample_dipping_tree, sample_pruned_tree, SampleCounters};
use laws::stream::rng_for;
use laws::weights::dip_prob_f64;
use planar_core::{BallMap, Quadrangulation};
use rand::Rng;

use crate::assemble::{assemble, DELTA};
use crate::corners::push_pruned_corners;
use crate::successor::{build_successors, ScanMode, SuccTarget};
use crate::SchaefferError;

#[derive(Clone, Copy, Debug)]
pub struct BallConfig {
    /// Target total residual risk of the certificate.
    pub epsilon: f64,
    /// Hard cap on bridge positions explored per side.
    pub max_extent: usize,
}

impl Default for BallConfig {
    fn default() -> Self {
        BallConfig { epsilon: 5e-2, max_extent: 100_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct UihpqBall {
    /// The exact ball, carrying the achieved residual risk.
    pub ball: BallMap,
    /// Whether the achieved risk met the requested epsilon.
    pub certified: bool,
    pub window_used: (i64, i64),
    pub frontier_labels: (i64, i64),
    /// 1 + #materialized tree nodes with label ≤ r; equals the ball's vertex
    /// count because labels are distances from the root.
    pub low_vertex_count: u64,
    pub counters: SampleCounters,
}

impl UihpqBall {
    pub fn residual_risk(&self) -> f64 {
        self.ball.residual_risk
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EventKind {
    /// Root ≤ m: the tree always materializes (pruned at m).
    Low,
    /// Root > m and its dip indicator fired.
    Dip,
}

struct Side {
    /// (position, root label, kind), positions ascending.
    events: Vec<(i64, i64, EventKind)>,
    extent: i64,
    frontier_label: i64,
    risk: f64,
}

/// Exact probability that the unexplored continuation beyond a frontier at
/// label x still produces structure with labels ≤ m: the bridge itself
/// hitting ≤ m, plus the expected number of dipping trees if it never does.
fn side_risk(x: i64, m: i64) -> f64 {
    hit_below_prob_f64(x, m) + far_dip_expectation(x, m)
}

fn stream_right<R: Rng + ?Sized>(
    m: i64,
    eps_side: f64,
    max_extent: usize,
    rng: &mut R,
    ctr: &mut SampleCounters,
) -> Side {
    let mut events = Vec::new();
    let mut x: i64 = 0;
    let mut pos: i64 = 0;
    while (pos as usize) < max_extent {
        if rng.random::<f64>() < step_up_f64(x) {
            x += 1;
        } else {
            // down-step at `pos`: tree root carries the pre-step label
            if x <= m {
                events.push((pos, x, EventKind::Low));
            } else {
                ctr.dip_indicators += 1;
                if rng.random::<f64>() < dip_prob_f64(x, m) {
                    events.push((pos, x, EventKind::Dip));
                }
            }
            x -= 1;
        }
        pos += 1;
        if x > m && side_risk(x, m) <= eps_side {
            break;
        }
    }
    Side { events, extent: pos, frontier_label: x, risk: side_risk(x, m) }
}

fn stream_left<R: Rng + ?Sized>(
    m: i64,
    eps_side: f64,
    max_extent: usize,
    rng: &mut R,
    ctr: &mut SampleCounters,
) -> Side {
    let mut events = Vec::new();
    let mut x: i64 = 0;
    let mut k: i64 = 0;
    while (k as usize) < max_extent {
        k += 1;
        // leftward walk step to position −k; an up-move read leftward is a
        // down-step of the two-sided bridge read rightward
        if rng.random::<f64>() < step_up_f64(x) {
            x += 1;
            if x <= m {
                events.push((-k, x, EventKind::Low));
            } else {
                ctr.dip_indicators += 1;
                if rng.random::<f64>() < dip_prob_f64(x, m) {
                    events.push((-k, x, EventKind::Dip));
                }
            }
        } else {
            x -= 1;
        }
        if x > m && side_risk(x, m) <= eps_side {
            break;
        }
    }
    events.reverse();
    Side { events, extent: k, frontier_label: x, risk: side_risk(x, m) }
}

struct StreamedWindow {
    left: Side,
    right: Side,
    counters: SampleCounters,
    trees_seed: u64,
}

fn stream_window<R: Rng + ?Sized>(
    m: i64,
    cfg: &BallConfig,
    rng: &mut R,
) -> Result<StreamedWindow, SchaefferError> {
    // Independent substreams keep the walk/indicator draws and the tree
    // draws reproducible regardless of consumption interleaving.
    let master: u64 = rng.random();
    let mut rng_right = rng_for(master, "ball-bridge-right", 0);
    let mut rng_left = rng_for(master, "ball-bridge-left", 0);
    let mut ctr = SampleCounters::default();
    let eps_side = cfg.epsilon / 2.0;
    let right = stream_right(m, eps_side, cfg.max_extent, &mut rng_right, &mut ctr);
    let left = stream_left(m, eps_side, cfg.max_extent, &mut rng_left, &mut ctr);
    if right.frontier_label <= m || left.frontier_label <= m {
        return Err(SchaefferError::Horizon(format!(
            "frontier labels ({}, {}) not above threshold {m}; raise max_extent",
            left.frontier_label, right.frontier_label
        )));
    }
    Ok(StreamedWindow { left, right, counters: ctr, trees_seed: master })
}

pub fn sample_uihpq_ball<R: Rng + ?Sized>(
    r: u32,
    cfg: &BallConfig,
    rng: &mut R,
) -> Result<UihpqBall, SchaefferError> {
    if r == 0 {
        // the radius-0 ball is the root vertex regardless of the sample
        rng.random::<u64>();
        return Ok(UihpqBall {
            ball: BallMap {
                map: Quadrangulation::single_vertex(),
                radius: 0,
                residual_risk: 0.0,
            },
            certified: true,
            window_used: (0, 0),
            frontier_labels: (0, 0),
            low_vertex_count: 1,
            counters: SampleCounters::default(),
        });
    }
    let m = r as i64 + 1;
    let mut sw = stream_window(m, cfg, rng)?;
    let mut rng_trees = rng_for(sw.trees_seed, "ball-trees", 0);
    let risk = sw.left.risk + sw.right.risk;

    let mut corners = Vec::new();
    let mut low_nodes: u64 = 0;
    for &(pos, root, kind) in sw.left.events.iter().chain(sw.right.events.iter()) {
        let pt = match kind {
            EventKind::Low => sample_pruned_tree(root, m, &mut rng_trees, &mut sw.counters)?
                .expect("a root at or below the threshold always materializes"),
            EventKind::Dip => sample_dipping_tree(root, m, &mut rng_trees, &mut sw.counters)?,
        };
        low_nodes +=
            (0..pt.node_count() as u32).filter(|&v| pt.label(v) <= r as i64).count() as u64;
        push_pruned_corners(pos, &pt, m, &mut corners);
    }

    let succ = build_successors(&corners, ScanMode::Window)?;
    if succ.delta_label != 0 {
        return Err(SchaefferError::Horizon(
            "window misses the forced label-1 corner left of the origin".into(),
        ));
    }
    if let Some(i) = succ.succ.iter().position(|s| *s == SuccTarget::Unresolved) {
        return Err(SchaefferError::Unresolved(format!(
            "corner labelled {} unresolved despite frontier above threshold",
            corners[i].label
        )));
    }
    let asm = assemble(corners, succ, 1, false)?;
    let (map, center) = asm.map.ball_from(DELTA, r);
    debug_assert_eq!(center, DELTA, "δ keeps id 0 in the extracted ball");
    Ok(UihpqBall {
        ball: BallMap { map, radius: r, residual_risk: risk },
        certified: risk <= cfg.epsilon,
        window_used: (-sw.left.extent, sw.right.extent),
        frontier_labels: (sw.left.frontier_label, sw.right.frontier_label),
        low_vertex_count: 1 + low_nodes,
        counters: sw.counters,
    })
}

#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub radii: Vec<u32>,
    /// #vertices with label ≤ rᵢ in the window, δ included.
    pub counts: Vec<u64>,
    /// Residual risk of the count at each radius (0 for radius 0).
    pub risks: Vec<f64>,
    /// Stopping target met at the largest radius.
    pub certified: bool,
    pub window_used: (i64, i64),
    pub frontier_labels: (i64, i64),
    pub counters: SampleCounters,
}

/// Ball volumes at several radii from one window, certified at the largest.
/// Counts avoid map assembly entirely: ball vertices are exactly the labels
/// ≤ r, so a label histogram of the materialized nodes suffices.
pub fn sample_ball_volumes<R: Rng + ?Sized>(
    radii: &[u32],
    cfg: &BallConfig,
    rng: &mut R,
) -> Result<VolumeReport, SchaefferError> {
    let &rmax = radii
        .iter()
        .max()
        .ok_or_else(|| SchaefferError::Malformed("radii must be nonempty".into()))?;
    let m = rmax as i64 + 1;
    let mut sw = stream_window(m, cfg, rng)?;
    let mut rng_trees = rng_for(sw.trees_seed, "ball-trees", 0);

    let mut hist = vec![0u64; m as usize + 1];
    for &(_, root, kind) in sw.left.events.iter().chain(sw.right.events.iter()) {
        let pt = match kind {
            EventKind::Low => sample_pruned_tree(root, m, &mut rng_trees, &mut sw.counters)?
                .expect("a root at or below the threshold always materializes"),
            EventKind::Dip => sample_dipping_tree(root, m, &mut rng_trees, &mut sw.counters)?,
        };
        for v in 0..pt.node_count() as u32 {
            let l = pt.label(v);
            if l <= m {
                hist[l as usize] += 1;
            }
        }
    }
    let mut prefix = vec![0u64; m as usize + 1];
    for y in 1..=m as usize {
        prefix[y] = prefix[y - 1] + hist[y];
    }
    let counts: Vec<u64> = radii.iter().map(|&r| 1 + prefix[(r as i64).min(m) as usize]).collect();
    let risks: Vec<f64> = radii
        .iter()
        .map(|&r| {
            if r == 0 {
                0.0
            } else {
                side_risk(sw.left.frontier_label, r as i64 + 1)
                    + side_risk(sw.right.frontier_label, r as i64 + 1)
            }
        })
        .collect();
    let certified = sw.left.risk + sw.right.risk <= cfg.epsilon;
    Ok(VolumeReport {
        radii: radii.to_vec(),
        counts,
        risks,
        certified,
        window_used: (-sw.left.extent, sw.right.extent),
        frontier_labels: (sw.left.frontier_label, sw.right.frontier_label),
        counters: sw.counters,
    })
}
