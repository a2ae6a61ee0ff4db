//! Exact samplers for the treed-bridge laws and the deterministic one-sided
//! derivations. Expected total tree size is infinite under every law here,
//! so callers hand in an optional node budget; exceeding it aborts with
//! `TbError::Censored` and the caller decides whether to resample or count a
//! censored draw. RNG consumption order is documented per sampler so that
//! seeded runs are reproducible.

use crate::{Kind, TbError, TreedBridge};
use laws::bridge_dp::KernelTable;
use laws::samplers::{sample_tree_rho, sample_tree_rho_plus, sample_walk, FlatTree};
use planar_core::{Bridge, LabelledTree};
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Shared conditioned-bridge table: rows to τ = 2048 cover p ≤ 1024 directly;
/// larger perimeters go through the streamed paths of the sampler.
pub fn kernel_table() -> &'static KernelTable {
    static TABLE: OnceLock<KernelTable> = OnceLock::new();
    TABLE.get_or_init(|| KernelTable::new(2048))
}

fn flat_to_labelled(f: &FlatTree) -> LabelledTree {
    let mut t = LabelledTree::singleton(f.labels[0]);
    // FlatTree ids are in creation order, so parents precede children and
    // child lists rebuild in the same left-to-right order.
    for v in 1..f.labels.len() {
        let p = f.parent[v].expect("non-root has parent");
        t.add_child(p, f.labels[v]);
    }
    t
}

struct Budget {
    left: Option<usize>,
}

impl Budget {
    fn tree_cap(&self) -> Option<usize> {
        self.left
    }

    fn spend(&mut self, nodes: usize) -> Result<(), TbError> {
        if let Some(left) = &mut self.left {
            if nodes > *left {
                return Err(TbError::Censored { nodes });
            }
            *left -= nodes;
        }
        Ok(())
    }
}

fn grow_positive_trees<R: Rng>(
    bridge: &Bridge,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<BTreeMap<i64, LabelledTree>, TbError> {
    let mut budget = Budget { left: cap };
    let mut trees = BTreeMap::new();
    for i in bridge.down_steps() {
        let f = sample_tree_rho_plus(bridge.label(i), rng, budget.tree_cap())
            .map_err(|nodes| TbError::Censored { nodes })?;
        budget.spend(f.node_count())?;
        trees.insert(i, flat_to_labelled(&f));
    }
    Ok(trees)
}

/// Law of the treed bridge encoding the free Boltzmann quadrangulation with
/// perimeter 2p: bridge from the exact cyclic conditioned law (zero at
/// position 0, nonnegative, closing down into 0), independent positive trees
/// at the down-steps. `cap` bounds the total node count over all trees.
/// RNG order: bridge first, then trees at ascending down-step positions.
pub fn sample_b_p<R: Rng>(
    p: usize,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<TreedBridge, TbError> {
    assert!(p >= 1, "perimeter parameter must be at least 1");
    let labels = kernel_table().sample_conditioned_bridge(p, rng);
    let bridge = Bridge::Finite { labels };
    let trees = grow_positive_trees(&bridge, rng, cap)?;
    Ok(TreedBridge { bridge, trees, kind: Kind::Positive })
}

/// Window of the half-plane limit law on positions [−l_left, l_right]: two
/// independent one-sided bridge walks from 0 (so the labels at +1 and −1 are
/// both forced to 1), positive trees at the down-steps. RNG order: right
/// walk, left walk, then trees at ascending positions.
pub fn sample_b_inf_window<R: Rng>(
    l_left: usize,
    l_right: usize,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<TreedBridge, TbError> {
    let right = sample_walk(l_right, rng);
    let left = sample_walk(l_left, rng);
    let mut labels: Vec<i64> = left[1..].iter().rev().copied().collect();
    labels.extend_from_slice(&right);
    let bridge = Bridge::Window { labels, origin: l_left };
    let trees = grow_positive_trees(&bridge, rng, cap)?;
    Ok(TreedBridge { bridge, trees, kind: Kind::Positive })
}

/// Window of the unconstrained limit law on [−l, l]: fair ±1 walks on both
/// sides of 0, unconstrained trees (uniform {−1,0,+1} label increments on a
/// critical geometric tree) at the down-steps. RNG order: right walk, left
/// walk, then trees at ascending positions.
pub fn sample_b_pm_window<R: Rng>(
    l: usize,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<TreedBridge, TbError> {
    let mut labels = vec![0i64; 2 * l + 1];
    for i in 1..=l {
        let s = if rng.random::<bool>() { 1 } else { -1 };
        labels[l + i] = labels[l + i - 1] + s;
    }
    for i in 1..=l {
        let s = if rng.random::<bool>() { 1 } else { -1 };
        labels[l - i] = labels[l - i + 1] + s;
    }
    let bridge = Bridge::Window { labels, origin: l };
    let mut budget = Budget { left: cap };
    let mut trees = BTreeMap::new();
    for i in bridge.down_steps() {
        let f = sample_tree_rho(bridge.label(i), rng, budget.tree_cap().unwrap_or(usize::MAX))
            .map_err(|nodes| TbError::Censored { nodes })?;
        budget.spend(f.node_count())?;
        trees.insert(i, flat_to_labelled(&f));
    }
    Ok(TreedBridge { bridge, trees, kind: Kind::Unconstrained })
}

/// Right derivation: keep everything at positions > 0, replace the left side
/// by the descending staircase |i| whose every step is a down-step carrying a
/// single-vertex tree labelled |i|.
pub fn derive_b_r(tb: &TreedBridge) -> Result<TreedBridge, TbError> {
    let (lo, hi) = require_window(tb)?;
    let mut labels = Vec::with_capacity((hi - lo + 1) as usize);
    let mut trees = BTreeMap::new();
    for pos in lo..=hi {
        if pos <= 0 {
            labels.push(-pos);
            if pos < 0 {
                trees.insert(pos, LabelledTree::singleton(-pos));
            }
        } else {
            labels.push(tb.bridge.label(pos));
            if let Some(t) = tb.trees.get(&pos) {
                trees.insert(pos, t.clone());
            }
        }
    }
    TreedBridge::new(Bridge::Window { labels, origin: (-lo) as usize }, trees, tb.kind)
}

/// Left derivation: keep everything at positions ≤ 0 (including the tree at
/// the forced down-step −1), replace the right side by the rising staircase
/// x_i = i, which has no down-steps and hence no trees.
pub fn derive_b_l(tb: &TreedBridge) -> Result<TreedBridge, TbError> {
    let (lo, hi) = require_window(tb)?;
    let mut labels = Vec::with_capacity((hi - lo + 1) as usize);
    let mut trees = BTreeMap::new();
    for pos in lo..=hi {
        if pos <= 0 {
            labels.push(tb.bridge.label(pos));
            if let Some(t) = tb.trees.get(&pos) {
                trees.insert(pos, t.clone());
            }
        } else {
            labels.push(pos);
        }
    }
    TreedBridge::new(Bridge::Window { labels, origin: (-lo) as usize }, trees, tb.kind)
}

/// Window of the doubly-deterministic-bridge law on [−l, l]: the staircase
/// x_i = |i| on both sides, positive trees only on the left (every i < 0 is a
/// down-step), root label |i|. RNG order: trees at ascending positions.
pub fn sample_b_c_window<R: Rng>(
    l: usize,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<TreedBridge, TbError> {
    let li = l as i64;
    let labels: Vec<i64> = (-li..=li).map(|i| i.abs()).collect();
    let bridge = Bridge::Window { labels, origin: l };
    let trees = grow_positive_trees(&bridge, rng, cap)?;
    Ok(TreedBridge { bridge, trees, kind: Kind::Positive })
}

fn require_window(tb: &TreedBridge) -> Result<(i64, i64), TbError> {
    match tb.bridge {
        Bridge::Finite { .. } => Err(TbError::Incomparable(
            "one-sided derivation needs a window treed bridge".into(),
        )),
        Bridge::Window { .. } => Ok(tb.bridge.pos_range()),
    }
}
