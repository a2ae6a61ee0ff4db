//! Threshold-pruned ρ⁺ trees. A pruned tree materializes every vertex with
//! label ≤ m together with the connecting skeleton; a maximal subtree whose
//! minimum label exceeds m is kept as a Stub placeholder (it still splits its
//! parent's corners). Subtrees hanging above the threshold are resolved by an
//! exact Bernoulli dip indicator, P(dip) = 1 − w(x−m)/w(x), and dipping ones
//! are filled in conditioned on the dip: by rejection when the dip
//! probability is ≥ 10⁻³ (cheap candidates: children labels plus indicators),
//! and otherwise by an exact sequential h-transform walk weighted by
//! D(stack) = 1 − Π_open w(l−m)/w(l), which avoids the cubic blow-up of
//! rejection at far levels.

use crate::samplers::four_bullet_outcome;
use crate::weights::{dip_prob_f64, w_f64};
use crate::LawsError;
use rand::Rng;

const REJECTION_MIN: f64 = 1e-3;
const REJECTION_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PChild {
    Node(u32),
    Stub { label: i64 },
}

#[derive(Clone, Debug)]
pub struct PNode {
    pub label: i64,
    pub children: Vec<PChild>,
}

#[derive(Clone, Debug)]
pub struct PrunedTree {
    pub threshold: i64,
    pub root: u32,
    pub nodes: Vec<PNode>,
    pub min_label: i64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SampleCounters {
    pub dip_indicators: u64,
    pub rejection_retries: u64,
    pub htransform_events: u64,
    pub materialized_nodes: u64,
    pub stubs: u64,
}

impl SampleCounters {
    pub fn merge(&mut self, o: &SampleCounters) {
        self.dip_indicators += o.dip_indicators;
        self.rejection_retries += o.rejection_retries;
        self.htransform_events += o.htransform_events;
        self.materialized_nodes += o.materialized_nodes;
        self.stubs += o.stubs;
    }
}

impl PrunedTree {
    /// Materialized-corner visit sequence: each node appears once per corner,
    /// i.e. #child-slots + 1 times; stub slots contribute no visits of their
    /// own but split their parent's corners.
    pub fn contour(&self) -> Vec<u32> {
        let mut out = vec![self.root];
        let mut stack: Vec<(u32, usize)> = vec![(self.root, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, slot) = (top.0, top.1);
            match self.nodes[v as usize].children.get(slot) {
                None => {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        out.push(p);
                    }
                }
                Some(&PChild::Stub { .. }) => {
                    top.1 += 1;
                    out.push(v);
                }
                Some(&PChild::Node(w)) => {
                    top.1 += 1;
                    stack.push((w, 0));
                    out.push(w);
                }
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn stub_count(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.children.iter().filter(|c| matches!(c, PChild::Stub { .. })).count())
            .sum()
    }

    pub fn label(&self, v: u32) -> i64 {
        self.nodes[v as usize].label
    }
}

struct Builder {
    m: i64,
    nodes: Vec<PNode>,
    min_label: i64,
}

impl Builder {
    fn create(&mut self, label: i64, parent: Option<u32>) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(PNode { label, children: vec![] });
        if let Some(p) = parent {
            self.nodes[p as usize].children.push(PChild::Node(id));
        }
        self.min_label = self.min_label.min(label);
        id
    }
}

enum Task {
    /// Plain pruned production of an existing node's children.
    Produce(u32),
    /// Node exists with label > m and no children yet; fill its subtree
    /// conditioned on dipping to ≤ m.
    DipFill(u32),
}

fn run<R: Rng>(
    b: &mut Builder,
    mut tasks: Vec<Task>,
    rng: &mut R,
    ctr: &mut SampleCounters,
) -> Result<(), LawsError> {
    while let Some(task) = tasks.pop() {
        match task {
            Task::Produce(v) => {
                let l = b.nodes[v as usize].label;
                if let Some(d) = four_bullet_outcome(l, rng) {
                    let c = l + d;
                    tasks.push(Task::Produce(v));
                    if c <= b.m {
                        let w = b.create(c, Some(v));
                        ctr.materialized_nodes += 1;
                        tasks.push(Task::Produce(w));
                    } else {
                        ctr.dip_indicators += 1;
                        if rng.random::<f64>() < dip_prob_f64(c, b.m) {
                            let w = b.create(c, Some(v));
                            ctr.materialized_nodes += 1;
                            tasks.push(Task::DipFill(w));
                        } else {
                            ctr.stubs += 1;
                            b.nodes[v as usize].children.push(PChild::Stub { label: c });
                        }
                    }
                }
            }
            Task::DipFill(v) => {
                if dip_prob_f64(b.nodes[v as usize].label, b.m) >= REJECTION_MIN {
                    dip_by_rejection(b, v, rng, ctr, &mut tasks)?;
                } else {
                    ctr.htransform_events += 1;
                    dip_by_htransform(b, v, rng, ctr, &mut tasks);
                }
            }
        }
    }
    Ok(())
}

/// Candidate = v's children as (label, resolution); resolutions of subtrees
/// above the threshold are Bernoulli dip indicators, so a rejected candidate
/// costs O(#children) with nothing materialized. On acceptance the child
/// slots attach in order and expansion is queued.
fn dip_by_rejection<R: Rng>(
    b: &mut Builder,
    v: u32,
    rng: &mut R,
    ctr: &mut SampleCounters,
    tasks: &mut Vec<Task>,
) -> Result<(), LawsError> {
    #[derive(Clone, Copy)]
    enum Res {
        Low,
        HighDip,
        HighStub,
    }
    let label = b.nodes[v as usize].label;
    let mut children: Vec<(i64, Res)> = vec![];
    let mut tries = 0u64;
    loop {
        tries += 1;
        if tries > REJECTION_CAP {
            return Err(LawsError::RejectionCap(format!(
                "dip-conditioned tree at label {label}, threshold {}",
                b.m
            )));
        }
        children.clear();
        let mut witness = false;
        while let Some(d) = four_bullet_outcome(label, rng) {
            let c = label + d;
            if c <= b.m {
                children.push((c, Res::Low));
                witness = true;
            } else {
                ctr.dip_indicators += 1;
                if rng.random::<f64>() < dip_prob_f64(c, b.m) {
                    children.push((c, Res::HighDip));
                    witness = true;
                } else {
                    children.push((c, Res::HighStub));
                }
            }
        }
        if witness {
            break;
        }
        ctr.rejection_retries += 1;
    }
    let mut queued = vec![];
    for &(c, res) in &children {
        match res {
            Res::HighStub => {
                ctr.stubs += 1;
                b.nodes[v as usize].children.push(PChild::Stub { label: c });
            }
            Res::Low => {
                let w = b.create(c, Some(v));
                ctr.materialized_nodes += 1;
                queued.push(Task::Produce(w));
            }
            Res::HighDip => {
                let w = b.create(c, Some(v));
                ctr.materialized_nodes += 1;
                queued.push(Task::DipFill(w));
            }
        }
    }
    for t in queued.into_iter().rev() {
        tasks.push(t);
    }
    Ok(())
}

/// Exact sequential sampler for a dip-conditioned subtree at a far level.
/// Walks the open spine in production order; with Λ = Σ −ln(w(l−m)/w(l))
/// over open vertices, the conditional outcome weights at the spine top
/// (label l, base weights w(c)/12 per child, 1/w(l) for stop) are
///   child c ≤ m            : w(c)/12                      (discharge)
///   child c > m, dipping   : w(c)/12 · dip(c, m)          (discharge)
///   child c > m, stub      : w(c)/12 · (1 − dip) · D(Λ)   (stay)
///   stop                   : 1/w(l) · D(Λ − λ_top)        (pop)
/// where D(Λ) = −expm1(−Λ); the empty stack has D = 0, so the walk can
/// never pop its last frame without having discharged. After a discharge
/// every open vertex resumes plain pruned production.
fn dip_by_htransform<R: Rng>(
    b: &mut Builder,
    v: u32,
    rng: &mut R,
    ctr: &mut SampleCounters,
    tasks: &mut Vec<Task>,
) {
    // (node, label, cumulative Λ up to and including this frame)
    let mut spine: Vec<(u32, i64, f64)> = vec![];
    let l0 = b.nodes[v as usize].label;
    spine.push((v, l0, lam(l0, b.m)));
    loop {
        let &(top, l, lam_top) = spine.last().unwrap();
        let lam_below = if spine.len() >= 2 { spine[spine.len() - 2].2 } else { 0.0 };
        let d_top = -f64::exp_m1(-lam_top);
        let d_below = -f64::exp_m1(-lam_below);
        // outcome weights: 0..=2 children l-1+i, 3 = stop
        let mut wt = [0.0f64; 4];
        let mut dip = [0.0f64; 3];
        for i in 0..3 {
            let c = l - 1 + i as i64;
            let base = w_f64(c) / 12.0;
            if c <= b.m {
                wt[i] = base;
            } else {
                dip[i] = dip_prob_f64(c, b.m);
                wt[i] = base * (dip[i] + (1.0 - dip[i]) * d_top);
            }
        }
        wt[3] = d_below / w_f64(l);
        let total = wt[0] + wt[1] + wt[2] + wt[3];
        let mut u = rng.random::<f64>() * total;
        // float-dust fallback: the largest weight, never an impossible pop
        let mut pick = (0..4).max_by(|&a, &b| wt[a].total_cmp(&wt[b])).unwrap();
        for (i, &x) in wt.iter().enumerate() {
            if u < x {
                pick = i;
                break;
            }
            u -= x;
        }
        if pick == 3 {
            spine.pop();
            continue;
        }
        let c = l - 1 + pick as i64;
        if c <= b.m {
            // discharge by materialized low child
            let w = b.create(c, Some(top));
            ctr.materialized_nodes += 1;
            for &(s, _, _) in spine.iter() {
                tasks.push(Task::Produce(s));
            }
            tasks.push(Task::Produce(w));
            return;
        }
        // c > m: resolve dip conditionally on the drawn branch
        ctr.dip_indicators += 1;
        if rng.random::<f64>() < dip[pick] / (dip[pick] + (1.0 - dip[pick]) * d_top) {
            // discharge by dipping high child
            let w = b.create(c, Some(top));
            ctr.materialized_nodes += 1;
            for &(s, _, _) in spine.iter() {
                tasks.push(Task::Produce(s));
            }
            tasks.push(Task::DipFill(w));
            return;
        }
        // stub: obligation stays with the open spine
        ctr.stubs += 1;
        b.nodes[top as usize].children.push(PChild::Stub { label: c });
    }
}

fn lam(l: i64, m: i64) -> f64 {
    // −ln(no-dip prob) via ln1p on the cancellation-free dip form: exact even
    // when the dip is far below f64 epsilon relative to 1
    -f64::ln_1p(-dip_prob_f64(l, m))
}

/// Sample the pruned ρ⁺ tree with the given root label under threshold m.
/// Roots at or below the threshold always materialize; a root above it is
/// resolved by a dip indicator first and `None` means its whole tree stays
/// above m (the caller keeps a stub).
pub fn sample_pruned_tree<R: Rng>(
    root_label: i64,
    m: i64,
    rng: &mut R,
    ctr: &mut SampleCounters,
) -> Result<Option<PrunedTree>, LawsError> {
    assert!(m >= 1, "pruning threshold must be ≥ 1");
    assert!(root_label >= 1, "ρ⁺ root label must be ≥ 1");
    let mut b = Builder { m, nodes: vec![], min_label: i64::MAX };
    let root;
    let mut tasks = vec![];
    if root_label <= m {
        root = b.create(root_label, None);
        ctr.materialized_nodes += 1;
        tasks.push(Task::Produce(root));
    } else {
        ctr.dip_indicators += 1;
        if rng.random::<f64>() >= dip_prob_f64(root_label, m) {
            return Ok(None);
        }
        root = b.create(root_label, None);
        ctr.materialized_nodes += 1;
        tasks.push(Task::DipFill(root));
    }
    run(&mut b, tasks, rng, ctr)?;
    Ok(Some(PrunedTree { threshold: m, root, nodes: b.nodes, min_label: b.min_label }))
}

/// Sample a dip-conditioned pruned tree directly (root label > m known to dip).
pub fn sample_dipping_tree<R: Rng>(
    root_label: i64,
    m: i64,
    rng: &mut R,
    ctr: &mut SampleCounters,
) -> Result<PrunedTree, LawsError> {
    assert!(m >= 1 && root_label > m);
    let mut b = Builder { m, nodes: vec![], min_label: i64::MAX };
    let root = b.create(root_label, None);
    ctr.materialized_nodes += 1;
    run(&mut b, vec![Task::DipFill(root)], rng, ctr)?;
    Ok(PrunedTree { threshold: m, root, nodes: b.nodes, min_label: b.min_label })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::rng_for;

    fn hand_tree() -> PrunedTree {
        let nodes = vec![
            PNode { label: 1, children: vec![PChild::Node(1), PChild::Stub { label: 2 }, PChild::Node(2)] },
            PNode { label: 2, children: vec![] },
            PNode { label: 1, children: vec![PChild::Stub { label: 2 }] },
        ];
        PrunedTree { threshold: 1, root: 0, nodes, min_label: 1 }
    }

    #[test]
    fn contour_counts_corners_and_splits_at_stubs() {
        let t = hand_tree();
        assert_eq!(t.contour(), vec![0, 1, 0, 0, 2, 2, 0]);
        assert_eq!(t.stub_count(), 2);
        let single =
            PrunedTree { threshold: 1, root: 0, nodes: vec![PNode { label: 1, children: vec![] }], min_label: 1 };
        assert_eq!(single.contour(), vec![0]);
    }

    #[test]
    fn far_dipping_walk_always_dips() {
        let mut rng = rng_for(11, "far-dip-smoke", 0);
        let mut ctr = SampleCounters::default();
        for _ in 0..5 {
            let t = sample_dipping_tree(300, 5, &mut rng, &mut ctr).unwrap();
            assert!(t.min_label >= 1 && t.min_label <= 5);
        }
        assert!(ctr.htransform_events >= 5);
    }

    /// Force each conditioned sampler at the same level and compare: the
    /// rejection arm is correct by construction (unbiased candidates, accept
    /// on witness), the h-transform arm must match it in law.
    #[test]
    fn rejection_and_htransform_agree_in_law() {
        let (label, m) = (20i64, 1i64);
        assert!(dip_prob_f64(label, m) < REJECTION_MIN, "need the far regime");
        let n = 1500usize;
        let mut draw = |forced_rejection: bool, rng: &mut rand_chacha::ChaCha8Rng| {
            let mut ctr = SampleCounters::default();
            let mut b = Builder { m, nodes: vec![], min_label: i64::MAX };
            let root = b.create(label, None);
            let mut tasks = vec![];
            if forced_rejection {
                dip_by_rejection(&mut b, root, rng, &mut ctr, &mut tasks).unwrap();
            } else {
                dip_by_htransform(&mut b, root, rng, &mut ctr, &mut tasks);
            }
            run(&mut b, tasks, rng, &mut ctr).unwrap();
            assert!(b.min_label == 1, "conditioned tree failed to dip");
            PrunedTree { threshold: m, root, nodes: b.nodes, min_label: b.min_label }
        };
        let mut rng = rng_for(12, "ab-dip", 0);
        let mut sizes_a = vec![];
        let mut sizes_b = vec![];
        let mut deg = [[0usize; 3]; 2];
        for i in 0..2 * n {
            let t = draw(i < n, &mut rng);
            let d = (t.nodes[t.root as usize].children.len() - 1).min(2);
            if i < n {
                sizes_a.push(t.node_count());
                deg[0][d] += 1;
            } else {
                sizes_b.push(t.node_count());
                deg[1][d] += 1;
            }
        }
        // χ² over pooled-quantile size buckets (4 dof) and root degree (2 dof)
        let mut pooled: Vec<usize> = sizes_a.iter().chain(&sizes_b).copied().collect();
        pooled.sort_unstable();
        let cuts: Vec<usize> = (1..5).map(|k| pooled[k * pooled.len() / 5]).collect();
        let bucket = |s: usize| cuts.iter().filter(|&&c| s >= c).count();
        let mut counts = [[0usize; 5]; 2];
        for &s in &sizes_a {
            counts[0][bucket(s)] += 1;
        }
        for &s in &sizes_b {
            counts[1][bucket(s)] += 1;
        }
        let chi_sizes = chi2(&counts[0], &counts[1]);
        let chi_deg = chi2(&deg[0], &deg[1]);
        assert!(chi_sizes < 18.47, "size χ² = {chi_sizes}");
        assert!(chi_deg < 13.82, "degree χ² = {chi_deg}");
    }

    fn chi2(a: &[usize], b: &[usize]) -> f64 {
        let (na, nb): (usize, usize) = (a.iter().sum(), b.iter().sum());
        let (na, nb) = (na as f64, nb as f64);
        let mut chi = 0.0;
        for (&x, &y) in a.iter().zip(b) {
            let tot = (x + y) as f64;
            if tot > 0.0 {
                chi += (x as f64 - tot * na / (na + nb)).powi(2) / (tot * na / (na + nb))
                    + (y as f64 - tot * nb / (na + nb)).powi(2) / (tot * nb / (na + nb));
            }
        }
        chi
    }
}
