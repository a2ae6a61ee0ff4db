//! Exact samplers for the boundary walk and the two tree laws:
//! ρ (critical geometric offspring, uniform {−1,0,+1} edge increments) and
//! ρ⁺ (positive multi-type law via sequential four-way child production).

use crate::weights::child_thresholds;
use rand::Rng;

/// Flat arena tree; children keep production (= contour) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTree {
    pub labels: Vec<i64>,
    pub parent: Vec<Option<u32>>,
    pub children: Vec<Vec<u32>>,
}

impl FlatTree {
    pub fn singleton(label: i64) -> Self {
        FlatTree { labels: vec![label], parent: vec![None], children: vec![vec![]] }
    }
    pub fn add_child(&mut self, p: u32, label: i64) -> u32 {
        let id = self.labels.len() as u32;
        self.labels.push(label);
        self.parent.push(Some(p));
        self.children.push(vec![]);
        self.children[p as usize].push(id);
        id
    }
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }
    /// Edges = nodes − 1: the quadrangulation-area contribution of the tree.
    pub fn edge_count(&self) -> usize {
        self.labels.len() - 1
    }
    pub fn min_label(&self) -> i64 {
        *self.labels.iter().min().unwrap()
    }
}

/// Boundary walk from 0, `steps` steps; returns x₀..x_steps.
pub fn sample_walk<R: Rng>(steps: usize, rng: &mut R) -> Vec<i64> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = 0i64;
    out.push(x);
    for _ in 0..steps {
        x += if rng.random::<f64>() < crate::kernel::step_up_f64(x) { 1 } else { -1 };
        out.push(x);
    }
    out
}

/// Geometric(1/2) offspring count: P(c) = 2^{−c−1}.
pub fn geometric_half<R: Rng>(rng: &mut R) -> u32 {
    let mut c = 0;
    while rng.random::<f64>() < 0.5 {
        c += 1;
    }
    c
}

pub fn uniform_pm1<R: Rng>(rng: &mut R) -> i64 {
    rng.random_range(0..3) - 1
}

/// ρ_k: critical geometric Galton–Watson tree, root label k, iid uniform
/// {−1,0,+1} label increments. A.s. finite, infinite expected size, so a
/// cap is mandatory; Err(node count) tells the caller to resample or censor.
pub fn sample_tree_rho<R: Rng>(
    root_label: i64,
    rng: &mut R,
    cap: usize,
) -> Result<FlatTree, usize> {
    let mut t = FlatTree::singleton(root_label);
    let mut stack = vec![(0u32, geometric_half(rng))];
    while let Some((v, c)) = stack.last_mut() {
        if *c == 0 {
            stack.pop();
            continue;
        }
        *c -= 1;
        let v = *v;
        if t.labels.len() >= cap {
            return Err(t.labels.len());
        }
        let label = t.labels[v as usize] + uniform_pm1(rng);
        let id = t.add_child(v, label);
        stack.push((id, geometric_half(rng)));
    }
    Ok(t)
}

/// One four-bullet outcome at label l: Some(δ) adds a child labelled l+δ,
/// None stops production (probability 1/w(l) exactly).
pub fn four_bullet_outcome<R: Rng>(l: i64, rng: &mut R) -> Option<i64> {
    let th = child_thresholds(l);
    let u = rng.random::<f64>();
    if u < th[0] {
        Some(-1)
    } else if u < th[1] {
        Some(0)
    } else if u < th[2] {
        Some(1)
    } else {
        None
    }
}

/// ρ⁺_k: positive tree, root label k ≥ 1; production order = contour order.
/// With a cap, aborts returning Err(node count) for the caller to resample.
pub fn sample_tree_rho_plus<R: Rng>(
    root_label: i64,
    rng: &mut R,
    cap: Option<usize>,
) -> Result<FlatTree, usize> {
    assert!(root_label >= 1);
    let mut t = FlatTree::singleton(root_label);
    let mut stack = vec![0u32];
    while let Some(&v) = stack.last() {
        if let Some(cap) = cap {
            if t.labels.len() > cap {
                return Err(t.labels.len());
            }
        }
        let l = t.labels[v as usize];
        match four_bullet_outcome(l, rng) {
            Some(d) => {
                let id = t.add_child(v, l + d);
                stack.push(id);
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(t)
}
