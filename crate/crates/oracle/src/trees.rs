//! Exhaustive labelled-tree enumeration. Plane-tree shapes come from two
//! independent generators — recursion over root degree and Dyck-word
//! decoding — so completeness is cross-checkable; labels are attached by an
//! increment odometer, and positive counts have a per-shape DP plus a closed
//! size recursion as a third opinion.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use planar_core::{LabelledTree, PlaneTree};
use rayon::prelude::*;

use crate::{OracleError, TREE_BOUND};

/// Which labelled-tree family: root label is the payload. `Any` allows all
/// integer labels (increments in {−1,0,+1}); `Positive` keeps labels ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtKind {
    Any(i64),
    Positive(i64),
}

pub fn catalan(n: usize) -> BigUint {
    // Cat(n+1) = Cat(n) · 2(2n+1)/(n+2), exact at every step
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// Shape as nested children lists; converted to arena form on demand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shape(pub Vec<Shape>);

impl Shape {
    pub fn edges(&self) -> usize {
        self.0.iter().map(|c| 1 + c.edges()).sum()
    }

    pub fn to_plane_tree(&self) -> PlaneTree {
        fn go(t: &mut PlaneTree, at: u32, s: &Shape) {
            for c in &s.0 {
                let id = t.add_child(at);
                go(t, id, c);
            }
        }
        let mut t = PlaneTree::singleton();
        go(&mut t, 0, self);
        t
    }

    /// U at each descent, D at each return: the ballot encoding.
    pub fn dyck(&self) -> Vec<bool> {
        fn go(out: &mut Vec<bool>, s: &Shape) {
            for c in &s.0 {
                out.push(true);
                go(out, c);
                out.push(false);
            }
        }
        let mut out = Vec::new();
        go(&mut out, self);
        out
    }
}

pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Generator one: all shapes with n edges by root degree d and the
/// composition of n − d over the d child subtrees.
pub fn shapes_by_root_degree(n: usize) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape(vec![])];
    }
    (1..=n)
        .into_par_iter()
        .flat_map_iter(|d| {
            compositions(n - d, d).into_iter().flat_map(move |sizes| {
                let mut children: Vec<Vec<Shape>> = vec![vec![]];
                for &s in &sizes {
                    let subs = shapes_by_root_degree(s);
                    children = children
                        .into_iter()
                        .flat_map(|prefix| {
                            subs.iter().map(move |sub| {
                                let mut p = prefix.clone();
                                p.push(sub.clone());
                                p
                            })
                        })
                        .collect();
                }
                children.into_iter().map(Shape)
            })
        })
        .collect()
}

/// Generator two: decode every ballot sequence (Dyck word) of length 2n.
pub fn shapes_by_dyck_decoding(n: usize) -> Vec<Shape> {
    fn extend(word: &mut Vec<bool>, open: usize, remaining: usize, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(decode(word));
            return;
        }
        if remaining > open {
            word.push(true);
            extend(word, open + 1, remaining - 1, out);
            word.pop();
        }
        if open > 0 {
            word.push(false);
            extend(word, open - 1, remaining - 1, out);
            word.pop();
        }
    }
    fn decode(word: &[bool]) -> Shape {
        let mut stack: Vec<Vec<Shape>> = vec![vec![]];
        for &up in word {
            if up {
                stack.push(vec![]);
            } else {
                let done = Shape(stack.pop().expect("balanced word"));
                stack.last_mut().expect("balanced word").push(done);
            }
        }
        assert_eq!(stack.len(), 1, "word must return to the root");
        Shape(stack.pop().unwrap())
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, 2 * n, &mut out);
    out
}

/// All labelled trees of the kind with exactly n edges, each exactly once:
/// shapes × an increment odometer ({−1,0,+1} per non-root node, preorder),
/// filtered by positivity when the kind demands it.
pub fn enumerate_labelled_trees(kind: LtKind, n: usize) -> Result<Vec<LabelledTree>, OracleError> {
    if n > TREE_BOUND {
        return Err(OracleError::Bound(format!("tree edges {n} > {TREE_BOUND}")));
    }
    let (root, positive) = match kind {
        LtKind::Any(k) => (k, false),
        LtKind::Positive(k) => (k, true),
    };
    if positive && root < 1 {
        return Err(OracleError::Bound(format!("positive kind needs root ≥ 1, got {root}")));
    }
    let mut out = Vec::new();
    for shape in shapes_by_root_degree(n) {
        let tree = shape.to_plane_tree();
        let mut incs = vec![-1i64; n];
        loop {
            let mut labels = vec![root];
            for v in 1..=n {
                let p = tree.parent[v].expect("non-root node") as usize;
                labels.push(labels[p] + incs[v - 1]);
            }
            if !positive || labels.iter().all(|&l| l >= 1) {
                out.push(LabelledTree { tree: tree.clone(), labels });
            }
            // odometer over {−1,0,+1}^n
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if incs[i] < 1 {
                    incs[i] += 1;
                    break;
                }
                incs[i] = -1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(out)
}

/// Exact count without materializing: closed form Cat(n)·3ⁿ for `Any`,
/// per-shape label DP for `Positive`.
pub fn count_labelled_trees(kind: LtKind, n: usize) -> BigUint {
    match kind {
        LtKind::Any(_) => catalan(n) * BigUint::from(3u32).pow(n as u32),
        LtKind::Positive(k) => {
            assert!(k >= 1);
            shapes_by_root_degree(n)
                .par_iter()
                .map(|s| positive_labelings(s, k))
                .reduce(BigUint::zero, |a, b| a + b)
        }
    }
}

fn positive_labelings(shape: &Shape, root_label: i64) -> BigUint {
    fn f(s: &Shape, l: i64) -> BigUint {
        let mut prod = BigUint::one();
        for c in &s.0 {
            let mut sum = BigUint::zero();
            for d in [-1i64, 0, 1] {
                if l + d >= 1 {
                    sum += f(c, l + d);
                }
            }
            prod *= sum;
        }
        prod
    }
    if root_label < 1 {
        return BigUint::zero();
    }
    f(shape, root_label)
}

/// Third opinion on positive counts: the size recursion over (root label,
/// edges) from the first-child decomposition, shape-free.
pub fn count_positive_closed(k: i64, n: usize) -> BigUint {
    assert!(k >= 1);
    let kmax = (k as usize) + n + 1;
    // table[l][m] = #positive trees, root label l, m edges
    let mut table = vec![vec![BigUint::zero(); n + 1]; kmax + 2];
    for row in table.iter_mut() {
        row[0] = BigUint::one();
    }
    for m in 1..=n {
        for l in 1..=kmax as i64 {
            let mut total = BigUint::zero();
            for first in [l - 1, l, l + 1] {
                if first < 1 || first > (kmax + 1) as i64 {
                    continue;
                }
                for j in 0..m {
                    let inner = table[first as usize][j].clone();
                    total += inner * &table[l as usize][m - 1 - j];
                }
            }
            table[l as usize][m] = total;
        }
    }
    table[k as usize][n].clone()
}
