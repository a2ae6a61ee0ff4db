//! Rooted ordered plane trees, with and without integer labels.
//! Arena storage: node 0 is the root; children keep insertion order.

use crate::CoreError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneTree {
    pub parent: Vec<Option<u32>>,
    pub children: Vec<Vec<u32>>,
}

impl PlaneTree {
    pub fn singleton() -> Self {
        PlaneTree { parent: vec![None], children: vec![vec![]] }
    }

    pub fn add_child(&mut self, parent: u32) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(Some(parent));
        self.children.push(vec![]);
        self.children[parent as usize].push(id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Edge count; the "size" of the tree.
    pub fn size(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn depth(&self, mut v: u32) -> u32 {
        let mut d = 0;
        while let Some(p) = self.parent[v as usize] {
            v = p;
            d += 1;
        }
        d
    }

    pub fn height(&self) -> u32 {
        (0..self.parent.len() as u32).map(|v| self.depth(v)).max().unwrap_or(0)
    }

    /// Corner sequence of the contour: node ids in visit order, deg(v)+1
    /// corners per node, 2*size+1 corners total.
    pub fn contour(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        while let Some(&(v, next_child)) = stack.last() {
            out.push(v);
            match self.children[v as usize].get(next_child) {
                Some(&c) => {
                    stack.last_mut().unwrap().1 += 1;
                    stack.push((c, 0));
                }
                None => {
                    stack.pop();
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree {
    pub tree: PlaneTree,
    pub labels: Vec<i64>,
}

/// Nested-array JSON form: `[label, [child, child, ...]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeJson(pub i64, pub Vec<TreeJson>);

impl LabelledTree {
    pub fn singleton(label: i64) -> Self {
        LabelledTree { tree: PlaneTree::singleton(), labels: vec![label] }
    }

    pub fn add_child(&mut self, parent: u32, label: i64) -> u32 {
        let id = self.tree.add_child(parent);
        self.labels.push(label);
        id
    }

    pub fn root_label(&self) -> i64 {
        self.labels[0]
    }

    pub fn size(&self) -> usize {
        self.tree.size()
    }

    pub fn min_label(&self) -> i64 {
        *self.labels.iter().min().unwrap()
    }

    /// Label increments across edges must lie in {-1, 0, +1}.
    pub fn check_label_steps(&self) -> Result<(), CoreError> {
        for v in 1..self.labels.len() {
            let p = self.tree.parent[v].unwrap() as usize;
            if (self.labels[v] - self.labels[p]).abs() > 1 {
                return Err(CoreError::InvalidTree(format!(
                    "label step {} -> {} at node {}",
                    self.labels[p], self.labels[v], v
                )));
            }
        }
        Ok(())
    }

    pub fn is_positive(&self) -> bool {
        self.labels.iter().all(|&l| l >= 1)
    }

    /// Subtree of nodes at depth <= h, preserving order.
    pub fn truncate(&self, h: u32) -> LabelledTree {
        let mut out = LabelledTree::singleton(self.labels[0]);
        let mut map = vec![u32::MAX; self.labels.len()];
        map[0] = 0;
        // nodes are in parent-before-child order only if built that way; walk by depth via contour
        let mut stack: Vec<(u32, u32)> = self.tree.children[0].iter().rev().map(|&c| (c, 1)).collect();
        while let Some((v, d)) = stack.pop() {
            if d > h {
                continue;
            }
            let p = self.tree.parent[v as usize].unwrap();
            map[v as usize] = out.add_child(map[p as usize], self.labels[v as usize]);
            for &c in self.tree.children[v as usize].iter().rev() {
                stack.push((c, d + 1));
            }
        }
        out
    }

    pub fn to_json(&self) -> TreeJson {
        fn go(t: &LabelledTree, v: u32) -> TreeJson {
            TreeJson(
                t.labels[v as usize],
                t.tree.children[v as usize].iter().map(|&c| go(t, c)).collect(),
            )
        }
        go(self, 0)
    }

    pub fn from_json(j: &TreeJson) -> LabelledTree {
        fn go(out: &mut LabelledTree, at: u32, j: &TreeJson) {
            for c in &j.1 {
                let id = out.add_child(at, c.0);
                go(out, id, c);
            }
        }
        let mut out = LabelledTree::singleton(j.0);
        go(&mut out, 0, j);
        out
    }
}

/// 0 for identical trees, else (1 + sup{h : [t]_h = [u]_h})^{-1}.
pub fn tree_local_distance(t: &LabelledTree, u: &LabelledTree) -> f64 {
    if t == u {
        return 0.0;
    }
    let mut sup = 0u32;
    let hmax = t.tree.height().max(u.tree.height());
    for h in 0..=hmax {
        if t.truncate(h) == u.truncate(h) {
            sup = h;
        } else {
            return 1.0 / (1.0 + sup as f64);
        }
    }
    1.0 / (1.0 + hmax as f64)
}
