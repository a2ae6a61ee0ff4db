//! Exhaustive treed-bridge enumeration: every ±1 cyclic bridge of length 2p
//! anchored at x₀ = 0, every split of the n tree edges over its down-steps,
//! every labelled tree in every slot.

use std::collections::BTreeMap;

use planar_core::{Bridge, LabelledTree};
use treed_bridge::{Kind, TreedBridge};

use crate::trees::{compositions, enumerate_labelled_trees, LtKind};
use crate::{OracleError, BRIDGE_BOUND};

/// Label vectors [x₀ … x_{2p−1}] of cyclic ±1 bridges with x₀ = 0; the
/// positive family keeps every level ≥ 0.
pub fn bridge_labels(p: usize, nonneg: bool) -> Vec<Vec<i64>> {
    let len = 2 * p;
    let mut out = Vec::new();
    let mut steps = vec![-1i64; len];
    // odometer over {−1,+1}^{2p}, filtered to sum 0 (p of each)
    loop {
        if steps.iter().sum::<i64>() == 0 {
            let mut labels = Vec::with_capacity(len);
            let mut x = 0i64;
            let mut ok = true;
            for &s in &steps {
                labels.push(x);
                x += s;
                if nonneg && x < 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(labels);
            }
        }
        let mut i = 0;
        while i < len && steps[i] == 1 {
            steps[i] = -1;
            i += 1;
        }
        if i == len {
            break;
        }
        steps[i] = 1;
    }
    out
}

/// All of TB_{n,p} (kind Unconstrained) or TB⁺_{n,p} (kind Positive),
/// each exactly once.
pub fn enumerate_treed_bridges(
    kind: Kind,
    n: usize,
    p: usize,
) -> Result<Vec<TreedBridge>, OracleError> {
    if p == 0 {
        return Err(OracleError::Bound("perimeter needs p ≥ 1".into()));
    }
    if n + p > BRIDGE_BOUND {
        return Err(OracleError::Bound(format!("n + p = {} > {BRIDGE_BOUND}", n + p)));
    }
    let nonneg = kind == Kind::Positive;
    let mut out = Vec::new();
    for labels in bridge_labels(p, nonneg) {
        let len = labels.len() as i64;
        let downs: Vec<i64> = (0..len)
            .filter(|&i| labels[((i + 1) % len) as usize] == labels[i as usize] - 1)
            .collect();
        for sizes in compositions(n, downs.len()) {
            let slots: Result<Vec<Vec<LabelledTree>>, OracleError> = downs
                .iter()
                .zip(&sizes)
                .map(|(&i, &sz)| {
                    let root = labels[i as usize];
                    let lt_kind =
                        if nonneg { LtKind::Positive(root) } else { LtKind::Any(root) };
                    enumerate_labelled_trees(lt_kind, sz)
                })
                .collect();
            let slots = slots?;
            if slots.iter().any(|l| l.is_empty()) {
                continue;
            }
            let mut pick = vec![0usize; slots.len()];
            loop {
                let trees: BTreeMap<i64, LabelledTree> = downs
                    .iter()
                    .enumerate()
                    .map(|(s, &i)| (i, slots[s][pick[s]].clone()))
                    .collect();
                out.push(TreedBridge::new(
                    Bridge::Finite { labels: labels.clone() },
                    trees,
                    kind,
                )?);
                let mut k = 0;
                while k < pick.len() && pick[k] + 1 == slots[k].len() {
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
                pick[k] += 1;
            }
        }
    }
    Ok(out)
}
