//! The bijection suite: injectivity of the positive chord construction,
//! the pointing identity linking the two treed-bridge families, labels as
//! distances on every instance, and — at perimeter two — set equality of the
//! images against the independent gluing generator.

use std::collections::BTreeSet;

use planar_core::CanonicalForm;
use schaeffer::{phi_pointed, phi_positive, DELTA};
use serde::Serialize;
use treed_bridge::{Kind, TreedBridge};

use crate::bridges::enumerate_treed_bridges;
use crate::gluing::quadrangulations_by_gluing;
use crate::{assert_or, OracleError};

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub n: usize,
    pub p: usize,
    pub positive_count: usize,
    pub pointed_count: usize,
    pub distinct_images: usize,
    /// Independent gluing-generation count; only run at p = 1, n ≤ 3.
    pub gluing_count: Option<usize>,
}

fn witness(tb: &TreedBridge, message: String) -> OracleError {
    OracleError::Assertion {
        message,
        witness: serde_json::to_string(&tb.to_json()).ok(),
    }
}

pub fn verify_bijection(n: usize, p: usize) -> Result<BijectionReport, OracleError> {
    let plus = enumerate_treed_bridges(Kind::Positive, n, p)?;
    let all = enumerate_treed_bridges(Kind::Unconstrained, n, p)?;

    let mut codes: BTreeSet<CanonicalForm> = BTreeSet::new();
    for tb in &plus {
        let asm = phi_positive(tb).map_err(|e| witness(tb, e.to_string()))?;
        if asm.map.area() != n || asm.map.perimeter() != 2 * p {
            return Err(witness(
                tb,
                format!(
                    "image has area {} perimeter {}, wanted {} and {}",
                    asm.map.area(),
                    asm.map.perimeter(),
                    n,
                    2 * p
                ),
            ));
        }
        let dist = asm.map.graph_distances_from(DELTA);
        for (v, &d) in dist.iter().enumerate() {
            if d as i64 != asm.labels[v] {
                return Err(witness(
                    tb,
                    format!("vertex {v}: BFS distance {d}, label {}", asm.labels[v]),
                ));
            }
        }
        codes.insert(asm.map.canonical_from(asm.map.root, false));
    }
    assert_or(codes.len() == plus.len(), || {
        format!(
            "images collide: {} treed bridges, {} distinct rooted maps (n={n}, p={p})",
            plus.len(),
            codes.len()
        )
    })?;
    assert_or(all.len() == (n + p + 1) * plus.len(), || {
        format!(
            "pointing identity fails: |TB_{{{n},{p}}}| = {} ≠ ({n}+{p}+1)·{}",
            all.len(),
            plus.len()
        )
    })?;

    for tb in &all {
        let asm = phi_pointed(tb).map_err(|e| witness(tb, e.to_string()))?;
        let dist = asm.map.graph_distances_from(DELTA);
        for (v, &d) in dist.iter().enumerate() {
            if d as i64 != asm.labels[v] - asm.delta_label() {
                return Err(witness(
                    tb,
                    format!(
                        "pointed image vertex {v}: distance {d}, relative label {}",
                        asm.labels[v] - asm.delta_label()
                    ),
                ));
            }
        }
    }

    let gluing_count = if p == 1 && n <= 3 {
        let brute = quadrangulations_by_gluing(n);
        assert_or(brute == codes, || {
            format!(
                "gluing generation disagrees with the chord images: {} vs {} maps (n={n})",
                brute.len(),
                codes.len()
            )
        })?;
        Some(brute.len())
    } else {
        None
    };

    Ok(BijectionReport {
        n,
        p,
        positive_count: plus.len(),
        pointed_count: all.len(),
        distinct_images: codes.len(),
        gluing_count,
    })
}
