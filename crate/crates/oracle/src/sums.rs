//! Truncated partition sums with rigorous tails: Σ 12^{-|τ|} over all
//! labelled trees brackets 2, over positive trees rooted at k brackets w(k).
//! The tail uses the central binomial bound C(2n,n) < 4ⁿ/√(πn), so
//! Σ_{n>N} Cat(n)·3ⁿ·12⁻ⁿ ≤ (1/√π)·Σ_{n>N} n^{−3/2} ≤ 2/√(πN).

use laws::weights::w;
use laws::{rat_int, Rational};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::trees::{count_labelled_trees, LtKind};
use crate::{assert_or, OracleError};

#[derive(Clone, Debug, Serialize)]
pub struct SumRow {
    pub kind: String,
    pub root_label: i64,
    pub horizon: usize,
    pub partial: f64,
    pub tail_bound: f64,
    pub target: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumsReport {
    pub rows: Vec<SumRow>,
}

fn tail_bound(horizon: usize) -> f64 {
    2.0 / (std::f64::consts::PI * horizon as f64).sqrt()
}

/// Partial sums by horizon N = 0..=max for one family, exact rationals.
fn partials(kind: LtKind, max: usize) -> Vec<Rational> {
    let mut acc = Rational::zero();
    let mut out = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let count = count_labelled_trees(kind, n);
        let num = Rational::from_integer(num_bigint::BigInt::from(count));
        acc += num / rat_int(12).pow(n as i32);
        out.push(acc.clone());
    }
    out
}

pub fn verify_partition_sums() -> Result<SumsReport, OracleError> {
    const HORIZON: usize = 8;
    let families: Vec<(LtKind, &str, i64, Rational)> = vec![
        (LtKind::Any(0), "any", 0, rat_int(2)),
        (LtKind::Positive(1), "positive", 1, w(1)),
        (LtKind::Positive(2), "positive", 2, w(2)),
        (LtKind::Positive(3), "positive", 3, w(3)),
    ];

    let mut rows = Vec::new();
    for (kind, name, root, target) in families {
        let sums = partials(kind, HORIZON);
        // monotone approach from below
        for win in sums.windows(2) {
            assert_or(win[0] < win[1], || {
                format!("partial sums must strictly increase ({name} root {root})")
            })?;
        }
        for (n, partial) in sums.iter().enumerate() {
            assert_or(partial < &target, || {
                format!("partial sum at N={n} already exceeds the target ({name} root {root})")
            })?;
        }
        // at N = 0 only the trivial tree contributes
        assert_or(sums[0] == Rational::one(), || {
            format!("N=0 partial sum must be 1 ({name} root {root})")
        })?;
        // bracket: partial ≤ target ≤ partial + tail
        let gap = (&target - &sums[HORIZON]).to_f64().unwrap_or(f64::INFINITY);
        let tail = tail_bound(HORIZON);
        assert_or(gap <= tail, || {
            format!(
                "tail bound broken: target − partial = {gap:.6} > {tail:.6} ({name} root {root})"
            )
        })?;
        rows.push(SumRow {
            kind: name.to_string(),
            root_label: root,
            horizon: HORIZON,
            partial: sums[HORIZON].to_f64().unwrap(),
            tail_bound: tail,
            target: target.to_f64().unwrap(),
        });
    }
    Ok(SumsReport { rows })
}
