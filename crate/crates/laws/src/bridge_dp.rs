//! Endpoint-pinned kernels S^{(τ)}(x, 0) = P_x(X_τ = 0) for the boundary walk,
//! and exact sampling of finite bridges conditioned to return to 0.
//! S^{(2p)}(0,0) = 8^{−p}·wc(p) decays only polynomially, so plain f64 rows
//! are safe at every scale used here.

use crate::kernel::{step_down_f64, step_up_f64};
use crate::{rat_int, Rational};
use num_traits::Zero;
use rand::Rng;

/// Persistent triangular table rows[τ][x] = S^{(τ)}(x,0), τ ≤ t_max.
pub struct KernelTable {
    pub t_max: usize,
    rows: Vec<Vec<f64>>,
}

fn step_row(prev: &[f64], tau: usize) -> Vec<f64> {
    // prev = row τ−1 (support x ≤ τ−1); returns row τ.
    let mut row = vec![0.0; tau + 1];
    for (x, r) in row.iter_mut().enumerate() {
        let up = if x + 1 < tau { step_up_f64(x as i64) * prev[x + 1] } else { 0.0 };
        let down = if x >= 1 { step_down_f64(x as i64) * prev[x - 1] } else { 0.0 };
        *r = up + down;
    }
    row
}

impl KernelTable {
    pub fn new(t_max: usize) -> Self {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(t_max + 1);
        rows.push(vec![1.0]);
        for tau in 1..=t_max {
            let r = step_row(&rows[tau - 1], tau);
            rows.push(r);
        }
        KernelTable { t_max, rows }
    }

    pub fn s(&self, tau: usize, x: i64) -> f64 {
        if x < 0 || x as usize > tau {
            return 0.0;
        }
        self.rows[tau][x as usize]
    }

    /// Conditioned step: from x with τ steps to go, probability the next step
    /// is up, given X hits 0 at the end. Uses only row τ−1.
    fn p_up_given(prev_row: &[f64], tau_minus_1: usize, x: i64) -> f64 {
        let at = |y: i64| -> f64 {
            if y < 0 || y as usize > tau_minus_1 {
                0.0
            } else {
                prev_row[y as usize]
            }
        };
        let up = step_up_f64(x) * at(x + 1);
        let down = step_down_f64(x) * at(x - 1);
        debug_assert!(up + down > 0.0, "stranded at x={x}, τ={}", tau_minus_1 + 1);
        up / (up + down)
    }

    /// Exact sample of (x₀..x_{2p−1}) under the h-transformed boundary walk
    /// pinned to return to 0 at time 2p. x₀ = 0.
    pub fn sample_conditioned_bridge<R: Rng>(&self, p: usize, rng: &mut R) -> Vec<i64> {
        assert!(p >= 1);
        let steps = 2 * p;
        if steps <= self.t_max {
            let mut x = 0i64;
            let mut out = Vec::with_capacity(steps);
            for t in 0..steps {
                out.push(x);
                let tau = steps - t;
                let pu = Self::p_up_given(&self.rows[tau - 1], tau - 1, x);
                x += if rng.random::<f64>() < pu { 1 } else { -1 };
            }
            debug_assert_eq!(x, 0);
            return out;
        }
        if steps <= 4096 {
            // transient full table for rare mid-size perimeters
            let mut rows: Vec<Vec<f64>> = Vec::with_capacity(steps);
            rows.push(vec![1.0]);
            for tau in 1..steps {
                let r = step_row(&rows[tau - 1], tau);
                rows.push(r);
            }
            let mut x = 0i64;
            let mut out = Vec::with_capacity(steps);
            for t in 0..steps {
                out.push(x);
                let tau = steps - t;
                let pu = Self::p_up_given(&rows[tau - 1], tau - 1, x);
                x += if rng.random::<f64>() < pu { 1 } else { -1 };
            }
            debug_assert_eq!(x, 0);
            return out;
        }
        self.sample_conditioned_bridge_checkpointed(p, rng)
    }

    /// Two-level recompute for very rare huge perimeters: checkpoints every C
    /// rows above t_max, blocks of K rows rebuilt from the checkpoint below.
    fn sample_conditioned_bridge_checkpointed<R: Rng>(&self, p: usize, rng: &mut R) -> Vec<i64> {
        const C: usize = 512;
        const K: usize = 256;
        let steps = 2 * p;
        let mut checkpoints: Vec<(usize, Vec<f64>)> = vec![];
        {
            let mut tau = self.t_max;
            let mut row = self.rows[self.t_max].clone();
            while tau < steps - 1 {
                let next_cp = (tau + C).min(steps - 1);
                for t in tau + 1..=next_cp {
                    row = step_row(&row, t);
                }
                tau = next_cp;
                checkpoints.push((tau, row.clone()));
            }
        }
        // block covers [base, base+len) rows; rebuilt as τ descends
        let mut block_base = usize::MAX;
        let mut block: Vec<Vec<f64>> = vec![];
        let fetch = |tau: usize, block_base: &mut usize, block: &mut Vec<Vec<f64>>| {
            if tau <= self.t_max {
                return self.rows[tau].clone();
            }
            if *block_base != usize::MAX && tau >= *block_base && tau < *block_base + block.len() {
                return block[tau - *block_base].clone();
            }
            let base = tau.saturating_sub(K - 1);
            let idx = checkpoints.partition_point(|(t, _)| *t < base);
            let (cp_tau, cp_row) = if idx == 0 {
                (self.t_max, self.rows[self.t_max].clone())
            } else {
                checkpoints[idx - 1].clone()
            };
            let mut row = cp_row;
            let mut t = cp_tau;
            let mut blk: Vec<Vec<f64>> = vec![];
            while t < tau {
                t += 1;
                row = step_row(&row, t);
                if t >= base {
                    blk.push(row.clone());
                }
            }
            *block_base = base.max(cp_tau + 1);
            *block = blk;
            block[tau - *block_base].clone()
        };
        let mut x = 0i64;
        let mut out = Vec::with_capacity(steps);
        for t in 0..steps {
            out.push(x);
            let tau = steps - t;
            let prev = fetch(tau - 1, &mut block_base, &mut block);
            let pu = Self::p_up_given(&prev, tau - 1, x);
            x += if rng.random::<f64>() < pu { 1 } else { -1 };
        }
        debug_assert_eq!(x, 0);
        out
    }
}

/// Forward pmf of the boundary walk from level `from`; returns the pmf after
/// each time in `snapshots` (ascending). Vector index = level.
pub fn forward_pmf(from: i64, snapshots: &[usize]) -> Vec<Vec<f64>> {
    let t_end = *snapshots.last().unwrap();
    let width = t_end + from as usize + 1;
    let mut pmf = vec![0.0f64; width + 1];
    pmf[from as usize] = 1.0;
    let mut out = vec![];
    let mut next = vec![0.0f64; width + 1];
    for t in 0..=t_end {
        if snapshots.contains(&t) {
            out.push(pmf.clone());
        }
        if t == t_end {
            break;
        }
        for n in next.iter_mut() {
            *n = 0.0;
        }
        let hi = (from as usize + t + 1).min(width);
        for x in 0..=hi {
            let m = pmf[x];
            if m == 0.0 {
                continue;
            }
            next[x + 1] += m * step_up_f64(x as i64);
            if x >= 1 {
                next[x - 1] += m * step_down_f64(x as i64);
            }
        }
        std::mem::swap(&mut pmf, &mut next);
    }
    out
}

/// S^{(τ)}(i, j) in f64 via forward evolution.
pub fn bridge_kernel(tau: usize, i: i64, j: i64) -> f64 {
    let pmf = forward_pmf(i, &[tau]);
    pmf[0].get(j as usize).copied().unwrap_or(0.0)
}

/// Exact S^{(τ)}(i, j) as a rational, for desk-scale τ.
pub fn bridge_kernel_exact(tau: usize, i: i64, j: i64) -> Rational {
    let width = tau + i as usize + 2;
    let mut pmf = vec![Rational::zero(); width];
    pmf[i as usize] = rat_int(1);
    for _ in 0..tau {
        let mut next = vec![Rational::zero(); width];
        for x in 0..width - 1 {
            if pmf[x].is_zero() {
                continue;
            }
            let xi = x as i64;
            next[x + 1] += &pmf[x] * crate::kernel::step_up(xi);
            if x >= 1 {
                next[x - 1] += &pmf[x] * crate::kernel::step_down(xi);
            }
        }
        pmf = next;
    }
    pmf[j as usize].clone()
}

/// P(window pattern) for the cyclic bridge B_p: right path (x₁..x_a) read
/// forward from 0 and left path (x_{−1}..x_{−b}) read outward from 0, with the
/// pinned middle S^{(2p−a−b)}(x_a, x_{−b}); denominator S^{(2p)}(0,0).
pub fn finite_window_pattern_prob(p: usize, right: &[i64], left: &[i64]) -> f64 {
    let a = right.len();
    let b = left.len();
    assert!(2 * p > a + b);
    let mut num = 1.0f64;
    let mut prev = 0i64;
    for &x in right {
        num *= if x == prev + 1 { step_up_f64(prev) } else { step_down_f64(prev) };
        prev = x;
    }
    let right_end = prev;
    prev = 0;
    for &x in left {
        num *= if x == prev + 1 { step_up_f64(prev) } else { step_down_f64(prev) };
        prev = x;
    }
    let left_end = prev;
    num *= bridge_kernel(2 * p - a - b, right_end, left_end);
    num / bridge_kernel(2 * p, 0, 0)
}

/// The p → ∞ limit of the same window pattern: two independent boundary walks.
pub fn limit_window_pattern_prob(right: &[i64], left: &[i64]) -> f64 {
    let mut num = 1.0f64;
    for path in [right, left] {
        let mut prev = 0i64;
        for &x in path {
            num *= if x == prev + 1 { step_up_f64(prev) } else { step_down_f64(prev) };
            prev = x;
        }
    }
    num
}
