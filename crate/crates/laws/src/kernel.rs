//! One-step transition kernel of the half-planar boundary walk:
//! p(n, n−1) = n/(2(n+2)), p(n, n+1) = (n+4)/(2(n+2)); reversible w.r.t. c_poly.

use crate::{rat_int, Rational};

pub fn step_down(n: i64) -> Rational {
    assert!(n >= 0);
    rat_int(n) / rat_int(2 * (n + 2))
}

pub fn step_up(n: i64) -> Rational {
    assert!(n >= 0);
    rat_int(n + 4) / rat_int(2 * (n + 2))
}

pub fn step_down_f64(n: i64) -> f64 {
    n as f64 / (2.0 * (n + 2) as f64)
}

pub fn step_up_f64(n: i64) -> f64 {
    (n + 4) as f64 / (2.0 * (n + 2) as f64)
}

/// Probability that the walk from n ever reaches level m ≤ n:
/// (m+1)(m+2)(m+3) / ((n+1)(n+2)(n+3)).
pub fn hit_below_prob(n: i64, m: i64) -> Rational {
    assert!(0 <= m && m <= n);
    let prod = |x: i64| rat_int(x + 1) * rat_int(x + 2) * rat_int(x + 3);
    prod(m) / prod(n)
}

pub fn hit_below_prob_f64(n: i64, m: i64) -> f64 {
    assert!(0 <= m && m <= n);
    let (n, m) = (n as f64, m as f64);
    ((m + 1.0) / (n + 1.0)) * ((m + 2.0) / (n + 2.0)) * ((m + 3.0) / (n + 3.0))
}

/// Expected number of future visits to level y for the walk started at x
/// (Green's function; the chain is reversible w.r.t. C(j) and transient up).
pub fn green_f64(x: i64, y: i64) -> f64 {
    let at = 2.0 * (y + 2) as f64 / 3.0;
    if y >= x {
        at
    } else {
        hit_below_prob_f64(x, y) * at
    }
}

/// Exact-series upper bound on E_x[Σ over future down-steps of dip_prob(level, m)],
/// the chance that some tree strictly beyond a horizon at level x reaches ≤ m.
pub fn far_dip_expectation(x: i64, m: i64) -> f64 {
    // Σ_{y>m} G(x,y)·p(y,y−1)·dip(y,m), summed explicitly to Y₀ ≥ max(x, 50m);
    // beyond Y₀ each term is ≤ (y/3)·(4m/y³)·(1+3m/Y₀), so the tail is
    // ≤ (4m/3)(1+3m/Y₀)/Y₀.
    let y0 = x.max(50 * m).max(10_000);
    let mut s = 0.0;
    for y in (m + 1)..=y0 {
        s += green_f64(x, y) * step_down_f64(y) * crate::weights::dip_prob_f64(y, m);
    }
    let (y0, m) = (y0 as f64, m as f64);
    s + (4.0 * m / 3.0) * (1.0 + 3.0 * m / y0) / y0
}
