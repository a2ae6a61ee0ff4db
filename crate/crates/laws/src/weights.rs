//! Positive-tree partition weights w(k) = Σ over positive trees rooted at k of
//! 12^{-size}, the harmonic polynomial C(j), and tree dip probabilities.

use crate::{rat_int, Rational};
use num_traits::One;

/// w(k) = 2k(k+3)/((k+1)(k+2)); w(0) = 0, w(∞) = 2.
pub fn w(k: i64) -> Rational {
    assert!(k >= 0);
    rat_int(2 * k) * rat_int(k + 3) / (rat_int(k + 1) * rat_int(k + 2))
}

pub fn w_f64(k: i64) -> f64 {
    let k = k as f64;
    2.0 * k * (k + 3.0) / ((k + 1.0) * (k + 2.0))
}

/// C(j) = (j+1)(j+2)²(j+3)/12; harmonic for the boundary walk and its
/// reversing measure.
pub fn c_poly(j: i64) -> Rational {
    assert!(j >= 0);
    rat_int(j + 1) * rat_int(j + 2) * rat_int(j + 2) * rat_int(j + 3) / rat_int(12)
}

/// P(a ρ⁺ tree rooted at x contains a vertex labelled ≤ m) = 1 − w(x−m)/w(x),
/// for 0 ≤ m < x.
pub fn dip_prob(x: i64, m: i64) -> Rational {
    assert!(0 <= m && m < x);
    Rational::one() - w(x - m) / w(x)
}

pub fn dip_prob_f64(x: i64, m: i64) -> f64 {
    assert!(0 <= m && m < x);
    // 2m(2x−m+3) / ((x−m+1)(x−m+2)x(x+3)), the expanded form; stable for huge x.
    let (x, m) = (x as f64, m as f64);
    2.0 * m * (2.0 * x - m + 3.0) / ((x - m + 1.0) * (x - m + 2.0) * x * (x + 3.0))
}

/// P(a critical bridge conditioned nonnegative carries no tree dipping to ≤ k
/// anywhere left of −l) = 2^{-k} Π_{j=l-k+1}^{l} w(j), for 0 ≤ k ≤ l.  The
/// product telescopes; at l = k it reduces to the cut-point probability.
pub fn clean_tail_prob(l: i64, k: i64) -> Rational {
    assert!(0 <= k && k <= l);
    let mut p = Rational::one() / rat_int(2).pow(k as i32);
    for j in (l - k + 1)..=l {
        p *= w(j);
    }
    p
}

pub fn clean_tail_prob_f64(l: i64, k: i64) -> f64 {
    assert!(0 <= k && k <= l);
    let mut p = 0.5f64.powi(k as i32);
    for j in (l - k + 1)..=l {
        p *= w_f64(j);
    }
    p
}

/// P(the left and right boundary rays of the half-plane map meet at distance
/// k) = (k+3)/(3(k+1)).
pub fn cut_point_prob(k: i64) -> Rational {
    assert!(k >= 0);
    rat_int(k + 3) / (rat_int(3) * rat_int(k + 1))
}

/// Four-bullet child thresholds at label l: cumulative probabilities of
/// (child l−1, child l, child l+1); the remainder 1/w(l) stops production.
pub fn child_thresholds(l: i64) -> [f64; 3] {
    debug_assert!(l >= 1);
    let a = w_f64(l - 1) / 12.0;
    let b = a + w_f64(l) / 12.0;
    let c = b + w_f64(l + 1) / 12.0;
    [a, b, c]
}
