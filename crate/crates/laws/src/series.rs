//! Boundary-length series of the critical free Boltzmann quadrangulation:
//! W_c(z) = ((1−8z)^{3/2} − 1 + 12z)/(24z²), critical at z = 1/8 with
//! W_c(1/8) = 4/3; perimeter 2p has mass wc(p)·8^{−p}·(3/4).

use crate::{rat, rat_int, Rational};
use num_traits::{One, ToPrimitive};

/// wc(p) = [z^p] W_c(z); wc(0) = 1 and wc(p) = wc(p−1)·4(2p−1)/(p+2).
pub fn wc_coefficient(p: i64) -> Rational {
    assert!(p >= 0);
    let mut v = Rational::one();
    for q in 1..=p {
        v *= rat_int(4 * (2 * q - 1)) / rat_int(q + 2);
    }
    v
}

/// P(half-perimeter = p) for the critical free Boltzmann law.
pub fn perimeter_mass(p: i64) -> Rational {
    wc_coefficient(p) * rat(1, 8).pow(p as i32) * rat(3, 4)
}

/// Monotone mass table with rigorous tail bound: Σ_{q>P} mass(q) ≤
/// (2/3)·mass(P)·(P+3), from mass(q)/mass(P) ≤ ((P+3)/(q+3))^{5/2}.
pub struct PerimeterTable {
    pub cdf: Vec<f64>,
    mass_last: f64,
}

impl PerimeterTable {
    pub fn new(initial: usize) -> Self {
        let mut t = PerimeterTable { cdf: vec![], mass_last: 0.75 };
        t.extend_to(initial);
        t
    }

    pub fn extend_to(&mut self, p_max: usize) {
        if self.cdf.is_empty() {
            self.cdf.push(0.75);
            self.mass_last = 0.75;
        }
        while self.cdf.len() <= p_max {
            let q = self.cdf.len() as f64;
            self.mass_last *= (q - 0.5) / (q + 2.0);
            self.cdf.push(self.cdf.last().unwrap() + self.mass_last);
        }
    }

    pub fn tail_bound(&self) -> f64 {
        (2.0 / 3.0) * self.mass_last * (self.cdf.len() as f64 + 2.0)
    }

    /// Inverse-cdf draw; extends the table (doubling) until u is covered.
    pub fn sample(&mut self, u: f64) -> i64 {
        while u >= *self.cdf.last().unwrap() {
            let n = self.cdf.len();
            self.extend_to(2 * n);
            if self.cdf.len() > 1 << 28 {
                // beyond any feasible resolution; caller treats as censored
                return self.cdf.len() as i64;
            }
        }
        self.cdf.partition_point(|&c| c <= u) as i64
    }
}

pub fn perimeter_mass_f64(p: i64) -> f64 {
    perimeter_mass(p).to_f64().unwrap()
}
