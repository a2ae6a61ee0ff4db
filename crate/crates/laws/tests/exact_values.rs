//! Frozen exact values and algebraic identities for the walk kernel, tree
//! weights, admissible-weight series, and bridge DP, checked in exact
//! rational arithmetic wherever a closed form exists.

use laws::bridge_dp::{bridge_kernel, bridge_kernel_exact, forward_pmf, KernelTable};
use laws::kernel::{hit_below_prob, hit_below_prob_f64, step_down, step_down_f64, step_up};
use laws::series::{perimeter_mass, perimeter_mass_f64, wc_coefficient, PerimeterTable};
use laws::weights::{c_poly, dip_prob, dip_prob_f64, w, w_f64};
use laws::{rat, rat_int, Rational};

fn one() -> Rational {
    rat_int(1)
}

#[test]
fn step_kernel_pins() {
    assert_eq!(step_up(0), one());
    assert_eq!(step_down(0), rat_int(0));
    assert_eq!(step_down(1), rat(1, 6));
    assert_eq!(step_up(1), rat(5, 6));
    assert_eq!(step_up(2), rat(3, 4));
    assert_eq!(step_down(2), rat(1, 4));
    for n in 0..500 {
        assert_eq!(step_up(n) + step_down(n), one());
        assert!((step_down_f64(n) - rational_to_f64(&step_down(n))).abs() < 1e-15);
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

#[test]
fn tree_weight_pins() {
    assert_eq!(w(0), rat_int(0));
    assert_eq!(w(1), rat(4, 3));
    assert_eq!(w(2), rat(5, 3));
    assert_eq!(w(3), rat(9, 5));
    // w_n = 8 p(n, n−1) p(n−1, n) and w → 2 monotonically
    for n in 1..300 {
        assert_eq!(w(n), rat_int(8) * step_down(n) * step_up(n - 1));
        assert!(w(n) < w(n + 1));
        assert!(w(n) < rat_int(2) + rat(1, 1_000_000_000));
        assert!((w_f64(n) - rational_to_f64(&w(n))).abs() < 1e-15);
    }
}

#[test]
fn corner_polynomial_pins_and_recursion() {
    assert_eq!(c_poly(0), rat_int(1));
    assert_eq!(c_poly(1), rat_int(6));
    assert_eq!(c_poly(2), rat_int(20));
    // C(j) = p(j+1 → j) C(j+1) + p(j−1 → j) C(j−1)·1_{j≥1}: C is harmonic
    // for the kernel reversed through it
    for j in 0..200i64 {
        let mut rhs = step_down(j + 1) * c_poly(j + 1);
        if j >= 1 {
            rhs += step_up(j - 1) * c_poly(j - 1);
        }
        assert_eq!(c_poly(j), rhs, "harmonic recursion fails at {j}");
    }
    // telescopic reversibility: p(j → j−1) C(j) / C(j−1) = p(j−1 → j)
    for j in 1..200i64 {
        assert_eq!(step_down(j) * c_poly(j) / c_poly(j - 1), step_up(j - 1));
    }
}

#[test]
fn dip_probability_pins() {
    assert_eq!(dip_prob(2, 1), rat(1, 5));
    assert_eq!(dip_prob(1, 0), rat_int(0));
    // closed form ≡ 1 − w(x−m)/w(x)
    for x in 1..120i64 {
        for m in 0..x {
            let closed = dip_prob(x, m);
            let ratio = one() - w(x - m) / w(x);
            assert_eq!(closed, ratio, "dip mismatch at x={x} m={m}");
            assert!((dip_prob_f64(x, m) - rational_to_f64(&closed)).abs() < 1e-14);
        }
    }
    // far asymptotics ~ 4m/x³ within 1% at x = 10⁴
    let x = 10_000i64;
    for m in [1i64, 10, 65] {
        let exact = dip_prob_f64(x, m);
        let asym = 4.0 * m as f64 / (x as f64).powi(3);
        assert!((exact / asym - 1.0).abs() < 0.02, "m={m}: {exact} vs {asym}");
    }
}

#[test]
fn clean_tail_and_cut_point_pins() {
    use laws::weights::{clean_tail_prob, clean_tail_prob_f64, cut_point_prob};
    assert_eq!(cut_point_prob(0), rat_int(1));
    assert_eq!(cut_point_prob(1), rat(2, 3));
    assert_eq!(cut_point_prob(2), rat(5, 9));
    // telescoped product: at l = k the clean-tail event IS the cut-point event
    for k in 0..60i64 {
        assert_eq!(clean_tail_prob(k, k), cut_point_prob(k), "k={k}");
    }
    for l in [5i64, 17, 80] {
        assert_eq!(clean_tail_prob(l, 0), rat_int(1));
        // nested events: cleanliness to depth k+1 implies cleanliness to depth k
        for k in 1..=l {
            assert!(clean_tail_prob(l, k) < clean_tail_prob(l, k - 1), "l={l} k={k}");
            let f = clean_tail_prob_f64(l, k);
            assert!((f - rational_to_f64(&clean_tail_prob(l, k))).abs() < 1e-13);
        }
    }
    // deep tail limit: p_k → 1/3
    assert!((rational_to_f64(&cut_point_prob(10_000)) - 1.0 / 3.0).abs() < 1e-3);
}

#[test]
fn hit_below_pins() {
    assert_eq!(hit_below_prob(1, 0), rat(1, 4));
    assert_eq!(hit_below_prob(3, 1), rat(1, 5));
    // harmonicity: h(n) = p(n→n+1) h(n+1) + p(n→n−1) h(n−1) for n > m,
    // with h(m) = 1
    for m in 0..5i64 {
        assert_eq!(hit_below_prob(m, m), one());
        for n in (m + 1)..(m + 60) {
            let lhs = hit_below_prob(n, m);
            let rhs =
                step_up(n) * hit_below_prob(n + 1, m) + step_down(n) * hit_below_prob(n - 1, m);
            assert_eq!(lhs, rhs, "not harmonic at n={n} m={m}");
        }
    }
    assert!((hit_below_prob_f64(1, 0) - 0.25).abs() < 1e-15);
}

#[test]
fn admissible_series_pins() {
    assert_eq!(wc_coefficient(0), rat_int(1));
    assert_eq!(wc_coefficient(1), rat(4, 3));
    assert_eq!(wc_coefficient(2), rat_int(4));
    assert_eq!(perimeter_mass(0), rat(3, 4));
    assert_eq!(perimeter_mass(1), rat(1, 8));
    assert_eq!(perimeter_mass(2), rat(3, 64));
    // the masses are a probability with mean half-perimeter 1: partial sums
    // plus the rigorous tails straddle both targets
    let p_max = 1_000_000i64;
    let mut mass = 0.75f64;
    let (mut acc, mut mean) = (0.75f64, 0.0f64);
    for p in 1..=p_max {
        mass *= (p as f64 - 0.5) / (p as f64 + 2.0);
        acc += mass;
        mean += p as f64 * mass;
    }
    let pm = p_max as f64;
    let tail = (2.0 / 3.0) * mass * (pm + 3.0);
    assert!(acc < 1.0 && acc + tail > 1.0, "acc={acc} tail={tail}");
    let mean_tail = 2.0 * mass * (pm + 3.0) * (pm + 3.0);
    assert!(mean < 1.0 && mean + mean_tail > 1.0, "mean={mean} tail={mean_tail}");
    // mass ratio (q − ½)/(q + 2) and the 5/2-power tail comparison
    for q in 1..200i64 {
        let r = perimeter_mass(q) / perimeter_mass(q - 1);
        assert_eq!(r, (rat(2 * q - 1, 2)) / rat_int(q + 2));
    }
    let m50 = perimeter_mass_f64(50);
    for q in 51..400i64 {
        let bound = m50 * ((53.0) / (q as f64 + 3.0)).powf(2.5);
        assert!(perimeter_mass_f64(q) <= bound * (1.0 + 1e-12));
    }
}

#[test]
fn perimeter_table_matches_exact_masses() {
    let mut t = PerimeterTable::new(64);
    // inverse-cdf boundaries reproduce the exact masses
    let mut cum = 0.0;
    for p in 0..10i64 {
        let m = perimeter_mass_f64(p);
        assert_eq!(t.sample(cum + 0.5 * m), p);
        cum += m;
        assert_eq!(t.sample(cum - 1e-12), p);
    }
    t.extend_to(256);
    assert!(t.tail_bound() < 1e-3);
}

#[test]
fn bridge_kernel_pins() {
    // S^(2)(0,0) = p(0→1) p(1→0) = 1/6
    assert_eq!(bridge_kernel_exact(2, 0, 0), rat(1, 6));
    // S^(2p)(0,0) = 8^{−p} wc(p)
    for p in 1..=20usize {
        let exact = bridge_kernel_exact(2 * p, 0, 0);
        let closed = wc_coefficient(p as i64) / Rational::from_integer(8u64.pow(p as u32).into());
        assert_eq!(exact, closed, "return mass mismatch at p={p}");
        let f = bridge_kernel(2 * p, 0, 0);
        assert!((f - rational_to_f64(&exact)).abs() <= 1e-14 * f);
    }
    // deep rows stay on the closed form: S^(2p)(0,0) = 8^{−p} wc(p), which
    // decays only polynomially (≈ 1.128 p^{−5/2}), so no underflow
    let table = KernelTable::new(4000);
    let p = 1500usize;
    let val = table.s(2 * p, 0);
    let mut folded = 1.0f64; // wc(p)·8^{−p} via the ratio recurrence
    for q in 1..=p as i64 {
        folded *= (2.0 * q as f64 - 1.0) / (2.0 * (q as f64 + 2.0));
    }
    assert!((val / folded - 1.0).abs() < 1e-9, "{val} vs {folded}");
    let asym = 1.1283791670955126 * (p as f64).powf(-2.5);
    assert!((val / asym - 1.0).abs() < 0.01, "{val} vs asymptotic {asym}");
}

#[test]
fn forward_pmf_rows_are_distributions() {
    let rows = forward_pmf(0, &[1, 2, 10, 101]);
    for (k, row) in rows.iter().enumerate() {
        let sum: f64 = row.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12, "row {k} sums to {sum}");
    }
    // after one step from 0 the walk sits at 1
    assert!((rows[0][1] - 1.0).abs() < 1e-15);
    // two-step return to 0: p(1→0) = 1/6
    assert!((rows[1][0] - 1.0 / 6.0).abs() < 1e-15);
    // parity: after odd time 101, even sites are empty
    assert_eq!(rows[3][0], 0.0);
}

#[test]
fn kernel_table_agrees_with_exact_dp() {
    let t = KernelTable::new(64);
    for tau in 0..=24usize {
        for x in 0..=10i64 {
            let exact = rational_to_f64(&bridge_kernel_exact(tau, x, 0));
            let got = t.s(tau, x);
            assert!(
                (got - exact).abs() <= 1e-13 * exact.max(1e-300),
                "tau={tau} x={x}: {got} vs {exact}"
            );
        }
    }
}
