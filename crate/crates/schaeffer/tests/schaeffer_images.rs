use std::collections::BTreeMap;

use laws::stream::rng_for;
use planar_core::{Bridge, LabelledTree, Quadrangulation};
use schaeffer::{
    assemble_positive_window, phi_infinite_positive_window, phi_pointed, phi_positive,
    phi_unconstrained_window, sample_ball_volumes, sample_uihpq_ball, Assembly, BallConfig,
    SchaefferError, SuccTarget, DELTA,
};
use treed_bridge::{sample::sample_b_inf_window, sample::sample_b_p, Kind, TreedBridge};

const SEED: u64 = 0x5c4a_effe;

fn labelled(root: i64, build: impl FnOnce(&mut LabelledTree)) -> LabelledTree {
    let mut t = LabelledTree::singleton(root);
    build(&mut t);
    t
}

/// Chords drawn inside the contour must nest like parentheses: two arcs with
/// distinct endpoints either avoid each other's forward cyclic span or one
/// contains the other.
fn assert_chords_non_crossing(asm: &Assembly) {
    let arcs: Vec<(usize, usize)> = asm
        .succ
        .succ
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            SuccTarget::Corner(t) => Some((i, *t)),
            _ => None,
        })
        .collect();
    if arcs.len() > 2000 {
        return; // quadratic check reserved for desk-scale images
    }
    let inside = |a: usize, b: usize, x: usize| if a < b { a < x && x < b } else { x > a || x < b };
    for (k, &(a, b)) in arcs.iter().enumerate() {
        for &(c, d) in &arcs[k + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            assert_eq!(
                inside(a, b, c),
                inside(a, b, d),
                "chords ({a},{b}) and ({c},{d}) cross"
            );
        }
    }
}

fn cyclic_matches(seq: &[i64], word: &[i64]) -> bool {
    let n = word.len();
    if seq.len() != n {
        return false;
    }
    let rev: Vec<i64> = word.iter().rev().copied().collect();
    for cand in [word.to_vec(), rev] {
        if (0..n).any(|k| (0..n).all(|i| seq[i] == cand[(i + k) % n])) {
            return true;
        }
    }
    false
}

fn boundary_labels(asm: &Assembly) -> Vec<i64> {
    let outer = asm.map.face_orbit(asm.map.twin(asm.map.root));
    outer.iter().map(|&d| asm.labels[asm.map.origin(d) as usize]).collect()
}

fn assert_finite_image_identities(asm: &Assembly, tb: &TreedBridge) {
    let bridge = match &tb.bridge {
        Bridge::Finite { labels } => labels.clone(),
        _ => unreachable!(),
    };
    let size: usize = tb.trees.values().map(|t| t.size()).sum();
    assert_eq!(asm.map.area(), size, "area = total tree size");
    assert_eq!(asm.map.perimeter(), bridge.len(), "perimeter = bridge length");
    assert_eq!(asm.labels.len(), size + bridge.len() / 2 + 1, "V = n + p + 1");
    assert_eq!(asm.map.edge_count(), 2 * size + bridge.len() / 2, "E = 2n + p");
    let dist = asm.map.graph_distances_from(DELTA);
    for (v, &d) in dist.iter().enumerate() {
        assert_eq!(d as i64, asm.labels[v] - asm.delta_label(), "d(·, δ) = relative label");
    }
    assert!(cyclic_matches(&boundary_labels(asm), &bridge), "boundary word reads the bridge");
    assert_eq!(
        asm.labels[asm.map.origin(asm.map.root) as usize],
        bridge[0],
        "root edge leaves the position-0 boundary vertex"
    );
    assert_eq!(
        asm.labels[asm.map.head(asm.map.root) as usize],
        bridge[1],
        "root edge enters the position-1 boundary vertex"
    );
    assert_chords_non_crossing(asm);
}

#[test]
fn one_edge_maps_from_smallest_bridges() {
    // positive: bridge (0, 1), singleton tree labelled 1 at the down-step
    let mut trees = BTreeMap::new();
    trees.insert(1, LabelledTree::singleton(1));
    let tb = TreedBridge::new(
        Bridge::Finite { labels: vec![0, 1] },
        trees,
        Kind::Positive,
    )
    .unwrap();
    let asm = phi_positive(&tb).unwrap();
    assert_eq!(asm.labels, vec![0, 1]);
    assert_eq!(asm.map.edge_count(), 1);
    assert_eq!(asm.map.area(), 0);
    assert_eq!(asm.map.perimeter(), 2);
    assert_eq!(asm.root_vertex, DELTA);

    // unconstrained mirror: down-step at 0, pointing label one below the tree
    let mut trees = BTreeMap::new();
    trees.insert(0, LabelledTree::singleton(0));
    let tb = TreedBridge::new(
        Bridge::Finite { labels: vec![0, -1] },
        trees,
        Kind::Unconstrained,
    )
    .unwrap();
    let asm = phi_pointed(&tb).unwrap();
    assert_eq!(asm.delta_label(), -1);
    assert_eq!(asm.map.edge_count(), 1);
    assert_ne!(asm.root_vertex, DELTA, "root edge leaves the real position-0 vertex");
    assert_eq!(asm.labels[asm.root_vertex as usize], 0);
}

fn nineteen_edge_fixture() -> TreedBridge {
    let bridge = vec![0, 1, 2, 1, 0, 1, 2, 3, 2, 3, 2, 3, 2, 1];
    let mut trees = BTreeMap::new();
    trees.insert(2, labelled(2, |t| {
        t.add_child(0, 2);
    }));
    trees.insert(3, LabelledTree::singleton(1));
    trees.insert(7, labelled(3, |t| {
        let c = t.add_child(0, 2);
        t.add_child(c, 3);
    }));
    trees.insert(9, LabelledTree::singleton(3));
    trees.insert(11, labelled(3, |t| {
        let c = t.add_child(0, 2);
        t.add_child(c, 1);
        t.add_child(c, 3);
    }));
    trees.insert(12, LabelledTree::singleton(2));
    trees.insert(13, LabelledTree::singleton(1));
    TreedBridge::new(Bridge::Finite { labels: bridge }, trees, Kind::Unconstrained).unwrap()
}

#[test]
fn hand_fixture_nineteen_edges() {
    let tb = nineteen_edge_fixture();
    let asm = phi_pointed(&tb).unwrap();
    assert_eq!(asm.delta_label(), 0, "smallest tree label is 1");
    assert_eq!(asm.labels.len(), 14);
    assert_eq!(asm.map.edge_count(), 19);
    assert_eq!(asm.map.area(), 6);
    assert_eq!(asm.map.perimeter(), 14);
    assert_finite_image_identities(&asm, &tb);
    // δ collects one edge per minimum-label corner: the two singleton
    // label-1 roots and the label-1 leaf inside the tree at position 11
    let delta_degree = asm.map.rotations()[DELTA as usize].len();
    assert_eq!(delta_degree, 3);
    // determinism: rebuilding gives the identical rooted map
    let again = phi_pointed(&nineteen_edge_fixture()).unwrap();
    assert_eq!(
        asm.map.canonical_from(asm.map.root, false),
        again.map.canonical_from(again.map.root, false)
    );
}

#[test]
fn sampled_positive_images_satisfy_all_identities() {
    let mut censored = 0;
    let mut checked = 0;
    for (i, p) in [1usize, 2, 3, 5, 8].into_iter().enumerate() {
        for rep in 0..40 {
            let mut rng = rng_for(SEED, "phi-bp", (i * 100 + rep) as u64);
            let tb = match sample_b_p(p, &mut rng, Some(50_000)) {
                Ok(tb) => tb,
                Err(_) => {
                    censored += 1;
                    continue;
                }
            };
            let asm = phi_positive(&tb).unwrap();
            assert_eq!(asm.root_vertex, DELTA);
            assert_finite_image_identities(&asm, &tb);
            checked += 1;
        }
    }
    assert!(checked >= 150, "only {checked} uncensored samples ({censored} censored)");
}

/// Presenting a finite bridge as a window (closing label appended, origin 0)
/// must reproduce the pointed image exactly: the window wrap rule — leftmost
/// candidate when no later corner qualifies — is the cyclic scan in disguise.
#[test]
fn finite_as_window_matches_pointed_image() {
    let as_window = |tb: &TreedBridge| {
        let labels = match &tb.bridge {
            Bridge::Finite { labels } => {
                let mut l = labels.clone();
                l.push(labels[0]);
                l
            }
            _ => unreachable!(),
        };
        TreedBridge::new(
            Bridge::Window { labels, origin: 0 },
            tb.trees.clone(),
            Kind::Unconstrained,
        )
        .unwrap()
    };

    let fixture = nineteen_edge_fixture();
    let mut inputs = vec![fixture];
    for rep in 0..10 {
        let mut rng = rng_for(SEED, "finite-window", rep);
        if let Ok(tb) = sample_b_p(3, &mut rng, Some(50_000)) {
            let relaxed =
                TreedBridge::new(tb.bridge.clone(), tb.trees.clone(), Kind::Unconstrained)
                    .unwrap();
            inputs.push(relaxed);
        }
    }
    for tb in inputs {
        let pointed = phi_pointed(&tb).unwrap();
        let windowed = phi_unconstrained_window(&as_window(&tb)).unwrap();
        assert_eq!(windowed.assembly.labels, pointed.labels);
        assert_eq!(
            windowed.assembly.map.canonical_from(windowed.assembly.map.root, false),
            pointed.map.canonical_from(pointed.map.root, false),
            "window image must coincide with the pointed image"
        );
    }
}

#[test]
fn staircase_window_links_each_corner_to_the_next() {
    let l = 7i64;
    let labels: Vec<i64> = (0..=l).map(|i| -i).collect();
    let mut trees = BTreeMap::new();
    for i in 0..l {
        trees.insert(i, LabelledTree::singleton(-i));
    }
    let tb = TreedBridge::new(
        Bridge::Window { labels, origin: 0 },
        trees,
        Kind::Unconstrained,
    )
    .unwrap();
    let img = phi_unconstrained_window(&tb).unwrap();
    let succ = &img.assembly.succ;
    for i in 0..(l - 1) as usize {
        assert_eq!(succ.succ[i], SuccTarget::Corner(i + 1), "corner {i} chains down");
        assert!(!succ.wrapped[i]);
    }
    assert_eq!(succ.succ[(l - 1) as usize], SuccTarget::Delta);
    // every label occurs once, so nothing is shielded and nothing is trusted
    assert_eq!(img.trusted_radius, 0);
    assert!(img.trusted_vertex.iter().all(|&t| !t));
}

/// A label-1 vertex arbitrarily far away still collects the chords of the
/// nearer low corners: the wrap must link to it rather than drop the edge.
#[test]
fn discontinuity_guard_wraps_to_faraway_low_corner() {
    let labels = vec![4, 3, 2, 1, 0, 1, 2, 3, 2, 3];
    let mut trees = BTreeMap::new();
    trees.insert(-4, LabelledTree::singleton(4));
    trees.insert(-3, LabelledTree::singleton(3));
    trees.insert(-2, LabelledTree::singleton(2));
    trees.insert(-1, LabelledTree::singleton(1));
    trees.insert(3, labelled(3, |t| {
        t.add_child(0, 2);
    }));
    let tb = TreedBridge::new(
        Bridge::Window { labels, origin: 4 },
        trees,
        Kind::Positive,
    )
    .unwrap();

    let asm = assemble_positive_window(&tb, 2).unwrap();
    // corners with label ≤ 2, contour order: root 2 at −2, root 1 at −1,
    // then the child labelled 2 inside the tree at position 3
    assert_eq!(asm.corners.len(), 3);
    let far = 2;
    assert_eq!(asm.corners[far].pos, 3);
    assert_eq!(asm.corners[far].label, 2);
    assert_eq!(asm.succ.succ[far], SuccTarget::Corner(1), "wraps to the leftmost label-1 corner");
    assert!(asm.succ.wrapped[far], "the wrap is flagged, not silent");

    let ball1 = phi_infinite_positive_window(&tb, 1).unwrap();
    assert_eq!(ball1.map.vertices, 2, "δ and the single label-1 vertex");
    assert_eq!(ball1.map.edge_count(), 1);
    let ball2 = phi_infinite_positive_window(&tb, 2).unwrap();
    assert_eq!(ball2.map.vertices, 4, "δ, labels 1 and 2 on the left, far label-2 child");
    let dist = ball2.map.graph_distances_from(DELTA);
    assert_eq!(dist.iter().filter(|&&d| d == 2).count(), 2, "both label-2 vertices enter at distance 2");
}

#[test]
fn radius_zero_ball_is_the_root_vertex_with_zero_risk() {
    let mut rng = rng_for(SEED, "ball-r0", 0);
    let ball = sample_uihpq_ball(0, &BallConfig::default(), &mut rng).unwrap();
    assert_eq!(ball.ball.map.vertices, 1);
    assert_eq!(ball.ball.map.edge_count(), 0);
    assert_eq!(ball.ball.residual_risk, 0.0);
    assert!(ball.certified);
    assert_eq!(ball.low_vertex_count, 1);
}

#[test]
fn ball_sampler_counts_match_bfs_and_certificate_is_exact() {
    let cfg = BallConfig { epsilon: 0.2, max_extent: 5_000_000 };
    for (rep, r) in [(0u64, 1u32), (1, 2), (2, 4), (3, 8), (4, 8)] {
        let mut rng = rng_for(SEED, "ball-bfs", rep);
        let ball = sample_uihpq_ball(r, &cfg, &mut rng).unwrap();
        assert_eq!(
            ball.ball.map.vertices as u64, ball.low_vertex_count,
            "BFS ball vertex count must equal the label-≤-r count (r = {r})"
        );
        let (ls, rs) = ball.frontier_labels;
        let m = r as i64 + 1;
        let expect = laws::kernel::hit_below_prob_f64(ls, m)
            + laws::kernel::far_dip_expectation(ls, m)
            + laws::kernel::hit_below_prob_f64(rs, m)
            + laws::kernel::far_dip_expectation(rs, m);
        assert!((ball.residual_risk() - expect).abs() < 1e-12, "risk is the frontier formula");
        assert_eq!(ball.certified, ball.residual_risk() <= cfg.epsilon);
        assert!(ls > m && rs > m, "stopping only above the threshold");
        // labels are distances: every vertex of the r-ball lies within r
        let dist = ball.ball.map.graph_distances_from(DELTA);
        assert!(dist.iter().all(|&d| d <= r));
    }
}

#[test]
fn same_seed_reproduces_ball_and_volume_counts() {
    let cfg = BallConfig { epsilon: 0.3, max_extent: 5_000_000 };
    let mut a = rng_for(SEED, "ball-repro", 7);
    let mut b = rng_for(SEED, "ball-repro", 7);
    let ball1 = sample_uihpq_ball(4, &cfg, &mut a).unwrap();
    let ball2 = sample_uihpq_ball(4, &cfg, &mut b).unwrap();
    assert_eq!(ball1.window_used, ball2.window_used);
    assert_eq!(ball1.ball.map.canonical_form(), ball2.ball.map.canonical_form());
    let mut c = rng_for(SEED, "ball-repro", 8);
    let ball3 = sample_uihpq_ball(4, &cfg, &mut c).unwrap();
    assert_ne!(
        ball1.ball.map.canonical_form(),
        ball3.ball.map.canonical_form(),
        "different replicas differ"
    );

    // the volume fast path shares the stream layout: same master seed, same
    // threshold, so the radius-4 count equals the ball's vertex count
    let mut d = rng_for(SEED, "ball-repro", 7);
    let vol = sample_ball_volumes(&[0, 1, 2, 4], &cfg, &mut d).unwrap();
    assert_eq!(vol.counts[3], ball1.low_vertex_count);
    assert_eq!(vol.counts[0], 1);
    for (i, &r) in vol.radii.iter().enumerate() {
        let (sub, _) = ball1.ball.map.ball_from(DELTA, r);
        assert_eq!(
            sub.vertices as u64, vol.counts[i],
            "nested BFS ball at radius {r} matches the label count"
        );
    }
    for w in vol.risks.windows(2) {
        assert!(w[0] <= w[1], "risk grows with the certified radius");
    }
}

#[test]
fn window_image_delta_degree_counts_label_one_corners() {
    for rep in 0..5 {
        let mut rng = rng_for(SEED, "delta-deg", rep);
        let tb = sample_b_inf_window(400, 400, &mut rng, Some(200_000)).unwrap();
        let asm = assemble_positive_window(&tb, 2).unwrap();
        let ones = asm.corners.iter().filter(|c| c.label == 1).count();
        assert_eq!(asm.map.rotations()[DELTA as usize].len(), ones);
        let (ball1, center) = asm.map.ball_from(DELTA, 1);
        assert_eq!(center, DELTA);
        assert_eq!(ball1.edge_count(), ones, "the radius-1 ball is δ's star");
        let distinct: std::collections::BTreeSet<u32> = asm
            .corners
            .iter()
            .enumerate()
            .filter(|(_, c)| c.label == 1)
            .map(|(i, _)| asm.vertex_of_corner[i])
            .collect();
        assert_eq!(ball1.vertices as usize, distinct.len() + 1);
    }
}

#[test]
fn too_small_windows_are_rejected_not_truncated() {
    // the window holds label-3 corners but no label-2 corner anywhere: they
    // cannot resolve and the certified construction must refuse, not guess
    let labels = vec![1, 0, 1, 2, 3, 2, 3];
    let mut trees = BTreeMap::new();
    trees.insert(-1, LabelledTree::singleton(1));
    trees.insert(3, labelled(3, |t| {
        t.add_child(0, 3);
    }));
    let tb = TreedBridge::new(
        Bridge::Window { labels, origin: 1 },
        trees,
        Kind::Positive,
    )
    .unwrap();
    // threshold 3 keeps the two label-3 corners; no label-2 corner exists
    // anywhere in the window, so they are unresolved
    match assemble_positive_window(&tb, 3) {
        Err(SchaefferError::Unresolved(_)) => {}
        other => panic!("expected an unresolved-successor error, got {other:?}"),
    }
    // threshold 1 needs only label-1 corners and succeeds
    let asm = assemble_positive_window(&tb, 1).unwrap();
    assert_eq!(asm.corners.len(), 1);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn positive_images_always_validate(seed in any::<u64>(), p in 1usize..7) {
            let mut rng = rng_for(seed, "phi-prop", 0);
            if let Ok(tb) = sample_b_p(p, &mut rng, Some(20_000)) {
                let asm = phi_positive(&tb).unwrap();
                assert_finite_image_identities(&asm, &tb);
            }
        }

        #[test]
        fn ball_sampler_never_breaks_structure(seed in any::<u64>(), r in 1u32..6) {
            let cfg = BallConfig { epsilon: 0.4, max_extent: 2_000_000 };
            let mut rng = rng_for(seed, "ball-prop", 1);
            let ball = sample_uihpq_ball(r, &cfg, &mut rng).unwrap();
            prop_assert_eq!(ball.ball.map.vertices as u64, ball.low_vertex_count);
            let dist = ball.ball.map.graph_distances_from(DELTA);
            prop_assert!(dist.iter().all(|&d| d <= r));
        }
    }
}

// Quadrangulation is used through the assembly in every test; keep a direct
// smoke check that the canonical forms exposed there behave as map values.
#[test]
fn images_compare_as_maps() {
    let tb = nineteen_edge_fixture();
    let a = phi_pointed(&tb).unwrap();
    let b: Quadrangulation = a.map.clone();
    assert_eq!(a.map.canonical_form(), b.canonical_form());
}
