use std::collections::BTreeSet;

use num_bigint::BigUint;
use oracle::trees::{
    catalan, count_positive_closed, shapes_by_dyck_decoding, shapes_by_root_degree,
};
use oracle::{
    count_labelled_trees, enumerate_labelled_trees, enumerate_treed_bridges,
    quadrangulations_by_gluing, verify_bijection, verify_partition_sums, LtKind, OracleError,
};
use treed_bridge::Kind;

#[test]
fn tree_generators_agree_and_are_duplicate_free() {
    for n in 0..=8 {
        let a: Vec<Vec<bool>> = {
            let mut v: Vec<_> = shapes_by_root_degree(n).iter().map(|s| s.dyck()).collect();
            v.sort();
            v
        };
        let b: Vec<Vec<bool>> = {
            let mut v: Vec<_> = shapes_by_dyck_decoding(n).iter().map(|s| s.dyck()).collect();
            v.sort();
            v
        };
        assert_eq!(a, b, "generators disagree at n={n}");
        let distinct: BTreeSet<&Vec<bool>> = a.iter().collect();
        assert_eq!(distinct.len(), a.len(), "duplicates at n={n}");
        assert_eq!(BigUint::from(a.len()), catalan(n), "shape count at n={n}");
    }
}

#[test]
fn labelled_tree_counts_match_catalan_form() {
    // 1 trivial tree, then Cat(n)·3^n
    assert_eq!(enumerate_labelled_trees(LtKind::Any(0), 0).unwrap().len(), 1);
    assert_eq!(enumerate_labelled_trees(LtKind::Any(0), 1).unwrap().len(), 3);
    for n in 0..=5 {
        let listed = enumerate_labelled_trees(LtKind::Any(0), n).unwrap().len();
        assert_eq!(BigUint::from(listed), count_labelled_trees(LtKind::Any(0), n));
        // root label is irrelevant to the unconstrained count
        let shifted = enumerate_labelled_trees(LtKind::Any(7), n).unwrap().len();
        assert_eq!(listed, shifted);
    }
    assert!(matches!(
        enumerate_labelled_trees(LtKind::Any(0), 9),
        Err(OracleError::Bound(_))
    ));
}

#[test]
fn positive_trees_with_one_edge_are_exactly_two() {
    let trees = enumerate_labelled_trees(LtKind::Positive(1), 1).unwrap();
    assert_eq!(trees.len(), 2);
    let mut children: Vec<i64> = trees.iter().map(|t| t.labels[1]).collect();
    children.sort();
    assert_eq!(children, vec![1, 2], "child label 0 is excluded by positivity");
}

#[test]
fn positive_counts_agree_across_three_methods() {
    for k in 1..=3i64 {
        for n in 0..=5usize {
            let enumerated = enumerate_labelled_trees(LtKind::Positive(k), n).unwrap().len();
            let by_shape_dp = count_labelled_trees(LtKind::Positive(k), n);
            let closed = count_positive_closed(k, n);
            assert_eq!(BigUint::from(enumerated), by_shape_dp, "k={k} n={n}");
            assert_eq!(by_shape_dp, closed, "k={k} n={n}");
        }
    }
    // the perimeter-two quadrangulation counts these trees directly
    assert_eq!(count_positive_closed(1, 4), BigUint::from(378u32));
}

#[test]
fn smallest_treed_bridge_families() {
    assert_eq!(enumerate_treed_bridges(Kind::Positive, 0, 1).unwrap().len(), 1);
    assert_eq!(enumerate_treed_bridges(Kind::Unconstrained, 0, 1).unwrap().len(), 2);
    assert_eq!(enumerate_treed_bridges(Kind::Positive, 1, 1).unwrap().len(), 2);
    assert!(matches!(
        enumerate_treed_bridges(Kind::Positive, 4, 3),
        Err(OracleError::Bound(_))
    ));
}

#[test]
fn treed_bridges_are_distinct_and_valid() {
    for (n, p) in [(2usize, 1usize), (1, 2), (0, 3)] {
        for kind in [Kind::Positive, Kind::Unconstrained] {
            let list = enumerate_treed_bridges(kind, n, p).unwrap();
            let keys: BTreeSet<String> = list
                .iter()
                .map(|tb| serde_json::to_string(&tb.to_json()).unwrap())
                .collect();
            assert_eq!(keys.len(), list.len(), "duplicates at n={n} p={p}");
            for tb in &list {
                tb.validate().unwrap();
                assert_eq!(tb.size(), n);
            }
        }
    }
}

#[test]
fn gluing_counts_follow_the_known_sequence() {
    // rooted quadrangulations with digon boundary: 1, 2, 9, 54 at n = 0..3
    assert_eq!(quadrangulations_by_gluing(0).len(), 1);
    assert_eq!(quadrangulations_by_gluing(1).len(), 2);
    assert_eq!(quadrangulations_by_gluing(2).len(), 9);
    assert_eq!(quadrangulations_by_gluing(3).len(), 54);
}

#[test]
fn bijection_suite_covers_all_small_sizes() {
    for p in 1..=5usize {
        for n in 0..=(5 - p) {
            let report = verify_bijection(n, p).unwrap();
            assert_eq!(report.distinct_images, report.positive_count);
            assert_eq!(report.pointed_count, (n + p + 1) * report.positive_count);
            if p == 1 && n <= 3 {
                assert_eq!(report.gluing_count, Some(report.positive_count));
            } else {
                assert_eq!(report.gluing_count, None);
            }
        }
    }
}

#[test]
fn partition_sums_bracket_their_limits() {
    let report = verify_partition_sums().unwrap();
    assert_eq!(report.rows.len(), 4);
    let any = &report.rows[0];
    assert_eq!(any.kind, "any");
    assert_eq!(any.target, 2.0);
    assert!(any.partial > 1.6 && any.partial < 2.0);
    let pos1 = &report.rows[1];
    assert!((pos1.target - 4.0 / 3.0).abs() < 1e-12);
    assert!(pos1.partial < pos1.target && pos1.partial + pos1.tail_bound > pos1.target);
}
