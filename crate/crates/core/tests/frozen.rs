//! Values computed once by independent brute force and frozen here.

use std::collections::BTreeMap;

use sts_core::catalog::identify;
use sts_core::coloring::{enumerate_colorings, pattern_set, ColorPattern};
use sts_core::designs::{automorphism_count, bose, builtin, pasch_count};
use sts_core::Catalog;

/// Proper weak 3-colourings (not up to palette permutation), counted by a
/// standalone script over all `3^v` strings.
#[test]
fn proper_coloring_counts() {
    for (name, n) in [
        ("sts7", 882),
        ("sts9", 3762),
        ("sts13-1", 26442),
        ("sts13-2", 26712),
    ] {
        let sys = builtin(name).unwrap();
        assert_eq!(enumerate_colorings(&sys, false).count(), n, "{name}");
        assert_eq!(enumerate_colorings(&sys, true).count() * 6, n, "{name}");
    }
}

#[test]
fn automorphism_group_orders() {
    for (name, n) in [
        ("sts7", 168),
        ("sts9", 432),
        ("sts13-1", 39),
        ("sts13-2", 6),
    ] {
        assert_eq!(automorphism_count(&builtin(name).unwrap()), n, "{name}");
    }
}

#[test]
fn catalog_pasch_distribution() {
    let expected: BTreeMap<usize, usize> = [
        (0, 1),
        (2, 1),
        (5, 5),
        (6, 7),
        (7, 7),
        (8, 6),
        (9, 6),
        (10, 6),
        (11, 1),
        (12, 4),
        (13, 4),
        (14, 3),
        (15, 1),
        (17, 2),
        (18, 2),
        (19, 2),
        (20, 3),
        (23, 2),
        (25, 3),
        (31, 2),
        (32, 1),
        (33, 2),
        (37, 3),
        (49, 3),
        (57, 1),
        (73, 1),
        (105, 1),
    ]
    .into_iter()
    .collect();
    let cat = Catalog::embedded().unwrap();
    assert_eq!(cat.pasch_distribution(), expected);
    assert_eq!(pasch_count(cat.get(1).unwrap()), 105);
    assert_eq!(pasch_count(cat.get(80).unwrap()), 0);
}

#[test]
fn bose_two_is_the_pasch_free_entry() {
    let cat = Catalog::embedded().unwrap();
    let sys = bose(2);
    assert_eq!(pasch_count(&sys), 0);
    assert_eq!(identify(&sys, &cat), Some(80));
}

#[test]
fn small_pattern_sets() {
    let set = |l: &[[usize; 3]]| {
        l.iter()
            .map(|&p| ColorPattern(p))
            .collect::<std::collections::BTreeSet<_>>()
    };
    assert_eq!(
        pattern_set(&builtin("sts7").unwrap()),
        set(&[[4, 2, 1], [3, 3, 1], [3, 2, 2]])
    );
    assert_eq!(
        pattern_set(&builtin("sts9").unwrap()),
        set(&[[4, 4, 1], [4, 3, 2], [3, 3, 3]])
    );
    for name in ["sts13-1", "sts13-2"] {
        assert_eq!(
            pattern_set(&builtin(name).unwrap()),
            set(&[[6, 5, 2], [6, 4, 3], [5, 5, 3], [5, 4, 4]])
        );
    }
}
