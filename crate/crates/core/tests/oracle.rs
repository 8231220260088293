//! Lattice search against the brute-force oracle in `common/oracle.rs`.

#[path = "common/oracle.rs"]
mod oracle;

use oracle::Oracle;
use sts_core::coloring::{Color, ColorPattern, Coloring};
use sts_core::defining::{search, SearchKind, SearchOptions};
use sts_core::designs::{builtin, skolem, TripleSystem};

fn check(sys: &TripleSystem, id: &str, patterns: &[Option<ColorPattern>]) {
    let oracle = Oracle::new(sys);
    for &pattern in patterns {
        for kind in [SearchKind::Minimum, SearchKind::LargestMinimal] {
            let (points, witness) = oracle.best(kind, pattern);
            let got = search(sys, kind, &SearchOptions::new(id).with_pattern(pattern))
                .unwrap()
                .record;
            let got_points: Vec<usize> = got.set.points().collect();
            assert_eq!(got_points, points, "{id} {kind:?} {pattern:?}");
            assert_eq!(
                got.witness.to_string(),
                witness,
                "{id} {kind:?} {pattern:?}"
            );
        }
    }
}

fn patterns(list: &[[usize; 3]]) -> Vec<Option<ColorPattern>> {
    std::iter::once(None)
        .chain(list.iter().map(|&p| Some(ColorPattern(p))))
        .collect()
}

#[test]
fn oracle_sts7() {
    check(
        &builtin("sts7").unwrap(),
        "sts7",
        &patterns(&[[4, 2, 1], [3, 3, 1], [3, 2, 2]]),
    );
}

#[test]
fn oracle_sts9() {
    check(
        &builtin("sts9").unwrap(),
        "sts9",
        &patterns(&[[4, 4, 1], [4, 3, 2], [3, 3, 3]]),
    );
}

#[test]
fn oracle_skolem1() {
    check(&skolem(1), "skolem1", &patterns(&[]));
}

#[test]
fn oracle_relabelled_sts9() {
    let map = [4, 7, 0, 2, 8, 1, 6, 3, 5];
    let sys = builtin("sts9").unwrap().relabel(&map).unwrap();
    check(&sys, "sts9-relabelled", &patterns(&[]));
}

#[test]
fn oracle_sizes_match_known_values() {
    for (name, d, big_d) in [("sts7", 6, 6), ("sts9", 7, 9)] {
        let sys = builtin(name).unwrap();
        let oracle = Oracle::new(&sys);
        assert_eq!(oracle.best(SearchKind::Minimum, None).0.len(), d);
        assert_eq!(oracle.best(SearchKind::LargestMinimal, None).0.len(), big_d);
    }
}

#[test]
fn oracle_witness_is_proper() {
    let sys = builtin("sts9").unwrap();
    let (_, w) = Oracle::new(&sys).best(SearchKind::Minimum, None);
    let col: Coloring = w.parse().unwrap();
    assert!(sts_core::coloring::is_proper(&sys, &col));
    assert_eq!(col.get(0), Color::R);
}
