//! Isomorphism invariants: Pasch configurations, Fano subsystems and the
//! cycle structure of pairs of points.

use std::collections::HashSet;

use super::TripleSystem;
use crate::Point;

/// Calls `f` with the six points of each Pasch configuration, six times per
/// configuration (once for every pair of its blocks).
fn for_each_pasch_sighting(sys: &TripleSystem, mut f: impl FnMut([Point; 6])) {
    let blocks = sys.blocks();
    for x in 0..sys.v() {
        let through = sys.blocks_through(x);
        for (i, &bi) in through.iter().enumerate() {
            let [a, b] = others(blocks[bi], x);
            for &bj in &through[i + 1..] {
                let [c, d] = others(blocks[bj], x);
                for (p, q, s, t) in [(a, c, b, d), (a, d, b, c)] {
                    let z = sys.third_point(p, q).expect("distinct points");
                    if Some(z) == sys.third_point(s, t) {
                        f([a, b, c, d, x, z]);
                    }
                }
            }
        }
    }
}

fn others(block: [Point; 3], x: Point) -> [Point; 2] {
    match block {
        [p, a, b] if p == x => [a, b],
        [a, p, b] if p == x => [a, b],
        [a, b, _] => [a, b],
    }
}

/// Number of Pasch configurations (four blocks on six points).
pub fn pasch_count(sys: &TripleSystem) -> usize {
    let mut sightings = 0;
    for_each_pasch_sighting(sys, |_| sightings += 1);
    sightings / 6
}

/// For each point, the number of Pasch configurations containing it.
pub fn point_pasch_counts(sys: &TripleSystem) -> Vec<usize> {
    let mut counts = vec![0; sys.v()];
    for_each_pasch_sighting(sys, |pts| pts.iter().for_each(|&p| counts[p] += 1));
    counts.iter().map(|c| c / 6).collect()
}

/// Number of sub-STS(7)s, found as closures of non-collinear triples.
///
/// # Panics
/// If `v > 64`.
pub fn fano_subsystem_count(sys: &TripleSystem) -> usize {
    let v = sys.v();
    assert!(v <= 64, "subsystem search is limited to v <= 64");
    let mut found = HashSet::new();
    for a in 0..v {
        for b in a + 1..v {
            let ab = sys.third_point(a, b).expect("distinct points");
            for c in b + 1..v {
                if c == ab {
                    continue;
                }
                let closure = close(sys, (1 << a) | (1 << b) | (1 << c));
                if closure.count_ones() == 7 {
                    found.insert(closure);
                }
            }
        }
    }
    found.len()
}

fn close(sys: &TripleSystem, mut set: u64) -> u64 {
    loop {
        let mut next = set;
        let pts: Vec<Point> = (0..sys.v()).filter(|&p| set >> p & 1 == 1).collect();
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                next |= 1 << sys.third_point(p, q).expect("distinct points");
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Cycle lengths (ascending) of the union of the two perfect matchings
/// `p -> third(x, p)` and `p -> third(y, p)` on the `v - 3` points outside
/// the block through `x` and `y`.
pub fn pair_cycle_type(sys: &TripleSystem, x: Point, y: Point) -> Vec<usize> {
    let v = sys.v();
    let z = sys.third_point(x, y).expect("distinct points");
    let mut seen = vec![false; v];
    seen[x] = true;
    seen[y] = true;
    seen[z] = true;
    let mut lengths = Vec::new();
    for start in 0..v {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        let mut use_x = true;
        while !seen[p] {
            seen[p] = true;
            len += 1;
            p = sys
                .third_point(if use_x { x } else { y }, p)
                .expect("distinct points");
            use_x = !use_x;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// Per-point data preserved by every isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointInvariant {
    pub pasch: usize,
    /// Sorted cycle types of the pairs through the point.
    pub cycle_types: Vec<Vec<usize>>,
}

pub(crate) fn point_invariants(sys: &TripleSystem) -> Vec<PointInvariant> {
    let v = sys.v();
    let pasch = point_pasch_counts(sys);
    let mut types: Vec<Vec<Vec<usize>>> = vec![Vec::with_capacity(v.saturating_sub(1)); v];
    for x in 0..v {
        for y in x + 1..v {
            let t = pair_cycle_type(sys, x, y);
            types[y].push(t.clone());
            types[x].push(t);
        }
    }
    types
        .into_iter()
        .zip(pasch)
        .map(|(mut cycle_types, pasch)| {
            cycle_types.sort_unstable();
            PointInvariant { pasch, cycle_types }
        })
        .collect()
}

/// A summary that agrees on isomorphic systems; unequal fingerprints prove
/// non-isomorphism, equal ones prove nothing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub v: usize,
    pub pasch: usize,
    pub points: Vec<PointInvariant>,
}

impl Fingerprint {
    pub fn of(sys: &TripleSystem) -> Self {
        let mut points = point_invariants(sys);
        let pasch = points.iter().map(|p| p.pasch).sum::<usize>() / 6;
        points.sort_unstable();
        Fingerprint {
            v: sys.v(),
            pasch,
            points,
        }
    }
}
