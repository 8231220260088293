//! Candidate-set propagation and extension counting.

use crate::coloring::{Color, Coloring, PartialColoring};
use crate::designs::TripleSystem;
use crate::Point;

const ALL: u8 = 0b111;

/// Per-point candidate colours as 3-bit masks.
struct Candidates<'s> {
    sys: &'s TripleSystem,
    cand: Vec<u8>,
}

impl<'s> Candidates<'s> {
    /// Starts from `partial`, which must fit in `0..v`.
    fn new(sys: &'s TripleSystem, partial: &PartialColoring) -> Self {
        assert!(
            partial.fits(sys.v()),
            "partial colouring has a point outside 0..{}",
            sys.v()
        );
        let mut cand = vec![ALL; sys.v()];
        for (p, c) in partial.iter() {
            cand[p] = 1 << c.index();
        }
        Candidates { sys, cand }
    }

    fn fixed(&self, p: Point) -> bool {
        self.cand[p].count_ones() == 1
    }

    /// Applies the forcing rule from the points in `queue` until nothing
    /// changes. Returns false when some point loses every candidate.
    fn propagate(&mut self, mut queue: Vec<Point>) -> bool {
        while let Some(p) = queue.pop() {
            let bit = self.cand[p];
            for &bi in self.sys.blocks_through(p) {
                let block = self.sys.blocks()[bi];
                let [q, s] = others(block, p);
                for (mate, third) in [(q, s), (s, q)] {
                    if self.cand[mate] == bit && self.cand[third] & bit != 0 {
                        self.cand[third] &= !bit;
                        match self.cand[third].count_ones() {
                            0 => return false,
                            1 => queue.push(third),
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    fn start(&mut self) -> bool {
        let fixed: Vec<Point> = (0..self.cand.len()).filter(|&p| self.fixed(p)).collect();
        self.propagate(fixed)
    }

    fn to_coloring(&self) -> Coloring {
        Coloring(
            self.cand
                .iter()
                .map(|m| Color::from_index(m.trailing_zeros() as usize))
                .collect(),
        )
    }
}

fn others(block: [Point; 3], p: Point) -> [Point; 2] {
    match block {
        [x, a, b] if x == p => [a, b],
        [a, x, b] if x == p => [a, b],
        [a, b, _] => [a, b],
    }
}

/// Points coloured by forcing from `partial`, or `None` if forcing reaches a
/// contradiction (no extension exists).
///
/// The result contains `partial` itself; it covers all `v` points exactly
/// when `partial` is strong.
pub fn forcing_closure(sys: &TripleSystem, partial: &PartialColoring) -> Option<PartialColoring> {
    let mut c = Candidates::new(sys, partial);
    if !c.start() {
        return None;
    }
    Some(
        (0..sys.v())
            .filter(|&p| c.fixed(p))
            .map(|p| (p, Color::from_index(c.cand[p].trailing_zeros() as usize)))
            .collect(),
    )
}

/// Number of proper colourings extending `partial`, saturating at `cap`.
///
/// # Panics
/// If `partial` colours a point outside `0..v`.
pub fn count_extensions(sys: &TripleSystem, partial: &PartialColoring, cap: usize) -> usize {
    for_each_extension(sys, partial, cap, |_| {})
}

/// Calls `f` on each proper extension of `partial` (at most `cap` of them)
/// and returns how many were found.
pub(crate) fn for_each_extension(
    sys: &TripleSystem,
    partial: &PartialColoring,
    cap: usize,
    mut f: impl FnMut(&Coloring),
) -> usize {
    let mut root = Candidates::new(sys, partial);
    if cap == 0 || !root.start() {
        return 0;
    }
    let mut count = 0;
    branch(&mut root, cap, &mut count, &mut f);
    count
}

fn branch(
    state: &mut Candidates<'_>,
    cap: usize,
    count: &mut usize,
    f: &mut impl FnMut(&Coloring),
) {
    // The open point with fewest candidates, lowest index first.
    let pick = (0..state.cand.len())
        .filter(|&p| !state.fixed(p))
        .min_by_key(|&p| (state.cand[p].count_ones(), p));
    let Some(p) = pick else {
        *count += 1;
        f(&state.to_coloring());
        return;
    };
    let options = state.cand[p];
    for c in 0..3 {
        if options >> c & 1 == 0 {
            continue;
        }
        let saved = state.cand.clone();
        state.cand[p] = 1 << c;
        if state.propagate(vec![p]) {
            branch(state, cap, count, f);
        }
        state.cand = saved;
        if *count >= cap {
            return;
        }
    }
}
