//! Weak colourings over the palette `R < G < Y`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::designs::TripleSystem;
use crate::{Error, Point, Result};

/// A palette colour. The derived order `R < G < Y` is used for every
/// canonical form and tie-break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    R,
    G,
    Y,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::G, Color::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    pub fn as_char(self) -> char {
        ['R', 'G', 'Y'][self.index()]
    }

    /// Accepts `R`, `G`, `Y` in either case.
    pub fn from_char(c: char) -> Option<Color> {
        match c.to_ascii_uppercase() {
            'R' => Some(Color::R),
            'G' => Some(Color::G),
            'Y' => Some(Color::Y),
            _ => None,
        }
    }
}

/// A permutation of the palette, as the images of `R`, `G`, `Y`.
pub type PalettePerm = [Color; 3];

/// All six palette permutations, in lexicographic order.
pub const PALETTE_PERMS: [PalettePerm; 6] = {
    use Color::*;
    [
        [R, G, Y],
        [R, Y, G],
        [G, R, Y],
        [G, Y, R],
        [Y, R, G],
        [Y, G, R],
    ]
};

/// The palette permutation that renames colours in order of first
/// appearance in `colors`, so the image starts `R`, then `G` at the first
/// new colour, and so on.
pub fn first_occurrence_perm(colors: impl IntoIterator<Item = Color>) -> PalettePerm {
    let mut perm = [None; 3];
    let mut next = 0;
    for c in colors {
        if perm[c.index()].is_none() {
            perm[c.index()] = Some(Color::from_index(next));
            next += 1;
        }
    }
    for slot in perm.iter_mut() {
        if slot.is_none() {
            *slot = Some(Color::from_index(next));
            next += 1;
        }
    }
    perm.map(|c| c.expect("filled above"))
}

/// A total colouring, indexed by point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn v(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, p: Point) -> Color {
        self.0[p]
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn permute(&self, perm: PalettePerm) -> Coloring {
        Coloring(self.0.iter().map(|c| perm[c.index()]).collect())
    }

    /// Point bitmasks of the three colour classes.
    ///
    /// # Panics
    /// If `v > 64`.
    pub fn class_masks(&self) -> [u64; 3] {
        assert!(self.v() <= 64, "class masks need v <= 64");
        let mut masks = [0u64; 3];
        for (p, c) in self.0.iter().enumerate() {
            masks[c.index()] |= 1 << p;
        }
        masks
    }

    pub fn from_class_masks(v: usize, masks: [u64; 3]) -> Coloring {
        Coloring(
            (0..v)
                .map(|p| {
                    let c = (0..3)
                        .find(|&c| masks[c] >> p & 1 == 1)
                        .expect("every point is coloured");
                    Color::from_index(c)
                })
                .collect(),
        )
    }

    /// Restriction to the points of `mask`.
    pub fn restrict(&self, mask: u64) -> PartialColoring {
        PartialColoring(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| mask >> p & 1 == 1)
                .map(|(p, &c)| (p, c))
                .collect(),
        )
    }

    pub fn to_partial(&self) -> PartialColoring {
        PartialColoring(self.0.iter().copied().enumerate().collect())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", c.as_char()))
    }
}

impl FromStr for Coloring {
    type Err = Error;

    /// Uppercase `R`/`G`/`Y` only.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|ch| match ch {
                'R' | 'G' | 'Y' => Ok(Color::from_char(ch).expect("palette letter")),
                _ => Err(Error::Parse(format!("`{ch}` is not one of R, G, Y"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Coloring)
    }
}

/// Colour-class sizes in non-increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct ColorPattern(pub [usize; 3]);

impl ColorPattern {
    /// Sorts the given sizes into a pattern.
    pub fn from_sizes(mut sizes: [usize; 3]) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ColorPattern(sizes)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn c1(&self) -> usize {
        self.0[0]
    }
}

impl From<[usize; 3]> for ColorPattern {
    fn from(sizes: [usize; 3]) -> Self {
        ColorPattern::from_sizes(sizes)
    }
}

impl From<ColorPattern> for [usize; 3] {
    fn from(p: ColorPattern) -> Self {
        p.0
    }
}

impl fmt::Display for ColorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

impl FromStr for ColorPattern {
    type Err = Error;

    /// `c1,c2,c3`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("pattern `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c] = parts[..] else {
            return Err(Error::Parse(format!("pattern `{s}` needs three sizes")));
        };
        Ok(ColorPattern::from_sizes([a, b, c]))
    }
}

/// Pattern of a total colouring.
pub fn pattern(col: &Coloring) -> ColorPattern {
    let mut sizes = [0; 3];
    col.0.iter().for_each(|c| sizes[c.index()] += 1);
    ColorPattern::from_sizes(sizes)
}

/// Colours on a subset of the points, ordered by point.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialColoring(pub BTreeMap<Point, Color>);

impl PartialColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, p: Point) -> Option<Color> {
        self.0.get(&p).copied()
    }

    pub fn insert(&mut self, p: Point, c: Color) -> Option<Color> {
        self.0.insert(p, c)
    }

    pub fn remove(&mut self, p: Point) -> Option<Color> {
        self.0.remove(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, Color)> + '_ {
        self.0.iter().map(|(&p, &c)| (p, c))
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.0.keys().copied()
    }

    /// Bitmask of the coloured points.
    ///
    /// # Panics
    /// If a point is `>= 64`.
    pub fn domain_mask(&self) -> u64 {
        self.0.keys().fold(0, |m, &p| {
            assert!(p < 64, "domain mask needs points below 64");
            m | 1 << p
        })
    }

    pub fn permute(&self, perm: PalettePerm) -> PartialColoring {
        PartialColoring(self.0.iter().map(|(&p, c)| (p, perm[c.index()])).collect())
    }

    /// True when every coloured point is below `v`.
    pub fn fits(&self, v: usize) -> bool {
        self.0.keys().next_back().is_none_or(|&p| p < v)
    }

    /// True when `col` agrees with every entry.
    pub fn is_extended_by(&self, col: &Coloring) -> bool {
        self.iter().all(|(p, c)| p < col.v() && col.get(p) == c)
    }
}

impl FromIterator<(Point, Color)> for PartialColoring {
    fn from_iter<I: IntoIterator<Item = (Point, Color)>>(iter: I) -> Self {
        PartialColoring(iter.into_iter().collect())
    }
}

/// No block of `sys` is monochromatic under `col`.
///
/// # Panics
/// If `col` does not colour exactly the points of `sys`.
pub fn is_proper(sys: &TripleSystem, col: &Coloring) -> bool {
    assert_eq!(col.v(), sys.v(), "colouring size differs from v");
    sys.blocks()
        .iter()
        .all(|&[a, b, c]| !(col.get(a) == col.get(b) && col.get(b) == col.get(c)))
}

/// For each point `p`, the pairs `(q, s)` with `q, s < p` completing a block
/// with `p`. Checking these when `p` is coloured checks every block exactly
/// once during a left-to-right backtrack.
pub(crate) fn closing_pairs(sys: &TripleSystem) -> Vec<Vec<(Point, Point)>> {
    let mut pairs = vec![Vec::new(); sys.v()];
    for &[a, b, c] in sys.blocks() {
        pairs[c].push((a, b));
    }
    pairs
}

/// Iterator over the proper 3-colourings of a system, see [`enumerate_colorings`].
pub struct Colorings {
    v: usize,
    canonical: bool,
    closing: Vec<Vec<(Point, Point)>>,
    assignment: Vec<u8>,
    /// Largest colour used by points before each position, plus one.
    used: Vec<u8>,
    depth: usize,
    started: bool,
    done: bool,
}

impl Colorings {
    fn new(sys: &TripleSystem, canonical: bool) -> Self {
        let v = sys.v();
        Colorings {
            v,
            canonical,
            closing: closing_pairs(sys),
            assignment: vec![0; v],
            used: vec![0; v + 1],
            depth: 0,
            started: false,
            done: v == 0,
        }
    }

    fn admissible(&self, p: usize, c: u8) -> bool {
        self.closing[p]
            .iter()
            .all(|&(q, s)| !(self.assignment[q] == c && self.assignment[s] == c))
    }

    fn limit(&self, p: usize) -> u8 {
        if self.canonical {
            (self.used[p] + 1).min(3)
        } else {
            3
        }
    }

    /// Tries colours `>= from` at `depth`; on success descends.
    fn place(&mut self, from: u8) -> bool {
        let p = self.depth;
        for c in from..self.limit(p) {
            if self.admissible(p, c) {
                self.assignment[p] = c;
                self.used[p + 1] = self.used[p].max(c + 1);
                return true;
            }
        }
        false
    }

    fn advance(&mut self) -> bool {
        // Invariant on entry: points 0..depth are assigned and consistent;
        // `resume` says whether the point at `depth` must move to its next colour.
        let mut resume = self.started;
        self.started = true;
        if resume {
            self.depth = self.v - 1;
        }
        loop {
            let from = if resume {
                self.assignment[self.depth] + 1
            } else {
                0
            };
            if self.place(from) {
                if self.depth + 1 == self.v {
                    return true;
                }
                self.depth += 1;
                resume = false;
            } else {
                if self.depth == 0 {
                    return false;
                }
                self.depth -= 1;
                resume = true;
            }
        }
    }
}

impl Iterator for Colorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        if self.advance() {
            Some(Coloring(
                self.assignment
                    .iter()
                    .map(|&c| Color::from_index(c as usize))
                    .collect(),
            ))
        } else {
            self.done = true;
            None
        }
    }
}

/// Every proper 3-colouring of `sys`, in lexicographic order (points
/// `0..v`, colours `R < G < Y`).
///
/// With `up_to_color_permutation`, only the lexicographically least member
/// of each palette orbit is produced: the colourings in which each point's
/// colour is at most one above the largest colour used before it.
pub fn enumerate_colorings(sys: &TripleSystem, up_to_color_permutation: bool) -> Colorings {
    Colorings::new(sys, up_to_color_permutation)
}

/// True when `sys` has a proper colouring with `m` colours.
fn has_m_coloring(sys: &TripleSystem, m: usize) -> bool {
    let v = sys.v();
    if v == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    let closing = closing_pairs(sys);
    let mut assignment = vec![0usize; v];
    fn go(
        p: usize,
        used: usize,
        m: usize,
        closing: &[Vec<(Point, Point)>],
        a: &mut [usize],
    ) -> bool {
        if p == a.len() {
            return true;
        }
        // Colours beyond the first unused one are symmetric to it.
        for c in 0..(used + 1).min(m) {
            if closing[p].iter().all(|&(q, s)| !(a[q] == c && a[s] == c)) {
                a[p] = c;
                if go(p + 1, used.max(c + 1), m, closing, a) {
                    return true;
                }
            }
        }
        false
    }
    go(0, 0, m, &closing, &mut assignment)
}

/// Least `m` for which `sys` has a proper `m`-colouring.
pub fn chromatic_number(sys: &TripleSystem) -> usize {
    (1..)
        .find(|&m| has_m_coloring(sys, m))
        .expect("v colours always suffice")
}

/// Number of distinct partitions of the points into `m` non-empty colour
/// classes with no monochromatic block, stopping at `cap`.
fn count_partitions(sys: &TripleSystem, m: usize, cap: usize) -> usize {
    let v = sys.v();
    let closing = closing_pairs(sys);
    let mut assignment = vec![0usize; v];
    let mut count = 0;
    fn go(
        p: usize,
        used: usize,
        m: usize,
        closing: &[Vec<(Point, Point)>],
        a: &mut [usize],
        count: &mut usize,
        cap: usize,
    ) {
        if *count >= cap {
            return;
        }
        if p == a.len() {
            if used == m {
                *count += 1;
            }
            return;
        }
        for c in 0..(used + 1).min(m) {
            if closing[p].iter().all(|&(q, s)| !(a[q] == c && a[s] == c)) {
                a[p] = c;
                go(p + 1, used.max(c + 1), m, closing, a, count, cap);
            }
        }
    }
    go(0, 0, m, &closing, &mut assignment, &mut count, cap);
    count
}

/// True when all proper χ-colourings induce the same partition of the points.
pub fn is_uniquely_colorable(sys: &TripleSystem) -> bool {
    count_partitions(sys, chromatic_number(sys), 2) == 1
}

/// Outcome of checking `c1 <= r` over every proper 3-colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaC1Report {
    pub holds: bool,
    /// Largest colour class seen over all proper colourings.
    pub max_c1: usize,
    pub r: usize,
}

/// Checks that every proper 3-colouring has largest class at most `r`.
///
/// Errors with `PreconditionViolated` when `v <= 7`.
pub fn check_lemma_c1(sys: &TripleSystem) -> Result<LemmaC1Report> {
    if sys.v() <= 7 {
        return Err(Error::PreconditionViolated(format!(
            "the c1 <= r bound needs v > 7, got v = {}",
            sys.v()
        )));
    }
    let max_c1 = enumerate_colorings(sys, true)
        .map(|c| pattern(&c).c1())
        .max()
        .unwrap_or(0);
    Ok(LemmaC1Report {
        holds: max_c1 <= sys.r(),
        max_c1,
        r: sys.r(),
    })
}

/// The set of patterns over all proper colourings.
pub fn pattern_set(sys: &TripleSystem) -> std::collections::BTreeSet<ColorPattern> {
    enumerate_colorings(sys, true)
        .map(|c| pattern(&c))
        .collect()
}
