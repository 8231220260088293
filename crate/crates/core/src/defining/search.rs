//! Exhaustive defining-set search over the subset lattice.
//!
//! Fix a proper colouring `c`. A point set `S` fails to define `c` exactly
//! when some other proper colouring `c'` agrees with `c` on all of `S`, that
//! is when `S ⊆ agree(c, c')`. So the non-defining sets of `c` form the
//! down-closure of `{agree(c, c') : c' ≠ c}`. One bitmap of `2^v` bits,
//! filled with those agreement sets and closed downwards, answers "is `S`
//! defining for `c`" for every `S` at once; `S` is minimal defining when it
//! is defining and every `S \ {x}` is not.
//!
//! Only one colouring per palette orbit is examined: permuting colours
//! permutes the proper colourings and preserves agreement sets.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;

use super::record::{DefiningSetRecord, SearchKind};
use super::strength_of_defining;
use crate::coloring::{chromatic_number, enumerate_colorings, first_occurrence_perm, pattern};
use crate::coloring::{Color, ColorPattern, Coloring};
use crate::designs::TripleSystem;
use crate::{BudgetReport, Error, Result};

/// Largest order the lattice search accepts (the lattice has `2^v` bits).
pub const MAX_SEARCH_V: usize = 21;

/// Default node budget: ample for any single system with `v <= 15`.
pub const DEFAULT_BUDGET: u64 = 20_000_000_000;

/// Search parameters.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Identifier copied into the resulting records.
    pub system_id: String,
    /// Restrict to colourings with this pattern.
    pub pattern: Option<ColorPattern>,
    /// Node budget; `None` means unlimited.
    pub budget: Option<u64>,
}

impl SearchOptions {
    pub fn new(system_id: impl Into<String>) -> Self {
        SearchOptions {
            system_id: system_id.into(),
            ..Self::default()
        }
    }

    pub fn with_pattern(mut self, pattern: Option<ColorPattern>) -> Self {
        self.pattern = pattern;
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }
}

/// A finished search: the record plus the nodes it was charged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub record: DefiningSetRecord,
    pub nodes_used: u64,
    /// Colourings examined, one per palette orbit.
    pub representatives: usize,
}

/// Proper colourings as per-colour point masks, in lexicographic order.
struct ColoringTable {
    v: usize,
    r: Vec<u32>,
    g: Vec<u32>,
    y: Vec<u32>,
    /// Indices of the first-occurrence representatives.
    reps: Vec<usize>,
}

impl ColoringTable {
    fn build(sys: &TripleSystem) -> Self {
        let v = sys.v();
        let (mut r, mut g, mut y, mut reps) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (i, col) in enumerate_colorings(sys, false).enumerate() {
            let m = col.class_masks();
            r.push(m[0] as u32);
            g.push(m[1] as u32);
            y.push(m[2] as u32);
            if first_occurrence_perm(col.colors().iter().copied()) == Color::ALL {
                reps.push(i);
            }
        }
        ColoringTable { v, r, g, y, reps }
    }

    fn len(&self) -> usize {
        self.r.len()
    }

    fn coloring(&self, i: usize) -> Coloring {
        Coloring::from_class_masks(
            self.v,
            [self.r[i] as u64, self.g[i] as u64, self.y[i] as u64],
        )
    }
}

/// Closure bitmap over the `2^v` subsets; bit `S` set means `S` is not defining.
struct Lattice {
    words: Vec<u64>,
}

const IN_WORD_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

impl Lattice {
    fn new(v: usize) -> Self {
        Lattice {
            words: vec![0; ((1usize << v) / 64).max(1)],
        }
    }

    fn fill(&mut self, table: &ColoringTable, c: usize) {
        self.words.iter_mut().for_each(|w| *w = 0);
        let (cr, cg, cy) = (table.r[c], table.g[c], table.y[c]);
        for j in 0..table.len() {
            if j == c {
                continue;
            }
            let agree = (cr & table.r[j]) | (cg & table.g[j]) | (cy & table.y[j]);
            self.words[(agree >> 6) as usize] |= 1 << (agree & 63);
        }
    }

    /// Down-closure: `S` set whenever some superset is set.
    fn close(&mut self, v: usize) {
        for (i, &mask) in IN_WORD_MASKS.iter().enumerate().take(v.min(6)) {
            let shift = 1 << i;
            self.words
                .iter_mut()
                .for_each(|w| *w |= (*w >> shift) & mask);
        }
        for i in 6..v {
            let stride = 1usize << (i - 6);
            let n = self.words.len();
            let mut base = 0;
            while base < n {
                for j in base..base + stride {
                    self.words[j] |= self.words[j + stride];
                }
                base += 2 * stride;
            }
        }
    }

    fn non_defining(&self, s: u32) -> bool {
        self.words[(s >> 6) as usize] >> (s & 63) & 1 == 1
    }

    fn minimal_defining(&self, s: u32) -> bool {
        if self.non_defining(s) {
            return false;
        }
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !self.non_defining(s ^ bit) {
                return false;
            }
            rest ^= bit;
        }
        true
    }
}

/// All subsets of `0..v`, by size then in lexicographic order of their
/// sorted point lists.
fn scan_order(v: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (0..1u32 << v).collect();
    all.sort_unstable_by(|&a, &b| compare_sets(a, b, v));
    all
}

/// Order by size, then lexicographically on the sorted point lists.
fn compare_sets(a: u32, b: u32, v: usize) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| lex_key(b, v).cmp(&lex_key(a, v)))
}

/// For sets of one size, a larger key means a lexicographically smaller
/// point list: point `p` maps to bit `v - 1 - p`.
fn lex_key(s: u32, v: usize) -> u32 {
    if v == 0 {
        0
    } else {
        s.reverse_bits() >> (32 - v)
    }
}

/// The best answer found for one representative.
#[derive(Clone, Debug)]
struct Candidate {
    set: u32,
    /// Colours of the set's points after first-occurrence renaming.
    set_colors: Vec<Color>,
    rep: usize,
}

fn candidate(table: &ColoringTable, rep: usize, set: u32) -> Candidate {
    let col = table.coloring(rep);
    let on_set: Vec<Color> = (0..table.v)
        .filter(|&p| set >> p & 1 == 1)
        .map(|p| col.get(p))
        .collect();
    let perm = first_occurrence_perm(on_set.iter().copied());
    Candidate {
        set,
        set_colors: on_set.iter().map(|c| perm[c.index()]).collect(),
        rep,
    }
}

/// Total order on answers: `Less` when `a` wins.
fn rank(kind: SearchKind, v: usize, a: &Candidate, b: &Candidate) -> Ordering {
    let size = a.set.count_ones().cmp(&b.set.count_ones());
    let size = match kind {
        SearchKind::Minimum => size,
        SearchKind::LargestMinimal => size.reverse(),
    };
    size.then_with(|| lex_key(b.set, v).cmp(&lex_key(a.set, v)))
        .then_with(|| a.set_colors.cmp(&b.set_colors))
}

/// Scans one closed lattice for the kind's extreme, ignoring sizes that
/// cannot beat or tie `bound`.
fn scan(kind: SearchKind, lattice: &Lattice, order: &[u32], bound: usize) -> Option<u32> {
    match kind {
        SearchKind::Minimum => order
            .iter()
            .take_while(|s| s.count_ones() as usize <= bound)
            .find(|&&s| !lattice.non_defining(s))
            .copied(),
        SearchKind::LargestMinimal => {
            // Descending size, lexicographic within a size.
            let mut end = order.len();
            while end > 0 {
                let size = order[end - 1].count_ones();
                if (size as usize) < bound {
                    return None;
                }
                let start = order[..end].partition_point(|s| s.count_ones() < size);
                if let Some(&s) = order[start..end]
                    .iter()
                    .find(|&&s| lattice.minimal_defining(s))
                {
                    return Some(s);
                }
                end = start;
            }
            None
        }
    }
}

struct Prepared {
    table: ColoringTable,
    reps: Vec<usize>,
    order: Vec<u32>,
    /// Nodes charged before any representative is processed.
    base_cost: u64,
    per_rep_cost: u64,
}

fn prepare(sys: &TripleSystem, pattern_filter: Option<ColorPattern>) -> Result<Prepared> {
    let v = sys.v();
    let chromatic = chromatic_number(sys);
    if chromatic != 3 {
        return Err(Error::NotThreeChromatic { chromatic });
    }
    if v > MAX_SEARCH_V {
        return Err(Error::PreconditionViolated(format!(
            "exhaustive search supports v <= {MAX_SEARCH_V}, got v = {v}"
        )));
    }
    let table = ColoringTable::build(sys);
    let reps: Vec<usize> = table
        .reps
        .iter()
        .copied()
        .filter(|&i| pattern_filter.is_none_or(|p| pattern(&table.coloring(i)) == p))
        .collect();
    if reps.is_empty() {
        let p = pattern_filter.map(|p| p.to_string()).unwrap_or_default();
        return Err(Error::PreconditionViolated(format!(
            "no proper colouring has pattern {p}"
        )));
    }
    let words = ((1u64 << v) / 64).max(1);
    Ok(Prepared {
        base_cost: table.len() as u64,
        per_rep_cost: table.len() as u64 + (v as u64 + 2) * words,
        order: scan_order(v),
        table,
        reps,
    })
}

/// How many representatives fit the budget (a deterministic prefix).
fn affordable(prep: &Prepared, budget: Option<u64>, passes: u64) -> usize {
    match budget {
        None => prep.reps.len(),
        Some(b) => {
            let left = b.saturating_sub(prep.base_cost);
            let each = prep.per_rep_cost + (passes - 1) * (1u64 << prep.table.v) / 64;
            ((left / each) as usize).min(prep.reps.len())
        }
    }
}

fn nodes_for(prep: &Prepared, reps: usize, passes: u64) -> u64 {
    prep.base_cost + reps as u64 * (prep.per_rep_cost + (passes - 1) * (1u64 << prep.table.v) / 64)
}

/// Runs the scans of `kinds` on the first `count` representatives.
fn run(prep: &Prepared, kinds: &[SearchKind], count: usize) -> Vec<Option<Candidate>> {
    let v = prep.table.v;
    let bounds: Vec<AtomicUsize> = kinds
        .iter()
        .map(|k| AtomicUsize::new(if *k == SearchKind::Minimum { v } else { 0 }))
        .collect();
    let per_rep: Vec<Vec<Option<Candidate>>> = prep.reps[..count]
        .par_iter()
        .map_init(
            || Lattice::new(v),
            |lattice, &rep| {
                lattice.fill(&prep.table, rep);
                lattice.close(v);
                kinds
                    .iter()
                    .zip(&bounds)
                    .map(|(&kind, bound)| {
                        let found = scan(
                            kind,
                            lattice,
                            &prep.order,
                            bound.load(AtomicOrdering::Relaxed),
                        )?;
                        let size = found.count_ones() as usize;
                        match kind {
                            SearchKind::Minimum => bound.fetch_min(size, AtomicOrdering::Relaxed),
                            SearchKind::LargestMinimal => {
                                bound.fetch_max(size, AtomicOrdering::Relaxed)
                            }
                        };
                        Some(candidate(&prep.table, rep, found))
                    })
                    .collect()
            },
        )
        .collect();
    (0..kinds.len())
        .map(|k| {
            per_rep
                .iter()
                .filter_map(|r| r[k].as_ref())
                .min_by(|a, b| rank(kinds[k], v, a, b))
                .cloned()
        })
        .collect()
}

fn to_record(
    prep: &Prepared,
    kind: SearchKind,
    best: &Candidate,
    system_id: &str,
    sys: &TripleSystem,
) -> DefiningSetRecord {
    let col = prep.table.coloring(best.rep);
    let on_set = (0..prep.table.v)
        .filter(|&p| best.set >> p & 1 == 1)
        .map(|p| col.get(p));
    let witness = col.permute(first_occurrence_perm(on_set));
    let set = witness.restrict(best.set as u64);
    DefiningSetRecord {
        system_id: system_id.to_string(),
        pattern: pattern(&witness),
        size: set.len(),
        strength: strength_of_defining(sys, &set),
        set,
        kind,
        witness,
    }
}

fn search_kinds(
    sys: &TripleSystem,
    kinds: &[SearchKind],
    options: &SearchOptions,
) -> Result<Vec<SearchReport>> {
    let prep = prepare(sys, options.pattern)?;
    let passes = kinds.len() as u64;
    let count = affordable(&prep, options.budget, passes);
    let results = run(&prep, kinds, count);
    let nodes_used = nodes_for(&prep, count, passes);
    let v = sys.v();
    if count < prep.reps.len() {
        // Report the first kind's state; both share the same prefix.
        let kind = kinds[0];
        let best = results[0]
            .as_ref()
            .map(|c| to_record(&prep, kind, c, &options.system_id, sys));
        let (lower, upper) = match (kind, &best) {
            (SearchKind::Minimum, Some(b)) => (2, b.size),
            (SearchKind::Minimum, None) => (2, v),
            (SearchKind::LargestMinimal, Some(b)) => (b.size, v),
            (SearchKind::LargestMinimal, None) => (2, v),
        };
        return Err(Error::BudgetExhausted(Box::new(BudgetReport {
            kind,
            best,
            lower,
            upper,
            nodes_used,
            budget: options.budget.unwrap_or(u64::MAX),
        })));
    }
    Ok(kinds
        .iter()
        .zip(&results)
        .map(|(&kind, best)| {
            let best = best
                .as_ref()
                .expect("a full colouring is always minimal defining for some subset");
            SearchReport {
                record: to_record(&prep, kind, best, &options.system_id, sys),
                nodes_used,
                representatives: prep.reps.len(),
            }
        })
        .collect())
}

/// Searches all proper colourings of `sys` (optionally only those with a
/// given pattern) for a smallest defining set or a largest minimal one.
///
/// Ties are broken towards the lexicographically least point list, then the
/// least colour string on it; the reported colours are renamed so the set
/// reads in first-occurrence order (`R` first, then `G`, then `Y`).
///
/// Work is charged in nodes: one per proper colouring, and per examined
/// colouring one per other colouring plus one per lattice word per pass.
/// When the budget cannot cover every colouring, the affordable prefix is
/// searched and `BudgetExhausted` reports its best answer with bounds.
pub fn search(
    sys: &TripleSystem,
    kind: SearchKind,
    options: &SearchOptions,
) -> Result<SearchReport> {
    Ok(search_kinds(sys, &[kind], options)?.remove(0))
}

/// Both searches sharing one lattice per colouring: `(minimum, largest-minimal)`.
pub fn search_both(
    sys: &TripleSystem,
    options: &SearchOptions,
) -> Result<(SearchReport, SearchReport)> {
    let mut r = search_kinds(
        sys,
        &[SearchKind::Minimum, SearchKind::LargestMinimal],
        options,
    )?;
    let max = r.pop().expect("two reports");
    let min = r.pop().expect("two reports");
    Ok((min, max))
}
