//! Defining sets of weak 3-colourings.
//!
//! A partial colouring is *defining* when exactly one proper 3-colouring
//! extends it, and *minimal* when no point can be dropped. The searches
//! here find, over all proper colourings of a system, the smallest defining
//! sets and the largest minimal ones.
//!
//! Strength follows the single forcing rule of weak colourings: when two
//! points of a block are known to share a colour, the third cannot take it.
//! A defining set is strong when repeated use of that rule alone colours
//! every point. The definition admits a looser reading ("at least one vertex
//! with a single remaining colour"); only the full-propagation reading is
//! implemented, with no further inference.

mod propagate;
mod record;
mod search;

use std::collections::BTreeSet;

pub use propagate::{count_extensions, forcing_closure};
pub use record::{row_string, DefiningSetRecord, SearchKind, SetEntry, Strength};
pub use search::{search, search_both, SearchOptions, SearchReport, DEFAULT_BUDGET, MAX_SEARCH_V};

use crate::coloring::{Color, Coloring, PartialColoring, PALETTE_PERMS};
use crate::designs::{bose_point, skolem_infinity, skolem_point, TripleSystem};
use crate::{Error, Result};

/// Exactly one proper colouring extends `partial`.
pub fn is_defining(sys: &TripleSystem, partial: &PartialColoring) -> bool {
    count_extensions(sys, partial, 2) == 1
}

/// Defining, and dropping any single point leaves more than one extension.
///
/// Checking single removals suffices: a subset of a non-defining partial is
/// non-defining.
pub fn is_minimal_defining(sys: &TripleSystem, partial: &PartialColoring) -> bool {
    is_defining(sys, partial)
        && partial.points().all(|p| {
            let mut smaller = partial.clone();
            smaller.remove(p);
            !is_defining(sys, &smaller)
        })
}

/// The unique extension of a defining partial colouring.
pub fn unique_extension(sys: &TripleSystem, partial: &PartialColoring) -> Result<Coloring> {
    let mut found = None;
    let n = propagate::for_each_extension(sys, partial, 2, |c| found = Some(c.clone()));
    match (n, found) {
        (1, Some(c)) => Ok(c),
        _ => Err(Error::NotDefining),
    }
}

/// Strong when forcing alone colours every point, weak otherwise.
///
/// Errors with `NotDefining` unless `partial` is a defining set.
pub fn classify_strength(sys: &TripleSystem, partial: &PartialColoring) -> Result<Strength> {
    if !is_defining(sys, partial) {
        return Err(Error::NotDefining);
    }
    Ok(strength_of_defining(sys, partial))
}

pub(crate) fn strength_of_defining(sys: &TripleSystem, partial: &PartialColoring) -> Strength {
    match forcing_closure(sys, partial) {
        Some(closed) if closed.len() == sys.v() => Strength::Strong,
        _ => Strength::Weak,
    }
}

/// Minimum search; see [`search`].
pub fn min_defining(sys: &TripleSystem, options: &SearchOptions) -> Result<DefiningSetRecord> {
    search(sys, SearchKind::Minimum, options).map(|r| r.record)
}

/// Largest-minimal search; see [`search`].
pub fn largest_minimal_defining(
    sys: &TripleSystem,
    options: &SearchOptions,
) -> Result<DefiningSetRecord> {
    search(sys, SearchKind::LargestMinimal, options).map(|r| r.record)
}

/// True when no partial colouring on at most five points is a strong
/// defining set.
///
/// Every point subset of size `<= 5` is tried with every colour assignment
/// up to palette permutation. `budget` limits the number of assignments.
pub fn strong_lower_bound_check(sys: &TripleSystem, budget: Option<u64>) -> Result<bool> {
    let mut nodes = 0u64;
    let mut points = Vec::with_capacity(5);
    let mut colors = Vec::with_capacity(5);
    fn subsets(
        sys: &TripleSystem,
        start: usize,
        points: &mut Vec<usize>,
        colors: &mut Vec<Color>,
        nodes: &mut u64,
        budget: Option<u64>,
    ) -> Result<bool> {
        if !points.is_empty() && !assignments(sys, points, colors, 0, 0, nodes, budget)? {
            return Ok(false);
        }
        if points.len() == 5 {
            return Ok(true);
        }
        for p in start..sys.v() {
            points.push(p);
            let ok = subsets(sys, p + 1, points, colors, nodes, budget)?;
            points.pop();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
    /// Colourings of `points` in first-occurrence form; false on a strong hit.
    fn assignments(
        sys: &TripleSystem,
        points: &[usize],
        colors: &mut Vec<Color>,
        i: usize,
        used: usize,
        nodes: &mut u64,
        budget: Option<u64>,
    ) -> Result<bool> {
        if i == points.len() {
            *nodes += 1;
            if let Some(b) = budget {
                if *nodes > b {
                    return Err(Error::NodeLimit {
                        task: "strong lower-bound scan",
                        budget: b,
                    });
                }
            }
            let partial: PartialColoring =
                points.iter().copied().zip(colors.iter().copied()).collect();
            let strong = matches!(forcing_closure(sys, &partial), Some(c) if c.len() == sys.v());
            return Ok(!(strong && is_defining(sys, &partial)));
        }
        for c in 0..(used + 1).min(3) {
            colors.push(Color::from_index(c));
            let ok = assignments(sys, points, colors, i + 1, used.max(c + 1), nodes, budget)?;
            colors.pop();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
    subsets(sys, 0, &mut points, &mut colors, &mut nodes, budget)
}

/// Defining-number spectra of a set of systems of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectra {
    pub v: usize,
    /// `(minimum size, largest minimal size)` per input system.
    pub per_system: Vec<(usize, usize)>,
    pub spec_d: BTreeSet<usize>,
    pub spec_big_d: BTreeSet<usize>,
    /// Least minimum size over the systems.
    pub d: usize,
    /// Greatest largest-minimal size over the systems.
    pub big_d: usize,
}

impl Spectra {
    pub fn from_sizes(v: usize, per_system: Vec<(usize, usize)>) -> Result<Self> {
        if per_system.is_empty() {
            return Err(Error::PreconditionViolated(
                "spectra need at least one system".into(),
            ));
        }
        let spec_d: BTreeSet<usize> = per_system.iter().map(|s| s.0).collect();
        let spec_big_d: BTreeSet<usize> = per_system.iter().map(|s| s.1).collect();
        let d = *spec_d.first().expect("non-empty");
        let big_d = *spec_big_d.last().expect("non-empty");
        Ok(Spectra {
            v,
            per_system,
            spec_d,
            spec_big_d,
            d,
            big_d,
        })
    }
}

/// Both spectra over `systems`, which must share one order.
pub fn spectra(systems: &[TripleSystem], options: &SearchOptions) -> Result<Spectra> {
    let v = systems.first().map(TripleSystem::v).unwrap_or(0);
    if systems.iter().any(|s| s.v() != v) {
        return Err(Error::PreconditionViolated(
            "spectra need systems of a single order".into(),
        ));
    }
    let sizes = systems
        .iter()
        .map(|s| search_both(s, options).map(|(min, max)| (min.record.size, max.record.size)))
        .collect::<Result<Vec<_>>>()?;
    Spectra::from_sizes(v, sizes)
}

/// `bose(n)` coloured by level: `(q, i)` gets colour `i`.
pub fn bose_level_coloring(n: usize) -> Coloring {
    let m = 2 * n + 1;
    let mut colors = vec![Color::R; 3 * m];
    for q in 0..m {
        for level in 0..3 {
            colors[bose_point(q, level)] = Color::from_index(level);
        }
    }
    Coloring(colors)
}

/// `skolem(n)` coloured by level, with ∞ red.
pub fn skolem_level_coloring(n: usize) -> Coloring {
    let mut colors = vec![Color::R; 6 * n + 1];
    for q in 0..2 * n {
        for level in 0..3 {
            colors[skolem_point(q, level)] = Color::from_index(level);
        }
    }
    colors[skolem_infinity(n)] = Color::R;
    Coloring(colors)
}

/// The level colouring of `skolem(n)` restricted to levels 0 and 1, the
/// level-2 points `(x, 2)` with `x < n`, and ∞ (red): `5n + 1` points.
pub fn skolem_defining_set(n: usize) -> PartialColoring {
    let full = skolem_level_coloring(n);
    let mut points: Vec<usize> = (0..2 * n)
        .flat_map(|q| [skolem_point(q, 0), skolem_point(q, 1)])
        .collect();
    points.extend((0..n).map(|q| skolem_point(q, 2)));
    points.push(skolem_infinity(n));
    points.into_iter().map(|p| (p, full.get(p))).collect()
}

/// `is_defining` is invariant under the six palette permutations.
pub fn is_palette_invariant(sys: &TripleSystem, partial: &PartialColoring) -> bool {
    let d = is_defining(sys, partial);
    PALETTE_PERMS
        .iter()
        .all(|&perm| is_defining(sys, &partial.permute(perm)) == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_proper, pattern, ColorPattern};
    use crate::designs::{bose, builtin, skolem};

    fn partial(pairs: &[(usize, char)]) -> PartialColoring {
        pairs
            .iter()
            .map(|&(p, c)| (p, Color::from_char(c).unwrap()))
            .collect()
    }

    #[test]
    fn fano_row_is_defining() {
        let s = builtin("sts7").unwrap();
        let p = partial(&[(0, 'R'), (1, 'R'), (2, 'R'), (3, 'G'), (4, 'G'), (5, 'R')]);
        assert_eq!(count_extensions(&s, &p, 10), 1);
        assert_eq!(unique_extension(&s, &p).unwrap().to_string(), "RRRGGRY");
        assert_eq!(classify_strength(&s, &p).unwrap(), Strength::Strong);
        assert!(is_minimal_defining(&s, &p));
    }

    #[test]
    fn empty_partial() {
        let s = builtin("sts7").unwrap();
        assert!(!is_defining(&s, &PartialColoring::new()));
        assert!(matches!(
            classify_strength(&s, &PartialColoring::new()),
            Err(Error::NotDefining)
        ));
    }

    #[test]
    fn full_colouring() {
        let s = builtin("sts9").unwrap();
        let c: Coloring = "RGGYRRGYY".parse().unwrap();
        assert_eq!(count_extensions(&s, &c.to_partial(), 5), 1);
        assert_eq!(
            classify_strength(&s, &c.to_partial()).unwrap(),
            Strength::Strong
        );
        assert!(is_minimal_defining(&s, &c.to_partial()));
        let f: Coloring = "RRRGGRY".parse().unwrap();
        assert!(!is_minimal_defining(
            &builtin("sts7").unwrap(),
            &f.to_partial()
        ));
    }

    #[test]
    fn improper_partial_has_no_extension() {
        let s = builtin("sts7").unwrap();
        assert_eq!(
            count_extensions(&s, &partial(&[(0, 'R'), (1, 'R'), (3, 'R')]), 10),
            0
        );
    }

    #[test]
    fn bose_levels() {
        for n in 1..=2 {
            let s = bose(n);
            let c = bose_level_coloring(n);
            assert!(is_proper(&s, &c));
            assert_eq!(pattern(&c), ColorPattern([2 * n + 1; 3]));
            assert!(is_minimal_defining(&s, &c.to_partial()), "n = {n}");
        }
    }

    #[test]
    fn skolem_sets() {
        for n in 1..=2 {
            let s = skolem(n);
            assert!(is_proper(&s, &skolem_level_coloring(n)));
            let p = skolem_defining_set(n);
            assert_eq!(p.len(), 5 * n + 1);
            assert!(is_minimal_defining(&s, &p), "n = {n}");
            assert_eq!(unique_extension(&s, &p).unwrap(), skolem_level_coloring(n));
        }
    }

    #[test]
    fn strong_lower_bound_small() {
        assert!(strong_lower_bound_check(&builtin("sts7").unwrap(), None).unwrap());
        assert!(strong_lower_bound_check(&builtin("sts9").unwrap(), None).unwrap());
        assert!(matches!(
            strong_lower_bound_check(&builtin("sts9").unwrap(), Some(10)),
            Err(Error::NodeLimit { .. })
        ));
    }

    #[test]
    fn palette_invariance() {
        let s = builtin("sts7").unwrap();
        let p = partial(&[(0, 'R'), (1, 'R'), (2, 'R'), (3, 'G'), (4, 'G'), (5, 'R')]);
        assert!(is_palette_invariant(&s, &p));
    }

    #[test]
    fn spectra_aggregate() {
        let s = Spectra::from_sizes(15, vec![(6, 11), (5, 15), (7, 7)]).unwrap();
        assert_eq!((s.d, s.big_d), (5, 15));
        assert_eq!(s.spec_d.into_iter().collect::<Vec<_>>(), vec![5, 6, 7]);
        assert!(Spectra::from_sizes(15, vec![]).is_err());
    }
}
