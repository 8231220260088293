//! Steiner triple systems: construction, validation and isomorphism.

mod families;
mod invariants;
mod iso;
mod quasigroup;
mod small;

use std::fmt;
use std::str::FromStr;

pub use families::{bose, bose_point, skolem, skolem_infinity, skolem_point};
pub use invariants::{
    fano_subsystem_count, pair_cycle_type, pasch_count, point_pasch_counts, Fingerprint,
};
pub use iso::{are_isomorphic, automorphism_count, IsomorphismSearch};
pub use quasigroup::Quasigroup;
pub use small::{builtin, cyclic_sts, BUILTIN_NAMES};

use crate::{Error, Point, Result};

/// A block, stored with its points in ascending order.
pub type Block = [Point; 3];

const NO_BLOCK: u32 = u32::MAX;

/// A Steiner triple system on the points `0..v`.
///
/// Blocks are kept sorted (points ascending, list lexicographic) so two
/// systems are equal exactly when their block lists are equal.
#[derive(Clone)]
pub struct TripleSystem {
    v: usize,
    blocks: Vec<Block>,
    pair_index: Vec<u32>,
    blocks_through: Vec<Vec<usize>>,
}

/// True when a Steiner triple system of order `v` exists.
pub fn is_admissible(v: usize) -> bool {
    v % 6 == 1 || v % 6 == 3
}

impl TripleSystem {
    /// Validates `blocks` as an STS(`v`) and returns it in canonical order.
    pub fn from_blocks<I>(v: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = Block>,
    {
        if !is_admissible(v) {
            return Err(Error::NotADesign(format!(
                "v = {v} is not congruent to 1 or 3 mod 6"
            )));
        }
        let mut sorted: Vec<Block> = Vec::new();
        for mut block in blocks {
            block.sort_unstable();
            if block[2] >= v {
                return Err(Error::NotADesign(format!(
                    "block {block:?} has a point outside 0..{v}"
                )));
            }
            if block[0] == block[1] || block[1] == block[2] {
                return Err(Error::NotADesign(format!(
                    "block {block:?} repeats a point"
                )));
            }
            sorted.push(block);
        }
        let expected = v * (v - 1) / 6;
        if sorted.len() != expected {
            return Err(Error::NotADesign(format!(
                "{} blocks given, an STS({v}) has {expected}",
                sorted.len()
            )));
        }
        sorted.sort_unstable();

        let mut pair_index = vec![NO_BLOCK; v * v];
        for (i, &[a, b, c]) in sorted.iter().enumerate() {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                if pair_index[x * v + y] != NO_BLOCK {
                    return Err(Error::NotADesign(format!(
                        "pair {{{x}, {y}}} is covered more than once"
                    )));
                }
                pair_index[x * v + y] = i as u32;
                pair_index[y * v + x] = i as u32;
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                if pair_index[x * v + y] == NO_BLOCK {
                    return Err(Error::NotADesign(format!(
                        "pair {{{x}, {y}}} is not covered"
                    )));
                }
            }
        }
        let mut blocks_through = vec![Vec::with_capacity((v - 1) / 2); v];
        for (i, block) in sorted.iter().enumerate() {
            for &p in block {
                blocks_through[p].push(i);
            }
        }
        Ok(TripleSystem {
            v,
            blocks: sorted,
            pair_index,
            blocks_through,
        })
    }

    /// Number of points.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks, `v(v-1)/6`.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Replication number `(v-1)/2`.
    pub fn r(&self) -> usize {
        (self.v - 1) / 2
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Indices (into [`blocks`](Self::blocks)) of the blocks through `x`.
    pub fn blocks_through(&self, x: Point) -> &[usize] {
        &self.blocks_through[x]
    }

    /// Index of the unique block containing the distinct points `x` and `y`.
    pub fn block_index(&self, x: Point, y: Point) -> Option<usize> {
        match self.pair_index[x * self.v + y] {
            NO_BLOCK => None,
            i => Some(i as usize),
        }
    }

    /// The third point of the block through `x` and `y`.
    pub fn third_point(&self, x: Point, y: Point) -> Option<Point> {
        let [a, b, c] = self.blocks[self.block_index(x, y)?];
        Some(a + b + c - x - y)
    }

    pub fn contains_block(&self, block: Block) -> bool {
        let mut block = block;
        block.sort_unstable();
        self.blocks.binary_search(&block).is_ok()
    }

    /// Applies the point bijection `map` (old point -> new point).
    pub fn relabel(&self, map: &[Point]) -> Result<TripleSystem> {
        if map.len() != self.v {
            return Err(Error::PreconditionViolated(format!(
                "relabelling has {} entries, system has {} points",
                map.len(),
                self.v
            )));
        }
        TripleSystem::from_blocks(
            self.v,
            self.blocks
                .iter()
                .map(|b| [map[b[0]], map[b[1]], map[b[2]]]),
        )
    }

    /// The text form: `v b` on the first line, then one block per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for TripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.blocks == other.blocks
    }
}

impl Eq for TripleSystem {}

impl std::hash::Hash for TripleSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
        self.blocks.hash(state);
    }
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripleSystem")
            .field("v", &self.v)
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.v, self.blocks.len())?;
        for [a, b, c] in &self.blocks {
            writeln!(f, "{a} {b} {c}")?;
        }
        Ok(())
    }
}

impl FromStr for TripleSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty system file".into()))?;
        let nums = parse_numbers(header)?;
        let [v, b] = nums[..] else {
            return Err(Error::Parse(format!("header `{header}` should be `v b`")));
        };
        let mut blocks = Vec::with_capacity(b);
        for line in lines {
            let nums = parse_numbers(line)?;
            let [x, y, z] = nums[..] else {
                return Err(Error::Parse(format!(
                    "block line `{line}` should hold three points"
                )));
            };
            blocks.push([x, y, z]);
        }
        if blocks.len() != b {
            return Err(Error::Parse(format!(
                "header announces {b} blocks, file has {}",
                blocks.len()
            )));
        }
        TripleSystem::from_blocks(v, blocks)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sts9_blocks() -> Vec<Block> {
        vec![
            [0, 1, 2],
            [0, 3, 6],
            [0, 4, 8],
            [0, 5, 7],
            [3, 4, 5],
            [1, 4, 7],
            [1, 5, 6],
            [1, 3, 8],
            [6, 7, 8],
            [2, 5, 8],
            [2, 3, 7],
            [2, 4, 6],
        ]
    }

    #[test]
    fn sts9_from_listed_blocks() {
        let s = TripleSystem::from_blocks(9, sts9_blocks()).unwrap();
        assert_eq!((s.v(), s.b(), s.r()), (9, 12, 4));
        for x in 0..9 {
            assert_eq!(s.blocks_through(x).len(), 4);
        }
        assert!(s.blocks().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn degenerate_orders() {
        let s3 = TripleSystem::from_blocks(3, [[0, 1, 2]]).unwrap();
        assert_eq!((s3.b(), s3.r()), (1, 1));
        let s1 = TripleSystem::from_blocks(1, []).unwrap();
        assert_eq!(s1.b(), 0);
    }

    #[test]
    fn rejects_broken_inputs() {
        // STS(7) without {0,1,3}: wrong count, and pair 0-1 uncovered.
        let fano: Vec<Block> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
        let missing: Vec<Block> = fano.iter().copied().filter(|b| *b != [0, 1, 3]).collect();
        assert!(matches!(
            TripleSystem::from_blocks(7, missing),
            Err(Error::NotADesign(_))
        ));

        let mut swapped = fano.clone();
        swapped[0] = [0, 1, 2];
        let err = TripleSystem::from_blocks(7, swapped).unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");

        assert!(TripleSystem::from_blocks(5, []).is_err());
        assert!(TripleSystem::from_blocks(3, [[0, 1, 3]]).is_err());
        assert!(TripleSystem::from_blocks(3, [[0, 1, 1]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = TripleSystem::from_blocks(9, sts9_blocks()).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("9 12\n0 1 2\n"));
        let back: TripleSystem = text.parse().unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn text_errors() {
        assert!(matches!("".parse::<TripleSystem>(), Err(Error::Parse(_))));
        assert!(matches!(
            "3 2\n0 1 2\n".parse::<TripleSystem>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "3 1\n0 1\n".parse::<TripleSystem>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "3 1\n0 1 x\n".parse::<TripleSystem>(),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn pair_lookup() {
        let s = TripleSystem::from_blocks(9, sts9_blocks()).unwrap();
        assert_eq!(s.third_point(0, 4), Some(8));
        assert_eq!(s.third_point(8, 0), Some(4));
        assert!(s.contains_block([7, 5, 0]));
        assert!(!s.contains_block([0, 1, 3]));
    }
}
