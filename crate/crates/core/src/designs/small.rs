use super::{Block, TripleSystem};
use crate::{Error, Result};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["sts7", "sts9", "sts13-1", "sts13-2"];

const STS9: [Block; 12] = [
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
];

const STS13_REMOVED: [Block; 4] = [[0, 1, 4], [0, 2, 7], [2, 4, 9], [1, 7, 9]];
const STS13_ADDED: [Block; 4] = [[2, 7, 9], [1, 4, 9], [0, 1, 7], [0, 2, 4]];

/// Develops each base block under `i -> i+1 (mod v)`.
///
/// Translates that coincide (short orbits such as `{0, v/3, 2v/3}`) are
/// merged, so the result is checked against λ = 1 like any other input.
pub fn cyclic_sts(v: usize, base_blocks: &[Block]) -> Result<TripleSystem> {
    if v == 0 {
        return Err(Error::NotADesign("v must be positive".into()));
    }
    if let Some(b) = base_blocks.iter().find(|b| b.iter().any(|&p| p >= v)) {
        return Err(Error::NotADesign(format!(
            "base block {b:?} has a point outside 0..{v}"
        )));
    }
    let mut blocks: Vec<Block> = base_blocks
        .iter()
        .flat_map(|b| {
            (0..v).map(move |i| {
                let mut t = b.map(|p| (p + i) % v);
                t.sort_unstable();
                t
            })
        })
        .collect();
    blocks.sort_unstable();
    blocks.dedup();
    TripleSystem::from_blocks(v, blocks)
}

/// The small systems used throughout: `sts7`, `sts9`, `sts13-1`, `sts13-2`.
pub fn builtin(name: &str) -> Result<TripleSystem> {
    match name {
        "sts7" => cyclic_sts(7, &[[0, 1, 3]]),
        "sts9" => TripleSystem::from_blocks(9, STS9),
        "sts13-1" => cyclic_sts(13, &[[0, 1, 4], [0, 2, 7]]),
        "sts13-2" => {
            let base = cyclic_sts(13, &[[0, 1, 4], [0, 2, 7]])?;
            let mut removed = STS13_REMOVED;
            removed.iter_mut().for_each(|b| b.sort_unstable());
            let kept = base
                .blocks()
                .iter()
                .copied()
                .filter(|b| !removed.contains(b));
            TripleSystem::from_blocks(13, kept.chain(STS13_ADDED))
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}
