use super::{Block, Quasigroup, TripleSystem};
use crate::Point;

/// Point index of `(q, level)` in both families.
pub fn bose_point(q: usize, level: usize) -> Point {
    q * 3 + level
}

/// Point index of `(q, level)` in [`skolem`]; the same flattening as Bose.
pub fn skolem_point(q: usize, level: usize) -> Point {
    q * 3 + level
}

/// Point index of ∞ in `skolem(n)`.
pub fn skolem_infinity(n: usize) -> Point {
    6 * n
}

/// Bose construction: an STS(6n+3) on `Z_{2n+1} × {0,1,2}`.
///
/// Blocks are `{(x,0),(x,1),(x,2)}` for every `x` and
/// `{(x,i),(y,i),(x∘y,i+1)}` for `x < y`, using [`Quasigroup::idempotent`].
///
/// # Panics
/// If `n == 0`.
pub fn bose(n: usize) -> TripleSystem {
    assert!(n >= 1, "bose(n) needs n >= 1");
    let q = Quasigroup::idempotent(n);
    let m = q.order();
    let mut blocks: Vec<Block> = (0..m)
        .map(|x| [0, 1, 2].map(|i| bose_point(x, i)))
        .collect();
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                blocks.push([
                    bose_point(x, i),
                    bose_point(y, i),
                    bose_point(q.op(x, y), (i + 1) % 3),
                ]);
            }
        }
    }
    TripleSystem::from_blocks(6 * n + 3, blocks)
        .expect("the Bose construction always yields an STS")
}

/// Skolem construction: an STS(6n+1) on `Z_{2n} × {0,1,2} ∪ {∞}`.
///
/// Blocks are `{(x,0),(x,1),(x,2)}` for `x < n`, `{∞,(x+n,i),(x,i+1)}` for
/// `x < n`, and `{(x,i),(y,i),(x∘y,i+1)}` for `x < y`, using
/// [`Quasigroup::half_idempotent`].
///
/// # Panics
/// If `n == 0`.
pub fn skolem(n: usize) -> TripleSystem {
    assert!(n >= 1, "skolem(n) needs n >= 1");
    let q = Quasigroup::half_idempotent(n);
    let m = q.order();
    let inf = skolem_infinity(n);
    let mut blocks: Vec<Block> = (0..n)
        .map(|x| [0, 1, 2].map(|i| skolem_point(x, i)))
        .collect();
    for i in 0..3 {
        for x in 0..n {
            blocks.push([inf, skolem_point(x + n, i), skolem_point(x, (i + 1) % 3)]);
        }
        for x in 0..m {
            for y in x + 1..m {
                blocks.push([
                    skolem_point(x, i),
                    skolem_point(y, i),
                    skolem_point(q.op(x, y), (i + 1) % 3),
                ]);
            }
        }
    }
    TripleSystem::from_blocks(6 * n + 1, blocks)
        .expect("the Skolem construction always yields an STS")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bose_one_has_idempotent_triples() {
        let s = bose(1);
        assert_eq!(s.v(), 9);
        for q in 0..3 {
            assert!(s.contains_block([bose_point(q, 0), bose_point(q, 1), bose_point(q, 2)]));
        }
    }

    #[test]
    fn bose_two_size() {
        let s = bose(2);
        assert_eq!((s.v(), s.b(), s.r()), (15, 35, 7));
    }

    #[test]
    fn skolem_one_infinity_block() {
        let s = skolem(1);
        assert_eq!(s.v(), 7);
        // {∞, (n+x, i), (x, i+1)} with n = 1, x = 0, i = 0.
        assert!(s.contains_block([6, skolem_point(1, 0), skolem_point(0, 1)]));
        assert!(s.contains_block([1, 3, 6]));
    }

    #[test]
    fn skolem_two_size() {
        let s = skolem(2);
        assert_eq!((s.v(), s.b(), s.r()), (13, 26, 6));
    }

    proptest! {
        #[test]
        fn families_are_steiner(n in 1usize..=8) {
            // from_blocks verifies λ = 1 exhaustively; check the counts too.
            let b = bose(n);
            prop_assert_eq!(b.v(), 6 * n + 3);
            prop_assert_eq!(b.b(), b.v() * (b.v() - 1) / 6);
            let s = skolem(n);
            prop_assert_eq!(s.v(), 6 * n + 1);
            prop_assert_eq!(s.b(), s.v() * (s.v() - 1) / 6);
            for x in 0..s.v() {
                prop_assert_eq!(s.blocks_through(x).len(), s.r());
            }
        }
    }
}
