//! Exact isomorphism testing by backtracking over point maps.

use super::invariants::{point_invariants, PointInvariant};
use super::TripleSystem;
use crate::{Error, Point, Result};

const UNMAPPED: usize = usize::MAX;

/// Backtracking search for point bijections `a -> b` carrying blocks to blocks.
///
/// Points of `a` are assigned in ascending order and candidate images are
/// tried in ascending order, so the first bijection found is the
/// lexicographically least one. Per-point invariants (Pasch counts and pair
/// cycle types) restrict candidates; every assignment propagates the forced
/// image of the third point of each already-mapped pair.
pub struct IsomorphismSearch<'a> {
    a: &'a TripleSystem,
    b: &'a TripleSystem,
    inv_a: Vec<PointInvariant>,
    inv_b: Vec<PointInvariant>,
    budget: Option<u64>,
    nodes: u64,
}

struct State {
    fwd: Vec<Point>,
    back: Vec<Point>,
    order: Vec<Point>,
}

impl<'a> IsomorphismSearch<'a> {
    pub fn new(a: &'a TripleSystem, b: &'a TripleSystem) -> Self {
        let (inv_a, inv_b) = if a.v() == b.v() {
            (point_invariants(a), point_invariants(b))
        } else {
            (Vec::new(), Vec::new())
        };
        IsomorphismSearch {
            a,
            b,
            inv_a,
            inv_b,
            budget: None,
            nodes: 0,
        }
    }

    /// Limits the number of search nodes; exceeding it yields `NodeLimit`.
    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.budget = Some(nodes);
        self
    }

    /// Search nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn compatible(&self) -> bool {
        if self.a.v() != self.b.v() {
            return false;
        }
        let mut x = self.inv_a.clone();
        let mut y = self.inv_b.clone();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    }

    /// The lexicographically least isomorphism, as `map[a_point] = b_point`.
    pub fn first(&mut self) -> Result<Option<Vec<Point>>> {
        let mut found = None;
        if self.compatible() {
            self.run(&mut |map| {
                found = Some(map.to_vec());
                false
            })?;
        }
        Ok(found)
    }

    /// Number of isomorphisms; for `a == b` this is the automorphism group order.
    pub fn count(&mut self) -> Result<u64> {
        let mut n = 0;
        if self.compatible() {
            self.run(&mut |_| {
                n += 1;
                true
            })?;
        }
        Ok(n)
    }

    fn run(&mut self, on_solution: &mut dyn FnMut(&[Point]) -> bool) -> Result<()> {
        let v = self.a.v();
        let mut st = State {
            fwd: vec![UNMAPPED; v],
            back: vec![UNMAPPED; v],
            order: Vec::with_capacity(v),
        };
        self.descend(&mut st, on_solution)?;
        Ok(())
    }

    /// Returns `Ok(false)` once the callback asks to stop.
    fn descend(
        &mut self,
        st: &mut State,
        on_solution: &mut dyn FnMut(&[Point]) -> bool,
    ) -> Result<bool> {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                return Err(Error::NodeLimit {
                    task: "isomorphism search",
                    budget,
                });
            }
        }
        let Some(x) = st.fwd.iter().position(|&y| y == UNMAPPED) else {
            return Ok(on_solution(&st.fwd));
        };
        for y in 0..self.b.v() {
            if st.back[y] != UNMAPPED || self.inv_a[x] != self.inv_b[y] {
                continue;
            }
            let mark = st.order.len();
            let keep_going = if self.assign(st, x, y) {
                self.descend(st, on_solution)?
            } else {
                true
            };
            for p in st.order.drain(mark..) {
                st.back[st.fwd[p]] = UNMAPPED;
                st.fwd[p] = UNMAPPED;
            }
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Maps `x -> y` and closes under third points; false on contradiction.
    /// Assignments made are recorded in `st.order` for the caller to undo.
    fn assign(&self, st: &mut State, x: Point, y: Point) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((p, q)) = queue.pop() {
            if st.fwd[p] != UNMAPPED || st.back[q] != UNMAPPED {
                if st.fwd[p] == q {
                    continue;
                }
                return false;
            }
            if self.inv_a[p] != self.inv_b[q] {
                return false;
            }
            for &p2 in &st.order {
                let q2 = st.fwd[p2];
                let pa = self.a.third_point(p, p2).expect("distinct points");
                let qb = self.b.third_point(q, q2).expect("distinct points");
                queue.push((pa, qb));
            }
            st.fwd[p] = q;
            st.back[q] = p;
            st.order.push(p);
        }
        true
    }
}

/// The lexicographically least isomorphism `a -> b`, if any.
pub fn are_isomorphic(a: &TripleSystem, b: &TripleSystem) -> Option<Vec<Point>> {
    IsomorphismSearch::new(a, b)
        .first()
        .expect("unbudgeted search cannot run out")
}

/// Order of the automorphism group.
pub fn automorphism_count(sys: &TripleSystem) -> u64 {
    IsomorphismSearch::new(sys, sys)
        .count()
        .expect("unbudgeted search cannot run out")
}
