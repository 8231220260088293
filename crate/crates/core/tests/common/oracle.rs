//! Brute-force oracle for the defining-set searches on small systems.
//!
//! The oracle enumerates all `3^v` colour strings, keeps the proper ones,
//! and for each point set `S` groups the proper colourings by their
//! restriction to `S`: `S` defines `c` exactly when `c` is alone in its
//! group. It shares no code with the lattice search beyond `TripleSystem`.

use std::collections::HashMap;

use sts_core::coloring::ColorPattern;
use sts_core::defining::SearchKind;
use sts_core::designs::TripleSystem;

pub struct Oracle {
    v: usize,
    colorings: Vec<Vec<u8>>,
    /// `defines[s][i]`: subset `s` defines colouring `i`.
    defines: Vec<Vec<bool>>,
}

impl Oracle {
    pub fn new(sys: &TripleSystem) -> Self {
        let v = sys.v();
        let mut colorings = Vec::new();
        for code in 0..3usize.pow(v as u32) {
            let mut x = code;
            let col: Vec<u8> = (0..v)
                .map(|_| {
                    let c = (x % 3) as u8;
                    x /= 3;
                    c
                })
                .collect();
            if sys
                .blocks()
                .iter()
                .all(|b| !(col[b[0]] == col[b[1]] && col[b[1]] == col[b[2]]))
            {
                colorings.push(col);
            }
        }
        let defines = (0..1usize << v)
            .map(|s| {
                let key = |c: &Vec<u8>| {
                    (0..v)
                        .filter(|p| s >> p & 1 == 1)
                        .map(|p| c[p])
                        .collect::<Vec<u8>>()
                };
                let mut groups: HashMap<Vec<u8>, usize> = HashMap::new();
                for c in &colorings {
                    *groups.entry(key(c)).or_default() += 1;
                }
                colorings.iter().map(|c| groups[&key(c)] == 1).collect()
            })
            .collect();
        Oracle {
            v,
            colorings,
            defines,
        }
    }

    pub fn minimal(&self, s: usize, i: usize) -> bool {
        self.defines[s][i]
            && (0..self.v)
                .filter(|p| s >> p & 1 == 1)
                .all(|p| !self.defines[s ^ (1 << p)][i])
    }

    pub fn pattern(&self, i: usize) -> ColorPattern {
        let mut sizes = [0; 3];
        self.colorings[i]
            .iter()
            .for_each(|&c| sizes[c as usize] += 1);
        ColorPattern::from_sizes(sizes)
    }

    /// The tie-broken answer: (size order, sorted points, renamed colours on
    /// the set), and the witness renamed the same way.
    pub fn best(&self, kind: SearchKind, pattern: Option<ColorPattern>) -> (Vec<usize>, String) {
        let mut best: Option<((isize, Vec<usize>, Vec<u8>), String)> = None;
        for i in 0..self.colorings.len() {
            if pattern.is_some_and(|p| self.pattern(i) != p) {
                continue;
            }
            for s in 0..1usize << self.v {
                let ok = match kind {
                    SearchKind::Minimum => self.defines[s][i],
                    SearchKind::LargestMinimal => self.minimal(s, i),
                };
                if !ok {
                    continue;
                }
                let points: Vec<usize> = (0..self.v).filter(|p| s >> p & 1 == 1).collect();
                let mut rename = [u8::MAX; 3];
                let mut next = 0;
                for &p in &points {
                    let c = self.colorings[i][p] as usize;
                    if rename[c] == u8::MAX {
                        rename[c] = next;
                        next += 1;
                    }
                }
                for c in 0..3 {
                    if rename[c] == u8::MAX {
                        rename[c] = next;
                        next += 1;
                    }
                }
                let renamed: Vec<u8> = self.colorings[i]
                    .iter()
                    .map(|&c| rename[c as usize])
                    .collect();
                let on_set: Vec<u8> = points.iter().map(|&p| renamed[p]).collect();
                let size = match kind {
                    SearchKind::Minimum => points.len() as isize,
                    SearchKind::LargestMinimal => -(points.len() as isize),
                };
                let key = (size, points, on_set);
                let witness: String = renamed
                    .iter()
                    .map(|&c| ['R', 'G', 'Y'][c as usize])
                    .collect();
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, witness));
                }
            }
        }
        let ((_, points, _), witness) = best.expect("some colouring is defined by all points");
        (points, witness)
    }
}
