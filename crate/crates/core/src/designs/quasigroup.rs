/// A finite quasigroup stored as its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasigroup {
    order: usize,
    table: Vec<usize>,
}

impl Quasigroup {
    /// The idempotent commutative quasigroup on Z_{2n+1}:
    /// `x∘y = (x+y)(n+1) mod (2n+1)`, i.e. `(x+y)/2` in that ring.
    pub fn idempotent(n: usize) -> Self {
        let m = 2 * n + 1;
        Self::from_fn(m, |x, y| (x + y) * (n + 1) % m)
    }

    /// The half-idempotent commutative quasigroup on Z_{2n}: with
    /// `s = (x+y) mod 2n`, `x∘y = s/2` for even `s` and `n+(s-1)/2` otherwise.
    pub fn half_idempotent(n: usize) -> Self {
        let m = 2 * n;
        Self::from_fn(m, |x, y| {
            let s = (x + y) % m;
            if s.is_multiple_of(2) {
                s / 2
            } else {
                n + (s - 1) / 2
            }
        })
    }

    fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order * order)
            .map(|i| f(i / order, i % order))
            .collect();
        Quasigroup { order, table }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `x∘y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// Every row and every column is a permutation of `0..order`.
    pub fn is_latin(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|j| {
                let (a, b) = (self.op(i, j), self.op(j, i));
                a < n
                    && b < n
                    && !std::mem::replace(&mut row[a], true)
                    && !std::mem::replace(&mut col[b], true)
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.op(x, y) == self.op(y, x)))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.order).all(|x| self.op(x, x) == x)
    }

    /// For even order `2n`: `x∘x = x` for `x < n` and `(n+k)∘(n+k) = k`.
    pub fn is_half_idempotent(&self) -> bool {
        let n = self.order / 2;
        self.order.is_multiple_of(2)
            && (0..n).all(|k| self.op(k, k) == k && self.op(n + k, n + k) == k)
    }
}
