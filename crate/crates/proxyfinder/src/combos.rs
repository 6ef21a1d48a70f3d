//! Lexicographic k-combination enumeration shared by the exact solvers.

/// Iterates all size-`k` subsets of `0..n` as strictly increasing index
/// vectors, in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

pub(crate) fn combinations(n: usize, k: usize) -> Combinations {
    let state = if k <= n { Some((0..k).collect()) } else { None };
    Combinations { n, k, state }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.state.clone()?;
        let state = self.state.as_mut().unwrap();
        // Advance the rightmost index that still has room.
        let mut pos = self.k;
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            if state[pos] < self.n - (self.k - pos) {
                state[pos] += 1;
                for i in pos + 1..self.k {
                    state[i] = state[i - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
