use alloc::vec::Vec;

/// Subsets of a bit-set universe in canonical order: by size, then
/// lexicographically by their ascending element lists.
///
/// This order fixes witness identity across the crate: the empty set comes
/// first, then singletons `{a} < {b}` for `a < b`, then `{0,3} < {1,2}`.
#[derive(Debug, Clone)]
pub struct CanonicalSubsets {
    elements: Vec<usize>,
    /// Indices into `elements` of the current combination.
    idx: Vec<usize>,
    size: usize,
    done: bool,
}

impl CanonicalSubsets {
    pub fn new(universe: u64) -> Self {
        let elements: Vec<usize> = (0..64).filter(|b| universe >> b & 1 == 1).collect();
        CanonicalSubsets {
            elements,
            idx: Vec::new(),
            size: 0,
            done: false,
        }
    }

    fn advance(&mut self) {
        let m = self.elements.len();
        let k = self.size;
        // Next combination of the same size, if any.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if self.idx[pos] < m - k + pos {
                self.idx[pos] += 1;
                for q in pos + 1..k {
                    self.idx[q] = self.idx[q - 1] + 1;
                }
                return;
            }
        }
        if k == m {
            self.done = true;
            return;
        }
        self.size += 1;
        self.idx = (0..self.size).collect();
    }
}

impl Iterator for CanonicalSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self
            .idx
            .iter()
            .fold(0u64, |m, &i| m | 1u64 << self.elements[i]);
        self.advance();
        Some(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(mask: u64) -> impl Iterator<Item = usize> {
        (0..64).filter(move |b| mask >> b & 1 == 1)
    }

    fn as_lists(universe: u64) -> Vec<Vec<usize>> {
        CanonicalSubsets::new(universe)
            .map(|m| members(m).collect())
            .collect()
    }

    #[test]
    fn order_is_size_then_lexicographic() {
        let got = as_lists(0b1111);
        let mut want: Vec<Vec<usize>> = (0u64..16).map(|m| members(m).collect()).collect();
        want.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(got, want);
        assert_eq!(got[0], Vec::<usize>::new());
        assert_eq!(got[5], [0, 1]);
    }

    #[test]
    fn sparse_universe_and_empty_universe() {
        assert_eq!(as_lists(0), [Vec::<usize>::new()]);
        assert_eq!(as_lists(0b10100), [vec![], vec![2], vec![4], vec![2, 4]]);
        assert_eq!(CanonicalSubsets::new((1 << 10) - 1).count(), 1024);
    }
}
