//! Compact subsets of a ground set with at most 32 positions.
//!
//! A `Subset` is a bitmask keyed by ground-set position. All set families in
//! this crate (bases, circuits, cycles as edge sets) are stored this way so
//! that equality and containment are single machine operations.

use std::fmt;

/// Hard cap on ground-set / edge-set size across the crate.
pub const MAX_ELEMENTS: usize = 32;

/// A subset of positions `0..n` for some ground set with `n <= 32`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Full set on `n` positions.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Subset {
        let mut m = 0u32;
        for i in iter {
            debug_assert!(i < MAX_ELEMENTS);
            m |= 1 << i;
        }
        Subset(m)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Subset {
        Subset(self.0 ^ other.0)
    }

    pub fn insert(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    /// Complement within a ground set of `n` positions.
    pub fn complement(self, n: usize) -> Subset {
        Subset(Self::full(n).0 & !self.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of `base`, in increasing mask order.
pub fn subsets_of(base: Subset) -> impl Iterator<Item = Subset> {
    // Standard submask walk, reordered to ascend: enumerate k = (sub - base) & base.
    let b = base.0;
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == b {
            None
        } else {
            Some(cur.wrapping_sub(b) & b)
        };
        Some(Subset(cur))
    })
}

/// All `k`-element subsets of `base`, in increasing mask order.
pub fn k_subsets_of(base: Subset, k: usize) -> Vec<Subset> {
    let items: Vec<usize> = base.iter().collect();
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(Subset::from_indices(idx.iter().map(|&i| items[i])));
        // advance combination
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All subsets of `base` of size at most `k`, in increasing mask order.
pub fn subsets_up_to(base: Subset, k: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    for s in 0..=k {
        out.extend(k_subsets_of(base, s));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = Subset::from_indices([0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2));
        assert!(!s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(s.complement(6), Subset::from_indices([1, 3, 4]));
    }

    #[test]
    fn subset_walks() {
        let base = Subset::from_indices([1, 3, 4]);
        let all: Vec<Subset> = subsets_of(base).collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let pairs = k_subsets_of(base, 2);
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.len() == 2 && p.is_subset_of(base)));
        assert_eq!(subsets_up_to(base, 1).len(), 4);
    }

    #[test]
    fn full_set_boundaries() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(32).len(), 32);
    }
}
