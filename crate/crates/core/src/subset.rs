//! Bitmask subsets of the vertex set `[m]` and of the color set `[r]`.
//!
//! Element `j` (1-based) is stored in bit `j - 1`.

use std::fmt;

/// Largest vertex (or color) count representable in a mask.
pub const MASK_BITS: usize = 32;

macro_rules! bitset {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(pub u32);

        impl $name {
            pub const EMPTY: $name = $name(0);

            /// `{1, ..., n}`.
            pub fn full(n: usize) -> Self {
                debug_assert!(n <= MASK_BITS);
                if n == MASK_BITS {
                    $name(u32::MAX)
                } else {
                    $name((1u32 << n) - 1)
                }
            }

            pub fn singleton(j: usize) -> Self {
                debug_assert!((1..=MASK_BITS).contains(&j));
                $name(1 << (j - 1))
            }

            pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
                elems.into_iter().fold($name(0), |acc, j| acc.with(j))
            }

            pub fn bits(self) -> u32 {
                self.0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn contains(self, j: usize) -> bool {
                (1..=MASK_BITS).contains(&j) && self.0 & (1 << (j - 1)) != 0
            }

            pub fn with(self, j: usize) -> Self {
                $name(self.0 | (1 << (j - 1)))
            }

            pub fn without(self, j: usize) -> Self {
                $name(self.0 & !(1 << (j - 1)))
            }

            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            /// Largest element, or 0 for the empty set.
            pub fn max_element(self) -> usize {
                (32 - self.0.leading_zeros()) as usize
            }

            /// Elements in ascending order.
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut rest = self.0;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let j = rest.trailing_zeros() as usize + 1;
                        rest &= rest - 1;
                        Some(j)
                    }
                })
            }

            pub fn to_vec(self) -> Vec<usize> {
                self.iter().collect()
            }

            /// Number of elements strictly below `j`.
            pub fn count_below(self, j: usize) -> usize {
                (self.0 & ((1u32 << (j - 1)) - 1)).count_ones() as usize
            }

            /// All subsets of `self`, in ascending mask order.
            pub fn subsets(self) -> impl Iterator<Item = Self> {
                let full = self.0;
                let mut next = Some(0u32);
                std::iter::from_fn(move || {
                    let cur = next?;
                    next = if cur == full {
                        None
                    } else {
                        Some((cur.wrapping_sub(full)) & full)
                    };
                    Some($name(cur))
                })
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (k, j) in self.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{j}")?;
                }
                write!(f, "}}")
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(self, f)
            }
        }
    };
}

bitset!(VertexSubset, "A subset of the vertex set `[m]` (ω, σ, τ).");
bitset!(ColorSet, "A subset of the color set `[r]` (L, I).");

/// Subsets of `[n]` ordered by cardinality, then by mask.
pub fn subsets_by_size(n: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (0..(1u64 << n)).map(|b| b as u32).collect();
    all.sort_by_key(|&b| (b.count_ones(), b));
    all
}
