use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Maximum ground-set size a [`Subset`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set `{0, .., 63}` stored as a bitmask.
///
/// Indices are 0-based internally; [`Display`](fmt::Display) and parsing use
/// 1-based comma-separated lists such as `"1,3,4"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_ELEMENTS, "ground set too large for a bitmask");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Position of element `i` among the elements of `self`.
    pub fn rank_of(self, i: usize) -> Option<usize> {
        self.contains(i).then(|| (self.0 & ((1u64 << i) - 1)).count_ones() as usize)
    }

    /// Lexicographic comparison of the sorted index tuples.
    pub fn lex_cmp(self, o: Subset) -> Ordering {
        self.iter().cmp(o.iter())
    }

    /// Subsets of `self` in increasing bitmask order, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(Subset(s))
        })
    }

    /// `k`-subsets of `self` in lexicographic order.
    pub fn k_subsets(self, k: usize) -> Vec<Subset> {
        self.iter()
            .combinations(k)
            .map(Subset::from_indices)
            .collect()
    }

    /// Parses a 1-based list like `"1,3,4"`; the empty string is the empty set.
    pub fn parse(s: &str) -> Result<Subset, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut out = Subset::EMPTY;
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("bad subset element `{part}` in `{s}`"))?;
            if i == 0 || i > MAX_ELEMENTS {
                return Err(format!("subset element {i} out of range in `{s}`"));
            }
            out = out.with(i - 1);
        }
        Ok(out)
    }
}

/// `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Subset> {
    Subset::full(n).k_subsets(k)
}

/// Binomial coefficient, saturating on overflow.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return usize::MAX,
        };
    }
    acc
}

/// Lexicographic order of the sorted index tuples.
impl Ord for Subset {
    fn cmp(&self, other: &Subset) -> Ordering {
        self.lex_cmp(*other)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Subset) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.iter().map(|i| i + 1).join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Subset, D::Error> {
        let s = String::deserialize(d)?;
        Subset::parse(&s).map_err(serde::de::Error::custom)
    }
}
