use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A subset of an ordered ground, stored as a fixed-width membership word.
/// Bit `i` corresponds to the `i`-th element in the ground order. Members of
/// a family and the parameter sets handed to trace operations are the same
/// type; only the ambient width must match.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    len: usize,
    blocks: Vec<u64>,
}

fn block_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset {
            len,
            blocks: vec![0; block_count(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Subset {
            len,
            blocks: vec![!0u64; block_count(len)],
        };
        s.mask_tail();
        s
    }

    /// Clears bits at positions `>= len` in the last block so that derived
    /// `Eq`/`Hash` stay canonical.
    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        if self.len == 0 {
            self.blocks.clear();
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Subset::empty(len);
        for i in indices {
            assert!(i < len, "index {i} out of range for width {len}");
            s.blocks[i / 64] |= 1u64 << (i % 64);
        }
        s
    }

    /// Builds a subset of width `len <= 64` from the low `len` bits of `mask`,
    /// bit `i` of the mask giving membership of position `i`.
    pub fn from_mask_u64(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut s = Subset {
            len,
            blocks: vec![mask],
        };
        s.mask_tail();
        s
    }

    pub fn mask_u64(&self) -> Option<u64> {
        if self.len <= 64 {
            Some(self.blocks.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// Parses a 0/1 membership word such as `"0110"`.
    pub fn from_word(word: &str) -> Result<Self> {
        let mut s = Subset::empty(word.len());
        for (i, c) in word.chars().enumerate() {
            match c {
                '0' => {}
                '1' => s.blocks[i / 64] |= 1u64 << (i % 64),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "membership word may contain only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(s)
    }

    pub fn word(&self) -> String {
        (0..self.len).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for width {}", self.len);
        (self.blocks[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        if value {
            self.blocks[i / 64] |= 1u64 << (i % 64);
        } else {
            self.blocks[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn with_bit(mut self, i: usize, value: bool) -> Self {
        self.set_bit(i, value);
        self
    }

    /// Number of elements in the subset.
    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut bits = block;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(bi * 64 + t)
                }
            })
        })
    }

    fn zip_blocks(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "subset width mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Subset {
            len: self.len,
            blocks,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a | b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a ^ b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_blocks(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = Subset {
            len: self.len,
            blocks: self.blocks.iter().map(|&b| !b).collect(),
        };
        s.mask_tail();
        s
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "subset width mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn hamming(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "subset width mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Reads off the bits at the given positions, in order, as a new word of
    /// width `positions.len()`. This is the membership word of `self ∩ A`
    /// over the sub-ground `A` described by `positions`.
    pub fn project(&self, positions: &[usize]) -> Subset {
        let mut out = Subset::empty(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.bit(p) {
                out.blocks[j / 64] |= 1u64 << (j % 64);
            }
        }
        out
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic in the membership word: at the first differing position the
/// absent side sorts first, matching string order on `word()`.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            o => return o,
        }
        for (&a, &b) in self.blocks.iter().zip(&other.blocks) {
            let diff = a ^ b;
            if diff != 0 {
                let p = diff.trailing_zeros();
                return if (a >> p) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({})", self.word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_round_trip() {
        let s = Subset::from_word("01101").unwrap();
        assert_eq!(s.word(), "01101");
        assert_eq!(s.count(), 3);
        assert_eq!(s.iter_indices().collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn rejects_non_binary() {
        assert!(Subset::from_word("01x").is_err());
    }

    #[test]
    fn ordering_matches_word_order() {
        let a = Subset::from_word("010").unwrap();
        let b = Subset::from_word("100").unwrap();
        // "010" < "100" as strings.
        assert!(a < b);
    }

    #[test]
    fn project_reads_positions_in_order() {
        let s = Subset::from_word("10110").unwrap();
        assert_eq!(s.project(&[0, 2, 4]).word(), "110");
        assert_eq!(s.project(&[]).word(), "");
    }

    #[test]
    fn wide_words_cross_block_boundary() {
        let n = 130;
        let s = Subset::from_indices(n, [0, 63, 64, 129]);
        assert_eq!(s.count(), 4);
        assert!(s.bit(64) && s.bit(129) && !s.bit(65));
        assert_eq!(s.complement().count(), n - 4);
        assert_eq!(s.symmetric_difference(&s), Subset::empty(n));
    }
}
