//! Fixed-width bitsets stored as `u64` word slices.
//!
//! Graphs keep one row per vertex in a flat word buffer, and the search
//! kernels keep candidate domains the same way, so these helpers work on
//! plain slices rather than an owning type.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn test(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(bits: &mut [u64], i: usize) {
    bits[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(bits: &mut [u64], i: usize) {
    bits[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(bits: &[u64]) -> bool {
    bits.iter().all(|&w| w == 0)
}

/// Lowest set bit, if any.
#[inline]
pub fn first(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline]
pub fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= s;
    }
}

#[inline]
pub fn and_not_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= !s;
    }
}

#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Sets bits `0..n` and leaves the padding bits of the last word clear.
pub fn fill(bits: &mut [u64], n: usize) {
    for (i, w) in bits.iter_mut().enumerate() {
        let lo = i * 64;
        *w = if n >= lo + 64 {
            u64::MAX
        } else if n > lo {
            (1u64 << (n - lo)) - 1
        } else {
            0
        };
    }
}

/// Iterator over the set bits of a word slice, in increasing order.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some((self.idx - 1) * 64 + t);
            }
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
            self.idx += 1;
        }
    }
}

#[inline]
pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones { words, idx: 0, cur: 0 }
}

pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut v = vec![0; words_for(n)];
    for i in items {
        set(&mut v, i);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_roundtrip() {
        let items = [0, 5, 63, 64, 65, 127, 200];
        let b = from_indices(201, items);
        assert_eq!(ones(&b).collect::<Vec<_>>(), items);
        assert_eq!(count(&b), items.len());
        assert_eq!(first(&b), Some(0));
    }

    #[test]
    fn fill_respects_length() {
        let mut b = vec![0; 2];
        fill(&mut b, 70);
        assert_eq!(count(&b), 70);
        assert!(!test(&b, 70));
        fill(&mut b, 64);
        assert_eq!(b, vec![u64::MAX, 0]);
    }
}
