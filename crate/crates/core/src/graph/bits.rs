//! Word-level helpers for the per-vertex adjacency bitsets.

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[inline]
pub(crate) fn test(row: &[u64], i: usize) -> bool {
    row[i / WORD] >> (i % WORD) & 1 == 1
}

#[inline]
pub(crate) fn set(row: &mut [u64], i: usize) {
    row[i / WORD] |= 1 << (i % WORD);
}

#[inline]
pub(crate) fn clear(row: &mut [u64], i: usize) {
    row[i / WORD] &= !(1 << (i % WORD));
}

/// Sets bits `lo..hi`.
pub(crate) fn set_range(row: &mut [u64], lo: usize, hi: usize) {
    let mut i = lo;
    while i < hi {
        let w = i / WORD;
        let off = i % WORD;
        let take = (WORD - off).min(hi - i);
        let mask = if take == WORD {
            u64::MAX
        } else {
            ((1u64 << take) - 1) << off
        };
        row[w] |= mask;
        i += take;
    }
}

pub(crate) fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates the set bit positions of `row` in increasing order.
pub(crate) fn iter(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            }
        })
    })
}
