//! GF(2) fast path: rows packed into `u64` words, XOR elimination.
//!
//! Produces the same RREF as the generic path; `rref_generic` is the oracle in
//! the tests below.

use super::field::FieldElem;

#[inline]
pub(crate) fn pack(row: &[FieldElem]) -> u64 {
    row.iter()
        .enumerate()
        .fold(0u64, |acc, (c, &b)| acc | ((b as u64 & 1) << c))
}

#[inline]
pub(crate) fn unpack(word: u64, n: usize, out: &mut [FieldElem]) {
    for (c, o) in out.iter_mut().enumerate().take(n) {
        *o = ((word >> c) & 1) as FieldElem;
    }
}

/// Reduces packed rows in place; the first `rank` words become the RREF rows.
pub(crate) fn rref_words(words: &mut [u64], n: usize) -> usize {
    let mut r = 0;
    for col in 0..n {
        if r == words.len() {
            break;
        }
        let bit = 1u64 << col;
        let Some(p) = (r..words.len()).find(|&i| words[i] & bit != 0) else {
            continue;
        };
        words.swap(p, r);
        let pivot = words[r];
        for (i, w) in words.iter_mut().enumerate() {
            if i != r && *w & bit != 0 {
                *w ^= pivot;
            }
        }
        r += 1;
    }
    r
}

/// Same contract as `Field::rref_generic`, for `n <= 64`.
pub(crate) fn rref_in_place(m: &mut [FieldElem], nrows: usize, n: usize) -> usize {
    debug_assert!(n <= 64);
    let mut words: Vec<u64> = (0..nrows).map(|i| pack(&m[i * n..(i + 1) * n])).collect();
    let rank = rref_words(&mut words, n);
    for (i, &w) in words.iter().enumerate().take(rank) {
        unpack(w, n, &mut m[i * n..(i + 1) * n]);
    }
    rank
}
