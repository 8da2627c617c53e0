//! Helpers over packed `u64` rows. Bit `i` of a row lives in word `i / 64`
//! at position `i % 64`.

#[inline]
pub fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn assign(row: &mut [u64], i: usize, value: bool) {
    if value {
        set(row, i)
    } else {
        clear(row, i)
    }
}

pub fn popcount(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// `|a XOR b|` without materializing the XOR.
pub fn xor_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Iterator over the indices of set bits, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * 64 + bit)
    }
}

pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones {
        words,
        index: 0,
        current: words.first().copied().unwrap_or(0),
    }
}

/// In-place transpose of a 64x64 bit block: bit `c` of `block[r]` moves to
/// bit `r` of `block[c]`.
pub fn transpose64(block: &mut [u64; 64]) {
    let mut width = 32;
    let mut mask: u64 = 0x0000_0000_FFFF_FFFF;
    while width != 0 {
        let mut k = 0;
        while k < 64 {
            // swap the upper-right and lower-left sub-blocks of size `width`
            let t = ((block[k] >> width) ^ block[k + width]) & mask;
            block[k] ^= t << width;
            block[k + width] ^= t;
            k = (k + width + 1) & !width;
        }
        width >>= 1;
        mask ^= mask << width;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_iterates_in_order() {
        let mut row = vec![0u64; 3];
        for i in [0, 5, 63, 64, 130] {
            set(&mut row, i);
        }
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 5, 63, 64, 130]);
        assert_eq!(popcount(&row), 5);
        clear(&mut row, 63);
        assert!(!get(&row, 63));
        assert_eq!(ones(&[]).count(), 0);
    }

    #[test]
    fn transpose_matches_naive() {
        let mut block = [0u64; 64];
        let mut state = 0x1234_5678_9abc_def0u64;
        for w in block.iter_mut() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            *w = state;
        }
        let original = block;
        transpose64(&mut block);
        for r in 0..64 {
            for c in 0..64 {
                assert_eq!(original[r] >> c & 1, block[c] >> r & 1, "r={r} c={c}");
            }
        }
    }
}
