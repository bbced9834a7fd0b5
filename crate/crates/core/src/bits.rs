//! Helpers for bit vectors packed into `u64` words (bit `i` lives in word `i / 64`,
//! position `i % 64`).

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// Packs a slice of 0/1 bytes.
pub fn pack(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(bits.len())];
    for (i, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub fn unpack(words: &[u64], len: usize) -> Vec<u8> {
    (0..len).map(|i| get(words, i)).collect()
}

#[inline]
pub fn get(words: &[u64], i: usize) -> u8 {
    ((words[i / 64] >> (i % 64)) & 1) as u8
}

#[inline]
pub fn set(words: &mut [u64], i: usize, v: u8) {
    let mask = 1u64 << (i % 64);
    if v & 1 == 1 {
        words[i / 64] |= mask;
    } else {
        words[i / 64] &= !mask;
    }
}

#[inline]
pub fn flip(words: &mut [u64], i: usize) {
    words[i / 64] ^= 1 << (i % 64);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub fn is_zero(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

/// Parity of the bitwise AND of two packed vectors.
#[inline]
pub fn and_parity(a: &[u64], b: &[u64]) -> u8 {
    let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
    (ones & 1) as u8
}

/// Hex string of a 0/1 slice, most significant bit first within each byte.
pub fn to_hex(bits: &[u8]) -> String {
    let bytes: Vec<u8> = bits
        .chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b & 1) << (7 - i)))
        })
        .collect();
    hex::encode(bytes)
}
