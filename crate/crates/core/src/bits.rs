//! Word-packed bit helpers shared by the Pauli and tableau code.

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, v: bool) {
    let m = 1u64 << (i % 64);
    if v {
        words[i / 64] |= m;
    } else {
        words[i / 64] &= !m;
    }
}

/// Symplectic form of two Pauli operators: `true` when they anticommute.
#[inline]
pub(crate) fn anticommute(ax: &[u64], az: &[u64], bx: &[u64], bz: &[u64]) -> bool {
    let mut acc = 0u32;
    for w in 0..ax.len() {
        acc ^= ((ax[w] & bz[w]) ^ (az[w] & bx[w])).count_ones();
    }
    acc & 1 == 1
}

/// Exponent `e` (mod 4) such that `σ(a)·σ(b) = i^e σ(a ⊕ b)` for phase-free
/// operators, with `(x, z) = (1, 1)` read as `Y`.
#[inline]
pub(crate) fn product_exponent(ax: &[u64], az: &[u64], bx: &[u64], bz: &[u64]) -> u8 {
    let mut plus = 0u32;
    let mut minus = 0u32;
    for w in 0..ax.len() {
        let (a_x, a_y, a_z) = (ax[w] & !az[w], ax[w] & az[w], !ax[w] & az[w]);
        let (b_x, b_y, b_z) = (bx[w] & !bz[w], bx[w] & bz[w], !bx[w] & bz[w]);
        plus += ((a_x & b_y) | (a_y & b_z) | (a_z & b_x)).count_ones();
        minus += ((a_x & b_z) | (a_y & b_x) | (a_z & b_y)).count_ones();
    }
    ((plus + 3 * minus) % 4) as u8
}
