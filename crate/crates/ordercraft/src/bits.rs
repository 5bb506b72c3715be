//! Fixed-width bit rows used for the dense relation matrices.

pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub fn get(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

pub fn set(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

pub fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}
