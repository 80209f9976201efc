//! Fixtures shared by the benchmarks.

use quiverdeg::linalg::rat;
use quiverdeg::{RatMatrix, Window, WindowMultiset};

/// Deterministic dense integer matrix with entries in `-4..=4`.
pub fn dense_matrix(rows: usize, cols: usize) -> RatMatrix {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let entries = (0..rows * cols)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            rat((state % 9) as i64 - 4)
        })
        .collect();
    RatMatrix::new(rows, cols, entries).expect("shape")
}

/// Every canonical window of rank `n` with length at most `max_len`.
pub fn windows(n: usize, max_len: i64) -> Vec<Window> {
    (1..=n as i64)
        .flat_map(|i| (1..=max_len).map(move |len| Window::new(n, i, i + len - 1).expect("valid")))
        .collect()
}

/// The larger worked example pair on the rank-2 cyclic quiver.
pub fn example_pair() -> (WindowMultiset, WindowMultiset) {
    (
        WindowMultiset::from_pairs(2, &[(1, 1), (2, 8)]).expect("valid"),
        WindowMultiset::from_pairs(2, &[(1, 3), (2, 6)]).expect("valid"),
    )
}
