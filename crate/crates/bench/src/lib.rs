//! Fixtures shared by the `kernels` benchmarks.

use waring_core::{HeisPoint, HeisPolySeq, Poly};

/// `x ↦ (x, x^2, 0)` in `H_3`.
pub fn parabola() -> HeisPolySeq {
    HeisPolySeq::h3(&[0, 1], &[0, 0, 1], &[]).expect("integer coefficients")
}

/// A sequence in `H_5` with entries of degree up to 4.
pub fn quartic_h5() -> HeisPolySeq {
    HeisPolySeq::new(
        vec![Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 0, 1])],
        vec![Poly::from_ints(&[0, 0, 0, 1]), Poly::from_ints(&[0, 0, 0, 0, 1])],
        Poly::zero(),
    )
    .expect("integer coefficients")
}

/// Deterministic integral points with small coordinates.
pub fn points(n: usize, count: usize) -> Vec<HeisPoint> {
    (0..count as i64)
        .map(|i| {
            let a: Vec<i64> = (0..n as i64).map(|j| (i * 7 + j * 3) % 23 - 11).collect();
            let b: Vec<i64> = (0..n as i64).map(|j| (i * 5 + j * 11) % 19 - 9).collect();
            HeisPoint::from_ints(&a, &b, (i * 13) % 31 - 15)
        })
        .collect()
}
