//! Shared inputs for the benchmarks.

use hexfourier::HexPoint;

/// `count` points spread over `[-1, 1)^2` by a two-dimensional Weyl sequence.
pub fn sample_points(count: usize) -> Vec<HexPoint> {
    let (a, b) = (0.754_877_666_246_692_7, 0.569_840_290_998_053_2);
    (0..count)
        .map(|i| {
            let k = i as f64 + 0.5;
            HexPoint::new(2.0 * (k * a).fract() - 1.0, 2.0 * (k * b).fract() - 1.0)
        })
        .collect()
}
