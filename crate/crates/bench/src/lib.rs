//! Shared inputs for the criterion benches.

use opineq_core::{HermitianOperator, RationalAngle};

/// A dense real symmetric operator with no special structure. Entries come
/// from a fixed trigonometric formula so every run sees the same matrix.
pub fn dense_symmetric(n: usize) -> HermitianOperator {
    let mut data = vec![0.0; n * n];
    for r in 0..n {
        for c in r..n {
            let x = ((r * 31 + c * 17 + 1) as f64).sin();
            data[r * n + c] = x;
            data[c * n + r] = x;
        }
    }
    HermitianOperator::from_real_symmetric(n, data).expect("symmetric by construction")
}

/// `p/q` with `p` the largest integer below `q/2` coprime to `q`.
pub fn generic_angle(q: u32) -> RationalAngle {
    let p = (1..=q / 2).rev().find(|&p| gcd(p, q) == 1).unwrap_or(1);
    RationalAngle::new(p, q).expect("valid angle")
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
