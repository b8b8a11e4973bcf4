//! Brute-force oracles shared by the integration suites. Nothing here goes
//! through the weight-sector code paths.

#![allow(dead_code)]

use entangle::qstate::{AmplitudeMatrix, Complex64};
use nalgebra::DMatrix;

/// Every n-bit string with its probability `a^{2(n-|x|)} b^{2|x|}`, computed
/// one string at a time.
pub fn enumerate_strings(a2: f64, n: u32) -> Vec<(u32, f64)> {
    (0..1u32 << n)
        .map(|x| {
            let ones = x.count_ones();
            let mut p = 1.0;
            for bit in 0..n {
                p *= if x >> bit & 1 == 1 { 1.0 - a2 } else { a2 };
            }
            (ones, p)
        })
        .collect()
}

/// Sector probabilities by summing [`enumerate_strings`].
pub fn enumerated_sector_probs(a2: f64, n: u32) -> Vec<f64> {
    let mut probs = vec![0.0; n as usize + 1];
    for (w, p) in enumerate_strings(a2, n) {
        probs[w as usize] += p;
    }
    probs
}

/// Best mass over every subset of at most `budget` strings, by exhaustive
/// search. Only sensible for very small `n`.
pub fn exhaustive_best_mass(a2: f64, n: u32, budget: usize) -> f64 {
    let probs: Vec<f64> = enumerate_strings(a2, n)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let mut best = 0.0_f64;
    let mut stack = vec![(0usize, 0usize, 0.0f64)];
    while let Some((next, used, mass)) = stack.pop() {
        best = best.max(mass);
        if used == budget {
            continue;
        }
        for (i, p) in probs.iter().enumerate().skip(next) {
            stack.push((i + 1, used + 1, mass + p));
        }
    }
    best
}

/// `n` copies of `√a2|00⟩ + √(1-a2)|11⟩` as a dense `2^n × 2^n` amplitude
/// matrix, built by Kronecker products of the single-copy matrix.
pub fn n_copy_matrix(a2: f64, n: u32) -> DMatrix<Complex64> {
    let mut one = DMatrix::<Complex64>::zeros(2, 2);
    one[(0, 0)] = Complex64::new(a2.sqrt(), 0.0);
    one[(1, 1)] = Complex64::new((1.0 - a2).sqrt(), 0.0);
    let mut m = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for _ in 0..n {
        m = m.kronecker(&one);
    }
    m
}

/// Project Alice's strings onto weight `k` and renormalize.
pub fn project_weight(m: &DMatrix<Complex64>, k: u32) -> AmplitudeMatrix {
    let projected = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if (i as u32).count_ones() == k {
            m[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    AmplitudeMatrix::normalized(projected).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1u64, |c, i| c * (n - k + i) / i)
}

/// Reference binary entropies to 40 significant digits.
pub const H_0_1: f64 = 0.468_995_593_589_281_221_253_589_330_383_320_4;
pub const H_0_25: f64 = 0.811_278_124_459_132_863_909_695_792_039_137_6;
pub const H_0_3: f64 = 0.881_290_899_230_692_618_224_819_224_242_763_7;
pub const H_0_9: f64 = H_0_1;
