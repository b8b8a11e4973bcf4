use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::LN_2;

use crate::{Error, Result};

/// Below this many factors the binomial is summed term by term instead of
/// through log-gamma, which loses relative accuracy to cancellation when the
/// result is small compared with `ln Γ(n)`.
const DIRECT_SUM_TERMS: u64 = 64;

/// `log₂ C(n, k)`.
///
/// Exact integer arithmetic for `n ≤ 60`, a direct sum of logarithms when
/// `min(k, n-k)` is small, log-gamma otherwise.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::param("k", format!("{k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    if k == 0 {
        return Ok(0.0);
    }
    if n <= 60 {
        let exact = binomial_u128(n, k).expect("C(60, k) fits in u128");
        return Ok((exact as f64).log2());
    }
    if k <= DIRECT_SUM_TERMS {
        let ln: f64 = (1..=k)
            .map(|i| ((n - k + i) as f64).ln() - (i as f64).ln())
            .sum();
        return Ok(ln / LN_2);
    }
    let ln = ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0);
    Ok(ln / LN_2)
}

/// Exact `C(n, k)` when it fits in a `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        // c·(n-k+i)/i is C(n-k+i, i), always an integer
        c = c.checked_mul(n as u128 - k as u128 + i)? / i;
    }
    Some(c)
}

/// Exact `C(n, k)` as a big integer.
pub fn binomial_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 1..=k {
        c *= n - k + i;
        c /= i;
    }
    c
}

/// `log₂ x` for a big integer; `-∞` for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x
            .to_u64()
            .expect("fits in 64 bits")
            .to_f64()
            .unwrap()
            .log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top 64 bits");
    (top as f64).log2() + shift as f64
}

/// `log₂ Σ 2^xᵢ`, stable for very negative or very positive terms.
pub fn log2_sum_exp2<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64> + Clone,
{
    let max = terms.clone().into_iter().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || !max.is_finite() {
        return max;
    }
    let sum: f64 = terms.into_iter().map(|t| (t - max).exp2()).sum();
    max + sum.log2()
}
