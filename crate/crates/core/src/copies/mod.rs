//! `n` copies of `a|00⟩ + b|11⟩`, grouped by Hamming weight.
//!
//! `(a|00⟩ + b|11⟩)^⊗n = Σ_x a^{n-|x|} b^{|x|} |x⟩_A|x⟩_B`, so every string in
//! the weight-`k` sector carries the same amplitude. Keeping one number per
//! sector instead of one per string makes `n` in the thousands exact and
//! cheap. All per-sector quantities are kept as base-2 logarithms.

mod binomial;

pub use binomial::{binomial_exact, binomial_u128, log2_biguint, log2_sum_exp2, log_binomial};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::qstate::binary_entropy;
use crate::{Error, Result};

/// Largest supported copy count.
pub const MAX_COPIES: u64 = 1_000_000;

/// `count · log₂ p` with `0 · (-∞) = 0`.
fn scaled_log2(count: u64, p: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 * p.log2()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSectorState {
    n: u64,
    a2: f64,
    b2: f64,
    log2_mult: Vec<f64>,
    log2_string: Vec<f64>,
    log2_prob: Vec<f64>,
    prob: Vec<f64>,
}

/// `n` copies of `a|00⟩ + b|11⟩` given the amplitude `a`.
pub fn expand_copies(a: f64, n: u64) -> Result<WeightSectorState> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::param("a", format!("{a} is outside [0, 1]")));
    }
    WeightSectorState::from_a2(a * a, n)
}

impl WeightSectorState {
    /// `n` copies given the squared amplitude `a²`, the probability of `|00⟩`.
    pub fn from_a2(a2: f64, n: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a2) {
            return Err(Error::param("a2", format!("{a2} is outside [0, 1]")));
        }
        if n == 0 || n > MAX_COPIES {
            return Err(Error::param(
                "n",
                format!("{n} is outside [1, {MAX_COPIES}]"),
            ));
        }
        let b2 = 1.0 - a2;
        let sectors = (n + 1) as usize;
        let mut log2_mult = Vec::with_capacity(sectors);
        let mut raw_string = Vec::with_capacity(sectors);
        for k in 0..=n {
            log2_mult.push(log_binomial(n, k)?);
            raw_string.push(scaled_log2(n - k, a2) + scaled_log2(k, b2));
        }
        let raw_prob: Vec<f64> = log2_mult
            .iter()
            .zip(&raw_string)
            .map(|(m, s)| m + s)
            .collect();
        // (a² + b²)^n differs from one only by rounding; divide it out anyway
        let log2_norm = log2_sum_exp2(raw_prob.iter().copied());
        let log2_prob: Vec<f64> = raw_prob.iter().map(|l| l - log2_norm).collect();
        let log2_string = raw_string.iter().map(|l| l - log2_norm).collect();
        let prob = log2_prob.iter().map(|l| l.exp2()).collect();
        Ok(WeightSectorState {
            n,
            a2,
            b2,
            log2_mult,
            log2_string,
            log2_prob,
            prob,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn b2(&self) -> f64 {
        self.b2
    }

    pub fn a(&self) -> f64 {
        self.a2.sqrt()
    }

    pub fn b(&self) -> f64 {
        self.b2.sqrt()
    }

    /// Entanglement of one copy, `H(a²)`.
    pub fn single_copy_entropy(&self) -> f64 {
        binary_entropy(self.a2)
    }

    fn check_weight(&self, k: u64) -> Result<usize> {
        if k > self.n {
            return Err(Error::param(
                "k",
                format!("weight {k} exceeds n = {}", self.n),
            ));
        }
        Ok(k as usize)
    }

    /// `C(n,k) a^{2(n-k)} b^{2k}`.
    pub fn sector_prob(&self, k: u64) -> Result<f64> {
        Ok(self.prob[self.check_weight(k)?])
    }

    pub fn log2_sector_prob(&self, k: u64) -> Result<f64> {
        Ok(self.log2_prob[self.check_weight(k)?])
    }

    /// `log₂ C(n, k)`.
    pub fn log2_multiplicity(&self, k: u64) -> Result<f64> {
        Ok(self.log2_mult[self.check_weight(k)?])
    }

    /// `log₂` of the probability of a single string of weight `k`.
    pub fn log2_string_prob(&self, k: u64) -> Result<f64> {
        Ok(self.log2_string[self.check_weight(k)?])
    }

    /// Sector probabilities indexed by weight.
    pub fn sector_probs(&self) -> &[f64] {
        &self.prob
    }

    /// Weights ordered by non-increasing per-string probability.
    pub fn weights_by_string_prob(&self) -> Box<dyn Iterator<Item = u64>> {
        if self.a2 >= self.b2 {
            Box::new(0..=self.n)
        } else {
            Box::new((0..=self.n).rev())
        }
    }

    /// `Σ_k P(k) log₂ C(n, k)`: the mean number of ebits left after measuring
    /// the Hamming weight.
    pub fn expected_concentration_yield(&self) -> f64 {
        self.prob
            .iter()
            .zip(&self.log2_mult)
            .map(|(p, m)| p * m)
            .sum()
    }

    /// Best subspace of dimension at most `budget` spanned by basis strings.
    ///
    /// Strings are taken greedily in order of probability, splitting the last
    /// sector if needed, which maximizes the retained mass over all subsets of
    /// that size.
    pub fn typical_subspace(&self, budget: &BigUint) -> Result<TypicalSubspace> {
        if budget.is_zero() {
            return Err(Error::param("dim_budget", "must be at least 1"));
        }
        let mut remaining = budget.clone();
        let mut kept = Vec::new();
        let mut dim = BigUint::zero();

        let ascending = self.a2 >= self.b2;
        let mut mult = BigUint::one();
        for k in self.weights_by_string_prob() {
            if remaining.is_zero() {
                break;
            }
            if mult <= remaining {
                remaining -= &mult;
                dim += &mult;
                kept.push(KeptSector {
                    weight: k,
                    kept: Kept::Full,
                });
            } else {
                dim += &remaining;
                kept.push(KeptSector {
                    weight: k,
                    kept: Kept::Partial(std::mem::take(&mut remaining)),
                });
                break;
            }
            // step to the neighbouring sector's multiplicity
            if ascending && k < self.n {
                mult *= self.n - k;
                mult /= k + 1;
            } else if !ascending && k > 0 {
                mult *= k;
                mult /= self.n - k + 1;
            }
        }
        Ok(TypicalSubspace::from_sectors(self, kept, dim))
    }

    /// [`typical_subspace`](Self::typical_subspace) with a budget of `2^m`.
    pub fn typical_subspace_pow2(&self, m: u64) -> Result<TypicalSubspace> {
        if m >= self.n {
            let kept = (0..=self.n)
                .map(|weight| KeptSector {
                    weight,
                    kept: Kept::Full,
                })
                .collect();
            return Ok(TypicalSubspace::from_sectors(
                self,
                kept,
                BigUint::one() << self.n,
            ));
        }
        self.typical_subspace(&(BigUint::one() << m))
    }
}

/// How much of a sector a [`TypicalSubspace`] retains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kept {
    Full,
    Partial(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeptSector {
    pub weight: u64,
    pub kept: Kept,
}

/// Projector onto the highest-probability strings of an n-copy state.
#[derive(Debug, Clone, PartialEq)]
pub struct TypicalSubspace {
    n: u64,
    sectors: Vec<KeptSector>,
    dim: BigUint,
    mass: f64,
    entropy: f64,
}

impl TypicalSubspace {
    fn from_sectors(ws: &WeightSectorState, sectors: Vec<KeptSector>, dim: BigUint) -> Self {
        // (retained mass, mass · log₂ p_string) per sector
        let contributions: Vec<(f64, f64)> = sectors
            .iter()
            .map(|s| {
                let k = s.weight as usize;
                let log2_p = ws.log2_string[k];
                let mass = match &s.kept {
                    Kept::Full => ws.prob[k],
                    Kept::Partial(count) => (log2_biguint(count) + log2_p).exp2(),
                };
                let weighted = if mass > 0.0 { mass * log2_p } else { 0.0 };
                (mass, weighted)
            })
            .collect();
        let mass = if dim == BigUint::one() << ws.n {
            1.0
        } else {
            contributions
                .iter()
                .map(|c| c.0)
                .sum::<f64>()
                .clamp(0.0, 1.0)
        };
        // entropy of the renormalized retained distribution
        let entropy = if mass > 0.0 {
            let weighted: f64 = contributions.iter().map(|c| c.1).sum();
            (mass.log2() - weighted / mass).max(0.0)
        } else {
            0.0
        };
        TypicalSubspace {
            n: ws.n,
            sectors,
            dim,
            mass,
            entropy,
        }
    }

    /// Retained sectors in the order they were filled.
    pub fn sectors(&self) -> &[KeptSector] {
        &self.sectors
    }

    /// Number of strings retained in the weight-`k` sector.
    pub fn kept_count(&self, k: u64) -> BigUint {
        match self.sectors.iter().find(|s| s.weight == k) {
            Some(KeptSector {
                kept: Kept::Full, ..
            }) => binomial_exact(self.n, k),
            Some(KeptSector {
                kept: Kept::Partial(c),
                ..
            }) => c.clone(),
            None => BigUint::zero(),
        }
    }

    /// Total number of retained strings.
    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    /// Probability mass inside the subspace, the fidelity of projecting onto it.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Entanglement (ebits) of the normalized projected state.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn bell_copies_two() {
        let ws = WeightSectorState::from_a2(0.5, 2).unwrap();
        assert_eq!(ws.sector_probs(), &[0.25, 0.5, 0.25]);
        let ws = expand_copies(FRAC_1_SQRT_2, 2).unwrap();
        for (p, want) in ws.sector_probs().iter().zip([0.25, 0.5, 0.25]) {
            assert!((p - want).abs() < 1e-15);
        }
    }

    #[test]
    fn product_copies_concentrate_in_weight_zero() {
        let ws = expand_copies(1.0, 9).unwrap();
        assert_eq!(ws.sector_prob(0).unwrap(), 1.0);
        assert!(ws.sector_probs()[1..].iter().all(|&p| p == 0.0));
        assert_eq!(ws.expected_concentration_yield(), 0.0);
        assert_eq!(ws.single_copy_entropy(), 0.0);
        let ws = WeightSectorState::from_a2(0.0, 9).unwrap();
        assert_eq!(ws.sector_prob(9).unwrap(), 1.0);
        assert_eq!(ws.expected_concentration_yield(), 0.0);
    }

    #[test]
    fn sector_prob_hand_values() {
        let ws = WeightSectorState::from_a2(0.5, 2).unwrap();
        assert_eq!(ws.sector_prob(1).unwrap(), 0.5);
        let ws = WeightSectorState::from_a2(1.0, 5).unwrap();
        assert_eq!(ws.sector_prob(0).unwrap(), 1.0);
        let ws = WeightSectorState::from_a2(0.9, 4).unwrap();
        assert!((ws.sector_prob(1).unwrap() - 0.2916).abs() < 1e-14);
        assert!(ws.sector_prob(5).is_err());
    }

    #[test]
    fn input_validation() {
        assert!(expand_copies(1.2, 3).is_err());
        assert!(expand_copies(0.5, 0).is_err());
        assert!(expand_copies(0.5, MAX_COPIES + 1).is_err());
        let ws = WeightSectorState::from_a2(0.5, 3).unwrap();
        assert!(ws.typical_subspace(&BigUint::zero()).is_err());
    }

    #[test]
    fn no_underflow_at_large_n() {
        let ws = WeightSectorState::from_a2(0.3, 5000).unwrap();
        let total: f64 = ws.sector_probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(ws.log2_sector_prob(0).unwrap().is_finite());
    }

    #[test]
    fn uniform_subspace() {
        let ws = WeightSectorState::from_a2(0.5, 4).unwrap();
        let ts = ws.typical_subspace(&BigUint::from(8u32)).unwrap();
        assert_eq!(ts.mass(), 0.5);
        assert_eq!(ts.dim(), &BigUint::from(8u32));
        // weights 0 and 1 whole, 3 of the 6 weight-2 strings
        assert_eq!(ts.kept_count(2), BigUint::from(3u32));
        assert_eq!(ts.entropy(), 3.0);
    }

    #[test]
    fn skewed_subspace_splits_a_sector() {
        let ws = WeightSectorState::from_a2(0.9, 4).unwrap();
        let ts = ws.typical_subspace_pow2(2).unwrap();
        assert!((ts.mass() - 0.8748).abs() < 1e-12);
        assert_eq!(ts.kept_count(0), BigUint::one());
        assert_eq!(ts.kept_count(1), BigUint::from(3u32));
        assert_eq!(ts.kept_count(2), BigUint::zero());
    }

    #[test]
    fn descending_order_when_b_dominates() {
        let ws = WeightSectorState::from_a2(0.1, 4).unwrap();
        let ts = ws.typical_subspace_pow2(2).unwrap();
        assert!((ts.mass() - 0.8748).abs() < 1e-12);
        assert_eq!(ts.kept_count(4), BigUint::one());
        assert_eq!(ts.kept_count(3), BigUint::from(3u32));
    }

    #[test]
    fn full_budget_keeps_everything() {
        let ws = WeightSectorState::from_a2(0.3, 6).unwrap();
        for ts in [
            ws.typical_subspace_pow2(6).unwrap(),
            ws.typical_subspace_pow2(40).unwrap(),
            ws.typical_subspace(&BigUint::from(1000u32)).unwrap(),
        ] {
            assert!((ts.mass() - 1.0).abs() < 1e-15);
            assert_eq!(ts.dim(), &BigUint::from(64u32));
            assert!((ts.entropy() - 6.0 * binary_entropy(0.3)).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_budget_keeps_the_top_string() {
        let ws = WeightSectorState::from_a2(0.8, 5).unwrap();
        let ts = ws.typical_subspace_pow2(0).unwrap();
        assert!((ts.mass() - 0.8f64.powi(5)).abs() < 1e-15);
        assert_eq!(ts.entropy(), 0.0);
    }
}
