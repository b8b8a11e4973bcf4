use rand::Rng;

use super::{concentrate, dilute, extract_bell_pairs, Concentration, Dilution};
use crate::commsim::{DistanceModel, Ledger};
use crate::copies::WeightSectorState;
use crate::{Error, Result};

/// Outcome of concentrating `n` copies and diluting the pairs back.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub n: u64,
    pub a2: f64,
    /// `E(a)`, ebits per copy.
    pub entropy_per_copy: f64,
    pub concentration: Concentration,
    /// Exact mean concentration yield, ebits.
    pub expected_yield: f64,
    /// Whole Bell pairs handed to dilution.
    pub bell_pairs: u64,
    pub residual_ebits: f64,
    /// `⌊bell_pairs / E(a)⌋`; dilution is skipped when this is zero.
    pub diluted_copies: u64,
    pub dilution: Option<Dilution>,
    pub concentration_bits: u64,
    pub dilution_bits: u64,
}

impl CycleReport {
    /// `E(a) - ebits_out / n` for the sampled concentration outcome.
    pub fn per_copy_shortfall(&self) -> f64 {
        self.entropy_per_copy - self.concentration.outcome.ebits_out / self.n as f64
    }

    /// `E(a) - E[yield] / n`, averaged over the exact weight distribution.
    pub fn expected_per_copy_shortfall(&self) -> f64 {
        self.entropy_per_copy - self.expected_yield / self.n as f64
    }

    /// Fraction of the original copies recreated by dilution.
    pub fn copy_recovery(&self) -> f64 {
        self.diluted_copies as f64 / self.n as f64
    }

    /// Fidelity of the recreated copies, 1 when nothing was diluted.
    pub fn end_to_end_fidelity(&self) -> f64 {
        self.dilution.as_ref().map_or(1.0, |d| d.outcome.fidelity)
    }

    pub fn total_bits(&self) -> u64 {
        self.concentration_bits + self.dilution_bits
    }
}

/// Concentrate `source`, keep the whole Bell pairs and dilute them into as
/// many copies of the same state as they can pay for.
pub fn reversibility_cycle<R: Rng + ?Sized>(
    source: &WeightSectorState,
    rng: &mut R,
    ledger: &mut Ledger,
    timing: &DistanceModel,
) -> Result<CycleReport> {
    let entropy_per_copy = source.single_copy_entropy();
    if entropy_per_copy == 0.0 {
        return Err(Error::DegenerateCycle);
    }
    let n = source.n();

    let bits_before = ledger.total_bits();
    let concentration = concentrate(source, rng, ledger)?;
    let concentration_bits = ledger.total_bits() - bits_before;
    if concentration_bits != 0 {
        return Err(Error::Invariant(format!(
            "concentration logged {concentration_bits} classical bits"
        )));
    }

    let expected_yield = source.expected_concentration_yield();
    if expected_yield > n as f64 * entropy_per_copy + 1e-9 {
        return Err(Error::Invariant(format!(
            "expected yield {expected_yield} exceeds n·E = {}",
            n as f64 * entropy_per_copy
        )));
    }

    let extraction = extract_bell_pairs(&concentration.state);
    let bell_pairs = extraction.whole_pairs;
    let diluted_copies = (bell_pairs as f64 / entropy_per_copy).floor() as u64;

    let bits_before = ledger.total_bits();
    let dilution = if diluted_copies == 0 {
        None
    } else {
        let target = WeightSectorState::from_a2(source.a2(), diluted_copies)?;
        let d = dilute(&target, bell_pairs, ledger, timing)?;
        if d.outcome.fidelity > 1.0 {
            return Err(Error::Invariant(format!(
                "dilution fidelity {} exceeds 1",
                d.outcome.fidelity
            )));
        }
        Some(d)
    };
    let dilution_bits = ledger.total_bits() - bits_before;

    Ok(CycleReport {
        n,
        a2: source.a2(),
        entropy_per_copy,
        concentration,
        expected_yield,
        bell_pairs,
        residual_ebits: extraction.residual_ebits,
        diluted_copies,
        dilution,
        concentration_bits,
        dilution_bits,
    })
}
