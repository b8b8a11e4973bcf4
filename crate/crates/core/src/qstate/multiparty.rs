use num_complex::Complex64;

use super::bipartite::{entropy_of_entanglement, BipartitePureState};
use super::register::Register;
use crate::{Error, Result};

/// `a|0…0⟩ + b|1…1⟩` shared by `n_parties` single-qubit holders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipartyState {
    n_parties: usize,
    a: f64,
    b: f64,
}

/// `a|0…0⟩ + b|1…1⟩` over `n ≥ 2` parties, `b = √(1 - a²)`.
pub fn make_multiparty(a: f64, n: usize) -> Result<MultipartyState> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::param("a", format!("{a} is outside [0, 1]")));
    }
    if n < 2 {
        return Err(Error::param(
            "n",
            format!("need at least 2 parties, got {n}"),
        ));
    }
    Ok(MultipartyState {
        n_parties: n,
        a,
        b: (1.0 - a * a).max(0.0).sqrt(),
    })
}

/// The n-qubit cat state `(|0…0⟩ + |1…1⟩)/√2`.
pub fn make_cat(n: usize) -> Result<MultipartyState> {
    let mut s = make_multiparty(std::f64::consts::FRAC_1_SQRT_2, n)?;
    s.b = s.a;
    Ok(s)
}

impl MultipartyState {
    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn check_cut(&self, cut: &[usize]) -> Result<()> {
        if cut.is_empty() {
            return Err(Error::InvalidCut("cut is empty".into()));
        }
        for (i, &p) in cut.iter().enumerate() {
            if p >= self.n_parties {
                return Err(Error::InvalidCut(format!(
                    "party {p} does not exist among {}",
                    self.n_parties
                )));
            }
            if cut[..i].contains(&p) {
                return Err(Error::InvalidCut(format!("party {p} listed twice")));
            }
        }
        if cut.len() == self.n_parties {
            return Err(Error::InvalidCut("cut contains every party".into()));
        }
        Ok(())
    }

    /// The state viewed as bipartite across `cut` versus the rest.
    ///
    /// Both sides see the same two-term form `a|0…0⟩|0…0⟩ + b|1…1⟩|1…1⟩`
    /// whatever the cut, so only the local dimensions change.
    pub fn bipartite(&self, cut: &[usize]) -> Result<BipartitePureState> {
        self.check_cut(cut)?;
        let dim = |k: usize| 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
        BipartitePureState::new(
            vec![self.a, self.b],
            dim(cut.len()),
            dim(self.n_parties - cut.len()),
        )
    }

    /// Full state vector, party 0 as qubit 0.
    pub fn to_register(&self) -> Result<Register> {
        if self.n_parties > super::MAX_QUBITS {
            return Err(Error::TooManyQubits(self.n_parties));
        }
        let len = 1usize << self.n_parties;
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[0] = Complex64::new(self.a, 0.0);
        amps[len - 1] = Complex64::new(self.b, 0.0);
        Register::from_amplitudes(amps)
    }
}

/// Entanglement across `cut`; independent of which proper cut is chosen.
pub fn bipartition_entropy(state: &MultipartyState, cut: &[usize]) -> Result<f64> {
    Ok(entropy_of_entanglement(&state.bipartite(cut)?))
}
