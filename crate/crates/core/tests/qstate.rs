mod common;

use entangle::qstate::{
    bipartition_entropy, entropy_of_entanglement, fidelity, make_cat, make_multiparty,
    reduced_density, schmidt_decompose, von_neumann_entropy, AmplitudeMatrix, BipartitePureState,
    Complex64, DensityMatrix, Gate, QubitState, Register, Side,
};
use entangle::seeded_rng;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = AmplitudeMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(re, im)| re.abs() + im.abs() > 1e-3)
        })
        .prop_map(move |v| {
            let m = DMatrix::from_fn(rows, cols, |i, j| {
                let (re, im) = v[i * cols + j];
                Complex64::new(re, im)
            });
            AmplitudeMatrix::normalized(m).unwrap()
        })
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..5, 1usize..5)
}

#[test]
fn schmidt_matches_gram_eigenvalues() {
    let m = AmplitudeMatrix::normalized(DMatrix::from_row_slice(
        2,
        2,
        &[0.6, 0.48, 0.48, 0.64].map(|x| Complex64::new(x, 0.0)),
    ))
    .unwrap();
    // closed-form eigenvalues of the 2x2 Gram matrix G = M M^T
    let e = m.entries().map(|c| c.re);
    let g = &e * e.transpose();
    let tr = g[(0, 0)] + g[(1, 1)];
    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let expected = [((tr + disc) / 2.0).sqrt(), ((tr - disc) / 2.0).sqrt()];

    let d = schmidt_decompose(&m);
    for (got, want) in d.state.coefficients().iter().zip(expected) {
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn reduced_density_spectrum_matches_schmidt_3x3() {
    let mut rng = seeded_rng(5);
    use rand::Rng;
    let raw = DMatrix::from_fn(3, 3, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = AmplitudeMatrix::normalized(raw).unwrap();
    let rho = reduced_density(&m, Side::A);
    assert!((rho.entries().trace().re - 1.0).abs() < 1e-12);
    let squared = schmidt_decompose(&m).state.probabilities();
    for (mu, p) in rho.eigenvalues().iter().zip(squared) {
        assert!((mu - p).abs() < 1e-12);
    }
}

#[test]
fn measurement_frequency_within_three_sigma() {
    let q = QubitState::new(
        Complex64::new(0.3f64.sqrt(), 0.0),
        Complex64::new(0.7f64.sqrt(), 0.0),
    )
    .unwrap();
    let trials = 10_000;
    let mut rng = seeded_rng(2024);
    let mut ones = 0;
    for _ in 0..trials {
        let mut r = Register::product(&[q]).unwrap();
        let m = r.measure(0, &mut rng).unwrap();
        if m.outcome == 1 {
            assert!((m.probability - 0.7).abs() < 1e-12);
            ones += 1;
        }
    }
    let sigma = (trials as f64 * 0.7 * 0.3).sqrt();
    assert!((ones as f64 - 0.7 * trials as f64).abs() < 3.0 * sigma);
}

#[test]
fn cat_state_entropy_on_every_cut() {
    for n in 2..=6usize {
        let cat = make_cat(n).unwrap();
        // every proper subset
        for mask in 1..(1u32 << n) - 1 {
            let cut: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let e = bipartition_entropy(&cat, &cut).unwrap();
            assert!((e - 1.0).abs() < 1e-12, "n={n} cut={cut:?}");
        }
    }
}

#[test]
fn multiparty_entropy_five_parties() {
    let s = make_multiparty(0.5, 5).unwrap();
    let e = bipartition_entropy(&s, &[1, 2]).unwrap();
    assert!((e - common::H_0_25).abs() < 1e-12);
}

/// Reshape an n-qubit register into an amplitude matrix split at `cut`.
fn split_register(r: &Register, cut: &[usize]) -> AmplitudeMatrix {
    let n = r.n_qubits();
    let rest: Vec<usize> = (0..n).filter(|q| !cut.contains(q)).collect();
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let mut m = DMatrix::zeros(1 << cut.len(), 1 << rest.len());
    for (idx, amp) in r.amplitudes().iter().enumerate() {
        let row = cut.iter().fold(0, |acc, &q| acc << 1 | bit(idx, q));
        let col = rest.iter().fold(0, |acc, &q| acc << 1 | bit(idx, q));
        m[(row, col)] = *amp;
    }
    AmplitudeMatrix::new(m).unwrap()
}

#[test]
fn multiparty_entropy_matches_dense_partial_trace() {
    let s = make_multiparty(0.3f64.sqrt(), 5).unwrap();
    let r = s.to_register().unwrap();
    for cut in [&[0usize][..], &[1, 3], &[0, 2, 4], &[4]] {
        let rho = reduced_density(&split_register(&r, cut), Side::A);
        let dense = von_neumann_entropy(&rho).unwrap();
        assert!((dense - bipartition_entropy(&s, cut).unwrap()).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn schmidt_spectrum_is_canonical(m in shape().prop_flat_map(|(r, c)| complex_matrix(r, c))) {
        let d = schmidt_decompose(&m);
        let c = d.state.coefficients();
        prop_assert!(c.iter().all(|&x| x >= 0.0));
        prop_assert!(c.windows(2).all(|w| w[0] >= w[1]));
        let total: f64 = c.iter().map(|x| x * x).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let (ra, rb) = m.dims();
        prop_assert!(c.len() <= ra.min(rb));
    }

    #[test]
    fn schmidt_reconstructs_state(m in shape().prop_flat_map(|(r, c)| complex_matrix(r, c))) {
        let d = schmidt_decompose(&m);
        let rebuilt = AmplitudeMatrix::new(d.reconstruct()).unwrap();
        let f = fidelity(&m.to_state_vector(), &rebuilt.to_state_vector()).unwrap();
        prop_assert!(f >= 1.0 - 1e-10);
    }

    #[test]
    fn entropy_agrees_on_both_sides(m in shape().prop_flat_map(|(r, c)| complex_matrix(r, c))) {
        let d = schmidt_decompose(&m);
        let e = entropy_of_entanglement(&d.state);
        let ea = von_neumann_entropy(&reduced_density(&m, Side::A)).unwrap();
        let eb = von_neumann_entropy(&reduced_density(&m, Side::B)).unwrap();
        prop_assert!((e - ea).abs() < 1e-10);
        prop_assert!((e - eb).abs() < 1e-10);
        let (ra, rb) = m.dims();
        prop_assert!(e >= 0.0 && e <= (ra.min(rb) as f64).log2() + 1e-12);
        if d.state.schmidt_rank() == 1 {
            prop_assert!(e < 1e-9);
        }
    }

    #[test]
    fn entropy_matches_diagonal_density(p in 0.0..1.0f64) {
        let s = BipartitePureState::new(vec![p.sqrt(), (1.0 - p).sqrt()], 2, 2).unwrap();
        let rho = DensityMatrix::from_diagonal(&s.probabilities()).unwrap();
        prop_assert!((entropy_of_entanglement(&s) - von_neumann_entropy(&rho).unwrap()).abs() < 1e-12);
        let swapped = BipartitePureState::new(vec![(1.0 - p).sqrt(), p.sqrt()], 2, 2).unwrap();
        prop_assert_eq!(entropy_of_entanglement(&s), entropy_of_entanglement(&swapped));
    }

    #[test]
    fn gates_preserve_norm_and_involutions(seed in any::<u64>(), target in 0usize..3, control in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let qubits: Vec<QubitState> = (0..3).map(|_| QubitState::random(&mut rng)).collect();
        let start = Register::product(&qubits).unwrap();
        let mut r = start.clone();
        r.apply(&Gate::h(), &[target]).unwrap();
        prop_assert!((r.norm_sqr() - 1.0).abs() < 1e-12);
        r.apply(&Gate::h(), &[target]).unwrap();
        prop_assert!((r.fidelity(&start).unwrap() - 1.0).abs() < 1e-12);
        if control != target {
            r.apply(&Gate::cnot(), &[control, target]).unwrap();
            prop_assert!((r.norm_sqr() - 1.0).abs() < 1e-12);
            r.apply(&Gate::cnot(), &[control, target]).unwrap();
            prop_assert!((r.fidelity(&start).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_renormalizes(seed in any::<u64>(), qubit in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let qubits: Vec<QubitState> = (0..3).map(|_| QubitState::random(&mut rng)).collect();
        let mut r = Register::product(&qubits).unwrap();
        let before = r.outcome_probability(qubit, 1).unwrap();
        let m = r.measure(qubit, &mut rng).unwrap();
        let expected = if m.outcome == 1 { before } else { 1.0 - before };
        prop_assert!((m.probability - expected).abs() < 1e-12);
        prop_assert!((r.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert_eq!(r.outcome_probability(qubit, m.outcome).unwrap().round(), 1.0);
    }

    #[test]
    fn bipartition_entropy_is_cut_independent(a in 0.0..1.0f64, n in 2usize..10, mask in any::<u32>()) {
        let s = make_multiparty(a, n).unwrap();
        let full = (1u32 << n) - 1;
        let mask = (mask & full).clamp(1, full - 1);
        let cut: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assert_eq!(
            bipartition_entropy(&s, &cut).unwrap(),
            bipartition_entropy(&s, &[0]).unwrap()
        );
    }
}
