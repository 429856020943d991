use qsim::{
    avg_perm_channel, avg_perm_channel_sampled, maximally_mixed, measure_computational, partial_trace,
    qotp_average, trace_distance, DensityMatrix, Gate, MeasureRandomness, StateVector, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fair_measurement_frequency_within_three_sigma() {
    let mut plus = StateVector::zero(1).unwrap();
    plus.apply(&Gate::H, &[0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 10_000;
    let zeros = (0..n)
        .filter(|_| {
            let (m, _) = measure_computational(&plus, &[0], MeasureRandomness::draw(&mut rng)).unwrap();
            m.outcome == 0
        })
        .count();
    let sigma = (0.25 / n as f64).sqrt();
    assert!((zeros as f64 / n as f64 - 0.5).abs() <= 3.0 * sigma);
}

#[test]
fn measuring_unentangled_register_leaves_the_rest() {
    let phi = StateVector::random(2, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let joint = StateVector::basis(1, 1).unwrap().tensor(&phi).unwrap();
    let (m, post) = measure_computational(&joint, &[0], MeasureRandomness::Uniform(0.3)).unwrap();
    assert_eq!(m.outcome, 1);
    let rest = partial_trace(&post.to_density(), &[1, 2]).unwrap();
    assert!((rest.fidelity_with_pure(&phi).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn qotp_average_of_purification_is_maximally_mixed_on_message() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=2 {
        // Message qubits first, then an equally sized reference register.
        let psi = StateVector::random(2 * n, &mut rng).unwrap();
        let targets: Vec<usize> = (0..n).collect();
        let avg = qotp_average(&psi.to_density(), &targets).unwrap();
        let msg = partial_trace(&avg, &targets).unwrap();
        assert!(msg.max_entry_diff(&maximally_mixed(n).unwrap()).unwrap() < 1e-10);
    }
}

#[test]
fn channel_monte_carlo_agrees_with_closed_form() {
    // |+⟩ carries off-diagonal mass, so the off-diagonal constant is non-zero.
    let mut s = StateVector::zero(2).unwrap();
    s.apply(&Gate::H, &[0]).unwrap();
    s.apply(&Gate::H, &[1]).unwrap();
    let rho = s.to_density();
    let r = 3;
    let closed = avg_perm_channel(&rho, r).unwrap();
    let samples = 1000;
    let sampled = avg_perm_channel_sampled(&rho, 0, r, samples, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
    let d = 1usize << 5;
    // Each entry is a mean of bounded per-permutation values; spread is at most
    // the largest |ρ| entry (here 1/4), so 3σ ≤ 3 · 0.25 / √samples.
    let tol = 3.0 * 0.25 / (samples as f64).sqrt();
    for (a, b) in [(0, 0), (0, 1), (5, 17), (d - 1, d - 2)] {
        let diff = (closed.matrix()[(a, b)] - sampled.matrix()[(a, b)]).norm();
        assert!(diff <= tol, "entry ({a},{b}) off by {diff}");
    }
    let diag = sampled.diagonal();
    let expect = 1.0 / d as f64;
    assert!(diag.iter().all(|p| (p - expect).abs() <= tol));
}

#[test]
fn single_qubit_h_matrix_matches_definition() {
    let h = Gate::H.matrix();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(h[(1, 1)], C64::new(-s, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rho = StateVector::random(1, &mut rng).unwrap().to_density();
    let mut twice = rho.clone();
    twice.apply(&Gate::H, &[0]).unwrap();
    twice.apply(&Gate::H, &[0]).unwrap();
    assert!(twice.max_entry_diff(&rho).unwrap() < 1e-12);
}

#[test]
fn orthogonal_mixtures_distance() {
    let a = DensityMatrix::mixture(&[(0.5, DensityMatrix::basis(1, 0).unwrap()), (0.5, DensityMatrix::basis(1, 1).unwrap())]).unwrap();
    assert!(trace_distance(&a, &maximally_mixed(1).unwrap()).unwrap() < 1e-12);
}
