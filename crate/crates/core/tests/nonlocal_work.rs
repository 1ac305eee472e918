use std::f64::consts::PI;

use ergolab_core::basis::PAIR_LABELS;
use ergolab_core::nonlocal::bell_diagonal_report;
use ergolab_core::random::{Sampler, StateKind};
use ergolab_core::{
    classical_nonlocal_work, classical_total_work, daemonic_ergotropy, local_work, nonlocal_work,
    quantum_correlation, reduced_state, total_ergotropy, BellDiagonal, BlochTwoQubit, ComplexMatrix,
    DensityMatrix, Hamiltonian, ProjectorPair, Subsystem,
};

fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect()
}

fn along_sin(theta: f64) -> BellDiagonal {
    BellDiagonal::new([0.5, -0.5, theta.sin()]).unwrap()
}

#[test]
fn bell_diagonal_chain_on_theta_grid() {
    for gap in [1.0, 2.5] {
        let h = Hamiltonian::qubit_gap(gap).unwrap();
        for theta in theta_grid(41) {
            let p = along_sin(theta);
            let rho = p.to_density().unwrap();
            let s = theta.sin().abs();
            let loc = local_work(&rho, &h).unwrap();
            let d = daemonic_ergotropy(&rho, &h, &ProjectorPair::computational()).unwrap().work;
            let tot = total_ergotropy(&rho, &h.joint_with_idle_ancilla()).unwrap().work;
            let classical = classical_total_work(&rho, &h.joint_with_idle_ancilla()).unwrap();
            assert!(loc.abs() <= 1e-12);
            assert!((d - s * gap / 2.0).abs() <= 1e-10);
            assert!((tot - s.max(0.5) * gap / 2.0).abs() <= 1e-10);
            assert!((classical - gap / 2.0).abs() <= 1e-12);
            assert!(loc <= d + 1e-12 && d <= tot + 1e-12 && tot <= classical + 1e-12);
        }
    }
}

#[test]
fn chain_holds_on_random_bell_states() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let mut s = Sampler::new(11);
    for _ in 0..500 {
        let p = s.bell_diagonal().unwrap();
        let rho = p.to_density().unwrap();
        let loc = local_work(&rho, &h).unwrap();
        let d = daemonic_ergotropy(&rho, &h, &ProjectorPair::computational()).unwrap().work;
        let tot = total_ergotropy(&rho, &h.joint_with_idle_ancilla()).unwrap().work;
        let classical = classical_total_work(&rho, &h.joint_with_idle_ancilla()).unwrap();
        assert!(loc <= d + 1e-12 && d <= tot + 1e-12 && tot <= classical + 1e-12);
        assert!((d - p.c[2].abs() / 2.0).abs() <= 1e-10);
        assert!((tot - p.max_abs() / 2.0).abs() <= 1e-10);
    }
}

/// `Σₖ |label_k⟩⟨λ_{order[k]}|` with labels `|11⟩, |10⟩, |01⟩, |00⟩`.
fn relabeling(order: [usize; 4]) -> ComplexMatrix {
    let vectors = BellDiagonal::eigenvectors();
    let mut u = ComplexMatrix::zeros(4);
    for (k, &(s, a)) in PAIR_LABELS.iter().enumerate() {
        let ket = ergolab_core::basis::pair_ket(s, a);
        u = &u + &ComplexMatrix::outer(&ket, &vectors[order[k]]).unwrap();
    }
    u
}

#[test]
fn explicit_relabelings_reach_total_ergotropy() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let hj = h.joint_with_idle_ancilla();
    let cases = [
        ([0.6, 0.1, -0.1], [0, 1, 2, 3], 0),
        ([0.1, 0.6, -0.1], [0, 2, 1, 3], 1),
        ([0.1, -0.1, 0.6], [0, 3, 1, 2], 2),
    ];
    for (c, order, largest) in cases {
        let rho = BellDiagonal::new(c).unwrap().to_density().unwrap();
        let u = relabeling(order);
        assert!(u.unitarity_residual() < 1e-12);
        let after = DensityMatrix::new(rho.matrix().conjugate_by(&u).unwrap()).unwrap();
        let extracted = hj.energy(&rho).unwrap() - hj.energy(&after).unwrap();
        let generic = total_ergotropy(&rho, &hj).unwrap();
        assert!((extracted - c[largest].abs() / 2.0).abs() < 1e-12, "{c:?}");
        assert!((generic.work - extracted).abs() < 1e-10);
    }
}

#[test]
fn measured_total_work_closed_forms() {
    let mut s = Sampler::new(12);
    for gap in [1.0, 0.4] {
        let h = Hamiltonian::qubit_gap(gap).unwrap();
        for i in 0..1000 {
            let kind = [StateKind::Mixed, StateKind::Pure, StateKind::BellDiagonal][i % 3];
            let rho = s.density(4, kind).unwrap();
            let b = BlochTwoQubit::from_density(&rho).unwrap();
            let norm = b.s.iter().map(|x| x * x).sum::<f64>().sqrt();
            let total = classical_total_work(&rho, &h.joint_with_idle_ancilla()).unwrap();
            assert!((total - (1.0 + b.s[2]) * gap / 2.0).abs() <= 1e-10);
            let nonlocal = classical_nonlocal_work(&rho, &h).unwrap();
            assert!((nonlocal - (1.0 - norm) * gap / 2.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn pure_marginal_has_no_classical_nonlocal_work() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let mut s = Sampler::new(13);
    for _ in 0..200 {
        let rho = s.density(2, StateKind::Pure).unwrap().kron(&s.density(2, StateKind::Mixed).unwrap());
        assert!(reduced_state(&rho, Subsystem::System).unwrap().purity() > 1.0 - 1e-12);
        assert!(classical_nonlocal_work(&rho, &h).unwrap().abs() <= 1e-10);
    }
}

#[test]
fn measured_curve_touches_plain_curve_only_at_quarter_turn() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let grid = theta_grid(181);
    for &theta in &grid {
        let r = bell_diagonal_report(&along_sin(theta), &h).unwrap();
        let gap = r.classical_nonlocal_work - r.nonlocal_work;
        assert!(gap >= -1e-12);
        if (theta - PI / 2.0).abs() < 1e-9 {
            assert!(gap.abs() <= 1e-10);
        } else {
            assert!(gap > 1e-6, "theta {theta}: {gap}");
        }
    }
}

#[test]
fn correlation_peaks_at_quarter_turn() {
    let grid = theta_grid(181);
    let values: Vec<f64> = grid.iter().map(|&t| quantum_correlation(&along_sin(t))).collect();
    let (argmax, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
    assert!((grid[argmax] - PI / 2.0).abs() < 1e-12);
    for (&t, &v) in grid.iter().zip(&values) {
        let want = 0.5 * (8.0 - (63.0 - 8.0 * t.sin().powi(2)).sqrt()).sqrt();
        assert!((v - want).abs() <= 1e-12);
    }
}

#[test]
fn correlation_and_nonlocal_work_are_not_monotone() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let steps: Vec<f64> = (0..=8).map(|k| -1.0 + 0.25 * k as f64).collect();
    let mut states = Vec::new();
    for &a in &steps {
        for &b in &steps {
            for &c in &steps {
                if let Ok(p) = BellDiagonal::new([a, b, c]) {
                    let w = nonlocal_work(&p.to_density().unwrap(), &h).unwrap();
                    states.push((quantum_correlation(&p), w));
                }
            }
        }
    }
    let found = states.iter().any(|&(ca, wa)| {
        states.iter().any(|&(cb, wb)| cb > ca + 1e-6 && wb < wa - 1e-6)
    });
    assert!(found);
}

#[test]
fn nonlocal_work_of_product_states_vanishes() {
    let h = Hamiltonian::qubit_gap(1.0).unwrap();
    let mut s = Sampler::new(14);
    for _ in 0..100 {
        let rho = s.density(2, StateKind::Pure).unwrap().kron(&s.density(2, StateKind::Pure).unwrap());
        assert!(nonlocal_work(&rho, &h).unwrap().abs() <= 1e-10);
    }
}
