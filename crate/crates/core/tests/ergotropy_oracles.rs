mod common;

use common::brute_force_passive_energy;
use ergolab_core::random::{Sampler, StateKind};
use ergolab_core::{ergotropy, passive_energy, ComplexMatrix, DensityMatrix, Hamiltonian};
use proptest::prelude::*;

fn ascending(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..2.0, dim).prop_map(|steps| {
        let mut acc = -1.0;
        steps
            .into_iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect()
    })
}

fn state_and_levels() -> impl Strategy<Value = (DensityMatrix, Vec<f64>)> {
    (prop_oneof![Just(2usize), Just(4usize)], any::<u64>(), any::<bool>()).prop_flat_map(|(d, seed, pure)| {
        let kind = if pure { StateKind::Pure } else { StateKind::Mixed };
        let rho = Sampler::new(seed).density(d, kind).unwrap();
        (Just(rho), ascending(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_permutation_search((rho, e) in state_and_levels()) {
        let h = Hamiltonian::new(e.clone()).unwrap();
        let res = ergotropy(&rho, &h).unwrap();
        let oracle = h.energy(&rho).unwrap() - brute_force_passive_energy(&rho, &e);
        prop_assert!(res.work >= 0.0);
        prop_assert!((res.work - oracle).abs() <= 1e-10, "{} vs {}", res.work, oracle);
        // the returned unitary realizes the passive energy
        let after = DensityMatrix::new(rho.matrix().conjugate_by(&res.unitary).unwrap()).unwrap();
        prop_assert!((h.energy(&after).unwrap() - res.passive_energy).abs() <= 1e-10);
        prop_assert!(res.unitary.unitarity_residual() <= 1e-10);
    }

    #[test]
    fn scales_with_energies((rho, e) in state_and_levels(), k in 0.1f64..10.0) {
        let h = Hamiltonian::new(e).unwrap();
        let w = ergotropy(&rho, &h).unwrap().work;
        let wk = ergotropy(&rho, &h.scaled(k)).unwrap().work;
        prop_assert!((wk - k * w).abs() <= 1e-12 * (1.0 + k));
    }

    #[test]
    fn rotating_state_and_basis_together((rho, e) in state_and_levels(), seed in any::<u64>()) {
        let h = Hamiltonian::new(e).unwrap();
        let v = Sampler::new(seed).haar_unitary(rho.dim());
        let rotated = DensityMatrix::new(rho.matrix().conjugate_by(&v).unwrap()).unwrap();
        let hv = h.rotated(&v).unwrap();
        let a = ergotropy(&rho, &h).unwrap().work;
        let b = ergotropy(&rotated, &hv).unwrap().work;
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn passive_states_have_zero_work(p in prop::collection::vec(0.0f64..1.0, 4), e in ascending(4)) {
        // populations non-increasing along ascending energies
        let mut p = p;
        p.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let total: f64 = p.iter().sum();
        prop_assume!(total > 1e-3);
        let p: Vec<f64> = p.iter().map(|x| x / total).collect();
        let rho = DensityMatrix::new(ComplexMatrix::real_diag(&p)).unwrap();
        let h = Hamiltonian::new(e).unwrap();
        prop_assert!(ergotropy(&rho, &h).unwrap().work <= 1e-12);
    }
}

#[test]
fn no_haar_unitary_beats_the_passive_energy() {
    let mut sampler = Sampler::new(2024);
    for (dim, energies) in [(2, vec![0.0, 1.0]), (4, vec![-0.3, 0.1, 0.4, 1.7])] {
        let h = Hamiltonian::new(energies).unwrap();
        for _ in 0..5 {
            let rho = sampler.density(dim, StateKind::Mixed).unwrap();
            let floor = passive_energy(&rho, &h).unwrap();
            let hm = h.matrix();
            for _ in 0..1000 {
                let u = sampler.haar_unitary(dim);
                let e = rho.matrix().conjugate_by(&u).unwrap();
                let energy = (&e * &hm).trace().re;
                assert!(energy >= floor - 1e-8, "{energy} < {floor}");
            }
        }
    }
}

#[test]
fn zero_work_exactly_when_already_passive() {
    let h = Hamiltonian::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
    let passive = DensityMatrix::new(ComplexMatrix::real_diag(&[0.4, 0.3, 0.2, 0.1])).unwrap();
    assert_eq!(ergotropy(&passive, &h).unwrap().work, 0.0);
    let active = DensityMatrix::new(ComplexMatrix::real_diag(&[0.3, 0.4, 0.2, 0.1])).unwrap();
    assert!((ergotropy(&active, &h).unwrap().work - 0.1).abs() < 1e-14);
}
