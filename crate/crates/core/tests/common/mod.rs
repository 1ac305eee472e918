#![allow(dead_code)]

use ergolab_core::{ComplexMatrix, DensityMatrix, C64};
use nalgebra::DMatrix;

pub fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<C64> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |i, j| m.get(i, j))
}

/// Ascending eigenvalues of a Hermitian matrix from nalgebra.
pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_nalgebra(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum of `Σ r_k ε_{π(k)}` over every permutation `π`.
pub fn brute_force_passive_energy(rho: &DensityMatrix, energies: &[f64]) -> f64 {
    let r = oracle_eigenvalues(rho.matrix());
    permutations(r.len())
        .iter()
        .map(|p| p.iter().enumerate().map(|(k, &j)| r[k] * energies[j]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// `Tr_A[(I⊗Π) ρ (I⊗Π)]` written out index by index, rows ordered `|1⟩, |0⟩`.
pub fn oracle_conditional(rho: &DensityMatrix, pi: &ComplexMatrix) -> ComplexMatrix {
    let m = rho.matrix();
    ComplexMatrix::from_fn(2, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    acc += pi.get(a, b) * m.get(2 * i + b, 2 * j + c) * pi.get(c, a);
                }
            }
        }
        acc
    })
}

/// Passive energy of a 2×2 positive matrix (not normalized) under energies `(0, gap)`.
pub fn oracle_qubit_final_energy(unnormalized: &ComplexMatrix, gap: f64) -> f64 {
    let r = oracle_eigenvalues(unnormalized);
    r[0] * gap
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_abs_diff(b)
}
