//! Seeded random states, unitaries and projector pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::measurement::ProjectorPair;
use crate::state::{BellDiagonal, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    /// Hilbert–Schmidt ensemble: `GG†/Tr[GG†]` with Ginibre `G`.
    Mixed,
    /// Projector onto a normalized complex Gaussian vector.
    Pure,
    /// Bell-diagonal state with `c` rejection-sampled from `[-1, 1]³`.
    BellDiagonal,
}

/// Deterministic sampler; identical seeds give identical sequences.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn complex_gaussian(&mut self) -> C64 {
        C64::new(self.gaussian(), self.gaussian())
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| self.complex_gaussian())
    }

    pub fn density(&mut self, dim: usize, kind: StateKind) -> Result<DensityMatrix> {
        match kind {
            StateKind::Mixed => {
                let g = self.ginibre(dim);
                let w = &g * &g.adjoint();
                Ok(DensityMatrix::from_positive(&w))
            }
            StateKind::Pure => {
                let v: Vec<C64> = (0..dim).map(|_| self.complex_gaussian()).collect();
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
                Ok(DensityMatrix::from_positive(&ComplexMatrix::projector(&v)))
            }
            StateKind::BellDiagonal => {
                if dim != 4 {
                    return Err(Error::DimensionMismatch {
                        expected: 4,
                        found: dim,
                    });
                }
                self.bell_diagonal()?.to_density()
            }
        }
    }

    pub fn bell_diagonal(&mut self) -> Result<BellDiagonal> {
        loop {
            let c = [
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            ];
            if let Ok(p) = BellDiagonal::new(c) {
                return Ok(p);
            }
        }
    }

    /// Uniform point on the unit sphere.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v = [self.gaussian(), self.gaussian(), self.gaussian()];
            let n = crate::state::norm3(&v);
            if n > 1e-9 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }

    /// Projector pair `(I ∓ n·σ)/2` along a uniformly random axis `n`.
    pub fn projector_pair(&mut self) -> ProjectorPair {
        let n = self.unit_vector();
        ProjectorPair::along(n).expect("unit axis gives a valid pair")
    }

    /// Haar-random unitary via Gram–Schmidt on a Ginibre matrix.
    pub fn haar_unitary(&mut self, dim: usize) -> ComplexMatrix {
        let g = self.ginibre(dim);
        let mut columns: Vec<Vec<C64>> = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut v = g.column(j);
            for q in &columns {
                let overlap: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= overlap * qi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            columns.push(v.into_iter().map(|z| z / norm).collect());
        }
        ComplexMatrix::from_columns(&columns).expect("square by construction")
    }
}

/// One state drawn from a fresh sampler seeded with `seed`.
pub fn random_density(dim: usize, seed: u64, kind: StateKind) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    Sampler::new(seed).density(dim, kind)
}
