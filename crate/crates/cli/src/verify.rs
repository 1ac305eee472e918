//! Seeded property suite: each property records its worst residual over the ensemble.

use ergolab_core::daemonic::local_work_geometric;
use ergolab_core::measurement::weak_branch;
use ergolab_core::random::{Sampler, StateKind};
use ergolab_core::{
    classical_nonlocal_work, classical_total_work, daemonic_ergotropy, daemonic_gain,
    daemonic_geometric, local_work, nonselective_weak_work, passive_energy,
    reduced_state, super_ergotropy, total_ergotropy, BellDiagonal, BlochTwoQubit, ComplexMatrix,
    DensityMatrix, Hamiltonian, ProjectorPair, Sign, Subsystem, WeakMeasurement,
};

use crate::config::ScenarioConfig;
use crate::csv::{fmt_g12, Table};
use crate::error::Result;

pub const STRENGTHS: [f64; 6] = [0.0, 0.1, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn failure_summary(&self) -> Option<String> {
        let failed: Vec<String> = self
            .properties
            .iter()
            .filter(|p| !p.passed)
            .map(|p| format!("{} (worst residual {})", p.name, fmt_g12(p.worst)))
            .collect();
        (!failed.is_empty()).then(|| format!("property failures: {}", failed.join(", ")))
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["property", "cases", "worst_residual", "tolerance", "status"]);
        for p in &self.properties {
            t.push(vec![
                p.name.to_string(),
                p.cases.to_string(),
                fmt_g12(p.worst),
                fmt_g12(self.tolerance),
                if p.passed { "pass" } else { "fail" }.to_string(),
            ]);
        }
        t
    }
}

struct Tracker {
    name: &'static str,
    cases: usize,
    worst: f64,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            worst: 0.0,
        }
    }

    /// Residuals are non-negative violations; NaN poisons the property.
    fn record(&mut self, residual: f64) {
        self.cases += 1;
        if residual.is_nan() || residual > self.worst {
            self.worst = if residual.is_nan() { f64::NAN } else { residual };
        }
    }

    fn finish(self, tol: f64) -> PropertyResult {
        PropertyResult {
            name: self.name,
            cases: self.cases,
            worst: self.worst,
            passed: !self.worst.is_nan() && self.worst <= tol,
        }
    }
}

macro_rules! trackers {
    ($($field:ident => $name:literal),* $(,)?) => {
        struct Suite { $($field: Tracker),* }
        impl Suite {
            fn new() -> Self { Self { $($field: Tracker::new($name)),* } }
            fn finish(self, tol: f64) -> Vec<PropertyResult> { vec![$(self.$field.finish(tol)),*] }
        }
    };
}

trackers! {
    eigen => "eigen-reconstruction",
    bloch => "bloch-round-trip",
    nonnegative => "ergotropy-nonnegative",
    permutation => "ergotropy-permutation-optimum",
    povm => "povm-completeness",
    branches => "weak-branch-consistency",
    equality => "nonselective-equals-daemonic",
    dominance => "super-dominates-daemonic",
    advantage => "selective-advantage-closed-form",
    gain => "daemonic-gain-nonnegative",
    geometric => "geometric-daemonic-identity",
    above_local => "daemonic-above-local",
    measured_total => "measured-total-closed-form",
    measured_nonlocal => "measured-nonlocal-closed-form",
    bell_order => "bell-work-ordering",
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
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

fn check_case(
    suite: &mut Suite,
    rho: &DensityMatrix,
    pair: &ProjectorPair,
    bell: Option<BellDiagonal>,
    h: &Hamiltonian,
    orderings: &[Vec<usize>],
) -> Result<()> {
    let gap = h.spread();
    let hj = h.joint_with_idle_ancilla();

    let eig = rho.matrix().eig_hermitian()?;
    suite
        .eigen
        .record(eig.reconstruct().max_abs_diff(rho.matrix()).max(eig.eigenvectors.unitarity_residual()));

    let b = BlochTwoQubit::from_density(rho)?;
    suite.bloch.record(b.to_density()?.matrix().max_abs_diff(rho.matrix()));

    let initial = hj.energy(rho)?;
    let passive = passive_energy(rho, &hj)?;
    suite.nonnegative.record((passive - initial).max(0.0));
    let best_pairing = orderings
        .iter()
        .map(|p| p.iter().zip(&eig.eigenvalues).map(|(&j, r)| r * hj.energies()[j]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    suite.permutation.record((best_pairing - passive).abs());

    let rho_s = reduced_state(rho, Subsystem::System)?;
    let daemonic = daemonic_ergotropy(rho, h, pair)?.work;
    for x in STRENGTHS {
        let w = WeakMeasurement::new(x, pair.clone())?;
        let completeness = &w.povm_element(Sign::Plus) + &w.povm_element(Sign::Minus);
        suite.povm.record(completeness.max_abs_diff(&ComplexMatrix::identity(2)));

        let mut mix = ComplexMatrix::zeros(2);
        let mut total_p = 0.0;
        for s in Sign::BOTH {
            let br = weak_branch(rho, &w, s)?;
            total_p += br.probability;
            if let Some(st) = &br.conditional_state {
                mix = &mix + &st.matrix().scale_real(br.probability);
            }
        }
        suite
            .branches
            .record((total_p - 1.0).abs().max(mix.max_abs_diff(rho_s.matrix())));

        suite
            .equality
            .record((nonselective_weak_work(rho, h, &w)?.work - daemonic).abs());

        if x > 0.0 {
            let best = super_ergotropy(rho, h, &w)?;
            suite.dominance.record((daemonic - best.work()).max(0.0));
            suite
                .advantage
                .record((best.advantage - (best.work() - daemonic)).abs());
        }
    }
    suite.gain.record((-daemonic_gain(rho, h, pair)?).max(0.0));

    let comp_daemonic = daemonic_ergotropy(rho, h, &ProjectorPair::computational())?.work;
    suite
        .geometric
        .record((daemonic_geometric(&b, gap)? - comp_daemonic).abs());
    let loc = local_work(rho, h)?;
    suite.above_local.record(
        (loc - comp_daemonic)
            .max(0.0)
            .max((loc - local_work_geometric(b.s, gap)?).abs()),
    );

    let measured = classical_total_work(rho, &hj)?;
    suite
        .measured_total
        .record((measured - (1.0 + b.s[2]) * gap / 2.0).abs());
    let norm_s = b.s.iter().map(|v| v * v).sum::<f64>().sqrt();
    suite
        .measured_nonlocal
        .record((classical_nonlocal_work(rho, h)? - (1.0 - norm_s) * gap / 2.0).abs());

    if bell.is_some() {
        let tot = total_ergotropy(rho, &hj)?.work;
        let chain = [loc, comp_daemonic, tot, measured];
        let violation = chain.windows(2).map(|w| (w[0] - w[1]).max(0.0)).fold(0.0, f64::max);
        suite.bell_order.record(violation);
    }
    Ok(())
}

/// Runs every property over `cfg.count` seeded two-qubit states; a `--state`
/// is validated and checked as an extra case.
pub fn run_verify(cfg: &ScenarioConfig) -> Result<VerifyReport> {
    let h = cfg.hamiltonian()?;
    let extra = match &cfg.state {
        Some(spec) => Some(spec.load()?),
        None => None,
    };
    let mut report = VerifyReport {
        tolerance: cfg.tolerance,
        properties: Vec::new(),
    };
    if cfg.count == 0 && extra.is_none() {
        return Ok(report);
    }
    let orderings = permutations(4);
    let mut suite = Suite::new();
    let mut sampler = Sampler::new(cfg.seed);
    if let Some(state) = extra {
        if state.density.dim() == 4 {
            let pair = sampler.projector_pair();
            check_case(&mut suite, &state.density, &pair, state.bell, &h, &orderings)?;
        }
    }
    for i in 0..cfg.count {
        let (rho, bell) = match i % 3 {
            0 => (sampler.density(4, StateKind::Mixed)?, None),
            1 => (sampler.density(4, StateKind::Pure)?, None),
            _ => {
                let p = sampler.bell_diagonal()?;
                (p.to_density()?, Some(p))
            }
        };
        let pair = sampler.projector_pair();
        check_case(&mut suite, &rho, &pair, bell, &h, &orderings)?;
    }
    report.properties = suite.finish(cfg.tolerance);
    report.properties.retain(|p| p.cases > 0);
    Ok(report)
}
