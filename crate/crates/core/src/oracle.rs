//! Brute-force cross-checks that do not rely on the closed forms.
//!
//! * [`min_energy_product_unitaries`] minimizes `Tr[U ρ U^† H]` over product
//!   unitaries `U = ⊗_i U_i` by random-restart Nelder-Mead, acting on the
//!   full state with the full Hamiltonian.
//! * [`probe_global_passivity`] samples Haar global unitaries and reports the
//!   largest energy decrease found.
//! * [`correlation_gap_scan`] classifies sampled states and checks that every
//!   quantum-correlated one has a strictly positive ergotropic gap.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{is_classically_correlated, CC_TOL};
use crate::ergotropy::{ergotropic_gap, ENERGY_TOL};
use crate::error::{Error, Result};
use crate::hamiltonian::CompositeHamiltonian;
use crate::linalg::{
    gell_mann_basis, kron_all, trace_product, unitary_from_generator, ComplexMatrix,
};
use crate::random::{haar_unitary, haar_vector, seeded_rng, seeded_stream};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Spread of objective values across the simplex at which a descent stops.
    pub step_tolerance: f64,
    pub seed: u64,
    /// Edge length of the initial simplex in generator coordinates.
    pub initial_step: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 2000,
            step_tolerance: 1e-9,
            seed: 0,
            initial_step: 0.5,
        }
    }
}

impl SearchConfig {
    fn check(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::BadProbability("restarts must be at least 1".into()));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.step_tolerance) || !positive(self.initial_step) {
            return Err(Error::BadProbability("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Generator coefficients per party: `d² - 1` (the global phase is dropped).
pub fn param_dims(dims: &[usize]) -> Vec<usize> {
    dims.iter().map(|d| d * d - 1).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub best_value: f64,
    pub best_params: Vec<f64>,
    pub iterations_used: usize,
    pub converged: bool,
    pub per_restart_values: Vec<f64>,
}

struct Descent {
    value: f64,
    params: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Nelder-Mead with standard coefficients. After the simplex collapses it
/// is rebuilt around the best vertex; the run stops once a rebuild brings no
/// improvement beyond `tol`, or when `max_iters` is spent.
fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    start: Vec<f64>,
    step: f64,
    tol: f64,
    max_iters: usize,
) -> Descent {
    let n = start.len();
    let build = |x0: &[f64]| -> Vec<(Vec<f64>, f64)> {
        let mut s = vec![(x0.to_vec(), f(x0))];
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            let fx = f(&x);
            s.push((x, fx));
        }
        s
    };
    let mut simplex = build(&start);
    let mut iters = 0;
    let mut last_restart_best = f64::INFINITY;
    let x_tol = tol.sqrt();

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= tol && diameter <= x_tol {
            if last_restart_best - simplex[0].1 <= tol {
                return Descent {
                    value: simplex[0].1,
                    params: simplex[0].0.clone(),
                    iterations: iters,
                    converged: true,
                };
            }
            last_restart_best = simplex[0].1;
            let best = simplex[0].0.clone();
            simplex = build(&best);
            continue;
        }
        if iters >= max_iters {
            return Descent {
                value: simplex[0].1,
                params: simplex[0].0.clone(),
                iterations: iters,
                converged: false,
            };
        }
        iters += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[n].1 {
            let x = along(-0.5);
            let fx = f(&x);
            (x, fx)
        } else {
            let x = along(0.5);
            let fx = f(&x);
            (x, fx)
        };
        if fc < fr.min(simplex[n].1) {
            simplex[n] = (xc, fc);
            continue;
        }
        // shrink towards the best vertex
        let best = simplex[0].0.clone();
        for v in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&v.0)
                .map(|(b, x)| b + 0.5 * (x - b))
                .collect();
            let fx = f(&x);
            *v = (x, fx);
        }
    }
}

/// Energy `Tr[U ρ U^† H]` for the product unitary encoded by `params`.
struct ProductUnitaryObjective<'a> {
    rho: &'a ComplexMatrix,
    h: &'a ComplexMatrix,
    bases: Vec<Vec<ComplexMatrix>>,
}

impl ProductUnitaryObjective<'_> {
    fn unitary(&self, params: &[f64]) -> Result<ComplexMatrix> {
        let mut offset = 0;
        let mut locals = Vec::with_capacity(self.bases.len());
        for basis in &self.bases {
            let k = basis.len();
            locals.push(unitary_from_generator(basis, &params[offset..offset + k])?);
            offset += k;
        }
        Ok(kron_all(&locals))
    }

    fn energy(&self, params: &[f64]) -> f64 {
        match self
            .unitary(params)
            .and_then(|u| self.rho.conjugate_by(&u))
            .and_then(|r| trace_product(&r, self.h))
        {
            Ok(e) => e.re,
            Err(_) => f64::INFINITY,
        }
    }
}

/// `min_{U ∈ LU} Tr[U ρ U^† H]` by random-restart Nelder-Mead.
///
/// The value is an upper bound on the true minimum. Restart `k` draws its
/// starting point from stream `k` of `cfg.seed`, so the report is
/// independent of scheduling and adding restarts never raises `best_value`.
pub fn min_energy_product_unitaries(
    rho: &DensityMatrix,
    h: &CompositeHamiltonian,
    cfg: &SearchConfig,
) -> Result<OracleReport> {
    cfg.check()?;
    if rho.dims() != h.dims() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    let objective = ProductUnitaryObjective {
        rho: rho.matrix(),
        h: h.total(),
        bases: h.dims().iter().map(|&d| gell_mann_basis(d)).collect(),
    };
    let n_params: usize = param_dims(h.dims()).iter().sum();

    let runs: Vec<Descent> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = seeded_stream(cfg.seed, k as u64);
            let start: Vec<f64> = (0..n_params)
                .map(|_| std::f64::consts::PI * (2.0 * rand::Rng::random::<f64>(&mut rng) - 1.0))
                .collect();
            nelder_mead(
                |x| objective.energy(x),
                start,
                cfg.initial_step,
                cfg.step_tolerance,
                cfg.max_iters,
            )
        })
        .collect();

    let mut best = 0;
    for (k, r) in runs.iter().enumerate() {
        if r.value < runs[best].value {
            best = k;
        }
    }
    let per_restart_values: Vec<f64> = runs.iter().map(|r| r.value).collect();
    // Converged: the winning descent stopped on tolerance and, when there
    // is more than one restart, another restart reached the same value.
    let corroborated = cfg.restarts == 1
        || runs
            .iter()
            .enumerate()
            .any(|(k, r)| k != best && r.value - runs[best].value <= 1e-6);
    Ok(OracleReport {
        best_value: runs[best].value,
        best_params: runs[best].params.clone(),
        iterations_used: runs.iter().map(|r| r.iterations).sum(),
        converged: runs[best].converged && corroborated,
        per_restart_values,
    })
}

/// Largest `Tr[ρ H] - Tr[U ρ U^† H]` over `samples` Haar global unitaries.
/// For a passive input this is at most rounding noise.
pub fn probe_global_passivity(
    rho_passive: &DensityMatrix,
    h: &CompositeHamiltonian,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if rho_passive.dims() != h.dims() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho_passive.dim(),
        });
    }
    let base = rho_passive.expectation(h.total())?;
    let mut rng = seeded_rng(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let u = haar_unitary(h.dim(), &mut rng);
        let e = trace_product(&rho_passive.matrix().conjugate_by(&u)?, h.total())?.re;
        worst = worst.max(base - e);
    }
    Ok(worst)
}

/// Sampler for [`correlation_gap_scan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Ensemble {
    /// Haar-random pure states on the full space.
    HaarPure { count: usize },
    /// Werner states at the listed weights (two qubits only).
    Werner { weights: Vec<f64> },
    /// Ginibre-induced mixed states.
    InducedMixed { count: usize, ancilla_dim: usize },
    /// Products of Haar-random local pure states.
    PureProduct { count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Correlation {
    Classical,
    Quantum,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub label: String,
    pub gap: f64,
    pub correlation: Correlation,
    pub pure_product: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub samples: Vec<ScanSample>,
    pub quantum: usize,
    pub classical: usize,
    pub inconclusive: usize,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub seed: u64,
    pub classification_tol: f64,
    pub gap_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            classification_tol: CC_TOL,
            gap_tol: ENERGY_TOL,
        }
    }
}

/// Samples every ensemble, classifies each state and checks the gap:
/// quantum-correlated samples need `gap > gap_tol`, pure products need
/// `gap <= gap_tol`. Inconclusive samples are counted and never judged.
pub fn correlation_gap_scan(
    ensembles: &[Ensemble],
    h: &CompositeHamiltonian,
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    let dims = h.dims().to_vec();
    let mut rng = seeded_rng(cfg.seed);
    let mut states: Vec<(String, DensityMatrix, bool)> = Vec::new();
    for e in ensembles {
        match e {
            Ensemble::HaarPure { count } => {
                for k in 0..*count {
                    let s = DensityMatrix::haar_random_pure_with(&dims, &mut rng)?;
                    states.push((format!("haar_pure[{k}]"), s, false));
                }
            }
            Ensemble::Werner { weights } => {
                for &p in weights {
                    states.push((format!("werner[{p}]"), DensityMatrix::werner(p)?, false));
                }
            }
            Ensemble::InducedMixed { count, ancilla_dim } => {
                for k in 0..*count {
                    let s =
                        DensityMatrix::induced_random_mixed_with(&dims, *ancilla_dim, &mut rng)?;
                    states.push((format!("induced[{k}]"), s, false));
                }
            }
            Ensemble::PureProduct { count } => {
                for k in 0..*count {
                    let locals: Vec<_> = dims.iter().map(|&d| haar_vector(d, &mut rng)).collect();
                    states.push((
                        format!("product[{k}]"),
                        DensityMatrix::pure_product(&locals)?,
                        true,
                    ));
                }
            }
        }
    }

    let samples = states
        .into_par_iter()
        .map(|(label, rho, pure_product)| {
            let gap = ergotropic_gap(&rho, h)?.ergotropic_gap;
            let correlation = match is_classically_correlated(&rho, cfg.classification_tol) {
                Ok(w) if w.is_cc => Correlation::Classical,
                Ok(_) => Correlation::Quantum,
                Err(Error::Inconclusive(_)) => Correlation::Inconclusive,
                Err(e) => return Err(e),
            };
            let mut ok = true;
            if correlation == Correlation::Quantum && gap <= cfg.gap_tol {
                ok = false;
            }
            if pure_product && gap > cfg.gap_tol {
                ok = false;
            }
            Ok(ScanSample {
                label,
                gap,
                correlation,
                pure_product,
                ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |c: Correlation| samples.iter().filter(|s| s.correlation == c).count();
    let failures = samples.iter().filter(|s| !s.ok).count();
    Ok(ScanReport {
        quantum: count(Correlation::Quantum),
        classical: count(Correlation::Classical),
        inconclusive: count(Correlation::Inconclusive),
        failures,
        passed: failures == 0,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ergotropy::passive_state;
    use crate::linalg::{ONE, ZERO};

    fn unit() -> CompositeHamiltonian {
        CompositeHamiltonian::unit_gap_qubits(2).unwrap()
    }

    fn quick() -> SearchConfig {
        SearchConfig {
            restarts: 4,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let d = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5,
            vec![0.0, 0.0],
            0.5,
            1e-12,
            5000,
        );
        assert!(d.converged);
        assert!((d.value - 0.5).abs() < 1e-10);
        assert!((d.params[0] - 1.0).abs() < 1e-4 && (d.params[1] + 2.0).abs() < 1e-4);
    }

    #[test]
    fn werner_cannot_be_lowered_locally() {
        let r =
            min_energy_product_unitaries(&DensityMatrix::werner(0.7).unwrap(), &unit(), &quick())
                .unwrap();
        assert!((r.best_value - 1.0).abs() < 1e-9);
        assert!(r.converged);
    }

    #[test]
    fn excited_product_rotates_to_ground() {
        let rho = DensityMatrix::pure(&[2, 2], &[ZERO, ZERO, ZERO, ONE]).unwrap();
        let r = min_energy_product_unitaries(&rho, &unit(), &quick()).unwrap();
        assert!(r.best_value.abs() < 1e-6);
        assert!(r.best_value >= -1e-12);
        assert_eq!(r.per_restart_values.len(), 4);
        assert_eq!(
            r.best_value,
            r.per_restart_values
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min)
        );
    }

    #[test]
    fn seed_determinism() {
        let rho = DensityMatrix::induced_random_mixed(&[2, 2], 2, 3).unwrap();
        let a = min_energy_product_unitaries(&rho, &unit(), &quick()).unwrap();
        let b = min_energy_product_unitaries(&rho, &unit(), &quick()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_config() {
        let cfg = SearchConfig {
            restarts: 0,
            ..SearchConfig::default()
        };
        let rho = DensityMatrix::werner(0.1).unwrap();
        assert!(min_energy_product_unitaries(&rho, &unit(), &cfg).is_err());
    }

    #[test]
    fn passivity_probe_examples() {
        let h = unit();
        let mm = DensityMatrix::maximally_mixed(&[2, 2]).unwrap();
        assert!(probe_global_passivity(&mm, &h, 1000, 1).unwrap().abs() < 1e-12);
        let g = crate::thermal::gibbs_state(&h, 1.0).unwrap();
        assert!(probe_global_passivity(&g, &h, 1000, 2).unwrap() <= 1e-9);
        let p = passive_state(&DensityMatrix::werner(0.5).unwrap(), &h).unwrap();
        assert!(probe_global_passivity(&p, &h, 1000, 3).unwrap() <= 1e-9);
        // a non-passive state is caught
        let excited = DensityMatrix::pure(&[2, 2], &[ZERO, ZERO, ZERO, ONE]).unwrap();
        assert!(probe_global_passivity(&excited, &h, 200, 4).unwrap() > 0.1);
    }

    #[test]
    fn scan_small() {
        let report = correlation_gap_scan(
            &[
                Ensemble::HaarPure { count: 10 },
                Ensemble::Werner {
                    weights: vec![0.0, 0.5, 1.0],
                },
                Ensemble::PureProduct { count: 5 },
            ],
            &unit(),
            &ScanConfig::default(),
        )
        .unwrap();
        assert!(report.passed);
        assert_eq!(report.samples.len(), 18);
        assert_eq!(report.inconclusive, 0);
        assert_eq!(report.quantum, 12);
    }

    #[test]
    fn param_dims_drop_phase() {
        assert_eq!(param_dims(&[2, 3, 4]), vec![3, 8, 15]);
    }
}
