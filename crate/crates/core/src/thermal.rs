//! Work bounds in contact with baths at a common inverse temperature `β`.
//!
//! The quantities here are the free-energy differences
//! `F(ρ) - F(ρ_thermal)` with `F(σ) = Tr(Hσ) - S(σ)/β`. They bound the
//! extractable work from above; whether a protocol attains them is not
//! modelled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{CompositeHamiltonian, LocalHamiltonian};
use crate::linalg::{SpectralDecomposition, C64};
use crate::state::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalConfig {
    beta: f64,
}

impl ThermalConfig {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::BadBeta(beta));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Anything with a cached spectrum and a subsystem layout.
pub trait SpectralHamiltonian {
    fn dims(&self) -> Vec<usize>;
    fn spectrum(&self) -> &SpectralDecomposition;
    fn matrix(&self) -> &crate::linalg::ComplexMatrix;
}

impl SpectralHamiltonian for CompositeHamiltonian {
    fn dims(&self) -> Vec<usize> {
        CompositeHamiltonian::dims(self).to_vec()
    }
    fn spectrum(&self) -> &SpectralDecomposition {
        CompositeHamiltonian::spectrum(self)
    }
    fn matrix(&self) -> &crate::linalg::ComplexMatrix {
        self.total()
    }
}

impl SpectralHamiltonian for LocalHamiltonian {
    fn dims(&self) -> Vec<usize> {
        vec![self.dim()]
    }
    fn spectrum(&self) -> &SpectralDecomposition {
        LocalHamiltonian::spectrum(self)
    }
    fn matrix(&self) -> &crate::linalg::ComplexMatrix {
        LocalHamiltonian::matrix(self)
    }
}

/// Boltzmann weights along the ascending spectrum, normalized, and `ln Z`.
/// The ground-state weight is factored out so large `β` cannot underflow.
fn boltzmann(levels: &[f64], beta: f64) -> (Vec<f64>, f64) {
    let e0 = levels[0];
    let w: Vec<f64> = levels.iter().map(|e| (-beta * (e - e0)).exp()).collect();
    let z_shifted: f64 = w.iter().sum();
    let ln_z = -beta * e0 + z_shifted.ln();
    (w.iter().map(|x| x / z_shifted).collect(), ln_z)
}

/// `ln Z = ln Tr exp(-βH)`.
pub fn log_partition_function<H: SpectralHamiltonian>(h: &H, beta: f64) -> Result<f64> {
    let cfg = ThermalConfig::new(beta)?;
    Ok(boltzmann(&h.spectrum().eigenvalues, cfg.beta).1)
}

/// `exp(-βH) / Z`.
pub fn gibbs_state<H: SpectralHamiltonian>(h: &H, beta: f64) -> Result<DensityMatrix> {
    let cfg = ThermalConfig::new(beta)?;
    let spec = h.spectrum();
    let (weights, _) = boltzmann(&spec.eigenvalues, cfg.beta);
    let w: Vec<C64> = weights.iter().map(|&x| C64::new(x, 0.0)).collect();
    let m = spec.synthesize(&w);
    DensityMatrix::new(&h.dims(), m.hermitian_part())
}

/// `F(ρ) = Tr(Hρ) - S(ρ)/β`.
pub fn free_energy<H: SpectralHamiltonian>(rho: &DensityMatrix, h: &H, beta: f64) -> Result<f64> {
    let cfg = ThermalConfig::new(beta)?;
    if rho.dims() != h.dims().as_slice() {
        return Err(Error::DimensionMismatch {
            expected: h.spectrum().dim(),
            found: rho.dim(),
        });
    }
    Ok(rho.expectation(h.matrix())? - rho.von_neumann_entropy()? / cfg.beta)
}

/// `F(ρ) - F(ρ_thermal)`, using `F(ρ_thermal) = -ln Z / β`.
pub fn extractable_work_cb<H: SpectralHamiltonian>(
    rho: &DensityMatrix,
    h: &H,
    beta: f64,
) -> Result<f64> {
    let f = free_energy(rho, h, beta)?;
    Ok(f + log_partition_function(h, beta)? / beta)
}

/// `Σ_i S(ρ_i) - S(ρ)` in nats.
pub fn total_correlation(rho: &DensityMatrix) -> Result<f64> {
    let mut s = -rho.von_neumann_entropy()?;
    for i in 0..rho.parties() {
        s += rho.marginal(i)?.von_neumann_entropy()?;
    }
    Ok(s)
}

/// Global-minus-local bath-assisted work, `[Σ_i S(ρ_i) - S(ρ)] / β`.
pub fn thermal_gap(rho: &DensityMatrix, h: &CompositeHamiltonian, beta: f64) -> Result<f64> {
    let cfg = ThermalConfig::new(beta)?;
    if rho.dims() != h.dims() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(total_correlation(rho)? / cfg.beta)
}

/// Both routes to the thermal gap, with the work bounds they come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalReport {
    pub beta: f64,
    pub free_energy: f64,
    pub thermal_free_energy: f64,
    /// Upper bound on bath-assisted work with global operations.
    pub global_work_bound: f64,
    /// Sum of per-party bounds with local operations.
    pub local_work_bound: f64,
    /// `global_work_bound - local_work_bound`.
    pub gap_free_energy_path: f64,
    /// `total_correlation / β`.
    pub thermal_gap: f64,
    /// `Σ_i S(ρ_i) - S(ρ)` in nats (mutual information for two parties).
    pub total_correlation_nats: f64,
}

pub fn thermal_report(
    rho: &DensityMatrix,
    h: &CompositeHamiltonian,
    beta: f64,
) -> Result<ThermalReport> {
    let global = extractable_work_cb(rho, h, beta)?;
    let mut local = 0.0;
    for (i, hi) in h.locals().iter().enumerate() {
        local += extractable_work_cb(&rho.marginal(i)?, hi, beta)?;
    }
    let corr = total_correlation(rho)?;
    Ok(ThermalReport {
        beta,
        free_energy: free_energy(rho, h, beta)?,
        thermal_free_energy: -log_partition_function(h, beta)? / beta,
        global_work_bound: global,
        local_work_bound: local,
        gap_free_energy_path: global - local,
        thermal_gap: corr / beta,
        total_correlation_nats: corr,
    })
}
