//! Passive states, global and local ergotropy, and the ergotropic gap.
//!
//! For a non-interacting Hamiltonian the best product unitary acts on each
//! marginal separately, so local ergotropy is the sum of the marginals'
//! ergotropies and the gap reduces to a difference of passive energies:
//!
//! `W_EG = Σ_i Tr[ρ_i^passive H_i] - Tr[ρ^passive H]`.
//!
//! The two-qubit closed forms at the bottom of this module are independent
//! routes to the same numbers and are cross-checked against the general path
//! in the test suite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{CompositeHamiltonian, LocalHamiltonian, QubitHamiltonianParams};
use crate::linalg::{ComplexMatrix, SpectralDecomposition};
use crate::state::DensityMatrix;

/// Tolerance for "equals zero" energy claims, at unit energy scale.
pub const ENERGY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkReport {
    pub global_ergotropy: f64,
    pub local_ergotropy: f64,
    pub ergotropic_gap: f64,
    pub initial_energy: f64,
    pub passive_energy: f64,
    pub local_energies: Vec<f64>,
    pub local_passive_energies: Vec<f64>,
}

fn check_dims(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<()> {
    if rho.dims() != h.dims() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Populations sorted descending.
fn descending_populations(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let mut lambda = rho.eigenvalues()?;
    lambda.sort_by(|a, b| b.total_cmp(a));
    Ok(lambda)
}

/// `Σ_α λ↓_α ξ↑_α`; independent of pairing inside degenerate levels.
fn rearranged_energy(descending: &[f64], levels: &SpectralDecomposition) -> f64 {
    descending
        .iter()
        .zip(&levels.eigenvalues)
        .map(|(l, e)| l * e)
        .sum()
}

/// Energy of the passive state `Tr[ρ^passive H]`.
pub fn passive_energy(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(rearranged_energy(
        &descending_populations(rho)?,
        h.spectrum(),
    ))
}

fn local_passive_energy(marginal: &DensityMatrix, h: &LocalHamiltonian) -> Result<f64> {
    Ok(rearranged_energy(
        &descending_populations(marginal)?,
        h.spectrum(),
    ))
}

/// `Σ_α λ↓_α |ξ_α><ξ_α|` with `ξ` ascending.
pub fn passive_state(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let lambda = descending_populations(rho)?;
    let (_, vectors) = h.sorted_energy_levels();
    let d = h.dim();
    let mut m = ComplexMatrix::zeros(d, d);
    for (k, &l) in lambda.iter().enumerate() {
        if l != 0.0 {
            m = &m + &ComplexMatrix::outer(&vectors.column_vec(k)).scale_real(l);
        }
    }
    DensityMatrix::new(rho.dims(), m.hermitian_part())
}

/// `Tr[ρ H] - Tr[ρ^passive H]`.
pub fn global_ergotropy(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<f64> {
    check_dims(rho, h)?;
    Ok(rho.expectation(h.total())? - passive_energy(rho, h)?)
}

/// Per-party `(Tr[ρ_i H_i], Tr[ρ_i^passive H_i])`.
fn local_energy_pairs(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<Vec<(f64, f64)>> {
    check_dims(rho, h)?;
    h.locals()
        .iter()
        .enumerate()
        .map(|(i, hi)| {
            let m = rho.marginal(i)?;
            Ok((m.expectation(hi.matrix())?, local_passive_energy(&m, hi)?))
        })
        .collect()
}

/// Sum of the marginals' ergotropies.
pub fn local_ergotropy(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<f64> {
    Ok(local_energy_pairs(rho, h)?.iter().map(|(e, p)| e - p).sum())
}

/// Gap as a difference of passive energies, without going through the
/// ergotropies.
pub fn gap_from_passive_energies(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<f64> {
    let local: f64 = local_energy_pairs(rho, h)?.iter().map(|(_, p)| p).sum();
    Ok(local - passive_energy(rho, h)?)
}

pub fn ergotropic_gap(rho: &DensityMatrix, h: &CompositeHamiltonian) -> Result<WorkReport> {
    check_dims(rho, h)?;
    let initial_energy = rho.expectation(h.total())?;
    let passive = passive_energy(rho, h)?;
    let pairs = local_energy_pairs(rho, h)?;
    let global = initial_energy - passive;
    let local: f64 = pairs.iter().map(|(e, p)| e - p).sum();
    Ok(WorkReport {
        global_ergotropy: global,
        local_ergotropy: local,
        ergotropic_gap: global - local,
        initial_energy,
        passive_energy: passive,
        local_energies: pairs.iter().map(|p| p.0).collect(),
        local_passive_energies: pairs.iter().map(|p| p.1).collect(),
    })
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.iter()
        .any(|x| !x.is_finite() || *x < -crate::state::SIMPLEX_TOL)
    {
        return Err(Error::BadProbability(format!("{p:?} has a negative entry")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > crate::state::SIMPLEX_TOL {
        return Err(Error::BadProbability(format!("{p:?} sums to {s}")));
    }
    Ok(())
}

/// Two-qubit composite levels `e_xy = e^x_1 + e^y_2`, ascending.
fn ascending_two_qubit_levels(
    p1: &QubitHamiltonianParams,
    p2: &QubitHamiltonianParams,
) -> [f64; 4] {
    let mut e = [
        p1.ground() + p2.ground(),
        p1.ground() + p2.excited(),
        p1.excited() + p2.ground(),
        p1.excited() + p2.excited(),
    ];
    e.sort_by(f64::total_cmp);
    e
}

/// `W_EG = ½ Σ_i [e⁺_i - e⁻_i |r_i|] - Σ λ_xy e_xy` for two qubits.
///
/// `lambda` must be the state's spectrum sorted descending; it is paired
/// with the composite levels sorted ascending. `r1`, `r2` are the marginal
/// Bloch vector lengths.
pub fn two_qubit_gap_closed_form(
    lambda: [f64; 4],
    p1: &QubitHamiltonianParams,
    p2: &QubitHamiltonianParams,
    r1: f64,
    r2: f64,
) -> Result<f64> {
    check_distribution(&lambda)?;
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadProbability(format!(
            "{lambda:?} is not sorted descending"
        )));
    }
    for r in [r1, r2] {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::BadBloch(r));
        }
    }
    let levels = ascending_two_qubit_levels(p1, p2);
    let passive: f64 = lambda.iter().zip(&levels).map(|(l, e)| l * e).sum();
    let local = 0.5 * (p1.e_plus - p1.e_minus * r1) + 0.5 * (p2.e_plus - p2.e_minus * r2);
    Ok(local - passive)
}

/// Gap of a Bell-diagonal state `Σ p_i |B_i><B_i|` from its weights.
///
/// The marginals are maximally mixed, so the gap is a linear function of the
/// ordered weights `p_max ≥ p' ≥ p'' ≥ p_min`. When party 1 has the larger
/// level spacing `|01>` lies below `|10>` and the coefficients are
///
/// `e⁰₁(½ - p_max - p') + e⁰₂(½ - p_max - p'') + e¹₁(½ - p'' - p_min) + e¹₂(½ - p' - p_min)`;
///
/// otherwise `p'` and `p''` trade places. Weights may be given in any order.
pub fn bell_mixture_gap(
    p: [f64; 4],
    p1: &QubitHamiltonianParams,
    p2: &QubitHamiltonianParams,
) -> Result<f64> {
    check_distribution(&p)?;
    let mut s = p;
    s.sort_by(|a, b| b.total_cmp(a));
    let [p_max, second, third, p_min] = s;
    let (p_a, p_b) = if p1.gap() >= p2.gap() {
        (second, third)
    } else {
        (third, second)
    };
    Ok(p1.ground() * (0.5 - p_max - p_a)
        + p2.ground() * (0.5 - p_max - p_b)
        + p1.excited() * (0.5 - p_b - p_min)
        + p2.excited() * (0.5 - p_a - p_min))
}

/// `½ p [(e¹₁ - e⁰₁) + (e¹₂ - e⁰₂)]`.
pub fn werner_gap(p: f64, p1: &QubitHamiltonianParams, p2: &QubitHamiltonianParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(format!(
            "Werner weight {p} outside [0, 1]"
        )));
    }
    Ok(0.5 * p * (p1.gap() + p2.gap()))
}

/// Gap of `diag(α, 1-α) ⊗ diag(β, 1-β)` with diagonal qubit Hamiltonians of
/// spacings `gap1`, `gap2`.
///
/// With `a = min(α, 1-α)` and `b = min(β, 1-β)` this is
/// `max(0, (a - b)(gap1 - gap2))`: the global rearrangement only beats the
/// local one when the more mixed marginal sits on the party with the larger
/// spacing. For `β < α < ½` and `gap1 ≥ gap2` it is `(α - β)(gap1 - gap2)`.
pub fn mixed_product_gap(alpha: f64, beta: f64, gap1: f64, gap2: f64) -> Result<f64> {
    for x in [alpha, beta] {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::BadProbability(format!(
                "population {x} outside [0, 1]"
            )));
        }
    }
    if gap1 < 0.0 || gap2 < 0.0 {
        return Err(Error::BadProbability(
            "level spacings must be non-negative".into(),
        ));
    }
    let a = alpha.min(1.0 - alpha);
    let b = beta.min(1.0 - beta);
    Ok(((a - b) * (gap1 - gap2)).max(0.0))
}

/// Spectrum (descending) and marginal Bloch lengths of a two-qubit state,
/// the inputs of [`two_qubit_gap_closed_form`].
pub fn two_qubit_invariants(rho: &DensityMatrix) -> Result<([f64; 4], f64, f64)> {
    if rho.dims() != [2, 2] {
        return Err(Error::BadDims(format!(
            "expected [2, 2], got {:?}",
            rho.dims()
        )));
    }
    let l = descending_populations(rho)?;
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let r1 = clamp(rho.marginal(0)?.bloch_vector()?.norm());
    let r2 = clamp(rho.marginal(1)?.bloch_vector()?.norm());
    // Renormalize tiny negative rounding so the simplex check passes.
    let mut lambda = [l[0].max(0.0), l[1].max(0.0), l[2].max(0.0), l[3].max(0.0)];
    let s: f64 = lambda.iter().sum();
    lambda.iter_mut().for_each(|x| *x /= s);
    Ok((lambda, r1, r2))
}
