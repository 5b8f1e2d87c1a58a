//! Local Hamiltonians and their non-interacting sum
//! `H = Σ_i I ⊗ ... ⊗ H_i ⊗ ... ⊗ I`.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, kron, kron_all, paulis, trace_product, ComplexMatrix, SpectralDecomposition,
    HERMITIAN_TOL,
};
use crate::state::digits;

/// Hermitian operator on one party, with its spectrum cached.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalHamiltonian {
    matrix: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

impl LocalHamiltonian {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let spectrum = eig_hermitian(&matrix, HERMITIAN_TOL)?;
        Ok(Self { matrix, spectrum })
    }

    /// Diagonal Hamiltonian with the given level energies.
    pub fn from_energies(energies: &[f64]) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::BadDims("empty energy list".into()));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite);
        }
        Self::new(ComplexMatrix::from_diagonal(energies))
    }

    /// `½(e⁺ I + e⁻ ĥ·σ)`.
    pub fn from_qubit_params(p: &QubitHamiltonianParams) -> Result<Self> {
        let mut m = ComplexMatrix::identity(2).scale_real(p.e_plus);
        for (h, s) in p.h_hat.iter().zip(paulis().iter()) {
            m = &m + &s.scale_real(p.e_minus * h);
        }
        Self::new(m.scale_real(0.5))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// Level energies, ascending.
    pub fn energies(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }
}

/// Qubit Hamiltonian in Bloch form `H = ½(e⁺ I + e⁻ ĥ·σ)`.
///
/// `e⁺ = e¹ + e⁰` and `e⁻ = e¹ - e⁰ ≥ 0`, so the excited level is the
/// eigenvector of `ĥ·σ` with eigenvalue +1 and the ground level points along
/// `-ĥ`. A degenerate Hamiltonian (`e⁻ = 0`) gets `ĥ = (0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitHamiltonianParams {
    pub e_plus: f64,
    pub e_minus: f64,
    pub h_hat: [f64; 3],
}

impl QubitHamiltonianParams {
    /// Ground energy `e⁰`.
    pub fn ground(&self) -> f64 {
        0.5 * (self.e_plus - self.e_minus)
    }

    /// Excited energy `e¹`.
    pub fn excited(&self) -> f64 {
        0.5 * (self.e_plus + self.e_minus)
    }

    /// Level spacing `e¹ - e⁰`.
    pub fn gap(&self) -> f64 {
        self.e_minus
    }
}

pub fn qubit_params(h: &LocalHamiltonian) -> Result<QubitHamiltonianParams> {
    if h.dim() != 2 {
        return Err(Error::NotQubit(vec![h.dim()]));
    }
    let e_plus = h.matrix.trace().re;
    let levels = h.energies();
    let e_minus = (levels[1] - levels[0]).max(0.0);
    let h_hat = if e_minus == 0.0 {
        [0.0, 0.0, 1.0]
    } else {
        let mut v = [0.0; 3];
        for (slot, s) in v.iter_mut().zip(paulis().iter()) {
            *slot = trace_product(&h.matrix, s)?.re / e_minus;
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / n)
    };
    Ok(QubitHamiltonianParams {
        e_plus,
        e_minus,
        h_hat,
    })
}

/// Non-interacting multi-party Hamiltonian with its total matrix and
/// spectrum computed once at composition.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeHamiltonian {
    locals: Vec<LocalHamiltonian>,
    dims: Vec<usize>,
    total: ComplexMatrix,
    spectrum: SpectralDecomposition,
}

impl CompositeHamiltonian {
    pub fn compose(locals: Vec<LocalHamiltonian>) -> Result<Self> {
        if locals.is_empty() {
            return Err(Error::BadDims("no local Hamiltonians".into()));
        }
        let dims: Vec<usize> = locals.iter().map(|h| h.dim()).collect();
        let d: usize = dims.iter().product();

        let mut total = ComplexMatrix::zeros(d, d);
        for (i, h) in locals.iter().enumerate() {
            let before: usize = dims[..i].iter().product();
            let after: usize = dims[i + 1..].iter().product();
            let embedded = kron(
                &kron(&ComplexMatrix::identity(before), h.matrix()),
                &ComplexMatrix::identity(after),
            );
            total = &total + &embedded;
        }

        // Eigenpairs of a non-interacting sum are sums of local eigenvalues
        // with product eigenvectors; sort them ascending (stable).
        let mut levels: Vec<(f64, Vec<usize>)> = (0..d)
            .map(|k| {
                let idx = digits(k, &dims);
                let e = idx.iter().zip(&locals).map(|(&j, h)| h.energies()[j]).sum();
                (e, idx)
            })
            .collect();
        levels.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut vectors = ComplexMatrix::zeros(d, d);
        for (col, (_, idx)) in levels.iter().enumerate() {
            let factors: Vec<ComplexMatrix> = idx
                .iter()
                .zip(&locals)
                .map(|(&j, h)| ComplexMatrix::column(&h.spectrum().eigenvector(j)))
                .collect();
            let v = kron_all(&factors);
            for row in 0..d {
                vectors[(row, col)] = v[(row, 0)];
            }
        }
        let spectrum = SpectralDecomposition {
            eigenvalues: levels.iter().map(|l| l.0).collect(),
            eigenvectors: vectors,
        };
        Ok(Self {
            locals,
            dims,
            total,
            spectrum,
        })
    }

    /// Diagonal locals from per-party energy lists.
    pub fn from_energies(energies: &[Vec<f64>]) -> Result<Self> {
        let locals = energies
            .iter()
            .map(|e| LocalHamiltonian::from_energies(e))
            .collect::<Result<Vec<_>>>()?;
        Self::compose(locals)
    }

    /// `n` qubits each with `H_i = diag(0, 1)`.
    pub fn unit_gap_qubits(n: usize) -> Result<Self> {
        Self::from_energies(&vec![vec![0.0, 1.0]; n])
    }

    pub fn locals(&self) -> &[LocalHamiltonian] {
        &self.locals
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.total.rows()
    }

    pub fn total(&self) -> &ComplexMatrix {
        &self.total
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// Ascending composite levels `ξ_α` and eigenvector columns `|ξ_α>`.
    pub fn sorted_energy_levels(&self) -> (&[f64], &ComplexMatrix) {
        (&self.spectrum.eigenvalues, &self.spectrum.eigenvectors)
    }

    pub fn ground_energy(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }
}
