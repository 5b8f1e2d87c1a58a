//! Multi-party density matrices.
//!
//! Parties are indexed from 0 and laid out in Kronecker order: party 0 is the
//! most significant digit of a basis index.

use rand::Rng;

use crate::error::{Error, Result, Violation};
use crate::linalg::{
    eig_hermitian, kron, kron_vec, paulis, trace_product, ComplexMatrix, C64, HERMITIAN_TOL, ONE,
    ZERO,
};
use crate::random::{ginibre, haar_vector, seeded_rng};

/// Tolerances used by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationTolerance {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for ValidationTolerance {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN_TOL,
            trace: 1e-9,
            psd: 1e-9,
        }
    }
}

/// Tolerance for probability vectors handed to the family constructors.
pub const SIMPLEX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

/// Checks `dims` and `matrix` and returns the state, or every violated
/// density-matrix property with its measured size.
pub fn validate(
    dims: &[usize],
    matrix: ComplexMatrix,
    tol: &ValidationTolerance,
) -> Result<DensityMatrix> {
    check_dims(dims, &matrix)?;
    let mut violations = Vec::new();
    let defect = matrix.hermiticity_defect();
    if defect > tol.hermitian {
        violations.push(Violation::NotHermitian(defect));
    }
    let tr = matrix.trace();
    if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
        violations.push(Violation::TraceNotOne(tr.re));
    }
    let herm = matrix.hermitian_part();
    let spec = eig_hermitian(&herm, f64::INFINITY)?;
    let min_eig = spec.eigenvalues.first().copied().unwrap_or(0.0);
    if min_eig < -tol.psd {
        violations.push(Violation::NotPsd(min_eig));
    }
    if !violations.is_empty() {
        return Err(Error::InvalidState(violations));
    }
    Ok(DensityMatrix {
        dims: dims.to_vec(),
        matrix,
    })
}

fn check_dims(dims: &[usize], matrix: &ComplexMatrix) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::BadDims("no subsystems".into()));
    }
    if dims.contains(&0) {
        return Err(Error::BadDims(format!("zero dimension in {dims:?}")));
    }
    if !matrix.is_square() {
        return Err(Error::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    let total: usize = dims.iter().product();
    if total != matrix.rows() {
        return Err(Error::BadDims(format!(
            "dims {dims:?} have product {total} but the matrix is {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    Ok(())
}

fn check_simplex(p: &[f64]) -> Result<()> {
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < -SIMPLEX_TOL) {
        return Err(Error::BadProbability(format!("entry {bad} out of range")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > SIMPLEX_TOL {
        return Err(Error::BadProbability(format!("entries sum to {s}")));
    }
    Ok(())
}

/// Mixed-radix digits of a basis index, party 0 first.
pub(crate) fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

pub(crate) fn flat_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Single-qubit Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `(I + r·σ) / 2`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(2);
        for (r, s) in self.0.iter().zip(paulis().iter()) {
            m = &m + &s.scale_real(*r);
        }
        m.scale_real(0.5)
    }
}

/// The four Bell states, `|ψ±> = (|01> ± |10>)/√2`, `|φ±> = (|00> ± |11>)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PsiMinus,
    PsiPlus,
    PhiPlus,
    PhiMinus,
}

impl BellState {
    /// Order used by [`DensityMatrix::bell_mixture`].
    pub const ALL: [BellState; 4] = [
        BellState::PsiMinus,
        BellState::PsiPlus,
        BellState::PhiPlus,
        BellState::PhiMinus,
    ];

    pub fn vector(self) -> Vec<C64> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            BellState::PsiMinus => vec![ZERO, h, -h, ZERO],
            BellState::PsiPlus => vec![ZERO, h, h, ZERO],
            BellState::PhiPlus => vec![h, ZERO, ZERO, h],
            BellState::PhiMinus => vec![h, ZERO, ZERO, -h],
        }
    }
}

impl DensityMatrix {
    /// Validates with default tolerances.
    pub fn new(dims: &[usize], matrix: ComplexMatrix) -> Result<Self> {
        validate(dims, matrix, &ValidationTolerance::default())
    }

    /// `|ψ><ψ|` for a vector normalised here.
    pub fn pure(dims: &[usize], psi: &[C64]) -> Result<Self> {
        let n = crate::linalg::norm(psi);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::BadProbability(
                "zero or non-finite state vector".into(),
            ));
        }
        let psi: Vec<C64> = psi.iter().map(|z| z / n).collect();
        Self::new(dims, ComplexMatrix::outer(&psi))
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        Self::new(dims, ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    /// `p |ψ-><ψ-| + (1 - p) I/4`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability(format!(
                "Werner weight {p} outside [0, 1]"
            )));
        }
        let singlet = ComplexMatrix::outer(&BellState::PsiMinus.vector());
        let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
        Self::new(&[2, 2], &singlet.scale_real(p) + &noise)
    }

    /// `Σ_i p_i |B_i><B_i|` over [`BellState::ALL`].
    pub fn bell_mixture(p: [f64; 4]) -> Result<Self> {
        check_simplex(&p)?;
        let mut m = ComplexMatrix::zeros(4, 4);
        for (w, b) in p.iter().zip(BellState::ALL) {
            m = &m + &ComplexMatrix::outer(&b.vector()).scale_real(*w);
        }
        Self::new(&[2, 2], m)
    }

    /// State diagonal in the computational product basis.
    pub fn cc_diagonal(dims: &[usize], populations: &[f64]) -> Result<Self> {
        check_simplex(populations)?;
        let d: usize = dims.iter().product();
        if populations.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: populations.len(),
            });
        }
        Self::new(dims, ComplexMatrix::from_diagonal(populations))
    }

    /// `ρ_1 ⊗ ρ_2 ⊗ ...`.
    pub fn product_state(locals: &[DensityMatrix]) -> Result<Self> {
        if locals.is_empty() {
            return Err(Error::BadDims("no subsystems".into()));
        }
        let dims: Vec<usize> = locals.iter().flat_map(|s| s.dims.iter().copied()).collect();
        let m = locals
            .iter()
            .skip(1)
            .fold(locals[0].matrix.clone(), |acc, s| kron(&acc, &s.matrix));
        Self::new(&dims, m)
    }

    /// Product of pure local states `|ψ_1> ⊗ |ψ_2> ⊗ ...`.
    pub fn pure_product(locals: &[Vec<C64>]) -> Result<Self> {
        let dims: Vec<usize> = locals.iter().map(|v| v.len()).collect();
        let psi = locals.iter().fold(vec![ONE], |acc, v| kron_vec(&acc, v));
        Self::pure(&dims, &psi)
    }

    pub fn haar_random_pure(dims: &[usize], seed: u64) -> Result<Self> {
        Self::haar_random_pure_with(dims, &mut seeded_rng(seed))
    }

    pub fn haar_random_pure_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<Self> {
        let d: usize = dims.iter().product();
        Self::pure(dims, &haar_vector(d, rng))
    }

    /// `G G^† / Tr(G G^†)` for a `D x ancilla_dim` Ginibre matrix `G`.
    pub fn induced_random_mixed(dims: &[usize], ancilla_dim: usize, seed: u64) -> Result<Self> {
        Self::induced_random_mixed_with(dims, ancilla_dim, &mut seeded_rng(seed))
    }

    pub fn induced_random_mixed_with<R: Rng + ?Sized>(
        dims: &[usize],
        ancilla_dim: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if ancilla_dim == 0 {
            return Err(Error::BadDims("ancilla dimension must be positive".into()));
        }
        let d: usize = dims.iter().product();
        let g = ginibre(d, ancilla_dim, rng);
        let gg = &g * &g.adjoint();
        let tr = gg.trace().re;
        // G G^† is Hermitian up to rounding; symmetrize before validation.
        Self::new(dims, gg.hermitian_part().scale_real(1.0 / tr))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.matrix, HERMITIAN_TOL)?.eigenvalues)
    }

    /// `Tr(ρ H)`.
    pub fn expectation(&self, h: &ComplexMatrix) -> Result<f64> {
        Ok(trace_product(&self.matrix, h)?.re)
    }

    /// `U ρ U^†` for a unitary on the whole space.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = self.matrix.conjugate_by(u)?;
        Self::new(&self.dims, m.hermitian_part())
    }

    /// `(⊗ U_i) ρ (⊗ U_i)^†`.
    pub fn evolve_local(&self, locals: &[ComplexMatrix]) -> Result<Self> {
        if locals.len() != self.parties() {
            return Err(Error::DimensionMismatch {
                expected: self.parties(),
                found: locals.len(),
            });
        }
        self.evolve(&crate::linalg::kron_all(locals))
    }

    /// Reduced state on `keep` (indices into `dims`, any order, no repeats).
    /// The kept parties stay in their original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.parties();
        if keep.is_empty() {
            return Err(Error::BadDims("keep set is empty".into()));
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        for (k, w) in kept.iter().enumerate() {
            if *w >= n || (k > 0 && kept[k - 1] == *w) {
                return Err(Error::BadIndex {
                    index: *w,
                    parties: n,
                });
            }
        }
        let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&i| self.dims[i]).collect();
        let d_out: usize = kept_dims.iter().product();
        let d = self.dim();

        let all: Vec<Vec<usize>> = (0..d).map(|i| digits(i, &self.dims)).collect();
        let out_index: Vec<usize> = all
            .iter()
            .map(|dg| {
                let sub: Vec<usize> = kept.iter().map(|&k| dg[k]).collect();
                flat_index(&sub, &kept_dims)
            })
            .collect();

        let mut out = ComplexMatrix::zeros(d_out, d_out);
        for i in 0..d {
            for j in 0..d {
                if traced.iter().all(|&t| all[i][t] == all[j][t]) {
                    out[(out_index[i], out_index[j])] += self.matrix[(i, j)];
                }
            }
        }
        Ok(Self {
            dims: kept_dims,
            matrix: out,
        })
    }

    /// Single-party marginal.
    pub fn marginal(&self, party: usize) -> Result<Self> {
        self.partial_trace(&[party])
    }

    /// `r_k = Tr(ρ σ_k)` for a single qubit.
    pub fn bloch_vector(&self) -> Result<BlochVector> {
        if self.dims != [2] {
            return Err(Error::NotQubit(self.dims.clone()));
        }
        let mut r = [0.0; 3];
        for (slot, s) in r.iter_mut().zip(paulis().iter()) {
            *slot = trace_product(&self.matrix, s)?.re;
        }
        Ok(BlochVector(r))
    }

    /// Von Neumann entropy in nats.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        Ok(entropy_of_spectrum(&self.eigenvalues()?))
    }
}

/// `-Σ λ ln λ` with `0 ln 0 = 0`; slightly negative eigenvalues count as zero.
pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum();
    s.max(0.0)
}
