//! Detection of classically correlated states, i.e. states diagonal in some
//! orthonormal product basis `{⊗_i |β_i>}`.
//!
//! The search runs in two phases.
//!
//! 1. Every simple (non-degenerate) eigenvalue pins its eigenvector to a
//!    product basis vector. An eigenvector that is entangled across any
//!    single-party cut, or local factors that are neither parallel nor
//!    orthogonal across eigenvectors, rule the state out. With a fully
//!    non-degenerate spectrum the collated factors are the only candidate
//!    bases, so the answer is exact.
//! 2. With degeneracy, a random spectral function `M = Σ_k w_k P_k` of the
//!    state and a random Hermitian `A` on the other parties give, for each
//!    party, `X_i = Tr_rest[M (I ⊗ A)]`, which is diagonal in party `i`'s
//!    basis whenever the state is classically correlated. The eigenbases of
//!    the `X_i` are tried as the product basis. If every `X_i` is
//!    non-degenerate the candidate is forced and a failed check is a proof;
//!    otherwise the draw is retried, and after the retries run out the
//!    result is [`Error::Inconclusive`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, inner, kron_all, ComplexMatrix, C64, ZERO};
use crate::random::{random_hermitian, seeded_rng};
use crate::state::{digits, flat_index, DensityMatrix};

/// A vector counts as product across a cut when its second singular value
/// is at most this fraction of the first.
pub const SCHMIDT_THRESHOLD: f64 = 1e-8;

/// Default tolerance for eigenvalue clustering and the final diagonality check.
pub const CC_TOL: f64 = 1e-8;

const RETRIES: usize = 8;
const OVERLAP_TOL: f64 = 1e-6;
const SEARCH_SEED: u64 = 0x5eed_cc00;

#[derive(Debug, Clone, PartialEq)]
pub struct ProductBasisWitness {
    pub is_cc: bool,
    /// One unitary per party whose columns form that party's basis; empty
    /// when `is_cc` is false.
    pub local_bases: Vec<ComplexMatrix>,
    /// Populations in the product basis (Kronecker order) when `is_cc`,
    /// otherwise the spectrum in descending order.
    pub populations: Vec<f64>,
}

impl ProductBasisWitness {
    /// `Σ_β p_β ⊗_i |β_i><β_i|`.
    pub fn reconstruct(&self) -> Option<ComplexMatrix> {
        if !self.is_cc {
            return None;
        }
        let u = kron_all(&self.local_bases);
        let d = ComplexMatrix::from_diagonal(&self.populations);
        u.matmul(&d).and_then(|ud| ud.matmul(&u.adjoint())).ok()
    }
}

/// `v` reshaped to a `d_party x (D / d_party)` matrix.
fn cut_matrix(v: &[C64], dims: &[usize], party: usize) -> ComplexMatrix {
    let rest_dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != party)
        .map(|(_, &d)| d)
        .collect();
    let cols: usize = rest_dims.iter().product();
    let mut m = ComplexMatrix::zeros(dims[party], cols);
    for (k, &z) in v.iter().enumerate() {
        let dg = digits(k, dims);
        let rest: Vec<usize> = dg
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != party)
            .map(|(_, &x)| x)
            .collect();
        m[(dg[party], flat_index(&rest, &rest_dims))] = z;
    }
    m
}

/// Dominant left singular vector of the cut, and `‖(I - uu†) M‖ / σ₁`,
/// which bounds the second singular value relative to the first.
fn local_factor(v: &[C64], dims: &[usize], party: usize) -> Result<(Vec<C64>, f64)> {
    let m = cut_matrix(v, dims, party);
    let gram = &m * &m.adjoint();
    let spec = eig_hermitian(&gram.hermitian_part(), f64::INFINITY)?;
    let u = spec.eigenvector(spec.dim() - 1);
    // u† M and the residual M - u (u† M)
    let row: Vec<C64> = (0..m.cols())
        .map(|c| (0..m.rows()).map(|r| u[r].conj() * m[(r, c)]).sum())
        .collect();
    let sigma1 = crate::linalg::norm(&row);
    let mut resid = 0.0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            resid += (m[(r, c)] - u[r] * row[c]).norm_sqr();
        }
    }
    let ratio = if sigma1 > 0.0 {
        resid.sqrt() / sigma1
    } else {
        f64::INFINITY
    };
    Ok((u, ratio))
}

/// Groups of eigenvalue indices whose consecutive gaps are at most `tol`.
fn clusters(eigenvalues: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, &l) in eigenvalues.iter().enumerate() {
        match out.last_mut() {
            Some(c) if l - eigenvalues[*c.last().unwrap()] <= tol => c.push(k),
            _ => out.push(vec![k]),
        }
    }
    out
}

fn not_cc(spectrum: &[f64]) -> ProductBasisWitness {
    let mut p = spectrum.to_vec();
    p.reverse();
    ProductBasisWitness {
        is_cc: false,
        local_bases: Vec::new(),
        populations: p,
    }
}

/// Populations if `ρ` is diagonal (within `tol`) in the product of `bases`.
fn diagonal_in(rho: &DensityMatrix, bases: &[ComplexMatrix], tol: f64) -> Result<Option<Vec<f64>>> {
    let u = kron_all(bases);
    let rotated = u.adjoint().matmul(rho.matrix())?.matmul(&u)?;
    if rotated.max_off_diagonal() <= tol {
        Ok(Some(rotated.diagonal_real()))
    } else {
        Ok(None)
    }
}

pub fn is_classically_correlated(rho: &DensityMatrix, tol: f64) -> Result<ProductBasisWitness> {
    let dims = rho.dims().to_vec();
    let spec = eig_hermitian(rho.matrix(), crate::linalg::HERMITIAN_TOL)?;
    if dims.len() == 1 {
        return Ok(ProductBasisWitness {
            is_cc: true,
            local_bases: vec![spec.eigenvectors.clone()],
            populations: spec.eigenvalues.clone(),
        });
    }
    let groups = clusters(&spec.eigenvalues, tol);

    // Phase 1: simple eigenvalues.
    let mut factors: Vec<Vec<Vec<C64>>> = vec![Vec::new(); dims.len()];
    for g in groups.iter().filter(|g| g.len() == 1) {
        let v = spec.eigenvector(g[0]);
        for (party, found) in factors.iter_mut().enumerate() {
            let (u, ratio) = local_factor(&v, &dims, party)?;
            if ratio > SCHMIDT_THRESHOLD {
                return Ok(not_cc(&spec.eigenvalues));
            }
            let mut fresh = true;
            for known in found.iter() {
                let ov = inner(known, &u).norm();
                if ov >= 1.0 - OVERLAP_TOL {
                    fresh = false;
                    break;
                }
                if ov > OVERLAP_TOL {
                    return Ok(not_cc(&spec.eigenvalues));
                }
            }
            if fresh {
                found.push(u);
            }
        }
    }

    if groups.len() == spec.dim() {
        if factors.iter().zip(&dims).any(|(f, &d)| f.len() != d) {
            return Ok(not_cc(&spec.eigenvalues));
        }
        let bases: Vec<ComplexMatrix> = factors.iter().map(|f| columns(f)).collect();
        return Ok(match diagonal_in(rho, &bases, tol)? {
            Some(populations) => ProductBasisWitness {
                is_cc: true,
                local_bases: bases,
                populations,
            },
            None => not_cc(&spec.eigenvalues),
        });
    }

    // Phase 2: degenerate spectrum.
    let projectors: Vec<ComplexMatrix> = groups
        .iter()
        .map(|g| {
            g.iter()
                .fold(ComplexMatrix::zeros(spec.dim(), spec.dim()), |acc, &k| {
                    &acc + &ComplexMatrix::outer(&spec.eigenvector(k))
                })
        })
        .collect();
    let mut rng = seeded_rng(SEARCH_SEED);
    for _ in 0..RETRIES {
        let weights: Vec<f64> = projectors
            .iter()
            .map(|_| rng.random::<f64>() + 0.5)
            .collect();
        let m = projectors.iter().zip(&weights).fold(
            ComplexMatrix::zeros(spec.dim(), spec.dim()),
            |acc, (p, &w)| &acc + &p.scale_real(w),
        );
        let mut forced = true;
        let mut bases = Vec::with_capacity(dims.len());
        for party in 0..dims.len() {
            let x = party_probe(&m, &dims, party, &mut rng);
            let s = eig_hermitian(&x.hermitian_part(), f64::INFINITY)?;
            let spread = s.eigenvalues.last().unwrap() - s.eigenvalues[0];
            let min_gap = s
                .eigenvalues
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            if dims[party] > 1 && min_gap <= 1e-7 * spread.max(1e-300) {
                forced = false;
            }
            bases.push(s.eigenvectors);
        }
        if let Some(populations) = diagonal_in(rho, &bases, tol)? {
            return Ok(ProductBasisWitness {
                is_cc: true,
                local_bases: bases,
                populations,
            });
        }
        if forced {
            return Ok(not_cc(&spec.eigenvalues));
        }
    }
    Err(Error::Inconclusive(format!(
        "degenerate spectrum; no product eigenbasis found in {RETRIES} randomized attempts"
    )))
}

/// `Tr_rest[M (I_party ⊗ A)]` for a random Hermitian `A` on the other parties.
fn party_probe<R: Rng + ?Sized>(
    m: &ComplexMatrix,
    dims: &[usize],
    party: usize,
    rng: &mut R,
) -> ComplexMatrix {
    let d_party = dims[party];
    let rest_dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != party)
        .map(|(_, &d)| d)
        .collect();
    let d_rest: usize = rest_dims.iter().product();
    let a = random_hermitian(d_rest, rng);
    let split = |k: usize| {
        let dg = digits(k, dims);
        let rest: Vec<usize> = dg
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != party)
            .map(|(_, &x)| x)
            .collect();
        (dg[party], flat_index(&rest, &rest_dims))
    };
    let idx: Vec<(usize, usize)> = (0..m.rows()).map(split).collect();
    let mut x = ComplexMatrix::zeros(d_party, d_party);
    for i in 0..m.rows() {
        let (pa, r) = idx[i];
        for j in 0..m.cols() {
            let (pb, s) = idx[j];
            let mij = m[(i, j)];
            if mij != ZERO {
                x[(pa, pb)] += mij * a[(s, r)];
            }
        }
    }
    x
}

fn columns(vectors: &[Vec<C64>]) -> ComplexMatrix {
    let d = vectors.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for (j, v) in vectors.iter().enumerate() {
        for (i, &z) in v.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    m
}
