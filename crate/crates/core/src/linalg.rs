//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.
//!
//! Everything in the crate is small and dense (total dimension in the tens),
//! so matrices are plain row-major `Vec<Complex64>` buffers.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Default absolute tolerance for Hermiticity checks (max-norm).
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from a row-major buffer, rejecting wrong lengths and
    /// non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Self::from_vec(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    pub fn column(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Rank-one projector `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].re)
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest off-diagonal entry modulus.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    worst = worst.max(self[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// `max |M - M^†|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M^†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        m
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `U M U^†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Largest entry of `|self - rhs|`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.try_sub(rhs).map_or(f64::INFINITY, |d| d.max_abs())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

// Operator impls panic on shape mismatch; the `try_*` methods are the
// fallible versions.
impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix shapes must agree")
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("inner dimensions must agree")
    }
}

/// Kronecker product: `out[i*rB + k, j*cB + l] = A[i,j] * B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca, rb, cb) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a non-empty sequence, left to right.
pub fn kron_all<'a, It>(factors: It) -> ComplexMatrix
where
    It: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

/// Kronecker product of state vectors.
pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows,
            cols: b.cols,
        });
    }
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.rows,
        });
    }
    let n = a.rows;
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(acc)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[1.0, -1.0])
}

pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// Eigenvalues in ascending order with eigenvectors as the matching columns
/// of a unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column_vec(k)
    }

    /// `V f(Λ) V^†`.
    pub fn map_eigenvalues<F: Fn(f64) -> C64>(&self, f: F) -> ComplexMatrix {
        let fx: Vec<C64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.synthesize(&fx)
    }

    /// `V diag(values) V^†`, `values[k]` attached to eigenvector `k`.
    pub fn synthesize(&self, values: &[C64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &x) in values.iter().enumerate() {
                    acc += v[(i, k)] * x * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_eigenvalues(|x| C64::new(x, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Sweeps visit pairs `(p, q)` with `p < q` in row order, so identical input
/// bits give identical output bits. Eigenvalues are returned ascending; ties
/// keep the order the sweeps left them in.
pub fn eig_hermitian(m: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows;
    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = n <= 1 || scale == 0.0;
    let mut sweeps = 0;
    let mut prev_off = f64::INFINITY;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        // Either fully converged, or stalled at the rounding floor.
        converged = off <= 1e-15 * scale || (off >= prev_off && off <= 1e-12 * scale);
        prev_off = off;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One complex Jacobi rotation annihilating `a[p, q]`: `A <- J^† A J`, `V <- V J`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change anything at double precision.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// `exp(i G)` for Hermitian `G`, through its spectral decomposition.
pub fn exp_i_hermitian(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(g, HERMITIAN_TOL.max(1e-12 * g.max_abs()))?;
    Ok(spec.map_eigenvalues(|x| C64::new(x.cos(), x.sin())))
}

/// Generalized Gell-Mann basis of traceless Hermitian `d x d` matrices
/// (`d^2 - 1` elements): symmetric, antisymmetric, then diagonal.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = ONE;
            m[(k, j)] = ONE;
            basis.push(m);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = -I;
            m[(k, j)] = I;
            basis.push(m);
        }
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = C64::new(norm, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        basis.push(m);
    }
    basis
}

/// Unitary `exp(i Σ_k c_k λ_k)` from `d^2 - 1` Gell-Mann coefficients.
pub fn unitary_from_generator(basis: &[ComplexMatrix], coeffs: &[f64]) -> Result<ComplexMatrix> {
    let d = basis.first().map_or(1, |m| m.rows());
    if coeffs.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: coeffs.len(),
        });
    }
    let mut g = ComplexMatrix::zeros(d, d);
    for (m, &c) in basis.iter().zip(coeffs) {
        if c != 0.0 {
            g = &g + &m.scale_real(c);
        }
    }
    exp_i_hermitian(&g)
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormalizes the columns of `m` in place order by modified Gram-Schmidt.
///
/// The implied triangular factor has a positive real diagonal, which is what
/// makes the QR of a Ginibre matrix Haar distributed.
pub fn gram_schmidt_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column_vec(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let proj = inner(&cols[k], &cols[j]);
            let (done, rest) = cols.split_at_mut(j);
            for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                *x -= proj * y;
            }
        }
        let nrm = norm(&cols[j]);
        for x in cols[j].iter_mut() {
            *x /= nrm;
        }
    }
    let mut out = ComplexMatrix::zeros(m.rows(), n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_eigenvalues() {
        let s = eig_hermitian(&ComplexMatrix::identity(2), HERMITIAN_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0]);
    }

    #[test]
    fn pauli_z_is_sorted() {
        let s = eig_hermitian(&pauli_z(), HERMITIAN_TOL).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 1.0]);
        assert_eq!(s.eigenvector(0), vec![ZERO, ONE]);
        assert_eq!(s.eigenvector(1), vec![ONE, ZERO]);
    }

    #[test]
    fn pauli_x_eigenvectors() {
        let s = eig_hermitian(&pauli_x(), HERMITIAN_TOL).unwrap();
        assert!(close(s.eigenvalues[0], -1.0, 1e-14));
        assert!(close(s.eigenvalues[1], 1.0, 1e-14));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let minus = [C64::new(h, 0.0), C64::new(-h, 0.0)];
        let plus = [C64::new(h, 0.0), C64::new(h, 0.0)];
        assert!(close(inner(&minus, &s.eigenvector(0)).norm(), 1.0, 1e-12));
        assert!(close(inner(&plus, &s.eigenvector(1)).norm(), 1.0, 1e-12));
    }

    #[test]
    fn pauli_y_complex_rotation() {
        let s = eig_hermitian(&pauli_y(), HERMITIAN_TOL).unwrap();
        assert!(close(s.eigenvalues[0], -1.0, 1e-14));
        assert!(s.reconstruct().max_abs_diff(&pauli_y()) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_hermitian(&m, HERMITIAN_TOL),
            Err(Error::NotHermitian(_))
        ));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            eig_hermitian(&r, HERMITIAN_TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn from_vec_checks() {
        assert!(ComplexMatrix::from_vec(2, 2, vec![ZERO; 3]).is_err());
        assert_eq!(
            ComplexMatrix::from_vec(1, 1, vec![C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        assert_eq!(
            kron(&pauli_z(), &i2),
            ComplexMatrix::from_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
        let e0 = ComplexMatrix::column(&[ONE, ZERO]);
        let e1 = ComplexMatrix::column(&[ZERO, ONE]);
        assert_eq!(
            kron(&e0, &e1),
            ComplexMatrix::column(&[ZERO, ONE, ZERO, ZERO])
        );
        assert_eq!(
            kron_vec(&[ONE, ZERO], &[ZERO, ONE]),
            vec![ZERO, ONE, ZERO, ZERO]
        );
    }

    #[test]
    fn trace_product_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(trace_product(&i2, &pauli_z()).unwrap(), ZERO);
        let half = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        let h = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(trace_product(&half, &h).unwrap(), C64::new(0.5, 0.0));
        let ket0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(trace_product(&ket0, &pauli_x()).unwrap(), ZERO);
        assert!(matches!(
            trace_product(&i2, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gell_mann_is_traceless_hermitian() {
        for d in 2..=4 {
            let b = gell_mann_basis(d);
            assert_eq!(b.len(), d * d - 1);
            for m in &b {
                assert!(m.hermiticity_defect() == 0.0);
                assert!(m.trace().norm() < 1e-14);
                // Tr(λ_a λ_a) = 2
                assert!(close(trace_product(m, m).unwrap().re, 2.0, 1e-12));
            }
        }
    }

    #[test]
    fn generator_gives_unitary() {
        let b = gell_mann_basis(3);
        let coeffs: Vec<f64> = (0..8).map(|k| 0.3 * k as f64 - 1.0).collect();
        let u = unitary_from_generator(&b, &coeffs).unwrap();
        let uu = &u * &u.adjoint();
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }
}
