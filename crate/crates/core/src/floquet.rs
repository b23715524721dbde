//! Floquet fiber matrices `H(θ) = Δ(θ) + q` of the periodic Schrödinger operator.
//!
//! For the normalized Laplacian,
//!
//! ```text
//! Δ_jk(θ) = −(κ_j κ_k)^{-1/2} Σ_{oriented e = (v_j, v_k)} exp(i⟨τ(e), θ⟩)
//! ```
//!
//! where each unoriented edge contributes both orientations. A loop at `v_j`
//! therefore contributes `2 cos⟨τ, θ⟩` to the diagonal.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::FundamentalGraph;

/// Real potential on the fundamental vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    values: Vec<f64>,
}

impl Potential {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&q| q == 0.0)
    }

    /// Values in nondecreasing order, `q•₁ ≤ … ≤ q•_ν`.
    pub fn sorted(&self) -> Vec<f64> {
        let mut s = self.values.clone();
        s.sort_by(f64::total_cmp);
        s
    }

    pub fn shifted(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|q| q + c).collect() }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::PotentialLength { expected: n, found: self.values.len() });
        }
        Ok(())
    }
}

/// Dense Hermitian matrix, assembled so that `M = M^*` holds bit-exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

impl HermitianMatrix {
    /// Wraps a matrix without checking; [`crate::eigen::eigvals_hermitian`] checks.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.0[(j, k)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Largest `|M_jk − conj(M_kj)|`.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                worst = worst.max((self.0[(j, k)] - self.0[(k, j)].conj()).norm());
            }
        }
        worst
    }
}

/// Assembles `H(θ)`. Only the upper triangle is accumulated; the lower
/// triangle is its exact conjugate mirror.
pub fn floquet_matrix(g: &FundamentalGraph, q: &Potential, theta: &[f64]) -> Result<HermitianMatrix> {
    let n = g.vertex_count();
    if theta.len() != g.dimension() {
        return Err(Error::ThetaLength { expected: g.dimension(), found: theta.len() });
    }
    q.check_len(n)?;
    let kappa = g.degrees();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for e in g.edges() {
        let phase: f64 = e.index.iter().zip(theta).map(|(&t, &th)| t as f64 * th).sum();
        let w = Complex64::from_polar(1.0, phase);
        match e.from.cmp(&e.to) {
            std::cmp::Ordering::Less => m[(e.from, e.to)] += w,
            std::cmp::Ordering::Greater => m[(e.to, e.from)] += w.conj(),
            std::cmp::Ordering::Equal => m[(e.from, e.from)] += Complex64::new(2.0 * phase.cos(), 0.0),
        }
    }
    for j in 0..n {
        for k in j..n {
            let scale = -1.0 / ((kappa[j] * kappa[k]) as f64).sqrt();
            m[(j, k)] *= scale;
        }
        m[(j, j)] = Complex64::new(m[(j, j)].re + q.values()[j], 0.0);
        for k in 0..j {
            m[(j, k)] = m[(k, j)].conj();
        }
    }
    Ok(HermitianMatrix(m))
}

/// `det(M)` by LU factorization with partial pivoting.
pub fn determinant(a: DMatrix<Complex64>) -> Complex64 {
    a.lu().determinant()
}

/// Characteristic polynomial `det(H(θ) − λ I)`.
pub fn char_poly_eval(g: &FundamentalGraph, q: &Potential, theta: &[f64], lambda: f64) -> Result<Complex64> {
    let mut m = floquet_matrix(g, q, theta)?.into_matrix();
    for j in 0..m.nrows() {
        m[(j, j)] -= Complex64::new(lambda, 0.0);
    }
    Ok(determinant(m))
}
