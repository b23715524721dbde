//! Dense eigenvalues for Hermitian and real symmetric matrices.
//!
//! Both use Householder tridiagonalization followed by implicit-shift QR
//! (nalgebra's symmetric eigensolver), then an ascending sort.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::floquet::HermitianMatrix;

/// Largest tolerated `|M_jk − conj(M_kj)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Sorted real eigenvalues of a Hermitian matrix.
pub fn eigvals_hermitian(m: &HermitianMatrix) -> Result<Vec<f64>> {
    let asym = m.asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut ev: Vec<f64> = m.as_matrix().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Sorted eigenvalues of a real symmetric matrix.
pub fn eigvals_symmetric(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    let mut asym = 0.0f64;
    for j in 0..n {
        for k in j + 1..n {
            asym = asym.max((m[(j, k)] - m[(k, j)]).abs());
        }
    }
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::floquet::{floquet_matrix, Potential};
    use nalgebra::SymmetricEigen;
    use num_complex::Complex64;

    #[test]
    fn pauli_y() {
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        let m = HermitianMatrix::from_matrix(DMatrix::from_row_slice(2, 2, &[z, i, -i, z]));
        let ev = eigvals_hermitian(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let one = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let m = HermitianMatrix::from_matrix(DMatrix::from_row_slice(2, 2, &[z, one, z, z]));
        assert!(matches!(eigvals_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn five_vertex_laplacian_at_zero() {
        // det = −λ²(λ+1)(λ−1/3)(λ−2/3) at c1 = c2 = 1.
        let g = fixtures::five_vertex_example().graph;
        let h = floquet_matrix(&g, &Potential::zeros(5), &[0.0, 0.0]).unwrap();
        let ev = eigvals_hermitian(&h).unwrap();
        for (a, b) in ev.iter().zip([-1.0, 0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0]) {
            assert!((a - b).abs() < 1e-9, "{ev:?}");
        }
    }

    #[test]
    fn five_vertex_dirichlet_block() {
        let a = -1.0 / 12f64.sqrt();
        let m = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, a, 0.0, 0.0, a, a, a, 0.0]);
        let ev = eigvals_symmetric(&m).unwrap();
        let s = 1.0 / 6f64.sqrt();
        for (x, y) in ev.iter().zip([-s, 0.0, s]) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn residuals_are_small() {
        let g = fixtures::five_vertex_example().graph;
        let h = floquet_matrix(&g, &Potential::new(vec![0.3, -0.2, 1.1, 0.0, -0.7]), &[1.1, -2.4]).unwrap();
        let ev = eigvals_hermitian(&h).unwrap();
        let se = SymmetricEigen::new(h.as_matrix().clone());
        let norm = h.as_matrix().norm();
        for (k, &lam) in se.eigenvalues.iter().enumerate() {
            let x = se.eigenvectors.column(k);
            let r = h.as_matrix() * x - x * Complex64::new(lam, 0.0);
            assert!(r.norm() <= 1e-10 * norm);
            assert!(ev.iter().any(|&e| (e - lam).abs() < 1e-12));
        }
    }

    #[test]
    fn deterministic() {
        let g = fixtures::five_vertex_example().graph;
        let h = floquet_matrix(&g, &Potential::zeros(5), &[0.3, 2.0]).unwrap();
        let a = eigvals_hermitian(&h).unwrap();
        let b = eigvals_hermitian(&h).unwrap();
        assert_eq!(
            a.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            b.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }
}
