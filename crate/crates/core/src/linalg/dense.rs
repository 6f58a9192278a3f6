use nalgebra::{Cholesky, DMatrix, Dyn, SymmetricEigen, SVD};

use crate::error::{Error, Result};

/// How far a square matrix is from its transpose, relative to its magnitude.
pub fn symmetry_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for j in 0..n {
        for i in 0..j {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
        for i in 0..n {
            scale = scale.max(m[(i, j)].abs());
        }
    }
    worst / (1.0 + scale)
}

fn require_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(format!(
            "expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let defect = symmetry_defect(m);
    if defect > tol {
        return Err(Error::NotSymmetric { defect });
    }
    Ok(())
}

/// Cholesky factorization of a symmetric positive-definite matrix, reusable
/// across repeated solves with the same left-hand side.
pub struct SpdFactor {
    chol: Cholesky<f64, Dyn>,
    dim: usize,
}

impl SpdFactor {
    pub fn new(a: &DMatrix<f64>) -> Result<Self> {
        require_symmetric(a, 1e-10)?;
        let dim = a.nrows();
        let chol = Cholesky::new(a.clone()).ok_or(Error::SingularSystem)?;
        Ok(Self { chol, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn solve(&self, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        if b.nrows() != self.dim {
            return Err(Error::Shape(format!(
                "rhs has {} rows, factor has dimension {}",
                b.nrows(),
                self.dim
            )));
        }
        Ok(self.chol.solve(b))
    }

    /// Explicit inverse. A solve applied once per iteration turns into a plain
    /// matrix product, which is the cheaper primitive for wide right-hand sides.
    pub fn inverse(&self) -> DMatrix<f64> {
        self.chol.inverse()
    }
}

/// Solves `A X = B` for symmetric positive-definite `A`.
pub fn spd_solve(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    SpdFactor::new(a)?.solve(b)
}

/// Eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns.
pub fn dense_sym_eig(s: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    require_symmetric(s, 1e-10)?;
    // Work on the symmetrized copy so roundoff-level asymmetry cannot leak in.
    let n = s.nrows();
    let mut sym = s.clone();
    for j in 0..n {
        for i in 0..j {
            let v = 0.5 * (sym[(i, j)] + sym[(j, i)]);
            sym[(i, j)] = v;
            sym[(j, i)] = v;
        }
    }
    Ok(sorted_sym_eig(sym))
}

/// Eigendecomposition sorted ascending, without the symmetry-contract check.
pub(crate) fn sorted_sym_eig(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Largest principal angle (radians) between the column spans of `a` and `b`.
///
/// Both inputs must have orthonormal columns; the angle is insensitive to the
/// basis chosen within each span, which makes it the right comparison for
/// eigenvector subspaces with repeated eigenvalues.
pub fn max_principal_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.nrows(), b.nrows(), "subspaces live in different dimensions");
    assert_eq!(a.ncols(), b.ncols(), "subspaces have different ranks");
    if a.ncols() == 0 {
        return 0.0;
    }
    let product = a.transpose() * b;
    let svd = SVD::new(product, false, false);
    let min_sigma = svd
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, &s| acc.min(s));
    min_sigma.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spd(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
        let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        &g * g.transpose() + DMatrix::identity(n, n) * (n as f64)
    }

    #[test]
    fn spd_solve_identity_returns_rhs() {
        let a = DMatrix::identity(3, 3);
        let b = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let x = spd_solve(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn spd_solve_diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::dvector![2.0, 4.0]);
        let b = DMatrix::from_column_slice(2, 1, &[2.0, 8.0]);
        let x = spd_solve(&a, &b).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((x[(1, 0)] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn spd_solve_residual_on_random_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_spd(20, &mut rng);
        let b = DMatrix::from_fn(20, 4, |_, _| rng.gen_range(-1.0..1.0));
        let x = spd_solve(&a, &b).unwrap();
        let resid = (&a * &x - &b).abs().max();
        let b_max = b.abs().max();
        assert!(resid <= 1e-8 * (1.0 + b_max), "residual {resid}");
    }

    #[test]
    fn spd_solve_rejects_indefinite() {
        let a = DMatrix::from_diagonal(&nalgebra::dvector![1.0, -1.0]);
        let b = DMatrix::zeros(2, 1);
        assert!(matches!(spd_solve(&a, &b), Err(Error::SingularSystem)));
    }

    #[test]
    fn spd_solve_rejects_asymmetric() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        let b = DMatrix::zeros(2, 1);
        assert!(matches!(
            spd_solve(&a, &b),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn dense_eig_diagonal_sorted() {
        let s = DMatrix::from_diagonal(&nalgebra::dvector![3.0, 1.0, 2.0]);
        let (vals, vecs) = dense_sym_eig(&s).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        // Eigenvectors are signed permutation columns.
        for j in 0..3 {
            let col = vecs.column(j);
            let big = col.iter().filter(|v| v.abs() > 0.5).count();
            assert_eq!(big, 1);
        }
    }

    #[test]
    fn dense_eig_known_two_by_two() {
        let s = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, _) = dense_sym_eig(&s).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_eig_reconstructs_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = DMatrix::from_fn(50, 50, |_, _| rng.gen_range(-1.0..1.0_f64));
        let s = (&g + g.transpose()) * 0.5;
        let (vals, vecs) = dense_sym_eig(&s).unwrap();
        let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vals));
        let resid = (&s * &vecs - &vecs * lambda).abs().max();
        assert!(resid < 1e-8, "reconstruction residual {resid}");
        let ortho = (vecs.transpose() * &vecs - DMatrix::identity(50, 50))
            .abs()
            .max();
        assert!(ortho < 1e-8, "orthonormality defect {ortho}");
    }

    #[test]
    fn principal_angle_detects_rotation_within_span() {
        let a = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let r = std::f64::consts::FRAC_PI_4;
        let b = DMatrix::from_column_slice(
            3,
            2,
            &[r.cos(), r.sin(), 0.0, -r.sin(), r.cos(), 0.0],
        );
        assert!(max_principal_angle(&a, &b) < 1e-12);
        let c = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(max_principal_angle(&a, &c) > 1.0);
    }
}
