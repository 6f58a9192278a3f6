//! Dense and sparse linear-algebra kernels shared by the whole crate.

mod dense;
mod lanczos;
mod sparse;

pub use dense::{dense_sym_eig, max_principal_angle, spd_solve, symmetry_defect, SpdFactor};
pub use lanczos::{extremal_eigpairs, Which};
pub use sparse::SparseSymmetric;

use rand::Rng;

/// A linear, symmetric map on `R^dim`, applied without materializing the matrix.
///
/// Implementations must be deterministic and satisfy `<Av, w> = <v, Aw>` up to
/// roundoff; [`operator_symmetry_defect`] probes that on random vector pairs.
pub trait SymmetricOperator: Sync {
    fn dim(&self) -> usize;

    /// Computes `y = A x`. Both slices have length `dim`.
    fn apply_into(&self, x: &[f64], y: &mut [f64]);

    /// A scalar `c` with `lambda_max(A) <= c`, used to turn smallest-eigenpair
    /// requests into largest-eigenpair requests on `cI - A`.
    fn spectrum_upper_bound(&self) -> f64;

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_into(x, &mut y);
        y
    }
}

/// Wraps an operator with an externally supplied spectrum bound.
pub struct BoundedOperator<'a, O: SymmetricOperator + ?Sized> {
    inner: &'a O,
    bound: f64,
}

impl<'a, O: SymmetricOperator + ?Sized> BoundedOperator<'a, O> {
    pub fn new(inner: &'a O, bound: f64) -> Self {
        Self { inner, bound }
    }
}

impl<O: SymmetricOperator + ?Sized> SymmetricOperator for BoundedOperator<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.inner.apply_into(x, y);
    }

    fn spectrum_upper_bound(&self) -> f64 {
        self.bound
    }
}

/// Largest relative symmetry violation `|<Av,w> - <v,Aw>|` observed over
/// `trials` random vector pairs.
pub fn operator_symmetry_defect<O, R>(op: &O, trials: usize, rng: &mut R) -> f64
where
    O: SymmetricOperator + ?Sized,
    R: Rng,
{
    let n = op.dim();
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let av = op.apply(&v);
        let aw = op.apply(&w);
        let left: f64 = av.iter().zip(&w).map(|(a, b)| a * b).sum();
        let right: f64 = v.iter().zip(&aw).map(|(a, b)| a * b).sum();
        let defect = (left - right).abs() / (1.0 + left.abs());
        worst = worst.max(defect);
    }
    worst
}
