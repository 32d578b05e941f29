use super::conditional::conditional_wavefunction;
use crate::numerics::{ComplexField1D, DensityCdf, Grid1D, JointField2D};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// Largest grid on which dense density matrices are formed.
pub const MAX_MATRIX_POINTS: usize = 256;

/// Position-space kernel `ρ(x, x′)`, row-major. The trace is `Σ ρ(x_i, x_i) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix1D {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl DensityMatrix1D {
    pub fn zeros(grid: Grid1D) -> Result<Self> {
        if grid.len() > MAX_MATRIX_POINTS {
            return Err(Error::ResourceLimit(format!(
                "density matrix on {} points exceeds the {MAX_MATRIX_POINTS}-point limit",
                grid.len()
            )));
        }
        Ok(DensityMatrix1D {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len() * grid.len()],
        })
    }

    pub fn from_pure(psi: &ComplexField1D) -> Result<Self> {
        let mut m = Self::zeros(psi.grid)?;
        m.add_pure(psi, 1.0);
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.dim() + j]
    }

    /// `ρ += weight · |ψ⟩⟨ψ|`.
    pub fn add_pure(&mut self, psi: &ComplexField1D, weight: f64) {
        let n = self.dim();
        for i in 0..n {
            let a = psi.values[i] * weight;
            let row = &mut self.values[i * n..(i + 1) * n];
            for (r, b) in row.iter_mut().zip(&psi.values) {
                *r += a * b.conj();
            }
        }
    }

    pub fn add_scaled(&mut self, other: &DensityMatrix1D, weight: f64) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b * weight;
        }
    }

    pub fn scale(&mut self, s: f64) {
        self.values.iter_mut().for_each(|a| *a *= s);
    }

    pub fn trace(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|i| self.values[i * n + i].re).sum::<f64>() * self.grid.dx()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix1D) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |ρ(x,x′) − ρ(x′,x)*|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                err = err.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        err
    }

    /// Smallest eigenvalue of the operator `ρ·dx`.
    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.dim();
        let dx = self.grid.dx();
        let m = DMatrix::from_fn(n, n, |i, j| {
            // symmetrize away roundoff so the Hermitian solver sees an exact Hermitian matrix
            (self.at(i, j) + self.at(j, i).conj()) * (0.5 * dx)
        });
        m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Diagonal `ρ(x, x)`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.at(i, i).re).collect()
    }
}

/// Partial trace over the environment: `ρ_S(x, x′) = ∫ ψ(x, y) ψ*(x′, y) dy`.
pub fn reduced_density_matrix(joint: &JointField2D) -> Result<DensityMatrix1D> {
    let mut rho = DensityMatrix1D::zeros(joint.grid_x)?;
    let n = joint.grid_x.len();
    let dy = joint.grid_y.dx();
    for i in 0..n {
        let ri = joint.row(i);
        for j in 0..n {
            let rj = joint.row(j);
            let s: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
            rho.values[i * n + j] = s * dy;
        }
    }
    Ok(rho)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// `max |ρ_S − mean of ρ_C over sampled Y|`.
    pub monte_carlo_deviation: f64,
    /// Same comparison with the average taken as an exact sum over grid `y`.
    pub quadrature_deviation: f64,
    pub samples: usize,
}

/// Compares the reduced density matrix with the environment average of conditional
/// density matrices, once by Monte Carlo over `Y ~ ‖ψ(·, y)‖²` and once by quadrature.
pub fn reduced_vs_conditional_identity<R: Rng + ?Sized>(
    joint: &JointField2D,
    n_env_samples: usize,
    rng: &mut R,
) -> Result<IdentityReport> {
    let reduced = reduced_density_matrix(joint)?;
    let marginal = joint.marginal_y();

    let mut quadrature = DensityMatrix1D::zeros(joint.grid_x)?;
    let dy = joint.grid_y.dx();
    for (iy, p) in marginal.values.iter().enumerate() {
        if *p <= 0.0 {
            continue;
        }
        let slice = ComplexField1D::new(
            joint.grid_x,
            (0..joint.grid_x.len()).map(|ix| joint.at(ix, iy)).collect(),
        )?;
        // P(y) dy · ψψ*/‖ψ(·,y)‖² with P(y) = ‖ψ(·,y)‖²
        quadrature.add_pure(&slice, dy * p / slice.norm_sqr());
    }

    let cdf = DensityCdf::new(&marginal)?;
    let mut sampled = DensityMatrix1D::zeros(joint.grid_x)?;
    for _ in 0..n_env_samples {
        let y = cdf.sample(rng);
        let c = conditional_wavefunction(joint, y)?;
        sampled.add_pure(&c.field, 1.0);
    }
    sampled.scale(1.0 / n_env_samples as f64);

    Ok(IdentityReport {
        monte_carlo_deviation: reduced.max_abs_diff(&sampled),
        quadrature_deviation: reduced.max_abs_diff(&quadrature),
        samples: n_env_samples,
    })
}
