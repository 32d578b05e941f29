use crate::numerics::{ComplexField1D, DensityCdf, RealField1D};
use crate::{Error, Result};
use rand::Rng;
use std::f64::consts::PI;

/// Post-collapse norms below this mean the centre missed the state entirely.
pub const MIN_POST_COLLAPSE_NORM: f64 = 1e-14;
/// Kernel support in units of `r_C`.
const KERNEL_CUTOFF: f64 = 12.0;

/// `L(z)` evaluated at `x`.
#[inline]
pub fn localization_multiplier(x: f64, z: f64, r_c: f64) -> f64 {
    (PI * r_c * r_c).powf(-0.25) * (-(x - z).powi(2) / (2.0 * r_c * r_c)).exp()
}

/// `ψ → L(z)ψ / ‖L(z)ψ‖`; also returns the pre-normalization norm `‖L(z)ψ‖`.
pub fn apply_localization(psi: &ComplexField1D, z: f64, r_c: f64) -> Result<(ComplexField1D, f64)> {
    if !(r_c > 0.0 && z.is_finite()) {
        return Err(Error::invalid(format!("localization needs r_C > 0 and finite z (got {r_c}, {z})")));
    }
    let mut out = psi.map_indexed(|x, a| a * localization_multiplier(x, z, r_c));
    let norm = out.norm();
    if !(norm >= MIN_POST_COLLAPSE_NORM) {
        return Err(Error::CollapseToNull { z, norm });
    }
    out.values.iter_mut().for_each(|a| *a /= norm);
    Ok((out, norm))
}

/// Collapse-centre density `p(z) = ‖L(z)ψ‖²` on the field's grid: the convolution of
/// `|ψ|²` with a normalized Gaussian of variance `r_C²/2`.
pub fn collapse_center_pdf(psi: &ComplexField1D, r_c: f64) -> Result<RealField1D> {
    let grid = psi.grid;
    let dx = grid.dx();
    if r_c < dx {
        return Err(Error::GridResolution { width: r_c, dx });
    }
    let rho: Vec<f64> = psi.values.iter().map(|a| a.norm_sqr()).collect();
    let reach = ((KERNEL_CUTOFF * r_c / dx).ceil() as usize).min(grid.len());
    let norm = (PI * r_c * r_c).powf(-0.5);
    let kernel: Vec<f64> = (0..=reach)
        .map(|m| norm * (-(m as f64 * dx).powi(2) / (r_c * r_c)).exp() * dx)
        .collect();
    let n = grid.len();
    let values = (0..n)
        .map(|j| {
            let lo = j.saturating_sub(reach);
            let hi = (j + reach).min(n - 1);
            (lo..=hi).map(|i| rho[i] * kernel[i.abs_diff(j)]).sum()
        })
        .collect();
    RealField1D::new(grid, values)
}

/// Draws a collapse centre from `‖L(z)ψ‖²` by inverse CDF on the grid.
pub fn sample_collapse_center<R: Rng + ?Sized>(psi: &ComplexField1D, r_c: f64, rng: &mut R) -> Result<f64> {
    let pdf = collapse_center_pdf(psi, r_c)?;
    Ok(DensityCdf::new(&pdf)?.sample(rng))
}
