use super::window::InteractionWindow;
use crate::numerics::spectral::Spectral;
use crate::numerics::{interp, ComplexField1D, Grid1D, JointField2D};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Probability allowed to leave the `y` grid during a shear.
pub const SHEAR_LOSS_LIMIT: f64 = 1e-10;

/// `ψ(x, y, t) = ψ(x, y − x g_t, t_i)`, the exact evolution under `f_t x̂_S p̂_E` with
/// the free Hamiltonians switched off. Each row is translated in `y` by a Fourier phase,
/// which is exact for band-limited rows and preserves the norm; probability that would
/// wrap around the periodic `y` grid is reported as lost.
pub fn shear_evolution(joint0: &JointField2D, window: &InteractionWindow, t: f64) -> Result<JointField2D> {
    let g = window.g(t);
    if g == 0.0 {
        return Ok(joint0.clone());
    }
    let gy = joint0.grid_y;
    let ny = gy.len();
    let spectral = Spectral::new(gy);
    let mut values = Vec::with_capacity(joint0.values.len());
    let mut lost = 0.0;
    let mut buf = vec![Complex64::new(0.0, 0.0); ny];
    for ix in 0..joint0.grid_x.len() {
        let shift = joint0.grid_x.x(ix) * g;
        let row = joint0.row(ix);
        lost += row
            .iter()
            .enumerate()
            .filter(|(iy, _)| {
                let y = gy.x(*iy);
                y + shift >= gy.x_max() || y + shift < gy.x_min()
            })
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>();
        buf.copy_from_slice(row);
        spectral.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&spectral.k) {
            *b *= Complex64::from_polar(1.0 / ny as f64, -k * shift);
        }
        spectral.inverse.process(&mut buf);
        values.extend_from_slice(&buf);
    }
    let lost_mass = lost * joint0.grid_x.dx() * gy.dx() / joint0.norm_sqr();
    if lost_mass > SHEAR_LOSS_LIMIT {
        return Err(Error::ShearOffGrid { lost_mass });
    }
    Ok(JointField2D { grid_x: joint0.grid_x, grid_y: gy, values })
}

/// Bohmian positions during the window: `X(t) = X⁰`, `Y(t) = Y⁰ + X⁰ g_t`.
pub fn collision_trajectories(x0: f64, y0: f64, window: &InteractionWindow, t: f64) -> (f64, f64) {
    (x0, y0 + x0 * window.g(t))
}

/// Bath factor of the sheared state seen by the system, `ψ_E(Y − g x)` for a packet
/// centred at the origin: `(2πσ²)^{−1/4} e^{−(Y − g x)²/4σ²}`.
#[inline]
pub fn collision_multiplier(x: f64, y: f64, g: f64, sigma: f64) -> f64 {
    let u = y - g * x;
    (2.0 * PI * sigma * sigma).powf(-0.25) * (-u * u / (4.0 * sigma * sigma)).exp()
}

/// Closed-form conditional wave functions of system and bath particle for a factorized
/// start with a Gaussian bath packet of width `sigma` centred at the origin.
///
/// Returns `(ψ_C(x) ∝ ψ_S(x) e^{−(Y(t) − g_t x)²/4σ²}, ψ_B(y) ∝ ψ_S(X⁰) e^{−(y − g_t X⁰)²/4σ²})`
/// with `ψ_B` sampled on `grid_y`.
pub fn conditional_pair(
    psi_s: &ComplexField1D,
    grid_y: Grid1D,
    sigma: f64,
    x0: f64,
    y0: f64,
    window: &InteractionWindow,
    t: f64,
) -> Result<(ComplexField1D, ComplexField1D)> {
    if !(sigma > 0.0) {
        return Err(Error::invalid(format!("bath width must be positive (got {sigma})")));
    }
    let g = window.g(t);
    let (_, y) = collision_trajectories(x0, y0, window, t);
    let system = psi_s.map_indexed(|x, a| a * collision_multiplier(x, y, g, sigma));
    let amplitude = interp::periodic_complex(&psi_s.values, psi_s.grid.fractional_index(x0));
    let bath = ComplexField1D::from_fn(grid_y, |yy| amplitude * collision_multiplier(x0, yy, g, sigma));
    let norm = system.norm_sqr();
    if !(norm > crate::bohmian::NULL_SLICE_LIMIT) {
        return Err(Error::NullSlice { y, norm });
    }
    let bath_norm = bath.norm_sqr();
    if !(bath_norm > crate::bohmian::NULL_SLICE_LIMIT) {
        return Err(Error::NullSlice { y: x0, norm: bath_norm });
    }
    Ok((system.normalized()?, bath.normalized()?))
}

/// Bath packet `(2πσ²)^{−1/4} e^{−(y − a)²/4σ²}` on `grid`.
pub fn bath_packet(grid: Grid1D, sigma: f64, center: f64) -> ComplexField1D {
    ComplexField1D::from_fn(grid, |y| Complex64::new(collision_multiplier(0.0, y - center, 0.0, sigma), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohmian::conditional_wavefunction;
    use crate::grw::apply_localization;
    use crate::numerics::states::{collision_state, gaussian_packet};
    use crate::numerics::UnitsContext;

    fn setup() -> (ComplexField1D, ComplexField1D) {
        let u = UnitsContext::natural();
        let gx = Grid1D::new(-8.0, 8.0, 256).unwrap();
        let gy = Grid1D::new(-20.0, 20.0, 512).unwrap();
        (collision_state(gx, 2.0, 0.8, 0.5, &u).unwrap(), bath_packet(gy, 1.0, 0.0))
    }

    #[test]
    fn before_window_is_identity() {
        let (s, e) = setup();
        let joint = JointField2D::product(&s, &e);
        let w = InteractionWindow::new(1.0, 2.0).unwrap();
        assert_eq!(shear_evolution(&joint, &w, 0.5).unwrap(), joint);
        assert_eq!(shear_evolution(&joint, &w, 1.0).unwrap(), joint);
    }

    #[test]
    fn gaussian_widths_add_in_quadrature() {
        let u = UnitsContext::natural();
        let gx = Grid1D::new(-8.0, 8.0, 256).unwrap();
        let gy = Grid1D::new(-20.0, 20.0, 512).unwrap();
        let s = gaussian_packet(gx, 0.0, 1.2, 0.0, &u).unwrap();
        let e = bath_packet(gy, 1.0, 0.0);
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let sheared = shear_evolution(&JointField2D::product(&s, &e), &w, 1.0).unwrap();
        let m = sheared.marginal_y();
        let dy = gy.dx();
        let ys = gy.points();
        let var: f64 = m.values.iter().zip(&ys).map(|(p, y)| p * y * y * dy).sum();
        assert!((var.sqrt() - (1.2f64.powi(2) + 1.0).sqrt()).abs() < 1e-5, "{}", var.sqrt());
        assert!((sheared.norm_sqr() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn sheared_slice_matches_closed_form() {
        let (s, e) = setup();
        let joint = JointField2D::product(&s, &e);
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        for &(x0, y0, t) in &[(1.7, -0.4, 1.0), (-2.1, 0.9, 0.5), (0.3, 1.3, 2.0)] {
            let sheared = shear_evolution(&joint, &w, t).unwrap();
            let (_, y) = collision_trajectories(x0, y0, &w, t);
            let grid_c = conditional_wavefunction(&sheared, y).unwrap().field;
            let (closed, _) = conditional_pair(&s, e.grid, 1.0, x0, y0, &w, t).unwrap();
            assert!(grid_c.sup_distance(&closed) < 1e-6, "{}", grid_c.sup_distance(&closed));
        }
    }

    #[test]
    fn bath_conditional_follows_system_position() {
        let (s, e) = setup();
        let joint = JointField2D::product(&s, &e);
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let x0 = gx_node(&s, 1.5);
        let sheared = shear_evolution(&joint, &w, 1.0).unwrap();
        let ix = s.grid.fractional_index(x0).round() as usize;
        let mut row = ComplexField1D::new(e.grid, sheared.row(ix).to_vec()).unwrap();
        row.normalize().unwrap();
        let (_, bath) = conditional_pair(&s, e.grid, 1.0, x0, 0.2, &w, 1.0).unwrap();
        assert!(row.sup_distance(&bath) < 1e-6);
        let ys = e.grid.points();
        let centre: f64 = bath.density().values.iter().zip(&ys).map(|(p, y)| p * y).sum::<f64>() * e.grid.dx();
        assert!((centre - x0).abs() < 1e-8);
    }

    fn gx_node(s: &ComplexField1D, x: f64) -> f64 {
        s.grid.x(s.grid.fractional_index(x).round() as usize)
    }

    #[test]
    fn end_of_window_is_grw_collapse() {
        let (s, e) = setup();
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let sigma = 0.7;
        let (x0, y0) = (1.9, -0.3);
        let (c, _) = conditional_pair(&s, e.grid, sigma, x0, y0, &w, 1.0).unwrap();
        let (grw, _) = apply_localization(&s, x0 + y0, std::f64::consts::SQRT_2 * sigma).unwrap();
        assert!(c.sup_distance(&grw) < 1e-12);
    }

    #[test]
    fn wide_bath_leaves_state_alone() {
        let (s, e) = setup();
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let (c, _) = conditional_pair(&s, e.grid, 1e3 * s.grid.length(), 0.5, 3.0, &w, 1.0).unwrap();
        assert!(c.sup_distance(&s) < 1e-6);
    }

    #[test]
    fn shear_off_grid_detected() {
        let u = UnitsContext::natural();
        let gx = Grid1D::new(-8.0, 8.0, 64).unwrap();
        let gy = Grid1D::new(-4.0, 4.0, 64).unwrap();
        let s = gaussian_packet(gx, 4.0, 0.5, 0.0, &u).unwrap();
        let joint = JointField2D::product(&s, &bath_packet(gy, 0.5, 0.0));
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        assert!(matches!(shear_evolution(&joint, &w, 1.0), Err(Error::ShearOffGrid { .. })));
    }

    #[test]
    fn trajectories_follow_ramp() {
        let w = InteractionWindow::new(0.0, 2.0).unwrap();
        assert_eq!(collision_trajectories(1.5, 0.2, &w, -1.0), (1.5, 0.2));
        assert_eq!(collision_trajectories(1.5, 0.2, &w, 1.0), (1.5, 0.2 + 0.75));
        assert_eq!(collision_trajectories(1.5, 0.2, &w, 5.0), (1.5, 0.2 + 1.5));
        assert_eq!(collision_trajectories(0.0, 0.2, &w, 5.0), (0.0, 0.2));
    }
}
