use super::config::{reconstruct, ManyBodyConfig};
use crate::bath::{collision_multiplier, InteractionWindow};
use crate::bohmian::NULL_SLICE_LIMIT;
use crate::numerics::{interp, ComplexField1D, Grid1D};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest particle count stored on a tensor grid.
pub const MAX_TABULATED_PARTICLES: usize = 3;

/// Single-particle Gaussian `(2πσ²)^{−1/4} e^{−(x−c)²/4σ² + ipx}` (ħ = 1 in the phase).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    pub center: f64,
    /// Standard deviation of the density.
    pub sigma: f64,
    pub momentum: f64,
}

impl Packet {
    pub fn new(center: f64, sigma: f64) -> Self {
        Packet { center, sigma, momentum: 0.0 }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        let u = x - self.center;
        Complex64::from_polar(
            (2.0 * PI * self.sigma * self.sigma).powf(-0.25) * (-u * u / (4.0 * self.sigma * self.sigma)).exp(),
            self.momentum * x,
        )
    }
}

/// Amplitudes `ψ(x_1, …, x_N)` sampled on the same grid in every coordinate, with the
/// last coordinate fastest. Outside the grid the state vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedState {
    pub grid: Grid1D,
    pub n: usize,
    pub values: Vec<Complex64>,
}

impl TabulatedState {
    pub fn from_fn(grid: Grid1D, n: usize, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        if n == 0 || n > MAX_TABULATED_PARTICLES {
            return Err(Error::ResourceLimit(format!(
                "tabulated states hold 1 to {MAX_TABULATED_PARTICLES} particles (got {n})"
            )));
        }
        let m = grid.len();
        let total = m.pow(n as u32);
        let mut xs = vec![0.0; n];
        let values = (0..total)
            .map(|flat| {
                let mut rest = flat;
                for d in (0..n).rev() {
                    xs[d] = grid.x(rest % m);
                    rest /= m;
                }
                f(&xs)
            })
            .collect();
        Ok(TabulatedState { grid, n, values })
    }

    /// Tensor-product cubic interpolation.
    pub fn eval(&self, xs: &[f64]) -> Complex64 {
        let m = self.grid.len() as i64;
        let stencils: Vec<(i64, [f64; 4])> = xs
            .iter()
            .map(|&x| interp::cubic_stencil(self.grid.fractional_index(x)))
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for combo in 0..4usize.pow(self.n as u32) {
            let mut flat = 0i64;
            let mut weight = 1.0;
            let mut rest = combo;
            let mut inside = true;
            for (i0, w) in &stencils {
                let o = rest % 4;
                rest /= 4;
                let idx = i0 + o as i64;
                if !(0..m).contains(&idx) {
                    inside = false;
                    break;
                }
                flat = flat * m + idx;
                weight *= w[o];
            }
            if inside && weight != 0.0 {
                acc += self.values[flat as usize] * weight;
            }
        }
        acc
    }
}

/// Collision-free part of an N-body state.
#[derive(Debug, Clone, PartialEq)]
pub enum ManyBodyBase {
    /// `Σ_j c_j Π_k φ_{j,k}(x_k)`: products of Gaussians and their superpositions.
    Gaussian(Vec<(Complex64, Vec<Packet>)>),
    /// `φ(x_cm) Π_{k<N} χ_k(r_k)` with `φ` tabulated (periodic cubic interpolation) and
    /// Gaussian relative factors of the given widths centred at zero.
    Factorized { com: ComplexField1D, relative_sigma: Vec<f64> },
    /// Grid oracle, at most three particles.
    Tabulated(TabulatedState),
}

/// `(2πσ²)^{−1/4} e^{−(Y − g x_k)²/4σ²}` left on the system by one collision on particle `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionFactor {
    pub k: usize,
    /// Bath position `Y_k(t)`.
    pub y: f64,
    pub g: f64,
    pub sigma: f64,
}

/// An N-body system wave function and the collision factors applied to it so far.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyState {
    n: usize,
    base: ManyBodyBase,
    factors: Vec<CollisionFactor>,
}

impl ManyBodyState {
    pub fn new(n: usize, base: ManyBodyBase) -> Result<Self> {
        let ok = match &base {
            ManyBodyBase::Gaussian(terms) => !terms.is_empty() && terms.iter().all(|(_, p)| p.len() == n),
            ManyBodyBase::Factorized { relative_sigma, .. } => relative_sigma.len() + 1 == n,
            ManyBodyBase::Tabulated(t) => t.n == n,
        };
        if n == 0 || !ok {
            return Err(Error::invalid(format!("state does not describe {n} particles")));
        }
        Ok(ManyBodyState { n, base, factors: Vec::new() })
    }

    /// Product of independent Gaussian packets.
    pub fn product(packets: Vec<Packet>) -> Result<Self> {
        Self::new(packets.len(), ManyBodyBase::Gaussian(vec![(Complex64::new(1.0, 0.0), packets)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[CollisionFactor] {
        &self.factors
    }

    pub fn base(&self) -> &ManyBodyBase {
        &self.base
    }

    pub fn with_factor(mut self, factor: CollisionFactor) -> Self {
        self.factors.push(factor);
        self
    }

    /// Unnormalized amplitude at particle positions `xs`.
    pub fn eval(&self, xs: &[f64]) -> Complex64 {
        let base = match &self.base {
            ManyBodyBase::Gaussian(terms) => terms
                .iter()
                .map(|(c, ps)| ps.iter().zip(xs).fold(*c, |acc, (p, &x)| acc * p.eval(x)))
                .sum(),
            ManyBodyBase::Factorized { com, relative_sigma } => {
                let cm = xs.iter().sum::<f64>() / xs.len() as f64;
                let phi = interp::periodic_complex(&com.values, com.grid.fractional_index(cm));
                relative_sigma
                    .iter()
                    .zip(xs)
                    .fold(phi, |acc, (s, x)| acc * Packet::new(0.0, *s).eval(x - cm))
            }
            ManyBodyBase::Tabulated(t) => t.eval(xs),
        };
        self.factors
            .iter()
            .fold(base, |acc, f| acc * collision_multiplier(xs[f.k], f.y, f.g, f.sigma))
    }
}

/// Centre-of-mass wave function on a grid, conditioned on relative positions.
#[derive(Debug, Clone, PartialEq)]
pub struct ComConditionalState {
    pub field: ComplexField1D,
    pub conditioned_on: Vec<f64>,
}

/// `ψ_cm(x_cm) = ψ_S(x_cm, R_1, …, R_{N−1}) / ‖·‖`.
pub fn com_conditional(state: &ManyBodyState, grid: Grid1D, relative: &[f64]) -> Result<ComConditionalState> {
    if relative.len() + 1 != state.n() {
        return Err(Error::invalid(format!(
            "{} relative positions for {} particles",
            relative.len(),
            state.n()
        )));
    }
    let mut field = ComplexField1D::from_fn(grid, |cm| state.eval(&reconstruct(cm, relative)));
    let norm = field.norm_sqr();
    if !(norm > NULL_SLICE_LIMIT) {
        return Err(Error::NullSlice { y: relative.first().copied().unwrap_or(0.0), norm });
    }
    field.normalize()?;
    Ok(ComConditionalState { field, conditioned_on: relative.to_vec() })
}

/// Result of one collision between a bath particle and constituent `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComCollision {
    pub state: ManyBodyState,
    /// Conditional centre-of-mass wave function obtained from the updated N-body state.
    pub com: ComConditionalState,
    /// The same function from the reduced rule: the pre-collision `ψ_cm` times
    /// `e^{−(Y_cm − g x_cm)²/4σ²}` with `Y_cm = Y⁰ + g X_cm⁰`, normalized.
    pub reduced: ComplexField1D,
    /// Positions after the collision (unchanged: every `v_{x_k}` vanishes).
    pub config: ManyBodyConfig,
    /// Bath particle position `Y_k(t) = Y⁰ + X_k⁰ g_t`.
    pub y_k: f64,
    pub y_cm: f64,
}

/// Applies the collision factor of a bath particle (width `sigma`, starting at `Y⁰`)
/// that hits constituent `k` during `window`, evaluated at time `t`.
#[allow(clippy::too_many_arguments)]
pub fn collision_on_particle_k(
    state: &ManyBodyState,
    config: &ManyBodyConfig,
    k: usize,
    y0: f64,
    sigma: f64,
    window: &InteractionWindow,
    t: f64,
    grid: Grid1D,
) -> Result<ComCollision> {
    if k >= state.n() || config.n() != state.n() {
        return Err(Error::invalid(format!("particle {k} out of range for N = {}", state.n())));
    }
    if !(sigma > 0.0) {
        return Err(Error::invalid(format!("bath width must be positive (got {sigma})")));
    }
    let g = window.g(t);
    let y_k = y0 + config.positions()[k] * g;
    let relative = config.relative();
    let before = com_conditional(state, grid, &relative)?;
    let updated = state.clone().with_factor(CollisionFactor { k, y: y_k, g, sigma });
    let com = com_conditional(&updated, grid, &relative)?;
    let y_cm = y0 + g * config.center_of_mass();
    let reduced = before
        .field
        .map_indexed(|x, a| a * collision_multiplier(x, y_cm, g, sigma))
        .normalized()?;
    Ok(ComCollision { state: updated, com, reduced, config: config.clone(), y_k, y_cm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::conditional_pair;
    use crate::grw::apply_localization;
    use crate::numerics::states::{collision_state, gaussian_packet};
    use crate::numerics::UnitsContext;
    use std::f64::consts::SQRT_2;

    fn grid() -> Grid1D {
        Grid1D::new(-16.0, 16.0, 512).unwrap()
    }

    #[test]
    fn factorized_state_gives_its_com_factor() {
        let u = UnitsContext::natural();
        let phi = collision_state(grid(), 3.0, 1.0, 0.5, &u).unwrap();
        let s = ManyBodyState::new(3, ManyBodyBase::Factorized { com: phi.clone(), relative_sigma: vec![0.3, 0.4] }).unwrap();
        for r in [[0.1, -0.2], [0.5, 0.3], [-0.4, 0.0]] {
            let c = com_conditional(&s, grid(), &r).unwrap();
            assert!(c.field.sup_distance(&phi) < 1e-12, "{}", c.field.sup_distance(&phi));
        }
    }

    #[test]
    fn single_particle_is_itself() {
        let u = UnitsContext::natural();
        let psi = gaussian_packet(grid(), 0.5, 1.0, 0.3, &u).unwrap();
        let tab = TabulatedState { grid: grid(), n: 1, values: psi.values.clone() };
        let s = ManyBodyState::new(1, ManyBodyBase::Tabulated(tab)).unwrap();
        let c = com_conditional(&s, grid(), &[]).unwrap();
        assert!(c.field.sup_distance(&psi) < 1e-14);
    }

    #[test]
    fn entangled_pair_selects_one_lobe() {
        // lobe A: relative coordinate −1, lobe B: relative coordinate +2
        let a = vec![Packet::new(-1.0, 0.3), Packet::new(1.0, 0.4)];
        let b = vec![Packet::new(4.0, 0.3), Packet::new(0.0, 0.4)];
        let h = Complex64::new(SQRT_2.recip(), 0.0);
        let s = ManyBodyState::new(2, ManyBodyBase::Gaussian(vec![(h, a), (h, b)])).unwrap();
        let r = -1.125; // a whole number of cells, so the tabulated oracle is sampled at nodes
        let c = com_conditional(&s, grid(), &[r]).unwrap();
        // x1 = x_cm + r, x2 = x_cm − r: a Gaussian in x_cm with precision-weighted centre
        let (w1, w2) = (1.0 / 0.09, 1.0 / 0.16);
        let centre = (w1 * (-1.0 - r) + w2 * (1.0 + r)) / (w1 + w2);
        let sigma = (w1 + w2).recip().sqrt();
        let expected = ComplexField1D::from_fn(grid(), |x| Packet::new(centre, sigma).eval(x));
        assert!(c.field.sup_distance(&expected) < 1e-8, "{}", c.field.sup_distance(&expected));

        let tab = TabulatedState::from_fn(Grid1D::new(-8.0, 8.0, 256).unwrap(), 2, |xs| s.eval(xs)).unwrap();
        let st = ManyBodyState::new(2, ManyBodyBase::Tabulated(tab)).unwrap();
        let ct = com_conditional(&st, grid(), &[r]).unwrap();
        assert!(ct.field.sup_distance(&c.field) < 1e-6, "{}", ct.field.sup_distance(&c.field));
    }

    #[test]
    fn one_particle_collision_matches_bath_model() {
        let u = UnitsContext::natural();
        let psi = collision_state(grid(), 3.0, 1.0, 0.0, &u).unwrap();
        let s = ManyBodyState::new(1, ManyBodyBase::Factorized { com: psi.clone(), relative_sigma: vec![] }).unwrap();
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let cfg = ManyBodyConfig::new(vec![2.7]).unwrap();
        for t in [0.3, 1.0] {
            let out = collision_on_particle_k(&s, &cfg, 0, -0.4, 0.8, &w, t, grid()).unwrap();
            let (single, _) = conditional_pair(&psi, grid(), 0.8, 2.7, -0.4, &w, t).unwrap();
            assert!(out.com.field.sup_distance(&single) < 1e-12);
            assert!(out.reduced.sup_distance(&single) < 1e-12);
        }
    }

    #[test]
    fn rigid_cluster_collapses_like_one_particle() {
        let u = UnitsContext::natural();
        let phi = collision_state(grid(), 4.0, 1.0, 0.0, &u).unwrap();
        let s = ManyBodyState::new(3, ManyBodyBase::Factorized { com: phi.clone(), relative_sigma: vec![0.2, 0.2] }).unwrap();
        let cfg = ManyBodyConfig::new(vec![3.6, 4.3, 4.05]).unwrap();
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let (y0, sigma) = (0.35, 0.6);
        let out = collision_on_particle_k(&s, &cfg, 1, y0, sigma, &w, 1.0, grid()).unwrap();
        let x_cm0 = cfg.center_of_mass();
        let (grw, _) = apply_localization(&phi, x_cm0 + y0, SQRT_2 * sigma).unwrap();
        assert!(out.com.field.sup_distance(&grw) < 1e-8, "{}", out.com.field.sup_distance(&grw));
        assert!(out.com.field.sup_distance(&out.reduced) < 1e-8);
        assert_eq!(out.config.center_of_mass(), x_cm0);
        assert_eq!(out.config.relative(), cfg.relative());
        assert_eq!(out.y_cm, y0 + x_cm0);
    }

    #[test]
    fn every_target_gives_the_same_com_law() {
        let pk = vec![Packet::new(-0.5, 0.8), Packet::new(0.2, 0.5), Packet::new(0.9, 0.6)];
        let s = ManyBodyState::product(pk).unwrap();
        let cfg = ManyBodyConfig::new(vec![-0.3, 0.1, 1.2]).unwrap();
        let w = InteractionWindow::new(0.0, 1.0).unwrap();
        let reference = collision_on_particle_k(&s, &cfg, 0, 0.2, 0.5, &w, 1.0, grid()).unwrap();
        for k in 1..3 {
            let out = collision_on_particle_k(&s, &cfg, k, 0.2, 0.5, &w, 1.0, grid()).unwrap();
            assert!(out.com.field.sup_distance(&reference.com.field) < 1e-8);
            assert!(out.com.field.sup_distance(&out.reduced) < 1e-8);
        }
    }

    #[test]
    fn tabulation_limit() {
        let g = Grid1D::new(-1.0, 1.0, 8).unwrap();
        assert!(TabulatedState::from_fn(g, 4, |_| Complex64::new(1.0, 0.0)).is_err());
    }
}
