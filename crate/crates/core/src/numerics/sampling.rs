use super::{Grid1D, RealField1D};
use crate::{Error, Result};
use rand::Rng;

/// Piecewise-linear CDF of a grid density.
///
/// Cell `i` spans `[x_i, x_i + dx)` and carries the trapezoid mass
/// `(ρ_i + ρ_{i+1}) dx / 2`, the last cell wrapping to `ρ_0`. Inside a cell the CDF is
/// linear, so sampling is uniform within the selected cell.
#[derive(Debug, Clone)]
pub struct DensityCdf {
    grid: Grid1D,
    cumulative: Vec<f64>,
}

impl DensityCdf {
    pub fn new(rho: &RealField1D) -> Result<Self> {
        if let Some(bad) = rho.values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::invalid(format!("density sample {bad} is negative or non-finite")));
        }
        let n = rho.values.len();
        let dx = rho.grid.dx();
        let mut cumulative = Vec::with_capacity(n + 1);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 0..n {
            acc += 0.5 * (rho.values[i] + rho.values[(i + 1) % n]) * dx;
            cumulative.push(acc);
        }
        if acc <= 0.0 {
            return Err(Error::DegenerateDistribution("density integrates to zero".into()));
        }
        let inv = 1.0 / acc;
        cumulative.iter_mut().for_each(|c| *c *= inv);
        Ok(DensityCdf { grid: rho.grid, cumulative })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let s = self.grid.fractional_index(x);
        if s <= 0.0 {
            return 0.0;
        }
        let n = self.grid.len();
        if s >= n as f64 {
            return 1.0;
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        self.cumulative[i] + t * (self.cumulative[i + 1] - self.cumulative[i])
    }

    /// Inverse CDF at `u ∈ [0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        let n = self.grid.len();
        // first index whose cumulative value exceeds u
        let j = self.cumulative.partition_point(|c| *c <= u).clamp(1, n);
        let i = j - 1;
        let lo = self.cumulative[i];
        let width = self.cumulative[i + 1] - lo;
        let t = if width > 0.0 { ((u - lo) / width).clamp(0.0, 1.0) } else { 0.0 };
        self.grid.x(i) + t * self.grid.dx()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.random::<f64>())
    }
}

/// `n` independent draws from `rho` by inverse transform sampling.
pub fn sample_from_density<R: Rng + ?Sized>(rho: &RealField1D, rng: &mut R, n: usize) -> Result<Vec<f64>> {
    let cdf = DensityCdf::new(rho)?;
    Ok((0..n).map(|_| cdf.sample(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::stats::ks_statistic;

    #[test]
    fn uniform_density_passes_ks() {
        let g = Grid1D::new(0.0, 1.0, 64).unwrap();
        let rho = RealField1D::from_fn(g, |_| 1.0);
        let mut r = rng::stream(11, 0);
        let xs = sample_from_density(&rho, &mut r, 100_000).unwrap();
        let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0));
        assert!(d < 0.01, "{d}");
    }

    #[test]
    fn hot_cell_samples_stay_adjacent() {
        let g = Grid1D::new(-1.0, 1.0, 32).unwrap();
        let mut rho = RealField1D::from_fn(g, |_| 0.0);
        rho.values[10] = 5.0;
        let mut r = rng::stream(3, 0);
        for x in sample_from_density(&rho, &mut r, 2000).unwrap() {
            assert!((x - g.x(10)).abs() <= g.dx() + 1e-12);
        }
    }

    #[test]
    fn gaussian_sample_mean_within_clt_bound() {
        let g = Grid1D::new(-10.0, 10.0, 512).unwrap();
        let rho = RealField1D::from_fn(g, |x| (-x * x / 2.0).exp());
        let mut r = rng::stream(5, 0);
        let n = 20_000;
        let xs = sample_from_density(&rho, &mut r, n).unwrap();
        let mean = xs.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
    }

    #[test]
    fn zero_density_is_degenerate() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let rho = RealField1D::from_fn(g, |_| 0.0);
        let mut r = rng::stream(1, 0);
        assert!(matches!(
            sample_from_density(&rho, &mut r, 1),
            Err(Error::DegenerateDistribution(_))
        ));
    }

    #[test]
    fn negative_density_rejected() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        let rho = RealField1D::from_fn(g, |x| x - 0.5);
        assert!(DensityCdf::new(&rho).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        let g = Grid1D::new(-3.0, 3.0, 64).unwrap();
        let rho = RealField1D::from_fn(g, |x| 1.0 + x.sin().powi(2));
        let c = DensityCdf::new(&rho).unwrap();
        for u in [0.01, 0.2, 0.5, 0.77, 0.999] {
            assert!((c.cdf(c.quantile(u)) - u).abs() < 1e-12);
        }
    }
}
