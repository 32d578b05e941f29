use crate::grw::collapse_center_pdf;
use crate::numerics::{ComplexField1D, DensityCdf};
use crate::stats::{Confidence, Histogram, KsReport};
use crate::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::SQRT_2;

/// Localization centres `Z = X⁰ + Y⁰` and their comparison with the GRW centre law.
#[derive(Debug, Clone, PartialEq)]
pub struct ZStatistics {
    pub samples: Vec<f64>,
    pub histogram: Histogram,
    /// KS against `‖L(z)ψ‖²` with `r_C = √2σ`, computed on the grid.
    pub ks: KsReport,
}

/// Draws `X⁰ ~ |ψ_S|²` and `Y⁰ ~ |ψ_E|²` (a normal law of standard deviation `σ`)
/// independently and compares `Z = X⁰ + Y⁰` with the GRW collapse-centre density.
pub fn localization_center_statistics<R: Rng + ?Sized>(
    psi_s: &ComplexField1D,
    sigma: f64,
    n: usize,
    confidence: Confidence,
    rng: &mut R,
) -> Result<ZStatistics> {
    if n < 1000 {
        return Err(Error::invalid(format!("need at least 10³ samples (got {n})")));
    }
    let bath = Normal::new(0.0, sigma).map_err(|e| Error::invalid(format!("bath width {sigma}: {e}")))?;
    let system = DensityCdf::new(&psi_s.density())?;
    let samples: Vec<f64> = (0..n)
        .map(|_| {
            let x0 = system.sample(rng);
            let y0 = bath.sample(rng);
            x0 + y0
        })
        .collect();
    let law = DensityCdf::new(&collapse_center_pdf(psi_s, SQRT_2 * sigma)?)?;
    let ks = KsReport::one_sample(&samples, |z| law.cdf(z), confidence);
    let grid = psi_s.grid;
    let histogram = Histogram::build(&samples, grid.x_min(), grid.x_max(), 128);
    Ok(ZStatistics { samples, histogram, ks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::states::{collision_state, gaussian_packet};
    use crate::numerics::{Grid1D, UnitsContext};
    use crate::rng;
    use statrs::distribution::{ContinuousCDF, Normal as StatNormal};

    #[test]
    fn narrow_system_gives_bath_law() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-20.0, 20.0, 2048).unwrap();
        let psi = gaussian_packet(g, 0.0, 0.02, 0.0, &u).unwrap();
        let z = localization_center_statistics(&psi, 1.5, 10_000, Confidence::P99, &mut rng::stream(3, 0)).unwrap();
        let exact = StatNormal::new(0.0, (1.5f64.powi(2) + 0.02f64.powi(2)).sqrt()).unwrap();
        let direct = KsReport::one_sample(&z.samples, |x| exact.cdf(x), Confidence::P99);
        assert!(direct.passed(), "{direct}");
        assert!(z.ks.passed(), "{}", z.ks);
    }

    #[test]
    fn two_lobes_split_evenly() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 1024).unwrap();
        let psi = collision_state(g, 8.0, 1.0, 0.0, &u).unwrap();
        let n = 10_000;
        let z = localization_center_statistics(&psi, 1.0, n, Confidence::P99, &mut rng::stream(4, 0)).unwrap();
        let right = z.samples.iter().filter(|&&v| v > 0.0).count() as f64 / n as f64;
        assert!((right - 0.5).abs() < 3.0 * 0.5 / (n as f64).sqrt());
        assert!(z.ks.passed(), "{}", z.ks);
    }

    #[test]
    fn too_few_samples_rejected() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-10.0, 10.0, 256).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0, 0.0, &u).unwrap();
        assert!(localization_center_statistics(&psi, 1.0, 10, Confidence::P99, &mut rng::stream(0, 0)).is_err());
    }
}
