//! FFT helpers shared by the propagator and the velocity field.

use super::Grid1D;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Clone)]
pub struct Spectral {
    pub forward: Arc<dyn Fft<f64>>,
    pub inverse: Arc<dyn Fft<f64>>,
    pub k: Vec<f64>,
}

impl Spectral {
    pub fn new(grid: Grid1D) -> Self {
        let mut planner = FftPlanner::new();
        Spectral {
            forward: planner.plan_fft_forward(grid.len()),
            inverse: planner.plan_fft_inverse(grid.len()),
            k: grid.wavenumbers(),
        }
    }

    /// Spectral derivative `∂x` of periodic samples.
    pub fn derivative(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = values.len() as f64;
        let mut buf = values.to_vec();
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.k) {
            *b *= Complex64::new(0.0, *k / n);
        }
        self.inverse.process(&mut buf);
        buf
    }

    /// Spectral derivatives of the real and imaginary parts, each transformed on its own
    /// so that an identically vanishing part has an exactly vanishing derivative.
    pub fn derivative_parts(&self, values: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let part = |f: fn(&Complex64) -> f64| -> Vec<f64> {
            if values.iter().all(|a| f(a) == 0.0) {
                return vec![0.0; values.len()];
            }
            let v: Vec<Complex64> = values.iter().map(|a| Complex64::new(f(a), 0.0)).collect();
            self.derivative(&v).iter().map(|d| d.re).collect()
        };
        (part(|a| a.re), part(|a| a.im))
    }
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("n", &self.k.len()).finish()
    }
}
