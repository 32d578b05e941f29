use crate::{Error, Result};
use std::f64::consts::PI;

/// Uniform periodic grid. Points sit at `x_min + i·dx` for `i < n`; `x_max` is identified
/// with `x_min`, so the last cell wraps around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::invalid(format!("grid size {n} must be a power of two ≥ 8")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::invalid(format!("grid bounds [{x_min}, {x_max}] invalid")));
        }
        Ok(Grid1D { x_min, x_max, n })
    }

    /// Grid of `n` points centred on zero with half-width `half_width`.
    pub fn centered(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Position in units of grid spacing, measured from `x_min`.
    #[inline]
    pub fn fractional_index(&self, x: f64) -> f64 {
        (x - self.x_min) / self.dx()
    }

    /// FFT-ordered angular wavenumbers.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = 2.0 * PI / self.length();
        let n = self.n as i64;
        (0..n)
            .map(|j| if j < n / 2 { j as f64 * dk } else { (j - n) as f64 * dk })
            .collect()
    }

    pub fn k_nyquist(&self) -> f64 {
        PI / self.dx()
    }

    /// True when `x` is at least `margin` cells away from both ends.
    pub fn contains_interior(&self, x: f64, margin: f64) -> bool {
        let s = self.fractional_index(x);
        s.is_finite() && s >= margin && s <= self.n as f64 - 1.0 - margin
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid1D::new(0.0, 1.0, 4).is_err());
        assert!(Grid1D::new(0.0, 1.0, 100).is_err());
        assert!(Grid1D::new(1.0, 0.0, 64).is_err());
        assert!(Grid1D::new(0.0, f64::NAN, 64).is_err());
    }

    #[test]
    fn spacing_and_wavenumbers() {
        let g = Grid1D::new(-4.0, 4.0, 16).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.x(0), -4.0);
        assert_eq!(g.x(15), 3.5);
        let k = g.wavenumbers();
        assert_eq!(k[0], 0.0);
        assert!((k[1] - PI / 4.0).abs() < 1e-15);
        assert!((k[8] + g.k_nyquist()).abs() < 1e-12);
    }
}
