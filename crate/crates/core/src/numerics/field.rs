use super::Grid1D;
use crate::{Error, Result};
use num_complex::Complex64;

/// Real samples on a grid (densities, potentials).
#[derive(Debug, Clone, PartialEq)]
pub struct RealField1D {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl RealField1D {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} samples for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(RealField1D { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.x(i))).collect();
        RealField1D { grid, values }
    }

    /// Periodic trapezoid rule, which on this grid is the plain Riemann sum.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Sampled complex wave function on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField1D {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl ComplexField1D {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "field has {} samples for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(ComplexField1D { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.x(i))).collect();
        ComplexField1D { grid, values }
    }

    /// `∫|ψ|² dx` on the grid.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&mut self) -> Result<f64> {
        let norm = self.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NumericOverflow {
                context: format!("cannot normalize field with norm {norm}"),
            });
        }
        let s = 1.0 / norm;
        self.values.iter_mut().for_each(|a| *a *= s);
        Ok(norm)
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    pub fn density(&self) -> RealField1D {
        RealField1D {
            grid: self.grid,
            values: self.values.iter().map(|a| a.norm_sqr()).collect(),
        }
    }

    /// `⟨self|other⟩ = Σ self* · other · dx`.
    pub fn inner(&self, other: &ComplexField1D) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.dx()
    }

    pub fn sup_distance(&self, other: &ComplexField1D) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// New field with `f(x, ψ(x))` at every point.
    pub fn map_indexed(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, a)| f(self.grid.x(i), *a))
            .collect();
        ComplexField1D { grid: self.grid, values }
    }

    pub fn ensure_finite(&self, context: &str) -> Result<()> {
        if self.values.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NumericOverflow {
                context: context.to_string(),
            })
        }
    }
}

/// Joint system–environment amplitude `ψ(x, y)`, stored row-major with `y` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct JointField2D {
    pub grid_x: Grid1D,
    pub grid_y: Grid1D,
    pub values: Vec<Complex64>,
}

impl JointField2D {
    pub fn from_fn(grid_x: Grid1D, grid_y: Grid1D, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(grid_x.len() * grid_y.len());
        for i in 0..grid_x.len() {
            let x = grid_x.x(i);
            for j in 0..grid_y.len() {
                values.push(f(x, grid_y.x(j)));
            }
        }
        JointField2D { grid_x, grid_y, values }
    }

    pub fn product(system: &ComplexField1D, environment: &ComplexField1D) -> Self {
        let mut values = Vec::with_capacity(system.values.len() * environment.values.len());
        for a in &system.values {
            for b in &environment.values {
                values.push(a * b);
            }
        }
        JointField2D {
            grid_x: system.grid,
            grid_y: environment.grid,
            values,
        }
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[ix * self.grid_y.len() + iy]
    }

    pub fn row(&self, ix: usize) -> &[Complex64] {
        let ny = self.grid_y.len();
        &self.values[ix * ny..(ix + 1) * ny]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid_x.dx() * self.grid_y.dx()
    }

    pub fn normalize(&mut self) -> Result<f64> {
        let norm = self.norm_sqr().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NumericOverflow {
                context: format!("cannot normalize joint field with norm {norm}"),
            });
        }
        let s = 1.0 / norm;
        self.values.iter_mut().for_each(|a| *a *= s);
        Ok(norm)
    }

    /// Environment marginal `∫ |ψ(x, y)|² dx` as a function of `y`.
    pub fn marginal_y(&self) -> RealField1D {
        let ny = self.grid_y.len();
        let mut m = vec![0.0; ny];
        for ix in 0..self.grid_x.len() {
            for (iy, a) in self.row(ix).iter().enumerate() {
                m[iy] += a.norm_sqr();
            }
        }
        let dx = self.grid_x.dx();
        m.iter_mut().for_each(|v| *v *= dx);
        RealField1D { grid: self.grid_y, values: m }
    }

    pub fn marginal_x(&self) -> RealField1D {
        let dy = self.grid_y.dx();
        let values = (0..self.grid_x.len())
            .map(|ix| self.row(ix).iter().map(|a| a.norm_sqr()).sum::<f64>() * dy)
            .collect();
        RealField1D { grid: self.grid_x, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_sets_unit_norm() {
        let g = Grid1D::new(-10.0, 10.0, 256).unwrap();
        let mut f = ComplexField1D::from_fn(g, |x| Complex64::new((-x * x).exp(), 0.3 * x));
        f.values.iter_mut().for_each(|a| *a *= (-0.1 * a.re).exp());
        f.normalize().unwrap();
        assert!((f.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_field_cannot_normalize() {
        let g = Grid1D::new(-1.0, 1.0, 8).unwrap();
        let mut f = ComplexField1D::from_fn(g, |_| Complex64::new(0.0, 0.0));
        assert!(f.normalize().is_err());
    }

    #[test]
    fn product_marginals() {
        let g = Grid1D::new(-8.0, 8.0, 64).unwrap();
        let a = ComplexField1D::from_fn(g, |x| Complex64::new((-x * x / 2.0).exp(), 0.0))
            .normalized()
            .unwrap();
        let b = ComplexField1D::from_fn(g, |x| Complex64::new((-(x - 1.0).powi(2)).exp(), 0.0))
            .normalized()
            .unwrap();
        let j = JointField2D::product(&a, &b);
        assert!((j.norm_sqr() - 1.0).abs() < 1e-10);
        let my = j.marginal_y();
        for (u, v) in my.values.iter().zip(b.density().values) {
            assert!((u - v).abs() < 1e-12);
        }
    }
}
