//! Four-point (cubic Lagrange) interpolation on uniform grids.

/// Stencil for the fractional index `s`: the first of four consecutive node indices
/// (may be negative or past the end) and their Lagrange weights.
#[inline]
pub fn cubic_stencil(s: f64) -> (i64, [f64; 4]) {
    let base = s.floor();
    let t = s - base;
    let w = [
        -t * (t - 1.0) * (t - 2.0) / 6.0,
        (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
        -(t + 1.0) * t * (t - 2.0) / 2.0,
        (t + 1.0) * t * (t - 1.0) / 6.0,
    ];
    (base as i64 - 1, w)
}

#[inline]
fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Periodic cubic interpolation of real samples at fractional index `s`.
pub fn periodic_real(values: &[f64], s: f64) -> f64 {
    let n = values.len();
    let (i0, w) = cubic_stencil(s);
    (0..4).map(|k| w[k] * values[wrap(i0 + k as i64, n)]).sum()
}

/// Periodic cubic interpolation of complex samples at fractional index `s`.
pub fn periodic_complex(values: &[num_complex::Complex64], s: f64) -> num_complex::Complex64 {
    let n = values.len();
    let (i0, w) = cubic_stencil(s);
    (0..4).map(|k| values[wrap(i0 + k as i64, n)] * w[k]).sum()
}

/// Cubic interpolation treating samples outside `[0, n)` as zero.
pub fn open_complex(values: &[num_complex::Complex64], s: f64) -> num_complex::Complex64 {
    let n = values.len() as i64;
    let (i0, w) = cubic_stencil(s);
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        let i = i0 + k as i64;
        if (0..n).contains(&i) {
            acc += values[i as usize] * *wk;
        }
    }
    acc
}
