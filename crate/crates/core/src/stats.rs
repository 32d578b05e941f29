//! Kolmogorov–Smirnov statistics, histograms and small regression helpers.

use std::fmt;

/// Asymptotic Kolmogorov critical coefficients `c(α)` with `D_crit = c(α)/√n`.
pub const KS_COEFF_99: f64 = 1.63;
pub const KS_COEFF_95: f64 = 1.36;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Confidence {
    P95,
    P99,
}

impl Confidence {
    pub fn coefficient(self) -> f64 {
        match self {
            Confidence::P95 => KS_COEFF_95,
            Confidence::P99 => KS_COEFF_99,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Confidence::P95 => "95%",
            Confidence::P99 => "99%",
        }
    }
}

pub fn ks_critical(n: usize, confidence: Confidence) -> f64 {
    confidence.coefficient() / (n as f64).sqrt()
}

pub fn ks_critical_two_sample(n: usize, m: usize, confidence: Confidence) -> f64 {
    let (n, m) = (n as f64, m as f64);
    confidence.coefficient() * ((n + m) / (n * m)).sqrt()
}

/// One-sample statistic `sup |F_n − F|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |acc: f64, (i, &x)| {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        acc.max(above).max(below)
    })
}

/// Two-sample statistic `sup |F_a − F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub struct KsReport {
    pub statistic: f64,
    pub critical: f64,
    pub confidence: Confidence,
    pub samples: usize,
}

impl KsReport {
    pub fn one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64, confidence: Confidence) -> Self {
        KsReport {
            statistic: ks_statistic(samples, cdf),
            critical: ks_critical(samples.len(), confidence),
            confidence,
            samples: samples.len(),
        }
    }

    pub fn two_sample(a: &[f64], b: &[f64], confidence: Confidence) -> Self {
        KsReport {
            statistic: ks_two_sample(a, b),
            critical: ks_critical_two_sample(a.len(), b.len(), confidence),
            confidence,
            samples: a.len().min(b.len()),
        }
    }

    pub fn passed(&self) -> bool {
        self.statistic < self.critical
    }
}

impl fmt::Display for KsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ks={:.6} critical={:.6} confidence={} n={} verdict={}",
            self.statistic,
            self.critical,
            self.confidence.label(),
            self.samples,
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn build(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        let mut counts = vec![0u64; bins];
        let w = (hi - lo) / bins as f64;
        for &x in samples {
            if x >= lo && x < hi {
                counts[(((x - lo) / w) as usize).min(bins - 1)] += 1;
            }
        }
        Histogram { lo, hi, counts }
    }

    pub fn bin_center(&self, i: usize) -> f64 {
        let w = (self.hi - self.lo) / self.counts.len() as f64;
        self.lo + (i as f64 + 0.5) * w
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

pub fn rms(xs: &[f64]) -> f64 {
    (xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

/// Weighted least squares `y ≈ a + b x` with weights `1/σ²`.
pub fn weighted_linear_fit(x: &[f64], y: &[f64], sigma: &[f64]) -> LinearFit {
    let w: Vec<f64> = sigma.iter().map(|s| 1.0 / (s * s)).collect();
    let s: f64 = w.iter().sum();
    let sx: f64 = w.iter().zip(x).map(|(w, x)| w * x).sum();
    let sy: f64 = w.iter().zip(y).map(|(w, y)| w * y).sum();
    let sxx: f64 = w.iter().zip(x).map(|(w, x)| w * x * x).sum();
    let sxy: f64 = w.iter().zip(x).zip(y).map(|((w, x), y)| w * x * y).sum();
    let delta = s * sxx - sx * sx;
    LinearFit {
        slope: (s * sxy - sx * sy) / delta,
        intercept: (sxx * sy - sx * sxy) / delta,
        slope_stderr: (s / delta).sqrt(),
    }
}
