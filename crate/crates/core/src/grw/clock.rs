use crate::{Error, Result};
use rand::Rng;

/// Poisson process sampled by exponential gaps `−ln(1 − u)/rate`.
#[derive(Debug, Clone)]
pub struct PoissonClock<R> {
    rate: f64,
    rng: R,
    next_event: f64,
}

impl<R: Rng> PoissonClock<R> {
    /// A zero rate never fires.
    pub fn new(rate: f64, rng: R, start: f64) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::invalid(format!("Poisson rate must be ≥ 0 (got {rate})")));
        }
        let mut clock = PoissonClock { rate, rng, next_event: start };
        clock.next_event = start + clock.gap();
        Ok(clock)
    }

    fn gap(&mut self) -> f64 {
        if self.rate == 0.0 {
            return f64::INFINITY;
        }
        let u: f64 = self.rng.random();
        -(1.0 - u).ln() / self.rate
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn next_event(&self) -> f64 {
        self.next_event
    }

    /// Pops the next event time.
    pub fn tick(&mut self) -> f64 {
        let t = self.next_event;
        self.next_event = t + self.gap();
        t
    }

    /// All event times in `[now, t_end)`.
    pub fn events_until(&mut self, t_end: f64) -> Vec<f64> {
        let mut out = Vec::new();
        while self.next_event < t_end {
            out.push(self.tick());
        }
        out
    }

    pub fn into_rng(self) -> R {
        self.rng
    }
}

/// Rounds event times to the nearest step boundary `k·dt`, `k ≤ max_step`.
pub fn snap_to_steps(times: &[f64], dt: f64, max_step: usize) -> Vec<usize> {
    times
        .iter()
        .map(|t| ((t / dt).round() as usize).min(max_step))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::stats::{mean, variance};

    #[test]
    fn poisson_moments() {
        let counts: Vec<f64> = (0..4000)
            .map(|i| {
                let mut c = PoissonClock::new(2.5, rng::stream(17, i), 0.0).unwrap();
                c.events_until(4.0).len() as f64
            })
            .collect();
        assert!((mean(&counts) - 10.0).abs() < 0.2);
        assert!((variance(&counts) - 10.0).abs() < 1.0);
    }

    #[test]
    fn zero_rate_never_fires() {
        let mut c = PoissonClock::new(0.0, rng::stream(1, 0), 0.0).unwrap();
        assert!(c.events_until(1e12).is_empty());
        assert!(PoissonClock::new(-1.0, rng::stream(1, 0), 0.0).is_err());
    }

    #[test]
    fn snapping_rounds_to_nearest() {
        assert_eq!(snap_to_steps(&[0.049, 0.051, 9.99], 0.1, 50), vec![0, 1, 50]);
    }
}
