//! Detrended fluctuation analysis (first order).

use crate::error::{Error, Result};

pub const DEFAULT_BOX_COUNT: usize = 16;
pub const MIN_BOX: usize = 4;

/// Up to `count` distinct log-spaced integer box sizes in `[MIN_BOX, n / 4]`.
pub fn default_box_sizes(n: usize, count: usize) -> Vec<usize> {
    let hi = n / 4;
    if hi < MIN_BOX {
        return Vec::new();
    }
    let (a, b) = ((MIN_BOX as f64).ln(), (hi as f64).ln());
    let mut sizes: Vec<usize> = (0..count)
        .map(|i| {
            let t = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            (a + (b - a) * t).exp().round() as usize
        })
        .collect();
    sizes.dedup();
    sizes
}

/// RMS of residuals after a least-squares line fit in each non-overlapping box.
pub fn fluctuation(profile: &[f64], box_size: usize) -> f64 {
    let n = box_size as f64;
    let x_mean = (n - 1.0) / 2.0;
    let sxx = (n - 1.0) * n * (n + 1.0) / 12.0;
    let boxes = profile.len() / box_size;
    let mut total = 0.0;
    for chunk in profile.chunks_exact(box_size) {
        let y_mean = chunk.iter().sum::<f64>() / n;
        let (mut sxy, mut syy) = (0.0, 0.0);
        for (i, &y) in chunk.iter().enumerate() {
            let dy = y - y_mean;
            sxy += (i as f64 - x_mean) * dy;
            syy += dy * dy;
        }
        // Residual sum of squares of the least-squares line.
        total += (syy - sxy * sxy / sxx).max(0.0);
    }
    (total / (boxes * box_size) as f64).sqrt()
}

/// Scaling exponent α with explicit box sizes.
pub fn dfa_with_boxes(x: &[f64], box_sizes: &[usize]) -> Result<f64> {
    let max_box = box_sizes.iter().copied().max().unwrap_or(0);
    if box_sizes.len() < 2 || box_sizes.iter().any(|&b| b < 2) {
        return Err(Error::InvalidParameter("DFA needs at least two box sizes >= 2".into()));
    }
    if x.len() < 4 * max_box {
        return Err(Error::SignalTooShort { needed: 4 * max_box, got: x.len() });
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let mut acc = 0.0;
    let profile: Vec<f64> = x
        .iter()
        .map(|v| {
            acc += v - mean;
            acc
        })
        .collect();
    let mut points = Vec::with_capacity(box_sizes.len());
    for &b in box_sizes {
        let f = fluctuation(&profile, b);
        if !(f > 0.0) {
            return Err(Error::DegenerateSignal("zero fluctuation".into()));
        }
        points.push(((b as f64).ln(), f.ln()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(cov / var)
}

/// Scaling exponent α over the default 16 log-spaced box sizes from 4 to N/4.
pub fn dfa(x: &[f64]) -> Result<f64> {
    let boxes = default_box_sizes(x.len(), DEFAULT_BOX_COUNT);
    if boxes.len() < 2 {
        return Err(Error::SignalTooShort { needed: 4 * (MIN_BOX + 1), got: x.len() });
    }
    dfa_with_boxes(x, &boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let normal = Normal::new(0.0, 1.0).unwrap();
        (0..n).map(|_| normal.sample(&mut rng)).collect()
    }

    #[test]
    fn box_sizes_are_log_spaced() {
        let b = default_box_sizes(1 << 14, 16);
        assert_eq!(b[0], 4);
        assert_eq!(*b.last().unwrap(), 4096);
        assert!(b.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn fluctuation_matches_direct_least_squares() {
        let y: Vec<f64> = noise(64, 2).iter().scan(0.0, |s, v| { *s += v; Some(*s) }).collect();
        let box_size = 16;
        let mut sse = 0.0;
        for chunk in y.chunks_exact(box_size) {
            let n = chunk.len() as f64;
            let xm = (n - 1.0) / 2.0;
            let ym = chunk.iter().sum::<f64>() / n;
            let sxy: f64 = chunk.iter().enumerate().map(|(i, v)| (i as f64 - xm) * (v - ym)).sum();
            let sxx: f64 = (0..chunk.len()).map(|i| (i as f64 - xm).powi(2)).sum();
            let slope = sxy / sxx;
            sse += chunk.iter().enumerate().map(|(i, v)| (v - ym - slope * (i as f64 - xm)).powi(2)).sum::<f64>();
        }
        let direct = (sse / 64.0).sqrt();
        assert!((fluctuation(&y, box_size) - direct).abs() < 1e-9 * direct);
    }

    #[test]
    fn white_noise_half() {
        let a = dfa(&noise(1 << 14, 7)).unwrap();
        assert!((a - 0.5).abs() < 0.1, "{a}");
    }

    #[test]
    fn random_walk_three_halves() {
        let walk: Vec<f64> = noise(1 << 14, 8).iter().scan(0.0, |s, v| { *s += v; Some(*s) }).collect();
        let a = dfa(&walk).unwrap();
        assert!((a - 1.5).abs() < 0.1, "{a}");
    }

    #[test]
    fn gain_invariant() {
        let x = noise(4096, 1);
        let scaled: Vec<f64> = x.iter().map(|v| v * 0.003).collect();
        assert!((dfa(&x).unwrap() - dfa(&scaled).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn short_and_zero_signals() {
        assert!(matches!(dfa(&[0.1; 10]), Err(Error::SignalTooShort { .. })));
        assert!(matches!(dfa(&[0.0; 1000]), Err(Error::DegenerateSignal(_))));
    }
}
