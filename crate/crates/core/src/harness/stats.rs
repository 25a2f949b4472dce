use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

/// Wilson score interval at 95%.
pub fn wilson(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + Z * Z / n;
    let center = (p + Z * Z / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + Z * Z / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

pub fn poisson_pmf(k: u64, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    Poisson::new(lambda).expect("positive mean").pmf(k)
}

/// Total variation distance between an empirical histogram and
/// Poisson(`lambda`), counting the Poisson mass beyond the histogram.
pub fn tv_to_poisson(counts: &[usize], lambda: f64) -> f64 {
    let total: usize = counts.iter().sum();
    let mut inside = 0.0;
    let mut dist = 0.0;
    for (k, &c) in counts.iter().enumerate() {
        let q = poisson_pmf(k as u64, lambda);
        inside += q;
        dist += (c as f64 / total as f64 - q).abs();
    }
    0.5 * (dist + (1.0 - inside).max(0.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit against Poisson(`lambda`), pooling the upper tail
/// and merging cells until each expects at least 5 observations.
pub fn chi_square_poisson(counts: &[usize], lambda: f64) -> Option<ChiSquare> {
    let total: usize = counts.iter().sum();
    let n = total as f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    let mut mass = 0.0;
    for (k, &c) in counts.iter().enumerate() {
        let q = poisson_pmf(k as u64, lambda);
        mass += q;
        acc.0 += c as f64;
        acc.1 += q * n;
        if acc.1 >= 5.0 {
            cells.push(acc);
            acc = (0.0, 0.0);
        }
    }
    acc.1 += (1.0 - mass).max(0.0) * n;
    match cells.last_mut() {
        Some(last) if acc.1 < 5.0 => {
            last.0 += acc.0;
            last.1 += acc.1;
        }
        _ => cells.push(acc),
    }
    if cells.len() < 2 {
        return None;
    }
    let statistic = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = cells.len() - 1;
    let p_value = 1.0 - ChiSquared::new(df as f64).unwrap().cdf(statistic);
    Some(ChiSquare { statistic, df, p_value })
}

pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
