use crate::error::{Error, Result};
use crate::rep::TruncGrid;

fn check_ball(lambda: f64, grid: &TruncGrid) -> Result<()> {
    let limit = grid.n_cut().min(grid.z_cut()) as f64 / 2.0;
    if lambda.is_nan() || lambda < 0.0 || lambda > limit {
        return Err(Error::TruncationTooSmall(format!(
            "ball of radius {lambda} exceeds grid limit {limit}"
        )));
    }
    Ok(())
}

/// Largest integer k ≥ 0 with k² ≤ x, for x ≥ 0.
fn isqrt_floor(x: f64) -> i64 {
    let mut k = x.sqrt().floor() as i64;
    while ((k + 1) * (k + 1)) as f64 <= x {
        k += 1;
    }
    while k > 0 && (k * k) as f64 > x {
        k -= 1;
    }
    k
}

/// Number of spinor eigenvalues of |𝒟| at most λ, with multiplicity.
///
/// Shell s = i + |j| holds 2s + 1 pairs (i, j); each admits
/// 2⌊√(λ² − s²)⌋ + 1 values of k.
pub fn counting_function(lambda: f64, grid: &TruncGrid) -> Result<u64> {
    check_ball(lambda, grid)?;
    Ok(2 * count_points(lambda))
}

fn count_points(lambda: f64) -> u64 {
    let l2 = lambda * lambda;
    let mut total = 0u64;
    let mut s = 0i64;
    while ((s * s) as f64) <= l2 {
        let kmax = isqrt_floor(l2 - (s * s) as f64);
        total += (2 * s as u64 + 1) * (2 * kmax as u64 + 1);
        s += 1;
    }
    total
}

/// Least-squares slope of log N(λ) against log λ at integer λ in [lo, hi].
pub fn counting_slope(lo: f64, hi: f64, grid: &TruncGrid) -> Result<f64> {
    let mut pts = Vec::new();
    let mut l = lo.ceil();
    while l <= hi {
        pts.push((l.ln(), (counting_function(l, grid)? as f64).ln()));
        l += 1.0;
    }
    if pts.len() < 2 {
        return Err(Error::InvalidArgument(
            "slope window holds fewer than two points".into(),
        ));
    }
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport {
    pub lambda_max: f64,
    pub exponent: f64,
    /// Number of nonzero singular values of 𝒟 in the ball.
    pub count: usize,
    pub slope: f64,
    /// N(λ_max) / λ_max³.
    pub volume_ratio: f64,
    /// (N, S(N)) on a logarithmic grid of N.
    pub samples: Vec<(usize, f64)>,
    /// (S(N_end) − S(N_end/10)) / S(N_end).
    pub last_decade_change: f64,
    /// (max − min) / S(N_end) over the last decade.
    pub last_decade_spread: f64,
}

impl SummabilityReport {
    pub fn stabilizes(&self, tol: f64) -> bool {
        self.last_decade_spread < tol
    }
}

/// S(N) = Σ_{n≤N} μ_n^{−p} / ln N over the sorted nonzero singular values
/// μ_n of 𝒟 inside the ball of radius λ_max.
pub fn summability_report(
    lambda_max: f64,
    exponent: f64,
    grid: &TruncGrid,
) -> Result<SummabilityReport> {
    check_ball(lambda_max, grid)?;
    let lmax = lambda_max.floor() as i64;
    let l2 = lambda_max * lambda_max;
    let mut mu: Vec<f64> = Vec::with_capacity(2 * count_points(lambda_max) as usize);
    for i in 0..=lmax {
        for j in -lmax..=lmax {
            let s = i + j.abs();
            if ((s * s) as f64) > l2 {
                continue;
            }
            let kmax = isqrt_floor(l2 - (s * s) as f64);
            for k in -kmax..=kmax {
                let r2 = (s * s + k * k) as f64;
                if r2 > 0.0 {
                    let v = r2.sqrt();
                    mu.push(v);
                    mu.push(v);
                }
            }
        }
    }
    mu.sort_by(f64::total_cmp);
    let count = mu.len();
    if count < 100 {
        return Err(Error::InvalidArgument(format!(
            "lambda_max {lambda_max} gives too few eigenvalues"
        )));
    }
    let mut partial = Vec::with_capacity(count);
    let mut acc = 0.0;
    for v in &mu {
        acc += v.powf(-exponent);
        partial.push(acc);
    }
    let s_at = |n: usize| partial[n - 1] / (n as f64).ln();
    let mut samples = Vec::new();
    let steps = 200;
    let (lo, hi) = ((10f64).ln(), (count as f64).ln());
    let mut last = 0;
    for t in 0..=steps {
        let n = (lo + (hi - lo) * t as f64 / steps as f64).exp().round() as usize;
        let n = n.clamp(10, count);
        if n != last {
            samples.push((n, s_at(n)));
            last = n;
        }
    }
    let end = s_at(count);
    let start = count / 10;
    let decade: Vec<f64> = samples
        .iter()
        .filter(|(n, _)| *n >= start)
        .map(|s| s.1)
        .collect();
    let (mn, mx) = decade
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(*v), b.max(*v))
        });
    let slope_lo = (lambda_max / 3.0).max(2.0);
    Ok(SummabilityReport {
        lambda_max,
        exponent,
        count,
        slope: counting_slope(slope_lo, lambda_max, grid)?,
        volume_ratio: counting_function(lambda_max, grid)? as f64 / lambda_max.powi(3),
        samples,
        last_decade_change: (end - s_at(start)) / end,
        last_decade_spread: (mx - mn) / end,
    })
}
