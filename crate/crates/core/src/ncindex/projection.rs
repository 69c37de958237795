use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::torus::TorusPair;
use crate::error::{Error, Result};
use crate::hopf::cis_pi;
use crate::rep::SparseOperator;

/// Shape of the ramps of f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RampShape {
    Linear,
    /// sin² of a C^∞ step; Fourier data decay faster than any power.
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionSpec {
    pub theta: f64,
    pub ramp_width: f64,
    pub quadrature_points: usize,
    pub fourier_cutoff: usize,
    pub ramp: RampShape,
}

impl ProjectionSpec {
    /// Smooth ramps of width θ'/2 on the reduced parameter θ' = min(θ, 1−θ).
    pub fn new(theta: f64) -> Self {
        let t = theta.rem_euclid(1.0);
        let reduced = t.min(1.0 - t);
        Self {
            theta: t,
            ramp_width: reduced / 2.0,
            quadrature_points: 4096,
            fourier_cutoff: 256,
            ramp: RampShape::Smooth,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.fourier_cutoff = cutoff;
        self
    }

    pub fn with_quadrature(mut self, points: usize) -> Self {
        self.quadrature_points = points;
        self
    }

    pub fn with_ramp(mut self, ramp: RampShape) -> Self {
        self.ramp = ramp;
        self
    }

    /// True when θ > 1/2 and the projection is built as 1 − P_{1−θ}.
    pub fn complement(&self) -> bool {
        self.theta > 0.5
    }

    pub fn reduced_theta(&self) -> f64 {
        if self.complement() {
            1.0 - self.theta
        } else {
            self.theta
        }
    }

    fn validate(&self) -> Result<()> {
        let t = self.reduced_theta();
        let eps = self.ramp_width;
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::InvalidProjection(format!(
                "theta {} outside (0,1)",
                self.theta
            )));
        }
        if !(eps > 0.0 && eps <= t && t + eps <= 1.0) {
            return Err(Error::InvalidProjection(format!(
                "ramp width {eps} must lie in (0, {t}]"
            )));
        }
        if self.fourier_cutoff == 0 || 2 * self.fourier_cutoff >= self.quadrature_points {
            return Err(Error::InvalidProjection(format!(
                "cutoff {} needs more than {} quadrature points",
                self.fourier_cutoff,
                2 * self.fourier_cutoff
            )));
        }
        Ok(())
    }

    fn step(&self, t: f64) -> f64 {
        match self.ramp {
            RampShape::Linear => t,
            RampShape::Smooth => {
                let s = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
                let (a, b) = (s(t), s(1.0 - t));
                let r = a / (a + b);
                (std::f64::consts::FRAC_PI_2 * r).sin().powi(2)
            }
        }
    }

    /// f and g at x ∈ [0,1), for the reduced parameter.
    pub fn bumps(&self, x: f64) -> (f64, f64) {
        let (t, eps) = (self.reduced_theta(), self.ramp_width);
        let x = x.rem_euclid(1.0);
        let f = if x < eps {
            self.step(x / eps)
        } else if x <= t {
            1.0
        } else if x < t + eps {
            1.0 - self.step((x - t) / eps)
        } else {
            0.0
        };
        let g = if x > t && x < t + eps {
            (f * (1.0 - f)).max(0.0).sqrt()
        } else {
            0.0
        };
        (f, g)
    }
}

/// Fourier data of the Powers–Rieffel projection.
#[derive(Debug, Clone)]
pub struct RieffelProjection {
    pub spec: ProjectionSpec,
    /// Coefficient of u1^m u2^n, keyed by (m, n) with |n| ≤ 1.
    pub modes: BTreeMap<(i64, i64), Complex64>,
}

fn fourier(samples: &[f64], cutoff: usize) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf: Vec<Complex64> = samples.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let k = cutoff as i64;
    (-k..=k)
        .map(|m| buf[m.rem_euclid(n as i64) as usize] / n as f64)
        .collect()
}

impl RieffelProjection {
    pub fn new(spec: ProjectionSpec) -> Result<Self> {
        spec.validate()?;
        let n = spec.quadrature_points;
        let (fs, gs): (Vec<f64>, Vec<f64>) =
            (0..n).map(|t| spec.bumps(t as f64 / n as f64)).unzip();
        let k = spec.fourier_cutoff as i64;
        let (fh, gh) = (
            fourier(&fs, spec.fourier_cutoff),
            fourier(&gs, spec.fourier_cutoff),
        );
        let th = spec.reduced_theta();
        let mut modes = BTreeMap::new();
        for m in -k..=k {
            let i = (m + k) as usize;
            modes.insert((m, 0), fh[i]);
            modes.insert((m, 1), gh[i]);
            // u2* g(u1) = Σ ĝ(m) e^{2πimθ} u1^m u2*
            modes.insert((m, -1), gh[i] * cis_pi(2.0 * th * m as f64));
        }
        if spec.complement() {
            // 1 − P built on (u1, u2*)
            let mut flipped: BTreeMap<(i64, i64), Complex64> =
                modes.into_iter().map(|((m, n), c)| ((m, -n), -c)).collect();
            *flipped.entry((0, 0)).or_default() += 1.0;
            modes = flipped;
        }
        Ok(Self { spec, modes })
    }

    /// τ(p): the (0,0) mode.
    pub fn trace(&self) -> f64 {
        self.modes.get(&(0, 0)).copied().unwrap_or_default().re
    }

    /// p as an operator: (u1^m u2^n) e_{j,k} = e^{−2πiθjn} e_{j+m,k+n}.
    pub fn operator(&self, pair: &TorusPair) -> SparseOperator {
        modes_operator(&self.modes, pair)
    }

    /// ℓ¹ norm of the Fourier coefficients of p² − p.
    pub fn idempotency_defect(&self) -> f64 {
        let sq = twisted_product(&self.modes, &self.modes, self.spec.theta);
        let mut diff = sq;
        for (k, c) in &self.modes {
            *diff.entry(*k).or_default() -= c;
        }
        diff.values().map(|c| c.norm()).sum()
    }

    /// ℓ¹ norm of the Fourier coefficients of p* − p.
    pub fn selfadjoint_defect(&self) -> f64 {
        // (c u1^m u2^n)* = conj(c) e^{−2πiθmn} u1^{−m} u2^{−n}
        let th = self.spec.theta;
        self.modes
            .iter()
            .map(|(&(m, n), c)| {
                let adj = self
                    .modes
                    .get(&(-m, -n))
                    .copied()
                    .unwrap_or_default()
                    .conj()
                    * cis_pi(-2.0 * th * (m * n) as f64);
                (adj - c).norm()
            })
            .sum()
    }
}

/// p = f(u1) + g(u1)u2 + u2*g(u1) as an operator on the grid of `pair`.
pub fn rieffel_projection(spec: ProjectionSpec, pair: &TorusPair) -> Result<SparseOperator> {
    if (spec.theta - pair.theta.rem_euclid(1.0)).abs() > 1e-15 {
        return Err(Error::InvalidProjection(format!(
            "spec theta {} differs from torus theta {}",
            spec.theta, pair.theta
        )));
    }
    Ok(RieffelProjection::new(spec)?.operator(pair))
}

/// Operator on the grid of `pair` from Fourier modes in u1^m u2^n order.
pub fn modes_operator(modes: &BTreeMap<(i64, i64), Complex64>, pair: &TorusPair) -> SparseOperator {
    let grid = pair.grid();
    let z = grid.z_cut() as i64;
    let mut t = Vec::new();
    for c in 0..grid.dim() {
        let (_, j, k) = grid.site(c);
        for (&(m, n), v) in modes {
            if (j + m).abs() > z || (k + n).abs() > z || v.norm() < 1e-16 {
                continue;
            }
            let r = grid.index((0, j + m, k + n)).unwrap();
            t.push((r, c, v * cis_pi(-2.0 * pair.theta * (j * n) as f64)));
        }
    }
    SparseOperator::from_triplets(grid, t)
}

/// Product in the torus algebra: u2^n u1^m = e^{−2πiθnm} u1^m u2^n.
pub fn twisted_product(
    a: &BTreeMap<(i64, i64), Complex64>,
    b: &BTreeMap<(i64, i64), Complex64>,
    theta: f64,
) -> BTreeMap<(i64, i64), Complex64> {
    let mut out: BTreeMap<(i64, i64), Complex64> = BTreeMap::new();
    for (&(m1, n1), c1) in a {
        for (&(m2, n2), c2) in b {
            *out.entry((m1 + m2, n1 + n2)).or_default() +=
                c1 * c2 * cis_pi(-2.0 * theta * (n1 * m2) as f64);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_identities_hold_pointwise() {
        for ramp in [RampShape::Linear, RampShape::Smooth] {
            let spec = ProjectionSpec::new(2f64.sqrt() - 1.0).with_ramp(ramp);
            let th = spec.reduced_theta();
            for t in 0..1000 {
                let x = t as f64 / 1000.0;
                let (f, g) = spec.bumps(x);
                let (_, gp) = spec.bumps(x + th);
                let (fm, gm) = spec.bumps(x - th);
                assert!((f * f + g * g + gp * gp - f).abs() < 1e-12);
                assert!((g * (f + fm) - g).abs() < 1e-12);
                assert!((g * gm).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trace_is_theta() {
        for theta in [2f64.sqrt() - 1.0, (5f64.sqrt() - 1.0) / 2.0] {
            let p = RieffelProjection::new(ProjectionSpec::new(theta)).unwrap();
            assert!((p.trace() - theta).abs() < 1e-9, "{theta}");
            assert_eq!(p.spec.complement(), theta > 0.5);
        }
    }

    #[test]
    fn defects_decrease_with_cutoff() {
        let spec = ProjectionSpec::new(2f64.sqrt() - 1.0);
        let d: Vec<f64> = [64, 128, 256]
            .iter()
            .map(|&k| {
                RieffelProjection::new(spec.with_cutoff(k))
                    .unwrap()
                    .idempotency_defect()
            })
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        assert!(d[2] < 1e-6);
        let p = RieffelProjection::new(spec).unwrap();
        assert!(p.selfadjoint_defect() < 1e-12);
    }

    #[test]
    fn invalid_specs() {
        let mut s = ProjectionSpec::new(0.3);
        s.ramp_width = 0.4;
        assert!(RieffelProjection::new(s).is_err());
        let s = ProjectionSpec::new(0.3).with_cutoff(3000);
        assert!(RieffelProjection::new(s).is_err());
    }

    #[test]
    fn operator_matches_formula() {
        let theta = 2f64.sqrt() - 1.0;
        let pair = super::super::torus::build_torus(theta, 12).unwrap();
        let p = RieffelProjection::new(ProjectionSpec::new(theta).with_cutoff(32)).unwrap();
        let op = p.operator(&pair);
        // p = f(u1) + g(u1) u2 + u2* g(u1) assembled from the unitaries
        let f: BTreeMap<_, _> = p
            .modes
            .iter()
            .filter(|(k, _)| k.1 == 0)
            .map(|(k, v)| (*k, *v))
            .collect();
        let g: BTreeMap<_, _> = p
            .modes
            .iter()
            .filter(|(k, _)| k.1 == 1)
            .map(|(k, v)| ((k.0, 0), *v))
            .collect();
        let fu = modes_operator(&f, &pair);
        let gu = modes_operator(&g, &pair);
        let direct = fu
            .add(&gu.matmul(&pair.u2).unwrap())
            .unwrap()
            .add(&pair.u2.adjoint().matmul(&gu).unwrap())
            .unwrap();
        let inner = |s: (i64, i64, i64)| s.1.abs() <= 12 - 1 - 32 / 2 && s.2.abs() <= 10;
        let grid = pair.grid();
        let worst = op
            .sub(&direct)
            .unwrap()
            .entries()
            .filter(|(r, c, _)| inner(grid.site(*r)) && inner(grid.site(*c)))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-12, "{worst}");
    }
}
