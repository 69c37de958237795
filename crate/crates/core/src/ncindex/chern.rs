use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::projection::{ProjectionSpec, RieffelProjection};
use crate::error::{Error, Result};
use crate::hopf::cis_pi;

/// Largest distance from an integer accepted for a Chern number.
pub const INTEGRALITY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernReport {
    pub value: i64,
    pub raw: Complex64,
    pub distance: f64,
}

type Modes = BTreeMap<(i64, i64), Complex64>;

/// τ(ABC) for elements given by Fourier modes in u1^m u2^n order.
pub fn triple_trace(a: &Modes, b: &Modes, c: &Modes, theta: f64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (&(m1, n1), x) in a {
        for (&(m2, n2), y) in b {
            let Some(z) = c.get(&(-m1 - m2, -n1 - n2)) else {
                continue;
            };
            let m3 = -m1 - m2;
            s += x * y * z * cis_pi(-2.0 * theta * (n1 * m2 + (n1 + n2) * m3) as f64);
        }
    }
    s
}

fn derive(p: &Modes, w: impl Fn(i64, i64) -> f64) -> Modes {
    p.iter()
        .map(|(&(m, n), c)| ((m, n), c * Complex64::new(0.0, 2.0 * PI * w(m, n))))
        .collect()
}

/// (1/2πi) τ(p[δ1 p, δ2 p]) with δ1, δ2 the derivations along u1 and u2*.
pub fn chern_of_modes(p: &Modes, theta: f64) -> Complex64 {
    let d1 = derive(p, |m, _| m as f64);
    let d2 = derive(p, |_, n| -n as f64);
    let t = triple_trace(p, &d1, &d2, theta) - triple_trace(p, &d2, &d1, theta);
    t / Complex64::new(0.0, 2.0 * PI)
}

pub fn chern_number(spec: ProjectionSpec) -> Result<ChernReport> {
    let p = RieffelProjection::new(spec)?;
    round_chern(chern_of_modes(&p.modes, spec.theta))
}

pub fn round_chern(raw: Complex64) -> Result<ChernReport> {
    let value = raw.re.round();
    let distance = (raw - value).norm();
    if distance > INTEGRALITY_TOL {
        return Err(Error::NonIntegral {
            value: raw.re,
            distance,
        });
    }
    Ok(ChernReport {
        value: value as i64,
        raw,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncindex::projection::{twisted_product, ProjectionSpec};

    #[test]
    fn triple_trace_matches_products() {
        let theta = 0.3;
        let mut a = Modes::new();
        a.insert((1, 1), Complex64::new(0.5, 0.2));
        a.insert((-2, 0), Complex64::new(1.0, 0.0));
        let mut b = Modes::new();
        b.insert((2, -1), Complex64::new(0.0, 1.0));
        b.insert((0, 1), Complex64::new(0.3, 0.0));
        let mut c = Modes::new();
        c.insert((-3, 0), Complex64::new(0.7, -0.1));
        c.insert((0, -1), Complex64::new(0.2, 0.0));
        c.insert((0, 0), Complex64::new(1.0, 0.0));
        let abc = twisted_product(&twisted_product(&a, &b, theta), &c, theta);
        let direct = abc.get(&(0, 0)).copied().unwrap_or_default();
        assert!((direct - triple_trace(&a, &b, &c, theta)).norm() < 1e-14);
    }

    #[test]
    fn chern_is_one_on_both_sides_of_half() {
        for theta in [2f64.sqrt() - 1.0, (5f64.sqrt() - 1.0) / 2.0] {
            let c = chern_number(ProjectionSpec::new(theta).with_quadrature(2048)).unwrap();
            assert_eq!(c.value, 1);
            assert!(c.distance < 1e-6, "{theta}: {c:?}");
        }
    }

    #[test]
    fn trivial_projections() {
        let zero = Modes::new();
        assert_eq!(chern_of_modes(&zero, 0.3), Complex64::new(0.0, 0.0));
        let mut one = Modes::new();
        one.insert((0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(round_chern(chern_of_modes(&one, 0.3)).unwrap().value, 0);
    }

    #[test]
    fn linear_ramps_still_integral() {
        let c = chern_number(
            ProjectionSpec::new(2f64.sqrt() - 1.0).with_ramp(super::super::RampShape::Linear),
        )
        .unwrap();
        assert_eq!(c.value, 1);
    }

    #[test]
    fn non_integral_rejected() {
        assert!(matches!(
            round_chern(Complex64::new(0.4, 0.0)),
            Err(Error::NonIntegral { .. })
        ));
    }
}
