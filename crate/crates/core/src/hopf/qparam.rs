use num_complex::Complex64;

use crate::error::{Error, Result};

/// Denominators up to this size make theta count as rational.
pub const RATIONAL_DENOMINATOR_LIMIT: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QWarning {
    /// theta is within 1e-12 of p/q with a small denominator.
    RationalTheta { num: i64, den: u64 },
}

impl QWarning {
    pub fn code(&self) -> &'static str {
        match self {
            QWarning::RationalTheta { .. } => "theta_rational",
        }
    }
}

impl std::fmt::Display for QWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QWarning::RationalTheta { num, den } => {
                write!(
                    f,
                    "theta is rational ({num}/{den}); the irrational regime does not apply"
                )
            }
        }
    }
}

/// The deformation parameter `q = modulus * exp(i pi theta)`.
///
/// Phases are always computed from `theta`, never by taking the argument of
/// a complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    modulus: f64,
    theta: f64,
    warning: Option<QWarning>,
}

/// `exp(i pi x)` with `x` reduced mod 2 first.
pub fn cis_pi(x: f64) -> Complex64 {
    let r = x.rem_euclid(2.0);
    let (s, c) = (std::f64::consts::PI * r).sin_cos();
    Complex64::new(c, s)
}

impl QParam {
    pub fn new(modulus: f64, theta: f64) -> Result<Self> {
        if !(modulus > 0.0 && modulus < 1.0) {
            return Err(Error::ModulusOutOfRange(modulus));
        }
        if !theta.is_finite() {
            return Err(Error::NonFiniteTheta(theta));
        }
        let theta = theta.rem_euclid(2.0);
        let warning = small_fraction(theta).map(|(num, den)| QWarning::RationalTheta { num, den });
        Ok(Self {
            modulus,
            theta,
            warning,
        })
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    /// arg(q)/pi, in [0,2).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn warning(&self) -> Option<QWarning> {
        self.warning
    }

    pub fn q(&self) -> Complex64 {
        self.q_pow(1)
    }

    /// |q|^e
    pub fn abs_pow(&self, e: i64) -> f64 {
        self.modulus.powi(e as i32)
    }

    /// q^e
    pub fn q_pow(&self, e: i64) -> Complex64 {
        cis_pi(self.theta * e as f64) * self.abs_pow(e)
    }

    /// conj(q)^e
    pub fn qbar_pow(&self, e: i64) -> Complex64 {
        cis_pi(-self.theta * e as f64) * self.abs_pow(e)
    }

    /// c^e where c = q^2 |q|^-2 = exp(2 pi i theta).
    pub fn c_pow(&self, e: i64) -> Complex64 {
        cis_pi(2.0 * self.theta * e as f64)
    }
}

/// Finds p/q with q <= limit within 1e-12 of x, via continued fractions.
fn small_fraction(x: f64) -> Option<(i64, u64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h2 = ai * h1 + h0;
        let k2 = ai as u64 * k1 + k0;
        if k2 > RATIONAL_DENOMINATOR_LIMIT {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() < 1e-12 {
            return Some((h2, k2));
        }
        let frac = r - a;
        if frac < 1e-15 {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_q_is_flagged_rational() {
        let q = QParam::new(0.5, 0.0).unwrap();
        assert!(matches!(
            q.warning(),
            Some(QWarning::RationalTheta { num: 0, den: 1 })
        ));
        assert!((q.q() - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn irrational_theta_has_no_warning() {
        let q = QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap();
        assert_eq!(q.warning(), None);
    }

    #[test]
    fn modulus_out_of_range() {
        assert!(matches!(
            QParam::new(1.5, 0.3),
            Err(Error::ModulusOutOfRange(_))
        ));
        assert!(QParam::new(0.0, 0.3).is_err());
        assert!(QParam::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn theta_reduced_mod_two() {
        let q = QParam::new(0.5, 2.25).unwrap();
        assert!((q.theta() - 0.25).abs() < 1e-15);
        let q = QParam::new(0.5, -0.5).unwrap();
        assert!((q.theta() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn small_denominators_detected() {
        assert_eq!(small_fraction(3.0 / 7.0), Some((3, 7)));
        assert_eq!(small_fraction(0.5), Some((1, 2)));
        assert_eq!(small_fraction((5f64.sqrt() - 1.0) / 2.0), None);
    }

    #[test]
    fn powers_match_direct_products() {
        let q = QParam::new(0.7, 0.3).unwrap();
        let direct = q.q() * q.q() * q.q();
        assert!((q.q_pow(3) - direct).norm() < 1e-14);
        assert!((q.q_pow(-2) * q.q_pow(2) - 1.0).norm() < 1e-14);
        assert!((q.qbar_pow(3) - direct.conj()).norm() < 1e-14);
        let c = q.q() * q.q() / (0.7 * 0.7);
        assert!((q.c_pow(1) - c).norm() < 1e-14);
    }
}
