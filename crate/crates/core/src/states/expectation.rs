use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::hopf::{comultiply, AlgebraElement, BasisMonomial, QParam};

/// The two circle characters: φ sends (a, b, D) to (1, 0, t) and ψ sends
/// them to (t, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    Phi,
    Psi,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::Phi => "phi",
            Which::Psi => "psi",
        }
    }
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Which::Phi),
            "psi" => Ok(Which::Psi),
            other => Err(Error::InvalidArgument(format!(
                "unknown character {other:?}, expected phi or psi"
            ))),
        }
    }
}

fn character_power(which: Which, m: &BasisMonomial) -> Option<i64> {
    if m.m != 0 || m.k != 0 {
        return None;
    }
    Some(match which {
        Which::Phi => m.l as i64,
        Which::Psi => m.n as i64,
    })
}

pub fn character(x: &AlgebraElement, which: Which) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (m, c) in x.terms() {
        if let Some(e) = character_power(which, m) {
            p.add_term(e, *c);
        }
    }
    p
}

/// ((h_T ∘ χ) ⊗ id) ∘ Δ, computed symbolically.
pub fn expectation_via_coproduct(
    q: &QParam,
    x: &AlgebraElement,
    which: Which,
) -> Result<AlgebraElement> {
    let delta = comultiply(q, x)?;
    Ok(delta.contract_left(|m| character(&AlgebraElement::monomial(*m), which).circle_integral()))
}

/// Keeps monomials with l = 0 (φ) or n + m - k = 0 (ψ).
pub fn expectation_closed_form(x: &AlgebraElement, which: Which) -> AlgebraElement {
    x.retain(|m| match which {
        Which::Phi => m.l == 0,
        Which::Psi => m.n + m.m as i32 - m.k as i32 == 0,
    })
}

/// Conditional expectation; both routes are computed and must agree.
pub fn expectation(q: &QParam, x: &AlgebraElement, which: Which) -> Result<AlgebraElement> {
    let fast = expectation_closed_form(x, which);
    let slow = expectation_via_coproduct(q, x, which)?;
    let discrepancy = (&fast - &slow).norm1();
    if discrepancy > 1e-10 * x.norm1().max(1.0) {
        return Err(Error::RouteMismatch {
            what: format!("E_{} of {x}", which.name()),
            discrepancy,
        });
    }
    Ok(fast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn q() -> QParam {
        QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap()
    }

    fn mono(n: i32, m: u32, k: u32, l: i32) -> AlgebraElement {
        AlgebraElement::monomial(BasisMonomial::new(n, m, k, l))
    }

    #[test]
    fn character_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(
            character(&mono(0, 0, 0, 3), Which::Phi),
            LaurentPoly::monomial(3, one)
        );
        assert_eq!(
            character(&mono(-2, 0, 0, 5), Which::Psi),
            LaurentPoly::monomial(-2, one)
        );
        assert!(character(&mono(0, 1, 0, 0), Which::Phi).is_zero());
        assert!(character(&mono(0, 1, 0, 0), Which::Psi).is_zero());
    }

    #[test]
    fn expectation_examples() {
        let q = q();
        assert!(expectation(&q, &mono(0, 0, 0, 1), Which::Phi)
            .unwrap()
            .is_zero());
        assert!(expectation(&q, &mono(0, 1, 0, 0), Which::Psi)
            .unwrap()
            .is_zero());
        let x = mono(2, 1, 3, 0);
        assert_eq!(expectation_via_coproduct(&q, &x, Which::Phi).unwrap(), x);
        let y = mono(0, 1, 1, 4);
        assert!((&expectation_via_coproduct(&q, &y, Which::Psi).unwrap() - &y).norm1() < 1e-12);
    }

    #[test]
    fn routes_agree_on_small_cube() {
        let q = q();
        for m in BasisMonomial::cube(2) {
            for which in [Which::Phi, Which::Psi] {
                expectation(&q, &AlgebraElement::monomial(m), which).unwrap();
            }
        }
    }
}
