use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::hopf::PRUNE;

/// Laurent polynomial in the circle generator t.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c t^e
    pub fn monomial(e: i64, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: i64, c: Complex64) {
        let v = self.coeffs.entry(e).or_insert(Complex64::new(0.0, 0.0));
        *v += c;
        if v.norm() < PRUNE {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Complex64 {
        self.coeffs.get(&e).copied().unwrap_or_default()
    }

    /// Integral over the circle: the t^0 coefficient.
    pub fn circle_integral(&self) -> Complex64 {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}
