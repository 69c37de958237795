use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_complex::Complex64;

use super::element::{monomial_product, AlgebraElement, BasisMonomial, PRUNE};
use super::qparam::QParam;
use crate::error::{Error, Result};

/// Finite combination of `x ⊗ y` with PBW legs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TensorElement {
    terms: BTreeMap<(BasisMonomial, BasisMonomial), Complex64>,
}

/// Finite combination of `x ⊗ y ⊗ z`, used for coassociativity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tensor3 {
    terms: BTreeMap<(BasisMonomial, BasisMonomial, BasisMonomial), Complex64>,
}

fn bump<K: Ord + Copy>(map: &mut BTreeMap<K, Complex64>, key: K, c: Complex64) {
    let e = map.entry(key).or_insert(Complex64::new(0.0, 0.0));
    *e += c;
    if e.norm() < PRUNE {
        map.remove(&key);
    }
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::simple(&AlgebraElement::one(), &AlgebraElement::one())
    }

    /// x ⊗ y
    pub fn simple(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut t = Self::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                t.add_term(*mx, *my, cx * cy);
            }
        }
        t
    }

    pub fn add_term(&mut self, x: BasisMonomial, y: BasisMonomial, c: Complex64) {
        bump(&mut self.terms, (x, y), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BasisMonomial, BasisMonomial), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm1(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut t = Self::zero();
        for ((x, y), v) in self.terms() {
            t.add_term(*x, *y, v * c);
        }
        t
    }

    /// Leg-wise product (x⊗y)(x'⊗y') = xx' ⊗ yy'.
    pub fn multiply(&self, q: &QParam, other: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((x1, y1), c1) in self.terms() {
            for ((x2, y2), c2) in other.terms() {
                let left = monomial_product(q, x1, x2);
                let right = monomial_product(q, y1, y2);
                for (l, cl) in &left {
                    for (r, cr) in &right {
                        out.add_term(*l, *r, c1 * c2 * cl * cr);
                    }
                }
            }
        }
        if out
            .terms
            .values()
            .all(|c| c.re.is_finite() && c.im.is_finite())
        {
            Ok(out)
        } else {
            Err(Error::CoefficientOverflow("tensor elements".into()))
        }
    }

    /// Applies `f` to the left leg and collapses to the right leg.
    pub fn contract_left(&self, f: impl Fn(&BasisMonomial) -> Complex64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|((x, y), c)| (*y, c * f(x))))
    }

    /// Applies `f` to the right leg and collapses to the left leg.
    pub fn contract_right(&self, f: impl Fn(&BasisMonomial) -> Complex64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|((x, y), c)| (*x, c * f(y))))
    }

    /// Applies maps to each leg, then multiplies the legs: m ∘ (f ⊗ g).
    pub fn multiply_legs(
        &self,
        q: &QParam,
        f: impl Fn(&BasisMonomial) -> Result<AlgebraElement>,
        g: impl Fn(&BasisMonomial) -> Result<AlgebraElement>,
    ) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for ((x, y), c) in self.terms() {
            let p = super::element::multiply(q, &f(x)?, &g(y)?)?;
            out = &out + &p.scale(*c);
        }
        Ok(out)
    }

    /// Maps each leg through a linear map into a tensor: (f ⊗ id) or (id ⊗ f)
    /// depending on `left`.
    pub fn expand_leg(
        &self,
        left: bool,
        f: impl Fn(&BasisMonomial) -> Result<TensorElement>,
    ) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for ((x, y), c) in self.terms() {
            if left {
                for ((u, v), d) in f(x)?.terms() {
                    bump(&mut out.terms, (*u, *v, *y), c * d);
                }
            } else {
                for ((u, v), d) in f(y)?.terms() {
                    bump(&mut out.terms, (*x, *u, *v), c * d);
                }
            }
        }
        Ok(out)
    }

    /// Applies a linear map to each leg.
    pub fn map_legs(
        &self,
        f: impl Fn(&BasisMonomial) -> Result<AlgebraElement>,
        g: impl Fn(&BasisMonomial) -> Result<AlgebraElement>,
    ) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((x, y), c) in self.terms() {
            let (fx, gy) = (f(x)?, g(y)?);
            for (u, cu) in fx.terms() {
                for (v, cv) in gy.terms() {
                    out.add_term(*u, *v, c * cu * cv);
                }
            }
        }
        Ok(out)
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((x, y), c) in rhs.terms() {
            out.add_term(*x, *y, *c);
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((x, y), c) in rhs.terms() {
            out.add_term(*x, *y, -c);
        }
        out
    }
}

impl Tensor3 {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// 1-norm of the difference.
    pub fn distance(&self, other: &Tensor3) -> f64 {
        let mut diff = self.terms.clone();
        for (k, c) in &other.terms {
            *diff.entry(*k).or_default() -= c;
        }
        diff.values().map(|c| c.norm()).sum()
    }
}
