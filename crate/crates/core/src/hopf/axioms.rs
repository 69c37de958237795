use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::element::{multiply, star, AlgebraElement};
use super::qparam::QParam;
use super::structure::{
    antipode_monomial, comultiply, comultiply_monomial, counit, counit_monomial, random_element,
    tensor_star,
};
use crate::error::Result;

/// 1-norm residuals of the Hopf ⋆-algebra axioms on one element, each divided
/// by max(1, size of the compared terms).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AxiomResiduals {
    pub coassociativity: f64,
    pub counit: f64,
    pub antipode: f64,
    pub star_coproduct: f64,
    pub star_product: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        self.as_pairs().iter().map(|p| p.1).fold(0.0, f64::max)
    }

    pub fn as_pairs(&self) -> [(&'static str, f64); 5] {
        [
            ("coassociativity", self.coassociativity),
            ("counit", self.counit),
            ("antipode", self.antipode),
            ("star_coproduct", self.star_coproduct),
            ("star_product", self.star_product),
        ]
    }

    fn worst(self, o: Self) -> Self {
        Self {
            coassociativity: self.coassociativity.max(o.coassociativity),
            counit: self.counit.max(o.counit),
            antipode: self.antipode.max(o.antipode),
            star_coproduct: self.star_coproduct.max(o.star_coproduct),
            star_product: self.star_product.max(o.star_product),
        }
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(1.0)
}

/// Residuals for `x`, with `y` as the partner in the product ⋆-check.
pub fn axiom_residuals(
    q: &QParam,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AxiomResiduals> {
    let dx = comultiply(q, x)?;
    let left = dx.expand_leg(true, |m| comultiply_monomial(q, m))?;
    let right = dx.expand_leg(false, |m| comultiply_monomial(q, m))?;
    let coassociativity = rel(left.distance(&right), dx.norm1());

    let ex = dx.contract_left(counit_monomial);
    let xe = dx.contract_right(counit_monomial);
    let counit_res = rel((&ex - x).norm1().max((&xe - x).norm1()), x.norm1());

    let unit = AlgebraElement::one().scale(counit(x));
    let id = |m: &_| Ok(AlgebraElement::monomial(*m));
    let s_left = dx.multiply_legs(q, |m| antipode_monomial(q, m), id)?;
    let s_right = dx.multiply_legs(q, id, |m| antipode_monomial(q, m))?;
    let antipode = rel(
        (&s_left - &unit).norm1().max((&s_right - &unit).norm1()),
        dx.norm1(),
    );

    let xs = star(q, x)?;
    let star_coproduct = rel(
        (&comultiply(q, &xs)? - &tensor_star(q, &dx)?).norm1(),
        dx.norm1(),
    );

    let xy = multiply(q, x, y)?;
    let ys_xs = multiply(q, &star(q, y)?, &xs)?;
    let star_product = rel((&star(q, &xy)? - &ys_xs).norm1(), xy.norm1());

    Ok(AxiomResiduals {
        coassociativity,
        counit: counit_res,
        antipode,
        star_coproduct,
        star_product,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfSuiteReport {
    pub samples: usize,
    pub max_degree: u32,
    pub worst: AxiomResiduals,
}

/// Axiom residuals over `samples` seeded random elements of degree ≤ `max_degree`.
pub fn hopf_suite(
    q: &QParam,
    samples: usize,
    max_degree: u32,
    seed: u64,
) -> Result<HopfSuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = AxiomResiduals::default();
    for _ in 0..samples {
        let x = random_element(&mut rng, max_degree, 3);
        let y = random_element(&mut rng, max_degree, 3);
        worst = worst.worst(axiom_residuals(q, &x, &y)?);
    }
    Ok(HopfSuiteReport {
        samples,
        max_degree,
        worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Generator;
    use num_complex::Complex64;

    #[test]
    fn generators_satisfy_axioms() {
        let q = QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap();
        for g in Generator::ALL {
            let r = axiom_residuals(&q, &g.element(), &AlgebraElement::b()).unwrap();
            assert!(r.max() < 1e-12, "{}: {r:?}", g.name());
        }
    }

    #[test]
    fn broken_antipode_is_detected() {
        // a scalar multiple of the unit is fine; a non-group-like perturbation of Δ is not
        let q = QParam::new(0.5, 0.3).unwrap();
        let x = &AlgebraElement::a() + &AlgebraElement::b().scale(Complex64::new(2.0, 0.0));
        let dx = comultiply(&q, &x).unwrap();
        let s = dx
            .multiply_legs(
                &q,
                |m| Ok(AlgebraElement::monomial(*m)),
                |m| Ok(AlgebraElement::monomial(*m)),
            )
            .unwrap();
        assert!((&s - &AlgebraElement::one().scale(counit(&x))).norm1() > 0.1);
    }

    #[test]
    fn small_suite() {
        let q = QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap();
        let r = hopf_suite(&q, 20, 3, 7).unwrap();
        assert!(r.worst.max() < 1e-10, "{r:?}");
    }
}
