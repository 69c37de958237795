//! One function per subcommand. Each fills a report and records its checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use uq2::commutant::center_probe;
use uq2::dirac::{
    build_dirac, commutator_check, commutator_closed_form, counting_function, counting_slope,
    derivation_kernel_scan, equivariance_check, summability_report,
};
use uq2::hopf::{comultiply, hopf_suite, random_element, BasisMonomial, Generator};
use uq2::ncindex::{
    build_torus, chern_number, fredholm_index_svd, pairing_index, phase_operator, IndexConfig,
    ProjectionSpec, RampShape, RieffelProjection,
};
use uq2::rep::{build_generators, covariance_residual, relation_residuals};
use uq2::states::{
    expectation, expectation_closed_form, haar, haar_monomial, haar_numeric, watatani_probe, Which,
};
use uq2::{AlgebraElement, TruncGrid};

use crate::report::{finite, Report};
use crate::{CliError, RunConfig};

type Out = Result<(), CliError>;

fn arr(xs: impl IntoIterator<Item = f64>, key: &str) -> Result<Value, CliError> {
    xs.into_iter()
        .map(|x| finite(key, x))
        .collect::<Result<Vec<_>, _>>()
        .map(Value::Array)
}

fn torus_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[Complex64; 3]> {
    (0..n)
        .map(|_| {
            let mut z = [Complex64::new(1.0, 0.0); 3];
            z.iter_mut()
                .for_each(|zi| *zi = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)));
            z
        })
        .collect()
}

pub fn relations(cfg: &RunConfig, grid: TruncGrid, r: &mut Report) -> Out {
    let gens = build_generators(cfg.q()?, grid);
    let res = relation_residuals(&gens)?;
    let mut m = Map::new();
    for (name, e) in &res.entries {
        m.insert(name.to_string(), finite(name, e.upper)?);
    }
    r.put("relation_residuals", Value::Object(m));
    r.num("max_relation_residual", res.max_upper())?;
    r.check("relations", res.max_upper() <= cfg.tol);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spec = build_dirac(grid);
    let (mut cov, mut eqv) = (0.0f64, 0.0f64);
    for z in torus_points(&mut rng, 3) {
        cov = cov.max(covariance_residual(&gens, z)?);
        eqv = eqv.max(equivariance_check(&spec, z)?);
    }
    r.num("covariance_residual", cov)?;
    r.num("equivariance_residual", eqv)?;
    r.check("covariance", cov <= 1e-12);
    r.check("equivariance", eqv <= 1e-12);
    Ok(())
}

pub fn hopf_check(cfg: &RunConfig, samples: usize, max_degree: u32, r: &mut Report) -> Out {
    let rep = hopf_suite(&cfg.q()?, samples, max_degree, cfg.seed)?;
    r.put("samples", samples);
    r.put("max_degree", max_degree);
    for (name, v) in rep.worst.as_pairs() {
        r.num(name, v)?;
        r.check(name, v <= cfg.tol);
    }
    Ok(())
}

pub fn haar_cmd(
    cfg: &RunConfig,
    max_exp: u32,
    i_max: usize,
    samples: usize,
    r: &mut Report,
) -> Out {
    let q = cfg.q()?;
    let mut worst = 0.0f64;
    let mut tail = 0.0f64;
    let monomials = BasisMonomial::cube(max_exp);
    for m in &monomials {
        let est = haar_numeric(&q, &AlgebraElement::monomial(*m), i_max)?;
        worst = worst.max((est.value - haar_monomial(&q, m)).norm());
        tail = tail.max(est.tail_bound);
    }
    r.put("monomials", monomials.len());
    r.num("max_series_discrepancy", worst)?;
    r.num("max_tail_bound", tail)?;
    r.check("closed_form_vs_series", worst <= cfg.tol);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut inv = 0.0f64;
    let mut min_positive = f64::INFINITY;
    for _ in 0..samples {
        let x = random_element(&mut rng, 3, 4);
        let h = AlgebraElement::one().scale(haar(&q, &x));
        let d = comultiply(&q, &x)?;
        let weight = |m: &BasisMonomial| Complex64::new(haar_monomial(&q, m), 0.0);
        inv = inv
            .max((&d.contract_right(weight) - &h).norm1())
            .max((&d.contract_left(weight) - &h).norm1());
        if !x.is_zero() {
            let xx = uq2::hopf::multiply(&q, &uq2::hopf::star(&q, &x)?, &x)?;
            min_positive = min_positive.min(haar(&q, &xx).re);
        }
    }
    r.num("max_invariance_residual", inv)?;
    r.num("min_haar_of_square", min_positive)?;
    r.check("invariance", inv <= cfg.tol);
    r.check("positivity", min_positive > 0.0);
    Ok(())
}

pub fn expect(
    cfg: &RunConfig,
    which: Which,
    samples: usize,
    max_degree: u32,
    r: &mut Report,
) -> Out {
    let q = cfg.q()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut idem = 0.0f64;
    let mut kept = 0usize;
    for _ in 0..samples {
        let x = random_element(&mut rng, max_degree, 4);
        // both routes are compared inside `expectation`
        let e = expectation(&q, &x, which)?;
        idem = idem.max((&expectation_closed_form(&e, which) - &e).norm1());
        kept += e.len();
    }
    r.put("which", which.name());
    r.put("samples", samples);
    r.put("terms_kept", kept);
    r.num("max_idempotence_residual", idem)?;
    r.check("routes_agree", true);
    r.check("idempotent", idem <= cfg.tol);
    Ok(())
}

pub fn watatani(cfg: &RunConfig, which: Which, n: usize, r: &mut Report) -> Out {
    let p = watatani_probe(&cfg.q()?, n, which)?;
    r.put("which", which.name());
    r.put("n", n);
    r.num("rayleigh_value", p.rayleigh_value)?;
    r.num("closed_form_value", p.closed_form_value)?;
    r.num("bound_c", p.bound_c)?;
    r.num("implied_bound", p.implied_bound)?;
    let rel = (p.rayleigh_value - p.closed_form_value).abs()
        / p.closed_form_value.abs().max(f64::MIN_POSITIVE);
    r.num("relative_discrepancy", rel)?;
    r.check("rayleigh_matches_closed_form", rel <= 1e-9);
    Ok(())
}

pub struct SpectrumArgs {
    pub lambda_max: f64,
    pub exponent: f64,
    pub fit: (f64, f64),
    pub stabilization_tol: f64,
}

pub fn spectrum(a: &SpectrumArgs, r: &mut Report) -> Out {
    let side = (2.0 * a.lambda_max).ceil() as usize;
    let grid = TruncGrid::new(side, side, 0)?;
    let rep = summability_report(a.lambda_max, a.exponent, &grid)?;
    let slope = counting_slope(a.fit.0, a.fit.1, &grid)?;
    let n = counting_function(a.lambda_max, &grid)?;
    let ratio = n as f64 / a.lambda_max.powi(3);
    let volume = 8.0 / 3.0;
    r.put("count", n);
    r.num("slope", slope)?;
    r.num("volume_ratio", ratio)?;
    r.num("volume_ratio_error", ratio / volume - 1.0)?;
    r.num("last_decade_change", rep.last_decade_change)?;
    r.num("last_decade_spread", rep.last_decade_spread)?;
    let samples: Vec<Value> = rep
        .samples
        .iter()
        .map(|(n, s)| Ok(json!([n, finite("samples", *s)?])))
        .collect::<Result<_, CliError>>()?;
    r.put("samples", Value::Array(samples));
    r.check("slope", (2.9..=3.1).contains(&slope));
    r.check("volume", (ratio / volume - 1.0).abs() <= 0.1);
    r.check("stabilizes", rep.stabilizes(a.stabilization_tol));
    let mut controls = Map::new();
    for e in [2.5, 3.5] {
        let c = summability_report(a.lambda_max, e, &grid)?;
        controls.insert(
            format!("{e}"),
            json!({ "last_decade_change": finite("control", c.last_decade_change)?,
                    "last_decade_spread": finite("control", c.last_decade_spread)?,
                    "stabilizes": c.stabilizes(a.stabilization_tol) }),
        );
        r.check(
            &format!("control_{e}_fails"),
            !c.stabilizes(a.stabilization_tol),
        );
    }
    r.put("negative_controls", Value::Object(controls));
    Ok(())
}

pub fn commutators(cfg: &RunConfig, grid: TruncGrid, r: &mut Report) -> Out {
    let q = cfg.q()?;
    let gens = build_generators(q, grid);
    let spec = build_dirac(grid);
    let mut m = Map::new();
    let mut worst = 0.0f64;
    for g in Generator::ALL {
        let d = commutator_check(&g.element(), &gens, &spec)?;
        worst = worst.max(d);
        m.insert(g.name().to_string(), finite(g.name(), d)?);
    }
    r.put("closed_form_residuals", Value::Object(m));
    r.check("closed_forms", worst <= 1e-12);
    let ab = AlgebraElement::monomial(BasisMonomial::new(1, 1, 0, 0));
    let leibniz = commutator_check(&ab, &gens, &spec)?;
    r.num("leibniz_residual_ab", leibniz)?;
    r.check("leibniz", leibniz <= cfg.tol);

    let sup = commutator_closed_form(Generator::B, &q).sup_weight(grid);
    let predicted = (0..grid.n_cut())
        .map(|i| (2 * i + 1) as f64 * q.modulus().powi(i as i32))
        .fold(0.0, f64::max);
    r.num("sup_weight_b", sup)?;
    r.num("sup_weight_b_predicted", predicted)?;
    r.check("sup_weight_b", (sup - predicted).abs() <= 1e-12 * predicted);
    Ok(())
}

pub fn kernel_scan(
    cfg: &RunConfig,
    grid: TruncGrid,
    max_degree: u32,
    separation: f64,
    r: &mut Report,
) -> Out {
    let gens = build_generators(cfg.q()?, grid);
    let spec = build_dirac(grid);
    let scan = derivation_kernel_scan(max_degree, &gens, &spec)?;
    let kernel: Vec<String> = scan.kernel.iter().map(|m| m.to_string()).collect();
    let expected: Vec<String> = (0..=max_degree)
        .map(|j| BasisMonomial::new(0, j, j, 0).to_string())
        .collect();
    r.put("kernel", kernel.clone());
    r.put("scanned", scan.norms.len());
    if let Some((m, v)) = scan.min_outside() {
        r.put("closest_outside", m.to_string());
        r.num("min_norm_outside", v)?;
        r.check("separation", v > separation);
    }
    r.check("kernel_is_diagonal_b_family", kernel == expected);
    Ok(())
}

pub struct IndexArgs {
    pub z_cut: usize,
    pub cutoff: usize,
    pub quadrature: usize,
    pub ramp: RampShape,
    pub index_tol: f64,
    pub pairing: Option<(usize, usize)>,
}

pub fn index(cfg: &RunConfig, a: &IndexArgs, r: &mut Report) -> Out {
    let theta = cfg.q_theta.rem_euclid(1.0);
    let spec = ProjectionSpec::new(theta)
        .with_cutoff(a.cutoff)
        .with_quadrature(a.quadrature)
        .with_ramp(a.ramp);
    let proj = RieffelProjection::new(spec)?;
    let chern = chern_number(spec)?;
    r.num("theta", theta)?;
    r.put("complement", spec.complement());
    r.num("ramp_width", spec.ramp_width)?;
    r.num("trace", proj.trace())?;
    r.num("idempotency_defect", proj.idempotency_defect())?;
    r.num("selfadjoint_defect", proj.selfadjoint_defect())?;
    r.put("chern", chern.value);
    r.num("chern_distance", chern.distance)?;
    r.warn("origin_phase_is_one");
    if spec.complement() {
        r.warn("projection_complement");
    }
    let pair = build_torus(theta, a.z_cut)?;
    r.num("torus_commutation_residual", pair.commutation_residual()?)?;
    let p = proj.operator(&pair);
    let icfg = IndexConfig {
        tol: a.index_tol,
        lanczos: IndexConfig::default().lanczos,
    };
    let rep = fredholm_index_svd(&p, &phase_operator(a.z_cut)?, icfg)?;
    r.put("index", rep.index);
    r.put("kernel", rep.kernel);
    r.put("cokernel", rep.cokernel);
    r.put("determinate", rep.determinate);
    r.put(
        "right_singular",
        arr(rep.right_singular.iter().copied(), "right_singular")?,
    );
    r.put(
        "left_singular",
        arr(rep.left_singular.iter().copied(), "left_singular")?,
    );
    r.check("determinate", rep.determinate);
    r.check("index_matches_chern", rep.index == chern.value);
    r.check("index_nonzero", rep.index != 0);
    r.check("trace", (proj.trace() - theta).abs() <= 1e-3);
    if let Some((n_cut, z)) = a.pairing {
        let pr = pairing_index(spec, n_cut, z, icfg)?;
        r.put("pairing_index", pr.index);
        r.put("pairing_determinate", pr.determinate);
        r.check("pairing_matches", pr.determinate && pr.index == rep.index);
    }
    Ok(())
}

pub fn center(cfg: &RunConfig, grid: TruncGrid, m_cut: u32, r: &mut Report) -> Out {
    let p = center_probe(&cfg.q()?, grid, m_cut)?;
    r.put("M", m_cut);
    r.put("dimension", p.dimension);
    r.put("monomials", p.monomials.len());
    r.num("operator_gram_min", p.operator_gram_min)?;
    let shown = p
        .singular_values
        .iter()
        .copied()
        .take(3 * (2 * m_cut as usize + 1));
    r.put("smallest_singular_values", arr(shown, "singular_values")?);
    let rational = cfg.q()?.warning().is_some();
    // the two regimes: trivial center, or at least the D-power family
    let expected = if rational {
        p.dimension > 2 * m_cut as usize
    } else {
        p.dimension == 1
    };
    r.check("center_regime", expected);
    Ok(())
}
