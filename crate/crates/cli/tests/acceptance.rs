//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 6 is known to fail at |q| = 0.5 (see README, "Known failures");
//! the binary exits nonzero if any other criterion fails or if 6 starts passing.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uq2::commutant::center_dimension;
use uq2::dirac::{
    build_dirac, counting_function, counting_slope, derivation_kernel_scan, equivariance_check,
    summability_report,
};
use uq2::hopf::{comultiply, hopf_suite, random_element, BasisMonomial};
use uq2::ncindex::{
    build_torus, chern_number, fredholm_index_svd, phase_operator, rieffel_projection, IndexConfig,
    ProjectionSpec, RieffelProjection,
};
use uq2::rep::{build_generators, covariance_residual, relation_residuals};
use uq2::states::{haar, haar_monomial, haar_numeric, watatani_probe, Which};
use uq2::{AlgebraElement, QParam, TruncGrid};

const SEED: u64 = 20_240_601;
const KNOWN_UNATTAINABLE: &[usize] = &[6];

fn q0() -> QParam {
    QParam::new(0.5, 2f64.sqrt() - 1.0).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (
        e <= limit,
        format!("{:.1}s/{}s", e.as_secs_f64(), limit.as_secs()),
    )
}

fn c1() -> Outcome {
    let t = Instant::now();
    let r = hopf_suite(&q0(), 200, 3, SEED).unwrap();
    let (fast, time) = within(t, Duration::from_secs(10));
    let worst = r.worst.max();
    Outcome {
        pass: worst <= 1e-10 && fast,
        detail: format!("worst residual {worst:.2e} (tol 1e-10), {time}"),
    }
}

fn c2() -> Outcome {
    let t = Instant::now();
    let grid = TruncGrid::new(40, 40, 2).unwrap();
    let gens = build_generators(q0(), grid);
    let rel = relation_residuals(&gens).unwrap().max_upper();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spec = build_dirac(grid);
    let (mut cov, mut eqv) = (0.0f64, 0.0f64);
    for _ in 0..3 {
        use rand::Rng;
        let z: [Complex64; 3] = std::array::from_fn(|_| {
            Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
        });
        cov = cov.max(covariance_residual(&gens, z).unwrap());
        eqv = eqv.max(equivariance_check(&spec, z).unwrap());
    }
    let (fast, time) = within(t, Duration::from_secs(30));
    Outcome {
        pass: rel <= 1e-10 && cov <= 1e-12 && eqv <= 1e-12 && fast,
        detail: format!("relations {rel:.2e} (1e-10), covariance {cov:.2e}, equivariance {eqv:.2e} (1e-12), {time}"),
    }
}

fn c3() -> Outcome {
    let q = q0();
    let mut series = 0.0f64;
    for m in BasisMonomial::cube(4) {
        let est = haar_numeric(&q, &AlgebraElement::monomial(m), 80).unwrap();
        series = series.max((est.value - haar_monomial(&q, &m)).norm());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut inv = 0.0f64;
    for _ in 0..50 {
        let x = random_element(&mut rng, 3, 4);
        let h = AlgebraElement::one().scale(haar(&q, &x));
        let d = comultiply(&q, &x).unwrap();
        let w = |m: &BasisMonomial| Complex64::new(haar_monomial(&q, m), 0.0);
        inv = inv
            .max((&d.contract_right(w) - &h).norm1())
            .max((&d.contract_left(w) - &h).norm1());
    }
    Outcome {
        pass: series <= 1e-10 && inv <= 1e-10,
        detail: format!("series {series:.2e}, invariance {inv:.2e} (tol 1e-10)"),
    }
}

/// (2/n) Σ_{j=1}^{n-1} (n-j)², the ψ probe being this sum at n + 1.
fn rayleigh_oracle(n: usize) -> f64 {
    2.0 / n as f64 * (1..n).map(|j| ((n - j) * (n - j)) as f64).sum::<f64>()
}

fn c4() -> Outcome {
    let q = q0();
    let mut worst_rel = 0.0f64;
    let mut exact = true;
    let mut last = 0.0;
    for n in 1..=50usize {
        let nf = n as f64;
        for (which, oracle, bound) in [
            (
                Which::Phi,
                rayleigh_oracle(n),
                3.0 * nf / (2.0 * nf * nf + 1.0),
            ),
            (
                Which::Psi,
                rayleigh_oracle(n + 1),
                3.0 * (nf + 1.0) / (2.0 * nf * nf + 4.0 * nf + 3.0),
            ),
        ] {
            let r = watatani_probe(&q, n, which).unwrap();
            worst_rel = worst_rel.max((r.rayleigh_value - oracle).abs() / oracle.max(1.0));
            exact &= r.bound_c == bound;
            if which == Which::Phi {
                last = r.bound_c;
            }
        }
    }
    Outcome {
        pass: worst_rel <= 1e-9 && exact && last < 0.03,
        detail: format!(
            "rayleigh rel {worst_rel:.2e} (1e-9), bounds exact {exact}, bound_c(50) {last:.5}"
        ),
    }
}

fn c5() -> Outcome {
    let t = Instant::now();
    let grid = TruncGrid::new(120, 120, 0).unwrap();
    let slope = counting_slope(20.0, 60.0, &grid).unwrap();
    let ratio = counting_function(60.0, &grid).unwrap() as f64 / 60f64.powi(3) / (8.0 / 3.0);
    let main = summability_report(60.0, 3.0, &grid).unwrap();
    let c25 = summability_report(60.0, 2.5, &grid).unwrap();
    let c35 = summability_report(60.0, 3.5, &grid).unwrap();
    let controls = !c25.stabilizes(0.05) && !c35.stabilizes(0.05);
    let (fast, time) = within(t, Duration::from_secs(60));
    Outcome {
        pass: (2.9..=3.1).contains(&slope) && (ratio - 1.0).abs() <= 0.1 && main.stabilizes(0.05) && controls && fast,
        detail: format!(
            "slope {slope:.4}, N/λ³ ÷ 8/3 = {ratio:.4}, spread {:.4}, controls fail {controls}, {time}",
            main.last_decade_spread
        ),
    }
}

fn c6() -> Outcome {
    let grid = TruncGrid::new(20, 20, 6).unwrap();
    let scan =
        derivation_kernel_scan(3, &build_generators(q0(), grid), &build_dirac(grid)).unwrap();
    let expected: Vec<BasisMonomial> = (0..=3).map(|j| BasisMonomial::new(0, j, j, 0)).collect();
    let (m, min) = scan.min_outside().unwrap();
    let exact = scan.kernel == expected;
    Outcome {
        pass: exact && min > 0.05,
        detail: format!(
            "kernel exact {exact}, smallest norm outside {min:.2e} at {m} (needs > 0.05)"
        ),
    }
}

fn c7() -> Outcome {
    let t = Instant::now();
    let mut values = Vec::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for theta in [2f64.sqrt() - 1.0, (5f64.sqrt() - 1.0) / 2.0] {
        let spec = ProjectionSpec::new(theta);
        let chern = chern_number(spec).unwrap();
        let trace = RieffelProjection::new(spec).unwrap().trace();
        let pair = build_torus(theta, 48).unwrap();
        let p = rieffel_projection(spec, &pair).unwrap();
        let r =
            fredholm_index_svd(&p, &phase_operator(48).unwrap(), IndexConfig::default()).unwrap();
        ok &= r.determinate && r.index == chern.value && chern.value.abs() == 1;
        ok &= chern.distance <= 1e-3 && (trace - theta).abs() <= 1e-3;
        values.push(chern.value);
        parts.push(format!(
            "θ={theta:.4}: chern {} (dist {:.1e}) index {} trace err {:.1e}",
            chern.value,
            chern.distance,
            r.index,
            (trace - theta).abs()
        ));
    }
    ok &= values.windows(2).all(|w| w[0] == w[1]);
    let (fast, time) = within(t, Duration::from_secs(60));
    Outcome {
        pass: ok && fast,
        detail: format!("{}, {time}", parts.join("; ")),
    }
}

fn c8() -> Outcome {
    let grid = TruncGrid::new(10, 10, 0).unwrap();
    let irr = center_dimension(&q0(), grid, 2).unwrap();
    let real = center_dimension(&QParam::new(0.5, 0.0).unwrap(), grid, 2).unwrap();
    Outcome {
        pass: irr == 1 && real >= 5,
        detail: format!("θ=√2−1: {irr}, θ=0: {real}"),
    }
}

const SUITE: &[&[&str]] = &[
    &["uq2", "relations"],
    &["uq2", "hopf-check"],
    &["uq2", "haar"],
    &["uq2", "expect", "--which", "phi"],
    &["uq2", "expect", "--which", "psi"],
    &["uq2", "watatani", "--which", "phi", "--n", "10"],
    &["uq2", "watatani", "--which", "psi", "--n", "10"],
    &["uq2", "spectrum"],
    &["uq2", "commutators"],
    &["uq2", "kernel-scan"],
    &["uq2", "index"],
    &["uq2", "center-probe"],
];

fn c9() -> Outcome {
    let run = || -> Vec<Vec<u8>> {
        SUITE
            .iter()
            .flat_map(|argv| {
                let (r, cfg) = uq2_cli::report_for(argv.iter().copied()).unwrap();
                let mut csv = cfg.clone();
                csv.output_format = uq2_cli::Format::Csv;
                [
                    uq2_cli::emit_report(&r, &cfg),
                    uq2_cli::emit_report(&r, &csv),
                ]
            })
            .collect()
    };
    let (a, b) = (run(), run());
    let same = a == b;
    let bytes: usize = a.iter().map(Vec::len).sum();
    Outcome {
        pass: same,
        detail: format!("{} reports, {bytes} bytes, identical {same}", a.len()),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("hopf axioms", c1),
        ("representation relations", c2),
        ("haar state", c3),
        ("watatani probes", c4),
        ("summability", c5),
        ("derivation kernel", c6),
        ("index pairing", c7),
        ("center dichotomy", c8),
        ("determinism", c9),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let note = if known { " [known unattainable]" } else { "" };
        println!("criterion {id} {tag} {name}: {}{note}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
