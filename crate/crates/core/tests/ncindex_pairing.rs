use uq2::ncindex::{
    build_torus, chern_number, fredholm_index_svd, pairing_index, phase_operator,
    rieffel_projection, IndexConfig, IndexReport, ProjectionSpec,
};
use uq2::Error;

const THETAS: [f64; 2] = [0.414_213_562_373_095_1, 0.618_033_988_749_894_9];

#[test]
fn index_is_stable_and_matches_chern() {
    for theta in THETAS {
        let spec = ProjectionSpec::new(theta);
        let chern = chern_number(spec).unwrap();
        for z in [32, 48, 64] {
            let pair = build_torus(theta, z).unwrap();
            let p = rieffel_projection(spec, &pair).unwrap();
            let r = fredholm_index_svd(&p, &phase_operator(z).unwrap(), IndexConfig::default())
                .unwrap();
            assert!(r.determinate, "theta {theta} z {z}: {r:?}");
            assert_eq!(r.index, chern.value, "theta {theta} z {z}");
        }
    }
}

#[test]
fn full_pairing_operator_agrees() {
    for theta in THETAS {
        let spec = ProjectionSpec::new(theta);
        let r = pairing_index(spec, 3, 32, IndexConfig::default()).unwrap();
        assert!(r.determinate, "{r:?}");
        assert_eq!(r.index, chern_number(spec).unwrap().value);
    }
}

#[test]
fn small_grid_is_rejected_not_guessed() {
    // at z_cut 16 the truncated golden-ratio projection is too far from idempotent
    let theta = THETAS[1];
    let pair = build_torus(theta, 16).unwrap();
    let p = rieffel_projection(ProjectionSpec::new(theta), &pair).unwrap();
    let r = fredholm_index_svd(&p, &phase_operator(16).unwrap(), IndexConfig::default());
    assert!(
        matches!(
            r,
            Err(Error::NotIdempotent(_))
                | Ok(IndexReport {
                    determinate: false,
                    ..
                })
        ),
        "{r:?}"
    );
}
