use serde_json::Value;
use uq2_cli::{emit_report, report_for, run, Format};

fn json(argv: &[&str]) -> Value {
    let (r, cfg) = report_for(argv.iter().copied()).unwrap();
    serde_json::from_slice(&emit_report(&r, &cfg)).unwrap()
}

#[test]
fn watatani_phi_bound() {
    let v = json(&["uq2", "watatani", "--which", "phi", "--n", "10"]);
    assert_eq!(v["results"]["bound_c"].as_f64().unwrap(), 30.0 / 201.0);
    assert_eq!(v["results"]["pass"], Value::Bool(true));
    assert_eq!(v["subcommand"], "watatani");
}

#[test]
fn center_probe_real_q() {
    let v = json(&["uq2", "center-probe", "--q-theta", "0", "--M", "2"]);
    assert!(v["results"]["dimension"].as_u64().unwrap() >= 5);
    assert!(v["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w == "theta_rational"));
}

#[test]
fn relations_with_defaults_pass() {
    assert_eq!(run(["uq2", "relations", "--output", "/dev/null"]), 0);
    let v = json(&["uq2", "relations"]);
    for (_, x) in v["results"]["relation_residuals"].as_object().unwrap() {
        assert!(x.as_f64().unwrap() <= 1e-10);
    }
    assert_eq!(v["config"]["n_cut"], 40);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["uq2", "no-such-command"]), 1);
    assert_eq!(run(["uq2", "watatani", "--n", "ten"]), 1);
    assert_eq!(
        run(["uq2", "--q-modulus", "1.5", "hopf-check", "--samples", "1"]),
        1
    );
    // a failing check: the scan separation at |q| = 0.5
    assert_eq!(
        run([
            "uq2",
            "kernel-scan",
            "--max-degree",
            "2",
            "--output",
            "/dev/null"
        ]),
        2
    );
}

#[test]
fn reports_are_byte_identical() {
    let argv = ["uq2", "hopf-check", "--samples", "20", "--seed", "5"];
    let (a, ca) = report_for(argv).unwrap();
    let (b, cb) = report_for(argv).unwrap();
    assert_eq!(emit_report(&a, &ca), emit_report(&b, &cb));
    let (c, cc) = report_for(["uq2", "hopf-check", "--samples", "20", "--seed", "6"]).unwrap();
    assert_eq!(c.results.len(), a.results.len());
    assert!(cc.seed != ca.seed);
}

#[test]
fn timings_only_on_request() {
    let v = json(&["uq2", "expect", "--samples", "3"]);
    assert!(v["timings"].as_object().unwrap().is_empty());
    let v = json(&["uq2", "expect", "--samples", "3", "--timings"]);
    assert!(v["timings"]["total_seconds"].as_f64().is_some());
}

#[test]
fn csv_output() {
    let (r, mut cfg) = report_for(["uq2", "watatani", "--n", "3"]).unwrap();
    cfg.output_format = Format::Csv;
    let s = String::from_utf8(emit_report(&r, &cfg)).unwrap();
    let mut rows = csv::Reader::from_reader(s.as_bytes());
    let recs: Vec<csv::StringRecord> = rows.records().map(|r| r.unwrap()).collect();
    let bound = recs.iter().find(|r| &r[0] == "bound_c").unwrap();
    assert_eq!(bound[1].parse::<f64>().unwrap(), 9.0 / 19.0);
}

#[test]
fn every_float_has_seventeen_digits() {
    let (r, cfg) = report_for(["uq2", "watatani", "--n", "4"]).unwrap();
    let s = String::from_utf8(emit_report(&r, &cfg)).unwrap();
    let line = s.lines().find(|l| l.contains("\"bound_c\"")).unwrap();
    let mantissa = line.split(": ").nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(
        mantissa.chars().filter(char::is_ascii_digit).count(),
        17,
        "{line}"
    );
}

#[test]
fn index_subcommand_small() {
    let v = json(&["uq2", "index", "--z-cut", "32", "--pairing-n-cut", "0"]);
    assert_eq!(v["results"]["index"], 1);
    assert_eq!(v["results"]["chern"], 1);
    assert!(v["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w == "origin_phase_is_one"));
}
