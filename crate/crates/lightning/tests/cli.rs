use std::path::Path;
use std::process::{Command, Output};

use lightning::approx_json::ApproxDoc;
use lightning::records::{read_records, write_records};
use lightning_core::bench::{sweep_prototype, SweepSetup};
use lightning_core::domain::{make_sector, PrototypeSpec};
use lightning_core::lightning::{build_lp, default_n2, sigma_opt, LpMode};
use lightning_core::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lightning"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn square(dir: &Path) -> String {
    let p = dir.join("square.json");
    std::fs::write(&p, "[[-1,-1],[1,-1],[1,1],[-1,1]]").unwrap();
    p.to_str().unwrap().to_owned()
}

fn strip_wall_ms(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head).to_owned())
        .collect()
}

#[test]
fn sweep_is_deterministic_apart_from_timing() {
    let args = [
        "sweep",
        "--kind",
        "pow",
        "--alpha",
        "0.5",
        "--beta",
        "0",
        "--sigma",
        "opt",
        "--n1",
        "9,16,25,36,49,64",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(strip_wall_ms(&a), strip_wall_ms(&b));
    let recs = read_records(a.as_bytes()).unwrap();
    assert_eq!(recs.len(), 6);
    assert!(recs.windows(2).all(|w| w[1].sup_err < w[0].sup_err));
}

#[test]
fn sweep_csv_matches_in_process_run() {
    let csv = stdout(&[
        "sweep", "--alpha", "0.5", "--beta", "0.5", "--n1", "9,16,25",
    ]);
    let from_cli = read_records(csv.as_bytes()).unwrap();
    let spec = PrototypeSpec::pow(0.5).unwrap();
    let opt = sigma_opt(0.5, 0.5).unwrap();
    let direct = sweep_prototype(&spec, 0.5, opt, &[9, 16, 25], SweepSetup::default()).unwrap();
    for (a, b) in from_cli.iter().zip(&direct) {
        assert_eq!(a.sup_err.to_bits(), b.sup_err.to_bits());
        assert_eq!(a.argmax, b.argmax);
        assert_eq!((a.n1, a.n2, a.n), (b.n1, b.n2, b.n));
    }
}

#[test]
fn records_round_trip_bit_exactly() {
    let spec = PrototypeSpec::pow_log(1.2).unwrap();
    let recs = sweep_prototype(&spec, 0.5, 2.1, &[9, 12, 20], SweepSetup::default()).unwrap();
    let mut buf = Vec::new();
    write_records(&mut buf, &recs).unwrap();
    let back = read_records(buf.as_slice()).unwrap();
    assert_eq!(back, recs);
}

#[test]
fn records_reject_foreign_header() {
    assert!(read_records("a,b\n1,2\n".as_bytes()).is_err());
}

#[test]
fn approx_emit_load_matches_in_process_to_the_bit() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.json");
    let f = file.to_str().unwrap();
    let points = ["0.3,0.1", "0.5,0", "0.05,-0.02", "-0.4,0.3"];
    let mut emit = vec![
        "approx", "--alpha", "0.5", "--beta", "0.5", "--n1", "25", "--emit", f,
    ];
    let mut load = vec!["approx", "--load", f];
    for p in &points {
        emit.extend(["--eval", p]);
        load.extend(["--eval", p]);
    }
    let built = stdout(&emit);
    let loaded = stdout(&load);
    let evals = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| l.starts_with("eval "))
            .map(str::to_owned)
            .collect()
    };
    assert_eq!(evals(&built), evals(&loaded));
    assert_eq!(evals(&loaded).len(), points.len());

    let spec = PrototypeSpec::pow(0.5).unwrap();
    let domain = make_sector(0.5, 1.0).unwrap();
    let sigma = sigma_opt(0.5, 0.5).unwrap();
    let direct = build_lp(
        &spec,
        &domain,
        sigma,
        25,
        default_n2(25),
        LpMode::LsPoly,
        1.0,
    )
    .unwrap();
    for line in evals(&loaded) {
        let f: Vec<f64> = line[5..]
            .split([' ', ','])
            .map(|t| t.parse().unwrap())
            .collect();
        let v = direct.eval(Complex64::new(f[0], f[1])).unwrap();
        assert_eq!(f[2].to_bits(), v.re.to_bits(), "{line}");
        assert_eq!(f[3].to_bits(), v.im.to_bits(), "{line}");
    }
}

#[test]
fn json_document_round_trips_every_mode() {
    for (mode, spec, beta) in [
        (LpMode::LsPoly, PrototypeSpec::pow(1.5).unwrap(), 0.0),
        (LpMode::LsFull, PrototypeSpec::pow_log(0.5).unwrap(), 1.0),
        (LpMode::AnalyticTail, PrototypeSpec::pow(0.5).unwrap(), 0.5),
    ] {
        let domain = make_sector(beta, 1.0).unwrap();
        let sigma = sigma_opt(spec.alpha, beta).unwrap();
        let a = build_lp(
            &spec,
            &domain,
            sigma,
            16,
            default_n2(16).max(spec.ell()),
            mode,
            1.0,
        )
        .unwrap();
        let doc = ApproxDoc::from_approximant(&a).unwrap();
        let text = doc.to_json().unwrap();
        let back = ApproxDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let b = back.to_approximant().unwrap();
        for z in [
            Complex64::new(0.2, 0.1),
            Complex64::new(0.9, 0.0),
            Complex64::new(-0.3, 0.2),
        ] {
            let (x, y) = (a.eval(z), b.eval(z));
            match (x, y) {
                (Ok(x), Ok(y)) => {
                    assert_eq!(x.re.to_bits(), y.re.to_bits());
                    assert_eq!(x.im.to_bits(), y.im.to_bits());
                }
                (x, y) => assert_eq!(x.is_err(), y.is_err()),
            }
        }
    }
}

#[test]
fn json_rejects_wrong_version_and_unknown_fields() {
    let spec = PrototypeSpec::pow(0.5).unwrap();
    let domain = make_sector(0.0, 1.0).unwrap();
    let a = build_lp(&spec, &domain, 2.0, 9, 4, LpMode::LsPoly, 1.0).unwrap();
    let mut doc = ApproxDoc::from_approximant(&a).unwrap();
    let text = doc.to_json().unwrap().replacen('{', "{\"extra\": 1,", 1);
    assert!(ApproxDoc::from_json(&text).is_err());
    doc.format = "lightning-lp/0".into();
    assert!(doc.to_approximant().is_err());
}

#[test]
fn trapz_table_matches_closed_forms() {
    let out = stdout(&["trapz", "--h", "1,0.5,0.25"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "integrand,h,engine,closed_form,error,bound"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let h: f64 = r[1].parse().unwrap();
        let exact = match r[0] {
            "i1" => (std::f64::consts::PI / h).tanh().recip() * std::f64::consts::PI,
            "i2" => {
                let c = (std::f64::consts::PI / h).tanh().recip();
                let p = std::f64::consts::PI;
                p * p / (2.0 * h) * (c * c - 1.0) + 0.5 * p * c
            }
            _ => continue,
        };
        let engine: f64 = r[2].parse().unwrap();
        let closed: f64 = r[3].parse().unwrap();
        let bound: f64 = r[5].parse().unwrap();
        let error: f64 = r[4].parse().unwrap();
        assert!((closed - exact).abs() <= 1e-13 * exact, "{r:?}");
        assert!((engine - closed).abs() <= 1e-9, "{r:?}");
        assert!(bound >= error.abs(), "{r:?}");
    }
}

#[test]
fn conformal_square_report() {
    let dir = tempfile::tempdir().unwrap();
    let poly = square(dir.path());
    let out_path = dir.path().join("map.csv");
    let o = out_path.to_str().unwrap();
    let printed = stdout(&["conformal", "--polygon", &poly, "--n1", "36", "--out", o]);
    assert!(printed.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("# arg_monotone true"));
    let corners: Vec<Complex64> = text
        .lines()
        .filter(|l| l.starts_with("corner,"))
        .map(|l| {
            let f: Vec<f64> = l.split(',').skip(4).map(|t| t.parse().unwrap()).collect();
            Complex64::new(f[0], f[1])
        })
        .collect();
    assert_eq!(corners.len(), 4);
    for k in 0..4 {
        let gap = (corners[(k + 1) % 4] / corners[k]).arg();
        assert!((gap - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }
}

#[test]
fn laplace_probe_reports_small_error() {
    let dir = tempfile::tempdir().unwrap();
    let poly = square(dir.path());
    let out = stdout(&[
        "laplace",
        "--polygon",
        &poly,
        "--n1",
        "16",
        "--probe",
        "0.2,-0.3",
    ]);
    let probe = out.lines().find(|l| l.starts_with("# probe")).unwrap();
    let err: f64 = probe.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(err < 1e-6, "{probe}");
    assert!(out.contains("\ns,error\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--alpha", "0.5", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["approx", "--alpha", "-1"]).status.code(), Some(2));
    assert_eq!(
        run(&["approx", "--alpha", "0.5", "--kind", "cube"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--alpha", "0.5", "--n1", "16,9"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bowtie.json");
    std::fs::write(&bad, "[[0,0],[1,1],[1,0],[0,1]]").unwrap();
    let b = bad.to_str().unwrap();
    assert_eq!(run(&["laplace", "--polygon", b]).status.code(), Some(2));
    // a fit report over a window holding fewer than three resolved errors
    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();
    let code = run(&["sweep", "--alpha", "0.5", "--n1", "9,10", "--report", r])
        .status
        .code();
    assert_eq!(code, Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("fit.json");
    let r = report.to_str().unwrap();
    stdout(&["sweep", "--alpha", "0.5", "--n1", "9..64", "--report", r]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let fit = &v[0];
    for key in ["slope", "predicted_slope", "regime", "points_used", "pass"] {
        assert!(!fit[key].is_null(), "missing {key}");
    }
    assert_eq!(fit["regime"], "OPT");
    assert_eq!(fit["pass"], true);
}
