use cdkernel_cli::run;

fn cdk(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cdk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("cdk-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn equilibrium_gue_endpoints() {
    let (code, out, _) = cdk(&["equilibrium", "--preset", "gue"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["a"].as_f64().unwrap() + std::f64::consts::SQRT_2).abs() < 1e-12);
    assert!((v["b"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
}

#[test]
fn density_csv_layout_and_determinism() {
    let p = tmp("d.csv");
    let q = tmp("d.svg");
    let args = ["density", "--preset", "gue", "--n", "50", "--grid", "-1.2:1.2:0.01", "--out", &p, "--plot", &q];
    assert_eq!(cdk(&args).0, 0);
    let first = std::fs::read(&p).unwrap();
    let svg = std::fs::read(&q).unwrap();
    assert_eq!(cdk(&args).0, 0);
    assert_eq!(first, std::fs::read(&p).unwrap());
    assert_eq!(svg, std::fs::read(&q).unwrap());
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with('#') && meta.contains("config_sha256=") && meta.contains("quad_order=256"));
    assert_eq!(lines.next().unwrap(), "x,value_mantissa,value_log2,regime,correction_scale");
    assert_eq!(lines.count(), 241);
}

#[test]
fn tw_cdf_is_monotone() {
    let (code, out, _) = cdk(&["tw", "--range", "-6:8:0.1", "--m", "60"]);
    assert_eq!(code, 0);
    let cdf: Vec<f64> = out.lines().skip(2).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(cdf.len(), 141);
    assert!(cdf.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn oracle_compare_and_json() {
    let j = tmp("rec.json");
    let (code, out, _) = cdk(&["oracle", "--preset", "gue", "--n", "40", "--grid", "-0.5:0.5:0.25", "--compare", "--json", &j]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        let rel: f64 = r.split(',').next_back().unwrap().parse().unwrap();
        assert!(rel < 1e-3);
    }
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(v["alphas"].as_array().unwrap().len(), 41);
}

#[test]
fn kernel_gap_and_deviation_tables() {
    let (code, out, _) = cdk(&["kernel", "--preset", "quartic", "--n", "30", "--x", "0.2", "--grid", "-1.5:1.5:0.5"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    let (code, out, _) = cdk(&["gap", "--n", "30", "--grid", "0.9:1.3:0.1"]);
    assert_eq!(code, 0);
    let p: Vec<f64> = out.lines().skip(2).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(p.windows(2).all(|w| w[1] >= w[0]));
    let (code, out, _) = cdk(&["deviations", "--n", "50", "--range", "1:3:1"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("s,x,moderate_mantissa"));
}

#[test]
fn config_file_and_precedence() {
    let c = tmp("cfg.json");
    std::fs::write(&c, r#"{"potential":{"kind":"poly","coeffs":[0,0,1],"interval":["-inf","inf"]},"n":20,"grid":"0:0.5:0.25"}"#).unwrap();
    let (code, out, _) = cdk(&["density", "--config", &c]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    let (code, out, _) = cdk(&["density", "--config", &c, "--grid", "0:1:0.5", "--quad-order", "128"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains("quad_order=128"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(cdk(&["density", "--preset", "nope", "--n", "10"]).0, 1);
    assert_eq!(cdk(&["density", "--preset", "gue"]).0, 1);
    assert_eq!(cdk(&["frobnicate"]).0, 1);
    let (code, _, err) = cdk(&["tw", "--range", "20:21:1"]);
    assert_eq!(code, 2);
    assert!(err.contains("Tracy-Widom"));
}
