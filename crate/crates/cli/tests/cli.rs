use assert_cmd::Command;
use predicates::str::contains;
use std::io::Write;

const HEADER: &str = "group,lambda_re,lambda_im,t,route,value_re,value_im,abs_diff_vs_first";

fn sphfn() -> Command {
    let mut c = Command::cargo_bin("sphfn").unwrap();
    c.env_remove("SPHFN_CATALOG");
    c
}

fn stdout_of(args: &[&str]) -> (String, i32) {
    let out = sphfn().args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

fn field(line: &str, i: usize) -> f64 {
    line.split(',').nth(i).unwrap().parse().unwrap()
}

#[test]
fn eval_at_identity_is_one() {
    sphfn()
        .args([
            "eval",
            "--group",
            "sl2r-sec4",
            "--lambda",
            "1.0",
            "--t",
            "0",
            "--route",
            "hyp",
        ])
        .assert()
        .success()
        .stdout(
            "\
group        sl2r-sec4
route        hyp
lambda       1+0i
t            0
value        1+0i
diagnostics  terms_used=1 tail_estimate=0e0
",
        );
}

#[test]
fn eval_csv_matches_closed_form() {
    // (p, q) = (2, 0): φ_λ(t) = sinh(λt)/(λ sinh t)
    let (out, code) = stdout_of(&[
        "eval", "--lambda", "0.6", "--t", "1.3", "--route", "ode", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "group,lambda_re,lambda_im,t,route,value_re,value_im,diagnostics"
    );
    let exact = (0.6f64 * 1.3).sinh() / (0.6 * 1.3f64.sinh());
    assert!((field(lines[1], 5) - exact).abs() < 1e-8);
    assert!(lines[1].contains("residual_max="));
}

#[test]
fn eval_confluent_paper_literal_at_zero_lambda() {
    let (out, code) = stdout_of(&[
        "eval",
        "--route",
        "confluent",
        "--lambda",
        "0",
        "--t",
        "0.5",
        "--mode",
        "paper-literal",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("value        0+0i"), "{out}");
}

#[test]
fn eval_negative_t_on_integral_route_is_domain_error() {
    for route in ["integral-hc", "integral-contour"] {
        sphfn()
            .args([
                "eval",
                "--group",
                "sl2r-sec2",
                "--route",
                route,
                "--lambda",
                "1",
                "--t",
                "-0.5",
            ])
            .assert()
            .code(2)
            .stderr(contains("needs t >= 0"));
    }
}

#[test]
fn eval_integral_route_on_other_group_is_domain_error() {
    sphfn()
        .args([
            "eval",
            "--group",
            "sl2r-sec4",
            "--route",
            "integral-hc",
            "--lambda",
            "1",
            "--t",
            "0.5",
        ])
        .assert()
        .code(2);
}

#[test]
fn eval_reports_integral_mapping() {
    let (out, code) = stdout_of(&[
        "eval",
        "--group",
        "sl2r-sec2",
        "--route",
        "integral-hc",
        "--lambda",
        "1.2",
        "--t",
        "0.4",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("evaluated_at=(lambda=0.6+0i, t=0.8)"), "{out}");
}

#[test]
fn unparsable_lambda_is_usage_error() {
    sphfn()
        .args(["eval", "--lambda", "1+2x", "--t", "0.5"])
        .assert()
        .code(2);
}

#[test]
fn compare_acceptance_grid_agrees() {
    let (out, code) = stdout_of(&[
        "compare",
        "--group",
        "g43",
        "--p",
        "4",
        "--q",
        "3",
        "--lambda",
        "0.3,0.7,1.5,2+1i",
        "--t-min",
        "0.01",
        "--t-max",
        "2",
        "--t-steps",
        "20",
        "--routes",
        "hyp,ode",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 1 + 4 * 20 * 2);
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 8);
        assert!(field(line, 7) <= 1e-8, "{line}");
    }
}

#[test]
fn compare_rows_are_ordered() {
    let (out, _) = stdout_of(&[
        "compare",
        "--lambda",
        "2,1,0.5",
        "--t",
        "0.9,0.1",
        "--routes",
        "ode,hyp,stanton-tomas",
        "--tol",
        "1",
    ]);
    let keys: Vec<(String, String, String)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].to_string(), f[3].to_string(), f[4].to_string())
        })
        .collect();
    let mut expected = Vec::new();
    for lam in ["2", "1", "0.5"] {
        for t in ["0.9", "0.1"] {
            for r in ["ode", "hyp", "stanton-tomas"] {
                expected.push((lam.to_string(), t.to_string(), r.to_string()));
            }
        }
    }
    assert_eq!(keys, expected);
}

#[test]
fn compare_is_deterministic() {
    let args = [
        "compare",
        "--lambda",
        "0.3,1+0.5i",
        "--t-min",
        "0.1",
        "--t-max",
        "1.5",
        "--t-steps",
        "7",
        "--routes",
        "hyp,ode",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn compare_same_route_twice_has_zero_diff() {
    sphfn()
        .args([
            "compare", "--lambda", "0.7", "--t", "0.5,1", "--routes", "hyp,hyp", "--tol", "0",
        ])
        .assert()
        .success()
        .stdout(format!(
            "{HEADER}
sl2r-sec4,0.7,0,0.5,hyp,0.9792278623000731,0,0
sl2r-sec4,0.7,0,0.5,hyp,0.9792278623000731,0,0
sl2r-sec4,0.7,0,1,hyp,0.9221323195459286,0,0
sl2r-sec4,0.7,0,1,hyp,0.9221323195459286,0,0
"
        ));
}

#[test]
fn compare_zero_tol_distinct_routes_fails() {
    sphfn()
        .args([
            "compare", "--lambda", "0.7", "--t", "0.5", "--routes", "hyp,ode", "--tol", "0",
        ])
        .assert()
        .code(1);
}

#[test]
fn compare_route_failure_leaves_empty_fields() {
    let (out, code) = stdout_of(&[
        "compare", "--lambda", "0.7", "--t", "0.5,-1", "--routes", "hyp,ode",
    ]);
    assert_eq!(code, 4);
    assert!(
        out.lines().any(|l| l == "sl2r-sec4,0.7,0,-1,ode,,,"),
        "{out}"
    );
}

#[test]
fn compare_needs_two_routes() {
    sphfn()
        .args([
            "compare", "--lambda", "0.7", "--t", "0.5", "--routes", "hyp",
        ])
        .assert()
        .code(2);
}

#[test]
fn compare_is_locale_independent() {
    let (out, _) = sphfn_with_locale(&[
        "compare", "--lambda", "1234.5", "--t", "0.001", "--routes", "hyp,hyp",
    ]);
    assert!(out.ends_with('\n') && !out.contains('\r'));
    assert!(out
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("sl2r-sec4,1234.5,0,0.001,hyp,"));
}

fn sphfn_with_locale(args: &[&str]) -> (String, i32) {
    let out = sphfn()
        .env("LC_ALL", "de_DE.UTF-8")
        .env("LANG", "de_DE.UTF-8")
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn axioms_report_is_deterministic() {
    let first = stdout_of(&["axioms", "--trials", "200", "--seed", "11"]);
    assert_eq!(
        first,
        stdout_of(&["axioms", "--trials", "200", "--seed", "11"])
    );
    assert_eq!(first.1, 0);
    let lines: Vec<&str> = first.0.lines().collect();
    assert_eq!(lines.len(), 16);
    assert!(lines[..15].iter().all(|l| l.ends_with("200/200 pass")));
}

#[test]
fn axioms_thousand_trials_pass() {
    let (out, code) = stdout_of(&["axioms", "--trials", "1000", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines()
            .filter(|l| l.ends_with("1000/1000 pass"))
            .count(),
        15
    );
}

#[test]
fn axioms_single_trial_still_lists_all() {
    let (out, code) = stdout_of(&["axioms", "--trials", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.ends_with("1/1 pass")).count(), 15);
}

#[test]
fn axioms_zero_trials_rejected() {
    sphfn().args(["axioms", "--trials", "0"]).assert().code(2);
}

#[test]
fn error_order_defaults_pass() {
    let (out, code) = stdout_of(&["error-order", "--format", "csv"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    assert!(field(row, 5) >= 1.8);
    assert!(row.ends_with(",pass"));
}

#[test]
fn error_order_preconditions() {
    sphfn()
        .args(["error-order", "--points", "2"])
        .assert()
        .code(2);
    sphfn()
        .args(["error-order", "--lambda", "200"])
        .assert()
        .code(2);
    sphfn().args(["error-order", "--m", "1"]).assert().code(2);
    sphfn()
        .args(["error-order", "--group", "sl2r-sec2"])
        .assert()
        .code(2);
}

#[test]
fn catalog_from_flag_and_env() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[[group]]\nname = \"sp21\"\np = 4\nq = 3").unwrap();
    let path = file.path().to_str().unwrap();
    let args = [
        "compare", "--group", "sp21", "--lambda", "1.5", "--t", "0.7", "--routes", "hyp,ode",
    ];

    sphfn()
        .arg("--catalog")
        .arg(path)
        .args(args)
        .assert()
        .success();
    sphfn()
        .env("SPHFN_CATALOG", path)
        .args(args)
        .assert()
        .success();
    sphfn().args(args).assert().code(2);
}

#[test]
fn bad_catalog_is_domain_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[[group]]\nname = \"sl2r-sec4\"\np = 2\nq = 0").unwrap();
    sphfn()
        .args([
            "--catalog",
            file.path().to_str().unwrap(),
            "axioms",
            "--trials",
            "1",
        ])
        .assert()
        .code(2)
        .stderr(contains("duplicate"));
}
