//! Golden-file tests for the `k3lift` binary. Each case runs twice and must
//! produce byte-identical stdout. Set `UPDATE_GOLDEN=1` to regenerate.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
    error_code: Option<&'static str>,
}

const CASES: &[Case] = &[
    Case {
        name: "eig_split",
        args: &["eig-split", "--in", "fixtures/eig_split.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "eig_split_wild",
        args: &["eig-split", "--in", "fixtures/eig_split_wild.json"],
        exit: 2,
        error_code: Some("NotTame"),
    },
    Case {
        name: "isotropic_lift",
        args: &["isotropic-lift", "--in", "fixtures/isotropic_lift.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "period_toy",
        args: &["period-complete", "--in", "fixtures/period_toy.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "period_k3",
        args: &["period-complete", "--in", "fixtures/period_k3.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "period_bad_valuation",
        args: &["period-complete", "--in", "fixtures/period_bad_valuation.json"],
        exit: 2,
        error_code: Some("ValuationViolation"),
    },
    Case {
        name: "phi_map",
        args: &["phi-map", "--in", "fixtures/phi_map.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "phi_invert",
        args: &["phi-invert", "--in", "fixtures/phi_invert.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "lift_finite_height",
        args: &[
            "lift-search",
            "--mode",
            "finite-height",
            "--in",
            "fixtures/lift_finite_height.json",
        ],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "lift_minus_one",
        args: &[
            "lift-search",
            "--mode",
            "ss-nonsymplectic",
            "--in",
            "fixtures/lift_minus_one.json",
        ],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "lift_minus_one_ctx_override",
        args: &[
            "--ctx",
            "5,2,1",
            "lift-search",
            "--mode",
            "ss-nonsymplectic",
            "--in",
            "fixtures/lift_minus_one.json",
        ],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "lift_not_tame",
        args: &[
            "lift-search",
            "--mode",
            "ss-nonsymplectic",
            "--in",
            "fixtures/lift_not_tame.json",
        ],
        exit: 2,
        error_code: Some("NotTame"),
    },
    Case {
        name: "lift_symplectic_unit",
        args: &[
            "lift-search",
            "--mode",
            "ss-symplectic",
            "--in",
            "fixtures/lift_symplectic_unit.json",
        ],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "lift_symplectic_divisible",
        args: &[
            "lift-search",
            "--mode",
            "ss-symplectic",
            "--in",
            "fixtures/lift_symplectic_divisible.json",
        ],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "verify",
        args: &["verify", "--in", "fixtures/certificate.json"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "verify_perturbed",
        args: &[
            "--seed",
            "7",
            "verify",
            "--perturb",
            "--in",
            "fixtures/certificate.json",
        ],
        exit: 2,
        error_code: Some("VerificationFailed"),
    },
    Case {
        name: "constraints_phi",
        args: &["constraints", "--phi", "66"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "constraints_sigma",
        args: &["constraints", "--sigma", "66", "11"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "constraints_scan",
        args: &["constraints", "--scan-remark38", "200"],
        exit: 0,
        error_code: None,
    },
    Case {
        name: "malformed",
        args: &["isotropic-lift", "--in", "fixtures/malformed.json"],
        exit: 1,
        error_code: Some("DimensionMismatch"),
    },
    Case {
        name: "bad_context",
        args: &["--ctx", "5,x,1", "constraints", "--phi", "5"],
        exit: 1,
        error_code: Some("InvalidContext"),
    },
];

fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_k3lift"))
        .args(args)
        .current_dir(tests_dir())
        .output()
        .expect("spawn k3lift");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn error_code(stderr: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(stderr.trim()).expect("stderr is JSON");
    v["error"]["code"].as_str().expect("machine code").to_string()
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for case in CASES {
        let (code, stdout, stderr) = run(case.args);
        let (code2, stdout2, stderr2) = run(case.args);
        assert_eq!(
            (code, &stdout, &stderr),
            (code2, &stdout2, &stderr2),
            "{}: nondeterministic",
            case.name
        );
        assert_eq!(code, case.exit, "{}: exit code, stderr {stderr}", case.name);
        match case.error_code {
            Some(expected) => assert_eq!(error_code(&stderr), expected, "{}", case.name),
            None => assert!(stderr.is_empty(), "{}: unexpected stderr {stderr}", case.name),
        }
        let path = tests_dir().join("golden").join(format!("{}.out", case.name));
        let record = format!("exit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}");
        if update {
            fs::write(&path, &record).unwrap();
        } else {
            let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
            assert_eq!(record, expected, "{}: output drifted from golden", case.name);
        }
    }
}

#[test]
fn stdin_matches_file_input() {
    let input = fs::read(tests_dir().join("fixtures/isotropic_lift.json")).unwrap();
    let mut sink = Vec::new();
    let mut err = Vec::new();
    let code = k3lift::cli::run(["k3lift", "isotropic-lift"], &mut input.as_slice(), &mut sink, &mut err);
    assert_eq!(code, 0);
    let (_, from_file, _) = run(&["isotropic-lift", "--in", "fixtures/isotropic_lift.json"]);
    assert_eq!(String::from_utf8(sink).unwrap(), from_file);
}

#[test]
fn documented_values() {
    let (_, out, _) = run(&["isotropic-lift", "--in", "fixtures/isotropic_lift.json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["a"], serde_json::json!([12]));
    assert_eq!(v["w"], serde_json::json!([[1], [60]]));

    let (_, out, _) = run(&["period-complete", "--in", "fixtures/period_toy.json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["top"], serde_json::json!([18]));
    assert_eq!(v["conditions"]["frobenius"], "passed");

    let (_, out, _) = run(&["constraints", "--phi", "66"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["phi"], 20);
}

#[test]
fn phi_map_output_inverts() {
    let (code, mapped, _) = run(&["phi-map", "--in", "fixtures/phi_map.json"]);
    assert_eq!(code, 0);
    let tmp = std::env::temp_dir().join(format!("k3lift-phi-{}.json", std::process::id()));
    fs::write(&tmp, &mapped).unwrap();
    let (code, inverted, _) = run(&["phi-invert", "--in", tmp.to_str().unwrap()]);
    fs::remove_file(&tmp).ok();
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&inverted).unwrap();
    assert_eq!(v["point"], serde_json::json!([[3], [6]]));
}
