use accp_cli::{run_with, CertificateEnvelope};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("accp").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn doc(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn construct_stage_one_example() {
    let d = doc(&["construct", "--stages", "1", "--verify-atoms", "--chain"]);
    assert_eq!(d["command"], "construct");
    assert_eq!(
        d["result"]["points"],
        serde_json::json!([[0, 1], [125, 177], [-5, -7]])
    );
    assert_eq!(d["result"]["multipliers"], serde_json::json!([2, 25]));
    assert!(d["result"]["atomReports"].is_array());
    assert!(d["result"]["chain"]["ideals"].is_array());
    assert!(d["verification"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn z_squared_is_not_hereditarily_atomic() {
    let d = doc(&["classify-group", "--relations", "[[0,0],[0,0]]"]);
    assert_eq!(d["result"]["classification"]["hereditarilyAtomic"], false);
    assert_eq!(d["result"]["witness"]["kind"], "lex-cone");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["badcmd"]).0, 1);
    assert_eq!(run(&["construct", "--no-such-flag"]).0, 1);
    assert_eq!(run(&["atoms"]).0, 1);
    // bad input values are errors too, not verification failures
    assert_eq!(run(&["split", "--q", "1/2"]).0, 1);
    assert_eq!(run(&["frobenius", "--f", "1 + x^(1/3)", "--p", "2"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("beta-monoid"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["construct", "--stages", "2", "--verify-atoms", "--chain"][..],
        &["chain", "--family", "prime-gap", "--n", "6"],
        &["lengths", "--bound", "10"],
        &["beta-monoid", "--n", "3", "--mode", "all-subsets"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn out_flag_writes_file_and_verify_accepts_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let (code, stdout, _) = run(&["construct", "--stages", "2", "--chain", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let d = doc(&["verify", "--input", p]);
    assert_eq!(d["result"]["command"], "construct");
    assert!(d["verification"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn verify_flags_a_tampered_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let (_, out, _) = run(&["split", "--q", "3/2"]);
    let mut env: CertificateEnvelope = serde_json::from_str(&out).unwrap();
    env.result["factors"][0] = Value::String("5/4".into());
    std::fs::write(&path, serde_json::to_string(&env).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let d: Value = serde_json::from_str(&out).unwrap();
    let failing: Vec<&str> = d["verification"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["re-run reproduces the result"]);
}

#[test]
fn every_subcommand_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["atoms", "--generators", "[[1,0],[1,1],[2,1]]"],
        &["atoms", "--family", "grams", "--n", "5"],
        &["chain", "--stages", "3"],
        &[
            "member",
            "--generators",
            "[[2,1],[1,2]]",
            "--target",
            "[5,4]",
        ],
        &[
            "member",
            "--family",
            "geometric:2/3",
            "--n",
            "4",
            "--q",
            "10/9",
        ],
        &["classify-group", "--chain", "1,2,6,...*n", "--terms", "3"],
        &["classify-algebra", "--char", "0", "--relations", "[[0]]"],
        &["frobenius", "--f", "1 + 2*x^(1/3)", "--p", "3"],
        &["figure", "--stages", "1"],
        &["zaks", "--k", "2"],
        &[
            "witness",
            "--chain",
            "1,3,9,...*3",
            "--torsion",
            r#"{"moduli":[2],"terms":[[1]]}"#,
        ],
        &["split", "--q", "7/5"],
        &["search", "--f", "1 + x + x^2", "--p", "2"],
        &["normal-form", "--q", "36/203"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        let mut argv = args.to_vec();
        argv.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(run(&argv).0, 0, "{args:?}");
        let (code, _, err) = run(&["verify", "--input", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{args:?}: {err}");
    }
}

#[test]
fn member_found_and_not_found() {
    let d = doc(&[
        "member",
        "--generators",
        "[[2,1],[1,2]]",
        "--target",
        "[1,1]",
    ]);
    assert_eq!(d["result"]["membership"]["status"], "notFound");
    assert_eq!(d["result"]["conclusive"], true);
    let d = doc(&["member", "--family", "grams", "--n", "3", "--q", "1/2"]);
    assert_eq!(d["result"]["membership"]["status"], "found");
}

#[test]
fn figure_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let svg = dir.path().join("f.svg");
    let d = doc(&[
        "figure",
        "--csv",
        csv.to_str().unwrap(),
        "--figure",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        d["result"]["csv"].as_str().unwrap()
    );
    assert_eq!(
        std::fs::read_to_string(&svg).unwrap(),
        d["result"]["svg"].as_str().unwrap()
    );
    // paths are not part of the recorded parameters
    assert_eq!(d["parameters"], serde_json::json!({"stages": 1}));
}
