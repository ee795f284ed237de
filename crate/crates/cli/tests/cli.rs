use std::path::{Path, PathBuf};

use proptest::prelude::*;
use streamwd::syntax::{parse_goals, parse_spec};
use streamwd_cli::turtle::segment_count;
use streamwd_cli::{limits_from, run, EXIT_FAILED, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};
use tempfile::TempDir;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["streamwd"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// `prove` with the exported problem kept out of the working directory.
fn prove(spec: &str, dir: &TempDir, extra: &[&str]) -> (i32, String, PathBuf) {
    let tpdb = dir.path().join(format!("{spec}.tpdb"));
    let path = fixture(&format!("{spec}.spec"));
    let mut args = vec!["prove", path.as_str(), "--tpdb-out", tpdb.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, out, _) = cli(&args);
    (code, out, tpdb)
}

#[test]
fn check_exit_codes() {
    assert_eq!(cli(&["check", &fixture("zeros.spec")]).0, EXIT_OK);
    assert_eq!(cli(&["check", &fixture("fib_original.spec")]).0, EXIT_OK);
    let (code, out, _) = cli(&["check", &fixture("fib_intro.spec")]);
    assert_eq!(code, EXIT_FAILED, "{out}");
    assert_eq!(cli(&["check", &fixture("overlap.spec")]).0, EXIT_FAILED);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["check"]).0, EXIT_USAGE);
    assert_eq!(cli(&["check", "/nonexistent/x.spec"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "sig 0 : d ;\nstreamrules\n  c = = 0 ;\n").unwrap();
    let (code, _, err) = cli(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(
        err.starts_with("error: ") && err.contains("bad.spec:3:"),
        "{err}"
    );
}

#[test]
fn prove_zeros_is_well_defined_and_data_independent() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("zeros.json");
    let (code, out, tpdb) = prove("zeros", &dir, &["--cert", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("well-defined:"));
    assert!(out.contains("data-independent:"));
    assert!(cert.exists());
    assert!(!tpdb.exists());
}

#[test]
fn prove_with_unfold() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = prove("kol_prime", &dir, &["--unfold"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("unfolded g at stream argument 1"), "{out}");
    let (code, _, _) = prove("kol_prime", &dir, &[]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn prove_nomodel_reports_a_loop() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, tpdb) = prove("nomodel", &dir, &[]);
    assert_eq!(code, EXIT_UNKNOWN, "{out}");
    assert!(
        out.contains("non-termination does not imply ill-definedness"),
        "{out}"
    );
    assert!(!out.contains("well-defined:"));
    assert!(tpdb.exists());
}

#[test]
fn exported_problems_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["morse", "exgr", "fib_rs_prime"] {
        let (code, text, _) = cli(&["obs", &fixture(&format!("{name}.spec")), "--tpdb"]);
        assert_eq!(code, EXIT_OK);
        let golden = std::fs::read_to_string(fixture(&format!("golden/{name}.tpdb"))).unwrap();
        assert_eq!(text, golden, "{name}");
    }
    let (_, text, _) = cli(&["obs", &fixture("kol_prime.spec"), "--tpdb", "--unfold"]);
    assert_eq!(
        text,
        std::fs::read_to_string(fixture("golden/kol_prime.tpdb")).unwrap()
    );

    // What prove exports for an unproved system is the same text.
    let (code, _, tpdb) = prove("morse", &dir, &["--timeout", "1"]);
    if code == EXIT_UNKNOWN {
        assert_eq!(
            std::fs::read(tpdb).unwrap(),
            std::fs::read(fixture("golden/morse.tpdb")).unwrap()
        );
    }
}

#[test]
fn obs_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let spec = fixture("paperfold.spec");
    assert_eq!(cli(&["obs", &spec, "-o", a.to_str().unwrap()]).0, EXIT_OK);
    assert_eq!(cli(&["obs", &spec, "-o", b.to_str().unwrap()]).0, EXIT_OK);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn unfold_writes_a_parseable_spec() {
    let (code, text, _) = cli(&["unfold", &fixture("fib_intro.spec"), "-f", "f", "-i", "1"]);
    assert_eq!(code, EXIT_OK);
    let spec = parse_spec(&text).unwrap();
    assert!(streamwd::spec::validate(&spec).is_proper());
    assert_eq!(
        cli(&[
            "unfold",
            &fixture("fib_intro.spec"),
            "-f",
            "nope",
            "-i",
            "1"
        ])
        .0,
        EXIT_USAGE
    );
    assert_eq!(
        cli(&["unfold", &fixture("fib_intro.spec"), "-f", "f", "-i", "2"]).0,
        EXIT_USAGE
    );
}

#[test]
fn eval_prints_prefixes() {
    let (code, out, _) = cli(&["eval", &fixture("morse.spec"), "-t", "morse", "-n", "16"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "0110100110010110\n"));
    let (code, out, _) = cli(&[
        "eval",
        &fixture("paperfold.spec"),
        "-t",
        "P",
        "-n",
        "8",
        "--strategy",
        "outermost",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "00100110\n"));
    // Not productive: nothing to print, exit 2.
    let (code, _, err) = cli(&[
        "eval",
        &fixture("exwdnp.spec"),
        "-t",
        "f(c)",
        "-n",
        "4",
        "--strategy",
        "outermost",
    ]);
    assert_eq!(code, EXIT_UNKNOWN);
    assert!(err.contains("incomplete"), "{err}");
    assert_eq!(
        cli(&["eval", &fixture("morse.spec"), "-t", "0", "-n", "1"]).0,
        EXIT_USAGE
    );
}

#[test]
fn turtle_output_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = fixture("fib_rs_prime.spec");
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("t{k}.svg"));
        let args = [
            "turtle",
            spec.as_str(),
            "-t",
            "Fib",
            "-n",
            "200",
            "--angle0",
            "-120",
            "--angle1",
            "30",
            "-o",
            out.to_str().unwrap(),
        ];
        assert_eq!(cli(&args).0, EXIT_OK);
        outputs.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(segment_count(&outputs[0]), 200);
    assert!(outputs[0].starts_with("<?xml"));
    let bad = [
        "turtle",
        spec.as_str(),
        "-t",
        "Fib",
        "-n",
        "4",
        "--angle0",
        "1",
        "--angle1",
        "1",
        "--unit",
        "0",
    ];
    assert_eq!(cli(&bad).0, EXIT_USAGE);
}

#[test]
fn goals_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("goals.txt");
    let (code, _, _) = cli(&[
        "goals",
        &fixture("fib_rs.spec"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let doubled = std::fs::read_to_string(dir.path().join("goals.txt.spec")).unwrap();
    let spec = parse_spec(&doubled).unwrap();
    let goals = parse_goals(&std::fs::read_to_string(&out).unwrap(), &spec).unwrap();
    let original = parse_spec(&std::fs::read_to_string(fixture("fib_rs.spec")).unwrap()).unwrap();
    assert!(!goals.is_empty());
    assert!(goals.len() <= original.sigma_s().len());
}

#[test]
fn certify_scripts() {
    let (code, out, _) = cli(&[
        "certify",
        &fixture("fib_rs_prime.spec"),
        &fixture("proofs/fib_forward.proof"),
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("valid:"));

    let text = std::fs::read_to_string(fixture("proofs/fib_forward.proof")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.proof");
    std::fs::write(&broken, text.replacen("fwd", "bwd", 1)).unwrap();
    let (code, out, _) = cli(&[
        "certify",
        &fixture("fib_rs_prime.spec"),
        broken.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_FAILED, "{out}");
    assert!(out.contains("invalid:"));
}

#[test]
fn certify_preservation_needs_both_directions() {
    let a = fixture("fib_rs.spec");
    let b = fixture("fib_rs_prime.spec");
    let fwd = fixture("proofs/fib_forward.proof");
    let bwd = fixture("proofs/fib_backward.proof");
    let (code, out, _) = cli(&["certify", &a, &fwd, "--against", &b, "--back", &bwd]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(cli(&["certify", &a, &fwd, "--against", &b]).0, EXIT_FAILED);
}

#[test]
fn suggest_anchor() {
    let (code, out, _) = cli(&["suggest", &fixture("fib_rs.spec"), "-c", "Fib", "-n", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("candidate:"));
    assert_eq!(
        cli(&["suggest", &fixture("fib_rs.spec"), "-c", "f", "-n", "2"]).0,
        EXIT_USAGE
    );
}

#[test]
fn fuel_values() {
    assert!(limits_from(None).is_ok());
    assert_eq!(limits_from(Some("123")).unwrap().fuel, 123);
    assert!(limits_from(Some("lots")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Whatever the arguments, the exit code is one of the four documented ones.
    #[test]
    fn exit_codes_are_total(args in proptest::collection::vec(
        prop_oneof![
            Just("check".to_string()),
            Just("eval".to_string()),
            Just("obs".to_string()),
            Just("-n".to_string()),
            Just("-t".to_string()),
            Just(fixture("zeros.spec")),
            Just("zeros".to_string()),
            "[a-z0-9]{0,6}",
        ],
        0..6,
    )) {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _, _) = cli(&refs);
        prop_assert!((EXIT_OK..=EXIT_USAGE).contains(&code));
    }
}
