//! Golden tests for the command-line interface: worked decoding
//! examples, exit-code contract, output stability, config files.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_octonion-codes"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn worked_examples_golden() {
    let fixture: serde_json::Value = serde_json::from_str(include_str!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/worked_examples.json"
    )))
    .unwrap();
    for case in fixture["cases"].as_array().unwrap() {
        let name = case["name"].as_str().unwrap();
        let args: Vec<&str> = case["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap())
            .collect();
        let (code, stdout, stderr) = run(&args);
        assert_eq!(
            code,
            case["exit"].as_i64().unwrap() as i32,
            "{name}: exit code (stderr: {stderr})"
        );
        let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
        for (key, expected) in case["expect"].as_object().unwrap() {
            assert_eq!(&got[key], expected, "{name}: field {key}");
        }
    }
}

#[test]
fn field_table_from_p_uses_canonical_pi() {
    let (code, by_pi, _) = run(&["field-table", "--pi", "-1,4", "--format", "json"]);
    assert_eq!(code, 0);
    let (code, by_p, _) = run(&["field-table", "--p", "29", "--format", "json"]);
    assert_eq!(code, 0);
    // the canonical pi for 29 is -1+4w, so both tables agree line by line
    assert_eq!(by_pi, by_p);
    let meta: serde_json::Value = serde_json::from_str(by_p.lines().next().unwrap()).unwrap();
    assert_eq!(meta["pi_a"], -1);
    assert_eq!(meta["pi_b"], 4);
}

#[test]
fn field_table_rejects_bad_prime() {
    let (code, _, stderr) = run(&["field-table", "--p", "30"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a prime"), "stderr: {stderr}");
}

#[test]
fn field_table_text_layout() {
    let (code, stdout, _) = run(&["field-table", "--pi", "-1,4"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("pi = -1+4w, p = 29, slope = 22\n"));
    assert!(stdout.contains("f( 4) = -3-w"));
    assert!(stdout.contains("f(22) = w"));
    assert!(stdout.contains("f(17) = 2+2w"));
    assert_eq!(stdout.lines().count(), 30);
}

#[test]
fn usage_errors_exit_2() {
    // missing modulus
    let (code, _, _) = run(&["field-table"]);
    assert_eq!(code, 2);
    // both modulus forms at once
    let (code, _, _) = run(&["field-table", "--pi", "-1,4", "--p", "29"]);
    assert_eq!(code, 2);
    // unknown flag (clap usage error)
    let (code, _, _) = run(&["field-table", "--nope"]);
    assert_eq!(code, 2);
    // simulate with zero trials
    let (code, _, stderr) = run(&["simulate", "--pi", "-1,4", "--rows", "2", "--trials", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--trials"));
    // broken distribution
    let (code, _, _) = run(&[
        "simulate", "--pi", "-1,4", "--rows", "2", "--trials", "10", "--dist", "1=0.5",
    ]);
    assert_eq!(code, 2);
    // received word of the wrong length
    let (code, _, _) = run(&[
        "decode",
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "2",
        "--received",
        "1,2,3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn decode_exit_codes_follow_verdicts() {
    // clean codeword: NoError, exit 0
    let (code, stdout, _) = run(&[
        "decode",
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "2",
        "--received",
        "0,0,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(got["verdict"], "NoError");
    // detected-uncorrectable: exit 1
    let (code, _, _) = run(&[
        "decode",
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "3",
        "--received",
        "1,19,1,6",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn encode_roundtrip_through_decode() {
    let (code, stdout, _) = run(&[
        "encode",
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "2",
        "--message",
        "7,11",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    let word: Vec<String> = got["codeword"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let (code, stdout, _) = run(&[
        "decode",
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "2",
        "--received",
        &word.join(","),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(got["verdict"], "NoError");
}

#[test]
fn make_code_reports_parameters() {
    let (code, stdout, _) = run(&[
        "make-code",
        "--pi",
        "7,2",
        "--alpha-target",
        "+w",
        "--rows",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(got["p"], 71);
    assert_eq!(got["alpha"], 11);
    assert_eq!(got["order"], 70);
    assert_eq!(got["primitive"], true);
    assert_eq!(got["sign"], "+w");
    assert_eq!(got["n"], 10);
    assert_eq!(got["k"], 6);
    assert_eq!(got["gen_poly"].as_array().unwrap().len(), 5);
    assert_eq!(got["h"].as_array().unwrap().len(), 4);
}

#[test]
fn simulate_output_is_stable() {
    let args = [
        "simulate",
        "--pi",
        "-1,4",
        "--rows",
        "1",
        "--dist",
        "1=1.0",
        "--value-mode",
        "power-of-w",
        "--trials",
        "500",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    let (c1, first, _) = run(&args);
    let (c2, second, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let got: serde_json::Value = serde_json::from_str(first.trim()).unwrap();
    assert_eq!(got["corrected_ok"], 500);
    // csv output carries the documented columns
    let (c3, csv, _) = run(&[
        "simulate", "--pi", "-1,4", "--rows", "1", "--dist", "1=1.0", "--trials", "10", "--seed",
        "3", "--format", "csv",
    ]);
    assert_eq!(c3, 0);
    assert!(
        csv.starts_with("trials,no_error,corrected_ok,miscorrected,detected,failed,seed,p,rows\n")
    );
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join("octonion-codes-cli-golden");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("decode.conf");
    std::fs::write(&path, "pi=-1,4\nalpha=8\nrows=2\nformat=json\n").unwrap();
    let (code, stdout, stderr) = run(&[
        "decode",
        "--config",
        path.to_str().unwrap(),
        "--received",
        "8,6,1,19",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(got["verdict"], "Corrected");
    // flags on the command line beat config values
    let path2 = dir.join("rows3.conf");
    std::fs::write(&path2, "rows=3\n").unwrap();
    let (code, stdout, _) = run(&[
        "decode",
        "--config",
        path2.to_str().unwrap(),
        "--pi",
        "-1,4",
        "--alpha",
        "8",
        "--rows",
        "2",
        "--received",
        "8,6,1,19",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let got: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(got["rows"], 2);
    // unreadable config is a usage error
    let (code, _, _) = run(&[
        "decode",
        "--config",
        "/nonexistent/x.conf",
        "--received",
        "0",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn rate_compare_text_and_validation() {
    let (code, stdout, _) = run(&["rate-compare", "--p", "29", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("7k/(p-1) = 1/2"));
    assert!(stdout.contains("6k/(p-1) = 3/7"));
    assert!(stdout.contains("ratio = 7/6"));
    let (code, _, _) = run(&["rate-compare", "--p", "30", "--k", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["rate-compare", "--p", "29", "--k", "0"]);
    assert_eq!(code, 2);
}
