use std::process::Command;

fn brauer(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .env_remove("BRAUER_THREADS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const FOURFOLD: &str = "x1^y1 + x1^y3 + x2^y2 + x3^y1";

#[test]
fn table_cell() {
    let (code, out, _) = brauer(&["table-s"]);
    assert_eq!(code, 0);
    let header: Vec<&str> = out.lines().next().unwrap().split_whitespace().collect();
    let col = header.iter().position(|h| *h == "2^3").unwrap();
    let row: Vec<&str> = out.lines().find(|l| l.split_whitespace().next() == Some("5")).unwrap().split_whitespace().collect();
    assert_eq!(row[col], "14/3");
}

#[test]
fn bound_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = brauer(&[
        "bound", "--g", "4", "--period", "2", "--form", FOURFOLD, "--methods", "djp,refined", "--primes", "2",
        "--json", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("lower_bound=8 cap=8 determined=true"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["lower_bound"], 8);
    assert_eq!(json["determined"], true);
    let degrees = json["degrees"].as_array().unwrap();
    for key in ["d", "djp", "refined", "hotchkiss", "certificate"] {
        assert!(degrees.iter().all(|d| d.get(key).is_some()), "missing {key}");
    }
    assert!(json.get("spec").is_some() && json.get("cap").is_some());
}

#[test]
fn parse_errors_exit_two() {
    let (code, _, err) = brauer(&["bound", "--g", "4", "--period", "2", "--form", "x1^y9"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 4"), "{err}");
    let (code, _, _) = brauer(&["bound", "--g", "4", "--period", "2", "--form", "x1*y1"]);
    assert_eq!(code, 2);
}

#[test]
fn sample_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let args = [
        "sample", "--g", "3", "--period", "2", "--weight", "4", "--count", "5", "--seed", "3", "--omit-timings",
        "--csv", path.to_str().unwrap(),
    ];
    assert_eq!(brauer(&args).0, 0);
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(brauer(&args).0, 0);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    assert!(first.starts_with("id,g,period,form,hamming_weight,symbol_length,djp_bound,refined_bound,hotchkiss_bound,cap,elapsed_ms,seed,sample_index\n"));
    assert_eq!(first.lines().count(), 6);
}

#[test]
fn verify_paper_passes() {
    let (code, out, err) = brauer(&["verify-paper", "--threads", "2"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
}
