use artin_homology::cli::main_with_args;
use artin_homology::record::HomologyRecord;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with_args(std::iter::once("artin-homology").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn homology_text() {
    let out = ok(&["homology", "--family", "A", "--n", "3"]);
    assert!(out.contains("A n=3 trivial over Z: H_2 = Z2  [direct]"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn braid_symplectic_modes_agree() {
    let compute = ok(&["braid-symplectic", "--n", "6", "--degree", "3"]);
    assert!(compute.contains("H_3 = Z2^2 Z3"), "{compute}");
    let fixture = ok(&["braid-symplectic", "--n", "6", "--degree", "3", "--mode", "fixture"]);
    assert!(fixture.contains("H_3 = Z2^2 Z3") && fixture.contains("[fixture]"), "{fixture}");
    let predicted = ok(&["braid-symplectic", "--n", "13", "--degree", "7", "--mode", "predict"]);
    assert!(predicted.contains("H_7 = Z2^6"), "{predicted}");
}

#[test]
fn series_output() {
    let out = ok(&["series", "--which", "stable", "--maxq", "11"]);
    assert_eq!(out.trim(), "q + q^2 + 2q^3 + 3q^4 + 4q^5 + 5q^6 + 7q^7 + 9q^8 + 11q^9 + 14q^10 + 17q^11");
}

#[test]
fn complex_formats() {
    let out = ok(&["complex", "--family", "A", "--n", "2"]);
    assert!(out.starts_with("# artin-homology triplets v1"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&ok(&["complex", "--family", "B", "--n", "3", "--coeff", "laurent", "--format", "json"])).unwrap();
    assert_eq!(json["dims"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(json["d_squared_zero"], true);
}

#[test]
fn structured_formats_parse() {
    let args = ["homology", "--family", "B", "--n", "4", "--coeff", "mod1-t", "--ring", "Q"];
    let json = ok(&[&args[..], &["--format", "json"]].concat());
    let records: Vec<HomologyRecord> = serde_json::from_str(&json).unwrap();
    assert_eq!(records.len(), 5);
    assert_eq!(records.iter().map(|r| r.betti).collect::<Vec<_>>(), [0, 0, 0, 1, 1]);

    let csv_text = ok(&[&args[..], &["--format", "csv"]].concat());
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["family", "n", "coeff", "ring", "degree", "betti", "torsion", "provenance", "candidate", "basis_hash"]
    );
    assert_eq!(reader.records().count(), 5);

    let md = ok(&[&args[..], &["--format", "md"]].concat());
    let rows: Vec<&str> = md.lines().filter(|l| l.starts_with('|')).collect();
    assert_eq!(rows.len(), 3, "{md}");
    assert!(rows[2].ends_with("| 0 | 0 | 0 | Q | Q |"), "{md}");
    assert!(rows.iter().all(|r| r.matches('|').count() == rows[0].matches('|').count()));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["homology", "--family", "B", "--n", "5", "--coeff", "laurent", "--ring", "F3", "--format", "json"][..],
        &["braid-symplectic", "--n", "5", "--ring", "F2", "--basis", "--format", "csv"][..],
        &["homology", "--family", "A", "--n", "6", "--basis", "--format", "json"][..],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["homology", "--family", "A", "--n", "0"][..],
        &["homology", "--family", "A", "--n", "3", "--ring", "F4"][..],
        &["homology", "--family", "A", "--n", "3", "--coeff", "laurent"][..],
        &["homology", "--family", "B", "--n", "3", "--coeff", "laurent", "--ring", "Z"][..],
        &["braid-symplectic", "--n", "6", "--degree", "3", "--mode", "predict"][..],
        &["braid-symplectic", "--n", "4", "--candidate", "no-such-thing"][..],
        &["no-such-command"][..],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_quick_passes_and_detects_a_wrong_table() {
    let (code, out, _) = run(&["verify", "--scope", "quick"]);
    assert_eq!(code, 0, "{out}");
    let dir = tempfile::tempdir().unwrap();
    let mut table: serde_json::Value = serde_json::from_str(include_str!("../data/symplectic_groups.json")).unwrap();
    table["rows"][1]["groups"][0] = "Z2^3".into();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, table.to_string()).unwrap();
    let (code, out, _) = run(&["verify", "--scope", "quick", "--fixture", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["braid-symplectic", "--n", "5", "--format", "json", "--cache-dir", cache];
    let first = ok(&args);
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 6);
    let second = ok(&args);
    assert_eq!(first, second);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), files);
}
