//! End-to-end tests that spawn the actual `hodgeknot` binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hodgeknot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hodgeknot")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn hodge_subcommand_succeeds_on_builtin_name() {
    let out = run(&["hodge", "--knot", "trefoil"]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let text = stdout_str(&out);
    assert!(text.contains("trefoil"), "{text}");
    assert!(text.contains("circle root 0"), "{text}");
}

#[test]
fn unknown_name_fails_with_exit_code_one() {
    let out = run(&["alexander", "--knot", "no-such-knot"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr_str(&out).is_empty());
    assert!(stdout_str(&out).is_empty());
}

#[test]
fn missing_input_selection_fails() {
    let out = run(&["alexander"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("--input"), "{}", stderr_str(&out));
}

#[test]
fn unit_root_torsion_blocks_the_spectrum() {
    let out = run(&["spectrum", "--knot", "annulus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = dir.path().join("a.json");
    let f2 = dir.path().join("b.json");
    for f in [&f1, &f2] {
        let out = run(&[
            "crosscheck",
            "--knot",
            "torus(2,5)",
            "--json-out",
            f.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    }
    let b1 = std::fs::read(&f1).unwrap();
    let b2 = std::fs::read(&f2).unwrap();
    assert_eq!(b1, b2, "same input must serialize identically");
    let v: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["name"], "torus(2,5)");
    assert_eq!(v["alexander"], "1 - t + t^2 - t^3 + t^4");
    assert_eq!(v["nakanishi_index"], 1);
}

#[test]
fn cache_round_trips_and_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let f1 = dir.path().join("a.json");
    let f2 = dir.path().join("b.json");
    let f3 = dir.path().join("c.json");

    let args = |out_file: &Path| {
        vec![
            "hodge".to_string(),
            "--knot".to_string(),
            "8_20".to_string(),
            "--cache".to_string(),
            cache.to_str().unwrap().to_string(),
            "--json-out".to_string(),
            out_file.to_str().unwrap().to_string(),
        ]
    };
    let out = bin().args(args(&f1)).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect::<Result<_, _>>().unwrap();
    assert_eq!(entries.len(), 1, "one cache entry expected");
    let entry_path = entries[0].path();
    assert_eq!(entry_path.extension().unwrap(), "json");

    // Warm read: byte-identical result.
    let out = bin().args(args(&f2)).output().unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f2).unwrap());

    // A corrupted entry is ignored and recomputed.
    std::fs::write(&entry_path, b"{ not json").unwrap();
    let out = bin().args(args(&f3)).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f3).unwrap());
}

#[test]
fn plot_emits_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("sig25");
    let out = run(&[
        "plot",
        "--knot",
        "torus(2,5)",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let csv = std::fs::read_to_string(prefix.with_extension("csv")).unwrap();
    let svg = std::fs::read_to_string(prefix.with_extension("svg")).unwrap();
    assert!(csv.starts_with("turn,signature\n"), "{csv}");
    assert!(csv.contains("0.100000000,-2"), "{csv}");
    assert!(csv.contains("0.300000000,-4"), "{csv}");
    assert!(csv.contains("0.900000000,0"), "{csv}");
    assert!(svg.starts_with("<svg"), "plot must be an svg document");
    assert!(svg.contains("</svg>"));
}

#[test]
fn csv_parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("rows.csv");
    std::fs::write(&table, "trefoil,2,-1,1,0,-1\nhopf,1,1\nbad,1,x\n").unwrap();
    let out = run(&["alexander", "--input", table.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("line 3"), "{}", stderr_str(&out));
}

#[test]
fn csv_input_processes_every_row_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("rows.csv");
    std::fs::write(
        &table,
        "# name,size,entries\ntrefoil,2,-1,1,0,-1\nhopf,1,1\n",
    )
    .unwrap();
    let json = dir.path().join("out.json");
    let out = run(&[
        "alexander",
        "--input",
        table.to_str().unwrap(),
        "--json-out",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    let rows = v.as_array().expect("array for multi-row input");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["name"], "trefoil");
    assert_eq!(rows[0]["alexander"], "1 - t + t^2");
    assert_eq!(rows[1]["name"], "hopf");
    let text = stdout_str(&out);
    let t_pos = text.find("trefoil").unwrap();
    let h_pos = text.find("hopf").unwrap();
    assert!(t_pos < h_pos, "row order must be preserved");
}
