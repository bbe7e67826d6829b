use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mcanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcanon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn input(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("inputs")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("f.txt");
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn canon_prints_form_file_and_types() {
    let o = mcanon(&["canon", &input("ex_factor_not_quotient_of_forms.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(x^2, x*y, y^2) / (x^3, y^3)\n\
         ring x, y;\nI = x^2, x*y, y^2;\nJ = x^3, y^3;\n\
         type x: (2, 4, 20)\ntype y: (7, 10, 30)\n"
    );
}

#[test]
fn canon_output_is_a_valid_input() {
    let o = mcanon(&["canon", &input("ex_factor_three_vars.txt")]);
    let text: String = stdout(&o)
        .lines()
        .skip(1)
        .take(3)
        .map(|l| format!("{l}\n"))
        .collect();
    let dir = TempDir::new().unwrap();
    let again = mcanon(&["canon", write(&dir, &text).to_str().unwrap()]);
    assert_eq!(stdout(&again).lines().next(), stdout(&o).lines().next());
    assert!(stdout(&again).contains("type x: (1, 2, 3, 4)"));
}

#[test]
fn type_lists_every_variable() {
    let o = mcanon(&["type", &input("ex_single_ideal.txt")]);
    assert_eq!(stdout(&o), "x: (3, 4)\ny: (7)\n");
}

#[test]
fn depth_and_sdepth_of_big_exponent_example() {
    let path = input("timings_big_exponents.txt");
    let d = mcanon(&["depth", &path]);
    assert_eq!(stdout(&d), "depth = 1\npd = 2\n");
    let raw = mcanon(&["depth", "--no-canon", "--field", "p32003", &path]);
    assert_eq!(stdout(&raw), "depth = 1\npd = 2\n");
    let s = mcanon(&["sdepth", &path]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).starts_with("sdepth = 2\n"));
}

#[test]
fn sdepth_certificate_for_the_maximal_ideal() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ring x, y;\nI = x, y;\n");
    let o = mcanon(&["sdepth", path.to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "sdepth = 1\ny * K[y]\nx * K[x]\nx*y * K[x, y]\n"
    );
}

#[test]
fn json_output_is_one_object() {
    let o = mcanon(&["--json", "sdepth", &input("ex_single_ideal.txt")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["input"], "(x^2, x*y)");
    let o = mcanon(&["--json", "depth", &input("ex_single_ideal.txt")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["depth"], 1);
}

#[test]
fn check_passes_on_examples_and_random_instances() {
    let o = mcanon(&["check", &input("ex_factor_three_vars.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS "));
    let o = mcanon(&["--json", "check", "--random", "3", "4", "20", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 20);
}

#[test]
fn bench_reports_box_volumes() {
    let o = mcanon(&[
        "bench",
        "--only",
        "depth",
        &input("timings_big_exponents.txt"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["raw_box_volume"], 262_701);
    assert_eq!(v["canonical_box_volume"], 27);
    assert_eq!(v["measurements"][0]["raw"]["value"], 1);
    assert_eq!(v["measurements"][0]["canonical"]["value"], 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "ring x, y;\nI = x^2, z;\n");
    let o = mcanon(&["canon", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:"));

    let equal = dir.path().join("eq.txt");
    std::fs::write(&equal, "ring x;\nI = x;\nJ = x;\n").unwrap();
    assert_eq!(
        mcanon(&["depth", equal.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        mcanon(&["depth", "--field", "p4", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(mcanon(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        mcanon(&["canon", "/nonexistent/file"]).status.code(),
        Some(1)
    );

    let raw = input("timings_big_exponents.txt");
    let o = mcanon(&["sdepth", "--no-canon", "--budget", "1000", &raw]);
    assert_eq!(o.status.code(), Some(3));
    let o = mcanon(&["depth", "--no-canon", "--box-cap", "1000", &raw]);
    assert_eq!(o.status.code(), Some(3));
}
