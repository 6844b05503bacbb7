use std::path::Path;
use std::process::{Command, Output};

fn gapsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapsieve"))
        .args(args)
        .env_remove("GAPSIEVE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build_file(dir: &Path, p: u64) -> String {
    let path = dir.join(format!("g{p}.gapc"));
    let path = path.to_str().unwrap().to_string();
    let o = gapsieve(&["build", "--prime", &p.to_string(), "--out", &path]);
    assert!(o.status.success());
    path
}

#[test]
fn build_prints_compact_cycle() {
    let o = gapsieve(&["build", "--prime", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "64242462\n");
    let o = gapsieve(&["build", "--prime", "3"]);
    assert_eq!(stdout(&o), "42\n");
}

#[test]
fn stream_and_memory_files_agree() {
    let dir = tempfile::tempdir().unwrap();
    let mem = build_file(dir.path(), 11);
    let streamed = dir.path().join("s.gapc");
    let o = gapsieve(&["build", "--prime", "11", "--stream", "--out", streamed.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(mem).unwrap(), std::fs::read(streamed).unwrap());
}

#[test]
fn asymptotic_ratio_of_thirty() {
    assert_eq!(stdout(&gapsieve(&["asymptotic", "--gap", "30"])), "8/3\n");
    let o = gapsieve(&["asymptotic", "--gap", "78", "--at-prime", "31", "--decimal"]);
    assert_eq!(stdout(&o), "24/11 2.1818\n");
}

#[test]
fn census_row_from_cache_file() {
    let dir = tempfile::tempdir().unwrap();
    let g13 = build_file(dir.path(), 13);
    let o = gapsieve(&["census", "--cycle", &g13, "--gap", "16", "--max-len", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("16,12,252,750,436,35"));
    let o = gapsieve(&["census", "--cycle", &g13, "--gap", "16"]);
    assert_eq!(stdout(&o), "16,12,252,750,436,35\n");
}

#[test]
fn csv_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g7 = build_file(dir.path(), 7);
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = gapsieve(&[
            "census", "--cycle", &g7, "--gap", "2,6,10", "--csv", out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        std::fs::read_to_string(out).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    assert!(a.starts_with("# gapsieve census\n"));
    assert!(a.contains("\ntarget,j,count,normalized_ratio\n"));
    assert!(!a.contains('\r'));
}

#[test]
fn model_steps_in_csv() {
    let o = gapsieve(&["model", "--prime", "5", "--gap", "6", "--to-prime", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("prime,j,raw_count,ratio\n5,1,2,2/3\n5,2,4,4/3\n7,1,14,14/15\n7,2,16,16/15\n"));
}

#[test]
fn crossover_and_products() {
    let o = gapsieve(&["crossover", "--prime", "13", "--gap-a", "30", "--gap-b", "6"]);
    let root: f64 = stdout(&o).trim().parse().unwrap();
    assert!((root - 0.06275).abs() < 0.0005);
    let o = gapsieve(&["ajk", "--p0", "13", "--pk", "17", "--jmax", "3"]);
    assert_eq!(stdout(&o), "a_2 = 0.93333333333333\na_3 = 0.86666666666667\n");
}

#[test]
fn repetition_weights() {
    assert_eq!(stdout(&gapsieve(&["repetition", "--gap", "30", "--length", "5"])), "8\n");
    let o = gapsieve(&["repetition", "--gap", "6", "--length", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("infeasible"));
}

#[test]
fn attrition_summary() {
    let o = gapsieve(&["attrition", "--prime", "13"]);
    let text = stdout(&o);
    assert!(text.contains("sieving primes: 17 to 173"));
    assert!(text.contains("final: 3243 gaps, largest 52"));
    assert!(text.contains("gap 52 first appears after sieving by 73"));
}

#[test]
fn exit_codes() {
    assert_eq!(gapsieve(&["--help"]).status.code(), Some(0));
    assert_eq!(gapsieve(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gapsieve(&["census", "--cycle", "missing.gapc", "--gap", "2"]).status.code(), Some(1));
    assert_eq!(gapsieve(&["census", "--prime", "5", "--constellation", "2,3"]).status.code(), Some(1));
    assert_eq!(gapsieve(&["build", "--prime", "9"]).status.code(), Some(1));
    assert_eq!(gapsieve(&["asymptotic", "--gap", "7"]).status.code(), Some(1));
    let o = gapsieve(&["ajk", "--p0", "13", "--pk", "100000", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gapsieve(&["naive-error", "--pmin", "13", "--pmax", "17", "--gaps", "2", "--budget", "10", "--csv", "/dev/null"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_shows_defaults() {
    let text = stdout(&gapsieve(&["ajk", "--help"]));
    assert!(text.contains("[default: 9]"));
    assert!(text.contains("[default: 1000000000000]"));
    let text = stdout(&gapsieve(&["naive-error", "--help"]));
    assert!(text.contains("[default: 10000000000]"));
}

#[test]
fn cache_dir_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gapsieve"))
            .args(["--threads", "2", "census", "--prime", "7", "--gap", "2"])
            .env("GAPSIEVE_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(dir.path().join("g7.gapc").exists());
    let second = run();
    assert_eq!(stdout(&first), "2,15\n");
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn reproduce_tables() {
    let o = gapsieve(&["reproduce", "table2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("table2: 160/160 cells pass\n"));
    let o = gapsieve(&["reproduce", "table5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = gapsieve(&["reproduce", "g7-attrition"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(gapsieve(&["reproduce", "table3"]).status.code(), Some(1));
}

#[test]
fn reproduce_attrition_reports_the_count_mismatch() {
    let o = gapsieve(&["reproduce", "fig5"]);
    let text = stdout(&o);
    assert!(text.contains("FAIL fig5 final gap count: got 3243, expected 3245"));
    assert!(text.contains("PASS fig5 largest gap: 52"));
    assert!(text.contains("PASS fig5 gap 52 first appears at: 73"));
    assert_eq!(o.status.code(), Some(1));
}
