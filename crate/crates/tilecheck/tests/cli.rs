use std::path::PathBuf;
use std::process::{Command, Output};

use tilecheck::cli::exit;
use tilecheck::report::parse_report;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tilecheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn system(name: &str, size: &str) -> Vec<String> {
    vec![
        "--tileset".into(),
        fixture(&format!("{name}.tds")),
        "--seed".into(),
        fixture(&format!("{name}.seed")),
        "--size".into(),
        size.into(),
    ]
}

fn run(cmd: &str, name: &str, size: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd.to_string()];
    args.extend(system(name, size));
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    tilecheck(&refs)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_exit_codes() {
    let o = run("verify", "sierpinski", "50", &["--format", "structured"]);
    assert_eq!(o.status.code(), Some(exit::OK));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("verdict"), Some("UniqueTerminal"));
    assert_eq!(r.get("configurations_evaluated"), Some("2549"));

    let o = run("verify", "ambiguous", "4", &["--format", "structured"]);
    assert_eq!(o.status.code(), Some(exit::NON_UNIQUE_TERMINAL));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.traces.len(), 2);

    let o = run("verify", "hook", "3", &[]);
    assert_eq!(o.status.code(), Some(exit::NOT_RECTILINEAR));
    assert!(stdout(&o).contains("verdict: NotRectilinear"));

    let o = run("verify", "overbinding", "3", &["--strict-paper-rectilinearity"]);
    assert_eq!(o.status.code(), Some(exit::NOT_LOCALLY_DETERMINISTIC));
}

#[test]
fn usage_and_input_errors() {
    let o = tilecheck(&["verify", "--tileset", "/nonexistent/t.tds", "--seed", "/nonexistent/s", "--size", "3"]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
    assert!(!o.stderr.is_empty());

    assert_eq!(tilecheck(&["frobnicate"]).status.code(), Some(exit::USAGE));
    assert_eq!(run("verify", "sierpinski", "0", &[]).status.code(), Some(exit::USAGE));
    assert_eq!(tilecheck(&["--help"]).status.code(), Some(exit::OK));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tds");
    std::fs::write(&bad, "TILENAME a\nNORTHBIND 3\nCREATE\n").unwrap();
    let o = tilecheck(&[
        "verify",
        "--tileset",
        bad.to_str().unwrap(),
        "--seed",
        &fixture("sierpinski.seed"),
        "--size",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:11: error: bind strength out of range {0,1,2}"), "{err}");
}

#[test]
fn modelcheck() {
    let o = run("modelcheck", "sierpinski", "3", &["--formula", "AF terminal"]);
    assert_eq!(o.status.code(), Some(exit::OK));
    assert!(stdout(&o).contains("holds at the initial state: true"));

    let o = run("modelcheck", "sierpinski", "3", &["--formula", "AG !t[3][0][0]"]);
    assert_eq!(o.status.code(), Some(exit::OK));

    let o = run("modelcheck", "sierpinski", "3", &["--formula", "AG !t[5][1][1]", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(exit::FORMULA_FALSE));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("holds"), Some("false"));
    assert_eq!(r.traces[0].label, "counterexample");

    let o = run("modelcheck", "sierpinski", "3", &["--formula", "AF (terminal &"]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));

    let o = run("modelcheck", "sierpinski", "4", &["--formula", "AF terminal", "--state-budget", "10"]);
    assert_eq!(o.status.code(), Some(exit::BUDGET_EXCEEDED));
}

#[test]
fn count() {
    let mut args = vec!["count".to_string()];
    args.extend(system("sierpinski", "3"));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = tilecheck(&refs);
    assert_eq!(o.status.code(), Some(exit::OK));
    assert_eq!(stdout(&o), "formula=19 diamond=19 explicit=19\n");

    let o = tilecheck(&["count", "--size", "20", "--format", "structured"]);
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("formula"), Some("137846528819"));
    assert_eq!(r.get("diamond"), Some("137846528819"));
    assert_eq!(r.get("explicit"), None);
}

#[test]
fn export_smart_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.sm");
    let o = run("export-smart", "sierpinski", "4", &["--model-name", "SierpTri", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("pn SierpTri := {\n"));
    // the only file in the directory is the one asked for
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn simulate_is_reproducible() {
    let a = run("simulate", "sierpinski", "6", &["--rng-seed", "7", "--format", "structured"]);
    let b = run("simulate", "sierpinski", "6", &["--rng-seed", "7", "--format", "structured"]);
    assert_eq!(a.status.code(), Some(exit::OK));
    assert_eq!(a.stdout, b.stdout);
    let r = parse_report(&stdout(&a)).unwrap();
    assert_eq!(r.traces[0].steps.len(), 35);
}

#[test]
fn graph_and_explore() {
    let o = run("graph", "sierpinski", "3", &[]);
    let text = stdout(&o);
    assert!(text.starts_with("states 19\nedges "));
    let edges: usize = text.lines().nth(1).unwrap()["edges ".len()..].parse().unwrap();
    assert_eq!(text.lines().count(), 2 + edges);

    let o = run("explore", "ambiguous", "2", &["--format", "structured"]);
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("terminal"), Some("2"));
}

#[test]
fn native_files_need_no_seed() {
    let tas = fixture("sierpinski.tas");
    let o = tilecheck(&["verify", "--tileset", &tas, "--size", "10"]);
    assert_eq!(o.status.code(), Some(exit::OK));
    let o = tilecheck(&["verify", "--tileset", &tas, "--seed", &fixture("sierpinski.seed"), "--size", "10"]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
    let o = tilecheck(&["verify", "--tileset", &fixture("sierpinski.tds"), "--size", "10"]);
    assert_eq!(o.status.code(), Some(exit::USAGE));
}
