use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hexmosaic"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_stats() {
    let f = scratch("l4.txt");
    ok(&["generate", "lr", "-r", "4", "-o", path(&f)]);
    let s = ok(&["stats", path(&f)]);
    for line in ["crossings 57", "components 3", "alternating true", "reduced true", "saturated true", "delta 21"] {
        assert!(s.lines().any(|l| l == line), "missing {line} in\n{s}");
    }
    assert_eq!(ok(&["validate", path(&f)]).trim(), "valid");
}

#[test]
fn generate_to_stdout_is_reproducible() {
    let a = ok(&["generate", "ar", "-r", "5"]);
    assert_eq!(a, ok(&["generate", "ar", "-r", "5"]));
    assert!(a.starts_with("hexmosaic 1\nradius 5\n"));
}

#[test]
fn flypes_on_lifted_k4() {
    let f = scratch("k4.pd");
    ok(&["generate", "kr", "-r", "4", "--lifted", "-o", path(&f)]);
    let s = ok(&["flypes", path(&f), "--list"]);
    // one family more than the nine the count 3r-3 predicts
    assert!(s.starts_with("sites 10\n"), "{s}");
    assert_eq!(s.lines().count(), 11);
    let out = scratch("k4-flyped.pd");
    ok(&["flypes", path(&f), "--apply", "0", "-o", path(&out)]);
    let s = ok(&["stats", path(&out)]);
    assert!(s.contains("crossings 49\n") && s.contains("delta 14\n"), "{s}");
    assert!(s.contains("saturated n/a"));
}

#[test]
fn flype_closure_of_k3() {
    let f = scratch("k3.pd");
    ok(&["generate", "kr", "-r", "3", "--lifted", "-o", path(&f)]);
    let s = ok(&["flypes", path(&f), "--closure", "--limit", "1024"]);
    assert!(s.contains("reachable 64\n") && s.contains("truncated false"), "{s}");
}

#[test]
fn dual_and_dot() {
    let f = scratch("l3.txt");
    let dot = scratch("l3.dot");
    ok(&["generate", "lr", "-r", "3", "-o", path(&f)]);
    let s = ok(&["dual", path(&f), "--dot", path(&dot)]);
    assert!(s.contains("exterior_degree 12\n"), "{s}");
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph dual {") && text.contains("exterior=true"));
}

#[test]
fn complement_lprime_lhat() {
    let f = scratch("l5.txt");
    ok(&["generate", "lr", "-r", "5", "-o", path(&f)]);
    assert_eq!(ok(&["complement", path(&f)]), "arcs 0\nloops 0\n");
    let lp = scratch("l5p.txt");
    let lh = scratch("l5h.txt");
    ok(&["lprime", path(&f), "-o", path(&lp)]);
    ok(&["lhat", path(&f), "-o", path(&lh)]);
    let orig = std::fs::read_to_string(&f).unwrap();
    assert_eq!(std::fs::read_to_string(&lp).unwrap(), orig);
    assert!(ok(&["stats", path(&lh)]).contains("crossings 111\n"));
}

#[test]
fn render_and_export() {
    let f = scratch("l2.txt");
    let svg = scratch("l2.svg");
    ok(&["generate", "lr", "-r", "2", "-o", path(&f)]);
    ok(&["render", path(&f), "-o", path(&svg), "--complement"]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 7);
    assert!(text.contains("data-crossings=\"3\""));
    let pd = ok(&["export-pd", path(&f)]);
    assert!(pd.starts_with("PD[X["));
    let p = scratch("l2.pd");
    std::fs::write(&p, &pd).unwrap();
    let svg2 = scratch("l2pd.svg");
    ok(&["render", path(&p), "-o", path(&svg2)]);
    assert!(std::fs::read_to_string(&svg2).unwrap().contains("data-crossings=\"3\""));
}

#[test]
fn verify_small_radius() {
    let o = run(&["verify", "--max-radius", "3"]);
    let s = stdout(&o);
    assert!(s.lines().next().unwrap().contains("expected computed"));
    // at radius 3 only the K_3 closure row is off
    let failing: Vec<&str> = s.lines().filter(|l| l.ends_with("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{s}");
    assert!(failing[0].contains("K_3 closure"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "lr"]).status.code(), Some(2));
    assert_eq!(run(&["stats", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "ar", "-r", "3"]).status.code(), Some(1));
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "hexmosaic 1\nradius 3\n0 0 9 0\n").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
}
