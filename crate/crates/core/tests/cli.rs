use std::process::{Command, Output};

fn alg(name: &str) -> String {
    format!("{}/algebras/{name}.alg", env!("CARGO_MANIFEST_DIR"))
}

fn pinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn phantom_of_f_seven() {
    let o = pinf(&["phantom", &alg("example_f"), "--simple", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("finite"), "{s}");
    assert!(s.contains("minimal approximation of S7: 3 <- 6 <- [7]"), "{s}");
}

#[test]
fn cfinite_of_f() {
    let o = pinf(&["cfinite", &alg("example_f")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NOT contravariantly finite; infinite phantoms: S1"));
}

#[test]
fn g_is_refused() {
    let o = pinf(&["phantom", &alg("example_g"), "--simple", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("not a string algebra (special biserial)"), "{err}");
}

#[test]
fn usage_and_file_errors_exit_one() {
    assert_eq!(pinf(&["phantom", &alg("example_f"), "--bogus"]).status.code(), Some(1));
    assert_eq!(pinf(&["classify", "/nonexistent.alg"]).status.code(), Some(1));
    assert_eq!(pinf(&["phantom", &alg("example_f"), "--simple", "99"]).status.code(), Some(1));
}

#[test]
fn a_zero_bound_is_inconclusive() {
    let o = pinf(&["phantom", &alg("example_f"), "--simple", "1", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_command_honours_every_format() {
    let f = alg("example_f");
    let e = alg("example_e");
    let runs: Vec<Vec<&str>> = vec![
        vec!["classify", &f],
        vec!["basis", &f],
        vec!["pdim", &f, "--string", "x1_2 x1_3~"],
        vec!["pdim", &f, "--path", "x6_2 * x8_6"],
        vec!["syzygy", &f, "--string", "x7_6 x8_6~"],
        vec!["phantom", &f, "--simple", "1"],
        vec!["cfinite", &f],
        vec!["findim", &f, "--letters", "4"],
        vec!["findim", &e],
        vec!["approx", &f, "--simple", "7"],
        vec!["approx", &e, "--simple", "1", "--pd", "2"],
        vec!["witness", &f, "--simple", "1", "--letters", "5"],
        vec!["bands", &f, "--max-len", "4", "--degree", "1"],
        vec!["check", &f, "--oracle", "--samples", "10"],
        vec!["render", &f, "--string", "x7_6~ x6_3~"],
    ];
    for args in runs {
        for format in ["text", "dot", "data"] {
            let mut a = args.clone();
            a.extend(["--format", format]);
            let first = pinf(&a);
            assert_eq!(first.status.code(), Some(0), "{a:?}: {}", String::from_utf8_lossy(&first.stderr));
            let out = stdout(&first);
            match format {
                "dot" => assert!(out.starts_with("digraph"), "{a:?}"),
                "data" => assert!(out.contains("\"format\": \"phantom-artifact\""), "{a:?}"),
                _ => assert!(!out.is_empty()),
            }
            assert_eq!(pinf(&a).stdout, first.stdout, "{a:?} is not byte-stable");
        }
    }
}

#[test]
fn render_reads_stored_phantoms() {
    let f = alg("example_f");
    let data = pinf(&["phantom", &f, "--simple", "1", "--format", "data"]).stdout;
    let path = std::env::temp_dir().join(format!("pinf-{}.phantom", std::process::id()));
    std::fs::write(&path, data).unwrap();
    let drawn = pinf(&["render", &f, "--input", path.to_str().unwrap()]);
    let direct = pinf(&["render", &f, "--simple", "1"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(drawn.status.code(), Some(0));
    assert_eq!(drawn.stdout, direct.stdout);
}

#[test]
fn dot_output_parses() {
    let f = alg("example_f");
    let h = alg("example_h");
    let runs: [&[&str]; 5] = [
        &["phantom", &f, "--simple", "1", "--format", "dot"],
        &["phantom", &h, "--simple", "0", "--format", "dot"],
        &["cfinite", &f, "--format", "dot"],
        &["syzygy", &f, "--string", "x7_6 x8_6~", "--format", "dot"],
        &["classify", &f, "--format", "dot"],
    ];
    for args in runs {
        let out = stdout(&pinf(args));
        graphviz_rust::parse(&out).unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}"));
    }
}
