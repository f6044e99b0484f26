use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mha(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mha"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const C2: &str = "mha-spec v1
# group algebra of C2
dim 2
basis e s
m 0 0 0 1
m 0 1 1 1
m 1 0 1 1
m 1 1 0 1
d 0 0 0 1
d 1 1 1 1
";

#[test]
fn classify_c2_json() {
    let o = mha(&["--format", "json", "classify", "-"], Some(C2));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"verdict\":\"hopf\""));
}

#[test]
fn construct_c2_reports_counit_and_identity_antipode() {
    let o = mha(&["--format", "json", "construct", "-"], Some(C2));
    let s = stdout(&o);
    assert!(s.contains("\"epsilon\":{\"as\":\"e* + s*\",\"coords\":[\"1\",\"1\"]}"), "{s}");
    assert!(s.contains("\"matrix_rows\":[[\"1\",\"0\"],[\"0\",\"1\"]]"), "{s}");
}

#[test]
fn monoid_text_names_violated_definition() {
    let o = mha(&["classify", "catalog:monoid-bialgebra"], None);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("verdict: not_hopf"));
    assert!(s.contains("reason: no faithful left integral"));
    assert!(s.contains("violates: faithful functional"));
}

#[test]
fn h4_routes_agree() {
    for route in ["integral", "cointegral", "both"] {
        let o = mha(&["classify", "catalog:sweedler-h4", "--route", route], None);
        assert_eq!(o.status.code(), Some(0), "{route}");
        assert!(stdout(&o).contains("verdict: hopf"), "{route}");
    }
    let s = stdout(&mha(&["classify", "catalog:sweedler-h4"], None));
    assert!(s.contains("antipode_identical: true"));
}

#[test]
fn invalid_input_exits_2_with_line() {
    let bad = C2.replace("m 0 0 0 1", "m 0 0 5 1");
    let o = mha(&["check", "-"], Some(&bad));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    let o = mha(&["check", "/nonexistent/file.mha"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_export_round_trips_through_cli() {
    let list = stdout(&mha(&["catalog"], None));
    for name in list.lines() {
        let spec = stdout(&mha(&["catalog", name], None));
        let o = mha(&["check", "-"], Some(&spec));
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
}

#[test]
fn side_options() {
    let s = stdout(&mha(&["integrals", "catalog:sweedler-h4", "--side", "left"], None));
    assert!(s.contains("[left_integrals]") && !s.contains("[right_integrals]"));
    let s = stdout(&mha(&["cointegrals", "catalog:sweedler-h4", "--side", "right"], None));
    assert!(s.contains("-x + gx"));
}

#[test]
fn kg_suite_passes_and_is_deterministic() {
    for group in ["z", "z2", "dihedral"] {
        let a = mha(&["--format", "json", "kg", "--group", group, "--seed", "5"], None);
        let b = mha(&["--format", "json", "kg", "--group", group, "--seed", "5"], None);
        assert_eq!(a.status.code(), Some(0), "{group}");
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).contains("\"seed\":5"));
    }
}

#[test]
fn reports_are_byte_identical() {
    for cmd in ["check", "integrals", "cointegrals", "construct", "classify"] {
        let a = mha(&[cmd, "catalog:functions-s3"], None);
        let b = mha(&[cmd, "catalog:functions-s3"], None);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}
