use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn socode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_socode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("socode-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn path(dir: &Path, file: &str) -> String {
    dir.join(file).to_string_lossy().into_owned()
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let p = path(dir, file);
    std::fs::write(&p, text).unwrap();
    p
}

fn m11(dir: &Path, degree: usize) -> String {
    let p = path(dir, &format!("m11_{degree}.txt"));
    assert!(socode(&["group", "m11", &degree.to_string(), "--out", &p]).status.success());
    p
}

#[test]
fn group_info_reports_order() {
    let dir = scratch("info");
    let o = socode(&["group", "info", &m11(&dir, 11)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("order 7920"));
}

#[test]
fn generator_free_group_is_trivial() {
    let dir = scratch("trivial");
    let g = write(&dir, "g.txt", "degree 5\n");
    assert!(stdout(&socode(&["group", "info", &g])).contains("order 1"));
}

#[test]
fn pair_action_has_degree_55() {
    let dir = scratch("subsets");
    let out = path(&dir, "g55.txt");
    assert!(socode(&["group", "subsets", &m11(&dir, 11), "2", "--out", &out]).status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("degree 55\n"));
    assert!(stdout(&socode(&["group", "info", &out])).contains("order 7920"));
}

#[test]
fn search_lists_table_designs() {
    let dir = scratch("search");
    let s22 = stdout(&socode(&["design", "search", &m11(&dir, 22)]));
    assert!(s22.contains("Case1 1-(22,20,10) b=11"));
    assert!(s22.contains("Case1 1-(22,2,1) b=11"));
    let s66 = stdout(&socode(&["design", "search", &m11(&dir, 66)]));
    assert!(s66.contains("Case3 1-(66,21,21)"));
    assert_eq!(s66, stdout(&socode(&["design", "search", &m11(&dir, 66)])));
}

#[test]
fn classify_flags_mixed_parity() {
    let dir = scratch("classify");
    let d = write(&dir, "d.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let o = socode(&["design", "classify", &d]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("non-constant parity"));
}

#[test]
fn incidence_code_of_22_point_design() {
    let dir = scratch("code");
    let g = m11(&dir, 22);
    let d = path(&dir, "d.txt");
    assert!(socode(&["design", "build", &g, "--orbits", "2", "--out", &d]).status.success());
    let c = path(&dir, "c.txt");
    let o = socode(&["code", "from-design", &d, "--q", "2", "--out", &c]);
    assert!(stdout(&o).contains("[22,10,4]_2 SO=true"));
    let a = stdout(&socode(&["analyze", &c]));
    assert!(a.contains("self-orthogonal true"));
    assert!(a.contains("weights 0:1 4:55 8:330 12:462 16:165 20:11"));
}

#[test]
fn odd_characteristic_report() {
    let dir = scratch("gf3");
    let d = write(&dir, "d.txt", "4 4\n0\n1\n2\n3\n");
    let o = socode(&["code", "from-design", &d, "--q", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("field 3^2"), "{text}");
    assert!(text.contains("self-dual=true"));
}

#[test]
fn wrong_theorem_is_a_precondition_failure() {
    let dir = scratch("tag");
    let g = m11(&dir, 22);
    let d = path(&dir, "d.txt");
    socode(&["design", "build", &g, "--orbits", "2", "--out", &d]);
    let o = socode(&["code", "from-design", &d, "--theorem", "T2.1.2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not apply"));
}

#[test]
fn orbit_matrix_under_order_eleven() {
    let dir = scratch("orbitmat");
    let d = write(&dir, "d.txt", &format!("11 11\n{}", (0..11).map(|i| format!("{} {} {}\n", i, (i + 1) % 11, (i + 3) % 11)).collect::<String>()));
    let h = write(&dir, "h.txt", "degree 11\n(1,2,3,4,5,6,7,8,9,10,11)\n");
    let o = socode(&["orbitmat", &d, &h]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 1 11 | 11 | 11\n3\n");
}

#[test]
fn reproduce_table_12() {
    let o = socode(&["reproduce", "t12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for code in ["[6,2,4]", "[8,4,2]", "[6,3,2]"] {
        assert!(text.contains(&format!("got={code}")));
    }
    assert!(text.ends_with("PASS t12\n"));
}

#[test]
fn reproduce_mismatch_exits_3() {
    let o = socode(&["reproduce", "t1-small", "--budget", "16"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL t1-small"));
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(socode(&["reproduce", "t99"]).status.code(), Some(1));
}

#[test]
fn usage_exit_codes() {
    assert_eq!(socode(&["--help"]).status.code(), Some(0));
    assert_eq!(socode(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(socode(&["code", "from-design", "missing.txt"]).status.code(), Some(1));
}
