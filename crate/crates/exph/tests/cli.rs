use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn exph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exph"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn unit_square_has_one_loop() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "square.csv", "0,0\n1,0\n1,1\n0,1\n");
    let o = exph(&["barcode", &pts, "--oracle-check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "{\"dims\":{\"0\":[[0.0,1.0],[0.0,1.0],[0.0,1.0],[0.0,\"inf\"]],\"1\":[[1.0,1.4142135623730951]],\"2\":[[1.4142135623730951,\"inf\"]]},\"field\":2}\n"
    );
    let o = exph(&[
        "barcode",
        &pts,
        "--format",
        "csv",
        "--max-dim",
        "1",
        "--field",
        "7",
    ]);
    assert!(
        stdout(&o).starts_with("dim,birth,death\n0,0.0,1.0\n"),
        "{}",
        stdout(&o)
    );
    assert!(stdout(&o).contains("\n1,1.0,inf\n"), "{}", stdout(&o));
}

#[test]
fn composite_modulus_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "p.csv", "0,0\n1,0\n");
    let o = exph(&["barcode", &pts, "--field", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modulus must be prime"));
}

#[test]
fn usage_errors() {
    assert_eq!(exph(&[]).status.code(), Some(1));
    assert_eq!(exph(&["barcode"]).status.code(), Some(1));
    assert_eq!(exph(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(exph(&["--help"]).status.code(), Some(0));
    assert_eq!(exph(&["barcode", "missing.csv"]).status.code(), Some(2));
}

#[test]
fn complex_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(
        dir.path(),
        "k.json",
        r#"{"simplices":[{"v":[0],"f":0},{"v":[1],"f":0.5},{"v":[0,1],"f":2}]}"#,
    );
    let o = exph(&["barcode", &k, "--oracle-check"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "{\"dims\":{\"0\":[[0.0,\"inf\"],[0.5,2.0]],\"1\":[]},\"field\":2}\n"
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"simplices":[{"v":[0,1],"f":0}]}"#,
    );
    assert_eq!(exph(&["barcode", &bad]).status.code(), Some(2));
}

#[test]
fn basis_dump_is_a_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "tri.csv", "0,0\n1,0\n0,1\n");
    let dump = dir.path().join("P.txt");
    let o = exph(&[
        "barcode",
        &pts,
        "--no-reduce",
        "--dump-basis",
        dump.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("# cell")).count(), 7);
    assert!(text.contains("\n7 7 2\n"));
}

#[test]
fn lu_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "3 3 5\n0 0 1\n1 1 1\n2 2 1\n");
    let out = dir.path().join("out");
    let o = exph(&["lu", &a, "--out-dir", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "rank 3\n");
    for name in ["L.txt", "D.txt", "U.txt"] {
        assert_eq!(
            fs::read_to_string(out.join(name)).unwrap(),
            "3 3 5\n0 0 1\n1 1 1\n2 2 1\n"
        );
    }
}

#[test]
fn morse_collapses_a_filled_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k = write(
        dir.path(),
        "k.json",
        r#"{"simplices":[{"v":[0],"f":0},{"v":[1],"f":0},{"v":[2],"f":0},{"v":[0,1],"f":0},{"v":[0,2],"f":0},{"v":[1,2],"f":0},{"v":[0,1,2],"f":0}]}"#,
    );
    let o = exph(&["morse", &k]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 1);
    assert_eq!(v["cells"][0]["dim"], 0);
}

#[test]
fn jordan_of_a_single_block() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.txt", "2 2 3\n0 1 1\n");
    let o = exph(&["jordan", &t]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("# pair")).count(), 1);
    assert!(!text.contains("# essential"));
    let bad = write(dir.path(), "bad.txt", "2 2 3\n0 1 1\n1 0 1\n");
    assert_eq!(exph(&["jordan", &bad]).status.code(), Some(3));
}

#[test]
fn seeds_give_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(
        dir.path(),
        "grid.csv",
        "0,0\n1,0\n2,0\n0,1\n1,1\n2,1\n0,2\n1,2\n2,2\n",
    );
    let outs: Vec<String> = ["1", "2", "3"]
        .iter()
        .map(|s| stdout(&exph(&["barcode", &pts, "--seed", s, "--field", "3"])))
        .collect();
    assert!(outs.iter().all(|o| o == &outs[0]));
    assert_eq!(outs[0], stdout(&exph(&["barcode", &pts, "--field", "3"])));
}
