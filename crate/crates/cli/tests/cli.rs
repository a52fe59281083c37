use std::fs;
use std::process::{Command, Output};

fn dgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgl"))
        .args(args)
        .output()
        .expect("run dgl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn count_csv() {
    let o = dgl(&["count", "--poly", "x1^2 - 2*x2^2 - 1", "-B", "10000", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "B,count,sz_bound,elapsed_ms\n10000,22,40002,0\n");
}

#[test]
fn count_projective_json() {
    let o = dgl(&["count", "--poly", "x1^2 + x2^2 - 2*x3^2", "-B", "1", "--projective"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "dgl/1");
    assert_eq!(v["records"][0]["count"], 4);
}

#[test]
fn sweep_is_byte_identical_and_honours_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"B_list":[3,6,12],"seed":9,"workers":2}"#).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = dgl(&[
            "sweep",
            "--poly",
            "x1^3 + x2^3 + x3^3 - 1",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    let bs: Vec<u64> = v["records"].as_array().unwrap().iter().map(|r| r["B"].as_u64().unwrap()).collect();
    assert_eq!(bs, vec![3, 6, 12]);
    assert!(stdout(&dgl(&["sweep", "--random", "3,2,4", "--seed", "5", "-B", "3"]))
        == stdout(&dgl(&["sweep", "--random", "3,2,4", "--seed", "5", "-B", "3"])));
}

#[test]
fn poly_file_and_factor() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.txt");
    fs::write(&p, "x1^4 + 1\n").unwrap();
    let o = dgl(&["factor", "--poly-file", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["irreducible"], true);
    let o = dgl(&["factor", "--poly", "x1^2 - 2*x2^2", "--absolute"]);
    assert_eq!(json(&o)["absolutely_irreducible"], false);
}

#[test]
fn lines_ncc_aux_hilbert() {
    let o = dgl(&["lines", "--poly", "x1^3 + x2^3 + x3^3 - 1", "--height", "4"]);
    assert_eq!(json(&o)["lines"].as_array().unwrap().len(), 3);
    let o = dgl(&["ncc", "--poly", "(x1 + x2)^2 + x3"]);
    let v = json(&o);
    assert_eq!(v["ncc"], false);
    assert!(v["certificate"].is_object());
    let o = dgl(&["aux", "--poly", "x1 - x2^2", "-B", "2"]);
    assert_eq!(json(&o)["min_degree"], 2);
    let o = dgl(&["hilbert", "--poly", "x2^2 - x1", "--B-list", "100,10000", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("B,count,bound_value,elapsed_ms\n100,11,"));
    assert!(text.contains("\n10000,101,"));
}

#[test]
fn exit_codes() {
    let o = dgl(&["curve-sweep", "--poly", "x1*x2 - 1", "-B", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dgl(&["count", "--poly", "x1 +* x2", "-B", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dgl(&["sweep", "--random", "2,1,3", "--constraints", "top-form-2-irreducible", "-B", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = dgl(&["ncc", "--poly", "x1^3 + x2^3 + x3^3 + x4^3", "--slice-r", "2", "--height", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = dgl(&["factor", "--poly", "x1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dgl(&["sweep", "--poly", "x1 - x2", "--B-list", "5,3"]);
    assert_eq!(o.status.code(), Some(2));
}
