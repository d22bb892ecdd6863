use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn uso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uso")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let o = uso(&["gen", "--model", "oneline", "--shape", "8x8", "--seed", "42", "-o", path_str(&g)]);
    assert_eq!(code(&o), 0);

    // 8 + 8 is above the default exhaustive cap
    assert_eq!(code(&uso(&["validate", path_str(&g)])), 3);
    let o = uso(&["validate", path_str(&g), "--max-sides", "16"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "ok");
}

#[test]
fn gen_single_vertex() {
    let o = uso(&["gen", "--model", "oneline", "--shape", "1x1", "--seed", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["shape"], serde_json::json!([1, 1]));
}

#[test]
fn bad_shapes_exit_2() {
    assert_eq!(code(&uso(&["gen", "--shape", "0x3", "--seed", "1"])), 2);
    assert_eq!(code(&uso(&["gen", "--shape", "3by3"])), 2);
    assert_eq!(code(&uso(&["solve", "--alg", "diagonal", "--model", "oneline", "--shape", "3x4"])), 2);
    assert_eq!(code(&uso(&["solve", "--alg", "rect"])), 2);
    assert_eq!(code(&uso(&["solve", "--alg", "simplex", "--model", "oneline", "--shape", "2x2"])), 2);
}

#[test]
fn gen_is_deterministic() {
    let a = uso(&["gen", "--model", "separable", "--shape", "3x2x4", "--seed", "9"]);
    let b = uso(&["gen", "--model", "separable", "--shape", "3x2x4", "--seed", "9"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = uso(&["gen", "--model", "separable", "--shape", "3x2x4", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn enumerate_counts_and_cap() {
    let o = uso(&["enumerate", "--shape", "2x2", "--count-only"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "12");

    let o = uso(&["enumerate", "--shape", "1x3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 6);

    assert_eq!(code(&uso(&["enumerate", "--shape", "5x5"])), 3);
}

#[test]
fn enumerated_grids_validate() {
    let dir = tempfile::tempdir().unwrap();
    let o = uso(&["enumerate", "--shape", "2x2"]);
    for (i, line) in stdout(&o).lines().enumerate() {
        let p = dir.path().join(format!("{i}.json"));
        fs::write(&p, line).unwrap();
        assert_eq!(code(&uso(&["validate", path_str(&p)])), 0, "{line}");
    }
}

#[test]
fn four_cycle_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cycle.json");
    let cycle = r#"{"shape":[2,2],"edges":[
        {"a":[1,1],"b":[1,2],"dir":"ab"},
        {"a":[1,2],"b":[2,2],"dir":"ab"},
        {"a":[2,1],"b":[2,2],"dir":"ba"},
        {"a":[1,1],"b":[2,1],"dir":"ba"}]}"#;
    fs::write(&p, cycle).unwrap();
    let o = uso(&["validate", path_str(&p)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("violation"));

    // solving it cannot silently succeed
    let o = uso(&["solve", "--alg", "rect", "--grid", path_str(&p)]);
    assert_ne!(code(&o), 0);
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(code(&uso(&["validate", "/nonexistent/grid.json"])), 2);
}

#[test]
fn solve_examples() {
    let o = uso(&["solve", "--alg", "rect", "--model", "oneline", "--shape", "8x13", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["queries"]["vertex"].as_u64().unwrap() <= 20);
    assert_eq!(r["bound"], 20);
    assert_eq!(r["verified"], "ok");
    assert!(r.get("wall_time_ms").is_none());

    let o = uso(&["solve", "--alg", "dc-edge", "--model", "oneline", "--shape", "64x64", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["bound_ok"], true);
    assert_eq!(r["queries"]["vertex"], 0);

    for seed in 0..20 {
        let seed = seed.to_string();
        let o = uso(&["solve", "--alg", "diagonal", "--model", "oneline", "--shape", "2x2", "--seed", &seed]);
        assert!(json(&o)["queries"]["vertex"].as_u64().unwrap() <= 3);
    }
}

#[test]
fn solve_from_file_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let rep = dir.path().join("r.json");
    uso(&["gen", "--model", "enumerate-index", "--shape", "3x3", "--index", "4000", "-o", path_str(&g)]);
    for alg in ["diagonal", "rect", "dc-edge", "ddim", "walk", "random-edge"] {
        let o = uso(&["solve", "--alg", alg, "--grid", path_str(&g), "--report", path_str(&rep)]);
        assert_eq!(code(&o), 0, "{alg}: {}", String::from_utf8_lossy(&o.stderr));
        let r: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
        assert_eq!(r["algorithm"], alg);
        assert_eq!(r["bound_ok"], true);
    }
}

#[test]
fn solve_flags() {
    let base = ["solve", "--alg", "walk", "--model", "oneline", "--shape", "5x6", "--seed", "2"];
    let plain = uso(&base);
    assert_eq!(plain.stdout, uso(&base).stdout);

    let o = uso(&[&base[..], &["--no-verify"]].concat());
    assert_eq!(json(&o)["verified"], "unverified");
    assert_eq!(json(&o)["sink"], json(&plain)["sink"]);

    let o = uso(&[&base[..], &["--timing"]].concat());
    assert!(json(&o)["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn solve_ddim() {
    let o = uso(&["solve", "--alg", "ddim", "--model", "separable", "--shape", "3x3x3", "--seed", "2"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["shape"], serde_json::json!([3, 3, 3]));
    assert_eq!(r["bound"], 15);
    assert_eq!(r["bound_ok"], true);
    assert_eq!(code(&uso(&["solve", "--alg", "rect", "--model", "separable", "--shape", "2x2x2"])), 2);
}

#[test]
fn adversary_meets_the_lower_bound() {
    let o = uso(&["adversary", "--shape", "5x7", "--alg", "rect"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["queries"], 11);
    assert_eq!(r["lower_bound"], 11);
    assert_eq!(r["consistent"], true);

    for alg in ["diagonal", "walk", "random-edge", "ddim"] {
        let o = uso(&["adversary", "--shape", "4x4", "--alg", alg]);
        assert_eq!(code(&o), 0, "{alg}");
        assert!(json(&o)["queries"].as_u64().unwrap() >= 7);
    }
    assert_eq!(code(&uso(&["adversary", "--shape", "4x4", "--alg", "dc-edge"])), 2);
}

#[test]
fn adversary_transcript_is_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.jsonl");
    let o = uso(&["adversary", "--shape", "3x4", "--alg", "rect", "--transcript", path_str(&t)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&t).unwrap();
    assert_eq!(text.lines().count(), 6);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["q"]["kind"], "vertex");
    }
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| {
        uso(&["bench", "--alg", "dc-edge", "--sizes", "16,32,64,128", "--trials", "50", "--csv", path_str(p)])
    };
    assert_eq!(code(&args(&a)), 0);
    assert_eq!(code(&args(&b)), 0);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());

    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alg,m,n,seed,queries_vertex,queries_edge,bound,bound_ok"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r[7] == "true"));
    let keys: Vec<(u64, u64)> = rows.iter().map(|r| (r[2].parse().unwrap(), r[3].parse().unwrap())).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn bench_walk_to_stdout() {
    let o = uso(&["bench", "--alg", "walk", "--sizes", "8", "--trials", "10"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    for row in text.lines().skip(1) {
        let q: u64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!(q <= 64);
    }
}
