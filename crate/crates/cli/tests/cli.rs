use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ranklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ranklab"))
        .args(args)
        .env_remove("RANKLAB_CAP")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ranklab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn gabidulin_file(name: &str) -> String {
    let path = scratch(name);
    let p = path.to_str().unwrap().to_string();
    let out = ranklab(&["construct", "--family", "gabidulin", "--q", "2", "--n", "3", "--k", "2", "--out", &p]);
    assert!(out.status.success());
    p
}

#[test]
fn construct_then_analyze() {
    let p = gabidulin_file("g.json");
    let v = json(&ranklab(&["analyze", &p]));
    assert_eq!(v["min_distance"], 2);
    assert_eq!(v["mrd"], true);
    assert_eq!(v["rank_distribution"], serde_json::json!(["1", "0", "49", "14"]));
    assert_eq!(v["provenance"]["family"], "gabidulin");
}

#[test]
fn zero_code_is_a_domain_error() {
    let p = gabidulin_file("g0.json");
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    file["basis"] = serde_json::json!([]);
    file["generator"] = Value::Null;
    file["linearity"] = "Fq".into();
    let z = scratch("zero.json");
    std::fs::write(&z, file.to_string()).unwrap();
    let out = ranklab(&["analyze", z.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undefined"));
}

#[test]
fn exit_codes() {
    assert_eq!(ranklab(&["analyze", "--bogus"]).status.code(), Some(2));
    let p = gabidulin_file("g1.json");
    let out = ranklab(&["--cap", "2", "analyze", &p]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 2"));
    let out = ranklab(&["construct", "--family", "twisted", "--twist", "tg", "--q", "2", "--n", "3", "--eta", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));
}

#[test]
fn dual_round_trips() {
    let p = gabidulin_file("g2.json");
    let d = scratch("d.json");
    let dd = scratch("dd.json");
    assert!(ranklab(&["dual", &p, "--out", d.to_str().unwrap()]).status.success());
    assert!(ranklab(&["dual", d.to_str().unwrap(), "--out", dd.to_str().unwrap()]).status.success());
    let v = json(&ranklab(&["analyze", d.to_str().unwrap()]));
    assert_eq!(v["rank_distribution"], serde_json::json!(["1", "0", "0", "7"]));
    let eq = json(&ranklab(&["equiv", &p, dd.to_str().unwrap()]));
    assert_eq!(eq["verdict"], "equivalent");
}

#[test]
fn shorten_and_puncture() {
    let p = gabidulin_file("g3.json");
    let v = json(&ranklab(&["shorten", &p, "--axis", "row", "--vectors", "1,0,0"]));
    assert_eq!(v["m"], 2);
    let s = scratch("s.json");
    std::fs::write(&s, v.to_string()).unwrap();
    let a = json(&ranklab(&["analyze", s.to_str().unwrap()]));
    assert_eq!(a["mrd"], true);
    let v = json(&ranklab(&["puncture", &p, "--axis", "row", "--matrix", "1,0,0;0,1,0;0,0,0"]));
    assert_eq!((v["n"].clone(), v["m"].clone(), v["transposed"].clone()), (3.into(), 2.into(), true.into()));
}

#[test]
fn census_is_deterministic_across_job_counts() {
    let run = |jobs: &str| {
        let mut v = json(&ranklab(&["--jobs", jobs, "census", "--q", "2", "--n", "2", "--m", "3", "--dim", "3", "--d", "2"]));
        v["elapsed_ms"] = Value::Null;
        v["jobs"] = Value::Null;
        v
    };
    let a = run("1");
    assert_eq!(a, run("2"));
    assert_eq!(a["version"], env!("CARGO_PKG_VERSION"));
    assert!(a.get("seed").is_some());
}

#[test]
fn reproduce_small_tables() {
    for t in ["gabidulin", "ubiquity", "schmidt"] {
        let out = ranklab(&["reproduce", "--table", t]);
        assert!(out.status.success(), "{t}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
    }
    assert_eq!(ranklab(&["reproduce", "--table", "nope"]).status.code(), Some(4));
}

#[test]
fn symmetric_commands() {
    let v = json(&ranklab(&["symmetric", "bound", "--q", "3", "--n", "2", "--d", "2", "--additive"]));
    assert_eq!(v["bound"], "9");
    let v = json(&ranklab(&["symmetric", "type", "--q", "3", "--matrix", "0,1;1,0"]));
    assert_eq!(v["rank"], 2);
    let c = scratch("sym.json");
    assert!(ranklab(&["symmetric", "from-commutative", "--q", "3", "--n", "2", "--out", c.to_str().unwrap()]).status.success());
    let a = json(&ranklab(&["analyze", c.to_str().unwrap()]));
    assert_eq!(a["mrd"], true);
    let t = json(&ranklab(&["symmetric", "typedist", c.to_str().unwrap()]));
    assert!(t["text"].as_str().unwrap().starts_with("a0=1"));
}

#[test]
fn convert_vector_to_linpoly() {
    let v = json(&ranklab(&["convert", "--q", "2", "--n", "3", "--from", "vector", "--to", "linpoly", "--value", "1,2,4"]));
    assert_eq!(v["rank"], 3);
    let back = json(&ranklab(&["convert", "--q", "2", "--n", "3", "--from", "linpoly", "--to", "vector", "--value", v["value"].as_str().unwrap()]));
    assert_eq!(back["value"], "1,2,4");
}
