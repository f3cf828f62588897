use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn gen_torus_is_the_braid_presentation() {
    let o = garside(&["gen", "torus", "-p", "2", "-q", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "gens: x1 x2\nrel: x1 x2 x1 = x2 x1 x2\n");
}

#[test]
fn gen_wirtinger_and_complemented_torus() {
    let o = garside(&["gen", "wirtinger", "-p", "3", "-q", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("rel:")).count(), 4);
    let o = garside(&["gen", "torus", "-p", "4", "-q", "6", "--complemented"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("A46.pres")).unwrap());
}

#[test]
fn bad_parameters_exit_2() {
    assert_eq!(garside(&["gen", "torus", "-p", "5", "-q", "3"]).status.code(), Some(2));
    assert_eq!(garside(&["check", "/nonexistent/file.pres"]).status.code(), Some(2));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("truncated.pres");
    std::fs::write(&tmp, "gens: x y\nrel: x y x = ").unwrap();
    assert_eq!(garside(&["check", tmp.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(garside(&["check", &path("braid.pres"), "--max-cells", "0"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    assert_eq!(garside(&["check", &path("A46.pres")]).status.code(), Some(0));
    let o = garside(&["check", &path("W32.pres")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not complemented"));
    assert_eq!(garside(&["check", &path("M022.pres")]).status.code(), Some(1));
    assert_eq!(garside(&["check", &path("A46.pres"), "--max-cells", "3"]).status.code(), Some(3));
}

#[test]
fn check_json_is_deterministic() {
    let args = ["check", &path("W34c.pres"), "--format", "json", "--jobs", "2"];
    let a = stdout(&garside(&args));
    let b = stdout(&garside(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "garside");
    assert_eq!(v["garside_element"], "x1 x4 x7");
}

#[test]
fn lattice_outputs() {
    assert_eq!(stdout(&garside(&["lattice", &path("A46.pres"), "--count"])).trim(), "176");
    let dot = stdout(&garside(&["lattice", &path("braid.pres"), "--dot"]));
    assert!(dot.starts_with("digraph lattice {"));
    assert_eq!(dot.matches("->").count(), 6);
    let json = stdout(&garside(&["lattice", &path("braid.pres"), "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["simples"].as_array().unwrap().len(), 6);
}

#[test]
fn nf_round_trips_through_eq() {
    let o = garside(&["nf", &path("A23.pres"), "-w", "x1 x2 x1^-1"]);
    assert!(o.status.success());
    let nf = stdout(&o);
    assert_eq!(nf.trim(), "x1 x2 ~ x1");
    // the printed form read back as a word
    let (num, den) = nf.trim().split_once('~').unwrap();
    let den_inv: Vec<String> = den
        .split('|')
        .flat_map(|s| s.split_whitespace().rev().map(|g| format!("{g}^-1")).collect::<Vec<_>>())
        .collect();
    let word = format!("{} {}", num.replace('|', " "), den_inv.join(" "));
    let o = garside(&["eq", &path("A23.pres"), "-a", &word, "-b", "x1 x2 x1^-1"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = garside(&["eq", &path("A23.pres"), "-a", "x1 x2", "-b", "x2 x1"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("false", Some(1)));
}

#[test]
fn eq_with_macros_on_mk22() {
    let script = path("M022.let");
    let args = ["eq", &path("M022.pres"), "-a", "x", "-b", "z t^-1 z t^-1 t^-1", "--script", &script];
    assert_eq!(garside(&args).status.code(), Some(1));
    let mut best = args.to_vec();
    best.push("--best-effort");
    let o = garside(&best);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("true", Some(0)));
}

#[test]
fn transducer_exports() {
    let dot = stdout(&garside(&["transducer", &path("braid.pres"), "--dot"]));
    assert_eq!(dot.matches(" / ").count(), 12);
    let json = stdout(&garside(&["transducer", &path("Mchi.pres")]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let states = v["states"].as_array().unwrap().len();
    assert_eq!(v["transitions"].as_array().unwrap().len(), states * 3);
}

#[test]
fn oracle_subcommands() {
    let o = garside(&["oracle", "cancel-witness", &path("W42.pres"), "-L", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["a"], "σ1");
    let o = garside(&["oracle", "cancel-witness", &path("braid.pres"), "-L", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["found"], false);
    let o = garside(&["oracle", "lcm", &path("braid.pres"), "-L", "4", "-u", "x", "-v", "y"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lcm_set"], serde_json::json!(["x y x"]));
    let o = garside(&["oracle", "ball", &path("braid.pres"), "-L", "3", "-w", "y x y"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"]["members"], serde_json::json!(["x y x", "y x y"]));
    let o = garside(&["oracle", "ball", &path("braid.pres"), "-L", "30", "--max-ball", "1000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["lattice", "W34c.pres", "--format", "json"],
        vec!["transducer", "Mchi.pres", "--dot"],
        vec!["nf", "Mchi.pres", "-w", "x y^-1 z z x^-1 y"],
        vec!["oracle", "ball", "Mchi.pres", "-L", "5", "-w", "x z x y"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".pres") { path(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = garside(&args);
        let b = garside(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
