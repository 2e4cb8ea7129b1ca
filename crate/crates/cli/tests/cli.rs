use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hdts::hdts::{cube, iso_check};
use hdts::json::{hdts_from_str, precube_from_str};
use hdts::label::word;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hdts-cli"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_fixtures_match_emitted_ones() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["fixtures", "emit", "--dir", path(dir.path())]).status.success());
    let mut names: Vec<String> =
        fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 9);
    for n in names {
        let fresh = fs::read_to_string(dir.path().join(&n)).unwrap();
        let shipped = fs::read_to_string(fixture(n.trim_end_matches(".json"))).unwrap();
        assert_eq!(fresh, shipped, "{n}");
        if n != "alphabet.json" {
            let again = run(&["export", "--format", "json", path(&dir.path().join(&n))]);
            assert_eq!(stdout(&again), fresh, "{n} does not round-trip");
        }
    }
    let list = stdout(&run(&["fixtures", "list"]));
    assert_eq!(list.lines().count(), 8);
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", path(&fixture("Da"))]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    assert_eq!(r["csa1"], false);
    assert_eq!(r["uisa"], true);
    assert_eq!(r["witnesses"][0]["axiom"], "csa1");

    let o = run(&["check", path(&fixture("cube_ab")), "--alphabet", path(&fixture("alphabet"))]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(
        (r["strong"].clone(), r["hda"].clone(), r["csa1"].clone(), r["uisa"].clone()),
        (true.into(), true.into(), true.into(), true.into())
    );

    let o = run(&["check", path(&fixture("notstrong"))]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["uisa"], false);
    assert_eq!(json(&o)["hda"], true);

    assert_eq!(run(&["check", path(&fixture("cube_ab_hdts"))]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"states":[0,1],"actions":[{"id":0,"label":"a"},{"id":1,"label":"a"}],"transitions":[{"src":0,"acts":[1,0],"tgt":1}]}"#).unwrap();
    let o = run(&["check", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("transitions[0].acts"));

    assert_eq!(run(&["check", path(&dir.path().join("missing.json"))]).status.code(), Some(2));
    assert_eq!(run(&["check", path(&fixture("alphabet"))]).status.code(), Some(2));

    let tiny = dir.path().join("tiny.json");
    fs::write(&tiny, r#"{"labels":["a","tau"],"tau":"tau"}"#).unwrap();
    assert_eq!(run(&["check", path(&fixture("notstrong")), "--alphabet", path(&tiny)]).status.code(), Some(2));
    let o = run(&["ccs", "compile", "b.nil", "--alphabet", path(&tiny)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown label"));
}

#[test]
fn realize_outputs() {
    let x = hdts_from_str(&stdout(&run(&["realize", path(&fixture("cube_ab"))]))).unwrap();
    assert!(iso_check(&x, &cube(&word(&["a", "b"]))).is_some());
    let x = hdts_from_str(&stdout(&run(&["realize", path(&fixture("doublesquare"))]))).unwrap();
    assert!(iso_check(&x, &cube(&word(&["a", "b"]))).is_some());
    let o = run(&["realize", path(&fixture("notstrong"))]);
    let x = hdts_from_str(&stdout(&o)).unwrap();
    assert!(!hdts::hdts::validate(&x).uisa);
}

#[test]
fn cubify_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["cubify", path(&fixture("cube_ab_hdts")), "--out-dir", path(dir.path())]);
    assert!(o.status.success());
    assert_eq!(json(&o)["p_iso"], true);

    let o = run(&["cubify", path(&fixture("span_glued")), "--out-dir", path(dir.path())]);
    assert_eq!(json(&o)["states_bijective"], true);
    let x = hdts_from_str(&fs::read_to_string(dir.path().join("cubx.json")).unwrap()).unwrap();
    assert_eq!((x.states().len(), x.actions().len(), x.transitions().len()), (4, 2, 2));
    let k = precube_from_str(&fs::read_to_string(dir.path().join("cubpre.json")).unwrap()).unwrap();
    assert_eq!((k.count(0), k.count(1)), (4, 2));

    run(&["cubify", path(&fixture("lonely_action")), "--out-dir", path(dir.path())]);
    let x = hdts_from_str(&fs::read_to_string(dir.path().join("cubx.json")).unwrap()).unwrap();
    assert!(x.states().is_empty() && x.actions().is_empty());
}

#[test]
fn dot_exports() {
    let d = stdout(&run(&["export", path(&fixture("cube_ab"))]));
    assert_eq!(d.lines().filter(|l| l.contains("->")).count(), 4);
    assert_eq!(d.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 4);

    let d = stdout(&run(&["export", path(&fixture("sync_pair")), "--alphabet", path(&fixture("alphabet"))]));
    assert_eq!(d.matches("dashed").count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"dims":{}}"#).unwrap();
    let out = dir.path().join("empty.dot");
    assert!(run(&["export", path(&empty), "-o", path(&out)]).status.success());
    assert_eq!(fs::read_to_string(out).unwrap(), "digraph precube {\n}\n");
}

#[test]
fn ccs_compile() {
    let alpha = fixture("alphabet");
    let o = run(&["ccs", "compile", "a.nil || abar.nil", "--alphabet", path(&alpha)]);
    assert!(o.status.success());
    let k = precube_from_str(&stdout(&o)).unwrap();
    assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 5, 2));

    let d = stdout(&run(&["ccs", "compile", "(nu a) (a.nil || a^-.nil)", "--alphabet", path(&alpha), "--out", "dot"]));
    assert_eq!(d.matches("->").count(), 1);
    assert_eq!(d.matches("dashed").count(), 1);

    let o = run(&["ccs", "compile", "rec(x) a.x", "--alphabet", path(&alpha), "--unfold", "3"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated"));
    assert_eq!(precube_from_str(&stdout(&o)).unwrap().count(1), 3);

    assert_eq!(run(&["ccs", "compile", "rec(x) x", "--alphabet", path(&alpha)]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let alpha = fixture("alphabet");
    let args = ["ccs", "compile", "(a.nil + b.nil) || abar.nil", "--alphabet", path(&alpha)];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let ns = fixture("notstrong");
    let args = ["realize", path(&ns)];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
