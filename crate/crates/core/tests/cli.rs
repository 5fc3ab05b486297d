use std::fs;
use std::path::PathBuf;

use dcpo::cli::run;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("dcpo-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let path = self.0.join(name);
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn dcpo(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("dcpo").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

const DIAMOND: &str = "poset\nelements: bot a b top\ncovers: bot<a bot<b a<top b<top\n";

#[test]
fn check_and_dot() {
    let s = Scratch::new("check");
    let p = s.file("d.poset", DIAMOND);
    let (code, out) = dcpo(&["check", &p]);
    assert_eq!(code, 0);
    assert_eq!(out, "elements: 4\ncovers: 4\npointed: yes\nlattice: yes\n");
    let (code, out) = dcpo(&["check", &p, "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph poset {") && out.contains("\"a\" -> \"top\";"));
}

#[test]
fn waybelow_verdicts() {
    let s = Scratch::new("wb");
    let p = s.file("d.poset", DIAMOND);
    assert_eq!(dcpo(&["waybelow", &p, "a", "top"]), (0, "true\n".into()));
    let (code, out) = dcpo(&["waybelow", &p, "a", "b"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("false\ncounterexample:"));
    assert_eq!(dcpo(&["waybelow", &p, "a", "nope"]).0, 2);
}

#[test]
fn compacts_and_basis_check() {
    let s = Scratch::new("basis");
    let p = s.file("d.poset", DIAMOND);
    assert_eq!(dcpo(&["compacts", &p]), (0, "{bot,a,b,top}\n".into()));
    assert_eq!(dcpo(&["basis-check", &p, "--compact"]), (0, "valid\n".into()));
    let partial = s.file("b.map", "basismap\nmap: x=bot y=a\n");
    let (code, out) = dcpo(&["basis-check", &p, "--basis", &partial]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid\ncounterexample: at b:"), "{out}");
    let broken = s.file("c.map", "basismap\nmap: x=nowhere\n");
    assert_eq!(dcpo(&["basis-check", &p, "--basis", &broken]).0, 2);
}

#[test]
fn interpolation() {
    let s = Scratch::new("interp");
    let p = s.file("d.poset", DIAMOND);
    assert_eq!(dcpo(&["interpolate", &p, "a", "top"]), (0, "a -> a\n".into()));
    assert_eq!(
        dcpo(&["interpolate", &p, "a", "top", "--also", "b"]),
        (0, "top -> top\n".into())
    );
    assert_eq!(dcpo(&["interpolate", &p, "a", "b"]).0, 1);
}

#[test]
fn ideal_completion_files() {
    let s = Scratch::new("idl");
    let good = s.file("g.basis", "basis\nelements: a b\nrel: a<a a<b b<b\n");
    let (code, out) = dcpo(&["idl", &good]);
    assert_eq!(code, 0);
    assert!(out.starts_with("poset\nelements:"));
    let bad = s.file("b.basis", "basis\nelements: a b c\nrel: a<b b<c\n");
    let (code, out) = dcpo(&["idl", &bad]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid basis\ncounterexample:"));
    let garbage = s.file("x.basis", "basis\nelements: a\nrel: a\n");
    assert_eq!(dcpo(&["idl", &garbage]).0, 2);

    let p = s.file("d.poset", DIAMOND);
    assert_eq!(dcpo(&["idl-iso", &p]), (0, "continuous: iso\nalgebraic: pass\n".into()));
}

#[test]
fn exponential_and_step_basis() {
    let s = Scratch::new("exp");
    let two = s.file("two.poset", "poset\nelements: 0 1\ncovers: 0<1\n");
    let (code, out) = dcpo(&["exp", &two, &two]);
    assert_eq!(code, 0);
    assert!(out.contains("elements: [0,0] [0,1] [1,1]"), "{out}");
    let (code, out) = dcpo(&["exp", &two, &two, "--step-basis"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("compact basis: valid\n"));
}

#[test]
fn tower_report_and_limits() {
    let s = Scratch::new("tower");
    let path = s.0.join("report.txt");
    let path = path.to_string_lossy().into_owned();
    let (code, out) = dcpo(&["tower", "--stages", "2", "--report", &path]);
    assert_eq!(code, 0);
    assert!(out.contains("stage_sizes: [2, 3, 10]"), "{out}");
    assert!(out.ends_with("result: pass\n"));
    assert_eq!(fs::read_to_string(&path).unwrap(), out);
    assert_eq!(dcpo(&["tower", "--stages", "3"]).0, 2);
    assert_eq!(dcpo(&["tower", "--stages", "3", "--unsafe-stage-3"]).0, 2);
}

#[test]
fn dyadic_verbs() {
    assert_eq!(dcpo(&["dyadic", "cmp", "L.M", "M"]), (0, "lt\n".into()));
    assert_eq!(dcpo(&["dyadic", "cmp", "R.M", "R.M"]), (0, "eq\n".into()));
    assert_eq!(dcpo(&["dyadic", "cmp", "M", "L.R.M"]), (0, "gt\n".into()));
    assert_eq!(dcpo(&["dyadic", "rat", "R.L.M"]), (0, "1/4\n".into()));
    let (code, out) = dcpo(&["dyadic", "interp", "L.M", "R.M"]);
    assert_eq!(code, 0);
    assert_eq!(out, "M\n");
    assert_eq!(dcpo(&["dyadic", "interp", "R.M", "L.M"]).0, 1);
    assert_eq!(dcpo(&["dyadic", "ideal-member", "principal:M", "L.M"]).0, 0);
    assert_eq!(dcpo(&["dyadic", "ideal-member", "principal:M", "R.M"]).0, 1);
    assert_eq!(dcpo(&["dyadic", "cmp", "Q", "M"]).0, 2);
}

#[test]
fn examples_and_corpus() {
    assert_eq!(
        dcpo(&["example", "sierpinski", "--emit", "poset"]),
        (0, "poset\nelements: bot top\ncovers: bot<top\n".into())
    );
    assert_eq!(
        dcpo(&["example", "sierpinski", "--emit", "basis"]),
        (0, "basismap\nmap: 0=bot 1=top\n".into())
    );
    assert_eq!(dcpo(&["example", "powerset:9", "--emit", "poset"]).0, 2);
    assert_eq!(dcpo(&["example", "nonsense", "--emit", "poset"]).0, 2);
    let a = dcpo(&["corpus", "--seed", "3", "--count", "4", "--max-size", "5"]);
    let b = dcpo(&["corpus", "--seed", "3", "--count", "4", "--max-size", "5"]);
    assert_eq!(a, b);
    assert_eq!(a.1.matches("poset\n").count(), 4);
}

#[test]
fn ind_reflect_of_chain() {
    let s = Scratch::new("ind");
    let p = s.file("c.poset", "poset\nelements: a b\ncovers: a<b\n");
    let (code, out) = dcpo(&["ind-reflect", &p]);
    assert_eq!(code, 0);
    assert!(out.starts_with("poset\n"));
}

#[test]
fn usage_errors() {
    assert_eq!(dcpo(&["frobnicate"]).0, 2);
    assert_eq!(dcpo(&["waybelow"]).0, 2);
    assert_eq!(dcpo(&["check", "/definitely/not/here.poset"]).0, 2);
    let (code, out) = dcpo(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}
