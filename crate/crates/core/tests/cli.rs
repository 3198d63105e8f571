use std::path::{Path, PathBuf};

use sfmod::checker::Checker;
use sfmod::cli::run;
use sfmod::sf::{axiom_proof, comprehend, comprehension_axiom};
use sfmod::syntax::parse::parse_theory;
use sfmod::syntax::sexp::{normalize_whitespace, read_all};
use sfmod::syntax::Parser;

fn ex(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

fn sfmod(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("sfmod").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn check_accepts_the_good_witness() {
    let (code, out) = sfmod(&["check", &ex("arith.thy"), &ex("four-even.prf")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("four-even"));
}

#[test]
fn check_rejects_the_bad_witness_with_a_position() {
    let (code, out) = sfmod(&["check", &ex("arith.thy"), &ex("four-even-bad.prf")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("(= 6 4)"), "{out}");
    assert!(out.contains("four-even-bad.prf:5:"), "no line number in {out}");
}

#[test]
fn check_reports_every_file_in_order() {
    let (code, out) = sfmod(&["check", &ex("arith.thy"), &ex("four-even-bad.prf"), &ex("four-even.prf")]);
    assert_eq!(code, 1);
    let bad = out.find("four-even-bad.prf").unwrap();
    let good = out.rfind("four-even.prf").unwrap();
    assert!(bad < good, "{out}");
}

#[test]
fn sexp_check_output_is_readable() {
    let (code, out) = sfmod(&["--output", "sexp", "check", &ex("arith.thy"), &ex("four-even-bad.prf")]);
    assert_eq!(code, 1);
    let forms = read_all(&out).unwrap();
    assert_eq!(forms.len(), 1);
    assert_eq!(forms[0].head(), Some("proof"));
    assert!(out.contains("(failed"));
}

#[test]
fn crabbe_proof_checks_but_does_not_normalize() {
    let (code, out) = sfmod(&["check", &ex("crabbe.thy"), &ex("bot-from-b.prf")]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = sfmod(&["normalize", &ex("crabbe.thy"), "--proof-file", &ex("bot-from-b.prf")]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("loop detected"), "{out}");
    let (code, out) =
        sfmod(&["--history-window", "0", "--fuel", "50", "normalize", &ex("crabbe.thy"), "--proof-file", &ex("bot-from-b.prf")]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("fuel exhausted"), "{out}");
}

#[test]
fn normalize_prop_output_reparses() {
    let (code, out) = sfmod(&[
        "--output",
        "sexp",
        "normalize",
        &ex("sf-basic.thy"),
        "--prop",
        "(in a (sk_e95949ec b c))",
        "--strategy",
        "outermost",
    ]);
    assert_eq!(code, 0, "{out}");
    let forms = read_all(&out).unwrap();
    assert_eq!(forms[0].head(), Some("normal-form"), "{out}");
    let p = Parser::untyped().prop_str(&forms[0].as_list().unwrap()[1].to_string()).unwrap();
    assert_eq!(p.to_string(), "(or (in a b) (in a c))");
}

#[test]
fn stratify_prints_levels_or_refuses() {
    let (code, out) = sfmod(&["stratify", "--prop", "(forall x (forall y (=> (in x y) (in y v))))"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(levels (x 0) (y 1) (v 2))");
    let (code, out) = sfmod(&["stratify", "--prop", "(in x x)"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "unstratifiable");
    let (code, _) = sfmod(&["stratify", "--prop", "(in (f x) y)"]);
    assert_eq!(code, 2);
}

#[test]
fn fuel_must_be_positive() {
    let (code, _) = sfmod(&["--fuel", "0", "stratify", "--prop", "(in x y)"]);
    assert_eq!(code, 2);
}

#[test]
fn unreadable_inputs_exit_2() {
    let (code, out) = sfmod(&["check", "/nonexistent.thy", &ex("four-even.prf")]);
    assert_eq!(code, 2, "{out}");
    let (code, _) = sfmod(&["normalize", &ex("arith.thy"), "--prop", "(= x"]);
    assert_eq!(code, 2);
}

fn scratch_theory(dir: &Path) -> PathBuf {
    let p = dir.join("base.thy");
    std::fs::copy(ex("sf-empty.thy"), &p).unwrap();
    p
}

#[test]
fn comprehend_writes_a_sibling_and_leaves_the_input_alone() {
    let dir = tempfile::tempdir().unwrap();
    let thy = scratch_theory(dir.path());
    let before = std::fs::read_to_string(&thy).unwrap();
    let (code, out) = sfmod(&["comprehend", thy.to_str().unwrap(), "--prop", "(not (in x y))", "--vars", "y x"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(std::fs::read_to_string(&thy).unwrap(), before);

    let written: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p != &thy)
        .collect();
    assert_eq!(written.len(), 1);
    let name = written[0].file_name().unwrap().to_str().unwrap().to_string();
    assert!(name.starts_with("base.sk_") && name.ends_with(".thy"), "{name}");

    // the written theory parses and prints back to itself
    let src = std::fs::read_to_string(&written[0]).unwrap();
    let t = parse_theory(&src).unwrap();
    assert_eq!(t.rules.rules().len(), 1);
    assert_eq!(normalize_whitespace(&sfmod::syntax::parse::print_theory(&t)), normalize_whitespace(&src));
}

#[test]
fn comprehend_refuses_to_overwrite_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let thy = scratch_theory(dir.path());
    let before = std::fs::read_to_string(&thy).unwrap();
    let t = thy.to_str().unwrap();
    let (code, out) = sfmod(&["comprehend", t, "--prop", "(in x y)", "--vars", "y x", "--out", t]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(std::fs::read_to_string(&thy).unwrap(), before);
}

#[test]
fn comprehend_rejects_russell() {
    let dir = tempfile::tempdir().unwrap();
    let thy = scratch_theory(dir.path());
    let (code, out) = sfmod(&["comprehend", thy.to_str().unwrap(), "--prop", "(not (in x x))", "--vars", "x"]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn comprehend_sexp_axiom_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let thy = scratch_theory(dir.path());
    let out_path = dir.path().join("out.thy");
    let (code, out) = sfmod(&[
        "--output",
        "sexp",
        "comprehend",
        thy.to_str().unwrap(),
        "--prop",
        "(forall z (=> (in z x) (in z y)))",
        "--vars",
        "y x",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let forms = read_all(&out).unwrap();
    let fields = forms[0].as_list().unwrap();
    let axiom = fields.iter().find(|f| f.head() == Some("axiom")).unwrap().as_list().unwrap()[1].clone();
    let mut t = parse_theory(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let p = Parser::new(&t.signature).prop_str(&axiom.to_string()).unwrap();

    // comprehending again is a no-op that hands back the certificate
    let body = Parser::new(&t.signature).prop_str("(forall z (=> (in z x) (in z y)))").unwrap();
    let inst = comprehend(&mut t, &body, &["y".into(), "x".into()], false).unwrap();
    assert!(comprehension_axiom(&inst).alpha_eq(&p));
    assert!(Checker::new(&t).check(&[], &axiom_proof(&inst), &p).is_ok());
}
