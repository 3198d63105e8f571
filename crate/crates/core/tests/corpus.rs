use std::path::Path;

use sfmod::checker::Checker;
use sfmod::cli::run;
use sfmod::gen;
use sfmod::selftest::oracle;
use sfmod::stratify::{stratify, verify_stratification, Verdict};
use sfmod::syntax::parse::{parse_proofs, parse_theory, print_theory};
use sfmod::syntax::sexp::normalize_whitespace;
use sfmod::syntax::Parser;

fn read(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)).unwrap()
}

const THEORIES: &[&str] = &["arith.thy", "integral-domain.thy", "crabbe.thy", "sf-empty.thy", "sf-basic.thy"];

const PROOFS: &[(&str, &str, bool)] = &[
    ("arith.thy", "four-even.prf", true),
    ("arith.thy", "four-even-bad.prf", false),
    ("crabbe.thy", "bot-from-b.prf", true),
    ("sf-basic.thy", "sf-cuts.prf", true),
];

#[test]
fn bundled_theories_print_back_to_their_source() {
    for name in THEORIES {
        let src = read(name);
        let t = parse_theory(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(normalize_whitespace(&print_theory(&t)), normalize_whitespace(&src), "{name}");
        assert!(t.rules.check_orthogonality().is_ok(), "{name}");
    }
}

#[test]
fn bundled_proofs_print_back_and_get_the_expected_verdict() {
    for (thy, prf, ok) in PROOFS {
        let t = parse_theory(&read(thy)).unwrap();
        let src = read(prf);
        let objs = parse_proofs(&src, &t.signature).unwrap();
        assert!(!objs.is_empty());
        let printed: Vec<String> = objs.iter().map(ToString::to_string).collect();
        assert_eq!(normalize_whitespace(&printed.join("\n")), normalize_whitespace(&src), "{prf}");
        let checker = Checker::new(&t);
        for obj in &objs {
            assert_eq!(checker.check_object(obj).is_ok(), *ok, "{prf}: {}", obj.name);
        }
    }
}

#[test]
fn stratify_command_agrees_with_brute_force_on_six_variables() {
    let mut rng = gen::rng(6);
    let mut seen = [0usize; 2];
    for _ in 0..200 {
        let f = gen::membership_formula(&mut rng, 6);
        let expected = oracle::stratifiable(&f, 5).unwrap();
        seen[expected as usize] += 1;

        let mut out = Vec::new();
        let code = run(["sfmod", "stratify", "--prop", &f.to_string()], &mut out);
        assert_eq!(code, 0);
        let out = String::from_utf8(out).unwrap();
        assert_eq!(out.trim() != "unstratifiable", expected, "{f}: {out}");

        if let Verdict::Stratified(s) = stratify(&f).unwrap() {
            assert_eq!(out.trim(), s.to_string());
            assert!(verify_stratification(&f, &s).unwrap());
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "generator only produced one verdict: {seen:?}");
}

#[test]
fn parse_errors_carry_positions() {
    let t = parse_theory(&read("arith.thy")).unwrap();
    let e = parse_proofs("(proof p\n  (goal (= 0 0))\n  (term (pvar)))", &t.signature).unwrap_err();
    assert_eq!(e.pos.line, 3);
    let e = Parser::new(&t.signature).prop_str("(= 0)").unwrap_err();
    assert!(e.is_signature_error());
}
