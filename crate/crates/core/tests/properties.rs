use std::collections::BTreeSet;

use proptest::prelude::*;

use sfmod::checker::Checker;
use sfmod::gen::{self, ProofGen};
use sfmod::proofterm::{normalize_proof, NormalizeOutcome, DEFAULT_HISTORY_WINDOW};
use sfmod::rewrite::Strategy as RwStrategy;
use sfmod::selftest::{oracle, random_sf_theory};
use sfmod::sf::{self, comprehend};
use sfmod::stratify::{stratify, verify_stratification, Verdict};
use sfmod::syntax::{Parser, Prop, Term};

fn arb_var() -> impl Strategy<Value = String> {
    prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(String::from)
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![arb_var().prop_map(Term::Var), Just(Term::constant("c"))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("g", vec![a, b])),
        ]
    })
}

fn arb_prop() -> impl Strategy<Value = Prop> {
    let leaf = prop_oneof![
        (arb_term(), arb_term()).prop_map(|(a, b)| Prop::mem(a, b)),
        arb_term().prop_map(|t| Prop::atom("P", vec![t])),
        Just(Prop::Bottom),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Prop::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Prop::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Prop::or(a, b)),
            (arb_var(), inner.clone()).prop_map(|(x, a)| Prop::forall(x, a)),
            (arb_var(), inner).prop_map(|(x, a)| Prop::exists(x, a)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn alpha_equivalence_is_an_equivalence(p in arb_prop(), q in arb_prop()) {
        prop_assert!(p.alpha_eq(&p));
        prop_assert_eq!(p.alpha_eq(&q), q.alpha_eq(&p));
        let r = p.rename_apart();
        prop_assert!(p.alpha_eq(&r));
        prop_assert_eq!(p.alpha_key(), r.alpha_key());
        // transitivity through a second renaming
        prop_assert!(p.alpha_eq(&r.rename_apart()));
    }

    #[test]
    fn substitution_bounds_free_variables(p in arb_prop(), x in arb_var(), t in arb_term()) {
        let s = p.substitute(&x, &t);
        let mut bound: BTreeSet<String> = p.free_vars();
        bound.remove(&x);
        if p.has_free(&x) {
            bound.extend(t.free_vars());
        }
        prop_assert!(s.free_vars().is_subset(&bound));
        prop_assert_eq!(s.has_free(&x), p.has_free(&x) && t.occurs(&x));
    }

    #[test]
    fn substitution_lemma(p in arb_prop(), t in arb_term(), u in arb_term()) {
        // p[t/x][u/y] = p[u/y][t[u/y]/x] when x ∉ FV(u)
        prop_assume!(!u.occurs("x"));
        let lhs = p.substitute("x", &t).substitute("y", &u);
        let rhs = p.substitute("y", &u).substitute("x", &t.substitute("y", &u));
        prop_assert!(lhs.alpha_eq(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn substitution_respects_alpha(p in arb_prop(), x in arb_var(), t in arb_term()) {
        let q = p.rename_apart();
        prop_assert!(p.substitute(&x, &t).alpha_eq(&q.substitute(&x, &t)));
    }

    #[test]
    fn props_print_and_parse_back(p in arb_prop()) {
        let back = Parser::untyped().prop_str(&p.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), p.to_string());
    }

    #[test]
    fn stratification_is_sound_and_complete(seed in any::<u64>()) {
        let f = gen::membership_formula(&mut gen::rng(seed), 5);
        let verdict = stratify(&f).unwrap();
        prop_assert_eq!(verdict.is_stratifiable(), oracle::stratifiable(&f, 5).unwrap());
        if let Verdict::Stratified(s) = verdict {
            prop_assert!(verify_stratification(&f, &s).unwrap());
            prop_assert_eq!(s.levels.values().min().copied().unwrap_or(0), 0);
            for c in [-3i64, 1, 7] {
                prop_assert!(verify_stratification(&f, &s.shifted(c)).unwrap());
            }
        }
    }

    #[test]
    fn shifting_never_changes_the_verdict_of_a_map(seed in any::<u64>(), c in -5i64..5) {
        let f = gen::membership_formula(&mut gen::rng(seed), 4);
        let mut vars = BTreeSet::new();
        f.rename_apart().all_vars(&mut vars);
        let s: sfmod::stratify::Stratification =
            vars.iter().enumerate().map(|(i, v)| (v.clone(), (i % 3) as i64)).collect();
        prop_assert_eq!(verify_stratification(&f, &s).unwrap(), verify_stratification(&f, &s.shifted(c)).unwrap());
    }

    #[test]
    fn comprehension_is_idempotent_and_certified(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let mut t = random_sf_theory(seed, 3).unwrap();
        let (body, vars) = gen::comprehension_request(&mut rng);
        let first = comprehend(&mut t, &body, &vars, false).unwrap();
        let snapshot = t.clone();
        let again = comprehend(&mut t, &body.rename_apart(), &vars, false).unwrap();
        prop_assert_eq!(&first.symbol, &again.symbol);
        prop_assert_eq!(&t, &snapshot);
        prop_assert!(t.rules.check_orthogonality().is_ok());
        let checker = Checker::new(&t);
        prop_assert!(checker.check(&[], &sf::axiom_proof(&first), &sf::comprehension_axiom(&first)).is_ok());
        prop_assert!(checker.check(&[], &sf::existential_proof(&first), &sf::existential_axiom(&first)).is_ok());
    }

    #[test]
    fn rewriting_strategies_agree(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let t = random_sf_theory(seed, 5).unwrap();
        let p = gen::skolem_formula(&mut rng, &t);
        let a = t.rules.normalize_prop_with(&p, 10_000, RwStrategy::LeftmostInnermost).unwrap().0;
        let b = t.rules.normalize_prop_with(&p, 10_000, RwStrategy::LeftmostOutermost).unwrap().0;
        prop_assert!(a.alpha_eq(&b));
        // a normal form has no reducts
        prop_assert!(t.rules.prop_reducts(&a).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_sf_proofs_satisfy_the_checker_invariants(seed in any::<u64>()) {
        let t = sf::sf_basic();
        let mut rng = gen::rng(seed);
        let p = ProofGen::new(&t).proof(&mut rng);
        let checker = Checker::new(&t);
        prop_assert!(checker.check(&p.hypotheses, &p.term, &p.goal).is_ok());

        // subject reduction
        for r in p.term.reduce_step() {
            prop_assert!(checker.check(&p.hypotheses, &r, &p.goal).is_ok(), "reduct {} fails", r);
        }

        // weakening
        let mut wider = p.hypotheses.clone();
        wider.insert(0, ("unused".into(), Prop::mem(Term::var("q"), Term::var("q"))));
        prop_assert!(checker.check(&wider, &p.term, &p.goal).is_ok());

        // congruence invariance
        let nf = t.rules.normalize_prop(&p.goal, 10_000).unwrap().0;
        prop_assert!(checker.check(&p.hypotheses, &p.term, &nf).is_ok());

        // normalization, and the normal form still checks
        match normalize_proof(&p.term, 10_000, DEFAULT_HISTORY_WINDOW) {
            NormalizeOutcome::NormalForm { term, .. } => {
                prop_assert!(term.is_normal());
                prop_assert!(checker.check(&p.hypotheses, &term, &p.goal).is_ok());
            }
            other => prop_assert!(false, "no normal form: {:?}", other),
        }
    }

    #[test]
    fn proof_terms_print_and_parse_back(seed in any::<u64>()) {
        let t = sf::sf_basic();
        let p = ProofGen::new(&t).proof(&mut gen::rng(seed));
        let back = Parser::new(&t.signature).proof_str(&p.term.to_string()).unwrap();
        prop_assert!(back.alpha_eq(&p.term));
        prop_assert_eq!(back.to_string(), p.term.to_string());
    }
}
