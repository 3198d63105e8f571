//! The acceptance suite: one function per criterion, all seed-controlled.

pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::checker::{CheckError, Checker, ProofObject, Theory};
use crate::gen::{self, ProofGen};
use crate::proofterm::{normalize_proof, NormalizeOutcome, ProofTerm, DEFAULT_HISTORY_WINDOW};
use crate::rewrite::{sf_measure_decreases, RewriteSystem, Strategy, DEFAULT_FUEL};
use crate::sf::{self, axiom_proof, builtin_theory, comprehend};
use crate::stratify::{stratify, verify_stratification, Stratification, Verdict};
use crate::syntax::parse::{parse_proofs, parse_theory};
use crate::syntax::{Parser, Prop};

pub const DEFAULT_SEED: u64 = 2024;

pub const FOUR_EVEN_SRC: &str = include_str!("../../examples/four-even.prf");
pub const FOUR_EVEN_BAD_SRC: &str = include_str!("../../examples/four-even-bad.prf");
pub const BOT_FROM_B_SRC: &str = include_str!("../../examples/bot-from-b.prf");
pub const SF_BASIC_SRC: &str = include_str!("../../examples/sf-basic.thy");
pub const SF_CUTS_SRC: &str = include_str!("../../examples/sf-cuts.prf");

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {}: {} {} ({}; {:.3}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

type Outcome = Result<String, String>;

fn timed(id: usize, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> CriterionResult {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; over the {}s limit", limit.as_secs_f64());
        }
    }
    CriterionResult { id, name, passed, detail, elapsed }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theory(name: &str) -> Theory {
    builtin_theory(name).expect("bundled theory")
}

/// Every bundled proof file with the theory it is checked against.
pub fn bundled_proofs() -> Vec<(Theory, ProofObject)> {
    let sf_basic = parse_theory(SF_BASIC_SRC).expect("bundled theory");
    let mut out = Vec::new();
    for (t, src) in [(theory("arithmetic"), FOUR_EVEN_SRC), (theory("crabbe"), BOT_FROM_B_SRC), (sf_basic, SF_CUTS_SRC)] {
        for obj in parse_proofs(src, &t.signature).expect("bundled proofs") {
            out.push((t.clone(), obj));
        }
    }
    out
}

pub fn golden_derivation() -> Outcome {
    let t = theory("arithmetic");
    let checker = Checker::new(&t);
    let good = parse_proofs(FOUR_EVEN_SRC, &t.signature).map_err(|e| e.to_string())?;
    checker.check_object(&good[0]).map_err(|e| format!("four-even rejected: {e}"))?;
    let bad = parse_proofs(FOUR_EVEN_BAD_SRC, &t.signature).map_err(|e| e.to_string())?;
    match checker.check_object(&bad[0]) {
        Ok(()) => Err("witness 3 accepted".into()),
        Err(e) if matches!(e.error, CheckError::NotConvertible { .. }) => Ok(format!("witness 2 checks; witness 3 fails: {}", e.error)),
        Err(e) => Err(format!("witness 3 failed for the wrong reason: {e}")),
    }
}

pub fn congruence_witnesses() -> Outcome {
    let t = theory("arithmetic");
    let p = Parser::new(&t.signature);
    let pairs = [("(= (times 2 2) 4)", "(= 4 4)"), ("(forall y (= (plus 0 y) y))", "(forall y (= y y))")];
    for (a, b) in pairs {
        let (a, b) = (p.prop_str(a).map_err(|e| e.to_string())?, p.prop_str(b).map_err(|e| e.to_string())?);
        let eq = t.rules.equiv(&a, &b, DEFAULT_FUEL).map_err(|e| e.to_string())?;
        ensure(eq, || format!("{a} and {b} are not congruent"))?;
    }
    Ok("both pairs congruent".into())
}

pub fn stratification(seed: u64, samples: usize) -> Outcome {
    let p = Parser::untyped();
    let leibniz = p
        .prop_str("(=> (forall v (iff (in v x) (in v y))) (forall w (=> (in x w) (in y w))))")
        .expect("literal");
    let Ok(Verdict::Stratified(s)) = stratify(&leibniz) else {
        return Err("the Leibniz form is not stratified".into());
    };
    ensure(verify_stratification(&leibniz, &s) == Ok(true), || format!("witness {s} does not verify"))?;
    let witness: Stratification = [("v", 4), ("x", 5), ("y", 5), ("w", 6)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    ensure(verify_stratification(&leibniz, &witness) == Ok(true), || "the shifted witness does not verify".into())?;
    let bad = p.prop_str("(=> (forall v (iff (in v x) (in v y))) (in x y))").expect("literal");
    ensure(stratify(&bad) == Ok(Verdict::Unstratifiable), || "x ∈ y form was stratified".into())?;

    let mut rng = gen::rng(seed);
    let mut positive = 0;
    for _ in 0..samples {
        let f = gen::membership_formula(&mut rng, 5);
        let ours = stratify(&f).map_err(|e| e.to_string())?;
        let theirs = oracle::stratifiable(&f, 5).ok_or("oracle rejected a generated formula")?;
        ensure(ours.is_stratifiable() == theirs, || format!("disagreement on {f}: solver {ours}, oracle {theirs}"))?;
        if let Verdict::Stratified(s) = &ours {
            ensure(verify_stratification(&f, s) == Ok(true), || format!("unsound witness for {f}"))?;
            positive += 1;
        }
    }
    Ok(format!("{samples}/{samples} agree with the oracle ({positive} stratifiable)"))
}

/// Theory `sf-empty` after `n` random comprehension calls.
pub fn random_sf_theory(seed: u64, n: usize) -> Result<Theory, String> {
    let mut t = theory("sf-empty");
    let mut rng = gen::rng(seed);
    for _ in 0..n {
        let (body, vars) = gen::comprehension_request(&mut rng);
        comprehend(&mut t, &body, &vars, false).map_err(|e| format!("comprehend {body}: {e}"))?;
    }
    Ok(t)
}

pub fn rewrite_certificates(seed: u64, comprehensions: usize, steps: usize) -> Outcome {
    let t = random_sf_theory(seed, comprehensions)?;
    t.rules.check_orthogonality().map_err(|v| format!("{} orthogonality violations, first: {}", v.len(), v[0]))?;
    let mut rng = gen::rng(seed ^ 0x5eed);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < steps {
        attempts += 1;
        ensure(attempts < steps * 100, || format!("only {checked} redexes found"))?;
        let p = gen::skolem_formula(&mut rng, &t);
        let reducts = t.rules.prop_reducts(&p);
        if reducts.is_empty() {
            continue;
        }
        let q = &reducts[rng.random_range(0..reducts.len())];
        ensure(sf_measure_decreases(&p, q), || format!("measure does not decrease from {p} to {q}"))?;
        checked += 1;
    }
    Ok(format!("{} rules orthogonal; {checked} steps decrease the measure", t.rules.rules().len()))
}

pub fn provability_modulo(seed: u64, instances: usize) -> Outcome {
    let mut t = theory("sf-empty");
    let mut rng = gen::rng(seed);
    let mut insts = Vec::new();
    while insts.len() < instances {
        let (body, vars) = gen::comprehension_request(&mut rng);
        insts.push(comprehend(&mut t, &body, &vars, false).map_err(|e| e.to_string())?);
    }
    let checker = Checker::new(&t);
    for inst in &insts {
        checker
            .check(&[], &axiom_proof(inst), &sf::comprehension_axiom(inst))
            .map_err(|e| format!("axiom for {} rejected: {e}", inst.symbol))?;
    }
    Ok(format!("{instances}/{instances} axioms check"))
}

pub fn crabbe(fuels: &[usize]) -> Outcome {
    let t = theory("crabbe");
    let obj = &parse_proofs(BOT_FROM_B_SRC, &t.signature).map_err(|e| e.to_string())?[0];
    Checker::new(&t).check_object(obj).map_err(|e| format!("not checked: {e}"))?;
    let mut seen = Vec::new();
    for &fuel in fuels {
        match normalize_proof(&obj.term, fuel, DEFAULT_HISTORY_WINDOW) {
            NormalizeOutcome::NormalForm { term, .. } => return Err(format!("reached a normal form {term} at fuel {fuel}")),
            NormalizeOutcome::LoopDetected { period, .. } => seen.push(format!("fuel {fuel}: loop of period {period}")),
            NormalizeOutcome::FuelExhausted { .. } => seen.push(format!("fuel {fuel}: fuel exhausted")),
        }
    }
    Ok(format!("checks; {}", seen.join(", ")))
}

/// All terms reachable from `term` in at most `depth` steps, `term` included.
pub fn reducts_up_to(term: &ProofTerm, depth: usize) -> Vec<ProofTerm> {
    let mut seen = BTreeSet::from([term.alpha_key()]);
    let mut frontier = vec![term.clone()];
    let mut all = vec![term.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for r in t.reduce_step() {
                if seen.insert(r.alpha_key()) {
                    next.push(r.clone());
                    all.push(r);
                }
            }
        }
        frontier = next;
    }
    all
}

pub fn subject_reduction(depth: usize) -> Outcome {
    let mut total = 0;
    let proofs = bundled_proofs();
    for (t, obj) in &proofs {
        let checker = Checker::new(t);
        checker.check_object(obj).map_err(|e| format!("{} does not check: {e}", obj.name))?;
        for r in reducts_up_to(&obj.term, depth).iter().skip(1) {
            checker
                .check_sequent(&obj.sequent, r)
                .map_err(|e| format!("{}: reduct {r} fails: {e}", obj.name))?;
            total += 1;
        }
    }
    Ok(format!("{} proofs, {total} reducts all check", proofs.len()))
}

pub fn sf_normalization(seed: u64, samples: usize, fuel: usize) -> Outcome {
    let t = parse_theory(SF_BASIC_SRC).map_err(|e| e.to_string())?;
    let mut g = ProofGen::new(&t);
    let mut rng = gen::rng(seed);
    let checker = Checker::new(&t);
    let mut max_steps = 0;
    for _ in 0..samples {
        let p = g.proof(&mut rng);
        checker
            .check(&p.hypotheses, &p.term, &p.goal)
            .map_err(|e| format!("generated proof {} is ill-typed: {e}", p.term))?;
        match normalize_proof(&p.term, fuel, DEFAULT_HISTORY_WINDOW) {
            NormalizeOutcome::NormalForm { steps, .. } => max_steps = max_steps.max(steps),
            other => return Err(format!("{} did not normalize: {other:?}", p.term)),
        }
    }
    Ok(format!("{samples}/{samples} normalize, at most {max_steps} steps"))
}

fn agree(sys: &RewriteSystem, p: &Prop) -> Result<(), String> {
    let inner = sys.normalize_prop_with(p, DEFAULT_FUEL, Strategy::LeftmostInnermost).map_err(|e| e.to_string())?;
    let outer = sys.normalize_prop_with(p, DEFAULT_FUEL, Strategy::LeftmostOutermost).map_err(|e| e.to_string())?;
    ensure(inner.0 == outer.0, || format!("{p}: innermost {} but outermost {}", inner.0, outer.0))
}

pub fn strategy_independence(seed: u64, samples: usize) -> Outcome {
    let arith = theory("arithmetic");
    let domain = theory("integral-domain");
    let sf = random_sf_theory(seed, 20)?;
    for (name, t) in [("arithmetic", &arith), ("integral-domain", &domain), ("sf", &sf)] {
        t.rules.check_orthogonality().map_err(|v| format!("{name} is not orthogonal: {}", v[0]))?;
    }
    let mut rng = gen::rng(seed);
    for i in 0..samples {
        match i % 3 {
            0 => agree(&arith.rules, &gen::arith_formula(&mut rng))?,
            1 => agree(&domain.rules, &gen::domain_formula(&mut rng))?,
            _ => agree(&sf.rules, &gen::skolem_formula(&mut rng, &sf))?,
        }
    }
    Ok(format!("{samples}/{samples} agree up to alpha"))
}

/// Runs every criterion with the given seed.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    let s = |secs: u64| Some(Duration::from_secs(secs));
    vec![
        timed(1, "golden derivation", s(1), golden_derivation),
        timed(2, "congruence witnesses", None, congruence_witnesses),
        timed(3, "stratification", s(10), || stratification(seed, 1000)),
        timed(4, "rewrite certificates", s(10), || rewrite_certificates(seed, 50, 500)),
        timed(5, "provability modulo", None, || provability_modulo(seed, 50)),
        timed(6, "Crabbe counterexample", None, || crabbe(&[100, 1_000, 10_000])),
        timed(7, "subject reduction", None, || subject_reduction(3)),
        timed(8, "SF normalization", None, || sf_normalization(seed, 100, 10_000)),
        timed(9, "strategy independence", None, || strategy_independence(seed, 200)),
    ]
}
