//! Seeded random generators for the property suites: membership formulas,
//! comprehension requests, propositions containing comprehension redexes,
//! arithmetic propositions, and typed proofs in SF theories.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checker::Theory;
use crate::proofterm::{self as pt, ProofTerm};
use crate::rewrite::Fuel;
use crate::stratify::{stratify, Verdict};
use crate::syntax::term::fresh_name;
use crate::syntax::{Prop, Term};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z", "u", "v", "w", "p", "q"].iter().take(n).map(|s| s.to_string()).collect()
}

fn count_vars(p: &Prop) -> usize {
    let mut vars = BTreeSet::new();
    p.rename_apart().all_vars(&mut vars);
    vars.len()
}

fn formula_over(rng: &mut GenRng, names: &[String], depth: usize, atom: &mut dyn FnMut(&mut GenRng) -> Prop) -> Prop {
    if depth == 0 || rng.random_bool(0.3) {
        return if rng.random_bool(0.05) { Prop::Bottom } else { atom(rng) };
    }
    let d = depth - 1;
    match rng.random_range(0..7) {
        0 => Prop::implies(formula_over(rng, names, d, atom), formula_over(rng, names, d, atom)),
        1 => Prop::and(formula_over(rng, names, d, atom), formula_over(rng, names, d, atom)),
        2 => Prop::or(formula_over(rng, names, d, atom), formula_over(rng, names, d, atom)),
        3 => Prop::negation(formula_over(rng, names, d, atom)),
        4 | 5 => Prop::forall(names.choose(rng).unwrap(), formula_over(rng, names, d, atom)),
        _ => Prop::exists(names.choose(rng).unwrap(), formula_over(rng, names, d, atom)),
    }
}

/// A formula of the membership language whose renamed-apart form has at most
/// `max_vars` variables.
pub fn membership_formula(rng: &mut GenRng, max_vars: usize) -> Prop {
    loop {
        let names = var_names(rng.random_range(1..=max_vars));
        let mut atom = |r: &mut GenRng| Prop::mem(Term::var(names.choose(r).unwrap()), Term::var(names.choose(r).unwrap()));
        let p = formula_over(rng, &names, 4, &mut atom);
        if count_vars(&p) <= max_vars {
            return p;
        }
    }
}

/// A stratifiable body and a variable list covering its free variables,
/// sometimes with an unused extra variable.
pub fn comprehension_request(rng: &mut GenRng) -> (Prop, Vec<String>) {
    loop {
        let body = membership_formula(rng, 5);
        if !matches!(stratify(&body), Ok(Verdict::Stratified(_))) {
            continue;
        }
        let mut vars: Vec<String> = body.free_vars().into_iter().collect();
        let mut all = BTreeSet::new();
        body.all_vars(&mut all);
        if vars.is_empty() || rng.random_bool(0.2) {
            vars.push(fresh_name("e", &all));
        }
        for i in (1..vars.len()).rev() {
            let j = rng.random_range(0..=i);
            vars.swap(i, j);
        }
        return (body, vars);
    }
}

/// A term over the Skolem symbols of `theory` and the variables `names`.
pub fn skolem_term(rng: &mut GenRng, theory: &Theory, names: &[String], depth: usize) -> Term {
    let symbols: Vec<(&String, usize)> = theory.signature.skolem_tags().map(|(f, t)| (f, t.vars.len() - 1)).collect();
    if depth == 0 || symbols.is_empty() || rng.random_bool(0.4) {
        return Term::var(names.choose(rng).unwrap());
    }
    let (f, n) = symbols.choose(rng).unwrap();
    Term::app(*f, (0..*n).map(|_| skolem_term(rng, theory, names, depth - 1)).collect())
}

/// A proposition whose membership atoms may have Skolem terms as arguments.
pub fn skolem_formula(rng: &mut GenRng, theory: &Theory) -> Prop {
    let names = var_names(3);
    let mut atom = |r: &mut GenRng| Prop::mem(skolem_term(r, theory, &names, 2), skolem_term(r, theory, &names, 2));
    formula_over(rng, &names, 3, &mut atom)
}

/// An arithmetic term with small numerals.
pub fn arith_term(rng: &mut GenRng, depth: usize) -> Term {
    if depth == 0 || rng.random_bool(0.3) {
        return if rng.random_bool(0.3) { Term::var(*["x", "y"].choose(rng).unwrap()) } else { Term::numeral(rng.random_range(0..3)) };
    }
    match rng.random_range(0..3) {
        0 => Term::app("S", vec![arith_term(rng, depth - 1)]),
        1 => Term::app("plus", vec![arith_term(rng, depth - 1), arith_term(rng, depth - 1)]),
        _ => Term::app("times", vec![arith_term(rng, depth - 1), arith_term(rng, depth - 1)]),
    }
}

/// An equation-built proposition over `=`, `plus`, `times`, `S` and `0`.
pub fn arith_formula(rng: &mut GenRng) -> Prop {
    let names = var_names(2);
    let mut atom = |r: &mut GenRng| Prop::atom("=", vec![arith_term(r, 3), arith_term(r, 3)]);
    formula_over(rng, &names, 2, &mut atom)
}

/// A proposition over the integral-domain signature; about half of its atoms
/// are instances of `x × y = 0`.
pub fn domain_formula(rng: &mut GenRng) -> Prop {
    fn term(rng: &mut GenRng, depth: usize) -> Term {
        if depth == 0 || rng.random_bool(0.4) {
            return if rng.random_bool(0.5) { Term::var(*["x", "y"].choose(rng).unwrap()) } else { Term::constant("0") };
        }
        Term::app("times", vec![term(rng, depth - 1), term(rng, depth - 1)])
    }
    let names = var_names(2);
    let mut atom = |r: &mut GenRng| {
        let rhs = if r.random_bool(0.5) { Term::constant("0") } else { term(r, 2) };
        Prop::atom("=", vec![term(r, 3), rhs])
    };
    formula_over(rng, &names, 2, &mut atom)
}

/// A proof together with the proposition it proves and whether the checker
/// can infer that proposition without a goal.
#[derive(Clone, Debug)]
struct Typed {
    term: ProofTerm,
    prop: Prop,
    inferable: bool,
}

/// Random typed proofs in a theory whose atoms are membership atoms.
///
/// Proofs are assembled bottom-up from hypotheses. Every elimination has an
/// inferable major premise or is a cut whose cut formula the checker can
/// recover: `(app (lam ..) arg)` with an inferable argument, projections of
/// inferable pairs, `(tapp (tlam ..) t)`, `case` on an injection into `A ∨ A`
/// with mirrored branches, and `exelim` on a witness for a vacuous `∃`.
pub struct ProofGen<'t> {
    theory: &'t Theory,
    counter: usize,
    pub max_size: usize,
}

#[derive(Clone, Debug)]
pub struct GeneratedProof {
    pub hypotheses: Vec<(String, Prop)>,
    pub goal: Prop,
    pub term: ProofTerm,
}

struct Scope {
    hyps: Vec<(String, Prop)>,
    terms: Vec<String>,
}

impl<'t> ProofGen<'t> {
    pub fn new(theory: &'t Theory) -> Self {
        Self { theory, counter: 0, max_size: 40 }
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    fn hnf(&self, p: &Prop) -> Prop {
        self.theory.rules.head_normalize(p, &mut Fuel::new(1000)).unwrap_or_else(|_| p.clone())
    }

    fn small_prop(&self, rng: &mut GenRng, scope: &Scope) -> Prop {
        let names = scope.terms.clone();
        let mut atom = |r: &mut GenRng| Prop::mem(skolem_term(r, self.theory, &names, 1), skolem_term(r, self.theory, &names, 1));
        formula_over(rng, &names, 1, &mut atom)
    }

    /// A proof with at least one cut, its hypotheses and its goal.
    pub fn proof(&mut self, rng: &mut GenRng) -> GeneratedProof {
        loop {
            let terms = var_names(3);
            let mut scope = Scope { hyps: Vec::new(), terms };
            for i in 0..rng.random_range(1..=3) {
                let p = self.small_prop(rng, &scope);
                scope.hyps.push((format!("h{i}"), p));
            }
            let hypotheses = scope.hyps.clone();
            let t = self.gen(rng, &mut scope, 4);
            if t.term.size() <= self.max_size && !t.term.is_normal() {
                return GeneratedProof { hypotheses, goal: t.prop, term: t.term };
            }
        }
    }

    fn inferable(&mut self, rng: &mut GenRng, scope: &mut Scope, depth: usize) -> Typed {
        for _ in 0..8 {
            let t = self.gen(rng, scope, depth);
            if t.inferable {
                return t;
            }
        }
        self.leaf(rng, scope)
    }

    fn leaf(&mut self, rng: &mut GenRng, scope: &Scope) -> Typed {
        let (h, p) = scope.hyps.choose(rng).unwrap().clone();
        Typed { term: pt::pvar(&h), prop: p, inferable: true }
    }

    fn gen(&mut self, rng: &mut GenRng, scope: &mut Scope, depth: usize) -> Typed {
        if depth == 0 {
            return self.leaf(rng, scope);
        }
        let d = depth - 1;
        match rng.random_range(0..14) {
            0 => self.leaf(rng, scope),
            1 => {
                // ⇒-intro
                let a = self.small_prop(rng, scope);
                let name = self.fresh("a");
                scope.hyps.push((name.clone(), a.clone()));
                let body = self.gen(rng, scope, d);
                scope.hyps.pop();
                Typed { term: pt::lam(&name, body.term), prop: Prop::implies(a, body.prop), inferable: false }
            }
            2 => {
                let (l, r) = (self.gen(rng, scope, d), self.gen(rng, scope, d));
                Typed {
                    term: pt::pair(l.term, r.term),
                    prop: Prop::and(l.prop, r.prop),
                    inferable: l.inferable && r.inferable,
                }
            }
            3 => {
                let p = self.gen(rng, scope, d);
                let other = self.small_prop(rng, scope);
                if rng.random_bool(0.5) {
                    Typed { term: pt::inl(p.term), prop: Prop::or(p.prop, other), inferable: false }
                } else {
                    Typed { term: pt::inr(p.term), prop: Prop::or(other, p.prop), inferable: false }
                }
            }
            4 => {
                // ∀-intro over a fresh eigenvariable
                let x = self.fresh("k");
                scope.terms.push(x.clone());
                let body = self.gen(rng, scope, d);
                scope.terms.pop();
                Typed { term: pt::tlam(&x, body.term), prop: Prop::forall(x, body.prop), inferable: body.inferable }
            }
            5 => {
                let p = self.gen(rng, scope, d);
                let t = skolem_term(rng, self.theory, &scope.terms, 1);
                let x = self.fresh("e");
                Typed { term: pt::witness(t, p.term), prop: Prop::exists(x, p.prop), inferable: false }
            }
            6 | 7 => self.eliminate(rng, scope, d),
            8 | 9 => {
                // ⇒ cut
                let arg = self.inferable(rng, scope, d);
                let name = self.fresh("a");
                scope.hyps.push((name.clone(), arg.prop.clone()));
                let body = self.gen(rng, scope, d);
                scope.hyps.pop();
                Typed { term: pt::app(pt::lam(&name, body.term), arg.term), prop: body.prop, inferable: body.inferable }
            }
            10 => {
                // ∧ cut
                let (l, r) = (self.inferable(rng, scope, d), self.inferable(rng, scope, d));
                let left = rng.random_bool(0.5);
                let pair = pt::pair(l.term, r.term);
                if left {
                    Typed { term: pt::fst(pair), prop: l.prop, inferable: true }
                } else {
                    Typed { term: pt::snd(pair), prop: r.prop, inferable: true }
                }
            }
            11 => {
                // ∀ cut
                let x = self.fresh("k");
                scope.terms.push(x.clone());
                let body = self.inferable(rng, scope, d);
                scope.terms.pop();
                let t = skolem_term(rng, self.theory, &scope.terms, 1);
                Typed {
                    prop: body.prop.substitute(&x, &t),
                    term: pt::tapp(pt::tlam(&x, body.term), t),
                    inferable: true,
                }
            }
            12 => {
                // ∨ cut on A ∨ A
                let inner = self.inferable(rng, scope, d);
                let (a, b) = (self.fresh("a"), self.fresh("b"));
                scope.hyps.push((a.clone(), inner.prop.clone()));
                let branch = self.gen(rng, scope, d);
                scope.hyps.pop();
                let mirrored = branch.term.subst_proof(&a, &pt::pvar(&b));
                let major = if rng.random_bool(0.5) { pt::inl(inner.term) } else { pt::inr(inner.term) };
                Typed { term: pt::case(major, &a, branch.term, &b, mirrored), prop: branch.prop, inferable: false }
            }
            _ => {
                // ∃ cut on a vacuous existential
                let inner = self.inferable(rng, scope, d);
                let t = match &skolem_term(rng, self.theory, &scope.terms, 1) {
                    Term::Var(v) if inner.prop.has_free(v) => None,
                    t => Some(t.clone()),
                };
                let Some(t) = t else { return inner };
                let (x, a) = (self.fresh("k"), self.fresh("a"));
                scope.hyps.push((a.clone(), inner.prop.clone()));
                let body = self.gen(rng, scope, d);
                scope.hyps.pop();
                Typed { term: pt::exelim(pt::witness(t, inner.term), &x, &a, body.term), prop: body.prop, inferable: false }
            }
        }
    }

    /// An elimination whose major premise is inferable.
    fn eliminate(&mut self, rng: &mut GenRng, scope: &mut Scope, d: usize) -> Typed {
        let major = self.inferable(rng, scope, d);
        match self.hnf(&major.prop) {
            Prop::Implies(a, b) => {
                let arg = self.gen_for(scope, &a);
                match arg {
                    Some(arg) => Typed { term: pt::app(major.term, arg), prop: *b, inferable: true },
                    None => major,
                }
            }
            Prop::And(a, b) => {
                if rng.random_bool(0.5) {
                    Typed { term: pt::fst(major.term), prop: *a, inferable: true }
                } else {
                    Typed { term: pt::snd(major.term), prop: *b, inferable: true }
                }
            }
            Prop::Forall(x, a) => {
                let t = skolem_term(rng, self.theory, &scope.terms, 1);
                Typed { prop: a.substitute(&x, &t), term: pt::tapp(major.term, t), inferable: true }
            }
            Prop::Or(a, b) => {
                // (case h (l (inr l)) (r (inl r))) : B ∨ A
                let (l, r) = (self.fresh("a"), self.fresh("b"));
                Typed {
                    term: pt::case(major.term, &l, pt::inr(pt::pvar(&l)), &r, pt::inl(pt::pvar(&r))),
                    prop: Prop::or(*b, *a),
                    inferable: false,
                }
            }
            Prop::Exists(y, a) => {
                // (exelim h (x a (witness x a))) : ∃y A
                let x = self.fresh("k");
                let h = self.fresh("a");
                Typed {
                    term: pt::exelim(major.term, &x, &h, pt::witness(Term::var(&x), pt::pvar(&h))),
                    prop: Prop::exists(y, *a),
                    inferable: false,
                }
            }
            Prop::Bottom => {
                let goal = self.small_prop(rng, scope);
                Typed { term: pt::botelim(major.term), prop: goal, inferable: false }
            }
            Prop::Atom(..) => major,
        }
    }

    /// A proof of exactly `goal` built from a hypothesis with that
    /// proposition, if there is one.
    fn gen_for(&self, scope: &Scope, goal: &Prop) -> Option<ProofTerm> {
        scope.hyps.iter().rev().find(|(_, p)| p == goal).map(|(h, _)| pt::pvar(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::Checker;
    use crate::proofterm::{normalize_proof, DEFAULT_HISTORY_WINDOW};
    use crate::sf::sf_basic;

    #[test]
    fn membership_formulas_respect_the_variable_bound() {
        let mut r = rng(1);
        for _ in 0..200 {
            assert!(count_vars(&membership_formula(&mut r, 5)) <= 5);
        }
    }

    #[test]
    fn generated_proofs_check_and_normalize() {
        let t = sf_basic();
        let mut r = rng(7);
        let mut g = ProofGen::new(&t);
        let checker = Checker::new(&t);
        for i in 0..100 {
            let p = g.proof(&mut r);
            assert!(p.term.size() <= 40);
            if let Err(e) = checker.check(&p.hypotheses, &p.term, &p.goal) {
                panic!("proof {i} {} of {} failed: {e}", p.term, p.goal);
            }
            assert!(normalize_proof(&p.term, 10_000, DEFAULT_HISTORY_WINDOW).is_normal_form());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = membership_formula(&mut rng(3), 4);
        let b = membership_formula(&mut rng(3), 4);
        assert_eq!(a.to_string(), b.to_string());
    }
}
