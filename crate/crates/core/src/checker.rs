//! Bidirectional proof checking for natural deduction modulo a rewrite system.
//!
//! Eliminations and variables are inferred; introductions are checked
//! against a goal whose head connective is read off its head normal form.
//! Every identification of two propositions goes through
//! [`RewriteSystem::convertible`].
//!
//! Proof terms carry no type annotations, so a cut (an introduction in the
//! major position of an elimination) leaves its cut formula implicit. The
//! checker recovers it by inference when the introduction's parts allow it,
//! and otherwise tries candidate formulas drawn from the subformulas of the
//! goal, the context, the axioms and the ground rule sides.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::proofterm::ProofTerm;
use crate::rewrite::{Fuel, FuelExhausted, RewriteSystem, RuleKind, DEFAULT_FUEL};
use crate::syntax::term::fresh_name;
use crate::syntax::parse::SpanTree;
use crate::syntax::{Connective, Pos, Prop, Signature, SignatureError, Term};

/// Signature, congruence and named axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub signature: Signature,
    pub rules: RewriteSystem,
    pub axioms: IndexMap<String, Prop>,
    pub classical: bool,
}

impl Theory {
    pub fn new(signature: Signature) -> Self {
        Self { signature, ..Self::default() }
    }

    pub fn add_axiom(&mut self, name: &str, prop: Prop) -> Result<(), SignatureError> {
        self.signature.check_prop(&prop)?;
        self.axioms.insert(name.into(), prop);
        Ok(())
    }
}

/// Named hypotheses with pairwise distinct names, and a goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    hypotheses: Vec<(String, Prop)>,
    pub goal: Prop,
}

impl Sequent {
    pub fn new(hypotheses: Vec<(String, Prop)>, goal: Prop) -> Result<Self, String> {
        let mut seen = BTreeSet::new();
        for (h, _) in &hypotheses {
            if !seen.insert(h) {
                return Err(format!("hypothesis `{h}` is declared twice"));
            }
        }
        Ok(Self { hypotheses, goal })
    }

    pub fn hypotheses(&self) -> &[(String, Prop)] {
        &self.hypotheses
    }
}

/// A named sequent with its proof term, as read from a proof file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofObject {
    pub name: String,
    pub sequent: Sequent,
    pub term: ProofTerm,
    pub spans: Option<SpanTree>,
    pub pos: Pos,
}

impl ProofObject {
    pub fn new(name: &str, sequent: Sequent, term: ProofTerm) -> Self {
        Self { name: name.into(), sequent, term, spans: None, pos: Pos::default() }
    }

    /// Source position of the subterm a failure points at.
    pub fn locate(&self, failure: &CheckFailure) -> Pos {
        self.spans.as_ref().map_or(self.pos, |s| s.locate(&failure.path))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("unbound proof variable `{0}`")]
    UnboundProofVariable(String),
    #[error("expected a proposition headed by `{expected}`, found {found}")]
    HeadMismatch { expected: Connective, found: Prop },
    #[error("{found} is not congruent to {expected}")]
    NotConvertible { expected: Prop, found: Prop },
    #[error("variable `{var}` occurs free in {place}")]
    ScopeViolation { var: String, place: String },
    #[error("excluded middle used without the classical flag")]
    ClassicalRuleDisabled,
    #[error("cannot determine the proposition proved by {0}")]
    NotInferable(ProofTerm),
    #[error(transparent)]
    FuelExhausted(#[from] FuelExhausted<Prop>),
}

/// A check error located at a subterm. `path` lists child indices from the
/// root, in the order of [`ProofTerm::children`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub subterm: ProofTerm,
    pub error: CheckError,
}

impl CheckFailure {
    pub fn is_fuel(&self) -> bool {
        matches!(self.error, CheckError::FuelExhausted(_))
    }
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.subterm, self.error)
    }
}

impl std::error::Error for CheckFailure {}

type Res<T> = Result<T, Box<CheckFailure>>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Any,
    Implies,
    And,
    Or,
    Forall,
    Exists,
}

impl Shape {
    fn admits(self, p: &Prop) -> bool {
        match self {
            Shape::Any => true,
            Shape::Implies => matches!(p, Prop::Implies(..)),
            Shape::And => matches!(p, Prop::And(..)),
            Shape::Or => matches!(p, Prop::Or(..)),
            Shape::Forall => matches!(p, Prop::Forall(..)),
            Shape::Exists => matches!(p, Prop::Exists(..)),
        }
    }
}

pub struct Checker<'t> {
    theory: &'t Theory,
    fuel: usize,
}

type Ctx = Vec<(String, Prop)>;

fn child(path: &[usize], i: usize) -> Vec<usize> {
    let mut p = path.to_vec();
    p.push(i);
    p
}

impl<'t> Checker<'t> {
    pub fn new(theory: &'t Theory) -> Self {
        Self { theory, fuel: DEFAULT_FUEL }
    }

    /// Step budget for each congruence query.
    pub fn with_fuel(mut self, fuel: usize) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn theory(&self) -> &Theory {
        self.theory
    }

    fn rules(&self) -> &RewriteSystem {
        &self.theory.rules
    }

    fn fail(&self, path: &[usize], term: &ProofTerm, error: CheckError) -> Box<CheckFailure> {
        Box::new(CheckFailure { path: path.to_vec(), subterm: term.clone(), error })
    }

    fn hnf(&self, p: &Prop, path: &[usize], term: &ProofTerm) -> Res<Prop> {
        self.rules()
            .head_normalize(p, &mut Fuel::new(self.fuel))
            .map_err(|e| self.fail(path, term, e.into()))
    }

    fn conv(&self, a: &Prop, b: &Prop, path: &[usize], term: &ProofTerm) -> Res<bool> {
        self.rules()
            .convertible(a, b, &mut Fuel::new(self.fuel))
            .map_err(|e| self.fail(path, term, e.into()))
    }

    /// Whether `x` occurs free in `p` once `p` is normalized. Rules never
    /// introduce free variables, so the raw test is a sound first filter.
    fn free_modulo(&self, p: &Prop, x: &str) -> Result<bool, CheckError> {
        if !p.has_free(x) {
            return Ok(false);
        }
        let (nf, _) = self.rules().normalize_prop(p, self.fuel)?;
        Ok(nf.has_free(x))
    }

    fn free_in_context(&self, ctx: &Ctx, x: &str) -> Result<Option<String>, CheckError> {
        let locals = ctx.iter().rev().map(|(n, p)| (n, p));
        for (name, p) in locals.chain(self.theory.axioms.iter()) {
            if self.free_modulo(p, x)? {
                return Ok(Some(format!("hypothesis `{name}`")));
            }
        }
        Ok(None)
    }

    fn lookup(&self, ctx: &Ctx, a: &str) -> Option<Prop> {
        ctx.iter()
            .rev()
            .find(|(n, _)| n == a)
            .map(|(_, p)| p.clone())
            .or_else(|| self.theory.axioms.get(a).cloned())
    }

    /// Infers the proposition proved by `term` in the hypothesis list `ctx`.
    pub fn infer(&self, ctx: &[(String, Prop)], term: &ProofTerm) -> Res<Prop> {
        let mut ctx = ctx.to_vec();
        self.infer_in(&mut ctx, term, &[], &mut Vec::new())
    }

    /// Checks that `term` proves `goal` in the hypothesis list `ctx`.
    pub fn check(&self, ctx: &[(String, Prop)], term: &ProofTerm, goal: &Prop) -> Res<()> {
        let mut ctx = ctx.to_vec();
        self.check_in(&mut ctx, term, goal, &[], &mut vec![goal.clone()])
    }

    pub fn check_sequent(&self, sequent: &Sequent, term: &ProofTerm) -> Res<()> {
        self.check(sequent.hypotheses(), term, &sequent.goal)
    }

    pub fn check_object(&self, obj: &ProofObject) -> Res<()> {
        self.check_sequent(&obj.sequent, &obj.term)
    }

    fn with_hyp<T>(&self, ctx: &mut Ctx, name: &str, p: Prop, f: impl FnOnce(&mut Ctx) -> T) -> T {
        ctx.push((name.to_string(), p));
        let r = f(ctx);
        ctx.pop();
        r
    }

    /// `goals` is the stack of goals seen so far; they seed candidate cut formulas.
    fn infer_in(&self, ctx: &mut Ctx, term: &ProofTerm, path: &[usize], goals: &mut Vec<Prop>) -> Res<Prop> {
        use ProofTerm as P;
        match term {
            P::Var(a) => self
                .lookup(ctx, a)
                .ok_or_else(|| self.fail(path, term, CheckError::UnboundProofVariable(a.clone()))),
            P::App(f, arg) => {
                // An unannotated lambda head: type the argument first, then the body.
                if let P::Lam(alpha, body) = &**f {
                    let body_path = child(&child(path, 0), 0);
                    for a in self.candidates(ctx, arg, Shape::Any, &child(path, 1), goals)? {
                        if self.check_in(ctx, arg, &a, &child(path, 1), goals).is_err() {
                            continue;
                        }
                        if let Ok(b) = self.with_hyp(ctx, alpha, a, |ctx| self.infer_in(ctx, body, &body_path, goals)) {
                            return Ok(b);
                        }
                    }
                }
                let c = self.synth_major(ctx, f, Shape::Implies, &child(path, 0), goals)?;
                let h = self.hnf(&c, path, term)?;
                let Prop::Implies(a, b) = h else {
                    return Err(self.fail(path, term, CheckError::HeadMismatch { expected: Connective::Implies, found: h }));
                };
                self.check_in(ctx, arg, &a, &child(path, 1), goals)?;
                Ok(*b)
            }
            P::Fst(p) | P::Snd(p) => {
                let c = self.synth_major(ctx, p, Shape::And, &child(path, 0), goals)?;
                match self.hnf(&c, path, term)? {
                    Prop::And(a, b) => Ok(if matches!(term, P::Fst(_)) { *a } else { *b }),
                    h => Err(self.fail(path, term, CheckError::HeadMismatch { expected: Connective::And, found: h })),
                }
            }
            P::TApp(p, t) => {
                let c = self.synth_major(ctx, p, Shape::Forall, &child(path, 0), goals)?;
                match self.hnf(&c, path, term)? {
                    Prop::Forall(x, a) => Ok(a.substitute(&x, t)),
                    h => Err(self.fail(path, term, CheckError::HeadMismatch { expected: Connective::Forall, found: h })),
                }
            }
            P::Pair(p, q) => {
                let a = self.infer_in(ctx, p, &child(path, 0), goals)?;
                let b = self.infer_in(ctx, q, &child(path, 1), goals)?;
                Ok(Prop::and(a, b))
            }
            P::TLam(x, p) => {
                self.eigenvariable_ok(ctx, x, None, path, term)?;
                let a = self.infer_in(ctx, p, &child(path, 0), goals)?;
                Ok(Prop::forall(x.clone(), a))
            }
            P::Em(b) => {
                if !self.theory.classical {
                    return Err(self.fail(path, term, CheckError::ClassicalRuleDisabled));
                }
                Ok(Prop::or(b.clone(), Prop::negation(b.clone())))
            }
            _ => Err(self.fail(path, term, CheckError::NotInferable(term.clone()))),
        }
    }

    /// Infers the major premise of an elimination, falling back to a search
    /// over candidate formulas of the required shape when `term` is an
    /// introduction.
    fn synth_major(&self, ctx: &mut Ctx, term: &ProofTerm, shape: Shape, path: &[usize], goals: &mut Vec<Prop>) -> Res<Prop> {
        match self.infer_in(ctx, term, path, goals) {
            Err(e) if matches!(e.error, CheckError::NotInferable(_)) => {
                let mut fuel_err = None;
                for c in self.candidates(ctx, term, shape, path, goals)? {
                    match self.check_in(ctx, term, &c, path, goals) {
                        Ok(()) => return Ok(c),
                        Err(err) if err.is_fuel() => fuel_err = Some(err),
                        Err(_) => {}
                    }
                }
                Err(fuel_err.unwrap_or(e))
            }
            other => other,
        }
    }

    /// Candidate propositions for `term`, most specific first: shapes derived
    /// from the inferable parts of an introduction, then the formula pool.
    /// Candidates are filtered by the head shape of their head normal form.
    fn candidates(&self, ctx: &mut Ctx, term: &ProofTerm, shape: Shape, path: &[usize], goals: &mut Vec<Prop>) -> Res<Vec<Prop>> {
        use ProofTerm as P;
        let pool = self.pool(ctx, goals);
        let mut out = Vec::new();
        if shape == Shape::Any {
            if let Ok(p) = self.infer_in(ctx, term, path, goals) {
                out.push(p);
            }
        }
        match term {
            P::Inl(p) | P::Inr(p) => {
                if let Ok(a) = self.infer_in(ctx, p, &child(path, 0), goals) {
                    let mut others = vec![a.clone()];
                    others.extend(pool.iter().cloned());
                    for b in others {
                        out.push(if matches!(term, P::Inl(_)) { Prop::or(a.clone(), b) } else { Prop::or(b, a.clone()) });
                    }
                }
            }
            P::Witness(t, p) => {
                if let Ok(a) = self.infer_in(ctx, p, &child(path, 0), goals) {
                    let mut avoid = a.free_vars();
                    t.collect_vars(&mut avoid);
                    let x = fresh_name("x", &avoid);
                    // abstract every occurrence of a variable witness, or none
                    if let Term::Var(v) = t {
                        if a.has_free(v) {
                            out.push(Prop::exists(x.clone(), a.substitute(v, &Term::Var(x.clone()))));
                        }
                    }
                    out.push(Prop::exists(x, a));
                }
            }
            P::Lam(alpha, body) => {
                for dom in pool.iter() {
                    let r = self.with_hyp(ctx, alpha, dom.clone(), |ctx| self.infer_in(ctx, body, &child(path, 0), goals));
                    if let Ok(cod) = r {
                        out.push(Prop::implies(dom.clone(), cod));
                    }
                }
            }
            _ => {}
        }
        out.extend(pool);
        let mut seen = BTreeSet::new();
        let mut filtered = Vec::new();
        for c in out {
            if !seen.insert(c.alpha_key()) {
                continue;
            }
            let h = match self.rules().head_normalize(&c, &mut Fuel::new(self.fuel)) {
                Ok(h) => h,
                Err(_) => continue,
            };
            if shape.admits(&h) {
                filtered.push(c);
            }
        }
        Ok(filtered)
    }

    fn pool(&self, ctx: &Ctx, goals: &[Prop]) -> Vec<Prop> {
        let mut roots: Vec<&Prop> = goals.iter().rev().collect();
        roots.extend(ctx.iter().rev().map(|(_, p)| p));
        roots.extend(self.theory.axioms.values());
        let mut ground: Vec<Prop> = Vec::new();
        for r in self.rules().rules() {
            if let RuleKind::Prop { pred, args, rhs } = &r.kind {
                let lhs = Prop::Atom(pred.clone(), args.clone());
                if r.metavars().is_empty() {
                    ground.push(lhs);
                    ground.push(rhs.clone());
                }
            }
        }
        roots.extend(ground.iter());
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for root in roots {
            for sub in root.subformulas() {
                if seen.insert(sub.alpha_key()) {
                    out.push(sub.clone());
                }
            }
        }
        out
    }

    /// Side condition for a universally quantified (or existentially
    /// eliminated) variable: not free in the context, nor in `goal` if given.
    fn eigenvariable_ok(&self, ctx: &Ctx, x: &str, goal: Option<&Prop>, path: &[usize], term: &ProofTerm) -> Res<()> {
        let wrap = |e: CheckError| self.fail(path, term, e);
        if let Some(place) = self.free_in_context(ctx, x).map_err(wrap)? {
            return Err(wrap(CheckError::ScopeViolation { var: x.into(), place }));
        }
        if let Some(g) = goal {
            if self.free_modulo(g, x).map_err(wrap)? {
                return Err(wrap(CheckError::ScopeViolation { var: x.into(), place: format!("the goal {g}") }));
            }
        }
        Ok(())
    }

    fn check_in(&self, ctx: &mut Ctx, term: &ProofTerm, goal: &Prop, path: &[usize], goals: &mut Vec<Prop>) -> Res<()> {
        goals.push(goal.clone());
        let r = self.check_inner(ctx, term, goal, path, goals);
        goals.pop();
        r
    }

    fn mismatch(&self, path: &[usize], term: &ProofTerm, expected: Connective, found: Prop) -> Box<CheckFailure> {
        self.fail(path, term, CheckError::HeadMismatch { expected, found })
    }

    fn check_inner(&self, ctx: &mut Ctx, term: &ProofTerm, goal: &Prop, path: &[usize], goals: &mut Vec<Prop>) -> Res<()> {
        use ProofTerm as P;
        match term {
            P::Lam(alpha, body) => match self.hnf(goal, path, term)? {
                Prop::Implies(a, b) => self.with_hyp(ctx, alpha, *a, |ctx| self.check_in(ctx, body, &b, &child(path, 0), goals)),
                h => Err(self.mismatch(path, term, Connective::Implies, h)),
            },
            P::Pair(p, q) => match self.hnf(goal, path, term)? {
                Prop::And(a, b) => {
                    self.check_in(ctx, p, &a, &child(path, 0), goals)?;
                    self.check_in(ctx, q, &b, &child(path, 1), goals)
                }
                h => Err(self.mismatch(path, term, Connective::And, h)),
            },
            P::Inl(p) | P::Inr(p) => match self.hnf(goal, path, term)? {
                Prop::Or(a, b) => {
                    let side = if matches!(term, P::Inl(_)) { a } else { b };
                    self.check_in(ctx, p, &side, &child(path, 0), goals)
                }
                h => Err(self.mismatch(path, term, Connective::Or, h)),
            },
            P::Witness(t, p) => match self.hnf(goal, path, term)? {
                Prop::Exists(x, a) => self.check_in(ctx, p, &a.substitute(&x, t), &child(path, 0), goals),
                h => Err(self.mismatch(path, term, Connective::Exists, h)),
            },
            P::TLam(x, p) => {
                let h = self.hnf(goal, path, term)?;
                let Prop::Forall(y, a) = &h else {
                    return Err(self.mismatch(path, term, Connective::Forall, h));
                };
                self.eigenvariable_ok(ctx, x, None, path, term)?;
                if x != y && self.free_modulo(&h, x).map_err(|e| self.fail(path, term, e))? {
                    return Err(self.fail(path, term, CheckError::ScopeViolation { var: x.clone(), place: format!("the goal {h}") }));
                }
                self.check_in(ctx, p, &a.substitute(y, &Term::Var(x.clone())), &child(path, 0), goals)
            }
            P::Case(scrutinee, alpha, left, beta, right) => {
                let d = self.synth_major(ctx, scrutinee, Shape::Or, &child(path, 0), goals)?;
                match self.hnf(&d, path, term)? {
                    Prop::Or(a, b) => {
                        self.with_hyp(ctx, alpha, *a, |ctx| self.check_in(ctx, left, goal, &child(path, 1), goals))?;
                        self.with_hyp(ctx, beta, *b, |ctx| self.check_in(ctx, right, goal, &child(path, 2), goals))
                    }
                    h => Err(self.mismatch(path, term, Connective::Or, h)),
                }
            }
            P::ExElim(p, x, alpha, body) => {
                let c = self.synth_major(ctx, p, Shape::Exists, &child(path, 0), goals)?;
                match self.hnf(&c, path, term)? {
                    Prop::Exists(y, a) => {
                        self.eigenvariable_ok(ctx, x, Some(goal), path, term)?;
                        let hyp = a.substitute(&y, &Term::Var(x.clone()));
                        self.with_hyp(ctx, alpha, hyp, |ctx| self.check_in(ctx, body, goal, &child(path, 1), goals))
                    }
                    h => Err(self.mismatch(path, term, Connective::Exists, h)),
                }
            }
            P::BotElim(p) => self.check_in(ctx, p, &Prop::Bottom, &child(path, 0), goals),
            P::Em(b) => {
                if !self.theory.classical {
                    return Err(self.fail(path, term, CheckError::ClassicalRuleDisabled));
                }
                let instance = Prop::or(b.clone(), Prop::negation(b.clone()));
                if self.conv(goal, &instance, path, term)? {
                    Ok(())
                } else {
                    Err(self.not_convertible(goal, &instance, path, term))
                }
            }
            P::App(f, arg) => match self.infer_in(ctx, term, path, goals) {
                Err(e) if !e.is_fuel() && (matches!(e.error, CheckError::NotInferable(_)) || matches!(**f, P::Lam(..))) => {
                    // unannotated cut: find the argument's proposition, then check f against it ⇒ goal
                    let mut fuel_err = None;
                    for a in self.candidates(ctx, arg, Shape::Any, &child(path, 1), goals)? {
                        if self.check_in(ctx, arg, &a, &child(path, 1), goals).is_err() {
                            continue;
                        }
                        match self.check_in(ctx, f, &Prop::implies(a, goal.clone()), &child(path, 0), goals) {
                            Ok(()) => return Ok(()),
                            Err(err) if err.is_fuel() => fuel_err = Some(err),
                            Err(_) => {}
                        }
                    }
                    Err(fuel_err.unwrap_or(e))
                }
                Err(e) => Err(e),
                Ok(found) => self.expect_conv(goal, found, path, term),
            },
            P::Fst(p) | P::Snd(p) => match self.infer_in(ctx, term, path, goals) {
                Err(e) if matches!(e.error, CheckError::NotInferable(_)) => {
                    for c in self.candidates(ctx, p, Shape::And, &child(path, 0), goals)? {
                        let Ok(Prop::And(l, r)) = self.hnf(&c, path, term) else { continue };
                        let side = if matches!(term, P::Fst(_)) { l } else { r };
                        if self.conv(&side, goal, path, term)? && self.check_in(ctx, p, &c, &child(path, 0), goals).is_ok() {
                            return Ok(());
                        }
                    }
                    Err(e)
                }
                Err(e) => Err(e),
                Ok(found) => self.expect_conv(goal, found, path, term),
            },
            P::TApp(p, t) => match self.infer_in(ctx, term, path, goals) {
                Err(e) if matches!(e.error, CheckError::NotInferable(_)) => {
                    for c in self.candidates(ctx, p, Shape::Forall, &child(path, 0), goals)? {
                        let Ok(Prop::Forall(x, a)) = self.hnf(&c, path, term) else { continue };
                        if self.conv(&a.substitute(&x, t), goal, path, term)? && self.check_in(ctx, p, &c, &child(path, 0), goals).is_ok() {
                            return Ok(());
                        }
                    }
                    Err(e)
                }
                Err(e) => Err(e),
                Ok(found) => self.expect_conv(goal, found, path, term),
            },
            P::Var(_) => {
                let found = self.infer_in(ctx, term, path, goals)?;
                self.expect_conv(goal, found, path, term)
            }
        }
    }

    fn expect_conv(&self, goal: &Prop, found: Prop, path: &[usize], term: &ProofTerm) -> Res<()> {
        if self.conv(&found, goal, path, term)? {
            Ok(())
        } else {
            Err(self.not_convertible(goal, &found, path, term))
        }
    }

    /// Reports both sides by their normal forms when those are reachable.
    fn not_convertible(&self, expected: &Prop, found: &Prop, path: &[usize], term: &ProofTerm) -> Box<CheckFailure> {
        let nf = |p: &Prop| self.rules().normalize_prop(p, self.fuel).map_or_else(|_| p.clone(), |(n, _)| n);
        self.fail(path, term, CheckError::NotConvertible { expected: nf(expected), found: nf(found) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofterm::*;
    use crate::sf::builtin_theory;
    use crate::syntax::parse::parse_proofs;
    use crate::syntax::Parser;

    fn theory(name: &str) -> Theory {
        builtin_theory(name).unwrap()
    }

    fn prop(t: &Theory, src: &str) -> Prop {
        Parser::new(&t.signature).prop_str(src).unwrap()
    }

    fn proof(t: &Theory, src: &str) -> ProofTerm {
        Parser::new(&t.signature).proof_str(src).unwrap()
    }

    fn refl_ctx(t: &Theory) -> Ctx {
        vec![("alpha".into(), prop(t, "(forall x (= x x))"))]
    }

    #[test]
    fn universal_instance_is_inferred() {
        let t = theory("arithmetic");
        let got = Checker::new(&t).infer(&refl_ctx(&t), &proof(&t, "(tapp (pvar alpha) 4)")).unwrap();
        assert_eq!(got, prop(&t, "(= 4 4)"));
    }

    #[test]
    fn four_is_even() {
        let t = theory("arithmetic");
        let goal = prop(&t, "(exists x (= (times 2 x) 4))");
        let c = Checker::new(&t);
        c.check(&refl_ctx(&t), &proof(&t, "(witness 2 (tapp (pvar alpha) 4))"), &goal).unwrap();
        // the theory axiom serves as well as a local hypothesis
        c.check(&[], &proof(&t, "(witness 2 (tapp (pvar refl) 4))"), &goal).unwrap();
        let err = c.check(&refl_ctx(&t), &proof(&t, "(witness 3 (tapp (pvar alpha) 4))"), &goal).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert_eq!(
            err.error,
            CheckError::NotConvertible { expected: prop(&t, "(= 6 4)"), found: prop(&t, "(= 4 4)") }
        );
    }

    #[test]
    fn crabbe_snd_unfolds_the_hypothesis() {
        let t = theory("crabbe");
        let ctx = vec![("a".to_string(), Prop::atom("A", vec![]))];
        let got = Checker::new(&t).infer(&ctx, &snd(pvar("a"))).unwrap();
        assert_eq!(got, Prop::negation(Prop::atom("A", vec![])));
    }

    #[test]
    fn crabbe_proof_of_not_b_checks() {
        let t = theory("crabbe");
        let objs = parse_proofs(include_str!("../examples/bot-from-b.prf"), &t.signature).unwrap();
        Checker::new(&t).check_object(&objs[0]).unwrap();
    }

    #[test]
    fn identity() {
        let t = Theory::default();
        let a = Prop::atom("A", vec![]);
        Checker::new(&t).check(&[], &lam("a", pvar("a")), &Prop::implies(a.clone(), a)).unwrap();
    }

    #[test]
    fn no_proof_of_bottom_in_empty_sf() {
        let t = theory("sf-empty");
        let c = Checker::new(&t);
        for src in ["(pvar a)", "(botelim (pvar a))", "(app (lam a (pvar a)) (lam a (pvar a)))"] {
            assert!(c.check(&[], &proof(&t, src), &Prop::Bottom).is_err());
        }
    }

    #[test]
    fn integral_domain_case_split() {
        let t = theory("integral-domain");
        let goal = prop(&t, "(=> (= (times x y) 0) (or (= y 0) (= x 0)))");
        let p = proof(&t, "(lam h (case (pvar h) (l (inr (pvar l))) (r (inl (pvar r)))))");
        Checker::new(&t).check(&[], &p, &goal).unwrap();
    }

    #[test]
    fn eigenvariable_conditions() {
        let t = Theory::new(Signature::membership());
        let c = Checker::new(&t);
        let pxy = prop(&t, "(in x y)");
        let ctx = vec![("h".to_string(), pxy.clone())];
        // x is free in the hypothesis
        let err = c.check(&ctx, &tlam("x", pvar("h")), &prop(&t, "(forall x (in x y))")).unwrap_err();
        assert!(matches!(err.error, CheckError::ScopeViolation { .. }));
        // x escapes through the goal
        let ex = prop(&t, "(exists z (in z y))");
        let ctx = vec![("e".to_string(), ex.clone())];
        let bad = exelim(pvar("e"), "x", "a", pvar("a"));
        assert!(matches!(c.check(&ctx, &bad, &pxy).unwrap_err().error, CheckError::ScopeViolation { .. }));
        let good = exelim(pvar("e"), "x", "a", witness(Term::var("x"), pvar("a")));
        c.check(&ctx, &good, &ex).unwrap();
    }

    #[test]
    fn excluded_middle_needs_the_flag() {
        let mut t = Theory::default();
        let a = Prop::atom("A", vec![]);
        let goal = Prop::or(a.clone(), Prop::negation(a.clone()));
        let em = ProofTerm::Em(a);
        assert_eq!(Checker::new(&t).check(&[], &em, &goal).unwrap_err().error, CheckError::ClassicalRuleDisabled);
        t.classical = true;
        Checker::new(&t).check(&[], &em, &goal).unwrap();
    }

    #[test]
    fn errors_name_the_connective() {
        let t = Theory::default();
        let a = Prop::atom("A", vec![]);
        let err = Checker::new(&t).check(&[], &pair(pvar("x"), pvar("y")), &a).unwrap_err();
        assert!(matches!(err.error, CheckError::HeadMismatch { expected: Connective::And, .. }));
        let err = Checker::new(&t).infer(&[], &pvar("nope")).unwrap_err();
        assert_eq!(err.error, CheckError::UnboundProofVariable("nope".into()));
    }

    #[test]
    fn congruent_goals_are_interchangeable() {
        let t = theory("arithmetic");
        let c = Checker::new(&t);
        let p = proof(&t, "(tlam y (tapp (pvar refl) y))");
        c.check(&[], &p, &prop(&t, "(forall y (= (plus 0 y) y))")).unwrap();
        c.check(&[], &p, &prop(&t, "(forall y (= y y))")).unwrap();
    }

    #[test]
    fn cut_on_a_disjunction_is_recovered() {
        let t = theory("crabbe");
        let b = Prop::atom("B", vec![]);
        let p = lam("b", case(inl(pvar("b")), "l", pvar("l"), "r", pvar("r")));
        Checker::new(&t).check(&[], &p, &Prop::implies(b.clone(), b)).unwrap();
    }

    #[test]
    fn tight_fuel_is_reported_as_fuel() {
        let t = theory("arithmetic");
        let goal = prop(&t, "(exists x (= (times 20 x) 400))");
        let err = Checker::new(&t).with_fuel(5).check(&[], &proof(&t, "(witness 20 (tapp (pvar refl) 400))"), &goal).unwrap_err();
        assert!(err.is_fuel());
    }
}
