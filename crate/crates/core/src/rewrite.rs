//! Congruence engine: term rules and proposition rules, normal forms, the
//! congruence test, and the confluence/termination certificate checkers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::term::is_meta_name;
use crate::syntax::{Prop, Term};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// `lhs → rhs` on terms.
    Term { lhs: Term, rhs: Term },
    /// `P(lhs_args) → rhs`, rewriting an atomic proposition.
    Prop { pred: String, args: Vec<Term>, rhs: Prop },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub kind: RuleKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule `{0}`: the left-hand side of a term rule cannot be a variable")]
    VariableLhs(String),
    #[error("rule `{rule}`: `{var}` occurs on the right but not on the left")]
    UnboundRhsVariable { rule: String, var: String },
    #[error("duplicate rule name `{0}`")]
    DuplicateName(String),
}

impl RewriteRule {
    pub fn term(name: impl Into<String>, lhs: Term, rhs: Term) -> Result<Self, RuleError> {
        let name = name.into();
        if matches!(lhs, Term::Var(_)) {
            return Err(RuleError::VariableLhs(name));
        }
        let lhs_vars = lhs.free_vars();
        if let Some(v) = rhs.free_vars().into_iter().find(|v| !lhs_vars.contains(v)) {
            return Err(RuleError::UnboundRhsVariable { rule: name, var: v });
        }
        Ok(Self { name, kind: RuleKind::Term { lhs, rhs } })
    }

    pub fn prop(name: impl Into<String>, pred: impl Into<String>, args: Vec<Term>, rhs: Prop) -> Result<Self, RuleError> {
        let name = name.into();
        let mut lhs_vars = BTreeSet::new();
        args.iter().for_each(|a| a.collect_vars(&mut lhs_vars));
        if let Some(v) = rhs.free_vars().into_iter().find(|v| !lhs_vars.contains(v)) {
            return Err(RuleError::UnboundRhsVariable { rule: name, var: v });
        }
        Ok(Self { name, kind: RuleKind::Prop { pred: pred.into(), args, rhs } })
    }

    /// Left-hand side seen as a term; for proposition rules the predicate
    /// plays the role of the head symbol.
    pub fn lhs_as_term(&self) -> Term {
        match &self.kind {
            RuleKind::Term { lhs, .. } => lhs.clone(),
            RuleKind::Prop { pred, args, .. } => Term::App(pred.clone(), args.clone()),
        }
    }

    pub fn is_prop_rule(&self) -> bool {
        matches!(self.kind, RuleKind::Prop { .. })
    }

    pub fn metavars(&self) -> BTreeSet<String> {
        self.lhs_as_term().free_vars().into_iter().filter(|v| is_meta_name(v)).collect()
    }

    /// Instantiates the rule at the root of `t`, if it matches.
    pub fn apply_term(&self, t: &Term) -> Option<Term> {
        let RuleKind::Term { lhs, rhs } = &self.kind else { return None };
        let mut b = BTreeMap::new();
        match_pattern(lhs, t, &mut b).then(|| rhs.subst(&b))
    }

    /// Instantiates the rule at the root of the atom `pred(args)`, if it matches.
    pub fn apply_atom(&self, pred: &str, args: &[Term]) -> Option<Prop> {
        let RuleKind::Prop { pred: p, args: pats, rhs } = &self.kind else { return None };
        if p != pred || pats.len() != args.len() {
            return None;
        }
        let mut b = BTreeMap::new();
        for (pat, arg) in pats.iter().zip(args) {
            if !match_pattern(pat, arg, &mut b) {
                return None;
            }
        }
        Some(rhs.subst(&b))
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RuleKind::Term { lhs, rhs } => write!(f, "(term-rule {lhs} {rhs})"),
            RuleKind::Prop { pred, args, rhs } => {
                write!(f, "(prop-rule {} {rhs})", Prop::Atom(pred.clone(), args.clone()))
            }
        }
    }
}

/// Syntactic matching; metavariables bind (consistently, if repeated),
/// every other variable only matches itself.
pub fn match_pattern(pat: &Term, t: &Term, b: &mut BTreeMap<String, Term>) -> bool {
    match pat {
        Term::Var(v) if is_meta_name(v) => match b.get(v) {
            Some(bound) => bound == t,
            None => {
                b.insert(v.clone(), t.clone());
                true
            }
        },
        Term::Var(v) => matches!(t, Term::Var(w) if w == v),
        Term::App(f, ps) => match t {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                ps.iter().zip(ts).all(|(p, t)| match_pattern(p, t, b))
            }
            _ => false,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    LeftmostOutermost,
}

/// Normalization ran out of steps.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("fuel exhausted after {steps} rewrite step(s); last reached: {last}")]
pub struct FuelExhausted<T: fmt::Display> {
    pub last: T,
    pub steps: usize,
}

/// A shared step budget.
#[derive(Clone, Copy, Debug)]
pub struct Fuel {
    remaining: usize,
    spent: usize,
}

impl Fuel {
    pub fn new(steps: usize) -> Self {
        Self { remaining: steps, spent: 0 }
    }

    pub fn spent(&self) -> usize {
        self.spent
    }

    fn take(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        self.spent += 1;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    pub fuel_default: usize,
}

impl Default for RewriteSystem {
    fn default() -> Self {
        Self { rules: Vec::new(), fuel_default: DEFAULT_FUEL }
    }
}

impl RewriteSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rules(rules: impl IntoIterator<Item = RewriteRule>) -> Result<Self, RuleError> {
        let mut sys = Self::new();
        for r in rules {
            sys.push(r)?;
        }
        Ok(sys)
    }

    pub fn push(&mut self, rule: RewriteRule) -> Result<(), RuleError> {
        if self.rules.iter().any(|r| r.name == rule.name) {
            return Err(RuleError::DuplicateName(rule.name));
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    fn rewrite_term_root(&self, t: &Term) -> Option<Term> {
        self.rules.iter().find_map(|r| r.apply_term(t))
    }

    fn rewrite_atom_root(&self, pred: &str, args: &[Term]) -> Option<Prop> {
        self.rules.iter().find_map(|r| r.apply_atom(pred, args))
    }

    /// One rewrite step on a term under `strategy`, or `None` if `t` is normal.
    pub fn step_term(&self, t: &Term, strategy: Strategy) -> Option<Term> {
        if strategy == Strategy::LeftmostOutermost {
            if let Some(r) = self.rewrite_term_root(t) {
                return Some(r);
            }
        }
        if let Term::App(f, args) = t {
            if let Some(new_args) = self.step_args(args, strategy) {
                return Some(Term::App(f.clone(), new_args));
            }
        }
        if strategy == Strategy::LeftmostInnermost {
            return self.rewrite_term_root(t);
        }
        None
    }

    fn step_args(&self, args: &[Term], strategy: Strategy) -> Option<Vec<Term>> {
        for (i, a) in args.iter().enumerate() {
            if let Some(r) = self.step_term(a, strategy) {
                let mut out = args.to_vec();
                out[i] = r;
                return Some(out);
            }
        }
        None
    }

    /// One rewrite step on a proposition under `strategy`.
    pub fn step_prop(&self, p: &Prop, strategy: Strategy) -> Option<Prop> {
        match p {
            Prop::Atom(pred, args) => {
                if strategy == Strategy::LeftmostOutermost {
                    if let Some(r) = self.rewrite_atom_root(pred, args) {
                        return Some(r);
                    }
                }
                if let Some(new_args) = self.step_args(args, strategy) {
                    return Some(Prop::Atom(pred.clone(), new_args));
                }
                if strategy == Strategy::LeftmostInnermost {
                    return self.rewrite_atom_root(pred, args);
                }
                None
            }
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                let rebuild = |x: Prop, y: Prop| match p {
                    Prop::Implies(..) => Prop::implies(x, y),
                    Prop::And(..) => Prop::and(x, y),
                    _ => Prop::or(x, y),
                };
                if let Some(a2) = self.step_prop(a, strategy) {
                    return Some(rebuild(a2, (**b).clone()));
                }
                self.step_prop(b, strategy).map(|b2| rebuild((**a).clone(), b2))
            }
            Prop::Bottom => None,
            Prop::Forall(x, a) => self.step_prop(a, strategy).map(|a2| Prop::Forall(x.clone(), Box::new(a2))),
            Prop::Exists(x, a) => self.step_prop(a, strategy).map(|a2| Prop::Exists(x.clone(), Box::new(a2))),
        }
    }

    /// Every one-step reduct of a term, at every position and by every rule.
    pub fn term_reducts(&self, t: &Term) -> Vec<Term> {
        let mut out: Vec<Term> = self.rules.iter().filter_map(|r| r.apply_term(t)).collect();
        if let Term::App(f, args) = t {
            for (i, a) in args.iter().enumerate() {
                for r in self.term_reducts(a) {
                    let mut new_args = args.clone();
                    new_args[i] = r;
                    out.push(Term::App(f.clone(), new_args));
                }
            }
        }
        out
    }

    /// Every one-step reduct of a proposition.
    pub fn prop_reducts(&self, p: &Prop) -> Vec<Prop> {
        match p {
            Prop::Atom(pred, args) => {
                let mut out: Vec<Prop> = self.rules.iter().filter_map(|r| r.apply_atom(pred, args)).collect();
                for (i, a) in args.iter().enumerate() {
                    for r in self.term_reducts(a) {
                        let mut new_args = args.clone();
                        new_args[i] = r;
                        out.push(Prop::Atom(pred.clone(), new_args));
                    }
                }
                out
            }
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                let rebuild = |x: Prop, y: Prop| match p {
                    Prop::Implies(..) => Prop::implies(x, y),
                    Prop::And(..) => Prop::and(x, y),
                    _ => Prop::or(x, y),
                };
                let mut out: Vec<Prop> = self.prop_reducts(a).into_iter().map(|x| rebuild(x, (**b).clone())).collect();
                out.extend(self.prop_reducts(b).into_iter().map(|y| rebuild((**a).clone(), y)));
                out
            }
            Prop::Bottom => vec![],
            Prop::Forall(x, a) => self.prop_reducts(a).into_iter().map(|r| Prop::forall(x.clone(), r)).collect(),
            Prop::Exists(x, a) => self.prop_reducts(a).into_iter().map(|r| Prop::exists(x.clone(), r)).collect(),
        }
    }

    pub fn normalize_term(&self, t: &Term, fuel: usize) -> Result<(Term, usize), FuelExhausted<Term>> {
        let mut cur = t.clone();
        let mut steps = 0;
        while let Some(next) = self.step_term(&cur, Strategy::LeftmostInnermost) {
            if steps == fuel {
                return Err(FuelExhausted { last: cur, steps });
            }
            cur = next;
            steps += 1;
        }
        Ok((cur, steps))
    }

    /// Leftmost-innermost normal form with the number of steps taken.
    pub fn normalize_prop(&self, p: &Prop, fuel: usize) -> Result<(Prop, usize), FuelExhausted<Prop>> {
        self.normalize_prop_with(p, fuel, Strategy::LeftmostInnermost)
    }

    pub fn normalize_prop_with(
        &self,
        p: &Prop,
        fuel: usize,
        strategy: Strategy,
    ) -> Result<(Prop, usize), FuelExhausted<Prop>> {
        let mut cur = p.clone();
        let mut steps = 0;
        while let Some(next) = self.step_prop(&cur, strategy) {
            if steps == fuel {
                return Err(FuelExhausted { last: cur, steps });
            }
            cur = next;
            steps += 1;
        }
        Ok((cur, steps))
    }

    /// `A ≡ B`, decided by comparing normal forms up to alpha.
    pub fn equiv(&self, a: &Prop, b: &Prop, fuel: usize) -> Result<bool, FuelExhausted<Prop>> {
        let (na, _) = self.normalize_prop(a, fuel)?;
        let (nb, _) = self.normalize_prop(b, fuel)?;
        Ok(na.alpha_eq(&nb))
    }

    /// Rewrites `p` until its head is a connective or an atom that no rule
    /// rewrites at the root. Atom arguments are normalized along the way.
    pub fn head_normalize(&self, p: &Prop, fuel: &mut Fuel) -> Result<Prop, FuelExhausted<Prop>> {
        let mut cur = p.clone();
        loop {
            let Prop::Atom(pred, args) = &cur else { return Ok(cur) };
            let next = match self.step_args(args, Strategy::LeftmostInnermost) {
                Some(new_args) => Prop::Atom(pred.clone(), new_args),
                None => match self.rewrite_atom_root(pred, args) {
                    Some(r) => r,
                    None => return Ok(cur),
                },
            };
            if !fuel.take() {
                return Err(FuelExhausted { last: cur, steps: fuel.spent() });
            }
            cur = next;
        }
    }

    /// `A ≡ B`, computed lazily: syntactic identity first, then head normal
    /// forms compared connective by connective. Agrees with [`Self::equiv`]
    /// on confluent terminating systems and also answers many questions on
    /// non-terminating ones where full normal forms do not exist.
    pub fn convertible(&self, a: &Prop, b: &Prop, fuel: &mut Fuel) -> Result<bool, FuelExhausted<Prop>> {
        if a.alpha_eq(b) {
            return Ok(true);
        }
        let ha = self.head_normalize(a, fuel)?;
        let hb = self.head_normalize(b, fuel)?;
        match (&ha, &hb) {
            (Prop::Atom(p, xs), Prop::Atom(q, ys)) => Ok(p == q && xs == ys),
            (Prop::Implies(a1, a2), Prop::Implies(b1, b2))
            | (Prop::And(a1, a2), Prop::And(b1, b2))
            | (Prop::Or(a1, a2), Prop::Or(b1, b2)) => {
                Ok(self.convertible(a1, b1, fuel)? && self.convertible(a2, b2, fuel)?)
            }
            (Prop::Bottom, Prop::Bottom) => Ok(true),
            (Prop::Forall(x, a1), Prop::Forall(y, b1)) | (Prop::Exists(x, a1), Prop::Exists(y, b1)) => {
                let mut avoid = ha.free_vars();
                avoid.extend(hb.free_vars());
                avoid.insert(x.clone());
                avoid.insert(y.clone());
                let z = Term::Var(crate::syntax::term::fresh_name("z", &avoid));
                self.convertible(&a1.substitute(x, &z), &b1.substitute(y, &z), fuel)
            }
            _ => Ok(false),
        }
    }

    /// Left-linearity and absence of critical pairs.
    pub fn check_orthogonality(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for r in &self.rules {
            let mut seen = BTreeSet::new();
            let mut dup = BTreeSet::new();
            collect_metavar_occurrences(&r.lhs_as_term(), &mut seen, &mut dup);
            for var in dup {
                out.push(Violation::NonLeftLinear { rule: r.name.clone(), var });
            }
        }
        for outer in &self.rules {
            let outer_lhs = outer.lhs_as_term();
            for (pos, sub) in positions(&outer_lhs) {
                if matches!(sub, Term::Var(_)) {
                    continue;
                }
                let at_root = pos.is_empty();
                for inner in &self.rules {
                    // prop rules only live at the root of an atom, term rules never do
                    if inner.is_prop_rule() != (outer.is_prop_rule() && at_root) {
                        continue;
                    }
                    if at_root && std::ptr::eq(inner, outer) {
                        continue;
                    }
                    let renamed = rename_metavars(&inner.lhs_as_term(), "'");
                    if unify(sub, &renamed).is_some() {
                        out.push(Violation::Overlap {
                            outer: outer.name.clone(),
                            inner: inner.name.clone(),
                            position: pos.clone(),
                        });
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonLeftLinear { rule: String, var: String },
    /// `inner`'s left-hand side unifies with `outer`'s at `position`.
    Overlap { outer: String, inner: String, position: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonLeftLinear { rule, var } => write!(f, "rule `{rule}` is not left-linear in `{var}`"),
            Violation::Overlap { outer, inner, position } if position.is_empty() => {
                write!(f, "rules `{outer}` and `{inner}` overlap at the root")
            }
            Violation::Overlap { outer, inner, position } => {
                write!(f, "rule `{inner}` overlaps rule `{outer}` at position {position:?}")
            }
        }
    }
}

fn collect_metavar_occurrences(t: &Term, seen: &mut BTreeSet<String>, dup: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) if is_meta_name(v) => {
            if !seen.insert(v.clone()) {
                dup.insert(v.clone());
            }
        }
        Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| collect_metavar_occurrences(a, seen, dup)),
    }
}

fn positions(t: &Term) -> Vec<(Vec<usize>, &Term)> {
    let mut out = vec![(Vec::new(), t)];
    if let Term::App(_, args) = t {
        for (i, a) in args.iter().enumerate() {
            for (mut p, s) in positions(a) {
                p.insert(0, i);
                out.push((p, s));
            }
        }
    }
    out
}

fn rename_metavars(t: &Term, suffix: &str) -> Term {
    match t {
        Term::Var(v) if is_meta_name(v) => Term::Var(format!("{v}{suffix}")),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_metavars(a, suffix)).collect()),
    }
}

fn resolve(t: &Term, s: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => match s.get(v) {
            Some(u) => resolve(u, s),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| resolve(a, s)).collect()),
    }
}

/// Syntactic unification treating metavariables as unknowns and every other
/// variable as a constant.
pub fn unify(a: &Term, b: &Term) -> Option<BTreeMap<String, Term>> {
    let mut s = BTreeMap::new();
    let mut work = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = work.pop() {
        let x = resolve(&x, &s);
        let y = resolve(&y, &s);
        match (&x, &y) {
            _ if x == y => {}
            (Term::Var(v), other) | (other, Term::Var(v)) if is_meta_name(v) => {
                if other.occurs(v) {
                    return None;
                }
                s.insert(v.clone(), other.clone());
            }
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                work.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            _ => return None,
        }
    }
    Some(s)
}

/// Multiset of per-atom function-symbol counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomMeasure(BTreeMap<usize, usize>);

impl AtomMeasure {
    pub fn of(p: &Prop) -> Self {
        let mut m = BTreeMap::new();
        for (_, args) in p.atoms() {
            let count: usize = args.iter().map(Term::symbol_count).sum();
            *m.entry(count).or_insert(0) += 1;
        }
        AtomMeasure(m)
    }

    pub fn from_counts(counts: impl IntoIterator<Item = usize>) -> Self {
        let mut m = BTreeMap::new();
        for c in counts {
            *m.entry(c).or_insert(0) += 1;
        }
        AtomMeasure(m)
    }

    /// Elements with multiplicity, ascending.
    pub fn counts(&self) -> Vec<usize> {
        self.0.iter().flat_map(|(&k, &n)| std::iter::repeat_n(k, n)).collect()
    }

    /// Strict Dershowitz–Manna comparison `self < other`.
    pub fn lt(&self, other: &AtomMeasure) -> bool {
        if self == other {
            return false;
        }
        let mult = |m: &BTreeMap<usize, usize>, k: usize| m.get(&k).copied().unwrap_or(0);
        self.0.keys().all(|&x| {
            mult(&self.0, x) <= mult(&other.0, x)
                || other.0.iter().any(|(&y, &ny)| y > x && ny > mult(&self.0, y))
        })
    }
}

/// Whether the one-step reduct `b` of `a` has a strictly smaller atom measure.
pub fn sf_measure_decreases(a: &Prop, b: &Prop) -> bool {
    AtomMeasure::of(b).lt(&AtomMeasure::of(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn c(x: &str) -> Term {
        Term::constant(x)
    }

    fn arith() -> RewriteSystem {
        let z = c("0");
        let s = |t: Term| Term::app("S", vec![t]);
        let plus = |a: Term, b: Term| Term::app("plus", vec![a, b]);
        let times = |a: Term, b: Term| Term::app("times", vec![a, b]);
        RewriteSystem::from_rules([
            RewriteRule::term("r0", plus(z.clone(), v("?y")), v("?y")).unwrap(),
            RewriteRule::term("r1", plus(s(v("?x")), v("?y")), s(plus(v("?x"), v("?y")))).unwrap(),
            RewriteRule::term("r2", times(z.clone(), v("?y")), z).unwrap(),
            RewriteRule::term("r3", times(s(v("?x")), v("?y")), plus(times(v("?x"), v("?y")), v("?y"))).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn two_times_two_is_four() {
        let p = Prop::atom("=", vec![Term::app("times", vec![Term::numeral(2), Term::numeral(2)]), Term::numeral(4)]);
        let (nf, steps) = arith().normalize_prop(&p, 100).unwrap();
        assert_eq!(nf, Prop::atom("=", vec![Term::numeral(4), Term::numeral(4)]));
        assert!(steps > 0);
    }

    #[test]
    fn fuel_exhaustion_reports_last_prop() {
        let p = Prop::atom("=", vec![Term::app("times", vec![Term::numeral(3), Term::numeral(3)]), v("y")]);
        let err = arith().normalize_prop(&p, 2).unwrap_err();
        assert_eq!(err.steps, 2);
        assert!(!err.last.alpha_eq(&p));
    }

    #[test]
    fn innermost_and_outermost_agree_on_arithmetic() {
        let t = Term::app("times", vec![Term::numeral(3), Term::app("plus", vec![Term::numeral(1), Term::numeral(2)])]);
        let p = Prop::atom("=", vec![t, v("x")]);
        let a = arith().normalize_prop_with(&p, 1000, Strategy::LeftmostInnermost).unwrap().0;
        let b = arith().normalize_prop_with(&p, 1000, Strategy::LeftmostOutermost).unwrap().0;
        assert_eq!(a, b);
        assert_eq!(a, Prop::atom("=", vec![Term::numeral(9), v("x")]));
    }

    #[test]
    fn arithmetic_is_orthogonal() {
        assert_eq!(arith().check_orthogonality(), Ok(()));
    }

    #[test]
    fn non_left_linear_rule_is_reported() {
        let sys = RewriteSystem::from_rules([RewriteRule::term("g", Term::app("g", vec![v("?x"), v("?x")]), v("?x")).unwrap()]).unwrap();
        let errs = sys.check_orthogonality().unwrap_err();
        assert!(errs.contains(&Violation::NonLeftLinear { rule: "g".into(), var: "?x".into() }));
    }

    #[test]
    fn root_overlap_is_reported() {
        let sys = RewriteSystem::from_rules([
            RewriteRule::term("ab", c("a"), c("b")).unwrap(),
            RewriteRule::term("ac", c("a"), c("c")).unwrap(),
        ])
        .unwrap();
        let errs = sys.check_orthogonality().unwrap_err();
        assert!(errs.contains(&Violation::Overlap { outer: "ab".into(), inner: "ac".into(), position: vec![] }));
    }

    #[test]
    fn self_overlap_below_root_is_reported() {
        // f(f(?x)) -> ?x overlaps itself at position [0]
        let f = |t: Term| Term::app("f", vec![t]);
        let sys = RewriteSystem::from_rules([RewriteRule::term("ff", f(f(v("?x"))), v("?x")).unwrap()]).unwrap();
        let errs = sys.check_orthogonality().unwrap_err();
        assert_eq!(errs, vec![Violation::Overlap { outer: "ff".into(), inner: "ff".into(), position: vec![0] }]);
    }

    #[test]
    fn term_rule_inside_prop_rule_lhs_is_an_overlap() {
        let mut sys = arith();
        let lhs = vec![Term::app("times", vec![v("?x"), v("?y")]), c("0")];
        let rhs = Prop::or(
            Prop::atom("=", vec![v("?x"), c("0")]),
            Prop::atom("=", vec![v("?y"), c("0")]),
        );
        sys.push(RewriteRule::prop("dom", "=", lhs, rhs).unwrap()).unwrap();
        let errs = sys.check_orthogonality().unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, Violation::Overlap { outer, .. } if outer == "dom")));
    }

    #[test]
    fn rhs_variables_must_occur_on_the_left() {
        assert!(matches!(
            RewriteRule::term("bad", c("a"), v("?z")),
            Err(RuleError::UnboundRhsVariable { .. })
        ));
        assert!(matches!(RewriteRule::term("bad", v("?z"), c("a")), Err(RuleError::VariableLhs(_))));
    }

    #[test]
    fn prop_rule_substitution_avoids_capture() {
        // ?x ∈ g(?y) → ∀z (z ∈ ?y ⇒ ?x ∈ z), applied to z ∈ g(w)
        let rhs = Prop::forall("z", Prop::implies(Prop::mem(v("z"), v("?y")), Prop::mem(v("?x"), v("z"))));
        let rule = RewriteRule::prop("g", "in", vec![v("?x"), Term::app("g", vec![v("?y")])], rhs).unwrap();
        let out = rule.apply_atom("in", &[v("z"), Term::app("g", vec![v("w")])]).unwrap();
        let want = Prop::forall("u", Prop::implies(Prop::mem(v("u"), v("w")), Prop::mem(v("z"), v("u"))));
        assert_eq!(out, want);
    }

    #[test]
    fn multiset_order() {
        let m = |c: &[usize]| AtomMeasure::from_counts(c.iter().copied());
        assert!(m(&[0]).lt(&m(&[1])));
        assert!(m(&[0, 0, 0, 1, 1]).lt(&m(&[2])));
        assert!(!m(&[1]).lt(&m(&[1])));
        assert!(!m(&[2]).lt(&m(&[1, 1])));
        assert!(m(&[1, 1]).lt(&m(&[2])));
        assert!(m(&[]).lt(&m(&[0])));
        assert!(!m(&[0]).lt(&m(&[])));
    }

    #[test]
    fn measure_of_single_step() {
        let f = |t: Term| Term::app("f", vec![t]);
        let a = Prop::mem(v("t2"), f(v("t1")));
        let b = Prop::mem(v("t2"), v("t1"));
        assert_eq!(AtomMeasure::of(&a).counts(), vec![1]);
        assert_eq!(AtomMeasure::of(&b).counts(), vec![0]);
        assert!(sf_measure_decreases(&a, &b));
        assert!(!sf_measure_decreases(&a, &a));
    }

    #[test]
    fn head_normalization_stops_at_a_connective() {
        // A → B ∧ (A ⇒ ⊥) never terminates, but its head is reached in one step.
        let a = Prop::atom("A", vec![]);
        let b = Prop::atom("B", vec![]);
        let rhs = Prop::and(b.clone(), Prop::negation(a.clone()));
        let sys = RewriteSystem::from_rules([RewriteRule::prop("crabbe", "A", vec![], rhs.clone()).unwrap()]).unwrap();
        let mut fuel = Fuel::new(10);
        assert_eq!(sys.head_normalize(&a, &mut fuel).unwrap(), rhs);
        assert_eq!(fuel.spent(), 1);
        assert!(sys.convertible(&a, &rhs, &mut Fuel::new(10)).unwrap());
        assert!(sys.normalize_prop(&a, 50).is_err());
    }
}
