//! Proof terms for natural deduction, their one-step reduction and a
//! cut-elimination driver.
//!
//! Proof variables and term variables live in separate namespaces. `Em` is a
//! classical leaf inhabiting `B ∨ (B ⇒ ⊥)`; it has no reduction rule.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::syntax::term::{fresh_name, write_term_key};
use crate::syntax::{Prop, Term};

#[derive(Clone, Debug)]
pub enum ProofTerm {
    Var(String),
    Lam(String, Box<ProofTerm>),
    App(Box<ProofTerm>, Box<ProofTerm>),
    Pair(Box<ProofTerm>, Box<ProofTerm>),
    Fst(Box<ProofTerm>),
    Snd(Box<ProofTerm>),
    Inl(Box<ProofTerm>),
    Inr(Box<ProofTerm>),
    /// `(δ π₁ α π₂ β π₃)`
    Case(Box<ProofTerm>, String, Box<ProofTerm>, String, Box<ProofTerm>),
    BotElim(Box<ProofTerm>),
    TLam(String, Box<ProofTerm>),
    TApp(Box<ProofTerm>, Term),
    Witness(Term, Box<ProofTerm>),
    /// `(exelim π x α π′)`: binds the term variable `x` and the proof variable `α` in `π′`.
    ExElim(Box<ProofTerm>, String, String, Box<ProofTerm>),
    Em(Prop),
}

use ProofTerm as P;

pub fn pvar(a: &str) -> ProofTerm {
    P::Var(a.into())
}

pub fn lam(a: &str, body: ProofTerm) -> ProofTerm {
    P::Lam(a.into(), Box::new(body))
}

pub fn app(f: ProofTerm, x: ProofTerm) -> ProofTerm {
    P::App(Box::new(f), Box::new(x))
}

pub fn pair(a: ProofTerm, b: ProofTerm) -> ProofTerm {
    P::Pair(Box::new(a), Box::new(b))
}

pub fn fst(p: ProofTerm) -> ProofTerm {
    P::Fst(Box::new(p))
}

pub fn snd(p: ProofTerm) -> ProofTerm {
    P::Snd(Box::new(p))
}

pub fn inl(p: ProofTerm) -> ProofTerm {
    P::Inl(Box::new(p))
}

pub fn inr(p: ProofTerm) -> ProofTerm {
    P::Inr(Box::new(p))
}

pub fn case(p: ProofTerm, a: &str, left: ProofTerm, b: &str, right: ProofTerm) -> ProofTerm {
    P::Case(Box::new(p), a.into(), Box::new(left), b.into(), Box::new(right))
}

pub fn botelim(p: ProofTerm) -> ProofTerm {
    P::BotElim(Box::new(p))
}

pub fn tlam(x: &str, body: ProofTerm) -> ProofTerm {
    P::TLam(x.into(), Box::new(body))
}

pub fn tapp(p: ProofTerm, t: Term) -> ProofTerm {
    P::TApp(Box::new(p), t)
}

pub fn witness(t: Term, p: ProofTerm) -> ProofTerm {
    P::Witness(t, Box::new(p))
}

pub fn exelim(p: ProofTerm, x: &str, a: &str, body: ProofTerm) -> ProofTerm {
    P::ExElim(Box::new(p), x.into(), a.into(), Box::new(body))
}

impl ProofTerm {
    /// A proof variable or an elimination form.
    pub fn is_neutral(&self) -> bool {
        matches!(
            self,
            P::Var(_) | P::App(..) | P::Fst(_) | P::Snd(_) | P::Case(..) | P::BotElim(_) | P::TApp(..) | P::ExElim(..)
        )
    }

    pub fn is_introduction(&self) -> bool {
        matches!(self, P::Lam(..) | P::Pair(..) | P::Inl(_) | P::Inr(_) | P::TLam(..) | P::Witness(..) | P::Em(_))
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Immediate proof subterms, left to right.
    pub fn children(&self) -> Vec<&ProofTerm> {
        match self {
            P::Var(_) | P::Em(_) => vec![],
            P::Lam(_, b) | P::Fst(b) | P::Snd(b) | P::Inl(b) | P::Inr(b) | P::BotElim(b) | P::TLam(_, b) => vec![b],
            P::TApp(b, _) | P::Witness(_, b) => vec![b],
            P::App(a, b) | P::Pair(a, b) | P::ExElim(a, _, _, b) => vec![a, b],
            P::Case(a, _, b, _, c) => vec![a, b, c],
        }
    }

    fn map_children(&self, mut f: impl FnMut(usize, &ProofTerm) -> ProofTerm) -> ProofTerm {
        let b = |i: usize, p: &ProofTerm, f: &mut dyn FnMut(usize, &ProofTerm) -> ProofTerm| Box::new(f(i, p));
        match self {
            P::Var(_) | P::Em(_) => self.clone(),
            P::Lam(a, x) => P::Lam(a.clone(), b(0, x, &mut f)),
            P::App(x, y) => P::App(b(0, x, &mut f), b(1, y, &mut f)),
            P::Pair(x, y) => P::Pair(b(0, x, &mut f), b(1, y, &mut f)),
            P::Fst(x) => P::Fst(b(0, x, &mut f)),
            P::Snd(x) => P::Snd(b(0, x, &mut f)),
            P::Inl(x) => P::Inl(b(0, x, &mut f)),
            P::Inr(x) => P::Inr(b(0, x, &mut f)),
            P::Case(x, a, y, c, z) => P::Case(b(0, x, &mut f), a.clone(), b(1, y, &mut f), c.clone(), b(2, z, &mut f)),
            P::BotElim(x) => P::BotElim(b(0, x, &mut f)),
            P::TLam(v, x) => P::TLam(v.clone(), b(0, x, &mut f)),
            P::TApp(x, t) => P::TApp(b(0, x, &mut f), t.clone()),
            P::Witness(t, x) => P::Witness(t.clone(), b(0, x, &mut f)),
            P::ExElim(x, v, a, y) => P::ExElim(b(0, x, &mut f), v.clone(), a.clone(), b(1, y, &mut f)),
        }
    }

    pub fn free_proof_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_proof_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_proof_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let under = |name: &str, body: &ProofTerm, bound: &mut Vec<String>, out: &mut BTreeSet<String>| {
            bound.push(name.to_string());
            body.collect_free_proof_vars(bound, out);
            bound.pop();
        };
        match self {
            P::Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            P::Lam(a, body) => under(a, body, bound, out),
            P::Case(x, a, l, b, r) => {
                x.collect_free_proof_vars(bound, out);
                under(a, l, bound, out);
                under(b, r, bound, out);
            }
            P::ExElim(x, _, a, body) => {
                x.collect_free_proof_vars(bound, out);
                under(a, body, bound, out);
            }
            _ => self.children().iter().for_each(|c| c.collect_free_proof_vars(bound, out)),
        }
    }

    pub fn has_free_proof_var(&self, a: &str) -> bool {
        match self {
            P::Var(b) => a == b,
            P::Lam(b, body) => a != b && body.has_free_proof_var(a),
            P::Case(x, b, l, c, r) => {
                x.has_free_proof_var(a) || (a != b && l.has_free_proof_var(a)) || (a != c && r.has_free_proof_var(a))
            }
            P::ExElim(x, _, b, body) => x.has_free_proof_var(a) || (a != b && body.has_free_proof_var(a)),
            _ => self.children().iter().any(|c| c.has_free_proof_var(a)),
        }
    }

    /// Free term variables, including those of embedded terms and propositions.
    pub fn free_term_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_term_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_term_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            out.extend(t.free_vars().into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            P::TLam(x, body) => {
                bound.push(x.clone());
                body.collect_free_term_vars(bound, out);
                bound.pop();
            }
            P::ExElim(p, x, _, body) => {
                p.collect_free_term_vars(bound, out);
                bound.push(x.clone());
                body.collect_free_term_vars(bound, out);
                bound.pop();
            }
            P::TApp(p, t) => {
                p.collect_free_term_vars(bound, out);
                add_term(t, bound, out);
            }
            P::Witness(t, p) => {
                add_term(t, bound, out);
                p.collect_free_term_vars(bound, out);
            }
            P::Em(b) => out.extend(b.free_vars().into_iter().filter(|v| !bound.contains(v))),
            _ => self.children().iter().for_each(|c| c.collect_free_term_vars(bound, out)),
        }
    }

    fn has_free_term_var(&self, x: &str) -> bool {
        match self {
            P::TLam(y, body) => x != y && body.has_free_term_var(x),
            P::ExElim(p, y, _, body) => p.has_free_term_var(x) || (x != y && body.has_free_term_var(x)),
            P::TApp(p, t) => p.has_free_term_var(x) || t.occurs(x),
            P::Witness(t, p) => t.occurs(x) || p.has_free_term_var(x),
            P::Em(b) => b.has_free(x),
            _ => self.children().iter().any(|c| c.has_free_term_var(x)),
        }
    }

    /// `[t/x]π`, capture-avoiding.
    pub fn subst_term(&self, x: &str, t: &Term) -> ProofTerm {
        if !self.has_free_term_var(x) {
            return self.clone();
        }
        match self {
            P::TApp(p, u) => P::TApp(Box::new(p.subst_term(x, t)), u.substitute(x, t)),
            P::Witness(u, p) => P::Witness(u.substitute(x, t), Box::new(p.subst_term(x, t))),
            P::Em(b) => P::Em(b.substitute(x, t)),
            P::TLam(y, body) => {
                let (y, body) = term_binder_subst(y, body, x, t);
                P::TLam(y, Box::new(body))
            }
            P::ExElim(p, y, a, body) => {
                let p = p.subst_term(x, t);
                let (y, body) = if y == x {
                    (y.clone(), (**body).clone())
                } else {
                    term_binder_subst(y, body, x, t)
                };
                P::ExElim(Box::new(p), y, a.clone(), Box::new(body))
            }
            _ => self.map_children(|_, c| c.subst_term(x, t)),
        }
    }

    /// `[π/α]self`, capture-avoiding in both namespaces.
    pub fn subst_proof(&self, a: &str, p: &ProofTerm) -> ProofTerm {
        if !self.has_free_proof_var(a) {
            return self.clone();
        }
        match self {
            P::Var(b) if b == a => p.clone(),
            P::Lam(b, body) => {
                let (b, body) = proof_binder_subst(b, body, a, p);
                P::Lam(b, Box::new(body))
            }
            P::Case(x, b, l, c, r) => {
                let x = x.subst_proof(a, p);
                let (b, l) = proof_binder_subst(b, l, a, p);
                let (c, r) = proof_binder_subst(c, r, a, p);
                P::Case(Box::new(x), b, Box::new(l), c, Box::new(r))
            }
            P::TLam(y, body) => {
                let (y, body) = term_binder_under_proof_subst(y, body, a, p);
                P::TLam(y, Box::new(body))
            }
            P::ExElim(x, y, b, body) => {
                let x = x.subst_proof(a, p);
                if b == a {
                    return P::ExElim(Box::new(x), y.clone(), b.clone(), body.clone());
                }
                let mut y = y.clone();
                let mut body = (**body).clone();
                if p.free_term_vars().contains(&y) {
                    let mut avoid = body.free_term_vars();
                    avoid.extend(p.free_term_vars());
                    let fresh = fresh_name(&y, &avoid);
                    body = body.subst_term(&y, &Term::Var(fresh.clone()));
                    y = fresh;
                }
                let (b, body) = proof_binder_subst(b, &body, a, p);
                P::ExElim(Box::new(x), y, b, Box::new(body))
            }
            _ => self.map_children(|_, c| c.subst_proof(a, p)),
        }
    }

    /// Equality up to renaming of both kinds of bound variables.
    pub fn alpha_eq(&self, other: &ProofTerm) -> bool {
        self.alpha_key() == other.alpha_key()
    }

    /// Canonical string shared by exactly the alpha-equivalent proof terms.
    pub fn alpha_key(&self) -> String {
        let mut out = String::new();
        self.write_key(&mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    fn write_key(&self, penv: &mut Vec<String>, tenv: &mut Vec<String>, out: &mut String) {
        let pbind = |name: &str, body: &ProofTerm, penv: &mut Vec<String>, tenv: &mut Vec<String>, out: &mut String| {
            penv.push(name.to_string());
            body.write_key(penv, tenv, out);
            penv.pop();
        };
        match self {
            P::Var(a) => match penv.iter().rposition(|v| v == a) {
                Some(i) => out.push_str(&format!("@{}", penv.len() - 1 - i)),
                None => out.push_str(a),
            },
            P::Lam(a, body) => {
                out.push_str("(lam ");
                pbind(a, body, penv, tenv, out);
                out.push(')');
            }
            P::Case(x, a, l, b, r) => {
                out.push_str("(case ");
                x.write_key(penv, tenv, out);
                out.push(' ');
                pbind(a, l, penv, tenv, out);
                out.push(' ');
                pbind(b, r, penv, tenv, out);
                out.push(')');
            }
            P::TLam(x, body) => {
                out.push_str("(tlam ");
                tenv.push(x.clone());
                body.write_key(penv, tenv, out);
                tenv.pop();
                out.push(')');
            }
            P::ExElim(p, x, a, body) => {
                out.push_str("(exelim ");
                p.write_key(penv, tenv, out);
                out.push(' ');
                tenv.push(x.clone());
                pbind(a, body, penv, tenv, out);
                tenv.pop();
                out.push(')');
            }
            P::TApp(p, t) => {
                out.push_str("(tapp ");
                p.write_key(penv, tenv, out);
                out.push(' ');
                write_term_key(t, tenv, out);
                out.push(')');
            }
            P::Witness(t, p) => {
                out.push_str("(witness ");
                write_term_key(t, tenv, out);
                out.push(' ');
                p.write_key(penv, tenv, out);
                out.push(')');
            }
            P::Em(b) => {
                out.push_str("(em ");
                b.write_key(tenv, out);
                out.push(')');
            }
            _ => {
                out.push('(');
                out.push_str(self.tag());
                for c in self.children() {
                    out.push(' ');
                    c.write_key(penv, tenv, out);
                }
                out.push(')');
            }
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            P::Var(_) => "pvar",
            P::Lam(..) => "lam",
            P::App(..) => "app",
            P::Pair(..) => "pair",
            P::Fst(_) => "fst",
            P::Snd(_) => "snd",
            P::Inl(_) => "inl",
            P::Inr(_) => "inr",
            P::Case(..) => "case",
            P::BotElim(_) => "botelim",
            P::TLam(..) => "tlam",
            P::TApp(..) => "tapp",
            P::Witness(..) => "witness",
            P::ExElim(..) => "exelim",
            P::Em(_) => "em",
        }
    }

    /// Contracts `self` if it is a cut at the root.
    pub fn contract(&self) -> Option<ProofTerm> {
        match self {
            P::App(f, arg) => match &**f {
                P::Lam(a, body) => Some(body.subst_proof(a, arg)),
                _ => None,
            },
            P::Fst(p) => match &**p {
                P::Pair(l, _) => Some((**l).clone()),
                _ => None,
            },
            P::Snd(p) => match &**p {
                P::Pair(_, r) => Some((**r).clone()),
                _ => None,
            },
            P::Case(x, a, l, b, r) => match &**x {
                P::Inl(p) => Some(l.subst_proof(a, p)),
                P::Inr(p) => Some(r.subst_proof(b, p)),
                _ => None,
            },
            P::TApp(p, t) => match &**p {
                P::TLam(x, body) => Some(body.subst_term(x, t)),
                _ => None,
            },
            P::ExElim(p, x, a, body) => match &**p {
                P::Witness(t, inner) => Some(body.subst_term(x, t).subst_proof(a, inner)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_redex(&self) -> bool {
        match self {
            P::App(f, _) => matches!(**f, P::Lam(..)),
            P::Fst(p) | P::Snd(p) => matches!(**p, P::Pair(..)),
            P::Case(x, ..) => matches!(**x, P::Inl(_) | P::Inr(_)),
            P::TApp(p, _) => matches!(**p, P::TLam(..)),
            P::ExElim(p, ..) => matches!(**p, P::Witness(..)),
            _ => false,
        }
    }

    pub fn is_normal(&self) -> bool {
        !self.is_redex() && self.children().iter().all(|c| c.is_normal())
    }

    /// Every one-step reduct, closed under all contexts. Alpha-equal reducts
    /// are reported once.
    pub fn reduce_step(&self) -> Vec<ProofTerm> {
        let mut out: Vec<ProofTerm> = Vec::new();
        if let Some(r) = self.contract() {
            out.push(r);
        }
        let n = self.children().len();
        for i in 0..n {
            let child = self.children()[i].clone();
            for r in child.reduce_step() {
                out.push(self.map_children(|j, c| if j == i { r.clone() } else { c.clone() }));
            }
        }
        let mut seen = BTreeSet::new();
        out.retain(|p| seen.insert(p.alpha_key()));
        out
    }

    /// One leftmost-outermost step.
    pub fn step_outermost(&self) -> Option<ProofTerm> {
        if let Some(r) = self.contract() {
            return Some(r);
        }
        let children = self.children();
        for (i, child) in children.iter().enumerate() {
            if let Some(r) = child.step_outermost() {
                return Some(self.map_children(|j, c| if j == i { r.clone() } else { c.clone() }));
            }
        }
        None
    }

    /// Proof variables bound anywhere in the term.
    pub fn bound_proof_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            P::Lam(a, _) => {
                out.insert(a.clone());
            }
            P::Case(_, a, _, b, _) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            P::ExElim(_, _, a, _) => {
                out.insert(a.clone());
            }
            _ => {}
        }
        self.children().iter().for_each(|c| c.bound_proof_vars(out));
    }
}

fn term_binder_subst(y: &str, body: &ProofTerm, x: &str, t: &Term) -> (String, ProofTerm) {
    if y == x {
        return (y.to_string(), body.clone());
    }
    if t.occurs(y) {
        let mut avoid = body.free_term_vars();
        t.collect_vars(&mut avoid);
        avoid.insert(x.to_string());
        let fresh = fresh_name(y, &avoid);
        let renamed = body.subst_term(y, &Term::Var(fresh.clone()));
        (fresh, renamed.subst_term(x, t))
    } else {
        (y.to_string(), body.subst_term(x, t))
    }
}

fn term_binder_under_proof_subst(y: &str, body: &ProofTerm, a: &str, p: &ProofTerm) -> (String, ProofTerm) {
    let p_terms = p.free_term_vars();
    if p_terms.contains(y) {
        let mut avoid = body.free_term_vars();
        avoid.extend(p_terms);
        let fresh = fresh_name(y, &avoid);
        let renamed = body.subst_term(y, &Term::Var(fresh.clone()));
        (fresh, renamed.subst_proof(a, p))
    } else {
        (y.to_string(), body.subst_proof(a, p))
    }
}

fn proof_binder_subst(b: &str, body: &ProofTerm, a: &str, p: &ProofTerm) -> (String, ProofTerm) {
    if b == a {
        return (b.to_string(), body.clone());
    }
    let p_free = p.free_proof_vars();
    if p_free.contains(b) && body.has_free_proof_var(a) {
        let mut avoid = body.free_proof_vars();
        avoid.extend(p_free);
        avoid.insert(a.to_string());
        let fresh = fresh_name(b, &avoid);
        let renamed = body.subst_proof(b, &P::Var(fresh.clone()));
        (fresh, renamed.subst_proof(a, p))
    } else {
        (b.to_string(), body.subst_proof(a, p))
    }
}

impl PartialEq for ProofTerm {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for ProofTerm {}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P::Var(a) => write!(f, "(pvar {a})"),
            P::Lam(a, b) => write!(f, "(lam {a} {b})"),
            P::App(x, y) => write!(f, "(app {x} {y})"),
            P::Pair(x, y) => write!(f, "(pair {x} {y})"),
            P::Fst(x) => write!(f, "(fst {x})"),
            P::Snd(x) => write!(f, "(snd {x})"),
            P::Inl(x) => write!(f, "(inl {x})"),
            P::Inr(x) => write!(f, "(inr {x})"),
            P::Case(x, a, l, b, r) => write!(f, "(case {x} ({a} {l}) ({b} {r}))"),
            P::BotElim(x) => write!(f, "(botelim {x})"),
            P::TLam(x, b) => write!(f, "(tlam {x} {b})"),
            P::TApp(p, t) => write!(f, "(tapp {p} {t})"),
            P::Witness(t, p) => write!(f, "(witness {t} {p})"),
            P::ExElim(p, x, a, b) => write!(f, "(exelim {p} ({x} {a} {b}))"),
            P::Em(b) => write!(f, "(em {b})"),
        }
    }
}

/// Result of running the cut-elimination driver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeOutcome {
    NormalForm { term: ProofTerm, steps: usize },
    FuelExhausted { last: ProofTerm, steps: usize },
    /// `witness` recurred (up to alpha) after `period` further steps.
    LoopDetected { witness: ProofTerm, steps: usize, period: usize },
}

impl NormalizeOutcome {
    pub fn is_normal_form(&self) -> bool {
        matches!(self, NormalizeOutcome::NormalForm { .. })
    }
}

pub const DEFAULT_HISTORY_WINDOW: usize = 64;

/// Leftmost-outermost reduction for at most `fuel` steps, watching the last
/// `history_window` terms for an alpha-equal recurrence.
pub fn normalize_proof(term: &ProofTerm, fuel: usize, history_window: usize) -> NormalizeOutcome {
    let mut current = term.clone();
    let mut history: VecDeque<String> = VecDeque::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut steps = 0;
    loop {
        let key = current.alpha_key();
        if let Some(&seen_at) = index.get(&key) {
            return NormalizeOutcome::LoopDetected { witness: current, steps, period: steps - seen_at };
        }
        if history_window > 0 {
            history.push_back(key.clone());
            index.insert(key, steps);
            if history.len() > history_window {
                if let Some(old) = history.pop_front() {
                    index.remove(&old);
                }
            }
        }
        let Some(next) = current.step_outermost() else {
            return NormalizeOutcome::NormalForm { term: current, steps };
        };
        if steps == fuel {
            return NormalizeOutcome::FuelExhausted { last: current, steps };
        }
        current = next;
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crabbe_loop() -> ProofTerm {
        let delta = lam("a", app(snd(pvar("a")), pvar("a")));
        lam("b", app(delta.clone(), pair(pvar("b"), delta)))
    }

    #[test]
    fn fst_of_pair_reduces_to_left() {
        let t = fst(pair(pvar("p"), pvar("q")));
        assert_eq!(t.reduce_step(), vec![pvar("p")]);
        assert_eq!(
            normalize_proof(&t, 10, DEFAULT_HISTORY_WINDOW),
            NormalizeOutcome::NormalForm { term: pvar("p"), steps: 1 }
        );
    }

    #[test]
    fn variable_has_no_reducts() {
        assert!(pvar("a").reduce_step().is_empty());
    }

    #[test]
    fn identity_redex() {
        let t = app(lam("a", pvar("a")), pvar("p"));
        assert_eq!(t.reduce_step(), vec![pvar("p")]);
    }

    #[test]
    fn neutrality() {
        assert!(pvar("a").is_neutral());
        assert!(!lam("a", pvar("a")).is_neutral());
        assert!(fst(pvar("a")).is_neutral());
        assert!(!P::Em(Prop::Bottom).is_neutral());
    }

    #[test]
    fn crabbe_term_cycles_back_to_itself() {
        let t = crabbe_loop();
        let P::Lam(_, body) = &t else { unreachable!() };
        // beta, then snd of a pair: back to the starting body
        let s1 = body.step_outermost().unwrap();
        assert!(!s1.alpha_eq(body));
        let s2 = s1.step_outermost().unwrap();
        assert!(s2.alpha_eq(body));
        match normalize_proof(&t, 1000, DEFAULT_HISTORY_WINDOW) {
            NormalizeOutcome::LoopDetected { period, .. } => assert_eq!(period, 2),
            other => panic!("expected a loop, got {other:?}"),
        }
    }

    #[test]
    fn fuel_exhaustion_without_history() {
        match normalize_proof(&crabbe_loop(), 50, 0) {
            NormalizeOutcome::FuelExhausted { steps, .. } => assert_eq!(steps, 50),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn proof_substitution_avoids_capture() {
        // [b/a](lam b (app a b)) must rename the inner binder.
        let t = lam("b", app(pvar("a"), pvar("b")));
        let r = t.subst_proof("a", &pvar("b"));
        let P::Lam(bound, body) = &r else { unreachable!() };
        assert_ne!(bound, "b");
        assert!(body.alpha_eq(&app(pvar("b"), pvar(bound))));
    }

    #[test]
    fn term_substitution_under_tlam_avoids_capture() {
        let t = tlam("y", tapp(pvar("h"), Term::var("x")));
        let r = t.subst_term("x", &Term::var("y"));
        let P::TLam(bound, body) = &r else { unreachable!() };
        assert_ne!(bound, "y");
        assert!(body.alpha_eq(&tapp(pvar("h"), Term::var("y"))));
    }

    #[test]
    fn proof_substitution_under_term_binder_avoids_capture() {
        // The substituted proof mentions the term variable y freely.
        let t = tlam("y", pvar("a"));
        let r = t.subst_proof("a", &tapp(pvar("h"), Term::var("y")));
        let P::TLam(bound, body) = &r else { unreachable!() };
        assert_ne!(bound, "y");
        assert!(body.alpha_eq(&tapp(pvar("h"), Term::var("y"))));
    }

    #[test]
    fn exelim_redex_substitutes_both_binders() {
        let t = exelim(
            witness(Term::var("t"), pvar("p")),
            "x",
            "a",
            pair(tapp(pvar("h"), Term::var("x")), pvar("a")),
        );
        let r = t.contract().unwrap();
        assert!(r.alpha_eq(&pair(tapp(pvar("h"), Term::var("t")), pvar("p"))));
    }

    #[test]
    fn case_redexes() {
        let t = case(inr(pvar("p")), "a", pvar("a"), "b", fst(pvar("b")));
        assert!(t.contract().unwrap().alpha_eq(&fst(pvar("p"))));
        let t = case(inl(pvar("p")), "a", pvar("a"), "b", fst(pvar("b")));
        assert!(t.contract().unwrap().alpha_eq(&pvar("p")));
    }

    #[test]
    fn full_fanout_reports_every_redex() {
        let r1 = fst(pair(pvar("p"), pvar("q")));
        let r2 = snd(pair(pvar("p"), pvar("q")));
        let t = pair(r1, r2);
        assert_eq!(t.reduce_step().len(), 2);
    }
}
