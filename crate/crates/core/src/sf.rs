//! Stratified Foundations: comprehension symbols, their rewrite rules and
//! scheme instances, and the bundled example theories.
//!
//! `comprehend(body, [x1, .., xn, x])` mints a symbol `f` of arity `n` with the
//! rule `(in ?x (f ?x1 .. ?xn)) → body[?xi/xi]`. Symbol names are derived from
//! a hash of the closed, alpha-normalized instance, so alpha-equivalent
//! requests get the same symbol.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::checker::Theory;
use crate::proofterm::{self as pt, ProofTerm};
use crate::rewrite::{RewriteRule, RuleKind};
use crate::stratify::{stratify, StratifyError, Verdict, MEMBERSHIP};
use crate::syntax::parse::{parse_theory, ParseError};
use crate::syntax::term::fresh_name;
use crate::syntax::{Prop, SignatureError, SkolemTag, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComprehendError {
    #[error("{0} is not stratifiable")]
    NotStratifiable(Prop),
    #[error("{0} is outside the pure membership language")]
    NotPureMembershipLanguage(Prop),
    #[error("free variable `{0}` of the body is not in the variable list")]
    VariableCoverage(String),
    #[error("bad variable list: {0}")]
    BadVariables(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComprehensionInstance {
    pub body: Prop,
    pub vars: Vec<String>,
    pub symbol: String,
    pub rule: RewriteRule,
    pub axiom: Prop,
}

impl ComprehensionInstance {
    pub fn arity(&self) -> usize {
        self.vars.len() - 1
    }

    /// `f(x1, .., xn)`.
    pub fn set_term(&self) -> Term {
        Term::app(&self.symbol, self.vars[..self.arity()].iter().map(Term::var).collect())
    }
}

fn closure(vars: &[String], body: &Prop) -> Prop {
    vars.iter().rev().fold(body.clone(), |acc, x| Prop::forall(x, acc))
}

fn symbol_name(vars: &[String], body: &Prop, taken: impl Fn(&str) -> bool) -> String {
    let key = format!("{}|{}", vars.len(), closure(vars, body).alpha_key());
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let mut len = 8;
    loop {
        let name = format!("sk_{}", &hex[..len]);
        if !taken(&name) || len == hex.len() {
            return name;
        }
        len += 4;
    }
}

/// Stratifiability check for bodies that may mention earlier symbols: every
/// compound argument of an atom is abstracted to a fresh variable.
fn abstract_compound(p: &Prop) -> Prop {
    fn go(p: &Prop, names: &mut BTreeMap<Term, String>, avoid: &mut BTreeSet<String>) -> Prop {
        match p {
            Prop::Atom(pred, args) => Prop::Atom(
                pred.clone(),
                args.iter()
                    .map(|a| match a {
                        Term::Var(_) => a.clone(),
                        _ => Term::Var(
                            names
                                .entry(a.clone())
                                .or_insert_with(|| {
                                    let n = fresh_name("t", avoid);
                                    avoid.insert(n.clone());
                                    n
                                })
                                .clone(),
                        ),
                    })
                    .collect(),
            ),
            Prop::Implies(a, b) => Prop::implies(go(a, names, avoid), go(b, names, avoid)),
            Prop::And(a, b) => Prop::and(go(a, names, avoid), go(b, names, avoid)),
            Prop::Or(a, b) => Prop::or(go(a, names, avoid), go(b, names, avoid)),
            Prop::Bottom => Prop::Bottom,
            Prop::Forall(x, a) => Prop::forall(x, go(a, names, avoid)),
            Prop::Exists(x, a) => Prop::exists(x, go(a, names, avoid)),
        }
    }
    let mut avoid = BTreeSet::new();
    p.all_vars(&mut avoid);
    go(p, &mut BTreeMap::new(), &mut avoid)
}

/// Adds the comprehension instance for `body` over `vars` to `theory`.
///
/// The body must be built from `in` atoms over variables. With
/// `allow_iterated`, atoms may also mention terms over earlier symbols; each
/// distinct compound argument then counts as one variable for the
/// stratification test.
pub fn comprehend(
    theory: &mut Theory,
    body: &Prop,
    vars: &[String],
    allow_iterated: bool,
) -> Result<ComprehensionInstance, ComprehendError> {
    if vars.is_empty() {
        return Err(ComprehendError::BadVariables("at least one variable is needed".into()));
    }
    let distinct: BTreeSet<&String> = vars.iter().collect();
    if distinct.len() != vars.len() {
        return Err(ComprehendError::BadVariables("variables must be distinct".into()));
    }
    if let Some(v) = vars.iter().find(|v| v.starts_with('?')) {
        return Err(ComprehendError::BadVariables(format!("`{v}` is a metavariable")));
    }
    if let Some(x) = body.free_vars().into_iter().find(|x| !distinct.contains(x)) {
        return Err(ComprehendError::VariableCoverage(x));
    }
    for (pred, args) in body.atoms() {
        let atom = Prop::Atom(pred.into(), args.to_vec());
        if pred != MEMBERSHIP || args.len() != 2 {
            return Err(ComprehendError::NotPureMembershipLanguage(atom));
        }
        if !allow_iterated && args.iter().any(|a| !matches!(a, Term::Var(_))) {
            return Err(ComprehendError::NotPureMembershipLanguage(atom));
        }
        if let Err(e) = theory.signature.check_prop(&atom) {
            return Err(e.into());
        }
    }
    let target = if allow_iterated { abstract_compound(body) } else { body.clone() };
    match stratify(&target) {
        Ok(Verdict::Stratified(_)) => {}
        Ok(Verdict::Unstratifiable) => return Err(ComprehendError::NotStratifiable(body.clone())),
        Err(StratifyError::NotInMembershipLanguage(a)) => return Err(ComprehendError::NotPureMembershipLanguage(a)),
        Err(StratifyError::MissingVariable(_)) => unreachable!("stratify assigns every variable"),
    }

    let sig = &theory.signature;
    let symbol = symbol_name(vars, body, |n| {
        sig.function_arity(n).is_some() || sig.predicate_arity(n).is_some() || theory.rules.rule(n).is_some()
    });
    let symbol = match sig.skolem_tags().find(|(_, tag)| tag.vars.len() == vars.len() && closure(&tag.vars, &tag.body) == closure(vars, body)) {
        Some((existing, _)) => existing.clone(),
        None => symbol,
    };
    let inst = instance(&symbol, body, vars);
    if theory.signature.skolem_tag(&symbol).is_none() {
        if theory.signature.predicate_arity(MEMBERSHIP).is_none() {
            theory.signature.add_predicate(MEMBERSHIP, 2)?;
        }
        theory.signature.add_skolem(&symbol, SkolemTag { vars: vars.to_vec(), body: body.clone() })?;
        theory.rules.push(inst.rule.clone()).expect("fresh symbol names a fresh rule");
    }
    Ok(inst)
}

fn instance(symbol: &str, body: &Prop, vars: &[String]) -> ComprehensionInstance {
    let metas: BTreeMap<String, Term> = vars.iter().map(|x| (x.clone(), Term::var(format!("?{x}")))).collect();
    let n = vars.len() - 1;
    let pattern_set = Term::app(symbol, vars[..n].iter().map(|x| metas[x].clone()).collect());
    let rule = RewriteRule {
        name: symbol.to_string(),
        kind: RuleKind::Prop {
            pred: MEMBERSHIP.into(),
            args: vec![metas[&vars[n]].clone(), pattern_set],
            rhs: body.subst(&metas),
        },
    };
    let set = Term::app(symbol, vars[..n].iter().map(Term::var).collect());
    let member = Prop::mem(Term::var(&vars[n]), set);
    let axiom = closure(vars, &Prop::iff(member, body.clone()));
    ComprehensionInstance { body: body.clone(), vars: vars.to_vec(), symbol: symbol.into(), rule, axiom }
}

/// The skolemized scheme instance `∀x1..∀xn+1 (xn+1 ∈ f(x1..xn) ⇔ A)`.
pub fn comprehension_axiom(inst: &ComprehensionInstance) -> Prop {
    inst.axiom.clone()
}

/// The unskolemized form `∀x1..∀xn ∃z ∀xn+1 (xn+1 ∈ z ⇔ A)`.
pub fn existential_axiom(inst: &ComprehensionInstance) -> Prop {
    let n = inst.arity();
    let mut avoid = BTreeSet::new();
    inst.body.all_vars(&mut avoid);
    avoid.extend(inst.vars.iter().cloned());
    let z = fresh_name("z", &avoid);
    let x = &inst.vars[n];
    let core = Prop::forall(x, Prop::iff(Prop::mem(Term::var(x), Term::var(&z)), inst.body.clone()));
    closure(&inst.vars[..n], &Prop::exists(z, core))
}

fn identities() -> ProofTerm {
    pt::pair(pt::lam("a", pt::pvar("a")), pt::lam("a", pt::pvar("a")))
}

/// `(tlam x1 .. (tlam xn+1 (pair (lam a (pvar a)) (lam a (pvar a)))))`: both
/// implications collapse to `A ⇒ A` modulo the rule.
pub fn axiom_proof(inst: &ComprehensionInstance) -> ProofTerm {
    inst.vars.iter().rev().fold(identities(), |acc, x| pt::tlam(x, acc))
}

/// Proof of [`existential_axiom`] with `f(x1..xn)` as the witness.
pub fn existential_proof(inst: &ComprehensionInstance) -> ProofTerm {
    let n = inst.arity();
    let inner = pt::witness(inst.set_term(), pt::tlam(&inst.vars[n], identities()));
    inst.vars[..n].iter().rev().fold(inner, |acc, x| pt::tlam(x, acc))
}

pub const ARITHMETIC_SRC: &str = include_str!("../examples/arith.thy");
pub const INTEGRAL_DOMAIN_SRC: &str = include_str!("../examples/integral-domain.thy");
pub const CRABBE_SRC: &str = include_str!("../examples/crabbe.thy");
pub const SF_EMPTY_SRC: &str = include_str!("../examples/sf-empty.thy");

/// The bundled theories: `arithmetic`, `integral-domain`, `crabbe`, `sf-empty`.
pub fn builtin_theories() -> IndexMap<&'static str, Theory> {
    [
        ("arithmetic", ARITHMETIC_SRC),
        ("integral-domain", INTEGRAL_DOMAIN_SRC),
        ("crabbe", CRABBE_SRC),
        ("sf-empty", SF_EMPTY_SRC),
    ]
    .into_iter()
    .map(|(name, src)| (name, parse_theory(src).unwrap_or_else(|e: ParseError| panic!("bundled theory {name}: {e}"))))
    .collect()
}

pub fn builtin_theory(name: &str) -> Option<Theory> {
    builtin_theories().shift_remove(name)
}

/// Comprehension requests behind [`sf_basic`]: the empty set, complement,
/// power set and binary union.
pub const SF_BASIC_REQUESTS: &[(&str, &str)] = &[
    ("false", "x"),
    ("(=> (in x2 x1) false)", "x1 x2"),
    ("(forall v (=> (in v x2) (in v x1)))", "x1 x2"),
    ("(or (in x3 x1) (in x3 x2))", "x1 x2 x3"),
];

/// `sf-empty` extended with [`SF_BASIC_REQUESTS`].
pub fn sf_basic() -> Theory {
    let mut t = builtin_theory("sf-empty").expect("bundled");
    let parser = crate::syntax::Parser::new(&t.signature);
    let requests: Vec<(Prop, Vec<String>)> = SF_BASIC_REQUESTS
        .iter()
        .map(|(b, v)| (parser.prop_str(b).expect("bundled body"), v.split_whitespace().map(String::from).collect()))
        .collect();
    for (body, vars) in requests {
        comprehend(&mut t, &body, &vars, false).expect("bundled request");
    }
    t
}
