//! First-order terms and propositions with named binders.
//!
//! Bound variables are stored by name. Every comparison between propositions
//! goes through [`Prop::alpha_eq`]; the `PartialEq` impl on [`Prop`] is alpha
//! equivalence, not structural equality.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Name of the metavariable prefix used in rewrite rule patterns.
pub const META_PREFIX: char = '?';

/// A first-order term: a variable or a function symbol applied to arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(symbol.into(), args)
    }

    pub fn constant(symbol: impl Into<String>) -> Self {
        Term::App(symbol.into(), Vec::new())
    }

    /// `S(S(...S(0)))` with `n` successors.
    pub fn numeral(n: usize) -> Self {
        let mut t = Term::constant("0");
        for _ in 0..n {
            t = Term::app("S", vec![t]);
        }
        t
    }

    /// Inverse of [`Term::numeral`].
    pub fn as_numeral(&self) -> Option<usize> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur {
                Term::App(f, args) if f == "0" && args.is_empty() => return Some(n),
                Term::App(f, args) if f == "S" && args.len() == 1 => {
                    n += 1;
                    cur = &args[0];
                }
                _ => return None,
            }
        }
    }

    pub fn is_metavar(&self) -> bool {
        matches!(self, Term::Var(v) if is_meta_name(v))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn occurs(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App(_, args) => args.iter().any(|a| a.occurs(x)),
        }
    }

    /// Number of function symbol occurrences.
    pub fn symbol_count(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::symbol_count).sum::<usize>(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Simultaneous substitution. Terms have no binders, so nothing can be captured.
    pub fn subst(&self, map: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(map)).collect()),
        }
    }

    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        let mut map = BTreeMap::new();
        map.insert(x.to_string(), t.clone());
        self.subst(&map)
    }

    /// Function symbols occurring in the term.
    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        if let Term::App(f, args) = self {
            out.insert(f.clone());
            args.iter().for_each(|a| a.symbols(out));
        }
    }
}

pub fn is_meta_name(name: &str) -> bool {
    name.starts_with(META_PREFIX)
}

/// A first-order proposition. Biconditional and negation exist only as
/// constructors ([`Prop::iff`], [`Prop::not`]) that desugar on the spot.
#[derive(Clone, Debug)]
pub enum Prop {
    Atom(String, Vec<Term>),
    Implies(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Bottom,
    Forall(String, Box<Prop>),
    Exists(String, Box<Prop>),
}

/// Head connective of a proposition, used in error reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    Atom,
    Implies,
    And,
    Or,
    Bottom,
    Forall,
    Exists,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Connective::Atom => "atom",
            Connective::Implies => "=>",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Bottom => "false",
            Connective::Forall => "forall",
            Connective::Exists => "exists",
        };
        f.write_str(s)
    }
}

impl Prop {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Prop::Atom(pred.into(), args)
    }

    pub fn implies(a: Prop, b: Prop) -> Self {
        Prop::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Prop, b: Prop) -> Self {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Self {
        Prop::Or(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, a: Prop) -> Self {
        Prop::Forall(x.into(), Box::new(a))
    }

    pub fn exists(x: impl Into<String>, a: Prop) -> Self {
        Prop::Exists(x.into(), Box::new(a))
    }

    /// `A ⇔ B`, desugared to `(A ⇒ B) ∧ (B ⇒ A)`.
    pub fn iff(a: Prop, b: Prop) -> Self {
        Prop::and(Prop::implies(a.clone(), b.clone()), Prop::implies(b, a))
    }

    /// `¬A`, desugared to `A ⇒ ⊥`.
    pub fn negation(a: Prop) -> Self {
        Prop::implies(a, Prop::Bottom)
    }

    /// Membership atom `x ∈ y`.
    pub fn mem(x: Term, y: Term) -> Self {
        Prop::Atom("in".into(), vec![x, y])
    }

    pub fn connective(&self) -> Connective {
        match self {
            Prop::Atom(..) => Connective::Atom,
            Prop::Implies(..) => Connective::Implies,
            Prop::And(..) => Connective::And,
            Prop::Or(..) => Connective::Or,
            Prop::Bottom => Connective::Bottom,
            Prop::Forall(..) => Connective::Forall,
            Prop::Exists(..) => Connective::Exists,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Prop::Atom(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|a| a.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Prop::Bottom => {}
            Prop::Forall(x, a) | Prop::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Prop::Atom(_, args) => args.iter().any(|a| a.occurs(x)),
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => a.has_free(x) || b.has_free(x),
            Prop::Bottom => false,
            Prop::Forall(y, a) | Prop::Exists(y, a) => y != x && a.has_free(x),
        }
    }

    /// All variable names, free or bound.
    pub fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Prop::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.all_vars(out);
                b.all_vars(out);
            }
            Prop::Bottom => {}
            Prop::Forall(x, a) | Prop::Exists(x, a) => {
                out.insert(x.clone());
                a.all_vars(out);
            }
        }
    }

    /// `[t/x]A`, capture-avoiding.
    pub fn substitute(&self, x: &str, t: &Term) -> Prop {
        let mut map = BTreeMap::new();
        map.insert(x.to_string(), t.clone());
        self.subst(&map)
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn subst(&self, map: &BTreeMap<String, Term>) -> Prop {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.clone(), args.iter().map(|a| a.subst(map)).collect()),
            Prop::Implies(a, b) => Prop::implies(a.subst(map), b.subst(map)),
            Prop::And(a, b) => Prop::and(a.subst(map), b.subst(map)),
            Prop::Or(a, b) => Prop::or(a.subst(map), b.subst(map)),
            Prop::Bottom => Prop::Bottom,
            Prop::Forall(x, a) => {
                let (x, a) = subst_under_binder(x, a, map);
                Prop::Forall(x, Box::new(a))
            }
            Prop::Exists(x, a) => {
                let (x, a) = subst_under_binder(x, a, map);
                Prop::Exists(x, Box::new(a))
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Prop) -> bool {
        fn go(a: &Prop, b: &Prop, env_a: &mut Vec<String>, env_b: &mut Vec<String>) -> bool {
            match (a, b) {
                (Prop::Atom(p, xs), Prop::Atom(q, ys)) => {
                    p == q
                        && xs.len() == ys.len()
                        && xs.iter().zip(ys).all(|(x, y)| term_alpha_eq(x, y, env_a, env_b))
                }
                (Prop::Implies(a1, a2), Prop::Implies(b1, b2))
                | (Prop::And(a1, a2), Prop::And(b1, b2))
                | (Prop::Or(a1, a2), Prop::Or(b1, b2)) => {
                    go(a1, b1, env_a, env_b) && go(a2, b2, env_a, env_b)
                }
                (Prop::Bottom, Prop::Bottom) => true,
                (Prop::Forall(x, a1), Prop::Forall(y, b1)) | (Prop::Exists(x, a1), Prop::Exists(y, b1)) => {
                    env_a.push(x.clone());
                    env_b.push(y.clone());
                    let r = go(a1, b1, env_a, env_b);
                    env_a.pop();
                    env_b.pop();
                    r
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// A string that is identical for exactly the alpha-equivalent propositions.
    pub fn alpha_key(&self) -> String {
        let mut out = String::new();
        let mut env = Vec::new();
        self.write_key(&mut env, &mut out);
        out
    }

    pub(crate) fn write_key(&self, env: &mut Vec<String>, out: &mut String) {
        match self {
            Prop::Atom(p, args) => {
                out.push('(');
                out.push_str(p);
                for a in args {
                    out.push(' ');
                    write_term_key(a, env, out);
                }
                out.push(')');
            }
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                out.push_str(match self {
                    Prop::Implies(..) => "(=> ",
                    Prop::And(..) => "(and ",
                    _ => "(or ",
                });
                a.write_key(env, out);
                out.push(' ');
                b.write_key(env, out);
                out.push(')');
            }
            Prop::Bottom => out.push_str("false"),
            Prop::Forall(x, a) | Prop::Exists(x, a) => {
                out.push_str(if matches!(self, Prop::Forall(..)) { "(A " } else { "(E " });
                env.push(x.clone());
                a.write_key(env, out);
                env.pop();
                out.push(')');
            }
        }
    }

    /// Immediate subpropositions paired with the variable bound above them, if any.
    pub fn children(&self) -> Vec<&Prop> {
        match self {
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => vec![a, b],
            Prop::Forall(_, a) | Prop::Exists(_, a) => vec![a],
            Prop::Atom(..) | Prop::Bottom => vec![],
        }
    }

    /// Every subproposition, in preorder, including `self`.
    pub fn subformulas(&self) -> Vec<&Prop> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let cur = out[i];
            out.extend(cur.children());
            i += 1;
        }
        out
    }

    /// Atomic subpropositions in left-to-right order.
    pub fn atoms(&self) -> Vec<(&str, &[Term])> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |p, args| out.push((p, args)));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a str, &'a [Term])) {
        match self {
            Prop::Atom(p, args) => f(p, args),
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Prop::Bottom => {}
            Prop::Forall(_, a) | Prop::Exists(_, a) => a.visit_atoms(f),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Prop::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => 1 + a.size() + b.size(),
            Prop::Bottom => 1,
            Prop::Forall(_, a) | Prop::Exists(_, a) => 1 + a.size(),
        }
    }

    /// Function symbols occurring anywhere in the proposition.
    pub fn function_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (_, args) in self.atoms() {
            args.iter().for_each(|a| a.symbols(&mut out));
        }
        out
    }

    /// Renames every binder so that binders are pairwise distinct and distinct
    /// from the free variables. The first binder of a name keeps it when it
    /// does not clash with a free variable.
    pub fn rename_apart(&self) -> Prop {
        let mut used = self.free_vars();
        let mut map: HashMap<String, String> = HashMap::new();
        self.rename_apart_in(&mut used, &mut map)
    }

    fn rename_apart_in(&self, used: &mut BTreeSet<String>, map: &mut HashMap<String, String>) -> Prop {
        match self {
            Prop::Atom(p, args) => Prop::Atom(
                p.clone(),
                args.iter().map(|a| rename_term(a, map)).collect(),
            ),
            Prop::Implies(a, b) => Prop::implies(a.rename_apart_in(used, map), b.rename_apart_in(used, map)),
            Prop::And(a, b) => Prop::and(a.rename_apart_in(used, map), b.rename_apart_in(used, map)),
            Prop::Or(a, b) => Prop::or(a.rename_apart_in(used, map), b.rename_apart_in(used, map)),
            Prop::Bottom => Prop::Bottom,
            Prop::Forall(x, a) | Prop::Exists(x, a) => {
                let fresh = fresh_name(x, used);
                used.insert(fresh.clone());
                let saved = map.insert(x.clone(), fresh.clone());
                let body = a.rename_apart_in(used, map);
                match saved {
                    Some(s) => map.insert(x.clone(), s),
                    None => map.remove(x),
                };
                if matches!(self, Prop::Forall(..)) {
                    Prop::Forall(fresh, Box::new(body))
                } else {
                    Prop::Exists(fresh, Box::new(body))
                }
            }
        }
    }
}

fn rename_term(t: &Term, map: &HashMap<String, String>) -> Term {
    match t {
        Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_term(a, map)).collect()),
    }
}

impl PartialEq for Prop {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Prop {}

fn subst_under_binder(x: &str, body: &Prop, map: &BTreeMap<String, Term>) -> (String, Prop) {
    let relevant: BTreeMap<String, Term> = map
        .iter()
        .filter(|(k, _)| k.as_str() != x && body.has_free(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    if relevant.is_empty() {
        return (x.to_string(), body.clone());
    }
    let captures = relevant.values().any(|t| t.occurs(x));
    if !captures {
        return (x.to_string(), body.subst(&relevant));
    }
    let mut avoid = body.free_vars();
    for (k, v) in &relevant {
        avoid.insert(k.clone());
        v.collect_vars(&mut avoid);
    }
    let fresh = fresh_name(x, &avoid);
    let mut full = relevant;
    full.insert(x.to_string(), Term::Var(fresh.clone()));
    (fresh, body.subst(&full))
}

/// `base` itself if unused, otherwise `base'`, `base''`, ...
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut candidate = base.to_string();
    while avoid.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

fn term_alpha_eq(a: &Term, b: &Term, env_a: &[String], env_b: &[String]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = env_a.iter().rposition(|v| v == x);
            let iy = env_b.iter().rposition(|v| v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| term_alpha_eq(x, y, env_a, env_b))
        }
        _ => false,
    }
}

pub(crate) fn write_term_key(t: &Term, env: &[String], out: &mut String) {
    match t {
        Term::Var(x) => match env.iter().rposition(|v| v == x) {
            Some(i) => {
                out.push('#');
                out.push_str(&(env.len() - 1 - i).to_string());
            }
            None => out.push_str(x),
        },
        Term::App(f, args) => {
            out.push('(');
            out.push_str(f);
            for a in args {
                out.push(' ');
                write_term_key(a, env, out);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(s, args) if args.is_empty() => f.write_str(s),
            Term::App(s, args) => {
                write!(f, "({s}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Atom(p, args) if args.is_empty() => f.write_str(p),
            Prop::Atom(p, args) => {
                write!(f, "({p}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
            Prop::Implies(a, b) => write!(f, "(=> {a} {b})"),
            Prop::And(a, b) => write!(f, "(and {a} {b})"),
            Prop::Or(a, b) => write!(f, "(or {a} {b})"),
            Prop::Bottom => f.write_str("false"),
            Prop::Forall(x, a) => write!(f, "(forall {x} {a})"),
            Prop::Exists(x, a) => write!(f, "(exists {x} {a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn eq(a: Term, b: Term) -> Prop {
        Prop::atom("=", vec![a, b])
    }

    #[test]
    fn substitute_refl_instance() {
        let p = eq(v("x"), v("x"));
        let four = Term::numeral(4);
        assert_eq!(p.substitute("x", &four), eq(four.clone(), four));
    }

    #[test]
    fn substitute_bound_variable_is_noop() {
        let p = Prop::forall("x", Prop::mem(v("x"), v("y")));
        assert!(p.substitute("x", &v("t")).alpha_eq(&p));
    }

    #[test]
    fn substitute_renames_to_avoid_capture() {
        let p = Prop::exists("y", Prop::mem(v("x"), v("y")));
        let r = p.substitute("x", &v("y"));
        match &r {
            Prop::Exists(b, body) => {
                assert_eq!(b, "y'");
                assert!(body.alpha_eq(&Prop::mem(v("y"), v("y'"))));
            }
            other => panic!("unexpected {other}"),
        }
        assert_eq!(r.to_string(), "(exists y' (in y y'))");
    }

    #[test]
    fn alpha_eq_cases() {
        let a = Prop::forall("x", eq(v("x"), v("x")));
        let b = Prop::forall("y", eq(v("y"), v("y")));
        let c = Prop::forall("x", eq(v("x"), v("z")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
        assert!(Prop::Bottom.alpha_eq(&Prop::Bottom));
        assert_eq!(a.alpha_key(), b.alpha_key());
        assert_ne!(a.alpha_key(), c.alpha_key());
    }

    #[test]
    fn alpha_eq_distinguishes_free_from_bound() {
        let a = Prop::forall("x", Prop::mem(v("x"), v("y")));
        let b = Prop::forall("y", Prop::mem(v("y"), v("y")));
        assert!(!a.alpha_eq(&b));
        assert_ne!(a.alpha_key(), b.alpha_key());
    }

    #[test]
    fn free_vars_cases() {
        let p = Prop::forall("v", Prop::iff(Prop::mem(v("v"), v("x")), Prop::mem(v("v"), v("y"))));
        let want: BTreeSet<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.free_vars(), want);
        assert!(Prop::Bottom.free_vars().is_empty());
        assert_eq!(Prop::mem(v("x"), v("x")).free_vars().len(), 1);
    }

    #[test]
    fn rename_apart_separates_shadowed_binders() {
        let p = Prop::and(
            Prop::forall("x", Prop::mem(v("x"), v("y"))),
            Prop::forall("x", Prop::forall("y", Prop::mem(v("x"), v("y")))),
        );
        let r = p.rename_apart();
        assert!(r.alpha_eq(&p));
        let mut all = BTreeSet::new();
        r.all_vars(&mut all);
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn numerals_print_compactly() {
        assert_eq!(Term::numeral(4).to_string(), "4");
        assert_eq!(Term::numeral(0).to_string(), "0");
        assert_eq!(Term::app("S", vec![v("x")]).to_string(), "(S x)");
    }
}
