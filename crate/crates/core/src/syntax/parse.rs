//! Conversion between s-expressions and the abstract syntax.
//!
//! ```text
//! term   := var | const | numeral | (fsym term*)
//! prop   := (pred term*) | pred | (=> p p) | (and p p) | (or p p) | false
//!         | (forall x p) | (exists x p) | (iff p p) | (not p)
//! proof  := (pvar a) | (lam a π) | (app π π) | (pair π π) | (fst π) | (snd π)
//!         | (inl π) | (inr π) | (case π (a π) (b π)) | (botelim π)
//!         | (tlam x π) | (tapp π t) | (witness t π) | (exelim π (x a π)) | (em p)
//! theory := (signature (fun f n)* (pred p n)* (skolem f (x1 .. xn+1) p)*)
//!           (rules (term-rule pat term)* (prop-rule atom-pat p)*)
//!           (axioms (ax name p)*)
//! proofs := (proof name (hyps (h p)*)? (goal p) (term π))*
//! ```
//!
//! Pattern metavariables are written `?name` and are only accepted inside
//! rules. A decimal numeral `n` stands for `S(...S(0))` and needs `0` and `S`
//! in the signature.

use std::fmt;

use thiserror::Error;

use super::sexp::{read_all, read_one, Pos, ReadError, Sexp};
use super::signature::{Signature, SignatureError, SkolemTag};
use super::term::{is_meta_name, Prop, Term};
use crate::checker::{ProofObject, Theory};
use crate::proofterm::ProofTerm;
use crate::rewrite::{RewriteRule, RuleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        Self { pos, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn signature(pos: Pos, e: SignatureError) -> Self {
        Self { pos, kind: ParseErrorKind::Signature(e) }
    }

    pub fn is_signature_error(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Signature(_))
    }
}

impl From<ReadError> for ParseError {
    fn from(e: ReadError) -> Self {
        ParseError::syntax(e.pos, e.message)
    }
}

type Res<T> = Result<T, ParseError>;

const KEYWORDS: &[&str] = &[
    "=>", "and", "or", "false", "forall", "exists", "iff", "not", "pvar", "lam", "app", "pair", "fst", "snd", "inl", "inr",
    "case", "botelim", "tlam", "tapp", "witness", "exelim", "em",
];

/// Source positions of a parsed proof term, shaped like the term itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanTree {
    pub pos: Pos,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    /// Position of the subterm at `path`, or of its deepest known ancestor.
    pub fn locate(&self, path: &[usize]) -> Pos {
        let mut cur = self;
        for &i in path {
            match cur.children.get(i) {
                Some(c) => cur = c,
                None => break,
            }
        }
        cur.pos
    }
}

/// Parser against an optional signature. Without one, bare identifiers in
/// term position are variables and no arity is checked.
#[derive(Clone, Copy)]
pub struct Parser<'s> {
    sig: Option<&'s Signature>,
    allow_meta: bool,
}

impl<'s> Parser<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Self { sig: Some(sig), allow_meta: false }
    }

    pub fn untyped() -> Self {
        Self { sig: None, allow_meta: false }
    }

    fn in_rule(self) -> Self {
        Self { allow_meta: true, ..self }
    }

    pub fn term_str(&self, src: &str) -> Res<Term> {
        self.term(&read_one(src)?)
    }

    pub fn prop_str(&self, src: &str) -> Res<Prop> {
        self.prop(&read_one(src)?)
    }

    pub fn proof_str(&self, src: &str) -> Res<ProofTerm> {
        Ok(self.proof(&read_one(src)?)?.0)
    }

    fn ident(&self, s: &Sexp, what: &str) -> Res<String> {
        match s {
            Sexp::Atom(a, pos) => {
                if KEYWORDS.contains(&a.as_str()) {
                    return Err(ParseError::syntax(*pos, format!("keyword `{a}` cannot be used as {what}")));
                }
                if is_meta_name(a) {
                    return Err(ParseError::syntax(*pos, format!("metavariable `{a}` cannot be used as {what}")));
                }
                Ok(a.clone())
            }
            Sexp::List(_, pos) => Err(ParseError::syntax(*pos, format!("expected {what}, found a list"))),
        }
    }

    fn variable(&self, s: &Sexp) -> Res<String> {
        let name = self.ident(s, "a variable")?;
        if let Some(sig) = self.sig {
            if sig.function_arity(&name).is_some() {
                return Err(ParseError::syntax(s.pos(), format!("function symbol `{name}` cannot be bound")));
            }
        }
        if name.chars().all(|c| c.is_ascii_digit()) {
            return Err(ParseError::syntax(s.pos(), "a numeral cannot be bound"));
        }
        Ok(name)
    }

    pub fn term(&self, s: &Sexp) -> Res<Term> {
        match s {
            Sexp::Atom(a, pos) => {
                if is_meta_name(a) {
                    if !self.allow_meta {
                        return Err(ParseError::syntax(*pos, format!("metavariable `{a}` outside a rule")));
                    }
                    if a.len() == 1 {
                        return Err(ParseError::syntax(*pos, "empty metavariable name"));
                    }
                    return Ok(Term::Var(a.clone()));
                }
                if KEYWORDS.contains(&a.as_str()) {
                    return Err(ParseError::syntax(*pos, format!("keyword `{a}` in term position")));
                }
                if a.chars().all(|c| c.is_ascii_digit()) {
                    return self.numeral(a, *pos);
                }
                match self.sig.and_then(|sig| sig.function_arity(a)) {
                    Some(0) => Ok(Term::constant(a.clone())),
                    Some(n) => Err(ParseError::signature(
                        *pos,
                        SignatureError::Arity { name: a.clone(), expected: n, found: 0 },
                    )),
                    None => Ok(Term::Var(a.clone())),
                }
            }
            Sexp::List(items, pos) => {
                let (head, args) = items.split_first().ok_or_else(|| ParseError::syntax(*pos, "empty term"))?;
                let f = self.ident(head, "a function symbol")?;
                let args = args.iter().map(|a| self.term(a)).collect::<Res<Vec<_>>>()?;
                if let Some(sig) = self.sig {
                    match sig.function_arity(&f) {
                        Some(n) if n == args.len() => {}
                        Some(n) => {
                            return Err(ParseError::signature(
                                *pos,
                                SignatureError::Arity { name: f, expected: n, found: args.len() },
                            ))
                        }
                        None => return Err(ParseError::signature(head.pos(), SignatureError::UnknownFunction(f))),
                    }
                }
                Ok(Term::App(f, args))
            }
        }
    }

    fn numeral(&self, digits: &str, pos: Pos) -> Res<Term> {
        if let Some(sig) = self.sig {
            if digits == "0" && sig.is_constant("0") {
                return Ok(Term::constant("0"));
            }
            if !(sig.is_constant("0") && sig.function_arity("S") == Some(1)) {
                return Err(ParseError::syntax(pos, format!("numeral `{digits}` needs `0` and `S` in the signature")));
            }
        }
        let n: usize = digits.parse().map_err(|_| ParseError::syntax(pos, "numeral too large"))?;
        if n > 10_000 {
            return Err(ParseError::syntax(pos, "numeral too large"));
        }
        Ok(Term::numeral(n))
    }

    fn arity(&self, items: &[Sexp], n: usize, pos: Pos, what: &str) -> Res<()> {
        if items.len() != n + 1 {
            return Err(ParseError::syntax(pos, format!("`{what}` takes {n} argument(s), found {}", items.len() - 1)));
        }
        Ok(())
    }

    pub fn prop(&self, s: &Sexp) -> Res<Prop> {
        match s {
            Sexp::Atom(a, pos) => {
                if a == "false" {
                    return Ok(Prop::Bottom);
                }
                let name = self.ident(s, "a proposition")?;
                self.check_pred(&name, 0, *pos)?;
                Ok(Prop::Atom(name, vec![]))
            }
            Sexp::List(items, pos) => {
                let pos = *pos;
                let (head, rest) = items.split_first().ok_or_else(|| ParseError::syntax(pos, "empty proposition"))?;
                let Some(h) = head.as_atom() else {
                    return Err(ParseError::syntax(head.pos(), "expected a connective or predicate"));
                };
                let bin = |f: fn(Prop, Prop) -> Prop| -> Res<Prop> {
                    self.arity(items, 2, pos, h)?;
                    Ok(f(self.prop(&rest[0])?, self.prop(&rest[1])?))
                };
                match h {
                    "=>" => bin(Prop::implies),
                    "and" => bin(Prop::and),
                    "or" => bin(Prop::or),
                    "iff" => bin(Prop::iff),
                    "not" => {
                        self.arity(items, 1, pos, h)?;
                        Ok(Prop::negation(self.prop(&rest[0])?))
                    }
                    "false" => Err(ParseError::syntax(pos, "`false` takes no arguments")),
                    "forall" | "exists" => {
                        self.arity(items, 2, pos, h)?;
                        let x = self.variable(&rest[0])?;
                        let body = self.prop(&rest[1])?;
                        Ok(if h == "forall" { Prop::forall(x, body) } else { Prop::exists(x, body) })
                    }
                    _ => {
                        let name = self.ident(head, "a predicate")?;
                        let args = rest.iter().map(|a| self.term(a)).collect::<Res<Vec<_>>>()?;
                        self.check_pred(&name, args.len(), pos)?;
                        Ok(Prop::Atom(name, args))
                    }
                }
            }
        }
    }

    fn check_pred(&self, name: &str, found: usize, pos: Pos) -> Res<()> {
        let Some(sig) = self.sig else { return Ok(()) };
        match sig.predicate_arity(name) {
            Some(n) if n == found => Ok(()),
            Some(n) => Err(ParseError::signature(pos, SignatureError::Arity { name: name.into(), expected: n, found })),
            None => Err(ParseError::signature(pos, SignatureError::UnknownPredicate(name.into()))),
        }
    }

    /// Parses a proof term together with the positions of its subterms.
    pub fn proof(&self, s: &Sexp) -> Res<(ProofTerm, SpanTree)> {
        use crate::proofterm as pt;
        let pos = s.pos();
        let leaf = |t: ProofTerm| Ok((t, SpanTree { pos, children: vec![] }));
        let items = s
            .as_list()
            .ok_or_else(|| ParseError::syntax(pos, format!("expected a proof term, found `{s}`")))?;
        let (head, rest) = items.split_first().ok_or_else(|| ParseError::syntax(pos, "empty proof term"))?;
        let h = head.as_atom().ok_or_else(|| ParseError::syntax(head.pos(), "expected a proof constructor"))?;
        let node = |t: ProofTerm, children: Vec<SpanTree>| Ok((t, SpanTree { pos, children }));
        let binder = |s: &Sexp| -> Res<(String, ProofTerm, SpanTree)> {
            match s.as_list() {
                Some([name, body]) => {
                    let name = self.ident(name, "a proof variable")?;
                    let (b, sp) = self.proof(body)?;
                    Ok((name, b, sp))
                }
                _ => Err(ParseError::syntax(s.pos(), "expected `(name proof)`")),
            }
        };
        match h {
            "pvar" => {
                self.arity(items, 1, pos, h)?;
                leaf(pt::pvar(&self.ident(&rest[0], "a proof variable")?))
            }
            "lam" => {
                self.arity(items, 2, pos, h)?;
                let a = self.ident(&rest[0], "a proof variable")?;
                let (b, sb) = self.proof(&rest[1])?;
                node(pt::lam(&a, b), vec![sb])
            }
            "app" | "pair" => {
                self.arity(items, 2, pos, h)?;
                let (x, sx) = self.proof(&rest[0])?;
                let (y, sy) = self.proof(&rest[1])?;
                node(if h == "app" { pt::app(x, y) } else { pt::pair(x, y) }, vec![sx, sy])
            }
            "fst" | "snd" | "inl" | "inr" | "botelim" => {
                self.arity(items, 1, pos, h)?;
                let (x, sx) = self.proof(&rest[0])?;
                let t = match h {
                    "fst" => pt::fst(x),
                    "snd" => pt::snd(x),
                    "inl" => pt::inl(x),
                    "inr" => pt::inr(x),
                    _ => pt::botelim(x),
                };
                node(t, vec![sx])
            }
            "case" => {
                self.arity(items, 3, pos, h)?;
                let (x, sx) = self.proof(&rest[0])?;
                let (a, l, sl) = binder(&rest[1])?;
                let (b, r, sr) = binder(&rest[2])?;
                node(pt::case(x, &a, l, &b, r), vec![sx, sl, sr])
            }
            "tlam" => {
                self.arity(items, 2, pos, h)?;
                let x = self.variable(&rest[0])?;
                let (b, sb) = self.proof(&rest[1])?;
                node(pt::tlam(&x, b), vec![sb])
            }
            "tapp" => {
                self.arity(items, 2, pos, h)?;
                let (p, sp) = self.proof(&rest[0])?;
                let t = self.term(&rest[1])?;
                node(pt::tapp(p, t), vec![sp])
            }
            "witness" => {
                self.arity(items, 2, pos, h)?;
                let t = self.term(&rest[0])?;
                let (p, sp) = self.proof(&rest[1])?;
                node(pt::witness(t, p), vec![sp])
            }
            "exelim" => {
                self.arity(items, 2, pos, h)?;
                let (p, sp) = self.proof(&rest[0])?;
                match rest[1].as_list() {
                    Some([x, a, body]) => {
                        let x = self.variable(x)?;
                        let a = self.ident(a, "a proof variable")?;
                        let (b, sb) = self.proof(body)?;
                        node(pt::exelim(p, &x, &a, b), vec![sp, sb])
                    }
                    _ => Err(ParseError::syntax(rest[1].pos(), "expected `(x a proof)`")),
                }
            }
            "em" => {
                self.arity(items, 1, pos, h)?;
                leaf(ProofTerm::Em(self.prop(&rest[0])?))
            }
            other => Err(ParseError::syntax(head.pos(), format!("unknown proof constructor `{other}`"))),
        }
    }

    fn rule(&self, s: &Sexp, index: usize) -> Res<RewriteRule> {
        let pos = s.pos();
        let items = s.as_list().ok_or_else(|| ParseError::syntax(pos, "expected a rule"))?;
        let meta = self.in_rule();
        let wrap = |e: RuleError| ParseError { pos, kind: e.into() };
        match s.head() {
            Some("term-rule") => {
                self.arity(items, 2, pos, "term-rule")?;
                let lhs = meta.term(&items[1])?;
                let rhs = meta.term(&items[2])?;
                RewriteRule::term(format!("r{index}"), lhs, rhs).map_err(wrap)
            }
            Some("prop-rule") => {
                self.arity(items, 2, pos, "prop-rule")?;
                let Prop::Atom(pred, args) = meta.prop(&items[1])? else {
                    return Err(ParseError::syntax(items[1].pos(), "the left-hand side of a prop-rule must be an atom"));
                };
                let rhs = meta.prop(&items[2])?;
                let name = match (&pred[..], args.get(1)) {
                    ("in", Some(Term::App(f, _))) if self.sig.and_then(|s| s.skolem_tag(f)).is_some() => f.clone(),
                    _ => format!("r{index}"),
                };
                RewriteRule::prop(name, pred, args, rhs).map_err(wrap)
            }
            _ => Err(ParseError::syntax(pos, "expected `term-rule` or `prop-rule`")),
        }
    }
}

fn section<'a>(forms: &'a [Sexp], name: &str) -> Res<Option<&'a [Sexp]>> {
    let mut found = None;
    for f in forms {
        if f.head() == Some(name) {
            if found.is_some() {
                return Err(ParseError::syntax(f.pos(), format!("duplicate `{name}` section")));
            }
            found = Some(&f.as_list().expect("head implies list")[1..]);
        }
    }
    Ok(found)
}

fn arity_literal(s: &Sexp) -> Res<usize> {
    s.as_atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| ParseError::syntax(s.pos(), "expected an arity"))
}

/// Parses a theory file.
pub fn parse_theory(src: &str) -> Res<Theory> {
    let forms = read_all(src)?;
    for f in &forms {
        match f.head() {
            Some("signature" | "rules" | "axioms") => {}
            _ => return Err(ParseError::syntax(f.pos(), "expected `signature`, `rules` or `axioms`")),
        }
    }
    let mut sig = Signature::new();
    let mut skolems = Vec::new();
    for entry in section(&forms, "signature")?.unwrap_or_default() {
        let pos = entry.pos();
        let items = entry.as_list().ok_or_else(|| ParseError::syntax(pos, "expected a declaration"))?;
        match entry.head() {
            Some(kind @ ("fun" | "pred")) => {
                let [_, name, arity] = items else {
                    return Err(ParseError::syntax(pos, format!("expected `({kind} name arity)`")));
                };
                let name = name.as_atom().ok_or_else(|| ParseError::syntax(name.pos(), "expected a symbol"))?;
                let arity = arity_literal(arity)?;
                let r = if kind == "fun" { sig.add_function(name, arity) } else { sig.add_predicate(name, arity) };
                r.map_err(|e| ParseError::signature(pos, e))?;
            }
            Some("skolem") => skolems.push(entry),
            _ => return Err(ParseError::syntax(pos, "expected `fun`, `pred` or `skolem`")),
        }
    }
    // Skolem bodies may only mention symbols declared before them.
    for entry in skolems {
        let pos = entry.pos();
        let items = entry.as_list().expect("checked above");
        let [_, name, vars, body] = items else {
            return Err(ParseError::syntax(pos, "expected `(skolem name (vars) body)`"));
        };
        let name = name.as_atom().ok_or_else(|| ParseError::syntax(name.pos(), "expected a symbol"))?.to_string();
        let parser = Parser::new(&sig);
        let vars = vars
            .as_list()
            .ok_or_else(|| ParseError::syntax(vars.pos(), "expected a variable list"))?
            .iter()
            .map(|v| parser.variable(v))
            .collect::<Res<Vec<_>>>()?;
        let body = parser.prop(body)?;
        sig.add_skolem(&name, SkolemTag { vars, body }).map_err(|e| ParseError::signature(pos, e))?;
    }
    let mut theory = Theory::new(sig);
    let parser = Parser::new(&theory.signature);
    let mut rules = Vec::new();
    for (i, r) in section(&forms, "rules")?.unwrap_or_default().iter().enumerate() {
        rules.push((r.pos(), parser.rule(r, i)?));
    }
    let mut axioms = Vec::new();
    for ax in section(&forms, "axioms")?.unwrap_or_default() {
        match ax.as_list() {
            Some([h, name, body]) if h.as_atom() == Some("ax") => {
                let name = parser.ident(name, "an axiom name")?;
                axioms.push((ax.pos(), name, parser.prop(body)?));
            }
            _ => return Err(ParseError::syntax(ax.pos(), "expected `(ax name prop)`")),
        }
    }
    for (pos, r) in rules {
        theory.rules.push(r).map_err(|e| ParseError { pos, kind: e.into() })?;
    }
    for (pos, name, p) in axioms {
        if theory.axioms.contains_key(&name) {
            return Err(ParseError::syntax(pos, format!("duplicate axiom `{name}`")));
        }
        theory.axioms.insert(name, p);
    }
    Ok(theory)
}

/// Parses a proof file against the signature of its theory.
pub fn parse_proofs(src: &str, sig: &Signature) -> Res<Vec<ProofObject>> {
    let parser = Parser::new(sig);
    let mut out = Vec::new();
    for form in read_all(src)? {
        let pos = form.pos();
        if form.head() != Some("proof") {
            return Err(ParseError::syntax(pos, "expected `(proof name ...)`"));
        }
        let items = form.as_list().expect("head implies list");
        let name = items
            .get(1)
            .ok_or_else(|| ParseError::syntax(pos, "missing proof name"))
            .and_then(|n| parser.ident(n, "a proof name"))?;
        let mut hyps = Vec::new();
        let mut goal = None;
        let mut term = None;
        for part in &items[2..] {
            match (part.head(), part.as_list()) {
                (Some("hyps"), Some(list)) => {
                    for h in &list[1..] {
                        match h.as_list() {
                            Some([n, p]) => hyps.push((parser.ident(n, "a hypothesis name")?, parser.prop(p)?)),
                            _ => return Err(ParseError::syntax(h.pos(), "expected `(name prop)`")),
                        }
                    }
                }
                (Some("goal"), Some([_, p])) => goal = Some(parser.prop(p)?),
                (Some("term"), Some([_, t])) => term = Some(parser.proof(t)?),
                _ => return Err(ParseError::syntax(part.pos(), "expected `hyps`, `goal` or `term`")),
            }
        }
        let goal = goal.ok_or_else(|| ParseError::syntax(pos, "missing `(goal ...)`"))?;
        let (term, spans) = term.ok_or_else(|| ParseError::syntax(pos, "missing `(term ...)`"))?;
        let sequent = crate::checker::Sequent::new(hyps, goal).map_err(|m| ParseError::syntax(pos, m))?;
        out.push(ProofObject { name, sequent, term, spans: Some(spans), pos });
    }
    Ok(out)
}

/// Canonical text of a theory; [`parse_theory`] reads it back unchanged.
pub fn print_theory(t: &Theory) -> String {
    let mut out = String::from("(signature");
    for (f, n) in t.signature.functions() {
        if t.signature.skolem_tag(f).is_none() {
            out.push_str(&format!("\n  (fun {f} {n})"));
        }
    }
    for (p, n) in t.signature.predicates() {
        out.push_str(&format!("\n  (pred {p} {n})"));
    }
    for (f, tag) in t.signature.skolem_tags() {
        out.push_str(&format!("\n  (skolem {f} ({}) {})", tag.vars.join(" "), tag.body));
    }
    out.push_str(")\n(rules");
    for r in t.rules.rules() {
        out.push_str(&format!("\n  {r}"));
    }
    out.push_str(")\n(axioms");
    for (name, p) in &t.axioms {
        out.push_str(&format!("\n  (ax {name} {p})"));
    }
    out.push_str(")\n");
    out
}

impl fmt::Display for ProofObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(proof {}", self.name)?;
        if !self.sequent.hypotheses().is_empty() {
            f.write_str(" (hyps")?;
            for (h, p) in self.sequent.hypotheses() {
                write!(f, " ({h} {p})")?;
            }
            f.write_str(")")?;
        }
        write!(f, " (goal {}) (term {}))", self.sequent.goal, self.term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofterm as pt;

    fn arith_sig() -> Signature {
        let mut sig = Signature::new();
        for (f, n) in [("0", 0), ("S", 1), ("plus", 2), ("times", 2)] {
            sig.add_function(f, n).unwrap();
        }
        sig.add_predicate("=", 2).unwrap();
        sig
    }

    #[test]
    fn parses_forall() {
        let p = Parser::untyped().prop_str("(forall x (= x x))").unwrap();
        let x = Term::var("x");
        assert_eq!(p, Prop::forall("x", Prop::atom("=", vec![x.clone(), x])));
        assert_eq!(p.to_string(), "(forall x (= x x))");
    }

    #[test]
    fn membership_arity_error() {
        let sig = Signature::membership();
        let err = Parser::new(&sig).prop_str("(in x)").unwrap_err();
        assert!(err.is_signature_error());
        assert_eq!(err.pos, Pos { line: 1, col: 1 });
    }

    #[test]
    fn numerals_and_constants() {
        let sig = arith_sig();
        let t = Parser::new(&sig).term_str("(times 2 0)").unwrap();
        assert_eq!(t, Term::app("times", vec![Term::numeral(2), Term::constant("0")]));
        assert!(Parser::new(&Signature::membership()).term_str("2").is_err());
        assert!(Parser::new(&sig).term_str("(S 1 2)").is_err());
        assert!(Parser::new(&sig).term_str("S").is_err());
    }

    #[test]
    fn sugar_desugars() {
        let p = Parser::untyped().prop_str("(iff A (not B))").unwrap();
        let a = Prop::atom("A", vec![]);
        let b = Prop::atom("B", vec![]);
        assert_eq!(p, Prop::iff(a, Prop::implies(b, Prop::Bottom)));
    }

    #[test]
    fn metavariables_only_in_rules() {
        assert!(Parser::untyped().term_str("?x").is_err());
        let t = parse_theory("(signature (fun f 1)) (rules (term-rule (f ?x) ?x))").unwrap();
        assert_eq!(t.rules.rules().len(), 1);
    }

    #[test]
    fn proof_terms_round_trip() {
        let src = "(lam b (app (lam a (app (snd (pvar a)) (pvar a))) (pair (pvar b) (lam a (app (snd (pvar a)) (pvar a))))))";
        let p = Parser::untyped().proof_str(src).unwrap();
        assert_eq!(p.to_string(), src);
        let src = "(case (pvar d) (a (inl (pvar a))) (b (exelim (pvar b) (x c (witness x (pvar c))))))";
        let p = Parser::untyped().proof_str(src).unwrap();
        assert_eq!(p.to_string(), src);
        let want = pt::case(
            pt::pvar("d"),
            "a",
            pt::inl(pt::pvar("a")),
            "b",
            pt::exelim(pt::pvar("b"), "x", "c", pt::witness(Term::var("x"), pt::pvar("c"))),
        );
        assert_eq!(p, want);
    }

    #[test]
    fn spans_locate_subterms() {
        let sexp = read_one("(pair\n  (pvar a)\n  (fst (pvar b)))").unwrap();
        let (_, spans) = Parser::untyped().proof(&sexp).unwrap();
        assert_eq!(spans.locate(&[1, 0]), Pos { line: 3, col: 8 });
        assert_eq!(spans.locate(&[]), Pos { line: 1, col: 1 });
    }

    #[test]
    fn theory_errors_carry_positions() {
        let err = parse_theory("(signature (pred in 2))\n(axioms (ax a (in x)))").unwrap_err();
        assert_eq!(err.pos.line, 2);
        let err = parse_theory("(signature (fun f 1) (pred f 1))").unwrap_err();
        assert!(err.is_signature_error());
    }
}
