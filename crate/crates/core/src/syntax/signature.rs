use indexmap::IndexMap;
use thiserror::Error;

use super::term::{Prop, Term};

/// Defining data of a minted comprehension symbol `f_{x1..xn+1, A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemTag {
    /// `x1 .. xn+1`; the last one is the element variable.
    pub vars: Vec<String>,
    pub body: Prop,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared both as a function and as a predicate")]
    Clash(String),
    #[error("symbol `{name}` is already declared with arity {existing}")]
    Redeclared { name: String, existing: usize },
    #[error("unknown function symbol `{0}`")]
    UnknownFunction(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("skolem tag for `{0}` does not match its declared arity")]
    SkolemArity(String),
}

/// Function and predicate symbols with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    functions: IndexMap<String, usize>,
    predicates: IndexMap<String, usize>,
    skolem_tags: IndexMap<String, SkolemTag>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// The language with the single binary predicate `in`.
    pub fn membership() -> Self {
        let mut sig = Self::new();
        sig.add_predicate("in", 2).expect("fresh signature");
        sig
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if self.predicates.contains_key(name) {
            return Err(SignatureError::Clash(name.into()));
        }
        match self.functions.get(name) {
            Some(&a) if a == arity => Ok(()),
            Some(&a) => Err(SignatureError::Redeclared { name: name.into(), existing: a }),
            None => {
                self.functions.insert(name.into(), arity);
                Ok(())
            }
        }
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if self.functions.contains_key(name) {
            return Err(SignatureError::Clash(name.into()));
        }
        match self.predicates.get(name) {
            Some(&a) if a == arity => Ok(()),
            Some(&a) => Err(SignatureError::Redeclared { name: name.into(), existing: a }),
            None => {
                self.predicates.insert(name.into(), arity);
                Ok(())
            }
        }
    }

    /// Registers a minted symbol; its arity is one less than the variable list.
    pub fn add_skolem(&mut self, name: &str, tag: SkolemTag) -> Result<(), SignatureError> {
        let arity = tag.vars.len().checked_sub(1).ok_or_else(|| SignatureError::SkolemArity(name.into()))?;
        self.add_function(name, arity)?;
        self.skolem_tags.insert(name.into(), tag);
        Ok(())
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.functions.get(name) == Some(&0)
    }

    pub fn skolem_tag(&self, name: &str) -> Option<&SkolemTag> {
        self.skolem_tags.get(name)
    }

    pub fn skolem_tags(&self) -> impl Iterator<Item = (&String, &SkolemTag)> {
        self.skolem_tags.iter()
    }

    pub fn functions(&self) -> impl Iterator<Item = (&String, usize)> {
        self.functions.iter().map(|(k, v)| (k, *v))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, usize)> {
        self.predicates.iter().map(|(k, v)| (k, *v))
    }

    pub fn check_term(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let expected = self.function_arity(f).ok_or_else(|| SignatureError::UnknownFunction(f.clone()))?;
                if expected != args.len() {
                    return Err(SignatureError::Arity { name: f.clone(), expected, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_prop(&self, p: &Prop) -> Result<(), SignatureError> {
        match p {
            Prop::Atom(q, args) => {
                let expected = self.predicate_arity(q).ok_or_else(|| SignatureError::UnknownPredicate(q.clone()))?;
                if expected != args.len() {
                    return Err(SignatureError::Arity { name: q.clone(), expected, found: args.len() });
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                self.check_prop(a)?;
                self.check_prop(b)
            }
            Prop::Bottom => Ok(()),
            Prop::Forall(_, a) | Prop::Exists(_, a) => self.check_prop(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_and_predicate_names_are_disjoint() {
        let mut sig = Signature::membership();
        assert_eq!(sig.add_function("in", 2), Err(SignatureError::Clash("in".into())));
        sig.add_function("f", 1).unwrap();
        assert_eq!(sig.add_predicate("f", 1), Err(SignatureError::Clash("f".into())));
    }

    #[test]
    fn skolem_arity_is_vars_minus_one() {
        let mut sig = Signature::membership();
        let tag = SkolemTag {
            vars: vec!["x1".into(), "x2".into()],
            body: Prop::mem(Term::var("x2"), Term::var("x1")),
        };
        sig.add_skolem("f", tag).unwrap();
        assert_eq!(sig.function_arity("f"), Some(1));
        let empty = SkolemTag { vars: vec![], body: Prop::Bottom };
        assert!(sig.add_skolem("g", empty).is_err());
    }

    #[test]
    fn arity_errors() {
        let sig = Signature::membership();
        let bad = Prop::atom("in", vec![Term::var("x")]);
        assert_eq!(
            sig.check_prop(&bad),
            Err(SignatureError::Arity { name: "in".into(), expected: 2, found: 1 })
        );
    }
}
