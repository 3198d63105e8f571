//! Stratification of propositions in the membership language.
//!
//! After renaming binders apart, every atom `u ∈ w` contributes the constraint
//! `level(w) = level(u) + 1`. The constraints are solved with a union-find
//! whose edges carry integer offsets; a cycle with a nonzero offset sum shows
//! up as a conflict when two already-joined variables are constrained again.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::syntax::{Prop, Term};

pub const MEMBERSHIP: &str = "in";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StratifyError {
    #[error("atom {0} is not in the membership language")]
    NotInMembershipLanguage(Prop),
    #[error("the level map has no entry for variable `{0}`")]
    MissingVariable(String),
}

/// Levels of the variables of a proposition renamed apart, in order of first
/// occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Stratification {
    pub levels: IndexMap<String, i64>,
}

impl Stratification {
    pub fn get(&self, x: &str) -> Option<i64> {
        self.levels.get(x).copied()
    }

    pub fn shifted(&self, c: i64) -> Self {
        Self { levels: self.levels.iter().map(|(k, v)| (k.clone(), v + c)).collect() }
    }
}

impl FromIterator<(String, i64)> for Stratification {
    fn from_iter<I: IntoIterator<Item = (String, i64)>>(iter: I) -> Self {
        Self { levels: iter.into_iter().collect() }
    }
}

impl fmt::Display for Stratification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(levels")?;
        for (x, l) in &self.levels {
            write!(f, " ({x} {l})")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Stratified(Stratification),
    Unstratifiable,
}

impl Verdict {
    pub fn is_stratifiable(&self) -> bool {
        matches!(self, Verdict::Stratified(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Stratified(s) => s.fmt(f),
            Verdict::Unstratifiable => f.write_str("unstratifiable"),
        }
    }
}

type Constraints = (Vec<String>, Vec<(String, String)>);

/// Variables of `p` in order of first occurrence (binders included) and its
/// membership atoms as `(u, w)` pairs. `p` must already be renamed apart.
fn constraints(p: &Prop) -> Result<Constraints, StratifyError> {
    fn walk(p: &Prop, vars: &mut Vec<String>, seen: &mut BTreeSet<String>, atoms: &mut Vec<(String, String)>) -> Result<(), StratifyError> {
        let mut note = |x: &str, vars: &mut Vec<String>| {
            if seen.insert(x.to_string()) {
                vars.push(x.to_string());
            }
        };
        match p {
            Prop::Atom(pred, args) => match (pred.as_str(), args.as_slice()) {
                (MEMBERSHIP, [Term::Var(u), Term::Var(w)]) => {
                    note(u, vars);
                    note(w, vars);
                    atoms.push((u.clone(), w.clone()));
                }
                _ => return Err(StratifyError::NotInMembershipLanguage(p.clone())),
            },
            Prop::Forall(x, a) | Prop::Exists(x, a) => {
                note(x, vars);
                walk(a, vars, seen, atoms)?;
            }
            Prop::Bottom => {}
            _ => {
                for c in p.children() {
                    walk(c, vars, seen, atoms)?;
                }
            }
        }
        Ok(())
    }
    let mut vars = Vec::new();
    let mut atoms = Vec::new();
    walk(p, &mut vars, &mut BTreeSet::new(), &mut atoms)?;
    Ok((vars, atoms))
}

struct OffsetUnionFind {
    parent: Vec<usize>,
    // level(i) - level(parent[i])
    offset: Vec<i64>,
}

impl OffsetUnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), offset: vec![0; n] }
    }

    /// Root of `i` and `level(i) - level(root)`.
    fn find(&mut self, i: usize) -> (usize, i64) {
        let p = self.parent[i];
        if p == i {
            return (i, 0);
        }
        let (root, d) = self.find(p);
        self.parent[i] = root;
        self.offset[i] += d;
        (root, self.offset[i])
    }

    /// Records `level(b) - level(a) = d`; false on conflict.
    fn relate(&mut self, a: usize, b: usize, d: i64) -> bool {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        if ra == rb {
            return db - da == d;
        }
        // level(rb) - level(ra) = da + d - db
        self.parent[rb] = ra;
        self.offset[rb] = da + d - db;
        true
    }
}

/// Decides stratifiability. Each connected component of the constraint graph
/// is shifted so that its least level is 0.
pub fn stratify(p: &Prop) -> Result<Verdict, StratifyError> {
    let p = p.rename_apart();
    let (vars, atoms) = constraints(&p)?;
    let index: IndexMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut uf = OffsetUnionFind::new(vars.len());
    for (u, w) in &atoms {
        if !uf.relate(index[u.as_str()], index[w.as_str()], 1) {
            return Ok(Verdict::Unstratifiable);
        }
    }
    let rel: Vec<(usize, i64)> = (0..vars.len()).map(|i| uf.find(i)).collect();
    let mut min = vec![i64::MAX; vars.len()];
    for &(r, d) in &rel {
        min[r] = min[r].min(d);
    }
    Ok(Verdict::Stratified(
        vars.iter().zip(&rel).map(|(v, &(r, d))| (v.clone(), d - min[r])).collect(),
    ))
}

/// Whether `s` satisfies every atom of `p` renamed apart.
pub fn verify_stratification(p: &Prop, s: &Stratification) -> Result<bool, StratifyError> {
    let (vars, atoms) = constraints(&p.rename_apart())?;
    if let Some(missing) = vars.iter().find(|v| !s.levels.contains_key(*v)) {
        return Err(StratifyError::MissingVariable(missing.clone()));
    }
    Ok(atoms.iter().all(|(u, w)| s.levels[w] == s.levels[u] + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Parser;

    fn prop(src: &str) -> Prop {
        Parser::untyped().prop_str(src).unwrap()
    }

    fn levels(pairs: &[(&str, i64)]) -> Stratification {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    const LEIBNIZ: &str = "(=> (forall v (iff (in v x) (in v y))) (forall w (=> (in x w) (in y w))))";

    #[test]
    fn extensionality_to_leibniz_stratifies() {
        let p = prop(LEIBNIZ);
        let Verdict::Stratified(s) = stratify(&p).unwrap() else { panic!("expected a stratification") };
        assert_eq!(s, levels(&[("v", 0), ("x", 1), ("y", 1), ("w", 2)]));
        assert!(verify_stratification(&p, &s).unwrap());
        assert!(verify_stratification(&p, &levels(&[("v", 4), ("x", 5), ("y", 5), ("w", 6)])).unwrap());
        assert!(!verify_stratification(&p, &levels(&[("v", 0), ("x", 1), ("y", 2), ("w", 2)])).unwrap());
    }

    #[test]
    fn unstratifiable_examples() {
        assert_eq!(stratify(&prop("(in x x)")).unwrap(), Verdict::Unstratifiable);
        let p = prop("(=> (forall v (iff (in v x) (in v y))) (in x y))");
        assert_eq!(stratify(&p).unwrap(), Verdict::Unstratifiable);
    }

    #[test]
    fn bottom_needs_no_levels() {
        assert!(verify_stratification(&Prop::Bottom, &Stratification::default()).unwrap());
        assert_eq!(stratify(&Prop::Bottom).unwrap(), Verdict::Stratified(Stratification::default()));
    }

    #[test]
    fn shadowed_binders_get_separate_levels() {
        // the inner x is a different variable from the outer one
        let p = prop("(forall x (and (in x y) (forall x (in y x))))");
        let Verdict::Stratified(s) = stratify(&p).unwrap() else { panic!() };
        assert_eq!(s.levels.len(), 3);
        assert_eq!(s.get("y"), Some(1));
        assert_eq!(s.get("x'"), Some(2));
    }

    #[test]
    fn components_are_normalized_separately() {
        let s = match stratify(&prop("(and (in a b) (in c (f d)))")) {
            Err(StratifyError::NotInMembershipLanguage(_)) => None,
            other => Some(other),
        };
        assert!(s.is_none());
        let Verdict::Stratified(s) = stratify(&prop("(and (in a b) (in c d))")).unwrap() else { panic!() };
        assert_eq!(s, levels(&[("a", 0), ("b", 1), ("c", 0), ("d", 1)]));
    }

    #[test]
    fn rejects_other_predicates_and_missing_levels() {
        assert!(stratify(&prop("(= x y)")).is_err());
        assert_eq!(
            verify_stratification(&prop("(in x y)"), &levels(&[("x", 0)])),
            Err(StratifyError::MissingVariable("y".into()))
        );
    }

    #[test]
    fn display_forms() {
        let v = stratify(&prop("(in x y)")).unwrap();
        assert_eq!(v.to_string(), "(levels (x 0) (y 1))");
        assert_eq!(Verdict::Unstratifiable.to_string(), "unstratifiable");
    }
}
