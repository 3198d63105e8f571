//! Orthogonality reports for the bundled theories and one deliberately bad system.

use sfmod::rewrite::{RewriteRule, RewriteSystem};
use sfmod::sf::builtin_theories;
use sfmod::syntax::Term;

fn main() {
    for (name, t) in builtin_theories() {
        match t.rules.check_orthogonality() {
            Ok(()) => println!("{name}: orthogonal ({} rules)", t.rules.rules().len()),
            Err(vs) => vs.iter().for_each(|v| println!("{name}: {v}")),
        }
    }

    let x = Term::var("?x");
    let zero = Term::constant("0");
    let bad = RewriteSystem::from_rules([
        RewriteRule::term("plus-zero", Term::app("plus", vec![x.clone(), zero.clone()]), x.clone()).unwrap(),
        RewriteRule::term("zero-plus", Term::app("plus", vec![zero.clone(), x.clone()]), x.clone()).unwrap(),
        RewriteRule::term("minus-self", Term::app("minus", vec![x.clone(), x.clone()]), zero).unwrap(),
    ])
    .unwrap();
    for v in bad.check_orthogonality().unwrap_err() {
        println!("bad: {v}");
    }
}
