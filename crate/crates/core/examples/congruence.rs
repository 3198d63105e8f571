//! One proof term, several goals: anything congruent to the goal is accepted.

use sfmod::checker::Checker;
use sfmod::sf::builtin_theory;
use sfmod::syntax::Parser;

fn main() {
    let arith = builtin_theory("arithmetic").expect("bundled theory");
    let p = Parser::new(&arith.signature);
    let hyps = vec![("alpha".to_string(), p.prop_str("(forall x (= x x))").unwrap())];
    let term = p.proof_str("(tapp (pvar alpha) 4)").unwrap();
    let checker = Checker::new(&arith);

    for goal in ["(= 4 4)", "(= (times 2 2) 4)", "(= (plus 1 3) (times 2 2))", "(= 5 4)"] {
        let g = p.prop_str(goal).unwrap();
        let nf = arith.rules.normalize_prop(&g, 1000).unwrap().0;
        let verdict = if checker.check(&hyps, &term, &g).is_ok() { "accepted" } else { "rejected" };
        println!("{goal:<28} normal form {nf:<12} {verdict}");
    }
}
