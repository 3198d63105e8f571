//! Builds the empty set, complements, power sets and unions by comprehension and
//! checks the certificate proof for each instance.

use sfmod::checker::Checker;
use sfmod::sf::{self, comprehend, comprehension_axiom, ComprehendError};
use sfmod::syntax::parse::print_theory;
use sfmod::syntax::Parser;

fn main() {
    let mut t = sf::builtin_theory("sf-empty").expect("bundled theory");
    for (body, vars) in sf::SF_BASIC_REQUESTS {
        let body = Parser::new(&t.signature).prop_str(body).unwrap();
        let vars: Vec<String> = vars.split_whitespace().map(String::from).collect();
        let inst = comprehend(&mut t, &body, &vars, false).expect("stratified request");
        let certified = Checker::new(&t).check(&[], &sf::axiom_proof(&inst), &comprehension_axiom(&inst)).is_ok();
        println!("{}  rule {}\n  certificate {}", inst.symbol, inst.rule, if certified { "checks" } else { "FAILS" });
    }

    let russell = Parser::new(&t.signature).prop_str("(not (in x x))").unwrap();
    match comprehend(&mut t, &russell, &["x".into()], false) {
        Err(ComprehendError::NotStratifiable(_)) => println!("russell: rejected, not stratifiable"),
        other => println!("russell: unexpected {other:?}"),
    }

    println!("\n{}", print_theory(&t));
}
