//! Level maps for a few membership formulas. Pass a formula to try your own.

use sfmod::stratify::stratify;
use sfmod::syntax::{Parser, Signature};

fn main() {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(arg) => vec![arg],
        None => [
            "(forall x (forall y (=> (in x y) (in y v))))",
            "(forall z (iff (in z x) (in z y)))",
            "(not (in x x))",
            "(exists y (and (in x y) (in y x)))",
        ]
        .map(String::from)
        .to_vec(),
    };
    let sig = Signature::membership();
    let parser = Parser::new(&sig);
    for src in inputs {
        match parser.prop_str(&src).map_err(|e| e.to_string()).and_then(|p| stratify(&p).map_err(|e| e.to_string())) {
            Ok(v) => println!("{src}\n  {v}"),
            Err(e) => println!("{src}\n  error: {e}"),
        }
    }
}
