//! A well-typed proof of false from B, modulo A -> B and (A => false), that has
//! no normal form.

use sfmod::checker::Checker;
use sfmod::proofterm::{normalize_proof, NormalizeOutcome, DEFAULT_HISTORY_WINDOW};
use sfmod::selftest::BOT_FROM_B_SRC;
use sfmod::sf::builtin_theory;
use sfmod::syntax::parse::parse_proofs;

fn main() {
    let t = builtin_theory("crabbe").expect("bundled theory");
    let obj = parse_proofs(BOT_FROM_B_SRC, &t.signature).unwrap().remove(0);
    println!("{}\n  check: {:?}", obj.term, Checker::new(&t).check_object(&obj).map_err(|f| f.error));

    for (fuel, window) in [(10_000, DEFAULT_HISTORY_WINDOW), (12, 0)] {
        match normalize_proof(&obj.term, fuel, window) {
            NormalizeOutcome::NormalForm { term, steps } => println!("  normal form after {steps}: {term}"),
            NormalizeOutcome::LoopDetected { witness, steps, period } => {
                println!("  loop after {steps} steps with period {period} at {witness}")
            }
            NormalizeOutcome::FuelExhausted { last, steps } => println!("  fuel ran out after {steps} steps at {last}"),
        }
    }
}
