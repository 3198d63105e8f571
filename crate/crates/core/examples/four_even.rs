//! Checks the witness proof that 4 is even, and shows where a wrong witness fails.

use sfmod::checker::Checker;
use sfmod::selftest::{FOUR_EVEN_BAD_SRC, FOUR_EVEN_SRC};
use sfmod::sf::builtin_theory;
use sfmod::syntax::parse::parse_proofs;

fn main() {
    let arith = builtin_theory("arithmetic").expect("bundled theory");
    let checker = Checker::new(&arith);
    for src in [FOUR_EVEN_SRC, FOUR_EVEN_BAD_SRC] {
        for obj in parse_proofs(src, &arith.signature).expect("bundled proofs parse") {
            match checker.check_object(&obj) {
                Ok(()) => println!("{}: ok\n  {}", obj.name, obj.term),
                Err(f) => println!("{}: failed at {} ({})\n  {}", obj.name, obj.locate(&f), f.subterm, f.error),
            }
        }
    }
}
