//! Normalizes the bundled proofs with cuts over the basic set theory and
//! re-checks every normal form against the original goal.

use sfmod::checker::Checker;
use sfmod::proofterm::{normalize_proof, NormalizeOutcome, DEFAULT_HISTORY_WINDOW};
use sfmod::selftest::SF_CUTS_SRC;
use sfmod::sf::sf_basic;
use sfmod::syntax::parse::parse_proofs;

fn main() {
    let t = sf_basic();
    let checker = Checker::new(&t);
    for obj in parse_proofs(SF_CUTS_SRC, &t.signature).unwrap() {
        match normalize_proof(&obj.term, 10_000, DEFAULT_HISTORY_WINDOW) {
            NormalizeOutcome::NormalForm { term, steps } => {
                let ok = checker.check_sequent(&obj.sequent, &term).is_ok();
                println!("{} ({steps} steps, {}): {term}", obj.name, if ok { "checks" } else { "FAILS" });
            }
            other => println!("{}: {other:?}", obj.name),
        }
    }
}
