//! Four is even, twice.
//!
//! The first proof lives in the presentation where arithmetic is rewriting:
//! `2 * 2 = 4` unfolds to a statement the identity function proves, so the
//! proof term never mentions an arithmetic fact.  The second lives in a
//! presentation where `=` is opaque: the proof must cite reflexivity, and
//! only the term rules compute.  Same theorem, very different proofs.
//!
//! Run with `cargo run --example even_four`.

use modarith::corpus::{even_four_axiomatic, even_four_modulo};
use modarith::kernel::check;

fn main() {
    for golden in [even_four_modulo(), even_four_axiomatic()] {
        let thy = &golden.theory;
        println!("[{}] {}", thy.name(), golden.goal);
        for (name, hyp) in &golden.hypotheses {
            println!("  given {name} : {hyp}");
        }
        println!("  proof   {}", golden.proof);
        let report = check(
            thy.signature(),
            thy.rules(),
            &golden.context(),
            &golden.proof,
            &golden.goal,
            32,
        );
        println!("  verdict {:?} after {} unfoldings", report.verdict, report.fuel_consumed);
        println!();
    }
}
