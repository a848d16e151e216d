//! Cut elimination as proof-term reduction.
//!
//! Each golden proof below reaches `exists x : iota. 2 * x = 4` through a
//! different detour: a beta redex, a projected pair, a case on an injection,
//! an instantiated generalization, an unpacked package.  Normalization
//! contracts the detours; the normal form of every closed existence proof
//! starts with `ex_intro`, exhibiting an explicit witness.
//!
//! Run with `cargo run --example cut_elimination`.

use modarith::corpus::exists_cut_goldens;
use modarith::kernel::check;
use modarith::proof::ProofTerm;
use modarith::reduce::normalize;

fn main() {
    for golden in exists_cut_goldens() {
        let thy = &golden.theory;
        println!("{}", golden.name);
        println!("  before  {}", golden.proof);
        let report = normalize(&golden.proof, 1_000).unwrap();
        let tags: Vec<&str> = report.trace.iter().map(|t| t.name()).collect();
        println!("  steps   {}", tags.join(", "));
        println!("  after   {}", report.normal_form);
        // Subject reduction: the normal form still proves the goal.
        let recheck = check(
            thy.signature(),
            thy.rules(),
            &golden.context(),
            &report.normal_form,
            &golden.goal,
            64,
        );
        assert!(recheck.is_valid(), "normal form must still check");
        if let ProofTerm::ExIntro(witness, ..) = &report.normal_form {
            println!("  witness {witness}");
        }
        println!();
    }
}
