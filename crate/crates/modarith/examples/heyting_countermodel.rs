//! Finite Heyting-algebra semantics.
//!
//! Intuitionistic tautologies take the value top in every Heyting algebra;
//! classical principles do not, and exhaustive search over downset algebras
//! of small posets finds the refutations.  Excluded middle already fails in
//! the three-element chain, which is the smallest countermodel there is.
//!
//! Run with `cargo run --example heyting_countermodel`.

use modarith::heyting::{enumerate_algebras, find_countermodel, HeytingAlgebra};
use modarith::parse::parse_prop;

fn main() {
    let algebras = enumerate_algebras(4);
    println!("downset algebras of posets with <= 4 points: {}", algebras.len());
    for algebra in &algebras {
        algebra.check_laws().unwrap();
    }
    println!("all of them satisfy the Heyting-algebra laws\n");

    let candidates = [
        "p => p",
        "~(p /\\ ~p)",
        "(p => q) => (~q => ~p)",
        "p \\/ ~p",
        "~~p => p",
        "((p => q) => p) => p",
    ];
    for src in candidates {
        let prop = parse_prop(src).unwrap();
        match find_countermodel(&prop, 4).unwrap() {
            None => println!("{src}\n  valid in every algebra searched\n"),
            Some(cm) => println!("{src}\n  refuted:\n{cm}\n"),
        }
    }

    // The chain 0 < m < 1 refutes excluded middle by hand: an atom sitting
    // at m has negation 0, and m join 0 is still not the top.
    let chain = HeytingAlgebra::chain(3);
    let m = 1;
    let not_m = chain.imp(m, chain.bot);
    println!(
        "in {}: p := e{m} gives ~p = e{not_m} and p \\/ ~p = e{}, top is e{}",
        chain.name,
        chain.join(m, not_m),
        chain.top
    );
}
