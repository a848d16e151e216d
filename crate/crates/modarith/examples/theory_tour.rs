//! The built-in presentations of arithmetic, side by side.
//!
//! They run from fully axiomatic (every fact an axiom, nothing computes) to
//! fully computational (no axioms at all, everything a rewrite rule), with
//! the classed and guarded presentations in between.  Proving power is the
//! same; where the work happens is not.
//!
//! Run with `cargo run --example theory_tour`.

use modarith::theory::{builtin, theory_ha_mod, BUILTIN_NAMES};

fn main() {
    println!(
        "{:<16} {:>10} {:>10} {:>7} {:>8}",
        "theory", "term rules", "prop rules", "axioms", "schemes"
    );
    for name in BUILTIN_NAMES {
        let thy = builtin(name).unwrap();
        println!(
            "{:<16} {:>10} {:>10} {:>7} {:>8}",
            name,
            thy.rules().term_rules().len(),
            thy.rules().prop_rules().len(),
            thy.axioms().len(),
            thy.schemes().len(),
        );
    }

    // The variant differs from the standard rule presentation in exactly one
    // proposition rule: its numeric-membership unfolding drops the inner
    // guard on the step hypothesis.
    let standard = theory_ha_mod(false);
    let variant = theory_ha_mod(true);
    println!();
    for (a, b) in standard
        .rules()
        .prop_rules()
        .iter()
        .zip(variant.rules().prop_rules())
    {
        if a.rhs != b.rhs {
            println!("rule `{}` differs between ha-mod and ha-mod-variant:", a.name);
            println!("  standard: {} --> {}", a.lhs(), a.rhs);
            println!("  variant:  {} --> {}", b.lhs(), b.rhs);
        }
    }
}
