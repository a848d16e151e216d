//! Relativization: plain arithmetic inside a guard predicate.
//!
//! In the sorted presentations every individual is a number.  To restate a
//! theorem in a setting where numbers are the individuals satisfying `N`,
//! every `forall x. A` becomes `forall x. N(x) => |A|` and every
//! `exists x. A` becomes `exists x. N(x) /\ |A|`.
//!
//! Run with `cargo run --example relativize`.

use modarith::parse::{parse_prop, resolve_prop};
use modarith::theory::{theory_ha, theory_ha_n};
use modarith::translate::relativize;

fn main() {
    let plain = theory_ha();
    let guarded_world = theory_ha_n(false);
    let statements = [
        "forall x : iota. x = x",
        "forall x : iota. exists y : iota. x + y = 0 \\/ ~(x = 0)",
        "exists x : iota. 2 * x = 4",
        "forall x : iota. forall y : iota. x + y = y + x",
    ];
    for src in statements {
        let mut fv = Default::default();
        let prop = resolve_prop(plain.signature(), &parse_prop(src).unwrap(), &mut fv).unwrap();
        let guarded = relativize(&prop).unwrap();
        println!("{prop}");
        println!("  |.|  {guarded}");
        // The image is a sentence of the guarded theory's language.
        guarded_world.signature().check_prop(&guarded).unwrap();
        println!();
    }

    // The translation refuses input that already lives in the guarded
    // language; `N` must not occur in its own argument.
    let n_zero = resolve_prop(
        guarded_world.signature(),
        &parse_prop("N(0)").unwrap(),
        &mut Default::default(),
    )
    .unwrap();
    println!("relativizing N(0): {}", relativize(&n_zero).unwrap_err());
}
