//! The congruence proofs are checked modulo.
//!
//! With arithmetic presented as rewrite rules, `2 * 2 = 4` and `4 = 4` are
//! literally the same proposition, and `N(0)` is the same proposition as its
//! induction-style unfolding.  The test is fuel-bounded, so it always
//! terminates even on rule sets that loop.
//!
//! Run with `cargo run --example congruence`.

use std::collections::BTreeMap;

use modarith::parse::{parse_prop, resolve_prop};
use modarith::rewrite::{congruent, Fuel, DEFAULT_FUEL};
use modarith::theory::theory_ha_mod;

fn main() {
    let thy = theory_ha_mod(false);
    let pairs = [
        ("2 * 2 = 4", "4 = 4"),
        ("7 + 5 = 12", "12 = 12"),
        ("3 * (2 + 1) = 9", "9 = 9"),
        // One unfolding of the numeric-membership rule at 0.
        (
            "N(0)",
            "forall p : kappa. 0 in p => (forall y : iota. N(y) => y in p => S(y) in p) => 0 in p",
        ),
        ("0 = 0", "0 = S(0)"),
        ("N(0)", "N(S(0))"),
    ];
    for (a, b) in pairs {
        // One shared table, so a free variable means the same on both sides.
        let mut fv = BTreeMap::new();
        let left = resolve_prop(thy.signature(), &parse_prop(a).unwrap(), &mut fv).unwrap();
        let right = resolve_prop(thy.signature(), &parse_prop(b).unwrap(), &mut fv).unwrap();
        let mut fuel = Fuel::new(DEFAULT_FUEL);
        let same = congruent(&left, &right, thy.rules(), &mut fuel).unwrap();
        println!("{}", a);
        println!("  {}  {}", if same { "==" } else { "=/=" }, b);
    }
}
