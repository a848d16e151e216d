//! The file formats, end to end, without touching the filesystem.
//!
//! A theory file declares or extends a theory; a proof file picks a theory,
//! brings axioms or scheme instances into scope, and proves theorems that
//! may cite each other; a program file defines typed recursive programs.
//! This example feeds all three through the same entry points the command
//! line uses.
//!
//! Run with `cargo run --example proof_files`.

use modarith::parse::{parse_proof_file, parse_t_file, parse_theory_file};
use modarith::script::{build_theory, check_proof_file, check_t_file};
use modarith::theory::builtin;

fn main() {
    // A theory extending a built-in with one defined symbol.
    let thy_src = "
        extend ha-mod.
        fun three : iota.
        rule three --> S(S(S(0))).
    ";
    let theory_file = parse_theory_file(thy_src).unwrap();
    // Extending keeps the base theory's name.
    let mut thy = build_theory(&theory_file, "with-three").unwrap();
    println!(
        "extended `{}` with a defined constant and its computation rule",
        thy.name()
    );

    // A proof file against it: `three` computes to 3, so the first theorem
    // needs nothing but the identity, and the second cites the first.  The
    // caller picks the theory here; the `theory` header matters to the CLI,
    // which resolves it from disk.
    let prf_src = "
        theory ha-mod.

        theorem two_one : 2 + 1 = three :=
          tfun (p : kappa) => fun (a : 3 in p) => a.

        theorem witness : exists n : iota. n = three :=
          ex_intro(3, two_one, n : iota. n = three).
    ";
    let proof_file = parse_proof_file(prf_src).unwrap();
    for outcome in check_proof_file(&mut thy, &proof_file, 128).unwrap() {
        println!("  theorem {} : {} -- {:?}", outcome.name, outcome.goal, outcome.report.verdict);
    }

    // An induction instance, in the fully axiomatic presentation: `with`
    // bindings pick the induction proposition and its distinguished variable.
    let mut ha = builtin("ha").unwrap();
    let ind_src = "
        theory ha.

        use axiom induction with P := x = x, x := x.
        use axiom eq_refl.

        theorem all_self : forall n : iota. n = n :=
          induction (eq_refl @ 0) (tfun (y : iota) => fun (h : y = y) => eq_refl @ S(y)).
    ";
    let ind_file = parse_proof_file(ind_src).unwrap();
    for outcome in check_proof_file(&mut ha, &ind_file, 128).unwrap() {
        println!("  theorem {} : {} -- {:?}", outcome.name, outcome.goal, outcome.report.verdict);
    }

    // A program file: composition of earlier definitions by name.
    let t_src = "
        tdef double : nat -> nat :=
          fun (n : nat) => rec[nat](n, fun (k : nat) => fun (r : nat) => S(r), n).
        tdef eight : nat := double (double (S(S(0)))).
    ";
    let t_file = parse_t_file(t_src).unwrap();
    for outcome in check_t_file(&t_file, 256, 10_000).unwrap() {
        println!(
            "  tdef {} : {} normalizes to {} -- {:?}",
            outcome.name, outcome.ty, outcome.normal_form, outcome.report.verdict
        );
    }
}
