//! Programs as proofs in the two-rule code theory.
//!
//! A primitive-recursive program over `nat` compiles to a proof term whose
//! proposition is membership in the code of its type, and the kernel
//! certifies it with no axioms: the two rules for `eps(nat)` and
//! `eps(y -> z)` unfold the codes as checking proceeds.  Program reduction
//! is then matched, step for step, by proof reduction.
//!
//! Run with `cargo run --example system_t`.

use modarith::kernel::{check, Context};
use modarith::theory::theory_t;
use modarith::translate::{
    compile, eps_of, simulate_step, t_normalize, type_of, TTerm, TType, DEFAULT_SIMULATION_BUDGET,
};

fn main() {
    // add = fun m n => rec(m, fun _ r => S(r), n)
    let nat = TType::Nat;
    let add = TTerm::lam(
        "m",
        nat.clone(),
        TTerm::lam(
            "n",
            nat.clone(),
            TTerm::rec(
                nat.clone(),
                TTerm::var("m"),
                TTerm::lam("k", nat.clone(), TTerm::lam("r", nat.clone(), TTerm::succ(TTerm::var("r")))),
                TTerm::var("n"),
            ),
        ),
    );
    let ty = type_of(&mut Vec::new(), &add).unwrap();
    println!("add : {ty}");

    let prog = TTerm::app(TTerm::app(add, TTerm::numeral(2)), TTerm::numeral(3));
    let (normal, steps) = t_normalize(&prog, 1_000).unwrap();
    println!("add 2 3  ~>{steps}  {normal}  (= {})", normal.as_numeral().unwrap());

    // Compilation: the program is a proof of eps applied to its type code.
    let thy = theory_t();
    let goal = eps_of(&type_of(&mut Vec::new(), &prog).unwrap());
    let proof = compile(&prog);
    println!("compiled goal: {goal}");
    let report = check(thy.signature(), thy.rules(), &Context::new(), &proof, &goal, 256);
    println!("kernel verdict: {:?}", report.verdict);

    // One program step corresponds to at least one proof reduction step.
    let sim = simulate_step(&prog, DEFAULT_SIMULATION_BUDGET).unwrap().unwrap();
    println!(
        "first program step reaches {} and is simulated by {} proof step(s)",
        sim.reduct, sim.proof_steps
    );
}
