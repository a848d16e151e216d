//! Golden theorems with hand-written proofs.
//!
//! These are the fixed points the examples and the integration suite pivot
//! on: the "4 is even" statement in both presentations of arithmetic, a
//! bank of pure-logic theorems, and a family of deliberately cut-bearing
//! proofs of existential statements whose normal forms must expose their
//! witnesses.

use crate::kernel::Context;
use crate::proof::ProofTerm;
use crate::rewrite::TermRule;
use crate::syntax::{Prop, Signature, Sort, Term, Var};
use crate::theory::{theory_ha, theory_ha_mod, Theory};

/// A checkable artifact: a proof of `goal` under `hypotheses` in `theory`.
#[derive(Clone, Debug)]
pub struct Golden {
    pub name: String,
    pub theory: Theory,
    pub hypotheses: Vec<(String, Prop)>,
    pub goal: Prop,
    pub proof: ProofTerm,
}

impl Golden {
    pub fn context(&self) -> Context {
        Context::from_pairs(self.hypotheses.iter().cloned())
    }
}

fn x() -> Var {
    Var::iota("x")
}

/// `exists x. 2 * x = 4`.
fn even_four_goal() -> Prop {
    Prop::exists(x(), even_four_body())
}

fn even_four_body() -> Prop {
    Prop::eq(Term::times(Term::numeral(2), Term::var(x())), Term::numeral(4))
}

/// The reflexivity proof of an equation in the rewrite presentation, where
/// `=` unfolds to Leibniz form: `tfun p => fun a => a` proves `t = u`
/// whenever `t` and `u` have the same normal form.
fn leibniz_refl(rhs: Term) -> ProofTerm {
    let p = Var::kappa("p");
    ProofTerm::tlam(
        p.clone(),
        ProofTerm::lam("a", Prop::mem(rhs, Term::var(p)), ProofTerm::var("a")),
    )
}

/// "4 is even" in the rewrite presentation of arithmetic: no hypotheses at
/// all, the equation is settled by computation plus reflexivity.
pub fn even_four_modulo() -> Golden {
    Golden {
        name: "even-four".into(),
        theory: theory_ha_mod(false),
        hypotheses: vec![],
        goal: even_four_goal(),
        proof: ProofTerm::ex_intro(
            Term::numeral(2),
            leibniz_refl(Term::numeral(4)),
            x(),
            even_four_body(),
        ),
    }
}

/// The minimal axiomatic counterpart: the recursion rules stay as rewrite
/// rules, equality is a plain predicate, and the only axiom is
/// reflexivity.  The equation `2 * 2 = 4` is then an *instance* of
/// `forall x. x = x` because the two sides are congruent.
pub fn even_four_axiomatic() -> Golden {
    let refl = Prop::forall(x(), Prop::eq(Term::var(x()), Term::var(x())));
    let mut thy = Theory::new("arith-rules", theory_ha().signature().clone());
    let vx = || Term::var(Var::iota("x"));
    let vy = || Term::var(Var::iota("y"));
    thy.add_term_rule(TermRule::new("plus_zero", Term::plus(Term::zero(), vy()), vy()));
    thy.add_term_rule(TermRule::new(
        "plus_succ",
        Term::plus(Term::succ(vx()), vy()),
        Term::succ(Term::plus(vx(), vy())),
    ));
    thy.add_term_rule(TermRule::new("times_zero", Term::times(Term::zero(), vy()), Term::zero()));
    thy.add_term_rule(TermRule::new(
        "times_succ",
        Term::times(Term::succ(vx()), vy()),
        Term::plus(Term::times(vx(), vy()), vy()),
    ));
    thy.add_axiom("eq_refl", refl.clone());
    Golden {
        name: "even-four-axiomatic".into(),
        theory: thy,
        hypotheses: vec![("eq_refl".into(), refl)],
        goal: even_four_goal(),
        proof: ProofTerm::ex_intro(
            Term::numeral(2),
            ProofTerm::tapp(ProofTerm::var("eq_refl"), Term::numeral(4)),
            x(),
            even_four_body(),
        ),
    }
}

/// A rule-free theory for pure logic: three propositional letters, one
/// individual constant, and two unary predicates.
pub fn logic_theory() -> Theory {
    let mut sig = Signature::new();
    sig.declare_sort(Sort::iota());
    sig.declare_function("c", vec![], Sort::iota()).unwrap();
    sig.declare_predicate("A", vec![]).unwrap();
    sig.declare_predicate("B", vec![]).unwrap();
    sig.declare_predicate("C", vec![]).unwrap();
    sig.declare_predicate("P", vec![Sort::iota()]).unwrap();
    sig.declare_predicate("Q", vec![Sort::iota()]).unwrap();
    Theory::new("logic", sig)
}

/// Intuitionistic tautologies, each with a closed proof in [`logic_theory`].
pub fn logic_goldens() -> Vec<Golden> {
    let thy = logic_theory();
    let a = || Prop::atom("A", vec![]);
    let b = || Prop::atom("B", vec![]);
    let c = || Prop::atom("C", vec![]);
    let ind = || Term::constant("c");
    let p_of = |t: Term| Prop::atom("P", vec![t]);
    let px = || Prop::atom("P", vec![Term::var(x())]);
    let qx = || Prop::atom("Q", vec![Term::var(x())]);
    let v = ProofTerm::var;
    let lam = ProofTerm::lam;
    let app = ProofTerm::app;

    let mut out = Vec::new();
    let mut golden = |name: &str, goal: Prop, proof: ProofTerm| {
        out.push(Golden {
            name: name.into(),
            theory: thy.clone(),
            hypotheses: vec![],
            goal,
            proof,
        });
    };

    golden("identity", Prop::implies(a(), a()), lam("u", a(), v("u")));
    golden(
        "constant",
        Prop::implies(a(), Prop::implies(b(), a())),
        lam("u", a(), lam("w", b(), v("u"))),
    );
    golden(
        "composition",
        Prop::implies(
            Prop::implies(a(), Prop::implies(b(), c())),
            Prop::implies(Prop::implies(a(), b()), Prop::implies(a(), c())),
        ),
        lam(
            "f",
            Prop::implies(a(), Prop::implies(b(), c())),
            lam(
                "g",
                Prop::implies(a(), b()),
                lam("u", a(), app(app(v("f"), v("u")), app(v("g"), v("u")))),
            ),
        ),
    );
    golden(
        "and-comm",
        Prop::implies(Prop::and(a(), b()), Prop::and(b(), a())),
        lam(
            "u",
            Prop::and(a(), b()),
            ProofTerm::pair(ProofTerm::snd(v("u")), ProofTerm::fst(v("u"))),
        ),
    );
    golden(
        "or-comm",
        Prop::implies(Prop::or(a(), b()), Prop::or(b(), a())),
        lam(
            "s",
            Prop::or(a(), b()),
            ProofTerm::case(
                v("s"),
                "l",
                ProofTerm::inr(v("l"), b()),
                "r",
                ProofTerm::inl(v("r"), a()),
            ),
        ),
    );
    golden(
        "curry",
        Prop::implies(
            Prop::implies(Prop::and(a(), b()), c()),
            Prop::implies(a(), Prop::implies(b(), c())),
        ),
        lam(
            "f",
            Prop::implies(Prop::and(a(), b()), c()),
            lam("u", a(), lam("w", b(), app(v("f"), ProofTerm::pair(v("u"), v("w"))))),
        ),
    );
    golden(
        "uncurry",
        Prop::implies(
            Prop::implies(a(), Prop::implies(b(), c())),
            Prop::implies(Prop::and(a(), b()), c()),
        ),
        lam(
            "f",
            Prop::implies(a(), Prop::implies(b(), c())),
            lam(
                "u",
                Prop::and(a(), b()),
                app(app(v("f"), ProofTerm::fst(v("u"))), ProofTerm::snd(v("u"))),
            ),
        ),
    );
    golden(
        "imp-over-and",
        Prop::implies(
            Prop::implies(a(), Prop::and(b(), c())),
            Prop::and(Prop::implies(a(), b()), Prop::implies(a(), c())),
        ),
        lam(
            "f",
            Prop::implies(a(), Prop::and(b(), c())),
            ProofTerm::pair(
                lam("u", a(), ProofTerm::fst(app(v("f"), v("u")))),
                lam("u", a(), ProofTerm::snd(app(v("f"), v("u")))),
            ),
        ),
    );
    golden(
        "double-negation-intro",
        Prop::implies(a(), Prop::not(Prop::not(a()))),
        lam("u", a(), lam("k", Prop::not(a()), app(v("k"), v("u")))),
    );
    golden(
        "triple-negation",
        Prop::implies(Prop::not(Prop::not(Prop::not(a()))), Prop::not(a())),
        lam(
            "t",
            Prop::not(Prop::not(Prop::not(a()))),
            lam(
                "u",
                a(),
                app(v("t"), lam("k", Prop::not(a()), app(v("k"), v("u")))),
            ),
        ),
    );
    golden(
        "explosion",
        Prop::implies(Prop::Bottom, a()),
        lam("u", Prop::Bottom, ProofTerm::exfalso(v("u"), a())),
    );
    golden(
        "no-disjunct",
        Prop::implies(
            Prop::not(Prop::or(a(), b())),
            Prop::and(Prop::not(a()), Prop::not(b())),
        ),
        lam(
            "n",
            Prop::not(Prop::or(a(), b())),
            ProofTerm::pair(
                lam("u", a(), app(v("n"), ProofTerm::inl(v("u"), b()))),
                lam("w", b(), app(v("n"), ProofTerm::inr(v("w"), a()))),
            ),
        ),
    );
    golden(
        "contraposition",
        Prop::implies(
            Prop::implies(a(), b()),
            Prop::implies(Prop::not(b()), Prop::not(a())),
        ),
        lam(
            "f",
            Prop::implies(a(), b()),
            lam("n", Prop::not(b()), lam("u", a(), app(v("n"), app(v("f"), v("u"))))),
        ),
    );
    golden("truth", Prop::Top, ProofTerm::TruthIntro);
    golden(
        "pointwise",
        Prop::forall(x(), Prop::implies(px(), px())),
        ProofTerm::tlam(x(), lam("h", px(), v("h"))),
    );
    golden(
        "instantiate",
        Prop::implies(Prop::forall(x(), px()), p_of(ind())),
        lam(
            "h",
            Prop::forall(x(), px()),
            ProofTerm::tapp(v("h"), ind()),
        ),
    );
    golden(
        "witness",
        Prop::implies(p_of(ind()), Prop::exists(x(), px())),
        lam("h", p_of(ind()), ProofTerm::ex_intro(ind(), v("h"), x(), px())),
    );
    golden(
        "forall-mp",
        Prop::implies(
            Prop::forall(x(), Prop::implies(px(), qx())),
            Prop::implies(Prop::forall(x(), px()), Prop::forall(x(), qx())),
        ),
        lam(
            "f",
            Prop::forall(x(), Prop::implies(px(), qx())),
            lam(
                "g",
                Prop::forall(x(), px()),
                ProofTerm::tlam(
                    x(),
                    app(
                        ProofTerm::tapp(v("f"), Term::var(x())),
                        ProofTerm::tapp(v("g"), Term::var(x())),
                    ),
                ),
            ),
        ),
    );
    golden(
        "unpack",
        Prop::implies(
            Prop::exists(x(), px()),
            Prop::implies(Prop::forall(x(), Prop::implies(px(), b())), b()),
        ),
        lam(
            "e",
            Prop::exists(x(), px()),
            lam(
                "f",
                Prop::forall(x(), Prop::implies(px(), b())),
                ProofTerm::ex_elim(
                    v("e"),
                    x(),
                    "h",
                    app(ProofTerm::tapp(v("f"), Term::var(x())), v("h")),
                    b(),
                ),
            ),
        ),
    );
    out
}

/// Proofs of `exists x. 2 * x = 4` that each contain one deliberate cut of
/// a different kind.  All are closed, and all normalize to a proof headed
/// by the witness introduction.
pub fn exists_cut_goldens() -> Vec<Golden> {
    let thy = theory_ha_mod(false);
    let goal = even_four_goal();
    let direct = || even_four_modulo().proof;
    let refl = || leibniz_refl(Term::numeral(4));
    let two_two = || {
        Prop::eq(
            Term::times(Term::numeral(2), Term::numeral(2)),
            Term::numeral(4),
        )
    };
    let mut out = Vec::new();
    let mut golden = |name: &str, proof: ProofTerm| {
        out.push(Golden {
            name: name.into(),
            theory: thy.clone(),
            hypotheses: vec![],
            goal: goal.clone(),
            proof,
        });
    };

    // (fun h => ex_intro(2, h, ...)) applied to reflexivity.
    golden(
        "beta-cut",
        ProofTerm::app(
            ProofTerm::lam(
                "h",
                two_two(),
                ProofTerm::ex_intro(Term::numeral(2), ProofTerm::var("h"), x(), even_four_body()),
            ),
            refl(),
        ),
    );
    // fst(pair(direct, triv)).
    golden(
        "pair-cut",
        ProofTerm::fst(ProofTerm::pair(direct(), ProofTerm::TruthIntro)),
    );
    // case(inl(direct), ...) with an impossible right branch.
    golden(
        "case-cut",
        ProofTerm::case(
            ProofTerm::inl(direct(), Prop::Bottom),
            "l",
            ProofTerm::var("l"),
            "r",
            ProofTerm::exfalso(ProofTerm::var("r"), goal.clone()),
        ),
    );
    // (tfun y => fun h : 2*y = 4 => ex_intro(y, h, ...)) @ 2 refl.
    let y = Var::iota("y");
    golden(
        "instantiation-cut",
        ProofTerm::app(
            ProofTerm::tapp(
                ProofTerm::tlam(
                    y.clone(),
                    ProofTerm::lam(
                        "h",
                        Prop::eq(
                            Term::times(Term::numeral(2), Term::var(y.clone())),
                            Term::numeral(4),
                        ),
                        ProofTerm::ex_intro(
                            Term::var(y.clone()),
                            ProofTerm::var("h"),
                            x(),
                            even_four_body(),
                        ),
                    ),
                ),
                Term::numeral(2),
            ),
            refl(),
        ),
    );
    // Unpack the direct proof and immediately repack its witness.
    golden(
        "unpack-cut",
        ProofTerm::ex_elim(
            direct(),
            y.clone(),
            "h",
            ProofTerm::ex_intro(Term::var(y), ProofTerm::var("h"), x(), even_four_body()),
            goal.clone(),
        ),
    );
    out
}

/// Every golden artifact, for sweeping.
pub fn all_goldens() -> Vec<Golden> {
    let mut out = vec![even_four_modulo(), even_four_axiomatic()];
    out.extend(logic_goldens());
    out.extend(exists_cut_goldens());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, Verdict};
    use crate::reduce::normalize;

    #[test]
    fn both_even_four_proofs_check_with_small_fuel() {
        for golden in [even_four_modulo(), even_four_axiomatic()] {
            let report = check(
                golden.theory.signature(),
                golden.theory.rules(),
                &golden.context(),
                &golden.proof,
                &golden.goal,
                32,
            );
            assert!(report.is_valid(), "{}: {:?}", golden.name, report.detail);
            assert!(report.fuel_consumed <= 32);
        }
    }

    #[test]
    fn every_golden_checks() {
        for golden in all_goldens() {
            let report = check(
                golden.theory.signature(),
                golden.theory.rules(),
                &golden.context(),
                &golden.proof,
                &golden.goal,
                256,
            );
            assert_eq!(
                report.verdict,
                Verdict::Valid,
                "{}: {:?}",
                golden.name,
                report.detail
            );
        }
    }

    #[test]
    fn cut_goldens_normalize_to_witness_introductions() {
        for golden in exists_cut_goldens() {
            let report = normalize(&golden.proof, 1000).unwrap();
            assert!(report.steps >= 1, "{} contains no cut", golden.name);
            assert!(
                matches!(report.normal_form, ProofTerm::ExIntro(..)),
                "{} normalized to {}",
                golden.name,
                report.normal_form
            );
        }
    }

    #[test]
    fn goldens_have_distinct_names() {
        let mut names: Vec<String> = all_goldens().into_iter().map(|g| g.name).collect();
        let before = names.len();
        names.sort();
        names.dedup();
        assert_eq!(before, names.len());
    }
}
