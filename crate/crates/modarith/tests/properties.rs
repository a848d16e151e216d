//! Randomized laws.  Printing inverts parsing, congruence behaves like an
//! equivalence, normalization is idempotent and keeps proofs checkable,
//! budgets only ever delay a verdict, and compiled programs stay typed
//! along every reduction path.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::strategy::Union;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modarith::corpus::{all_goldens, logic_theory};
use modarith::generate::{random_closed_tterm, random_cut_proof};
use modarith::kernel::{check, Context, Verdict};
use modarith::parse::{parse_prop, parse_term, resolve_prop, resolve_term};
use modarith::reduce::{normalize, step};
use modarith::rewrite::{congruent, normalize_term, Fuel};
use modarith::syntax::{alpha_eq_prop, Prop, Term, Var};
use modarith::theory::{theory_ha_mod, theory_t};
use modarith::translate::{compile, eps_of, t_step, type_of};

/// Terms over the arithmetic signature, drawing variables from `iotas`.
fn arb_term(iotas: Vec<String>) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vec![(0u64..5).prop_map(Term::numeral).boxed()];
    if !iotas.is_empty() {
        leaves.push(
            (0..iotas.len())
                .prop_map(move |i| Term::var(Var::iota(iotas[i].clone())))
                .boxed(),
        );
    }
    Union::new(leaves)
        .prop_recursive(2, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::succ),
                inner.clone().prop_map(Term::pred),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::times(a, b)),
            ]
            .boxed()
        })
        .boxed()
}

/// Well-scoped propositions over the guarded arithmetic signature.  The
/// binder pools grow under quantifiers so every variable occurrence is
/// bound, making each value a closed proposition.
fn arb_prop(iotas: Vec<String>, kappas: Vec<String>, depth: u32) -> BoxedStrategy<Prop> {
    let term = arb_term(iotas.clone());
    let mut leaves: Vec<BoxedStrategy<Prop>> = vec![
        Just(Prop::Top).boxed(),
        Just(Prop::Bottom).boxed(),
        (term.clone(), term.clone()).prop_map(|(a, b)| Prop::eq(a, b)).boxed(),
        term.clone().prop_map(|t| Prop::atom("Null", vec![t])).boxed(),
        term.clone().prop_map(|t| Prop::atom("N", vec![t])).boxed(),
    ];
    if !kappas.is_empty() {
        let ks = kappas.clone();
        leaves.push(
            (term, 0..ks.len())
                .prop_map(move |(t, i)| Prop::mem(t, Term::var(Var::kappa(ks[i].clone()))))
                .boxed(),
        );
    }
    let leaf = Union::new(leaves).boxed();
    if depth == 0 {
        return leaf;
    }

    let sub = arb_prop(iotas.clone(), kappas.clone(), depth - 1);
    let x = format!("x{}", iotas.len());
    let mut wider_iotas = iotas.clone();
    wider_iotas.push(x.clone());
    let under_iota = arb_prop(wider_iotas, kappas.clone(), depth - 1);
    let p = format!("p{}", kappas.len());
    let mut wider_kappas = kappas;
    wider_kappas.push(p.clone());
    let under_kappa = arb_prop(iotas, wider_kappas, depth - 1);

    let x_all = x.clone();
    let x_ex = x;
    let p_all = p;
    prop_oneof![
        3 => leaf,
        2 => (sub.clone(), sub.clone()).prop_map(|(a, b)| Prop::implies(a, b)),
        1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| Prop::and(a, b)),
        1 => (sub.clone(), sub).prop_map(|(a, b)| Prop::or(a, b)),
        1 => under_iota.clone().prop_map(move |b| Prop::forall(Var::iota(x_all.clone()), b)),
        1 => under_iota.prop_map(move |b| Prop::exists(Var::iota(x_ex.clone()), b)),
        1 => under_kappa.prop_map(move |b| Prop::forall(Var::kappa(p_all.clone()), b)),
    ]
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn printing_then_parsing_a_prop_is_the_identity(p in arb_prop(vec![], vec![], 3)) {
        let thy = theory_ha_mod(false);
        let printed = p.to_string();
        let parsed = parse_prop(&printed).unwrap();
        let mut fv = BTreeMap::new();
        let reread = resolve_prop(thy.signature(), &parsed, &mut fv).unwrap();
        prop_assert!(
            alpha_eq_prop(&reread, &p),
            "printed as `{printed}`, reread as `{reread}`"
        );
    }

    #[test]
    fn printing_then_parsing_a_term_is_the_identity(t in arb_term(vec![])) {
        let thy = theory_ha_mod(false);
        let printed = t.to_string();
        let parsed = parse_term(&printed).unwrap();
        let mut fv = BTreeMap::new();
        let reread = resolve_term(thy.signature(), &parsed, None, &mut fv).unwrap();
        prop_assert_eq!(&reread, &t, "printed as `{}`", printed);
    }

    #[test]
    fn congruence_is_reflexive(p in arb_prop(vec![], vec![], 2)) {
        let thy = theory_ha_mod(false);
        let mut fuel = Fuel::new(256);
        prop_assert!(congruent(&p, &p, thy.rules(), &mut fuel).unwrap());
    }

    #[test]
    fn congruence_is_symmetric_when_decided(
        a in arb_prop(vec![], vec![], 2),
        b in arb_prop(vec![], vec![], 2),
    ) {
        let thy = theory_ha_mod(false);
        let mut fuel_ab = Fuel::new(128);
        let mut fuel_ba = Fuel::new(128);
        let ab = congruent(&a, &b, thy.rules(), &mut fuel_ab);
        let ba = congruent(&b, &a, thy.rules(), &mut fuel_ba);
        if let (Ok(x), Ok(y)) = (ab, ba) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn term_normalization_is_idempotent_and_congruence_respects_it(t in arb_term(vec![])) {
        let thy = theory_ha_mod(false);
        let nf = normalize_term(&t, thy.rules()).unwrap();
        prop_assert_eq!(&normalize_term(&nf, thy.rules()).unwrap(), &nf);
        // A term and its normal form are interchangeable inside any atom.
        let zero = Term::numeral(0);
        let mut fuel = Fuel::new(256);
        prop_assert!(congruent(
            &Prop::eq(t, zero.clone()),
            &Prop::eq(nf, zero),
            thy.rules(),
            &mut fuel,
        )
        .unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn proof_normal_forms_are_normal_and_still_check(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generated = random_cut_proof(&mut rng, 2);
        let thy = logic_theory();
        let empty = Context::new();
        let before = check(thy.signature(), thy.rules(), &empty, &generated.proof, &generated.goal, 256);
        prop_assert!(before.is_valid(), "{:?}", before.detail);

        let report = normalize(&generated.proof, 100_000).unwrap();
        prop_assert!(report.steps >= 1, "at least the salted cut must fire");
        prop_assert!(step(&report.normal_form).is_none());
        prop_assert_eq!(normalize(&report.normal_form, 100_000).unwrap().steps, 0);

        let after = check(thy.signature(), thy.rules(), &empty, &report.normal_form, &generated.goal, 256);
        prop_assert!(after.is_valid(), "{:?}", after.detail);
    }

    #[test]
    fn more_fuel_never_flips_a_verdict(
        index in any::<prop::sample::Index>(),
        small in 0u32..48,
        extra in 0u32..256,
    ) {
        let goldens = all_goldens();
        let golden = index.get(&goldens);
        let ctx = golden.context();
        let lo = check(
            golden.theory.signature(),
            golden.theory.rules(),
            &ctx,
            &golden.proof,
            &golden.goal,
            small,
        );
        let hi = check(
            golden.theory.signature(),
            golden.theory.rules(),
            &ctx,
            &golden.proof,
            &golden.goal,
            small + extra,
        );
        prop_assert!(lo.fuel_consumed <= small);
        match lo.verdict {
            Verdict::Valid => prop_assert_eq!(hi.verdict, Verdict::Valid),
            Verdict::Invalid => prop_assert_eq!(hi.verdict, Verdict::Invalid),
            Verdict::Undecided => {}
        }
    }

    #[test]
    fn an_unused_hypothesis_never_hurts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generated = random_cut_proof(&mut rng, 2);
        let thy = logic_theory();
        let mut ctx = Context::new();
        ctx.push("bystander", Prop::implies(Prop::Top, Prop::Bottom));
        let report = check(thy.signature(), thy.rules(), &ctx, &generated.proof, &generated.goal, 256);
        prop_assert!(report.is_valid(), "{:?}", report.detail);
    }

    #[test]
    fn program_steps_preserve_the_type(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (term, ty) = random_closed_tterm(&mut rng, 2);
        prop_assert_eq!(&type_of(&mut Vec::new(), &term).unwrap(), &ty);
        let mut cur = term;
        let mut steps = 0usize;
        while let Some(next) = t_step(&cur) {
            steps += 1;
            prop_assert!(steps <= 10_000, "runaway reduction");
            prop_assert_eq!(&type_of(&mut Vec::new(), &next).unwrap(), &ty);
            cur = next;
        }
    }

    #[test]
    fn compiled_programs_always_prove_their_type(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (term, ty) = random_closed_tterm(&mut rng, 2);
        let thy = theory_t();
        let empty = Context::new();
        let report = check(thy.signature(), thy.rules(), &empty, &compile(&term), &eps_of(&ty), 256);
        prop_assert!(report.is_valid(), "{:?}", report.detail);
    }
}
