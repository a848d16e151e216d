//! Random generation of well-typed artifacts.
//!
//! Proofs are generated goal-and-proof together, so they are well-typed by
//! construction, and then salted with cuts: redexes of every kind whose
//! contraction leaves the proved proposition unchanged.  Programs are
//! generated type-directed.  Both generators draw only from the supplied
//! RNG, so a seeded RNG reproduces the same artifact.

use crate::proof::ProofTerm;
use crate::syntax::{fresh_name, Prop, Term, Var};
use crate::translate::{TTerm, TType};
use rand::Rng;
use std::collections::BTreeSet;

/// A generated theorem-with-proof for [`crate::corpus::logic_theory`].
#[derive(Clone, Debug)]
pub struct GeneratedProof {
    pub goal: Prop,
    pub proof: ProofTerm,
    /// Number of redexes deliberately inserted; at least one.
    pub cuts: usize,
}

struct ProofGen<'r, R: Rng> {
    rng: &'r mut R,
    hyps: Vec<(String, Prop)>,
    tvars: Vec<Var>,
    used: BTreeSet<String>,
    cuts: usize,
}

/// Generate a closed well-typed proof over the pure-logic signature with at
/// least one cut inserted.
pub fn random_cut_proof(rng: &mut impl Rng, depth: u32) -> GeneratedProof {
    let mut g = ProofGen {
        rng,
        hyps: Vec::new(),
        tvars: Vec::new(),
        used: BTreeSet::new(),
        cuts: 0,
    };
    let (goal, mut proof) = g.provable(depth);
    if g.cuts == 0 {
        proof = g.wrap_cut(&goal, proof);
    }
    GeneratedProof { goal, proof, cuts: g.cuts }
}

impl<R: Rng> ProofGen<'_, R> {
    fn fresh(&mut self, base: &str) -> String {
        let name = fresh_name(base, &self.used);
        self.used.insert(name.clone());
        name
    }

    fn random_term(&mut self) -> Term {
        if !self.tvars.is_empty() && self.rng.gen_bool(0.5) {
            let i = self.rng.gen_range(0..self.tvars.len());
            Term::var(self.tvars[i].clone())
        } else {
            Term::constant("c")
        }
    }

    /// An arbitrary well-sorted proposition, provable or not; used for
    /// hypothesis domains and unproved disjuncts.
    fn any_prop(&mut self, depth: u32) -> Prop {
        let atom = self.rng.gen_range(0..6);
        if depth == 0 || self.rng.gen_bool(0.4) {
            return match atom {
                0 => Prop::atom("A", vec![]),
                1 => Prop::atom("B", vec![]),
                2 => Prop::atom("C", vec![]),
                3 => Prop::Top,
                4 => {
                    let t = self.random_term();
                    Prop::atom("P", vec![t])
                }
                _ => {
                    let t = self.random_term();
                    Prop::atom("Q", vec![t])
                }
            };
        }
        match self.rng.gen_range(0..5) {
            0 => Prop::implies(self.any_prop(depth - 1), self.any_prop(depth - 1)),
            1 => Prop::and(self.any_prop(depth - 1), self.any_prop(depth - 1)),
            2 => Prop::or(self.any_prop(depth - 1), self.any_prop(depth - 1)),
            3 => {
                let x = Var::iota(self.fresh("x"));
                self.tvars.push(x.clone());
                let body = self.any_prop(depth - 1);
                self.tvars.pop();
                Prop::forall(x, body)
            }
            _ => {
                let x = Var::iota(self.fresh("x"));
                self.tvars.push(x.clone());
                let body = self.any_prop(depth - 1);
                self.tvars.pop();
                Prop::exists(x, body)
            }
        }
    }

    /// A proposition paired with a proof of it.
    fn provable(&mut self, depth: u32) -> (Prop, ProofTerm) {
        let (goal, proof) = self.provable_core(depth);
        if depth > 0 && self.rng.gen_bool(0.35) {
            let wrapped = self.wrap_cut(&goal, proof);
            (goal, wrapped)
        } else {
            (goal, proof)
        }
    }

    fn provable_core(&mut self, depth: u32) -> (Prop, ProofTerm) {
        let pick_hyp = !self.hyps.is_empty() && self.rng.gen_bool(0.3);
        if pick_hyp {
            let i = self.rng.gen_range(0..self.hyps.len());
            let (name, prop) = &self.hyps[i];
            return (prop.clone(), ProofTerm::var(name.clone()));
        }
        if depth == 0 {
            return (Prop::Top, ProofTerm::TruthIntro);
        }
        match self.rng.gen_range(0..7) {
            0 => (Prop::Top, ProofTerm::TruthIntro),
            1 => {
                let dom = self.any_prop(depth - 1);
                let h = self.fresh("h");
                self.hyps.push((h.clone(), dom.clone()));
                let (body, pb) = self.provable(depth - 1);
                self.hyps.pop();
                (Prop::implies(dom.clone(), body), ProofTerm::lam(h, dom, pb))
            }
            2 => {
                let (l, pl) = self.provable(depth - 1);
                let (r, pr) = self.provable(depth - 1);
                (Prop::and(l, r), ProofTerm::pair(pl, pr))
            }
            3 => {
                let (l, pl) = self.provable(depth - 1);
                let r = self.any_prop(depth - 1);
                (Prop::or(l, r.clone()), ProofTerm::inl(pl, r))
            }
            4 => {
                let (r, pr) = self.provable(depth - 1);
                let l = self.any_prop(depth - 1);
                (Prop::or(l.clone(), r), ProofTerm::inr(pr, l))
            }
            5 => {
                let x = Var::iota(self.fresh("x"));
                self.tvars.push(x.clone());
                let (body, pb) = self.provable(depth - 1);
                self.tvars.pop();
                (Prop::forall(x.clone(), body), ProofTerm::tlam(x, pb))
            }
            _ => {
                // The body never mentions the bound variable, so any witness
                // will do.
                let (body, pb) = self.provable(depth - 1);
                let x = Var::iota(self.fresh("x"));
                let w = self.random_term();
                (
                    Prop::exists(x.clone(), body.clone()),
                    ProofTerm::ex_intro(w, pb, x, body),
                )
            }
        }
    }

    /// Wrap `proof : goal` in a redex that still proves `goal`.
    fn wrap_cut(&mut self, goal: &Prop, proof: ProofTerm) -> ProofTerm {
        self.cuts += 1;
        match self.rng.gen_range(0..6) {
            0 => {
                let h = self.fresh("h");
                ProofTerm::app(
                    ProofTerm::lam(h.clone(), goal.clone(), ProofTerm::var(h)),
                    proof,
                )
            }
            1 => ProofTerm::fst(ProofTerm::pair(proof, ProofTerm::TruthIntro)),
            2 => ProofTerm::snd(ProofTerm::pair(ProofTerm::TruthIntro, proof)),
            3 => {
                let l = self.fresh("h");
                let r = self.fresh("h");
                ProofTerm::case(
                    ProofTerm::inl(proof, Prop::Bottom),
                    l.clone(),
                    ProofTerm::var(l),
                    r.clone(),
                    ProofTerm::exfalso(ProofTerm::var(r), goal.clone()),
                )
            }
            4 => {
                let y = Var::iota(self.fresh("y"));
                ProofTerm::tapp(ProofTerm::tlam(y, proof), Term::constant("c"))
            }
            _ => {
                let y = Var::iota(self.fresh("y"));
                let h = self.fresh("h");
                ProofTerm::ex_elim(
                    ProofTerm::ex_intro(Term::constant("c"), proof, y.clone(), goal.clone()),
                    y,
                    h.clone(),
                    ProofTerm::var(h),
                    goal.clone(),
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Programs

/// A random simple type of bounded height.
pub fn random_ttype(rng: &mut impl Rng, depth: u32) -> TType {
    if depth == 0 || rng.gen_bool(0.6) {
        TType::Nat
    } else {
        TType::arrow(random_ttype(rng, depth - 1), random_ttype(rng, depth - 1))
    }
}

/// A closed well-typed program of a random type.
pub fn random_closed_tterm(rng: &mut impl Rng, depth: u32) -> (TTerm, TType) {
    let ty = random_ttype(rng, 2);
    let mut used = BTreeSet::new();
    let t = gen_tterm(rng, depth, &mut Vec::new(), &ty, &mut used);
    (t, ty)
}

fn gen_tterm(
    rng: &mut impl Rng,
    depth: u32,
    env: &mut Vec<(String, TType)>,
    target: &TType,
    used: &mut BTreeSet<String>,
) -> TTerm {
    // A variable of exactly the target type, if one is in scope.
    let candidates: Vec<String> = env
        .iter()
        .filter(|(_, ty)| ty == target)
        .map(|(n, _)| n.clone())
        .collect();
    if !candidates.is_empty() && rng.gen_bool(0.4) {
        return TTerm::var(candidates[rng.gen_range(0..candidates.len())].clone());
    }
    if depth > 0 {
        match rng.gen_range(0..4) {
            // Application at a small random argument type.
            0 => {
                let arg_ty = random_ttype(rng, 1);
                let fun_ty = TType::arrow(arg_ty.clone(), target.clone());
                let f = gen_tterm(rng, depth - 1, env, &fun_ty, used);
                let a = gen_tterm(rng, depth - 1, env, &arg_ty, used);
                return TTerm::app(f, a);
            }
            // Recursion with the target as motive.
            1 => {
                let step_ty =
                    TType::arrow(TType::Nat, TType::arrow(target.clone(), target.clone()));
                let base = gen_tterm(rng, depth - 1, env, target, used);
                let step = gen_tterm(rng, depth - 1, env, &step_ty, used);
                let scrut = gen_tterm(rng, depth - 1, env, &TType::Nat, used);
                return TTerm::rec(target.clone(), base, step, scrut);
            }
            _ => {}
        }
    }
    match target {
        TType::Nat => {
            if depth > 0 && rng.gen_bool(0.5) {
                TTerm::succ(gen_tterm(rng, depth - 1, env, &TType::Nat, used))
            } else {
                TTerm::numeral(rng.gen_range(0..3))
            }
        }
        TType::Arrow(a, b) => {
            let name = fresh_name("v", used);
            used.insert(name.clone());
            env.push((name.clone(), (**a).clone()));
            let body = gen_tterm(rng, depth.saturating_sub(1), env, b, used);
            env.pop();
            TTerm::lam(name, (**a).clone(), body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::logic_theory;
    use crate::kernel::{check, Context};
    use crate::reduce::normalize;
    use crate::translate::type_of;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_proofs_are_valid_and_carry_cuts() {
        let thy = logic_theory();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..60 {
            let g = random_cut_proof(&mut rng, 3);
            assert!(g.cuts >= 1, "case {i} has no cut");
            let report = check(
                thy.signature(),
                thy.rules(),
                &Context::new(),
                &g.proof,
                &g.goal,
                512,
            );
            assert!(
                report.is_valid(),
                "case {i}: {:?}\ngoal {}\nproof {}",
                report.detail,
                g.goal,
                g.proof
            );
        }
    }

    #[test]
    fn generated_proofs_normalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let g = random_cut_proof(&mut rng, 3);
            let report = normalize(&g.proof, 100_000).unwrap();
            assert!(report.steps >= 1);
        }
    }

    #[test]
    fn generated_programs_type_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for i in 0..60 {
            let (t, ty) = random_closed_tterm(&mut rng, 3);
            let inferred = type_of(&mut Vec::new(), &t);
            assert_eq!(inferred.as_ref(), Ok(&ty), "case {i}: {t}");
        }
    }

    #[test]
    fn generation_is_deterministic_under_a_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let ga = random_cut_proof(&mut a, 3);
        let gb = random_cut_proof(&mut b, 3);
        assert_eq!(ga.goal, gb.goal);
        assert_eq!(ga.proof, gb.proof);
        let (ta, tya) = random_closed_tterm(&mut a, 3);
        let (tb, tyb) = random_closed_tterm(&mut b, 3);
        assert_eq!(ta, tb);
        assert_eq!(tya, tyb);
    }
}
