//! Proof normalisation: contracting introduction/elimination pairs.
//!
//! Seven contraction rules cover the seven ways an introduction can meet
//! its matching eliminator.  Reduction is leftmost-outermost and purely
//! syntactic; the kernel can re-check the result, and on well-typed proofs
//! each step preserves the proved proposition.

use crate::proof::ProofTerm;
use thiserror::Error;

/// Which contraction fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleTag {
    /// `(fun (a : A) => t) u  ~>  (u/a)t`
    Beta,
    /// `(tfun (x : s) => t) @ u  ~>  (u/x)t`
    BetaForAll,
    /// `fst(pair(l, r))  ~>  l`
    FstPair,
    /// `snd(pair(l, r))  ~>  r`
    SndPair,
    /// `case(inl(p, B), a. l, b. r)  ~>  (p/a)l`
    CaseInL,
    /// `case(inr(p, A), a. l, b. r)  ~>  (p/b)r`
    CaseInR,
    /// `ex_elim(ex_intro(w, p, x. A), y. h. t, C)  ~>  (p/h)(w/y)t`
    ExUnpack,
}

impl RuleTag {
    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Beta => "beta",
            RuleTag::BetaForAll => "beta-forall",
            RuleTag::FstPair => "fst-pair",
            RuleTag::SndPair => "snd-pair",
            RuleTag::CaseInL => "case-inl",
            RuleTag::CaseInR => "case-inr",
            RuleTag::ExUnpack => "exists-unpack",
        }
    }
}

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("normalisation did not finish within {budget} steps")]
    Budget { budget: usize },
}

/// Contract a redex at the root, if there is one.
fn root_step(pt: &ProofTerm) -> Option<(ProofTerm, RuleTag)> {
    use ProofTerm::*;
    match pt {
        App(f, arg) => match f.as_ref() {
            Lam(name, _, body) => Some((body.subst_proof(name, arg), RuleTag::Beta)),
            _ => None,
        },
        TApp(f, t) => match f.as_ref() {
            TLam(v, body) => Some((body.subst_term(&v.name, t), RuleTag::BetaForAll)),
            _ => None,
        },
        Fst(p) => match p.as_ref() {
            Pair(l, _) => Some((l.as_ref().clone(), RuleTag::FstPair)),
            _ => None,
        },
        Snd(p) => match p.as_ref() {
            Pair(_, r) => Some((r.as_ref().clone(), RuleTag::SndPair)),
            _ => None,
        },
        Case(scrut, lname, lbody, rname, rbody) => match scrut.as_ref() {
            InL(payload, _) => Some((lbody.subst_proof(lname, payload), RuleTag::CaseInL)),
            InR(payload, _) => Some((rbody.subst_proof(rname, payload), RuleTag::CaseInR)),
            _ => None,
        },
        ExElim(scrut, x, h, body, _) => match scrut.as_ref() {
            ExIntro(witness, payload, _, _) => {
                // The witness first: the payload lives outside the binder
                // for `x`, so its occurrences of that name must survive.
                let opened = body.subst_term(&x.name, witness);
                Some((opened.subst_proof(h, payload), RuleTag::ExUnpack))
            }
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost reduction step, or `None` if the proof is normal.
pub fn step(pt: &ProofTerm) -> Option<(ProofTerm, RuleTag)> {
    use ProofTerm::*;
    if let Some(hit) = root_step(pt) {
        return Some(hit);
    }
    // No root redex: descend into the children in display order and rebuild
    // around the first one that moves.
    macro_rules! descend {
        ($child:expr, $rebuild:expr) => {
            if let Some((new, tag)) = step($child) {
                #[allow(clippy::redundant_closure_call)]
                return Some(($rebuild(new), tag));
            }
        };
    }
    match pt {
        Var(_) | TruthIntro => None,
        Lam(n, a, b) => {
            descend!(b, |new| Lam(n.clone(), a.clone(), Box::new(new)));
            None
        }
        App(f, arg) => {
            descend!(f, |new| App(Box::new(new), arg.clone()));
            descend!(arg, |new| App(f.clone(), Box::new(new)));
            None
        }
        Pair(l, r) => {
            descend!(l, |new| Pair(Box::new(new), r.clone()));
            descend!(r, |new| Pair(l.clone(), Box::new(new)));
            None
        }
        Fst(p) => {
            descend!(p, |new| Fst(Box::new(new)));
            None
        }
        Snd(p) => {
            descend!(p, |new| Snd(Box::new(new)));
            None
        }
        InL(p, other) => {
            descend!(p, |new| InL(Box::new(new), other.clone()));
            None
        }
        InR(p, other) => {
            descend!(p, |new| InR(Box::new(new), other.clone()));
            None
        }
        Case(s, ln, lb, rn, rb) => {
            descend!(s, |new| Case(Box::new(new), ln.clone(), lb.clone(), rn.clone(), rb.clone()));
            descend!(lb, |new| Case(s.clone(), ln.clone(), Box::new(new), rn.clone(), rb.clone()));
            descend!(rb, |new| Case(s.clone(), ln.clone(), lb.clone(), rn.clone(), Box::new(new)));
            None
        }
        ExFalso(p, t) => {
            descend!(p, |new| ExFalso(Box::new(new), t.clone()));
            None
        }
        TLam(v, b) => {
            descend!(b, |new| TLam(v.clone(), Box::new(new)));
            None
        }
        TApp(f, t) => {
            descend!(f, |new| TApp(Box::new(new), t.clone()));
            None
        }
        ExIntro(w, p, x, a) => {
            descend!(p, |new| ExIntro(w.clone(), Box::new(new), x.clone(), a.clone()));
            None
        }
        ExElim(s, x, h, b, c) => {
            descend!(s, |new| ExElim(Box::new(new), x.clone(), h.clone(), b.clone(), c.clone()));
            descend!(b, |new| ExElim(s.clone(), x.clone(), h.clone(), Box::new(new), c.clone()));
            None
        }
    }
}

/// Every proof reachable from `pt` by contracting exactly one redex, at any
/// position.  The step simulation searches this relation rather than the
/// leftmost-outermost strategy, since a simulated step may sit in argument
/// position.
pub fn reducts(pt: &ProofTerm) -> Vec<ProofTerm> {
    use ProofTerm::*;
    let mut out = Vec::new();
    if let Some((new, _)) = root_step(pt) {
        out.push(new);
    }
    macro_rules! gather {
        ($child:expr, $rebuild:expr) => {
            for new in reducts($child) {
                #[allow(clippy::redundant_closure_call)]
                out.push($rebuild(new));
            }
        };
    }
    match pt {
        Var(_) | TruthIntro => {}
        Lam(n, a, b) => gather!(b, |new| Lam(n.clone(), a.clone(), Box::new(new))),
        App(f, arg) => {
            gather!(f, |new| App(Box::new(new), arg.clone()));
            gather!(arg, |new| App(f.clone(), Box::new(new)));
        }
        Pair(l, r) => {
            gather!(l, |new| Pair(Box::new(new), r.clone()));
            gather!(r, |new| Pair(l.clone(), Box::new(new)));
        }
        Fst(p) => gather!(p, |new| Fst(Box::new(new))),
        Snd(p) => gather!(p, |new| Snd(Box::new(new))),
        InL(p, other) => gather!(p, |new| InL(Box::new(new), other.clone())),
        InR(p, other) => gather!(p, |new| InR(Box::new(new), other.clone())),
        Case(s, ln, lb, rn, rb) => {
            gather!(s, |new| Case(Box::new(new), ln.clone(), lb.clone(), rn.clone(), rb.clone()));
            gather!(lb, |new| Case(s.clone(), ln.clone(), Box::new(new), rn.clone(), rb.clone()));
            gather!(rb, |new| Case(s.clone(), ln.clone(), lb.clone(), rn.clone(), Box::new(new)));
        }
        ExFalso(p, t) => gather!(p, |new| ExFalso(Box::new(new), t.clone())),
        TLam(v, b) => gather!(b, |new| TLam(v.clone(), Box::new(new))),
        TApp(f, t) => gather!(f, |new| TApp(Box::new(new), t.clone())),
        ExIntro(w, p, x, a) => {
            gather!(p, |new| ExIntro(w.clone(), Box::new(new), x.clone(), a.clone()));
        }
        ExElim(s, x, h, b, c) => {
            gather!(s, |new| ExElim(Box::new(new), x.clone(), h.clone(), b.clone(), c.clone()));
            gather!(b, |new| ExElim(s.clone(), x.clone(), h.clone(), Box::new(new), c.clone()));
        }
    }
    out
}

pub fn is_normal(pt: &ProofTerm) -> bool {
    !has_redex(pt)
}

fn has_redex(pt: &ProofTerm) -> bool {
    use ProofTerm::*;
    if root_step(pt).is_some() {
        return true;
    }
    match pt {
        Var(_) | TruthIntro => false,
        Lam(_, _, b) | TLam(_, b) | Fst(b) | Snd(b) | InL(b, _) | InR(b, _)
        | ExFalso(b, _) | TApp(b, _) | ExIntro(_, b, _, _) => has_redex(b),
        App(f, a) | Pair(f, a) => has_redex(f) || has_redex(a),
        Case(s, _, l, _, r) => has_redex(s) || has_redex(l) || has_redex(r),
        ExElim(s, _, _, b, _) => has_redex(s) || has_redex(b),
    }
}

/// An elimination spine hanging off a hypothesis variable.  Normal proofs
/// are built from introductions and neutral proofs; in particular a closed
/// normal proof cannot be neutral.
pub fn is_neutral(pt: &ProofTerm) -> bool {
    use ProofTerm::*;
    match pt {
        Var(_) => true,
        App(f, _) | TApp(f, _) => is_neutral(f),
        Fst(p) | Snd(p) | ExFalso(p, _) => is_neutral(p),
        Case(s, _, _, _, _) | ExElim(s, _, _, _, _) => is_neutral(s),
        _ => false,
    }
}

/// Whether the root is an introduction form.
pub fn is_intro(pt: &ProofTerm) -> bool {
    use ProofTerm::*;
    matches!(
        pt,
        Lam(..) | TLam(..) | Pair(..) | InL(..) | InR(..) | TruthIntro | ExIntro(..)
    )
}

#[derive(Clone, Debug)]
pub struct NormalizeReport {
    pub normal_form: ProofTerm,
    pub steps: usize,
    pub trace: Vec<RuleTag>,
}

/// Reduce to normal form, leftmost-outermost, within a step budget.
pub fn normalize(pt: &ProofTerm, budget: usize) -> Result<NormalizeReport, NormalizeError> {
    let mut current = pt.clone();
    let mut trace = Vec::new();
    while let Some((next, tag)) = step(&current) {
        if trace.len() >= budget {
            return Err(NormalizeError::Budget { budget });
        }
        trace.push(tag);
        current = next;
    }
    Ok(NormalizeReport { steps: trace.len(), normal_form: current, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Prop, Term, Var};

    fn q() -> Prop {
        Prop::atom("Q", vec![])
    }

    fn p_of(t: Term) -> Prop {
        Prop::atom("P", vec![t])
    }

    #[test]
    fn beta_contracts_an_identity_cut() {
        let cut = ProofTerm::app(
            ProofTerm::lam("a", q(), ProofTerm::var("a")),
            ProofTerm::var("h"),
        );
        let (stepped, tag) = step(&cut).unwrap();
        assert_eq!(tag, RuleTag::Beta);
        assert_eq!(stepped, ProofTerm::var("h"));
        assert!(is_normal(&stepped));
    }

    #[test]
    fn projections_and_case_contract() {
        let pair = ProofTerm::pair(ProofTerm::var("l"), ProofTerm::var("r"));
        let (l, t1) = step(&ProofTerm::fst(pair.clone())).unwrap();
        assert_eq!((l, t1), (ProofTerm::var("l"), RuleTag::FstPair));
        let (r, t2) = step(&ProofTerm::snd(pair)).unwrap();
        assert_eq!((r, t2), (ProofTerm::var("r"), RuleTag::SndPair));

        let scrut = ProofTerm::inl(ProofTerm::var("p"), q());
        let case = ProofTerm::case(
            scrut,
            "a",
            ProofTerm::pair(ProofTerm::var("a"), ProofTerm::var("a")),
            "b",
            ProofTerm::var("b"),
        );
        let (out, tag) = step(&case).unwrap();
        assert_eq!(tag, RuleTag::CaseInL);
        assert_eq!(out, ProofTerm::pair(ProofTerm::var("p"), ProofTerm::var("p")));

        let scrut = ProofTerm::inr(ProofTerm::var("p"), q());
        let case = ProofTerm::case(
            scrut,
            "a",
            ProofTerm::var("a"),
            "b",
            ProofTerm::pair(ProofTerm::var("b"), ProofTerm::var("b")),
        );
        let (out, tag) = step(&case).unwrap();
        assert_eq!(tag, RuleTag::CaseInR);
        assert_eq!(out, ProofTerm::pair(ProofTerm::var("p"), ProofTerm::var("p")));
    }

    #[test]
    fn quantifier_redexes_substitute_terms() {
        // (tfun (x : iota) => exfalso(h, P(x))) @ 0  ~>  exfalso(h, P(0))
        let x = Var::iota("x");
        let pt = ProofTerm::tapp(
            ProofTerm::tlam(
                x.clone(),
                ProofTerm::exfalso(ProofTerm::var("h"), p_of(Term::var(x.clone()))),
            ),
            Term::zero(),
        );
        let (out, tag) = step(&pt).unwrap();
        assert_eq!(tag, RuleTag::BetaForAll);
        assert_eq!(out, ProofTerm::exfalso(ProofTerm::var("h"), p_of(Term::zero())));
    }

    #[test]
    fn exists_unpack_substitutes_witness_then_payload() {
        // The payload mentions a free `y` of its own; the eliminator also
        // binds `y`.  After unpacking, the payload's `y` must survive.
        let y = Var::iota("y");
        let payload = ProofTerm::exfalso(ProofTerm::var("k"), p_of(Term::var(y.clone())));
        let scrut = ProofTerm::ex_intro(
            Term::zero(),
            payload.clone(),
            Var::iota("x"),
            p_of(Term::var(Var::iota("x"))),
        );
        // ex_elim(scrut, y. h. pair(h, exfalso(m, P(y))), C)
        let body = ProofTerm::pair(
            ProofTerm::var("h"),
            ProofTerm::exfalso(ProofTerm::var("m"), p_of(Term::var(y.clone()))),
        );
        let pt = ProofTerm::ex_elim(scrut, y.clone(), "h", body, q());
        let (out, tag) = step(&pt).unwrap();
        assert_eq!(tag, RuleTag::ExUnpack);
        // The body's P(y) became P(0); the payload's P(y) did not.
        assert_eq!(
            out,
            ProofTerm::pair(
                payload,
                ProofTerm::exfalso(ProofTerm::var("m"), p_of(Term::zero())),
            )
        );
    }

    #[test]
    fn reduction_is_leftmost_outermost() {
        let inner = ProofTerm::fst(ProofTerm::pair(ProofTerm::var("a"), ProofTerm::var("b")));
        let outer = ProofTerm::fst(ProofTerm::pair(inner.clone(), ProofTerm::var("c")));
        // The outer projection fires first, discarding nothing here but
        // exposing the inner redex for the second step.
        let (after, _) = step(&outer).unwrap();
        assert_eq!(after, inner);
        let report = normalize(&outer, 10).unwrap();
        assert_eq!(report.normal_form, ProofTerm::var("a"));
        assert_eq!(report.steps, 2);
        assert_eq!(report.trace, vec![RuleTag::FstPair, RuleTag::FstPair]);
    }

    #[test]
    fn budget_limits_looping_terms() {
        // Untyped self-application loops; the budget catches it.
        let delta = ProofTerm::lam(
            "a",
            q(),
            ProofTerm::app(ProofTerm::var("a"), ProofTerm::var("a")),
        );
        let omega = ProofTerm::app(delta.clone(), delta);
        let err = normalize(&omega, 50).unwrap_err();
        assert_eq!(err, NormalizeError::Budget { budget: 50 });
    }

    #[test]
    fn normal_forms_are_classified() {
        let intro = ProofTerm::lam("a", q(), ProofTerm::var("a"));
        assert!(is_intro(&intro));
        assert!(!is_neutral(&intro));
        let neutral = ProofTerm::fst(ProofTerm::app(ProofTerm::var("f"), intro.clone()));
        assert!(is_neutral(&neutral));
        assert!(!is_intro(&neutral));
        assert!(is_normal(&neutral));
        let redex = ProofTerm::fst(ProofTerm::pair(ProofTerm::var("a"), ProofTerm::var("b")));
        assert!(!is_normal(&redex));
        assert!(!is_neutral(&redex), "the spine head is an introduction");
    }

    #[test]
    fn reduction_under_binders() {
        let x = Var::iota("x");
        let body = ProofTerm::app(
            ProofTerm::lam("a", q(), ProofTerm::var("a")),
            ProofTerm::var("h"),
        );
        let pt = ProofTerm::tlam(x.clone(), ProofTerm::lam("h", q(), body));
        let report = normalize(&pt, 10).unwrap();
        assert_eq!(
            report.normal_form,
            ProofTerm::tlam(x, ProofTerm::lam("h", q(), ProofTerm::var("h")))
        );
        assert_eq!(report.steps, 1);
    }
}
