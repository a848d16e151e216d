//! Proof terms: an annotated λ-calculus whose terms are natural-deduction
//! derivations.  Annotations (domains of abstractions, the unused disjunct of
//! an injection, targets of absurdity eliminations, existential binders)
//! make type checking syntax-directed without inference.
//!
//! Proof terms bind two kinds of variables: proof variables (hypothesis
//! names, bound by `Lam`, `Case` branches and `ExElim`) and first-order term
//! variables (bound by `TLam`, `ExElim` and the annotation binder of
//! `ExIntro`).  Substitution must avoid capture in both namespaces at once,
//! since proof terms embed terms and propositions.

use crate::syntax::{canon_prop, canon_term, fresh_name, Prop, Term, Var};
use std::collections::BTreeSet;
use std::fmt;

/// A proof term.  See the module docs for the binding structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofTerm {
    /// A hypothesis.
    Var(String),
    /// Implication introduction: `fun (a : A) => body` proves `A => B`.
    Lam(String, Prop, Box<ProofTerm>),
    /// Implication elimination.
    App(Box<ProofTerm>, Box<ProofTerm>),
    /// Conjunction introduction.
    Pair(Box<ProofTerm>, Box<ProofTerm>),
    /// Conjunction eliminations.
    Fst(Box<ProofTerm>),
    Snd(Box<ProofTerm>),
    /// Disjunction introductions; the annotation is the *other* disjunct.
    InL(Box<ProofTerm>, Prop),
    InR(Box<ProofTerm>, Prop),
    /// Disjunction elimination: `case(s, a. left, b. right)`.
    Case(Box<ProofTerm>, String, Box<ProofTerm>, String, Box<ProofTerm>),
    /// Truth introduction.
    TruthIntro,
    /// Absurdity elimination into the annotated target proposition.
    ExFalso(Box<ProofTerm>, Prop),
    /// Universal introduction over a term variable.
    TLam(Var, Box<ProofTerm>),
    /// Universal elimination at a term.
    TApp(Box<ProofTerm>, Term),
    /// Existential introduction: witness, proof of the instance, and the
    /// annotation `x. A` spelling out the existential statement.
    ExIntro(Term, Box<ProofTerm>, Var, Prop),
    /// Existential elimination: `ex_elim(s, x:sort. a. body, B)` concludes `B`.
    ExElim(Box<ProofTerm>, Var, String, Box<ProofTerm>, Prop),
}

impl ProofTerm {
    pub fn var(name: impl Into<String>) -> Self {
        ProofTerm::Var(name.into())
    }

    pub fn lam(name: impl Into<String>, domain: Prop, body: ProofTerm) -> Self {
        ProofTerm::Lam(name.into(), domain, Box::new(body))
    }

    pub fn app(f: ProofTerm, a: ProofTerm) -> Self {
        ProofTerm::App(Box::new(f), Box::new(a))
    }

    pub fn pair(a: ProofTerm, b: ProofTerm) -> Self {
        ProofTerm::Pair(Box::new(a), Box::new(b))
    }

    pub fn fst(a: ProofTerm) -> Self {
        ProofTerm::Fst(Box::new(a))
    }

    pub fn snd(a: ProofTerm) -> Self {
        ProofTerm::Snd(Box::new(a))
    }

    pub fn inl(a: ProofTerm, right: Prop) -> Self {
        ProofTerm::InL(Box::new(a), right)
    }

    pub fn inr(a: ProofTerm, left: Prop) -> Self {
        ProofTerm::InR(Box::new(a), left)
    }

    pub fn case(
        scrutinee: ProofTerm,
        a: impl Into<String>,
        left: ProofTerm,
        b: impl Into<String>,
        right: ProofTerm,
    ) -> Self {
        ProofTerm::Case(
            Box::new(scrutinee),
            a.into(),
            Box::new(left),
            b.into(),
            Box::new(right),
        )
    }

    pub fn exfalso(a: ProofTerm, target: Prop) -> Self {
        ProofTerm::ExFalso(Box::new(a), target)
    }

    pub fn tlam(v: Var, body: ProofTerm) -> Self {
        ProofTerm::TLam(v, Box::new(body))
    }

    pub fn tapp(f: ProofTerm, t: Term) -> Self {
        ProofTerm::TApp(Box::new(f), t)
    }

    pub fn ex_intro(witness: Term, proof: ProofTerm, binder: Var, body: Prop) -> Self {
        ProofTerm::ExIntro(witness, Box::new(proof), binder, body)
    }

    pub fn ex_elim(
        scrutinee: ProofTerm,
        x: Var,
        hyp: impl Into<String>,
        body: ProofTerm,
        result: Prop,
    ) -> Self {
        ProofTerm::ExElim(Box::new(scrutinee), x, hyp.into(), Box::new(body), result)
    }

    pub fn size(&self) -> usize {
        use ProofTerm::*;
        match self {
            Var(_) | TruthIntro => 1,
            Lam(_, _, b) | Fst(b) | Snd(b) | InL(b, _) | InR(b, _) | ExFalso(b, _)
            | TLam(_, b) | TApp(b, _) | ExIntro(_, b, _, _) => 1 + b.size(),
            App(a, b) | Pair(a, b) => 1 + a.size() + b.size(),
            Case(s, _, l, _, r) => 1 + s.size() + l.size() + r.size(),
            ExElim(s, _, _, b, _) => 1 + s.size() + b.size(),
        }
    }

    /// Free proof variables (hypothesis names).
    pub fn proof_fv(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.proof_fv_into(&mut Vec::new(), &mut out);
        out
    }

    fn proof_fv_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        use ProofTerm::*;
        match self {
            Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            Lam(a, _, body) => {
                bound.push(a.clone());
                body.proof_fv_into(bound, out);
                bound.pop();
            }
            App(f, x) | Pair(f, x) => {
                f.proof_fv_into(bound, out);
                x.proof_fv_into(bound, out);
            }
            Fst(p) | Snd(p) | InL(p, _) | InR(p, _) | ExFalso(p, _) | TLam(_, p)
            | TApp(p, _) | ExIntro(_, p, _, _) => p.proof_fv_into(bound, out),
            Case(s, a, l, b, r) => {
                s.proof_fv_into(bound, out);
                bound.push(a.clone());
                l.proof_fv_into(bound, out);
                bound.pop();
                bound.push(b.clone());
                r.proof_fv_into(bound, out);
                bound.pop();
            }
            TruthIntro => {}
            ExElim(s, _, hyp, body, _) => {
                s.proof_fv_into(bound, out);
                bound.push(hyp.clone());
                body.proof_fv_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Free first-order term variables, including those inside proposition
    /// annotations and witness terms.
    pub fn term_fv(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.term_fv_into(&mut Vec::new(), &mut out);
        out
    }

    fn term_fv_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        use ProofTerm::*;
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in t.free_vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        let add_prop = |p: &Prop, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in p.free_vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Var(_) | TruthIntro => {}
            Lam(_, dom, body) => {
                add_prop(dom, bound, out);
                body.term_fv_into(bound, out);
            }
            App(f, x) | Pair(f, x) => {
                f.term_fv_into(bound, out);
                x.term_fv_into(bound, out);
            }
            Fst(p) | Snd(p) => p.term_fv_into(bound, out),
            InL(p, ann) | InR(p, ann) | ExFalso(p, ann) => {
                p.term_fv_into(bound, out);
                add_prop(ann, bound, out);
            }
            Case(s, _, l, _, r) => {
                s.term_fv_into(bound, out);
                l.term_fv_into(bound, out);
                r.term_fv_into(bound, out);
            }
            TLam(v, body) => {
                bound.push(v.name.clone());
                body.term_fv_into(bound, out);
                bound.pop();
            }
            TApp(p, t) => {
                p.term_fv_into(bound, out);
                add_term(t, bound, out);
            }
            ExIntro(witness, proof, binder, body) => {
                add_term(witness, bound, out);
                proof.term_fv_into(bound, out);
                bound.push(binder.name.clone());
                add_prop(body, bound, out);
                bound.pop();
            }
            ExElim(s, x, _, body, result) => {
                s.term_fv_into(bound, out);
                add_prop(result, bound, out);
                bound.push(x.name.clone());
                body.term_fv_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of a proof term for a hypothesis.
    pub fn subst_proof(&self, alpha: &str, replacement: &ProofTerm) -> ProofTerm {
        use ProofTerm::*;
        match self {
            Var(b) => {
                if b == alpha {
                    replacement.clone()
                } else {
                    self.clone()
                }
            }
            Lam(b, dom, body) => {
                if b == alpha {
                    return self.clone();
                }
                let (b2, body2) = avoid_proof_capture(b, body, alpha, replacement);
                ProofTerm::lam(b2, dom.clone(), body2.subst_proof(alpha, replacement))
            }
            App(f, x) => ProofTerm::app(
                f.subst_proof(alpha, replacement),
                x.subst_proof(alpha, replacement),
            ),
            Pair(a, b) => ProofTerm::pair(
                a.subst_proof(alpha, replacement),
                b.subst_proof(alpha, replacement),
            ),
            Fst(p) => ProofTerm::fst(p.subst_proof(alpha, replacement)),
            Snd(p) => ProofTerm::snd(p.subst_proof(alpha, replacement)),
            InL(p, ann) => ProofTerm::inl(p.subst_proof(alpha, replacement), ann.clone()),
            InR(p, ann) => ProofTerm::inr(p.subst_proof(alpha, replacement), ann.clone()),
            Case(s, a, l, b, r) => {
                let s2 = s.subst_proof(alpha, replacement);
                let (a2, l2) = if a == alpha {
                    (a.clone(), (**l).clone())
                } else {
                    let (a2, l2) = avoid_proof_capture(a, l, alpha, replacement);
                    (a2, l2.subst_proof(alpha, replacement))
                };
                let (b2, r2) = if b == alpha {
                    (b.clone(), (**r).clone())
                } else {
                    let (b2, r2) = avoid_proof_capture(b, r, alpha, replacement);
                    (b2, r2.subst_proof(alpha, replacement))
                };
                ProofTerm::case(s2, a2, l2, b2, r2)
            }
            TruthIntro => TruthIntro,
            ExFalso(p, ann) => ProofTerm::exfalso(p.subst_proof(alpha, replacement), ann.clone()),
            TLam(v, body) => {
                // The replacement may mention the term variable `v` freely;
                // rename the binder before descending.
                if replacement.term_fv().contains(&v.name) {
                    let mut avoid = replacement.term_fv();
                    avoid.extend(body.term_fv());
                    let fresh = fresh_name(&v.name, &avoid);
                    let v2 = crate::syntax::Var::new(fresh, v.sort.clone());
                    let body2 = body.subst_term(&v.name, &Term::var(v2.clone()));
                    ProofTerm::tlam(v2, body2.subst_proof(alpha, replacement))
                } else {
                    ProofTerm::tlam(v.clone(), body.subst_proof(alpha, replacement))
                }
            }
            TApp(p, t) => ProofTerm::tapp(p.subst_proof(alpha, replacement), t.clone()),
            ExIntro(witness, proof, binder, body) => ProofTerm::ex_intro(
                witness.clone(),
                proof.subst_proof(alpha, replacement),
                binder.clone(),
                body.clone(),
            ),
            ExElim(s, x, hyp, body, result) => {
                let s2 = s.subst_proof(alpha, replacement);
                if hyp == alpha {
                    return ProofTerm::ex_elim(s2, x.clone(), hyp.clone(), (**body).clone(), result.clone());
                }
                // First move the term binder away from the replacement's free
                // term variables, then the proof binder.
                let (x2, body2) = if replacement.term_fv().contains(&x.name) {
                    let mut avoid = replacement.term_fv();
                    avoid.extend(body.term_fv());
                    let fresh = fresh_name(&x.name, &avoid);
                    let x2 = crate::syntax::Var::new(fresh, x.sort.clone());
                    let body2 = body.subst_term(&x.name, &Term::var(x2.clone()));
                    (x2, body2)
                } else {
                    (x.clone(), (**body).clone())
                };
                let (hyp2, body3) = avoid_proof_capture(hyp, &body2, alpha, replacement);
                ProofTerm::ex_elim(
                    s2,
                    x2,
                    hyp2,
                    body3.subst_proof(alpha, replacement),
                    result.clone(),
                )
            }
        }
    }

    /// Capture-avoiding substitution of a first-order term for a term
    /// variable, throughout annotations, witnesses and the body.
    pub fn subst_term(&self, x: &str, t: &Term) -> ProofTerm {
        use ProofTerm::*;
        match self {
            Var(_) | TruthIntro => self.clone(),
            Lam(a, dom, body) => {
                ProofTerm::lam(a.clone(), dom.substitute(x, t), body.subst_term(x, t))
            }
            App(f, g) => ProofTerm::app(f.subst_term(x, t), g.subst_term(x, t)),
            Pair(a, b) => ProofTerm::pair(a.subst_term(x, t), b.subst_term(x, t)),
            Fst(p) => ProofTerm::fst(p.subst_term(x, t)),
            Snd(p) => ProofTerm::snd(p.subst_term(x, t)),
            InL(p, ann) => ProofTerm::inl(p.subst_term(x, t), ann.substitute(x, t)),
            InR(p, ann) => ProofTerm::inr(p.subst_term(x, t), ann.substitute(x, t)),
            Case(s, a, l, b, r) => ProofTerm::case(
                s.subst_term(x, t),
                a.clone(),
                l.subst_term(x, t),
                b.clone(),
                r.subst_term(x, t),
            ),
            ExFalso(p, ann) => ProofTerm::exfalso(p.subst_term(x, t), ann.substitute(x, t)),
            TLam(v, body) => {
                if v.name == x {
                    return self.clone();
                }
                let (v2, body2) = avoid_term_capture(v, body, x, t);
                ProofTerm::tlam(v2, body2.subst_term(x, t))
            }
            TApp(p, u) => ProofTerm::tapp(p.subst_term(x, t), u.substitute(x, t)),
            ExIntro(witness, proof, binder, body) => {
                let witness2 = witness.substitute(x, t);
                let proof2 = proof.subst_term(x, t);
                if binder.name == x {
                    return ProofTerm::ex_intro(witness2, proof2, binder.clone(), body.clone());
                }
                // The annotation binder scopes over the body proposition only.
                let (binder2, body2) = if t.free_vars().contains(&binder.name) {
                    let mut avoid = t.free_vars();
                    avoid.extend(body.free_vars());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(&binder.name, &avoid);
                    let b2 = crate::syntax::Var::new(fresh, binder.sort.clone());
                    (b2.clone(), body.substitute(&binder.name, &Term::var(b2)))
                } else {
                    (binder.clone(), body.clone())
                };
                ProofTerm::ex_intro(witness2, proof2, binder2, body2.substitute(x, t))
            }
            ExElim(s, v, hyp, body, result) => {
                let s2 = s.subst_term(x, t);
                let result2 = result.substitute(x, t);
                if v.name == x {
                    return ProofTerm::ex_elim(s2, v.clone(), hyp.clone(), (**body).clone(), result2);
                }
                let (v2, body2) = avoid_term_capture(v, body, x, t);
                ProofTerm::ex_elim(s2, v2, hyp.clone(), body2.subst_term(x, t), result2)
            }
        }
    }
}

/// Rename a proof binder out of the way of `replacement`'s free hypotheses.
fn avoid_proof_capture(
    binder: &str,
    body: &ProofTerm,
    alpha: &str,
    replacement: &ProofTerm,
) -> (String, ProofTerm) {
    if replacement.proof_fv().contains(binder) {
        let mut avoid = replacement.proof_fv();
        avoid.extend(body.proof_fv());
        avoid.insert(alpha.to_string());
        let fresh = fresh_name(binder, &avoid);
        let body2 = body.subst_proof(binder, &ProofTerm::var(fresh.clone()));
        (fresh, body2)
    } else {
        (binder.to_string(), body.clone())
    }
}

/// Rename a term binder inside a proof out of the way of `t`'s variables.
fn avoid_term_capture(v: &Var, body: &ProofTerm, x: &str, t: &Term) -> (Var, ProofTerm) {
    if t.free_vars().contains(&v.name) {
        let mut avoid = t.free_vars();
        avoid.extend(body.term_fv());
        avoid.insert(x.to_string());
        let fresh = fresh_name(&v.name, &avoid);
        let v2 = Var::new(fresh, v.sort.clone());
        let body2 = body.subst_term(&v.name, &Term::var(v2.clone()));
        (v2, body2)
    } else {
        (v.clone(), body.clone())
    }
}

/// Canonical string for a proof term: bound proof and term variables are
/// numbered by binder order, so equality of canonical strings is exactly
/// α-equivalence (covering annotations as well).
pub fn canonical_proof(p: &ProofTerm) -> String {
    let mut out = String::new();
    canon(p, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// α-equivalence of proof terms, annotations included.
pub fn alpha_eq_proof(a: &ProofTerm, b: &ProofTerm) -> bool {
    canonical_proof(a) == canonical_proof(b)
}

fn canon(p: &ProofTerm, tenv: &mut Vec<String>, penv: &mut Vec<String>, out: &mut String) {
    use ProofTerm::*;
    match p {
        Var(a) => {
            if let Some(idx) = penv.iter().rposition(|n| n == a) {
                out.push('#');
                out.push_str(&idx.to_string());
            } else {
                out.push('h');
                out.push_str(a);
            }
        }
        Lam(a, dom, body) => {
            out.push_str("L[");
            canon_prop(dom, tenv, out);
            out.push(']');
            penv.push(a.clone());
            canon(body, tenv, penv, out);
            penv.pop();
        }
        App(f, x) => {
            out.push_str("@(");
            canon(f, tenv, penv, out);
            out.push(';');
            canon(x, tenv, penv, out);
            out.push(')');
        }
        Pair(a, b) => {
            out.push_str("P(");
            canon(a, tenv, penv, out);
            out.push(';');
            canon(b, tenv, penv, out);
            out.push(')');
        }
        Fst(p) => {
            out.push_str("F(");
            canon(p, tenv, penv, out);
            out.push(')');
        }
        Snd(p) => {
            out.push_str("S(");
            canon(p, tenv, penv, out);
            out.push(')');
        }
        InL(p, ann) => {
            out.push_str("IL(");
            canon(p, tenv, penv, out);
            out.push('|');
            canon_prop(ann, tenv, out);
            out.push(')');
        }
        InR(p, ann) => {
            out.push_str("IR(");
            canon(p, tenv, penv, out);
            out.push('|');
            canon_prop(ann, tenv, out);
            out.push(')');
        }
        Case(s, a, l, b, r) => {
            out.push_str("C(");
            canon(s, tenv, penv, out);
            out.push(';');
            penv.push(a.clone());
            canon(l, tenv, penv, out);
            penv.pop();
            out.push(';');
            penv.push(b.clone());
            canon(r, tenv, penv, out);
            penv.pop();
            out.push(')');
        }
        TruthIntro => out.push('I'),
        ExFalso(p, ann) => {
            out.push_str("X(");
            canon(p, tenv, penv, out);
            out.push('|');
            canon_prop(ann, tenv, out);
            out.push(')');
        }
        TLam(v, body) => {
            out.push_str("TL[");
            out.push_str(&v.sort.0);
            out.push(']');
            tenv.push(v.name.clone());
            canon(body, tenv, penv, out);
            tenv.pop();
        }
        TApp(p, t) => {
            out.push_str("T@(");
            canon(p, tenv, penv, out);
            out.push(';');
            canon_term(t, tenv, out);
            out.push(')');
        }
        ExIntro(witness, proof, binder, body) => {
            out.push_str("EI(");
            canon_term(witness, tenv, out);
            out.push(';');
            canon(proof, tenv, penv, out);
            out.push_str(";[");
            out.push_str(&binder.sort.0);
            out.push(']');
            tenv.push(binder.name.clone());
            canon_prop(body, tenv, out);
            tenv.pop();
            out.push(')');
        }
        ExElim(s, x, hyp, body, result) => {
            out.push_str("EE(");
            canon(s, tenv, penv, out);
            out.push_str(";[");
            out.push_str(&x.sort.0);
            out.push(']');
            tenv.push(x.name.clone());
            penv.push(hyp.clone());
            canon(body, tenv, penv, out);
            penv.pop();
            tenv.pop();
            out.push(';');
            canon_prop(result, tenv, out);
            out.push(')');
        }
    }
}

impl fmt::Display for ProofTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_proof(f, self, false)
    }
}

/// `atom` requests parentheses around right-open forms (abstractions), which
/// may only stand bare in tail position.
fn write_proof(f: &mut fmt::Formatter<'_>, p: &ProofTerm, atom: bool) -> fmt::Result {
    use ProofTerm::*;
    match p {
        Var(a) => write!(f, "{a}"),
        Lam(a, dom, body) => wrap(f, atom, |f| {
            write!(f, "fun ({a} : {dom}) => ")?;
            write_proof(f, body, false)
        }),
        TLam(v, body) => wrap(f, atom, |f| {
            write!(f, "tfun ({} : {}) => ", v.name, v.sort.0)?;
            write_proof(f, body, false)
        }),
        App(fun, arg) => wrap(f, atom, |f| {
            write_app_head(f, fun)?;
            write!(f, " ")?;
            write_proof(f, arg, true)
        }),
        TApp(fun, t) => wrap(f, atom, |f| {
            write_app_head(f, fun)?;
            write!(f, " @ ")?;
            write_term_atom(f, t)
        }),
        Pair(a, b) => write!(f, "pair({a}, {b})"),
        Fst(p) => write!(f, "fst({p})"),
        Snd(p) => write!(f, "snd({p})"),
        InL(p, ann) => write!(f, "inl({p}, {ann})"),
        InR(p, ann) => write!(f, "inr({p}, {ann})"),
        Case(s, a, l, b, r) => write!(f, "case({s}, {a}. {l}, {b}. {r})"),
        TruthIntro => write!(f, "triv"),
        ExFalso(p, ann) => write!(f, "exfalso({p}, {ann})"),
        ExIntro(w, p, binder, body) => {
            write!(f, "ex_intro({w}, {p}, {}:{}. {body})", binder.name, binder.sort.0)
        }
        ExElim(s, x, hyp, body, result) => {
            write!(f, "ex_elim({s}, {}:{}. {hyp}. {body}, {result})", x.name, x.sort.0)
        }
    }
}

/// Function position of an application: nested applications stay bare so
/// `a b c` prints without parentheses, abstractions get wrapped.
fn write_app_head(f: &mut fmt::Formatter<'_>, head: &ProofTerm) -> fmt::Result {
    match head {
        ProofTerm::App(..) | ProofTerm::TApp(..) => write_proof(f, head, false),
        _ => write_proof(f, head, true),
    }
}

/// Term argument of `@`: parenthesised unless it is self-delimiting.
fn write_term_atom(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    let infix = t.as_numeral().is_none()
        && matches!(t, Term::App(op, args) if args.len() == 2
            && (op == crate::syntax::PLUS || op == crate::syntax::TIMES || op == crate::syntax::ARROW));
    if infix {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

fn wrap(
    f: &mut fmt::Formatter<'_>,
    parens: bool,
    inner: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if parens {
        write!(f, "(")?;
        inner(f)?;
        write!(f, ")")
    } else {
        inner(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str) -> Prop {
        Prop::atom(name, vec![])
    }

    #[test]
    fn proof_and_term_free_variables() {
        // tfun (x : iota) => fun (a : x = y) => a
        let p = ProofTerm::tlam(
            Var::iota("x"),
            ProofTerm::lam(
                "a",
                Prop::eq(Term::var(Var::iota("x")), Term::var(Var::iota("y"))),
                ProofTerm::var("a"),
            ),
        );
        assert!(p.proof_fv().is_empty());
        assert_eq!(p.term_fv(), ["y".to_string()].into_iter().collect());
        let q = ProofTerm::app(ProofTerm::var("a"), ProofTerm::var("b"));
        assert_eq!(
            q.proof_fv(),
            ["a".to_string(), "b".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn proof_substitution_avoids_proof_capture() {
        // (b / a) (fun (b : B) => a b) must rename the binder b.
        let body = ProofTerm::lam(
            "b",
            atom("B"),
            ProofTerm::app(ProofTerm::var("a"), ProofTerm::var("b")),
        );
        let result = body.subst_proof("a", &ProofTerm::var("b"));
        match &result {
            ProofTerm::Lam(binder, _, inner) => {
                assert_ne!(binder, "b");
                assert_eq!(
                    **inner,
                    ProofTerm::app(ProofTerm::var("b"), ProofTerm::var(binder.clone()))
                );
            }
            other => panic!("expected lambda, got {other:?}"),
        }
    }

    #[test]
    fn proof_substitution_avoids_term_capture() {
        // Substituting a proof mentioning the term variable x under
        // tfun (x : iota) must rename the term binder.
        let target = ProofTerm::tlam(
            Var::iota("x"),
            ProofTerm::app(ProofTerm::var("a"), ProofTerm::var("c")),
        );
        // replacement: a proof whose annotation mentions x freely.
        let replacement = ProofTerm::lam(
            "h",
            Prop::eq(Term::var(Var::iota("x")), Term::zero()),
            ProofTerm::var("h"),
        );
        let result = target.subst_proof("a", &replacement);
        match &result {
            ProofTerm::TLam(v, body) => {
                assert_ne!(v.name, "x", "term binder must be renamed");
                // The replacement rides in untouched.
                match &**body {
                    ProofTerm::App(f, _) => assert!(alpha_eq_proof(f, &replacement)),
                    other => panic!("expected app, got {other:?}"),
                }
            }
            other => panic!("expected tfun, got {other:?}"),
        }
    }

    #[test]
    fn term_substitution_reaches_annotations() {
        let p = ProofTerm::lam(
            "a",
            Prop::eq(Term::var(Var::iota("x")), Term::zero()),
            ProofTerm::tapp(ProofTerm::var("r"), Term::var(Var::iota("x"))),
        );
        let r = p.subst_term("x", &Term::numeral(2));
        assert_eq!(
            r,
            ProofTerm::lam(
                "a",
                Prop::eq(Term::numeral(2), Term::zero()),
                ProofTerm::tapp(ProofTerm::var("r"), Term::numeral(2)),
            )
        );
    }

    #[test]
    fn term_substitution_respects_shadowing_and_capture() {
        // tfun (x : iota) => r @ x  is untouched by (0 / x).
        let shadowed = ProofTerm::tlam(
            Var::iota("x"),
            ProofTerm::tapp(ProofTerm::var("r"), Term::var(Var::iota("x"))),
        );
        assert_eq!(shadowed.subst_term("x", &Term::zero()), shadowed);
        // (x / y) under tfun (x : iota) renames the binder away first.
        let capture = ProofTerm::tlam(
            Var::iota("x"),
            ProofTerm::tapp(ProofTerm::var("r"), Term::var(Var::iota("y"))),
        );
        let result = capture.subst_term("y", &Term::var(Var::iota("x")));
        match &result {
            ProofTerm::TLam(v, body) => {
                assert_ne!(v.name, "x");
                assert_eq!(
                    **body,
                    ProofTerm::tapp(ProofTerm::var("r"), Term::var(Var::iota("x")))
                );
            }
            other => panic!("expected tfun, got {other:?}"),
        }
    }

    #[test]
    fn alpha_equivalence_covers_both_namespaces() {
        let p = ProofTerm::tlam(
            Var::iota("x"),
            ProofTerm::lam(
                "a",
                Prop::eq(Term::var(Var::iota("x")), Term::var(Var::iota("x"))),
                ProofTerm::var("a"),
            ),
        );
        let q = ProofTerm::tlam(
            Var::iota("z"),
            ProofTerm::lam(
                "h",
                Prop::eq(Term::var(Var::iota("z")), Term::var(Var::iota("z"))),
                ProofTerm::var("h"),
            ),
        );
        assert!(alpha_eq_proof(&p, &q));
        // Annotations participate: changing the domain breaks equivalence.
        let r = ProofTerm::tlam(
            Var::iota("z"),
            ProofTerm::lam(
                "h",
                Prop::eq(Term::var(Var::iota("z")), Term::zero()),
                ProofTerm::var("h"),
            ),
        );
        assert!(!alpha_eq_proof(&p, &r));
        // Free hypothesis names matter.
        assert!(!alpha_eq_proof(&ProofTerm::var("a"), &ProofTerm::var("b")));
    }

    #[test]
    fn display_round_mirrors_grammar() {
        let p = ProofTerm::lam(
            "a",
            atom("A"),
            ProofTerm::app(
                ProofTerm::app(ProofTerm::var("f"), ProofTerm::var("a")),
                ProofTerm::var("a"),
            ),
        );
        assert_eq!(p.to_string(), "fun (a : A) => f a a");
        let q = ProofTerm::app(
            ProofTerm::lam("a", atom("A"), ProofTerm::var("a")),
            ProofTerm::var("b"),
        );
        assert_eq!(q.to_string(), "(fun (a : A) => a) b");
        let r = ProofTerm::tapp(ProofTerm::var("refl"), Term::numeral(4));
        assert_eq!(r.to_string(), "refl @ 4");
        let s = ProofTerm::tapp(
            ProofTerm::var("refl"),
            Term::plus(Term::var(Var::iota("x")), Term::numeral(1)),
        );
        assert_eq!(s.to_string(), "refl @ (x + 1)");
    }
}
