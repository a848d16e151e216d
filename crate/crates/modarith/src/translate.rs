//! Translations between presentations.
//!
//! Two bridges live here.  `relativize` maps an arithmetic proposition to
//! its guarded form, where every quantifier is bounded by the natural-number
//! predicate; a theory with `N` as a defined notion proves exactly the
//! relativized images of the plain theory's theorems.  The second bridge
//! compiles simply typed recursor terms (Gödel's T) into proof terms over
//! the two-rule theory `t`: a typed program of type `A` becomes a proof of
//! `eps(⟦A⟧)`, and every program reduction step is simulated by one or more
//! proof reduction steps.

use crate::proof::{canonical_proof, ProofTerm};
use crate::reduce::reducts;
use crate::syntax::{fresh_name, Prop, Term, Var, EPS, MEM, NATP, NAT_CODE};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

// ---------------------------------------------------------------------------
// Relativization

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RelativizeError {
    #[error("`{0}` already belongs to the guarded language; relativize plain arithmetic only")]
    ForbiddenPredicate(String),
    #[error("cannot relativize a quantifier over sort `{0}`; only individuals are guarded")]
    NonIotaBinder(String),
}

/// Bound every quantifier by the `N` guard: `forall x. A` becomes
/// `forall x. N(x) => |A|` and `exists x. A` becomes `exists x. N(x) /\ |A|`.
pub fn relativize(p: &Prop) -> Result<Prop, RelativizeError> {
    let guard = |v: &Var| Prop::atom(NATP, vec![Term::var(v.clone())]);
    Ok(match p {
        Prop::Atom(name, _) => {
            if name == NATP || name == MEM || name == EPS {
                return Err(RelativizeError::ForbiddenPredicate(name.clone()));
            }
            p.clone()
        }
        Prop::Top | Prop::Bottom => p.clone(),
        Prop::Implies(a, b) => Prop::implies(relativize(a)?, relativize(b)?),
        Prop::And(a, b) => Prop::and(relativize(a)?, relativize(b)?),
        Prop::Or(a, b) => Prop::or(relativize(a)?, relativize(b)?),
        Prop::ForAll(v, body) => {
            if v.sort != crate::syntax::Sort::iota() {
                return Err(RelativizeError::NonIotaBinder(v.sort.0.clone()));
            }
            Prop::forall(v.clone(), Prop::implies(guard(v), relativize(body)?))
        }
        Prop::Exists(v, body) => {
            if v.sort != crate::syntax::Sort::iota() {
                return Err(RelativizeError::NonIotaBinder(v.sort.0.clone()));
            }
            Prop::exists(v.clone(), Prop::and(guard(v), relativize(body)?))
        }
    })
}

// ---------------------------------------------------------------------------
// Gödel's T

/// Simple types over a single base type of naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TType {
    Nat,
    Arrow(Box<TType>, Box<TType>),
}

impl TType {
    pub fn arrow(a: TType, b: TType) -> Self {
        TType::Arrow(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for TType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TType::Nat => write!(f, "nat"),
            TType::Arrow(a, b) => {
                if matches!(**a, TType::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

/// Terms of Gödel's T: the simply typed lambda calculus with zero,
/// successor, and a typed recursor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TTerm {
    Var(String),
    Lam(String, TType, Box<TTerm>),
    App(Box<TTerm>, Box<TTerm>),
    Zero,
    Succ(Box<TTerm>),
    /// `Rec(A, a, f, n)` computes `a` when `n` is zero and
    /// `f b (Rec(A, a, f, b))` when `n` is `S(b)`.
    Rec(TType, Box<TTerm>, Box<TTerm>, Box<TTerm>),
}

impl TTerm {
    pub fn var(name: impl Into<String>) -> Self {
        TTerm::Var(name.into())
    }

    pub fn lam(name: impl Into<String>, ty: TType, body: TTerm) -> Self {
        TTerm::Lam(name.into(), ty, Box::new(body))
    }

    pub fn app(f: TTerm, a: TTerm) -> Self {
        TTerm::App(Box::new(f), Box::new(a))
    }

    pub fn succ(n: TTerm) -> Self {
        TTerm::Succ(Box::new(n))
    }

    pub fn rec(ty: TType, base: TTerm, step: TTerm, scrut: TTerm) -> Self {
        TTerm::Rec(ty, Box::new(base), Box::new(step), Box::new(scrut))
    }

    pub fn numeral(n: u64) -> Self {
        (0..n).fold(TTerm::Zero, |acc, _| TTerm::succ(acc))
    }

    pub fn as_numeral(&self) -> Option<u64> {
        let mut t = self;
        let mut n = 0;
        loop {
            match t {
                TTerm::Zero => return Some(n),
                TTerm::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            TTerm::Var(x) => BTreeSet::from([x.clone()]),
            TTerm::Lam(x, _, b) => {
                let mut fv = b.free_vars();
                fv.remove(x);
                fv
            }
            TTerm::App(f, a) => {
                let mut fv = f.free_vars();
                fv.extend(a.free_vars());
                fv
            }
            TTerm::Zero => BTreeSet::new(),
            TTerm::Succ(n) => n.free_vars(),
            TTerm::Rec(_, a, f, n) => {
                let mut fv = a.free_vars();
                fv.extend(f.free_vars());
                fv.extend(n.free_vars());
                fv
            }
        }
    }

    /// Capture-avoiding substitution of `value` for the free variable `x`.
    pub fn subst(&self, x: &str, value: &TTerm) -> TTerm {
        match self {
            TTerm::Var(y) => {
                if y == x {
                    value.clone()
                } else {
                    self.clone()
                }
            }
            TTerm::Lam(y, ty, body) => {
                if y == x {
                    return self.clone();
                }
                let value_fv = value.free_vars();
                if value_fv.contains(y) && body.free_vars().contains(x) {
                    let mut used = value_fv;
                    used.extend(body.free_vars());
                    used.insert(x.to_string());
                    let fresh = fresh_name(y, &used);
                    let renamed = body.subst(y, &TTerm::var(fresh.clone()));
                    TTerm::lam(fresh, ty.clone(), renamed.subst(x, value))
                } else {
                    TTerm::lam(y.clone(), ty.clone(), body.subst(x, value))
                }
            }
            TTerm::App(f, a) => TTerm::app(f.subst(x, value), a.subst(x, value)),
            TTerm::Zero => TTerm::Zero,
            TTerm::Succ(n) => TTerm::succ(n.subst(x, value)),
            TTerm::Rec(ty, a, f, n) => TTerm::rec(
                ty.clone(),
                a.subst(x, value),
                f.subst(x, value),
                n.subst(x, value),
            ),
        }
    }
}

/// Alpha-equality of T terms.
pub fn alpha_eq_tterm(a: &TTerm, b: &TTerm) -> bool {
    fn go(a: &TTerm, b: &TTerm, la: &mut Vec<String>, lb: &mut Vec<String>) -> bool {
        match (a, b) {
            (TTerm::Var(x), TTerm::Var(y)) => {
                let ia = la.iter().rposition(|n| n == x);
                let ib = lb.iter().rposition(|n| n == y);
                match (ia, ib) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (TTerm::Lam(x, tx, bx), TTerm::Lam(y, ty, by)) => {
                tx == ty && {
                    la.push(x.clone());
                    lb.push(y.clone());
                    let ok = go(bx, by, la, lb);
                    la.pop();
                    lb.pop();
                    ok
                }
            }
            (TTerm::App(f1, a1), TTerm::App(f2, a2)) => {
                go(f1, f2, la, lb) && go(a1, a2, la, lb)
            }
            (TTerm::Zero, TTerm::Zero) => true,
            (TTerm::Succ(n1), TTerm::Succ(n2)) => go(n1, n2, la, lb),
            (TTerm::Rec(t1, a1, f1, n1), TTerm::Rec(t2, a2, f2, n2)) => {
                t1 == t2 && go(a1, a2, la, lb) && go(f1, f2, la, lb) && go(n1, n2, la, lb)
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

const T_LAM: u8 = 0;
const T_APP: u8 = 1;

impl fmt::Display for TTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tterm(f, self, T_LAM)
    }
}

fn write_tterm(f: &mut fmt::Formatter<'_>, t: &TTerm, min: u8) -> fmt::Result {
    match t {
        TTerm::Var(x) => write!(f, "{x}"),
        TTerm::Zero => write!(f, "0"),
        TTerm::Succ(n) => {
            write!(f, "S(")?;
            write_tterm(f, n, T_LAM)?;
            write!(f, ")")
        }
        TTerm::Rec(ty, a, step, n) => {
            write!(f, "rec[{ty}](")?;
            write_tterm(f, a, T_LAM)?;
            write!(f, ", ")?;
            write_tterm(f, step, T_LAM)?;
            write!(f, ", ")?;
            write_tterm(f, n, T_LAM)?;
            write!(f, ")")
        }
        TTerm::Lam(x, ty, body) => {
            let parens = min > T_LAM;
            if parens {
                write!(f, "(")?;
            }
            write!(f, "fun ({x} : {ty}) => ")?;
            write_tterm(f, body, T_LAM)?;
            if parens {
                write!(f, ")")?;
            }
            Ok(())
        }
        TTerm::App(fun, arg) => {
            let parens = min > T_APP;
            if parens {
                write!(f, "(")?;
            }
            write_tterm(f, fun, T_APP)?;
            write!(f, " ")?;
            write_tterm(f, arg, T_APP + 1)?;
            if parens {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TTypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{term}` has type `{ty}` and cannot be applied")]
    NotAFunction { term: String, ty: String },
    #[error("`{term}` expects an argument of type `{expected}`, got `{got}`")]
    ArgumentMismatch { term: String, expected: String, got: String },
    #[error("successor applied to `{term}` of type `{ty}`, not a natural")]
    SuccOfNonNat { term: String, ty: String },
    #[error("recursor scrutinee `{term}` has type `{ty}`, not a natural")]
    RecOfNonNat { term: String, ty: String },
    #[error("recursor base has type `{got}`, expected the motive `{expected}`")]
    RecBaseMismatch { expected: String, got: String },
    #[error("recursor step has type `{got}`, expected `{expected}`")]
    RecStepMismatch { expected: String, got: String },
}

/// Compute the type of `t` under bindings for its free variables
/// (innermost binding last).
pub fn type_of(env: &mut Vec<(String, TType)>, t: &TTerm) -> Result<TType, TTypeError> {
    match t {
        TTerm::Var(x) => env
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, ty)| ty.clone())
            .ok_or_else(|| TTypeError::Unbound(x.clone())),
        TTerm::Lam(x, ty, body) => {
            env.push((x.clone(), ty.clone()));
            let out = type_of(env, body);
            env.pop();
            Ok(TType::arrow(ty.clone(), out?))
        }
        TTerm::App(fun, arg) => {
            let fun_ty = type_of(env, fun)?;
            let arg_ty = type_of(env, arg)?;
            match fun_ty {
                TType::Arrow(dom, cod) => {
                    if *dom == arg_ty {
                        Ok(*cod)
                    } else {
                        Err(TTypeError::ArgumentMismatch {
                            term: fun.to_string(),
                            expected: dom.to_string(),
                            got: arg_ty.to_string(),
                        })
                    }
                }
                other => Err(TTypeError::NotAFunction {
                    term: fun.to_string(),
                    ty: other.to_string(),
                }),
            }
        }
        TTerm::Zero => Ok(TType::Nat),
        TTerm::Succ(n) => {
            let ty = type_of(env, n)?;
            if ty == TType::Nat {
                Ok(TType::Nat)
            } else {
                Err(TTypeError::SuccOfNonNat { term: n.to_string(), ty: ty.to_string() })
            }
        }
        TTerm::Rec(motive, base, step, scrut) => {
            let base_ty = type_of(env, base)?;
            if base_ty != *motive {
                return Err(TTypeError::RecBaseMismatch {
                    expected: motive.to_string(),
                    got: base_ty.to_string(),
                });
            }
            let step_ty = type_of(env, step)?;
            let wanted =
                TType::arrow(TType::Nat, TType::arrow(motive.clone(), motive.clone()));
            if step_ty != wanted {
                return Err(TTypeError::RecStepMismatch {
                    expected: wanted.to_string(),
                    got: step_ty.to_string(),
                });
            }
            let scrut_ty = type_of(env, scrut)?;
            if scrut_ty != TType::Nat {
                return Err(TTypeError::RecOfNonNat {
                    term: scrut.to_string(),
                    ty: scrut_ty.to_string(),
                });
            }
            Ok(motive.clone())
        }
    }
}

/// Contract a redex at the root of `t`, if there is one.  The redexes are
/// beta plus the two recursor rules.
fn root_step(t: &TTerm) -> Option<TTerm> {
    match t {
        TTerm::App(fun, arg) => {
            if let TTerm::Lam(x, _, body) = &**fun {
                return Some(body.subst(x, arg));
            }
            None
        }
        TTerm::Rec(ty, base, step, scrut) => match &**scrut {
            TTerm::Zero => Some((**base).clone()),
            TTerm::Succ(pred) => Some(TTerm::app(
                TTerm::app((**step).clone(), (**pred).clone()),
                TTerm::rec(ty.clone(), (**base).clone(), (**step).clone(), (**pred).clone()),
            )),
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost step together with its site: the reduced term,
/// the redex subterm that fired, and that redex's contractum.
fn step_with_site(t: &TTerm) -> Option<(TTerm, &TTerm, TTerm)> {
    if let Some(contractum) = root_step(t) {
        return Some((contractum.clone(), t, contractum));
    }
    match t {
        TTerm::Var(_) | TTerm::Zero => None,
        TTerm::Lam(x, ty, body) => step_with_site(body)
            .map(|(new, r, c)| (TTerm::lam(x.clone(), ty.clone(), new), r, c)),
        TTerm::App(fun, arg) => step_with_site(fun)
            .map(|(new, r, c)| (TTerm::app(new, (**arg).clone()), r, c))
            .or_else(|| {
                step_with_site(arg).map(|(new, r, c)| (TTerm::app((**fun).clone(), new), r, c))
            }),
        TTerm::Succ(n) => step_with_site(n).map(|(new, r, c)| (TTerm::succ(new), r, c)),
        TTerm::Rec(ty, base, step, scrut) => step_with_site(base)
            .map(|(new, r, c)| {
                (TTerm::rec(ty.clone(), new, (**step).clone(), (**scrut).clone()), r, c)
            })
            .or_else(|| {
                step_with_site(step).map(|(new, r, c)| {
                    (TTerm::rec(ty.clone(), (**base).clone(), new, (**scrut).clone()), r, c)
                })
            })
            .or_else(|| {
                step_with_site(scrut).map(|(new, r, c)| {
                    (TTerm::rec(ty.clone(), (**base).clone(), (**step).clone(), new), r, c)
                })
            }),
    }
}

/// One leftmost-outermost reduction step, or `None` when normal.
pub fn t_step(t: &TTerm) -> Option<TTerm> {
    step_with_site(t).map(|(new, _, _)| new)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("no normal form within {budget} steps")]
pub struct TBudget {
    pub budget: usize,
}

/// Reduce to normal form, counting steps against a budget.  Gödel's T is
/// strongly normalizing, so the budget only guards against very large
/// computations.
pub fn t_normalize(t: &TTerm, budget: usize) -> Result<(TTerm, usize), TBudget> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = t_step(&cur) {
        steps += 1;
        if steps > budget {
            return Err(TBudget { budget });
        }
        cur = next;
    }
    Ok((cur, steps))
}

// ---------------------------------------------------------------------------
// Compilation into proof terms

/// The individual-level code of a type: `nat` for the base type and the
/// binary `->` constructor for functions.
pub fn ttype_to_term(ty: &TType) -> Term {
    match ty {
        TType::Nat => Term::constant(NAT_CODE),
        TType::Arrow(a, b) => Term::arrow(ttype_to_term(a), ttype_to_term(b)),
    }
}

fn eps(t: Term) -> Prop {
    Prop::atom(EPS, vec![t])
}

/// The proposition `eps(⟦A⟧)` inhabited by compiled programs of type `A`.
pub fn eps_of(ty: &TType) -> Prop {
    eps(ttype_to_term(ty))
}

/// The hypothesis type of the iteration step: `eps(nat) => eps(p) => eps(p)`.
fn step_prop(p: &Var) -> Prop {
    Prop::implies(
        eps(Term::constant(NAT_CODE)),
        Prop::implies(eps(Term::var(p.clone())), eps(Term::var(p.clone()))),
    )
}

/// Compile a T term into a proof term over the theory `t`, mapping a
/// program of type `A` to a proof of `eps(⟦A⟧)`.  Numerals become their
/// own iterators: zero returns the base hypothesis, and the successor of
/// `n` feeds `n` and the result of iterating `n` to the step hypothesis.
pub fn compile(t: &TTerm) -> ProofTerm {
    // Generated binders must be globally distinct: a nested iterator that
    // reused `p` would break the eigenvariable condition, since the outer
    // `p` occurs free in the hypotheses in scope.
    let mut used = t.free_vars();
    compile_in(t, &mut used)
}

fn compile_in(t: &TTerm, used: &mut BTreeSet<String>) -> ProofTerm {
    let pick = |base: &str, used: &mut BTreeSet<String>| {
        let name = fresh_name(base, used);
        used.insert(name.clone());
        name
    };
    match t {
        TTerm::Var(x) => ProofTerm::var(x.clone()),
        TTerm::App(f, a) => ProofTerm::app(compile_in(f, used), compile_in(a, used)),
        TTerm::Lam(x, ty, body) => {
            used.insert(x.clone());
            ProofTerm::lam(x.clone(), eps_of(ty), compile_in(body, used))
        }
        TTerm::Zero => {
            let p = Var::kappa(pick("p", used));
            let x = pick("x", used);
            let f = pick("f", used);
            ProofTerm::tlam(
                p.clone(),
                ProofTerm::lam(
                    x.clone(),
                    eps(Term::var(p.clone())),
                    ProofTerm::lam(f, step_prop(&p), ProofTerm::var(x)),
                ),
            )
        }
        TTerm::Succ(n) => {
            let inner = compile_in(n, used);
            let p = Var::kappa(pick("p", used));
            let x = pick("x", used);
            let f = pick("f", used);
            let iterate = ProofTerm::app(
                ProofTerm::app(
                    ProofTerm::tapp(inner.clone(), Term::var(p.clone())),
                    ProofTerm::var(x.clone()),
                ),
                ProofTerm::var(f.clone()),
            );
            ProofTerm::tlam(
                p.clone(),
                ProofTerm::lam(
                    x,
                    eps(Term::var(p.clone())),
                    ProofTerm::lam(
                        f.clone(),
                        step_prop(&p),
                        ProofTerm::app(ProofTerm::app(ProofTerm::var(f), inner), iterate),
                    ),
                ),
            )
        }
        TTerm::Rec(ty, base, step, scrut) => {
            let scrut = compile_in(scrut, used);
            let base = compile_in(base, used);
            let step = compile_in(step, used);
            ProofTerm::app(
                ProofTerm::app(ProofTerm::tapp(scrut, ttype_to_term(ty)), base),
                step,
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Step simulation

pub const DEFAULT_SIMULATION_BUDGET: usize = 500;

/// Evidence that one program step was simulated by proof reduction.
#[derive(Clone, Debug)]
pub struct Simulation {
    /// The program after its step.
    pub reduct: TTerm,
    /// How many proof reduction steps realized the program step.
    pub proof_steps: usize,
    /// How many proofs the search expanded.
    pub explored: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimulationError {
    #[error("no simulation found after exploring {budget} proofs")]
    Budget { budget: usize },
    #[error("reduction graph exhausted after {explored} proofs without reaching the target")]
    NotFound { explored: usize },
}

/// Check that the compiled image of one program step is reachable by proof
/// reduction: if `t` steps to `u`, search the one-step reduction relation
/// from `compile(t)` for a proof alpha-equal to `compile(u)`.  Returns
/// `None` when `t` is already normal.
///
/// Compilation is compositional and proof reduction is closed under
/// contexts, so the search runs on the redex subterm that fired and its
/// contractum; the path it finds lifts verbatim to the full terms, and the
/// search never wanders into proof redexes the program step did not touch.
pub fn simulate_step(t: &TTerm, budget: usize) -> Result<Option<Simulation>, SimulationError> {
    let Some((u, redex, contractum)) = step_with_site(t) else {
        return Ok(None);
    };
    let start = compile(redex);
    let target = canonical_proof(&compile(&contractum));
    let mut visited = BTreeSet::from([canonical_proof(&start)]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut explored = 0usize;
    while let Some((node, depth)) = queue.pop_front() {
        explored += 1;
        if explored > budget {
            return Err(SimulationError::Budget { budget });
        }
        for next in reducts(&node) {
            let key = canonical_proof(&next);
            if key == target {
                return Ok(Some(Simulation {
                    reduct: u,
                    proof_steps: depth + 1,
                    explored,
                }));
            }
            if visited.insert(key) {
                queue.push_back((next, depth + 1));
            }
        }
    }
    Err(SimulationError::NotFound { explored })
}
