//! The proof checker.  Checking is syntax-directed on the proof term and
//! works *modulo* the theory's rewrite rules: every place where plain
//! natural deduction would require two propositions to be equal, this
//! kernel only requires them to be congruent, and every place where a rule
//! inspects the shape of a proposition it first reduces it to weak head
//! normal form.
//!
//! All rewriting is paid for from a single fuel budget, so checking always
//! terminates and can return three answers: valid, invalid, or undecided
//! (the budget ran out before the question was settled).

use crate::proof::ProofTerm;
use crate::rewrite::{congruent, whnf_prop, Fuel, RewriteError, RuleError, RuleSet};
use crate::syntax::{Prop, Signature, Sort, Term, Var};
use std::collections::BTreeSet;
use thiserror::Error;

/// Hypotheses in scope: named propositions, innermost last.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(String, Prop)>,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn from_pairs(entries: impl IntoIterator<Item = (String, Prop)>) -> Self {
        Context { entries: entries.into_iter().collect() }
    }

    pub fn push(&mut self, name: impl Into<String>, prop: Prop) {
        self.entries.push((name.into(), prop));
    }

    fn pop(&mut self) {
        self.entries.pop();
    }

    /// The innermost hypothesis with this name shadows the others.
    pub fn lookup(&self, name: &str) -> Option<&Prop> {
        self.entries.iter().rev().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Prop)> {
        self.entries.iter().map(|(n, p)| (n.as_str(), p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Term variables free in some hypothesis: the variables an eigenvariable
    /// must avoid.
    pub fn free_term_vars(&self) -> BTreeSet<String> {
        self.entries.iter().flat_map(|(_, p)| p.free_vars()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
    Undecided,
}

/// The outcome of a check, with the rewriting cost and, for non-valid
/// verdicts, an explanation locating the problem inside the proof term.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub detail: Option<String>,
    pub fuel_consumed: u32,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("invalid proof: {0}")]
    Invalid(String),
    #[error("undecided: {0}")]
    Undecided(String),
}

/// Check `proof : goal` under the hypotheses of `ctx`.
pub fn check(
    sig: &Signature,
    rules: &RuleSet,
    ctx: &Context,
    proof: &ProofTerm,
    goal: &Prop,
    fuel: u32,
) -> CheckReport {
    let mut checker = Checker::new(sig, rules, fuel);
    let mut ctx = ctx.clone();
    let outcome = checker.check(&mut ctx, proof, goal);
    let fuel_consumed = checker.fuel.consumed();
    match outcome {
        Ok(()) => CheckReport { verdict: Verdict::Valid, detail: None, fuel_consumed },
        Err(Fail::Invalid(msg)) => {
            CheckReport { verdict: Verdict::Invalid, detail: Some(msg), fuel_consumed }
        }
        Err(Fail::Undecided(msg)) => {
            CheckReport { verdict: Verdict::Undecided, detail: Some(msg), fuel_consumed }
        }
    }
}

/// Infer the proposition proved by `proof`, with the fuel actually used.
pub fn infer(
    sig: &Signature,
    rules: &RuleSet,
    ctx: &Context,
    proof: &ProofTerm,
    fuel: u32,
) -> Result<(Prop, u32), KernelError> {
    let mut checker = Checker::new(sig, rules, fuel);
    let mut ctx = ctx.clone();
    match checker.infer(&mut ctx, proof) {
        Ok(p) => Ok((p, checker.fuel.consumed())),
        Err(Fail::Invalid(msg)) => Err(KernelError::Invalid(msg)),
        Err(Fail::Undecided(msg)) => Err(KernelError::Undecided(msg)),
    }
}

enum Fail {
    Invalid(String),
    Undecided(String),
}

struct Checker<'a> {
    sig: &'a Signature,
    rules: &'a RuleSet,
    fuel: Fuel,
    /// Breadcrumbs into the proof term, for error messages.
    path: Vec<String>,
    /// Term variables bound by quantifier proof steps, with their sorts.
    tenv: Vec<Var>,
}

impl<'a> Checker<'a> {
    fn new(sig: &'a Signature, rules: &'a RuleSet, fuel: u32) -> Self {
        Checker { sig, rules, fuel: Fuel::new(fuel), path: Vec::new(), tenv: Vec::new() }
    }

    fn at(&self) -> String {
        if self.path.is_empty() {
            String::new()
        } else {
            format!(" (in {})", self.path.join(", "))
        }
    }

    fn invalid(&self, msg: impl AsRef<str>) -> Fail {
        Fail::Invalid(format!("{}{}", msg.as_ref(), self.at()))
    }

    fn rewrite_fail(&self, e: RewriteError) -> Fail {
        match e {
            RewriteError::Fuel(f) => Fail::Undecided(format!(
                "unfolding budget exhausted after {} unfoldings{}; retry with more fuel",
                f.consumed,
                self.at()
            )),
            RewriteError::Rule(RuleError::TermStepCap) => Fail::Undecided(format!(
                "term rewriting exceeded its step cap{}; the rule set loops on terms",
                self.at()
            )),
            RewriteError::Rule(r) => self.invalid(format!("rewriting failed: {r}")),
        }
    }

    fn whnf(&mut self, p: &Prop) -> Result<Prop, Fail> {
        whnf_prop(p, self.rules, &mut self.fuel).map_err(|e| self.rewrite_fail(e))
    }

    /// Demand `a` congruent to `b`; `what` names the left side for errors.
    fn demand_congruent(&mut self, a: &Prop, b: &Prop, what: &str) -> Result<(), Fail> {
        match congruent(a, b, self.rules, &mut self.fuel) {
            Ok(true) => Ok(()),
            Ok(false) => Err(self.invalid(format!("{what}: `{a}` is not congruent to `{b}`"))),
            Err(e) => Err(self.rewrite_fail(e)),
        }
    }

    fn expect_implies(&self, p: Prop, what: &str) -> Result<(Prop, Prop), Fail> {
        match p {
            Prop::Implies(a, b) => Ok((*a, *b)),
            other => Err(self.invalid(format!("{what} `{other}`"))),
        }
    }

    fn expect_forall(&self, p: Prop, what: &str) -> Result<(Var, Prop), Fail> {
        match p {
            Prop::ForAll(v, b) => Ok((v, *b)),
            other => Err(self.invalid(format!("{what} `{other}`"))),
        }
    }

    fn expect_and(&self, p: Prop, what: &str) -> Result<(Prop, Prop), Fail> {
        match p {
            Prop::And(a, b) => Ok((*a, *b)),
            other => Err(self.invalid(format!("{what} `{other}`"))),
        }
    }

    fn expect_or(&self, p: Prop, what: &str) -> Result<(Prop, Prop), Fail> {
        match p {
            Prop::Or(a, b) => Ok((*a, *b)),
            other => Err(self.invalid(format!("{what} `{other}`"))),
        }
    }

    fn expect_exists(&self, p: Prop, what: &str) -> Result<(Var, Prop), Fail> {
        match p {
            Prop::Exists(v, b) => Ok((v, *b)),
            other => Err(self.invalid(format!("{what} `{other}`"))),
        }
    }

    /// Annotations and witnesses must be well-sorted and must use term
    /// variables at the sorts their binders declared.
    fn check_prop_in_scope(&self, p: &Prop) -> Result<(), Fail> {
        self.sig
            .check_prop(p)
            .map_err(|e| self.invalid(format!("ill-sorted proposition `{p}`: {e}")))?;
        for v in p.free_vars_sorted() {
            self.check_var_in_scope(&v)?;
        }
        Ok(())
    }

    fn check_term_in_scope(&self, t: &Term) -> Result<Sort, Fail> {
        let sort = self
            .sig
            .sort_of_term(t)
            .map_err(|e| self.invalid(format!("ill-sorted term `{t}`: {e}")))?;
        for v in t.vars_in_order() {
            self.check_var_in_scope(&v)?;
        }
        Ok(sort)
    }

    fn check_var_in_scope(&self, v: &Var) -> Result<(), Fail> {
        if let Some(bound) = self.tenv.iter().rev().find(|w| w.name == v.name) {
            if bound.sort != v.sort {
                return Err(self.invalid(format!(
                    "variable `{}` is bound at sort `{}` but used at sort `{}`",
                    v.name, bound.sort.0, v.sort.0
                )));
            }
        }
        Ok(())
    }

    /// The names an eigenvariable for this scope must avoid: everything free
    /// in the hypotheses.
    fn eigen_violation(&self, ctx: &Context, v: &Var) -> Option<String> {
        if ctx.free_term_vars().contains(&v.name) {
            Some(format!(
                "eigenvariable `{}` occurs free in a hypothesis in scope",
                v.name
            ))
        } else {
            None
        }
    }

    fn scoped<T>(
        &mut self,
        label: String,
        f: impl FnOnce(&mut Self) -> Result<T, Fail>,
    ) -> Result<T, Fail> {
        self.path.push(label);
        let out = f(self);
        self.path.pop();
        out
    }

    fn check(&mut self, ctx: &mut Context, proof: &ProofTerm, goal: &Prop) -> Result<(), Fail> {
        match proof {
            ProofTerm::Lam(name, dom, body) => {
                let weak = self.whnf(goal)?;
                let (a, b) = self.expect_implies(
                    weak,
                    &format!("`fun ({name} : ...)` proves an implication, but the goal is"),
                )?;
                self.check_prop_in_scope(dom)?;
                self.demand_congruent(dom, &a, "the annotated hypothesis")?;
                ctx.push(name.clone(), dom.clone());
                let out = self.scoped(format!("the body of `fun {name}`"), |s| {
                    s.check(ctx, body, &b)
                });
                ctx.pop();
                out
            }
            ProofTerm::TLam(v, body) => {
                let weak = self.whnf(goal)?;
                let (w, b) = self.expect_forall(
                    weak,
                    &format!(
                        "`tfun ({} : {})` proves a universal, but the goal is",
                        v.name, v.sort.0
                    ),
                )?;
                if v.sort != w.sort {
                    return Err(self.invalid(format!(
                        "`tfun` binds `{}` at sort `{}` but the goal quantifies over sort `{}`",
                        v.name, v.sort.0, w.sort.0
                    )));
                }
                if let Some(msg) = self.eigen_violation(ctx, v) {
                    return Err(self.invalid(msg));
                }
                let quantified = Prop::forall(w.clone(), b.clone());
                if quantified.free_vars().contains(&v.name) {
                    return Err(self.invalid(format!(
                        "eigenvariable `{}` occurs free in the goal `{quantified}`",
                        v.name
                    )));
                }
                let opened = b.substitute(&w.name, &Term::var(v.clone()));
                self.tenv.push(v.clone());
                let out = self.scoped(format!("the body of `tfun {}`", v.name), |s| {
                    s.check(ctx, body, &opened)
                });
                self.tenv.pop();
                out
            }
            ProofTerm::Pair(l, r) => {
                let weak = self.whnf(goal)?;
                let (a, b) = self
                    .expect_and(weak, "`pair` proves a conjunction, but the goal is")?;
                self.scoped("the first pair component".into(), |s| s.check(ctx, l, &a))?;
                self.scoped("the second pair component".into(), |s| s.check(ctx, r, &b))
            }
            ProofTerm::InL(p, other) => {
                let weak = self.whnf(goal)?;
                let (a, b) = self
                    .expect_or(weak, "`inl` proves a disjunction, but the goal is")?;
                self.check_prop_in_scope(other)?;
                self.demand_congruent(other, &b, "the annotated right disjunct")?;
                self.scoped("the payload of `inl`".into(), |s| s.check(ctx, p, &a))
            }
            ProofTerm::InR(p, other) => {
                let weak = self.whnf(goal)?;
                let (a, b) = self
                    .expect_or(weak, "`inr` proves a disjunction, but the goal is")?;
                self.check_prop_in_scope(other)?;
                self.demand_congruent(other, &a, "the annotated left disjunct")?;
                self.scoped("the payload of `inr`".into(), |s| s.check(ctx, p, &b))
            }
            ProofTerm::TruthIntro => {
                let weak = self.whnf(goal)?;
                if weak == Prop::Top {
                    Ok(())
                } else {
                    Err(self.invalid(format!("`triv` proves `true`, but the goal is `{weak}`")))
                }
            }
            ProofTerm::Case(scrut, lname, lbody, rname, rbody) => {
                let scrut_ty =
                    self.scoped("the `case` scrutinee".into(), |s| s.infer(ctx, scrut))?;
                let weak = self.whnf(&scrut_ty)?;
                let (a, b) = self.expect_or(
                    weak,
                    "`case` eliminates a disjunction, but the scrutinee proves",
                )?;
                ctx.push(lname.clone(), a);
                let left = self.scoped(format!("the left `case` branch `{lname}`"), |s| {
                    s.check(ctx, lbody, goal)
                });
                ctx.pop();
                left?;
                ctx.push(rname.clone(), b);
                let right = self.scoped(format!("the right `case` branch `{rname}`"), |s| {
                    s.check(ctx, rbody, goal)
                });
                ctx.pop();
                right
            }
            ProofTerm::ExIntro(witness, p, x, template) => {
                let weak = self.whnf(goal)?;
                let (y, b) = self.expect_exists(
                    weak,
                    "`ex_intro` proves an existential, but the goal is",
                )?;
                if x.sort != y.sort {
                    return Err(self.invalid(format!(
                        "`ex_intro` annotates sort `{}` but the goal quantifies over sort `{}`",
                        x.sort.0, y.sort.0
                    )));
                }
                let annotated = Prop::exists(x.clone(), template.clone());
                self.check_prop_in_scope(&annotated)?;
                self.demand_congruent(
                    &annotated,
                    &Prop::exists(y, b),
                    "the annotated existential",
                )?;
                let wsort = self.check_term_in_scope(witness)?;
                if wsort != x.sort {
                    return Err(self.invalid(format!(
                        "witness `{witness}` has sort `{}`, expected `{}`",
                        wsort.0, x.sort.0
                    )));
                }
                let instantiated = template.substitute(&x.name, witness);
                self.scoped(format!("the `ex_intro` payload at witness `{witness}`"), |s| {
                    s.check(ctx, p, &instantiated)
                })
            }
            ProofTerm::ExElim(scrut, x, h, body, result) => {
                self.check_prop_in_scope(result)?;
                self.demand_congruent(result, goal, "the annotated `ex_elim` result")?;
                self.check_ex_elim(ctx, scrut, x, h, body, result)
            }
            ProofTerm::ExFalso(p, target) => {
                self.check_prop_in_scope(target)?;
                self.demand_congruent(target, goal, "the annotated `exfalso` result")?;
                self.scoped("the `exfalso` payload".into(), |s| {
                    s.check(ctx, p, &Prop::Bottom)
                })
            }
            // Neutral forms: infer and compare against the goal.
            ProofTerm::Var(_) | ProofTerm::App(..) | ProofTerm::TApp(..)
            | ProofTerm::Fst(_) | ProofTerm::Snd(_) => {
                let inferred = self.infer(ctx, proof)?;
                self.demand_congruent(&inferred, goal, "the proved proposition")
            }
        }
    }

    /// Shared spine of the existential eliminator: the scrutinee must prove
    /// an existential, the opened variable must not escape into hypotheses
    /// or the result, and the body proves the result under the new
    /// hypothesis.
    fn check_ex_elim(
        &mut self,
        ctx: &mut Context,
        scrut: &ProofTerm,
        x: &Var,
        h: &str,
        body: &ProofTerm,
        result: &Prop,
    ) -> Result<(), Fail> {
        let scrut_ty = self.scoped("the `ex_elim` scrutinee".into(), |s| s.infer(ctx, scrut))?;
        let weak = self.whnf(&scrut_ty)?;
        let (y, b) = self.expect_exists(
            weak,
            "`ex_elim` eliminates an existential, but the scrutinee proves",
        )?;
        if x.sort != y.sort {
            return Err(self.invalid(format!(
                "`ex_elim` binds `{}` at sort `{}` but the existential ranges over sort `{}`",
                x.name, x.sort.0, y.sort.0
            )));
        }
        if let Some(msg) = self.eigen_violation(ctx, x) {
            return Err(self.invalid(msg));
        }
        if result.free_vars().contains(&x.name) {
            return Err(self.invalid(format!(
                "opened variable `{}` escapes into the `ex_elim` result `{result}`",
                x.name
            )));
        }
        let opened = b.substitute(&y.name, &Term::var(x.clone()));
        ctx.push(h.to_string(), opened);
        self.tenv.push(x.clone());
        let out = self.scoped(format!("the `ex_elim` body `{h}`"), |s| {
            s.check(ctx, body, result)
        });
        self.tenv.pop();
        ctx.pop();
        out
    }

    fn infer(&mut self, ctx: &mut Context, proof: &ProofTerm) -> Result<Prop, Fail> {
        match proof {
            ProofTerm::Var(name) => ctx
                .lookup(name)
                .cloned()
                .ok_or_else(|| self.invalid(format!("unknown hypothesis `{name}`"))),
            ProofTerm::App(f, arg) => {
                let fty = self.scoped("the application head".into(), |s| s.infer(ctx, f))?;
                let weak = self.whnf(&fty)?;
                let (dom, cod) = self.expect_implies(
                    weak,
                    "the applied proof proves no implication but",
                )?;
                self.scoped("the application argument".into(), |s| s.check(ctx, arg, &dom))?;
                Ok(cod)
            }
            ProofTerm::TApp(f, t) => {
                let fty = self.scoped("the instantiation head".into(), |s| s.infer(ctx, f))?;
                let weak = self.whnf(&fty)?;
                let (v, body) = self.expect_forall(
                    weak,
                    "the instantiated proof proves no universal but",
                )?;
                let tsort = self.check_term_in_scope(t)?;
                if tsort != v.sort {
                    return Err(self.invalid(format!(
                        "instantiating `forall {}:{}` with `{t}` of sort `{}`",
                        v.name, v.sort.0, tsort.0
                    )));
                }
                Ok(body.substitute(&v.name, t))
            }
            ProofTerm::Fst(p) => {
                let ty = self.scoped("the `fst` argument".into(), |s| s.infer(ctx, p))?;
                let weak = self.whnf(&ty)?;
                let (a, _) = self.expect_and(
                    weak,
                    "`fst` projects a conjunction, but the proof proves",
                )?;
                Ok(a)
            }
            ProofTerm::Snd(p) => {
                let ty = self.scoped("the `snd` argument".into(), |s| s.infer(ctx, p))?;
                let weak = self.whnf(&ty)?;
                let (_, b) = self.expect_and(
                    weak,
                    "`snd` projects a conjunction, but the proof proves",
                )?;
                Ok(b)
            }
            ProofTerm::Lam(name, dom, body) => {
                self.check_prop_in_scope(dom)?;
                ctx.push(name.clone(), dom.clone());
                let cod = self.scoped(format!("the body of `fun {name}`"), |s| {
                    s.infer(ctx, body)
                });
                ctx.pop();
                Ok(Prop::implies(dom.clone(), cod?))
            }
            ProofTerm::TLam(v, body) => {
                if let Some(msg) = self.eigen_violation(ctx, v) {
                    return Err(self.invalid(msg));
                }
                self.tenv.push(v.clone());
                let b = self.scoped(format!("the body of `tfun {}`", v.name), |s| {
                    s.infer(ctx, body)
                });
                self.tenv.pop();
                Ok(Prop::forall(v.clone(), b?))
            }
            ProofTerm::Pair(l, r) => {
                let a = self.scoped("the first pair component".into(), |s| s.infer(ctx, l))?;
                let b = self.scoped("the second pair component".into(), |s| s.infer(ctx, r))?;
                Ok(Prop::and(a, b))
            }
            ProofTerm::InL(p, other) => {
                self.check_prop_in_scope(other)?;
                let a = self.scoped("the payload of `inl`".into(), |s| s.infer(ctx, p))?;
                Ok(Prop::or(a, other.clone()))
            }
            ProofTerm::InR(p, other) => {
                self.check_prop_in_scope(other)?;
                let b = self.scoped("the payload of `inr`".into(), |s| s.infer(ctx, p))?;
                Ok(Prop::or(other.clone(), b))
            }
            ProofTerm::TruthIntro => Ok(Prop::Top),
            ProofTerm::ExFalso(p, target) => {
                self.check_prop_in_scope(target)?;
                self.scoped("the `exfalso` payload".into(), |s| {
                    s.check(ctx, p, &Prop::Bottom)
                })?;
                Ok(target.clone())
            }
            ProofTerm::Case(scrut, lname, lbody, rname, rbody) => {
                let scrut_ty =
                    self.scoped("the `case` scrutinee".into(), |s| s.infer(ctx, scrut))?;
                let weak = self.whnf(&scrut_ty)?;
                let (a, b) = self.expect_or(
                    weak,
                    "`case` eliminates a disjunction, but the scrutinee proves",
                )?;
                ctx.push(lname.clone(), a);
                let left = self.scoped(format!("the left `case` branch `{lname}`"), |s| {
                    s.infer(ctx, lbody)
                });
                ctx.pop();
                let left = left?;
                ctx.push(rname.clone(), b);
                let right = self.scoped(format!("the right `case` branch `{rname}`"), |s| {
                    s.check(ctx, rbody, &left)
                });
                ctx.pop();
                right?;
                Ok(left)
            }
            ProofTerm::ExIntro(witness, p, x, template) => {
                let annotated = Prop::exists(x.clone(), template.clone());
                self.check_prop_in_scope(&annotated)?;
                let wsort = self.check_term_in_scope(witness)?;
                if wsort != x.sort {
                    return Err(self.invalid(format!(
                        "witness `{witness}` has sort `{}`, expected `{}`",
                        wsort.0, x.sort.0
                    )));
                }
                let instantiated = template.substitute(&x.name, witness);
                self.scoped(format!("the `ex_intro` payload at witness `{witness}`"), |s| {
                    s.check(ctx, p, &instantiated)
                })?;
                Ok(annotated)
            }
            ProofTerm::ExElim(scrut, x, h, body, result) => {
                self.check_prop_in_scope(result)?;
                self.check_ex_elim(ctx, scrut, x, h, body, result)?;
                Ok(result.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::NATP;
    use crate::theory;

    fn atom_sig() -> Signature {
        let mut sig = Signature::new();
        sig.declare_sort(Sort::iota());
        sig.declare_predicate("P", vec![Sort::iota()]).unwrap();
        sig.declare_predicate("Q", vec![]).unwrap();
        sig.declare_function("c", vec![], Sort::iota()).unwrap();
        sig
    }

    fn p_of(t: Term) -> Prop {
        Prop::atom("P", vec![t])
    }

    fn q() -> Prop {
        Prop::atom("Q", vec![])
    }

    fn check_empty(sig: &Signature, pt: &ProofTerm, goal: &Prop) -> CheckReport {
        check(sig, &RuleSet::new(), &Context::new(), pt, goal, 64)
    }

    #[test]
    fn identity_and_composition() {
        let sig = atom_sig();
        let id = ProofTerm::lam("a", q(), ProofTerm::var("a"));
        assert!(check_empty(&sig, &id, &Prop::implies(q(), q())).is_valid());

        // (Q => Q => Q) => Q => Q, by applying twice.
        let goal = Prop::implies(
            Prop::implies(q(), Prop::implies(q(), q())),
            Prop::implies(q(), q()),
        );
        let pt = ProofTerm::lam(
            "f",
            Prop::implies(q(), Prop::implies(q(), q())),
            ProofTerm::lam(
                "a",
                q(),
                ProofTerm::app(
                    ProofTerm::app(ProofTerm::var("f"), ProofTerm::var("a")),
                    ProofTerm::var("a"),
                ),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());
    }

    #[test]
    fn wrong_hypothesis_is_invalid_with_a_path() {
        let sig = atom_sig();
        let pt = ProofTerm::lam("a", q(), ProofTerm::var("b"));
        let report = check_empty(&sig, &pt, &Prop::implies(q(), q()));
        assert_eq!(report.verdict, Verdict::Invalid);
        let detail = report.detail.unwrap();
        assert!(detail.contains("unknown hypothesis `b`"), "{detail}");
        assert!(detail.contains("the body of `fun a`"), "{detail}");
    }

    #[test]
    fn conjunction_and_disjunction() {
        let sig = atom_sig();
        // Q /\ P(c) => P(c) /\ Q
        let goal = Prop::implies(
            Prop::and(q(), p_of(Term::constant("c"))),
            Prop::and(p_of(Term::constant("c")), q()),
        );
        let pt = ProofTerm::lam(
            "h",
            Prop::and(q(), p_of(Term::constant("c"))),
            ProofTerm::pair(
                ProofTerm::snd(ProofTerm::var("h")),
                ProofTerm::fst(ProofTerm::var("h")),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());

        // Q \/ P(c) => P(c) \/ Q
        let goal = Prop::implies(
            Prop::or(q(), p_of(Term::constant("c"))),
            Prop::or(p_of(Term::constant("c")), q()),
        );
        let pt = ProofTerm::lam(
            "h",
            Prop::or(q(), p_of(Term::constant("c"))),
            ProofTerm::case(
                ProofTerm::var("h"),
                "l",
                ProofTerm::inr(ProofTerm::var("l"), p_of(Term::constant("c"))),
                "r",
                ProofTerm::inl(ProofTerm::var("r"), q()),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());
    }

    #[test]
    fn truth_and_absurdity() {
        let sig = atom_sig();
        assert!(check_empty(&sig, &ProofTerm::TruthIntro, &Prop::Top).is_valid());
        // false => Q
        let pt = ProofTerm::lam(
            "h",
            Prop::Bottom,
            ProofTerm::exfalso(ProofTerm::var("h"), q()),
        );
        assert!(check_empty(&sig, &pt, &Prop::implies(Prop::Bottom, q())).is_valid());
    }

    #[test]
    fn universal_intro_and_elim() {
        let sig = atom_sig();
        // (forall x. P(x)) => P(c)
        let x = Var::iota("x");
        let all = Prop::forall(x.clone(), p_of(Term::var(x.clone())));
        let goal = Prop::implies(all.clone(), p_of(Term::constant("c")));
        let pt = ProofTerm::lam(
            "h",
            all.clone(),
            ProofTerm::tapp(ProofTerm::var("h"), Term::constant("c")),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());

        // (forall x. P(x)) => forall y. P(y), re-binding the eigenvariable.
        let y = Var::iota("y");
        let goal = Prop::implies(all.clone(), Prop::forall(y.clone(), p_of(Term::var(y))));
        let pt = ProofTerm::lam(
            "h",
            all,
            ProofTerm::tlam(
                Var::iota("z"),
                ProofTerm::tapp(ProofTerm::var("h"), Term::var(Var::iota("z"))),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());
    }

    #[test]
    fn eigenvariable_conditions_are_enforced() {
        let sig = atom_sig();
        // P(x) => forall x. P(x) must fail: x is free in the hypothesis.
        let x = Var::iota("x");
        let goal = Prop::implies(
            p_of(Term::var(x.clone())),
            Prop::forall(x.clone(), p_of(Term::var(x.clone()))),
        );
        let pt = ProofTerm::lam(
            "h",
            p_of(Term::var(x.clone())),
            ProofTerm::tlam(x.clone(), ProofTerm::var("h")),
        );
        let report = check_empty(&sig, &pt, &goal);
        assert_eq!(report.verdict, Verdict::Invalid);
        assert!(report.detail.unwrap().contains("eigenvariable"));

        // tfun x => ... against forall y. P(x): the binder name collides with
        // a free variable of the goal.
        let y = Var::iota("y");
        let goal = Prop::forall(y, p_of(Term::var(x.clone())));
        let pt = ProofTerm::tlam(x, ProofTerm::var("whatever"));
        let report = check_empty(&sig, &pt, &goal);
        assert_eq!(report.verdict, Verdict::Invalid);
        assert!(report.detail.unwrap().contains("free in the goal"));
    }

    #[test]
    fn existential_intro_and_elim() {
        let sig = atom_sig();
        let x = Var::iota("x");
        let ex = Prop::exists(x.clone(), p_of(Term::var(x.clone())));

        // P(c) => exists x. P(x)
        let goal = Prop::implies(p_of(Term::constant("c")), ex.clone());
        let pt = ProofTerm::lam(
            "h",
            p_of(Term::constant("c")),
            ProofTerm::ex_intro(
                Term::constant("c"),
                ProofTerm::var("h"),
                x.clone(),
                p_of(Term::var(x.clone())),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());

        // (exists x. P(x)) => (forall x. P(x) => Q) => Q
        let all_imp = Prop::forall(
            x.clone(),
            Prop::implies(p_of(Term::var(x.clone())), q()),
        );
        let goal = Prop::implies(ex.clone(), Prop::implies(all_imp.clone(), q()));
        let pt = ProofTerm::lam(
            "e",
            ex.clone(),
            ProofTerm::lam(
                "f",
                all_imp,
                ProofTerm::ex_elim(
                    ProofTerm::var("e"),
                    Var::iota("w"),
                    "hw",
                    ProofTerm::app(
                        ProofTerm::tapp(ProofTerm::var("f"), Term::var(Var::iota("w"))),
                        ProofTerm::var("hw"),
                    ),
                    q(),
                ),
            ),
        );
        assert!(check_empty(&sig, &pt, &goal).is_valid());
    }

    #[test]
    fn opened_existential_variable_must_not_escape() {
        let sig = atom_sig();
        let x = Var::iota("x");
        let ex = Prop::exists(x.clone(), p_of(Term::var(x.clone())));
        // (exists x. P(x)) => P(w) with the opened variable escaping.
        let goal = Prop::implies(ex.clone(), p_of(Term::var(Var::iota("w"))));
        let pt = ProofTerm::lam(
            "e",
            ex,
            ProofTerm::ex_elim(
                ProofTerm::var("e"),
                Var::iota("w"),
                "hw",
                ProofTerm::var("hw"),
                p_of(Term::var(Var::iota("w"))),
            ),
        );
        let report = check_empty(&sig, &pt, &goal);
        assert_eq!(report.verdict, Verdict::Invalid);
        assert!(report.detail.unwrap().contains("escapes"));
    }

    #[test]
    fn checking_works_modulo_rewriting() {
        // In the rule presentation of arithmetic, `2 * 1 = 2` unfolds to
        // `forall p. 2 * 1 in p => 2 in p` whose terms normalise, so the
        // identity-shaped proof checks.
        let th = theory::theory_ha_mod(false);
        let p = Var::kappa("p");
        let two = Term::numeral(2);
        let pt = ProofTerm::tlam(
            p.clone(),
            ProofTerm::lam(
                "a",
                Prop::mem(two.clone(), Term::var(p.clone())),
                ProofTerm::var("a"),
            ),
        );
        let goal = Prop::eq(Term::times(two.clone(), Term::numeral(1)), two.clone());
        let report = check(th.signature(), th.rules(), &Context::new(), &pt, &goal, 64);
        assert!(report.is_valid(), "{:?}", report.detail);
        assert!(report.fuel_consumed >= 1);

        // The same proof does not check against a false equation.
        let bad = Prop::eq(Term::times(two.clone(), Term::numeral(1)), Term::numeral(3));
        let report = check(th.signature(), th.rules(), &Context::new(), &pt, &bad, 64);
        assert_eq!(report.verdict, Verdict::Invalid);
    }

    #[test]
    fn fuel_exhaustion_reports_undecided() {
        let th = theory::theory_ha_mod(false);
        let goal = Prop::atom(NATP, vec![Term::zero()]);
        // N(0) needs at least one unfolding before any structure appears.
        let report = check(
            th.signature(),
            th.rules(),
            &Context::new(),
            &ProofTerm::TruthIntro,
            &goal,
            0,
        );
        assert_eq!(report.verdict, Verdict::Undecided);
        assert!(report.detail.unwrap().contains("more fuel"));
    }

    #[test]
    fn zero_proves_its_type_in_the_code_theory() {
        // The translation of the numeral 0: tfun p => fun (x : eps(p)) =>
        // fun (f : eps(nat) => eps(p) => eps(p)) => x, checked against
        // eps(nat).
        let th = theory::theory_t();
        let p = Var::kappa("p");
        let eps = |t: Term| Prop::atom("eps", vec![t]);
        let pt = ProofTerm::tlam(
            p.clone(),
            ProofTerm::lam(
                "x",
                eps(Term::var(p.clone())),
                ProofTerm::lam(
                    "f",
                    Prop::implies(
                        eps(Term::constant("nat")),
                        Prop::implies(eps(Term::var(p.clone())), eps(Term::var(p.clone()))),
                    ),
                    ProofTerm::var("x"),
                ),
            ),
        );
        let goal = eps(Term::constant("nat"));
        let report = check(th.signature(), th.rules(), &Context::new(), &pt, &goal, 16);
        assert!(report.is_valid(), "{:?}", report.detail);
    }

    #[test]
    fn infer_recovers_the_goal() {
        let sig = atom_sig();
        let pt = ProofTerm::lam("a", q(), ProofTerm::var("a"));
        let (ty, used) = infer(&sig, &RuleSet::new(), &Context::new(), &pt, 16).unwrap();
        assert_eq!(ty, Prop::implies(q(), q()));
        assert_eq!(used, 0);
    }

    #[test]
    fn annotation_mismatch_is_invalid() {
        let sig = atom_sig();
        // fun (a : Q) => a against P(c) => P(c): annotation disagrees.
        let pt = ProofTerm::lam("a", q(), ProofTerm::var("a"));
        let goal = Prop::implies(p_of(Term::constant("c")), p_of(Term::constant("c")));
        let report = check_empty(&sig, &pt, &goal);
        assert_eq!(report.verdict, Verdict::Invalid);
        assert!(report.detail.unwrap().contains("not congruent"));
    }

    #[test]
    fn tapp_sort_mismatch_is_invalid() {
        let th = theory::theory_ha_mod(false);
        // Instantiating a forall over individuals with a class variable.
        let x = Var::iota("x");
        let all = Prop::forall(x.clone(), Prop::eq(Term::var(x.clone()), Term::var(x.clone())));
        let ctx = Context::from_pairs([("h".to_string(), all)]);
        let pt = ProofTerm::tapp(ProofTerm::var("h"), Term::var(Var::kappa("p")));
        let err = infer(th.signature(), th.rules(), &ctx, &pt, 16).unwrap_err();
        assert!(matches!(err, KernelError::Invalid(_)));
    }
}
