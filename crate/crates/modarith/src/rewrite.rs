//! The rewrite engine: term rewriting, proposition unfolding, and the
//! congruence test that the proof checker works modulo.
//!
//! Term rules rewrite terms to terms and are applied innermost, to a normal
//! form.  Proposition rules rewrite *atomic* propositions to arbitrary
//! propositions and are only unfolded on demand, head-first, because a rule
//! set may be non-terminating on propositions (the unbounded numeric
//! predicate rule unfolds to a proposition containing itself).  Proposition
//! unfolding is metered by [`Fuel`]; running out is reported as a distinct
//! third answer, never as plain `false`.

use crate::syntax::{
    alpha_eq_prop, canonical_form, Prop, Signature, SortError, Term, Var,
};
use std::collections::HashMap;
use thiserror::Error;

/// Budget for proposition-rule unfoldings.  Term rewriting is not metered by
/// fuel (built-in term rules terminate); it has a separate large step cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    initial: u32,
    remaining: u32,
}

pub const DEFAULT_FUEL: u32 = 256;

/// Step cap for a single term normalisation; exceeding it means a user rule
/// set loops on terms.
pub const TERM_STEP_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("proposition unfolding budget exhausted after {consumed} unfoldings")]
pub struct FuelExhausted {
    pub consumed: u32,
}

impl Fuel {
    pub fn new(initial: u32) -> Self {
        Fuel { initial, remaining: initial }
    }

    pub fn try_consume(&mut self) -> Result<(), FuelExhausted> {
        if self.remaining == 0 {
            Err(FuelExhausted { consumed: self.initial })
        } else {
            self.remaining -= 1;
            Ok(())
        }
    }

    pub fn consumed(&self) -> u32 {
        self.initial - self.remaining
    }

    pub fn remaining(&self) -> u32 {
        self.remaining
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(DEFAULT_FUEL)
    }
}

/// A term rewrite rule `lhs --> rhs`.  The left-hand side is a first-order
/// pattern (its variables are the rule's parameters) and must not be a bare
/// variable; the right-hand side may only use the left-hand side's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRule {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// A proposition rewrite rule: an *atomic* left-hand side `p(t1,...,tn)`
/// rewritten to an arbitrary proposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropRule {
    pub name: String,
    pub head: String,
    pub args: Vec<Term>,
    pub rhs: Prop,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule `{0}`: left-hand side must not be a bare variable")]
    VariableLhs(String),
    #[error("rule `{0}`: right-hand side variable `{1}` does not occur on the left")]
    StrayRhsVariable(String, String),
    #[error("rule `{0}`: {1}")]
    Sort(String, SortError),
    #[error("rule `{0}`: left- and right-hand sides have sorts `{1}` and `{2}`")]
    SortMismatch(String, String, String),
    #[error("term rewriting exceeded {TERM_STEP_CAP} steps; the rule set loops on terms")]
    TermStepCap,
}

impl TermRule {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        TermRule { name: name.into(), lhs, rhs }
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), RuleError> {
        if matches!(self.lhs, Term::Var(_)) {
            return Err(RuleError::VariableLhs(self.name.clone()));
        }
        let lhs_vars = self.lhs.free_vars();
        for v in self.rhs.free_vars() {
            if !lhs_vars.contains(&v) {
                return Err(RuleError::StrayRhsVariable(self.name.clone(), v));
            }
        }
        let ls = sig
            .sort_of_term(&self.lhs)
            .map_err(|e| RuleError::Sort(self.name.clone(), e))?;
        let rs = sig
            .sort_of_term(&self.rhs)
            .map_err(|e| RuleError::Sort(self.name.clone(), e))?;
        if ls != rs {
            return Err(RuleError::SortMismatch(self.name.clone(), ls.0, rs.0));
        }
        Ok(())
    }
}

impl PropRule {
    pub fn new(name: impl Into<String>, head: impl Into<String>, args: Vec<Term>, rhs: Prop) -> Self {
        PropRule { name: name.into(), head: head.into(), args, rhs }
    }

    pub fn lhs(&self) -> Prop {
        Prop::Atom(self.head.clone(), self.args.clone())
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), RuleError> {
        let lhs_vars: std::collections::BTreeSet<String> =
            self.args.iter().flat_map(|t| t.free_vars()).collect();
        for v in self.rhs.free_vars() {
            if !lhs_vars.contains(&v) {
                return Err(RuleError::StrayRhsVariable(self.name.clone(), v));
            }
        }
        sig.check_prop(&self.lhs())
            .map_err(|e| RuleError::Sort(self.name.clone(), e))?;
        sig.check_prop(&self.rhs)
            .map_err(|e| RuleError::Sort(self.name.clone(), e))?;
        Ok(())
    }

    /// Whether some atom of the right-hand side is an instance of the rule's
    /// own left-hand side.  Unfolding such a rule recreates a redex of the
    /// same rule in every instance, so exhaustive unfolding diverges; weak
    /// head unfolding under a fuel bound remains safe.
    pub fn is_self_referential(&self) -> bool {
        let mut found = false;
        self.rhs.walk_atoms(&mut |head, args| {
            if found || head != self.head || args.len() != self.args.len() {
                return;
            }
            let mut binding = Vec::new();
            if self
                .args
                .iter()
                .zip(args)
                .all(|(p, s)| match_term(p, s, &mut binding))
            {
                found = true;
            }
        });
        found
    }
}

/// A set of term and proposition rewrite rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    term_rules: Vec<TermRule>,
    prop_rules: Vec<PropRule>,
    contains_nonterminating: bool,
}

impl RuleSet {
    pub fn new() -> Self {
        RuleSet::default()
    }

    pub fn add_term_rule(&mut self, rule: TermRule) {
        self.term_rules.push(rule);
    }

    pub fn add_prop_rule(&mut self, rule: PropRule) {
        self.contains_nonterminating |= rule.is_self_referential();
        self.prop_rules.push(rule);
    }

    pub fn term_rules(&self) -> &[TermRule] {
        &self.term_rules
    }

    pub fn prop_rules(&self) -> &[PropRule] {
        &self.prop_rules
    }

    /// True when some proposition rule can unfold to a proposition containing
    /// its own head again, so exhaustive unfolding would not terminate.
    pub fn contains_nonterminating(&self) -> bool {
        self.contains_nonterminating
    }

    pub fn validate(&self, sig: &Signature) -> Result<(), RuleError> {
        for r in &self.term_rules {
            r.validate(sig)?;
        }
        for r in &self.prop_rules {
            r.validate(sig)?;
        }
        Ok(())
    }
}

/// First-order matching of a pattern against a closed-ish subject: variables
/// in the pattern bind subject subterms; repeated pattern variables must
/// match equal subterms.
fn match_term(pattern: &Term, subject: &Term, binding: &mut Vec<(String, Term)>) -> bool {
    match pattern {
        Term::Var(v) => {
            if let Some((_, bound)) = binding.iter().find(|(n, _)| *n == v.name) {
                bound == subject
            } else {
                binding.push((v.name.clone(), subject.clone()));
                true
            }
        }
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g && pargs.len() == sargs.len() => pargs
                .iter()
                .zip(sargs)
                .all(|(p, s)| match_term(p, s, binding)),
            _ => false,
        },
    }
}

/// One root rewrite attempt with the given rules.
fn rewrite_root(t: &Term, rules: &RuleSet) -> Option<Term> {
    for rule in &rules.term_rules {
        let mut binding = Vec::new();
        if match_term(&rule.lhs, t, &mut binding) {
            return Some(rule.rhs.substitute_many(&binding));
        }
    }
    None
}

/// Innermost normalisation of a term.  Arguments are normalised first, then
/// root redexes are contracted until none remains.  The step cap guards
/// against looping user rule sets.
pub fn normalize_term(t: &Term, rules: &RuleSet) -> Result<Term, RuleError> {
    let mut steps = 0usize;
    normalize_inner(t, rules, &mut steps)
}

fn normalize_inner(t: &Term, rules: &RuleSet, steps: &mut usize) -> Result<Term, RuleError> {
    let mut current = match t {
        Term::Var(_) => t.clone(),
        Term::App(f, args) => {
            let args = args
                .iter()
                .map(|a| normalize_inner(a, rules, steps))
                .collect::<Result<Vec<_>, _>>()?;
            Term::App(f.clone(), args)
        }
    };
    while let Some(next) = rewrite_root(&current, rules) {
        *steps += 1;
        if *steps > TERM_STEP_CAP {
            return Err(RuleError::TermStepCap);
        }
        // A root contraction can build new redexes anywhere in the
        // substituted right-hand side, so renormalise it as a whole.
        current = match next {
            Term::Var(_) => next,
            Term::App(f, args) => {
                let args = args
                    .iter()
                    .map(|a| normalize_inner(a, rules, steps))
                    .collect::<Result<Vec<_>, _>>()?;
                Term::App(f, args)
            }
        };
    }
    Ok(current)
}

/// Normalise every term argument inside a proposition (under binders too).
pub fn normalize_terms_in_prop(p: &Prop, rules: &RuleSet) -> Result<Prop, RuleError> {
    Ok(match p {
        Prop::Atom(name, args) => Prop::Atom(
            name.clone(),
            args.iter()
                .map(|t| normalize_term(t, rules))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Prop::Top => Prop::Top,
        Prop::Bottom => Prop::Bottom,
        Prop::Implies(a, b) => Prop::implies(
            normalize_terms_in_prop(a, rules)?,
            normalize_terms_in_prop(b, rules)?,
        ),
        Prop::And(a, b) => Prop::and(
            normalize_terms_in_prop(a, rules)?,
            normalize_terms_in_prop(b, rules)?,
        ),
        Prop::Or(a, b) => Prop::or(
            normalize_terms_in_prop(a, rules)?,
            normalize_terms_in_prop(b, rules)?,
        ),
        Prop::ForAll(v, body) => Prop::forall(v.clone(), normalize_terms_in_prop(body, rules)?),
        Prop::Exists(v, body) => Prop::exists(v.clone(), normalize_terms_in_prop(body, rules)?),
    })
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// One proposition-rule unfolding of an atom whose arguments are already
/// term-normal.  `None` when no rule matches.
fn unfold_atom(head: &str, args: &[Term], rules: &RuleSet) -> Option<Prop> {
    for rule in &rules.prop_rules {
        if rule.head != head || rule.args.len() != args.len() {
            continue;
        }
        let mut binding = Vec::new();
        if rule
            .args
            .iter()
            .zip(args)
            .all(|(p, s)| match_term(p, s, &mut binding))
        {
            return Some(rule.rhs.substitute_many(&binding));
        }
    }
    None
}

/// Weak head normal form of a proposition with respect to proposition rules:
/// unfold head atoms (after term-normalising their arguments) until the
/// result is a connective or an atom matching no rule.  Connectives are
/// returned unopened.  Each unfolding consumes one unit of fuel.
pub fn whnf_prop(p: &Prop, rules: &RuleSet, fuel: &mut Fuel) -> Result<Prop, RewriteError> {
    let mut current = p.clone();
    loop {
        match &current {
            Prop::Atom(head, args) => {
                let args: Vec<Term> = args
                    .iter()
                    .map(|t| normalize_term(t, rules))
                    .collect::<Result<_, _>>()?;
                match unfold_atom(head, &args, rules) {
                    Some(next) => {
                        fuel.try_consume().map_err(|e| {
                            RewriteError::Fuel(FuelExhausted { consumed: e.consumed })
                        })?;
                        current = next;
                    }
                    None => return Ok(Prop::Atom(head.clone(), args)),
                }
            }
            _ => return Ok(current),
        }
    }
}

/// Decide whether two propositions are congruent modulo the rules.
///
/// Returns `Ok(true)` / `Ok(false)` for definite answers.  `Err` means the
/// unfolding budget ran out while an unfoldable atom was still in play, so
/// neither answer is justified.
pub fn congruent(
    a: &Prop,
    b: &Prop,
    rules: &RuleSet,
    fuel: &mut Fuel,
) -> Result<bool, RewriteError> {
    let mut memo = HashMap::new();
    congruent_inner(a, b, rules, fuel, &mut memo)
}

fn congruent_inner(
    a: &Prop,
    b: &Prop,
    rules: &RuleSet,
    fuel: &mut Fuel,
    memo: &mut HashMap<(String, String), bool>,
) -> Result<bool, RewriteError> {
    if alpha_eq_prop(a, b) {
        return Ok(true);
    }
    // Congruence is symmetric; order the memo key so both directions share
    // an entry.  Only definite answers are cached.
    let (ka, kb) = (canonical_form(a), canonical_form(b));
    let key = if ka <= kb { (ka, kb) } else { (kb, ka) };
    if let Some(&hit) = memo.get(&key) {
        return Ok(hit);
    }
    let result = congruent_uncached(a, b, rules, fuel, memo)?;
    memo.insert(key, result);
    Ok(result)
}

fn congruent_uncached(
    a: &Prop,
    b: &Prop,
    rules: &RuleSet,
    fuel: &mut Fuel,
    memo: &mut HashMap<(String, String), bool>,
) -> Result<bool, RewriteError> {
    use Prop::*;
    match (a, b) {
        (Atom(p, ts), Atom(q, us)) => {
            let ts: Vec<Term> = ts
                .iter()
                .map(|t| normalize_term(t, rules))
                .collect::<Result<_, _>>()?;
            let us: Vec<Term> = us
                .iter()
                .map(|t| normalize_term(t, rules))
                .collect::<Result<_, _>>()?;
            if p == q && ts == us {
                return Ok(true);
            }
            // Heads or arguments disagree: the only hope is unfolding.
            if let Some(a2) = unfold_atom(p, &ts, rules) {
                fuel.try_consume().map_err(RewriteError::Fuel)?;
                return congruent_inner(&a2, &Atom(q.clone(), us), rules, fuel, memo);
            }
            if let Some(b2) = unfold_atom(q, &us, rules) {
                fuel.try_consume().map_err(RewriteError::Fuel)?;
                return congruent_inner(&Atom(p.clone(), ts), &b2, rules, fuel, memo);
            }
            Ok(false)
        }
        (Atom(p, ts), other) | (other, Atom(p, ts)) => {
            let ts: Vec<Term> = ts
                .iter()
                .map(|t| normalize_term(t, rules))
                .collect::<Result<_, _>>()?;
            match unfold_atom(p, &ts, rules) {
                Some(unfolded) => {
                    fuel.try_consume().map_err(RewriteError::Fuel)?;
                    congruent_inner(&unfolded, other, rules, fuel, memo)
                }
                // An irreducible atom is never congruent to a connective:
                // rewriting only replaces atoms, so the head connective of a
                // non-atomic proposition is invariant under the congruence.
                None => Ok(false),
            }
        }
        (Top, Top) | (Bottom, Bottom) => Ok(true),
        (Implies(a1, b1), Implies(a2, b2))
        | (And(a1, b1), And(a2, b2))
        | (Or(a1, b1), Or(a2, b2)) => Ok(congruent_inner(a1, a2, rules, fuel, memo)?
            && congruent_inner(b1, b2, rules, fuel, memo)?),
        (ForAll(v1, b1), ForAll(v2, b2)) | (Exists(v1, b1), Exists(v2, b2)) => {
            if v1.sort != v2.sort {
                return Ok(false);
            }
            // Rename both bodies to a shared fresh variable, then compare.
            let mut avoid = b1.free_vars();
            avoid.extend(b2.free_vars());
            avoid.insert(v1.name.clone());
            avoid.insert(v2.name.clone());
            let fresh = crate::syntax::fresh_name(&v1.name, &avoid);
            let fv = Term::var(Var::new(fresh, v1.sort.clone()));
            let c1 = b1.substitute(&v1.name, &fv);
            let c2 = b2.substitute(&v2.name, &fv);
            congruent_inner(&c1, &c2, rules, fuel, memo)
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;
    use crate::syntax::{MEM, NATP, NULL, PLUS, SUCC, TIMES, ZERO};

    /// Arithmetic term rules plus the Null / N / = proposition rules: the
    /// rule part of the no-axiom presentation, hand-assembled.
    fn rules() -> RuleSet {
        let x = || Term::var(Var::iota("x"));
        let y = || Term::var(Var::iota("y"));
        let z = || Term::var(Var::iota("z"));
        let p = || Var::kappa("p");
        let mut rs = RuleSet::new();
        rs.add_term_rule(TermRule::new("plus-zero", Term::plus(Term::zero(), y()), y()));
        rs.add_term_rule(TermRule::new(
            "plus-succ",
            Term::plus(Term::succ(x()), y()),
            Term::succ(Term::plus(x(), y())),
        ));
        rs.add_term_rule(TermRule::new("times-zero", Term::times(Term::zero(), y()), Term::zero()));
        rs.add_term_rule(TermRule::new(
            "times-succ",
            Term::times(Term::succ(x()), y()),
            Term::plus(Term::times(x(), y()), y()),
        ));
        rs.add_term_rule(TermRule::new("pred-zero", Term::pred(Term::zero()), Term::zero()));
        rs.add_term_rule(TermRule::new("pred-succ", Term::pred(Term::succ(x())), x()));
        rs.add_prop_rule(PropRule::new("null-zero", NULL, vec![Term::zero()], Prop::Top));
        rs.add_prop_rule(PropRule::new(
            "null-succ",
            NULL,
            vec![Term::succ(x())],
            Prop::Bottom,
        ));
        // y = z --> forall p. y in p => z in p
        rs.add_prop_rule(PropRule::new(
            "eq",
            "=",
            vec![y(), z()],
            Prop::forall(
                p(),
                Prop::implies(
                    Prop::mem(y(), Term::var(p())),
                    Prop::mem(z(), Term::var(p())),
                ),
            ),
        ));
        // N(n) --> forall p. 0 in p => (forall y. N(y) => y in p => S(y) in p) => n in p
        let n = || Term::var(Var::iota("n"));
        rs.add_prop_rule(PropRule::new(
            "nat",
            NATP,
            vec![n()],
            Prop::forall(
                p(),
                Prop::implies(
                    Prop::mem(Term::zero(), Term::var(p())),
                    Prop::implies(
                        Prop::forall(
                            Var::iota("y"),
                            Prop::implies(
                                Prop::atom(NATP, vec![y()]),
                                Prop::implies(
                                    Prop::mem(y(), Term::var(p())),
                                    Prop::mem(Term::succ(y()), Term::var(p())),
                                ),
                            ),
                        ),
                        Prop::mem(n(), Term::var(p())),
                    ),
                ),
            ),
        ));
        rs
    }

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_sort(Sort::iota());
        s.declare_sort(Sort::kappa());
        s.declare_function(ZERO, vec![], Sort::iota()).unwrap();
        s.declare_function(SUCC, vec![Sort::iota()], Sort::iota()).unwrap();
        s.declare_function(PLUS, vec![Sort::iota(), Sort::iota()], Sort::iota()).unwrap();
        s.declare_function(TIMES, vec![Sort::iota(), Sort::iota()], Sort::iota()).unwrap();
        s.declare_function("Pred", vec![Sort::iota()], Sort::iota()).unwrap();
        s.declare_predicate("=", vec![Sort::iota(), Sort::iota()]).unwrap();
        s.declare_predicate(NULL, vec![Sort::iota()]).unwrap();
        s.declare_predicate(NATP, vec![Sort::iota()]).unwrap();
        s.declare_predicate(MEM, vec![Sort::iota(), Sort::kappa()]).unwrap();
        s
    }

    #[test]
    fn rules_validate() {
        rules().validate(&sig()).unwrap();
    }

    #[test]
    fn nonterminating_flag_tracks_self_reference() {
        let rs = rules();
        assert!(rs.contains_nonterminating(), "the N rule mentions N on its right");
        let mut plain = RuleSet::new();
        plain.add_prop_rule(PropRule::new("null-zero", NULL, vec![Term::zero()], Prop::Top));
        assert!(!plain.contains_nonterminating());
    }

    #[test]
    fn term_normalisation_computes_arithmetic() {
        let rs = rules();
        let y = Term::var(Var::iota("y"));
        assert_eq!(
            normalize_term(&Term::plus(Term::zero(), y.clone()), &rs).unwrap(),
            y
        );
        assert_eq!(
            normalize_term(&Term::times(Term::numeral(2), Term::numeral(2)), &rs).unwrap(),
            Term::numeral(4)
        );
        assert_eq!(
            normalize_term(&Term::pred(Term::succ(Term::var(Var::iota("x")))), &rs).unwrap(),
            Term::var(Var::iota("x"))
        );
        // Open terms normalise as far as the rules allow.
        let open = Term::plus(Term::var(Var::iota("x")), Term::numeral(1));
        assert_eq!(normalize_term(&open, &rs).unwrap(), open);
    }

    #[test]
    fn numerals_match_machine_arithmetic() {
        let rs = rules();
        for a in 0..=8u64 {
            for b in 0..=8u64 {
                let sum = normalize_term(&Term::plus(Term::numeral(a), Term::numeral(b)), &rs)
                    .unwrap();
                assert_eq!(sum.as_numeral(), Some(a + b), "{a} + {b}");
                let prod = normalize_term(&Term::times(Term::numeral(a), Term::numeral(b)), &rs)
                    .unwrap();
                assert_eq!(prod.as_numeral(), Some(a * b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn normalize_is_idempotent() {
        let rs = rules();
        let t = Term::times(
            Term::plus(Term::numeral(3), Term::var(Var::iota("x"))),
            Term::numeral(2),
        );
        let n1 = normalize_term(&t, &rs).unwrap();
        let n2 = normalize_term(&n1, &rs).unwrap();
        assert_eq!(n1, n2);
    }

    #[test]
    fn looping_user_rules_hit_the_step_cap() {
        let mut rs = RuleSet::new();
        // f(x) --> f(x): loops forever at the root.
        let fx = Term::app("f", vec![Term::var(Var::iota("x"))]);
        rs.add_term_rule(TermRule::new("loop", fx.clone(), fx.clone()));
        assert_eq!(
            normalize_term(&Term::app("f", vec![Term::zero()]), &rs),
            Err(RuleError::TermStepCap)
        );
    }

    #[test]
    fn whnf_unfolds_through_chains_of_atoms() {
        let rs = rules();
        let mut fuel = Fuel::default();
        // Null(0) --> true
        let w = whnf_prop(&Prop::atom(NULL, vec![Term::zero()]), &rs, &mut fuel).unwrap();
        assert_eq!(w, Prop::Top);
        // Null(S(0)) --> false
        let w = whnf_prop(&Prop::atom(NULL, vec![Term::numeral(1)]), &rs, &mut fuel).unwrap();
        assert_eq!(w, Prop::Bottom);
        // Null(0 + 0): the argument normalises first, then the rule fires.
        let w = whnf_prop(
            &Prop::atom(NULL, vec![Term::plus(Term::zero(), Term::zero())]),
            &rs,
            &mut fuel,
        )
        .unwrap();
        assert_eq!(w, Prop::Top);
        // N(0) unfolds to the forall form; connectives are not opened further.
        let w = whnf_prop(&Prop::atom(NATP, vec![Term::zero()]), &rs, &mut fuel).unwrap();
        assert!(matches!(w, Prop::ForAll(_, _)));
        // An atom matching no rule is returned with normalised arguments.
        let w = whnf_prop(
            &Prop::mem(Term::plus(Term::zero(), Term::zero()), Term::var(Var::kappa("p"))),
            &rs,
            &mut fuel,
        )
        .unwrap();
        assert_eq!(w, Prop::mem(Term::zero(), Term::var(Var::kappa("p"))));
    }

    #[test]
    fn whnf_fuel_is_only_spent_on_unfolding() {
        let rs = rules();
        let mut fuel = Fuel::new(10);
        let big = Term::times(Term::numeral(8), Term::numeral(8));
        let w = whnf_prop(&Prop::mem(big, Term::var(Var::kappa("p"))), &rs, &mut fuel).unwrap();
        assert_eq!(fuel.consumed(), 0, "term normalisation costs no fuel");
        assert_eq!(w, Prop::mem(Term::numeral(64), Term::var(Var::kappa("p"))));
    }

    #[test]
    fn congruent_computes_in_terms() {
        let rs = rules();
        let mut fuel = Fuel::default();
        // 2 * 2 = 4  ~  4 = 4
        let a = Prop::eq(Term::times(Term::numeral(2), Term::numeral(2)), Term::numeral(4));
        let b = Prop::eq(Term::numeral(4), Term::numeral(4));
        assert_eq!(congruent(&a, &b, &rs, &mut fuel).unwrap(), true);
        // and in one step of unfolding: 2 * 2 = 4 against the forall form.
        let unfolded = Prop::forall(
            Var::kappa("q"),
            Prop::implies(
                Prop::mem(Term::numeral(4), Term::var(Var::kappa("q"))),
                Prop::mem(Term::numeral(4), Term::var(Var::kappa("q"))),
            ),
        );
        assert_eq!(congruent(&a, &unfolded, &rs, &mut fuel).unwrap(), true);
    }

    #[test]
    fn congruent_distinguishes_distinct_numerals() {
        let rs = rules();
        // 0 = 0 vs 0 = S(0): both unfold to forall forms that differ at an
        // irreducible membership atom, so the answer is a definite `false`.
        let mut fuel = Fuel::default();
        let a = Prop::eq(Term::zero(), Term::zero());
        let b = Prop::eq(Term::zero(), Term::numeral(1));
        assert_eq!(congruent(&a, &b, &rs, &mut fuel).unwrap(), false);
        assert!(fuel.consumed() > 0, "deciding this requires unfolding =");
    }

    #[test]
    fn congruent_is_reflexive_and_symmetric_on_samples() {
        let rs = rules();
        let samples = vec![
            Prop::eq(Term::numeral(3), Term::plus(Term::numeral(1), Term::numeral(2))),
            Prop::atom(NATP, vec![Term::zero()]),
            Prop::forall(Var::iota("x"), Prop::eq(Term::var(Var::iota("x")), Term::var(Var::iota("x")))),
            Prop::implies(Prop::Top, Prop::atom(NULL, vec![Term::zero()])),
        ];
        for p in &samples {
            let mut fuel = Fuel::default();
            assert_eq!(congruent(p, p, &rs, &mut fuel).unwrap(), true);
        }
        for p in &samples {
            for q in &samples {
                let mut f1 = Fuel::default();
                let mut f2 = Fuel::default();
                let pq = congruent(p, q, &rs, &mut f1).unwrap();
                let qp = congruent(q, p, &rs, &mut f2).unwrap();
                assert_eq!(pq, qp);
            }
        }
    }

    #[test]
    fn congruent_closes_under_connectives() {
        let rs = rules();
        let a = Prop::eq(Term::times(Term::numeral(2), Term::numeral(2)), Term::numeral(4));
        let b = Prop::eq(Term::numeral(4), Term::numeral(4));
        let mut fuel = Fuel::default();
        let lhs = Prop::implies(a.clone(), Prop::and(a.clone(), Prop::Top));
        let rhs = Prop::implies(b.clone(), Prop::and(b.clone(), Prop::Top));
        assert_eq!(congruent(&lhs, &rhs, &rs, &mut fuel).unwrap(), true);
        // Under a quantifier with different bound names.
        let mut fuel = Fuel::default();
        let qa = Prop::forall(Var::iota("x"), Prop::implies(a.clone(), Prop::Top));
        let qb = Prop::forall(Var::iota("z"), Prop::implies(b.clone(), Prop::Top));
        assert_eq!(congruent(&qa, &qb, &rs, &mut fuel).unwrap(), true);
    }

    #[test]
    fn congruent_rejects_distinct_connectives() {
        let rs = rules();
        let mut fuel = Fuel::default();
        let a = Prop::and(Prop::Top, Prop::Top);
        let b = Prop::or(Prop::Top, Prop::Top);
        assert_eq!(congruent(&a, &b, &rs, &mut fuel).unwrap(), false);
        // Irreducible atom vs connective is definitely false, fuel untouched.
        let mut fuel = Fuel::default();
        let c = Prop::mem(Term::zero(), Term::var(Var::kappa("p")));
        assert_eq!(congruent(&c, &a, &rs, &mut fuel).unwrap(), false);
        assert_eq!(fuel.consumed(), 0);
    }

    #[test]
    fn fuel_exhaustion_is_a_third_answer() {
        let rs = rules();
        // With zero fuel, deciding 0 = 0 against 0 = S(0) needs an unfolding
        // that is not available: the verdict must be an error, not `false`.
        let a = Prop::eq(Term::zero(), Term::zero());
        let b = Prop::eq(Term::zero(), Term::numeral(1));
        let mut fuel = Fuel::new(0);
        assert!(matches!(
            congruent(&a, &b, &rs, &mut fuel),
            Err(RewriteError::Fuel(_))
        ));
        // More fuel can only turn errors into answers, never flip answers.
        let mut plenty = Fuel::new(10_000);
        assert_eq!(congruent(&a, &b, &rs, &mut plenty).unwrap(), false);
    }

    #[test]
    fn sort_annotations_matter_for_quantifier_congruence() {
        let rs = rules();
        let mut fuel = Fuel::default();
        let pi = Prop::forall(Var::iota("x"), Prop::Top);
        let pk = Prop::forall(Var::kappa("x"), Prop::Top);
        assert_eq!(congruent(&pi, &pk, &rs, &mut fuel).unwrap(), false);
    }
}
