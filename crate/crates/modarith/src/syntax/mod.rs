//! Core syntax: sorts, terms, propositions and many-sorted signatures.
//!
//! Terms are first-order (variables and applications); propositions are the
//! usual intuitionistic connectives over atomic formulas.  Variables carry
//! their sort so terms are self-describing; well-sortedness against a
//! [`Signature`] is checked separately and also enforces that every occurrence
//! of a variable name agrees on its sort.

mod comprehension;
mod display;
mod prop;
mod subst;

pub use comprehension::{
    ComprehensionError, ComprehensionKey, ComprehensionRegistry, ComprehensionSymbol,
};
pub use prop::Prop;
pub use subst::{alpha_eq_prop, alpha_eq_term, canonical_form, fresh_name, FreshNames};
pub(crate) use subst::{canon_prop, canon_term};

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A sort (base type) of the first-order term language.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sort(pub String);

impl Sort {
    pub fn new(name: impl Into<String>) -> Self {
        Sort(name.into())
    }

    /// The sort of individuals (natural numbers).
    pub fn iota() -> Self {
        Sort::new(IOTA)
    }

    /// The sort of classes / codes.
    pub fn kappa() -> Self {
        Sort::new(KAPPA)
    }

    /// Placeholder used by the parser before sort resolution.
    pub(crate) fn unknown() -> Self {
        Sort::new("_")
    }

    pub(crate) fn is_unknown(&self) -> bool {
        self.0 == "_"
    }
}

pub const IOTA: &str = "iota";
pub const KAPPA: &str = "kappa";

// Names of the built-in function and predicate symbols.  Symbolic names are
// rendered infix by the printer and recognised specially by the lexer.
pub const ZERO: &str = "0";
pub const SUCC: &str = "S";
pub const PLUS: &str = "+";
pub const TIMES: &str = "*";
pub const PRED_FN: &str = "Pred";
pub const EQ: &str = "=";
pub const NULL: &str = "Null";
pub const NATP: &str = "N";
pub const MEM: &str = "in";
pub const NAT_CODE: &str = "nat";
pub const ARROW: &str = "->";
pub const EPS: &str = "eps";

/// A term variable.  Equality includes the sort; binding and substitution act
/// on the name alone, and well-sortedness rejects one name used at two sorts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: Sort) -> Self {
        Var { name: name.into(), sort }
    }

    pub fn iota(name: impl Into<String>) -> Self {
        Var::new(name, Sort::iota())
    }

    pub fn kappa(name: impl Into<String>) -> Self {
        Var::new(name, Sort::kappa())
    }
}

/// First-order terms: variables and applications of function symbols.
/// Constants are nullary applications.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(v: Var) -> Self {
        Term::Var(v)
    }

    pub fn app(f: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(f.into(), args)
    }

    pub fn constant(f: impl Into<String>) -> Self {
        Term::App(f.into(), Vec::new())
    }

    pub fn zero() -> Self {
        Term::constant(ZERO)
    }

    pub fn succ(t: Term) -> Self {
        Term::app(SUCC, vec![t])
    }

    pub fn plus(a: Term, b: Term) -> Self {
        Term::app(PLUS, vec![a, b])
    }

    pub fn times(a: Term, b: Term) -> Self {
        Term::app(TIMES, vec![a, b])
    }

    pub fn pred(t: Term) -> Self {
        Term::app(PRED_FN, vec![t])
    }

    pub fn arrow(a: Term, b: Term) -> Self {
        Term::app(ARROW, vec![a, b])
    }

    /// The numeral `S^n(0)`.
    pub fn numeral(n: u64) -> Self {
        let mut t = Term::zero();
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    /// Inverse of [`Term::numeral`]: `Some(n)` iff the term is `S^n(0)`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::App(f, args) if f == SUCC && args.len() == 1 => {
                    n += 1;
                    t = &args[0];
                }
                Term::App(f, args) if f == ZERO && args.is_empty() => return Some(n),
                _ => return None,
            }
        }
    }

    /// Free variable names (terms have no binders, so: all variable names).
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.name.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// All variables with their sorts, in first-occurrence order.
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.vars_in_order_into(&mut out);
        out
    }

    fn vars_in_order_into(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|w| w.name == v.name) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => {
                for a in args {
                    a.vars_in_order_into(out);
                }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

/// Rank of a function symbol: argument sorts and result sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunRank {
    pub args: Vec<Sort>,
    pub result: Sort,
}

/// Rank of a predicate symbol: argument sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredRank {
    pub args: Vec<Sort>,
}

/// A many-sorted first-order signature.  Function and predicate namespaces are
/// disjoint from each other; every sort used in a rank must be declared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeSet<Sort>,
    functions: BTreeMap<String, FunRank>,
    predicates: BTreeMap<String, PredRank>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SortError {
    #[error("sort `{0}` is not declared")]
    UnknownSort(String),
    #[error("function symbol `{0}` is not declared")]
    UnknownFunction(String),
    #[error("predicate symbol `{0}` is not declared")]
    UnknownPredicate(String),
    #[error("symbol `{0}` is already declared")]
    Redeclared(String),
    #[error("`{symbol}` expects {expected} argument(s), got {got}")]
    Arity { symbol: String, expected: usize, got: usize },
    #[error("expected sort `{expected}` but `{context}` has sort `{got}`")]
    Mismatch { context: String, expected: String, got: String },
    #[error("variable `{name}` is used at sort `{first}` and at sort `{second}`")]
    InconsistentVariable { name: String, first: String, second: String },
    #[error("cannot determine the sort of variable `{0}`")]
    UnresolvedVariable(String),
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare_sort(&mut self, sort: Sort) {
        self.sorts.insert(sort);
    }

    pub fn declare_function(
        &mut self,
        name: impl Into<String>,
        args: Vec<Sort>,
        result: Sort,
    ) -> Result<(), SortError> {
        let name = name.into();
        for s in args.iter().chain(std::iter::once(&result)) {
            if !self.sorts.contains(s) {
                return Err(SortError::UnknownSort(s.0.clone()));
            }
        }
        if self.functions.contains_key(&name) {
            return Err(SortError::Redeclared(name));
        }
        self.functions.insert(name, FunRank { args, result });
        Ok(())
    }

    pub fn declare_predicate(
        &mut self,
        name: impl Into<String>,
        args: Vec<Sort>,
    ) -> Result<(), SortError> {
        let name = name.into();
        for s in &args {
            if !self.sorts.contains(s) {
                return Err(SortError::UnknownSort(s.0.clone()));
            }
        }
        if self.predicates.contains_key(&name) {
            return Err(SortError::Redeclared(name));
        }
        self.predicates.insert(name, PredRank { args });
        Ok(())
    }

    pub fn has_sort(&self, sort: &Sort) -> bool {
        self.sorts.contains(sort)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.iter()
    }

    pub fn function(&self, name: &str) -> Option<&FunRank> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&PredRank> {
        self.predicates.get(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&String, &FunRank)> {
        self.functions.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &PredRank)> {
        self.predicates.iter()
    }

    /// Sort of a well-formed term, or the first sort error found.
    /// Variable sorts are taken from the variables themselves; consistency of
    /// like-named variables is the business of [`Signature::check_prop`].
    pub fn sort_of_term(&self, t: &Term) -> Result<Sort, SortError> {
        match t {
            Term::Var(v) => {
                if !self.sorts.contains(&v.sort) {
                    return Err(SortError::UnknownSort(v.sort.0.clone()));
                }
                Ok(v.sort.clone())
            }
            Term::App(f, args) => {
                let rank = self
                    .functions
                    .get(f)
                    .ok_or_else(|| SortError::UnknownFunction(f.clone()))?;
                if rank.args.len() != args.len() {
                    return Err(SortError::Arity {
                        symbol: f.clone(),
                        expected: rank.args.len(),
                        got: args.len(),
                    });
                }
                for (arg, want) in args.iter().zip(&rank.args) {
                    let got = self.sort_of_term(arg)?;
                    if got != *want {
                        return Err(SortError::Mismatch {
                            context: arg.to_string(),
                            expected: want.0.clone(),
                            got: got.0,
                        });
                    }
                }
                Ok(rank.result.clone())
            }
        }
    }

    /// Check a term and require a particular sort.
    pub fn check_term(&self, t: &Term, want: &Sort) -> Result<(), SortError> {
        let got = self.sort_of_term(t)?;
        if got != *want {
            return Err(SortError::Mismatch {
                context: t.to_string(),
                expected: want.0.clone(),
                got: got.0,
            });
        }
        Ok(())
    }

    /// Well-sortedness of a proposition.  Also enforces that each variable
    /// name is used at a single sort within its scope.
    pub fn check_prop(&self, p: &Prop) -> Result<(), SortError> {
        let mut free: BTreeMap<String, Sort> = BTreeMap::new();
        self.check_prop_inner(p, &mut Vec::new(), &mut free)
    }

    fn check_prop_inner(
        &self,
        p: &Prop,
        bound: &mut Vec<(String, Sort)>,
        free: &mut BTreeMap<String, Sort>,
    ) -> Result<(), SortError> {
        match p {
            Prop::Atom(name, args) => {
                let rank = self
                    .predicates
                    .get(name)
                    .ok_or_else(|| SortError::UnknownPredicate(name.clone()))?;
                if rank.args.len() != args.len() {
                    return Err(SortError::Arity {
                        symbol: name.clone(),
                        expected: rank.args.len(),
                        got: args.len(),
                    });
                }
                for (arg, want) in args.iter().zip(&rank.args) {
                    self.check_term_vars(arg, want, bound, free)?;
                }
                Ok(())
            }
            Prop::Top | Prop::Bottom => Ok(()),
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                self.check_prop_inner(a, bound, free)?;
                self.check_prop_inner(b, bound, free)
            }
            Prop::ForAll(v, body) | Prop::Exists(v, body) => {
                if !self.sorts.contains(&v.sort) {
                    return Err(SortError::UnknownSort(v.sort.0.clone()));
                }
                bound.push((v.name.clone(), v.sort.clone()));
                let r = self.check_prop_inner(body, bound, free);
                bound.pop();
                r
            }
        }
    }

    fn check_term_vars(
        &self,
        t: &Term,
        want: &Sort,
        bound: &[(String, Sort)],
        free: &mut BTreeMap<String, Sort>,
    ) -> Result<(), SortError> {
        match t {
            Term::Var(v) => {
                let recorded = bound
                    .iter()
                    .rev()
                    .find(|(n, _)| *n == v.name)
                    .map(|(_, s)| s.clone());
                match recorded {
                    Some(s) => {
                        if s != v.sort {
                            return Err(SortError::InconsistentVariable {
                                name: v.name.clone(),
                                first: s.0,
                                second: v.sort.0.clone(),
                            });
                        }
                    }
                    None => {
                        if let Some(s) = free.get(&v.name) {
                            if *s != v.sort {
                                return Err(SortError::InconsistentVariable {
                                    name: v.name.clone(),
                                    first: s.0.clone(),
                                    second: v.sort.0.clone(),
                                });
                            }
                        } else {
                            free.insert(v.name.clone(), v.sort.clone());
                        }
                    }
                }
                if v.sort != *want {
                    return Err(SortError::Mismatch {
                        context: v.name.clone(),
                        expected: want.0.clone(),
                        got: v.sort.0.clone(),
                    });
                }
                Ok(())
            }
            Term::App(f, args) => {
                let rank = self
                    .functions
                    .get(f)
                    .ok_or_else(|| SortError::UnknownFunction(f.clone()))?;
                if rank.args.len() != args.len() {
                    return Err(SortError::Arity {
                        symbol: f.clone(),
                        expected: rank.args.len(),
                        got: args.len(),
                    });
                }
                if rank.result != *want {
                    return Err(SortError::Mismatch {
                        context: t.to_string(),
                        expected: want.0.clone(),
                        got: rank.result.0.clone(),
                    });
                }
                for (arg, w) in args.iter().zip(&rank.args) {
                    self.check_term_vars(arg, w, bound, free)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arith_sig() -> Signature {
        let mut sig = Signature::new();
        sig.declare_sort(Sort::iota());
        sig.declare_function(ZERO, vec![], Sort::iota()).unwrap();
        sig.declare_function(SUCC, vec![Sort::iota()], Sort::iota()).unwrap();
        sig.declare_function(PLUS, vec![Sort::iota(), Sort::iota()], Sort::iota()).unwrap();
        sig.declare_predicate(EQ, vec![Sort::iota(), Sort::iota()]).unwrap();
        sig
    }

    #[test]
    fn numeral_round_trip() {
        for n in 0..40 {
            assert_eq!(Term::numeral(n).as_numeral(), Some(n));
        }
        assert_eq!(Term::numeral(3), Term::succ(Term::succ(Term::succ(Term::zero()))));
        let open = Term::succ(Term::var(Var::iota("x")));
        assert_eq!(open.as_numeral(), None);
    }

    #[test]
    fn sorts_of_terms() {
        let sig = arith_sig();
        let t = Term::plus(Term::numeral(2), Term::var(Var::iota("x")));
        assert_eq!(sig.sort_of_term(&t).unwrap(), Sort::iota());
        let bad = Term::app(SUCC, vec![Term::numeral(1), Term::numeral(2)]);
        assert!(matches!(sig.sort_of_term(&bad), Err(SortError::Arity { .. })));
        let unknown = Term::app("f", vec![]);
        assert!(matches!(sig.sort_of_term(&unknown), Err(SortError::UnknownFunction(_))));
    }

    #[test]
    fn prop_wellsortedness_rejects_mixed_variable_sorts() {
        let mut sig = arith_sig();
        sig.declare_sort(Sort::kappa());
        sig.declare_predicate(MEM, vec![Sort::iota(), Sort::kappa()]).unwrap();
        // x used at iota (lhs of =) and again at kappa (rhs of `in`).
        let bad = Prop::and(
            Prop::eq(Term::var(Var::iota("x")), Term::zero()),
            Prop::atom(MEM, vec![Term::zero(), Term::var(Var::kappa("x"))]),
        );
        assert!(matches!(
            sig.check_prop(&bad),
            Err(SortError::InconsistentVariable { .. })
        ));
    }

    #[test]
    fn bound_variable_shadows_consistently() {
        let sig = arith_sig();
        let p = Prop::forall(
            Var::iota("x"),
            Prop::eq(Term::var(Var::iota("x")), Term::var(Var::iota("x"))),
        );
        sig.check_prop(&p).unwrap();
        // Binder declares iota but the body uses the name at a different sort.
        let mut sig2 = sig.clone();
        sig2.declare_sort(Sort::kappa());
        sig2.declare_predicate("P", vec![Sort::kappa()]).unwrap();
        let bad = Prop::forall(Var::iota("x"), Prop::atom("P", vec![Term::var(Var::kappa("x"))]));
        assert!(sig2.check_prop(&bad).is_err());
    }
}
