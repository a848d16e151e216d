//! Propositions of intuitionistic predicate logic.

use super::{Term, Var, EQ, MEM};
use std::collections::BTreeSet;

/// A proposition.  Negation is not primitive: `~A` abbreviates `A => false`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Atom(String, Vec<Term>),
    Top,
    Bottom,
    Implies(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    ForAll(Var, Box<Prop>),
    Exists(Var, Box<Prop>),
}

impl Prop {
    pub fn atom(name: impl Into<String>, args: Vec<Term>) -> Self {
        Prop::Atom(name.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Prop::atom(EQ, vec![a, b])
    }

    pub fn mem(t: Term, class: Term) -> Self {
        Prop::atom(MEM, vec![t, class])
    }

    pub fn implies(a: Prop, b: Prop) -> Self {
        Prop::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Prop, b: Prop) -> Self {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Self {
        Prop::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: Prop) -> Self {
        Prop::implies(a, Prop::Bottom)
    }

    /// `A <=> B` as the conjunction of the two implications.
    pub fn iff(a: Prop, b: Prop) -> Self {
        Prop::and(Prop::implies(a.clone(), b.clone()), Prop::implies(b, a))
    }

    pub fn forall(v: Var, body: Prop) -> Self {
        Prop::ForAll(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Prop) -> Self {
        Prop::Exists(v, Box::new(body))
    }

    pub fn forall_many(vars: impl IntoIterator<Item = Var>, body: Prop) -> Self {
        let vars: Vec<_> = vars.into_iter().collect();
        vars.into_iter().rev().fold(body, |acc, v| Prop::forall(v, acc))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Prop::Atom(..))
    }

    /// Free term-variable names.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Prop::Atom(_, args) => {
                for t in args {
                    for v in t.free_vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Prop::Top | Prop::Bottom => {}
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Prop::ForAll(v, body) | Prop::Exists(v, body) => {
                bound.push(v.name.clone());
                body.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables together with their sorts, in first-occurrence order.
    pub fn free_vars_sorted(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.free_vars_sorted_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_vars_sorted_into(&self, bound: &mut Vec<String>, out: &mut Vec<Var>) {
        match self {
            Prop::Atom(_, args) => {
                for t in args {
                    for v in t.vars_in_order() {
                        if !bound.contains(&v.name) && !out.iter().any(|w| w.name == v.name) {
                            out.push(v);
                        }
                    }
                }
            }
            Prop::Top | Prop::Bottom => {}
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.free_vars_sorted_into(bound, out);
                b.free_vars_sorted_into(bound, out);
            }
            Prop::ForAll(v, body) | Prop::Exists(v, body) => {
                bound.push(v.name.clone());
                body.free_vars_sorted_into(bound, out);
                bound.pop();
            }
        }
    }

    /// Names of predicate symbols occurring in the proposition.
    pub fn predicate_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |name, _| {
            out.insert(name.to_string());
        });
        out
    }

    /// Names of function symbols occurring in the proposition.
    pub fn function_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |_, args| {
            for t in args {
                collect_fun_symbols(t, &mut out);
            }
        });
        out
    }

    pub(crate) fn walk_atoms(&self, f: &mut impl FnMut(&str, &[Term])) {
        match self {
            Prop::Atom(name, args) => f(name, args),
            Prop::Top | Prop::Bottom => {}
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.walk_atoms(f);
                b.walk_atoms(f);
            }
            Prop::ForAll(_, body) | Prop::Exists(_, body) => body.walk_atoms(f),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Prop::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Prop::Top | Prop::Bottom => 1,
            Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => 1 + a.size() + b.size(),
            Prop::ForAll(_, body) | Prop::Exists(_, body) => 1 + body.size(),
        }
    }
}

fn collect_fun_symbols(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(_) => {}
        Term::App(f, args) => {
            out.insert(f.clone());
            for a in args {
                collect_fun_symbols(a, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Sort;

    #[test]
    fn free_vars_respect_binders() {
        let x = Var::iota("x");
        let y = Var::iota("y");
        let p = Prop::forall(
            x.clone(),
            Prop::eq(Term::var(x.clone()), Term::var(y.clone())),
        );
        let fv = p.free_vars();
        assert!(fv.contains("y"));
        assert!(!fv.contains("x"));
        assert_eq!(p.free_vars_sorted(), vec![y]);
    }

    #[test]
    fn symbol_collection() {
        let p = Prop::implies(
            Prop::eq(Term::plus(Term::zero(), Term::var(Var::iota("y"))), Term::numeral(1)),
            Prop::atom("Q", vec![]),
        );
        let preds = p.predicate_symbols();
        assert!(preds.contains("=") && preds.contains("Q"));
        let funs = p.function_symbols();
        assert!(funs.contains("+") && funs.contains("0") && funs.contains("S"));
    }

    #[test]
    fn iff_desugars_to_two_implications() {
        let a = Prop::atom("A", vec![]);
        let b = Prop::atom("B", vec![]);
        let p = Prop::iff(a.clone(), b.clone());
        assert_eq!(
            p,
            Prop::and(Prop::implies(a.clone(), b.clone()), Prop::implies(b, a))
        );
    }

    #[test]
    fn forall_many_nests_left_to_right() {
        let p = Prop::forall_many(
            [Var::iota("x"), Var::kappa("p")],
            Prop::Top,
        );
        match p {
            Prop::ForAll(v1, body) => {
                assert_eq!(v1.name, "x");
                assert_eq!(v1.sort, Sort::iota());
                match *body {
                    Prop::ForAll(v2, _) => assert_eq!(v2.name, "p"),
                    _ => panic!("expected nested forall"),
                }
            }
            _ => panic!("expected forall"),
        }
    }
}
