//! Capture-avoiding substitution, α-equivalence and canonical forms.

use super::{Prop, Term, Var};
use std::collections::BTreeSet;

/// Produces names that are fresh with respect to a set of used names, by
/// priming the requested base name until it is free.
#[derive(Debug, Default)]
pub struct FreshNames {
    used: BTreeSet<String>,
}

impl FreshNames {
    pub fn avoiding(names: impl IntoIterator<Item = String>) -> Self {
        FreshNames { used: names.into_iter().collect() }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let name = fresh_name(base, &self.used);
        self.used.insert(name.clone());
        name
    }
}

/// The base name, primed as many times as needed to avoid `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    let mut candidate = format!("{base}'");
    while used.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

impl Term {
    /// `(t/x)self`: replace every occurrence of the variable named `x`.
    /// Terms have no binders so no capture can occur here.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v.name == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }

    /// Simultaneous substitution, used when instantiating rewrite rules.
    pub fn substitute_many(&self, subst: &[(String, Term)]) -> Term {
        match self {
            Term::Var(v) => subst
                .iter()
                .find(|(n, _)| *n == v.name)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute_many(subst)).collect())
            }
        }
    }
}

impl Prop {
    /// Capture-avoiding `(t/x)self`.  Binders whose name occurs free in `t`
    /// are renamed (primed) before descending.
    pub fn substitute(&self, x: &str, t: &Term) -> Prop {
        match self {
            Prop::Atom(p, args) => {
                Prop::Atom(p.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
            Prop::Top => Prop::Top,
            Prop::Bottom => Prop::Bottom,
            Prop::Implies(a, b) => Prop::implies(a.substitute(x, t), b.substitute(x, t)),
            Prop::And(a, b) => Prop::and(a.substitute(x, t), b.substitute(x, t)),
            Prop::Or(a, b) => Prop::or(a.substitute(x, t), b.substitute(x, t)),
            Prop::ForAll(v, body) => {
                if v.name == x {
                    return self.clone();
                }
                let (v2, body2) = rebind(v, body, x, t);
                Prop::forall(v2, body2.substitute(x, t))
            }
            Prop::Exists(v, body) => {
                if v.name == x {
                    return self.clone();
                }
                let (v2, body2) = rebind(v, body, x, t);
                Prop::exists(v2, body2.substitute(x, t))
            }
        }
    }

    /// Simultaneous substitution for several variables at once (used when
    /// instantiating proposition rewrite rules, whose patterns are linear).
    pub fn substitute_many(&self, subst: &[(String, Term)]) -> Prop {
        match self {
            Prop::Atom(p, args) => {
                Prop::Atom(p.clone(), args.iter().map(|a| a.substitute_many(subst)).collect())
            }
            Prop::Top => Prop::Top,
            Prop::Bottom => Prop::Bottom,
            Prop::Implies(a, b) => {
                Prop::implies(a.substitute_many(subst), b.substitute_many(subst))
            }
            Prop::And(a, b) => Prop::and(a.substitute_many(subst), b.substitute_many(subst)),
            Prop::Or(a, b) => Prop::or(a.substitute_many(subst), b.substitute_many(subst)),
            Prop::ForAll(v, body) => {
                let (v2, body2, filtered) = rebind_many(v, body, subst);
                Prop::forall(v2, body2.substitute_many(&filtered))
            }
            Prop::Exists(v, body) => {
                let (v2, body2, filtered) = rebind_many(v, body, subst);
                Prop::exists(v2, body2.substitute_many(&filtered))
            }
        }
    }

    /// Rename the bound variable of the outermost quantifier if needed so the
    /// body can be taken at name `x` without capture.  Returns `None` when
    /// `self` is not a quantifier of the given kind.
    pub fn open_binder(&self) -> Option<(&Var, &Prop)> {
        match self {
            Prop::ForAll(v, body) | Prop::Exists(v, body) => Some((v, body)),
            _ => None,
        }
    }
}

/// Rename the binder away from the free variables of `t`.  The caller has
/// already handled the shadowing case `v.name == x`.
fn rebind(v: &Var, body: &Prop, x: &str, t: &Term) -> (Var, Prop) {
    if t.free_vars().contains(&v.name) {
        let mut avoid = body.free_vars();
        avoid.extend(t.free_vars());
        avoid.insert(x.to_string());
        let fresh = fresh_name(&v.name, &avoid);
        let v2 = Var::new(fresh.clone(), v.sort.clone());
        let body2 = body.substitute(&v.name, &Term::var(v2.clone()));
        (v2, body2)
    } else {
        (v.clone(), body.clone())
    }
}

fn rebind_many(
    v: &Var,
    body: &Prop,
    subst: &[(String, Term)],
) -> (Var, Prop, Vec<(String, Term)>) {
    let filtered: Vec<(String, Term)> =
        subst.iter().filter(|(n, _)| *n != v.name).cloned().collect();
    let clash = filtered.iter().any(|(_, t)| t.free_vars().contains(&v.name));
    if clash {
        let mut avoid = body.free_vars();
        for (n, t) in &filtered {
            avoid.insert(n.clone());
            avoid.extend(t.free_vars());
        }
        let fresh = fresh_name(&v.name, &avoid);
        let v2 = Var::new(fresh, v.sort.clone());
        let body2 = body.substitute(&v.name, &Term::var(v2.clone()));
        (v2, body2, filtered)
    } else {
        (v.clone(), body.clone(), filtered)
    }
}

/// α-equivalence of terms is plain equality (no binders), but the comparison
/// is exposed for symmetry with propositions.
pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    a == b
}

/// α-equivalence of propositions: equality up to renaming of bound variables.
/// Bound sorts must agree; free variables must match exactly.
pub fn alpha_eq_prop(a: &Prop, b: &Prop) -> bool {
    alpha_eq_inner(a, b, &mut Vec::new())
}

fn alpha_eq_inner(a: &Prop, b: &Prop, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Prop::Atom(p, ts), Prop::Atom(q, us)) => {
            p == q && ts.len() == us.len() && ts.iter().zip(us).all(|(t, u)| term_eq(t, u, env))
        }
        (Prop::Top, Prop::Top) | (Prop::Bottom, Prop::Bottom) => true,
        (Prop::Implies(a1, b1), Prop::Implies(a2, b2))
        | (Prop::And(a1, b1), Prop::And(a2, b2))
        | (Prop::Or(a1, b1), Prop::Or(a2, b2)) => {
            alpha_eq_inner(a1, a2, env) && alpha_eq_inner(b1, b2, env)
        }
        (Prop::ForAll(v1, b1), Prop::ForAll(v2, b2))
        | (Prop::Exists(v1, b1), Prop::Exists(v2, b2)) => {
            if v1.sort != v2.sort {
                return false;
            }
            env.push((v1.name.clone(), v2.name.clone()));
            let r = alpha_eq_inner(b1, b2, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn term_eq(a: &Term, b: &Term, env: &[(String, String)]) -> bool {
    match (a, b) {
        (Term::Var(v), Term::Var(w)) => {
            // Innermost binding wins; a name bound on one side only fails.
            for (l, r) in env.iter().rev() {
                let lm = *l == v.name;
                let rm = *r == w.name;
                if lm || rm {
                    return lm && rm;
                }
            }
            v.name == w.name && v.sort == w.sort
        }
        (Term::App(f, ts), Term::App(g, us)) => {
            f == g && ts.len() == us.len() && ts.iter().zip(us).all(|(t, u)| term_eq(t, u, env))
        }
        _ => false,
    }
}

/// A canonical string for a proposition: bound variables are numbered in
/// binder order, so two propositions are α-equivalent iff their canonical
/// forms are equal.  Used as a memoisation key.
pub fn canonical_form(p: &Prop) -> String {
    let mut out = String::new();
    canon_prop(p, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn canon_prop(p: &Prop, env: &mut Vec<String>, out: &mut String) {
    match p {
        Prop::Atom(name, args) => {
            out.push_str("A:");
            out.push_str(name);
            out.push('(');
            for t in args {
                canon_term(t, env, out);
                out.push(',');
            }
            out.push(')');
        }
        Prop::Top => out.push('T'),
        Prop::Bottom => out.push('F'),
        Prop::Implies(a, b) => {
            out.push_str("I(");
            canon_prop(a, env, out);
            out.push(';');
            canon_prop(b, env, out);
            out.push(')');
        }
        Prop::And(a, b) => {
            out.push_str("C(");
            canon_prop(a, env, out);
            out.push(';');
            canon_prop(b, env, out);
            out.push(')');
        }
        Prop::Or(a, b) => {
            out.push_str("D(");
            canon_prop(a, env, out);
            out.push(';');
            canon_prop(b, env, out);
            out.push(')');
        }
        Prop::ForAll(v, body) => {
            out.push_str("U[");
            out.push_str(&v.sort.0);
            out.push(']');
            env.push(v.name.clone());
            canon_prop(body, env, out);
            env.pop();
        }
        Prop::Exists(v, body) => {
            out.push_str("E[");
            out.push_str(&v.sort.0);
            out.push(']');
            env.push(v.name.clone());
            canon_prop(body, env, out);
            env.pop();
        }
    }
}

pub(crate) fn canon_term(t: &Term, env: &[String], out: &mut String) {
    match t {
        Term::Var(v) => {
            if let Some(idx) = env.iter().rposition(|n| *n == v.name) {
                out.push('#');
                out.push_str(&idx.to_string());
            } else {
                out.push('v');
                out.push_str(&v.name);
                out.push(':');
                out.push_str(&v.sort.0);
            }
        }
        Term::App(f, args) => {
            out.push('f');
            out.push_str(f);
            out.push('(');
            for a in args {
                canon_term(a, env, out);
                out.push(',');
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Var {
        Var::iota("x")
    }
    fn y() -> Var {
        Var::iota("y")
    }

    #[test]
    fn substitution_in_atom() {
        // (2/x)(x = x)  =  (2 = 2)
        let p = Prop::eq(Term::var(x()), Term::var(x()));
        let r = p.substitute("x", &Term::numeral(2));
        assert_eq!(r, Prop::eq(Term::numeral(2), Term::numeral(2)));
    }

    #[test]
    fn substitution_stops_at_shadowing_binder() {
        // (2/x)(forall x. x = x)  =  forall x. x = x
        let p = Prop::forall(x(), Prop::eq(Term::var(x()), Term::var(x())));
        let r = p.substitute("x", &Term::numeral(2));
        assert_eq!(r, p);
    }

    #[test]
    fn substitution_renames_to_avoid_capture() {
        // (y/x)(forall y. x = y): the binder must be renamed.
        let p = Prop::forall(y(), Prop::eq(Term::var(x()), Term::var(y())));
        let r = p.substitute("x", &Term::var(y()));
        match &r {
            Prop::ForAll(v, body) => {
                assert_ne!(v.name, "y", "binder must move away from the substituted y");
                assert_eq!(
                    **body,
                    Prop::eq(Term::var(y()), Term::var(Var::iota(v.name.clone())))
                );
            }
            _ => panic!("expected forall"),
        }
        // The result is α-equivalent to forall z. y = z.
        let expected = Prop::forall(
            Var::iota("z"),
            Prop::eq(Term::var(y()), Term::var(Var::iota("z"))),
        );
        assert!(alpha_eq_prop(&r, &expected));
    }

    #[test]
    fn alpha_eq_ignores_bound_names_only() {
        let p = Prop::forall(x(), Prop::eq(Term::var(x()), Term::var(y())));
        let q = Prop::forall(
            Var::iota("z"),
            Prop::eq(Term::var(Var::iota("z")), Term::var(y())),
        );
        assert!(alpha_eq_prop(&p, &q));
        // Different free variables are not α-equivalent.
        let r = Prop::forall(
            Var::iota("z"),
            Prop::eq(Term::var(Var::iota("z")), Term::var(x())),
        );
        assert!(!alpha_eq_prop(&p, &r));
        // Different bound sorts are not α-equivalent.
        let s = Prop::forall(
            Var::kappa("z"),
            Prop::eq(Term::var(Var::kappa("z")), Term::var(y())),
        );
        assert!(!alpha_eq_prop(&p, &s));
    }

    #[test]
    fn canonical_form_tracks_alpha_classes() {
        let p = Prop::forall(x(), Prop::exists(y(), Prop::eq(Term::var(x()), Term::var(y()))));
        let q = Prop::forall(
            Var::iota("a"),
            Prop::exists(
                Var::iota("b"),
                Prop::eq(Term::var(Var::iota("a")), Term::var(Var::iota("b"))),
            ),
        );
        assert_eq!(canonical_form(&p), canonical_form(&q));
        let r = Prop::forall(x(), Prop::exists(y(), Prop::eq(Term::var(y()), Term::var(x()))));
        assert_ne!(canonical_form(&p), canonical_form(&r));
    }

    #[test]
    fn fresh_names_prime_until_free() {
        let used: BTreeSet<String> =
            ["y".to_string(), "y'".to_string()].into_iter().collect();
        assert_eq!(fresh_name("y", &used), "y''");
        assert_eq!(fresh_name("z", &used), "z");
        let mut gen = FreshNames::avoiding(used);
        assert_eq!(gen.fresh("y"), "y''");
        assert_eq!(gen.fresh("y"), "y'''");
    }

    #[test]
    fn shadowed_inner_binding_wins_in_alpha_eq() {
        // forall x. forall x. x = x  vs  forall a. forall b. b = b
        let p = Prop::forall(x(), Prop::forall(x(), Prop::eq(Term::var(x()), Term::var(x()))));
        let q = Prop::forall(
            Var::iota("a"),
            Prop::forall(
                Var::iota("b"),
                Prop::eq(Term::var(Var::iota("b")), Term::var(Var::iota("b"))),
            ),
        );
        assert!(alpha_eq_prop(&p, &q));
        let bad = Prop::forall(
            Var::iota("a"),
            Prop::forall(
                Var::iota("b"),
                Prop::eq(Term::var(Var::iota("a")), Term::var(Var::iota("b"))),
            ),
        );
        assert!(!alpha_eq_prop(&p, &bad));
    }

    #[test]
    fn substitute_many_is_simultaneous() {
        // {x := y, y := 0} applied to x = y gives y = 0, not 0 = 0.
        let p = Prop::eq(Term::var(x()), Term::var(y()));
        let r = p.substitute_many(&[
            ("x".to_string(), Term::var(y())),
            ("y".to_string(), Term::zero()),
        ]);
        assert_eq!(r, Prop::eq(Term::var(y()), Term::zero()));
    }
}
