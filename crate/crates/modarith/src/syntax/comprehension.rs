//! Comprehension symbols: class-valued function symbols `f(y1,...,yn)`
//! introduced for a proposition `P` with membership condition
//! `x in f(y1,...,yn) --> P`.
//!
//! Keys are identified up to α-equivalence and up to the order in which the
//! parameter variables were listed: parameters are re-ordered canonically by
//! first occurrence in the body (unused parameters keep their given order at
//! the end).  The generated symbol name is a stable hash of the canonical
//! key, so registration is deterministic and order-independent.

use super::{canonical_form, Prop, Sort, Var, MEM};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

/// A request for a comprehension symbol: the membership variable `var`, the
/// parameter variables, and the defining proposition `body`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComprehensionKey {
    pub var: Var,
    pub params: Vec<Var>,
    pub body: Prop,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComprehensionError {
    #[error("free variable `{0}` of the body is neither the membership variable nor a parameter")]
    StrayFreeVariable(String),
    #[error("parameter `{0}` is listed twice")]
    DuplicateParameter(String),
    #[error("parameter `{0}` clashes with the membership variable")]
    ParameterIsVar(String),
    #[error("the body may not mention `in` in this theory")]
    MembershipInBody,
    #[error("the membership variable must have sort `{expected}`, found `{got}`")]
    VarSort { expected: String, got: String },
}

/// A registered comprehension symbol.  `params` is the canonical parameter
/// order; terms built with the symbol must supply arguments in this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComprehensionSymbol {
    pub name: String,
    pub var: Var,
    pub params: Vec<Var>,
    pub body: Prop,
}

impl ComprehensionSymbol {
    /// The rewrite orientation of this symbol's membership condition:
    /// `var in name(params) --> body`.
    pub fn membership_lhs(&self) -> Prop {
        Prop::atom(
            MEM,
            vec![
                super::Term::var(self.var.clone()),
                super::Term::app(
                    self.name.clone(),
                    self.params.iter().cloned().map(super::Term::var).collect(),
                ),
            ],
        )
    }
}

/// Registry of comprehension symbols for one theory.  This is the only
/// mutable part of a theory; all methods take `&mut self`, so shared use
/// across threads requires external synchronisation (or cloned theories).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComprehensionRegistry {
    /// Canonical key string -> symbol.
    by_key: BTreeMap<String, ComprehensionSymbol>,
    /// Whether bodies may themselves mention the membership predicate.
    allow_membership: bool,
    /// Optional human-readable aliases, applied at registration.
    aliases: Vec<(ComprehensionKey, String)>,
}

impl ComprehensionRegistry {
    pub fn new(allow_membership: bool) -> Self {
        ComprehensionRegistry {
            by_key: BTreeMap::new(),
            allow_membership,
            aliases: Vec::new(),
        }
    }

    pub fn allow_membership(&self) -> bool {
        self.allow_membership
    }

    /// Declare that the key should be registered under a fixed friendly name
    /// (e.g. `nat`) instead of a generated one.  Must precede registration.
    pub fn add_alias(&mut self, key: ComprehensionKey, name: impl Into<String>) {
        self.aliases.push((key, name.into()));
    }

    pub fn symbols(&self) -> impl Iterator<Item = &ComprehensionSymbol> {
        self.by_key.values()
    }

    pub fn len(&self) -> usize {
        self.by_key.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_key.is_empty()
    }

    /// Look up a symbol by its (not necessarily canonical) key.
    pub fn lookup(&self, key: &ComprehensionKey) -> Option<&ComprehensionSymbol> {
        let canon = canonicalize(key).ok()?;
        self.by_key.get(&canonical_key_string(&canon))
    }

    /// Register (or find) the symbol for `key`.  Returns the symbol together
    /// with a flag saying whether it was newly created.
    pub fn register(
        &mut self,
        key: &ComprehensionKey,
    ) -> Result<(ComprehensionSymbol, bool), ComprehensionError> {
        let canon = canonicalize(key)?;
        if !self.allow_membership && canon.body.predicate_symbols().contains(MEM) {
            return Err(ComprehensionError::MembershipInBody);
        }
        let key_string = canonical_key_string(&canon);
        if let Some(sym) = self.by_key.get(&key_string) {
            return Ok((sym.clone(), false));
        }
        let name = self
            .aliases
            .iter()
            .find_map(|(k, n)| {
                let kc = canonicalize(k).ok()?;
                (canonical_key_string(&kc) == key_string).then(|| n.clone())
            })
            .unwrap_or_else(|| generated_name(&key_string));
        let sym = ComprehensionSymbol {
            name,
            var: canon.var,
            params: canon.params,
            body: canon.body,
        };
        self.by_key.insert(key_string, sym.clone());
        Ok((sym, true))
    }
}

/// Validate a key and bring its parameters into canonical order: first
/// occurrence in the body, unused parameters last in given order.
fn canonicalize(key: &ComprehensionKey) -> Result<ComprehensionKey, ComprehensionError> {
    if key.var.sort != Sort::iota() {
        return Err(ComprehensionError::VarSort {
            expected: Sort::iota().0,
            got: key.var.sort.0.clone(),
        });
    }
    let mut seen: Vec<&str> = Vec::new();
    for p in &key.params {
        if p.name == key.var.name {
            return Err(ComprehensionError::ParameterIsVar(p.name.clone()));
        }
        if seen.contains(&p.name.as_str()) {
            return Err(ComprehensionError::DuplicateParameter(p.name.clone()));
        }
        seen.push(&p.name);
    }
    let allowed: Vec<&str> = std::iter::once(key.var.name.as_str())
        .chain(key.params.iter().map(|p| p.name.as_str()))
        .collect();
    for v in key.body.free_vars() {
        if !allowed.contains(&v.as_str()) {
            return Err(ComprehensionError::StrayFreeVariable(v));
        }
    }
    // Canonical parameter order: order of first occurrence among the body's
    // free variables, then unused parameters in their given order.
    let occurrence = key.body.free_vars_sorted();
    let mut ordered: Vec<Var> = occurrence
        .iter()
        .filter_map(|v| key.params.iter().find(|p| p.name == v.name))
        .cloned()
        .collect();
    for p in &key.params {
        if !ordered.iter().any(|q| q.name == p.name) {
            ordered.push(p.clone());
        }
    }
    Ok(ComprehensionKey {
        var: key.var.clone(),
        params: ordered,
        body: key.body.clone(),
    })
}

/// Canonical string for a canonicalized key: the body with the membership
/// variable and parameters α-renamed to positional names.
fn canonical_key_string(key: &ComprehensionKey) -> String {
    // Close the body over var and params so canonical_form numbers them;
    // binder order encodes the canonical parameter order.
    let mut closed = key.body.clone();
    for v in key.params.iter().rev() {
        closed = Prop::forall(v.clone(), closed);
    }
    closed = Prop::forall(key.var.clone(), closed);
    format!("{}|{}", key.params.len(), canonical_form(&closed))
}

fn generated_name(key_string: &str) -> String {
    let digest = Sha256::digest(key_string.as_bytes());
    let hex: String = digest.iter().take(5).map(|b| format!("{b:02x}")).collect();
    format!("f_{hex}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{Term, NATP};

    fn natp_of(v: &str) -> Prop {
        Prop::atom(NATP, vec![Term::var(Var::iota(v))])
    }

    #[test]
    fn registration_is_idempotent() {
        let mut reg = ComprehensionRegistry::new(false);
        let key = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![],
            body: natp_of("x"),
        };
        let (s1, fresh1) = reg.register(&key).unwrap();
        let (s2, fresh2) = reg.register(&key).unwrap();
        assert!(fresh1);
        assert!(!fresh2);
        assert_eq!(s1, s2);
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn alpha_variants_share_a_symbol() {
        let mut reg = ComprehensionRegistry::new(false);
        let k1 = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![],
            body: natp_of("x"),
        };
        let k2 = ComprehensionKey {
            var: Var::iota("z"),
            params: vec![],
            body: natp_of("z"),
        };
        let (s1, _) = reg.register(&k1).unwrap();
        let (s2, fresh) = reg.register(&k2).unwrap();
        assert!(!fresh);
        assert_eq!(s1.name, s2.name);
    }

    #[test]
    fn parameter_order_is_canonicalized() {
        // body: y = z, listed once as (y, z) and once as (z, y).
        let body = Prop::eq(Term::var(Var::iota("y")), Term::var(Var::iota("z")));
        let k1 = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![Var::iota("y"), Var::iota("z")],
            body: body.clone(),
        };
        let k2 = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![Var::iota("z"), Var::iota("y")],
            body,
        };
        let mut reg = ComprehensionRegistry::new(false);
        let (s1, _) = reg.register(&k1).unwrap();
        let (s2, fresh) = reg.register(&k2).unwrap();
        assert!(!fresh, "same class up to parameter listing order");
        assert_eq!(s1, s2);
        // Canonical order follows first occurrence in the body.
        assert_eq!(
            s1.params.iter().map(|p| p.name.clone()).collect::<Vec<_>>(),
            vec!["y", "z"]
        );
    }

    #[test]
    fn names_are_deterministic() {
        let key = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![],
            body: natp_of("x"),
        };
        let mut r1 = ComprehensionRegistry::new(false);
        let mut r2 = ComprehensionRegistry::new(false);
        let (a, _) = r1.register(&key).unwrap();
        let (b, _) = r2.register(&key).unwrap();
        assert_eq!(a.name, b.name);
        assert!(a.name.starts_with("f_"), "generated names are prefixed: {}", a.name);
    }

    #[test]
    fn aliases_take_precedence() {
        let key = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![],
            body: natp_of("x"),
        };
        let mut reg = ComprehensionRegistry::new(false);
        reg.add_alias(key.clone(), "nat");
        let (sym, _) = reg.register(&key).unwrap();
        assert_eq!(sym.name, "nat");
    }

    #[test]
    fn invalid_keys_are_rejected() {
        let mut reg = ComprehensionRegistry::new(false);
        // Stray free variable.
        let stray = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![],
            body: Prop::eq(Term::var(Var::iota("x")), Term::var(Var::iota("w"))),
        };
        assert!(matches!(
            reg.register(&stray),
            Err(ComprehensionError::StrayFreeVariable(_))
        ));
        // Membership in the body is rejected when the mode forbids it.
        let with_mem = ComprehensionKey {
            var: Var::iota("x"),
            params: vec![Var::kappa("p")],
            body: Prop::mem(Term::var(Var::iota("x")), Term::var(Var::kappa("p"))),
        };
        assert!(matches!(
            reg.register(&with_mem),
            Err(ComprehensionError::MembershipInBody)
        ));
        // ... but accepted when allowed.
        let mut relaxed = ComprehensionRegistry::new(true);
        relaxed.register(&with_mem).unwrap();
    }
}
