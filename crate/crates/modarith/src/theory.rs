//! Built-in theories of Heyting arithmetic, from the fully axiomatic
//! presentation down to the one with no axioms and only rewrite rules, plus
//! the two-rule theory over type codes used to interpret Goedel's System T.
//!
//! A [`Theory`] bundles a signature, a rule set, named axioms and axiom
//! schemes.  Schemes are instantiated on demand with a concrete proposition;
//! the comprehension scheme additionally registers a class symbol, which is
//! the only way a theory mutates after construction.

use crate::rewrite::{PropRule, RuleSet, TermRule};
use crate::syntax::{
    ComprehensionError, ComprehensionKey, ComprehensionRegistry, ComprehensionSymbol, Prop,
    Signature, Sort, SortError, Term, Var, ARROW, EPS, EQ, MEM, NATP, NAT_CODE, NULL, PLUS,
    PRED_FN, SUCC, TIMES, ZERO,
};
use thiserror::Error;

/// A named closed axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAxiom {
    pub name: String,
    pub prop: Prop,
}

/// The axiom schemes a theory may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// `(0/x)P => (forall y. (y/x)P => (S(y)/x)P) => forall n. (n/x)P`
    Induction,
    /// Induction with every quantifier guarded by the numeric predicate.
    RelativizedInduction,
    /// The weaker relativized scheme: no guard on the step variable.
    WeakRelativizedInduction,
    /// `forall x ys. (x in f_P(ys) <=> P)`; instantiating registers `f_P`.
    Comprehension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomScheme {
    pub name: String,
    pub kind: SchemeKind,
}

/// A request to instantiate a scheme: the proposition `P`, the distinguished
/// variable `x`, and (for comprehension) the parameter variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeInstanceRequest {
    pub scheme: String,
    pub body: Prop,
    pub var: Var,
    pub params: Vec<Var>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error("theory has no axiom or scheme named `{0}`")]
    NoSuchAxiom(String),
    #[error("scheme `{0}` requires an instantiating proposition")]
    SchemeNeedsInstance(String),
    #[error("`{0}` is an axiom, not a scheme; it takes no instantiation")]
    NotAScheme(String),
    #[error("the distinguished variable must have sort `iota`, found `{0}`")]
    BadSchemeVariable(String),
    #[error("scheme instance is not well-sorted: {0}")]
    Sort(#[from] SortError),
    #[error("this theory has no comprehension symbols")]
    NoComprehension,
    #[error(transparent)]
    Comprehension(#[from] ComprehensionError),
}

/// How a theory turns a registered comprehension symbol into logic: as a
/// rewrite rule (the no-axiom presentation) or as an equivalence axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComprehensionStyle {
    Rule,
    Axiom,
}

#[derive(Clone, Debug)]
pub struct Theory {
    name: String,
    signature: Signature,
    rules: RuleSet,
    axioms: Vec<NamedAxiom>,
    schemes: Vec<AxiomScheme>,
    comprehension: Option<(ComprehensionRegistry, ComprehensionStyle)>,
}

impl Theory {
    pub fn new(name: impl Into<String>, signature: Signature) -> Self {
        Theory {
            name: name.into(),
            signature,
            rules: RuleSet::new(),
            axioms: Vec::new(),
            schemes: Vec::new(),
            comprehension: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn axioms(&self) -> &[NamedAxiom] {
        &self.axioms
    }

    pub fn axiom(&self, name: &str) -> Option<&NamedAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn schemes(&self) -> &[AxiomScheme] {
        &self.schemes
    }

    pub fn scheme(&self, name: &str) -> Option<&AxiomScheme> {
        self.schemes.iter().find(|s| s.name == name)
    }

    pub fn has_comprehension(&self) -> bool {
        self.comprehension.is_some()
    }

    pub fn comprehension_registry(&self) -> Option<&ComprehensionRegistry> {
        self.comprehension.as_ref().map(|(r, _)| r)
    }

    pub fn add_term_rule(&mut self, rule: TermRule) {
        self.rules.add_term_rule(rule);
    }

    pub fn add_prop_rule(&mut self, rule: PropRule) {
        self.rules.add_prop_rule(rule);
    }

    pub fn add_axiom(&mut self, name: impl Into<String>, prop: Prop) {
        self.axioms.push(NamedAxiom { name: name.into(), prop });
    }

    pub fn add_scheme(&mut self, name: impl Into<String>, kind: SchemeKind) {
        self.schemes.push(AxiomScheme { name: name.into(), kind });
    }

    pub fn enable_comprehension(&mut self, registry: ComprehensionRegistry, style: ComprehensionStyle) {
        self.comprehension = Some((registry, style));
    }

    pub fn signature_mut(&mut self) -> &mut Signature {
        &mut self.signature
    }

    /// Register a comprehension symbol: record it in the registry, declare it
    /// in the signature, and (in rule style) add its membership rewrite rule.
    /// Returns the symbol; registration is idempotent.
    pub fn register_comprehension(
        &mut self,
        key: &ComprehensionKey,
    ) -> Result<ComprehensionSymbol, TheoryError> {
        let (registry, style) = self
            .comprehension
            .as_mut()
            .ok_or(TheoryError::NoComprehension)?;
        let style = *style;
        let (symbol, fresh) = registry.register(key)?;
        if fresh {
            self.signature
                .declare_function(
                    symbol.name.clone(),
                    symbol.params.iter().map(|p| p.sort.clone()).collect(),
                    Sort::kappa(),
                )
                .map_err(TheoryError::Sort)?;
            if style == ComprehensionStyle::Rule {
                let lhs_args = vec![
                    Term::var(symbol.var.clone()),
                    Term::app(
                        symbol.name.clone(),
                        symbol.params.iter().cloned().map(Term::var).collect(),
                    ),
                ];
                self.rules.add_prop_rule(PropRule::new(
                    format!("mem_{}", symbol_slug(&symbol.name)),
                    MEM,
                    lhs_args,
                    symbol.body.clone(),
                ));
            }
        }
        Ok(symbol)
    }

    /// The proposition standing behind `use axiom <name>`: either a named
    /// axiom looked up directly, or a scheme instantiated with a request.
    pub fn axiom_instance(
        &mut self,
        name: &str,
        request: Option<&SchemeInstanceRequest>,
    ) -> Result<Prop, TheoryError> {
        if let Some(ax) = self.axiom(name) {
            return match request {
                None => Ok(ax.prop.clone()),
                Some(_) => Err(TheoryError::NotAScheme(name.to_string())),
            };
        }
        let scheme = self
            .scheme(name)
            .ok_or_else(|| TheoryError::NoSuchAxiom(name.to_string()))?
            .clone();
        let request = request.ok_or_else(|| TheoryError::SchemeNeedsInstance(name.to_string()))?;
        self.instantiate_scheme(scheme.kind, request)
    }

    pub fn instantiate_scheme(
        &mut self,
        kind: SchemeKind,
        request: &SchemeInstanceRequest,
    ) -> Result<Prop, TheoryError> {
        if request.var.sort != Sort::iota() {
            return Err(TheoryError::BadSchemeVariable(request.var.sort.0.clone()));
        }
        match kind {
            SchemeKind::Induction => {
                let p = self.checked_body(request)?;
                Ok(induction_instance(&p, &request.var, InductionGuard::None))
            }
            SchemeKind::RelativizedInduction => {
                let p = self.checked_body(request)?;
                Ok(induction_instance(&p, &request.var, InductionGuard::Full))
            }
            SchemeKind::WeakRelativizedInduction => {
                let p = self.checked_body(request)?;
                Ok(induction_instance(&p, &request.var, InductionGuard::ConclusionOnly))
            }
            SchemeKind::Comprehension => {
                let p = self.checked_body(request)?;
                let key = ComprehensionKey {
                    var: request.var.clone(),
                    params: request.params.clone(),
                    body: p,
                };
                let symbol = self.register_comprehension(&key)?;
                let membership = symbol.membership_lhs();
                let mut binders = vec![symbol.var.clone()];
                binders.extend(symbol.params.iter().cloned());
                Ok(Prop::forall_many(
                    binders,
                    Prop::iff(membership, symbol.body.clone()),
                ))
            }
        }
    }

    fn checked_body(&self, request: &SchemeInstanceRequest) -> Result<Prop, TheoryError> {
        self.signature.check_prop(&request.body)?;
        Ok(request.body.clone())
    }

    /// Validate signature-level well-formedness of rules and axioms.
    pub fn check_wellformed(&self) -> Result<(), String> {
        self.rules
            .validate(&self.signature)
            .map_err(|e| e.to_string())?;
        for ax in &self.axioms {
            self.signature
                .check_prop(&ax.prop)
                .map_err(|e| format!("axiom {}: {e}", ax.name))?;
        }
        Ok(())
    }
}

/// Identifier-friendly version of a symbol name for use in generated names.
pub fn symbol_slug(symbol: &str) -> String {
    match symbol {
        PLUS => "plus".to_string(),
        TIMES => "times".to_string(),
        EQ => "eq".to_string(),
        ARROW => "arrow".to_string(),
        MEM => "mem".to_string(),
        ZERO => "zero".to_string(),
        other => other.to_string(),
    }
}

enum InductionGuard {
    None,
    Full,
    ConclusionOnly,
}

/// Build an induction instance for `P` with distinguished variable `x`.
/// The step and conclusion variables are chosen fresh for `P`.
fn induction_instance(p: &Prop, x: &Var, guard: InductionGuard) -> Prop {
    let mut avoid = p.free_vars();
    avoid.insert(x.name.clone());
    let y = Var::iota(crate::syntax::fresh_name("y", &avoid));
    let mut avoid2 = avoid.clone();
    avoid2.insert(y.name.clone());
    let n = Var::iota(crate::syntax::fresh_name("n", &avoid2));

    let at = |t: Term| p.substitute(&x.name, &t);
    let natp = |v: &Var| Prop::atom(NATP, vec![Term::var(v.clone())]);

    let base = at(Term::zero());
    let step_core = Prop::implies(at(Term::var(y.clone())), at(Term::succ(Term::var(y.clone()))));
    let step = match guard {
        InductionGuard::Full => {
            Prop::forall(y.clone(), Prop::implies(natp(&y), step_core))
        }
        InductionGuard::None | InductionGuard::ConclusionOnly => {
            Prop::forall(y.clone(), step_core)
        }
    };
    let conclusion_core = at(Term::var(n.clone()));
    let conclusion = match guard {
        InductionGuard::None => Prop::forall(n.clone(), conclusion_core),
        InductionGuard::Full | InductionGuard::ConclusionOnly => {
            Prop::forall(n.clone(), Prop::implies(natp(&n), conclusion_core))
        }
    };
    Prop::implies(base, Prop::implies(step, conclusion))
}

fn iota_vars(names: &[&str]) -> Vec<Var> {
    names.iter().map(|n| Var::iota(*n)).collect()
}

/// The equality axioms for a signature whose individuals live in sort iota:
/// reflexivity, symmetry, transitivity, and compatibility with every
/// non-nullary function and (non-equality) predicate on iota arguments.
fn equality_axioms(sig: &Signature) -> Vec<NamedAxiom> {
    let v = |n: &str| Term::var(Var::iota(n));
    let mut out = vec![
        NamedAxiom {
            name: "eq_refl".into(),
            prop: Prop::forall(Var::iota("x"), Prop::eq(v("x"), v("x"))),
        },
        NamedAxiom {
            name: "eq_sym".into(),
            prop: Prop::forall_many(
                iota_vars(&["x", "y"]),
                Prop::implies(Prop::eq(v("x"), v("y")), Prop::eq(v("y"), v("x"))),
            ),
        },
        NamedAxiom {
            name: "eq_trans".into(),
            prop: Prop::forall_many(
                iota_vars(&["x", "y", "z"]),
                Prop::implies(
                    Prop::eq(v("x"), v("y")),
                    Prop::implies(Prop::eq(v("y"), v("z")), Prop::eq(v("x"), v("z"))),
                ),
            ),
        },
    ];
    let all_iota = |sorts: &[Sort]| sorts.iter().all(|s| *s == Sort::iota());
    for (f, rank) in sig.functions() {
        if rank.args.is_empty() || !all_iota(&rank.args) || rank.result != Sort::iota() {
            continue;
        }
        out.push(NamedAxiom {
            name: format!("eq_compat_{}", symbol_slug(f)),
            prop: compat_axiom(f, rank.args.len(), true),
        });
    }
    for (q, rank) in sig.predicates() {
        if q == EQ || rank.args.is_empty() || !all_iota(&rank.args) {
            continue;
        }
        out.push(NamedAxiom {
            name: format!("eq_compat_{}", symbol_slug(q)),
            prop: compat_axiom(q, rank.args.len(), false),
        });
    }
    out
}

/// `forall xs ys. x1 = y1 => ... => f(xs) = f(ys)` (or `... => Q(xs) => Q(ys)`).
fn compat_axiom(symbol: &str, arity: usize, is_function: bool) -> Prop {
    let xs: Vec<Var> = (1..=arity).map(|i| Var::iota(format!("x{i}"))).collect();
    let ys: Vec<Var> = (1..=arity).map(|i| Var::iota(format!("y{i}"))).collect();
    let xts: Vec<Term> = xs.iter().cloned().map(Term::var).collect();
    let yts: Vec<Term> = ys.iter().cloned().map(Term::var).collect();
    let conclusion = if is_function {
        Prop::eq(
            Term::app(symbol, xts.clone()),
            Term::app(symbol, yts.clone()),
        )
    } else {
        Prop::implies(
            Prop::atom(symbol, xts.clone()),
            Prop::atom(symbol, yts.clone()),
        )
    };
    let body = xts
        .iter()
        .zip(&yts)
        .rev()
        .fold(conclusion, |acc, (x, y)| {
            Prop::implies(Prop::eq(x.clone(), y.clone()), acc)
        });
    let mut binders = xs;
    binders.extend(ys);
    Prop::forall_many(binders, body)
}

fn v(n: &str) -> Term {
    Term::var(Var::iota(n))
}

/// The four recursion axioms for `+` and `*`.
fn recursion_axioms() -> Vec<NamedAxiom> {
    vec![
        NamedAxiom {
            name: "plus_zero".into(),
            prop: Prop::forall(Var::iota("y"), Prop::eq(Term::plus(Term::zero(), v("y")), v("y"))),
        },
        NamedAxiom {
            name: "plus_succ".into(),
            prop: Prop::forall_many(
                iota_vars(&["x", "y"]),
                Prop::eq(
                    Term::plus(Term::succ(v("x")), v("y")),
                    Term::succ(Term::plus(v("x"), v("y"))),
                ),
            ),
        },
        NamedAxiom {
            name: "times_zero".into(),
            prop: Prop::forall(
                Var::iota("y"),
                Prop::eq(Term::times(Term::zero(), v("y")), Term::zero()),
            ),
        },
        NamedAxiom {
            name: "times_succ".into(),
            prop: Prop::forall_many(
                iota_vars(&["x", "y"]),
                Prop::eq(
                    Term::times(Term::succ(v("x")), v("y")),
                    Term::plus(Term::times(v("x"), v("y")), v("y")),
                ),
            ),
        },
    ]
}

fn pred_axioms() -> Vec<NamedAxiom> {
    vec![
        NamedAxiom {
            name: "pred_zero".into(),
            prop: Prop::eq(Term::pred(Term::zero()), Term::zero()),
        },
        NamedAxiom {
            name: "pred_succ".into(),
            prop: Prop::forall(Var::iota("x"), Prop::eq(Term::pred(Term::succ(v("x"))), v("x"))),
        },
    ]
}

fn null_axioms() -> Vec<NamedAxiom> {
    vec![
        NamedAxiom {
            name: "null_zero".into(),
            prop: Prop::atom(NULL, vec![Term::zero()]),
        },
        NamedAxiom {
            name: "null_succ".into(),
            prop: Prop::forall(
                Var::iota("x"),
                Prop::not(Prop::atom(NULL, vec![Term::succ(v("x"))])),
            ),
        },
    ]
}

fn base_arith_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_sort(Sort::iota());
    sig.declare_function(ZERO, vec![], Sort::iota()).unwrap();
    sig.declare_function(SUCC, vec![Sort::iota()], Sort::iota()).unwrap();
    sig.declare_function(PLUS, vec![Sort::iota(), Sort::iota()], Sort::iota()).unwrap();
    sig.declare_function(TIMES, vec![Sort::iota(), Sort::iota()], Sort::iota()).unwrap();
    sig.declare_predicate(EQ, vec![Sort::iota(), Sort::iota()]).unwrap();
    sig
}

/// Heyting arithmetic: the fully axiomatic presentation.
pub fn theory_ha() -> Theory {
    let sig = base_arith_signature();
    let mut th = Theory::new("ha", sig);
    for ax in equality_axioms(th.signature()) {
        th.axioms.push(ax);
    }
    th.add_axiom(
        "succ_inj",
        Prop::forall_many(
            iota_vars(&["x", "y"]),
            Prop::implies(
                Prop::eq(Term::succ(v("x")), Term::succ(v("y"))),
                Prop::eq(v("x"), v("y")),
            ),
        ),
    );
    th.add_axiom(
        "zero_ne_succ",
        Prop::forall(
            Var::iota("x"),
            Prop::not(Prop::eq(Term::zero(), Term::succ(v("x")))),
        ),
    );
    th.add_scheme("induction", SchemeKind::Induction);
    for ax in recursion_axioms() {
        th.axioms.push(ax);
    }
    th
}

/// HA extended with a predecessor symbol and its three axioms.
pub fn theory_ha_pred() -> Theory {
    let mut th = theory_ha();
    th.name = "ha-pred".into();
    th.signature
        .declare_function(PRED_FN, vec![Sort::iota()], Sort::iota())
        .unwrap();
    let mut pred = pred_axioms();
    pred.push(NamedAxiom {
        name: "eq_compat_Pred".into(),
        prop: compat_axiom(PRED_FN, 1, true),
    });
    th.axioms.extend(pred);
    th
}

/// Arithmetic with an explicit numeric predicate `N`, predecessor and the
/// zero test, and the relativized induction scheme.  With `weak_induction`
/// the scheme drops the numeric guard on the step variable.
pub fn theory_ha_n(weak_induction: bool) -> Theory {
    let mut sig = base_arith_signature();
    sig.declare_function(PRED_FN, vec![Sort::iota()], Sort::iota()).unwrap();
    sig.declare_predicate(NULL, vec![Sort::iota()]).unwrap();
    sig.declare_predicate(NATP, vec![Sort::iota()]).unwrap();
    let mut th = Theory::new(if weak_induction { "ha-n-weak" } else { "ha-n" }, sig);
    for ax in equality_axioms(th.signature()) {
        th.axioms.push(ax);
    }
    th.add_scheme(
        "induction",
        if weak_induction {
            SchemeKind::WeakRelativizedInduction
        } else {
            SchemeKind::RelativizedInduction
        },
    );
    th.add_axiom("nat_zero", Prop::atom(NATP, vec![Term::zero()]));
    th.add_axiom(
        "nat_succ",
        Prop::forall(
            Var::iota("x"),
            Prop::implies(
                Prop::atom(NATP, vec![v("x")]),
                Prop::atom(NATP, vec![Term::succ(v("x"))]),
            ),
        ),
    );
    th.axioms.extend(pred_axioms());
    th.axioms.extend(null_axioms());
    th.axioms.extend(recursion_axioms());
    th
}

fn class_signature() -> Signature {
    let mut sig = base_arith_signature();
    sig.declare_sort(Sort::kappa());
    sig.declare_function(PRED_FN, vec![Sort::iota()], Sort::iota()).unwrap();
    sig.declare_predicate(NULL, vec![Sort::iota()]).unwrap();
    sig.declare_predicate(NATP, vec![Sort::iota()]).unwrap();
    sig.declare_predicate(MEM, vec![Sort::iota(), Sort::kappa()]).unwrap();
    sig
}

/// The equivalence form of the equality definition:
/// `forall y z. (y = z <=> forall p. y in p => z in p)`.
fn eq_class_axiom() -> Prop {
    let y = Var::iota("y");
    let z = Var::iota("z");
    let p = Var::kappa("p");
    Prop::forall_many(
        [y.clone(), z.clone()],
        Prop::iff(
            Prop::eq(Term::var(y.clone()), Term::var(z.clone())),
            Prop::forall(
                p.clone(),
                Prop::implies(
                    Prop::mem(Term::var(y), Term::var(p.clone())),
                    Prop::mem(Term::var(z), Term::var(p)),
                ),
            ),
        ),
    )
}

/// The membership unfolding of the numeric predicate, shared by the
/// equivalence axiom of the classical presentation and the rewrite rule of
/// the no-axiom presentation.  With `guarded` the step quantifier carries
/// the `N(y)` hypothesis.
fn nat_unfolding(n: Term, guarded: bool) -> Prop {
    let p = Var::kappa("p");
    let y = Var::iota("y");
    let step_core = Prop::implies(
        Prop::mem(Term::var(y.clone()), Term::var(p.clone())),
        Prop::mem(Term::succ(Term::var(y.clone())), Term::var(p.clone())),
    );
    let step_body = if guarded {
        Prop::implies(Prop::atom(NATP, vec![Term::var(y.clone())]), step_core)
    } else {
        step_core
    };
    Prop::forall(
        p.clone(),
        Prop::implies(
            Prop::mem(Term::zero(), Term::var(p.clone())),
            Prop::implies(
                Prop::forall(y, step_body),
                Prop::mem(n, Term::var(p)),
            ),
        ),
    )
}

/// Arithmetic with a sort of number classes: equality, the numeric predicate
/// and comprehension are captured by equivalence axioms.
pub fn theory_ha_class() -> Theory {
    let mut th = Theory::new("ha-class", class_signature());
    th.add_axiom("eq_class", eq_class_axiom());
    let n = Var::iota("n");
    th.add_axiom(
        "nat_class",
        Prop::forall(
            n.clone(),
            Prop::iff(
                Prop::atom(NATP, vec![Term::var(n.clone())]),
                nat_unfolding(Term::var(n), true),
            ),
        ),
    );
    th.add_scheme("comprehension", SchemeKind::Comprehension);
    let mut registry = ComprehensionRegistry::new(false);
    registry.add_alias(nat_comprehension_key(), NAT_CODE);
    th.enable_comprehension(registry, ComprehensionStyle::Axiom);
    th.axioms.extend(pred_axioms());
    th.axioms.extend(null_axioms());
    th.axioms.extend(recursion_axioms());
    th
}

fn nat_comprehension_key() -> ComprehensionKey {
    ComprehensionKey {
        var: Var::iota("x"),
        params: vec![],
        body: Prop::atom(NATP, vec![Term::var(Var::iota("x"))]),
    }
}

fn arrow_comprehension_key() -> ComprehensionKey {
    let x = Var::iota("x");
    let y = Var::kappa("y");
    let z = Var::kappa("z");
    ComprehensionKey {
        var: x.clone(),
        params: vec![y.clone(), z.clone()],
        body: Prop::implies(
            Prop::mem(Term::var(x.clone()), Term::var(y)),
            Prop::mem(Term::var(x), Term::var(z)),
        ),
    }
}

/// The no-axiom presentation: the same language as the classical one, all
/// content carried by rewrite rules.  With `variant_n` the numeric-predicate
/// rule drops the inner guard (the iterator-strength variant).
pub fn theory_ha_mod(variant_n: bool) -> Theory {
    let name = if variant_n { "ha-mod-variant" } else { "ha-mod" };
    let mut th = Theory::new(name, class_signature());
    let y = || Term::var(Var::iota("y"));
    let z = || Term::var(Var::iota("z"));
    let x = || Term::var(Var::iota("x"));
    let p = Var::kappa("p");
    th.add_prop_rule(PropRule::new(
        "eq",
        EQ,
        vec![y(), z()],
        Prop::forall(
            p.clone(),
            Prop::implies(
                Prop::mem(y(), Term::var(p.clone())),
                Prop::mem(z(), Term::var(p.clone())),
            ),
        ),
    ));
    th.add_prop_rule(PropRule::new(
        "nat",
        NATP,
        vec![Term::var(Var::iota("n"))],
        nat_unfolding(Term::var(Var::iota("n")), !variant_n),
    ));
    th.add_term_rule(TermRule::new("pred_zero", Term::pred(Term::zero()), Term::zero()));
    th.add_term_rule(TermRule::new("pred_succ", Term::pred(Term::succ(x())), x()));
    th.add_prop_rule(PropRule::new("null_zero", NULL, vec![Term::zero()], Prop::Top));
    th.add_prop_rule(PropRule::new(
        "null_succ",
        NULL,
        vec![Term::succ(x())],
        Prop::Bottom,
    ));
    th.add_term_rule(TermRule::new("plus_zero", Term::plus(Term::zero(), y()), y()));
    th.add_term_rule(TermRule::new(
        "plus_succ",
        Term::plus(Term::succ(x()), y()),
        Term::succ(Term::plus(x(), y())),
    ));
    th.add_term_rule(TermRule::new("times_zero", Term::times(Term::zero(), y()), Term::zero()));
    th.add_term_rule(TermRule::new(
        "times_succ",
        Term::times(Term::succ(x()), y()),
        Term::plus(Term::times(x(), y()), y()),
    ));
    th.add_scheme("comprehension", SchemeKind::Comprehension);
    let mut registry = ComprehensionRegistry::new(true);
    registry.add_alias(nat_comprehension_key(), NAT_CODE);
    registry.add_alias(arrow_comprehension_key(), ARROW);
    th.enable_comprehension(registry, ComprehensionStyle::Rule);
    th
}

/// The two-rule theory over type codes: a sort of codes, a membership-style
/// predicate `eps`, a code `nat` and a binary code constructor `->`.  With
/// `iterator_variant` the `nat` rule drops its self-referential hypothesis,
/// which only supports iteration, not primitive recursion.
pub fn theory_t_with(iterator_variant: bool) -> Theory {
    let mut sig = Signature::new();
    sig.declare_sort(Sort::kappa());
    sig.declare_function(NAT_CODE, vec![], Sort::kappa()).unwrap();
    sig.declare_function(ARROW, vec![Sort::kappa(), Sort::kappa()], Sort::kappa()).unwrap();
    sig.declare_predicate(EPS, vec![Sort::kappa()]).unwrap();
    let name = if iterator_variant { "t-variant" } else { "t" };
    let mut th = Theory::new(name, sig);
    let eps = |t: Term| Prop::atom(EPS, vec![t]);
    let p = Var::kappa("p");
    // eps(nat) --> forall p. eps(p) => (eps(nat) => eps(p) => eps(p)) => eps(p)
    let step = if iterator_variant {
        Prop::implies(eps(Term::var(p.clone())), eps(Term::var(p.clone())))
    } else {
        Prop::implies(
            eps(Term::constant(NAT_CODE)),
            Prop::implies(eps(Term::var(p.clone())), eps(Term::var(p.clone()))),
        )
    };
    th.add_prop_rule(PropRule::new(
        "nat",
        EPS,
        vec![Term::constant(NAT_CODE)],
        Prop::forall(
            p.clone(),
            Prop::implies(
                eps(Term::var(p.clone())),
                Prop::implies(step, eps(Term::var(p.clone()))),
            ),
        ),
    ));
    // eps(y -> z) --> eps(y) => eps(z)
    let y = Var::kappa("y");
    let z = Var::kappa("z");
    th.add_prop_rule(PropRule::new(
        "arrow",
        EPS,
        vec![Term::arrow(Term::var(y.clone()), Term::var(z.clone()))],
        Prop::implies(eps(Term::var(y)), eps(Term::var(z))),
    ));
    th
}

/// The standard (recursor-strength) two-rule theory.
pub fn theory_t() -> Theory {
    theory_t_with(false)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "ha",
    "ha-pred",
    "ha-n",
    "ha-n-weak",
    "ha-class",
    "ha-mod",
    "ha-mod-variant",
    "t",
    "t-variant",
];

/// Look up a built-in theory by its CLI name.
pub fn builtin(name: &str) -> Option<Theory> {
    match name {
        "ha" => Some(theory_ha()),
        "ha-pred" => Some(theory_ha_pred()),
        "ha-n" => Some(theory_ha_n(false)),
        "ha-n-weak" => Some(theory_ha_n(true)),
        "ha-class" => Some(theory_ha_class()),
        "ha-mod" => Some(theory_ha_mod(false)),
        "ha-mod-variant" => Some(theory_ha_mod(true)),
        "t" => Some(theory_t()),
        "t-variant" => Some(theory_t_with(true)),
        _ => None,
    }
}
