//! Execution of the three file formats.
//!
//! A theory file either extends a built-in theory or declares one from
//! scratch; a proof file names its theory, brings axioms and scheme
//! instances into scope, and checks a sequence of theorems, each of which
//! may use the earlier ones as hypotheses; a program file type-checks its
//! definitions, compiles each to a proof, and certifies the proof in the
//! two-rule code theory.
//!
//! Loading referenced theory files is delegated to a caller-supplied
//! closure so this module never touches the filesystem.

use crate::kernel::{check, CheckReport, Context};
use crate::proof::ProofTerm;
use crate::parse::{
    parse_theory_file, resolve_closed_prop, resolve_prop, resolve_proof, resolve_term, PrfItem,
    ProofFile, ResolveError, TFile, TheoryFile, TheorySpec, ThyItem, UseAxiom,
};
use crate::rewrite::{PropRule, TermRule};
use crate::syntax::{Prop, Signature, Sort, Var};
use crate::theory::{builtin, SchemeInstanceRequest, Theory, TheoryError};
use crate::translate::{compile, eps_of, t_normalize, type_of, TTerm, TType, TTypeError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("a proof file must begin with a `theory <name>.` statement")]
    MissingTheory,
    #[error("only one `theory` statement is allowed, at the top of the file")]
    MisplacedTheory,
    #[error("`extend` must be the first statement of a theory file")]
    MisplacedExtend,
    #[error("unknown built-in theory `{0}`")]
    UnknownBuiltin(String),
    #[error("cannot load theory `{path}`: {message}")]
    Load { path: String, message: String },
    #[error("in {context}: {source}")]
    Resolve { context: String, source: ResolveError },
    #[error("in {context}: {source}")]
    Theory { context: String, source: TheoryError },
    #[error("theory is not well-formed: {0}")]
    IllFormedTheory(String),
    #[error("definition `{name}`: {source}")]
    ProgramType { name: String, source: TTypeError },
    #[error("definition `{name}` declares type `{declared}` but has type `{actual}`")]
    DeclaredType { name: String, declared: String, actual: String },
    #[error("definition `{name}` did not normalize within {budget} steps")]
    ProgramBudget { name: String, budget: usize },
}

// ---------------------------------------------------------------------------
// Theory files

/// Build a theory from a parsed theory file.  `name` labels a from-scratch
/// theory; a file that extends a built-in keeps the built-in's name.
pub fn build_theory(file: &TheoryFile, name: &str) -> Result<Theory, ScriptError> {
    let (mut th, rest) = match file.items.first() {
        Some(ThyItem::Extend(base)) => {
            let th = builtin(base).ok_or_else(|| ScriptError::UnknownBuiltin(base.clone()))?;
            (th, &file.items[1..])
        }
        _ => (Theory::new(name, Signature::new()), &file.items[..]),
    };
    let mut anon_rules = 0usize;
    let mut anon = |named: &Option<String>| {
        named.clone().unwrap_or_else(|| {
            anon_rules += 1;
            format!("rule{anon_rules}")
        })
    };
    for item in rest {
        match item {
            ThyItem::Extend(_) => return Err(ScriptError::MisplacedExtend),
            ThyItem::DeclSort(s) => {
                th.signature_mut().declare_sort(Sort(s.clone()));
            }
            ThyItem::DeclFun { name, args, result } => {
                th.signature_mut()
                    .declare_function(
                        name.clone(),
                        args.iter().map(|s| Sort(s.clone())).collect(),
                        Sort(result.clone()),
                    )
                    .map_err(|e| ScriptError::IllFormedTheory(format!("fun {name}: {e}")))?;
            }
            ThyItem::DeclPred { name, args } => {
                th.signature_mut()
                    .declare_predicate(name.clone(), args.iter().map(|s| Sort(s.clone())).collect())
                    .map_err(|e| ScriptError::IllFormedTheory(format!("pred {name}: {e}")))?;
            }
            ThyItem::TermRule { name, lhs, rhs } => {
                let rname = anon(name);
                let context = format!("rule {rname}");
                let mut fv = BTreeMap::new();
                let lhs = resolve_term(th.signature(), lhs, None, &mut fv)
                    .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
                let rhs = resolve_term(th.signature(), rhs, None, &mut fv)
                    .map_err(|source| ScriptError::Resolve { context, source })?;
                th.add_term_rule(TermRule::new(rname, lhs, rhs));
            }
            ThyItem::PropRule { name, lhs, rhs } => {
                let rname = anon(name);
                let context = format!("prop-rule {rname}");
                let mut fv = BTreeMap::new();
                let lhs = resolve_prop(th.signature(), lhs, &mut fv)
                    .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
                let rhs = resolve_prop(th.signature(), rhs, &mut fv)
                    .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
                let Prop::Atom(head, args) = lhs else {
                    // The parser already insists on an atom; keep the check
                    // for programmatically built files.
                    return Err(ScriptError::IllFormedTheory(format!(
                        "{context}: left side must be an atom"
                    )));
                };
                th.add_prop_rule(PropRule::new(rname, head, args, rhs));
            }
            ThyItem::Axiom { name, prop } => {
                let p = resolve_closed_prop(th.signature(), prop).map_err(|source| {
                    ScriptError::Resolve { context: format!("axiom {name}"), source }
                })?;
                th.add_axiom(name.clone(), p);
            }
        }
    }
    th.check_wellformed().map_err(ScriptError::IllFormedTheory)?;
    Ok(th)
}

// ---------------------------------------------------------------------------
// Proof files

/// The theory statement, which must open the file and appear only once.
pub fn proof_file_theory(file: &ProofFile) -> Result<&TheorySpec, ScriptError> {
    match file.items.first() {
        Some(PrfItem::Theory(spec)) => {
            if file.items[1..].iter().any(|i| matches!(i, PrfItem::Theory(_))) {
                Err(ScriptError::MisplacedTheory)
            } else {
                Ok(spec)
            }
        }
        _ => Err(ScriptError::MissingTheory),
    }
}

/// Turn a theory spec into a theory.  `load` fetches the text of a
/// referenced theory file given the path as written.
pub fn resolve_theory_spec(
    spec: &TheorySpec,
    load: impl FnOnce(&str) -> Result<String, String>,
) -> Result<Theory, ScriptError> {
    match spec {
        TheorySpec::Builtin(name) => {
            builtin(name).ok_or_else(|| ScriptError::UnknownBuiltin(name.clone()))
        }
        TheorySpec::File(path) => {
            let text = load(path)
                .map_err(|message| ScriptError::Load { path: path.clone(), message })?;
            let parsed = parse_theory_file(&text)
                .map_err(|e| ScriptError::Load { path: path.clone(), message: e.to_string() })?;
            let stem = std::path::Path::new(path)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("theory");
            build_theory(&parsed, stem)
        }
    }
}

/// The result of checking one `theorem` statement.
#[derive(Clone, Debug)]
pub struct TheoremOutcome {
    pub name: String,
    pub goal: Prop,
    pub report: CheckReport,
}

/// Check every theorem of a proof file, in order.  Hypotheses accumulate:
/// first the `use axiom` statements, then each theorem that checked out.
/// The theory is mutable because instantiating comprehension registers a
/// class symbol (and, in rule style, a rewrite rule).
pub fn check_proof_file(
    thy: &mut Theory,
    file: &ProofFile,
    fuel: u32,
) -> Result<Vec<TheoremOutcome>, ScriptError> {
    let mut ctx = Context::new();
    let mut outcomes = Vec::new();
    for (idx, item) in file.items.iter().enumerate() {
        match item {
            PrfItem::Theory(_) => {
                if idx != 0 {
                    return Err(ScriptError::MisplacedTheory);
                }
            }
            PrfItem::Use(u) => {
                let prop = use_axiom_prop(thy, u)?;
                let label = u.alias.clone().unwrap_or_else(|| u.axiom.clone());
                ctx.push(label, prop);
            }
            PrfItem::Theorem { name, prop, proof } => {
                let context = format!("theorem {name}");
                let goal = resolve_closed_prop(thy.signature(), prop)
                    .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
                let proof = resolve_proof(thy.signature(), proof)
                    .map_err(|source| ScriptError::Resolve { context, source })?;
                let report = check(thy.signature(), thy.rules(), &ctx, &proof, &goal, fuel);
                if report.is_valid() {
                    ctx.push(name.clone(), goal.clone());
                }
                outcomes.push(TheoremOutcome { name: name.clone(), goal, report });
            }
        }
    }
    Ok(outcomes)
}

/// One theorem of a proof file, resolved and paired with the hypotheses
/// visible to it, ready for an isolated kernel call.
#[derive(Clone, Debug)]
pub struct PreparedTheorem {
    pub name: String,
    pub goal: Prop,
    pub proof: ProofTerm,
    pub ctx: Context,
}

/// Resolve a proof file into independently checkable units without running
/// the kernel.  Unlike [`check_proof_file`], every theorem's statement is
/// added to the context for its successors whether or not it will check out,
/// so the units can be verified in any order or concurrently; a failed
/// theorem then invalidates the file as a whole rather than the theorems
/// citing it.
pub fn prepare_proof_file(
    thy: &mut Theory,
    file: &ProofFile,
) -> Result<Vec<PreparedTheorem>, ScriptError> {
    let mut ctx = Context::new();
    let mut units = Vec::new();
    for (idx, item) in file.items.iter().enumerate() {
        match item {
            PrfItem::Theory(_) => {
                if idx != 0 {
                    return Err(ScriptError::MisplacedTheory);
                }
            }
            PrfItem::Use(u) => {
                let prop = use_axiom_prop(thy, u)?;
                let label = u.alias.clone().unwrap_or_else(|| u.axiom.clone());
                ctx.push(label, prop);
            }
            PrfItem::Theorem { name, prop, proof } => {
                let context = format!("theorem {name}");
                let goal = resolve_closed_prop(thy.signature(), prop)
                    .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
                let proof = resolve_proof(thy.signature(), proof)
                    .map_err(|source| ScriptError::Resolve { context, source })?;
                units.push(PreparedTheorem {
                    name: name.clone(),
                    goal: goal.clone(),
                    proof,
                    ctx: ctx.clone(),
                });
                ctx.push(name.clone(), goal);
            }
        }
    }
    Ok(units)
}

/// The proposition a `use axiom` statement adds to the context: a named
/// axiom as-is, or a scheme instantiated with the `with` bindings.  The
/// distinguished variable defaults to `x : iota`; unsorted parameters
/// default to `iota` as well.
fn use_axiom_prop(thy: &mut Theory, u: &UseAxiom) -> Result<Prop, ScriptError> {
    let context = format!("use axiom {}", u.axiom);
    let request = match &u.body {
        None => None,
        Some(body) => {
            let sort_in = |s: &Option<String>| {
                s.as_ref().map(|n| Sort(n.clone())).unwrap_or_else(Sort::iota)
            };
            let (var_name, var_sort) = match &u.var {
                Some((n, s)) => (n.clone(), sort_in(s)),
                None => ("x".to_string(), Sort::iota()),
            };
            let params: Vec<Var> =
                u.params.iter().map(|(n, s)| Var::new(n.clone(), sort_in(s))).collect();
            let mut fv = BTreeMap::new();
            fv.insert(var_name.clone(), var_sort.clone());
            for p in &params {
                fv.insert(p.name.clone(), p.sort.clone());
            }
            let body = resolve_prop(thy.signature(), body, &mut fv)
                .map_err(|source| ScriptError::Resolve { context: context.clone(), source })?;
            Some(SchemeInstanceRequest {
                scheme: u.axiom.clone(),
                body,
                var: Var::new(var_name, var_sort),
                params,
            })
        }
    };
    thy.axiom_instance(&u.axiom, request.as_ref())
        .map_err(|source| ScriptError::Theory { context, source })
}

// ---------------------------------------------------------------------------
// Program files

/// The result of checking one `tdef`: its normal form and the kernel's
/// verdict on the compiled proof.
#[derive(Clone, Debug)]
pub struct TDefOutcome {
    pub name: String,
    pub ty: TType,
    /// The definition with all earlier definitions inlined.
    pub term: TTerm,
    pub normal_form: TTerm,
    pub report: CheckReport,
}

/// Check a program file: each definition is inlined into its successors,
/// type-checked against its declared type, normalized, compiled to a proof,
/// and the proof certified against the membership proposition of its type.
pub fn check_t_file(
    file: &TFile,
    fuel: u32,
    step_budget: usize,
) -> Result<Vec<TDefOutcome>, ScriptError> {
    let thy = crate::theory::theory_t();
    let mut defs: Vec<(String, TTerm)> = Vec::new();
    let mut out = Vec::new();
    for def in &file.defs {
        let mut term = def.term.clone();
        for (dname, dterm) in &defs {
            term = term.subst(dname, dterm);
        }
        let actual = type_of(&mut Vec::new(), &term)
            .map_err(|source| ScriptError::ProgramType { name: def.name.clone(), source })?;
        if actual != def.ty {
            return Err(ScriptError::DeclaredType {
                name: def.name.clone(),
                declared: def.ty.to_string(),
                actual: actual.to_string(),
            });
        }
        let (normal_form, _) = t_normalize(&term, step_budget)
            .map_err(|b| ScriptError::ProgramBudget { name: def.name.clone(), budget: b.budget })?;
        let proof = compile(&term);
        let goal = eps_of(&def.ty);
        let report = check(thy.signature(), thy.rules(), &Context::new(), &proof, &goal, fuel);
        out.push(TDefOutcome {
            name: def.name.clone(),
            ty: def.ty.clone(),
            term: term.clone(),
            normal_form,
            report,
        });
        defs.push((def.name.clone(), term));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_proof_file, parse_t_file, parse_term};
    use crate::rewrite::normalize_term;
    use crate::theory::TheoryError;

    fn run_prf(src: &str) -> (Theory, Vec<TheoremOutcome>) {
        let file = parse_proof_file(src).unwrap();
        let spec = proof_file_theory(&file).unwrap().clone();
        let mut thy = resolve_theory_spec(&spec, |_| Err("no loader".into())).unwrap();
        let out = check_proof_file(&mut thy, &file, 128).unwrap();
        (thy, out)
    }

    #[test]
    fn theory_files_build_working_theories() {
        let src = "
            sort iota.
            fun z : iota.
            fun s : iota -> iota.
            fun add : iota iota -> iota.
            pred eq : iota iota.
            rule add(z, y) --> y.
            rule add_succ : add(s(x), y) --> s(add(x, y)).
            axiom eq_refl : forall a:iota. eq(a, a).
        ";
        let thy = build_theory(&parse_theory_file(src).unwrap(), "toy").unwrap();
        assert_eq!(thy.name(), "toy");
        assert_eq!(thy.rules().term_rules().len(), 2);
        assert_eq!(thy.rules().term_rules()[0].name, "rule1");
        assert_eq!(thy.rules().term_rules()[1].name, "add_succ");
        assert_eq!(thy.axioms().len(), 1);
        let two = parse_term("add(s(z), s(z))").unwrap();
        let two = resolve_term(thy.signature(), &two, None, &mut BTreeMap::new()).unwrap();
        let normal = normalize_term(&two, thy.rules()).unwrap();
        assert_eq!(normal.to_string(), "s(s(z))");
    }

    #[test]
    fn extend_builds_on_a_builtin() {
        let file = parse_theory_file("extend ha-mod. axiom four : 2 + 2 = 4.").unwrap();
        let thy = build_theory(&file, "ignored").unwrap();
        assert_eq!(thy.name(), "ha-mod");
        assert_eq!(thy.axioms().len(), 1);
        assert!(thy.rules().term_rules().len() >= 6);

        let bad = parse_theory_file("sort iota. extend ha.").unwrap();
        assert_eq!(build_theory(&bad, "x").unwrap_err(), ScriptError::MisplacedExtend);
        assert_eq!(
            build_theory(&parse_theory_file("extend nope.").unwrap(), "x").unwrap_err(),
            ScriptError::UnknownBuiltin("nope".into())
        );
    }

    #[test]
    fn ill_formed_files_are_rejected() {
        let undeclared = parse_theory_file("sort iota. fun f : iota -> bad.").unwrap();
        assert!(matches!(
            build_theory(&undeclared, "x"),
            Err(ScriptError::IllFormedTheory(_))
        ));
        let unresolved = parse_theory_file("extend ha. axiom a : Q(0).").unwrap();
        assert!(matches!(build_theory(&unresolved, "x"), Err(ScriptError::Resolve { .. })));
    }

    #[test]
    fn proof_files_check_theorems_in_order() {
        let (_, out) = run_prf(
            "
            theory ha-mod.
            theorem two_two : 2 + 2 = 4 := tfun (p : kappa) => fun (a : 4 in p) => a.
            theorem even4 : exists x:iota. 2 * x = 4 :=
                ex_intro(2, two_two, x:iota. 2 * x = 4).
        ",
        );
        assert_eq!(out.len(), 2);
        assert!(out[0].report.is_valid(), "{:?}", out[0].report.detail);
        // The second theorem cites the first by name.
        assert!(out[1].report.is_valid(), "{:?}", out[1].report.detail);
    }

    #[test]
    fn failed_theorems_do_not_become_hypotheses() {
        let (_, out) = run_prf(
            "
            theory ha-mod.
            theorem wrong : 0 = 1 := triv.
            theorem uses_wrong : 0 = 1 := wrong.
        ",
        );
        assert!(!out[0].report.is_valid());
        assert!(!out[1].report.is_valid());
    }

    #[test]
    fn use_axiom_brings_hypotheses_into_scope() {
        let (_, out) = run_prf(
            "
            theory ha-n.
            use axiom nat_zero.
            theorem z : N(0) := nat_zero.
            use axiom nat_succ as ns.
            theorem one : N(1) := ns @ 0 nat_zero.
        ",
        );
        assert!(out.iter().all(|o| o.report.is_valid()), "{out:?}");
    }

    #[test]
    fn schemes_instantiate_through_use_axiom() {
        let (_, out) = run_prf(
            "
            theory ha.
            use axiom induction as ind with P := x = x, x := x.
            theorem inst :
                (0 = 0) => (forall y:iota. y = y => S(y) = S(y)) => forall n:iota. n = n
                := ind.
        ",
        );
        assert!(out[0].report.is_valid(), "{:?}", out[0].report.detail);
    }

    #[test]
    fn scheme_variable_must_be_an_individual() {
        let file = parse_proof_file(
            "theory ha. use axiom induction with P := 0 = 0, x := y:kappa.",
        )
        .unwrap();
        let mut thy = builtin("ha").unwrap();
        let err = check_proof_file(&mut thy, &file, 32).unwrap_err();
        assert!(matches!(
            err,
            ScriptError::Theory { source: TheoryError::BadSchemeVariable(_), .. }
        ));
        // A variable used in the body at the wrong sort dies in resolution.
        let file = parse_proof_file(
            "theory ha. use axiom induction with P := x = x, x := x:kappa.",
        )
        .unwrap();
        let mut thy = builtin("ha").unwrap();
        let err = check_proof_file(&mut thy, &file, 32).unwrap_err();
        assert!(matches!(err, ScriptError::Resolve { .. }));
    }

    #[test]
    fn comprehension_registers_a_class_symbol() {
        let file = parse_proof_file(
            "
            theory ha-mod.
            use axiom comprehension as even_set with P := exists y:iota. x = y + y, x := x.
            theorem tautology : true := triv.
        ",
        )
        .unwrap();
        let mut thy = builtin("ha-mod").unwrap();
        let before = thy.rules().prop_rules().len();
        let out = check_proof_file(&mut thy, &file, 64).unwrap();
        assert!(out[0].report.is_valid());
        assert_eq!(
            thy.rules().prop_rules().len(),
            before + 1,
            "rule-style comprehension adds a membership rewrite rule"
        );
    }

    #[test]
    fn program_files_type_check_compile_and_normalize() {
        let file = parse_t_file(
            "
            tdef double : nat -> nat :=
                fun (n : nat) => rec[nat](0, fun (k : nat) => fun (r : nat) => S(S(r)), n).
            tdef four : nat := double 2.
        ",
        )
        .unwrap();
        let out = check_t_file(&file, 256, 10_000).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|d| d.report.is_valid()), "{out:?}");
        assert_eq!(out[1].normal_form.as_numeral(), Some(4));

        let bad = parse_t_file("tdef f : nat := fun (n : nat) => n.").unwrap();
        assert!(matches!(check_t_file(&bad, 16, 100), Err(ScriptError::DeclaredType { .. })));
        let open = parse_t_file("tdef g : nat := missing.").unwrap();
        assert!(matches!(check_t_file(&open, 16, 100), Err(ScriptError::ProgramType { .. })));
    }

    #[test]
    fn file_level_mistakes_are_reported() {
        let no_thy = parse_proof_file("theorem a : true := triv.").unwrap();
        assert_eq!(proof_file_theory(&no_thy).unwrap_err(), ScriptError::MissingTheory);
        let two = parse_proof_file("theory ha. theory t.").unwrap();
        assert_eq!(proof_file_theory(&two).unwrap_err(), ScriptError::MisplacedTheory);
        assert_eq!(
            resolve_theory_spec(&TheorySpec::Builtin("nope".into()), |_| Err(String::new()))
                .unwrap_err(),
            ScriptError::UnknownBuiltin("nope".into())
        );
        // File specs are fetched through the loader and named by their stem.
        let thy = resolve_theory_spec(&TheorySpec::File("dir/toy.thy".into()), |p| {
            assert_eq!(p, "dir/toy.thy");
            Ok("sort iota. fun z : iota.".into())
        })
        .unwrap();
        assert_eq!(thy.name(), "toy");
        let missing = resolve_theory_spec(&TheorySpec::File("gone.thy".into()), |_| {
            Err("no such file".into())
        })
        .unwrap_err();
        assert!(matches!(missing, ScriptError::Load { .. }));
    }
}
