//! Command-line front end: one binary with one subcommand per tool.
//!
//! Exit codes are a function of the verdicts alone: `0` means every check
//! succeeded (or no countermodel exists within the bound), `1` means a check
//! failed or a countermodel was found, `2` means the input did not parse,
//! load, or sort-check, and `3` means a fuel or step budget ran out before a
//! verdict was reached.  Output on stdout is deterministic given the inputs
//! and flags; diagnostics for bad inputs go to stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use crate::heyting::{find_countermodel, Countermodel};
use crate::kernel::{check, CheckReport, Verdict};
use crate::parse::{parse_proof_file, parse_prop, parse_t_file, parse_theory_file, resolve_prop};
use crate::reduce::{normalize, DEFAULT_STEP_BUDGET};
use crate::rewrite::{congruent, Fuel, DEFAULT_FUEL};
use crate::script::{
    build_theory, check_t_file, prepare_proof_file, proof_file_theory, resolve_theory_spec,
    PreparedTheorem, ScriptError,
};
use crate::syntax::Prop;
use crate::theory::{builtin, SchemeKind, Theory, BUILTIN_NAMES};
use crate::translate::{relativize, simulate_step, SimulationError, DEFAULT_SIMULATION_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

/// Default number of poset points bounding the countermodel search.
pub const DEFAULT_MAX_SIZE: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "modarith",
    version,
    about = "Proof checking, normalization, and countermodel search for \
             natural deduction modulo rewriting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a file: each theorem of a .prf, each definition of a .t, or
    /// the well-formedness of a .thy
    Check(CheckArgs),
    /// Normalize every proof of a .prf file and re-check the normal forms
    Normalize(NormalizeArgs),
    /// Decide whether two propositions are congruent modulo a theory's rules
    Congruent(CongruentArgs),
    /// Search finite Heyting algebras for a countermodel to a proposition
    Countermodel(CountermodelArgs),
    /// Guard every quantifier of a proposition with the numeric predicate
    Relativize(RelativizeArgs),
    /// Type-check a program file, compile it, and certify the proofs
    TCheck(TCheckArgs),
    /// Print a theory: sorts, symbols, rewrite rules, axioms, and schemes
    TheoryInfo(TheoryInfoArgs),
}

#[derive(Args, Debug)]
struct TheorySel {
    /// Built-in theory name (ha, ha-pred, ha-n, ha-n-weak, ha-class, ha-mod,
    /// ha-mod-variant, t, t-variant) or path to a .thy file
    #[arg(long)]
    theory: Option<String>,
}

#[derive(Args, Debug)]
struct FuelArg {
    /// Unfolding budget for congruence tests inside the kernel
    #[arg(long, default_value_t = DEFAULT_FUEL, env = "MODARITH_FUEL")]
    fuel: u32,
}

#[derive(Args, Debug)]
struct StepsArg {
    /// Step budget for proof normalization
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET, env = "MODARITH_STEPS")]
    steps: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// File to check (.prf, .t, or .thy)
    file: PathBuf,
    #[command(flatten)]
    theory: TheorySel,
    #[command(flatten)]
    fuel: FuelArg,
    #[command(flatten)]
    steps: StepsArg,
    /// Check up to this many theorems concurrently
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct NormalizeArgs {
    /// Proof file whose theorems should be normalized
    file: PathBuf,
    #[command(flatten)]
    theory: TheorySel,
    #[command(flatten)]
    fuel: FuelArg,
    #[command(flatten)]
    steps: StepsArg,
    /// Print the rule tag of every reduction step
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct CongruentArgs {
    /// First proposition
    left: String,
    /// Second proposition
    right: String,
    #[command(flatten)]
    theory: TheorySel,
    #[command(flatten)]
    fuel: FuelArg,
}

#[derive(Args, Debug)]
struct CountermodelArgs {
    /// Proposition to refute; atoms are opaque propositional unknowns
    prop: String,
    /// Largest poset (by point count) whose downset algebra is searched
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE, env = "MODARITH_MAX_SIZE")]
    max_size: usize,
}

#[derive(Args, Debug)]
struct RelativizeArgs {
    /// Proposition over plain arithmetic
    prop: String,
    #[command(flatten)]
    theory: TheorySel,
}

#[derive(Args, Debug)]
struct TCheckArgs {
    /// Program file (.t) to check
    file: PathBuf,
    #[command(flatten)]
    fuel: FuelArg,
    #[command(flatten)]
    steps: StepsArg,
}

#[derive(Args, Debug)]
struct TheoryInfoArgs {
    /// Built-in theory name or path to a .thy file
    theory: String,
}

/// Parse a full argument vector (program name first) and run the selected
/// subcommand, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // `--help` and `--version` land here too; they are not errors.
            let code = if err.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Normalize(args) => cmd_normalize(args),
        Command::Congruent(args) => cmd_congruent(args),
        Command::Countermodel(args) => cmd_countermodel(args),
        Command::Relativize(args) => cmd_relativize(args),
        Command::TCheck(args) => cmd_t_check(args),
        Command::TheoryInfo(args) => cmd_theory_info(args),
    }
}

fn input_error(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

/// Script-level failures are input errors except for exhausted budgets.
fn script_error_code(err: &ScriptError) -> i32 {
    match err {
        ScriptError::ProgramBudget { .. } => {
            eprintln!("error: {err}");
            EXIT_UNDECIDED
        }
        _ => input_error(err),
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Valid => "valid",
        Verdict::Invalid => "invalid",
        Verdict::Undecided => "undecided",
    }
}

/// Fold one verdict into an exit code; a failure outranks an open budget.
fn merge_verdict(code: i32, v: Verdict) -> i32 {
    match v {
        Verdict::Valid => code,
        Verdict::Invalid => EXIT_FAIL,
        Verdict::Undecided => {
            if code == EXIT_FAIL {
                EXIT_FAIL
            } else {
                EXIT_UNDECIDED
            }
        }
    }
}

/// Resolve `--theory`: a built-in name, or anything else as a .thy path.
fn theory_from_selector(selector: &str) -> Result<Theory, String> {
    if let Some(thy) = builtin(selector) {
        return Ok(thy);
    }
    let path = Path::new(selector);
    if path.extension().is_some_and(|e| e == "thy") || path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read `{selector}`: {e}"))?;
        let parsed = parse_theory_file(&text).map_err(|e| format!("{selector}: {e}"))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("theory");
        build_theory(&parsed, stem).map_err(|e| format!("{selector}: {e}"))
    } else {
        Err(format!(
            "unknown theory `{selector}`; built-ins are {}",
            BUILTIN_NAMES.join(", ")
        ))
    }
}

/// Load a .prf file and the theory it runs in.  A `--theory` flag overrides
/// the file's own `theory` statement; a path in that statement is resolved
/// relative to the proof file's directory.
fn load_proof_file(
    path: &Path,
    selector: &Option<String>,
) -> Result<(Theory, crate::parse::ProofFile), i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read `{}`: {e}", path.display())))?;
    let file = parse_proof_file(&text)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let thy = match selector {
        Some(sel) => theory_from_selector(sel).map_err(input_error)?,
        None => {
            let spec = proof_file_theory(&file).map_err(input_error)?;
            let dir = path.parent().unwrap_or_else(|| Path::new("."));
            resolve_theory_spec(spec, |rel| {
                std::fs::read_to_string(dir.join(rel)).map_err(|e| e.to_string())
            })
            .map_err(input_error)?
        }
    };
    Ok((thy, file))
}

/// Run the kernel over prepared theorems, optionally on several threads.
/// Each unit is independent, so the reports do not depend on scheduling.
fn check_units(thy: &Theory, units: &[PreparedTheorem], fuel: u32, jobs: usize) -> Vec<CheckReport> {
    let one = |u: &PreparedTheorem| check(thy.signature(), thy.rules(), &u.ctx, &u.proof, &u.goal, fuel);
    if jobs <= 1 || units.len() <= 1 {
        return units.iter().map(one).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CheckReport>>> = units.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(units.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(unit) = units.get(i) else { break };
                *slots[i].lock().unwrap() = Some(one(unit));
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

fn cmd_check(args: CheckArgs) -> i32 {
    match args.file.extension().and_then(|e| e.to_str()) {
        Some("t") => {
            return cmd_t_check(TCheckArgs { file: args.file, fuel: args.fuel, steps: args.steps })
        }
        Some("thy") => {
            let selector = args.file.to_string_lossy().into_owned();
            return match theory_from_selector(&selector) {
                Ok(thy) => {
                    println!("theory {}: well-formed", thy.name());
                    EXIT_OK
                }
                Err(e) => input_error(e),
            };
        }
        _ => {}
    }
    let (mut thy, file) = match load_proof_file(&args.file, &args.theory.theory) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let units = match prepare_proof_file(&mut thy, &file) {
        Ok(units) => units,
        Err(e) => return script_error_code(&e),
    };
    let reports = check_units(&thy, &units, args.fuel.fuel, args.jobs);
    let mut code = EXIT_OK;
    let mut tally = [0usize; 3];
    for (unit, report) in units.iter().zip(&reports) {
        println!("theorem {}: {}", unit.name, verdict_word(report.verdict));
        if let Some(detail) = &report.detail {
            println!("  {detail}");
        }
        code = merge_verdict(code, report.verdict);
        tally[report.verdict as usize] += 1;
    }
    println!(
        "result: {} valid, {} invalid, {} undecided",
        tally[Verdict::Valid as usize],
        tally[Verdict::Invalid as usize],
        tally[Verdict::Undecided as usize]
    );
    code
}

fn cmd_normalize(args: NormalizeArgs) -> i32 {
    let (mut thy, file) = match load_proof_file(&args.file, &args.theory.theory) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let units = match prepare_proof_file(&mut thy, &file) {
        Ok(units) => units,
        Err(e) => return script_error_code(&e),
    };
    let mut code = EXIT_OK;
    for unit in &units {
        match normalize(&unit.proof, args.steps.steps) {
            Err(e) => {
                println!("theorem {}: {e}", unit.name);
                code = merge_verdict(code, Verdict::Undecided);
            }
            Ok(report) => {
                println!("theorem {}: normal after {} step(s)", unit.name, report.steps);
                if args.trace {
                    for (i, tag) in report.trace.iter().enumerate() {
                        println!("  step {}: {}", i + 1, tag.name());
                    }
                }
                println!("  normal form: {}", report.normal_form);
                let recheck = check(
                    thy.signature(),
                    thy.rules(),
                    &unit.ctx,
                    &report.normal_form,
                    &unit.goal,
                    args.fuel.fuel,
                );
                println!("  re-check: {}", verdict_word(recheck.verdict));
                if let Some(detail) = &recheck.detail {
                    println!("  {detail}");
                }
                code = merge_verdict(code, recheck.verdict);
            }
        }
    }
    code
}

fn cmd_congruent(args: CongruentArgs) -> i32 {
    let selector = args.theory.theory.as_deref().unwrap_or("ha-mod");
    let thy = match theory_from_selector(selector) {
        Ok(thy) => thy,
        Err(e) => return input_error(e),
    };
    // One shared table so a free variable means the same thing on both sides.
    let mut fv = std::collections::BTreeMap::new();
    let mut side = |label: &str, src: &str| -> Result<Prop, i32> {
        let parsed = parse_prop(src).map_err(|e| input_error(format!("{label}: {e}")))?;
        resolve_prop(thy.signature(), &parsed, &mut fv)
            .map_err(|e| input_error(format!("{label}: {e}")))
    };
    let left = match side("left", &args.left) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let right = match side("right", &args.right) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let mut fuel = Fuel::new(args.fuel.fuel);
    match congruent(&left, &right, thy.rules(), &mut fuel) {
        Ok(true) => {
            println!("congruent");
            EXIT_OK
        }
        Ok(false) => {
            println!("not congruent");
            EXIT_FAIL
        }
        Err(e) => {
            println!("undecided: {e}");
            EXIT_UNDECIDED
        }
    }
}

fn print_countermodel(cm: &Countermodel) {
    let a = &cm.algebra;
    println!("countermodel found");
    println!(
        "algebra `{}` with {} elements (bot = e{}, top = e{})",
        a.name, a.size, a.bot, a.top
    );
    println!("order (row i, column j: 1 iff e_i <= e_j):");
    for i in 0..a.size {
        let mut row = String::new();
        for j in 0..a.size {
            let _ = write!(row, " {}", u8::from(a.leq(i, j)));
        }
        println!("  e{i}:{row}");
    }
    if !cm.assignment.is_empty() {
        println!("atoms:");
        for (atom, value) in &cm.assignment {
            println!("  {atom} := e{value}");
        }
    }
    println!("value: e{} (top is e{})", cm.value, a.top);
}

fn cmd_countermodel(args: CountermodelArgs) -> i32 {
    // Atoms stay opaque, so the proposition is only parsed, never resolved
    // against a signature.
    let prop = match parse_prop(&args.prop) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    match find_countermodel(&prop, args.max_size) {
        Ok(Some(cm)) => {
            print_countermodel(&cm);
            EXIT_FAIL
        }
        Ok(None) => {
            println!("no countermodel in downset algebras of posets up to {} points", args.max_size);
            EXIT_OK
        }
        Err(e) => input_error(e),
    }
}

fn cmd_relativize(args: RelativizeArgs) -> i32 {
    let selector = args.theory.theory.as_deref().unwrap_or("ha");
    let thy = match theory_from_selector(selector) {
        Ok(thy) => thy,
        Err(e) => return input_error(e),
    };
    let parsed = match parse_prop(&args.prop) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let mut fv = std::collections::BTreeMap::new();
    let resolved = match resolve_prop(thy.signature(), &parsed, &mut fv) {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    match relativize(&resolved) {
        Ok(guarded) => {
            println!("{guarded}");
            EXIT_OK
        }
        Err(e) => input_error(e),
    }
}

fn cmd_t_check(args: TCheckArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(text) => text,
        Err(e) => return input_error(format!("cannot read `{}`: {e}", args.file.display())),
    };
    let file = match parse_t_file(&text) {
        Ok(file) => file,
        Err(e) => return input_error(format!("{}: {e}", args.file.display())),
    };
    let outcomes = match check_t_file(&file, args.fuel.fuel, args.steps.steps) {
        Ok(outcomes) => outcomes,
        Err(e) => return script_error_code(&e),
    };
    let mut code = EXIT_OK;
    for out in &outcomes {
        println!("tdef {} : {}", out.name, out.ty);
        println!("  normal form: {}", out.normal_form);
        println!("  proof: {}", verdict_word(out.report.verdict));
        if let Some(detail) = &out.report.detail {
            println!("  {detail}");
        }
        code = merge_verdict(code, out.report.verdict);
        match simulate_step(&out.term, DEFAULT_SIMULATION_BUDGET) {
            Ok(None) => println!("  simulation: already a normal form"),
            Ok(Some(sim)) => println!(
                "  simulation: one program step matched by {} proof step(s)",
                sim.proof_steps
            ),
            Err(SimulationError::Budget { budget }) => {
                println!("  simulation: undecided after exploring {budget} proofs");
                code = merge_verdict(code, Verdict::Undecided);
            }
            Err(e @ SimulationError::NotFound { .. }) => {
                println!("  simulation: failed ({e})");
                code = merge_verdict(code, Verdict::Invalid);
            }
        }
    }
    code
}

fn scheme_kind_word(kind: SchemeKind) -> &'static str {
    match kind {
        SchemeKind::Induction => "induction",
        SchemeKind::RelativizedInduction => "relativized induction",
        SchemeKind::WeakRelativizedInduction => "weak relativized induction",
        SchemeKind::Comprehension => "comprehension",
    }
}

fn cmd_theory_info(args: TheoryInfoArgs) -> i32 {
    let thy = match theory_from_selector(&args.theory) {
        Ok(thy) => thy,
        Err(e) => return input_error(e),
    };
    let sig = thy.signature();
    println!("theory {}", thy.name());
    for sort in sig.sorts() {
        println!("sort {}.", sort.0);
    }
    for (name, rank) in sig.functions() {
        if rank.args.is_empty() {
            println!("fun {name} : {}.", rank.result.0);
        } else {
            let args: Vec<&str> = rank.args.iter().map(|s| s.0.as_str()).collect();
            println!("fun {name} : {} -> {}.", args.join(" "), rank.result.0);
        }
    }
    for (name, rank) in sig.predicates() {
        if rank.args.is_empty() {
            println!("pred {name}.");
        } else {
            let args: Vec<&str> = rank.args.iter().map(|s| s.0.as_str()).collect();
            println!("pred {name} : {}.", args.join(" "));
        }
    }
    for rule in thy.rules().term_rules() {
        println!("rule {} : {} --> {}.", rule.name, rule.lhs, rule.rhs);
    }
    for rule in thy.rules().prop_rules() {
        println!("prop-rule {} : {} --> {}.", rule.name, rule.lhs(), rule.rhs);
    }
    for axiom in thy.axioms() {
        println!("axiom {} : {}.", axiom.name, axiom.prop);
    }
    for scheme in thy.schemes() {
        println!("scheme {} ({}).", scheme.name, scheme_kind_word(scheme.kind));
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("modarith").chain(args.iter().copied()))
    }

    #[test]
    fn congruent_exit_codes_follow_the_verdict() {
        assert_eq!(run_args(&["congruent", "2*2 = 4", "4 = 4", "--theory", "ha-mod"]), EXIT_OK);
        assert_eq!(run_args(&["congruent", "0 = 0", "0 = S(0)", "--theory", "ha-mod"]), EXIT_FAIL);
        assert_eq!(run_args(&["congruent", "]", "4 = 4"]), EXIT_INPUT);
    }

    #[test]
    fn countermodel_finds_excluded_middle_but_not_identity() {
        assert_eq!(run_args(&["countermodel", "p \\/ ~p"]), EXIT_FAIL);
        assert_eq!(run_args(&["countermodel", "p => p"]), EXIT_OK);
        // Quantifiers are outside the propositional search.
        assert_eq!(run_args(&["countermodel", "forall x : iota. P(x)"]), EXIT_INPUT);
    }

    #[test]
    fn relativize_guards_quantifiers() {
        assert_eq!(
            run_args(&["relativize", "forall x : iota. exists y : iota. x + y = 0"]),
            EXIT_OK
        );
        // Guarded language is rejected as input.
        assert_eq!(run_args(&["relativize", "N(0)", "--theory", "ha-n"]), EXIT_INPUT);
    }

    #[test]
    fn theory_info_knows_builtins_and_rejects_strangers() {
        for name in BUILTIN_NAMES {
            assert_eq!(run_args(&["theory-info", name]), EXIT_OK);
        }
        assert_eq!(run_args(&["theory-info", "zfc"]), EXIT_INPUT);
    }

    #[test]
    fn usage_errors_are_input_errors() {
        assert_eq!(run_args(&["frobnicate"]), EXIT_INPUT);
        assert_eq!(run_args(&["congruent", "only-one-side"]), EXIT_INPUT);
        assert_eq!(run_args(&["--help"]), EXIT_OK);
    }

    #[test]
    fn theory_t_signature_rejects_arithmetic_props() {
        // The code theory has no numerals, so individual-sorted input fails
        // to resolve rather than being silently accepted.
        assert_eq!(run_args(&["congruent", "2*2 = 4", "4 = 4", "--theory", "t"]), EXIT_INPUT);
    }

    #[test]
    fn check_dispatches_on_extension() {
        let dir = std::env::temp_dir().join(format!("modarith-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let prf = dir.join("sample.prf");
        std::fs::write(
            &prf,
            "theory ha-mod.\n\
             theorem two_two : 2 + 2 = 4 := tfun (p : kappa) => fun (a : 4 in p) => a.\n",
        )
        .unwrap();
        assert_eq!(run_args(&["check", prf.to_str().unwrap()]), EXIT_OK);
        assert_eq!(run_args(&["check", prf.to_str().unwrap(), "--jobs", "4"]), EXIT_OK);

        let bad = dir.join("bad.prf");
        std::fs::write(&bad, "theory ha-mod.\ntheorem wrong : 0 = 1 := triv.\n").unwrap();
        assert_eq!(run_args(&["check", bad.to_str().unwrap()]), EXIT_FAIL);

        let garbage = dir.join("garbage.prf");
        std::fs::write(&garbage, "this is not a proof file").unwrap();
        assert_eq!(run_args(&["check", garbage.to_str().unwrap()]), EXIT_INPUT);

        let prog = dir.join("sample.t");
        std::fs::write(&prog, "tdef two : nat := S(S(0)).\n").unwrap();
        assert_eq!(run_args(&["check", prog.to_str().unwrap()]), EXIT_OK);

        let thy = dir.join("toy.thy");
        std::fs::write(&thy, "sort iota. fun z : iota.\n").unwrap();
        assert_eq!(run_args(&["check", thy.to_str().unwrap()]), EXIT_OK);

        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn normalize_reports_steps_and_rechecks() {
        let dir = std::env::temp_dir().join(format!("modarith-cli-nf-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let prf = dir.join("cut.prf");
        std::fs::write(
            &prf,
            "theory ha-mod.\n\
             theorem cut : 2 + 2 = 4 := \
             (fun (h : 2 + 2 = 4) => h) (tfun (p : kappa) => fun (a : 4 in p) => a).\n",
        )
        .unwrap();
        assert_eq!(run_args(&["normalize", prf.to_str().unwrap(), "--trace"]), EXIT_OK);
        std::fs::remove_dir_all(&dir).ok();
    }
}
