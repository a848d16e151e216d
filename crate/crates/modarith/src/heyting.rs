//! Finite Heyting-algebra semantics.
//!
//! Intuitionistic validity is checked against finite Heyting algebras.  The
//! algebras are generated as the lattices of downward-closed subsets of
//! small partial orders, which yields every finite distributive lattice and
//! hence a complete sweep of small intuitionistic truth-value structures.
//! A separate law checker validates the generated tables against the
//! defining equations, so the enumeration and the axioms cross-check each
//! other.

use crate::syntax::{Prop, Signature, Sort, Term};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A finite Heyting algebra given by operation tables over `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingAlgebra {
    pub name: String,
    pub size: usize,
    pub bot: usize,
    pub top: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
}

impl HeytingAlgebra {
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp[a][self.bot]
    }

    /// The lattice order: `a <= b` iff their meet is `a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    /// The two-element Boolean algebra.
    pub fn two() -> Self {
        Poset::antichain(1).downset_algebra("bool-2")
    }

    /// The linear algebra with `n` elements (`n >= 2`).
    pub fn chain(n: usize) -> Self {
        assert!(n >= 2);
        Poset::chain(n - 1).downset_algebra(&format!("chain-{n}"))
    }

    /// Check the defining laws of a Heyting algebra, exhaustively over the
    /// carrier.  Returns the name of the first violated law.
    pub fn check_laws(&self) -> Result<(), String> {
        let n = self.size;
        let fail = |law: &str, elems: &[usize]| {
            Err(format!("law `{law}` fails at {elems:?} in `{}`", self.name))
        };
        for table in [&self.meet, &self.join, &self.imp] {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(format!("malformed tables in `{}`", self.name));
            }
            for row in table {
                for &v in row {
                    if v >= n {
                        return Err(format!("out-of-range entry in `{}`", self.name));
                    }
                }
            }
        }
        for a in 0..n {
            if self.meet(a, a) != a {
                return fail("meet-idempotent", &[a]);
            }
            if self.join(a, a) != a {
                return fail("join-idempotent", &[a]);
            }
            if self.meet(a, self.top) != a {
                return fail("top-unit", &[a]);
            }
            if self.join(a, self.bot) != a {
                return fail("bot-unit", &[a]);
            }
            if self.imp(a, a) != self.top {
                return fail("imp-reflexive", &[a]);
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    return fail("meet-commutative", &[a, b]);
                }
                if self.join(a, b) != self.join(b, a) {
                    return fail("join-commutative", &[a, b]);
                }
                if self.meet(a, self.join(a, b)) != a {
                    return fail("meet-absorption", &[a, b]);
                }
                if self.join(a, self.meet(a, b)) != a {
                    return fail("join-absorption", &[a, b]);
                }
                if self.meet(a, self.imp(a, b)) != self.meet(a, b) {
                    return fail("modus-ponens", &[a, b]);
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        return fail("meet-associative", &[a, b, c]);
                    }
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        return fail("join-associative", &[a, b, c]);
                    }
                    if self.meet(a, self.join(b, c))
                        != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        return fail("distributivity", &[a, b, c]);
                    }
                    let left = self.leq(self.meet(a, b), c);
                    let right = self.leq(a, self.imp(b, c));
                    if left != right {
                        return fail("residuation", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// A partial order on points `0..n`, as a reflexive `leq` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub n: usize,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn antichain(n: usize) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        Poset { n, leq }
    }

    pub fn chain(n: usize) -> Self {
        let mut p = Poset::antichain(n);
        for i in 0..n {
            for j in i..n {
                p.leq[i][j] = true;
            }
        }
        p
    }

    fn is_transitive(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.leq[a][b] {
                    continue;
                }
                for c in 0..self.n {
                    if self.leq[b][c] && !self.leq[a][c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A permutation-minimal encoding of the relation, for deduplication up
    /// to isomorphism.
    fn canonical_code(&self) -> u64 {
        let mut best = u64::MAX;
        let mut perm: Vec<usize> = (0..self.n).collect();
        loop {
            let mut code = 0u64;
            for &i in &perm {
                for &j in &perm {
                    code = (code << 1) | u64::from(self.leq[i][j]);
                }
            }
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }

    fn code(&self) -> u64 {
        let mut code = 0u64;
        for row in &self.leq {
            for &b in row {
                code = (code << 1) | u64::from(b);
            }
        }
        code
    }

    /// The Heyting algebra of downward-closed subsets, ordered by inclusion.
    pub fn downset_algebra(&self, name: &str) -> HeytingAlgebra {
        let n = self.n;
        let mut downsets: Vec<u32> = Vec::new();
        'mask: for mask in 0u32..(1 << n) {
            for i in 0..n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                for j in 0..n {
                    if self.leq[j][i] && mask & (1 << j) == 0 {
                        continue 'mask;
                    }
                }
            }
            downsets.push(mask);
        }
        let index: BTreeMap<u32, usize> =
            downsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let size = downsets.len();
        let full: u32 = (1u32 << n) - 1;
        let mut meet = vec![vec![0; size]; size];
        let mut join = vec![vec![0; size]; size];
        let mut imp = vec![vec![0; size]; size];
        for (ai, &a) in downsets.iter().enumerate() {
            for (bi, &b) in downsets.iter().enumerate() {
                meet[ai][bi] = index[&(a & b)];
                join[ai][bi] = index[&(a | b)];
                // x is in (a -> b) iff every y <= x in a is also in b.
                let mut c = 0u32;
                'x: for x in 0..n {
                    for y in 0..n {
                        if self.leq[y][x] && a & (1 << y) != 0 && b & (1 << y) == 0 {
                            continue 'x;
                        }
                    }
                    c |= 1 << x;
                }
                imp[ai][bi] = index[&c];
            }
        }
        HeytingAlgebra {
            name: name.to_string(),
            size,
            bot: index[&0],
            top: index[&full],
            meet,
            join,
            imp,
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All posets on `1..=max_points` points, up to isomorphism, in a fixed
/// deterministic order (ascending size, then ascending relation code).
pub fn enumerate_posets(max_points: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 1..=max_points {
        let offdiag: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut found: Vec<(u64, Poset)> = Vec::new();
        for mask in 0u32..(1 << offdiag.len()) {
            let mut p = Poset::antichain(n);
            for (k, &(i, j)) in offdiag.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    p.leq[i][j] = true;
                }
            }
            // Antisymmetry.
            if (0..n).any(|i| (0..n).any(|j| i != j && p.leq[i][j] && p.leq[j][i])) {
                continue;
            }
            if !p.is_transitive() {
                continue;
            }
            if seen.insert(p.canonical_code()) {
                found.push((p.code(), p));
            }
        }
        found.sort_by_key(|(code, _)| *code);
        out.extend(found.into_iter().map(|(_, p)| p));
    }
    out
}

/// The downset algebras of all posets on up to `max_points` points.
pub fn enumerate_algebras(max_points: usize) -> Vec<HeytingAlgebra> {
    enumerate_posets(max_points)
        .into_iter()
        .enumerate()
        .map(|(k, p)| p.downset_algebra(&format!("downsets-p{}-{}", p.n, k)))
        .collect()
}

/// A finite first-order model: finite domains per sort, tables for the
/// function symbols, and predicate tables valued in a Heyting algebra.
#[derive(Clone, Debug)]
pub struct Model {
    pub algebra: HeytingAlgebra,
    pub domains: BTreeMap<String, usize>,
    functions: BTreeMap<String, Table>,
    predicates: BTreeMap<String, Table>,
}

/// A finite function of several arguments, stored row-major over the mixed
/// radix given by the argument domain sizes.
#[derive(Clone, Debug)]
struct Table {
    radices: Vec<usize>,
    values: Vec<usize>,
}

impl Table {
    fn get(&self, args: &[usize]) -> usize {
        let mut idx = 0;
        for (a, r) in args.iter().zip(&self.radices) {
            idx = idx * r + a;
        }
        self.values[idx]
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("no interpretation for function symbol `{0}`")]
    UnknownFunction(String),
    #[error("no interpretation for predicate symbol `{0}`")]
    UnknownPredicate(String),
    #[error("no value for free variable `{0}`")]
    UnboundVariable(String),
    #[error("no domain for sort `{0}`")]
    UnknownSort(String),
}

impl Model {
    /// A random model of the signature: domain sizes in `1..=max_domain`,
    /// uniformly random tables.
    pub fn random(
        sig: &Signature,
        algebra: HeytingAlgebra,
        max_domain: usize,
        rng: &mut impl Rng,
    ) -> Self {
        let domains: BTreeMap<String, usize> = sig
            .sorts()
            .map(|s| (s.0.clone(), rng.gen_range(1..=max_domain)))
            .collect();
        let mut functions = BTreeMap::new();
        for (name, rank) in sig.functions() {
            let radices: Vec<usize> = rank.args.iter().map(|s| domains[&s.0]).collect();
            let result = domains[&rank.result.0];
            let count: usize = radices.iter().product();
            let values = (0..count).map(|_| rng.gen_range(0..result)).collect();
            functions.insert(name.clone(), Table { radices, values });
        }
        let mut predicates = BTreeMap::new();
        for (name, rank) in sig.predicates() {
            let radices: Vec<usize> = rank.args.iter().map(|s| domains[&s.0]).collect();
            let count: usize = radices.iter().product();
            let values = (0..count).map(|_| rng.gen_range(0..algebra.size)).collect();
            predicates.insert(name.clone(), Table { radices, values });
        }
        Model { algebra, domains, functions, predicates }
    }

    pub fn domain(&self, sort: &Sort) -> Result<usize, EvalError> {
        self.domains
            .get(&sort.0)
            .copied()
            .ok_or_else(|| EvalError::UnknownSort(sort.0.clone()))
    }

    fn eval_term(&self, t: &Term, env: &mut Vec<(String, usize)>) -> Result<usize, EvalError> {
        match t {
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| *n == v.name)
                .map(|(_, d)| *d)
                .ok_or_else(|| EvalError::UnboundVariable(v.name.clone())),
            Term::App(f, args) => {
                let table = self
                    .functions
                    .get(f)
                    .ok_or_else(|| EvalError::UnknownFunction(f.clone()))?;
                let vals: Vec<usize> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                Ok(table.get(&vals))
            }
        }
    }

    /// Evaluate a proposition to an algebra element under an environment for
    /// its free term variables.  Quantifiers become meets and joins over the
    /// (finite) domain of the bound sort.
    pub fn eval(&self, p: &Prop, env: &mut Vec<(String, usize)>) -> Result<usize, EvalError> {
        let alg = &self.algebra;
        Ok(match p {
            Prop::Atom(name, args) => {
                let table = self
                    .predicates
                    .get(name)
                    .ok_or_else(|| EvalError::UnknownPredicate(name.clone()))?;
                let vals: Vec<usize> = args
                    .iter()
                    .map(|a| self.eval_term(a, env))
                    .collect::<Result<_, _>>()?;
                table.get(&vals)
            }
            Prop::Top => alg.top,
            Prop::Bottom => alg.bot,
            Prop::Implies(a, b) => {
                let va = self.eval(a, env)?;
                let vb = self.eval(b, env)?;
                alg.imp(va, vb)
            }
            Prop::And(a, b) => {
                let va = self.eval(a, env)?;
                let vb = self.eval(b, env)?;
                alg.meet(va, vb)
            }
            Prop::Or(a, b) => {
                let va = self.eval(a, env)?;
                let vb = self.eval(b, env)?;
                alg.join(va, vb)
            }
            Prop::ForAll(v, body) => {
                let d = self.domain(&v.sort)?;
                let mut acc = alg.top;
                for e in 0..d {
                    env.push((v.name.clone(), e));
                    let val = self.eval(body, env);
                    env.pop();
                    acc = alg.meet(acc, val?);
                }
                acc
            }
            Prop::Exists(v, body) => {
                let d = self.domain(&v.sort)?;
                let mut acc = alg.bot;
                for e in 0..d {
                    env.push((v.name.clone(), e));
                    let val = self.eval(body, env);
                    env.pop();
                    acc = alg.join(acc, val?);
                }
                acc
            }
        })
    }

    /// Whether the universal closure of `p` takes the top value.
    pub fn is_valid(&self, p: &Prop) -> Result<bool, EvalError> {
        let free = p.free_vars_sorted();
        let mut sizes = Vec::with_capacity(free.len());
        for v in &free {
            sizes.push(self.domain(&v.sort)?);
        }
        let mut assignment = vec![0usize; free.len()];
        loop {
            let mut env: Vec<(String, usize)> = free
                .iter()
                .zip(&assignment)
                .map(|(v, &d)| (v.name.clone(), d))
                .collect();
            if self.eval(p, &mut env)? != self.algebra.top {
                return Ok(false);
            }
            // Advance the mixed-radix odometer.
            let mut i = 0;
            loop {
                if i == free.len() {
                    return Ok(true);
                }
                assignment[i] += 1;
                if assignment[i] < sizes[i] {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }
}

/// A refuting valuation: an algebra, values for the atoms, and the non-top
/// value the proposition takes.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub algebra: HeytingAlgebra,
    pub assignment: Vec<(String, usize)>,
    pub value: usize,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "algebra `{}` with {} elements (bot = e{}, top = e{})",
            self.algebra.name, self.algebra.size, self.algebra.bot, self.algebra.top
        )?;
        for (atom, value) in &self.assignment {
            writeln!(f, "  {atom} := e{value}")?;
        }
        write!(f, "  value: e{} (not top)", self.value)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CountermodelError {
    #[error(
        "countermodel search treats atoms as opaque propositional unknowns \
         and does not handle quantifiers"
    )]
    QuantifiersUnsupported,
}

fn collect_atom_keys(p: &Prop, out: &mut Vec<String>) -> Result<(), CountermodelError> {
    match p {
        Prop::Atom(..) => {
            let key = p.to_string();
            if !out.contains(&key) {
                out.push(key);
            }
            Ok(())
        }
        Prop::Top | Prop::Bottom => Ok(()),
        Prop::Implies(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            collect_atom_keys(a, out)?;
            collect_atom_keys(b, out)
        }
        Prop::ForAll(..) | Prop::Exists(..) => Err(CountermodelError::QuantifiersUnsupported),
    }
}

fn eval_propositional(p: &Prop, alg: &HeytingAlgebra, env: &BTreeMap<String, usize>) -> usize {
    match p {
        Prop::Atom(..) => env[&p.to_string()],
        Prop::Top => alg.top,
        Prop::Bottom => alg.bot,
        Prop::Implies(a, b) => {
            alg.imp(eval_propositional(a, alg, env), eval_propositional(b, alg, env))
        }
        Prop::And(a, b) => {
            alg.meet(eval_propositional(a, alg, env), eval_propositional(b, alg, env))
        }
        Prop::Or(a, b) => {
            alg.join(eval_propositional(a, alg, env), eval_propositional(b, alg, env))
        }
        Prop::ForAll(..) | Prop::Exists(..) => unreachable!("rejected before evaluation"),
    }
}

/// Search the finite Heyting algebras generated from posets of up to
/// `max_points` points for a valuation under which `p` is not top.  Atoms
/// are treated as independent propositional unknowns.  `None` means every
/// tried valuation makes `p` top — no countermodel within the bound, not a
/// proof of validity.
pub fn find_countermodel(
    p: &Prop,
    max_points: usize,
) -> Result<Option<Countermodel>, CountermodelError> {
    let mut atoms = Vec::new();
    collect_atom_keys(p, &mut atoms)?;
    for algebra in enumerate_algebras(max_points) {
        let k = algebra.size;
        let mut values = vec![0usize; atoms.len()];
        loop {
            let env: BTreeMap<String, usize> =
                atoms.iter().cloned().zip(values.iter().copied()).collect();
            let value = eval_propositional(p, &algebra, &env);
            if value != algebra.top {
                return Ok(Some(Countermodel {
                    assignment: atoms.iter().cloned().zip(values).collect(),
                    algebra,
                    value,
                }));
            }
            // Advance the valuation odometer; wrap-around means this
            // algebra is exhausted.
            let mut i = 0;
            while i < values.len() {
                values[i] += 1;
                if values[i] < k {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
            if values.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(None)
}
