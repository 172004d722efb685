//! Concrete syntax and in-memory program representation.
//!
//! A program file declares type constructors, subtype edges, functions,
//! and predicates, followed by clauses:
//!
//! ```text
//! % factorial and square root over Int < Real
//! kind Int/0.
//! kind Real/0.
//! sub Int < Real via [].
//! pred Fact : Int, Int mode (in, out).
//! pred Sqrt : Real, Real mode (in, out).
//! Fact(3, 6).
//! Sqrt(6, 2.449).
//! ```
//!
//! Identifiers starting with an uppercase letter are constructors, functions,
//! and predicates; lowercase identifiers are term variables (in terms) and
//! type parameters (in types). Integer literals are constants of type `Int`
//! and decimal literals constants of type `Real`, available whenever those
//! kinds are declared. `[a, b | t]` is sugar for `Cons`/`Nil` when declared.
//! Comments run from `%` to the end of the line.

mod lexer;
mod parser;

pub use parser::{parse_program, parse_query, parse_term, parse_type, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::typesys::{ConstructorOrder, SignatureError, TypeExpr};

/// The reserved equality predicate; it exists so typed substitutions can be
/// stated as equations, but is not callable from user clauses.
pub const EQUALITY_PRED: &str = "=";

// ---------------------------------------------------------------------------
// Source positions
// ---------------------------------------------------------------------------

/// A 1-based source location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

// ---------------------------------------------------------------------------
// Positions within terms
// ---------------------------------------------------------------------------

/// A path to a subterm: the empty path is the term itself, and `i.zeta`
/// addresses position `zeta` within the i-th argument (1-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, index: usize) -> Position {
        let mut path = self.0.clone();
        path.push(index);
        Position(path)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "eps");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// A term: a variable or a function application (constants have no arguments).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(func: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(func.into(), args)
    }

    pub fn constant(func: impl Into<String>) -> Self {
        Term::App(func.into(), Vec::new())
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                acc.insert(x.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(acc);
                }
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// A term is linear if no variable occurs twice in it.
    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.linear_into(&mut seen)
    }

    fn linear_into(&self, seen: &mut BTreeSet<String>) -> bool {
        match self {
            Term::Var(x) => seen.insert(x.clone()),
            Term::App(_, args) => args.iter().all(|a| a.linear_into(seen)),
        }
    }

    pub fn subterm_at(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in &pos.0 {
            match cur {
                Term::App(_, args) => cur = args.get(i.checked_sub(1)?)?,
                Term::Var(_) => return None,
            }
        }
        Some(cur)
    }
}

/// Linearity of a vector of terms: no variable occurs twice across the vector.
pub fn vector_is_linear<'a>(terms: impl IntoIterator<Item = &'a Term>) -> bool {
    let mut seen = BTreeSet::new();
    terms.into_iter().all(|t| t.linear_into(&mut seen))
}

pub fn vector_vars<'a>(terms: impl IntoIterator<Item = &'a Term>) -> BTreeSet<String> {
    let mut acc = BTreeSet::new();
    for t in terms {
        t.collect_vars(&mut acc);
    }
    acc
}

impl fmt::Display for Term {
    /// `Cons`/`Nil` spines print in list notation; everything else as a plain
    /// application.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(func, args) if func == "Nil" && args.is_empty() => write!(f, "[]"),
            Term::App(func, args) if func == "Cons" && args.len() == 2 => {
                write!(f, "[{}", args[0])?;
                let mut tail = &args[1];
                loop {
                    match tail {
                        Term::App(g, rest) if g == "Nil" && rest.is_empty() => {
                            return write!(f, "]");
                        }
                        Term::App(g, rest) if g == "Cons" && rest.len() == 2 => {
                            write!(f, ", {}", rest[0])?;
                            tail = &rest[1];
                        }
                        other => return write!(f, " | {other}]"),
                    }
                }
            }
            Term::App(func, args) => {
                write!(f, "{func}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Term substitutions
// ---------------------------------------------------------------------------

/// A finite mapping from term variables to terms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TermSubst {
    map: BTreeMap<String, Term>,
}

impl TermSubst {
    pub fn identity() -> Self {
        TermSubst::default()
    }

    pub fn from_map(map: BTreeMap<String, Term>) -> Self {
        TermSubst { map }
    }

    pub fn bind(&mut self, var: impl Into<String>, term: Term) {
        self.map.insert(var.into(), term);
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// Idempotent iff no domain variable occurs in any range term.
    pub fn is_idempotent(&self) -> bool {
        self.map
            .keys()
            .all(|x| self.map.values().all(|t| !t.vars().contains(x)))
    }

    pub fn apply_term(&self, term: &Term) -> Term {
        match term {
            Term::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| term.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom {
            pred: atom.pred.clone(),
            args: atom.args.iter().map(|a| self.apply_term(a)).collect(),
            span: atom.span,
        }
    }

    /// Composition `self` then `next`: applying the result is applying `self`
    /// and then `next`.
    pub fn then(&self, next: &TermSubst) -> TermSubst {
        let mut map = BTreeMap::new();
        for (x, t) in self.map.iter() {
            map.insert(x.clone(), next.apply_term(t));
        }
        for (x, t) in next.map.iter() {
            map.entry(x.clone()).or_insert_with(|| t.clone());
        }
        map.retain(|x, t| t != &Term::Var(x.clone()));
        TermSubst { map }
    }

    pub fn restrict(&self, vars: &BTreeSet<String>) -> TermSubst {
        TermSubst {
            map: self
                .map
                .iter()
                .filter(|(x, _)| vars.contains(*x))
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TermSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}/{t}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

/// A function declaration `f : tau_1, ..., tau_n -> tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuncDecl {
    pub name: String,
    pub arg_types: Vec<TypeExpr>,
    pub result: TypeExpr,
}

impl FuncDecl {
    pub fn arity(&self) -> usize {
        self.arg_types.len()
    }
}

/// Argument mode of a predicate position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    In,
    Out,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::In => write!(f, "in"),
            Mode::Out => write!(f, "out"),
        }
    }
}

/// A predicate declaration `p : tau_1, ..., tau_n mode (m_1, ..., m_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredDecl {
    pub name: String,
    pub arg_types: Vec<TypeExpr>,
    pub modes: Vec<Mode>,
}

impl PredDecl {
    pub fn arity(&self) -> usize {
        self.arg_types.len()
    }

    pub fn input_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.modes
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Mode::In)
            .map(|(i, _)| i)
    }

    pub fn output_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.modes
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Mode::Out)
            .map(|(i, _)| i)
    }
}

// ---------------------------------------------------------------------------
// Atoms, clauses, queries, programs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
    pub span: Span,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { pred: pred.into(), args, span: Span::default() }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        vector_vars(&self.args)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A clause `H :- B1, ..., Bn.` (a fact when the body is empty), optionally
/// carrying `where x : tau` typing annotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
    pub annotations: Vec<(String, TypeExpr)>,
    pub span: Span,
}

impl Clause {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut acc = self.head.vars();
        for a in &self.body {
            acc.extend(a.vars());
        }
        acc
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            write!(f, " :- ")?;
            for (i, a) in self.body.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
        }
        if !self.annotations.is_empty() {
            write!(f, " where ")?;
            for (i, (x, t)) in self.annotations.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x} : {t}")?;
            }
        }
        write!(f, ".")
    }
}

/// A query: a sequence of atoms with optional typing annotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub atoms: Vec<Atom>,
    pub annotations: Vec<(String, TypeExpr)>,
}

impl Query {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        for a in &self.atoms {
            acc.extend(a.vars());
        }
        acc
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?- ")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.annotations.is_empty() {
            write!(f, " where ")?;
            for (i, (x, t)) in self.annotations.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x} : {t}")?;
            }
        }
        write!(f, ".")
    }
}

/// Constructor order plus function and predicate declarations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureTable {
    pub order: ConstructorOrder,
    pub funcs: BTreeMap<String, FuncDecl>,
    pub preds: BTreeMap<String, PredDecl>,
}

/// Errors from signature-level validation of declarations and clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclError {
    Signature(SignatureError),
    /// A function result type must be a constructor applied to distinct parameters.
    ResultNotFlat { func: String, result: TypeExpr },
    /// Every parameter of the argument types must occur in the result type.
    TransparencyViolation { func: String, param: String },
    DuplicateFunction { name: String },
    DuplicatePredicate { name: String },
    ModeArityMismatch { pred: String, types: usize, modes: usize },
    UndeclaredFunction { name: String, span: Span },
    UndeclaredPredicate { name: String, span: Span },
    FunctionArity { name: String, declared: usize, used: usize, span: Span },
    PredicateArity { name: String, declared: usize, used: usize, span: Span },
    /// Numeric literals require the corresponding kind declaration.
    LiteralWithoutKind { literal: String, kind: String, span: Span },
    ReservedPredicate { name: String, span: Span },
    ListSugarWithoutDecl { span: Span },
}

impl fmt::Display for DeclError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclError::Signature(e) => write!(f, "{e}"),
            DeclError::ResultNotFlat { func, result } => {
                write!(f, "function {func}: result type {result} is not flat (constructor over distinct parameters)")
            }
            DeclError::TransparencyViolation { func, param } => {
                write!(
                    f,
                    "function {func} violates transparency: parameter {param} occurs in an argument type but not in the result type"
                )
            }
            DeclError::DuplicateFunction { name } => write!(f, "duplicate function declaration: {name}"),
            DeclError::DuplicatePredicate { name } => write!(f, "duplicate predicate declaration: {name}"),
            DeclError::ModeArityMismatch { pred, types, modes } => {
                write!(f, "predicate {pred}: {types} argument types but {modes} modes")
            }
            DeclError::UndeclaredFunction { name, span } => {
                write!(f, "{span}: undeclared function {name}")
            }
            DeclError::UndeclaredPredicate { name, span } => {
                write!(f, "{span}: undeclared predicate {name}")
            }
            DeclError::FunctionArity { name, declared, used, span } => {
                write!(f, "{span}: function {name} declared with arity {declared} but used with {used} arguments")
            }
            DeclError::PredicateArity { name, declared, used, span } => {
                write!(f, "{span}: predicate {name} declared with arity {declared} but used with {used} arguments")
            }
            DeclError::LiteralWithoutKind { literal, kind, span } => {
                write!(f, "{span}: literal {literal} requires the kind {kind} to be declared")
            }
            DeclError::ReservedPredicate { name, span } => {
                write!(f, "{span}: predicate {name} is reserved and not callable from user code")
            }
            DeclError::ListSugarWithoutDecl { span } => {
                write!(f, "{span}: list notation requires Cons and Nil to be declared")
            }
        }
    }
}

impl std::error::Error for DeclError {}

impl From<SignatureError> for DeclError {
    fn from(e: SignatureError) -> Self {
        DeclError::Signature(e)
    }
}

impl SignatureTable {
    /// Build and validate a signature: the constructor order invariants, flat
    /// result types, transparency, well-formedness of all declared types, and
    /// mode arity.
    pub fn build(
        ctors: Vec<crate::typesys::Constructor>,
        edges: Vec<crate::typesys::SubtypeEdge>,
        funcs: Vec<FuncDecl>,
        preds: Vec<PredDecl>,
    ) -> Result<Self, DeclError> {
        let order = ConstructorOrder::build(ctors, edges)?;
        let mut func_map = BTreeMap::new();
        for func in funcs {
            for ty in func.arg_types.iter().chain(std::iter::once(&func.result)) {
                ty.well_formed(&order)?;
            }
            if !func.result.is_flat() {
                return Err(DeclError::ResultNotFlat {
                    func: func.name.clone(),
                    result: func.result.clone(),
                });
            }
            let result_params = func.result.params();
            for arg in &func.arg_types {
                for p in arg.params() {
                    if !result_params.contains(&p) {
                        return Err(DeclError::TransparencyViolation {
                            func: func.name.clone(),
                            param: p,
                        });
                    }
                }
            }
            let name = func.name.clone();
            if func_map.insert(name.clone(), func).is_some() {
                return Err(DeclError::DuplicateFunction { name });
            }
        }
        let mut pred_map = BTreeMap::new();
        for pred in preds {
            for ty in &pred.arg_types {
                ty.well_formed(&order)?;
            }
            if pred.arg_types.len() != pred.modes.len() {
                return Err(DeclError::ModeArityMismatch {
                    pred: pred.name.clone(),
                    types: pred.arg_types.len(),
                    modes: pred.modes.len(),
                });
            }
            let name = pred.name.clone();
            if pred_map.insert(name.clone(), pred).is_some() {
                return Err(DeclError::DuplicatePredicate { name });
            }
        }
        Ok(SignatureTable { order, funcs: func_map, preds: pred_map })
    }

    pub fn func(&self, name: &str) -> Option<&FuncDecl> {
        self.funcs.get(name)
    }

    pub fn pred(&self, name: &str) -> Option<&PredDecl> {
        self.preds.get(name)
    }

    /// Numeric literals become constants on the fly: integers of type `Int`,
    /// decimals of type `Real`, whenever those kinds are declared.
    pub fn register_literal(&mut self, literal: &str, span: Span) -> Result<(), DeclError> {
        if self.funcs.contains_key(literal) {
            return Ok(());
        }
        let kind = if literal.contains('.') { "Real" } else { "Int" };
        if self.order.arity(kind) != Some(0) {
            return Err(DeclError::LiteralWithoutKind {
                literal: literal.to_string(),
                kind: kind.to_string(),
                span,
            });
        }
        self.funcs.insert(
            literal.to_string(),
            FuncDecl {
                name: literal.to_string(),
                arg_types: Vec::new(),
                result: TypeExpr::atom(kind),
            },
        );
        Ok(())
    }

    /// Check every function application in a term against the declarations.
    pub fn validate_term(&self, term: &Term, span: Span) -> Result<(), DeclError> {
        match term {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let decl = self
                    .func(f)
                    .ok_or_else(|| DeclError::UndeclaredFunction { name: f.clone(), span })?;
                if decl.arity() != args.len() {
                    return Err(DeclError::FunctionArity {
                        name: f.clone(),
                        declared: decl.arity(),
                        used: args.len(),
                        span,
                    });
                }
                for a in args {
                    self.validate_term(a, span)?;
                }
                Ok(())
            }
        }
    }

    pub fn validate_atom(&self, atom: &Atom) -> Result<(), DeclError> {
        if atom.pred == EQUALITY_PRED {
            return Err(DeclError::ReservedPredicate { name: atom.pred.clone(), span: atom.span });
        }
        let decl = self.pred(&atom.pred).ok_or_else(|| DeclError::UndeclaredPredicate {
            name: atom.pred.clone(),
            span: atom.span,
        })?;
        if decl.arity() != atom.args.len() {
            return Err(DeclError::PredicateArity {
                name: atom.pred.clone(),
                declared: decl.arity(),
                used: atom.args.len(),
                span: atom.span,
            });
        }
        for a in &atom.args {
            self.validate_term(a, atom.span)?;
        }
        Ok(())
    }
}

/// A validated program: signature plus clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub signature: SignatureTable,
    pub clauses: Vec<Clause>,
}

impl Program {
    /// Re-render the program in concrete syntax. Parsing the result yields a
    /// program alpha-equivalent to this one.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, arity) in self.signature.order.constructors() {
            out.push_str(&format!("kind {name}/{arity}.\n"));
        }
        for e in self.signature.order.declared_edges() {
            let inj: Vec<String> = e.injection.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("sub {} < {} via [{}].\n", e.lo, e.hi, inj.join(", ")));
        }
        for f in self.signature.funcs.values() {
            if f.name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                continue; // literals are implicit
            }
            let args: Vec<String> = f.arg_types.iter().map(|t| t.to_string()).collect();
            out.push_str(&format!("func {} : {} -> {}.\n", f.name, args.join(", "), f.result));
        }
        for p in self.signature.preds.values() {
            let args: Vec<String> = p.arg_types.iter().map(|t| t.to_string()).collect();
            let modes: Vec<String> = p.modes.iter().map(|m| m.to_string()).collect();
            out.push_str(&format!(
                "pred {} : {} mode ({}).\n",
                p.name,
                args.join(", "),
                modes.join(", ")
            ));
        }
        for c in &self.clauses {
            out.push_str(&format!("{c}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Renaming apart
// ---------------------------------------------------------------------------

/// Rename the clause's variables bijectively so that none occurs in `avoid`.
/// Fresh names are formed by appending `_k` with increasing `k`.
pub fn rename_apart(clause: &Clause, avoid: &BTreeSet<String>) -> Clause {
    let clause_vars = clause.vars();
    let mut taken: BTreeSet<String> = avoid.union(&clause_vars).cloned().collect();
    let mut renaming = TermSubst::identity();
    for x in &clause_vars {
        if avoid.contains(x) {
            let fresh = fresh_name(x, &mut taken);
            renaming.bind(x.clone(), Term::Var(fresh));
        }
    }
    apply_renaming(clause, &renaming)
}

/// Rename every clause variable with a step-indexed suffix; used by the engine
/// to take a fresh copy per resolution step.
pub fn rename_with_suffix(clause: &Clause, step: u64) -> (Clause, TermSubst) {
    let mut renaming = TermSubst::identity();
    for x in clause.vars() {
        renaming.bind(x.clone(), Term::Var(format!("{x}_{step}")));
    }
    (apply_renaming(clause, &renaming), renaming)
}

fn apply_renaming(clause: &Clause, renaming: &TermSubst) -> Clause {
    Clause {
        head: renaming.apply_atom(&clause.head),
        body: clause.body.iter().map(|a| renaming.apply_atom(a)).collect(),
        annotations: clause
            .annotations
            .iter()
            .map(|(x, t)| {
                let new = match renaming.get(x) {
                    Some(Term::Var(y)) => y.clone(),
                    _ => x.clone(),
                };
                (new, t.clone())
            })
            .collect(),
        span: clause.span,
    }
}

fn fresh_name(base: &str, taken: &mut BTreeSet<String>) -> String {
    for k in 1.. {
        let candidate = format!("{base}_{k}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rename_apart_avoids_and_is_bijective() {
        let clause = Clause {
            head: Atom::new("p", vec![Term::var("x")]),
            body: vec![Atom::new("q", vec![Term::var("x"), Term::var("y")])],
            annotations: vec![],
            span: Span::default(),
        };
        let avoid: BTreeSet<String> = ["x".to_string()].into_iter().collect();
        let renamed = rename_apart(&clause, &avoid);
        assert!(renamed.vars().is_disjoint(&avoid));
        assert_eq!(renamed.vars().len(), clause.vars().len());
        // head and body share the renamed variable
        match (&renamed.head.args[0], &renamed.body[0].args[0]) {
            (Term::Var(a), Term::Var(b)) => assert_eq!(a, b),
            _ => panic!("expected variables"),
        }
    }

    #[test]
    fn rename_apart_no_vars_is_identity() {
        let clause = Clause {
            head: Atom::new("p", vec![Term::constant("3")]),
            body: vec![],
            annotations: vec![],
            span: Span::default(),
        };
        let avoid: BTreeSet<String> = ["x".to_string()].into_iter().collect();
        assert_eq!(rename_apart(&clause, &avoid), clause);
    }

    #[test]
    fn term_display_uses_list_sugar() {
        let t = Term::app(
            "Cons",
            vec![
                Term::var("x"),
                Term::app("Cons", vec![Term::var("y"), Term::constant("Nil")]),
            ],
        );
        assert_eq!(t.to_string(), "[x, y]");
        let open = Term::app("Cons", vec![Term::var("x"), Term::var("t")]);
        assert_eq!(open.to_string(), "[x | t]");
    }

    #[test]
    fn subterm_positions() {
        // F(G(C), H(C)) has C at 1.1 and 2.1; 2.1.1 is undefined.
        let c = Term::constant("C");
        let t = Term::app(
            "F",
            vec![Term::app("G", vec![c.clone()]), Term::app("H", vec![c.clone()])],
        );
        assert_eq!(t.subterm_at(&Position(vec![1, 1])), Some(&c));
        assert_eq!(t.subterm_at(&Position(vec![2, 1])), Some(&c));
        assert_eq!(t.subterm_at(&Position(vec![2, 1, 1])), None);
    }

    #[test]
    fn subst_composition() {
        let mut theta1 = TermSubst::identity();
        theta1.bind("x", Term::var("y"));
        let mut theta2 = TermSubst::identity();
        theta2.bind("y", Term::constant("3"));
        let composed = theta1.then(&theta2);
        assert_eq!(composed.apply_term(&Term::var("x")), Term::constant("3"));
        assert_eq!(composed.apply_term(&Term::var("y")), Term::constant("3"));
    }
}
