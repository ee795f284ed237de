//! Sorted first-order terms over the two-sorted stream signature.
//!
//! Every other module speaks in [`Term`]s. Terms are immutable and cheap to
//! clone: argument lists are reference counted, so sharing subterms between
//! a redex and its contractum costs nothing.

mod position;
mod rewrite;
mod subst;
mod trs;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use position::Position;
pub use rewrite::{all_redexes, apply_rule_at, rewrite_step, RewriteStep, Strategy};
pub(crate) use subst::match_into;
pub use subst::{match_term, unify, Substitution};
pub use trs::{Rule, Trs};

/// Name of the built-in stream constructor.
pub const CONS: &str = ":";
/// Name of the observer returning the first element of a stream.
pub const HEAD: &str = "head";
/// Name of the observer dropping the first element of a stream.
pub const TAIL: &str = "tail";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sort {
    Data,
    Stream,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Data => "d",
            Sort::Stream => "s",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("argument {index} of `{symbol}` must have sort {expected}, found {found}")]
    ArgumentSort {
        symbol: String,
        index: usize,
        expected: Sort,
        found: Sort,
    },
    #[error("left-hand side `{0}` is a variable")]
    VariableLhs(String),
    #[error(
        "variable `{var}` occurs in the right-hand side of `{rule}` but not in its left-hand side"
    )]
    UnboundVariable { var: String, rule: String },
    #[error("sides of `{rule}` have different sorts ({lhs} and {rhs})")]
    SortMismatch { rule: String, lhs: Sort, rhs: Sort },
    #[error("symbol `{0}` is not part of the signature")]
    UnknownSymbol(String),
}

/// A function symbol with its full type `argSorts -> resultSort`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FunSymbol {
    name: String,
    args: Vec<Sort>,
    result: Sort,
}

pub type Sym = Arc<FunSymbol>;

impl FunSymbol {
    pub fn new(name: impl Into<String>, args: Vec<Sort>, result: Sort) -> Sym {
        Arc::new(FunSymbol {
            name: name.into(),
            args,
            result,
        })
    }

    /// A data symbol of type `d^arity -> d`.
    pub fn data(name: impl Into<String>, arity: usize) -> Sym {
        Self::new(name, vec![Sort::Data; arity], Sort::Data)
    }

    /// A stream symbol of type `d^n x s^m -> s`.
    pub fn stream(name: impl Into<String>, n_data: usize, n_stream: usize) -> Sym {
        let mut args = vec![Sort::Data; n_data];
        args.extend(std::iter::repeat_n(Sort::Stream, n_stream));
        Self::new(name, args, Sort::Stream)
    }

    pub fn cons() -> Sym {
        Self::new(CONS, vec![Sort::Data, Sort::Stream], Sort::Stream)
    }

    pub fn head() -> Sym {
        Self::new(HEAD, vec![Sort::Stream], Sort::Data)
    }

    pub fn tail() -> Sym {
        Self::new(TAIL, vec![Sort::Stream], Sort::Stream)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn arg_sorts(&self) -> &[Sort] {
        &self.args
    }

    pub fn result_sort(&self) -> Sort {
        self.result
    }

    pub fn is_cons(&self) -> bool {
        self.name == CONS && self.args == [Sort::Data, Sort::Stream]
    }

    /// Number of data arguments; for stream symbols these precede the stream ones.
    pub fn data_arity(&self) -> usize {
        self.args.iter().filter(|s| **s == Sort::Data).count()
    }

    pub fn stream_arity(&self) -> usize {
        self.args.iter().filter(|s| **s == Sort::Stream).count()
    }

    /// Same type, different name.
    pub fn renamed(&self, name: impl Into<String>) -> Sym {
        Self::new(name, self.args.clone(), self.result)
    }

    /// Type signature in the concrete syntax, e.g. `d s -> s`.
    pub fn type_string(&self) -> String {
        if self.args.is_empty() {
            self.result.to_string()
        } else {
            let args: Vec<String> = self.args.iter().map(|s| s.to_string()).collect();
            format!("{} -> {}", args.join(" "), self.result)
        }
    }
}

impl fmt::Display for FunSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.name, self.type_string())
    }
}

/// A sorted variable. Two variables are equal iff name and sort agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    sort: Sort,
}

impl Var {
    pub fn new(name: impl AsRef<str>, sort: Sort) -> Var {
        Var {
            name: Arc::from(name.as_ref()),
            sort,
        }
    }

    pub fn data(name: impl AsRef<str>) -> Var {
        Var::new(name, Sort::Data)
    }

    pub fn stream(name: impl AsRef<str>) -> Var {
        Var::new(name, Sort::Stream)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Sym, Arc<[Term]>),
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    /// Builds `symbol(args)`, checking arity and argument sorts.
    pub fn app(symbol: Sym, args: Vec<Term>) -> Result<Term, TermError> {
        if symbol.arity() != args.len() {
            return Err(TermError::Arity {
                symbol: symbol.name().to_string(),
                expected: symbol.arity(),
                found: args.len(),
            });
        }
        for (index, (arg, expected)) in args.iter().zip(symbol.arg_sorts()).enumerate() {
            if arg.sort() != *expected {
                return Err(TermError::ArgumentSort {
                    symbol: symbol.name().to_string(),
                    index: index + 1,
                    expected: *expected,
                    found: arg.sort(),
                });
            }
        }
        Ok(Term::App(symbol, Arc::from(args)))
    }

    /// Builds an application whose sorts the caller has already established.
    pub(crate) fn app_trusted(symbol: Sym, args: Vec<Term>) -> Term {
        debug_assert_eq!(symbol.arity(), args.len(), "arity of {}", symbol.name());
        debug_assert!(
            args.iter()
                .zip(symbol.arg_sorts())
                .all(|(a, s)| a.sort() == *s),
            "argument sorts of {}",
            symbol.name()
        );
        Term::App(symbol, Arc::from(args))
    }

    pub fn constant(symbol: Sym) -> Result<Term, TermError> {
        Term::app(symbol, Vec::new())
    }

    /// `head : tail`; panics in debug builds on ill-sorted input.
    pub fn cons(head: Term, tail: Term) -> Term {
        Term::app_trusted(FunSymbol::cons(), vec![head, tail])
    }

    pub fn head_of(stream: Term) -> Term {
        Term::app_trusted(FunSymbol::head(), vec![stream])
    }

    pub fn tail_of(stream: Term) -> Term {
        Term::app_trusted(FunSymbol::tail(), vec![stream])
    }

    pub fn sort(&self) -> Sort {
        match self {
            Term::Var(v) => v.sort,
            Term::App(f, _) => f.result,
        }
    }

    pub fn root(&self) -> Option<&Sym> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn root_name(&self) -> Option<&str> {
        self.root().map(|f| f.name())
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// `Some((head, tail))` when the root is the stream constructor.
    pub fn as_cons(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::App(f, args) if f.is_cons() => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Variables in order of first occurrence (left to right).
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }

    /// Calls `f` for every variable occurrence, left to right.
    pub fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::App(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    /// Calls `f` for every symbol occurrence in pre-order.
    pub fn visit_symbols(&self, f: &mut impl FnMut(&Sym)) {
        if let Term::App(sym, args) = self {
            f(sym);
            args.iter().for_each(|a| a.visit_symbols(f));
        }
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        let mut found = false;
        self.visit_symbols(&mut |s| found |= s.name() == name);
        found
    }

    pub fn var_occurrences(&self, v: &Var) -> usize {
        let mut n = 0;
        self.visit_vars(&mut |w| n += usize::from(w == v));
        n
    }

    pub fn subterm_at(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in pos.indices() {
            cur = cur.args().get(i)?;
        }
        Some(cur)
    }

    /// Replaces the subterm at `pos`; `None` if the position does not exist
    /// or the replacement has a different sort.
    pub fn replace_at(&self, pos: &Position, replacement: Term) -> Option<Term> {
        fn go(t: &Term, path: &[usize], replacement: Term) -> Option<Term> {
            match path.split_first() {
                None => (t.sort() == replacement.sort()).then_some(replacement),
                Some((&i, rest)) => match t {
                    Term::Var(_) => None,
                    Term::App(f, args) => {
                        let new_arg = go(args.get(i)?, rest, replacement)?;
                        let mut new_args = args.to_vec();
                        new_args[i] = new_arg;
                        Some(Term::App(f.clone(), Arc::from(new_args)))
                    }
                },
            }
        }
        go(self, pos.indices(), replacement)
    }

    /// All positions in pre-order (root first, then arguments left to right).
    pub fn positions(&self) -> Vec<Position> {
        fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Position>) {
            out.push(Position::from(path.clone()));
            for (i, a) in t.args().iter().enumerate() {
                path.push(i);
                go(a, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Positions whose subterm is not a variable, in pre-order.
    pub fn function_positions(&self) -> Vec<Position> {
        self.positions()
            .into_iter()
            .filter(|p| self.subterm_at(p).is_some_and(|t| !t.is_var()))
            .collect()
    }

    pub fn apply(&self, subst: &Substitution) -> Term {
        match self {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                if args.is_empty() {
                    return self.clone();
                }
                Term::App(f.clone(), args.iter().map(|a| a.apply(subst)).collect())
            }
        }
    }

    /// Renames every symbol according to `rename`; symbols mapped to `None` are kept.
    pub fn map_symbols(&self, rename: &impl Fn(&Sym) -> Option<Sym>) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                let f2 = rename(f).unwrap_or_else(|| f.clone());
                Term::App(f2, args.iter().map(|a| a.map_symbols(rename)).collect())
            }
        }
    }

    /// Renames variables; variables without a mapping are kept.
    pub fn map_vars(&self, rename: &impl Fn(&Var) -> Option<Var>) -> Term {
        match self {
            Term::Var(v) => Term::Var(rename(v).unwrap_or_else(|| v.clone())),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.map_vars(rename)).collect())
            }
        }
    }

    /// Variables renamed to `x1, x2, ...` (data) and `s1, s2, ...` (stream) in
    /// order of first occurrence; used to compare terms up to renaming.
    pub fn canonical(&self) -> Term {
        canonical_rename(std::slice::from_ref(self)).remove(0)
    }

    /// True if `self` equals `other` up to a bijective variable renaming.
    pub fn is_variant_of(&self, other: &Term) -> bool {
        self.canonical() == other.canonical()
    }

    /// Same as [`Term::subterm_at`] followed by [`match_term`] with `pattern`,
    /// checked at every position; returns the first (pre-order) position whose
    /// subterm is an instance of `pattern`.
    pub fn find_instance(&self, pattern: &Term) -> Option<(Position, Substitution)> {
        self.positions().into_iter().find_map(|p| {
            let sub = self.subterm_at(&p)?;
            match_term(pattern, sub).map(|s| (p, s))
        })
    }
}

/// Canonically renames the variables of several terms jointly.
pub fn canonical_rename(terms: &[Term]) -> Vec<Term> {
    let mut order: Vec<Var> = Vec::new();
    for t in terms {
        t.visit_vars(&mut |v| {
            if !order.contains(v) {
                order.push(v.clone());
            }
        });
    }
    let (mut nd, mut ns) = (0, 0);
    let mapping: Vec<(Var, Var)> = order
        .into_iter()
        .map(|v| {
            let fresh = match v.sort() {
                Sort::Data => {
                    nd += 1;
                    Var::data(format!("x{nd}"))
                }
                Sort::Stream => {
                    ns += 1;
                    Var::stream(format!("s{ns}"))
                }
            };
            (v, fresh)
        })
        .collect();
    terms
        .iter()
        .map(|t| {
            t.map_vars(&|v| {
                mapping
                    .iter()
                    .find(|(old, _)| old == v)
                    .map(|(_, new)| new.clone())
            })
        })
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(sym, args) if sym.is_cons() => write!(f, "{} : {}", args[0], args[1]),
            Term::App(sym, args) if args.is_empty() => f.write_str(sym.name()),
            Term::App(sym, args) => {
                write!(f, "{}(", sym.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
pub(crate) mod testing {
    //! Small term-building helpers shared by unit tests.
    use super::*;

    pub fn d(name: &str) -> Term {
        Term::var(Var::data(name))
    }

    pub fn s(name: &str) -> Term {
        Term::var(Var::stream(name))
    }

    pub fn dc(name: &str) -> Term {
        Term::constant(FunSymbol::data(name, 0)).unwrap()
    }

    pub fn sc(name: &str) -> Term {
        Term::constant(FunSymbol::stream(name, 0, 0)).unwrap()
    }

    pub fn dapp(name: &str, args: Vec<Term>) -> Term {
        Term::app(FunSymbol::data(name, args.len()), args).unwrap()
    }

    /// Stream application; data arguments must come first.
    pub fn sapp(name: &str, args: Vec<Term>) -> Term {
        let n_data = args.iter().filter(|a| a.sort() == Sort::Data).count();
        Term::app(FunSymbol::stream(name, n_data, args.len() - n_data), args).unwrap()
    }

    pub fn cons(h: Term, t: Term) -> Term {
        Term::cons(h, t)
    }
}
