use std::fmt;

use crate::term::{FunSymbol, Sym, Term, Trs};

pub const MARK: char = '#';

/// `f#`, same type as `f`.
pub fn marked(f: &Sym) -> Sym {
    FunSymbol::new(
        format!("{}{MARK}", f.name()),
        f.arg_sorts().to_vec(),
        f.result_sort(),
    )
}

fn mark_root(t: &Term) -> Term {
    match t {
        Term::App(f, args) => Term::App(marked(f), args.clone()),
        Term::Var(_) => unreachable!("only applications are marked"),
    }
}

/// `l# -> t#` for a rule `l -> r` and a subterm `t` of `r` rooted by a defined symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DependencyPair {
    pub lhs: Term,
    pub rhs: Term,
    pub origin: usize,
}

impl fmt::Display for DependencyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// All dependency pairs, by rule and then pre-order position in the right-hand side.
pub fn dependency_pairs(trs: &Trs) -> Vec<DependencyPair> {
    let mut out = Vec::new();
    for (i, rule) in trs.rules().iter().enumerate() {
        let lhs = mark_root(rule.lhs());
        for p in rule.rhs().function_positions() {
            let sub = rule.rhs().subterm_at(&p).expect("own position");
            if sub.root_name().is_some_and(|n| trs.is_defined(n)) {
                out.push(DependencyPair {
                    lhs: lhs.clone(),
                    rhs: mark_root(sub),
                    origin: i,
                });
            }
        }
    }
    out
}
