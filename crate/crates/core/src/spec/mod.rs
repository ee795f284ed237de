//! Stream specifications `(Σ_d, Σ_s, R_d, R_s)` and their validation.

mod orthogonal;
mod universe;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::term::{FunSymbol, Rule, Sort, Sym, Term, TermError, Trs};

pub use orthogonal::{left_linearity_violations, overlaps, Overlap};
pub use universe::{
    data_universe, data_universe_with, DataUniverse, UniverseConfig, UniverseError, DEFAULT_CAP,
};
pub use validate::{
    is_data_independent, validate, validate_with, Check, Finding, RuleSet, Severity, Subject,
    ValidationReport, Verdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("symbol `{0}` is declared twice")]
    DuplicateSymbol(String),
    #[error("`{0}` is the built-in stream constructor and cannot be declared")]
    ReservedSymbol(String),
    #[error("data symbol `{0}` must have only data arguments")]
    DataSymbolStreamArgument(String),
    #[error("stream symbol `{0}` must list its data arguments before its stream arguments")]
    ArgumentOrder(String),
    #[error("{set} rule `{rule}` must have sort {expected}")]
    RuleSort {
        set: RuleSet,
        rule: String,
        expected: Sort,
    },
    #[error("rule `{rule}` uses `{symbol}`, which is not declared with that type")]
    UnknownSymbol { rule: String, symbol: String },
    #[error(transparent)]
    Term(#[from] TermError),
}

/// The quadruple `(Σ_d, Σ_s, R_d, R_s)`. Symbols keep declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamSpec {
    sigma_d: Vec<Sym>,
    sigma_s: Vec<Sym>,
    rd: Trs,
    rs: Vec<Rule>,
}

impl StreamSpec {
    pub fn new(
        sigma_d: Vec<Sym>,
        sigma_s: Vec<Sym>,
        rd: Vec<Rule>,
        rs: Vec<Rule>,
    ) -> Result<StreamSpec, SpecError> {
        let mut names: Vec<&str> = Vec::new();
        for f in sigma_d.iter().chain(&sigma_s) {
            if f.name() == crate::term::CONS {
                return Err(SpecError::ReservedSymbol(f.name().to_string()));
            }
            if names.contains(&f.name()) {
                return Err(SpecError::DuplicateSymbol(f.name().to_string()));
            }
            names.push(f.name());
        }
        for f in &sigma_d {
            if f.result_sort() != Sort::Data || f.arg_sorts().contains(&Sort::Stream) {
                return Err(SpecError::DataSymbolStreamArgument(f.name().to_string()));
            }
        }
        for f in &sigma_s {
            let first_stream = f.data_arity();
            if f.result_sort() != Sort::Stream
                || f.arg_sorts()[first_stream..].contains(&Sort::Data)
            {
                return Err(SpecError::ArgumentOrder(f.name().to_string()));
            }
        }
        let mut full_sig: Vec<Sym> = sigma_d.iter().chain(&sigma_s).cloned().collect();
        full_sig.push(FunSymbol::cons());
        for (set, rules, sort) in [
            (RuleSet::Data, &rd, Sort::Data),
            (RuleSet::Stream, &rs, Sort::Stream),
        ] {
            for r in rules {
                if r.sort() != sort {
                    return Err(SpecError::RuleSort {
                        set,
                        rule: r.equation(),
                        expected: sort,
                    });
                }
                let mut bad = None;
                let mut check = |s: &Sym| {
                    if bad.is_none() && !full_sig.contains(s) {
                        bad = Some(s.name().to_string());
                    }
                };
                r.lhs().visit_symbols(&mut check);
                r.rhs().visit_symbols(&mut check);
                if let Some(symbol) = bad {
                    return Err(SpecError::UnknownSymbol {
                        rule: r.equation(),
                        symbol,
                    });
                }
            }
        }
        let rd = Trs::new(rd, sigma_d.clone())?;
        Ok(StreamSpec {
            sigma_d,
            sigma_s,
            rd,
            rs,
        })
    }

    pub fn sigma_d(&self) -> &[Sym] {
        &self.sigma_d
    }

    pub fn sigma_s(&self) -> &[Sym] {
        &self.sigma_s
    }

    pub fn rd(&self) -> &Trs {
        &self.rd
    }

    pub fn rs(&self) -> &[Rule] {
        &self.rs
    }

    /// A user symbol (data or stream) by name.
    pub fn symbol(&self, name: &str) -> Option<&Sym> {
        self.sigma_d
            .iter()
            .chain(&self.sigma_s)
            .find(|f| f.name() == name)
    }

    /// Σ_d, Σ_s and the constructor `:`.
    pub fn signature(&self) -> Vec<Sym> {
        let mut sig: Vec<Sym> = self.sigma_d.iter().chain(&self.sigma_s).cloned().collect();
        sig.push(FunSymbol::cons());
        sig
    }

    /// R_s as a rewrite system over the full signature.
    pub fn rs_trs(&self) -> Trs {
        Trs::new(self.rs.clone(), self.signature()).expect("checked at construction")
    }

    /// R_s followed by R_d.
    pub fn combined_trs(&self) -> Trs {
        self.rs_trs().union(&self.rd)
    }

    pub fn rules_of(&self, name: &str) -> impl Iterator<Item = (usize, &Rule)> + '_ {
        let name = name.to_string();
        self.rs
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.root().name() == name)
    }

    pub fn with_rs(&self, rs: Vec<Rule>) -> Result<StreamSpec, SpecError> {
        StreamSpec::new(
            self.sigma_d.clone(),
            self.sigma_s.clone(),
            self.rd.rules().to_vec(),
            rs,
        )
    }

    pub fn with_stream_symbols(
        &self,
        sigma_s: Vec<Sym>,
        rs: Vec<Rule>,
    ) -> Result<StreamSpec, SpecError> {
        StreamSpec::new(self.sigma_d.clone(), sigma_s, self.rd.rules().to_vec(), rs)
    }

    /// Checks that `t` only uses symbols of this specification (plus `:`).
    pub fn owns_term(&self, t: &Term) -> bool {
        let sig = self.signature();
        let mut ok = true;
        t.visit_symbols(&mut |s| ok &= sig.contains(s));
        ok
    }
}

impl fmt::Display for StreamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.sigma_d.iter().chain(&self.sigma_s) {
            writeln!(f, "{s}")?;
        }
        for r in self.rd.rules().iter().chain(&self.rs) {
            writeln!(f, "{}", r.equation())?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! Hand-built specifications for unit tests that cannot use the parser.
    use super::*;
    use crate::term::{Term, Var};

    pub fn bits() -> (Vec<Sym>, Vec<Rule>) {
        let zero = FunSymbol::data("0", 0);
        let one = FunSymbol::data("1", 0);
        let not = FunSymbol::data("not", 1);
        let c = |s: &Sym| Term::constant(s.clone()).unwrap();
        let n = |t| Term::app(not.clone(), vec![t]).unwrap();
        let rd = vec![
            Rule::new(n(c(&zero)), c(&one)).unwrap(),
            Rule::new(n(c(&one)), c(&zero)).unwrap(),
        ];
        (vec![zero.clone(), one.clone(), not.clone()], rd)
    }

    pub fn x() -> Term {
        Term::var(Var::data("x"))
    }

    pub fn sigma() -> Term {
        Term::var(Var::stream("sigma"))
    }

    pub fn tau() -> Term {
        Term::var(Var::stream("tau"))
    }

    /// Thue–Morse with `tail0` in place of `tail`.
    pub fn morse() -> StreamSpec {
        let (sd, rd) = bits();
        let morse = FunSymbol::stream("morse", 0, 0);
        let inv = FunSymbol::stream("inv", 0, 1);
        let zip = FunSymbol::stream("zip", 0, 2);
        let tail0 = FunSymbol::stream("tail0", 0, 1);
        let app = |f: &Sym, a: Vec<Term>| Term::app(f.clone(), a).unwrap();
        let zero = Term::constant(sd[0].clone()).unwrap();
        let m = app(&morse, vec![]);
        let rs = vec![
            Rule::new(
                m.clone(),
                Term::cons(
                    zero,
                    app(&zip, vec![app(&inv, vec![m.clone()]), app(&tail0, vec![m])]),
                ),
            )
            .unwrap(),
            Rule::new(app(&tail0, vec![Term::cons(x(), sigma())]), sigma()).unwrap(),
            Rule::new(
                app(&inv, vec![Term::cons(x(), sigma())]),
                Term::cons(app(&sd[2], vec![x()]), app(&inv, vec![sigma()])),
            )
            .unwrap(),
            Rule::new(
                app(&zip, vec![Term::cons(x(), sigma()), tau()]),
                Term::cons(x(), app(&zip, vec![tau(), sigma()])),
            )
            .unwrap(),
        ];
        StreamSpec::new(sd, vec![morse, inv, zip, tail0], rd, rs).unwrap()
    }
}
