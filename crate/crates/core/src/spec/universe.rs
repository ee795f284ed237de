use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::orthogonal::{left_linearity_violations, overlaps};
use crate::engine::{innermost, Limits, Normalized};
use crate::exec::Exec;
use crate::term::{Sym, Term, Trs};

pub const DEFAULT_CAP: usize = 4096;

/// Ground R_d-normal forms, ordered by size and then textually.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataUniverse {
    elements: Vec<Term>,
    cap: usize,
    stuck: Vec<Term>,
}

impl DataUniverse {
    pub fn elements(&self) -> &[Term] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.elements.contains(t)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Elements containing a defined data symbol.
    pub fn stuck(&self) -> &[Term] {
        &self.stuck
    }
}

impl fmt::Display for DataUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(Term::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error(
        "more than {cap} distinct data normal forms; the data universe is presumably infinite"
    )]
    Overflow { cap: usize },
    #[error("normalizing `{term}` with the data rules ran out of fuel; they are presumably non-terminating")]
    FuelExhausted { term: Term },
    #[error("the data rules are not orthogonal: {0}")]
    NotOrthogonal(String),
}

#[derive(Clone, Debug)]
pub struct UniverseConfig {
    pub cap: usize,
    pub limits: Limits,
    pub exec: Exec,
}

impl Default for UniverseConfig {
    fn default() -> Self {
        UniverseConfig {
            cap: DEFAULT_CAP,
            limits: Limits::default(),
            exec: Exec::default(),
        }
    }
}

pub fn data_universe(sigma_d: &[Sym], rd: &Trs, cap: usize) -> Result<DataUniverse, UniverseError> {
    data_universe_with(
        sigma_d,
        rd,
        &UniverseConfig {
            cap,
            ..UniverseConfig::default()
        },
    )
}

const BATCH: usize = 4096;

/// Saturates the set of normal forms under Σ_d: starting from nothing, apply
/// every symbol to every tuple of known normal forms and normalize, until a
/// round adds nothing. Each round only visits tuples that mention an element
/// found in the previous round.
pub fn data_universe_with(
    sigma_d: &[Sym],
    rd: &Trs,
    cfg: &UniverseConfig,
) -> Result<DataUniverse, UniverseError> {
    let rules = rd.rules();
    if let Some((i, v)) = left_linearity_violations(rules).first() {
        return Err(UniverseError::NotOrthogonal(format!(
            "variable `{v}` occurs twice in `{}`",
            rules[*i].lhs()
        )));
    }
    if let Some(o) = overlaps(rules).first() {
        return Err(UniverseError::NotOrthogonal(format!(
            "`{}` overlaps `{}` at position {}",
            rules[o.inner].lhs(),
            rules[o.outer].lhs(),
            o.position
        )));
    }

    let mut known: Vec<Term> = Vec::new();
    let mut seen: HashSet<Term> = HashSet::new();
    let mut prev_len = 0usize;
    let mut first_round = true;
    loop {
        let round_base = known.clone();
        let mut added = false;
        for f in sigma_d {
            let tuples = fresh_tuples(round_base.len(), prev_len, f.arity(), first_round);
            for batch in tuples.chunks(BATCH) {
                let results = cfg.exec.map(batch, |idx| {
                    let args: Vec<Term> = idx.iter().map(|&i| round_base[i].clone()).collect();
                    let t = Term::app_trusted(f.clone(), args);
                    match innermost(rd, &t, &cfg.limits) {
                        Normalized::Done { term, .. } => Ok(term),
                        Normalized::Stopped { .. } => Err(t),
                    }
                });
                for r in results {
                    let nf = r.map_err(|term| UniverseError::FuelExhausted { term })?;
                    if seen.insert(nf.clone()) {
                        known.push(nf);
                        added = true;
                        if known.len() > cfg.cap {
                            return Err(UniverseError::Overflow { cap: cfg.cap });
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
        prev_len = round_base.len();
        first_round = false;
    }

    known.sort_by_cached_key(|t| (t.size(), t.to_string()));
    let stuck = known
        .iter()
        .filter(|t| {
            let mut defined = false;
            t.visit_symbols(&mut |s| defined |= rd.is_defined(s.name()));
            defined
        })
        .cloned()
        .collect();
    Ok(DataUniverse {
        elements: known,
        cap: cfg.cap,
        stuck,
    })
}

/// Index tuples over `0..n` of length `arity` with at least one component
/// `>= prev` (all tuples in the first round).
fn fresh_tuples(n: usize, prev: usize, arity: usize, first_round: bool) -> Vec<Vec<usize>> {
    if arity == 0 {
        return if first_round {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; arity];
    if n == 0 {
        return out;
    }
    loop {
        if first_round || cur.iter().any(|&i| i >= prev) {
            out.push(cur.clone());
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < n {
                break;
            }
            cur[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::fixtures::bits;
    use crate::term::testing::*;
    use crate::term::{FunSymbol, Rule};

    #[test]
    fn booleans_with_negation() {
        let (sd, rd) = bits();
        let u = data_universe(&sd, &Trs::new(rd, sd.clone()).unwrap(), 4096).unwrap();
        assert_eq!(u.to_string(), "{0, 1}");
        assert!(u.stuck().is_empty());
    }

    #[test]
    fn single_constant() {
        let sd = vec![FunSymbol::data("0", 0)];
        let u = data_universe(&sd, &Trs::new(vec![], sd.clone()).unwrap(), 4096).unwrap();
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn successor_overflows() {
        let sd = vec![FunSymbol::data("0", 0), FunSymbol::data("s", 1)];
        let r = data_universe(&sd, &Trs::new(vec![], sd.clone()).unwrap(), 8);
        assert_eq!(r, Err(UniverseError::Overflow { cap: 8 }));
    }

    #[test]
    fn partial_data_function_never_saturates() {
        // h(1) is stuck, and so is every h(h(..h(1)..)).
        let sd = vec![
            FunSymbol::data("0", 0),
            FunSymbol::data("1", 0),
            FunSymbol::data("h", 1),
        ];
        let rd = vec![Rule::new(dapp("h", vec![dc("0")]), dc("0")).unwrap()];
        let r = data_universe(&sd, &Trs::new(rd, sd.clone()).unwrap(), 16);
        assert_eq!(r, Err(UniverseError::Overflow { cap: 16 }));
    }

    #[test]
    fn looping_data_rules_run_out_of_fuel() {
        let sd = vec![FunSymbol::data("a", 0)];
        let rd = vec![Rule::new(dc("a"), dc("a")).unwrap()];
        let cfg = UniverseConfig {
            limits: Limits::with_fuel(50),
            ..UniverseConfig::default()
        };
        let r = data_universe_with(&sd, &Trs::new(rd, sd.clone()).unwrap(), &cfg);
        assert!(matches!(r, Err(UniverseError::FuelExhausted { .. })));
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(fresh_tuples(2, 0, 2, true).len(), 4);
        assert_eq!(fresh_tuples(3, 2, 2, false).len(), 5);
        assert!(fresh_tuples(3, 2, 0, false).is_empty());
    }
}
