//! Termination proofs by dependency pairs and linear interpretations.
//!
//! Proofs come with a [`Certificate`] that [`check_certificate`] re-verifies
//! from scratch.

mod check;
mod dp;
mod graph;
mod poly;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::term::{Term, Trs};

pub use check::{check_certificate, CertificateCheck};
pub use dp::{dependency_pairs, marked, DependencyPair, MARK};
pub use graph::{cyclic_components, estimated_graph, ren_cap};
pub use poly::Interpretation;

#[derive(Clone, Debug)]
pub struct ProverConfig {
    pub coeff_max: u64,
    pub time_budget: Duration,
    pub max_pairs: usize,
    pub exec: Exec,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            coeff_max: 2,
            time_budget: Duration::from_secs(10),
            max_pairs: 2000,
            exec: Exec::default(),
        }
    }
}

/// One SCC orientation: all `pairs` and `usable_rules` weakly decreasing under
/// `interpretation`, exactly the `removed` pairs strictly. Indices refer to
/// [`dependency_pairs`] and to the rules of the system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub pairs: Vec<usize>,
    pub usable_rules: Vec<usize>,
    pub interpretation: Interpretation,
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<ProofStep>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    SearchExhausted,
    TimeBudget,
    GraphTooLarge,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::SearchExhausted => "search-exhausted",
            UnknownReason::TimeBudget => "time-budget",
            UnknownReason::GraphTooLarge => "graph-too-large",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProverOutcome {
    Proved(Certificate),
    Unknown {
        reason: UnknownReason,
        /// Pairs of the component that could not be oriented.
        open_pairs: Vec<usize>,
    },
}

/// Rules of every symbol reachable from the right-hand sides of `pairs`
/// (below the marked root) through right-hand sides of rules.
pub fn usable_rules(trs: &Trs, pairs: &[&DependencyPair]) -> Vec<usize> {
    let mut todo: Vec<String> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for p in pairs {
        for a in p.rhs.args() {
            a.visit_symbols(&mut |f| todo.push(f.name().to_string()));
        }
    }
    while let Some(name) = todo.pop() {
        if !seen.insert(name.clone()) {
            continue;
        }
        for &i in trs.rules_for(&name) {
            trs.rules()[i]
                .rhs()
                .visit_symbols(&mut |f| todo.push(f.name().to_string()));
        }
    }
    let mut out: Vec<usize> = seen
        .iter()
        .flat_map(|n| trs.rules_for(n).iter().copied())
        .collect();
    out.sort_unstable();
    out
}

fn symbols_of<'a>(terms: impl Iterator<Item = &'a Term>) -> Vec<(String, usize)> {
    let mut set = BTreeSet::new();
    for t in terms {
        t.visit_symbols(&mut |f| {
            set.insert((f.name().to_string(), f.arity()));
        });
    }
    set.into_iter().collect()
}

pub fn prove_termination(trs: &Trs, cfg: &ProverConfig) -> ProverOutcome {
    let start = Instant::now();
    let deadline = start + cfg.time_budget;
    let pairs = dependency_pairs(trs);
    if pairs.len() > cfg.max_pairs {
        return ProverOutcome::Unknown {
            reason: UnknownReason::GraphTooLarge,
            open_pairs: (0..pairs.len()).collect(),
        };
    }
    let edges = estimated_graph(trs, &pairs);
    let all: Vec<usize> = (0..pairs.len()).collect();
    let mut work = cyclic_components(&edges, &all);
    work.reverse();
    let mut steps = Vec::new();
    while let Some(scc) = work.pop() {
        let members: Vec<&DependencyPair> = scc.iter().map(|&i| &pairs[i]).collect();
        let usable = usable_rules(trs, &members);
        let problem = search::Problem {
            symbols: symbols_of(
                members.iter().flat_map(|p| [&p.lhs, &p.rhs]).chain(
                    usable
                        .iter()
                        .flat_map(|&i| [trs.rules()[i].lhs(), trs.rules()[i].rhs()]),
                ),
            ),
            pairs: members.iter().map(|p| (&p.lhs, &p.rhs)).collect(),
            rules: usable
                .iter()
                .map(|&i| (trs.rules()[i].lhs(), trs.rules()[i].rhs()))
                .collect(),
        };
        let mut found = None;
        for max in 1..=cfg.coeff_max.max(1) {
            match search::search(&problem, max, Some(deadline), cfg.exec) {
                search::Outcome::Found(i) => {
                    found = Some(i);
                    break;
                }
                search::Outcome::Timeout => {
                    return ProverOutcome::Unknown {
                        reason: UnknownReason::TimeBudget,
                        open_pairs: scc,
                    }
                }
                search::Outcome::Exhausted => {}
            }
        }
        let Some(interpretation) = found else {
            return ProverOutcome::Unknown {
                reason: UnknownReason::SearchExhausted,
                open_pairs: scc,
            };
        };
        let removed: Vec<usize> = scc
            .iter()
            .copied()
            .filter(|&i| is_strict(&interpretation, &pairs[i]))
            .collect();
        let rest: Vec<usize> = scc
            .iter()
            .copied()
            .filter(|i| !removed.contains(i))
            .collect();
        let mut sub = cyclic_components(&edges, &rest);
        sub.reverse();
        work.extend(sub);
        steps.push(ProofStep {
            pairs: scc,
            usable_rules: usable,
            interpretation,
            removed,
        });
    }
    ProverOutcome::Proved(Certificate { steps })
}

fn is_strict(interp: &Interpretation, p: &DependencyPair) -> bool {
    let index = interp
        .keys()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    let assigned: Vec<Option<Vec<u64>>> = interp.values().cloned().map(Some).collect();
    let part = poly::Partial {
        index: &index,
        assigned: &assigned,
        max: 0,
    };
    poly::strict(&part.eval(&p.lhs), &part.eval(&p.rhs)) == Some(true)
}
