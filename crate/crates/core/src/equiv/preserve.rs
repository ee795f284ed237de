use std::fmt;

use super::check::{check_script, ProofCheck};
use super::script::Script;
use crate::spec::StreamSpec;
use crate::term::{canonical_rename, Rule, Term};
use crate::transform::obligations;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discharge {
    /// Index of the valid proof in its script.
    Proved(usize),
    Missing,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub rule: Rule,
    pub status: Discharge,
}

/// `forward`: rules of A shown under B; `backward`: rules of B shown under A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationVerdict {
    pub forward: Vec<Obligation>,
    pub backward: Vec<Obligation>,
    pub problems: Vec<String>,
}

impl PreservationVerdict {
    pub fn preserved(&self) -> bool {
        self.problems.is_empty()
            && self
                .forward
                .iter()
                .chain(&self.backward)
                .all(|o| matches!(o.status, Discharge::Proved(_)))
    }

    pub fn unproved(&self) -> Vec<&Obligation> {
        self.forward
            .iter()
            .chain(&self.backward)
            .filter(|o| !matches!(o.status, Discharge::Proved(_)))
            .collect()
    }
}

impl fmt::Display for PreservationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.problems {
            writeln!(f, "problem: {p}")?;
        }
        for (label, list) in [("A under B", &self.forward), ("B under A", &self.backward)] {
            for o in list {
                let status = match &o.status {
                    Discharge::Proved(i) => format!("proved by proof {}", i + 1),
                    Discharge::Missing => "no proof given".to_string(),
                    Discharge::Failed(r) => format!("failed: {r}"),
                };
                writeln!(f, "{label}: {} -- {status}", o.rule.equation())?;
            }
        }
        if self.preserved() {
            write!(f, "preserved")
        } else {
            write!(
                f,
                "incomplete: {} obligation(s) open",
                self.unproved().len()
            )
        }
    }
}

fn same_equation(l: &Term, r: &Term, rule: &Rule) -> bool {
    let goal = canonical_rename(&[rule.lhs().clone(), rule.rhs().clone()]);
    canonical_rename(&[l.clone(), r.clone()]) == goal
        || canonical_rename(&[r.clone(), l.clone()]) == goal
}

fn discharge(spec: &StreamSpec, rules: Vec<Rule>, script: &Script) -> Vec<Obligation> {
    let results = check_script(spec, script);
    rules
        .into_iter()
        .map(|rule| {
            let candidates: Vec<usize> = script
                .proofs
                .iter()
                .enumerate()
                .filter(|(_, p)| same_equation(&p.lhs, &p.rhs, &rule))
                .map(|(i, _)| i)
                .collect();
            let status = match candidates.iter().find(|&&i| results[i].is_valid()) {
                Some(&i) => Discharge::Proved(i),
                None => match candidates.first() {
                    None => Discharge::Missing,
                    Some(&i) => Discharge::Failed(match &results[i] {
                        ProofCheck::Invalid { step, reason, .. } => {
                            format!("step {step}: {reason}")
                        }
                        ProofCheck::Valid => unreachable!(),
                    }),
                },
            };
            Obligation { rule, status }
        })
        .collect()
}

/// Both directions of equation replacement between `a` and `b`. Rules common
/// to both (up to renaming) need no proof; `ab` proves rules of `a` over `b`,
/// `ba` rules of `b` over `a`.
pub fn check_preservation(
    a: &StreamSpec,
    b: &StreamSpec,
    ab: &Script,
    ba: &Script,
) -> PreservationVerdict {
    let mut problems = Vec::new();
    if a.sigma_d() != b.sigma_d() || a.rd().rules() != b.rd().rules() {
        problems.push("the specifications differ in their data part".to_string());
    }
    let pending = obligations(a.rs(), b.rs());
    PreservationVerdict {
        forward: discharge(b, pending.forward, ab),
        backward: discharge(a, pending.backward, ba),
        problems,
    }
}
