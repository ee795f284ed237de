use super::script::{Script, Step};
use crate::term::Position;

/// A single-step change of a script and what was changed.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub description: String,
    pub script: Script,
}

fn shifted(p: &Position) -> Vec<Position> {
    let idx = p.indices();
    match idx.split_last() {
        None => vec![Position::from(vec![0])],
        Some((&last, init)) => {
            let mut out = vec![Position::from([init, &[last + 1]].concat())];
            if last > 0 {
                out.push(Position::from([init, &[last - 1]].concat()));
            }
            out
        }
    }
}

// Mutants of one chain, each paired with a description.
fn chain_mutants(steps: &[Step], label: &str) -> Vec<(String, Vec<Step>)> {
    let mut out = Vec::new();
    for (k, step) in steps.iter().enumerate() {
        let here = format!("{label}{}", k + 1);
        let mut replace = |desc: String, s: Step| {
            let mut v = steps.to_vec();
            v[k] = s;
            out.push((desc, v));
        };
        match step {
            Step::Rewrite { dir, at, .. } => {
                let mut s = step.clone();
                if let Step::Rewrite { dir: d, .. } = &mut s {
                    *d = dir.flipped();
                }
                replace(format!("step {here}: flip direction"), s);
                for p in shifted(at) {
                    let mut s = step.clone();
                    if let Step::Rewrite { at: a, .. } = &mut s {
                        *a = p.clone();
                    }
                    replace(format!("step {here}: position {at} -> {p}"), s);
                }
            }
            Step::Cases {
                var,
                branches,
                span,
            } => {
                for i in 0..branches.len() {
                    let mut b = branches.clone();
                    let (key, _) = b.remove(i);
                    replace(
                        format!("step {here}: drop case {key}"),
                        Step::Cases {
                            var: var.clone(),
                            branches: b,
                            span: *span,
                        },
                    );
                }
                for (i, (key, sub)) in branches.iter().enumerate() {
                    for (desc, inner) in chain_mutants(sub, &format!("{here} (case {key}) ")) {
                        let mut b = branches.clone();
                        b[i].1 = inner;
                        replace(
                            desc,
                            Step::Cases {
                                var: var.clone(),
                                branches: b,
                                span: *span,
                            },
                        );
                    }
                }
            }
            Step::Thus { .. } => {}
        }
    }
    out
}

/// Every direction flip, position shift by one, and dropped case branch.
pub fn mutations(script: &Script) -> Vec<Mutation> {
    let mut out = Vec::new();
    for (i, proof) in script.proofs.iter().enumerate() {
        for (desc, steps) in chain_mutants(&proof.steps, "") {
            let mut s = script.clone();
            s.proofs[i].steps = steps;
            out.push(Mutation {
                description: format!("proof {}, {desc}", i + 1),
                script: s,
            });
        }
    }
    out
}
