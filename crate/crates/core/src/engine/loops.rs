use std::collections::HashSet;
use std::fmt;

use crate::exec::Exec;
use crate::term::{all_redexes, apply_rule_at, match_term, Position, Substitution, Term, Trs};

pub const DEFAULT_LOOP_DEPTH: usize = 10;
pub const DEFAULT_LOOP_WIDTH: usize = 10_000;

/// `start` rewrites in `trace.len() >= 1` steps to `end`, whose subterm at
/// `at` is `start` instantiated by `subst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWitness {
    pub start: Term,
    pub trace: Vec<(usize, Position)>,
    pub end: Term,
    pub at: Position,
    pub subst: Substitution,
}

impl LoopWitness {
    /// Re-applies the trace; true iff every step applies and the recurrence holds.
    pub fn replay(&self, trs: &Trs) -> bool {
        if self.trace.is_empty() {
            return false;
        }
        let mut cur = self.start.clone();
        for (rule, pos) in &self.trace {
            match apply_rule_at(trs, &cur, pos, *rule) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        cur == self.end
            && cur
                .subterm_at(&self.at)
                .is_some_and(|sub| *sub == self.start.apply(&self.subst))
    }

    /// The reduction as text, one term per line.
    pub fn render(&self, trs: &Trs) -> String {
        let mut out = format!("{}", self.start);
        let mut cur = self.start.clone();
        for (rule, pos) in &self.trace {
            cur = apply_rule_at(trs, &cur, pos, *rule).expect("witness replays");
            out.push_str(&format!(
                "\n  -> {cur}    [{} at {pos}]",
                trs.rules()[*rule]
            ));
        }
        out
    }
}

impl fmt::Display for LoopWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ->({} steps) {} containing an instance of the start at {}",
            self.start,
            self.trace.len(),
            self.end,
            self.at
        )
    }
}

struct Node {
    term: Term,
    trace: Vec<(usize, Position)>,
}

/// Breadth-first search from each seed for a reduction to a term containing
/// an instance of that seed. Each level keeps at most `max_width` new terms.
/// `None` means nothing was found within the bounds.
pub fn find_loop(
    trs: &Trs,
    seeds: &[Term],
    max_depth: usize,
    max_width: usize,
) -> Option<LoopWitness> {
    find_loop_with(trs, seeds, max_depth, max_width, Exec::default())
}

pub fn find_loop_with(
    trs: &Trs,
    seeds: &[Term],
    max_depth: usize,
    max_width: usize,
    exec: Exec,
) -> Option<LoopWitness> {
    seeds
        .iter()
        .find_map(|seed| search_seed(trs, seed, max_depth, max_width, exec))
}

fn search_seed(
    trs: &Trs,
    seed: &Term,
    max_depth: usize,
    max_width: usize,
    exec: Exec,
) -> Option<LoopWitness> {
    let mut seen: HashSet<Term> = HashSet::from([seed.clone()]);
    let mut frontier = vec![Node {
        term: seed.clone(),
        trace: Vec::new(),
    }];
    for _ in 0..max_depth {
        let expanded: Vec<Vec<Node>> = exec.map(&frontier, |node| {
            all_redexes(trs, &node.term)
                .into_iter()
                .filter_map(|(pos, rule)| {
                    let term = apply_rule_at(trs, &node.term, &pos, rule)?;
                    let mut trace = node.trace.clone();
                    trace.push((rule, pos));
                    Some(Node { term, trace })
                })
                .collect()
        });
        let mut next = Vec::new();
        for node in expanded.into_iter().flatten() {
            if let Some((at, subst)) = instance_of(&node.term, seed) {
                return Some(LoopWitness {
                    start: seed.clone(),
                    trace: node.trace,
                    end: node.term,
                    at,
                    subst,
                });
            }
            if next.len() < max_width && seen.insert(node.term.clone()) {
                next.push(node);
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

fn instance_of(t: &Term, seed: &Term) -> Option<(Position, Substitution)> {
    t.positions().into_iter().find_map(|p| {
        let sub = t.subterm_at(&p)?;
        match_term(seed, sub).map(|s| (p, s))
    })
}

/// `head(f(..))` and `tail(f(..))` with fresh variables, for every stream
/// symbol `f` of the specification.
pub fn standard_seeds(sigma_s: &[crate::term::Sym]) -> Vec<Term> {
    use crate::term::{Sort, Var};
    let mut out = Vec::new();
    for f in sigma_s {
        let args: Vec<Term> = f
            .arg_sorts()
            .iter()
            .enumerate()
            .map(|(k, s)| match s {
                Sort::Data => Term::var(Var::data(format!("x{}", k + 1))),
                Sort::Stream => Term::var(Var::stream(format!("s{}", k + 1))),
            })
            .collect();
        let t = Term::app(f.clone(), args).expect("well-sorted");
        out.push(Term::head_of(t.clone()));
        out.push(Term::tail_of(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Observer;
    use crate::syntax::{parse_spec, parse_term};

    fn load(name: &str) -> crate::spec::StreamSpec {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn fib_tail_loop() {
        let spec = load("fib_original.spec");
        let o = Observer::new(&spec).unwrap();
        let seed = Term::tail_of(parse_term("Fib", &spec, &[]).unwrap());
        let w = find_loop(o.trs(), &[seed], 10, 10_000).unwrap();
        assert!(w.replay(o.trs()));
        assert_eq!(w.trace.len(), 2);
        assert_eq!(w.end.to_string(), "tail(g(head(Fib), tail(Fib)))");
        assert_eq!(w.at.to_string(), "1.2");
    }

    #[test]
    fn self_loop_in_one_step() {
        let spec = load("selfloop.spec");
        let o = Observer::new(&spec).unwrap();
        let seed = Term::head_of(parse_term("c", &spec, &[]).unwrap());
        let w = find_loop(o.trs(), &[seed], 2, 10).unwrap();
        assert_eq!(w.trace.len(), 1);
        assert!(w.at.is_root());
    }

    #[test]
    fn morse_has_no_short_loop() {
        let spec = load("morse.spec");
        let o = Observer::new(&spec).unwrap();
        assert!(find_loop(o.trs(), &standard_seeds(spec.sigma_s()), 8, 10_000).is_none());
    }

    #[test]
    fn tampered_witness_fails_replay() {
        let spec = load("selfloop.spec");
        let o = Observer::new(&spec).unwrap();
        let seed = Term::head_of(parse_term("c", &spec, &[]).unwrap());
        let mut w = find_loop(o.trs(), &[seed], 2, 10).unwrap();
        w.trace[0].0 = 0;
        assert!(!w.replay(o.trs()));
    }
}
