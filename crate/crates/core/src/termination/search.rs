use std::collections::BTreeMap;
use std::time::Instant;

use super::poly::{strict, weak, Bounds, Interpretation, Partial};
use crate::exec::Exec;
use crate::term::Term;

/// One orientation problem: every pair and rule weakly decreasing, some pair strictly.
pub struct Problem<'a> {
    /// Symbols with arity, sorted by name.
    pub symbols: Vec<(String, usize)>,
    pub pairs: Vec<(&'a Term, &'a Term)>,
    pub rules: Vec<(&'a Term, &'a Term)>,
}

pub enum Outcome {
    Found(Interpretation),
    Exhausted,
    Timeout,
}

/// Tuples of `len` coefficients in `0..=max`, by sum and then lexicographically.
fn tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut all: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|t| {
                (0..=max).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    all.sort_by_key(|t| (t.iter().sum::<u64>(), t.clone()));
    all
}

struct Dfs<'p, 'a> {
    problem: &'p Problem<'a>,
    index: BTreeMap<String, usize>,
    choices: Vec<Vec<Vec<u64>>>,
    max: u64,
    deadline: Option<Instant>,
}

enum Check {
    Dead,
    Open,
}

impl Dfs<'_, '_> {
    fn check(&self, assigned: &[Option<Vec<u64>>]) -> Check {
        let p = Partial {
            index: &self.index,
            assigned,
            max: self.max,
        };
        let eval = |(l, r): &(&Term, &Term)| -> (Bounds, Bounds) { (p.eval(l), p.eval(r)) };
        for c in self.problem.rules.iter().chain(&self.problem.pairs) {
            let (l, r) = eval(c);
            if weak(&l, &r) == Some(false) {
                return Check::Dead;
            }
        }
        let some_strict = self.problem.pairs.iter().any(|c| {
            let (l, r) = eval(c);
            strict(&l, &r) != Some(false)
        });
        if some_strict {
            Check::Open
        } else {
            Check::Dead
        }
    }

    fn run(&self, assigned: &mut Vec<Option<Vec<u64>>>, depth: usize) -> Outcome {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Outcome::Timeout;
        }
        if let Check::Dead = self.check(assigned) {
            return Outcome::Exhausted;
        }
        if depth == self.choices.len() {
            // Every coefficient is fixed, so Open means all constraints hold.
            let interp = self
                .problem
                .symbols
                .iter()
                .zip(assigned.iter())
                .map(|((n, _), c)| (n.clone(), c.clone().expect("complete")))
                .collect();
            return Outcome::Found(interp);
        }
        for choice in &self.choices[depth] {
            assigned[depth] = Some(choice.clone());
            match self.run(assigned, depth + 1) {
                Outcome::Exhausted => {}
                other => {
                    assigned[depth] = None;
                    return other;
                }
            }
        }
        assigned[depth] = None;
        Outcome::Exhausted
    }
}

/// Depth-first search with coefficients in `0..=max`. In parallel mode the
/// first symbol's choices are explored concurrently, and the answer is the
/// one the sequential scan would reach first.
pub fn search(problem: &Problem<'_>, max: u64, deadline: Option<Instant>, exec: Exec) -> Outcome {
    let index = problem
        .symbols
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.clone(), i))
        .collect();
    let choices = problem
        .symbols
        .iter()
        .map(|(_, k)| tuples(k + 1, max))
        .collect();
    let dfs = Dfs {
        problem,
        index,
        choices,
        max,
        deadline,
    };
    let n = problem.symbols.len();
    if n == 0 {
        return dfs.run(&mut Vec::new(), 0);
    }
    let first = &dfs.choices[0];
    let found = exec.find_map_first(first, |choice| {
        let mut assigned = vec![None; n];
        assigned[0] = Some(choice.clone());
        match dfs.run(&mut assigned, 1) {
            Outcome::Exhausted => None,
            other => Some(other),
        }
    });
    found.unwrap_or(Outcome::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_order() {
        let t = tuples(2, 1);
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 2).len(), 27);
    }
}
