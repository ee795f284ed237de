//! Evaluation with case analysis on blocked data subterms.
//!
//! `head(Fib)` with `Fib = f(Fib)` has no normal form, yet every rule for
//! the blocked `g(x, ..)` yields the same head. When the leftmost-outermost
//! redex lies inside a data argument `u` that is not a value, `u` is first
//! evaluated on its own; if that recurses into a term already being
//! evaluated, the term is instead evaluated once per element of D in place
//! of `u`, and the common value (if any) is the answer.

use super::normalize::{innermost, is_data_value, Normalized};
use super::Limits;
use crate::term::{rewrite_step, Position, Sort, Strategy, Term, Trs};

#[derive(Clone, Debug)]
pub struct CaseEval<'a> {
    pub trs: &'a Trs,
    pub universe: &'a [Term],
    /// Rewrite steps per evaluation attempt.
    pub fuel: u64,
    /// Nesting bound for sub-evaluations and splits.
    pub depth: usize,
}

impl CaseEval<'_> {
    pub fn eval(&self, t: &Term) -> Option<Term> {
        self.go(t, &mut Vec::new(), self.depth)
    }

    fn finish(&self, t: &Term) -> Option<Term> {
        match innermost(self.trs, t, &Limits::with_fuel(self.fuel)) {
            Normalized::Done { term, .. } if is_data_value(&term) => Some(term),
            _ => None,
        }
    }

    fn go(&self, start: &Term, stack: &mut Vec<Term>, depth: usize) -> Option<Term> {
        let mut t = start.clone();
        for _ in 0..self.fuel {
            if is_data_value(&t) {
                return self.finish(&t);
            }
            let step = rewrite_step(self.trs, &t, Strategy::LeftmostOutermost)?;
            let Some(q) = blocked_data_argument(&t, &step.position) else {
                t = step.term;
                continue;
            };
            if depth == 0 {
                return None;
            }
            let u = t.subterm_at(&q).expect("ancestor of a redex").clone();
            if !stack.contains(&u) {
                stack.push(start.clone());
                let v = self.go(&u, stack, depth - 1);
                stack.pop();
                if let Some(v) = v {
                    t = t.replace_at(&q, v).expect("same sort");
                    continue;
                }
            }
            stack.push(start.clone());
            let mut common: Option<Term> = None;
            let mut agreed = true;
            for d in self.universe {
                let branch = t.replace_at(&q, d.clone()).expect("same sort");
                match (self.go(&branch, stack, depth - 1), &common) {
                    (Some(v), None) => common = Some(v),
                    (Some(v), Some(c)) if v == *c => {}
                    _ => {
                        agreed = false;
                        break;
                    }
                }
            }
            stack.pop();
            return if agreed { common } else { None };
        }
        None
    }
}

/// The outermost proper data-sorted ancestor of `redex` (inclusive) that is
/// not itself a value.
fn blocked_data_argument(t: &Term, redex: &Position) -> Option<Position> {
    let idx = redex.indices();
    (1..=idx.len())
        .map(|k| Position::from(idx[..k].to_vec()))
        .find(|p| {
            let sub = t.subterm_at(p).expect("prefix of a position");
            sub.sort() == Sort::Data && !is_data_value(sub)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::data_universe;
    use crate::syntax::{parse_spec, parse_term};
    use crate::transform::obs;

    fn fixture(name: &str) -> crate::spec::StreamSpec {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn first_element_of_fib_by_cases() {
        let spec = fixture("fib_original.spec");
        let trs = obs(&spec).unwrap().with_data();
        let u = data_universe(spec.sigma_d(), spec.rd(), 16).unwrap();
        let ev = CaseEval {
            trs: &trs,
            universe: u.elements(),
            fuel: 200,
            depth: 6,
        };
        let head_fib = Term::head_of(parse_term("Fib", &spec, &[]).unwrap());
        assert_eq!(ev.eval(&head_fib).unwrap().to_string(), "0");
        // The second element depends on the first, which the split cannot see.
        let second = Term::head_of(Term::tail_of(parse_term("Fib", &spec, &[]).unwrap()));
        assert_eq!(
            ev.eval(&second).map(|t| t.to_string()),
            Some("1".to_string())
        );
    }
}
