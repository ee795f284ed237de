//! Bounded bidirectional breadth-first search for proof chains. A
//! convenience only: whatever it finds is an ordinary script for the checker.

use std::collections::HashMap;

use super::check::{e_equation, named_rules, rewrite_with, tail_symbol};
use super::script::{Direction, Justification, Proof, Step};
use crate::spec::StreamSpec;
use crate::syntax::Span;
use crate::term::{Position, Sort, Term};

pub const MAX_SEARCH_DEPTH: usize = 6;

struct Move {
    by: Justification,
    dir: Direction,
    from: Term,
    to: Term,
}

fn moves(spec: &StreamSpec) -> Vec<Move> {
    let mut out = Vec::new();
    for (name, r) in named_rules(spec) {
        for dir in [Direction::Fwd, Direction::Bwd] {
            let (from, to) = match dir {
                Direction::Fwd => (r.lhs().clone(), r.rhs().clone()),
                Direction::Bwd => (r.rhs().clone(), r.lhs().clone()),
            };
            // A bare variable matches everywhere; such steps are left to E3.
            if from.is_var() {
                continue;
            }
            out.push(Move {
                by: Justification::Eq(name.clone()),
                dir,
                from,
                to,
            });
        }
    }
    if let Some(tail) = tail_symbol(spec) {
        for k in 1..=3u8 {
            let (l, r) = e_equation(k, &tail).expect("k in 1..=3");
            let dir = if k == 3 {
                Direction::Bwd
            } else {
                Direction::Fwd
            };
            let (from, to) = if k == 3 { (r, l) } else { (l, r) };
            out.push(Move {
                by: Justification::E(k),
                dir,
                from,
                to,
            });
        }
    }
    out
}

type Applied = (Justification, Direction, Position, Vec<(String, Term)>);
type Trail = Vec<Applied>;

fn successors(ms: &[Move], t: &Term, tail_known: bool) -> Vec<(Term, Applied)> {
    let mut out = Vec::new();
    for p in t.positions() {
        let sub = t.subterm_at(&p).expect("own position");
        for m in ms {
            if let Ok((next, theta)) = rewrite_with(&m.from, &m.to, &p, &[], t) {
                let with = theta
                    .iter()
                    .map(|(v, u)| (v.name().to_string(), u.clone()))
                    .collect();
                out.push((next, (m.by.clone(), m.dir, p.clone(), with)));
            }
        }
        // E3 forward at a stream position that is not already a cons.
        if tail_known && sub.sort() == Sort::Stream && sub.as_cons().is_none() {
            let e3 = ms
                .iter()
                .find(|m| m.by == Justification::E(3))
                .expect("tail known");
            if let Ok((next, theta)) = rewrite_with(&e3.to, &e3.from, &p, &[], t) {
                let with = theta
                    .iter()
                    .map(|(v, u)| (v.name().to_string(), u.clone()))
                    .collect();
                out.push((next, (Justification::E(3), Direction::Fwd, p.clone(), with)));
            }
        }
    }
    out
}

fn expand(
    ms: &[Move],
    start: &Term,
    depth: usize,
    width: usize,
    tail_known: bool,
) -> HashMap<Term, Trail> {
    let mut seen: HashMap<Term, Trail> = HashMap::from([(start.clone(), Vec::new())]);
    let mut frontier = vec![start.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            let trail = seen[t].clone();
            for (u, step) in successors(ms, t, tail_known) {
                if seen.len() >= width {
                    break;
                }
                if !seen.contains_key(&u) {
                    let mut tr = trail.clone();
                    tr.push(step);
                    seen.insert(u.clone(), tr);
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// A chain `lhs ~ ... ~ rhs` of at most `depth` (capped at
/// [`MAX_SEARCH_DEPTH`]) rule and E steps, with every substitution explicit.
pub fn search_proof(
    spec: &StreamSpec,
    lhs: &Term,
    rhs: &Term,
    depth: usize,
    width: usize,
) -> Option<Proof> {
    let depth = depth.min(MAX_SEARCH_DEPTH);
    let ms = moves(spec);
    let tail_known = tail_symbol(spec).is_some();
    let fwd = expand(&ms, lhs, depth.div_ceil(2), width, tail_known);
    let bwd = expand(&ms, rhs, depth / 2, width, tail_known);
    let meet = fwd
        .iter()
        .filter(|(t, _)| bwd.contains_key(*t))
        .min_by_key(|(t, tr)| (tr.len() + bwd[*t].len(), t.to_string()))?
        .0
        .clone();
    let span = Span::default();
    let mut steps: Vec<Step> = fwd[&meet]
        .iter()
        .map(|(by, dir, at, with)| Step::Rewrite {
            by: by.clone(),
            dir: *dir,
            at: at.clone(),
            with: with.clone(),
            span,
        })
        .collect();
    steps.extend(
        bwd[&meet]
            .iter()
            .rev()
            .map(|(by, dir, at, with)| Step::Rewrite {
                by: by.clone(),
                dir: dir.flipped(),
                at: at.clone(),
                with: with.clone(),
                span,
            }),
    );
    Some(Proof {
        name: None,
        lhs: lhs.clone(),
        rhs: rhs.clone(),
        steps,
        span,
    })
}
