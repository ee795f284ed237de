use serde::{Deserialize, Serialize};

use super::{Position, Term, Trs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    LeftmostInnermost,
    LeftmostOutermost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub term: Term,
    pub position: Position,
    pub rule: usize,
}

/// Contracts one redex chosen by `strategy`; `None` iff `t` is a normal form.
pub fn rewrite_step(trs: &Trs, t: &Term, strategy: Strategy) -> Option<RewriteStep> {
    let mut path = Vec::new();
    let (pos, rule, theta) = match strategy {
        Strategy::LeftmostInnermost => find_innermost(trs, t, &mut path)?,
        Strategy::LeftmostOutermost => find_outermost(trs, t, &mut path)?,
    };
    let contractum = trs.rules()[rule].rhs().apply(&theta);
    let term = t
        .replace_at(&pos, contractum)
        .expect("redex position exists and contraction preserves sort");
    Some(RewriteStep {
        term,
        position: pos,
        rule,
    })
}

type Redex = (Position, usize, super::Substitution);

// First redex in post-order: no redex below it, none to its left.
fn find_innermost(trs: &Trs, t: &Term, path: &mut Vec<usize>) -> Option<Redex> {
    for (i, a) in t.args().iter().enumerate() {
        path.push(i);
        let found = find_innermost(trs, a, path);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    let (rule, theta) = trs.root_redex(t)?;
    Some((Position::from(path.clone()), rule, theta))
}

fn find_outermost(trs: &Trs, t: &Term, path: &mut Vec<usize>) -> Option<Redex> {
    if let Some((rule, theta)) = trs.root_redex(t) {
        return Some((Position::from(path.clone()), rule, theta));
    }
    for (i, a) in t.args().iter().enumerate() {
        path.push(i);
        let found = find_outermost(trs, a, path);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// All redexes of `t`, in pre-order, each with every applicable rule.
pub fn all_redexes(trs: &Trs, t: &Term) -> Vec<(Position, usize)> {
    let mut out = Vec::new();
    for p in t.function_positions() {
        let sub = t.subterm_at(&p).expect("position from positions()");
        if let Some(name) = sub.root_name() {
            for &i in trs.rules_for(name) {
                if super::match_term(trs.rules()[i].lhs(), sub).is_some() {
                    out.push((p.clone(), i));
                }
            }
        }
    }
    out
}

/// Applies rule `rule` at `pos`; `None` if it does not match there.
pub fn apply_rule_at(trs: &Trs, t: &Term, pos: &Position, rule: usize) -> Option<Term> {
    let r = trs.rules().get(rule)?;
    let sub = t.subterm_at(pos)?;
    let theta = super::match_term(r.lhs(), sub)?;
    t.replace_at(pos, r.rhs().apply(&theta))
}
