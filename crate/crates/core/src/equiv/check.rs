use std::collections::HashMap;
use std::fmt;

use super::script::{Direction, Justification, Proof, Script, Step};
use crate::spec::{data_universe, StreamSpec, DEFAULT_CAP};
use crate::syntax::render_term;
use crate::term::{match_into, FunSymbol, Position, Rule, Sort, Substitution, Sym, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofCheck {
    Valid,
    /// `step` is a path such as `4` or `2 (case 1) 3`.
    Invalid {
        proof: usize,
        step: String,
        reason: String,
    },
}

impl ProofCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ProofCheck::Valid)
    }
}

impl fmt::Display for ProofCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofCheck::Valid => f.write_str("valid"),
            ProofCheck::Invalid {
                proof,
                step,
                reason,
            } => {
                write!(f, "invalid: proof {}, step {step}: {reason}", proof + 1)
            }
        }
    }
}

/// The symbol `T` of a stream rule `T(x : sigma) = sigma`, if any.
pub fn tail_symbol(spec: &StreamSpec) -> Option<Sym> {
    spec.rs().iter().find_map(|r| {
        let f = r.lhs().root()?;
        if f.arity() != 1 || f.arg_sorts() != [Sort::Stream] {
            return None;
        }
        let (x, sigma) = r.lhs().args()[0].as_cons()?;
        (x.is_var() && sigma.is_var() && r.rhs() == sigma).then(|| f.clone())
    })
}

/// `head(x : sigma) = x`, `T(x : sigma) = sigma`, `sigma = head(sigma) : T(sigma)`.
pub fn e_equation(k: u8, tail: &Sym) -> Option<(Term, Term)> {
    let x = Term::var(Var::data("x"));
    let sigma = Term::var(Var::stream("sigma"));
    let head = |t: Term| Term::app(FunSymbol::head(), vec![t]).expect("head of a stream");
    let tl = |t: Term| Term::app(tail.clone(), vec![t]).expect("tail of a stream");
    match k {
        1 => Some((head(Term::cons(x.clone(), sigma.clone())), x)),
        2 => Some((tl(Term::cons(x, sigma.clone())), sigma)),
        3 => Some((sigma.clone(), Term::cons(head(sigma.clone()), tl(sigma)))),
        _ => None,
    }
}

/// Stream rules followed by data rules, each with its `sym.k` name.
pub fn named_rules(spec: &StreamSpec) -> Vec<(String, &Rule)> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    spec.rs()
        .iter()
        .chain(spec.rd().rules())
        .map(|r| {
            let root = r.root().name();
            let k = counts.entry(root).or_insert(0);
            *k += 1;
            (format!("{}.{k}", crate::syntax::escape_symbol(root)), r)
        })
        .collect()
}

/// First position where `a` and `b` differ, with the two subterms there.
pub fn first_difference<'t>(a: &'t Term, b: &'t Term) -> Option<(Position, &'t Term, &'t Term)> {
    fn go<'t>(a: &'t Term, b: &'t Term, at: Position) -> Option<(Position, &'t Term, &'t Term)> {
        if a == b {
            return None;
        }
        match (a, b) {
            (Term::App(f, xs), Term::App(g, ys)) if f == g => xs
                .iter()
                .zip(ys.iter())
                .enumerate()
                .find_map(|(i, (x, y))| go(x, y, at.child(i))),
            _ => Some((at, a, b)),
        }
    }
    go(a, b, Position::root())
}

fn mismatch(expected: &Term, actual: &Term) -> String {
    let mut msg = format!(
        "expected `{}`, reached `{}`",
        render_term(expected),
        render_term(actual)
    );
    if let Some((p, x, y)) = first_difference(expected, actual) {
        if !p.is_root() {
            msg.push_str(&format!(
                " (at {p}: `{}` vs `{}`)",
                render_term(x),
                render_term(y)
            ));
        }
    }
    msg
}

/// One rewrite step: `cur` with the instance of `from` at `at` replaced by
/// the matching instance of `to`. `with` pre-binds equation variables.
pub fn rewrite_with(
    from: &Term,
    to: &Term,
    at: &Position,
    with: &[(String, Term)],
    cur: &Term,
) -> Result<(Term, Substitution), String> {
    let sub = cur
        .subterm_at(at)
        .ok_or_else(|| format!("position {at} does not exist in `{}`", render_term(cur)))?;
    let mut eq_vars = from.vars();
    for v in to.vars() {
        if !eq_vars.contains(&v) {
            eq_vars.push(v);
        }
    }
    let mut theta = Substitution::new();
    for (name, t) in with {
        let v = eq_vars
            .iter()
            .find(|v| v.name() == name)
            .ok_or_else(|| format!("`{name}` is not a variable of the equation"))?;
        if !theta.insert(v.clone(), t.clone()) {
            return Err(format!(
                "`{name}` has sort {}, `{}` does not",
                v.sort(),
                render_term(t)
            ));
        }
    }
    if !match_into(from, sub, &mut theta) {
        return Err(format!(
            "`{}` at {at} is not an instance of `{}`",
            render_term(sub),
            render_term(&from.apply(&theta))
        ));
    }
    if let Some(v) = to.vars().into_iter().find(|v| theta.get(v).is_none()) {
        return Err(format!(
            "variable `{v}` is unbound; give it with `with {{ {v} := ... }}`"
        ));
    }
    let out = cur
        .replace_at(at, to.apply(&theta))
        .expect("position exists");
    Ok((out, theta))
}

fn instantiate_step(step: &Step, s: &Substitution) -> Step {
    match step {
        Step::Rewrite {
            by,
            dir,
            at,
            with,
            span,
        } => Step::Rewrite {
            by: by.clone(),
            dir: *dir,
            at: at.clone(),
            with: with.iter().map(|(n, t)| (n.clone(), t.apply(s))).collect(),
            span: *span,
        },
        Step::Thus { term, span } => Step::Thus {
            term: term.apply(s),
            span: *span,
        },
        Step::Cases {
            var,
            branches,
            span,
        } => Step::Cases {
            var: var.clone(),
            branches: branches
                .iter()
                .map(|(k, sub)| {
                    (
                        k.clone(),
                        sub.iter().map(|st| instantiate_step(st, s)).collect(),
                    )
                })
                .collect(),
            span: *span,
        },
    }
}

struct Failure {
    step: String,
    reason: String,
}

struct Checker<'s> {
    rules: Vec<(String, &'s Rule)>,
    tail: Option<Sym>,
    universe: Result<Vec<Term>, String>,
    lemmas: HashMap<String, (Term, Term)>,
}

impl Checker<'_> {
    fn equation(&self, by: &Justification) -> Result<(Term, Term), String> {
        match by {
            Justification::E(k) => {
                let tail = match (&self.tail, k) {
                    (Some(t), _) => t.clone(),
                    // E1 does not mention the tail symbol.
                    (None, 1) => FunSymbol::tail(),
                    (None, _) => {
                        return Err(format!(
                            "E{k} needs a tail equation; add `tail0 : s -> s` and `tail0(x : sigma) = sigma` to the specification"
                        ))
                    }
                };
                e_equation(*k, &tail).ok_or_else(|| format!("there is no equation E{k}"))
            }
            Justification::Eq(name) => {
                if let Some((_, r)) = self.rules.iter().find(|(n, _)| n == name) {
                    return Ok((r.lhs().clone(), r.rhs().clone()));
                }
                self.lemmas.get(name).cloned().ok_or_else(|| {
                    if name.contains('.') {
                        format!("no equation named `{name}`")
                    } else {
                        format!("lemma `{name}` is not established")
                    }
                })
            }
        }
    }

    /// Replays `steps` from `start`; the chain must end at `goal`.
    fn chain(
        &self,
        steps: &[Step],
        start: &Term,
        goal: &Term,
        prefix: &str,
    ) -> Result<(), Failure> {
        let mut cur = start.clone();
        for (k, step) in steps.iter().enumerate() {
            let here = format!("{prefix}{}", k + 1);
            let fail = |reason: String| Failure {
                step: here.clone(),
                reason,
            };
            match step {
                Step::Rewrite {
                    by, dir, at, with, ..
                } => {
                    let (l, r) = self.equation(by).map_err(fail)?;
                    let (from, to) = match dir {
                        Direction::Fwd => (l, r),
                        Direction::Bwd => (r, l),
                    };
                    cur = rewrite_with(&from, &to, at, with, &cur).map_err(fail)?.0;
                }
                Step::Thus { term, .. } => {
                    if *term != cur {
                        return Err(fail(mismatch(term, &cur)));
                    }
                }
                Step::Cases { var, branches, .. } => {
                    if k + 1 != steps.len() {
                        return Err(fail(
                            "`cases` must be the last step of its chain".to_string(),
                        ));
                    }
                    let universe = self.universe.as_ref().map_err(|e| fail(e.clone()))?;
                    for (key, _) in branches {
                        if !universe.contains(key) {
                            return Err(fail(format!(
                                "`{}` is not an element of D",
                                render_term(key)
                            )));
                        }
                    }
                    for u in universe {
                        let n = branches.iter().filter(|(key, _)| key == u).count();
                        if n != 1 {
                            let what = if n == 0 { "missing" } else { "repeated" };
                            return Err(fail(format!("case `{}` is {what}", render_term(u))));
                        }
                    }
                    for (u, sub) in branches {
                        let s: Substitution = [(var.clone(), u.clone())].into_iter().collect();
                        let sub: Vec<Step> =
                            sub.iter().map(|st| instantiate_step(st, &s)).collect();
                        let inner = format!("{here} (case {}) ", render_term(u));
                        self.chain(&sub, &cur.apply(&s), &goal.apply(&s), &inner)?;
                    }
                    return Ok(());
                }
            }
        }
        if cur != *goal {
            return Err(Failure {
                step: format!("{prefix}{}", steps.len()),
                reason: mismatch(goal, &cur),
            });
        }
        Ok(())
    }
}

/// Checks every proof of `script` in order; a lemma becomes citable once its
/// proof is valid.
pub fn check_script(spec: &StreamSpec, script: &Script) -> Vec<ProofCheck> {
    let mut checker = Checker {
        rules: named_rules(spec),
        tail: tail_symbol(spec),
        universe: data_universe(spec.sigma_d(), spec.rd(), DEFAULT_CAP)
            .map(|u| u.elements().to_vec())
            .map_err(|e| format!("cannot split cases: {e}")),
        lemmas: HashMap::new(),
    };
    let mut out = Vec::new();
    for (i, proof) in script.proofs.iter().enumerate() {
        let res = check_one(&checker, proof, i);
        if let (ProofCheck::Valid, Some(name)) = (&res, &proof.name) {
            checker
                .lemmas
                .insert(name.clone(), (proof.lhs.clone(), proof.rhs.clone()));
        }
        out.push(res);
    }
    out
}

fn check_one(checker: &Checker<'_>, proof: &Proof, index: usize) -> ProofCheck {
    if let Some(name) = &proof.name {
        if checker.lemmas.contains_key(name) || checker.rules.iter().any(|(n, _)| n == name) {
            return ProofCheck::Invalid {
                proof: index,
                step: "0".to_string(),
                reason: format!("`{name}` is already defined"),
            };
        }
    }
    match checker.chain(&proof.steps, &proof.lhs, &proof.rhs, "") {
        Ok(()) => ProofCheck::Valid,
        Err(f) => ProofCheck::Invalid {
            proof: index,
            step: f.step,
            reason: f.reason,
        },
    }
}

/// Valid iff every proof in `script` is.
pub fn check_proof(spec: &StreamSpec, script: &Script) -> ProofCheck {
    check_script(spec, script)
        .into_iter()
        .find(|r| !r.is_valid())
        .unwrap_or(ProofCheck::Valid)
}
