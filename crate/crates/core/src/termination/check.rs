//! Certificate checking. Deliberately shares no code with the prover beyond
//! the term representation: pairs, graph, components, usable rules and
//! polynomial arithmetic are all recomputed here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Certificate, ProofStep, MARK};
use crate::term::{FunSymbol, Term, Trs, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    Invalid { step: Option<usize>, reason: String },
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateCheck::Valid => f.write_str("valid"),
            CertificateCheck::Invalid {
                step: Some(k),
                reason,
            } => write!(f, "invalid at step {}: {reason}", k + 1),
            CertificateCheck::Invalid { step: None, reason } => write!(f, "invalid: {reason}"),
        }
    }
}

struct Pair {
    lhs: Term,
    rhs: Term,
}

fn sharp(t: &Term) -> Term {
    let f = t.root().expect("application");
    let g = FunSymbol::new(
        format!("{}{MARK}", f.name()),
        f.arg_sorts().to_vec(),
        f.result_sort(),
    );
    Term::App(g, t.args().to_vec().into())
}

fn collect_defined(trs: &Trs, t: &Term, out: &mut Vec<Term>) {
    if let Term::App(f, args) = t {
        if trs.is_defined(f.name()) {
            out.push(t.clone());
        }
        for a in args.iter() {
            collect_defined(trs, a, out);
        }
    }
}

fn pairs_of(trs: &Trs) -> Vec<Pair> {
    let mut out = Vec::new();
    for r in trs.rules() {
        let mut subs = Vec::new();
        collect_defined(trs, r.rhs(), &mut subs);
        for s in subs {
            out.push(Pair {
                lhs: sharp(r.lhs()),
                rhs: sharp(&s),
            });
        }
    }
    out
}

/// Syntactic unifiability; sorts are ignored, which can only add edges.
fn unifiable(a: &Term, b: &Term) -> bool {
    let mut bind: BTreeMap<String, Term> = BTreeMap::new();
    let mut todo = vec![(a.clone(), b.clone())];
    fn walk(t: &Term, bind: &BTreeMap<String, Term>) -> Term {
        let mut t = t.clone();
        while let Some(v) = t.as_var() {
            match bind.get(v.name()) {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }
    fn occurs(v: &str, t: &Term, bind: &BTreeMap<String, Term>) -> bool {
        let t = walk(t, bind);
        match &t {
            Term::Var(w) => w.name() == v,
            Term::App(_, args) => args.iter().any(|a| occurs(v, a, bind)),
        }
    }
    while let Some((s, t)) = todo.pop() {
        let (s, t) = (walk(&s, &bind), walk(&t, &bind));
        match (&s, &t) {
            (Term::Var(x), Term::Var(y)) if x.name() == y.name() => {}
            (Term::Var(x), u) | (u, Term::Var(x)) => {
                if occurs(x.name(), u, &bind) {
                    return false;
                }
                bind.insert(x.name().to_string(), u.clone());
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f.name() != g.name() || xs.len() != ys.len() {
                    return false;
                }
                todo.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
        }
    }
    true
}

fn capped(trs: &Trs, t: &Term, next: &mut usize, top: bool) -> Term {
    match t {
        Term::App(f, args) if top || !trs.is_defined(f.name()) => Term::App(
            f.clone(),
            args.iter().map(|a| capped(trs, a, next, false)).collect(),
        ),
        _ => {
            *next += 1;
            Term::var(Var::new(format!("?{next}"), t.sort()))
        }
    }
}

fn graph(trs: &Trs, pairs: &[Pair]) -> Vec<BTreeSet<usize>> {
    let renamed: Vec<Term> = pairs
        .iter()
        .map(|p| {
            p.lhs
                .map_vars(&|v| Some(Var::new(format!("{}!", v.name()), v.sort())))
        })
        .collect();
    pairs
        .iter()
        .map(|p| {
            let c = capped(trs, &p.rhs, &mut 0, true);
            (0..pairs.len())
                .filter(|&j| unifiable(&c, &renamed[j]))
                .collect()
        })
        .collect()
}

fn reach(edges: &[BTreeSet<usize>], live: &BTreeSet<usize>, from: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<usize> = edges[from]
        .iter()
        .copied()
        .filter(|j| live.contains(j))
        .collect();
    while let Some(n) = stack.pop() {
        if seen.insert(n) {
            stack.extend(edges[n].iter().copied().filter(|j| live.contains(j)));
        }
    }
    seen
}

/// Nodes on a cycle through `live`, grouped by mutual reachability.
fn components(edges: &[BTreeSet<usize>], live: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let reach: BTreeMap<usize, BTreeSet<usize>> =
        live.iter().map(|&n| (n, reach(edges, live, n))).collect();
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for &n in live {
        if !reach[&n].contains(&n) || out.iter().any(|c| c.contains(&n)) {
            continue;
        }
        out.push(
            reach[&n]
                .iter()
                .copied()
                .filter(|m| reach[m].contains(&n))
                .collect(),
        );
    }
    out
}

fn usable(trs: &Trs, pairs: &[Pair], members: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut names = BTreeSet::new();
    let mut frontier: Vec<&Term> = members.iter().flat_map(|&i| pairs[i].rhs.args()).collect();
    while let Some(t) = frontier.pop() {
        if let Term::App(f, args) = t {
            frontier.extend(args.iter());
            if names.insert(f.name().to_string()) {
                for r in trs.rules() {
                    if r.lhs().root_name() == Some(f.name()) {
                        frontier.push(r.rhs());
                    }
                }
            }
        }
    }
    (0..trs.rules().len())
        .filter(|&k| {
            trs.rules()[k]
                .lhs()
                .root_name()
                .is_some_and(|n| names.contains(n))
        })
        .collect()
}

/// Exact value of a linear interpretation: constant and per-variable coefficient.
#[derive(PartialEq, Eq, Debug)]
struct Linear {
    constant: u128,
    coeffs: BTreeMap<Var, u128>,
}

fn value(interp: &BTreeMap<String, Vec<u64>>, t: &Term) -> Result<Linear, String> {
    match t {
        Term::Var(v) => Ok(Linear {
            constant: 0,
            coeffs: BTreeMap::from([(v.clone(), 1)]),
        }),
        Term::App(f, args) => {
            let cs = interp
                .get(f.name())
                .ok_or_else(|| format!("no interpretation for `{}`", f.name()))?;
            if cs.len() != args.len() + 1 {
                return Err(format!(
                    "`{}` needs {} coefficients, got {}",
                    f.name(),
                    args.len() + 1,
                    cs.len()
                ));
            }
            let mut out = Linear {
                constant: cs[0] as u128,
                coeffs: BTreeMap::new(),
            };
            for (a, &c) in args.iter().zip(&cs[1..]) {
                let v = value(interp, a)?;
                out.constant += c as u128 * v.constant;
                for (x, k) in v.coeffs {
                    *out.coeffs.entry(x).or_insert(0) += c as u128 * k;
                }
            }
            Ok(out)
        }
    }
}

fn geq(l: &Linear, r: &Linear) -> bool {
    l.constant >= r.constant
        && r.coeffs
            .iter()
            .all(|(x, k)| l.coeffs.get(x).copied().unwrap_or(0) >= *k)
}

fn check_step(
    trs: &Trs,
    pairs: &[Pair],
    edges: &[BTreeSet<usize>],
    live: &BTreeSet<usize>,
    step: &ProofStep,
) -> Result<Vec<usize>, String> {
    let members: BTreeSet<usize> = step.pairs.iter().copied().collect();
    if members.iter().any(|&i| i >= pairs.len()) {
        return Err("pair index out of range".into());
    }
    if !components(edges, live).contains(&members) {
        return Err(format!(
            "pairs {:?} are not a cyclic component of the remaining graph",
            step.pairs
        ));
    }
    let rules = usable(trs, pairs, &members);
    let claimed: BTreeSet<usize> = step.usable_rules.iter().copied().collect();
    if claimed != rules {
        return Err(format!("usable rules should be {rules:?}"));
    }
    for &k in &rules {
        let r = &trs.rules()[k];
        if !geq(
            &value(&step.interpretation, r.lhs())?,
            &value(&step.interpretation, r.rhs())?,
        ) {
            return Err(format!("rule `{r}` is not weakly decreasing"));
        }
    }
    let mut strict = Vec::new();
    for &i in &members {
        let (l, r) = (
            value(&step.interpretation, &pairs[i].lhs)?,
            value(&step.interpretation, &pairs[i].rhs)?,
        );
        if !geq(&l, &r) {
            return Err(format!(
                "pair `{} -> {}` is not weakly decreasing",
                pairs[i].lhs, pairs[i].rhs
            ));
        }
        if l.constant > r.constant {
            strict.push(i);
        }
    }
    let mut removed = step.removed.clone();
    removed.sort_unstable();
    if removed != strict {
        return Err(format!("removed pairs should be {strict:?}"));
    }
    if strict.is_empty() {
        return Err("no pair is strictly decreasing".into());
    }
    Ok(strict)
}

/// Replays `cert` against the dependency pairs of `trs`.
pub fn check_certificate(trs: &Trs, cert: &Certificate) -> CertificateCheck {
    let pairs = pairs_of(trs);
    let edges = graph(trs, &pairs);
    let mut live: BTreeSet<usize> = (0..pairs.len()).collect();
    for (k, step) in cert.steps.iter().enumerate() {
        match check_step(trs, &pairs, &edges, &live, step) {
            Ok(gone) => {
                for i in gone {
                    live.remove(&i);
                }
            }
            Err(reason) => {
                return CertificateCheck::Invalid {
                    step: Some(k),
                    reason,
                }
            }
        }
    }
    match components(&edges, &live).first() {
        None => CertificateCheck::Valid,
        Some(c) => CertificateCheck::Invalid {
            step: None,
            reason: format!(
                "pairs {:?} still form a cycle",
                c.iter().collect::<Vec<_>>()
            ),
        },
    }
}
