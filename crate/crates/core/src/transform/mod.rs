//! Semantics-preserving rewrites of specifications and the Obs construction.

mod obs;

use std::fmt;

use thiserror::Error;

use crate::spec::StreamSpec;
use crate::syntax::Goal;
use crate::term::{FunSymbol, Rule, Sort, Sym, Term, Var};

pub use obs::{obs, p_transform, rename_observers, ObsSystem, Origin};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("rule `{0}` has a stream argument that is neither a variable nor `x : sigma`")]
    Shape(String),
    #[error("no rule of `{symbol}` has a non-trivial `u : t` at stream position {position}")]
    NotUnfoldable { symbol: String, position: usize },
    #[error("`{symbol}` has {arity} stream argument(s); position {position} does not exist")]
    BadPosition {
        symbol: String,
        position: usize,
        arity: usize,
    },
    #[error("unknown stream symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{0}` is already in use")]
    SymbolClash(String),
    #[error("variable `{0}` of the definition body is not a parameter")]
    VariableEscape(String),
    #[error("{0}")]
    Sort(String),
    #[error("Obs(R_s) ∪ R_d is not orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("{0}")]
    Spec(String),
}

fn spec_err(e: impl fmt::Display) -> TransformError {
    TransformError::Spec(e.to_string())
}

fn fresh_symbol_name(spec: &StreamSpec, base: &str) -> String {
    let mut name = base.to_string();
    while spec.symbol(&name).is_some() || name == crate::term::HEAD || name == crate::term::TAIL {
        name.push('\'');
    }
    name
}

/// True if the argument is `u : t` with `u` or `t` not a variable.
fn needs_unfolding(arg: &Term) -> bool {
    matches!(arg.as_cons(), Some((u, t)) if !(u.is_var() && t.is_var()))
}

/// Unf_{f,i} with `i` the 1-based stream position. The fresh symbol is
/// `<f>_u<i>`, primed until unused.
pub fn unfold(spec: &StreamSpec, f: &str, i: usize) -> Result<StreamSpec, TransformError> {
    let fsym = spec
        .sigma_s()
        .iter()
        .find(|s| s.name() == f)
        .cloned()
        .ok_or_else(|| TransformError::UnknownSymbol(f.to_string()))?;
    let (n, m) = (fsym.data_arity(), fsym.stream_arity());
    if i == 0 || i > m {
        return Err(TransformError::BadPosition {
            symbol: f.to_string(),
            position: i,
            arity: m,
        });
    }
    let slot = n + i - 1;
    if !spec
        .rules_of(f)
        .any(|(_, r)| needs_unfolding(&r.lhs().args()[slot]))
    {
        return Err(TransformError::NotUnfoldable {
            symbol: f.to_string(),
            position: i,
        });
    }
    let g = FunSymbol::stream(fresh_symbol_name(spec, &format!("{f}_u{i}")), n + 1, m);

    let xs: Vec<Term> = (1..=n + 1)
        .map(|k| Term::var(Var::data(format!("x{k}"))))
        .collect();
    let ss: Vec<Term> = (1..=m)
        .map(|k| Term::var(Var::stream(format!("sigma{k}"))))
        .collect();
    let mut f_args: Vec<Term> = xs[..n].to_vec();
    f_args.extend(ss.iter().cloned());
    f_args[slot] = Term::cons(xs[n].clone(), ss[i - 1].clone());
    let mut g_args = xs.clone();
    g_args.extend(ss.iter().cloned());
    let bridge = Rule::new(
        Term::app(fsym.clone(), f_args).map_err(spec_err)?,
        Term::app(g.clone(), g_args).map_err(spec_err)?,
    )
    .map_err(spec_err)?;

    let mut rs = Vec::with_capacity(spec.rs().len() + 1);
    let mut bridged = false;
    for r in spec.rs() {
        let args = r.lhs().args();
        match (r.root() == &fsym, args.get(slot).and_then(Term::as_cons)) {
            (true, Some((u, t))) => {
                if !bridged {
                    rs.push(bridge.clone());
                    bridged = true;
                }
                let mut new_args = args[..n].to_vec();
                new_args.push(u.clone());
                new_args.extend(args[n..].iter().cloned());
                new_args[slot + 1] = t.clone();
                let lhs = Term::app(g.clone(), new_args).map_err(spec_err)?;
                rs.push(Rule::new(lhs, r.rhs().clone()).map_err(spec_err)?);
            }
            _ => rs.push(r.clone()),
        }
    }
    let mut sigma_s = spec.sigma_s().to_vec();
    let at = sigma_s.iter().position(|s| *s == fsym).unwrap() + 1;
    sigma_s.insert(at, g);
    spec.with_stream_symbols(sigma_s, rs).map_err(spec_err)
}

/// Unfolds until every stream argument of every left-hand side is a variable
/// or `x : sigma`. Returns the `(symbol, position)` pairs applied, in order.
pub fn unfold_all(spec: &StreamSpec) -> Result<(StreamSpec, Vec<(String, usize)>), TransformError> {
    let mut cur = spec.clone();
    let mut applied = Vec::new();
    loop {
        let next = cur.rs().iter().find_map(|r| {
            let f = r.root();
            r.lhs().args()[f.data_arity()..]
                .iter()
                .position(needs_unfolding)
                .map(|k| (f.name().to_string(), k + 1))
        });
        let Some((f, i)) = next else {
            return Ok((cur, applied));
        };
        cur = unfold(&cur, &f, i)?;
        applied.push((f, i));
    }
}

/// Adds a fresh stream symbol `g` with the rule `g(params) = body`.
pub fn add_definition(
    spec: &StreamSpec,
    g: Sym,
    params: Vec<Var>,
    body: Term,
) -> Result<StreamSpec, TransformError> {
    if spec.symbol(g.name()).is_some() || g.is_cons() {
        return Err(TransformError::SymbolClash(g.name().to_string()));
    }
    if body.contains_symbol(g.name()) {
        return Err(TransformError::SymbolClash(g.name().to_string()));
    }
    if g.result_sort() != Sort::Stream || body.sort() != Sort::Stream {
        return Err(TransformError::Sort(format!(
            "a definition must be of sort s: `{}`",
            body
        )));
    }
    if let Some(v) = body.vars().into_iter().find(|v| !params.contains(v)) {
        return Err(TransformError::VariableEscape(v.name().to_string()));
    }
    if !spec.owns_term(&body) {
        return Err(TransformError::Spec(format!(
            "`{body}` uses symbols outside the specification"
        )));
    }
    for (k, p) in params.iter().enumerate() {
        if params[..k].contains(p) {
            return Err(TransformError::Sort(format!(
                "parameter `{p}` occurs twice"
            )));
        }
    }
    let lhs = Term::app(g.clone(), params.into_iter().map(Term::var).collect())
        .map_err(|e| TransformError::Sort(e.to_string()))?;
    let rule = Rule::new(lhs, body).map_err(spec_err)?;
    let mut sigma_s = spec.sigma_s().to_vec();
    sigma_s.push(g);
    let mut rs = spec.rs().to_vec();
    rs.push(rule);
    spec.with_stream_symbols(sigma_s, rs).map_err(spec_err)
}

/// What must be shown for a rule replacement to preserve semantics: each
/// `forward` rule under the new rules, each `backward` rule under the old.
/// Rules present on both sides (up to renaming) need no proof.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PendingObligation {
    pub forward: Vec<Rule>,
    pub backward: Vec<Rule>,
}

impl PendingObligation {
    pub fn len(&self) -> usize {
        self.forward.len() + self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for PendingObligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.forward {
            writeln!(f, "under the new rules: {}", r.equation())?;
        }
        for r in &self.backward {
            writeln!(f, "under the old rules: {}", r.equation())?;
        }
        Ok(())
    }
}

/// Obligations between two rule lists, up to variable renaming.
pub fn obligations(old: &[Rule], new: &[Rule]) -> PendingObligation {
    let missing = |from: &[Rule], other: &[Rule]| -> Vec<Rule> {
        from.iter()
            .filter(|r| !other.iter().any(|o| o.is_variant_of(r)))
            .cloned()
            .collect()
    };
    PendingObligation {
        forward: missing(old, new),
        backward: missing(new, old),
    }
}

pub fn replace_rules(
    spec: &StreamSpec,
    new_rs: Vec<Rule>,
) -> Result<(StreamSpec, PendingObligation), TransformError> {
    let pending = obligations(spec.rs(), &new_rs);
    let next = spec
        .with_rs(new_rs)
        .map_err(|e| TransformError::Sort(e.to_string()))?;
    Ok((next, pending))
}

/// Doubles Σ_s with primed copies and states `f(..) == f'(..)` for every `f`.
pub fn make_selfequality_goals(spec: &StreamSpec) -> (StreamSpec, Vec<Goal>) {
    let mut taken: Vec<String> = spec
        .signature()
        .iter()
        .map(|f| f.name().to_string())
        .collect();
    let mut pairs: Vec<(Sym, Sym)> = Vec::new();
    for f in spec.sigma_s() {
        let mut name = format!("{}'", f.name());
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.push(name.clone());
        pairs.push((f.clone(), f.renamed(name)));
    }
    let prime = |s: &Sym| pairs.iter().find(|(a, _)| a == s).map(|(_, b)| b.clone());
    let mut sigma_s = spec.sigma_s().to_vec();
    sigma_s.extend(pairs.iter().map(|(_, b)| b.clone()));
    let mut rs = spec.rs().to_vec();
    rs.extend(spec.rs().iter().map(|r| r.map_symbols(&prime)));
    let doubled = spec
        .with_stream_symbols(sigma_s, rs)
        .expect("primed copies are fresh");
    let goals = pairs
        .iter()
        .map(|(f, fp)| {
            let args: Vec<Term> = f
                .arg_sorts()
                .iter()
                .enumerate()
                .map(|(k, s)| match s {
                    Sort::Data => Term::var(Var::data(format!("x{}", k + 1))),
                    Sort::Stream => Term::var(Var::stream(format!("s{}", k + 1))),
                })
                .collect();
            Goal {
                lhs: Term::app(f.clone(), args.clone()).expect("well-sorted"),
                rhs: Term::app(fp.clone(), args).expect("well-sorted"),
            }
        })
        .collect();
    (doubled, goals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::validate;
    use crate::syntax::{parse_goals, parse_spec, render_goals};

    fn fixture(name: &str) -> StreamSpec {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn rule_strings(spec: &StreamSpec) -> Vec<String> {
        spec.rs().iter().map(Rule::to_string).collect()
    }

    #[test]
    fn unfold_fib() {
        let spec = fixture("fib_intro.spec");
        let u = unfold(&spec, "f", 1).unwrap();
        assert_eq!(
            rule_strings(&u),
            [
                "Fib -> f(Fib)",
                "f(x1 : sigma1) -> f_u1(x1, sigma1)",
                "f_u1(0, sigma) -> 0 : 1 : f(sigma)",
                "f_u1(1, sigma) -> 0 : f(sigma)",
            ]
        );
        assert!(validate(&u).is_proper());
        assert_eq!(u.sigma_s()[2].type_string(), "d s -> s");
    }

    #[test]
    fn unfold_errors() {
        let spec = fixture("fib_intro.spec");
        assert!(matches!(
            unfold(&spec, "f", 2),
            Err(TransformError::BadPosition { .. })
        ));
        let done = unfold(&spec, "f", 1).unwrap();
        assert!(matches!(
            unfold(&done, "f", 1),
            Err(TransformError::NotUnfoldable { .. })
        ));
        assert!(matches!(
            unfold(&spec, "h", 1),
            Err(TransformError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn fresh_name_is_primed() {
        let spec = parse_spec(
            "sig 0 : d ; f : s -> s ; f_u1 : s ; svar sigma ; streamrules f(0 : sigma) = f(sigma) ; f_u1 = 0 : f_u1 ;",
        )
        .unwrap();
        let u = unfold(&spec, "f", 1).unwrap();
        assert!(u.symbol("f_u1'").is_some());
    }

    #[test]
    fn unfold_all_reaches_proper_kolakoski() {
        let (u, applied) = unfold_all(&fixture("kol_prime.spec")).unwrap();
        assert_eq!(applied, [("g".to_string(), 1), ("f".to_string(), 1)]);
        assert!(validate(&u).is_proper(), "{}", validate(&u));
    }

    #[test]
    fn unfold_all_exgr() {
        let (u, _) = unfold_all(&fixture("exgr_raw.spec")).unwrap();
        let exgr = fixture("exgr.spec");
        let canon = |s: &StreamSpec| {
            let mut v: Vec<Rule> = s
                .rs()
                .iter()
                .map(|r| {
                    r.map_symbols(&|f: &Sym| (f.name() == "f_u1").then(|| f.renamed("g")))
                        .canonical()
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(canon(&u), canon(&exgr));
    }

    #[test]
    fn definitions() {
        let spec = fixture("fib_original.spec");
        let tail0 = spec.symbol("tail0").unwrap().clone();
        let fib = Term::constant(spec.symbol("Fib").unwrap().clone()).unwrap();
        let body = Term::app(tail0, vec![fib]).unwrap();
        let c = FunSymbol::stream("c", 0, 0);
        let with_c = add_definition(&spec, c.clone(), vec![], body.clone()).unwrap();
        assert_eq!(with_c, fixture("fib_rs.spec"));
        let selfref = Term::constant(c.clone()).unwrap();
        assert!(matches!(
            add_definition(
                &spec,
                c.clone(),
                vec![],
                Term::app(spec.symbol("f").unwrap().clone(), vec![selfref]).unwrap()
            ),
            Err(TransformError::SymbolClash(_))
        ));
        assert!(matches!(
            add_definition(&with_c, c, vec![], body),
            Err(TransformError::SymbolClash(_))
        ));
        let h = FunSymbol::stream("h", 0, 1);
        let sigma = Var::stream("sigma");
        let escaping = add_definition(&spec, h, vec![], Term::var(sigma));
        assert!(matches!(escaping, Err(TransformError::VariableEscape(_))));
    }

    #[test]
    fn fib_replacement_obligations() {
        let old = fixture("fib_rs.spec");
        let new = fixture("fib_rs_prime.spec");
        let (next, pending) = replace_rules(&old, new.rs().to_vec()).unwrap();
        assert_eq!(next, new);
        let eqs = |rs: &[Rule]| rs.iter().map(Rule::equation).collect::<Vec<_>>();
        assert_eq!(eqs(&pending.forward), ["Fib = f(Fib)", "c = tail0(Fib)"]);
        assert_eq!(eqs(&pending.backward), ["Fib = 0 : c", "c = 1 : f(c)"]);
        let (_, none) = replace_rules(&old, old.rs().to_vec()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn kolakoski_replacement_obligations() {
        let pending = obligations(fixture("kol.spec").rs(), fixture("kol_prime.spec").rs());
        assert_eq!(pending.forward.len(), 2);
        assert_eq!(pending.backward.len(), 2);
    }

    #[test]
    fn selfequality_goals() {
        let spec = parse_spec("sig 0 : d ; c : s ; streamrules c = 0 : c ;").unwrap();
        let (doubled, goals) = make_selfequality_goals(&spec);
        assert_eq!(doubled.rs()[1].to_string(), "c' -> 0 : c'");
        assert_eq!(goals.len(), 1);
        assert_eq!(goals[0].lhs.to_string(), "c");

        let morse = fixture("morse.spec");
        let (doubled, goals) = make_selfequality_goals(&morse);
        assert_eq!(goals.len(), 4);
        assert!(validate(&doubled).is_proper());
        let text = render_goals(&goals);
        assert!(
            text.contains("goal zip(s1, s2) == zip'(s1, s2) ;"),
            "{text}"
        );
        assert_eq!(parse_goals(&text, &doubled).unwrap(), goals);
    }
}
