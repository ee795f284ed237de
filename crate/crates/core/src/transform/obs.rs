use std::fmt;

use super::TransformError;
use crate::spec::{overlaps, StreamSpec};
use crate::term::{FunSymbol, Rule, Sort, Substitution, Sym, Term, Trs, Var, HEAD, TAIL};

/// P: every stream argument `x : sigma` of a left-hand side becomes `sigma`,
/// and the right-hand side reads `head(sigma)` for `x` and `tail(sigma)` for `sigma`.
pub fn p_transform(rs: &[Rule]) -> Result<Vec<Rule>, TransformError> {
    rs.iter().map(p_rule).collect()
}

fn p_rule(rule: &Rule) -> Result<Rule, TransformError> {
    let f = rule.root();
    let mut args = rule.lhs().args().to_vec();
    let mut subst = Substitution::default();
    for arg in args.iter_mut().skip(f.data_arity()) {
        if arg.is_var() {
            continue;
        }
        let (x, sigma) = match arg.as_cons() {
            Some((Term::Var(x), Term::Var(sigma))) => (x.clone(), sigma.clone()),
            _ => return Err(TransformError::Shape(rule.equation())),
        };
        let s = Term::var(sigma.clone());
        subst.insert(x, Term::head_of(s.clone()));
        subst.insert(sigma, Term::tail_of(s.clone()));
        *arg = s;
    }
    let lhs = Term::app(f.clone(), args).map_err(|_| TransformError::Shape(rule.equation()))?;
    Rule::new(lhs, rule.rhs().apply(&subst)).map_err(|_| TransformError::Shape(rule.equation()))
}

/// Which rule of the specification an Obs rule comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    HeadCons,
    TailCons,
    Head(usize),
    Tail(usize),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::HeadCons | Origin::TailCons => f.write_str("built-in"),
            Origin::Head(i) | Origin::Tail(i) => write!(f, "stream rule {}", i + 1),
        }
    }
}

/// Obs(R_s) together with R_d of the specification it was built from.
#[derive(Clone, Debug)]
pub struct ObsSystem {
    trs: Trs,
    rd: Trs,
    origins: Vec<Origin>,
    renamed: Vec<(String, String)>,
}

impl ObsSystem {
    /// Obs(R_s) alone.
    pub fn trs(&self) -> &Trs {
        &self.trs
    }

    /// Obs(R_s) ∪ R_d, the system whose termination is at stake.
    pub fn with_data(&self) -> Trs {
        self.trs.union(&self.rd)
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    /// User symbols renamed away from `head`/`tail` before the construction.
    pub fn renamed(&self) -> &[(String, String)] {
        &self.renamed
    }
}

impl fmt::Display for ObsSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.trs.rules().iter().chain(self.rd.rules()) {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Renames user symbols called `head` or `tail` to fresh `head0`/`tail0`.
pub fn rename_observers(spec: &StreamSpec) -> (StreamSpec, Vec<(String, String)>) {
    let mut renamed = Vec::new();
    let mut taken: Vec<String> = spec
        .signature()
        .iter()
        .map(|f| f.name().to_string())
        .collect();
    let mut map: Vec<(Sym, Sym)> = Vec::new();
    for f in spec.sigma_s() {
        if f.name() == HEAD || f.name() == TAIL {
            let mut fresh = format!("{}0", f.name());
            while taken.contains(&fresh) {
                fresh.push('\'');
            }
            taken.push(fresh.clone());
            renamed.push((f.name().to_string(), fresh.clone()));
            map.push((f.clone(), f.renamed(fresh)));
        }
    }
    if map.is_empty() {
        return (spec.clone(), renamed);
    }
    let rename = |s: &Sym| map.iter().find(|(a, _)| a == s).map(|(_, b)| b.clone());
    let sigma_s = spec
        .sigma_s()
        .iter()
        .map(|f| rename(f).unwrap_or_else(|| f.clone()))
        .collect();
    let rs = spec.rs().iter().map(|r| r.map_symbols(&rename)).collect();
    let spec = spec
        .with_stream_symbols(sigma_s, rs)
        .expect("renaming keeps the specification valid");
    (spec, renamed)
}

/// Builds Obs(R_s): the two built-in rules, then for each P-rule `l -> r` the
/// pair `head(l) -> ..`, `tail(l) -> ..`, in source order.
pub fn obs(spec: &StreamSpec) -> Result<ObsSystem, TransformError> {
    let (spec, renamed) = rename_observers(spec);
    let p = p_transform(spec.rs())?;
    let x = Term::var(Var::new("x", Sort::Data));
    let sigma = Term::var(Var::new("sigma", Sort::Stream));
    let cell = Term::cons(x.clone(), sigma.clone());
    let mut rules = vec![
        Rule::new(Term::head_of(cell.clone()), x).expect("built-in"),
        Rule::new(Term::tail_of(cell), sigma).expect("built-in"),
    ];
    let mut origins = vec![Origin::HeadCons, Origin::TailCons];
    for (i, r) in p.iter().enumerate() {
        let (u, t) = match r.rhs().as_cons() {
            Some((u, t)) => (u.clone(), t.clone()),
            None => (
                Term::head_of(r.rhs().clone()),
                Term::tail_of(r.rhs().clone()),
            ),
        };
        rules.push(Rule::new(Term::head_of(r.lhs().clone()), u).expect("P keeps variables bound"));
        rules.push(Rule::new(Term::tail_of(r.lhs().clone()), t).expect("P keeps variables bound"));
        origins.push(Origin::Head(i));
        origins.push(Origin::Tail(i));
    }
    let mut sig = spec.signature();
    sig.push(FunSymbol::head());
    sig.push(FunSymbol::tail());
    let trs = Trs::new(rules, sig).map_err(|e| TransformError::Spec(e.to_string()))?;
    let sys = ObsSystem {
        trs,
        rd: spec.rd().clone(),
        origins,
        renamed,
    };
    let all = sys.with_data();
    if let Some(o) = overlaps(all.rules()).first() {
        return Err(TransformError::NotOrthogonal(format!(
            "`{}` overlaps `{}` at position {}",
            all.rules()[o.inner].lhs(),
            all.rules()[o.outer].lhs(),
            o.position
        )));
    }
    Ok(sys)
}
