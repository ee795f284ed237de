use thiserror::Error;

use super::check::tail_symbol;
use crate::engine::{CaseEval, Limits, Observer};
use crate::spec::{data_universe, StreamSpec, DEFAULT_CAP};
use crate::term::{FunSymbol, Rule, Sym, Term, Var};
use crate::transform::{
    add_definition, obligations, obs, unfold_all, PendingObligation, TransformError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnchorError {
    #[error("`{0}` is not a stream constant of the specification")]
    NotAConstant(String),
    #[error("element {0} could not be computed")]
    NotComputable(usize),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// A proposed replacement `c = d0 : ... : d(n-1) : c'` with `c' = T^n(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub fresh: Sym,
    pub anchor: Rule,
    pub definition: Rule,
    /// The input plus the definition of the fresh constant (and a tail
    /// symbol, when the input had none).
    pub extended: StreamSpec,
    /// `extended` with the rules of `c` replaced by the anchor.
    pub candidate: StreamSpec,
    pub obligations: PendingObligation,
}

fn fresh_name(spec: &StreamSpec, base: &str) -> String {
    (1..)
        .map(|k| format!("{base}_a{k}"))
        .find(|n| spec.symbol(n).is_none())
        .expect("unbounded")
}

fn with_tail(spec: &StreamSpec) -> Result<(StreamSpec, Sym), TransformError> {
    if let Some(t) = tail_symbol(spec) {
        return Ok((spec.clone(), t));
    }
    let mut name = "tail0".to_string();
    while spec.symbol(&name).is_some() {
        name.push('\'');
    }
    let t = FunSymbol::stream(name, 0, 1);
    let (x, sigma) = (Term::var(Var::data("x")), Term::var(Var::stream("sigma")));
    let lhs = Term::app(t.clone(), vec![Term::cons(x, sigma.clone())]).expect("well-sorted");
    let mut sigma_s = spec.sigma_s().to_vec();
    sigma_s.push(t.clone());
    let mut rs = spec.rs().to_vec();
    rs.push(Rule::new(lhs, sigma).expect("well-sorted"));
    let out = spec
        .with_stream_symbols(sigma_s, rs)
        .map_err(|e| TransformError::Spec(e.to_string()))?;
    Ok((out, t))
}

/// Plain evaluation first, then evaluation with case analysis. Non-proper
/// specifications are unfolded for evaluation only.
fn first_elements(
    spec: &StreamSpec,
    c: &Term,
    n: usize,
    limits: &Limits,
) -> Result<Vec<Term>, AnchorError> {
    let unfolded;
    let eval_spec = if obs(spec).is_ok() {
        spec
    } else {
        unfolded = unfold_all(spec)?.0;
        &unfolded
    };
    let observer = Observer::new(eval_spec)?;
    let universe = data_universe(eval_spec.sigma_d(), eval_spec.rd(), DEFAULT_CAP)
        .map(|u| u.elements().to_vec())
        .unwrap_or_default();
    let cases = CaseEval {
        trs: observer.trs(),
        universe: &universe,
        fuel: limits.fuel.min(CASE_FUEL),
        depth: CASE_DEPTH,
    };
    (0..n)
        .map(|i| {
            if let Some(v) = observer.element(c, i, limits).value() {
                return Ok(v.clone());
            }
            let mut probe = c.clone();
            for _ in 0..i {
                probe = Term::tail_of(probe);
            }
            cases
                .eval(&Term::head_of(probe))
                .ok_or(AnchorError::NotComputable(i))
        })
        .collect()
}

const CASE_FUEL: u64 = 10_000;
const CASE_DEPTH: usize = 8;

/// Computes the first `n` elements of the constant `c` and proposes to pin
/// them down. Advisory: the obligations still have to be proved.
pub fn suggest_anchor(
    spec: &StreamSpec,
    c: &str,
    n: usize,
    limits: &Limits,
) -> Result<Anchor, AnchorError> {
    let sym = spec
        .sigma_s()
        .iter()
        .find(|f| f.name() == c && f.arity() == 0)
        .ok_or_else(|| AnchorError::NotAConstant(c.to_string()))?
        .clone();
    let constant = Term::constant(sym.clone()).expect("arity 0");
    let values = first_elements(spec, &constant, n, limits)?;
    let (base, tail) = with_tail(spec)?;
    let fresh = FunSymbol::stream(fresh_name(&base, c), 0, 0);
    let mut body = constant.clone();
    for _ in 0..n {
        body = Term::app(tail.clone(), vec![body]).expect("well-sorted");
    }
    let extended = add_definition(&base, fresh.clone(), Vec::new(), body)?;
    let definition = extended.rs().last().expect("just added").clone();
    let mut rhs = Term::constant(fresh.clone()).expect("arity 0");
    for v in values.into_iter().rev() {
        rhs = Term::cons(v, rhs);
    }
    let anchor = Rule::new(constant, rhs).map_err(|e| TransformError::Sort(e.to_string()))?;
    let mut rs: Vec<Rule> = extended
        .rs()
        .iter()
        .filter(|r| r.root().name() != c)
        .cloned()
        .collect();
    let at = extended
        .rs()
        .iter()
        .position(|r| r.root().name() == c)
        .unwrap_or(rs.len());
    rs.insert(at.min(rs.len()), anchor.clone());
    let candidate = extended
        .with_rs(rs)
        .map_err(|e| TransformError::Spec(e.to_string()))?;
    let obligations = obligations(extended.rs(), candidate.rs());
    Ok(Anchor {
        fresh,
        anchor,
        definition,
        extended,
        candidate,
        obligations,
    })
}
