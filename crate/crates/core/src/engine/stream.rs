use std::fmt;

use super::normalize::{innermost, normalize_with, EvalResult, Exhaustion, Limits, Normalized};
use crate::spec::StreamSpec;
use crate::term::{rewrite_step, Sort, Strategy, Term, Trs};
use crate::transform::{obs, TransformError};

/// Evaluates stream elements through Obs(R_s) ∪ R_d.
#[derive(Clone, Debug)]
pub struct Observer {
    obs: Trs,
    rs_rd: Trs,
    rd: Trs,
}

impl Observer {
    pub fn new(spec: &StreamSpec) -> Result<Observer, TransformError> {
        let o = obs(spec)?;
        Ok(Observer {
            obs: o.with_data(),
            rs_rd: spec.combined_trs(),
            rd: spec.rd().clone(),
        })
    }

    /// Obs(R_s) ∪ R_d.
    pub fn trs(&self) -> &Trs {
        &self.obs
    }

    /// The normal form of `head(tail^n(t))`, leftmost-innermost.
    pub fn element(&self, t: &Term, n: usize, limits: &Limits) -> EvalResult {
        let mut probe = t.clone();
        for _ in 0..n {
            probe = Term::tail_of(probe);
        }
        normalize_with(
            &self.obs,
            &Term::head_of(probe),
            Strategy::LeftmostInnermost,
            limits,
        )
    }

    pub fn prefix(&self, t: &Term, count: usize, mode: PrefixMode, limits: &Limits) -> Prefix {
        match mode {
            PrefixMode::Obs => self.prefix_obs(t, count, limits),
            PrefixMode::Outermost => self.prefix_outermost(t, count, limits),
        }
    }

    // Keeps the normal form of tail^k(t) between elements. Innermost
    // evaluation of head(tail^n(t)) normalizes the same subterms in the same
    // order, so the values equal those of `element`.
    fn prefix_obs(&self, t: &Term, count: usize, limits: &Limits) -> Prefix {
        let mut values = Vec::with_capacity(count);
        let mut cur = t.clone();
        for index in 0..count {
            if index > 0 {
                match innermost(&self.obs, &Term::tail_of(cur.clone()), limits) {
                    Normalized::Done { term, .. } => cur = term,
                    Normalized::Stopped { last, steps, cause } => {
                        return Prefix::stopped(
                            values,
                            index,
                            EvalResult::FuelExhausted { last, steps, cause },
                        )
                    }
                }
            }
            match normalize_with(
                &self.obs,
                &Term::head_of(cur.clone()),
                Strategy::LeftmostInnermost,
                limits,
            ) {
                EvalResult::Value(v) => values.push(v),
                other => return Prefix::stopped(values, index, other),
            }
        }
        Prefix {
            values,
            stopped: None,
        }
    }

    fn prefix_outermost(&self, t: &Term, count: usize, limits: &Limits) -> Prefix {
        let mut values = Vec::with_capacity(count);
        let mut cur = t.clone();
        for index in 0..count {
            let mut steps = 0u64;
            let (head, tail) = loop {
                if let Some((h, tl)) = cur.as_cons() {
                    break (h.clone(), tl.clone());
                }
                let cause = if steps >= limits.fuel {
                    Some(Exhaustion::Fuel)
                } else if cur.depth() > limits.max_depth {
                    Some(Exhaustion::Depth)
                } else if limits.cancel.as_ref().is_some_and(|c| c.is_cancelled()) {
                    Some(Exhaustion::Cancelled)
                } else {
                    None
                };
                if let Some(cause) = cause {
                    return Prefix::stopped(
                        values,
                        index,
                        EvalResult::FuelExhausted {
                            last: cur,
                            steps,
                            cause,
                        },
                    );
                }
                match rewrite_step(&self.rs_rd, &cur, Strategy::LeftmostOutermost) {
                    Some(step) => cur = step.term,
                    None => return Prefix::stopped(values, index, EvalResult::StuckNonData(cur)),
                }
                steps += 1;
            };
            match normalize_with(&self.rd, &head, Strategy::LeftmostInnermost, limits) {
                EvalResult::Value(v) => values.push(v),
                other => return Prefix::stopped(values, index, other),
            }
            cur = tail;
        }
        Prefix {
            values,
            stopped: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrefixMode {
    /// Element by element through Obs(R_s) ∪ R_d.
    Obs,
    /// Leftmost-outermost R_s ∪ R_d rewriting until a `:` surfaces.
    Outermost,
}

impl fmt::Display for PrefixMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrefixMode::Obs => "obs",
            PrefixMode::Outermost => "outermost",
        })
    }
}

/// Computed elements; `stopped` holds the first uncomputed index and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefix {
    pub values: Vec<Term>,
    pub stopped: Option<(usize, EvalResult)>,
}

impl Prefix {
    fn stopped(values: Vec<Term>, index: usize, why: EvalResult) -> Prefix {
        Prefix {
            values,
            stopped: Some((index, why)),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.stopped.is_none()
    }

    /// Values concatenated, e.g. `0110`.
    pub fn digits(&self) -> String {
        self.values.iter().map(Term::to_string).collect()
    }

    pub fn diagnostic(&self) -> Option<String> {
        let (index, why) = self.stopped.as_ref()?;
        Some(match why {
            EvalResult::FuelExhausted { cause, steps, .. } => {
                let what = match cause {
                    Exhaustion::Fuel => "fuel ran out",
                    Exhaustion::Depth => "the term grew past the depth limit",
                    Exhaustion::Cancelled => "evaluation was cancelled",
                };
                format!("element {index} not computed: {what} after {steps} steps")
            }
            EvalResult::StuckNonData(t) if t.sort() == Sort::Stream => {
                format!("element {index} not computed: `{t}` is a normal form without `:` on top")
            }
            EvalResult::StuckNonData(t) => {
                format!("element {index} not computed: `{t}` is not a data value")
            }
            EvalResult::Value(_) => unreachable!("values are never diagnostics"),
        })
    }
}

/// One-shot element evaluation; see [`Observer::element`].
pub fn element(
    spec: &StreamSpec,
    t: &Term,
    n: usize,
    limits: &Limits,
) -> Result<EvalResult, TransformError> {
    Ok(Observer::new(spec)?.element(t, n, limits))
}

pub fn prefix(
    spec: &StreamSpec,
    t: &Term,
    count: usize,
    mode: PrefixMode,
    limits: &Limits,
) -> Result<Prefix, TransformError> {
    Ok(Observer::new(spec)?.prefix(t, count, mode, limits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_spec, parse_term};

    fn load(name: &str) -> StreamSpec {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_spec(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn term(spec: &StreamSpec, t: &str) -> Term {
        parse_term(t, spec, &[]).unwrap()
    }

    #[test]
    fn morse_elements() {
        let spec = load("morse.spec");
        let o = Observer::new(&spec).unwrap();
        let m = term(&spec, "morse");
        assert_eq!(
            o.element(&m, 0, &Limits::default())
                .value()
                .unwrap()
                .to_string(),
            "0"
        );
        assert_eq!(
            o.element(&m, 5, &Limits::default())
                .value()
                .unwrap()
                .to_string(),
            "0"
        );
        for mode in [PrefixMode::Obs, PrefixMode::Outermost] {
            assert_eq!(
                o.prefix(&m, 16, mode, &Limits::default()).digits(),
                "0110100110010110"
            );
        }
    }

    #[test]
    fn prefix_obs_agrees_with_element() {
        let spec = load("paperfold.spec");
        let o = Observer::new(&spec).unwrap();
        let p = term(&spec, "P");
        let pre = o.prefix(&p, 12, PrefixMode::Obs, &Limits::default());
        for (n, v) in pre.values.iter().enumerate() {
            assert_eq!(o.element(&p, n, &Limits::default()).value(), Some(v));
        }
    }

    #[test]
    fn self_loop_exhausts() {
        let spec = load("selfloop.spec");
        let o = Observer::new(&spec).unwrap();
        let r = o.element(&term(&spec, "c"), 0, &Limits::with_fuel(100));
        assert!(matches!(r, EvalResult::FuelExhausted { .. }));
    }

    #[test]
    fn exwdnp_outermost_is_not_productive() {
        let spec = load("exwdnp.spec");
        let o = Observer::new(&spec).unwrap();
        let fc = term(&spec, "f(c)");
        let lim = Limits::with_fuel(10_000);
        let out = o.prefix(&fc, 4, PrefixMode::Outermost, &lim);
        assert!(out.values.is_empty());
        assert_eq!(out.stopped.as_ref().unwrap().0, 0);
        assert!(out.diagnostic().unwrap().starts_with("element 0"));
        assert_eq!(o.prefix(&fc, 4, PrefixMode::Obs, &lim).digits(), "1111");
    }
}
