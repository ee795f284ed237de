use std::fmt;

use super::orthogonal::{left_linearity_violations, overlaps};
use super::universe::{data_universe_with, DataUniverse, UniverseConfig};
use super::StreamSpec;
use crate::term::{match_term, Rule, Sort, Sym, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleSet {
    Data,
    Stream,
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSet::Data => "data",
            RuleSet::Stream => "stream",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    /// `index` counts from 0 within its rule set; `text` is the equation.
    Rule {
        set: RuleSet,
        index: usize,
        text: String,
    },
    Symbol(String),
    Spec,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Rule { set, index, text } => {
                write!(f, "{set} rule {} `{text}`", index + 1)
            }
            Subject::Symbol(s) => write!(f, "symbol `{s}`"),
            Subject::Spec => f.write_str("specification"),
        }
    }
}

/// Which condition a finding is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Sorts,
    Orthogonality,
    Shape,
    Exhaustiveness,
    DataUniverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub check: Check,
    pub subject: Subject,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}: {}", self.subject, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Improper,
    /// Some condition could not be decided, e.g. the data universe is not finite.
    IllFormed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proper => "proper",
            Verdict::Improper => "improper",
            Verdict::IllFormed => "ill-formed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
    /// Present whenever D could be computed.
    pub universe: Option<DataUniverse>,
}

impl ValidationReport {
    pub fn is_proper(&self) -> bool {
        self.verdict == Verdict::Proper
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        if let Some(u) = &self.universe {
            writeln!(f, "data universe: {u}")?;
        }
        writeln!(f, "verdict: {}", self.verdict)
    }
}

/// Instances checked per symbol before exhaustiveness is declared undecidable here.
const MAX_EXHAUSTIVE_INSTANCES: usize = 1 << 20;
/// Missing instances reported per symbol.
const MAX_REPORTED_GAPS: usize = 3;

pub fn validate(spec: &StreamSpec) -> ValidationReport {
    validate_with(spec, &UniverseConfig::default())
}

/// Checks sorts, orthogonality of R_s ∪ R_d, left-hand side shapes and
/// exhaustiveness over D, reporting every failure.
pub fn validate_with(spec: &StreamSpec, cfg: &UniverseConfig) -> ValidationReport {
    let mut findings = Vec::new();
    let all: Vec<(RuleSet, usize, &Rule)> = spec
        .rs()
        .iter()
        .enumerate()
        .map(|(i, r)| (RuleSet::Stream, i, r))
        .chain(
            spec.rd()
                .rules()
                .iter()
                .enumerate()
                .map(|(i, r)| (RuleSet::Data, i, r)),
        )
        .collect();
    let subject = |set: RuleSet, index: usize, r: &Rule| Subject::Rule {
        set,
        index,
        text: r.equation(),
    };
    let mut error = |check, subject, message: String| {
        findings.push(Finding {
            severity: Severity::Error,
            check,
            subject,
            message,
        })
    };

    // (a) sorts
    for &(set, i, r) in &all {
        let expected = match set {
            RuleSet::Data => Sort::Data,
            RuleSet::Stream => Sort::Stream,
        };
        if r.lhs().sort() != expected || r.rhs().sort() != expected {
            error(
                Check::Sorts,
                subject(set, i, r),
                format!("both sides must have sort {expected}"),
            );
        }
        for side in [r.lhs(), r.rhs()] {
            if let Some(bad) = ill_sorted_subterm(side) {
                error(
                    Check::Sorts,
                    subject(set, i, r),
                    format!("`{bad}` is ill-sorted"),
                );
            }
        }
    }

    // (b) orthogonality of R_s ∪ R_d
    let rules: Vec<Rule> = all.iter().map(|(_, _, r)| (*r).clone()).collect();
    for (k, v) in left_linearity_violations(&rules) {
        let (set, i, r) = all[k];
        error(
            Check::Orthogonality,
            subject(set, i, r),
            format!("left-hand side is not linear: variable `{v}` occurs more than once"),
        );
    }
    for o in overlaps(&rules) {
        let (oset, oi, orule) = all[o.outer];
        let (iset, ii, irule) = all[o.inner];
        let msg = if o.position.is_root() {
            format!(
                "root overlap with {iset} rule {} `{}`",
                ii + 1,
                irule.equation()
            )
        } else {
            format!(
                "{iset} rule {} `{}` overlaps at position {}",
                ii + 1,
                irule.equation(),
                o.position
            )
        };
        error(Check::Orthogonality, subject(oset, oi, orule), msg);
    }

    // (c) left-hand side shape
    for (i, r) in spec.rs().iter().enumerate() {
        let root = r.root();
        if spec.sigma_s().iter().all(|f| f != root) {
            error(
                Check::Shape,
                subject(RuleSet::Stream, i, r),
                format!(
                    "left-hand side must be rooted by a declared stream symbol, found `{}`",
                    root.name()
                ),
            );
            continue;
        }
        let n = root.data_arity();
        for (k, arg) in r.lhs().args()[n..].iter().enumerate() {
            if !is_stream_pattern(arg) {
                error(
                    Check::Shape,
                    subject(RuleSet::Stream, i, r),
                    format!(
                        "stream argument {} is `{arg}`; expected a variable or `x : sigma` with variables x, sigma",
                        k + 1
                    ),
                );
            }
        }
    }

    // (d) exhaustiveness over D
    let universe = match data_universe_with(spec.sigma_d(), spec.rd(), cfg) {
        Ok(u) => Some(u),
        Err(e) => {
            let undecidable = !matches!(e, super::UniverseError::NotOrthogonal(_));
            findings.push(Finding {
                severity: Severity::Error,
                check: Check::DataUniverse,
                subject: Subject::Spec,
                message: e.to_string(),
            });
            if undecidable {
                return ValidationReport {
                    verdict: Verdict::IllFormed,
                    findings,
                    universe: None,
                };
            }
            None
        }
    };
    if let Some(u) = &universe {
        for f in spec.sigma_s() {
            findings.extend(exhaustiveness(spec, f, u, cfg));
        }
        // (e) stuck data
        for t in u.stuck() {
            findings.push(Finding {
                severity: Severity::Warning,
                check: Check::DataUniverse,
                subject: Subject::Spec,
                message: format!("data normal form `{t}` contains a defined data symbol; the data rules look incomplete"),
            });
        }
    }

    let verdict = if findings.iter().any(|f| f.severity == Severity::Error) {
        Verdict::Improper
    } else {
        Verdict::Proper
    };
    ValidationReport {
        verdict,
        findings,
        universe,
    }
}

fn ill_sorted_subterm(t: &Term) -> Option<&Term> {
    match t {
        Term::Var(_) => None,
        Term::App(f, args) => {
            let ok = f.arity() == args.len()
                && args.iter().zip(f.arg_sorts()).all(|(a, s)| a.sort() == *s);
            if !ok {
                return Some(t);
            }
            args.iter().find_map(ill_sorted_subterm)
        }
    }
}

fn is_stream_pattern(t: &Term) -> bool {
    match t.as_cons() {
        Some((h, tl)) => h.is_var() && tl.is_var(),
        None => t.is_var(),
    }
}

/// The generic instances `f(u_1..u_n, u'_1 : s1, .., u'_m : sm)` over D, in
/// lexicographic order of their data tuples.
pub(crate) fn generic_instances(f: &Sym, universe: &DataUniverse) -> Option<Vec<Term>> {
    let n = f.data_arity();
    let m = f.stream_arity();
    let d = universe.elements();
    let k = n + m;
    let count = d.len().checked_pow(k as u32)?;
    if count > MAX_EXHAUSTIVE_INSTANCES {
        return None;
    }
    let mut out = Vec::with_capacity(count);
    let mut idx = vec![0usize; k];
    if count == 0 {
        return Some(out);
    }
    loop {
        let mut args: Vec<Term> = idx[..n].iter().map(|&i| d[i].clone()).collect();
        for (j, &i) in idx[n..].iter().enumerate() {
            let sigma = Term::var(Var::stream(format!("s{}", j + 1)));
            args.push(Term::cons(d[i].clone(), sigma));
        }
        out.push(Term::app_trusted(f.clone(), args));
        let mut pos = k;
        loop {
            if pos == 0 {
                return Some(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < d.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn exhaustiveness(
    spec: &StreamSpec,
    f: &Sym,
    universe: &DataUniverse,
    cfg: &UniverseConfig,
) -> Vec<Finding> {
    let lhss: Vec<&Term> = spec.rules_of(f.name()).map(|(_, r)| r.lhs()).collect();
    let Some(instances) = generic_instances(f, universe) else {
        return vec![Finding {
            severity: Severity::Error,
            check: Check::Exhaustiveness,
            subject: Subject::Symbol(f.name().to_string()),
            message: format!(
                "too many argument combinations over D (more than {MAX_EXHAUSTIVE_INSTANCES}) to check exhaustiveness"
            ),
        }];
    };
    let covered = cfg.exec.map(&instances, |t| {
        lhss.iter().any(|l| match_term(l, t).is_some())
    });
    let gaps: Vec<&Term> = instances
        .iter()
        .zip(&covered)
        .filter(|(_, c)| !**c)
        .map(|(t, _)| t)
        .collect();
    if gaps.is_empty() {
        return Vec::new();
    }
    let shown: Vec<String> = gaps
        .iter()
        .take(MAX_REPORTED_GAPS)
        .map(|t| format!("`{t}`"))
        .collect();
    let more = gaps.len().saturating_sub(MAX_REPORTED_GAPS);
    let suffix = if more > 0 {
        format!(" and {more} more")
    } else {
        String::new()
    };
    vec![Finding {
        severity: Severity::Error,
        check: Check::Exhaustiveness,
        subject: Subject::Symbol(f.name().to_string()),
        message: format!("no left-hand side matches {}{suffix}", shown.join(", ")),
    }]
}

/// Every data-sorted subterm of every R_s left-hand side is a variable.
pub fn is_data_independent(spec: &StreamSpec) -> bool {
    fn data_vars_only(t: &Term) -> bool {
        match t {
            Term::Var(_) => true,
            Term::App(..) if t.sort() == Sort::Data => false,
            Term::App(_, args) => args.iter().all(data_vars_only),
        }
    }
    spec.rs().iter().all(|r| data_vars_only(r.lhs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::fixtures::*;
    use crate::term::{FunSymbol, Rule};

    fn bits_spec(sigma_s: Vec<Sym>, rs: Vec<Rule>) -> StreamSpec {
        let (sd, rd) = bits();
        StreamSpec::new(sd, sigma_s, rd, rs).unwrap()
    }

    fn dc(s: &str) -> Term {
        Term::constant(FunSymbol::data(s, 0)).unwrap()
    }

    #[test]
    fn morse_is_proper() {
        let r = validate(&morse());
        assert_eq!(r.verdict, Verdict::Proper, "{r}");
        assert!(r.findings.is_empty());
        assert!(is_data_independent(&morse()));
    }

    #[test]
    fn concrete_head_pattern_is_improper() {
        let f = FunSymbol::stream("f", 0, 1);
        let app = |t| Term::app(f.clone(), vec![t]).unwrap();
        let rs = vec![
            Rule::new(
                app(Term::cons(dc("0"), sigma())),
                Term::cons(dc("0"), Term::cons(dc("1"), app(sigma()))),
            )
            .unwrap(),
            Rule::new(
                app(Term::cons(dc("1"), sigma())),
                Term::cons(dc("0"), app(sigma())),
            )
            .unwrap(),
        ];
        let r = validate(&bits_spec(vec![f], rs));
        assert_eq!(r.verdict, Verdict::Improper);
        let shape: Vec<_> = r
            .findings
            .iter()
            .filter(|f| f.check == Check::Shape)
            .collect();
        assert_eq!(shape.len(), 2);
        assert!(matches!(&shape[0].subject, Subject::Rule { index: 0, .. }));
    }

    #[test]
    fn two_rules_for_one_constant_overlap() {
        let c = FunSymbol::stream("c", 0, 0);
        let ct = Term::constant(c.clone()).unwrap();
        let rs = vec![
            Rule::new(ct.clone(), Term::cons(dc("0"), ct.clone())).unwrap(),
            Rule::new(ct.clone(), Term::cons(dc("1"), ct.clone())).unwrap(),
        ];
        let r = validate(&bits_spec(vec![c], rs));
        assert_eq!(r.verdict, Verdict::Improper);
        assert!(r
            .findings
            .iter()
            .any(|f| f.check == Check::Orthogonality && f.message.contains("root overlap")));
    }

    #[test]
    fn trivial_loop_is_proper() {
        let c = FunSymbol::stream("c", 0, 0);
        let ct = Term::constant(c.clone()).unwrap();
        let r = validate(&bits_spec(
            vec![c],
            vec![Rule::new(ct.clone(), ct).unwrap()],
        ));
        assert!(r.is_proper(), "{r}");
    }

    #[test]
    fn missing_case_is_reported() {
        let g = FunSymbol::stream("g", 1, 1);
        let rs = vec![Rule::new(
            Term::app(g.clone(), vec![dc("0"), sigma()]).unwrap(),
            sigma(),
        )
        .unwrap()];
        let spec = bits_spec(vec![g], rs);
        let r = validate(&spec);
        assert_eq!(r.verdict, Verdict::Improper);
        let f = r.errors().next().unwrap();
        assert_eq!(f.check, Check::Exhaustiveness);
        assert!(f.message.contains("g(1, 0 : s1)"), "{}", f.message);
        assert!(!is_data_independent(&spec));
    }

    #[test]
    fn symbol_without_rules_is_not_exhaustive() {
        let c = FunSymbol::stream("c", 0, 0);
        let r = validate(&bits_spec(vec![c], vec![]));
        assert_eq!(r.verdict, Verdict::Improper);
    }

    #[test]
    fn infinite_universe_is_ill_formed() {
        let sd = vec![FunSymbol::data("0", 0), FunSymbol::data("s", 1)];
        let spec = StreamSpec::new(sd, vec![], vec![], vec![]).unwrap();
        let cfg = UniverseConfig {
            cap: 10,
            ..UniverseConfig::default()
        };
        assert_eq!(validate_with(&spec, &cfg).verdict, Verdict::IllFormed);
    }
}
