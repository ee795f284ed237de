//! Property tests over small random terms and specifications.

use proptest::prelude::*;

use streamwd::engine::{normalize, Limits, Observer, PrefixMode};
use streamwd::spec::{
    left_linearity_violations, overlaps, validate, Check, Severity, StreamSpec, Subject, Verdict,
};
use streamwd::syntax::{parse_spec, render_spec};
use streamwd::term::{
    all_redexes, match_term, rewrite_step, unify, FunSymbol, Sort, Strategy as Rewrite, Term, Var,
};
use streamwd::transform::{obs, unfold};

#[derive(Clone, Debug)]
enum D {
    Zero,
    One,
    X,
    Y,
    Not(Box<D>),
}

#[derive(Clone, Debug)]
enum S {
    Sigma,
    Tau,
    C(u8),
    F(Box<S>),
    G(D, Box<S>),
    H(Box<S>, Box<S>),
    Cons(D, Box<S>),
}

fn d_strat() -> impl Strategy<Value = D> {
    let leaf = prop_oneof![Just(D::Zero), Just(D::One), Just(D::X), Just(D::Y)];
    leaf.prop_recursive(3, 6, 1, |inner| inner.prop_map(|d| D::Not(Box::new(d))))
}

fn s_strat() -> impl Strategy<Value = S> {
    let leaf = prop_oneof![Just(S::Sigma), Just(S::Tau), (0u8..3).prop_map(S::C)];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|s| S::F(Box::new(s))),
            (d_strat(), inner.clone()).prop_map(|(d, s)| S::G(d, Box::new(s))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| S::H(Box::new(a), Box::new(b))),
            (d_strat(), inner).prop_map(|(d, s)| S::Cons(d, Box::new(s))),
        ]
    })
}

/// Unbound variables fall back to constants.
fn show_d(d: &D, vars: &[&str]) -> String {
    match d {
        D::Zero => "0".into(),
        D::One => "1".into(),
        D::X if vars.contains(&"x") => "x".into(),
        D::Y if vars.contains(&"y") => "y".into(),
        D::X => "0".into(),
        D::Y => "1".into(),
        D::Not(a) => format!("not({})", show_d(a, vars)),
    }
}

fn show_s(s: &S, vars: &[&str], consts: usize) -> String {
    match s {
        S::Sigma if vars.contains(&"sigma") => "sigma".into(),
        S::Tau if vars.contains(&"tau") => "tau".into(),
        S::Sigma | S::Tau => "c0".into(),
        S::C(i) => format!("c{}", *i as usize % consts),
        S::F(a) => format!("f({})", show_s(a, vars, consts)),
        S::G(d, a) => format!("g({}, {})", show_d(d, vars), show_s(a, vars, consts)),
        S::H(a, b) => format!(
            "h({}, {})",
            show_s(a, vars, consts),
            show_s(b, vars, consts)
        ),
        S::Cons(d, a) => format!("{} : {}", show_d(d, vars), show_s(a, vars, consts)),
    }
}

/// Shapes: f is 0 `f(x : sigma)`, 1 `f(0 : sigma)` and `f(1 : sigma)`,
/// 2 only `f(0 : sigma)`, 3 `f(sigma)`; g is 0 `g(x, sigma)`, 1 both data
/// cases, 2 only `g(0, sigma)`.
#[derive(Clone, Debug)]
struct SpecGen {
    consts: Vec<S>,
    f_shape: u8,
    f_rhs: (S, S),
    g_shape: u8,
    g_rhs: (S, S),
    h_rhs: S,
}

fn spec_strat() -> impl Strategy<Value = SpecGen> {
    (
        prop::collection::vec(s_strat(), 1..=3),
        0u8..4,
        (s_strat(), s_strat()),
        0u8..3,
        (s_strat(), s_strat()),
        s_strat(),
    )
        .prop_map(|(consts, f_shape, f_rhs, g_shape, g_rhs, h_rhs)| SpecGen {
            consts,
            f_shape,
            f_rhs,
            g_shape,
            g_rhs,
            h_rhs,
        })
}

/// Only left-hand side shapes that pass validation.
fn proper_strat() -> impl Strategy<Value = SpecGen> {
    spec_strat().prop_map(|mut g| {
        g.f_shape = if g.f_shape % 2 == 0 { 0 } else { 3 };
        g.g_shape %= 2;
        g
    })
}

impl SpecGen {
    fn rules(&self) -> Vec<String> {
        let k = self.consts.len();
        let mut out: Vec<String> = self
            .consts
            .iter()
            .enumerate()
            .map(|(i, s)| format!("c{i} = {}", show_s(s, &[], k)))
            .collect();
        let xs: &[&str] = &["x", "sigma"];
        let s_only: &[&str] = &["sigma"];
        match self.f_shape {
            0 => out.push(format!("f(x : sigma) = {}", show_s(&self.f_rhs.0, xs, k))),
            1 => {
                out.push(format!(
                    "f(0 : sigma) = {}",
                    show_s(&self.f_rhs.0, s_only, k)
                ));
                out.push(format!(
                    "f(1 : sigma) = {}",
                    show_s(&self.f_rhs.1, s_only, k)
                ));
            }
            2 => out.push(format!(
                "f(0 : sigma) = {}",
                show_s(&self.f_rhs.0, s_only, k)
            )),
            _ => out.push(format!("f(sigma) = {}", show_s(&self.f_rhs.0, s_only, k))),
        }
        match self.g_shape {
            0 => out.push(format!("g(x, sigma) = {}", show_s(&self.g_rhs.0, xs, k))),
            1 => {
                out.push(format!(
                    "g(0, sigma) = {}",
                    show_s(&self.g_rhs.0, s_only, k)
                ));
                out.push(format!(
                    "g(1, sigma) = {}",
                    show_s(&self.g_rhs.1, s_only, k)
                ));
            }
            _ => out.push(format!(
                "g(0, sigma) = {}",
                show_s(&self.g_rhs.0, s_only, k)
            )),
        }
        out.push(format!(
            "h(x : sigma, tau) = {}",
            show_s(&self.h_rhs, &["x", "sigma", "tau"], k)
        ));
        out
    }

    fn text_with(&self, rules: &[String]) -> String {
        let consts: Vec<String> = (0..self.consts.len())
            .map(|i| format!("c{i} : s ;"))
            .collect();
        format!(
            "sig 0 : d ; 1 : d ; not : d -> d ; {} f : s -> s ; g : d s -> s ; h : s s -> s ;\n\
             dvar x ;\nsvar sigma tau ;\n\
             datarules not(0) = 1 ; not(1) = 0 ;\n\
             streamrules\n{}",
            consts.join(" "),
            rules
                .iter()
                .map(|r| format!("  {r} ;\n"))
                .collect::<String>()
        )
    }

    fn spec(&self) -> StreamSpec {
        parse_spec(&self.text_with(&self.rules())).expect("generated specs parse")
    }
}

/// Replaces data variables by `0` and stream variables by `c0`.
fn ground(t: &Term, spec: &StreamSpec) -> Term {
    let mut th = streamwd::term::Substitution::new();
    for v in t.vars() {
        let value = match v.sort() {
            Sort::Data => Term::constant(sym(spec, "0")).unwrap(),
            Sort::Stream => Term::constant(sym(spec, "c0")).unwrap(),
        };
        th.insert(v, value);
    }
    t.apply(&th)
}

fn var_term(name: &str, sort: Sort) -> Term {
    Term::var(Var::new(name, sort))
}

fn sym(spec: &StreamSpec, name: &str) -> streamwd::term::Sym {
    spec.symbol(name).expect("declared").clone()
}

/// Terms over the generated signature with variables x, y, sigma, tau.
fn term_d(spec: &StreamSpec, d: &D) -> Term {
    match d {
        D::Zero => Term::constant(sym(spec, "0")).unwrap(),
        D::One => Term::constant(sym(spec, "1")).unwrap(),
        D::X => var_term("x", Sort::Data),
        D::Y => var_term("y", Sort::Data),
        D::Not(a) => Term::app(sym(spec, "not"), vec![term_d(spec, a)]).unwrap(),
    }
}

fn term_s(spec: &StreamSpec, s: &S) -> Term {
    match s {
        S::Sigma => var_term("sigma", Sort::Stream),
        S::Tau => var_term("tau", Sort::Stream),
        S::C(i) => {
            let name = format!("c{}", i % 2);
            let name = if spec.symbol(&name).is_some() {
                name
            } else {
                "c0".to_string()
            };
            Term::constant(sym(spec, &name)).unwrap()
        }
        S::F(a) => Term::app(sym(spec, "f"), vec![term_s(spec, a)]).unwrap(),
        S::G(d, a) => Term::app(sym(spec, "g"), vec![term_d(spec, d), term_s(spec, a)]).unwrap(),
        S::H(a, b) => Term::app(sym(spec, "h"), vec![term_s(spec, a), term_s(spec, b)]).unwrap(),
        S::Cons(d, a) => Term::cons(term_d(spec, d), term_s(spec, a)),
    }
}

/// A fixed signature for the term-level properties.
fn term_spec() -> StreamSpec {
    parse_spec(
        "sig 0 : d ; 1 : d ; not : d -> d ; c0 : s ; c1 : s ; f : s -> s ; g : d s -> s ; h : s s -> s ;\n\
         dvar x ; svar sigma tau ;\n\
         datarules not(0) = 1 ; not(1) = 0 ;\n\
         streamrules c0 = 0 : c0 ; c1 = 1 : c0 ; f(x : sigma) = not(x) : f(sigma) ;\n\
         g(x, sigma) = x : sigma ; h(x : sigma, tau) = x : h(tau, sigma) ;",
    )
    .unwrap()
}

/// Independent matcher for linear patterns.
fn matches(pattern: &Term, subject: &Term) -> bool {
    match (pattern, subject) {
        (Term::Var(_), _) => true,
        (Term::App(f, ps), Term::App(g, ss)) => {
            f == g && ps.iter().zip(ss.iter()).all(|(p, s)| matches(p, s))
        }
        _ => false,
    }
}

/// Re-checks sorts bottom up with the checked constructor.
fn rebuild(t: &Term) -> Result<Term, streamwd::term::TermError> {
    match t {
        Term::Var(_) => Ok(t.clone()),
        Term::App(f, args) => {
            let args: Result<Vec<Term>, _> = args.iter().map(rebuild).collect();
            Term::app(f.clone(), args?)
        }
    }
}

/// Every ground instantiation of the given variables by small values.
fn ground_instances(vars: &[Var], spec: &StreamSpec) -> Vec<Vec<(Var, Term)>> {
    let zero = Term::constant(sym(spec, "0")).unwrap();
    let one = Term::constant(sym(spec, "1")).unwrap();
    let c0 = Term::constant(sym(spec, "c0")).unwrap();
    let values = |v: &Var| match v.sort() {
        Sort::Data => vec![zero.clone(), one.clone()],
        Sort::Stream => vec![c0.clone(), Term::cons(zero.clone(), c0.clone())],
    };
    let mut out: Vec<Vec<(Var, Term)>> = vec![Vec::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|partial| {
                values(v).into_iter().map(move |val| {
                    let mut p = partial.clone();
                    p.push((v.clone(), val));
                    p
                })
            })
            .collect();
    }
    out
}

fn subst_of(pairs: &[(Var, Term)]) -> streamwd::term::Substitution {
    let mut s = streamwd::term::Substitution::new();
    for (v, t) in pairs {
        s.insert(v.clone(), t.clone());
    }
    s
}

/// `f(d1, .., dn, d'1 : c1, .., d'm : cm)` for all data values and fresh constants `ci`.
fn shaped_instances(f: &streamwd::term::Sym, spec: &StreamSpec) -> Vec<Term> {
    let zero = Term::constant(sym(spec, "0")).unwrap();
    let one = Term::constant(sym(spec, "1")).unwrap();
    let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
    for k in 0..f.arity() {
        let sort = f.arg_sorts()[k];
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                [zero.clone(), one.clone()].into_iter().map(move |d| {
                    let mut t = t.clone();
                    t.push(match sort {
                        Sort::Data => d,
                        Sort::Stream => {
                            let fresh = FunSymbol::stream(format!("fresh{k}"), 0, 0);
                            Term::cons(d, Term::constant(fresh).unwrap())
                        }
                    });
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|args| Term::app(f.clone(), args).unwrap())
        .collect()
}

fn rule_findings(spec: &StreamSpec) -> Vec<(String, String)> {
    validate(spec)
        .findings
        .into_iter()
        .filter(|f| f.severity == Severity::Error)
        .filter_map(|f| match f.subject {
            Subject::Rule { text, .. } => Some((text, f.message)),
            _ => None,
        })
        .collect()
}

fn shape_errors(spec: &StreamSpec) -> usize {
    validate(spec)
        .findings
        .iter()
        .filter(|f| f.check == Check::Shape)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn match_is_sound(p in s_strat(), s in s_strat()) {
        let spec = term_spec();
        let (p, s) = (term_s(&spec, &p), term_s(&spec, &s));
        if let Some(th) = match_term(&p, &s) {
            prop_assert_eq!(p.apply(&th), s.clone());
        }
        // An instance of the pattern is always matched.
        let vars = p.vars();
        for inst in ground_instances(&vars, &spec) {
            let target = p.apply(&subst_of(&inst));
            let th = match_term(&p, &target);
            prop_assert!(th.is_some());
            prop_assert_eq!(p.apply(&th.unwrap()), target);
        }
    }

    #[test]
    fn unifiers_are_most_general(a in s_strat(), b in s_strat()) {
        let spec = term_spec();
        let (a, b) = (term_s(&spec, &a), term_s(&spec, &b));
        let theta = unify(&a, &b);
        if let Some(th) = &theta {
            prop_assert_eq!(a.apply(th), b.apply(th));
        }
        let mut vars = a.vars();
        for v in b.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        for inst in ground_instances(&vars, &spec) {
            let rho = subst_of(&inst);
            if a.apply(&rho) != b.apply(&rho) {
                continue;
            }
            let th = theta.as_ref();
            prop_assert!(th.is_some(), "a ground unifier exists");
            let th = th.unwrap();
            // rho factors through theta: one delta maps every v.theta to v.rho.
            let sorts: Vec<Sort> = vars.iter().map(Var::sort).collect();
            let tuple = FunSymbol::new("tuple", sorts, Sort::Stream);
            let lhs = Term::app(tuple.clone(), vars.iter().map(|v| Term::var(v.clone()).apply(th)).collect()).unwrap();
            let rhs = Term::app(tuple, vars.iter().map(|v| Term::var(v.clone()).apply(&rho)).collect()).unwrap();
            prop_assert!(match_term(&lhs, &rhs).is_some());
        }
    }

    #[test]
    fn rewriting_keeps_sorts(s in s_strat(), outer in any::<bool>()) {
        let spec = term_spec();
        let trs = spec.combined_trs();
        let strategy = if outer { Rewrite::LeftmostOutermost } else { Rewrite::LeftmostInnermost };
        let mut cur = term_s(&spec, &s);
        for _ in 0..8 {
            let Some(step) = rewrite_step(&trs, &cur, strategy) else { break };
            prop_assert_eq!(step.term.sort(), cur.sort());
            prop_assert!(rebuild(&step.term).is_ok());
            cur = step.term;
        }
    }

    #[test]
    fn data_normal_forms_agree(d in d_strat()) {
        let spec = term_spec();
        let t = term_d(&spec, &d);
        prop_assume!(t.is_ground());
        let a = normalize(spec.rd(), &t, Rewrite::LeftmostInnermost, 1000);
        let b = normalize(spec.rd(), &t, Rewrite::LeftmostOutermost, 1000);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn render_then_parse_is_identity(g in spec_strat()) {
        let spec = g.spec();
        prop_assert_eq!(parse_spec(&render_spec(&spec)).unwrap(), spec);
    }

    #[test]
    fn removing_a_rule_adds_no_rule_errors(g in spec_strat(), pick in any::<prop::sample::Index>()) {
        let rules = g.rules();
        let before = rule_findings(&g.spec());
        let drop = pick.index(rules.len());
        let fewer: Vec<String> = rules.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, r)| r.clone()).collect();
        let after = rule_findings(&parse_spec(&g.text_with(&fewer)).unwrap());
        for f in after {
            prop_assert!(before.contains(&f), "new finding {:?}", f);
        }
    }

    #[test]
    fn exhaustiveness_agrees_with_brute_force(g in spec_strat()) {
        let spec = g.spec();
        let report = validate(&spec);
        for f in spec.sigma_s() {
            let gap = shaped_instances(f, &spec)
                .iter()
                .any(|t| !spec.rs().iter().any(|r| matches(r.lhs(), t)));
            let reported = report.findings.iter().any(|x| {
                x.check == Check::Exhaustiveness && x.subject == Subject::Symbol(f.name().to_string())
            });
            prop_assert_eq!(gap, reported, "symbol {}", f.name());
        }
    }

    #[test]
    fn proper_specs_reduce_every_shaped_term(g in proper_strat()) {
        let spec = g.spec();
        prop_assume!(validate(&spec).verdict == Verdict::Proper);
        let trs = spec.rs_trs();
        for f in spec.sigma_s() {
            for t in shaped_instances(f, &spec) {
                prop_assert!(trs.root_redex(&t).is_some(), "{} is no redex", t);
            }
        }
    }

    #[test]
    fn obs_of_proper_spec_is_orthogonal(g in proper_strat(), heads in prop::collection::vec(s_strat(), 1..4)) {
        let spec = g.spec();
        prop_assume!(validate(&spec).verdict == Verdict::Proper);
        let trs = obs(&spec).unwrap().with_data();
        prop_assert!(overlaps(trs.rules()).is_empty());
        prop_assert!(left_linearity_violations(trs.rules()).is_empty());
        for h in heads {
            let t = ground(&term_s(&spec, &h), &spec);
            // With its data arguments in D the term is a root redex; otherwise
            // some data argument still reduces.
            let values = t.args().iter().all(|a| a.sort() == Sort::Stream || a.args().is_empty());
            for probe in [Term::head_of(t.clone()), Term::tail_of(t.clone())] {
                if values {
                    prop_assert!(trs.root_redex(&probe).is_some(), "{} in\n{}", probe, trs);
                } else {
                    prop_assert!(!all_redexes(&trs, &probe).is_empty());
                }
            }
        }
    }

    #[test]
    fn unfolding_removes_shape_errors(g in spec_strat()) {
        prop_assume!(g.f_shape == 1 || g.f_shape == 2);
        let spec = g.spec();
        let before = shape_errors(&spec);
        let after = shape_errors(&unfold(&spec, "f", 1).unwrap());
        prop_assert!(after < before, "{} -> {}", before, after);
    }

    #[test]
    fn strategies_agree_on_common_prefix(g in proper_strat()) {
        let spec = g.spec();
        prop_assume!(validate(&spec).verdict == Verdict::Proper);
        let observer = Observer::new(&spec).unwrap();
        // Duplicating rules make size exponential in depth, so depth stays small.
        let limits = Limits { fuel: 2_000, max_depth: 12, cancel: None };
        for c in 0..g.consts.len() {
            let t = Term::constant(sym(&spec, &format!("c{c}"))).unwrap();
            let a = observer.prefix(&t, 8, PrefixMode::Obs, &limits);
            let b = observer.prefix(&t, 8, PrefixMode::Outermost, &limits);
            let n = a.values.len().min(b.values.len());
            prop_assert_eq!(&a.values[..n], &b.values[..n]);
            let again = observer.prefix(&t, 8, PrefixMode::Obs, &limits);
            // The stopped term may be a huge tree with shared subterms, so
            // only the values and the stopping index are compared.
            prop_assert_eq!(&a.values, &again.values);
            prop_assert_eq!(a.stopped.map(|(i, _)| i), again.stopped.map(|(i, _)| i));
        }
    }

    #[test]
    fn syntax_errors_point_into_the_text(cut in 0usize..400, junk in "[$;(){}=:]{1,3}") {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/morse.spec")).unwrap();
        let at = cut.min(text.len());
        let at = (0..=at).rev().find(|&i| text.is_char_boundary(i)).unwrap();
        let broken = format!("{}{junk}{}", &text[..at], &text[at..]);
        if let Err(e) = parse_spec(&broken) {
            let span = e.span();
            let lines: Vec<&str> = broken.split('\n').collect();
            prop_assert!(span.line >= 1 && span.line <= lines.len());
            prop_assert!(span.col >= 1 && span.col <= lines[span.line - 1].chars().count() + 1);
        }
    }
}
