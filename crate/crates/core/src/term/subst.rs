use std::collections::BTreeMap;
use std::fmt;

use super::{Term, Var};

/// Sort-preserving finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution(BTreeMap<Var, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.0.get(v)
    }

    /// Binds `v`; returns false (and leaves the map unchanged) on sort mismatch.
    pub fn insert(&mut self, v: Var, t: Term) -> bool {
        if v.sort() != t.sort() {
            return false;
        }
        self.0.insert(v, t);
        true
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    /// `self` followed by `other`: t·(self∘other) = (t·self)·other.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out: BTreeMap<Var, Term> = self
            .0
            .iter()
            .map(|(v, t)| (v.clone(), t.apply(other)))
            .collect();
        for (v, t) in &other.0 {
            out.entry(v.clone()).or_insert_with(|| t.clone());
        }
        out.retain(|v, t| t.as_var() != Some(v));
        Substitution(out)
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.insert(v, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} := {t}")?;
        }
        f.write_str("}")
    }
}

/// One-sided syntactic matching: the θ with `pattern·θ = subject`, if any.
/// Variables of `subject` are treated as constants.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut theta = Substitution::new();
    match_into(pattern, subject, &mut theta).then_some(theta)
}

/// Extends `theta` so that `pattern·theta = subject`; false on failure
/// (in which case `theta` may be partially extended).
pub(crate) fn match_into(pattern: &Term, subject: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match theta.get(v) {
            Some(bound) => bound == subject,
            None => theta.insert(v.clone(), subject.clone()),
        },
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g => pargs
                .iter()
                .zip(sargs.iter())
                .all(|(p, s)| match_into(p, s, theta)),
            _ => false,
        },
    }
}

/// Most general unifier with occurs check. The result is idempotent.
pub fn unify(t1: &Term, t2: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    let mut pending = vec![(t1.clone(), t2.clone())];
    while let Some((a, b)) = pending.pop() {
        let a = a.apply(&sigma);
        let b = b.apply(&sigma);
        if a == b {
            continue;
        }
        match (&a, &b) {
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if v.sort() != t.sort() || occurs(v, t) {
                    return None;
                }
                let single: Substitution = std::iter::once((v.clone(), t.clone())).collect();
                for bound in sigma.0.values_mut() {
                    *bound = bound.apply(&single);
                }
                sigma.0.insert(v.clone(), t.clone());
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g {
                    return None;
                }
                pending.extend(fa.iter().cloned().zip(ga.iter().cloned()));
            }
        }
    }
    Some(sigma)
}

fn occurs(v: &Var, t: &Term) -> bool {
    let mut found = false;
    t.visit_vars(&mut |w| found |= w == v);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::testing::*;

    #[test]
    fn matching_binds_and_rejects() {
        let th = match_term(
            &sapp("f", vec![d("x"), s("sigma")]),
            &sapp("f", vec![dc("0"), sc("c")]),
        )
        .unwrap();
        assert_eq!(th.to_string(), "{sigma := c, x := 0}");
        let not0 = dapp("not", vec![dc("0")]);
        assert!(match_term(&cons(dc("0"), s("sigma")), &cons(not0, sc("zeros"))).is_none());
        assert!(match_term(
            &dapp("g", vec![d("x"), d("x")]),
            &dapp("g", vec![dc("0"), dc("1")])
        )
        .is_none());
    }

    #[test]
    fn unification_cases() {
        let th = unify(&cons(d("x"), s("sigma")), &cons(dc("0"), sc("zeros"))).unwrap();
        assert_eq!(th.to_string(), "{sigma := zeros, x := 0}");
        assert!(unify(&s("sigma"), &cons(d("x"), s("sigma"))).is_none());
        let l = sapp("f", vec![d("x"), cons(d("y"), s("tau"))]);
        let r = sapp("f", vec![dc("0"), s("sigma")]);
        let th = unify(&l, &r).unwrap();
        assert_eq!(th.to_string(), "{sigma := y : tau, x := 0}");
        assert_eq!(l.apply(&th), r.apply(&th));
    }

    #[test]
    fn unifier_is_idempotent_through_chains() {
        let l = sapp("h", vec![s("a"), s("b"), s("c")]);
        let r = sapp("h", vec![s("b"), s("c"), sc("z")]);
        let th = unify(&l, &r).unwrap();
        for (_, t) in th.iter() {
            assert_eq!(t, &sc("z"));
        }
    }
}
