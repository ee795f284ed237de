use crate::term::{unify, Position, Rule, Var};

/// Rule `inner` unifies with the non-variable subterm of rule `outer`'s
/// left-hand side at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub outer: usize,
    pub inner: usize,
    pub position: Position,
}

/// All overlaps between left-hand sides, excluding each rule's trivial
/// overlap with itself at the root. Ordered by (outer, position, inner).
pub fn overlaps(rules: &[Rule]) -> Vec<Overlap> {
    let renamed: Vec<Rule> = rules.iter().map(|r| r.rename_vars("#o")).collect();
    let mut out = Vec::new();
    for (i, outer) in rules.iter().enumerate() {
        for p in outer.lhs().function_positions() {
            let sub = outer.lhs().subterm_at(&p).expect("own position");
            for (j, inner) in renamed.iter().enumerate() {
                if i == j && p.is_root() {
                    continue;
                }
                if sub.root() != inner.lhs().root() {
                    continue;
                }
                if unify(sub, inner.lhs()).is_some() {
                    out.push(Overlap {
                        outer: i,
                        inner: j,
                        position: p.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Variables occurring more than once in a left-hand side, per rule.
pub fn left_linearity_violations(rules: &[Rule]) -> Vec<(usize, Var)> {
    let mut out = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        for v in r.lhs().vars() {
            if r.lhs().var_occurrences(&v) > 1 {
                out.push((i, v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::testing::*;

    #[test]
    fn root_overlap_between_two_constant_rules() {
        let rules = vec![
            Rule::new(sc("c"), cons(dc("0"), sc("c"))).unwrap(),
            Rule::new(sc("c"), cons(dc("1"), sc("c"))).unwrap(),
        ];
        let ov = overlaps(&rules);
        assert_eq!(ov.len(), 2);
        assert!(ov.iter().all(|o| o.position.is_root()));
    }

    #[test]
    fn subterm_overlap_with_data_rule() {
        let rules = vec![
            Rule::new(
                sapp("f", vec![cons(dapp("not", vec![d("x")]), s("sigma"))]),
                s("sigma"),
            )
            .unwrap(),
            Rule::new(dapp("not", vec![dc("0")]), dc("1")).unwrap(),
        ];
        let ov = overlaps(&rules);
        assert_eq!(ov.len(), 1);
        assert_eq!(ov[0].position.to_string(), "1.1");
    }

    #[test]
    fn non_linear_lhs_reported() {
        let rules = vec![Rule::new(dapp("g", vec![d("x"), d("x")]), d("x")).unwrap()];
        assert_eq!(left_linearity_violations(&rules).len(), 1);
    }
}
