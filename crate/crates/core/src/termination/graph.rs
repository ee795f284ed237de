use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::dp::DependencyPair;
use crate::term::{unify, Term, Trs, Var};

/// REN(CAP(t)): subterms below the root that are rooted by a defined symbol,
/// and every variable occurrence, become distinct fresh variables.
pub fn ren_cap(trs: &Trs, t: &Term) -> Term {
    let mut counter = 0usize;
    match t {
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter()
                .map(|a| cap_below(trs, a, &mut counter))
                .collect(),
        ),
        Term::Var(_) => fresh(t, &mut counter),
    }
}

fn fresh(t: &Term, counter: &mut usize) -> Term {
    *counter += 1;
    Term::var(Var::new(format!("#c{counter}"), t.sort()))
}

fn cap_below(trs: &Trs, t: &Term, counter: &mut usize) -> Term {
    match t {
        Term::Var(_) => fresh(t, counter),
        Term::App(f, _) if trs.is_defined(f.name()) => fresh(t, counter),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| cap_below(trs, a, counter)).collect(),
        ),
    }
}

/// Edges `p -> q` of the estimated dependency graph, per pair index.
pub fn estimated_graph(trs: &Trs, pairs: &[DependencyPair]) -> Vec<Vec<usize>> {
    let lhss: Vec<Term> = pairs
        .iter()
        .map(|q| {
            q.lhs
                .map_vars(&|v| Some(Var::new(format!("{}#l", v.name()), v.sort())))
        })
        .collect();
    pairs
        .iter()
        .map(|p| {
            let capped = ren_cap(trs, &p.rhs);
            lhss.iter()
                .enumerate()
                .filter(|(_, l)| l.root() == capped.root() && unify(&capped, l).is_some())
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// Strongly connected components of the subgraph on `nodes` that contain a
/// cycle. Each component is sorted; components are ordered by smallest member.
pub fn cyclic_components(edges: &[Vec<usize>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut g: DiGraph<usize, ()> = DiGraph::new();
    let idx: Vec<_> = nodes.iter().map(|&n| g.add_node(n)).collect();
    let local = |n: usize| nodes.iter().position(|&m| m == n);
    for (a, &n) in nodes.iter().enumerate() {
        for &m in &edges[n] {
            if let Some(b) = local(m) {
                g.add_edge(idx[a], idx[b], ());
            }
        }
    }
    let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let mut c: Vec<usize> = comp.into_iter().map(|i| g[i]).collect();
            c.sort_unstable();
            c
        })
        .filter(|c| c.len() > 1 || edges[c[0]].contains(&c[0]))
        .collect();
    out.sort();
    out
}
