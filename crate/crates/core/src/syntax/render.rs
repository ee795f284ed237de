use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use super::lexer::is_ident_char;
use super::parser::{escape_symbol, Goal, KEYWORDS};
use crate::spec::StreamSpec;
use crate::term::{Rule, Sort, Term, Var};

/// Prints `t` in the input syntax: `:` infix, `cons`-like names escaped.
pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => out.push_str(v.name()),
        Term::App(f, args) if f.is_cons() => {
            write_term(out, &args[0]);
            out.push_str(" : ");
            write_term(out, &args[1]);
        }
        Term::App(f, args) => {
            out.push_str(&escape_symbol(f.name()));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, a);
                }
                out.push(')');
            }
        }
    }
}

pub fn render_spec(spec: &StreamSpec) -> String {
    render_spec_with_warnings(spec).0
}

/// Renders `spec`, reporting names that had to be escaped or renamed and
/// names the parser cannot read back.
pub fn render_spec_with_warnings(spec: &StreamSpec) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let symbol_names: BTreeSet<&str> = spec
        .sigma_d()
        .iter()
        .chain(spec.sigma_s())
        .map(|f| f.name())
        .collect();
    for name in &symbol_names {
        let escaped = escape_symbol(name);
        if escaped != *name {
            warnings.push(format!("symbol `{name}` is written `{escaped}`"));
        }
        if !name.chars().all(is_ident_char) || KEYWORDS.contains(name) || name.is_empty() {
            warnings.push(format!("symbol `{name}` cannot be parsed back"));
        }
        if *name == crate::term::HEAD || *name == crate::term::TAIL {
            warnings.push(format!(
                "symbol `{name}` is reserved and needs renaming to parse back"
            ));
        }
    }

    // One sort per variable name across the file; rename rule-locally on clashes.
    let mut sorts: HashMap<String, Sort> = HashMap::new();
    let mut dvars: Vec<String> = Vec::new();
    let mut svars: Vec<String> = Vec::new();
    let mut rules: Vec<(bool, Rule)> = Vec::new();
    for (data, r) in spec
        .rd()
        .rules()
        .iter()
        .map(|r| (true, r))
        .chain(spec.rs().iter().map(|r| (false, r)))
    {
        let mut renames: HashMap<Var, Var> = HashMap::new();
        for v in r.lhs().vars() {
            let mut name = v.name().to_string();
            let clashes = |n: &str, sorts: &HashMap<String, Sort>| {
                symbol_names.contains(n)
                    || KEYWORDS.contains(&n)
                    || n.starts_with("cons") && n[4..].chars().all(|c| c == '_')
                    || !n.chars().all(is_ident_char)
                    || sorts.get(n).is_some_and(|s| *s != v.sort())
            };
            if clashes(&name, &sorts) {
                let base: String = name.chars().filter(|c| is_ident_char(*c)).collect();
                let base = if base.is_empty() {
                    "v".to_string()
                } else {
                    base
                };
                let mut k = 1;
                loop {
                    name = format!("{base}_{k}");
                    if !clashes(&name, &sorts) {
                        break;
                    }
                    k += 1;
                }
                warnings.push(format!("variable `{}` is written `{name}`", v.name()));
                renames.insert(v.clone(), Var::new(&name, v.sort()));
            }
            if sorts.insert(name.clone(), v.sort()).is_none() {
                match v.sort() {
                    Sort::Data => dvars.push(name),
                    Sort::Stream => svars.push(name),
                }
            }
        }
        let rule = if renames.is_empty() {
            r.clone()
        } else {
            let f = |v: &Var| renames.get(v).cloned();
            Rule::new(r.lhs().map_vars(&f), r.rhs().map_vars(&f))
                .expect("renaming keeps rules valid")
        };
        rules.push((data, rule));
    }

    let mut out = String::from("sig\n");
    for f in spec.sigma_d().iter().chain(spec.sigma_s()) {
        let mut sorts: Vec<String> = f.arg_sorts().iter().map(Sort::to_string).collect();
        let ty = if sorts.is_empty() {
            f.result_sort().to_string()
        } else {
            sorts.push(format!("-> {}", f.result_sort()));
            sorts.join(" ")
        };
        let _ = writeln!(out, "  {} : {ty} ;", escape_symbol(f.name()));
    }
    if !dvars.is_empty() {
        let _ = writeln!(out, "dvar {} ;", dvars.join(" "));
    }
    if !svars.is_empty() {
        let _ = writeln!(out, "svar {} ;", svars.join(" "));
    }
    for (data, header) in [(true, "datarules"), (false, "streamrules")] {
        let block: Vec<&Rule> = rules
            .iter()
            .filter(|(d, _)| *d == data)
            .map(|(_, r)| r)
            .collect();
        if block.is_empty() {
            continue;
        }
        let _ = writeln!(out, "{header}");
        for r in block {
            let _ = writeln!(
                out,
                "  {} = {} ;",
                render_term(r.lhs()),
                render_term(r.rhs())
            );
        }
    }
    (out, warnings)
}

/// Goals file with the variable declarations the goals need.
pub fn render_goals(goals: &[Goal]) -> String {
    let mut dvars: Vec<String> = Vec::new();
    let mut svars: Vec<String> = Vec::new();
    for g in goals {
        for v in g.lhs.vars().into_iter().chain(g.rhs.vars()) {
            let list = match v.sort() {
                Sort::Data => &mut dvars,
                Sort::Stream => &mut svars,
            };
            if !list.iter().any(|n| n == v.name()) {
                list.push(v.name().to_string());
            }
        }
    }
    let mut out = String::new();
    if !dvars.is_empty() {
        let _ = writeln!(out, "dvar {} ;", dvars.join(" "));
    }
    if !svars.is_empty() {
        let _ = writeln!(out, "svar {} ;", svars.join(" "));
    }
    for g in goals {
        let _ = writeln!(
            out,
            "goal {} == {} ;",
            render_term(&g.lhs),
            render_term(&g.rhs)
        );
    }
    out
}
