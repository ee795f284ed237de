//! Export to the classic termination-problem text format.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use streamwd::term::{Term, Trs};

/// Words with a meaning of their own in the format.
const RESERVED: &[&str] = &[
    "VAR",
    "RULES",
    "THEORY",
    "STRATEGY",
    "EQUATIONS",
    "INNERMOST",
    "OUTERMOST",
    "CONTEXTSENSITIVE",
    "COMMENT",
    "SIG",
    "cons",
];

fn plain(name: &str) -> bool {
    !name.is_empty()
        && !RESERVED.contains(&name)
        && name.chars().all(|c| {
            !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '"' | '|' | '\\' | ':' | '-' | '=')
        })
}

/// Injective renaming into printable names. `:` becomes `cons`; other names
/// keep their text, cleaned of separator characters and suffixed with `_`
/// until they are neither reserved nor taken.
struct Names {
    map: HashMap<String, String>,
}

impl Names {
    fn new(symbols: &BTreeSet<String>, vars: &BTreeSet<String>) -> Names {
        let mut map = HashMap::new();
        let mut taken: BTreeSet<String> = BTreeSet::new();
        // Names already printable claim themselves first so they stay stable.
        let all: Vec<&String> = symbols.iter().chain(vars.iter()).collect();
        if symbols.contains(streamwd::term::CONS) {
            map.insert(streamwd::term::CONS.to_string(), "cons".to_string());
            taken.insert("cons".to_string());
        }
        for n in &all {
            if n.as_str() != streamwd::term::CONS && plain(n) && taken.insert((*n).clone()) {
                map.insert((*n).clone(), (*n).clone());
            }
        }
        for n in all {
            if map.contains_key(n) {
                continue;
            }
            let mut base: String = n
                .chars()
                .map(|c| if plain(&c.to_string()) { c } else { '_' })
                .collect();
            base.push('_');
            while taken.contains(&base) || RESERVED.contains(&base.as_str()) {
                base.push('_');
            }
            taken.insert(base.clone());
            map.insert(n.clone(), base);
        }
        Names { map }
    }

    fn get(&self, name: &str) -> &str {
        &self.map[name]
    }
}

fn write_term(out: &mut String, t: &Term, names: &Names) {
    match t {
        Term::Var(v) => out.push_str(names.get(v.name())),
        Term::App(f, args) => {
            out.push_str(names.get(f.name()));
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, a, names);
                }
                out.push(')');
            }
        }
    }
}

/// `(VAR ..)` with every variable sorted by printed name, then `(RULES ..)`
/// in rule order. No trailing newline.
pub fn to_tpdb(trs: &Trs) -> String {
    let mut symbols = BTreeSet::new();
    let mut vars = BTreeSet::new();
    for r in trs.rules() {
        for t in [r.lhs(), r.rhs()] {
            t.visit_symbols(&mut |f| {
                symbols.insert(f.name().to_string());
            });
            t.visit_vars(&mut |v| {
                vars.insert(v.name().to_string());
            });
        }
    }
    let names = Names::new(&symbols, &vars);
    let printed: BTreeMap<&str, ()> = vars.iter().map(|v| (names.get(v), ())).collect();
    let mut out = String::new();
    let _ = write!(
        out,
        "(VAR {})\n(RULES \n",
        printed.keys().copied().collect::<Vec<_>>().join(" ")
    );
    for r in trs.rules() {
        out.push_str("  ");
        write_term(&mut out, r.lhs(), &names);
        out.push_str(" -> ");
        write_term(&mut out, r.rhs(), &names);
        out.push('\n');
    }
    out.push(')');
    out
}
