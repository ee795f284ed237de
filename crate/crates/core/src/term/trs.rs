use std::collections::HashMap;
use std::fmt;

use super::{Sort, Sym, Term, TermError};

/// An oriented equation `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Result<Rule, TermError> {
        if lhs.is_var() {
            return Err(TermError::VariableLhs(lhs.to_string()));
        }
        if lhs.sort() != rhs.sort() {
            return Err(TermError::SortMismatch {
                rule: format!("{lhs} = {rhs}"),
                lhs: lhs.sort(),
                rhs: rhs.sort(),
            });
        }
        let lhs_vars = lhs.vars();
        if let Some(v) = rhs.vars().into_iter().find(|v| !lhs_vars.contains(v)) {
            return Err(TermError::UnboundVariable {
                var: v.to_string(),
                rule: format!("{lhs} = {rhs}"),
            });
        }
        Ok(Rule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn sort(&self) -> Sort {
        self.lhs.sort()
    }

    pub fn root(&self) -> &Sym {
        self.lhs.root().expect("rule lhs is never a variable")
    }

    /// Both sides with variables canonically renamed, for comparison up to renaming.
    pub fn canonical(&self) -> Rule {
        let mut both = super::canonical_rename(&[self.lhs.clone(), self.rhs.clone()]);
        let rhs = both.pop().unwrap();
        let lhs = both.pop().unwrap();
        Rule { lhs, rhs }
    }

    pub fn is_variant_of(&self, other: &Rule) -> bool {
        self.canonical() == other.canonical()
    }

    /// Renames every variable by appending `suffix`.
    pub fn rename_vars(&self, suffix: &str) -> Rule {
        let f = |v: &super::Var| Some(super::Var::new(format!("{}{suffix}", v.name()), v.sort()));
        Rule {
            lhs: self.lhs.map_vars(&f),
            rhs: self.rhs.map_vars(&f),
        }
    }

    pub fn map_symbols(&self, rename: &impl Fn(&Sym) -> Option<Sym>) -> Rule {
        Rule {
            lhs: self.lhs.map_symbols(rename),
            rhs: self.rhs.map_symbols(rename),
        }
    }

    /// The same rule written as an equation, `lhs = rhs`.
    pub fn equation(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Ordered rule list over an explicit signature, indexed by lhs root.
#[derive(Clone, Debug, Default)]
pub struct Trs {
    rules: Vec<Rule>,
    signature: Vec<Sym>,
    by_root: HashMap<String, Vec<usize>>,
}

impl PartialEq for Trs {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules && self.signature == other.signature
    }
}

impl Eq for Trs {}

impl Trs {
    /// Checks that every symbol of every rule belongs to `signature`.
    pub fn new(rules: Vec<Rule>, signature: Vec<Sym>) -> Result<Trs, TermError> {
        let mut sig: Vec<Sym> = Vec::new();
        for s in signature {
            if !sig.iter().any(|t| t.name() == s.name()) {
                sig.push(s);
            }
        }
        for r in &rules {
            let mut missing = None;
            let mut check = |s: &Sym| {
                if missing.is_none() && !sig.iter().any(|t| t == s) {
                    missing = Some(s.name().to_string());
                }
            };
            r.lhs.visit_symbols(&mut check);
            r.rhs.visit_symbols(&mut check);
            if let Some(name) = missing {
                return Err(TermError::UnknownSymbol(name));
            }
        }
        Ok(Self::build(rules, sig))
    }

    /// Signature inferred from the rules, in order of first occurrence.
    pub fn from_rules(rules: Vec<Rule>) -> Trs {
        let mut sig: Vec<Sym> = Vec::new();
        for r in &rules {
            let mut add = |s: &Sym| {
                if !sig.contains(s) {
                    sig.push(s.clone());
                }
            };
            r.lhs.visit_symbols(&mut add);
            r.rhs.visit_symbols(&mut add);
        }
        Self::build(rules, sig)
    }

    fn build(rules: Vec<Rule>, signature: Vec<Sym>) -> Trs {
        let mut by_root: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_root
                .entry(r.root().name().to_string())
                .or_default()
                .push(i);
        }
        Trs {
            rules,
            signature,
            by_root,
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &[Sym] {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn symbol(&self, name: &str) -> Option<&Sym> {
        self.signature.iter().find(|s| s.name() == name)
    }

    /// Indices of the rules whose lhs is rooted by `name`, ascending.
    pub fn rules_for(&self, name: &str) -> &[usize] {
        self.by_root.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Roots of left-hand sides, in signature order.
    pub fn defined_symbols(&self) -> Vec<Sym> {
        self.signature
            .iter()
            .filter(|s| self.by_root.contains_key(s.name()))
            .cloned()
            .collect()
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.by_root.contains_key(name)
    }

    /// Rules of `self` followed by those of `other`; signatures merged.
    pub fn union(&self, other: &Trs) -> Trs {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        let mut sig = self.signature.clone();
        for s in &other.signature {
            if !sig.iter().any(|t| t.name() == s.name()) {
                sig.push(s.clone());
            }
        }
        Self::build(rules, sig)
    }

    /// First rule (lowest index) whose lhs matches `t` at the root.
    pub fn root_redex(&self, t: &Term) -> Option<(usize, super::Substitution)> {
        let name = t.root_name()?;
        self.rules_for(name)
            .iter()
            .find_map(|&i| super::match_term(&self.rules[i].lhs, t).map(|th| (i, th)))
    }
}

impl fmt::Display for Trs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
