//! Proof script syntax.
//!
//! ```text
//! dvar x ; svar sigma ;
//! lemma head_g : head(g(x, sigma)) ~ 0 ;
//!   cases x {
//!     0 : { by eq g.1 fwd at 1 ; by E1 fwd at root ; }
//!     1 : { by eq g.2 fwd at 1 ; by E1 fwd at root ; }
//!   } ;
//! prove Fib ~ 0 : c ;
//!   by E3 fwd at root ;
//!   thus head(Fib) : tail0(Fib) ;
//!   ...
//! ```
//!
//! Rules are named `<root symbol>.<k>` with `k` counting that symbol's rules
//! from 1; lemmas are named by the script and usable after their proof.

use std::fmt;

use crate::spec::StreamSpec;
use crate::syntax::{
    parse_raw_app, parse_raw_term, render_term, Cursor, Scope, Span, SyntaxError, TokenKind,
};
use crate::term::{FunSymbol, Position, Sort, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Fwd,
    Bwd,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Fwd => Direction::Bwd,
            Direction::Bwd => Direction::Fwd,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Fwd => "fwd",
            Direction::Bwd => "bwd",
        })
    }
}

/// An equation of the specification (`sym.k`), an earlier lemma, or one of E1..E3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Eq(String),
    E(u8),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Eq(name) => write!(f, "eq {name}"),
            Justification::E(k) => write!(f, "E{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Rewrite {
        by: Justification,
        dir: Direction,
        at: Position,
        /// Bindings for variables of the equation, by name.
        with: Vec<(String, Term)>,
        span: Span,
    },
    /// Ends its chain: every branch proves the current term equal to the goal
    /// with `var` replaced by the branch's element.
    Cases {
        var: Var,
        branches: Vec<(Term, Vec<Step>)>,
        span: Span,
    },
    Thus {
        term: Term,
        span: Span,
    },
}

impl Step {
    pub fn span(&self) -> Span {
        match self {
            Step::Rewrite { span, .. } | Step::Cases { span, .. } | Step::Thus { span, .. } => {
                *span
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    /// Set for lemmas, which later steps may cite.
    pub name: Option<String>,
    pub lhs: Term,
    pub rhs: Term,
    pub steps: Vec<Step>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Script {
    pub vars: Vec<Var>,
    pub proofs: Vec<Proof>,
}

const STEP_WORDS: &[&str] = &["by", "cases", "thus"];
const ITEM_WORDS: &[&str] = &["prove", "lemma", "dvar", "svar"];

struct Parser {
    cur: Cursor,
    scope: Scope,
    vars: Vec<Var>,
}

impl Parser {
    fn term(&mut self) -> Result<Term, SyntaxError> {
        let raw = parse_raw_term(&mut self.cur)?;
        self.scope.resolve(&raw)
    }

    fn is_word(&self, words: &[&str]) -> bool {
        words.iter().any(|w| self.cur.peek_is_word(w))
    }

    fn steps(&mut self, until_brace: bool) -> Result<Vec<Step>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            if until_brace && self.cur.peek_kind() == TokenKind::RBrace {
                return Ok(out);
            }
            if !self.is_word(STEP_WORDS) {
                if until_brace {
                    return Err(self.cur.error(&["`by`", "`cases`", "`thus`", "`}`"]));
                }
                return Ok(out);
            }
            out.push(self.step()?);
        }
    }

    fn step(&mut self) -> Result<Step, SyntaxError> {
        let kw = self.cur.advance();
        let step = match kw.text.as_str() {
            "by" => self.rewrite(kw.span)?,
            "thus" => Step::Thus {
                term: self.term()?,
                span: kw.span,
            },
            _ => self.cases(kw.span)?,
        };
        self.cur.expect(TokenKind::Semi)?;
        Ok(step)
    }

    fn rewrite(&mut self, span: Span) -> Result<Step, SyntaxError> {
        let by = if self.cur.peek_is_word("eq") {
            self.cur.advance();
            Justification::Eq(self.cur.ident("an equation name")?.text)
        } else {
            let tok = self.cur.peek().clone();
            match tok.text.as_str() {
                "E1" | "E2" | "E3" => {
                    self.cur.advance();
                    Justification::E(tok.text.as_bytes()[1] - b'0')
                }
                _ => return Err(self.cur.error(&["`eq`", "`E1`", "`E2`", "`E3`"])),
            }
        };
        let dir = match self.cur.peek().text.as_str() {
            "fwd" => Direction::Fwd,
            "bwd" => Direction::Bwd,
            _ => return Err(self.cur.error(&["`fwd`", "`bwd`"])),
        };
        self.cur.advance();
        self.cur.expect_word("at")?;
        let pos_tok = self.cur.ident("a position")?;
        let at: Position = pos_tok.text.parse().map_err(|_| SyntaxError::Parse {
            span: pos_tok.span,
            expected: vec!["`root` or a position like `1.2`".to_string()],
            found: pos_tok.describe(),
        })?;
        let mut with = Vec::new();
        if self.cur.peek_is_word("with") {
            self.cur.advance();
            self.cur.expect(TokenKind::LBrace)?;
            while self.cur.peek_kind() != TokenKind::RBrace {
                let name = self.cur.ident("a variable")?.text;
                self.cur.expect(TokenKind::Assign)?;
                with.push((name, self.term()?));
                if self.cur.peek_kind() == TokenKind::Comma {
                    self.cur.advance();
                } else if self.cur.peek_kind() != TokenKind::RBrace {
                    return Err(self.cur.error(&["`,`", "`}`"]));
                }
            }
            self.cur.advance();
        }
        Ok(Step::Rewrite {
            by,
            dir,
            at,
            with,
            span,
        })
    }

    fn cases(&mut self, span: Span) -> Result<Step, SyntaxError> {
        let v = self.cur.ident("a data variable")?;
        let var = match self.scope.var(&v.text) {
            Some(var) if var.sort() == Sort::Data => var.clone(),
            _ => {
                return Err(SyntaxError::Sort {
                    span: v.span,
                    message: format!("`{}` is not a declared data variable", v.text),
                })
            }
        };
        self.cur.expect(TokenKind::LBrace)?;
        let mut branches = Vec::new();
        while self.cur.peek_kind() != TokenKind::RBrace {
            let raw = parse_raw_app(&mut self.cur)?;
            let key = self.scope.resolve(&raw)?;
            if key.sort() != Sort::Data || !key.is_ground() {
                return Err(SyntaxError::Sort {
                    span: raw.span(),
                    message: format!("case `{key}` is not a ground data term"),
                });
            }
            self.cur.expect(TokenKind::Colon)?;
            self.cur.expect(TokenKind::LBrace)?;
            let steps = self.steps(true)?;
            self.cur.expect(TokenKind::RBrace)?;
            branches.push((key, steps));
        }
        self.cur.advance();
        Ok(Step::Cases {
            var,
            branches,
            span,
        })
    }

    fn item(&mut self) -> Result<Option<Proof>, SyntaxError> {
        let kw = self.cur.advance();
        match kw.text.as_str() {
            "dvar" | "svar" => {
                let sort = if kw.text == "dvar" {
                    Sort::Data
                } else {
                    Sort::Stream
                };
                while self.cur.peek_kind() == TokenKind::Ident {
                    let v = self.cur.advance();
                    let var = self.scope.declare_var(&v.text, sort, v.span)?;
                    if !self.vars.contains(&var) {
                        self.vars.push(var);
                    }
                }
                self.cur.expect(TokenKind::Semi)?;
                Ok(None)
            }
            _ => {
                let name = if kw.text == "lemma" {
                    let n = self.cur.ident("a lemma name")?;
                    if n.text.contains('.') || matches!(n.text.as_str(), "E1" | "E2" | "E3") {
                        return Err(SyntaxError::ReservedName {
                            span: n.span,
                            name: n.text,
                            hint: "lemma names may not contain `.` or be E1..E3".to_string(),
                        });
                    }
                    self.cur.expect(TokenKind::Colon)?;
                    Some(n.text)
                } else {
                    None
                };
                let lhs = self.term()?;
                let tilde = self.cur.expect(TokenKind::Tilde)?;
                let rhs = self.term()?;
                if lhs.sort() != rhs.sort() {
                    return Err(SyntaxError::Sort {
                        span: tilde.span,
                        message: "the two sides of a goal must have the same sort".to_string(),
                    });
                }
                self.cur.expect(TokenKind::Semi)?;
                let steps = self.steps(false)?;
                Ok(Some(Proof {
                    name,
                    lhs,
                    rhs,
                    steps,
                    span: kw.span,
                }))
            }
        }
    }
}

/// Parses a script over `spec`'s signature plus the observer `head`.
pub fn parse_script(text: &str, spec: &StreamSpec) -> Result<Script, SyntaxError> {
    let mut scope = Scope::for_spec(spec);
    if scope.symbol(crate::term::HEAD).is_none() {
        scope.add_symbol_alias(crate::term::HEAD, FunSymbol::head());
    }
    let mut p = Parser {
        cur: Cursor::new(text)?,
        scope,
        vars: Vec::new(),
    };
    let mut proofs = Vec::new();
    while p.cur.peek_kind() != TokenKind::Eof {
        if !p.is_word(ITEM_WORDS) {
            return Err(p.cur.error(&["`prove`", "`lemma`", "`dvar`", "`svar`"]));
        }
        if let Some(proof) = p.item()? {
            proofs.push(proof);
        }
    }
    Ok(Script {
        vars: p.vars,
        proofs,
    })
}

fn write_steps(f: &mut fmt::Formatter<'_>, steps: &[Step], indent: usize) -> fmt::Result {
    let pad = " ".repeat(indent);
    for s in steps {
        match s {
            Step::Rewrite {
                by, dir, at, with, ..
            } => {
                write!(f, "{pad}by {by} {dir} at {at}")?;
                if !with.is_empty() {
                    let binds: Vec<String> = with
                        .iter()
                        .map(|(n, t)| format!("{n} := {}", render_term(t)))
                        .collect();
                    write!(f, " with {{ {} }}", binds.join(", "))?;
                }
                writeln!(f, " ;")?;
            }
            Step::Thus { term, .. } => writeln!(f, "{pad}thus {} ;", render_term(term))?,
            Step::Cases { var, branches, .. } => {
                writeln!(f, "{pad}cases {var} {{")?;
                for (key, sub) in branches {
                    writeln!(f, "{pad}  {} : {{", render_term(key))?;
                    write_steps(f, sub, indent + 4)?;
                    writeln!(f, "{pad}  }}")?;
                }
                writeln!(f, "{pad}}} ;")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => writeln!(
                f,
                "lemma {n} : {} ~ {} ;",
                render_term(&self.lhs),
                render_term(&self.rhs)
            )?,
            None => writeln!(
                f,
                "prove {} ~ {} ;",
                render_term(&self.lhs),
                render_term(&self.rhs)
            )?,
        }
        write_steps(f, &self.steps, 2)
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (kw, sort) in [("dvar", Sort::Data), ("svar", Sort::Stream)] {
            let names: Vec<&str> = self
                .vars
                .iter()
                .filter(|v| v.sort() == sort)
                .map(Var::name)
                .collect();
            if !names.is_empty() {
                writeln!(f, "{kw} {} ;", names.join(" "))?;
            }
        }
        for p in &self.proofs {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
