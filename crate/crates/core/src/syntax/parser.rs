use std::collections::HashMap;

use thiserror::Error;

use super::lexer::{tokenize, Span, Token, TokenKind};
use crate::spec::StreamSpec;
use crate::term::{FunSymbol, Rule, Sort, Sym, Term, TermError, Var, HEAD, TAIL};

pub const KEYWORDS: &[&str] = &["sig", "dvar", "svar", "datarules", "streamrules", "goal"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{span}: parse error: expected {}, found {found}", expected.join(" or "))]
    Parse {
        span: Span,
        expected: Vec<String>,
        found: String,
    },
    #[error("{span}: sort error: {message}")]
    Sort { span: Span, message: String },
    #[error("{span}: undeclared symbol `{name}`")]
    UndeclaredSymbol { span: Span, name: String },
    #[error("{span}: `{name}` is declared more than once")]
    DuplicateDeclaration { span: Span, name: String },
    #[error("{span}: `{name}` is reserved; {hint}")]
    ReservedName {
        span: Span,
        name: String,
        hint: String,
    },
    #[error("{span}: invalid rule: {message}")]
    InvalidRule { span: Span, message: String },
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Parse { span, .. }
            | SyntaxError::Sort { span, .. }
            | SyntaxError::UndeclaredSymbol { span, .. }
            | SyntaxError::DuplicateDeclaration { span, .. }
            | SyntaxError::ReservedName { span, .. }
            | SyntaxError::InvalidRule { span, .. } => *span,
        }
    }
}

/// `cons` always denotes `:`; a user symbol named `cons`, `cons_`, ... is
/// written with one extra trailing underscore.
pub fn escape_symbol(name: &str) -> String {
    if is_cons_family(name) {
        format!("{name}_")
    } else {
        name.to_string()
    }
}

pub fn unescape_symbol(name: &str) -> &str {
    if name.len() > 4 && is_cons_family(name) {
        &name[..name.len() - 1]
    } else {
        name
    }
}

fn is_cons_family(name: &str) -> bool {
    name.strip_prefix("cons")
        .is_some_and(|rest| rest.chars().all(|c| c == '_'))
}

/// Token stream with one-token lookahead, shared by every file format.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Cursor, SyntaxError> {
        let toks = tokenize(text).map_err(|e| SyntaxError::Parse {
            span: e.span,
            expected: vec!["a token".to_string()],
            found: format!("`{}`", e.found),
        })?;
        Ok(Cursor { toks, pos: 0 })
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn peek_kind(&self) -> TokenKind {
        self.peek().kind
    }

    pub fn peek_is_word(&self, word: &str) -> bool {
        let t = self.peek();
        t.kind == TokenKind::Ident && t.text == word
    }

    pub fn advance(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError::Parse {
            span: self.peek().span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    pub fn expect(&mut self, kind: TokenKind) -> Result<Token, SyntaxError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.error(&[&kind.to_string()]))
        }
    }

    pub fn expect_word(&mut self, word: &str) -> Result<Token, SyntaxError> {
        if self.peek_is_word(word) {
            Ok(self.advance())
        } else {
            Err(self.error(&[&format!("`{word}`")]))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<Token, SyntaxError> {
        if self.peek_kind() == TokenKind::Ident {
            Ok(self.advance())
        } else {
            Err(self.error(&[what]))
        }
    }
}

/// A term before name resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTerm {
    App {
        name: String,
        args: Vec<RawTerm>,
        span: Span,
    },
    Cons {
        head: Box<RawTerm>,
        tail: Box<RawTerm>,
        span: Span,
    },
}

impl RawTerm {
    pub fn span(&self) -> Span {
        match self {
            RawTerm::App { span, .. } | RawTerm::Cons { span, .. } => *span,
        }
    }
}

/// `term := app (":" term)?`, `app := ident ("(" term ("," term)* ")")?`
pub fn parse_raw_term(cur: &mut Cursor) -> Result<RawTerm, SyntaxError> {
    let head = parse_raw_app(cur)?;
    if cur.peek_kind() == TokenKind::Colon {
        let span = cur.advance().span;
        let tail = parse_raw_term(cur)?;
        return Ok(RawTerm::Cons {
            head: Box::new(head),
            tail: Box::new(tail),
            span,
        });
    }
    Ok(head)
}

pub fn parse_raw_app(cur: &mut Cursor) -> Result<RawTerm, SyntaxError> {
    let name = cur.ident("a term")?;
    let mut args = Vec::new();
    if cur.peek_kind() == TokenKind::LParen {
        cur.advance();
        loop {
            args.push(parse_raw_term(cur)?);
            match cur.peek_kind() {
                TokenKind::Comma => {
                    cur.advance();
                }
                TokenKind::RParen => {
                    cur.advance();
                    break;
                }
                _ => return Err(cur.error(&["`,`", "`)`", "`:`"])),
            }
        }
    }
    Ok(RawTerm::App {
        name: name.text,
        args,
        span: name.span,
    })
}

/// Names in scope while resolving raw terms.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    symbols: HashMap<String, Sym>,
    vars: HashMap<String, Var>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    pub fn for_spec(spec: &StreamSpec) -> Scope {
        let mut s = Scope::new();
        for f in spec.sigma_d().iter().chain(spec.sigma_s()) {
            s.symbols.insert(f.name().to_string(), f.clone());
        }
        s
    }

    /// Adds a symbol visible under `name` (which may differ from its own name).
    pub fn add_symbol_alias(&mut self, name: &str, sym: Sym) {
        self.symbols.insert(name.to_string(), sym);
    }

    pub fn symbol(&self, name: &str) -> Option<&Sym> {
        self.symbols.get(name)
    }

    pub fn var(&self, name: &str) -> Option<&Var> {
        self.vars.get(name)
    }

    pub fn declare_var(&mut self, name: &str, sort: Sort, span: Span) -> Result<Var, SyntaxError> {
        if KEYWORDS.contains(&name) || is_cons_family(name) {
            return Err(SyntaxError::ReservedName {
                span,
                name: name.to_string(),
                hint: "choose another variable name".to_string(),
            });
        }
        if self.symbols.contains_key(name) {
            return Err(SyntaxError::DuplicateDeclaration {
                span,
                name: name.to_string(),
            });
        }
        if let Some(v) = self.vars.get(name) {
            if v.sort() == sort {
                return Ok(v.clone());
            }
            return Err(SyntaxError::DuplicateDeclaration {
                span,
                name: name.to_string(),
            });
        }
        let v = Var::new(name, sort);
        self.vars.insert(name.to_string(), v.clone());
        Ok(v)
    }

    pub fn resolve(&self, raw: &RawTerm) -> Result<Term, SyntaxError> {
        match raw {
            RawTerm::Cons { head, tail, span } => {
                let h = self.resolve(head)?;
                let t = self.resolve(tail)?;
                cons_checked(h, t, *span)
            }
            RawTerm::App { name, args, span } => {
                if name == "cons" {
                    if args.len() != 2 {
                        return Err(SyntaxError::Sort {
                            span: *span,
                            message: format!("`cons` takes 2 arguments, got {}", args.len()),
                        });
                    }
                    let h = self.resolve(&args[0])?;
                    let t = self.resolve(&args[1])?;
                    return cons_checked(h, t, *span);
                }
                if let Some(v) = self.vars.get(name.as_str()) {
                    if !args.is_empty() {
                        return Err(SyntaxError::Sort {
                            span: *span,
                            message: format!("variable `{name}` cannot take arguments"),
                        });
                    }
                    return Ok(Term::var(v.clone()));
                }
                let sym = self.symbols.get(unescape_symbol(name)).ok_or_else(|| {
                    SyntaxError::UndeclaredSymbol {
                        span: *span,
                        name: name.clone(),
                    }
                })?;
                let resolved = args
                    .iter()
                    .map(|a| self.resolve(a))
                    .collect::<Result<Vec<_>, _>>()?;
                Term::app(sym.clone(), resolved).map_err(|e| term_error(e, raw, *span))
            }
        }
    }
}

fn term_error(e: TermError, raw: &RawTerm, span: Span) -> SyntaxError {
    let span = match (&e, raw) {
        (TermError::ArgumentSort { index, .. }, RawTerm::App { args, .. }) => {
            args.get(index - 1).map_or(span, RawTerm::span)
        }
        _ => span,
    };
    SyntaxError::Sort {
        span,
        message: e.to_string(),
    }
}

fn cons_checked(h: Term, t: Term, span: Span) -> Result<Term, SyntaxError> {
    if h.sort() != Sort::Data || t.sort() != Sort::Stream {
        return Err(SyntaxError::Sort {
            span,
            message: format!(
                "`:` expects a data head and a stream tail, found `{h}` of sort {} and `{t}` of sort {}",
                h.sort(),
                t.sort()
            ),
        });
    }
    Ok(Term::cons(h, t))
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Rename user symbols `head`/`tail` to fresh `head0`/`tail0` instead of rejecting them.
    pub rename_observers: bool,
}

#[derive(Clone, Debug)]
pub struct ParsedSpec {
    pub spec: StreamSpec,
    /// `(original, new)` for every symbol renamed under [`ParseOptions::rename_observers`].
    pub renamed: Vec<(String, String)>,
}

pub fn parse_spec(text: &str) -> Result<StreamSpec, SyntaxError> {
    parse_spec_with(text, &ParseOptions::default()).map(|p| p.spec)
}

struct RawRule {
    lhs: RawTerm,
    rhs: RawTerm,
    eq_span: Span,
    data: bool,
}

pub fn parse_spec_with(text: &str, opts: &ParseOptions) -> Result<ParsedSpec, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let mut sigma_d: Vec<Sym> = Vec::new();
    let mut sigma_s: Vec<Sym> = Vec::new();
    let mut scope = Scope::new();
    let mut var_decls: Vec<(Token, Sort)> = Vec::new();
    let mut raw_rules: Vec<RawRule> = Vec::new();
    let mut renamed: Vec<(String, String)> = Vec::new();
    let mut saw_sig = false;

    loop {
        let tok = cur.peek().clone();
        match (tok.kind, tok.text.as_str()) {
            (TokenKind::Eof, _) => break,
            (TokenKind::Ident, "sig") => {
                saw_sig = true;
                cur.advance();
                while cur.peek_kind() == TokenKind::Ident && !is_keyword(&cur.peek().text) {
                    let (name_tok, sym) = parse_sigdecl(&mut cur)?;
                    let declared = declare_symbol(&mut scope, &name_tok, sym, opts, &mut renamed)?;
                    match declared.result_sort() {
                        Sort::Data => sigma_d.push(declared),
                        Sort::Stream => sigma_s.push(declared),
                    }
                }
            }
            (TokenKind::Ident, kw @ ("dvar" | "svar")) => {
                let sort = if kw == "dvar" {
                    Sort::Data
                } else {
                    Sort::Stream
                };
                cur.advance();
                while cur.peek_kind() == TokenKind::Ident && !is_keyword(&cur.peek().text) {
                    var_decls.push((cur.advance(), sort));
                }
                cur.expect(TokenKind::Semi)?;
            }
            (TokenKind::Ident, kw @ ("datarules" | "streamrules")) => {
                cur.advance();
                while cur.peek_kind() == TokenKind::Ident && !is_keyword(&cur.peek().text) {
                    let lhs = parse_raw_term(&mut cur)?;
                    let eq_span = cur.expect(TokenKind::Eq)?.span;
                    let rhs = parse_raw_term(&mut cur)?;
                    cur.expect(TokenKind::Semi)?;
                    raw_rules.push(RawRule {
                        lhs,
                        rhs,
                        eq_span,
                        data: kw == "datarules",
                    });
                }
            }
            _ => {
                return Err(cur.error(&[
                    "`sig`",
                    "`dvar`",
                    "`svar`",
                    "`datarules`",
                    "`streamrules`",
                ]))
            }
        }
    }
    if !saw_sig {
        return Err(SyntaxError::Parse {
            span: Span { line: 1, col: 1 },
            expected: vec!["`sig`".to_string()],
            found: cur.peek().describe(),
        });
    }
    for (tok, sort) in &var_decls {
        scope.declare_var(&tok.text, *sort, tok.span)?;
    }

    let mut rd = Vec::new();
    let mut rs = Vec::new();
    for raw in &raw_rules {
        let rule = resolve_rule(&scope, &raw.lhs, &raw.rhs, raw.eq_span)?;
        let expected = if raw.data { Sort::Data } else { Sort::Stream };
        if rule.sort() != expected {
            return Err(SyntaxError::Sort {
                span: raw.lhs.span(),
                message: format!(
                    "rules under `{}` must have sort {expected}",
                    if raw.data { "datarules" } else { "streamrules" }
                ),
            });
        }
        if raw.data {
            rd.push(rule)
        } else {
            rs.push(rule)
        }
    }
    let spec = StreamSpec::new(sigma_d, sigma_s, rd, rs).map_err(|e| SyntaxError::InvalidRule {
        span: Span { line: 1, col: 1 },
        message: e.to_string(),
    })?;
    Ok(ParsedSpec { spec, renamed })
}

pub(crate) fn resolve_rule(
    scope: &Scope,
    lhs: &RawTerm,
    rhs: &RawTerm,
    eq_span: Span,
) -> Result<Rule, SyntaxError> {
    let l = scope.resolve(lhs)?;
    let r = scope.resolve(rhs)?;
    if l.sort() != r.sort() {
        return Err(SyntaxError::Sort {
            span: eq_span,
            message: format!(
                "left-hand side `{l}` has sort {} but right-hand side `{r}` has sort {}",
                l.sort(),
                r.sort()
            ),
        });
    }
    Rule::new(l, r).map_err(|e| SyntaxError::InvalidRule {
        span: lhs.span(),
        message: e.to_string(),
    })
}

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

fn parse_sigdecl(cur: &mut Cursor) -> Result<(Token, Sym), SyntaxError> {
    let name = cur.ident("a symbol name")?;
    cur.expect(TokenKind::Colon)?;
    let mut sorts = vec![parse_sortname(cur)?];
    while cur.peek_kind() == TokenKind::Ident {
        sorts.push(parse_sortname(cur)?);
    }
    let result = if cur.peek_kind() == TokenKind::Arrow {
        cur.advance();
        parse_sortname(cur)?
    } else if sorts.len() == 1 {
        sorts.pop().unwrap()
    } else {
        return Err(cur.error(&["`->`"]));
    };
    cur.expect(TokenKind::Semi)?;
    let args = sorts;
    match result {
        Sort::Data if args.contains(&Sort::Stream) => Err(SyntaxError::Sort {
            span: name.span,
            message: format!("data symbol `{}` cannot take stream arguments", name.text),
        }),
        Sort::Stream
            if args
                .iter()
                .skip_while(|s| **s == Sort::Data)
                .any(|s| *s == Sort::Data) =>
        {
            Err(SyntaxError::Sort {
                span: name.span,
                message: format!(
                    "stream symbol `{}` must list data arguments before stream arguments",
                    name.text
                ),
            })
        }
        _ => {
            let sym = FunSymbol::new(unescape_symbol(&name.text), args, result);
            Ok((name, sym))
        }
    }
}

fn parse_sortname(cur: &mut Cursor) -> Result<Sort, SyntaxError> {
    match cur.peek() {
        t if t.kind == TokenKind::Ident && t.text == "d" => {
            cur.advance();
            Ok(Sort::Data)
        }
        t if t.kind == TokenKind::Ident && t.text == "s" => {
            cur.advance();
            Ok(Sort::Stream)
        }
        _ => Err(cur.error(&["`d`", "`s`"])),
    }
}

fn declare_symbol(
    scope: &mut Scope,
    tok: &Token,
    sym: Sym,
    opts: &ParseOptions,
    renamed: &mut Vec<(String, String)>,
) -> Result<Sym, SyntaxError> {
    let name = tok.text.as_str();
    if name == "cons" {
        return Err(SyntaxError::ReservedName {
            span: tok.span,
            name: name.to_string(),
            hint: "`cons` denotes the built-in `:`; write `cons_` to declare a symbol named `cons`"
                .to_string(),
        });
    }
    if is_keyword(name) {
        return Err(SyntaxError::ReservedName {
            span: tok.span,
            name: name.to_string(),
            hint: "keywords cannot be symbol names".to_string(),
        });
    }
    let mut sym = sym;
    if name == HEAD || name == TAIL {
        if !opts.rename_observers {
            return Err(SyntaxError::ReservedName {
                span: tok.span,
                name: name.to_string(),
                hint: format!("rename it, e.g. to `{name}0`"),
            });
        }
        let mut fresh = format!("{name}0");
        while scope.symbol(&fresh).is_some() {
            fresh.push('\'');
        }
        renamed.push((name.to_string(), fresh.clone()));
        sym = sym.renamed(fresh);
    }
    if scope.symbol(name).is_some() || scope.symbol(sym.name()).is_some() {
        return Err(SyntaxError::DuplicateDeclaration {
            span: tok.span,
            name: name.to_string(),
        });
    }
    scope.add_symbol_alias(name, sym.clone());
    if sym.name() != unescape_symbol(name) {
        scope.add_symbol_alias(sym.name(), sym.clone());
    } else if name != sym.name() {
        // `cons_` declares `cons`; keep the escaped spelling resolvable too.
        scope.add_symbol_alias(sym.name(), sym.clone());
    }
    Ok(sym)
}

/// Parses a term over `spec`'s signature with the given variables in scope.
pub fn parse_term(text: &str, spec: &StreamSpec, vars: &[Var]) -> Result<Term, SyntaxError> {
    let mut scope = Scope::for_spec(spec);
    for v in vars {
        scope.declare_var(v.name(), v.sort(), Span { line: 1, col: 1 })?;
    }
    let mut cur = Cursor::new(text)?;
    let raw = parse_raw_term(&mut cur)?;
    if cur.peek_kind() != TokenKind::Eof {
        return Err(cur.error(&["end of input", "`:`"]));
    }
    scope.resolve(&raw)
}

/// A goal `lhs == rhs` of a goals file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub lhs: Term,
    pub rhs: Term,
}

/// Parses `dvar`/`svar` declarations and `goal t == u ;` lines.
pub fn parse_goals(text: &str, spec: &StreamSpec) -> Result<Vec<Goal>, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let mut scope = Scope::for_spec(spec);
    let mut raw_goals = Vec::new();
    loop {
        let tok = cur.peek().clone();
        match (tok.kind, tok.text.as_str()) {
            (TokenKind::Eof, _) => break,
            (TokenKind::Ident, kw @ ("dvar" | "svar")) => {
                let sort = if kw == "dvar" {
                    Sort::Data
                } else {
                    Sort::Stream
                };
                cur.advance();
                while cur.peek_kind() == TokenKind::Ident && !is_keyword(&cur.peek().text) {
                    let v = cur.advance();
                    scope.declare_var(&v.text, sort, v.span)?;
                }
                cur.expect(TokenKind::Semi)?;
            }
            (TokenKind::Ident, "goal") => {
                cur.advance();
                let l = parse_raw_term(&mut cur)?;
                let eq = cur.expect(TokenKind::EqEq)?.span;
                let r = parse_raw_term(&mut cur)?;
                cur.expect(TokenKind::Semi)?;
                raw_goals.push((l, r, eq));
            }
            _ => return Err(cur.error(&["`goal`", "`dvar`", "`svar`"])),
        }
    }
    raw_goals
        .into_iter()
        .map(|(l, r, eq)| {
            let lhs = scope.resolve(&l)?;
            let rhs = scope.resolve(&r)?;
            if lhs.sort() != rhs.sort() {
                return Err(SyntaxError::Sort {
                    span: eq,
                    message: "the two sides of a goal must have the same sort".to_string(),
                });
            }
            Ok(Goal { lhs, rhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const MORSE: &str = "\
# Thue-Morse
sig
  0 : d ; 1 : d ; not : d -> d ;
  morse : s ; inv : s -> s ; zip : s s -> s ; tail0 : s -> s ;
dvar x ;
svar sigma tau ;
datarules
  not(0) = 1 ;
  not(1) = 0 ;
streamrules
  morse = 0 : zip(inv(morse), tail0(morse)) ;
  tail0(x : sigma) = sigma ;
  inv(x : sigma) = not(x) : inv(sigma) ;
  zip(x : sigma, tau) = x : zip(tau, sigma) ;
";

    #[test]
    fn parses_morse() {
        let spec = parse_spec(MORSE).unwrap();
        let names: Vec<&str> = spec.sigma_s().iter().map(|f| f.name()).collect();
        assert_eq!(names, ["morse", "inv", "zip", "tail0"]);
        assert_eq!(spec.rd().len(), 2);
        assert_eq!(
            spec.rs()[3].to_string(),
            "zip(x : sigma, tau) -> x : zip(tau, sigma)"
        );
        assert_eq!(spec, crate::spec::fixtures::morse());
    }

    #[test]
    fn self_loop_spec() {
        let spec = parse_spec("sig c : s ; streamrules c = c ;").unwrap();
        assert_eq!(spec.rs().len(), 1);
    }

    #[test]
    fn missing_comma() {
        let text = "sig 0 : d ; zip : s s -> s ;\ndvar x ; svar sigma tau ;\nstreamrules zip(x:sigma tau) = tau ;";
        match parse_spec(text).unwrap_err() {
            SyntaxError::Parse { span, found, .. } => {
                assert_eq!(found, "`tau`");
                assert_eq!((span.line, span.col), (3, 25));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn error_kinds() {
        let undeclared = parse_spec("sig c : s ; streamrules c = d ;").unwrap_err();
        assert!(
            matches!(undeclared, SyntaxError::UndeclaredSymbol { ref name, .. } if name == "d")
        );
        let dup = parse_spec("sig c : s ; c : s ;").unwrap_err();
        assert!(matches!(dup, SyntaxError::DuplicateDeclaration { .. }));
        let sort = parse_spec("sig 0 : d ; c : s ; streamrules c = 0 ;").unwrap_err();
        assert!(matches!(sort, SyntaxError::Sort { .. }));
        let reserved = parse_spec("sig tail : s -> s ;").unwrap_err();
        assert!(
            matches!(reserved, SyntaxError::ReservedName { ref hint, .. } if hint.contains("tail0"))
        );
        let arg = parse_spec("sig 0 : d ; f : s -> s ; streamrules f(0) = f(0) ;").unwrap_err();
        assert_eq!(arg.span().col, 40);
    }

    #[test]
    fn observer_rename() {
        let text = "sig 0 : d ; tail : s -> s ; dvar x ; svar sigma ; streamrules tail(x : sigma) = sigma ;";
        let p = parse_spec_with(
            text,
            &ParseOptions {
                rename_observers: true,
            },
        )
        .unwrap();
        assert_eq!(p.renamed, vec![("tail".to_string(), "tail0".to_string())]);
        assert_eq!(p.spec.rs()[0].root().name(), "tail0");
    }

    #[test]
    fn cons_prefix_alias_and_escape() {
        let text = "sig 0 : d ; cons_ : s -> s ; svar sigma ; dvar x ;\nstreamrules cons_(cons(x, sigma)) = x : cons_(sigma) ;";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.sigma_s()[0].name(), "cons");
        assert_eq!(spec.rs()[0].lhs().to_string(), "cons(x : sigma)");
    }

    #[test]
    fn goals_file() {
        let spec = parse_spec(MORSE).unwrap();
        let goals = parse_goals(
            "svar s1 ; goal inv(s1) == inv(s1) ;\ngoal morse == morse ;",
            &spec,
        )
        .unwrap();
        assert_eq!(goals.len(), 2);
    }
}
