//! Text format for specifications, terms and goal lists.
//!
//! ```text
//! sig 0 : d ; 1 : d ; not : d -> d ; ones : s ; inv : s -> s ;
//! dvar x ; svar sigma ;
//! datarules not(0) = 1 ; not(1) = 0 ;
//! streamrules ones = 1 : ones ; inv(x : sigma) = not(x) : inv(sigma) ;
//! ```

mod lexer;
mod parser;
mod render;

pub use lexer::{is_ident_char, tokenize, LexError, Span, Token, TokenKind};
pub use parser::{
    escape_symbol, parse_goals, parse_raw_app, parse_raw_term, parse_spec, parse_spec_with,
    parse_term, unescape_symbol, Cursor, Goal, ParseOptions, ParsedSpec, RawTerm, Scope,
    SyntaxError, KEYWORDS,
};
pub use render::{render_goals, render_spec, render_spec_with_warnings, render_term};
