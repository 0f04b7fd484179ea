use std::sync::Arc;

use thiserror::Error;

use super::{make_loop, Action, Expr, Name};

/// Variable name standing for the hole of a one-hole context.
pub const HOLE: &str = "◻";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Num(u64),
    Dot,
    Plus,
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Assign,
    Eq,
    Hole,
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Num(n) => write!(f, "`{n}`"),
            Token::Dot => f.write_str("`.`"),
            Token::Plus => f.write_str("`+`"),
            Token::Star => f.write_str("`*`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::LBrace => f.write_str("`{`"),
            Token::RBrace => f.write_str("`}`"),
            Token::Comma => f.write_str("`,`"),
            Token::Assign => f.write_str("`:=`"),
            Token::Eq => f.write_str("`=`"),
            Token::Hole => write!(f, "`{HOLE}`"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                chars.next();
            }
            out.push((i, Token::Ident(s)));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
            }
            let n = s.parse().map_err(|_| ParseError {
                offset: i,
                message: format!("number `{s}` out of range"),
            })?;
            out.push((i, Token::Num(n)));
            continue;
        }
        chars.next();
        let tok = match c {
            '.' => Token::Dot,
            '+' => Token::Plus,
            '*' => Token::Star,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '{' => Token::LBrace,
            '}' => Token::RBrace,
            ',' => Token::Comma,
            '=' => Token::Eq,
            '◻' => Token::Hole,
            ':' if matches!(chars.peek(), Some(&(_, '='))) => {
                chars.next();
                Token::Assign
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((i, tok));
    }
    Ok(out)
}

/// Whether an identifier names a variable (uppercase or `_` initial).
pub fn is_variable_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

fn is_keyword(s: &str) -> bool {
    s == "rec" || s == "tau"
}

/// Recursive-descent parser over a token stream. Expression parsing stops at
/// the first token that cannot continue the expression, so callers can embed
/// expressions in larger line formats.
pub struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    allow_hole: bool,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            end: text.len(),
            allow_hole: false,
        })
    }

    pub fn allow_hole(&mut self, allow: bool) {
        self.allow_hole = allow;
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k).map(|(_, t)| t)
    }

    pub fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn next_token(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    pub fn expect(&mut self, want: &Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {want}, found {t}"))),
            None => Err(self.error(format!("expected {want}, found end of input"))),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }

    /// Consumes an identifier token.
    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected identifier, found {t}"))),
            None => Err(self.error("expected identifier, found end of input")),
        }
    }

    pub fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Token::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            Some(t) => Err(self.error(format!("expected number, found {t}"))),
            None => Err(self.error("expected number, found end of input")),
        }
    }

    /// Consumes a variable name.
    pub fn variable(&mut self) -> Result<Name, ParseError> {
        let at = self.offset();
        let s = self.ident()?;
        if !is_variable_name(&s) {
            return Err(ParseError {
                offset: at,
                message: format!("`{s}` is not a variable name"),
            });
        }
        Ok(s.into())
    }

    /// Consumes an action: `tau` or a lowercase identifier.
    pub fn action(&mut self) -> Result<Action, ParseError> {
        let at = self.offset();
        let s = self.ident()?;
        if s == "tau" {
            return Ok(Action::Tau);
        }
        if is_variable_name(&s) || s == "rec" {
            return Err(ParseError {
                offset: at,
                message: format!("`{s}` is not an action name"),
            });
        }
        Ok(Action::Visible(s.into()))
    }

    /// Parses a sum, the loosest-binding expression form.
    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let left = self.unary()?;
        if self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let right = self.expr()?;
            return Ok(Expr::Sum(Arc::new(left), Arc::new(right)));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Num(0)) => {
                self.pos += 1;
                Ok(Expr::Nil)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(e)
            }
            Some(Token::Hole) if self.allow_hole => {
                self.pos += 1;
                Ok(Expr::var(HOLE))
            }
            Some(Token::Ident(s)) if s == "rec" => {
                self.pos += 1;
                let x = self.variable()?;
                self.expect(&Token::Dot)?;
                let body = self.expr()?;
                Ok(Expr::Rec(x, Arc::new(body)))
            }
            Some(Token::Ident(s)) if s == "tau" && self.peek_at(1) == Some(&Token::Star) => {
                self.pos += 2;
                let body = self.unary()?;
                Ok(make_loop(body))
            }
            Some(Token::Ident(s)) if is_variable_name(&s) => {
                self.pos += 1;
                Ok(Expr::Var(s.into()))
            }
            Some(Token::Ident(s)) if !is_keyword(&s) || s == "tau" => {
                let a = self.action()?;
                self.expect(&Token::Dot)?;
                let body = self.unary()?;
                Ok(Expr::Prefix(a, Arc::new(body)))
            }
            Some(t) => Err(self.error(format!("expected expression, found {t}"))),
            None => Err(self.error("expected expression, found end of input")),
        }
    }
}

/// Parses a whole text as one expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a one-hole context; the hole `◻` becomes the variable [`HOLE`].
pub fn parse_context(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    p.allow_hole(true);
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("a.b.0 + X + tau.Y").unwrap();
        let want = Expr::sum(
            Expr::act("a", Expr::act("b", Expr::Nil)),
            Expr::sum(Expr::var("X"), Expr::tau(Expr::var("Y"))),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn rec_extends_right() {
        let e = parse_expr("a.rec X. b.X + c.0").unwrap();
        let body = Expr::sum(Expr::act("b", Expr::var("X")), Expr::act("c", Expr::Nil));
        assert_eq!(e, Expr::act("a", Expr::rec("X", body)));
    }

    #[test]
    fn loop_sugar() {
        let e = parse_expr("tau* a.0 + b.0").unwrap();
        let l = make_loop(Expr::act("a", Expr::Nil));
        assert_eq!(e, Expr::sum(l, Expr::act("b", Expr::Nil)));
    }

    #[test]
    fn comments_and_whitespace() {
        let e = parse_expr("# header\n a.0 # trailing\n").unwrap();
        assert_eq!(e, Expr::act("a", Expr::Nil));
    }

    #[test]
    fn errors() {
        assert!(parse_expr("a").is_err());
        assert!(parse_expr("rec x. 0").is_err());
        assert!(parse_expr("a.0 +").is_err());
        assert!(parse_expr("X Y").is_err());
        assert!(parse_expr("◻").is_err());
        assert!(parse_expr("a.0 $").is_err());
    }

    #[test]
    fn context_hole() {
        let c = parse_context("a.◻ + b.0").unwrap();
        assert_eq!(
            c,
            Expr::sum(Expr::act("a", Expr::var(HOLE)), Expr::act("b", Expr::Nil))
        );
    }
}
