//! Text syntax for presentations:
//!
//! ```text
//! presentation := gens "|" rels?
//! gens         := name ("," name)*
//! rels         := word ("," word)*
//! word         := factor+
//! factor       := name ("^" integer)?
//! ```
//!
//! Names match `[A-Za-z][A-Za-z0-9_]*`, whitespace is insignificant and `^0` is rejected.

use super::{GroupPresentation, PresentationError};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    Integer(i64),
    Comma,
    Bar,
    Caret,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>, PresentationError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_column) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let token = match c {
            ',' => Token::Comma,
            '|' => Token::Bar,
            '^' => Token::Caret,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                    column += 1;
                }
                Token::Name(chars[start..=i].iter().collect())
            }
            c if c == '-' || c.is_ascii_digit() => {
                let start = i;
                if c == '-' && !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    return Err(syntax(line, column, "expected digits after `-`"));
                }
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    column += 1;
                }
                let literal: String = chars[start..=i].iter().collect();
                let value = literal
                    .parse::<i64>()
                    .map_err(|_| syntax(start_line, start_column, format!("integer `{literal}` out of range")))?;
                Token::Integer(value)
            }
            other => return Err(syntax(line, column, format!("unexpected character `{other}`"))),
        };
        tokens.push(Spanned { token, line: start_line, column: start_column });
        i += 1;
        column += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error_here(&self, message: &str) -> PresentationError {
        match self.peek() {
            Some(t) => syntax(t.line, t.column, message),
            None => syntax(self.end.0, self.end.1, message),
        }
    }

    fn generators(&mut self) -> Result<Vec<String>, PresentationError> {
        let mut names = Vec::new();
        if matches!(self.peek().map(|t| &t.token), Some(Token::Bar)) {
            return Ok(names);
        }
        loop {
            match self.next() {
                Some(Spanned { token: Token::Name(name), .. }) => names.push(name),
                _ => {
                    self.pos -= 1;
                    return Err(self.error_here("expected a generator name"));
                }
            }
            match self.peek().map(|t| &t.token) {
                Some(Token::Comma) => {
                    self.pos += 1;
                }
                Some(Token::Bar) => return Ok(names),
                _ => return Err(self.error_here("expected `,` or `|` after generator name")),
            }
        }
    }

    fn word(&mut self, names: &[String]) -> Result<Word, PresentationError> {
        let mut raw = Vec::new();
        while let Some(Spanned { token: Token::Name(name), line, column }) = self.peek().cloned() {
            self.pos += 1;
            let generator = names
                .iter()
                .position(|n| *n == name)
                .ok_or(PresentationError::UnknownGenerator { name, line, column })?;
            let mut exponent = 1;
            if matches!(self.peek().map(|t| &t.token), Some(Token::Caret)) {
                self.pos += 1;
                match self.next() {
                    Some(Spanned { token: Token::Integer(0), line, column }) => {
                        return Err(PresentationError::ZeroExponent { line, column });
                    }
                    Some(Spanned { token: Token::Integer(e), .. }) => exponent = e,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error_here("expected an integer exponent after `^`"));
                    }
                }
            }
            raw.push(Letter::new(generator, exponent));
        }
        if raw.is_empty() {
            return Err(self.error_here("expected a relator word"));
        }
        Ok(Word::from_letters(raw))
    }
}

/// Parses the presentation grammar. Relators are freely reduced; relators that reduce
/// to the identity are dropped.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, PresentationError> {
    let tokens = lex(text)?;
    let end_line = text.lines().count().max(1);
    let end_column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let mut parser = Parser { tokens, pos: 0, end: (end_line, end_column) };

    let names = parser.generators()?;
    match parser.next() {
        Some(Spanned { token: Token::Bar, .. }) => {}
        _ => return Err(syntax(parser.end.0, parser.end.1, "expected `|`")),
    }
    let mut relators = Vec::new();
    if parser.peek().is_some() {
        loop {
            let w = parser.word(&names)?;
            if !w.is_identity() {
                relators.push(w);
            }
            match parser.next() {
                None => break,
                Some(Spanned { token: Token::Comma, .. }) => {}
                Some(t) => return Err(syntax(t.line, t.column, "expected `,` between relators")),
            }
        }
    }
    GroupPresentation::new(names, relators)
}

/// Parses a single `word` of the grammar over the given generator names.
pub fn parse_word<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word, PresentationError> {
    let tokens = lex(text)?;
    let end_line = text.lines().count().max(1);
    let end_column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut parser = Parser { tokens, pos: 0, end: (end_line, end_column) };
    let w = parser.word(&names)?;
    if parser.peek().is_some() {
        return Err(parser.error_here("unexpected input after word"));
    }
    Ok(w)
}
