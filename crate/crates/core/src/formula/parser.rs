use std::fmt;

use thiserror::Error;

use super::{Formula, Modality, RESERVED_VAR};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnknownToken(String),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnbalancedParen,
    ReservedVariable,
}

/// Parse failure at byte `offset` of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
    /// Tokens that would have been accepted at `offset`.
    pub expected: Vec<&'static str>,
}

fn expected_suffix(expected: &[&'static str]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(", expected one of: {}", expected.join(" "))
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty input"),
            ParseErrorKind::UnknownToken(t) => write!(f, "unknown token `{t}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parenthesis"),
            ParseErrorKind::ReservedVariable => {
                write!(f, "variable `{RESERVED_VAR}` is reserved")
            }
        }
    }
}

const UNARY_START: &[&str] = &[
    "!", "W", "K", "A", "@name", "true", "false", "variable", "(",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    Implies,
    Iff,
    And,
    Or,
    LParen,
    RParen,
    Modal(Modality),
    At(String),
    True,
    False,
    Var(String),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Not => "!".into(),
            Tok::Implies => "->".into(),
            Tok::Iff => "<->".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Modal(m) => m.symbol().into(),
            Tok::At(n) => format!("@{n}"),
            Tok::True => "true".into(),
            Tok::False => "false".into(),
            Tok::Var(v) => v.clone(),
        }
    }
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == b'_'
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let unknown = |at: usize, len: usize| ParseError {
        offset: at,
        kind: ParseErrorKind::UnknownToken(text[at..at + len].to_string()),
        expected: Vec::new(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 3;
                Tok::Iff
            }
            b'W' | b'K' | b'A' => {
                i += 1;
                Tok::Modal(Modality::from_symbol(&text[start..i]).unwrap())
            }
            b'@' => {
                i += 1;
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(ParseError {
                        offset: i,
                        kind: match bytes.get(i) {
                            Some(_) => ParseErrorKind::UnexpectedToken(
                                text[i..].chars().next().unwrap().to_string(),
                            ),
                            None => ParseErrorKind::UnexpectedEnd,
                        },
                        expected: vec!["name"],
                    });
                }
                Tok::At(text[start + 1..i].to_string())
            }
            b'a'..=b'z' => {
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                match &text[start..i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    RESERVED_VAR => {
                        return Err(ParseError {
                            offset: start,
                            kind: ParseErrorKind::ReservedVariable,
                            expected: Vec::new(),
                        })
                    }
                    v => Tok::Var(v.to_string()),
                }
            }
            _ => {
                let len = text[i..].chars().next().map_or(1, char::len_utf8);
                return Err(unknown(i, len));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let kind = match self.peek() {
            None if self.depth > 0 => ParseErrorKind::UnbalancedParen,
            None => ParseErrorKind::UnexpectedEnd,
            Some(Tok::RParen) if self.depth == 0 => ParseErrorKind::UnbalancedParen,
            Some(t) => ParseErrorKind::UnexpectedToken(t.text()),
        };
        ParseError {
            offset: self.offset(),
            kind,
            expected: expected.to_vec(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.implication()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.implication()?;
            acc = Formula::iff(acc, rhs);
        }
        Ok(acc)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error(UNARY_START));
        };
        match tok {
            Tok::Not => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Modal(m) => {
                self.pos += 1;
                Ok(m.apply(self.unary()?))
            }
            Tok::At(name) => {
                self.pos += 1;
                Ok(Formula::at_name(name, self.unary()?))
            }
            Tok::True => {
                self.pos += 1;
                Ok(Formula::top())
            }
            Tok::False => {
                self.pos += 1;
                Ok(Formula::bottom())
            }
            Tok::Var(v) => {
                self.pos += 1;
                Ok(Formula::Var(v))
            }
            Tok::LParen => {
                self.pos += 1;
                self.depth += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(&[")", "->", "<->", "|", "&"]));
                }
                self.depth -= 1;
                Ok(inner)
            }
            _ => Err(self.error(UNARY_START)),
        }
    }
}

/// Parses the ASCII concrete syntax into a desugared tree.
///
/// Precedence from loosest to tightest is `<->`, `->` (right associative),
/// `|`, `&`, then the prefix operators `!`, `W`, `K`, `A` and `@name`.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError {
            offset: 0,
            kind: ParseErrorKind::Empty,
            expected: UNARY_START.to_vec(),
        });
    }
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let f = parser.formula()?;
    if parser.pos < toks.len() {
        return Err(parser.error(&["->", "<->", "|", "&"]));
    }
    Ok(f)
}
