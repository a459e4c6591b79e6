use std::fmt;

use num_bigint::BigUint;

use super::{ParseError, KEYWORDS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Zero,
    Succ,
    Quine,
    Prime,
    Truth,
    LParen,
    RParen,
    Plus,
    Star,
    Num(BigUint),
    Ident(String),
    Equals,
    Less,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Forall,
    Exists,
    Dot,
    False,
}

impl Token {
    /// Short description used in expected-token sets.
    pub fn describe(&self) -> String {
        match self {
            Token::Num(_) => "numeral".into(),
            Token::Ident(_) => "identifier".into(),
            other => format!("'{other}'"),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Zero => f.write_str("0"),
            Token::Succ => f.write_str("S"),
            Token::Quine => f.write_str("Q"),
            Token::Prime => f.write_str("F"),
            Token::Truth => f.write_str("T"),
            Token::LParen => f.write_str("("),
            Token::RParen => f.write_str(")"),
            Token::Plus => f.write_str("+"),
            Token::Star => f.write_str("*"),
            Token::Num(n) => write!(f, "#{n}"),
            Token::Ident(s) => f.write_str(s),
            Token::Equals => f.write_str("="),
            Token::Less => f.write_str("<"),
            Token::Tilde => f.write_str("~"),
            Token::Amp => f.write_str("&"),
            Token::Bar => f.write_str("|"),
            Token::Arrow => f.write_str("->"),
            Token::DoubleArrow => f.write_str("<->"),
            Token::Forall => f.write_str("forall"),
            Token::Exists => f.write_str("exists"),
            Token::Dot => f.write_str("."),
            Token::False => f.write_str("false"),
        }
    }
}

/// A token with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexeme {
    pub token: Token,
    pub pos: usize,
}

fn found_at(text: &str, pos: usize) -> String {
    match text[pos..].chars().next() {
        Some(c) => format!("{c:?}"),
        None => "end of input".to_string(),
    }
}

pub fn lex(text: &str) -> Result<Vec<Lexeme>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let token = match c {
            b'0' => {
                i += 1;
                Token::Zero
            }
            b'S' => {
                i += 1;
                Token::Succ
            }
            b'Q' => {
                i += 1;
                Token::Quine
            }
            b'F' => {
                i += 1;
                Token::Prime
            }
            b'T' => {
                i += 1;
                Token::Truth
            }
            b'(' => {
                i += 1;
                Token::LParen
            }
            b')' => {
                i += 1;
                Token::RParen
            }
            b'+' => {
                i += 1;
                Token::Plus
            }
            b'*' => {
                i += 1;
                Token::Star
            }
            b'=' => {
                i += 1;
                Token::Equals
            }
            b'~' => {
                i += 1;
                Token::Tilde
            }
            b'&' => {
                i += 1;
                Token::Amp
            }
            b'|' => {
                i += 1;
                Token::Bar
            }
            b'.' => {
                i += 1;
                Token::Dot
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Token::Arrow
            }
            b'<' if bytes[i + 1..].starts_with(b"->") => {
                i += 3;
                Token::DoubleArrow
            }
            b'<' => {
                i += 1;
                Token::Less
            }
            b'#' => {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == start {
                    return Err(ParseError::new(start, vec!["decimal digit".into()], found_at(text, start)));
                }
                i = end;
                let n = text[start..end].parse::<BigUint>().expect("ascii digits");
                Token::Num(n)
            }
            b'a'..=b'z' => {
                let mut end = i + 1;
                while end < bytes.len()
                    && (bytes[end].is_ascii_lowercase()
                        || bytes[end].is_ascii_digit()
                        || bytes[end] == b'_')
                {
                    end += 1;
                }
                let word = &text[i..end];
                i = end;
                match word {
                    "forall" => Token::Forall,
                    "exists" => Token::Exists,
                    "false" => Token::False,
                    w => {
                        debug_assert!(!KEYWORDS.contains(&w));
                        Token::Ident(w.to_string())
                    }
                }
            }
            _ => {
                return Err(ParseError::new(pos, vec!["token".into()], found_at(text, pos)));
            }
        };
        out.push(Lexeme { token, pos });
    }
    Ok(out)
}
