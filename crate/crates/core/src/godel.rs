//! Gödel numbering of terms and formulas.
//!
//! A node is printed canonically, lexed, and flattened to a sequence of
//! symbols from a fixed 60-entry table: one symbol per grammar terminal, one
//! per decimal digit of a numeral, one per identifier character. A leading
//! tag symbol separates terms from formulas. Symbol ids `1..=60` are read as
//! the digits of a base-65 number, most significant first. Digit 0 never
//! occurs in a code, and 0 itself is reserved as "not a code".

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::syntax::{lex, parse_lexemes, Lexeme, Node, Term, Token};

pub const RADIX: u32 = 65;

const TERM_TAG: u8 = 1;
const FORMULA_TAG: u8 = 2;
const HASH: u8 = 12;
const FIRST_DIGIT: u8 = 24;
const FIRST_LETTER: u8 = 34;
const UNDERSCORE: u8 = 60;

/// The symbol table, indexed by `id - 1`.
pub const SYMBOLS: [&str; 60] = [
    "<term>", "<formula>", "0", "S", "Q", "F", "T", "(", ")", "+", "*", "#", "=", "<", "~", "&",
    "|", "->", "<->", "forall", "exists", ".", "false", "0", "1", "2", "3", "4", "5", "6", "7",
    "8", "9", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q",
    "r", "s", "t", "u", "v", "w", "x", "y", "z", "_",
];

/// A Gödel number: a positive natural that codes some term or formula.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelCode(BigUint);

impl GodelCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }

    /// The numeral `#c` naming this code inside the object language.
    pub fn numeral(&self) -> Term {
        numeral(self.0.clone())
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<GodelCode> for BigUint {
    fn from(c: GodelCode) -> Self {
        c.0
    }
}

// Codes travel as decimal strings so consumers never truncate them.
impl Serialize for GodelCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for GodelCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let v: BigUint = s.parse().map_err(serde::de::Error::custom)?;
        if v.is_zero() {
            return Err(serde::de::Error::custom("0 is not a code"));
        }
        Ok(GodelCode(v))
    }
}

fn token_symbols(token: &Token, out: &mut Vec<u8>) {
    let id = match token {
        Token::Zero => 3,
        Token::Succ => 4,
        Token::Quine => 5,
        Token::Prime => 6,
        Token::Truth => 7,
        Token::LParen => 8,
        Token::RParen => 9,
        Token::Plus => 10,
        Token::Star => 11,
        Token::Equals => 13,
        Token::Less => 14,
        Token::Tilde => 15,
        Token::Amp => 16,
        Token::Bar => 17,
        Token::Arrow => 18,
        Token::DoubleArrow => 19,
        Token::Forall => 20,
        Token::Exists => 21,
        Token::Dot => 22,
        Token::False => 23,
        Token::Num(n) => {
            out.push(HASH);
            out.extend(n.to_string().bytes().map(|d| FIRST_DIGIT + (d - b'0')));
            return;
        }
        Token::Ident(name) => {
            out.extend(name.bytes().map(|c| match c {
                b'a'..=b'z' => FIRST_LETTER + (c - b'a'),
                b'0'..=b'9' => FIRST_DIGIT + (c - b'0'),
                b'_' => UNDERSCORE,
                _ => unreachable!("lexer only yields [a-z0-9_] identifiers"),
            }));
            return;
        }
    };
    out.push(id);
}

/// The symbol-id string of a node, tag first.
pub fn symbols(node: &Node) -> Vec<u8> {
    let (tag, text) = match node {
        Node::Term(t) => (TERM_TAG, t.to_string()),
        Node::Formula(f) => (FORMULA_TAG, f.to_string()),
    };
    let lexemes = lex(&text).expect("canonical print of a well-formed tree always lexes");
    let mut out = vec![tag];
    for l in &lexemes {
        token_symbols(&l.token, &mut out);
    }
    out
}

/// Gödel number of a well-formed term or formula.
///
/// Panics if the tree violates the syntax invariants (for example a variable
/// name outside `[a-z][a-z0-9_]*`); parsed trees always satisfy them.
pub fn encode(node: &Node) -> GodelCode {
    let digits = symbols(node);
    GodelCode(BigUint::from_radix_be(&digits, RADIX).expect("symbol ids are below the radix"))
}

pub fn encode_formula(phi: &crate::syntax::Formula) -> GodelCode {
    encode(&Node::Formula(phi.clone()))
}

pub fn encode_term(t: &Term) -> GodelCode {
    encode(&Node::Term(t.clone()))
}

fn is_digit(id: u8) -> bool {
    (FIRST_DIGIT..FIRST_DIGIT + 10).contains(&id)
}

fn is_letter(id: u8) -> bool {
    (FIRST_LETTER..FIRST_LETTER + 26).contains(&id)
}

/// Regroups a symbol string into lexemes. `None` when digits or identifier
/// characters appear where no numeral or identifier can start.
fn relex(ids: &[u8]) -> Option<Vec<Lexeme>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let pos = i;
        let id = ids[i];
        let token = if id == HASH {
            let start = i + 1;
            let mut end = start;
            while end < ids.len() && is_digit(ids[end]) {
                end += 1;
            }
            if end == start {
                return None;
            }
            i = end;
            let text: String = ids[start..end]
                .iter()
                .map(|&d| char::from(b'0' + (d - FIRST_DIGIT)))
                .collect();
            Token::Num(text.parse().ok()?)
        } else if is_letter(id) {
            let mut end = i + 1;
            while end < ids.len() && (is_letter(ids[end]) || is_digit(ids[end]) || ids[end] == UNDERSCORE) {
                end += 1;
            }
            let name: String = ids[i..end]
                .iter()
                .map(|&c| SYMBOLS[usize::from(c) - 1].chars().next().unwrap())
                .collect();
            i = end;
            match name.as_str() {
                // Keywords have their own symbols; a letter-by-letter
                // spelling is never canonical.
                "forall" | "exists" | "false" => return None,
                _ => Token::Ident(name),
            }
        } else {
            i += 1;
            match id {
                3 => Token::Zero,
                4 => Token::Succ,
                5 => Token::Quine,
                6 => Token::Prime,
                7 => Token::Truth,
                8 => Token::LParen,
                9 => Token::RParen,
                10 => Token::Plus,
                11 => Token::Star,
                13 => Token::Equals,
                14 => Token::Less,
                15 => Token::Tilde,
                16 => Token::Amp,
                17 => Token::Bar,
                18 => Token::Arrow,
                19 => Token::DoubleArrow,
                20 => Token::Forall,
                21 => Token::Exists,
                22 => Token::Dot,
                23 => Token::False,
                _ => return None,
            }
        };
        out.push(Lexeme { token, pos });
    }
    Some(out)
}

/// Inverse of [`encode`]. Returns `None` for 0 and for every natural that is
/// not the code of some node.
pub fn decode(value: &BigUint) -> Option<Node> {
    if value.is_zero() {
        return None;
    }
    let digits = value.to_radix_be(RADIX);
    if digits.contains(&0) {
        return None;
    }
    let (&tag, rest) = digits.split_first()?;
    if tag != TERM_TAG && tag != FORMULA_TAG {
        return None;
    }
    let lexemes = relex(rest)?;
    let node = match parse_lexemes(&lexemes, rest.len()).ok()? {
        Node::Formula(f) if tag == FORMULA_TAG => Node::Formula(f),
        Node::Term(t) if tag == TERM_TAG => Node::Term(t),
        _ => return None,
    };
    // The parser tolerates redundant parentheses and leading zeros; only the
    // canonical spelling is a code.
    if symbols(&node) != digits {
        return None;
    }
    Some(node)
}

/// The numeral naming `n`.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::Num(n.into())
}
