use std::fmt;

use super::lexer::{lex, Lexeme, Token};
use super::{FnSymbol, Formula, Node, Term};

/// Syntax error with the byte offset of the offending token (or of the end of
/// input) and the set of tokens that would have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, mut expected: Vec<String>, found: impl Into<String>) -> Self {
        expected.sort();
        expected.dedup();
        ParseError {
            pos,
            expected,
            found: found.into(),
        }
    }

    /// Keeps whichever error got further; merges expectations on a tie.
    fn furthest(self, other: ParseError) -> ParseError {
        use std::cmp::Ordering::*;
        match self.pos.cmp(&other.pos) {
            Greater => self,
            Less => other,
            Equal => {
                let mut expected = self.expected;
                expected.extend(other.expected);
                ParseError::new(self.pos, expected, self.found)
            }
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.pos,
            self.expected.join(" or "),
            self.found
        )
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    lexemes: &'a [Lexeme],
    idx: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.lexemes.get(self.idx).map(|l| &l.token)
    }

    fn pos(&self) -> usize {
        self.lexemes.get(self.idx).map_or(self.end, |l| l.pos)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("'{t}'"),
            None => "end of input".to_string(),
        };
        ParseError::new(
            self.pos(),
            expected.iter().map(|s| s.to_string()).collect(),
            found,
        )
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: Token) -> PResult<()> {
        if self.eat(&token) {
            Ok(())
        } else {
            Err(self.error(&[&token.describe()]))
        }
    }

    fn expect_end(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                self.idx += 1;
                Ok(name.clone())
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.product()?;
        while self.eat(&Token::Plus) {
            let rhs = self.product()?;
            acc = Term::add(acc, rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut acc = self.primary()?;
        while self.eat(&Token::Star) {
            let rhs = self.primary()?;
            acc = Term::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> PResult<Term> {
        let token = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.term_error()),
        };
        match token {
            Token::Zero => {
                self.idx += 1;
                Ok(Term::Zero)
            }
            Token::Num(n) => {
                self.idx += 1;
                Ok(Term::Num(n))
            }
            Token::Ident(name) => {
                self.idx += 1;
                Ok(Term::Var(name))
            }
            Token::Succ => {
                self.idx += 1;
                Ok(Term::succ(self.parenthesized_term()?))
            }
            Token::Quine => {
                self.idx += 1;
                Ok(Term::app(FnSymbol::Q, self.parenthesized_term()?))
            }
            Token::Prime => {
                self.idx += 1;
                Ok(Term::app(FnSymbol::F, self.parenthesized_term()?))
            }
            Token::LParen => self.parenthesized_term(),
            _ => Err(self.term_error()),
        }
    }

    fn term_error(&self) -> ParseError {
        self.error(&["'0'", "'S'", "'Q'", "'F'", "'('", "numeral", "identifier"])
    }

    fn parenthesized_term(&mut self) -> PResult<Term> {
        self.expect(Token::LParen)?;
        let t = self.term()?;
        if self.eat(&Token::RParen) {
            Ok(t)
        } else {
            Err(self.error(&["'+'", "'*'", "')'"]))
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let rel = match self.peek() {
            Some(Token::Equals) => Token::Equals,
            Some(Token::Less) => Token::Less,
            _ => return Err(self.error(&["'+'", "'*'", "'='", "'<'"])),
        };
        self.idx += 1;
        let rhs = self.term()?;
        Ok(match rel {
            Token::Equals => Formula::Eq(lhs, rhs),
            _ => Formula::Lt(lhs, rhs),
        })
    }

    /// A formula that does not start with a bare binary connective: atoms,
    /// negations, quantifiers, truth atoms, `false` and parenthesized groups.
    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Token::Tilde) => {
                self.idx += 1;
                Ok(Formula::negate(self.unary()?))
            }
            Some(Token::False) => {
                self.idx += 1;
                Ok(Formula::Falsum)
            }
            Some(Token::Truth) => {
                self.idx += 1;
                Ok(Formula::truth(self.parenthesized_term()?))
            }
            Some(Token::Forall) | Some(Token::Exists) => self.quantifier(),
            Some(Token::LParen) => {
                // `(` opens either a term on the left of a relation or a
                // formula group; try the atom reading first.
                let start = self.idx;
                let as_atom = self.atom();
                match as_atom {
                    Ok(f) => Ok(f),
                    Err(atom_err) => {
                        self.idx = start;
                        self.group().map_err(|e| e.furthest(atom_err))
                    }
                }
            }
            _ => self.atom().map_err(|e| {
                if e.pos == self.pos() {
                    e.furthest(self.error(&["'~'", "'T'", "'false'", "'forall'", "'exists'"]))
                } else {
                    e
                }
            }),
        }
    }

    fn group(&mut self) -> PResult<Formula> {
        self.expect(Token::LParen)?;
        let lhs = self.unary()?;
        let ctor: fn(Box<Formula>, Box<Formula>) -> Formula = match self.peek() {
            Some(Token::RParen) => {
                self.idx += 1;
                return Ok(lhs);
            }
            Some(Token::Amp) => Formula::And,
            Some(Token::Bar) => Formula::Or,
            Some(Token::Arrow) => Formula::Implies,
            Some(Token::DoubleArrow) => Formula::Iff,
            _ => return Err(self.error(&["'&'", "'|'", "'->'", "'<->'", "')'"])),
        };
        self.idx += 1;
        let rhs = self.unary()?;
        self.expect(Token::RParen)?;
        Ok(ctor(Box::new(lhs), Box::new(rhs)))
    }

    fn quantifier(&mut self) -> PResult<Formula> {
        let universal = self.peek() == Some(&Token::Forall);
        self.idx += 1;
        let var_pos = self.pos();
        let var = self.ident()?;
        let bound = if self.eat(&Token::Less) {
            let bound = self.term()?;
            if bound.mentions(&var) {
                return Err(ParseError::new(
                    var_pos,
                    vec![format!("bound not mentioning {var}")],
                    format!("'{var}' in its own bound"),
                ));
            }
            Some(bound)
        } else {
            None
        };
        if !self.eat(&Token::Dot) {
            let expected: &[&str] = if bound.is_some() {
                &["'+'", "'*'", "'.'"]
            } else {
                &["'<'", "'.'"]
            };
            return Err(self.error(expected));
        }
        let body = self.unary()?;
        Ok(match (universal, bound) {
            (true, None) => Formula::forall(var, body),
            (false, None) => Formula::exists(var, body),
            (true, Some(b)) => Formula::forall_below(var, b, body),
            (false, Some(b)) => Formula::exists_below(var, b, body),
        })
    }
}

fn end_of(text: &str) -> usize {
    text.len()
}

/// Parses a formula from an already-lexed token stream. `end` is the position
/// reported for errors at end of input.
pub fn parse_lexemes(lexemes: &[Lexeme], end: usize) -> Result<Node, ParseError> {
    let formula = {
        let mut p = Parser { lexemes, idx: 0, end };
        p.unary().and_then(|f| p.expect_end().map(|_| f))
    };
    let formula_err = match formula {
        Ok(f) => return Ok(Node::Formula(f)),
        Err(e) => e,
    };
    let mut p = Parser { lexemes, idx: 0, end };
    match p.term().and_then(|t| {
        if p.peek().is_some() {
            Err(p.error(&["'+'", "'*'", "end of input"]))
        } else {
            Ok(t)
        }
    }) {
        Ok(t) => Ok(Node::Term(t)),
        Err(term_err) => Err(formula_err.furthest(term_err)),
    }
}

/// Parses either a formula or a term.
pub fn parse(text: &str) -> Result<Node, ParseError> {
    let lexemes = lex(text)?;
    parse_lexemes(&lexemes, end_of(text))
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let lexemes = lex(text)?;
    let mut p = Parser {
        lexemes: &lexemes,
        idx: 0,
        end: end_of(text),
    };
    let f = p.unary()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let lexemes = lex(text)?;
    let mut p = Parser {
        lexemes: &lexemes,
        idx: 0,
        end: end_of(text),
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.error(&["'+'", "'*'", "end of input"]));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    fn two() -> Term {
        Term::succ(Term::succ(Term::Zero))
    }

    #[test]
    fn smallest_sentence() {
        assert_eq!(
            parse("0 = 0").unwrap(),
            Node::Formula(Formula::eq(Term::Zero, Term::Zero))
        );
    }

    #[test]
    fn two_plus_two() {
        assert_eq!(
            f("S(S(0)) + S(S(0)) = #4"),
            Formula::eq(Term::add(two(), two()), Term::num(4u32))
        );
        assert_eq!(
            f("(S(S(0)) + S(S(0))) = #4"),
            f("S(S(0)) + S(S(0)) = #4")
        );
    }

    #[test]
    fn negated_truth_of_quine() {
        assert_eq!(
            f("~T(Q(#12))"),
            Formula::negate(Formula::truth(Term::app(FnSymbol::Q, Term::num(12u32))))
        );
    }

    #[test]
    fn precedence_of_term_operators() {
        assert_eq!(
            parse_term("x + y * z + 0").unwrap(),
            Term::add(
                Term::add(
                    Term::var("x"),
                    Term::mul(Term::var("y"), Term::var("z"))
                ),
                Term::Zero
            )
        );
    }

    #[test]
    fn groups_and_quantifiers() {
        let phi = f("forall x < #10. exists y < #10. (x + y) = #9");
        assert_eq!(
            phi,
            Formula::forall_below(
                "x",
                Term::num(10u32),
                Formula::exists_below(
                    "y",
                    Term::num(10u32),
                    Formula::eq(Term::add(Term::var("x"), Term::var("y")), Term::num(9u32))
                )
            )
        );
        let phi = f("((x + y) = #9 & (0 = 0))");
        assert!(matches!(phi, Formula::And(..)));
        let phi = f("(forall x. x = x -> false)");
        assert!(matches!(phi, Formula::Implies(a, _) if matches!(*a, Formula::ForAll(..))));
    }

    #[test]
    fn term_or_formula() {
        assert_eq!(parse("#17").unwrap(), Node::Term(Term::num(17u32)));
        assert_eq!(
            parse("(#15 + #2)").unwrap(),
            Node::Term(Term::add(Term::num(15u32), Term::num(2u32)))
        );
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let err = parse_formula("(0 = 0 & 0 = 0").unwrap_err();
        assert_eq!(err.pos, 14);
        assert_eq!(err.found, "end of input");
        assert!(err.expected.contains(&"')'".to_string()));

        let err = parse_formula("0 = ").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(err.expected.contains(&"numeral".to_string()));

        let err = parse_formula("0 = 0 & 0 = 0").unwrap_err();
        assert_eq!(err.pos, 6);
        assert!(err.expected.contains(&"end of input".to_string()));

        let err = parse_formula("forall x < S(x). x = x").unwrap_err();
        assert_eq!(err.pos, 7);
    }
}
