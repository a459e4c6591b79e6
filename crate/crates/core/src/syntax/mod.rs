//! Abstract syntax of first-order arithmetic extended with a truth predicate.
//!
//! Terms are built from `0`, successor, `+`, `*`, variables, compact numeral
//! literals and applications of the registered function symbols `Q` and `F`.
//! Formulas add `=`, `<`, the propositional connectives, bounded and
//! unbounded quantifiers, truth atoms `T(t)` and `false`.

mod lexer;
mod parser;
mod print;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

pub use lexer::{lex, Lexeme, Token};
pub use parser::{parse, parse_formula, parse_lexemes, parse_term, ParseError};
pub use subst::{replace_term_occurrences, substitute, Occurrences, SubstError};

/// Identifiers reserved by the concrete grammar.
pub const KEYWORDS: [&str; 3] = ["forall", "exists", "false"];

/// Function symbols of the object language. Both are unary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FnSymbol {
    /// Formal quining: substitutes a code's own numeral into the formula it codes.
    Q,
    /// The prime-parameterized term family.
    F,
}

impl FnSymbol {
    pub const ALL: [FnSymbol; 2] = [FnSymbol::Q, FnSymbol::F];

    pub fn arity(self) -> usize {
        1
    }

    pub fn name(self) -> &'static str {
        match self {
            FnSymbol::Q => "Q",
            FnSymbol::F => "F",
        }
    }
}

impl fmt::Display for FnSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Var(String),
    /// Numeral literal `#n`, equal in value to the `n`-fold successor of zero.
    Num(BigUint),
    App(FnSymbol, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `forall x < bound. body`
    ForAllBelow(String, Term, Box<Formula>),
    /// `exists x < bound. body`
    ExistsBelow(String, Term, Box<Formula>),
    Truth(Term),
    Falsum,
}

/// Either syntactic category; the unit of parsing, printing and coding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Term(Term),
    Formula(Formula),
}

impl From<Term> for Node {
    fn from(t: Term) -> Self {
        Node::Term(t)
    }
}

impl From<Formula> for Node {
    fn from(f: Formula) -> Self {
        Node::Formula(f)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Term(t) => t.fmt(f),
            Node::Formula(phi) => phi.fmt(f),
        }
    }
}

/// Violation of a structural invariant of a syntax tree.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WellFormedError {
    #[error("symbol {symbol} expects {expected} argument(s), got {got}")]
    Arity {
        symbol: FnSymbol,
        expected: usize,
        got: usize,
    },
    #[error("invalid identifier {0:?}")]
    Identifier(String),
    #[error("bound of quantifier over {0} mentions {0}")]
    BoundMentionsVariable(String),
}

/// True for names the concrete grammar accepts as variables.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !KEYWORDS.contains(&name)
}

impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn num(n: impl Into<BigUint>) -> Term {
        Term::Num(n.into())
    }

    /// Unary application, the only shape the registered symbols take.
    pub fn app(symbol: FnSymbol, arg: Term) -> Term {
        Term::App(symbol, vec![arg])
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero | Term::Num(_) => true,
            Term::Var(_) => false,
            Term::Succ(t) => t.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Term::Zero | Term::Num(_) => false,
            Term::Var(v) => v == var,
            Term::Succ(t) => t.mentions(var),
            Term::Add(a, b) | Term::Mul(a, b) => a.mentions(var) || b.mentions(var),
            Term::App(_, args) => args.iter().any(|t| t.mentions(var)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::Num(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    /// Number of term nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Num(_) | Term::Var(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn check(&self) -> Result<(), WellFormedError> {
        match self {
            Term::Zero | Term::Num(_) => Ok(()),
            Term::Var(v) if is_identifier(v) => Ok(()),
            Term::Var(v) => Err(WellFormedError::Identifier(v.clone())),
            Term::Succ(t) => t.check(),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.check()?;
                b.check()
            }
            Term::App(symbol, args) => {
                if args.len() != symbol.arity() {
                    return Err(WellFormedError::Arity {
                        symbol: *symbol,
                        expected: symbol.arity(),
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(Term::check)
            }
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Lt(a, b)
    }

    // Named `negate` rather than `not` so it does not shadow `std::ops::Not`.
    pub fn negate(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::ForAll(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    pub fn forall_below(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::ForAllBelow(var.into(), bound, Box::new(body))
    }

    pub fn exists_below(var: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::ExistsBelow(var.into(), bound, Box::new(body))
    }

    pub fn truth(t: Term) -> Formula {
        Formula::Truth(t)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Truth(t) => t.collect_vars(out),
            Formula::Falsum => {}
            Formula::Not(a) => a.collect_free(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::ForAll(x, body) | Formula::Exists(x, body) => {
                let mut inner = body.free_vars();
                inner.remove(x);
                out.extend(inner);
            }
            Formula::ForAllBelow(x, bound, body) | Formula::ExistsBelow(x, bound, body) => {
                bound.collect_vars(out);
                let mut inner = body.free_vars();
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True when no `T(..)` atom occurs.
    pub fn is_truth_free(&self) -> bool {
        match self {
            Formula::Truth(_) => false,
            Formula::Eq(..) | Formula::Lt(..) | Formula::Falsum => true,
            Formula::Not(a)
            | Formula::ForAll(_, a)
            | Formula::Exists(_, a)
            | Formula::ForAllBelow(_, _, a)
            | Formula::ExistsBelow(_, _, a) => a.is_truth_free(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.is_truth_free() && b.is_truth_free(),
        }
    }

    /// Calls `f` on every term that sits directly under an atom or a
    /// quantifier bound, in left-to-right order.
    pub fn for_each_term(&self, f: &mut impl FnMut(&Term)) {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                f(a);
                f(b);
            }
            Formula::Truth(t) => f(t),
            Formula::Falsum => {}
            Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => a.for_each_term(f),
            Formula::ForAllBelow(_, bound, a) | Formula::ExistsBelow(_, bound, a) => {
                f(bound);
                a.for_each_term(f);
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.for_each_term(f);
                b.for_each_term(f);
            }
        }
    }

    /// Number of formula and term nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => 1 + a.size() + b.size(),
            Formula::Truth(t) => 1 + t.size(),
            Formula::Falsum => 1,
            Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::ForAllBelow(_, bound, a) | Formula::ExistsBelow(_, bound, a) => {
                1 + bound.size() + a.size()
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn check(&self) -> Result<(), WellFormedError> {
        match self {
            Formula::Eq(a, b) | Formula::Lt(a, b) => {
                a.check()?;
                b.check()
            }
            Formula::Truth(t) => t.check(),
            Formula::Falsum => Ok(()),
            Formula::Not(a) => a.check(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.check()?;
                b.check()
            }
            Formula::ForAll(x, a) | Formula::Exists(x, a) => {
                if !is_identifier(x) {
                    return Err(WellFormedError::Identifier(x.clone()));
                }
                a.check()
            }
            Formula::ForAllBelow(x, bound, a) | Formula::ExistsBelow(x, bound, a) => {
                if !is_identifier(x) {
                    return Err(WellFormedError::Identifier(x.clone()));
                }
                if bound.mentions(x) {
                    return Err(WellFormedError::BoundMentionsVariable(x.clone()));
                }
                bound.check()?;
                a.check()
            }
        }
    }
}
