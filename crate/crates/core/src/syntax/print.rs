//! Canonical concrete syntax. Binary term operators and binary connectives
//! are always parenthesized, so the output reparses to the same tree.

use std::fmt;

use super::{Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Succ(t) => write!(f, "S({t})"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Mul(a, b) => write!(f, "({a} * {b})"),
            Term::Var(v) => f.write_str(v),
            Term::Num(n) => write!(f, "#{n}"),
            Term::App(symbol, args) => {
                write!(f, "{symbol}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Lt(a, b) => write!(f, "{a} < {b}"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            Formula::ForAll(x, a) => write!(f, "forall {x}. {a}"),
            Formula::Exists(x, a) => write!(f, "exists {x}. {a}"),
            Formula::ForAllBelow(x, t, a) => write!(f, "forall {x} < {t}. {a}"),
            Formula::ExistsBelow(x, t, a) => write!(f, "exists {x} < {t}. {a}"),
            Formula::Truth(t) => write!(f, "T({t})"),
            Formula::Falsum => f.write_str("false"),
        }
    }
}
