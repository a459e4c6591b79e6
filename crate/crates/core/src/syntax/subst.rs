use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("term {0} is not closed")]
    OpenTerm(String),
    #[error("term {0} does not occur")]
    NotFound(String),
    #[error("occurrence {index} requested but only {total} exist")]
    NoSuchOccurrence { index: usize, total: usize },
}

/// Which occurrences of a term to rewrite, counted left to right from 0 in
/// printed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Occurrences {
    All(AllMarker),
    Positions(BTreeSet<usize>),
}

/// Serialized as the string `"all"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllMarker {
    All,
}

impl Occurrences {
    pub fn all() -> Self {
        Occurrences::All(AllMarker::All)
    }

    pub fn at(positions: impl IntoIterator<Item = usize>) -> Self {
        Occurrences::Positions(positions.into_iter().collect())
    }

    pub fn none() -> Self {
        Occurrences::Positions(BTreeSet::new())
    }

    fn is_empty(&self) -> bool {
        matches!(self, Occurrences::Positions(p) if p.is_empty())
    }

    fn selects(&self, index: usize) -> bool {
        match self {
            Occurrences::All(_) => true,
            Occurrences::Positions(p) => p.contains(&index),
        }
    }
}

fn require_closed(t: &Term) -> Result<(), SubstError> {
    if t.is_closed() {
        Ok(())
    } else {
        Err(SubstError::OpenTerm(t.to_string()))
    }
}

fn subst_term(t: &Term, var: &str, by: &Term) -> Term {
    match t {
        Term::Var(v) if v == var => by.clone(),
        Term::Zero | Term::Num(_) | Term::Var(_) => t.clone(),
        Term::Succ(a) => Term::succ(subst_term(a, var, by)),
        Term::Add(a, b) => Term::add(subst_term(a, var, by), subst_term(b, var, by)),
        Term::Mul(a, b) => Term::mul(subst_term(a, var, by), subst_term(b, var, by)),
        Term::App(sym, args) => Term::App(
            *sym,
            args.iter().map(|a| subst_term(a, var, by)).collect(),
        ),
    }
}

fn subst_formula(phi: &Formula, var: &str, by: &Term) -> Formula {
    let rec = |f: &Formula| Box::new(subst_formula(f, var, by));
    match phi {
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, var, by), subst_term(b, var, by)),
        Formula::Lt(a, b) => Formula::Lt(subst_term(a, var, by), subst_term(b, var, by)),
        Formula::Truth(t) => Formula::Truth(subst_term(t, var, by)),
        Formula::Falsum => Formula::Falsum,
        Formula::Not(a) => Formula::Not(rec(a)),
        Formula::And(a, b) => Formula::And(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
        Formula::ForAll(x, _) | Formula::Exists(x, _) if x == var => phi.clone(),
        Formula::ForAll(x, a) => Formula::ForAll(x.clone(), rec(a)),
        Formula::Exists(x, a) => Formula::Exists(x.clone(), rec(a)),
        // The bound lives in the enclosing scope even when `x` shadows `var`.
        Formula::ForAllBelow(x, bound, a) => {
            let body = if x == var { a.clone() } else { rec(a) };
            Formula::ForAllBelow(x.clone(), subst_term(bound, var, by), body)
        }
        Formula::ExistsBelow(x, bound, a) => {
            let body = if x == var { a.clone() } else { rec(a) };
            Formula::ExistsBelow(x.clone(), subst_term(bound, var, by), body)
        }
    }
}

/// Replaces every free occurrence of `var` in `phi` by the closed term `by`.
pub fn substitute(phi: &Formula, var: &str, by: &Term) -> Result<Formula, SubstError> {
    require_closed(by)?;
    Ok(subst_formula(phi, var, by))
}

struct Replacer<'a> {
    from: &'a Term,
    to: &'a Term,
    which: &'a Occurrences,
    seen: usize,
    replaced: usize,
}

impl Replacer<'_> {
    fn term(&mut self, t: &Term) -> Term {
        if t == self.from {
            let index = self.seen;
            self.seen += 1;
            if self.which.selects(index) {
                self.replaced += 1;
                return self.to.clone();
            }
            // A term never properly contains itself, so there is nothing
            // further to find below an occurrence.
            return t.clone();
        }
        match t {
            Term::Zero | Term::Num(_) | Term::Var(_) => t.clone(),
            Term::Succ(a) => Term::succ(self.term(a)),
            Term::Add(a, b) => {
                let a = self.term(a);
                Term::add(a, self.term(b))
            }
            Term::Mul(a, b) => {
                let a = self.term(a);
                Term::mul(a, self.term(b))
            }
            Term::App(sym, args) => Term::App(*sym, args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn formula(&mut self, phi: &Formula) -> Formula {
        match phi {
            Formula::Eq(a, b) => {
                let a = self.term(a);
                Formula::Eq(a, self.term(b))
            }
            Formula::Lt(a, b) => {
                let a = self.term(a);
                Formula::Lt(a, self.term(b))
            }
            Formula::Truth(t) => Formula::Truth(self.term(t)),
            Formula::Falsum => Formula::Falsum,
            Formula::Not(a) => Formula::negate(self.formula(a)),
            Formula::And(a, b) => {
                let a = self.formula(a);
                Formula::and(a, self.formula(b))
            }
            Formula::Or(a, b) => {
                let a = self.formula(a);
                Formula::or(a, self.formula(b))
            }
            Formula::Implies(a, b) => {
                let a = self.formula(a);
                Formula::implies(a, self.formula(b))
            }
            Formula::Iff(a, b) => {
                let a = self.formula(a);
                Formula::iff(a, self.formula(b))
            }
            Formula::ForAll(x, a) => Formula::forall(x.clone(), self.formula(a)),
            Formula::Exists(x, a) => Formula::exists(x.clone(), self.formula(a)),
            Formula::ForAllBelow(x, bound, a) => {
                let bound = self.term(bound);
                Formula::forall_below(x.clone(), bound, self.formula(a))
            }
            Formula::ExistsBelow(x, bound, a) => {
                let bound = self.term(bound);
                Formula::exists_below(x.clone(), bound, self.formula(a))
            }
        }
    }
}

/// Rewrites the selected occurrences of the closed term `from` in `phi` to the
/// closed term `to`. Returns the new formula and the number of rewrites.
pub fn replace_term_occurrences(
    phi: &Formula,
    from: &Term,
    to: &Term,
    which: &Occurrences,
) -> Result<(Formula, usize), SubstError> {
    require_closed(from)?;
    require_closed(to)?;
    let mut r = Replacer {
        from,
        to,
        which,
        seen: 0,
        replaced: 0,
    };
    let out = r.formula(phi);
    if r.seen == 0 && !which.is_empty() {
        return Err(SubstError::NotFound(from.to_string()));
    }
    if let Occurrences::Positions(p) = which {
        if let Some(&index) = p.iter().find(|&&i| i >= r.seen) {
            return Err(SubstError::NoSuchOccurrence {
                index,
                total: r.seen,
            });
        }
    }
    Ok((out, r.replaced))
}
