//! Recursive truth evaluation of sentences in the standard model of
//! arithmetic.
//!
//! Connectives follow the strong Kleene tables. Quantifiers over values above
//! the configured search bound cannot be settled by enumeration, so they
//! report [`Verdict::Unknown`] unless a witness or counterexample turns up
//! below the bound. Truth atoms are not interpreted here at all.

use std::fmt;
use std::ops::Not;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::quine::FunctionRegistry;
use crate::syntax::{FnSymbol, Formula, Term};

pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    /// A quantifier ranged past the search bound without being settled.
    BoundExceeded,
    /// The verdict hinges on a `T(..)` atom.
    TruthAtom,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::BoundExceeded => "bound-exceeded",
            UnknownReason::TruthAtom => "truth-atom",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    TrueInN,
    FalseInN,
    Unknown(UnknownReason),
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::TrueInN
        } else {
            Verdict::FalseInN
        }
    }
}

impl Not for Verdict {
    type Output = Verdict;

    fn not(self) -> Verdict {
        match self {
            Verdict::TrueInN => Verdict::FalseInN,
            Verdict::FalseInN => Verdict::TrueInN,
            u => u,
        }
    }
}

impl Verdict {
    pub fn is_known(self) -> bool {
        !matches!(self, Verdict::Unknown(_))
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::FalseInN, _) | (_, Verdict::FalseInN) => Verdict::FalseInN,
            (u @ Verdict::Unknown(_), _) | (_, u @ Verdict::Unknown(_)) => u,
            _ => Verdict::TrueInN,
        }
    }

    pub fn or(self, other: Verdict) -> Verdict {
        (!self).and(!other).not()
    }

    pub fn implies(self, other: Verdict) -> Verdict {
        (!self).or(other)
    }

    pub fn iff(self, other: Verdict) -> Verdict {
        match (self, other) {
            (u @ Verdict::Unknown(_), _) | (_, u @ Verdict::Unknown(_)) => u,
            (a, b) => Verdict::from(a == b),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::TrueInN => "true",
            Verdict::FalseInN => "false",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn reason(self) -> Option<UnknownReason> {
        match self {
            Verdict::Unknown(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unknown(r) => write!(f, "unknown ({r})"),
            v => f.write_str(v.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("free variables {0:?}: only closed terms and sentences can be evaluated")]
    Open(Vec<String>),
    #[error("function symbol {0} has no registered interpretation")]
    Unregistered(FnSymbol),
    #[error("function symbol {symbol} expects {expected} argument(s), got {got}")]
    Arity {
        symbol: FnSymbol,
        expected: usize,
        got: usize,
    },
    #[error("quantifier search bound must be at least 1")]
    ZeroBound,
}

#[derive(Clone, Debug)]
pub struct EvalConfig {
    search_bound: u64,
    pub functions: FunctionRegistry,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            search_bound: DEFAULT_SEARCH_BOUND,
            functions: FunctionRegistry::standard(),
        }
    }
}

impl EvalConfig {
    pub fn new(search_bound: u64, functions: FunctionRegistry) -> Result<Self, EvalError> {
        if search_bound == 0 {
            return Err(EvalError::ZeroBound);
        }
        Ok(EvalConfig {
            search_bound,
            functions,
        })
    }

    /// Standard function symbols with the given bound.
    pub fn with_bound(search_bound: u64) -> Result<Self, EvalError> {
        Self::new(search_bound, FunctionRegistry::standard())
    }

    /// Quantifiers are searched over `0..=search_bound`.
    pub fn search_bound(&self) -> u64 {
        self.search_bound
    }
}

/// How `T(t)` atoms are treated.
pub(crate) enum TruthHook<'a> {
    /// Unknown, without looking at `t`.
    Opaque,
    /// Ask the callback about the value of `t`.
    Lookup(&'a dyn Fn(&BigUint) -> Verdict),
}

pub(crate) struct Evaluator<'a> {
    config: &'a EvalConfig,
    truth: TruthHook<'a>,
    env: Vec<(String, BigUint)>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(config: &'a EvalConfig, truth: TruthHook<'a>) -> Self {
        Evaluator {
            config,
            truth,
            env: Vec::new(),
        }
    }

    pub(crate) fn term(&self, t: &Term) -> Result<BigUint, EvalError> {
        Ok(match t {
            Term::Zero => BigUint::zero(),
            Term::Num(n) => n.clone(),
            Term::Succ(a) => self.term(a)? + BigUint::one(),
            Term::Add(a, b) => self.term(a)? + self.term(b)?,
            Term::Mul(a, b) => self.term(a)? * self.term(b)?,
            Term::Var(v) => self
                .env
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|(_, value)| value.clone())
                .ok_or_else(|| EvalError::Open(vec![v.clone()]))?,
            Term::App(symbol, args) => {
                let def = self
                    .config
                    .functions
                    .get(*symbol)
                    .ok_or(EvalError::Unregistered(*symbol))?;
                if def.arity != args.len() {
                    return Err(EvalError::Arity {
                        symbol: *symbol,
                        expected: def.arity,
                        got: args.len(),
                    });
                }
                let values = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<Vec<_>, _>>()?;
                def.apply(&values)
            }
        })
    }

    pub(crate) fn formula(&mut self, phi: &Formula) -> Result<Verdict, EvalError> {
        Ok(match phi {
            Formula::Eq(a, b) => Verdict::from(self.term(a)? == self.term(b)?),
            Formula::Lt(a, b) => Verdict::from(self.term(a)? < self.term(b)?),
            Formula::Falsum => Verdict::FalseInN,
            Formula::Truth(t) => match self.truth {
                TruthHook::Opaque => Verdict::Unknown(UnknownReason::TruthAtom),
                TruthHook::Lookup(lookup) => {
                    let v = self.term(t)?;
                    lookup(&v)
                }
            },
            Formula::Not(a) => !self.formula(a)?,
            Formula::And(a, b) => {
                let left = self.formula(a)?;
                if left == Verdict::FalseInN {
                    return Ok(left);
                }
                left.and(self.formula(b)?)
            }
            Formula::Or(a, b) => {
                let left = self.formula(a)?;
                if left == Verdict::TrueInN {
                    return Ok(left);
                }
                left.or(self.formula(b)?)
            }
            Formula::Implies(a, b) => {
                let left = self.formula(a)?;
                if left == Verdict::FalseInN {
                    return Ok(Verdict::TrueInN);
                }
                left.implies(self.formula(b)?)
            }
            Formula::Iff(a, b) => {
                let left = self.formula(a)?;
                left.iff(self.formula(b)?)
            }
            Formula::ForAll(x, body) => self.quantify(true, x, None, body)?,
            Formula::Exists(x, body) => !self.quantify(false, x, None, body)?,
            Formula::ForAllBelow(x, bound, body) => {
                let limit = self.term(bound)?;
                self.quantify(true, x, Some(limit), body)?
            }
            Formula::ExistsBelow(x, bound, body) => {
                let limit = self.term(bound)?;
                !self.quantify(false, x, Some(limit), body)?
            }
        })
    }

    /// Folds `body` over `x` in `0..limit` (or `0..=search_bound` when the
    /// range is unbounded or too large) as a conjunction. Existentials pass
    /// `universal = false`: the body is negated here and the caller negates
    /// the result.
    fn quantify(
        &mut self,
        universal: bool,
        x: &str,
        limit: Option<BigUint>,
        body: &Formula,
    ) -> Result<Verdict, EvalError> {
        let cap = self.config.search_bound;
        let (count, truncated) = match limit.as_ref().map(|l| l.to_u64()) {
            Some(Some(l)) if l <= cap => (l, false),
            _ => (cap + 1, true),
        };
        let mut acc = Verdict::TrueInN;
        self.env.push((x.to_string(), BigUint::zero()));
        let mut result = Ok(());
        for v in 0..count {
            self.env.last_mut().unwrap().1 = BigUint::from(v);
            let r = match self.formula(body) {
                Ok(r) => r,
                Err(e) => {
                    result = Err(e);
                    break;
                }
            };
            let r = if universal { r } else { !r };
            if r == Verdict::FalseInN {
                acc = r;
                break;
            }
            if acc == Verdict::TrueInN {
                acc = r;
            }
        }
        self.env.pop();
        result?;
        if truncated && acc == Verdict::TrueInN {
            acc = Verdict::Unknown(UnknownReason::BoundExceeded);
        }
        Ok(acc)
    }
}

/// Errors on function symbols that are missing from the registry or applied
/// to the wrong number of arguments, anywhere in `phi`.
pub(crate) fn check_symbols(phi: &Formula, functions: &FunctionRegistry) -> Result<(), EvalError> {
    fn walk(t: &Term, functions: &FunctionRegistry) -> Result<(), EvalError> {
        match t {
            Term::Zero | Term::Num(_) | Term::Var(_) => Ok(()),
            Term::Succ(a) => walk(a, functions),
            Term::Add(a, b) | Term::Mul(a, b) => {
                walk(a, functions)?;
                walk(b, functions)
            }
            Term::App(symbol, args) => {
                let def = functions
                    .get(*symbol)
                    .ok_or(EvalError::Unregistered(*symbol))?;
                if def.arity != args.len() {
                    return Err(EvalError::Arity {
                        symbol: *symbol,
                        expected: def.arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| walk(a, functions))
            }
        }
    }
    let mut result = Ok(());
    phi.for_each_term(&mut |t| {
        if result.is_ok() {
            result = walk(t, functions);
        }
    });
    result
}

/// Value of a closed term.
pub fn eval_term(t: &Term, config: &EvalConfig) -> Result<BigUint, EvalError> {
    let mut vars = Default::default();
    t.collect_vars(&mut vars);
    if !vars.is_empty() {
        return Err(EvalError::Open(vars.into_iter().collect()));
    }
    Evaluator::new(config, TruthHook::Opaque).term(t)
}

pub(crate) fn require_sentence(phi: &Formula) -> Result<(), EvalError> {
    let free = phi.free_vars();
    if free.is_empty() {
        Ok(())
    } else {
        Err(EvalError::Open(free.into_iter().collect()))
    }
}

/// Truth value of a sentence in the natural numbers. `T(..)` atoms are
/// `Unknown(TruthAtom)`.
pub fn eval_sentence(phi: &Formula, config: &EvalConfig) -> Result<Verdict, EvalError> {
    require_sentence(phi)?;
    check_symbols(phi, &config.functions)?;
    Evaluator::new(config, TruthHook::Opaque).formula(phi)
}
