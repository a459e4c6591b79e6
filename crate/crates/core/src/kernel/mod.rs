//! A Hilbert-style derivation checker for arithmetic with a truth predicate.
//!
//! Axioms are propositional tautologies (checked by truth table), T-scheme
//! instances `T(#c) <-> A` where `c` is the code of the sentence `A`,
//! equalities between closed terms that evaluate to the same number, and the
//! axioms of a [`Theory`]. Rules are modus ponens, term substitution and
//! universal instantiation.

mod enumerate;
mod json;
mod liar;
pub mod tautology;

use std::collections::BTreeSet;
use std::fmt;

use crate::eval::{eval_term, EvalConfig, EvalError};
use crate::godel::encode_formula;
use crate::syntax::{
    parse_formula, replace_term_occurrences, substitute, Formula, Occurrences, SubstError, Term,
};

pub use enumerate::{enumerate, enumerate_theorems, Enumeration, EnumerationError, EnumerationLimits};
pub use json::{DerivationJson, JsonError, StepExtra, StepJson};
pub use liar::{derive_liar_contradiction, t_scheme_axiom, LIAR_STEP_NAMES};
use tautology::{check_tautology, TautologyCheck};

/// Rule families, each of which can be switched off in a [`KernelConfig`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Tautology,
    TScheme,
    EvalEquality,
    TheoryAxiom,
    ModusPonens,
    TermSubstitution,
    UniversalInstantiation,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Tautology,
        Rule::TScheme,
        Rule::EvalEquality,
        Rule::TheoryAxiom,
        Rule::ModusPonens,
        Rule::TermSubstitution,
        Rule::UniversalInstantiation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Tautology => "tautology",
            Rule::TScheme => "t-scheme",
            Rule::EvalEquality => "eval-equality",
            Rule::TheoryAxiom => "theory-axiom",
            Rule::ModusPonens => "modus-ponens",
            Rule::TermSubstitution => "term-substitution",
            Rule::UniversalInstantiation => "universal-instantiation",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Tautology,
    TScheme,
    EvalEquality,
    TheoryAxiom(String),
    /// From `A` (step `antecedent`) and `A -> B` (step `implication`).
    ModusPonens { antecedent: usize, implication: usize },
    /// From `phi(s)` (step `formula`) and `s = t` (step `equality`), rewrite
    /// the selected occurrences of `s` to `t`.
    TermSubstitution {
        formula: usize,
        equality: usize,
        positions: Occurrences,
    },
    /// From `forall x. A` or `forall x < b. A`, conclude `A[witness/x]`.
    UniversalInstantiation { premise: usize, witness: Term },
}

impl Justification {
    pub fn rule(&self) -> Rule {
        match self {
            Justification::Tautology => Rule::Tautology,
            Justification::TScheme => Rule::TScheme,
            Justification::EvalEquality => Rule::EvalEquality,
            Justification::TheoryAxiom(_) => Rule::TheoryAxiom,
            Justification::ModusPonens { .. } => Rule::ModusPonens,
            Justification::TermSubstitution { .. } => Rule::TermSubstitution,
            Justification::UniversalInstantiation { .. } => Rule::UniversalInstantiation,
        }
    }

    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::ModusPonens {
                antecedent,
                implication,
            } => vec![*antecedent, *implication],
            Justification::TermSubstitution {
                formula, equality, ..
            } => vec![*formula, *equality],
            Justification::UniversalInstantiation { premise, .. } => vec![*premise],
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub conclusion: Formula,
    pub justification: Justification,
}

impl Step {
    pub fn new(conclusion: Formula, justification: Justification) -> Self {
        Step {
            conclusion,
            justification,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(steps: Vec<Step>) -> Self {
        Derivation { steps }
    }

    /// Conclusion of the last step.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.conclusion)
    }
}

/// A named list of axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub axioms: Vec<(String, Formula)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error("axiom {0} is not a sentence")]
    Open(String),
    #[error("axiom {0} is listed twice")]
    Duplicate(String),
}

impl Theory {
    pub fn new(
        name: impl Into<String>,
        axioms: Vec<(String, Formula)>,
    ) -> Result<Self, TheoryError> {
        let mut seen = BTreeSet::new();
        for (id, phi) in &axioms {
            if !seen.insert(id.as_str()) {
                return Err(TheoryError::Duplicate(id.clone()));
            }
            if !phi.is_sentence() {
                return Err(TheoryError::Open(id.clone()));
            }
        }
        Ok(Theory {
            name: name.into(),
            axioms,
        })
    }

    pub fn empty() -> Self {
        Theory {
            name: "empty".into(),
            axioms: Vec::new(),
        }
    }

    pub fn axiom(&self, id: &str) -> Option<&Formula> {
        self.axioms.iter().find(|(a, _)| a == id).map(|(_, f)| f)
    }

    /// A finite fragment of arithmetic: equality, successor, addition and
    /// multiplication facts with every quantifier bounded by 4, so each
    /// axiom is decidable by enumeration.
    pub fn toy_arithmetic() -> Self {
        let axioms = [
            ("refl", "forall x < #4. x = x"),
            ("sym", "forall x < #4. forall y < #4. (x = y -> y = x)"),
            ("succ-inj", "forall x < #4. forall y < #4. (S(x) = S(y) -> x = y)"),
            ("zero-not-succ", "forall x < #4. ~S(x) = 0"),
            ("add-zero", "forall x < #4. (x + 0) = x"),
            ("add-succ", "forall x < #4. forall y < #4. (x + S(y)) = S((x + y))"),
            ("mul-zero", "forall x < #4. (x * 0) = 0"),
            ("mul-succ", "forall x < #4. forall y < #4. (x * S(y)) = ((x * y) + x)"),
        ]
        .into_iter()
        .map(|(id, text)| {
            let phi = parse_formula(text).expect("toy axioms parse");
            (id.to_string(), phi)
        })
        .collect();
        Theory::new("toy-arithmetic", axioms).expect("toy axioms are sentences")
    }
}

/// Which rule families the checker accepts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelConfig {
    disabled: BTreeSet<Rule>,
}

impl KernelConfig {
    pub fn disable(mut self, rule: Rule) -> Self {
        self.disabled.insert(rule);
        self
    }

    pub fn allows(&self, rule: Rule) -> bool {
        !self.disabled.contains(&rule)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("rule {0} is disabled")]
    RuleDisabled(Rule),
    #[error("premise {0} does not refer to an earlier step")]
    DanglingPremise(usize),
    #[error("not a tautology; falsified when exactly these atoms are true: {0:?}")]
    NotATautology(Vec<String>),
    #[error("{0} propositional atoms exceed the truth-table limit")]
    TooManyAtoms(usize),
    #[error("not of the form T(#c) <-> A with c the code of the sentence A")]
    NotTSchemeInstance,
    #[error("not an equality")]
    NotAnEquality,
    #[error("sides evaluate to {left} and {right}")]
    ValuesDiffer { left: String, right: String },
    #[error("no axiom named {0}")]
    UnknownAxiom(String),
    #[error("conclusion differs from axiom {0}")]
    AxiomMismatch(String),
    #[error("premise {0} is not an implication")]
    NotAnImplication(usize),
    #[error("antecedent of step {implication} is not the conclusion of step {antecedent}")]
    AntecedentMismatch { antecedent: usize, implication: usize },
    #[error("conclusion is not the consequent of step {0}")]
    ConsequentMismatch(usize),
    #[error("premise {0} is not an equality")]
    PremiseNotAnEquality(usize),
    #[error("conclusion is not the result of the substitution, expected {0}")]
    SubstitutionMismatch(String),
    #[error("premise {0} is not universally quantified")]
    NotUniversal(usize),
    #[error("witness {witness} is not below the bound {bound}")]
    WitnessOutOfRange { witness: String, bound: String },
    #[error("conclusion is not the instance, expected {0}")]
    InstanceMismatch(String),
    #[error(transparent)]
    Subst(#[from] SubstError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The first step that failed to check.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("step {step} ({rule}): {reason}")]
pub struct CheckError {
    pub step: usize,
    pub rule: Rule,
    pub reason: StepError,
}

struct Checker<'a> {
    theory: &'a Theory,
    eval: &'a EvalConfig,
    rules: &'a KernelConfig,
}

impl Checker<'_> {
    fn premise<'d>(&self, d: &'d Derivation, at: usize, index: usize) -> Result<&'d Formula, StepError> {
        if index < at {
            Ok(&d.steps[index].conclusion)
        } else {
            Err(StepError::DanglingPremise(index))
        }
    }

    fn step(&self, d: &Derivation, at: usize) -> Result<(), StepError> {
        let step = &d.steps[at];
        let rule = step.justification.rule();
        if !self.rules.allows(rule) {
            return Err(StepError::RuleDisabled(rule));
        }
        let conclusion = &step.conclusion;
        match &step.justification {
            Justification::Tautology => match check_tautology(conclusion) {
                TautologyCheck::Tautology => Ok(()),
                TautologyCheck::TooManyAtoms(n) => Err(StepError::TooManyAtoms(n)),
                TautologyCheck::Falsifiable(atoms) => Err(StepError::NotATautology(
                    atoms.iter().map(Formula::to_string).collect(),
                )),
            },
            Justification::TScheme => {
                let Formula::Iff(lhs, sentence) = conclusion else {
                    return Err(StepError::NotTSchemeInstance);
                };
                if !sentence.is_sentence() || sentence.check().is_err() {
                    return Err(StepError::NotTSchemeInstance);
                }
                let expected = Formula::truth(encode_formula(sentence).numeral());
                if **lhs == expected {
                    Ok(())
                } else {
                    Err(StepError::NotTSchemeInstance)
                }
            }
            Justification::EvalEquality => {
                let Formula::Eq(s, t) = conclusion else {
                    return Err(StepError::NotAnEquality);
                };
                let left = eval_term(s, self.eval)?;
                let right = eval_term(t, self.eval)?;
                if left == right {
                    Ok(())
                } else {
                    Err(StepError::ValuesDiffer {
                        left: left.to_string(),
                        right: right.to_string(),
                    })
                }
            }
            Justification::TheoryAxiom(id) => {
                let axiom = self
                    .theory
                    .axiom(id)
                    .ok_or_else(|| StepError::UnknownAxiom(id.clone()))?;
                if axiom == conclusion {
                    Ok(())
                } else {
                    Err(StepError::AxiomMismatch(id.clone()))
                }
            }
            Justification::ModusPonens {
                antecedent,
                implication,
            } => {
                let a = self.premise(d, at, *antecedent)?;
                let imp = self.premise(d, at, *implication)?;
                let Formula::Implies(lhs, rhs) = imp else {
                    return Err(StepError::NotAnImplication(*implication));
                };
                if **lhs != *a {
                    return Err(StepError::AntecedentMismatch {
                        antecedent: *antecedent,
                        implication: *implication,
                    });
                }
                if **rhs != *conclusion {
                    return Err(StepError::ConsequentMismatch(*implication));
                }
                Ok(())
            }
            Justification::TermSubstitution {
                formula,
                equality,
                positions,
            } => {
                let phi = self.premise(d, at, *formula)?;
                let Formula::Eq(s, t) = self.premise(d, at, *equality)? else {
                    return Err(StepError::PremiseNotAnEquality(*equality));
                };
                let (expected, _) = replace_term_occurrences(phi, s, t, positions)?;
                if expected == *conclusion {
                    Ok(())
                } else {
                    Err(StepError::SubstitutionMismatch(expected.to_string()))
                }
            }
            Justification::UniversalInstantiation { premise, witness } => {
                let expected = match self.premise(d, at, *premise)? {
                    Formula::ForAll(x, body) => substitute(body, x, witness)?,
                    Formula::ForAllBelow(x, bound, body) => {
                        let expected = substitute(body, x, witness)?;
                        let w = eval_term(witness, self.eval)?;
                        let b = eval_term(bound, self.eval)?;
                        if w >= b {
                            return Err(StepError::WitnessOutOfRange {
                                witness: w.to_string(),
                                bound: b.to_string(),
                            });
                        }
                        expected
                    }
                    _ => return Err(StepError::NotUniversal(*premise)),
                };
                if expected == *conclusion {
                    Ok(())
                } else {
                    Err(StepError::InstanceMismatch(expected.to_string()))
                }
            }
        }
    }
}

/// Checks every step with all rule families enabled.
pub fn check_derivation(
    d: &Derivation,
    theory: &Theory,
    config: &EvalConfig,
) -> Result<(), CheckError> {
    check_derivation_with(d, theory, config, &KernelConfig::default())
}

/// Checks every step in order and reports the first failure.
pub fn check_derivation_with(
    d: &Derivation,
    theory: &Theory,
    config: &EvalConfig,
    rules: &KernelConfig,
) -> Result<(), CheckError> {
    let checker = Checker {
        theory,
        eval: config,
        rules,
    };
    for (at, step) in d.steps.iter().enumerate() {
        checker.step(d, at).map_err(|reason| CheckError {
            step: at,
            rule: step.justification.rule(),
            reason,
        })?;
    }
    Ok(())
}

/// Whether `d` checks and its last step concludes `goal`.
pub fn proves(
    d: &Derivation,
    goal: &Formula,
    theory: &Theory,
    config: &EvalConfig,
    rules: &KernelConfig,
) -> bool {
    d.conclusion() == Some(goal) && check_derivation_with(d, theory, config, rules).is_ok()
}
