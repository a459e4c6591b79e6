//! A JSON form of derivations, with formulas and terms as concrete syntax.
//!
//! ```json
//! {"steps": [
//!   {"conclusion": "0 = 0", "rule": "eval-equality", "premises": []},
//!   {"conclusion": "(0 = 0 -> ~false)", "rule": "tautology", "premises": []},
//!   {"conclusion": "~false", "rule": "modus-ponens", "premises": [0, 1]}
//! ]}
//! ```
//!
//! Premise order is `[antecedent, implication]` for modus ponens and
//! `[formula, equality]` for term substitution.

use serde::{Deserialize, Serialize};

use crate::syntax::{parse_formula, parse_term, Occurrences, ParseError};

use super::{Derivation, Justification, Rule, Step};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepExtra {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Occurrences>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl StepExtra {
    fn is_empty(&self) -> bool {
        *self == StepExtra::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub conclusion: String,
    pub rule: String,
    #[serde(default)]
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "StepExtra::is_empty")]
    pub extra: StepExtra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub steps: Vec<StepJson>,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("step {step}: {source}")]
    Parse { step: usize, source: ParseError },
    #[error("step {step}: unknown rule {rule:?}")]
    UnknownRule { step: usize, rule: String },
    #[error("step {step}: {rule} takes {expected} premises, found {found}")]
    PremiseCount {
        step: usize,
        rule: Rule,
        expected: usize,
        found: usize,
    },
    #[error("step {step}: {rule} needs extra.{field}")]
    MissingField {
        step: usize,
        rule: Rule,
        field: &'static str,
    },
}

impl From<&Derivation> for DerivationJson {
    fn from(d: &Derivation) -> Self {
        let steps = d
            .steps
            .iter()
            .map(|step| {
                let mut extra = StepExtra::default();
                match &step.justification {
                    Justification::TheoryAxiom(id) => extra.axiom = Some(id.clone()),
                    Justification::TermSubstitution { positions, .. } => {
                        extra.positions = Some(positions.clone())
                    }
                    Justification::UniversalInstantiation { witness, .. } => {
                        extra.witness = Some(witness.to_string())
                    }
                    _ => {}
                }
                StepJson {
                    conclusion: step.conclusion.to_string(),
                    rule: step.justification.rule().name().to_string(),
                    premises: step.justification.premises(),
                    extra,
                }
            })
            .collect();
        DerivationJson { steps }
    }
}

impl DerivationJson {
    pub fn from_json(text: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivations serialize")
    }

    pub fn to_derivation(&self) -> Result<Derivation, JsonError> {
        self.steps
            .iter()
            .enumerate()
            .map(|(at, s)| step_from_json(at, s))
            .collect::<Result<Vec<_>, _>>()
            .map(Derivation::new)
    }
}

fn step_from_json(at: usize, s: &StepJson) -> Result<Step, JsonError> {
    let conclusion = parse_formula(&s.conclusion).map_err(|source| JsonError::Parse { step: at, source })?;
    let rule = Rule::from_name(&s.rule).ok_or_else(|| JsonError::UnknownRule {
        step: at,
        rule: s.rule.clone(),
    })?;
    let expected = match rule {
        Rule::ModusPonens | Rule::TermSubstitution => 2,
        Rule::UniversalInstantiation => 1,
        _ => 0,
    };
    if s.premises.len() != expected {
        return Err(JsonError::PremiseCount {
            step: at,
            rule,
            expected,
            found: s.premises.len(),
        });
    }
    let missing = |field| JsonError::MissingField {
        step: at,
        rule,
        field,
    };
    let p = &s.premises;
    let justification = match rule {
        Rule::Tautology => Justification::Tautology,
        Rule::TScheme => Justification::TScheme,
        Rule::EvalEquality => Justification::EvalEquality,
        Rule::TheoryAxiom => {
            Justification::TheoryAxiom(s.extra.axiom.clone().ok_or_else(|| missing("axiom"))?)
        }
        Rule::ModusPonens => Justification::ModusPonens {
            antecedent: p[0],
            implication: p[1],
        },
        Rule::TermSubstitution => Justification::TermSubstitution {
            formula: p[0],
            equality: p[1],
            positions: s.extra.positions.clone().unwrap_or_else(Occurrences::all),
        },
        Rule::UniversalInstantiation => {
            let text = s.extra.witness.as_deref().ok_or_else(|| missing("witness"))?;
            let witness = parse_term(text).map_err(|source| JsonError::Parse { step: at, source })?;
            Justification::UniversalInstantiation {
                premise: p[0],
                witness,
            }
        }
    };
    Ok(Step::new(conclusion, justification))
}
