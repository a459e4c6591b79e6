//! Breadth-first enumeration of the theorems of a theory up to a given
//! inference depth.
//!
//! Depth 0 holds the theory's axioms and instances of a fixed list of
//! tautology templates. Each further layer adds every conclusion of modus
//! ponens or universal instantiation whose premises are already present.

use std::collections::HashMap;

use crate::eval::{eval_term, EvalConfig, EvalError};
use crate::syntax::{parse_formula, substitute, Formula, Term};

use super::{Derivation, Justification, Step, Theory};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("more than {0} formulas generated")]
    ResourceCap(usize),
    #[error("axiom {0} mentions the truth predicate")]
    AxiomNotTruthFree(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug)]
pub struct EnumerationLimits {
    /// Ceiling on the number of distinct theorems kept.
    pub max_formulas: usize,
    /// Terms tried for universal instantiation.
    pub witnesses: Vec<Term>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_formulas: 200_000,
            witnesses: (0u32..=3).map(Term::num).collect(),
        }
    }
}

#[derive(Clone, Debug)]
enum Origin {
    Axiom(String),
    Tautology,
    ModusPonens { antecedent: Formula, implication: Formula },
    Instantiation { premise: Formula, witness: Term },
}

#[derive(Clone, Debug)]
struct Entry {
    depth: usize,
    origin: Origin,
}

/// The theorems found, with enough provenance to rebuild a derivation of
/// each one.
#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    order: Vec<Formula>,
    entries: HashMap<Formula, Entry>,
}

/// Instances of these templates, with `P` and `R` drawn from the theory's
/// axioms plus `0 = 0` and `0 = S(0)`, are the depth-0 tautologies.
fn templates() -> [fn(&Formula, &Formula) -> Formula; 5] {
    [
        |p, _| Formula::implies(p.clone(), p.clone()),
        |p, r| Formula::implies(p.clone(), Formula::implies(r.clone(), p.clone())),
        |p, r| Formula::implies(Formula::and(p.clone(), r.clone()), p.clone()),
        |p, r| Formula::implies(p.clone(), Formula::or(p.clone(), r.clone())),
        |p, _| Formula::negate(Formula::and(p.clone(), Formula::negate(p.clone()))),
    ]
}

impl Enumeration {
    fn insert(&mut self, phi: Formula, depth: usize, origin: Origin, cap: usize) -> Result<(), EnumerationError> {
        if self.entries.contains_key(&phi) {
            return Ok(());
        }
        if self.order.len() >= cap {
            return Err(EnumerationError::ResourceCap(cap));
        }
        self.entries.insert(phi.clone(), Entry { depth, origin });
        self.order.push(phi);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, phi: &Formula) -> bool {
        self.entries.contains_key(phi)
    }

    /// Inference depth at which `phi` first appeared.
    pub fn depth_of(&self, phi: &Formula) -> Option<usize> {
        self.entries.get(phi).map(|e| e.depth)
    }

    /// All theorems, sorted by printed form.
    pub fn theorems(&self) -> Vec<Formula> {
        let mut keyed: Vec<(String, &Formula)> =
            self.order.iter().map(|f| (f.to_string(), f)).collect();
        keyed.sort();
        keyed.into_iter().map(|(_, f)| f.clone()).collect()
    }

    /// A derivation of `phi` whose steps come from the recorded provenance.
    pub fn derivation(&self, phi: &Formula) -> Option<Derivation> {
        let mut steps = Vec::new();
        let mut index = HashMap::new();
        self.emit(phi, &mut steps, &mut index)?;
        Some(Derivation::new(steps))
    }

    fn emit(
        &self,
        phi: &Formula,
        steps: &mut Vec<Step>,
        index: &mut HashMap<Formula, usize>,
    ) -> Option<usize> {
        if let Some(&i) = index.get(phi) {
            return Some(i);
        }
        let justification = match &self.entries.get(phi)?.origin {
            Origin::Axiom(id) => Justification::TheoryAxiom(id.clone()),
            Origin::Tautology => Justification::Tautology,
            Origin::ModusPonens {
                antecedent,
                implication,
            } => {
                let antecedent = self.emit(antecedent, steps, index)?;
                let implication = self.emit(implication, steps, index)?;
                Justification::ModusPonens {
                    antecedent,
                    implication,
                }
            }
            Origin::Instantiation { premise, witness } => {
                let premise = self.emit(premise, steps, index)?;
                Justification::UniversalInstantiation {
                    premise,
                    witness: witness.clone(),
                }
            }
        };
        steps.push(Step::new(phi.clone(), justification));
        index.insert(phi.clone(), steps.len() - 1);
        Some(steps.len() - 1)
    }
}

/// Enumerates theorems of `theory` up to `max_depth` inference layers.
pub fn enumerate(
    theory: &Theory,
    max_depth: usize,
    config: &EvalConfig,
    limits: &EnumerationLimits,
) -> Result<Enumeration, EnumerationError> {
    for (id, phi) in &theory.axioms {
        if !phi.is_truth_free() {
            return Err(EnumerationError::AxiomNotTruthFree(id.clone()));
        }
    }
    let cap = limits.max_formulas;
    let mut out = Enumeration::default();
    for (id, phi) in &theory.axioms {
        out.insert(phi.clone(), 0, Origin::Axiom(id.clone()), cap)?;
    }

    let mut pool: Vec<Formula> = theory.axioms.iter().map(|(_, f)| f.clone()).collect();
    for extra in ["0 = 0", "0 = S(0)"] {
        pool.push(parse_formula(extra).expect("pool formulas parse"));
    }
    for template in templates() {
        for p in &pool {
            for r in &pool {
                let instance = template(p, r);
                debug_assert!(super::tautology::is_tautology(&instance));
                out.insert(instance, 0, Origin::Tautology, cap)?;
            }
        }
    }

    for depth in 1..=max_depth {
        let known = out.order.len();
        for i in 0..known {
            let phi = out.order[i].clone();
            match &phi {
                Formula::Implies(a, b) => {
                    if out.entries.get(&**a).is_some_and(|e| e.depth < depth) {
                        let origin = Origin::ModusPonens {
                            antecedent: (**a).clone(),
                            implication: phi.clone(),
                        };
                        out.insert((**b).clone(), depth, origin, cap)?;
                    }
                }
                Formula::ForAll(x, body) => {
                    for w in &limits.witnesses {
                        let instance = substitute(body, x, w).expect("witnesses are closed");
                        let origin = Origin::Instantiation {
                            premise: phi.clone(),
                            witness: w.clone(),
                        };
                        out.insert(instance, depth, origin, cap)?;
                    }
                }
                Formula::ForAllBelow(x, bound, body) => {
                    let limit = eval_term(bound, config)?;
                    for w in &limits.witnesses {
                        if eval_term(w, config)? >= limit {
                            continue;
                        }
                        let instance = substitute(body, x, w).expect("witnesses are closed");
                        let origin = Origin::Instantiation {
                            premise: phi.clone(),
                            witness: w.clone(),
                        };
                        out.insert(instance, depth, origin, cap)?;
                    }
                }
                _ => {}
            }
        }
        if out.order.len() == known {
            break;
        }
    }
    Ok(out)
}

/// Sorted, deduplicated theorems of `theory` up to `max_steps` inference
/// layers, with the default limits.
pub fn enumerate_theorems(
    theory: &Theory,
    max_steps: usize,
    config: &EvalConfig,
) -> Result<Vec<Formula>, EnumerationError> {
    Ok(enumerate(theory, max_steps, config, &EnumerationLimits::default())?.theorems())
}
