//! Propositional tautology checking by truth tables.

use crate::syntax::Formula;

pub const MAX_ATOMS: usize = 16;

/// Maximal subformulas that the propositional connectives treat as opaque:
/// relations, truth atoms and quantified formulas. Deduplicated, in order of
/// first appearance.
pub fn propositional_atoms(phi: &Formula) -> Vec<&Formula> {
    fn walk<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
        match phi {
            Formula::Falsum => {}
            Formula::Not(a) => walk(a, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            atom => {
                if !out.contains(&atom) {
                    out.push(atom);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(phi, &mut out);
    out
}

fn value(phi: &Formula, atoms: &[&Formula], assignment: u32) -> bool {
    match phi {
        Formula::Falsum => false,
        Formula::Not(a) => !value(a, atoms, assignment),
        Formula::And(a, b) => value(a, atoms, assignment) && value(b, atoms, assignment),
        Formula::Or(a, b) => value(a, atoms, assignment) || value(b, atoms, assignment),
        Formula::Implies(a, b) => !value(a, atoms, assignment) || value(b, atoms, assignment),
        Formula::Iff(a, b) => value(a, atoms, assignment) == value(b, atoms, assignment),
        atom => {
            let i = atoms
                .iter()
                .position(|a| *a == atom)
                .expect("atom was collected");
            assignment >> i & 1 == 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautologyCheck {
    Tautology,
    /// A falsifying assignment, as the atoms assigned true.
    Falsifiable(Vec<Formula>),
    TooManyAtoms(usize),
}

pub fn check_tautology(phi: &Formula) -> TautologyCheck {
    let atoms = propositional_atoms(phi);
    if atoms.len() > MAX_ATOMS {
        return TautologyCheck::TooManyAtoms(atoms.len());
    }
    for assignment in 0..1u32 << atoms.len() {
        if !value(phi, &atoms, assignment) {
            let true_atoms = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| assignment >> i & 1 == 1)
                .map(|(_, a)| (*a).clone())
                .collect();
            return TautologyCheck::Falsifiable(true_atoms);
        }
    }
    TautologyCheck::Tautology
}

pub fn is_tautology(phi: &Formula) -> bool {
    check_tautology(phi) == TautologyCheck::Tautology
}
