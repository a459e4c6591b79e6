//! The liar contradiction as a five-step derivation.

use crate::eval::{require_sentence, EvalError};
use crate::godel::encode_formula;
use crate::quine::diagonalize;
use crate::syntax::{Formula, FnSymbol, Occurrences, Term};

use super::{Derivation, Justification, Step};

/// `T(#c) <-> phi` where `c` is the code of the sentence `phi`.
pub fn t_scheme_axiom(phi: &Formula) -> Result<Formula, EvalError> {
    require_sentence(phi)?;
    Ok(Formula::iff(
        Formula::truth(encode_formula(phi).numeral()),
        phi.clone(),
    ))
}

/// Rule used at each step of [`derive_liar_contradiction`], in order.
pub const LIAR_STEP_NAMES: [&str; 5] = [
    "t-scheme",
    "eval-equality",
    "term-substitution",
    "tautology",
    "modus-ponens",
];

/// Derives `false` from the diagonal liar `L = ~T(Q(#n))` whose code is `k`:
///
/// 0. `T(#k) <-> ~T(Q(#n))`, the T-scheme for `L`
/// 1. `#k = Q(#n)`, by evaluation
/// 2. `T(Q(#n)) <-> ~T(Q(#n))`, rewriting `#k` in 0 using 1
/// 3. `((T(Q(#n)) <-> ~T(Q(#n))) -> false)`, a tautology
/// 4. `false`, modus ponens from 2 and 3
pub fn derive_liar_contradiction() -> Derivation {
    let d = diagonalize();
    let k = Term::Num(d.k.clone());
    let q_n = Term::app(FnSymbol::Q, Term::Num(d.n.clone()));
    let t_scheme = t_scheme_axiom(&d.liar).expect("the liar is a sentence");
    let equality = Formula::eq(k, q_n.clone());
    let self_denial = Formula::iff(Formula::truth(q_n), d.liar.clone());
    let tautology = Formula::implies(self_denial.clone(), Formula::Falsum);
    Derivation::new(vec![
        Step::new(t_scheme, Justification::TScheme),
        Step::new(equality, Justification::EvalEquality),
        Step::new(
            self_denial,
            Justification::TermSubstitution {
                formula: 0,
                equality: 1,
                positions: Occurrences::all(),
            },
        ),
        Step::new(tautology, Justification::Tautology),
        Step::new(
            Formula::Falsum,
            Justification::ModusPonens {
                antecedent: 2,
                implication: 3,
            },
        ),
    ])
}
