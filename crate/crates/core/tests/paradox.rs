use liarlab::eval::{eval_sentence, EvalConfig, Verdict};
use liarlab::godel::encode_formula;
use liarlab::kernel::t_scheme_axiom;
use liarlab::paradox::{build_reference_graph, classify, Cycles, GroundVerdict, DEFAULT_BUDGET};
use liarlab::quine::{diagonalize, prime_term_denial};
use liarlab::syntax::{parse_formula, FnSymbol, Formula, Term};

mod common;

fn config() -> EvalConfig {
    EvalConfig::with_bound(200).unwrap()
}

#[test]
fn one_shape_both_classes() {
    for n in 2u32..=50 {
        let prime = (2..n).all(|d| !n.is_multiple_of(d));
        let v = classify(&prime_term_denial(&n.into()), &config(), DEFAULT_BUDGET).unwrap();
        let expected = if prime { GroundVerdict::GroundedFalse } else { GroundVerdict::Paradoxical };
        assert_eq!(v, expected, "{n}");
    }
}

#[test]
fn agreement_on_truth_free_sentences() {
    let mut rng = common::rng(41);
    for _ in 0..500 {
        let phi = common::bounded_sentence(&mut rng);
        let expected = match eval_sentence(&phi, &config()).unwrap() {
            Verdict::TrueInN => GroundVerdict::GroundedTrue,
            Verdict::FalseInN => GroundVerdict::GroundedFalse,
            Verdict::Unknown(_) => GroundVerdict::Ungrounded,
        };
        assert_eq!(classify(&phi, &config(), DEFAULT_BUDGET).unwrap(), expected, "{phi}");
        let inst = t_scheme_axiom(&phi).unwrap();
        assert_eq!(classify(&inst, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::GroundedTrue, "{inst}");
    }
}

#[test]
fn attributions_to_fuzzed_sentences_follow_their_truth() {
    let mut rng = common::rng(42);
    for _ in 0..300 {
        let phi = common::bounded_sentence(&mut rng);
        let truth = common::brute_force(&phi);
        let attribution = Formula::truth(encode_formula(&phi).numeral());
        let expected = if truth { GroundVerdict::GroundedTrue } else { GroundVerdict::GroundedFalse };
        assert_eq!(classify(&attribution, &config(), DEFAULT_BUDGET).unwrap(), expected);
        let denial = Formula::negate(attribution);
        let flipped = if truth { GroundVerdict::GroundedFalse } else { GroundVerdict::GroundedTrue };
        assert_eq!(classify(&denial, &config(), DEFAULT_BUDGET).unwrap(), flipped);
    }
}

#[test]
fn liar_and_truth_teller() {
    let liar = diagonalize().liar;
    assert_eq!(classify(&liar, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::Paradoxical);
    let template = Formula::truth(Term::app(FnSymbol::Q, Term::var("x")));
    let teller = Formula::truth(Term::app(FnSymbol::Q, encode_formula(&template).numeral()));
    let g = build_reference_graph(&teller, &config(), DEFAULT_BUDGET).unwrap();
    assert_eq!(g.cycles(), Cycles::EvenOnly);
    assert_eq!(classify(&teller, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::Ungrounded);
    // a truth-teller reached through a grounded detour
    let via = Formula::truth(encode_formula(&teller).numeral());
    assert_eq!(classify(&via, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::Ungrounded);
    let mixed = Formula::and(teller, liar);
    assert_eq!(classify(&mixed, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::Paradoxical);
}

#[test]
fn verdicts_do_not_depend_on_the_budget_once_it_suffices() {
    let phi = parse_formula("forall x < #20. ~T(F(x))").unwrap();
    let a = classify(&phi, &config(), 100).unwrap();
    let b = classify(&phi, &config(), DEFAULT_BUDGET).unwrap();
    assert_eq!(a, b);
    // the conjunct at x = 2 is false, which settles the conjunction
    assert_eq!(a, GroundVerdict::GroundedFalse);
    // 0 and 1 both lead back to denials of themselves
    let low = parse_formula("forall x < #2. ~T(F(x))").unwrap();
    assert_eq!(classify(&low, &config(), DEFAULT_BUDGET).unwrap(), GroundVerdict::Paradoxical);
    assert_eq!(classify(&phi, &config(), 1).unwrap(), GroundVerdict::ResourceExceeded);
}
