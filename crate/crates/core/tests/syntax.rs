mod common;

use liarlab::syntax::{
    parse, parse_formula, parse_term, replace_term_occurrences, substitute, Formula, Node,
    Occurrences, SubstError, Term,
};
use proptest::prelude::*;

#[test]
fn print_parse_round_trip_fuzzed() {
    let mut rng = common::rng(7);
    for _ in 0..10_000 {
        let n = common::node(&mut rng);
        let printed = n.to_string();
        let back = parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(back, n, "{printed}");
        assert_eq!(back.to_string(), printed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printing_is_a_fixed_point_of_reparsing(seed in any::<u64>()) {
        let n = common::node(&mut common::rng(seed));
        let once = parse(&n.to_string()).unwrap();
        prop_assert_eq!(&once, &n);
        prop_assert_eq!(parse(&once.to_string()).unwrap().to_string(), n.to_string());
    }

    #[test]
    fn substitution_closes_the_variable(seed in any::<u64>(), value in 0u32..50) {
        let mut rng = common::rng(seed);
        let phi = common::formula(&mut rng, 5);
        let by = Term::num(value);
        for x in phi.free_vars() {
            let out = substitute(&phi, &x, &by).unwrap();
            let mut expected = phi.free_vars();
            expected.remove(&x);
            prop_assert_eq!(out.free_vars(), expected);
            // substituting again changes nothing
            prop_assert_eq!(substitute(&out, &x, &by).unwrap(), out.clone());
        }
    }

    #[test]
    fn substituting_a_non_free_variable_is_the_identity(seed in any::<u64>()) {
        let phi = common::formula(&mut common::rng(seed), 5);
        let x = "unusedvariable";
        prop_assert!(!common::all_vars(&phi).contains(x));
        prop_assert_eq!(substitute(&phi, x, &Term::Zero).unwrap(), phi);
    }

    #[test]
    fn rewriting_all_then_back(seed in any::<u64>()) {
        // rewriting a fresh numeral to another fresh numeral is invertible
        let phi = common::formula(&mut common::rng(seed), 4);
        let marker = Term::num(987_654_321_012u64);
        let other = Term::num(123_456_789_098u64);
        let Some(x) = phi.free_vars().into_iter().next() else { return Ok(()) };
        let marked = substitute(&phi, &x, &marker).unwrap();
        let (rewritten, count) = replace_term_occurrences(&marked, &marker, &other, &Occurrences::all()).unwrap();
        prop_assert!(count >= 1);
        let (restored, back) = replace_term_occurrences(&rewritten, &other, &marker, &Occurrences::all()).unwrap();
        prop_assert_eq!(count, back);
        prop_assert_eq!(restored, marked);
    }
}

#[test]
fn documented_parses() {
    let phi = parse_formula("S(S(0)) + S(S(0)) = #4").unwrap();
    assert_eq!(phi.to_string(), "(S(S(0)) + S(S(0))) = #4");
    let phi = parse_formula("~T(Q(x))").unwrap();
    assert_eq!(phi.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
    let phi = parse_formula("forall x < #10. exists y. (x + y) = #10").unwrap();
    assert!(phi.is_sentence());
    assert!(matches!(parse("F(#17)").unwrap(), Node::Term(_)));
}

#[test]
fn parse_errors_point_at_the_problem() {
    let e = parse_formula("(0 = 0 & 0 = 0").unwrap_err();
    assert_eq!(e.pos, 14);
    let e = parse_formula("0 = ").unwrap_err();
    assert_eq!(e.pos, 4);
    assert!(parse_formula("forall x < x. 0 = 0").is_err());
    assert!(parse_formula("forall false. 0 = 0").is_err());
    assert!(parse_term("0 = 0").is_err());
    assert!(parse_formula("T(0, 0)").is_err());
}

#[test]
fn rewriting_selected_positions() {
    let phi = parse_formula("(#17 = #17 & T(F(#17)))").unwrap();
    let from = Term::num(17u32);
    let to = parse_term("(#15 + #2)").unwrap();
    let (out, n) = replace_term_occurrences(&phi, &from, &to, &Occurrences::at([0, 2])).unwrap();
    assert_eq!(n, 2);
    assert_eq!(out.to_string(), "((#15 + #2) = #17 & T(F((#15 + #2))))");
    assert_eq!(
        replace_term_occurrences(&phi, &from, &to, &Occurrences::at([3])),
        Err(SubstError::NoSuchOccurrence { index: 3, total: 3 })
    );
    assert!(matches!(
        replace_term_occurrences(&phi, &Term::num(5u32), &to, &Occurrences::all()),
        Err(SubstError::NotFound(_))
    ));
    assert!(matches!(
        substitute(&phi, "x", &Term::var("y")),
        Err(SubstError::OpenTerm(_))
    ));
    let (same, zero) = replace_term_occurrences(&phi, &from, &to, &Occurrences::none()).unwrap();
    assert_eq!((same, zero), (phi.clone(), 0));
    let _: Formula = phi;
}
