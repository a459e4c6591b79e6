mod common;

use std::collections::HashMap;

use liarlab::godel::{decode, encode_formula};
use liarlab::quine::{
    build_natural_liar, diagonalize, is_prime, prime_term_function, q_function, quine_string,
    NATURAL_LIAR_TEMPLATE,
};
use liarlab::syntax::{parse_formula, substitute, Node, Term};
use num_bigint::BigUint;
use proptest::prelude::*;

proptest! {
    #[test]
    fn quine_length_law(s in "[a-c#' ]{0,40}") {
        let q = quine_string(&s);
        let hashes = s.chars().filter(|&c| c == '#').count();
        let n = s.chars().count();
        prop_assert_eq!(q.chars().count(), n + hashes * (n + 1));
    }

    #[test]
    fn quining_without_placeholders_is_the_identity(s in "[^#]{0,40}") {
        prop_assert_eq!(quine_string(&s), s);
    }
}

#[test]
fn quine_examples() {
    assert_eq!(quine_string("abc"), "abc");
    assert_eq!(quine_string("ab#c"), "ab'ab#c'c");
    assert_eq!(quine_string("#"), "'#'");
    assert_eq!(quine_string("##"), "'##''##'");
}

#[test]
fn natural_liar_reproduces_itself() {
    let l = build_natural_liar();
    let inner = l.split('\'').nth(1).unwrap();
    assert_eq!(inner, NATURAL_LIAR_TEMPLATE);
    assert_eq!(quine_string(inner), l);
    let outside: String = l.split('\'').step_by(2).collect();
    assert!(!outside.contains('#'));
}

#[test]
fn q_agrees_with_substitution_and_is_injective() {
    let mut rng = common::rng(31);
    let mut seen: HashMap<BigUint, BigUint> = HashMap::new();
    let mut tried = 0;
    while tried < 2_000 {
        let phi = common::formula(&mut rng, 4);
        let free: Vec<String> = phi.free_vars().into_iter().collect();
        if free.len() != 1 {
            assert_eq!(q_function(encode_formula(&phi).value()), BigUint::from(0u32));
            continue;
        }
        tried += 1;
        let n = encode_formula(&phi).into_value();
        let expected = substitute(&phi, &free[0], &Term::Num(n.clone())).unwrap();
        let k = q_function(&n);
        assert_eq!(decode(&k), Some(Node::Formula(expected)));
        if let Some(other) = seen.insert(k, n.clone()) {
            assert_eq!(other, n);
        }
    }
}

#[test]
fn q_is_zero_off_templates() {
    for v in [0u32, 1, 5, 562773] {
        assert_eq!(q_function(&BigUint::from(v)), BigUint::from(0u32));
    }
    let sentence = encode_formula(&parse_formula("0 = 0").unwrap()).into_value();
    assert_eq!(q_function(&sentence), BigUint::from(0u32));
}

#[test]
fn diagonal_fixed_point() {
    let d = diagonalize();
    assert!(d.is_fixed_point());
    assert_eq!(d.liar.to_string(), format!("~T(Q(#{}))", d.n));
    assert_eq!(encode_formula(&d.liar).into_value(), d.k);
    assert!(d.k > d.n);
}

#[test]
fn prime_term_branches() {
    let two_plus_two = encode_formula(&parse_formula("S(S(0)) + S(S(0)) = #4").unwrap()).into_value();
    for n in 0u32..200 {
        let v = prime_term_function(&n.into());
        let trial = n >= 2 && (2..n).all(|d| !n.is_multiple_of(d));
        assert_eq!(is_prime(&n.into()), trial);
        if trial {
            assert_eq!(v, two_plus_two);
        } else {
            let denial = parse_formula(&format!("~T(F(#{n}))")).unwrap();
            assert_eq!(v, encode_formula(&denial).into_value());
        }
    }
    // a Mersenne prime and a Carmichael number
    assert!(is_prime(&((BigUint::from(1u32) << 61) - 1u32)));
    assert!(!is_prime(&BigUint::from(561u32)));
}
