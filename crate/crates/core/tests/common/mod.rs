//! Random syntax trees and a brute-force evaluator shared by the integration
//! tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use liarlab::syntax::{FnSymbol, Formula, Node, Term};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 8] = ["x", "y", "z", "n", "v1", "a_b", "falsey", "existsx"];

fn identifier(rng: &mut ChaCha8Rng) -> String {
    if rng.gen_bool(0.8) {
        return NAMES.choose(rng).unwrap().to_string();
    }
    const HEAD: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    const TAIL: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789_";
    loop {
        let mut s = String::new();
        s.push(*HEAD.choose(rng).unwrap() as char);
        for _ in 0..rng.gen_range(0..6) {
            s.push(*TAIL.choose(rng).unwrap() as char);
        }
        if !["forall", "exists", "false"].contains(&s.as_str()) {
            return s;
        }
    }
}

fn numeral(rng: &mut ChaCha8Rng) -> BigUint {
    match rng.gen_range(0..4) {
        0 => BigUint::from(rng.gen_range(0u32..10)),
        1 => BigUint::from(rng.gen::<u64>()),
        2 => {
            let bytes: Vec<u8> = (0..rng.gen_range(1..40)).map(|_| rng.gen()).collect();
            BigUint::from_bytes_be(&bytes)
        }
        _ => BigUint::from(rng.gen_range(0u32..1000)),
    }
}

/// A term of depth at most `depth` over arbitrary identifiers.
pub fn term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => Term::Zero,
            1 => Term::Num(numeral(rng)),
            _ => Term::var(identifier(rng)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => Term::succ(term(rng, d)),
        1 => Term::add(term(rng, d), term(rng, d)),
        2 => Term::mul(term(rng, d), term(rng, d)),
        _ => {
            let symbol = if rng.gen() { FnSymbol::Q } else { FnSymbol::F };
            Term::app(symbol, term(rng, d))
        }
    }
}

/// A well-formed formula of depth at most `depth`, possibly open.
pub fn formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.2);
    let td = depth.min(3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Formula::eq(term(rng, td), term(rng, td)),
            1 => Formula::lt(term(rng, td), term(rng, td)),
            2 => Formula::truth(term(rng, td)),
            _ => Formula::Falsum,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..10) {
        0 => Formula::negate(formula(rng, d)),
        1 => Formula::and(formula(rng, d), formula(rng, d)),
        2 => Formula::or(formula(rng, d), formula(rng, d)),
        3 => Formula::implies(formula(rng, d), formula(rng, d)),
        4 => Formula::iff(formula(rng, d), formula(rng, d)),
        5 => Formula::forall(identifier(rng), formula(rng, d)),
        6 => Formula::exists(identifier(rng), formula(rng, d)),
        k => {
            let x = identifier(rng);
            // the bound may not mention the variable it bounds
            let bound = loop {
                let b = term(rng, td.min(2));
                if !b.mentions(&x) {
                    break b;
                }
            };
            let body = formula(rng, d);
            if k == 7 {
                Formula::forall_below(x, bound, body)
            } else {
                Formula::exists_below(x, bound, body)
            }
        }
    }
}

/// A term or formula of depth at most 8.
pub fn node(rng: &mut ChaCha8Rng) -> Node {
    let depth = rng.gen_range(0..=8);
    if rng.gen_bool(0.25) {
        Node::Term(term(rng, depth))
    } else {
        Node::Formula(formula(rng, depth))
    }
}

fn closed_term(rng: &mut ChaCha8Rng, scope: &[String], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.5) {
        return match rng.gen_range(0..3) {
            0 if !scope.is_empty() => Term::var(scope.choose(rng).unwrap().clone()),
            1 => Term::Zero,
            _ => Term::num(rng.gen_range(0u32..=10)),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..3) {
        0 => Term::succ(closed_term(rng, scope, d)),
        1 => Term::add(closed_term(rng, scope, d), closed_term(rng, scope, d)),
        _ => Term::mul(closed_term(rng, scope, d), closed_term(rng, scope, d)),
    }
}

fn bounded(rng: &mut ChaCha8Rng, scope: &mut Vec<String>, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 | 1 => Formula::eq(closed_term(rng, scope, 1), closed_term(rng, scope, 1)),
            2 | 3 => Formula::lt(closed_term(rng, scope, 1), closed_term(rng, scope, 1)),
            _ => Formula::Falsum,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 => Formula::negate(bounded(rng, scope, d)),
        1 => Formula::and(bounded(rng, scope, d), bounded(rng, scope, d)),
        2 => Formula::or(bounded(rng, scope, d), bounded(rng, scope, d)),
        3 => Formula::implies(bounded(rng, scope, d), bounded(rng, scope, d)),
        4 => Formula::iff(bounded(rng, scope, d), bounded(rng, scope, d)),
        k => {
            let x = ["x", "y", "z"].choose(rng).unwrap().to_string();
            let bound = if !scope.is_empty() && rng.gen_bool(0.3) {
                let outer = scope.choose(rng).unwrap().clone();
                if outer == x {
                    Term::num(rng.gen_range(0u32..=10))
                } else {
                    Term::var(outer)
                }
            } else {
                Term::num(rng.gen_range(0u32..=10))
            };
            scope.push(x.clone());
            let body = bounded(rng, scope, d);
            scope.pop();
            if k % 2 == 0 {
                Formula::forall_below(x, bound, body)
            } else {
                Formula::exists_below(x, bound, body)
            }
        }
    }
}

/// A truth-free sentence with at most 12 nodes whose quantifiers are all
/// bounded by a numeral at most 10 or by an enclosing variable.
pub fn bounded_sentence(rng: &mut ChaCha8Rng) -> Formula {
    loop {
        let phi = bounded(rng, &mut Vec::new(), 4);
        if phi.size() <= 12 && phi.is_sentence() {
            return phi;
        }
    }
}

fn brute_term(t: &Term, env: &mut Vec<(String, u64)>) -> u64 {
    match t {
        Term::Zero => 0,
        Term::Num(n) => u64::try_from(n).expect("small numeral"),
        Term::Succ(a) => brute_term(a, env) + 1,
        Term::Add(a, b) => brute_term(a, env) + brute_term(b, env),
        Term::Mul(a, b) => brute_term(a, env) * brute_term(b, env),
        Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).expect("bound variable").1,
        Term::App(..) => panic!("no function symbols in bounded sentences"),
    }
}

/// Classical truth of a truth-free sentence whose quantifiers are all
/// bounded, by exhaustive enumeration with machine integers.
pub fn brute_force(phi: &Formula) -> bool {
    fn go(phi: &Formula, env: &mut Vec<(String, u64)>) -> bool {
        match phi {
            Formula::Eq(a, b) => brute_term(a, env) == brute_term(b, env),
            Formula::Lt(a, b) => brute_term(a, env) < brute_term(b, env),
            Formula::Falsum => false,
            Formula::Not(a) => !go(a, env),
            Formula::And(a, b) => {
                let (x, y) = (go(a, env), go(b, env));
                x && y
            }
            Formula::Or(a, b) => {
                let (x, y) = (go(a, env), go(b, env));
                x || y
            }
            Formula::Implies(a, b) => {
                let (x, y) = (go(a, env), go(b, env));
                !x || y
            }
            Formula::Iff(a, b) => go(a, env) == go(b, env),
            Formula::ForAllBelow(x, bound, body) | Formula::ExistsBelow(x, bound, body) => {
                let limit = brute_term(bound, env);
                let values: Vec<bool> = (0..limit)
                    .map(|v| {
                        env.push((x.clone(), v));
                        let r = go(body, env);
                        env.pop();
                        r
                    })
                    .collect();
                if matches!(phi, Formula::ForAllBelow(..)) {
                    values.iter().all(|&b| b)
                } else {
                    values.iter().any(|&b| b)
                }
            }
            Formula::ForAll(..) | Formula::Exists(..) | Formula::Truth(_) => {
                panic!("brute force handles bounded truth-free sentences only")
            }
        }
    }
    go(phi, &mut Vec::new())
}

/// Variables occurring anywhere in `phi`, bound or free.
pub fn all_vars(phi: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    phi.for_each_term(&mut |t| t.collect_vars(&mut out));
    out
}
