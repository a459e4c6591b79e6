//! Quining on strings, and its arithmetized counterpart on Gödel codes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::godel::{decode, encode_formula, numeral};
use crate::syntax::{substitute, FnSymbol, Formula, Node, Term};

/// Placeholder replaced by quining.
pub const PLACEHOLDER: char = '#';
pub const QUOTE: char = '\'';

/// Replaces every `#` in `s` by a single-quoted copy of the original `s`.
/// Replacement is simultaneous: inserted copies are not themselves rewritten.
pub fn quine_string(s: &str) -> String {
    let copies = s.matches(PLACEHOLDER).count();
    let mut out = String::with_capacity(s.len() + copies * (s.len() + 2));
    for c in s.chars() {
        if c == PLACEHOLDER {
            out.push(QUOTE);
            out.push_str(s);
            out.push(QUOTE);
        } else {
            out.push(c);
        }
    }
    out
}

/// The template whose quining is the English liar.
pub const NATURAL_LIAR_TEMPLATE: &str =
    "The string obtained by quining # is not a true sentence.";

/// "The string obtained by quining '<template>' is not a true sentence."
pub fn build_natural_liar() -> String {
    quine_string(NATURAL_LIAR_TEMPLATE)
}

type Interpretation = dyn Fn(&[BigUint]) -> BigUint + Send + Sync;

/// A function symbol together with its arithmetic meaning.
#[derive(Clone)]
pub struct FunctionSymbolDef {
    pub symbol: FnSymbol,
    pub arity: usize,
    interpretation: Arc<Interpretation>,
}

impl FunctionSymbolDef {
    pub fn new(
        symbol: FnSymbol,
        arity: usize,
        interpretation: impl Fn(&[BigUint]) -> BigUint + Send + Sync + 'static,
    ) -> Self {
        FunctionSymbolDef {
            symbol,
            arity,
            interpretation: Arc::new(interpretation),
        }
    }

    pub fn apply(&self, args: &[BigUint]) -> BigUint {
        (self.interpretation)(args)
    }
}

impl fmt::Debug for FunctionSymbolDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSymbolDef")
            .field("symbol", &self.symbol)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

/// Interpretations of the function symbols available to evaluation.
#[derive(Clone, Debug, Default)]
pub struct FunctionRegistry {
    defs: BTreeMap<FnSymbol, FunctionSymbolDef>,
}

impl FunctionRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `Q` as [`q_function`] and `F` as [`prime_term_function`].
    pub fn standard() -> Self {
        Self::empty()
            .with(FunctionSymbolDef::new(FnSymbol::Q, 1, |args| q_function(&args[0])))
            .with(FunctionSymbolDef::new(FnSymbol::F, 1, |args| {
                prime_term_function(&args[0])
            }))
    }

    pub fn with(mut self, def: FunctionSymbolDef) -> Self {
        self.defs.insert(def.symbol, def);
        self
    }

    pub fn without(mut self, symbol: FnSymbol) -> Self {
        self.defs.remove(&symbol);
        self
    }

    pub fn get(&self, symbol: FnSymbol) -> Option<&FunctionSymbolDef> {
        self.defs.get(&symbol)
    }

    pub fn contains(&self, symbol: FnSymbol) -> bool {
        self.defs.contains_key(&symbol)
    }
}

/// The formal quining function.
///
/// If `n` codes a formula with exactly one free variable `x`, returns the
/// code of that formula with `x` replaced by the numeral of `n`. Every other
/// input maps to 0, which is never a code.
pub fn q_function(n: &BigUint) -> BigUint {
    let Some(Node::Formula(phi)) = decode(n) else {
        return BigUint::zero();
    };
    let free = phi.free_vars();
    if free.len() != 1 {
        return BigUint::zero();
    }
    let x = free.into_iter().next().unwrap();
    let instance = substitute(&phi, &x, &numeral(n.clone())).expect("numerals are closed");
    encode_formula(&instance).into_value()
}

/// The liar obtained by diagonalizing `~T(Q(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    /// `~T(Q(x))`
    pub template: Formula,
    /// Code of the template.
    pub n: BigUint,
    /// `~T(Q(#n))`
    pub liar: Formula,
    /// Value of `Q(#n)`.
    pub k: BigUint,
}

impl Diagonal {
    /// Whether `k` is exactly the code of the liar.
    pub fn is_fixed_point(&self) -> bool {
        encode_formula(&self.liar).value() == &self.k
    }
}

/// `~T(Q(x))`
pub fn liar_template() -> Formula {
    Formula::negate(Formula::truth(Term::app(FnSymbol::Q, Term::var("x"))))
}

pub fn diagonalize() -> Diagonal {
    let template = liar_template();
    let n = encode_formula(&template).into_value();
    let liar = substitute(&template, "x", &numeral(n.clone())).expect("numerals are closed");
    let k = q_function(&n);
    Diagonal {
        template,
        n,
        liar,
        k,
    }
}

/// `S(S(0)) + S(S(0)) = #4`
pub fn two_plus_two() -> Formula {
    let two = Term::succ(Term::succ(Term::Zero));
    Formula::eq(Term::add(two.clone(), two), numeral(4u32))
}

/// `~T(F(#n))`: the value of `F(#n)` is not the code of a true sentence.
pub fn prime_term_denial(n: &BigUint) -> Formula {
    Formula::negate(Formula::truth(Term::app(FnSymbol::F, numeral(n.clone()))))
}

/// Interpretation of `F`: the code of `2 + 2 = 4` when `n` is prime,
/// otherwise the code of `~T(F(#n))`. 0 and 1 take the second branch.
pub fn prime_term_function(n: &BigUint) -> BigUint {
    let sentence = if is_prime(n) {
        two_plus_two()
    } else {
        prime_term_denial(n)
    };
    encode_formula(&sentence).into_value()
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Miller-Rabin with the first twelve prime witnesses is exact below 3.3e24,
// which covers every u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in WITNESSES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality. Exact for every input below 2^64; above that a fixed-witness
/// Miller-Rabin test, deterministic but not a proof.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::godel::encode;
    use crate::syntax::{parse, parse_formula};

    #[test]
    fn quining_examples() {
        assert_eq!(quine_string("abc"), "abc");
        assert_eq!(quine_string("ab#c"), "ab'ab#c'c");
        assert_eq!(quine_string("##"), "'##''##'");
        assert_eq!(quine_string(""), "");
        assert_eq!(quine_string("#"), "'#'");
    }

    #[test]
    fn natural_liar() {
        let l = build_natural_liar();
        assert_eq!(
            l,
            "The string obtained by quining 'The string obtained by quining # is not a true \
             sentence.' is not a true sentence."
        );
        assert_eq!(NATURAL_LIAR_TEMPLATE.matches('#').count(), 1);
        // the only '#' left sits inside the quotation
        let open = l.find(QUOTE).unwrap();
        let close = l.rfind(QUOTE).unwrap();
        assert_eq!(l.matches('#').count(), 1);
        assert!((open..close).contains(&l.find('#').unwrap()));
        assert_eq!(&l[open + 1..close], NATURAL_LIAR_TEMPLATE);
        assert_ne!(quine_string(&l), l);
    }

    #[test]
    fn q_on_one_variable_formula() {
        let phi = parse_formula("x = 0").unwrap();
        let n = encode_formula(&phi).into_value();
        let expected = encode_formula(&Formula::eq(numeral(n.clone()), Term::Zero));
        assert_eq!(q_function(&n), expected.into_value());
    }

    #[test]
    fn q_off_domain_is_zero() {
        let closed = encode_formula(&parse_formula("0 = 0").unwrap()).into_value();
        assert!(q_function(&closed).is_zero());
        let two_vars = encode_formula(&parse_formula("x = y").unwrap()).into_value();
        assert!(q_function(&two_vars).is_zero());
        let term = encode(&parse("x").unwrap()).into_value();
        assert!(q_function(&term).is_zero());
        assert!(q_function(&BigUint::zero()).is_zero());
        assert!(q_function(&BigUint::from(12345u32)).is_zero());
    }

    #[test]
    fn diagonal_fixed_point() {
        let d = diagonalize();
        assert_eq!(d.template, parse_formula("~T(Q(x))").unwrap());
        assert_eq!(
            d.liar,
            Formula::negate(Formula::truth(Term::app(FnSymbol::Q, numeral(d.n.clone()))))
        );
        assert!(d.liar.is_sentence());
        assert!(d.is_fixed_point());
        assert_eq!(encode_formula(&d.liar).into_value(), d.k);
        assert_eq!(decode(&d.k), Some(Node::Formula(d.liar.clone())));
    }

    #[test]
    fn prime_term_branches() {
        let truth = encode_formula(&parse_formula("S(S(0)) + S(S(0)) = #4").unwrap()).into_value();
        assert_eq!(prime_term_function(&BigUint::from(7u32)), truth);
        let four = BigUint::from(4u32);
        assert_eq!(
            prime_term_function(&four),
            encode_formula(&parse_formula("~T(F(#4))").unwrap()).into_value()
        );
        for n in [0u32, 1] {
            let n = BigUint::from(n);
            assert_eq!(
                prime_term_function(&n),
                encode_formula(&prime_term_denial(&n)).into_value()
            );
        }
    }

    #[test]
    fn primality_against_trial_division() {
        fn trial(n: u64) -> bool {
            n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
        }
        for n in 0..=10_000u64 {
            assert_eq!(is_prime(&BigUint::from(n)), trial(n), "n = {n}");
        }
        assert!(is_prime(&BigUint::from(18_446_744_073_709_551_557u64)));
        assert!(!is_prime(&BigUint::from(3_215_031_751u64)));
        // 2^89 - 1 is a Mersenne prime, 2^89 + 1 is divisible by 3
        let m89 = (BigUint::one() << 89u32) - BigUint::one();
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 + BigUint::from(2u32))));
    }

    #[test]
    fn registry() {
        let r = FunctionRegistry::standard();
        assert!(r.contains(FnSymbol::Q) && r.contains(FnSymbol::F));
        let r = r.without(FnSymbol::F);
        assert!(!r.contains(FnSymbol::F));
        assert_eq!(r.get(FnSymbol::Q).unwrap().arity, 1);
    }
}
