//! Exact rationals and square classes of Q*.
//!
//! [`Rational`] is num's `BigRational`, which is kept in lowest terms with a
//! positive denominator (zero is `0/1`). Squareness is decided by exact
//! integer square roots and never needs a factorization; the power-free
//! representatives go through [`FactorConfig`].

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::FactorConfig;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"`, `"p"`, with optional surrounding whitespace or quotes.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().trim_matches('"').trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn exact_isqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The non-negative rational square root of `r`, if there is one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = exact_isqrt(r.numer().magnitude())?;
    let d = exact_isqrt(r.denom().magnitude())?;
    Some(Rational::new(
        BigInt::from_biguint(Sign::Plus, n),
        BigInt::from_biguint(Sign::Plus, d),
    ))
}

/// Exact real `n`-th root of `r`, when it is rational.
pub fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if n == 0 || (n % 2 == 0 && r.is_negative()) {
        return None;
    }
    let root_int = |v: &BigInt| {
        let c = v.nth_root(n);
        (num_traits::pow(c.clone(), n as usize) == *v).then_some(c)
    };
    Some(Rational::new(root_int(r.numer())?, root_int(r.denom())?))
}

pub fn is_square_rational(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

/// A squarefree nonzero integer, the canonical representative of a class in
/// Q*/(Q*)².
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClassRep(BigInt);

impl SquareClassRep {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rational(&self) -> Rational {
        big(self.0.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for SquareClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for SquareClassRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl FactorConfig {
    /// Squarefree integer `m` with `r = m·s²`.
    pub fn squarefree_part(&self, r: &Rational) -> Result<SquareClassRep> {
        let v = self.nth_power_free_part(r, 2)?;
        Ok(SquareClassRep(v.to_integer()))
    }

    /// Integer representative of `r` in Q*/(Q*)^n whose prime exponents all
    /// lie in `0..n`. For even `n` the sign is kept.
    pub fn nth_power_free_part(&self, r: &Rational, n: u32) -> Result<Rational> {
        if !matches!(n, 2 | 4 | 6) {
            return Err(Error::UnsupportedExponent(n));
        }
        if r.is_zero() {
            return Err(Error::NotAUnit);
        }
        let mut out = BigInt::one();
        for (p, e) in self.factorize(r.numer().magnitude())? {
            out *= num_traits::pow(BigInt::from(p), (e % n) as usize);
        }
        for (p, e) in self.factorize(r.denom().magnitude())? {
            // p^-e ≡ p^(n - e mod n)
            out *= num_traits::pow(BigInt::from(p), ((n - e % n) % n) as usize);
        }
        if r.is_negative() {
            out = -out;
        }
        Ok(big(out))
    }
}

pub fn squarefree_part(r: &Rational) -> Result<SquareClassRep> {
    FactorConfig::default().squarefree_part(r)
}

pub fn nth_power_free_part(r: &Rational, n: u32) -> Result<Rational> {
    FactorConfig::default().nth_power_free_part(r, n)
}

/// `a/b` is a rational square. Decided without factoring.
pub fn same_square_class(a: &Rational, b: &Rational) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotAUnit);
    }
    Ok(is_square_rational(&(a / b)))
}

/// Writes rationals as `"p/q"` strings (or `"p"` for integers).
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bigpow(b: i64, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(b), e as usize)
    }

    // Square test by trial-division factorization, kept apart from the
    // integer-square-root path used in the implementation.
    fn square_by_trial_division(mut n: u64) -> bool {
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e % 2 == 1 {
                return false;
            }
            d += 1;
        }
        n == 1
    }

    #[test]
    fn squares() {
        assert!(is_square_rational(&rat(9, 4)));
        assert!(!is_square_rational(&int(-1)));
        assert!(is_square_rational(&int(0)));
        let n = bigpow(2, 12) * bigpow(3, 12) * bigpow(1729, 2);
        assert!(is_square_rational(&big(n)));
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
    }

    #[test]
    fn squares_match_trial_division() {
        for n in 1..5000u64 {
            assert_eq!(is_square_rational(&int(n as i64)), square_by_trial_division(n));
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&int(18)).unwrap().value(), &BigInt::from(2));
        assert_eq!(squarefree_part(&int(-4)).unwrap().value(), &BigInt::from(-1));
        assert_eq!(squarefree_part(&rat(125, 4)).unwrap().value(), &BigInt::from(5));
        assert_eq!(squarefree_part(&rat(1, 2)).unwrap().value(), &BigInt::from(2));
        assert_eq!(squarefree_part(&int(0)), Err(Error::NotAUnit));
    }

    #[test]
    fn square_classes() {
        assert!(same_square_class(&int(8), &int(2)).unwrap());
        assert!(!same_square_class(&int(-3), &int(3)).unwrap());
        // j'_2(1) - 1728 against G_2(1): 16972865 = 65 * 511^2
        assert!(same_square_class(&int(16972865), &int(65)).unwrap());
        assert!(same_square_class(&int(0), &int(1)).is_err());
    }

    #[test]
    fn power_free_parts() {
        assert_eq!(nth_power_free_part(&int(32), 4).unwrap(), int(2));
        assert_eq!(nth_power_free_part(&int(64), 6).unwrap(), int(1));
        assert_eq!(nth_power_free_part(&int(-16), 4).unwrap(), int(-1));
        assert_eq!(nth_power_free_part(&rat(1, 8), 4).unwrap(), int(2));
        assert_eq!(nth_power_free_part(&int(5), 3), Err(Error::UnsupportedExponent(3)));
        assert_eq!(nth_power_free_part(&int(0), 2), Err(Error::NotAUnit));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" \"7\" ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-100_000i64..100_000, 1i64..50_000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn squarefree_part_is_in_class(r in nonzero_rational()) {
            let m = squarefree_part(&r).unwrap();
            prop_assert!(same_square_class(&r, &m.to_rational()).unwrap());
        }

        #[test]
        fn squarefree_part_is_idempotent(r in nonzero_rational()) {
            let m = squarefree_part(&r).unwrap();
            prop_assert_eq!(squarefree_part(&m.to_rational()).unwrap(), m);
        }

        #[test]
        fn squareness_ignores_square_factors(r in nonzero_rational(), s in nonzero_rational()) {
            prop_assert_eq!(is_square_rational(&(&r * &s * &s)), is_square_rational(&r));
        }

        #[test]
        fn power_free_quotient_is_nth_power(r in nonzero_rational(), k in 0usize..3) {
            let n = [2u32, 4, 6][k];
            let rep = nth_power_free_part(&r, n).unwrap();
            prop_assert!(rational_nth_root(&(&r / &rep), n).is_some());
        }
    }
}
