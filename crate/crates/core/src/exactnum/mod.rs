//! Exact integer and rational arithmetic plus a lazily split tower of
//! algebraic extensions of the rationals.

mod field;

pub use field::{
    AdjoinError, ExtElem, ExtError, ExtField, ExtResult, InvertOutcome, SplitEvent, Value,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats as `num/den`, including a `/1` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n` or `n/d`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

pub fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn is_nonneg_integer(r: &Rat) -> bool {
    is_integer(r) && !r.is_negative()
}

/// Inverse of `a` modulo `d`, in `[1, d)`. By convention `mod_inverse(_, 1) == 0`.
pub fn mod_inverse(a: i64, d: i64) -> Result<i64> {
    if d < 1 {
        return Err(Error::NotInvertible { a, d });
    }
    if d == 1 {
        return Ok(0);
    }
    let a = a.rem_euclid(d);
    let eg = a.extended_gcd(&d);
    if eg.gcd != 1 {
        return Err(Error::NotInvertible { a, d });
    }
    Ok(eg.x.rem_euclid(d))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 5).unwrap(), 1);
        // exhaustive scan of residues mod 7
        let scanned = (1..7).find(|x| (3 * x) % 7 == 1).unwrap();
        assert_eq!(scanned, 5);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert!(matches!(
            mod_inverse(2, 4),
            Err(Error::NotInvertible { .. })
        ));
        assert_eq!(mod_inverse(17, 1).unwrap(), 0);
        assert_eq!(mod_inverse(-1, 5).unwrap(), 4);
    }

    #[test]
    fn rat_strings() {
        assert_eq!(rat_to_string(&rat(6, 4)), "3/2");
        assert_eq!(rat_to_string(&rat_int(2)), "2/1");
        assert_eq!(rat_from_str("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert!(rat_from_str("1/0").is_none());
    }

    proptest! {
        #[test]
        fn mod_inverse_is_inverse(a in -200i64..200, d in 2i64..60) {
            if gcd(a.rem_euclid(d), d) == 1 {
                let inv = mod_inverse(a, d).unwrap();
                prop_assert!((1..d).contains(&inv));
                prop_assert_eq!((a.rem_euclid(d) * inv) % d, 1);
            } else {
                prop_assert!(mod_inverse(a, d).is_err());
            }
        }

        #[test]
        fn rat_matches_cross_multiplication(a in -50i64..50, b in 1i64..50, c in -50i64..50, e in 1i64..50) {
            // brute force: (a/b) + (c/e) = (a e + c b) / (b e), then reduce by scanning common divisors
            let mut n = a * e + c * b;
            let mut m = b * e;
            for k in (2..=m).rev() {
                if n % k == 0 && m % k == 0 { n /= k; m /= k; }
            }
            let s = rat(a, b) + rat(c, e);
            prop_assert_eq!(s.numer().clone(), BigInt::from(n));
            prop_assert_eq!(s.denom().clone(), BigInt::from(m));
            let p = rat(a, b) * rat(c, e);
            prop_assert_eq!(p * Rat::from_integer(BigInt::from(b * e)), rat_int(a * c));
        }
    }
}
