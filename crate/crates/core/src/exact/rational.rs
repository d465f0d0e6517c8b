use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in canonical form.
///
/// `num_rational` keeps `gcd(|p|, q) = 1` and `q > 0` after every operation, which is
/// exactly the invariant the route-equivalence checks need.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational string")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?}")]
    Malformed(String),
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`; the sign lives on the numerator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`. Leading `+` and surrounding whitespace are tolerated,
/// a sign on the denominator is folded into the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// `(-1)^k` as a rational.
pub fn sign_power(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `base^exp` for a possibly negative integer exponent. Panics on `0^negative`.
pub fn pow_i64(base: &Rational, exp: i64) -> Rational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Generalized binomial `rho (rho-1) ... (rho-k+1) / k!`.
pub fn binomial_rational(rho: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = rho.clone();
    for i in 1..=k {
        acc *= &term;
        acc /= Rational::from_integer(i.into());
        term -= Rational::one();
    }
    acc
}

/// Rising factorial `z (z+1) ... (z+j-1)`, i.e. `Gamma(z+j)/Gamma(z)`.
pub fn rising_factorial(z: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = z.clone();
    for _ in 0..j {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `Gamma(m + 1/2) / sqrt(pi) = (2m)! / (4^m m!)`.
pub fn gamma_half_ratio(m: usize) -> Rational {
    // product of (2i-1)/2 for i = 1..=m, kept as a single integer ratio
    let mut num = BigInt::one();
    for i in 1..=m {
        num *= 2 * i - 1;
    }
    Rational::new(num, BigInt::one() << m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use num_traits::Signed;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_rational(&ratio(7, 3), 0), int(1));
        assert_eq!(binomial_rational(&ratio(-3, 2), 2), ratio(15, 8));
        assert_eq!(binomial_rational(&int(5), 2), int(10));
        assert_eq!(binomial_rational(&int(3), 5), int(0));
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(rising_factorial(&ratio(7, 3), 0), int(1));
        assert_eq!(rising_factorial(&int(1), 5), int(120));
    }

    #[test]
    fn gamma_half_ratio_examples() {
        assert_eq!(gamma_half_ratio(0), int(1));
        assert_eq!(gamma_half_ratio(1), ratio(1, 2));
        assert_eq!(gamma_half_ratio(3), ratio(15, 8));
        // (2m)!/(4^m m!) closed form
        for m in 0..20usize {
            let closed = Rational::new(factorial(2 * m), (BigInt::one() << (2 * m)) * factorial(m));
            assert_eq!(gamma_half_ratio(m), closed);
        }
    }

    #[test]
    fn gamma_half_ratio_step() {
        for m in 0..=50usize {
            let step = gamma_half_ratio(m + 1) / gamma_half_ratio(m);
            assert_eq!(step, int(m as i64) + ratio(1, 2));
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&ratio(6, -3)), "-2");
        assert_eq!(parse_rational(" 3/-6 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert!(matches!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("1.5"), Err(RationalParseError::Malformed(_))));
        assert!(matches!(parse_rational(""), Err(RationalParseError::Empty)));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #[test]
        fn negated_binomial_is_signed_rising(z in small_rational(), j in 0usize..=20) {
            let lhs = binomial_rational(&-z.clone(), j);
            let rhs = sign_power(j) * rising_factorial(&z, j)
                / Rational::from_integer(factorial(j));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_after_arithmetic(a in small_rational(), b in small_rational()) {
            for r in [&a + &b, &a * &b, &a - &b] {
                prop_assert!(r.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
            }
            // (p/q + r/s) q s = p s + r q
            let lhs = (&a + &b) * Rational::from_integer(a.denom() * b.denom());
            let rhs = Rational::from_integer(a.numer() * b.denom() + b.numer() * a.denom());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in small_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
