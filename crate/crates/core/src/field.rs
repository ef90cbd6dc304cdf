//! Coefficient fields.
//!
//! A [`Field`] value is a descriptor: it carries whatever runtime data the
//! arithmetic needs (the modulus for a prime field) and performs all element
//! operations. Elements themselves are plain data.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers in lowest terms.
pub type Rational = BigRational;

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Ord + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Maps a rational into the field; `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    /// True when the canonical printed form needs a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Unit `c` such that dividing a polynomial with coefficients `coeffs`
    /// (leading first) by `c` gives its primitive form.
    fn content(&self, coeffs: &[&Self::Elem]) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    /// Short name used in serialized output: `Q` or `GF(p)`.
    fn name(&self) -> String;
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.is_negative()
    }
    fn content(&self, coeffs: &[&Rational]) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        let c = Rational::new(num, den);
        match coeffs.first() {
            Some(lead) if lead.is_negative() => -c,
            _ => c,
        }
    }
    fn format(&self, a: &Rational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field GF(p) for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= (1 << 31) || p % 2 == 0 || !is_prime(p) {
            return Err(Error::Domain(format!(
                "{p} is not an odd prime below 2^31"
            )));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.reduce_bigint(q.numer()), &inv))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn content(&self, coeffs: &[&u64]) -> u64 {
        coeffs.first().map_or(1, |&&c| c)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = q(2, 4);
        assert_eq!(a.numer(), &BigInt::from(1));
        assert_eq!(a.denom(), &BigInt::from(2));
        let b = q(3, -6);
        assert_eq!(b.denom(), &BigInt::from(2));
        assert_eq!(Rationals.format(&b), "-1/2");
    }

    #[test]
    fn reduction_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&q(1, 2)), Some(4));
        assert_eq!(f.from_rational(&q(-3, 1)), Some(4));
        assert_eq!(f.from_rational(&q(1, 14)), None);
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..13, b in 0u64..13, c in 0u64..13) {
            let f = PrimeField::new(13).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_field_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let (a, b) = (q(an, ad), q(bn, bd));
            let f = Rationals;
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            let s = f.add(&a, &b);
            prop_assert!(s.denom().is_positive());
            prop_assert!(s.numer().gcd(s.denom()).is_one());
        }

        #[test]
        fn reduction_is_a_homomorphism(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let f = PrimeField::new(11).unwrap();
            let (a, b) = (q(an, ad), q(bn, bd));
            if let (Some(ra), Some(rb)) = (f.from_rational(&a), f.from_rational(&b)) {
                prop_assert_eq!(f.from_rational(&(&a * &b)), Some(f.mul(&ra, &rb)));
                prop_assert_eq!(f.from_rational(&(&a + &b)), Some(f.add(&ra, &rb)));
            }
        }
    }
}
