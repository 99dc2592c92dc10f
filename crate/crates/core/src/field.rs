//! Prime fields `F_p` and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::factor::{factorize_u64, is_prime_u64, Factorization};

/// A validated prime modulus. Cheap to copy and share.
///
/// Moduli are limited to `p < 2^32` so that products of two residues fit
/// in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return domain(format!("modulus {p} exceeds 2^32"));
        }
        if !is_prime_u64(p) {
            return domain(format!("{p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn elem(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.p,
            modulus: self.p,
        }
    }

    /// Reduces a signed integer.
    pub fn elem_i64(self, value: i64) -> FieldElement {
        self.elem(value.rem_euclid(self.p as i64) as u64)
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    // Raw residue arithmetic, used by the polynomial and matrix kernels.

    #[inline]
    pub(crate) fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue, via Fermat.
    pub(crate) fn inv(self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Factorization of the multiplicative group order `p - 1`.
    pub fn unit_group_factorization(self) -> Factorization {
        factorize_u64(self.p - 1).expect("p - 1 < 2^32 always factors by trial division")
    }
}

/// A residue modulo a prime. Always canonical: `value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_one(self) -> bool {
        self.value == 1 % self.modulus
    }

    fn check(self, other: FieldElement) -> Result<PrimeField> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        } else {
            Ok(self.field())
        }
    }

    pub fn checked_add(self, other: FieldElement) -> Result<FieldElement> {
        let k = self.check(other)?;
        Ok(k.elem(k.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: FieldElement) -> Result<FieldElement> {
        let k = self.check(other)?;
        Ok(k.elem(k.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: FieldElement) -> Result<FieldElement> {
        let k = self.check(other)?;
        Ok(k.elem(k.mul(self.value, other.value)))
    }

    pub fn inverse(self) -> Result<FieldElement> {
        match self.field().inv(self.value) {
            Some(v) => Ok(self.field().elem(v)),
            None => domain("0 has no multiplicative inverse"),
        }
    }

    pub fn pow_u64(self, exp: u64) -> FieldElement {
        self.field().elem(self.field().pow(self.value, exp))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;

            /// Panics when the moduli differ; use the `checked_*` form to
            /// get a recoverable error instead.
            fn $method(self, rhs: FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.field().elem(self.field().neg(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `base^exp` by square-and-multiply. `fp_pow(x, 0) = 1`, including `x = 0`.
pub fn fp_pow(base: FieldElement, exp: &BigUint) -> FieldElement {
    let k = base.field();
    if base.is_zero() {
        return if exp.is_zero() { k.one() } else { k.zero() };
    }
    // Exponents act modulo p - 1 on units.
    let e = (exp % (k.modulus() - 1))
        .to_u64()
        .expect("residue below p - 1 fits in u64");
    base.pow_u64(e)
}

/// Least `e >= 1` with `x^e = 1`, found by dividing prime factors out of the
/// group order `p - 1` (given by its factorization).
pub fn element_order(x: FieldElement, group_order: &Factorization) -> Result<u64> {
    if x.is_zero() {
        return domain("order of 0 is undefined");
    }
    let Some(mut order) = group_order.n().to_u64() else {
        return domain("group order does not fit in 64 bits");
    };
    if order != x.modulus() - 1 {
        return domain(format!(
            "factorization is of {order}, not of p - 1 = {}",
            x.modulus() - 1
        ));
    }
    for (q, _) in group_order.factors() {
        let q = q.to_u64().expect("factor of a u64 fits in u64");
        while order % q == 0 && x.pow_u64(order / q).is_one() {
            order /= q;
        }
    }
    Ok(order)
}

/// True iff `x` generates `F_p^×`.
pub fn is_generator(x: FieldElement) -> Result<bool> {
    let fact = x.field().unit_group_factorization();
    Ok(element_order(x, &fact)? == x.modulus() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn brute_order(x: u64, p: u64) -> u64 {
        let mut acc = x % p;
        let mut e = 1;
        while acc != 1 {
            acc = acc * x % p;
            e += 1;
        }
        e
    }

    #[test]
    fn rejects_composite_and_oversized_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(4_294_967_311).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn pow_examples() {
        let k = f(5);
        // 3^7 by repeated multiplication: 3, 4, 2, 1, 3, 4, 2
        let mut acc = 1;
        for _ in 0..7 {
            acc = acc * 3 % 5;
        }
        assert_eq!(acc, 2);
        assert_eq!(fp_pow(k.elem(3), &BigUint::from(7u32)).value(), acc);
        assert_eq!(fp_pow(k.elem(2), &BigUint::from(4u32)).value(), 1);
        for x in 0..5 {
            assert_eq!(fp_pow(k.elem(x), &BigUint::from(1u32)), k.elem(x));
        }
        assert_eq!(fp_pow(k.zero(), &BigUint::zero()), k.one());
        assert_eq!(fp_pow(k.zero(), &(BigUint::from(1u32) << 100u32)), k.zero());
        let huge = (BigUint::from(1u32) << 100u32) + 3u32;
        // 2^(2^100 + 3) = 2^3 in F_5 since 4 | 2^100.
        assert_eq!(fp_pow(k.elem(2), &huge).value(), 3);
    }

    #[test]
    fn order_examples() {
        let k = f(5);
        let fact = k.unit_group_factorization();
        assert_eq!(element_order(k.elem(2), &fact).unwrap(), 4);
        assert_eq!(element_order(k.elem(1), &fact).unwrap(), 1);
        assert_eq!(element_order(k.elem(4), &fact).unwrap(), 2);
        assert!(element_order(k.zero(), &fact).is_err());
        assert!(is_generator(k.elem(2)).unwrap());
        assert!(!is_generator(k.elem(1)).unwrap());
        assert!(!is_generator(k.elem(4)).unwrap());
        assert!(is_generator(k.zero()).is_err());
    }

    #[test]
    fn mixing_moduli_is_an_error() {
        let a = f(5).elem(2);
        let b = f(7).elem(2);
        assert_eq!(a.checked_add(b), Err(Error::ModulusMismatch(5, 7)));
        assert!(std::panic::catch_unwind(|| a * b).is_err());
    }

    #[test]
    fn fermat_holds_for_small_primes() {
        for p in crate::factor::primes_up_to(10_000) {
            let k = f(p);
            let e = BigUint::from(p - 1);
            // Sample every residue for small p, a stride otherwise.
            let step = if p < 500 { 1 } else { 37 };
            for x in (1..p).step_by(step) {
                assert!(fp_pow(k.elem(x), &e).is_one(), "{x}^{} mod {p}", p - 1);
            }
        }
    }

    #[test]
    fn orders_and_generators_match_brute_force() {
        for p in crate::factor::primes_up_to(200) {
            let k = f(p);
            let fact = k.unit_group_factorization();
            for x in 1..p {
                let ord = element_order(k.elem(x), &fact).unwrap();
                assert_eq!(ord, brute_order(x, p), "order of {x} mod {p}");
                assert_eq!((p - 1) % ord, 0);
                assert_eq!(is_generator(k.elem(x)).unwrap(), brute_order(x, p) == p - 1);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let k = f(37);
        assert_eq!(k.elem(18).inverse().unwrap().value(), 35);
        for x in 1..37 {
            assert!((k.elem(x) * k.elem(x).inverse().unwrap()).is_one());
        }
        assert!(k.zero().inverse().is_err());
    }
}
