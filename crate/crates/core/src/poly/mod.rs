//! Univariate polynomials over `F_p`, stored constant term first.

mod parse;

pub use parse::{parse_poly, ParsedPoly};

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{domain, Result};
use crate::factor::{
    factorize, factorize_power_minus_one, factorize_u64, factorize_with, FactorConfig,
};
use crate::field::{element_order, FieldElement, PrimeField};

/// Polynomial over a prime field.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// has no coefficients and the leading coefficient is always nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

/// Outcome of a primitivity test, keeping the witness for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// `f(0) = 0`, so `X` is not a unit modulo `f`.
    ZeroConstant,
    Reducible,
    /// Irreducible, but `X^((p^n - 1)/q) = 1`: the order of `X` is a proper
    /// divisor of `p^n - 1`.
    OrderDeficient { prime: BigUint, order: BigUint },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

impl fmt::Display for Primitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitivity::Primitive => write!(f, "primitive"),
            Primitivity::ZeroConstant => write!(f, "constant term is zero"),
            Primitivity::Reducible => write!(f, "reducible"),
            Primitivity::OrderDeficient { prime, order } => write!(
                f,
                "X^((p^n-1)/{prime}) = 1; order of X is {order}"
            ),
        }
    }
}

impl Polynomial {
    /// Builds a polynomial from raw coefficients (constant first), reducing
    /// them mod p and trimming leading zeros.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut coeffs);
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(
            field,
            coeffs.iter().map(|&c| field.elem_i64(c).value()).collect(),
        )
    }

    pub fn zero(field: PrimeField) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    /// The indeterminate `X`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    /// `c * X^k`.
    pub fn monomial(field: PrimeField, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `X^n - 1`, the polynomial whose companion matrix is the cyclic shift.
    pub fn x_pow_minus_one(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = field.neg(1);
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    /// Raw residues, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let k = self.field;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| k.add(k.mul(acc, x.value()), c));
        k.elem(v)
    }

    fn same_field(&self, other: &Polynomial) {
        assert_eq!(
            self.field, other.field,
            "polynomials over different fields"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        let k = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                k.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::new(k, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        let k = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                k.sub(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::new(k, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let k = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Self::new(k, out)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let k = self.field;
        Self::new(k, self.coeffs.iter().map(|&a| k.mul(a, c.value())).collect())
    }

    /// Euclidean division. The divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor);
        let Some(d) = divisor.degree() else {
            return domain("division by the zero polynomial");
        };
        let k = self.field;
        let lead_inv = k
            .inv(*divisor.coeffs.last().unwrap())
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(k), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = k.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - d] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] = k.sub(rem[idx], k.mul(c, b));
            }
        }
        rem.truncate(d);
        Ok((Self::new(k, quot), Self::new(k, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading().value()) {
            Some(inv) => self.scale(self.field.elem(inv)),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Polynomial) -> Result<Polynomial> {
        let mut acc = Self::one(self.field).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    fn require_monic_nonconstant(&self) -> Result<usize> {
        match self.degree() {
            Some(d) if d >= 1 && self.is_monic() => Ok(d),
            Some(d) if d >= 1 => domain(format!("{self} is not monic")),
            _ => domain(format!("{self} is constant")),
        }
    }

    /// Rabin's test: `X^(p^n) = X mod f`, and `gcd(X^(p^(n/q)) - X, f) = 1`
    /// for every prime `q | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.require_monic_nonconstant()?;
        if n == 1 {
            return Ok(true);
        }
        let p = BigUint::from(self.modulus());
        let x = Self::x(self.field).rem(self)?;
        // frobenius[k] = X^(p^k) mod f
        let mut frobenius = Vec::with_capacity(n + 1);
        frobenius.push(x.clone());
        for k in 1..=n {
            let next = frobenius[k - 1].pow_mod(&p, self)?;
            frobenius.push(next);
        }
        if frobenius[n] != x {
            return Ok(false);
        }
        let n_fact = factorize_u64(n as u64)?;
        for q in n_fact.primes() {
            let q = q.to_usize().expect("prime factor of a usize");
            let h = frobenius[n / q].sub(&x);
            if !h.gcd(self).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full primitivity verdict with the default factorization budget.
    pub fn primitivity(&self) -> Result<Primitivity> {
        self.primitivity_with(&FactorConfig::default())
    }

    /// Primitivity via the order of `X` in `F_p[X]/(f)`: `f` irreducible and
    /// `X^((p^n - 1)/q) != 1` for every prime `q | p^n - 1`.
    pub fn primitivity_with(&self, config: &FactorConfig) -> Result<Primitivity> {
        let n = self.require_monic_nonconstant()?;
        if self.coeffs[0] == 0 {
            return Ok(Primitivity::ZeroConstant);
        }
        if !self.is_irreducible()? {
            return Ok(Primitivity::Reducible);
        }
        let fact = if *config == FactorConfig::default() {
            factorize_power_minus_one(self.modulus(), n as u32)?
        } else {
            factorize_with(&(BigUint::from(self.modulus()).pow(n as u32) - 1u32), config)?
        };
        let group_order = fact.n().clone();
        if n == 1 {
            // X = -a_0 modulo X + a_0
            let x = -self.coeff(0);
            let order = element_order(x, &fact)?;
            let p_minus_one = self.modulus() - 1;
            if order == p_minus_one {
                return Ok(Primitivity::Primitive);
            }
            let prime = fact
                .primes()
                .find(|q| x.pow_u64(p_minus_one / q.to_u64().unwrap()).is_one())
                .cloned()
                .expect("a deficient order misses some prime of p - 1");
            return Ok(Primitivity::OrderDeficient {
                prime,
                order: BigUint::from(order),
            });
        }
        let x = Self::x(self.field);
        let mut failed = None;
        for q in fact.primes() {
            if x.pow_mod(&(&group_order / q), self)?.is_one() {
                failed = Some(q.clone());
                break;
            }
        }
        let Some(prime) = failed else {
            return Ok(Primitivity::Primitive);
        };
        // Exact order of X, for the witness.
        let mut order = group_order;
        for q in fact.primes() {
            while order.is_multiple_of(q) && x.pow_mod(&(&order / q), self)?.is_one() {
                order /= q;
            }
        }
        Ok(Primitivity::OrderDeficient { prime, order })
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity()?.is_primitive())
    }

    /// Exact order of `X` in `(F_p[X]/(f))^*`, for any monic `f`, or `None`
    /// when `f(0) = 0`.
    ///
    /// The unit group's exponent divides
    /// `lcm(p - 1, ..., p^n - 1) * p^t` with `p^t >= n`, so the order is
    /// found by stripping primes from that multiple.
    pub fn x_order(&self) -> Result<Option<BigUint>> {
        let n = self.require_monic_nonconstant()?;
        if self.coeffs[0] == 0 {
            return Ok(None);
        }
        let p = BigUint::from(self.modulus());
        let mut multiple = BigUint::from(1u32);
        let mut primes: Vec<BigUint> = Vec::new();
        for d in 1..=n {
            let q = p.pow(d as u32) - 1u32;
            for r in factorize(&q)?.primes() {
                if !primes.contains(r) {
                    primes.push(r.clone());
                }
            }
            multiple = multiple.lcm(&q);
        }
        let mut p_part = BigUint::from(1u32);
        while p_part < BigUint::from(n) {
            p_part *= &p;
        }
        if p_part > BigUint::from(1u32) {
            multiple *= p_part;
            primes.push(p);
        }
        let x = Self::x(self.field);
        assert!(x.pow_mod(&multiple, self)?.is_one(), "unit group exponent bound");
        let mut order = multiple;
        for q in &primes {
            while order.is_multiple_of(q) && x.pow_mod(&(&order / q), self)?.is_one() {
                order /= q;
            }
        }
        Ok(Some(order))
    }

    /// Order of `X` modulo `self` by repeated multiplication, giving up after
    /// `limit` steps. `None` when `X` is not a unit or the limit is hit.
    pub fn x_order_brute_force(&self, limit: u64) -> Option<u64> {
        let n = self.degree()?;
        if n == 0 || self.coeffs[0] == 0 {
            return None;
        }
        let k = self.field;
        let lead_inv = k.inv(*self.coeffs.last().unwrap())?;
        // r = X^e mod f as a dense length-n residue
        let mut r = vec![0u64; n];
        let mut one = vec![0u64; n];
        one[0] = 1;
        if n == 1 {
            // X = -f0/f1
            r[0] = k.neg(k.mul(self.coeffs[0], lead_inv));
        } else {
            r[1] = 1;
        }
        for e in 1..=limit {
            if r == one {
                return Some(e);
            }
            // multiply by X: shift up, reduce the overflow coefficient
            let top = k.mul(r[n - 1], lead_inv);
            for i in (1..n).rev() {
                r[i] = k.sub(r[i - 1], k.mul(top, self.coeffs[i]));
            }
            r[0] = k.neg(k.mul(top, self.coeffs[0]));
        }
        None
    }
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

/// `X^e mod f` for monic, nonconstant `f`.
pub fn poly_powmod(e: &BigUint, f: &Polynomial) -> Result<Polynomial> {
    f.require_monic_nonconstant()?;
    Polynomial::x(f.field()).pow_mod(e, f)
}

/// Prints in the tables' notation: descending exponents, zero terms
/// omitted, coefficient 1 omitted on nonconstant terms (`x^7+x^6+2`).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic polynomials of degree `n` in search order: the coefficient vector
/// `(a_0, ..., a_{n-1})` read as base-p digits with `a_0` least significant.
pub fn monic_polys(field: PrimeField, n: usize) -> impl Iterator<Item = Polynomial> {
    let p = field.modulus();
    let mut digits = vec![0u64; n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let poly = Polynomial::new(field, coeffs);
        // advance the odometer
        done = true;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                done = false;
                break;
            }
            *d = 0;
        }
        Some(poly)
    })
}

/// First primitive polynomial of degree `n` in [`monic_polys`] order.
pub fn first_primitive(field: PrimeField, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return domain("degree must be at least 1");
    }
    for f in monic_polys(field, n) {
        if f.coeffs[0] == 0 {
            continue;
        }
        if f.is_primitive()? {
            return Ok(f);
        }
    }
    domain(format!("no primitive polynomial of degree {n} over F_{}", field.modulus()))
}
