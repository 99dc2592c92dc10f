//! The conjugated companion-matrix construction.
//!
//! For a monic `f = X^n + a_{n-1} X^{n-1} + ... + a_0` over `F_p` with
//! companion matrix `C`, and `G = companion(X^n - 1)` the cyclic shift:
//!
//! - `G_1 = C`, `G_{k+1} = G G_k G^-1`;
//! - the plain product `G_n ... G_1` equals `(G^-1 C)^n`;
//! - `K = C G_n ... G_1 = C (G^-1 C)^n` is again a companion matrix; with
//!   `l = -a_0` its polynomial has constant term `a_0 l^n` and middle
//!   coefficients `a_i (1 + l + ... + l^n)`;
//! - `G^-1 C` is the identity except for its last column
//!   `(-a_1, ..., -a_{n-1}, -a_0)`, and when `-a_0 != 1` it diagonalizes as
//!   `Q^-1 (G^-1 C) Q = diag(1, ..., 1, -a_0)`.
//!
//! `K` differs from `C` exactly when `(-a_0)^n != 1`, which together with
//! `-a_0 != 1` holds for every primitive `f` once `p >= 5` and
//! `(p - 1)` does not divide `n`.

mod report;

pub use report::{verify_instance, verify_text, ConjectureReport, VerifyOptions};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::{Matrix, Vector};
use crate::poly::Polynomial;

/// Smallest dimension the construction is defined for.
pub const MIN_DIMENSION: usize = 3;

/// Whether the generation theorem decides an instance.
///
/// `NotDecided` is the tables' "(False)": the sufficient condition fails,
/// which says nothing about whether generation actually holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    NotDecided,
}

impl Verdict {
    /// The tables' spelling: `True` or `(False)`.
    pub fn table_label(self) -> &'static str {
        match self {
            Verdict::True => "True",
            Verdict::NotDecided => "(False)",
        }
    }

    pub fn from_table_label(label: &str) -> Option<Verdict> {
        match label.trim() {
            "True" => Some(Verdict::True),
            "(False)" | "NotDecided" => Some(Verdict::NotDecided),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "True"),
            Verdict::NotDecided => write!(f, "NotDecided"),
        }
    }
}

/// `True` iff `p >= 5` and `(p - 1) ∤ n`. Depends on `(p, n)` only.
pub fn verdict_for(p: u64, n: usize) -> Result<Verdict> {
    if p < 2 {
        return domain(format!("p = {p} is not a prime"));
    }
    if n < MIN_DIMENSION {
        return domain(format!("n = {n} is below {MIN_DIMENSION}"));
    }
    if p >= 5 && !(n as u64).is_multiple_of(p - 1) {
        Ok(Verdict::True)
    } else {
        Ok(Verdict::NotDecided)
    }
}

/// The two inequations the theorem needs, evaluated for one `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conditions {
    pub minus_a0: FieldElement,
    pub minus_a0_pow_n: FieldElement,
    /// `r` in `n = (p - 1) q + r`, `0 <= r < p - 1`.
    pub reduced_exponent: u64,
    /// `-a_0 != 1`
    pub cond_a0: bool,
    /// `(-a_0)^n != 1`
    pub cond_a0n: bool,
}

/// Evaluates `-a_0 != 1` and `(-a_0)^n != 1` for `f` of degree `n`.
///
/// `(-a_0)^n` is computed through the reduction `n = (p - 1) q + r`, and
/// checked against direct exponentiation.
pub fn condition_check(field: PrimeField, n: usize, f: &Polynomial) -> Result<Conditions> {
    if f.field() != field {
        return Err(Error::ModulusMismatch(field.modulus(), f.modulus()));
    }
    if f.degree() != Some(n) {
        return domain(format!("{f} does not have degree {n}"));
    }
    let minus_a0 = -f.coeff(0);
    let direct = minus_a0.pow_u64(n as u64);
    let reduced_exponent = n as u64 % (field.modulus() - 1);
    if !minus_a0.is_zero() {
        let reduced = minus_a0.pow_u64(reduced_exponent);
        assert_eq!(reduced, direct, "Fermat reduction disagrees with direct power");
    }
    Ok(Conditions {
        minus_a0,
        minus_a0_pow_n: direct,
        reduced_exponent,
        cond_a0: !minus_a0.is_one(),
        cond_a0n: !direct.is_one(),
    })
}

/// `C`, `G` and the conjugates `G_1, ..., G_n` for one polynomial.
#[derive(Debug, Clone)]
pub struct ConstructionInstance {
    f: Polynomial,
    c: Matrix,
    g: Matrix,
    g_inv: Matrix,
    conjugates: Vec<Matrix>,
}

impl ConstructionInstance {
    /// Builds the instance for a primitive `f` of degree `n >= 3`.
    pub fn build(f: &Polynomial) -> Result<Self> {
        let inst = Self::assemble(f)?;
        let verdict = f.primitivity()?;
        if !verdict.is_primitive() {
            return Err(Error::NotPrimitive(format!("{f}: {verdict}")));
        }
        Ok(inst)
    }

    /// Builds the matrices without requiring primitivity; only monicity and
    /// `n >= 3` are checked.
    pub fn assemble(f: &Polynomial) -> Result<Self> {
        let n = f.degree().unwrap_or(0);
        if n < MIN_DIMENSION {
            return domain(format!(
                "degree {n} < {MIN_DIMENSION}: the construction needs n >= 3"
            ));
        }
        if !f.is_monic() {
            return domain(format!("{f} is not monic"));
        }
        let field = f.field();
        let c = Matrix::companion(f)?;
        let g = Matrix::companion(&Polynomial::x_pow_minus_one(field, n))?;
        let g_inv = g.inverse()?;
        let mut conjugates = Vec::with_capacity(n);
        conjugates.push(c.clone());
        for k in 1..n {
            let next = &(&g * &conjugates[k - 1]) * &g_inv;
            conjugates.push(next);
        }
        Ok(ConstructionInstance {
            f: f.clone(),
            c,
            g,
            g_inv,
            conjugates,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    pub fn n(&self) -> usize {
        self.c.dim()
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn g_inv(&self) -> &Matrix {
        &self.g_inv
    }

    /// `G_1, ..., G_n` (index 0 holds `G_1 = C`).
    pub fn conjugates(&self) -> &[Matrix] {
        &self.conjugates
    }

    pub fn minus_a0(&self) -> FieldElement {
        -self.f.coeff(0)
    }

    /// `G_n G_{n-1} ... G_1`, which equals `(G^-1 C)^n`.
    pub fn plain_product(&self) -> Matrix {
        self.conjugates
            .iter()
            .fold(Matrix::identity(self.field(), self.n()), |acc, gk| gk * &acc)
    }

    /// `K = C G_n ... G_1`, the companion-shaped product.
    pub fn k_product(&self) -> Matrix {
        &self.c * &self.plain_product()
    }

    /// `G^-1 C`.
    pub fn g_inv_c(&self) -> Matrix {
        &self.g_inv * &self.c
    }

    /// `C (G^-1 C)^n` by repeated multiplication.
    pub fn k_closed_form(&self) -> Matrix {
        let step = self.g_inv_c();
        let mut acc = self.c.clone();
        for _ in 0..self.n() {
            acc = &acc * &step;
        }
        acc
    }

    /// `(Q, D)` with `Q^-1 (G^-1 C) Q = D`.
    ///
    /// `Q` is the identity with last column
    /// `(a_1/(1+a_0), ..., a_{n-1}/(1+a_0), 1)`; `D` is the identity with
    /// `-a_0` in the bottom-right corner. Undefined when `-a_0 = 1`.
    pub fn eigen_qd(&self) -> Result<(Matrix, Matrix)> {
        let field = self.field();
        let n = self.n();
        let minus_a0 = self.minus_a0();
        if minus_a0.is_one() {
            return Err(Error::NonDiagonalizable);
        }
        let scale = (field.one() + self.f.coeff(0)).inverse()?;
        let mut q = Matrix::identity(field, n);
        for i in 0..n - 1 {
            q.set(i, n - 1, self.f.coeff(i + 1) * scale);
        }
        let mut diag = vec![1u64; n];
        diag[n - 1] = minus_a0.value();
        let d = Matrix::diagonal(field, &diag);
        let check = &(&q.inverse()? * &self.g_inv_c()) * &q;
        assert_eq!(check, d, "Q^-1 (G^-1 C) Q != D for {}", self.f);
        Ok((q, d))
    }

    /// The matrix `G^-1 C` should equal: identity with last column
    /// `(-a_1, ..., -a_{n-1}, -a_0)`.
    pub fn expected_g_inv_c(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::identity(self.field(), n);
        for i in 0..n - 1 {
            m.set(i, n - 1, -self.f.coeff(i + 1));
        }
        m.set(n - 1, n - 1, self.minus_a0());
        m
    }

    /// The polynomial `g` with `K = companion(g)`. With `l = -a_0`:
    /// `b_0 = a_0 l^n` and `b_i = a_i (1 + l + ... + l^n)` for `0 < i < n`.
    pub fn expected_k_poly(&self) -> Polynomial {
        let n = self.n();
        let field = self.field();
        let l = self.minus_a0();
        let mut power = field.one();
        let mut geometric = field.one();
        for _ in 0..n {
            power = power * l;
            geometric = geometric + power;
        }
        let mut coeffs = vec![(self.f.coeff(0) * power).value()];
        coeffs.extend((1..n).map(|i| (self.f.coeff(i) * geometric).value()));
        coeffs.push(1);
        Polynomial::new(field, coeffs)
    }

    /// Whether `K E_n = (-a_0)^n C E_n`. This only holds when `(-a_0)^n = 1`
    /// or `a_1 = ... = a_{n-1} = 0`; in general the middle entries of the
    /// last column pick up the extra factor `(1 + l + ... + l^(n-1))`.
    pub fn last_column_is_scaled_c(&self, k: &Matrix) -> bool {
        let n = self.n();
        let e_n = Vector::basis(self.field(), n, n);
        let lhs = k * &e_n;
        let rhs = (&self.c * &e_n).scale(self.minus_a0().pow_u64(n as u64));
        lhs == rhs
    }

    /// `K E_k = E_{k+1}` for `1 <= k < n`.
    pub fn k_shifts_basis(&self, k: &Matrix) -> bool {
        let n = self.n();
        let field = self.field();
        (1..n).all(|j| k * &Vector::basis(field, n, j) == Vector::basis(field, n, j + 1))
    }
}

/// [`ConstructionInstance::build`] as a free function.
pub fn build_instance(f: &Polynomial) -> Result<ConstructionInstance> {
    ConstructionInstance::build(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn parse(text: &str, p: u64) -> Polynomial {
        parse_poly(text, k(p)).unwrap().poly
    }

    #[test]
    fn verdicts_from_tables() {
        assert_eq!(verdict_for(5, 12).unwrap(), Verdict::NotDecided);
        assert_eq!(verdict_for(11, 5).unwrap(), Verdict::True);
        assert_eq!(verdict_for(5, 9).unwrap(), Verdict::True);
        assert_eq!(verdict_for(3, 5).unwrap(), Verdict::NotDecided);
        assert_eq!(verdict_for(2, 5).unwrap(), Verdict::NotDecided);
        assert!(verdict_for(5, 2).is_err());
        assert!(verdict_for(1, 5).is_err());
    }

    #[test]
    fn build_examples() {
        let f = parse("x^7+x^6+2", 5);
        let inst = build_instance(&f).unwrap();
        assert_eq!(inst.conjugates()[0], *inst.c());
        assert_eq!(inst.conjugates().len(), 7);
        assert!(matches!(
            build_instance(&parse("x^2+x+1", 5)),
            Err(Error::Domain(_))
        ));
        // irreducible over F_5, but X has order 62
        let g = parse("x^3+x^2+1", 5);
        assert_eq!(g.x_order_brute_force(1000), Some(62));
        match build_instance(&g) {
            Err(Error::NotPrimitive(msg)) => assert!(msg.contains("x^3+x^2+1")),
            other => panic!("expected NotPrimitive, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_invariant() {
        let inst = build_instance(&parse("x^5+x^4+x^3+3", 11)).unwrap();
        for w in inst.conjugates().windows(2) {
            assert_eq!(w[1], &(inst.g() * &w[0]) * inst.g_inv());
        }
        assert!(inst.g().pow(5).is_identity());
    }

    #[test]
    fn closed_form_examples() {
        let inst = build_instance(&parse("x^7+x^6+2", 5)).unwrap();
        assert_eq!(inst.k_product(), inst.k_closed_form());
        assert_eq!(inst.g_inv_c(), inst.expected_g_inv_c());
        // plain product = (G^-1 C)^n
        assert_eq!(inst.plain_product(), inst.g_inv_c().pow(7));

        let inst = build_instance(&parse("x^3+x^2+17", 37)).unwrap();
        assert_eq!(inst.g_inv_c().get(2, 2).value(), 20);
    }

    #[test]
    fn collapse_when_exponent_is_multiple_of_p_minus_one() {
        let inst = build_instance(&parse("x^8+x^5+x^3+3", 5)).unwrap();
        assert_eq!(inst.k_product(), *inst.c());
        let cond = condition_check(k(5), 8, inst.f()).unwrap();
        assert!(!cond.cond_a0n);
        assert_eq!(cond.reduced_exponent, 0);
    }

    #[test]
    fn eigen_qd_example() {
        let inst = build_instance(&parse("x^3+x^2+17", 37)).unwrap();
        let (q, d) = inst.eigen_qd().unwrap();
        assert_eq!(q.column(2).entries(), &[0, 35, 1]);
        assert_eq!(d.get(2, 2), inst.minus_a0());
        // eigenvector check: (G^-1 C) V = (-a0) V
        let v = q.column(2);
        assert_eq!(&inst.g_inv_c() * &v, v.scale(inst.minus_a0()));
    }

    #[test]
    fn eigen_qd_refuses_minus_a0_one() {
        // a_0 = -1, so -a_0 = 1; x^3+x+4 over F_5, primitivity irrelevant
        let inst = ConstructionInstance::assemble(&parse("x^3+x+4", 5)).unwrap();
        assert_eq!(inst.eigen_qd().unwrap_err(), Error::NonDiagonalizable);
        // the product route still works
        assert_eq!(inst.k_product(), inst.k_closed_form());
    }

    #[test]
    fn condition_examples() {
        let f = parse("x^7+x^6+2", 5);
        let c = condition_check(k(5), 7, &f).unwrap();
        assert_eq!(c.minus_a0.value(), 3);
        assert_eq!(c.minus_a0_pow_n.value(), 2);
        assert!(c.cond_a0 && c.cond_a0n);
        let f = parse("x^6+x^5+x^4+3", 7);
        assert!(!condition_check(k(7), 6, &f).unwrap().cond_a0n);
        assert!(condition_check(k(7), 5, &f).is_err());
        assert!(condition_check(k(5), 6, &f).is_err());
    }

    #[test]
    fn k_matches_expected_companion() {
        let inst = build_instance(&parse("x^7+x^6+2", 5)).unwrap();
        let k_mat = inst.k_product();
        // l = 3, l^7 = 2, 1 + l + ... + l^7 = 0
        assert_eq!(k_mat.as_companion_poly().unwrap(), parse("x^7+4", 5));
        assert_eq!(inst.expected_k_poly(), parse("x^7+4", 5));
        assert!(inst.k_shifts_basis(&k_mat));
        assert!(!inst.last_column_is_scaled_c(&k_mat));
        assert_ne!(k_mat, *inst.c());
    }

    #[test]
    fn verdict_labels() {
        assert_eq!(Verdict::from_table_label("(False)"), Some(Verdict::NotDecided));
        assert_eq!(Verdict::from_table_label("True"), Some(Verdict::True));
        assert_eq!(Verdict::NotDecided.table_label(), "(False)");
        assert_eq!(Verdict::from_table_label("False"), None);
    }
}
