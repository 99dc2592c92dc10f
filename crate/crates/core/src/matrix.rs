//! Dense square matrices and column vectors over `F_p`.
//!
//! Indices are 0-based in code. The canonical basis vector written `E_k`
//! (1-based, `1 <= k <= n`) is `Vector::basis(field, n, k)`, which sets
//! entry `k - 1`.

use std::fmt;
use std::ops::Mul;

use crate::error::{domain, Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::Polynomial;

/// Square `n x n` matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    n: usize,
    data: Vec<u64>,
}

/// Column vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: PrimeField,
    data: Vec<u64>,
}

impl Vector {
    pub fn new(field: PrimeField, entries: Vec<u64>) -> Self {
        let p = field.modulus();
        Vector {
            field,
            data: entries.into_iter().map(|v| v % p).collect(),
        }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Vector {
            field,
            data: vec![0; n],
        }
    }

    /// `E_k`, with `k` counted from 1.
    pub fn basis(field: PrimeField, n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k), "E_{k} out of range for n = {n}");
        let mut v = Self::zero(field, n);
        v.data[k - 1] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Entry `i`, 0-based.
    pub fn get(&self, i: usize) -> FieldElement {
        self.field.elem(self.data[i])
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn scale(&self, c: FieldElement) -> Vector {
        let k = self.field;
        Vector {
            field: k,
            data: self.data.iter().map(|&v| k.mul(v, c.value())).collect(),
        }
    }
}

impl Matrix {
    /// Builds a matrix from rows of raw values (reduced mod p).
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return domain("matrix dimension must be at least 1");
        }
        if rows.iter().any(|r| r.len() != n) {
            return domain("rows must all have length n");
        }
        let p = field.modulus();
        Ok(Matrix {
            field,
            n,
            data: rows.iter().flatten().map(|&v| v % p).collect(),
        })
    }

    pub(crate) fn from_raw(field: PrimeField, n: usize, data: Vec<u64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Matrix { field, n, data }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Matrix {
            field,
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Identity except for the diagonal entries given.
    pub fn diagonal(field: PrimeField, diag: &[u64]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(field, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d % field.modulus();
        }
        m
    }

    /// Companion matrix of a monic `f = X^n + a_{n-1} X^{n-1} + ... + a_0`:
    /// ones on the subdiagonal, last column `(-a_0, ..., -a_{n-1})`.
    pub fn companion(f: &Polynomial) -> Result<Self> {
        let n = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return domain(format!("companion matrix needs degree >= 1, got {f}")),
        };
        if !f.is_monic() {
            return domain(format!("{f} is not monic"));
        }
        let k = f.field();
        let mut m = Self::zero(k, n);
        for i in 1..n {
            m.data[i * n + (i - 1)] = 1;
        }
        for i in 0..n {
            m.data[i * n + (n - 1)] = k.neg(f.coeffs()[i]);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Entry at row `i`, column `j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.elem(self.data[i * self.n + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.modulus(), self.field.modulus());
        self.data[i * self.n + j] = v.value();
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    /// Column `j` (0-based), i.e. the image of `E_{j+1}`.
    pub fn column(&self, j: usize) -> Vector {
        Vector {
            field: self.field,
            data: (0..self.n).map(|i| self.data[i * self.n + j]).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.n != other.n {
            return domain(format!("dimension mismatch: {} vs {}", self.n, other.n));
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let (n, k) = (self.n, self.field);
        let p = k.modulus();
        let mut out = vec![0u64; n * n];
        // p < 2^32, so a * b fits in a u64
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (l, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let src = &other.data[l * n..(l + 1) * n];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = (*d + a * b % p) % p;
                }
            }
        }
        Ok(Matrix::from_raw(k, n, out))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let k = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| k.sub(a, b))
            .collect();
        Ok(Matrix::from_raw(k, self.n, data))
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.field != self.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                v.field.modulus(),
            ));
        }
        if v.len() != self.n {
            return domain(format!("vector length {} vs dimension {}", v.len(), self.n));
        }
        let k = self.field;
        let data = self
            .data
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(&v.data)
                    .fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect();
        Ok(Vector { field: k, data })
    }

    /// Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        let (n, k) = (self.n, self.field);
        let mut a = self.data.clone();
        let mut inv = Self::identity(k, n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let scale = k.inv(a[col * n + col]).expect("pivot is nonzero");
            for j in 0..n {
                a[col * n + j] = k.mul(a[col * n + j], scale);
                inv[col * n + j] = k.mul(inv[col * n + j], scale);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = k.sub(a[r * n + j], k.mul(factor, a[col * n + j]));
                    inv[r * n + j] = k.sub(inv[r * n + j], k.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(Matrix::from_raw(k, n, inv))
    }

    /// `A^e` by square-and-multiply; `A^0 = I`.
    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut acc = Self::identity(self.field, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Row echelon form; returns (rank, determinant).
    fn eliminate(&self) -> (usize, FieldElement) {
        let (n, k) = (self.n, self.field);
        let mut a = self.data.clone();
        let mut det = 1u64;
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    a.swap(pivot * n + j, rank * n + j);
                }
                det = k.neg(det);
            }
            let pv = a[rank * n + col];
            det = k.mul(det, pv);
            let pinv = k.inv(pv).expect("pivot is nonzero");
            for r in rank + 1..n {
                let factor = k.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = k.sub(a[r * n + j], k.mul(factor, a[rank * n + j]));
                }
            }
            rank += 1;
        }
        (rank, k.elem(det))
    }

    pub fn det(&self) -> FieldElement {
        self.eliminate().1
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Recovers `g` from `A = companion(g)`. The shape test is exact:
    /// subdiagonal ones and zeros everywhere else outside the last column.
    pub fn as_companion_poly(&self) -> Result<Polynomial> {
        let (n, k) = (self.n, self.field);
        if n < 2 {
            return domain("companion shape needs n >= 2");
        }
        for i in 0..n {
            for j in 0..n - 1 {
                let want = u64::from(i == j + 1);
                if self.data[i * n + j] != want {
                    return Err(Error::NotCompanion);
                }
            }
        }
        let mut coeffs: Vec<u64> = (0..n).map(|i| k.neg(self.data[i * n + n - 1])).collect();
        coeffs.push(1);
        Ok(Polynomial::new(k, coeffs))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on dimension or modulus mismatch; see [`Matrix::mat_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&Vector> for &Matrix {
    type Output = Vector;

    fn mul(self, rhs: &Vector) -> Vector {
        self.apply(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.field.modulus().saturating_sub(1).to_string().len();
        for row in self.data.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
