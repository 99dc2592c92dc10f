//! Permutation action of invertible matrices on the nonzero vectors of
//! `F_p^n`, and stabilizer chains for the resulting permutation groups.
//!
//! Permutations act on the right: `x^(gh) = (x^g)^h`, so
//! [`Permutation::then`] composes "first self, then other".

mod chain;

pub use chain::{GroupCertificate, StabilizerChain};

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::field::PrimeField;
use crate::matrix::{Matrix, Vector};

/// Default cap on the number of points `p^n - 1`.
pub const DEFAULT_POINT_BUDGET: u64 = 200_000;

pub type Point = u32;

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => return domain("image list is not a permutation"),
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Point) -> Point {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i as Point == x)
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as Point != x)
            .map(|(i, _)| i as Point)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self <- self then other`.
    pub(crate) fn then_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Permutation { images: inv }
    }

    /// Cycle lengths, sorted descending (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Order, as the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        use num_integer::Integer;
        self.cycle_type()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 32 {
            write!(f, "Permutation{:?}", self.images)
        } else {
            write!(f, "Permutation(degree {})", self.degree())
        }
    }
}

/// Bijection between `0..p^n - 1` and the nonzero vectors of `F_p^n`:
/// `(v_1, ..., v_n)` maps to `v_1 + v_2 p + ... + v_n p^(n-1) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointEncoding {
    field: PrimeField,
    n: usize,
    points: u64,
}

impl PointEncoding {
    /// Fails with `Infeasible` when `p^n - 1` exceeds `budget`.
    pub fn new(field: PrimeField, n: usize, budget: u64) -> Result<Self> {
        let points = field
            .modulus()
            .checked_pow(n as u32)
            .map(|q| q - 1)
            .filter(|&pts| pts <= budget.min(Point::MAX as u64));
        match points {
            Some(points) => Ok(PointEncoding { field, n, points }),
            None => Err(Error::Infeasible(format!(
                "{}^{} - 1 points exceed the point budget of {budget}",
                field.modulus(),
                n
            ))),
        }
    }

    pub fn points(&self) -> u64 {
        self.points
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn index_of(&self, v: &Vector) -> Result<Point> {
        if v.len() != self.n || v.field() != self.field {
            return domain("vector does not belong to this encoding");
        }
        let p = self.field.modulus();
        let raw = v.entries().iter().rev().fold(0u64, |acc, &c| acc * p + c);
        match raw.checked_sub(1) {
            Some(i) => Ok(i as Point),
            None => domain("the zero vector is not a point"),
        }
    }

    pub fn vector_of(&self, index: Point) -> Vector {
        assert!((index as u64) < self.points, "point {index} out of range");
        let p = self.field.modulus();
        let mut raw = index as u64 + 1;
        let entries = (0..self.n)
            .map(|_| {
                let d = raw % p;
                raw /= p;
                d
            })
            .collect();
        Vector::new(self.field, entries)
    }
}

/// The permutation `i -> index(A * vector(i))` of the nonzero vectors.
pub fn to_permutation(a: &Matrix, encoding: &PointEncoding) -> Result<Permutation> {
    if a.dim() != encoding.n || a.field() != encoding.field {
        return domain("matrix does not match the encoding");
    }
    if a.det().is_zero() {
        return domain("singular matrix does not act on nonzero vectors");
    }
    let k = encoding.field;
    let p = k.modulus();
    let n = encoding.n;
    let entries = a.entries();
    let mut v = vec![0u64; n];
    v[0] = 1;
    let mut images = Vec::with_capacity(encoding.points as usize);
    for _ in 0..encoding.points {
        let mut raw = 0u64;
        for i in (0..n).rev() {
            let row = &entries[i * n..(i + 1) * n];
            let c = row.iter().zip(&v).fold(0, |acc, (&x, &y)| (acc + x * y) % p);
            raw = raw * p + c;
        }
        images.push((raw - 1) as Point);
        // next vector in index order
        for d in v.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(Permutation { images })
}

/// Builds the stabilizer chain of the group generated by invertible
/// matrices (all of one dimension and field) acting on nonzero vectors, and
/// compares its order with `|GL_n(F_p)|`.
pub fn certify_matrix_group(
    generators: &[Matrix],
    point_budget: u64,
) -> Result<(StabilizerChain, GroupCertificate, PointEncoding)> {
    let Some(first) = generators.first() else {
        return domain("at least one generator is needed to fix n and p");
    };
    let encoding = PointEncoding::new(first.field(), first.dim(), point_budget)?;
    let perms = generators
        .iter()
        .map(|m| to_permutation(m, &encoding))
        .collect::<Result<Vec<_>>>()?;
    let chain = StabilizerChain::build(encoding.points() as usize, &perms)?;
    let cert = chain.certificate(&gl_order(first.dim(), first.field().modulus()));
    Ok((chain, cert, encoding))
}

/// `|GL_n(F_p)| = prod_{i=0}^{n-1} (p^n - p^i)`.
pub fn gl_order(n: usize, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let pn = p.pow(n as u32);
    (0..n as u32).fold(BigUint::one(), |acc, i| acc * (&pn - p.pow(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn encoding_round_trip() {
        let enc = PointEncoding::new(k(5), 3, 1000).unwrap();
        assert_eq!(enc.points(), 124);
        for i in 0..124 {
            assert_eq!(enc.index_of(&enc.vector_of(i)).unwrap(), i);
        }
        assert_eq!(enc.vector_of(0).entries(), &[1, 0, 0]);
        assert!(enc.index_of(&Vector::zero(k(5), 3)).is_err());
        assert!(matches!(
            PointEncoding::new(k(5), 18, DEFAULT_POINT_BUDGET),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn identity_and_shift() {
        let field = k(3);
        let enc = PointEncoding::new(field, 2, 100).unwrap();
        let id = to_permutation(&Matrix::identity(field, 2), &enc).unwrap();
        assert!(id.is_identity());
        let g = Matrix::companion(&Polynomial::x_pow_minus_one(field, 2)).unwrap();
        let pg = to_permutation(&g, &enc).unwrap();
        // brute-force images: G swaps the two coordinates
        for i in 0..8 {
            let v = enc.vector_of(i);
            let swapped = Vector::new(field, vec![v.entries()[1], v.entries()[0]]);
            assert_eq!(pg.apply(i), enc.index_of(&swapped).unwrap());
        }
        assert_eq!(pg.order(), BigUint::from(2u32));
    }

    #[test]
    fn primitive_companion_is_a_single_cycle() {
        let field = k(5);
        let f = crate::poly::first_primitive(field, 3).unwrap();
        let enc = PointEncoding::new(field, 3, 1000).unwrap();
        let c = to_permutation(&Matrix::companion(&f).unwrap(), &enc).unwrap();
        assert_eq!(c.cycle_type(), vec![124]);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let enc = PointEncoding::new(k(3), 2, 100).unwrap();
        assert!(to_permutation(&Matrix::zero(k(3), 2), &enc).is_err());
        assert!(to_permutation(&Matrix::identity(k(3), 3), &enc).is_err());
    }

    #[test]
    fn action_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for (p, n) in [(2u64, 4usize), (3, 3), (5, 3), (7, 2)] {
            let field = k(p);
            let enc = PointEncoding::new(field, n, 10_000).unwrap();
            let mut done = 0;
            while done < 20 {
                let rows: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
                    .collect();
                let a = Matrix::from_rows(field, &rows).unwrap();
                let rows: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
                    .collect();
                let b = Matrix::from_rows(field, &rows).unwrap();
                if a.det().is_zero() || b.det().is_zero() {
                    continue;
                }
                let pa = to_permutation(&a, &enc).unwrap();
                let pb = to_permutation(&b, &enc).unwrap();
                // (AB)v = A(Bv): apply B first, then A
                let pab = to_permutation(&(&a * &b), &enc).unwrap();
                assert_eq!(pab, pb.then(&pa));
                done += 1;
            }
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(3, 2), BigUint::from(168u32));
        assert_eq!(gl_order(1, 7), BigUint::from(6u32));
        assert_eq!(gl_order(3, 5), BigUint::from(1_488_000u32));
        // enumerate all 2x2 matrices over F_3 with nonzero determinant
        let count = (0..81u32)
            .filter(|&i| {
                let (a, b, c, d) = (i % 3, i / 3 % 3, i / 9 % 3, i / 27);
                (a * d + 9 - b * c) % 3 != 0
            })
            .count();
        assert_eq!(count, 48);
        assert_eq!(gl_order(2, 3), BigUint::from(count));
    }

    #[test]
    fn permutation_basics() {
        let a = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(a.order(), BigUint::from(3u32));
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.first_moved(), Some(0));
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }
}
