//! Deterministic Schreier-Sims.
//!
//! Each level keeps a Schreier tree (a generator label per orbit point) in
//! place of explicit coset representatives, so memory is `O(points)` per
//! level. Orbits and trees only ever grow, which lets every level remember
//! which Schreier generators it has already sifted.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Permutation, Point};
use crate::error::{domain, Result};

const ABSENT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Debug, Clone)]
struct Level {
    base_point: Point,
    /// Indices into the chain's strong generators that fix all earlier
    /// base points.
    gens: Vec<usize>,
    orbit: Vec<Point>,
    /// Per point: `ABSENT`, `ROOT`, or the generator whose application to
    /// the parent reached this point.
    label: Vec<u32>,
    /// `progress[t]`: orbit prefix already paired with `gens[t]`.
    progress: Vec<usize>,
}

impl Level {
    fn new(base_point: Point, degree: usize) -> Self {
        let mut label = vec![ABSENT; degree];
        label[base_point as usize] = ROOT;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            label,
            progress: Vec::new(),
        }
    }

    fn contains(&self, x: Point) -> bool {
        self.label[x as usize] != ABSENT
    }

    /// Closes the orbit under all generators, labelling only new points.
    fn extend(&mut self, strong: &[Permutation]) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for &s in &self.gens {
                let y = strong[s].apply(x);
                if self.label[y as usize] == ABSENT {
                    self.label[y as usize] = s as u32;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    fn add_generator(&mut self, s: usize, strong: &[Permutation]) {
        self.gens.push(s);
        self.progress.push(0);
        self.extend(strong);
    }
}

/// Base and strong generating set for a permutation group, with a Schreier
/// tree per level.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    input: Vec<Permutation>,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

/// Serializable summary of a chain, compared against a target order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCertificate {
    pub points: u64,
    pub base: Vec<Point>,
    pub orbit_sizes: Vec<u64>,
    /// Decimal string; group orders overflow machine words.
    pub order: String,
    pub target_order: String,
    pub equal: bool,
}

impl StabilizerChain {
    /// Builds a complete chain for `<generators>` on `degree` points. Every
    /// Schreier generator at every level is sifted, so the result does not
    /// depend on randomness.
    pub fn build(degree: usize, generators: &[Permutation]) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return domain("generators act on different point sets");
        }
        let mut chain = StabilizerChain {
            degree,
            input: generators.to_vec(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let b = g.first_moved().expect("not the identity");
                chain.levels.push(Level::new(b, degree));
            }
            chain.strong_inv.push(g.inverse());
            chain.strong.push(g.clone());
        }
        for s in 0..chain.strong.len() {
            let g = &chain.strong[s];
            for l in 0..chain.levels.len() {
                chain.levels[l].gens.push(s);
                chain.levels[l].progress.push(0);
                if g.apply(chain.levels[l].base_point) != chain.levels[l].base_point {
                    break;
                }
            }
        }
        for l in 0..chain.levels.len() {
            let (strong, level) = (&chain.strong, &mut chain.levels[l]);
            level.extend(strong);
        }
        chain.complete();
        Ok(chain)
    }

    fn complete(&mut self) {
        let Some(mut i) = self.levels.len().checked_sub(1) else {
            return;
        };
        loop {
            match self.next_failing_schreier_generator(i) {
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
                Some((residue, drop_level)) => {
                    if drop_level == self.levels.len() {
                        let b = residue.first_moved().expect("residue is not the identity");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    let s = self.strong.len();
                    self.strong_inv.push(residue.inverse());
                    self.strong.push(residue);
                    for l in i + 1..=drop_level {
                        let (strong, level) = (&self.strong, &mut self.levels[l]);
                        level.add_generator(s, strong);
                    }
                    i = drop_level;
                }
            }
        }
    }

    /// Sifts unchecked Schreier generators of level `i` through the levels
    /// below it; returns the first nontrivial residue and where it dropped
    /// out.
    fn next_failing_schreier_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        for t in 0..self.levels[i].gens.len() {
            let s = self.levels[i].gens[t];
            while self.levels[i].progress[t] < self.levels[i].orbit.len() {
                let level = &self.levels[i];
                let beta = level.orbit[level.progress[t]];
                self.levels[i].progress[t] += 1;
                let level = &self.levels[i];
                let gamma = self.strong[s].apply(beta);
                if level.label[gamma as usize] == s as u32
                    && self.strong_inv[s].apply(gamma) == beta
                {
                    // tree edge: the Schreier generator is trivial
                    continue;
                }
                let mut h = self.transversal(i, beta);
                h.then_assign(&self.strong[s]);
                self.strip(&mut h, i, gamma);
                let (residue, drop_level) = self.sift_from(h, i + 1);
                if drop_level < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop_level));
                }
            }
        }
        None
    }

    /// Coset representative `u` with `base_point^u = beta` at level `i`.
    fn transversal(&self, i: usize, mut beta: Point) -> Permutation {
        let level = &self.levels[i];
        let mut path = Vec::new();
        while level.label[beta as usize] != ROOT {
            let s = level.label[beta as usize] as usize;
            path.push(s);
            beta = self.strong_inv[s].apply(beta);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in path.iter().rev() {
            u.then_assign(&self.strong[s]);
        }
        u
    }

    /// `h <- h * u_beta^-1` at level `i`.
    fn strip(&self, h: &mut Permutation, i: usize, mut beta: Point) {
        let level = &self.levels[i];
        while level.label[beta as usize] != ROOT {
            let s = level.label[beta as usize] as usize;
            h.then_assign(&self.strong_inv[s]);
            beta = self.strong_inv[s].apply(beta);
        }
    }

    /// Sifts `h` starting at level `start`. Returns the residue and the
    /// first level whose orbit misses the base image (`levels.len()` when
    /// every level was passed).
    fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for m in start..self.levels.len() {
            let beta = h.apply(self.levels[m].base_point);
            if !self.levels[m].contains(beta) {
                return (h, m);
            }
            self.strip(&mut h, m, beta);
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit.len() as u64).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Product of the basic orbit sizes.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sift-based membership test.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return domain(format!(
                "permutation of degree {} tested against a group on {} points",
                g.degree(),
                self.degree
            ));
        }
        let (residue, drop_level) = self.sift_from(g.clone(), 0);
        Ok(drop_level == self.levels.len() && residue.is_identity())
    }

    /// Rechecks the chain from scratch: strong generators fix earlier base
    /// points, the input generators sift to the identity, and so does every
    /// Schreier generator at every level.
    pub fn verify(&self) -> bool {
        for (i, level) in self.levels.iter().enumerate() {
            for &s in &level.gens {
                if self.levels[..i]
                    .iter()
                    .any(|l| self.strong[s].apply(l.base_point) != l.base_point)
                {
                    return false;
                }
            }
        }
        for g in &self.input {
            if !self.contains(g).unwrap_or(false) {
                return false;
            }
        }
        for (i, level) in self.levels.iter().enumerate() {
            for &s in &level.gens {
                for &beta in &level.orbit {
                    let gamma = self.strong[s].apply(beta);
                    if !level.contains(gamma) {
                        return false;
                    }
                    let mut h = self.transversal(i, beta);
                    h.then_assign(&self.strong[s]);
                    self.strip(&mut h, i, gamma);
                    let (residue, drop_level) = self.sift_from(h, i + 1);
                    if drop_level != self.levels.len() || !residue.is_identity() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn certificate(&self, target_order: &BigUint) -> GroupCertificate {
        let order = self.order();
        GroupCertificate {
            points: self.degree as u64,
            base: self.base(),
            orbit_sizes: self.orbit_sizes(),
            equal: &order == target_order,
            order: order.to_string(),
            target_order: target_order.to_string(),
        }
    }
}
