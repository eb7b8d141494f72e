//! Integer exterior algebra on a finite generator set.
//!
//! Basis monomials are subsets of the generators, stored as bitmasks;
//! products carry Koszul signs. This models the cohomology ring of a torus
//! (and of a torus product, with generators `u_1..u_k, v_1..v_k`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::int::Int;

/// An integer-coefficient element of the exterior algebra on `n_gens`
/// degree-1 generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExteriorClass<I> {
    n_gens: usize,
    terms: BTreeMap<u32, I>,
}

impl<I: Int> ExteriorClass<I> {
    pub fn zero(n_gens: usize) -> Self {
        assert!(n_gens <= 32, "generator count limited by the bitmask width");
        ExteriorClass { n_gens, terms: BTreeMap::new() }
    }

    /// The scalar 1.
    pub fn unit(n_gens: usize) -> Self {
        Self::monomial(n_gens, 0, I::one())
    }

    pub fn generator(n_gens: usize, i: usize) -> Self {
        assert!(i < n_gens);
        Self::monomial(n_gens, 1 << i, I::one())
    }

    pub fn monomial(n_gens: usize, mask: u32, coeff: I) -> Self {
        let mut c = Self::zero(n_gens);
        c.insert(mask, coeff);
        c
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &I)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> I {
        self.terms.get(&mask).cloned().unwrap_or_else(I::zero)
    }

    fn insert(&mut self, mask: u32, coeff: I) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(I::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// Degree when homogeneous, `None` for mixed or zero classes.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_gens != other.n_gens {
            return Err(Error::RankMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &I) -> Self {
        let mut out = Self::zero(self.n_gens);
        for (m, x) in &self.terms {
            out.insert(*m, x.clone() * c.clone());
        }
        out
    }

    /// Anticommutative product with Koszul signs.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n_gens != other.n_gens {
            return Err(Error::RankMismatch);
        }
        let mut out = Self::zero(self.n_gens);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let coeff = c1.clone() * c2.clone();
                let signed =
                    if merge_crossings(*m1, *m2).is_multiple_of(2) { coeff } else { -coeff };
                out.insert(m1 | m2, signed);
            }
        }
        Ok(out)
    }

    /// Wedge power of a class.
    pub fn wedge_pow(&self, n: usize) -> Result<Self> {
        let mut out = Self::unit(self.n_gens);
        for _ in 0..n {
            out = out.wedge(self)?;
        }
        Ok(out)
    }
}

/// Number of transpositions needed to merge the sorted index sets `m1`,
/// `m2`: pairs `(i, j)` with `i` in `m1`, `j` in `m2`, `i > j`.
fn merge_crossings(m1: u32, m2: u32) -> u32 {
    let mut crossings = 0;
    let mut rest = m2;
    while rest != 0 {
        let j = rest.trailing_zeros();
        crossings += (m1 >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    crossings
}

impl<I: Int> std::fmt::Display for ExteriorClass<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(mask, c)| {
                let mut gens = Vec::new();
                for i in 0..self.n_gens {
                    if mask & (1 << i) != 0 {
                        gens.push(format!("e{i}"));
                    }
                }
                if gens.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    gens.join("^")
                } else {
                    format!("{c} {}", gens.join("^"))
                }
            })
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type X = ExteriorClass<i64>;

    /// Independent sign oracle: multiply basis monomials by inserting the
    /// indices of the second list one at a time into a sorted vector,
    /// flipping the sign for each transposition.
    fn naive_wedge(m1: u32, m2: u32) -> Option<(u32, i64)> {
        if m1 & m2 != 0 {
            return None;
        }
        let mut indices: Vec<u32> = (0..32).filter(|i| m1 & (1 << i) != 0).collect();
        let mut sign = 1i64;
        for j in (0..32).filter(|j| m2 & (1 << j) != 0) {
            let pos = indices.iter().position(|&i| i > j).unwrap_or(indices.len());
            sign *= if (indices.len() - pos).is_multiple_of(2) { 1 } else { -1 };
            indices.insert(pos, j);
        }
        Some((m1 | m2, sign))
    }

    #[test]
    fn wedge_signs_match_naive_oracle() {
        for m1 in 0u32..32 {
            for m2 in 0u32..32 {
                let a = X::monomial(5, m1, 1);
                let b = X::monomial(5, m2, 1);
                let product = a.wedge(&b).unwrap();
                match naive_wedge(m1, m2) {
                    None => assert!(product.is_zero()),
                    Some((mask, sign)) => {
                        assert_eq!(product.coefficient(mask), sign, "masks {m1:b}, {m2:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn squares_of_odd_classes_vanish() {
        let g = X::generator(4, 2);
        assert!(g.wedge(&g).unwrap().is_zero());
        let mixed = X::generator(4, 0).add(&X::generator(4, 3).scale(&-2)).unwrap();
        assert!(mixed.wedge(&mixed).unwrap().is_zero());
    }

    #[test]
    fn anticommutativity_in_degree_one() {
        let a = X::generator(3, 0);
        let b = X::generator(3, 2);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.neg());
    }

    #[test]
    fn associativity_on_small_classes() {
        let a = X::generator(4, 0).add(&X::generator(4, 1)).unwrap();
        let b = X::generator(4, 2).sub(&X::generator(4, 0)).unwrap();
        let c = X::generator(4, 3).add(&X::unit(4)).unwrap();
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn degree_detection() {
        assert_eq!(X::unit(3).degree(), Some(0));
        assert_eq!(X::generator(3, 1).degree(), Some(1));
        let mixed = X::unit(3).add(&X::generator(3, 0)).unwrap();
        assert_eq!(mixed.degree(), None);
        assert_eq!(X::zero(3).degree(), None);
    }
}
