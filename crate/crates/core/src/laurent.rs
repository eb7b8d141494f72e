//! Sparse Laurent polynomials over the group ring of `Z^n`.
//!
//! Elements are finite maps from exponent vectors to integer coefficients.
//! These are the entries of the equivariant chain differentials; they are
//! instantiated on a module by substituting commuting automorphisms for the
//! variables.

use std::collections::BTreeMap;

use crate::int::Int;
use crate::linalg::Matrix;

/// A finite integer combination of monomials `t^v`, `v in Z^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent<I> {
    vars: usize,
    terms: BTreeMap<Vec<i32>, I>,
}

impl<I: Int> Laurent<I> {
    pub fn zero(vars: usize) -> Self {
        Laurent { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vars, vec![0; vars], I::one())
    }

    pub fn monomial(vars: usize, exponents: Vec<i32>, coeff: I) -> Self {
        assert_eq!(exponents.len(), vars);
        let mut p = Self::zero(vars);
        p.insert(exponents, coeff);
        p
    }

    /// The variable `t_i`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, I::one())
    }

    /// `t_i^e`.
    pub fn var_pow(vars: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; vars];
        v[i] = e;
        Self::monomial(vars, v, I::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &I)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Vec<i32>, coeff: I) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(I::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exps, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Push forward along a monomial map of tori given by
    /// `exponent_image(v)`; used for `u_i -> t_i`, `v_i -> t_i^-1`.
    pub fn map_exponents(&self, new_vars: usize, f: impl Fn(&[i32]) -> Vec<i32>) -> Laurent<I> {
        let mut out = Laurent::zero(new_vars);
        for (e, c) in &self.terms {
            let image = f(e);
            assert_eq!(image.len(), new_vars);
            out.insert(image, c.clone());
        }
        out
    }

    /// Sum of coefficients: evaluation at `t = 1`.
    pub fn at_one(&self) -> I {
        self.terms.values().fold(I::zero(), |acc, c| acc + c.clone())
    }

    /// Substitute commuting automorphisms for the variables:
    /// `t^v -> prod_i T_i^(v_i)`, with the supplied inverses for negative
    /// exponents. The result acts on `Z^dim`.
    pub fn instantiate(
        &self,
        actions: &[Matrix<I>],
        inverses: &[Matrix<I>],
        dim: usize,
    ) -> Matrix<I> {
        assert_eq!(actions.len(), self.vars);
        let mut out = Matrix::zero(dim, dim);
        for (exps, coeff) in &self.terms {
            let mut term = Matrix::identity(dim);
            for (i, &e) in exps.iter().enumerate() {
                let (m, reps) = if e >= 0 { (&actions[i], e) } else { (&inverses[i], -e) };
                for _ in 0..reps {
                    term = m.mul(&term);
                }
            }
            out = out.add(&term.scale(coeff));
        }
        out
    }
}

impl<I: Int> std::fmt::Display for Laurent<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| if x == 1 { format!("t{i}") } else { format!("t{i}^{x}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A matrix with Laurent entries: a map of free modules over the group
/// ring of `Z^vars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<I> {
    rows: usize,
    cols: usize,
    vars: usize,
    entries: Vec<Laurent<I>>,
}

impl<I: Int> PolyMatrix<I> {
    pub fn zero(rows: usize, cols: usize, vars: usize) -> Self {
        PolyMatrix { rows, cols, vars, entries: vec![Laurent::zero(vars); rows * cols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Laurent::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.rows, other.cols, self.vars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let left = &self[(i, k)];
                if left.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let product = left.mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&product);
                }
            }
        }
        out
    }

    pub fn map_entries(&self, new_vars: usize, f: impl Fn(&Laurent<I>) -> Laurent<I>) -> Self {
        let entries: Vec<Laurent<I>> = self.entries.iter().map(f).collect();
        for e in &entries {
            assert_eq!(e.vars(), new_vars);
        }
        PolyMatrix { rows: self.rows, cols: self.cols, vars: new_vars, entries }
    }
}

impl<I> std::ops::Index<(usize, usize)> for PolyMatrix<I> {
    type Output = Laurent<I>;
    fn index(&self, (i, j): (usize, usize)) -> &Laurent<I> {
        &self.entries[i * self.cols + j]
    }
}

impl<I> std::ops::IndexMut<(usize, usize)> for PolyMatrix<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Laurent<I> {
        &mut self.entries[i * self.cols + j]
    }
}

/// Subsets of `{0..n}` of the given size, ascending in bitmask order; the
/// indexing scheme shared by all Koszul-shaped complexes here.
pub fn subsets(n: usize, size: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == size {
            out.push(mask);
        }
    }
    out
}

/// Differentials of the Koszul complex on `(t_1 - 1, ..., t_n - 1)` over
/// the Laurent ring in `n` variables: `d(e_J) = sum sign(i, J) (t_i - 1)
/// e_(J minus i)`. Entry `[j]` maps degree `j + 1` to degree `j`.
pub fn koszul_differentials<I: Int>(n: usize) -> Vec<PolyMatrix<I>> {
    let mut out = Vec::new();
    for j in 1..=n {
        let sources = subsets(n, j);
        let targets = subsets(n, j - 1);
        let target_pos: BTreeMap<u32, usize> =
            targets.iter().enumerate().map(|(p, m)| (*m, p)).collect();
        let mut d = PolyMatrix::zero(targets.len(), sources.len(), n);
        for (col, &source) in sources.iter().enumerate() {
            let mut sign_positive = true;
            for i in 0..n {
                if source & (1 << i) == 0 {
                    continue;
                }
                let face = source & !(1 << i);
                let row = target_pos[&face];
                let t_minus_1 =
                    Laurent::var(n, i).sub(&Laurent::one(n));
                d[(row, col)] = if sign_positive { t_minus_1 } else { t_minus_1.neg() };
                sign_positive = !sign_positive;
            }
        }
        out.push(d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = Laurent<i64>;
    type M = Matrix<i64>;

    #[test]
    fn ring_arithmetic() {
        let t = L::var(2, 0);
        let s = L::var(2, 1);
        let p = t.sub(&L::one(2)).mul(&s.sub(&L::one(2)));
        // (t-1)(s-1) = ts - t - s + 1
        assert_eq!(p.terms().count(), 4);
        assert_eq!(p.at_one(), 0);
        let q = p.mul(&L::zero(2));
        assert!(q.is_zero());
    }

    #[test]
    fn negative_exponents() {
        let tinv = L::var_pow(1, 0, -1);
        let t = L::var(1, 0);
        assert_eq!(tinv.mul(&t), L::one(1));
    }

    #[test]
    fn koszul_squares_to_zero() {
        for n in 1..=5 {
            let d = koszul_differentials::<i64>(n);
            for j in 1..d.len() {
                assert!(d[j - 1].mul(&d[j]).is_zero(), "d o d != 0 at n = {n}, degree {j}");
            }
        }
    }

    #[test]
    fn koszul_shapes_are_binomial() {
        let d = koszul_differentials::<i64>(4);
        assert_eq!(d.len(), 4);
        assert_eq!((d[0].nrows(), d[0].ncols()), (1, 4));
        assert_eq!((d[1].nrows(), d[1].ncols()), (4, 6));
        assert_eq!((d[2].nrows(), d[2].ncols()), (6, 4));
        assert_eq!((d[3].nrows(), d[3].ncols()), (4, 1));
    }

    #[test]
    fn instantiate_is_a_ring_homomorphism() {
        // t acts as the 2x2 unimodular matrix [[1,1],[0,1]].
        let t_mat = M::of(&[&[1, 1], &[0, 1]]);
        let t_inv = M::of(&[&[1, -1], &[0, 1]]);
        let actions = vec![t_mat.clone()];
        let inverses = vec![t_inv];
        let p = L::var(1, 0).sub(&L::one(1));
        let q = L::var_pow(1, 0, -1).add(&L::one(1));
        let lhs = p.mul(&q).instantiate(&actions, &inverses, 2);
        let rhs = p.instantiate(&actions, &inverses, 2).mul(&q.instantiate(&actions, &inverses, 2));
        assert_eq!(lhs, rhs);
        assert_eq!(L::one(1).instantiate(&actions, &inverses, 2), M::identity(2));
        assert_eq!(L::var(1, 0).instantiate(&actions, &inverses, 2), t_mat);
    }

    #[test]
    fn exponent_maps_push_forward() {
        // u -> t, v -> t^-1 on two variables.
        let p = L::var(2, 0).mul(&L::var(2, 1)); // u v
        let mapped = p.map_exponents(1, |e| vec![e[0] - e[1]]);
        assert_eq!(mapped, L::one(1));
    }
}
