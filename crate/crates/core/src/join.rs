//! Finite truncations of iterated join spaces, as simplicial complexes.
//!
//! The `(k+1)`-fold join of a finite set `F` has vertex set
//! `F x {0..k}`; a simplex picks at most one vertex from each block, at
//! least one in total. Top-dimensional simplices correspond to tuples in
//! `F^(k+1)`, and the reduced homology is concentrated in degree `k` with
//! rank `(|F| - 1)^(k+1)`.
//!
//! The infinite join is never materialized; fixed-point subcomplexes of
//! diagonal-family subgroups are joins of the filtered factor sets, block
//! by block.

use std::collections::BTreeMap;

use crate::diagonal::DiagonalSubgroup;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::int::Int;
use crate::laurent::subsets;
use crate::linalg::{subquotient_invariants, GroupInvariants, Matrix};

/// Size cap on top-dimensional simplex counts.
pub const MAX_TOP_SIMPLICES: u64 = 100_000;

/// The join of `copies` blocks of the factor list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JoinComplex<L> {
    factors: Vec<L>,
    copies: usize,
}

/// Build the join of `copies` disjoint copies of `factors`.
pub fn build_join<L: Clone + Ord>(factors: Vec<L>, copies: usize) -> Result<JoinComplex<L>> {
    if factors.is_empty() || copies == 0 {
        return Err(Error::SizeTooLarge { size: 0, cap: MAX_TOP_SIMPLICES });
    }
    let size = (factors.len() as u64).checked_pow(copies as u32);
    match size {
        Some(s) if s <= MAX_TOP_SIMPLICES => Ok(JoinComplex { factors, copies }),
        _ => Err(Error::SizeTooLarge {
            size: size.unwrap_or(u64::MAX),
            cap: MAX_TOP_SIMPLICES,
        }),
    }
}

impl<L: Clone + Ord> JoinComplex<L> {
    pub fn factors(&self) -> &[L] {
        &self.factors
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn top_dimension(&self) -> usize {
        self.copies - 1
    }

    /// Number of `j`-simplices: choose the blocks, then a vertex per block.
    pub fn simplex_count(&self, j: usize) -> usize {
        if j + 1 > self.copies {
            return 0;
        }
        let blocks = subsets(self.copies, j + 1).len();
        blocks * self.factors.len().pow(j as u32 + 1)
    }

    /// Boundary matrix from `j`-chains to `(j-1)`-chains; `j = 0` yields
    /// the augmentation row.
    pub fn boundary_matrix<I: Int>(&self, j: usize) -> Matrix<I> {
        let m = self.factors.len();
        let n_j = self.simplex_count(j);
        if j == 0 {
            let mut aug = Matrix::zero(1, n_j);
            for col in 0..n_j {
                aug[(0, col)] = I::one();
            }
            return aug;
        }
        let source_blocks = subsets(self.copies, j + 1);
        let target_blocks = subsets(self.copies, j);
        let target_pos: BTreeMap<u32, usize> =
            target_blocks.iter().enumerate().map(|(p, b)| (*b, p)).collect();
        let assignments_per_target = m.pow(j as u32);
        let mut d: Matrix<I> = Matrix::zero(target_blocks.len() * assignments_per_target, n_j);
        for (bi, &blocks) in source_blocks.iter().enumerate() {
            for code in 0..m.pow(j as u32 + 1) {
                let col = bi * m.pow(j as u32 + 1) + code;
                let assignment = decode(code, m, j + 1);
                let mut sign_positive = true;
                for (slot, _) in (0..self.copies).filter(|b| blocks & (1 << b) != 0).enumerate()
                {
                    let face_blocks = remove_nth_bit(blocks, slot);
                    let mut face_assignment = assignment.clone();
                    face_assignment.remove(slot);
                    let row = target_pos[&face_blocks] * assignments_per_target
                        + encode(&face_assignment, m);
                    let value = if sign_positive { I::one() } else { -I::one() };
                    d[(row, col)] = d[(row, col)].clone() + value;
                    sign_positive = !sign_positive;
                }
            }
        }
        d
    }

    /// Reduced integral homology in degrees `0 ..= top_dimension()`.
    pub fn reduced_homology<I: Int>(&self) -> Vec<GroupInvariants<I>> {
        let top = self.top_dimension();
        let mut out = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let outgoing = self.boundary_matrix::<I>(j);
            let into = if j == top {
                Matrix::zero(self.simplex_count(j), 0)
            } else {
                self.boundary_matrix::<I>(j + 1)
            };
            let no_rels_here = Matrix::zero(self.simplex_count(j), 0);
            let no_rels_out = Matrix::zero(outgoing.nrows(), 0);
            out.push(subquotient_invariants(&into, &outgoing, &no_rels_here, &no_rels_out));
        }
        out
    }

    /// Alternating sum of simplex counts (including the empty simplex as
    /// `-1`, so this matches the alternating sum of reduced Betti numbers).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for j in 0..=self.top_dimension() {
            let count = self.simplex_count(j) as i64;
            chi += if j % 2 == 0 { count } else { -count };
        }
        chi
    }
}

fn decode(mut code: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = code % base;
        code /= base;
    }
    out
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

/// Drop the `n`-th set bit (counting set bits from the low end).
fn remove_nth_bit(mask: u32, n: usize) -> u32 {
    let mut seen = 0;
    for b in 0..32 {
        if mask & (1 << b) != 0 {
            if seen == n {
                return mask & !(1 << b);
            }
            seen += 1;
        }
    }
    mask
}

/// The fixed subcomplex of a diagonal-family subgroup acting on a join of
/// group-element factors: the join of the fixed-point filtered factor set,
/// with the same number of blocks.
pub fn fixed_subcomplex<I: Int>(
    complex: &JoinComplex<GroupElement<I>>,
    subgroup: &DiagonalSubgroup<I>,
) -> Result<JoinComplex<GroupElement<I>>> {
    let fixed = subgroup.fixed_points()?;
    let mut factors = Vec::new();
    for g in complex.factors() {
        if fixed.contains(g)? {
            factors.push(g.clone());
        }
    }
    Ok(JoinComplex { factors, copies: complex.copies() })
}
