//! The catalog groups and their exact arithmetic.
//!
//! Four torsion-free groups are supported, each with a unique normal form:
//!
//! * `FreeAbelian(k)`: integer vectors of length `k`.
//! * `Free(k)`: freely reduced words in `k` generators.
//! * `Klein`: the Klein bottle group `<a, b | b a b^-1 = a^-1>`, elements
//!   `a^m b^n` stored as the exponent pair.
//! * `Heisenberg`: the discrete Heisenberg group, elements `a^p b^q c^r`
//!   with `c = [a, b]` central, multiplication hard-coded from the
//!   integer matrix model.
//!
//! Equality of normal forms is equality of elements.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::word::Word;

/// Identifier of a catalog group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupId {
    FreeAbelian(usize),
    Free(usize),
    Klein,
    Heisenberg,
}

/// An element in normal form. Klein stores `a^m b^n` as `{ a: m, b: n }`,
/// Heisenberg stores `a^p b^q c^r` as `{ a: p, b: q, c: r }`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupElement<I> {
    FreeAbelian(Vec<I>),
    Free(Word),
    Klein { a: I, b: I },
    Heisenberg { a: I, b: I, c: I },
}

impl GroupId {
    pub fn rank(&self) -> usize {
        match self {
            GroupId::FreeAbelian(k) | GroupId::Free(k) => *k,
            GroupId::Klein | GroupId::Heisenberg => 2,
        }
    }

    /// Cohomological dimension of the group.
    pub fn cohomological_dimension(&self) -> usize {
        match self {
            GroupId::FreeAbelian(k) => *k,
            GroupId::Free(_) => 1,
            GroupId::Klein => 2,
            GroupId::Heisenberg => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, GroupId::FreeAbelian(_) | GroupId::Free(1))
    }

    pub fn identity<I: Int>(&self) -> GroupElement<I> {
        match self {
            GroupId::FreeAbelian(k) => GroupElement::FreeAbelian(vec![I::zero(); *k]),
            GroupId::Free(_) => GroupElement::Free(Word::identity()),
            GroupId::Klein => GroupElement::Klein { a: I::zero(), b: I::zero() },
            GroupId::Heisenberg => {
                GroupElement::Heisenberg { a: I::zero(), b: I::zero(), c: I::zero() }
            }
        }
    }

    /// The fixed standard generating set; balls and radii elsewhere in the
    /// crate always refer to it.
    pub fn generators<I: Int>(&self) -> Vec<GroupElement<I>> {
        match self {
            GroupId::FreeAbelian(k) => (0..*k)
                .map(|i| {
                    let mut v = vec![I::zero(); *k];
                    v[i] = I::one();
                    GroupElement::FreeAbelian(v)
                })
                .collect(),
            GroupId::Free(k) => (0..*k).map(|i| GroupElement::Free(Word::generator(i))).collect(),
            GroupId::Klein => vec![
                GroupElement::Klein { a: I::one(), b: I::zero() },
                GroupElement::Klein { a: I::zero(), b: I::one() },
            ],
            GroupId::Heisenberg => vec![
                GroupElement::Heisenberg { a: I::one(), b: I::zero(), c: I::zero() },
                GroupElement::Heisenberg { a: I::zero(), b: I::one(), c: I::zero() },
            ],
        }
    }

    /// Whether `g` is a valid normal form for this group.
    pub fn contains<I: Int>(&self, g: &GroupElement<I>) -> bool {
        match (self, g) {
            (GroupId::FreeAbelian(k), GroupElement::FreeAbelian(v)) => v.len() == *k,
            (GroupId::Free(k), GroupElement::Free(w)) => w.max_generator() <= *k,
            (GroupId::Klein, GroupElement::Klein { .. }) => true,
            (GroupId::Heisenberg, GroupElement::Heisenberg { .. }) => true,
            _ => false,
        }
    }

    fn check_member<I: Int>(&self, g: &GroupElement<I>) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementNotInGroup)
        }
    }

    pub fn check_members<I: Int>(&self, gs: &[GroupElement<I>]) -> Result<()> {
        gs.iter().try_for_each(|g| self.check_member(g))
    }

    /// All elements expressible as products of at most `radius` standard
    /// generators and inverses, in breadth-first order (sorted within each
    /// sphere), deduplicated by normal form.
    pub fn ball<I: Int>(&self, radius: u32) -> Result<Vec<GroupElement<I>>> {
        self.ball_with_cap(radius, crate::DEFAULT_RADIUS_CAP)
    }

    pub fn ball_with_cap<I: Int>(&self, radius: u32, cap: u32) -> Result<Vec<GroupElement<I>>> {
        if radius > cap {
            return Err(Error::RadiusTooLarge { radius, cap });
        }
        let mut moves: Vec<GroupElement<I>> = self.generators();
        let inverses: Vec<GroupElement<I>> = moves.iter().map(GroupElement::inverse).collect();
        moves.extend(inverses);

        let mut seen: BTreeSet<GroupElement<I>> = BTreeSet::new();
        let mut out: Vec<GroupElement<I>> = Vec::new();
        let mut sphere: BTreeSet<GroupElement<I>> = BTreeSet::new();
        sphere.insert(self.identity());
        seen.insert(self.identity());
        out.push(self.identity());
        for _ in 0..radius {
            let mut next = BTreeSet::new();
            for g in &sphere {
                for m in &moves {
                    let h = g.mul(m).expect("generators live in the same group");
                    if seen.insert(h.clone()) {
                        next.insert(h);
                    }
                }
            }
            out.extend(next.iter().cloned());
            sphere = next;
        }
        Ok(out)
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupId::FreeAbelian(k) => write!(f, "Z^{k}"),
            GroupId::Free(k) => write!(f, "F_{k}"),
            GroupId::Klein => write!(f, "Klein"),
            GroupId::Heisenberg => write!(f, "Heisenberg"),
        }
    }
}

impl<I: Int> GroupElement<I> {
    pub fn group(&self) -> Option<GroupId> {
        match self {
            GroupElement::FreeAbelian(v) => Some(GroupId::FreeAbelian(v.len())),
            // The word alone does not determine the ambient rank.
            GroupElement::Free(_) => None,
            GroupElement::Klein { .. } => Some(GroupId::Klein),
            GroupElement::Heisenberg { .. } => Some(GroupId::Heisenberg),
        }
    }

    pub fn same_group(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::FreeAbelian(v), GroupElement::FreeAbelian(w)) => v.len() == w.len(),
            (GroupElement::Free(_), GroupElement::Free(_)) => true,
            (GroupElement::Klein { .. }, GroupElement::Klein { .. }) => true,
            (GroupElement::Heisenberg { .. }, GroupElement::Heisenberg { .. }) => true,
            _ => false,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::FreeAbelian(v) => v.iter().all(I::is_zero),
            GroupElement::Free(w) => w.is_empty(),
            GroupElement::Klein { a, b } => a.is_zero() && b.is_zero(),
            GroupElement::Heisenberg { a, b, c } => a.is_zero() && b.is_zero() && c.is_zero(),
        }
    }

    /// Normal form of the product.
    ///
    /// Klein law: `a^m b^n * a^m' b^n' = a^(m + (-1)^n m') b^(n + n')`.
    /// Heisenberg law, from the upper-triangular matrix model:
    /// `(p,q,r) * (p',q',r') = (p+p', q+q', r+r' - p' q)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (GroupElement::FreeAbelian(v), GroupElement::FreeAbelian(w)) => {
                if v.len() != w.len() {
                    return Err(Error::GroupMismatch);
                }
                Ok(GroupElement::FreeAbelian(
                    v.iter().zip(w).map(|(x, y)| x.clone() + y.clone()).collect(),
                ))
            }
            (GroupElement::Free(v), GroupElement::Free(w)) => Ok(GroupElement::Free(v.mul(w))),
            (GroupElement::Klein { a: m, b: n }, GroupElement::Klein { a: m2, b: n2 }) => {
                let twisted = if n.is_even() { m2.clone() } else { -m2.clone() };
                Ok(GroupElement::Klein { a: m.clone() + twisted, b: n.clone() + n2.clone() })
            }
            (
                GroupElement::Heisenberg { a: p, b: q, c: r },
                GroupElement::Heisenberg { a: p2, b: q2, c: r2 },
            ) => Ok(GroupElement::Heisenberg {
                a: p.clone() + p2.clone(),
                b: q.clone() + q2.clone(),
                c: r.clone() + r2.clone() - p2.clone() * q.clone(),
            }),
            _ => Err(Error::GroupMismatch),
        }
    }

    /// Normal form of the inverse. Klein: `(m, n)^-1 = (-(-1)^n m, -n)`.
    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::FreeAbelian(v) => {
                GroupElement::FreeAbelian(v.iter().map(|x| -x.clone()).collect())
            }
            GroupElement::Free(w) => GroupElement::Free(w.inverse()),
            GroupElement::Klein { a: m, b: n } => {
                let m_inv = if n.is_even() { -m.clone() } else { m.clone() };
                GroupElement::Klein { a: m_inv, b: -n.clone() }
            }
            GroupElement::Heisenberg { a: p, b: q, c: r } => GroupElement::Heisenberg {
                a: -p.clone(),
                b: -q.clone(),
                c: -r.clone() - p.clone() * q.clone(),
            },
        }
    }

    /// Exact integer power, via the closed forms of each normal form.
    pub fn pow(&self, e: i64) -> Self {
        let ei = I::of(e);
        match self {
            GroupElement::FreeAbelian(v) => {
                GroupElement::FreeAbelian(v.iter().map(|x| x.clone() * ei.clone()).collect())
            }
            GroupElement::Free(w) => GroupElement::Free(w.pow(e)),
            GroupElement::Klein { a: m, b: n } => {
                if n.is_even() {
                    GroupElement::Klein { a: m.clone() * ei.clone(), b: n.clone() * ei }
                } else {
                    let head = if e % 2 == 0 { I::zero() } else { m.clone() };
                    GroupElement::Klein { a: head, b: n.clone() * ei }
                }
            }
            GroupElement::Heisenberg { a: p, b: q, c: r } => {
                // (p,q,r)^e = (ep, eq, er - binom(e,2) p q)
                let two = I::of(2);
                let binom = ei.clone() * (ei.clone() - I::one()) / two;
                GroupElement::Heisenberg {
                    a: p.clone() * ei.clone(),
                    b: q.clone() * ei.clone(),
                    c: r.clone() * ei - binom * p.clone() * q.clone(),
                }
            }
        }
    }

    /// `g h g^-1 h^-1` in normal form.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// `h g h^-1` in normal form.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self> {
        h.mul(self)?.mul(&h.inverse())
    }

    /// Whether this element commutes with `other`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

/// A pair `(g, h)` in `pi x pi`, both components in the same catalog group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PairElement<I> {
    pub left: GroupElement<I>,
    pub right: GroupElement<I>,
}

impl<I: Int> PairElement<I> {
    pub fn new(left: GroupElement<I>, right: GroupElement<I>) -> Result<Self> {
        if left.same_group(&right) {
            Ok(PairElement { left, right })
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn diagonal(g: GroupElement<I>) -> Self {
        PairElement { left: g.clone(), right: g }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(PairElement { left: self.left.mul(&other.left)?, right: self.right.mul(&other.right)? })
    }

    pub fn inverse(&self) -> Self {
        PairElement { left: self.left.inverse(), right: self.right.inverse() }
    }

    /// The action of `(x, y)` on `g in pi`: `x g y^-1`.
    pub fn act(&self, g: &GroupElement<I>) -> Result<GroupElement<I>> {
        self.left.mul(g)?.mul(&self.right.inverse())
    }
}

/// One of the four Klein bottle forms `x^k z^l`, `y^k z^l`, `x^k z^l c`,
/// `y^k z^l d`, with `k >= 0`; `k = 0` in the tail-less case is
/// canonicalized to the `x` family (there the two families coincide).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KleinForm<I> {
    pub family: KleinFamily,
    pub k: I,
    pub l: I,
    pub tail: KleinTail,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KleinFamily {
    X,
    Y,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KleinTail {
    None,
    C,
    D,
}

/// Named Klein bottle elements in the `a^m b^n` coordinates: the group is
/// generated by `c, d` with `c^2 = d^2 = z` central, and `x = c d`,
/// `y = d c`. The embedding is `c = b`, `d = a b`, validated by the
/// identity `c^2 = d^2`.
pub mod klein {
    use super::GroupElement;
    use crate::int::Int;

    pub fn c<I: Int>() -> GroupElement<I> {
        GroupElement::Klein { a: I::zero(), b: I::one() }
    }

    pub fn d<I: Int>() -> GroupElement<I> {
        GroupElement::Klein { a: I::one(), b: I::one() }
    }

    pub fn x<I: Int>() -> GroupElement<I> {
        GroupElement::Klein { a: -I::one(), b: I::of(2) }
    }

    pub fn y<I: Int>() -> GroupElement<I> {
        GroupElement::Klein { a: I::one(), b: I::of(2) }
    }

    pub fn z<I: Int>() -> GroupElement<I> {
        GroupElement::Klein { a: I::zero(), b: I::of(2) }
    }
}

/// Express a Klein element in exactly one of the four catalog forms.
pub fn klein_paper_form<I: Int>(g: &GroupElement<I>) -> Result<KleinForm<I>> {
    let (m, n) = match g {
        GroupElement::Klein { a, b } => (a.clone(), b.clone()),
        _ => Err(Error::ElementNotInGroup)?,
    };
    let two = I::of(2);
    let form = if n.is_even() {
        let half = n.clone() / two;
        if m.is_positive() {
            // y^k z^l with k = m, l = n/2 - m
            KleinForm { family: KleinFamily::Y, k: m.clone(), l: half - m, tail: KleinTail::None }
        } else {
            // x^k z^l with k = -m, l = n/2 + m; covers the k = 0 overlap
            KleinForm { family: KleinFamily::X, k: -m.clone(), l: half + m, tail: KleinTail::None }
        }
    } else {
        let half = (n.clone() - I::one()) / two;
        if m.is_positive() {
            // y^k z^l d with k = m - 1, l = (n-1)/2 - k
            let k = m - I::one();
            KleinForm { family: KleinFamily::Y, k: k.clone(), l: half - k, tail: KleinTail::D }
        } else {
            // x^k z^l c with k = -m, l = (n-1)/2 - k
            KleinForm { family: KleinFamily::X, k: -m.clone(), l: half + m, tail: KleinTail::C }
        }
    };
    debug_assert_eq!(&form.to_element(), g);
    Ok(form)
}

impl<I: Int> KleinForm<I> {
    /// Multiply the form back out to its normal form.
    pub fn to_element(&self) -> GroupElement<I> {
        let base = match self.family {
            KleinFamily::X => klein::x(),
            KleinFamily::Y => klein::y(),
        };
        let k = self.k.to_i64().expect("form exponent fits in i64");
        let l = self.l.to_i64().expect("form exponent fits in i64");
        let mut g = base.pow(k).mul(&klein::z().pow(l)).expect("same group");
        g = match self.tail {
            KleinTail::None => g,
            KleinTail::C => g.mul(&klein::c()).expect("same group"),
            KleinTail::D => g.mul(&klein::d()).expect("same group"),
        };
        g
    }
}

impl<I: Int> std::fmt::Display for KleinForm<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let base = match self.family {
            KleinFamily::X => "x",
            KleinFamily::Y => "y",
        };
        if self.k == I::one() {
            parts.push(base.to_string());
        } else if !self.k.is_zero() {
            parts.push(format!("{}^{}", base, self.k));
        }
        if self.l == I::one() {
            parts.push("z".to_string());
        } else if !self.l.is_zero() {
            parts.push(format!("z^{}", self.l));
        }
        match self.tail {
            KleinTail::None => {}
            KleinTail::C => parts.push("c".to_string()),
            KleinTail::D => parts.push("d".to_string()),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl<I: Int> std::fmt::Display for GroupElement<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupElement::FreeAbelian(v) => {
                let body: Vec<String> = v.iter().map(I::to_string).collect();
                write!(f, "({})", body.join(", "))
            }
            GroupElement::Free(w) => write!(f, "{w}"),
            GroupElement::Klein { .. } => {
                write!(f, "{}", klein_paper_form(self).expect("Klein element"))
            }
            GroupElement::Heisenberg { a, b, c } => {
                if self.is_identity() {
                    return write!(f, "1");
                }
                let mut parts = Vec::new();
                for (name, e) in [("a", a), ("b", b), ("c", c)] {
                    if e.is_zero() {
                        continue;
                    }
                    if *e == I::one() {
                        parts.push(name.to_string());
                    } else {
                        parts.push(format!("{name}^{e}"));
                    }
                }
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

impl<I: Int> std::fmt::Display for PairElement<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = GroupElement<i64>;

    fn kl(a: i64, b: i64) -> E {
        E::Klein { a, b }
    }

    fn he(a: i64, b: i64, c: i64) -> E {
        E::Heisenberg { a, b, c }
    }

    /// Independent oracle: the 3x3 upper unitriangular matrix model of the
    /// Heisenberg group. `(p, q, r)` embeds as rows
    /// `[1 p pq+r; 0 1 q; 0 0 1]`.
    mod heisenberg_matrix {
        pub type M3 = [[i64; 3]; 3];

        pub fn embed(p: i64, q: i64, r: i64) -> M3 {
            [[1, p, p * q + r], [0, 1, q], [0, 0, 1]]
        }

        pub fn mul(x: &M3, y: &M3) -> M3 {
            let mut out = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            out
        }

        pub fn extract(m: &M3) -> (i64, i64, i64) {
            let (p, q) = (m[0][1], m[1][2]);
            (p, q, m[0][2] - p * q)
        }
    }

    #[test]
    fn heisenberg_law_matches_matrix_oracle() {
        let samples: Vec<(i64, i64, i64)> = (-2..=2)
            .flat_map(|p| (-2..=2).flat_map(move |q| (-2..=2).map(move |r| (p, q, r))))
            .collect();
        for &(p, q, r) in &samples {
            for &(p2, q2, r2) in &samples {
                let product = he(p, q, r).mul(&he(p2, q2, r2)).unwrap();
                let m = heisenberg_matrix::mul(
                    &heisenberg_matrix::embed(p, q, r),
                    &heisenberg_matrix::embed(p2, q2, r2),
                );
                let (ep, eq, er) = heisenberg_matrix::extract(&m);
                assert_eq!(product, he(ep, eq, er));
            }
        }
    }

    #[test]
    fn heisenberg_commutator_of_generators_is_c() {
        let a = he(1, 0, 0);
        let b = he(0, 1, 0);
        assert_eq!(a.commutator(&b).unwrap(), he(0, 0, 1));
        // c is central
        let c = he(0, 0, 1);
        for g in GroupId::Heisenberg.ball::<i64>(2).unwrap() {
            assert!(c.commutes_with(&g).unwrap());
        }
    }

    #[test]
    fn klein_embedding_validates_paper_relations() {
        let (c, d, x, y, z) = (klein::c(), klein::d(), klein::x(), klein::y(), klein::z::<i64>());
        // c^2 = d^2 = z
        assert_eq!(c.mul(&c).unwrap(), z);
        assert_eq!(d.mul(&d).unwrap(), z);
        // x = c d, y = d c
        assert_eq!(c.mul(&d).unwrap(), x);
        assert_eq!(d.mul(&c).unwrap(), y);
        // x y = y x = z^2, i.e. (-1,2)(1,2) = (0,4)
        assert_eq!(x.mul(&y).unwrap(), kl(0, 4));
        assert_eq!(y.mul(&x).unwrap(), kl(0, 4));
        // c x = y c, d x = y d, c y = x c, d y = x d
        assert_eq!(c.mul(&x).unwrap(), y.mul(&c).unwrap());
        assert_eq!(d.mul(&x).unwrap(), y.mul(&d).unwrap());
        assert_eq!(c.mul(&y).unwrap(), x.mul(&c).unwrap());
        assert_eq!(d.mul(&y).unwrap(), x.mul(&d).unwrap());
    }

    #[test]
    fn klein_inverse_formula() {
        // (3,1)^-1 = (3,-1); the product check is the oracle.
        let g = kl(3, 1);
        assert_eq!(g.inverse(), kl(3, -1));
        assert!(g.mul(&g.inverse()).unwrap().is_identity());
        assert_eq!(kl(0, 0), GroupId::Klein.identity());
    }

    #[test]
    fn klein_commutator_of_b_and_a() {
        // [b, a] evaluates to a^-2 = (-2, 0), consistent with b a b^-1 = a^-1:
        // [b, a] = (b a b^-1) a^-1 = a^-2. Frozen from the product chain
        // (0,1)(1,0)(0,-1)(-1,0).
        let a = kl(1, 0);
        let b = kl(0, 1);
        let chain =
            b.mul(&a).unwrap().mul(&b.inverse()).unwrap().mul(&a.inverse()).unwrap();
        assert_eq!(chain, kl(-2, 0));
        assert_eq!(b.commutator(&a).unwrap(), kl(-2, 0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(E::FreeAbelian(vec![1, -4]).inverse(), E::FreeAbelian(vec![-1, 4]));
        let w = E::Free(Word::from_letters([1, -2]));
        assert_eq!(w.inverse(), E::Free(Word::from_letters([2, -1])));
    }

    #[test]
    fn identity_is_neutral() {
        for group in [GroupId::FreeAbelian(2), GroupId::Free(2), GroupId::Klein, GroupId::Heisenberg]
        {
            let e: E = group.identity();
            for g in group.ball::<i64>(2).unwrap() {
                assert_eq!(e.mul(&g).unwrap(), g);
                assert_eq!(g.mul(&e).unwrap(), g);
            }
        }
    }

    #[test]
    fn ball_sizes() {
        // Z^1 radius 2: {-2..2}
        assert_eq!(GroupId::FreeAbelian(1).ball::<i64>(2).unwrap().len(), 5);
        // F_2 radius 2: 1 + 4 + 12 freely reduced words
        assert_eq!(GroupId::Free(2).ball::<i64>(2).unwrap().len(), 17);
        // Klein radius 1: identity and the four generator letters
        let b1 = GroupId::Klein.ball::<i64>(1).unwrap();
        assert_eq!(b1.len(), 5);
        for g in [kl(0, 0), kl(1, 0), kl(-1, 0), kl(0, 1), kl(0, -1)] {
            assert!(b1.contains(&g));
        }
    }

    #[test]
    fn ball_is_monotone_and_capped() {
        for group in [GroupId::Free(2), GroupId::Klein, GroupId::Heisenberg] {
            let b2: Vec<E> = group.ball(2).unwrap();
            let b3: Vec<E> = group.ball(3).unwrap();
            assert!(b2.iter().all(|g| b3.contains(g)));
        }
        assert!(matches!(
            GroupId::Klein.ball::<i64>(9),
            Err(Error::RadiusTooLarge { radius: 9, cap: 8 })
        ));
        assert!(GroupId::Klein.ball_with_cap::<i64>(9, 9).is_ok());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        for group in [GroupId::FreeAbelian(2), GroupId::Free(2), GroupId::Klein, GroupId::Heisenberg]
        {
            for g in group.ball::<i64>(2).unwrap() {
                let mut acc: E = group.identity();
                for e in 0..=6i64 {
                    assert_eq!(g.pow(e), acc, "pow({e}) of {g:?}");
                    assert_eq!(g.pow(-e), acc.inverse());
                    acc = acc.mul(&g).unwrap();
                }
            }
        }
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let v = E::FreeAbelian(vec![1]);
        let w = E::FreeAbelian(vec![1, 2]);
        assert_eq!(v.mul(&w), Err(Error::GroupMismatch));
        assert_eq!(kl(1, 0).mul(&he(1, 0, 0)), Err(Error::GroupMismatch));
        assert!(PairElement::new(kl(1, 0), he(0, 0, 0)).is_err());
    }

    #[test]
    fn klein_paper_form_examples() {
        // z = x^0 z^1, canonicalized to the x family
        let f = klein_paper_form(&kl(0, 2)).unwrap();
        assert_eq!(f, KleinForm { family: KleinFamily::X, k: 0, l: 1, tail: KleinTail::None });
        assert_eq!(f.to_string(), "z");
        // x itself
        let f = klein_paper_form(&klein::x::<i64>()).unwrap();
        assert_eq!(f, KleinForm { family: KleinFamily::X, k: 1, l: 0, tail: KleinTail::None });
        assert_eq!(f.to_string(), "x");
        // (1, 3) = z d, found by the exhaustive oracle below as well
        let f = klein_paper_form(&kl(1, 3)).unwrap();
        assert_eq!(f, KleinForm { family: KleinFamily::Y, k: 0, l: 1, tail: KleinTail::D });
        assert_eq!(f.to_string(), "z d");
        assert_eq!(klein_paper_form(&kl(0, 1)).unwrap().to_string(), "c");
        assert_eq!(klein_paper_form(&kl(1, 1)).unwrap().to_string(), "d");
        assert_eq!(klein_paper_form(&kl(0, 0)).unwrap().to_string(), "1");
    }

    /// Exhaustive oracle over small exponents: every element of the radius-4
    /// ball is reachable by exactly one admissible form, up to the recorded
    /// x^0/y^0 overlap which is canonicalized to the x family.
    #[test]
    fn klein_paper_form_unique_by_exhaustion() {
        let ball = GroupId::Klein.ball::<i64>(4).unwrap();
        for g in &ball {
            let mut hits: Vec<KleinForm<i64>> = Vec::new();
            for k in 0..=8i64 {
                for l in -8..=8i64 {
                    for (family, tail) in [
                        (KleinFamily::X, KleinTail::None),
                        (KleinFamily::Y, KleinTail::None),
                        (KleinFamily::X, KleinTail::C),
                        (KleinFamily::Y, KleinTail::D),
                    ] {
                        let form = KleinForm { family, k, l, tail };
                        if &form.to_element() == g {
                            hits.push(form);
                        }
                    }
                }
            }
            let canonical = klein_paper_form(g).unwrap();
            assert!(hits.contains(&canonical), "canonical form of {g:?} not found");
            if hits.len() > 1 {
                // Only the x^0 z^l = y^0 z^l overlap may occur.
                assert_eq!(hits.len(), 2, "unexpected overlap for {g:?}: {hits:?}");
                assert!(hits.iter().all(|h| h.k == 0 && h.tail == KleinTail::None));
                assert_eq!(canonical.family, KleinFamily::X);
            }
        }
    }

    #[test]
    fn pair_action_is_a_left_action() {
        let group = GroupId::Klein;
        let ball = group.ball::<i64>(2).unwrap();
        for p1 in ball.iter().take(6) {
            for p2 in ball.iter().take(6) {
                let pair1 = PairElement::new(p1.clone(), p2.clone()).unwrap();
                for g in ball.iter().take(6) {
                    for h in ball.iter().take(6) {
                        let pair2 = PairElement::new(g.clone(), h.clone()).unwrap();
                        let lhs = pair1.mul(&pair2).unwrap().act(&kl(1, 1)).unwrap();
                        let rhs = pair1.act(&pair2.act(&kl(1, 1)).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(E::FreeAbelian(vec![1, -4]).to_string(), "(1, -4)");
        assert_eq!(he(2, 0, -1).to_string(), "a^2 c^-1");
        assert_eq!(he(0, 0, 0).to_string(), "1");
        assert_eq!(kl(0, 1).to_string(), "c");
    }
}
