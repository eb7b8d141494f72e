//! The family of subgroups of `G = pi x pi` generated by the diagonal
//! under conjugation and finite intersection.
//!
//! A nontrivial member is a twisted diagonal
//! `H(b, S) = {(a, b a b^-1) : a in Z(S)}` for an element `b` and a finite
//! set `S`; the trivial subgroup is a distinguished member. These are
//! exactly the isotropy groups of the `(x, y) . g = x g y^-1` action on
//! tuples of group elements.
//!
//! Subgroups are not canonicalized on construction; [`DiagonalSubgroup::equal`]
//! decides semantic equality through the bicommutant criterion.

use crate::centralizer::{
    centralizer, double_centralizer, proper_coset_witness, subgroup_index, CosetDescriptor, Index,
    SubgroupDescriptor,
};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupId, PairElement};
use crate::int::Int;

/// A member of the family: either the trivial subgroup or `H(b, S)` with
/// the centralizer of `S` cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalSubgroup<I> {
    group: GroupId,
    kind: Kind<I>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Kind<I> {
    Trivial,
    Twisted { b: GroupElement<I>, s: Vec<GroupElement<I>>, zs: SubgroupDescriptor<I> },
}

/// Index of an intersection inside the first subgroup, with a coset witness
/// in the finite nontrivial case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelativeIndex<I> {
    One,
    Finite { index: u64, witness: GroupElement<I> },
    Infinite,
}

impl<I: Int> DiagonalSubgroup<I> {
    /// `H(b, S)`; `H(1, {})` is the diagonal.
    pub fn twisted(group: GroupId, b: GroupElement<I>, s: Vec<GroupElement<I>>) -> Result<Self> {
        group.check_members(std::slice::from_ref(&b))?;
        group.check_members(&s)?;
        let zs = centralizer(group, &s)?;
        Ok(DiagonalSubgroup { group, kind: Kind::Twisted { b, s, zs } })
    }

    /// The diagonal subgroup `H(1, {})`.
    pub fn diagonal(group: GroupId) -> Self {
        let zs = SubgroupDescriptor::Whole(group);
        DiagonalSubgroup {
            group,
            kind: Kind::Twisted { b: group.identity(), s: Vec::new(), zs },
        }
    }

    /// The distinguished trivial member of the family.
    pub fn trivial(group: GroupId) -> Self {
        DiagonalSubgroup { group, kind: Kind::Trivial }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    /// The cached centralizer descriptor `Z(S)` carrying the first
    /// coordinates; `Trivial` for the trivial member.
    pub fn first_coordinate_range(&self) -> SubgroupDescriptor<I> {
        match &self.kind {
            Kind::Trivial => SubgroupDescriptor::Trivial(self.group),
            Kind::Twisted { zs, .. } => zs.clone(),
        }
    }

    pub fn twist(&self) -> Option<&GroupElement<I>> {
        match &self.kind {
            Kind::Trivial => None,
            Kind::Twisted { b, .. } => Some(b),
        }
    }

    pub fn defining_set(&self) -> Option<&[GroupElement<I>]> {
        match &self.kind {
            Kind::Trivial => None,
            Kind::Twisted { s, .. } => Some(s),
        }
    }

    /// Extensionally the one-element subgroup: either the distinguished
    /// trivial member or a twisted diagonal over a trivial centralizer.
    pub fn is_extensionally_trivial(&self) -> bool {
        match &self.kind {
            Kind::Trivial => true,
            Kind::Twisted { zs, .. } => zs.is_trivial(),
        }
    }

    /// Membership: `(g, h)` lies in `H(b, S)` iff `h = b g b^-1` and
    /// `g in Z(S)`.
    pub fn member(&self, p: &PairElement<I>) -> Result<bool> {
        self.group.check_members(&[p.left.clone(), p.right.clone()])?;
        match &self.kind {
            Kind::Trivial => Ok(p.left.is_identity() && p.right.is_identity()),
            Kind::Twisted { b, zs, .. } => {
                Ok(p.right == p.left.conjugate_by(b)? && zs.contains(&p.left)?)
            }
        }
    }

    /// Intersection stays in the family:
    /// `H(b, S) cap H(b', S') = H(b, S u S' u {b'^-1 b})`, degenerating to
    /// the trivial member when the centralizer collapses.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let (b1, s1) = match &self.kind {
            Kind::Trivial => return Ok(Self::trivial(self.group)),
            Kind::Twisted { b, s, .. } => (b, s),
        };
        let (b2, s2) = match &other.kind {
            Kind::Trivial => return Ok(Self::trivial(self.group)),
            Kind::Twisted { b, s, .. } => (b, s),
        };
        let mut s: Vec<GroupElement<I>> = s1.clone();
        s.extend(s2.iter().cloned());
        let relator = b2.inverse().mul(b1)?;
        if !relator.is_identity() {
            s.push(relator);
        }
        let joined = Self::twisted(self.group, b1.clone(), s)?;
        if joined.is_extensionally_trivial() {
            Ok(Self::trivial(self.group))
        } else {
            Ok(joined)
        }
    }

    /// Semantic equality: equal centralizers and `b'^-1 b in Z(Z(S))`.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.is_extensionally_trivial() || other.is_extensionally_trivial() {
            return Ok(self.is_extensionally_trivial() && other.is_extensionally_trivial());
        }
        let (b1, s1, zs1) = match &self.kind {
            Kind::Twisted { b, s, zs } => (b, s, zs),
            Kind::Trivial => unreachable!("trivial handled above"),
        };
        let (b2, zs2) = match &other.kind {
            Kind::Twisted { b, zs, .. } => (b, zs),
            Kind::Trivial => unreachable!("trivial handled above"),
        };
        if !zs1.same_subgroup(zs2)? {
            return Ok(false);
        }
        let bicommutant = double_centralizer(self.group, s1)?;
        bicommutant.contains(&b2.inverse().mul(b1)?)
    }

    /// Fixed points of the subgroup acting on `pi`:
    /// `pi^H = Z(Z(S)) * b^-1`; the whole group for the trivial member.
    pub fn fixed_points(&self) -> Result<CosetDescriptor<I>> {
        match &self.kind {
            Kind::Trivial => Ok(CosetDescriptor {
                subgroup: SubgroupDescriptor::Whole(self.group),
                translator: self.group.identity(),
            }),
            Kind::Twisted { b, s, .. } => Ok(CosetDescriptor {
                subgroup: double_centralizer(self.group, s)?,
                translator: b.inverse(),
            }),
        }
    }

    /// Conjugation closure: `p H(b, S) p^-1 = H(v b u^-1, u S u^-1)` for
    /// `p = (u, v)`.
    pub fn conjugate(&self, p: &PairElement<I>) -> Result<Self> {
        self.group.check_members(&[p.left.clone(), p.right.clone()])?;
        match &self.kind {
            Kind::Trivial => Ok(Self::trivial(self.group)),
            Kind::Twisted { b, s, .. } => {
                let new_b = p.right.mul(b)?.mul(&p.left.inverse())?;
                let new_s: Result<Vec<_>> =
                    s.iter().map(|g| g.conjugate_by(&p.left)).collect();
                Self::twisted(self.group, new_b, new_s?)
            }
        }
    }

    /// Index of `self cap other` in `self`; the first coordinates carry the
    /// index because the second is determined by the twist.
    pub fn relative_index(&self, other: &Self) -> Result<RelativeIndex<I>> {
        let inter = self.intersect(other)?;
        let ambient = self.first_coordinate_range();
        let inside = inter.first_coordinate_range();
        match subgroup_index(&ambient, &inside)? {
            Index::Finite(1) => Ok(RelativeIndex::One),
            Index::Finite(n) => {
                let witness = proper_coset_witness(&ambient, &inside)?
                    .expect("finite proper index has a short coset representative");
                Ok(RelativeIndex::Finite { index: n, witness })
            }
            Index::Infinite => Ok(RelativeIndex::Infinite),
        }
    }
}

/// Stabilizer of a tuple `(g_1, ..., g_s)` under the componentwise
/// `(x, y) . g = x g y^-1` action: `H(g_1^-1, {g_1 g_2^-1, ..., g_1 g_s^-1})`.
pub fn stabilizer_of_tuple<I: Int>(
    group: GroupId,
    tuple: &[GroupElement<I>],
) -> Result<DiagonalSubgroup<I>> {
    let first = tuple.first().ok_or(Error::EmptyTuple)?;
    group.check_members(tuple)?;
    let s: Result<Vec<GroupElement<I>>> =
        tuple[1..].iter().map(|g| first.mul(&g.inverse())).collect();
    DiagonalSubgroup::twisted(group, first.inverse(), s?)
}

impl<I: Int> std::fmt::Display for DiagonalSubgroup<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            Kind::Trivial => write!(f, "1"),
            Kind::Twisted { b, s, .. } => {
                let set: Vec<String> = s.iter().map(|g| g.to_string()).collect();
                write!(f, "H({b}, {{{}}})", set.join(", "))
            }
        }
    }
}
