//! Closed-form centralizers and the exact descriptor algebra.
//!
//! Centralizers of finite subsets in the catalog groups fall into four
//! shapes: the whole group, the trivial subgroup, a cyclic subgroup, or a
//! rank-2 lattice. The descriptor algebra (membership, intersection, index)
//! is a closed case table; a case outside the table is a hard error, never
//! an approximation. A brute-force ball filter validates everything.
//!
//! Rank-2 descriptors always live inside an abelian subgroup with an exact
//! `Z^2` coordinate chart:
//!
//! * `Z^k` is its own chart;
//! * in the Klein group, commuting independent pairs lie in the index-2
//!   subgroup `<a, b^2>`, chart `(m, n) -> (m, n/2)`;
//! * in the Heisenberg group they lie in `M_d = {(w d_1, w d_2, z)}` for a
//!   primitive direction `d`, chart `(w d_1, w d_2, z) ->
//!   (w, z + binom(w,2) d_1 d_2)`.
//!
//! All lattice arithmetic then reduces to integer kernels and solves.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupId};
use crate::int::{lcm_nonzero, Int};
use crate::linalg::Matrix;
use crate::word::Word;

/// Closed-form description of a centralizer-type subgroup.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SubgroupDescriptor<I> {
    Whole(GroupId),
    Trivial(GroupId),
    Cyclic { group: GroupId, generator: GroupElement<I> },
    Lattice2 { group: GroupId, g1: GroupElement<I>, g2: GroupElement<I> },
}

/// A right coset `S * translator` of a descriptor subgroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetDescriptor<I> {
    pub subgroup: SubgroupDescriptor<I>,
    pub translator: GroupElement<I>,
}

/// Index of a subgroup, exact.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Index {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

impl<I: Int> SubgroupDescriptor<I> {
    pub fn cyclic(group: GroupId, generator: GroupElement<I>) -> Result<Self> {
        group.check_members(std::slice::from_ref(&generator))?;
        if generator.is_identity() {
            return Err(Error::DescriptorCase("cyclic descriptor on the identity"));
        }
        Ok(SubgroupDescriptor::Cyclic { group, generator })
    }

    pub fn lattice2(group: GroupId, g1: GroupElement<I>, g2: GroupElement<I>) -> Result<Self> {
        group.check_members(&[g1.clone(), g2.clone()])?;
        if !g1.commutes_with(&g2)? {
            return Err(Error::DescriptorCase("lattice generators must commute"));
        }
        let desc = SubgroupDescriptor::Lattice2 { group, g1, g2 };
        // Independence: the chart coordinates of the generators span rank 2.
        let chart = desc.lattice_chart()?;
        let basis = desc.lattice_basis(&chart)?;
        if basis.rank() != 2 {
            return Err(Error::DescriptorCase("lattice generators are dependent"));
        }
        Ok(desc)
    }

    pub fn group(&self) -> GroupId {
        match self {
            SubgroupDescriptor::Whole(g) | SubgroupDescriptor::Trivial(g) => *g,
            SubgroupDescriptor::Cyclic { group, .. } => *group,
            SubgroupDescriptor::Lattice2 { group, .. } => *group,
        }
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, SubgroupDescriptor::Whole(_))
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, SubgroupDescriptor::Trivial(_))
    }

    /// A finite generating set for the subgroup; the standard generators for
    /// `Whole`.
    pub fn generators(&self) -> Vec<GroupElement<I>> {
        match self {
            SubgroupDescriptor::Whole(g) => g.generators(),
            SubgroupDescriptor::Trivial(_) => Vec::new(),
            SubgroupDescriptor::Cyclic { generator, .. } => vec![generator.clone()],
            SubgroupDescriptor::Lattice2 { g1, g2, .. } => vec![g1.clone(), g2.clone()],
        }
    }

    /// Rank as a free abelian group, when the descriptor is one.
    pub fn abelian_rank(&self) -> Option<usize> {
        match self {
            SubgroupDescriptor::Whole(GroupId::FreeAbelian(k)) => Some(*k),
            SubgroupDescriptor::Whole(GroupId::Free(1)) => Some(1),
            SubgroupDescriptor::Whole(_) => None,
            SubgroupDescriptor::Trivial(_) => Some(0),
            SubgroupDescriptor::Cyclic { .. } => Some(1),
            SubgroupDescriptor::Lattice2 { .. } => Some(2),
        }
    }

    /// Exact membership test.
    pub fn contains(&self, g: &GroupElement<I>) -> Result<bool> {
        self.group().check_members(std::slice::from_ref(g))?;
        match self {
            SubgroupDescriptor::Whole(_) => Ok(true),
            SubgroupDescriptor::Trivial(_) => Ok(g.is_identity()),
            SubgroupDescriptor::Cyclic { generator, .. } => Ok(power_of(generator, g)?.is_some()),
            SubgroupDescriptor::Lattice2 { .. } => {
                let chart = self.lattice_chart()?;
                let basis = self.lattice_basis(&chart)?;
                match chart.coords(g) {
                    Some(v) => Ok(basis.solve(&v).is_some()),
                    None => Ok(false),
                }
            }
        }
    }

    /// `self` contains every generator of `other`.
    pub fn contains_subgroup(&self, other: &Self) -> Result<bool> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch);
        }
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extensional equality (mutual containment on generators).
    pub fn same_subgroup(&self, other: &Self) -> Result<bool> {
        Ok(self.contains_subgroup(other)? && other.contains_subgroup(self)?)
    }

    /// Exact intersection, staying inside the four descriptor shapes.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch);
        }
        let group = self.group();
        use SubgroupDescriptor as D;
        match (self, other) {
            (D::Whole(_), x) => Ok(x.clone()),
            (x, D::Whole(_)) => Ok(x.clone()),
            (D::Trivial(_), _) | (_, D::Trivial(_)) => Ok(D::Trivial(group)),
            (D::Cyclic { generator: g, .. }, D::Cyclic { generator: h, .. }) => {
                cyclic_cap_cyclic(group, g, h)
            }
            (D::Cyclic { generator: g, .. }, lat @ D::Lattice2 { .. })
            | (lat @ D::Lattice2 { .. }, D::Cyclic { generator: g, .. }) => {
                cyclic_cap_lattice(group, g, lat)
            }
            (a @ D::Lattice2 { .. }, b @ D::Lattice2 { .. }) => lattice_cap_lattice(group, a, b),
        }
    }

    /// The chart carrying this rank-2 descriptor.
    fn lattice_chart(&self) -> Result<Chart<I>> {
        let (group, g1, g2) = match self {
            SubgroupDescriptor::Lattice2 { group, g1, g2 } => (group, g1, g2),
            _ => return Err(Error::DescriptorCase("chart requested for a non-lattice")),
        };
        match group {
            GroupId::FreeAbelian(k) => Ok(Chart::Identity(*k)),
            GroupId::Klein => {
                for g in [g1, g2] {
                    if let GroupElement::Klein { b, .. } = g {
                        if b.is_odd() {
                            return Err(Error::DescriptorCase(
                                "Klein lattice with a generator outside <a, b^2>",
                            ));
                        }
                    }
                }
                Ok(Chart::KleinEven)
            }
            GroupId::Heisenberg => {
                let dir = [g1, g2]
                    .into_iter()
                    .find_map(heisenberg_direction)
                    .ok_or(Error::DescriptorCase("Heisenberg lattice with central generators"))?;
                let chart = Chart::HeisenbergRay(dir);
                if chart.coords(g1).is_none() || chart.coords(g2).is_none() {
                    return Err(Error::DescriptorCase(
                        "Heisenberg lattice generators do not share a direction",
                    ));
                }
                Ok(chart)
            }
            GroupId::Free(_) => {
                Err(Error::DescriptorCase("rank-2 lattices do not occur in free groups"))
            }
        }
    }

    /// Chart coordinates of the generators, as columns.
    fn lattice_basis(&self, chart: &Chart<I>) -> Result<Matrix<I>> {
        let (g1, g2) = match self {
            SubgroupDescriptor::Lattice2 { g1, g2, .. } => (g1, g2),
            _ => return Err(Error::DescriptorCase("basis requested for a non-lattice")),
        };
        let c1 = chart.coords(g1).ok_or(Error::DescriptorCase("generator outside chart"))?;
        let c2 = chart.coords(g2).ok_or(Error::DescriptorCase("generator outside chart"))?;
        Ok(Matrix::from_cols(vec![c1, c2]))
    }
}

impl<I: Int> std::fmt::Display for SubgroupDescriptor<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubgroupDescriptor::Whole(g) => write!(f, "whole {g}"),
            SubgroupDescriptor::Trivial(_) => write!(f, "1"),
            SubgroupDescriptor::Cyclic { generator, .. } => write!(f, "<{generator}>"),
            SubgroupDescriptor::Lattice2 { g1, g2, .. } => write!(f, "<{g1}, {g2}>"),
        }
    }
}

impl<I: Int> CosetDescriptor<I> {
    /// Membership: `g in S * t` iff `g t^-1 in S`.
    pub fn contains(&self, g: &GroupElement<I>) -> Result<bool> {
        self.subgroup.contains(&g.mul(&self.translator.inverse())?)
    }
}

impl<I: Int> std::fmt::Display for CosetDescriptor<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} * {}", self.subgroup, self.translator)
    }
}

// ---------------------------------------------------------------------------
// Charts
// ---------------------------------------------------------------------------

/// Exact `Z^n` coordinates on an abelian subgroup of a catalog group.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Chart<I> {
    /// `Z^k` with its own coordinates.
    Identity(usize),
    /// The Klein subgroup `<a, b^2>`: `(m, n) -> (m, n/2)`.
    KleinEven,
    /// The Heisenberg subgroup `M_d` for a primitive direction `d`.
    HeisenbergRay((I, I)),
}

impl<I: Int> Chart<I> {
    fn coords(&self, g: &GroupElement<I>) -> Option<Vec<I>> {
        match (self, g) {
            (Chart::Identity(k), GroupElement::FreeAbelian(v)) if v.len() == *k => Some(v.clone()),
            (Chart::KleinEven, GroupElement::Klein { a, b }) => {
                b.is_even().then(|| vec![a.clone(), b.clone() / I::of(2)])
            }
            (Chart::HeisenbergRay((d1, d2)), GroupElement::Heisenberg { a: p, b: q, c: r }) => {
                let w = ray_multiple(p, q, d1, d2)?;
                let two = I::of(2);
                let binom = w.clone() * (w.clone() - I::one()) / two;
                Some(vec![w, r.clone() + binom * d1.clone() * d2.clone()])
            }
            _ => None,
        }
    }

    fn element(&self, coords: &[I]) -> GroupElement<I> {
        match self {
            Chart::Identity(k) => {
                assert_eq!(coords.len(), *k);
                GroupElement::FreeAbelian(coords.to_vec())
            }
            Chart::KleinEven => {
                GroupElement::Klein { a: coords[0].clone(), b: coords[1].clone() * I::of(2) }
            }
            Chart::HeisenbergRay((d1, d2)) => {
                let w = coords[0].clone();
                let two = I::of(2);
                let binom = w.clone() * (w.clone() - I::one()) / two;
                GroupElement::Heisenberg {
                    a: w.clone() * d1.clone(),
                    b: w * d2.clone(),
                    c: coords[1].clone() - binom * d1.clone() * d2.clone(),
                }
            }
        }
    }
}

/// Solve `(p, q) = w * (d1, d2)` for an integer `w`.
fn ray_multiple<I: Int>(p: &I, q: &I, d1: &I, d2: &I) -> Option<I> {
    let w = if !d1.is_zero() {
        let (w, rem) = p.div_rem(d1);
        if !rem.is_zero() {
            return None;
        }
        w
    } else if !d2.is_zero() {
        let (w, rem) = q.div_rem(d2);
        if !rem.is_zero() {
            return None;
        }
        w
    } else {
        return None;
    };
    (p.clone() == w.clone() * d1.clone() && q.clone() == w.clone() * d2.clone()).then_some(w)
}

/// Primitive direction of a non-central Heisenberg element, sign-normalized
/// so that the first nonzero coordinate is positive.
fn heisenberg_direction<I: Int>(g: &GroupElement<I>) -> Option<(I, I)> {
    let (p, q) = match g {
        GroupElement::Heisenberg { a, b, .. } => (a.clone(), b.clone()),
        _ => return None,
    };
    if p.is_zero() && q.is_zero() {
        return None;
    }
    let g0 = p.gcd(&q);
    let (mut d1, mut d2) = (p / g0.clone(), q / g0);
    if d1.is_negative() || (d1.is_zero() && d2.is_negative()) {
        d1 = -d1;
        d2 = -d2;
    }
    Some((d1, d2))
}

// ---------------------------------------------------------------------------
// Lattice arithmetic on chart coordinates
// ---------------------------------------------------------------------------

/// Basis (as columns) of the intersection of two column-span lattices.
fn lattice_intersection_basis<I: Int>(b1: &Matrix<I>, b2: &Matrix<I>) -> Matrix<I> {
    let stacked = b1.hstack(&b2.scale(&(-I::one())));
    let kernel = stacked.kernel_basis();
    let mut in_first = Matrix::zero(b1.ncols(), kernel.ncols());
    for j in 0..kernel.ncols() {
        for i in 0..b1.ncols() {
            in_first[(i, j)] = kernel[(i, j)].clone();
        }
    }
    b1.mul(&in_first).column_space_basis()
}

/// Smallest `d > 0` with `d * v` in the column span of `b`, if any.
fn lattice_multiple<I: Int>(v: &[I], b: &Matrix<I>) -> Option<I> {
    let vcol = Matrix::from_cols(vec![v.to_vec()]);
    let stacked = vcol.hstack(&b.scale(&(-I::one())));
    let kernel = stacked.kernel_basis();
    let mut d = I::zero();
    for j in 0..kernel.ncols() {
        d = d.gcd(&kernel[(0, j)]);
    }
    (!d.is_zero()).then(|| d.abs())
}

// ---------------------------------------------------------------------------
// Power solving
// ---------------------------------------------------------------------------

/// Exact integer power with a scalar exponent (closed forms; free-group
/// words fall back to the machine-size exponent).
pub fn pow_scalar<I: Int>(g: &GroupElement<I>, e: &I) -> GroupElement<I> {
    match g {
        GroupElement::FreeAbelian(v) => {
            GroupElement::FreeAbelian(v.iter().map(|x| x.clone() * e.clone()).collect())
        }
        GroupElement::Free(_) => g.pow(e.to_i64().expect("free word exponent fits in i64")),
        GroupElement::Klein { a: m, b: n } => {
            if n.is_even() {
                GroupElement::Klein { a: m.clone() * e.clone(), b: n.clone() * e.clone() }
            } else {
                let head = if e.is_odd() { m.clone() } else { I::zero() };
                GroupElement::Klein { a: head, b: n.clone() * e.clone() }
            }
        }
        GroupElement::Heisenberg { a: p, b: q, c: r } => {
            let two = I::of(2);
            let binom = e.clone() * (e.clone() - I::one()) / two;
            GroupElement::Heisenberg {
                a: p.clone() * e.clone(),
                b: q.clone() * e.clone(),
                c: r.clone() * e.clone() - binom * p.clone() * q.clone(),
            }
        }
    }
}

/// Solve `base^e = target` for an integer exponent, exactly.
pub fn power_of<I: Int>(base: &GroupElement<I>, target: &GroupElement<I>) -> Result<Option<I>> {
    if !base.same_group(target) {
        return Err(Error::GroupMismatch);
    }
    if base.is_identity() {
        return Ok(target.is_identity().then(I::zero));
    }
    if target.is_identity() {
        // Torsion-free catalog: only the zero power is trivial.
        return Ok(Some(I::zero()));
    }
    let candidate = match (base, target) {
        (GroupElement::Free(b), GroupElement::Free(t)) => {
            return Ok(t.log_base(b).map(I::of));
        }
        (GroupElement::FreeAbelian(b), GroupElement::FreeAbelian(t)) => {
            ratio_candidate(b.iter().zip(t.iter()))
        }
        (GroupElement::Klein { a: m, b: n }, GroupElement::Klein { a: p, b: q }) => {
            ratio_candidate([(n, q), (m, p)].into_iter())
        }
        (
            GroupElement::Heisenberg { a: p, b: q, c: r },
            GroupElement::Heisenberg { a: p2, b: q2, c: r2 },
        ) => ratio_candidate([(p, p2), (q, q2), (r, r2)].into_iter()),
        _ => unreachable!("same_group checked above"),
    };
    let Some(e) = candidate else {
        return Ok(None);
    };
    Ok((pow_scalar(base, &e) == *target).then_some(e))
}

/// First well-defined coordinate ratio; the caller verifies the candidate.
fn ratio_candidate<'a, I: Int + 'a>(pairs: impl Iterator<Item = (&'a I, &'a I)>) -> Option<I> {
    for (b, t) in pairs {
        if b.is_zero() {
            if t.is_zero() {
                continue;
            }
            return None;
        }
        let (e, rem) = t.div_rem(b);
        return rem.is_zero().then_some(e);
    }
    None
}

// ---------------------------------------------------------------------------
// Intersection case table
// ---------------------------------------------------------------------------

fn cyclic_from_power<I: Int>(
    group: GroupId,
    g: &GroupElement<I>,
    e: &I,
) -> Result<SubgroupDescriptor<I>> {
    if e.is_zero() {
        Ok(SubgroupDescriptor::Trivial(group))
    } else {
        SubgroupDescriptor::cyclic(group, pow_scalar(g, &e.abs()))
    }
}

fn cyclic_cap_cyclic<I: Int>(
    group: GroupId,
    g: &GroupElement<I>,
    h: &GroupElement<I>,
) -> Result<SubgroupDescriptor<I>> {
    match group {
        GroupId::FreeAbelian(_) => {
            let (gv, hv) = match (g, h) {
                (GroupElement::FreeAbelian(a), GroupElement::FreeAbelian(b)) => {
                    (a.clone(), b.clone())
                }
                _ => return Err(Error::ElementNotInGroup),
            };
            let cap = abelian_cyclic_cap(&gv, &hv);
            Ok(lift_from_chart(group, &Chart::Identity(gv.len()), cap))
        }
        GroupId::Free(_) => {
            let (gw, hw) = match (g, h) {
                (GroupElement::Free(a), GroupElement::Free(b)) => (a, b),
                _ => return Err(Error::ElementNotInGroup),
            };
            free_cyclic_cap(group, gw, hw)
        }
        GroupId::Klein => klein_cyclic_cap(group, g, h),
        GroupId::Heisenberg => heisenberg_cyclic_cap(group, g, h),
    }
}

/// `<v> cap <w>` inside a coordinate chart: nontrivial iff the directions
/// agree up to sign, and then generated by the lcm of the multiplicities.
/// Returns chart-level data (`None` = trivial, `Some(vector)` = generator).
fn abelian_cyclic_cap<I: Int>(gv: &[I], hv: &[I]) -> Option<Vec<I>> {
    let gcd_g = gv.iter().fold(I::zero(), |acc, x| acc.gcd(x));
    let gcd_h = hv.iter().fold(I::zero(), |acc, x| acc.gcd(x));
    if gcd_g.is_zero() || gcd_h.is_zero() {
        return None;
    }
    let dir_g: Vec<I> = gv.iter().map(|x| x.clone() / gcd_g.clone()).collect();
    let dir_h: Vec<I> = hv.iter().map(|x| x.clone() / gcd_h.clone()).collect();
    let neg_h: Vec<I> = dir_h.iter().map(|x| -x.clone()).collect();
    if dir_g != dir_h && dir_g != neg_h {
        return None;
    }
    let l = lcm_nonzero(&gcd_g, &gcd_h).abs();
    Some(dir_g.into_iter().map(|x| x * l.clone()).collect())
}

fn lift_from_chart<I: Int>(
    group: GroupId,
    chart: &Chart<I>,
    generator: Option<Vec<I>>,
) -> SubgroupDescriptor<I> {
    match generator {
        None => SubgroupDescriptor::Trivial(group),
        Some(v) => SubgroupDescriptor::Cyclic { group, generator: chart.element(&v) },
    }
}

fn free_cyclic_cap<I: Int>(group: GroupId, g: &Word, h: &Word) -> Result<SubgroupDescriptor<I>> {
    let (pg, ph) = (g.primitive_root(), h.primitive_root());
    if pg != ph && pg != ph.inverse() {
        return Ok(SubgroupDescriptor::Trivial(group));
    }
    let e = lcm_nonzero(&g.primitive_exponent(), &h.primitive_exponent()).abs();
    SubgroupDescriptor::cyclic(group, GroupElement::Free(pg.pow(e)))
}

fn klein_cyclic_cap<I: Int>(
    group: GroupId,
    g: &GroupElement<I>,
    h: &GroupElement<I>,
) -> Result<SubgroupDescriptor<I>> {
    let (gm, gn) = klein_exponents(g)?;
    let (hm, hn) = klein_exponents(h)?;
    let chart = Chart::KleinEven;
    match (gn.is_even(), hn.is_even()) {
        (true, true) => {
            let gv = chart.coords(g).expect("even Klein element");
            let hv = chart.coords(h).expect("even Klein element");
            Ok(lift_from_chart(group, &chart, abelian_cyclic_cap(&gv, &hv)))
        }
        // An odd generator meets the even world only through its square.
        (true, false) => klein_cyclic_cap(group, g, &h.pow(2)),
        (false, true) => klein_cyclic_cap(group, &g.pow(2), h),
        (false, false) => {
            // Even parts are <z^n> and <z^n'>; the odd parts meet iff the
            // a-exponents agree and the lcm has odd quotients, i.e. the
            // 2-adic valuations of n and n' coincide.
            let l = lcm_nonzero(&gn, &hn).abs();
            if gm == hm && two_valuation(&gn) == two_valuation(&hn) {
                SubgroupDescriptor::cyclic(group, GroupElement::Klein { a: gm, b: l })
            } else {
                let two = I::of(2);
                SubgroupDescriptor::cyclic(group, GroupElement::Klein { a: I::zero(), b: two * l })
            }
        }
    }
}

fn klein_exponents<I: Int>(g: &GroupElement<I>) -> Result<(I, I)> {
    match g {
        GroupElement::Klein { a, b } => Ok((a.clone(), b.clone())),
        _ => Err(Error::ElementNotInGroup),
    }
}

fn two_valuation<I: Int>(n: &I) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0;
    let mut n = n.abs();
    let two = I::of(2);
    while n.is_even() {
        n = n / two.clone();
        v += 1;
    }
    v
}

fn heisenberg_cyclic_cap<I: Int>(
    group: GroupId,
    g: &GroupElement<I>,
    h: &GroupElement<I>,
) -> Result<SubgroupDescriptor<I>> {
    let dg = heisenberg_direction(g);
    let dh = heisenberg_direction(h);
    match (dg, dh) {
        (None, None) => {
            // Both central: powers of c, meeting in the lcm.
            let (rg, rh) = match (g, h) {
                (GroupElement::Heisenberg { c: rg, .. }, GroupElement::Heisenberg { c: rh, .. }) => {
                    (rg.clone(), rh.clone())
                }
                _ => return Err(Error::ElementNotInGroup),
            };
            let l = lcm_nonzero(&rg, &rh);
            let e = l / rg;
            cyclic_from_power(group, g, &e)
        }
        // A non-central element has no nonzero central power.
        (None, Some(_)) | (Some(_), None) => Ok(SubgroupDescriptor::Trivial(group)),
        (Some(d1), Some(d2)) => {
            if d1 != d2 {
                return Ok(SubgroupDescriptor::Trivial(group));
            }
            let chart = Chart::HeisenbergRay(d1);
            let gv = chart.coords(g).expect("direction matches");
            let hv = chart.coords(h).expect("direction matches");
            Ok(lift_from_chart(group, &chart, abelian_cyclic_cap(&gv, &hv)))
        }
    }
}

fn cyclic_cap_lattice<I: Int>(
    group: GroupId,
    g: &GroupElement<I>,
    lattice: &SubgroupDescriptor<I>,
) -> Result<SubgroupDescriptor<I>> {
    let chart = lattice.lattice_chart()?;
    let basis = lattice.lattice_basis(&chart)?;
    // Replace g by its smallest power meeting the chart carrier; powers of g
    // outside the carrier can never lie in the lattice.
    let candidate = match (&chart, g) {
        (Chart::KleinEven, GroupElement::Klein { b, .. }) if b.is_odd() => g.pow(2),
        _ => g.clone(),
    };
    match chart.coords(&candidate) {
        Some(v) => match lattice_multiple(&v, &basis) {
            Some(d) => cyclic_from_power(group, &candidate, &d),
            None => Ok(SubgroupDescriptor::Trivial(group)),
        },
        // Heisenberg generator transverse to the lattice direction: only a
        // central power could meet the lattice, and there is none.
        None => Ok(SubgroupDescriptor::Trivial(group)),
    }
}

fn lattice_cap_lattice<I: Int>(
    group: GroupId,
    a: &SubgroupDescriptor<I>,
    b: &SubgroupDescriptor<I>,
) -> Result<SubgroupDescriptor<I>> {
    let chart_a = a.lattice_chart()?;
    let chart_b = b.lattice_chart()?;
    if chart_a == chart_b {
        let basis =
            lattice_intersection_basis(&a.lattice_basis(&chart_a)?, &b.lattice_basis(&chart_a)?);
        return descriptor_from_chart_basis(group, &chart_a, &basis);
    }
    // Distinct Heisenberg directions: the intersection lies in the centre.
    if group != GroupId::Heisenberg {
        return Err(Error::DescriptorCase("lattices in incompatible charts"));
    }
    let central_a = lattice_cap_center(a, &chart_a)?;
    let central_b = lattice_cap_center(b, &chart_b)?;
    central_a.intersect(&central_b)
}

/// Intersection of a Heisenberg chart lattice with the centre `<c>`.
fn lattice_cap_center<I: Int>(
    lattice: &SubgroupDescriptor<I>,
    chart: &Chart<I>,
) -> Result<SubgroupDescriptor<I>> {
    let group = lattice.group();
    let basis = lattice.lattice_basis(chart)?;
    let center_dir = vec![I::zero(), I::one()];
    match lattice_multiple(&center_dir, &basis) {
        Some(d) => SubgroupDescriptor::cyclic(group, chart.element(&[I::zero(), d])),
        None => Ok(SubgroupDescriptor::Trivial(group)),
    }
}

fn descriptor_from_chart_basis<I: Int>(
    group: GroupId,
    chart: &Chart<I>,
    basis: &Matrix<I>,
) -> Result<SubgroupDescriptor<I>> {
    match basis.ncols() {
        0 => Ok(SubgroupDescriptor::Trivial(group)),
        1 => SubgroupDescriptor::cyclic(group, chart.element(&basis.col(0))),
        2 => SubgroupDescriptor::lattice2(
            group,
            chart.element(&basis.col(0)),
            chart.element(&basis.col(1)),
        ),
        _ => Err(Error::DescriptorCase("lattice intersection of rank above 2")),
    }
}

// ---------------------------------------------------------------------------
// Centralizers
// ---------------------------------------------------------------------------

/// Exact closed-form centralizer `Z(S)` of a finite subset.
///
/// The empty set is legal and yields the whole group.
pub fn centralizer<I: Int>(group: GroupId, s: &[GroupElement<I>]) -> Result<SubgroupDescriptor<I>> {
    group.check_members(s)?;
    let nontrivial: Vec<&GroupElement<I>> = s.iter().filter(|g| !g.is_identity()).collect();
    if nontrivial.is_empty() {
        return Ok(SubgroupDescriptor::Whole(group));
    }
    match group {
        GroupId::FreeAbelian(_) => Ok(SubgroupDescriptor::Whole(group)),
        GroupId::Free(_) => {
            // Z(w) = <primitive root of w>; a common centralizer survives
            // only when all roots agree up to inversion.
            let mut roots = nontrivial.iter().map(|g| match g {
                GroupElement::Free(w) => w.primitive_root(),
                _ => unreachable!("membership checked"),
            });
            let canonical = canonical_orientation(roots.next().expect("nonempty"));
            for root in roots {
                if canonical_orientation(root) != canonical {
                    return Ok(SubgroupDescriptor::Trivial(group));
                }
            }
            SubgroupDescriptor::cyclic(group, GroupElement::Free(canonical))
        }
        GroupId::Klein | GroupId::Heisenberg => {
            let mut acc = single_centralizer(group, nontrivial[0])?;
            for g in &nontrivial[1..] {
                acc = acc.intersect(&single_centralizer(group, g)?)?;
            }
            Ok(acc)
        }
    }
}

/// Canonical orientation of a root: the smaller of the word and its
/// inverse under an order that ranks a positive generator just before its
/// inverse, so `a` beats `a^-1` and the choice is inversion-invariant.
fn canonical_orientation(w: Word) -> Word {
    fn key(w: &Word) -> Vec<(u32, bool)> {
        w.letters().iter().map(|&l| (l.unsigned_abs(), l < 0)).collect()
    }
    let inv = w.inverse();
    if key(&inv) < key(&w) {
        inv
    } else {
        w
    }
}

fn single_centralizer<I: Int>(group: GroupId, g: &GroupElement<I>) -> Result<SubgroupDescriptor<I>> {
    match g {
        GroupElement::Klein { a: m, b: n } => {
            if n.is_even() {
                if m.is_zero() {
                    Ok(SubgroupDescriptor::Whole(group))
                } else {
                    SubgroupDescriptor::lattice2(
                        group,
                        GroupElement::Klein { a: I::one(), b: I::zero() },
                        GroupElement::Klein { a: I::zero(), b: I::of(2) },
                    )
                }
            } else {
                SubgroupDescriptor::cyclic(group, GroupElement::Klein { a: m.clone(), b: I::one() })
            }
        }
        GroupElement::Heisenberg { a: p, b: q, .. } => {
            if p.is_zero() && q.is_zero() {
                Ok(SubgroupDescriptor::Whole(group))
            } else {
                let g0 = p.gcd(q);
                SubgroupDescriptor::lattice2(
                    group,
                    GroupElement::Heisenberg {
                        a: p.clone() / g0.clone(),
                        b: q.clone() / g0,
                        c: I::zero(),
                    },
                    GroupElement::Heisenberg { a: I::zero(), b: I::zero(), c: I::one() },
                )
            }
        }
        _ => Err(Error::ElementNotInGroup),
    }
}

/// `Z(Z(S))`, computed by applying `centralizer` to a generating set of
/// `Z(S)`.
pub fn double_centralizer<I: Int>(
    group: GroupId,
    s: &[GroupElement<I>],
) -> Result<SubgroupDescriptor<I>> {
    let zs = centralizer(group, s)?;
    centralizer(group, &zs.generators())
}

/// Brute-force validation oracle: all ball elements commuting with `S`.
pub fn centralizer_bruteforce<I: Int>(
    group: GroupId,
    s: &[GroupElement<I>],
    radius: u32,
) -> Result<Vec<GroupElement<I>>> {
    group.check_members(s)?;
    let mut out = Vec::new();
    for g in group.ball(radius)? {
        let mut commutes = true;
        for t in s {
            if !g.commutes_with(t)? {
                commutes = false;
                break;
            }
        }
        if commutes {
            out.push(g);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Indices
// ---------------------------------------------------------------------------

/// Exact index `[A : B]` for nested descriptors. Errors with `NotASubgroup`
/// when `B` is not contained in `A` (checked on generators).
pub fn subgroup_index<I: Int>(
    a: &SubgroupDescriptor<I>,
    b: &SubgroupDescriptor<I>,
) -> Result<Index> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if !a.contains_subgroup(b)? {
        return Err(Error::NotASubgroup);
    }
    if b.contains_subgroup(a)? {
        return Ok(Index::Finite(1));
    }
    let group = a.group();
    use SubgroupDescriptor as D;
    match (a, b) {
        // From here on the containment is proper.
        (_, D::Trivial(_)) => Ok(Index::Infinite),
        (D::Whole(_), D::Cyclic { generator, .. }) => match group {
            GroupId::FreeAbelian(1) => match generator {
                GroupElement::FreeAbelian(v) => {
                    Ok(Index::Finite(v[0].magnitude().ok_or(Error::NotASubgroup)?))
                }
                _ => unreachable!("membership checked"),
            },
            GroupId::Free(1) => {
                let e = match generator {
                    GroupElement::Free(w) => w.abelianization(1)[0],
                    _ => unreachable!("membership checked"),
                };
                Ok(Index::Finite(e.unsigned_abs()))
            }
            _ => Ok(Index::Infinite),
        },
        (D::Whole(_), D::Lattice2 { .. }) => {
            let chart = b.lattice_chart()?;
            let basis = b.lattice_basis(&chart)?;
            match group {
                GroupId::FreeAbelian(2) => finite_from_det(&basis),
                GroupId::FreeAbelian(_) => Ok(Index::Infinite),
                // [K : <a, b^2>] = 2, then the chart determinant inside.
                GroupId::Klein => match finite_from_det(&basis)? {
                    Index::Finite(n) => Ok(Index::Finite(2 * n)),
                    Index::Infinite => Ok(Index::Infinite),
                },
                GroupId::Heisenberg => Ok(Index::Infinite),
                GroupId::Free(_) => unreachable!("no rank-2 lattices in free groups"),
            }
        }
        (D::Cyclic { generator: g, .. }, D::Cyclic { generator: h, .. }) => {
            let e = power_of(g, h)?.ok_or(Error::NotASubgroup)?;
            Ok(Index::Finite(e.magnitude().ok_or(Error::NotASubgroup)?))
        }
        (D::Lattice2 { .. }, D::Cyclic { .. }) => Ok(Index::Infinite),
        (D::Lattice2 { .. }, D::Lattice2 { .. }) => {
            let chart = a.lattice_chart()?;
            let basis_a = a.lattice_basis(&chart)?;
            let basis_b = b.lattice_basis(&chart)?;
            let coords = basis_a.solve_matrix(&basis_b).ok_or(Error::NotASubgroup)?;
            finite_from_det(&coords)
        }
        _ => Err(Error::DescriptorCase("index case outside the table")),
    }
}

fn finite_from_det<I: Int>(m: &Matrix<I>) -> Result<Index> {
    if m.nrows() != m.ncols() {
        return Ok(Index::Infinite);
    }
    let det = match m.nrows() {
        1 => m[(0, 0)].clone(),
        2 => m[(0, 0)].clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone(),
        _ => return Err(Error::DescriptorCase("determinant beyond 2x2 in the index table")),
    };
    if det.is_zero() {
        Ok(Index::Infinite)
    } else {
        Ok(Index::Finite(det.magnitude().ok_or(Error::NotASubgroup)?))
    }
}

/// A coset representative of a proper subgroup `B < A`: an element of `A`
/// outside `B`, searched over generator products in a deterministic order.
pub fn proper_coset_witness<I: Int>(
    a: &SubgroupDescriptor<I>,
    b: &SubgroupDescriptor<I>,
) -> Result<Option<GroupElement<I>>> {
    let gens = a.generators();
    for g in &gens {
        if !b.contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    for width in 2..=8i64 {
        for gi in &gens {
            for gj in &gens {
                for ei in -width..=width {
                    for ej in -width..=width {
                        let cand = gi.pow(ei).mul(&gj.pow(ej))?;
                        if !cand.is_identity() && a.contains(&cand)? && !b.contains(&cand)? {
                            return Ok(Some(cand));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
