//! Property tests on randomized elements, reaching far outside the
//! enumeration balls that the unit tests and acceptance suite use.

use proptest::prelude::*;

use tcpi::centralizer::{centralizer, power_of, subgroup_index, Index, SubgroupDescriptor};
use tcpi::exterior::ExteriorClass;
use tcpi::group::{klein_paper_form, GroupElement, GroupId};
use tcpi::tc::restrict_to_diagonal;
use tcpi::word::Word;

type E = GroupElement<i64>;

fn klein_strategy() -> impl Strategy<Value = E> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| E::Klein { a, b })
}

fn heisenberg_strategy() -> impl Strategy<Value = E> {
    (-20i64..=20, -20i64..=20, -20i64..=20).prop_map(|(a, b, c)| E::Heisenberg { a, b, c })
}

fn abelian_strategy() -> impl Strategy<Value = E> {
    proptest::collection::vec(-40i64..=40, 3).prop_map(E::FreeAbelian)
}

fn word_strategy() -> impl Strategy<Value = E> {
    proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..10)
        .prop_map(|letters| E::Free(Word::from_letters(letters)))
}

fn element_pair(group: GroupId) -> BoxedStrategy<(E, E)> {
    match group {
        GroupId::Klein => (klein_strategy(), klein_strategy()).boxed(),
        GroupId::Heisenberg => (heisenberg_strategy(), heisenberg_strategy()).boxed(),
        GroupId::FreeAbelian(_) => (abelian_strategy(), abelian_strategy()).boxed(),
        GroupId::Free(_) => (word_strategy(), word_strategy()).boxed(),
    }
}

fn exterior_strategy(n_gens: usize) -> impl Strategy<Value = ExteriorClass<i64>> {
    proptest::collection::vec((0u32..(1 << n_gens), -4i64..=4), 0..4).prop_map(move |terms| {
        let mut out = ExteriorClass::zero(n_gens);
        for (mask, coeff) in terms {
            out = out.add(&ExteriorClass::monomial(n_gens, mask, coeff)).unwrap();
        }
        out
    })
}

proptest! {
    #[test]
    fn klein_group_laws((g, h) in element_pair(GroupId::Klein), e in -6i64..=6) {
        prop_assert!(g.mul(&g.inverse()).unwrap().is_identity());
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(gh.mul(&h.inverse()).unwrap(), g.clone());
        // Powers add.
        prop_assert_eq!(g.pow(e + 3), g.pow(e).mul(&g.pow(3)).unwrap());
    }

    #[test]
    fn heisenberg_group_laws((g, h) in element_pair(GroupId::Heisenberg), e in -6i64..=6) {
        prop_assert!(g.mul(&g.inverse()).unwrap().is_identity());
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(gh.mul(&h.inverse()).unwrap(), g.clone());
        prop_assert_eq!(g.pow(e + 2), g.pow(e).mul(&g.pow(2)).unwrap());
    }

    #[test]
    fn associativity_everywhere(
        (g, h) in element_pair(GroupId::Heisenberg),
        (f, _) in element_pair(GroupId::Heisenberg),
    ) {
        let left = g.mul(&h).unwrap().mul(&f).unwrap();
        let right = g.mul(&h.mul(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Membership in the closed-form centralizer is exactly the commuting
    /// relation, for elements far outside any enumeration ball.
    #[test]
    fn centralizer_membership_is_commuting_klein(
        (s, g) in element_pair(GroupId::Klein),
    ) {
        let zs = centralizer(GroupId::Klein, std::slice::from_ref(&s)).unwrap();
        prop_assert_eq!(zs.contains(&g).unwrap(), g.commutes_with(&s).unwrap());
    }

    #[test]
    fn centralizer_membership_is_commuting_heisenberg(
        (s, g) in element_pair(GroupId::Heisenberg),
    ) {
        let zs = centralizer(GroupId::Heisenberg, std::slice::from_ref(&s)).unwrap();
        prop_assert_eq!(zs.contains(&g).unwrap(), g.commutes_with(&s).unwrap());
    }

    #[test]
    fn centralizer_membership_is_commuting_free(
        (s, g) in element_pair(GroupId::Free(2)),
    ) {
        let zs = centralizer(GroupId::Free(2), std::slice::from_ref(&s)).unwrap();
        prop_assert_eq!(zs.contains(&g).unwrap(), g.commutes_with(&s).unwrap());
    }

    /// Z(S1 u S2) agrees with the descriptor intersection, pointwise.
    #[test]
    fn centralizer_of_union_is_intersection(
        (s1, s2) in element_pair(GroupId::Klein),
        (g, _) in element_pair(GroupId::Klein),
    ) {
        let joint = centralizer(GroupId::Klein, &[s1.clone(), s2.clone()]).unwrap();
        let left = centralizer(GroupId::Klein, std::slice::from_ref(&s1)).unwrap();
        let right = centralizer(GroupId::Klein, std::slice::from_ref(&s2)).unwrap();
        prop_assert_eq!(
            joint.contains(&g).unwrap(),
            left.contains(&g).unwrap() && right.contains(&g).unwrap()
        );
        let intersected = left.intersect(&right).unwrap();
        prop_assert_eq!(joint.contains(&g).unwrap(), intersected.contains(&g).unwrap());
    }

    #[test]
    fn centralizer_of_union_is_intersection_heisenberg(
        (s1, s2) in element_pair(GroupId::Heisenberg),
        (g, _) in element_pair(GroupId::Heisenberg),
    ) {
        let joint = centralizer(GroupId::Heisenberg, &[s1.clone(), s2.clone()]).unwrap();
        let left = centralizer(GroupId::Heisenberg, std::slice::from_ref(&s1)).unwrap();
        let right = centralizer(GroupId::Heisenberg, std::slice::from_ref(&s2)).unwrap();
        let intersected = left.intersect(&right).unwrap();
        prop_assert_eq!(joint.contains(&g).unwrap(), intersected.contains(&g).unwrap());
    }

    #[test]
    fn paper_form_round_trips((g, _) in element_pair(GroupId::Klein)) {
        let form = klein_paper_form(&g).unwrap();
        prop_assert_eq!(form.to_element(), g.clone());
        prop_assert!(form.k >= 0);
    }

    #[test]
    fn power_solving_round_trips((g, _) in element_pair(GroupId::Heisenberg), e in -8i64..=8) {
        prop_assume!(!g.is_identity());
        let h = g.pow(e);
        let solved = power_of(&g, &h).unwrap();
        prop_assert_eq!(solved, Some(e));
    }

    /// The Klein cyclic-intersection closed form against power enumeration:
    /// the descriptor contains exactly the common powers in a window, and
    /// its generator is itself a common power.
    #[test]
    fn klein_cyclic_intersection_matches_powers(
        ga in -6i64..=6, gb in -6i64..=6, ha in -6i64..=6, hb in -6i64..=6,
    ) {
        let g = E::Klein { a: ga, b: gb };
        let h = E::Klein { a: ha, b: hb };
        prop_assume!(!g.is_identity() && !h.is_identity());
        let cg = SubgroupDescriptor::cyclic(GroupId::Klein, g.clone()).unwrap();
        let ch = SubgroupDescriptor::cyclic(GroupId::Klein, h.clone()).unwrap();
        let inter = cg.intersect(&ch).unwrap();
        // The h-window must cover every exponent a small g-power could
        // need: coordinates of g^i are at most 6|i|, and a matching h-power
        // divides them, so |j| <= 6 * 12 * 6 is safely inside +-500.
        let h_powers: std::collections::BTreeSet<E> = (-500..=500).map(|j| h.pow(j)).collect();
        for i in -12..=12i64 {
            let gi = g.pow(i);
            let in_both = h_powers.contains(&gi);
            if in_both {
                prop_assert!(inter.contains(&gi).unwrap(), "missed common power {gi:?}");
            } else {
                prop_assert!(!inter.contains(&gi).unwrap(), "spurious member {gi:?}");
            }
        }
        for gen in inter.generators() {
            let glog = power_of(&g, &gen).unwrap();
            let hlog = power_of(&h, &gen).unwrap();
            prop_assert!(glog.is_some() && hlog.is_some(), "generator outside both");
        }
    }

    #[test]
    fn heisenberg_cyclic_intersection_matches_powers(
        gp in -4i64..=4, gq in -4i64..=4, gr in -4i64..=4,
        hp in -4i64..=4, hq in -4i64..=4, hr in -4i64..=4,
    ) {
        let g = E::Heisenberg { a: gp, b: gq, c: gr };
        let h = E::Heisenberg { a: hp, b: hq, c: hr };
        prop_assume!(!g.is_identity() && !h.is_identity());
        let cg = SubgroupDescriptor::cyclic(GroupId::Heisenberg, g.clone()).unwrap();
        let ch = SubgroupDescriptor::cyclic(GroupId::Heisenberg, h.clone()).unwrap();
        let inter = cg.intersect(&ch).unwrap();
        // First coordinates of g^i are at most 4|i|; a matching h-power
        // exponent divides them, so the +-500 window covers |i| <= 10.
        let h_powers: std::collections::BTreeSet<E> = (-500..=500).map(|j| h.pow(j)).collect();
        for i in -10..=10i64 {
            let gi = g.pow(i);
            if h_powers.contains(&gi) {
                prop_assert!(inter.contains(&gi).unwrap(), "missed common power {gi:?}");
            } else {
                prop_assert!(!inter.contains(&gi).unwrap(), "spurious member {gi:?}");
            }
        }
    }

    #[test]
    fn cyclic_index_multiplies(base in klein_strategy(), a in 1i64..=5, b in 1i64..=5) {
        prop_assume!(!base.is_identity());
        let top = SubgroupDescriptor::cyclic(GroupId::Klein, base.clone()).unwrap();
        let mid = SubgroupDescriptor::cyclic(GroupId::Klein, base.pow(a)).unwrap();
        let bottom = SubgroupDescriptor::cyclic(GroupId::Klein, base.pow(a * b)).unwrap();
        let i1 = subgroup_index(&top, &mid).unwrap();
        let i2 = subgroup_index(&mid, &bottom).unwrap();
        let i3 = subgroup_index(&top, &bottom).unwrap();
        match (i1, i2, i3) {
            (Index::Finite(x), Index::Finite(y), Index::Finite(z)) => {
                prop_assert_eq!(x * y, z);
            }
            other => prop_assert!(false, "unexpected infinite index {:?}", other),
        }
    }

    #[test]
    fn wedge_is_bilinear(
        x in exterior_strategy(4),
        y in exterior_strategy(4),
        z in exterior_strategy(4),
    ) {
        let lhs = x.add(&y).unwrap().wedge(&z).unwrap();
        let rhs = x.wedge(&z).unwrap().add(&y.wedge(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(mask1 in 0u32..16, mask2 in 0u32..16) {
        let x = ExteriorClass::<i64>::monomial(4, mask1, 1);
        let y = ExteriorClass::<i64>::monomial(4, mask2, 1);
        let xy = x.wedge(&y).unwrap();
        let yx = y.wedge(&x).unwrap();
        let sign = (mask1.count_ones() * mask2.count_ones()) % 2;
        prop_assert_eq!(xy, if sign == 0 { yx.clone() } else { yx.neg() });
    }

    /// Restriction to the diagonal is an algebra map.
    #[test]
    fn diagonal_restriction_is_multiplicative(
        x in exterior_strategy(4),
        y in exterior_strategy(4),
    ) {
        let lhs = restrict_to_diagonal(&x.wedge(&y).unwrap()).unwrap();
        let rhs = restrict_to_diagonal(&x)
            .unwrap()
            .wedge(&restrict_to_diagonal(&y).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// The whole stack runs over any integer scalar; spot-check `i128` against
/// `i64` on a value that squeezes the wider type.
#[test]
fn wide_scalars_agree_with_the_default() {
    let g64 = GroupElement::<i64>::Klein { a: 3, b: 5 };
    let g128 = GroupElement::<i128>::Klein { a: 3, b: 5 };
    assert_eq!(g64.pow(7), GroupElement::Klein { a: 3, b: 35 });
    assert_eq!(g128.pow(7), GroupElement::Klein { a: 3, b: 35 });
    let z64 = centralizer(GroupId::Klein, std::slice::from_ref(&g64)).unwrap();
    let z128 = centralizer(GroupId::Klein, std::slice::from_ref(&g128)).unwrap();
    assert_eq!(format!("{z64}"), format!("{z128}"));

    // A matrix whose intermediate Smith entries overflow 32 bits still
    // reduces exactly over both scalars.
    let m64 = tcpi::linalg::Matrix::<i64>::of(&[&[1 << 20, 3], &[5, 1 << 21]]);
    let m128 = tcpi::linalg::Matrix::<i128>::of(&[&[1 << 20, 3], &[5, 1 << 21]]);
    let f64s = m64.smith().invariant_factors();
    let f128s: Vec<i64> =
        m128.smith().invariant_factors().iter().map(|x| *x as i64).collect();
    assert_eq!(f64s, f128s);

    let report = cd_d_report::<i128>(3).unwrap();
    assert_eq!(report.cd, 3);
}

use tcpi::bredon::cd_d_report;
