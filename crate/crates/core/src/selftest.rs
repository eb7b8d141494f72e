//! The runnable invariant suite: every module's property checks at their
//! default radii, with named outcomes and per-check timings.
//!
//! All randomness is seeded, so two runs produce identical outcomes.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bredon::{
    bredon_cohomology, cd_d_report, cubical_resolution, phi_chain_map,
    phi_on_constant_cohomology, OrbitModule,
};
use crate::centralizer::{centralizer, centralizer_bruteforce};
use crate::diagonal::DiagonalSubgroup;
use crate::error::Result as CrateResult;
use crate::exterior::ExteriorClass;
use crate::group::{GroupElement, GroupId, PairElement};
use crate::int::Int;
use crate::join::build_join;
use crate::laurent::Laurent;
use crate::linalg::Matrix;
use crate::principality::{hall_identity_check, is_principal, property_n_witness_search,
    PrincipalityVerdict};
use crate::tc::{is_essential, restrict_to_diagonal, tc_bounds, uv_difference,
    zero_divisor_cup_length, zero_divisor_product};

/// All four catalog groups at their test ranks.
pub const CATALOG: [GroupId; 4] =
    [GroupId::FreeAbelian(2), GroupId::Free(2), GroupId::Klein, GroupId::Heisenberg];

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub millis: u128,
    pub detail: Option<String>,
}

/// Tunable limits for the suite.
#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    /// Radius for the centralizer brute-force comparison.
    pub oracle_radius: u32,
    /// Radius and power cap for the Property N search.
    pub witness_radius: u32,
    pub max_power: u32,
    /// Randomized twisted-diagonal cases per group.
    pub randomized_cases: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            oracle_radius: 5,
            witness_radius: 3,
            max_power: 4,
            randomized_cases: 50,
            seed: 0x7c21,
        }
    }
}

type Check = std::result::Result<(), String>;
type NamedCheck<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn fail(msg: impl Into<String>) -> Check {
    Err(msg.into())
}

fn lift<T>(r: CrateResult<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("internal error: {e}"))
}

/// Run the full suite; outcomes appear in a fixed order.
pub fn run_selftest<I: Int>(config: &SelftestConfig) -> Vec<CheckOutcome> {
    let checks: Vec<NamedCheck<'_>> = vec![
        ("group_associativity", Box::new(group_associativity::<I>)),
        ("normal_form_rewrite_oracle", {
            let seed = config.seed;
            Box::new(move || normal_form_rewrite_oracle::<I>(seed))
        }),
        ("hall_identity", Box::new(hall_identity::<I>)),
        ("torsion_freeness", Box::new(torsion_freeness::<I>)),
        ("centralizer_oracle_agreement", {
            let radius = config.oracle_radius;
            Box::new(move || centralizer_oracle_agreement::<I>(radius))
        }),
        ("free_centralizer_dichotomy", Box::new(free_centralizer_dichotomy::<I>)),
        ("diagonal_intersection_extensional", {
            let (cases, seed) = (config.randomized_cases, config.seed);
            Box::new(move || diagonal_intersection_extensional::<I>(cases, seed))
        }),
        ("fixed_point_formula", {
            let (cases, seed) = (config.randomized_cases, config.seed);
            Box::new(move || fixed_point_formula::<I>(cases, seed))
        }),
        ("conjugation_closure", Box::new(conjugation_closure::<I>)),
        ("resolution_squares_to_zero", Box::new(resolution_squares_to_zero::<I>)),
        ("bredon_binomial_ranks", Box::new(bredon_binomial_ranks::<I>)),
        ("cd_equals_rank", Box::new(cd_equals_rank::<I>)),
        ("phi_chain_map_commutes", Box::new(phi_chain_map_commutes::<I>)),
        ("instantiation_ring_hom", {
            let seed = config.seed;
            Box::new(move || instantiation_ring_hom::<I>(seed))
        }),
        ("zero_divisor_algebra", Box::new(zero_divisor_algebra::<I>)),
        ("phi_compatibility", Box::new(phi_compatibility::<I>)),
        ("essential_classes_vanish_on_diagonal", Box::new(essential_vanish::<I>)),
        ("join_wedge_formula", Box::new(join_wedge_formula::<I>)),
        ("join_fixed_point_functoriality", Box::new(join_fixed_points::<I>)),
        ("principality_verdicts", Box::new(principality_verdicts::<I>)),
        ("property_n_search_consistency", {
            let (radius, power) = (config.witness_radius, config.max_power);
            Box::new(move || property_n_search_consistency::<I>(radius, power))
        }),
        ("tc_bound_monotonicity", Box::new(tc_bound_monotonicity::<I>)),
    ];
    let mut outcomes = Vec::with_capacity(checks.len());
    for (name, check) in checks {
        let start = Instant::now();
        let result = check();
        outcomes.push(CheckOutcome {
            name,
            passed: result.is_ok(),
            millis: start.elapsed().as_millis(),
            detail: result.err(),
        });
    }
    outcomes
}

// ---------------------------------------------------------------------------
// Group arithmetic
// ---------------------------------------------------------------------------

fn group_associativity<I: Int>() -> Check {
    for group in CATALOG {
        let ball: Vec<GroupElement<I>> = lift(group.ball(2))?;
        for g in &ball {
            for h in &ball {
                let gh = lift(g.mul(h))?;
                for f in &ball {
                    let left = lift(gh.mul(f))?;
                    let right = lift(g.mul(&lift(h.mul(f))?))?;
                    if left != right {
                        return fail(format!("associativity fails in {group} at {g}, {h}, {f}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Decompose a normal form into generator letters.
fn letters_of<I: Int>(group: GroupId, g: &GroupElement<I>) -> Vec<GroupElement<I>> {
    let gens: Vec<GroupElement<I>> = group.generators();
    let mut letters = Vec::new();
    let mut push_power = |gen: &GroupElement<I>, e: i64| {
        let letter = if e >= 0 { gen.clone() } else { gen.inverse() };
        for _ in 0..e.unsigned_abs() {
            letters.push(letter.clone());
        }
    };
    match g {
        GroupElement::FreeAbelian(v) => {
            for (i, e) in v.iter().enumerate() {
                push_power(&gens[i], e.to_i64().expect("ball exponent"));
            }
        }
        GroupElement::Free(w) => {
            for &l in w.letters() {
                let idx = l.unsigned_abs() as usize - 1;
                push_power(&gens[idx], l.signum() as i64);
            }
        }
        GroupElement::Klein { a, b } => {
            push_power(&gens[0], a.to_i64().expect("ball exponent"));
            push_power(&gens[1], b.to_i64().expect("ball exponent"));
        }
        GroupElement::Heisenberg { a, b, c } => {
            push_power(&gens[0], a.to_i64().expect("ball exponent"));
            push_power(&gens[1], b.to_i64().expect("ball exponent"));
            // c = a b a^-1 b^-1
            let commutator = [
                gens[0].clone(),
                gens[1].clone(),
                gens[0].inverse(),
                gens[1].inverse(),
            ];
            let e = c.to_i64().expect("ball exponent");
            for _ in 0..e.unsigned_abs() {
                if e >= 0 {
                    letters.extend(commutator.iter().cloned());
                } else {
                    letters.extend(commutator.iter().rev().map(GroupElement::inverse));
                }
            }
        }
    }
    letters
}

/// One sound random rewrite of a letter word: insert or delete a cancelling
/// pair, or push a letter through a defining relation.
fn rewrite_step<I: Int>(
    group: GroupId,
    letters: &mut Vec<GroupElement<I>>,
    rng: &mut StdRng,
) {
    let gens: Vec<GroupElement<I>> = group.generators();
    match rng.gen_range(0..3) {
        // Insert h h^-1.
        0 => {
            let pos = rng.gen_range(0..=letters.len());
            let gen = &gens[rng.gen_range(0..gens.len())];
            let (h, hinv) = if rng.gen_bool(0.5) {
                (gen.clone(), gen.inverse())
            } else {
                (gen.inverse(), gen.clone())
            };
            letters.insert(pos, hinv);
            letters.insert(pos, h);
        }
        // Delete an adjacent cancelling pair if one exists.
        1 => {
            let start = if letters.len() < 2 { 0 } else { rng.gen_range(0..letters.len() - 1) };
            for i in (0..letters.len().saturating_sub(1)).map(|o| (start + o) % letters.len().max(1))
            {
                if i + 1 < letters.len() && letters[i + 1] == letters[i].inverse() {
                    letters.drain(i..=i + 1);
                    break;
                }
            }
        }
        // Apply a defining relation to an adjacent pair.
        _ => {
            if letters.len() < 2 {
                return;
            }
            let i = rng.gen_range(0..letters.len() - 1);
            let (x, y) = (letters[i].clone(), letters[i + 1].clone());
            match group {
                GroupId::FreeAbelian(_) => {
                    // Generators commute.
                    letters.swap(i, i + 1);
                }
                GroupId::Free(_) => {}
                GroupId::Klein => {
                    // b^e a^d = a^-d b^e.
                    let (a, b) = (&gens[0], &gens[1]);
                    let is_b = |g: &GroupElement<I>| g == b || *g == b.inverse();
                    let is_a = |g: &GroupElement<I>| g == a || *g == a.inverse();
                    if is_b(&x) && is_a(&y) {
                        letters[i] = y.inverse();
                        letters[i + 1] = x;
                    } else if is_a(&x) && is_b(&y) {
                        letters[i] = y;
                        letters[i + 1] = x.inverse();
                    }
                }
                GroupId::Heisenberg => {
                    // b^e a^d = a^d b^e c^(-e d); c is central.
                    let (a, b) = (&gens[0], &gens[1]);
                    let sign_of = |g: &GroupElement<I>, base: &GroupElement<I>| {
                        if g == base {
                            Some(1i64)
                        } else if *g == base.inverse() {
                            Some(-1)
                        } else {
                            None
                        }
                    };
                    let c = lift(a.commutator(b)).expect("commutator of generators");
                    if let (Some(e), Some(d)) = (sign_of(&x, b), sign_of(&y, a)) {
                        letters[i] = y.clone();
                        letters[i + 1] = x.clone();
                        letters.insert(i + 2, c.pow(-e * d));
                    } else if x == c || x == c.inverse() {
                        letters.swap(i, i + 1);
                    }
                }
            }
        }
    }
}

fn normal_form_rewrite_oracle<I: Int>(seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for group in CATALOG {
        let ball: Vec<GroupElement<I>> = lift(group.ball(2))?;
        for g in &ball {
            let mut letters = letters_of(group, g);
            for _ in 0..100 {
                rewrite_step(group, &mut letters, &mut rng);
            }
            let mut product: GroupElement<I> = group.identity();
            for letter in &letters {
                product = lift(product.mul(letter))?;
            }
            if product != *g {
                return fail(format!(
                    "rewrite oracle diverged in {group}: {g} became {product}"
                ));
            }
        }
    }
    Ok(())
}

/// The commutator expansion identity on all ball-2 triples.
pub fn hall_identity<I: Int>() -> Check {
    for group in CATALOG {
        let ball: Vec<GroupElement<I>> = lift(group.ball(2))?;
        for x in &ball {
            for y in &ball {
                for z in &ball {
                    if !lift(hall_identity_check(x, y, z))? {
                        return fail(format!("hall identity fails in {group} at {x}, {y}, {z}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn torsion_freeness<I: Int>() -> Check {
    for group in CATALOG {
        for g in lift(group.ball::<I>(3))? {
            if g.is_identity() {
                continue;
            }
            for n in 1..=6 {
                if g.pow(n).is_identity() {
                    return fail(format!("torsion element {g} of order {n} in {group}"));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Centralizers and the diagonal family
// ---------------------------------------------------------------------------

/// Closed forms versus the ball filter, for every `S` in ball(2) with at
/// most two elements.
pub fn centralizer_oracle_agreement<I: Int>(radius: u32) -> Check {
    for group in CATALOG {
        let ball2: Vec<GroupElement<I>> = lift(group.ball(2))?;
        let big: Vec<GroupElement<I>> = lift(group.ball(radius))?;
        let mut subsets: Vec<Vec<GroupElement<I>>> = vec![Vec::new()];
        subsets.extend(ball2.iter().map(|g| vec![g.clone()]));
        for i in 0..ball2.len() {
            for j in i + 1..ball2.len() {
                subsets.push(vec![ball2[i].clone(), ball2[j].clone()]);
            }
        }
        for s in subsets {
            let desc = lift(centralizer(group, &s))?;
            let brute = lift(centralizer_bruteforce(group, &s, radius))?;
            let filtered: Vec<GroupElement<I>> = big
                .iter()
                .filter(|g| lift(desc.contains(g)).unwrap_or(false))
                .cloned()
                .collect();
            if brute != filtered {
                return fail(format!(
                    "oracle disagreement in {group} for |S| = {} at radius {radius}",
                    s.len()
                ));
            }
        }
    }
    Ok(())
}

fn free_centralizer_dichotomy<I: Int>() -> Check {
    let group = GroupId::Free(2);
    let ball: Vec<GroupElement<I>> = lift(group.ball(3))?;
    for g in &ball {
        for h in &ball {
            if g.is_identity() || h.is_identity() {
                continue;
            }
            let zg = lift(centralizer(group, std::slice::from_ref(g)))?;
            let zh = lift(centralizer(group, std::slice::from_ref(h)))?;
            let same = lift(zg.same_subgroup(&zh))?;
            let trivial = lift(zg.intersect(&zh))?.is_trivial();
            if !same && !trivial {
                return fail(format!("free dichotomy fails at {g}, {h}"));
            }
        }
    }
    Ok(())
}

fn random_twisted<I: Int>(
    group: GroupId,
    ball: &[GroupElement<I>],
    rng: &mut StdRng,
) -> CrateResult<DiagonalSubgroup<I>> {
    let b = ball[rng.gen_range(0..ball.len())].clone();
    let mut s = Vec::new();
    for _ in 0..rng.gen_range(0..=2usize) {
        s.push(ball[rng.gen_range(0..ball.len())].clone());
    }
    DiagonalSubgroup::twisted(group, b, s)
}

/// The intersection formula, extensionally on ball-3 pairs, for randomized
/// twisted diagonals.
pub fn diagonal_intersection_extensional<I: Int>(cases: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed);
    for group in CATALOG {
        let ball2: Vec<GroupElement<I>> = lift(group.ball(2))?;
        let ball3: Vec<GroupElement<I>> = lift(group.ball(3))?;
        for case in 0..cases {
            let h1 = lift(random_twisted(group, &ball2, &mut rng))?;
            let h2 = lift(random_twisted(group, &ball2, &mut rng))?;
            let inter = lift(h1.intersect(&h2))?;
            for g in &ball3 {
                for h in &ball3 {
                    let p = PairElement { left: g.clone(), right: h.clone() };
                    let expected = lift(h1.member(&p))? && lift(h2.member(&p))?;
                    if lift(inter.member(&p))? != expected {
                        return fail(format!(
                            "intersection formula fails in {group}, case {case}, at ({g}, {h})"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The fixed-point formula `pi^H = Z(Z(S)) b^-1` against the definition.
pub fn fixed_point_formula<I: Int>(cases: usize, seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5u64);
    for group in CATALOG {
        let ball2: Vec<GroupElement<I>> = lift(group.ball(2))?;
        let ball3: Vec<GroupElement<I>> = lift(group.ball(3))?;
        let big: Vec<GroupElement<I>> = lift(group.ball(4))?;
        for _ in 0..cases {
            let h = lift(random_twisted(group, &ball2, &mut rng))?;
            let coset = lift(h.fixed_points())?;
            let zs = h.first_coordinate_range();
            let twist = h.twist().expect("random subgroups are twisted").clone();
            // The ball-3 slice of Z(S), acting as (a, twist a twist^-1).
            let mut movers = Vec::new();
            for a in &ball3 {
                if lift(zs.contains(a))? {
                    let second = lift(a.conjugate_by(&twist))?;
                    movers.push(PairElement { left: a.clone(), right: second });
                }
            }
            for g in &big {
                // g is fixed iff a g (b a b^-1)^-1 = g for all a in Z(S).
                let mut fixed = true;
                for mover in &movers {
                    if lift(mover.act(g))? != *g {
                        fixed = false;
                        break;
                    }
                }
                let claimed = lift(coset.contains(g))?;
                if claimed && !fixed {
                    return fail(format!("fixed-point formula overclaims at {g} in {group}"));
                }
                // The converse (ball-fixed but not in the coset) can only be
                // a sampling artifact when Z(S) has no small generators, so
                // check it only when the generators are inside the ball.
                if !claimed && fixed {
                    let gens_inside = zs
                        .generators()
                        .iter()
                        .all(|gen| ball3.contains(gen));
                    if gens_inside {
                        return fail(format!(
                            "fixed-point formula underclaims at {g} in {group}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn conjugation_closure<I: Int>() -> Check {
    for group in CATALOG {
        let ball1: Vec<GroupElement<I>> = lift(group.ball(1))?;
        let ball2: Vec<GroupElement<I>> = lift(group.ball(2))?;
        let h = lift(DiagonalSubgroup::twisted(group, ball1[1].clone(), vec![ball1[2].clone()]))?;
        for u in ball1.iter().take(4) {
            for v in ball1.iter().take(4) {
                let p = PairElement { left: u.clone(), right: v.clone() };
                let conj = lift(h.conjugate(&p))?;
                for g in &ball2 {
                    for k in &ball2 {
                        let q = PairElement { left: g.clone(), right: k.clone() };
                        let moved = lift(lift(p.inverse().mul(&q))?.mul(&p))?;
                        if lift(conj.member(&q))? != lift(h.member(&moved))? {
                            return fail(format!("conjugation closure fails in {group}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Bredon cohomology
// ---------------------------------------------------------------------------

fn resolution_squares_to_zero<I: Int>() -> Check {
    for k in 1..=6 {
        let res = lift(cubical_resolution::<I>(k))?;
        if !res.squares_to_zero() {
            return fail(format!("resolution squares fail at k = {k}"));
        }
        if !res.augmentation_annihilates_d1() {
            return fail(format!("augmentation fails at k = {k}"));
        }
    }
    Ok(())
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..r {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn bredon_binomial_ranks<I: Int>() -> Check {
    for k in 1..=4 {
        let res = lift(cubical_resolution::<I>(k))?;
        let h = lift(bredon_cohomology(&res, &OrbitModule::constant(k)))?;
        for (j, inv) in h.iter().enumerate() {
            if inv.rank != binomial(k, j) || !inv.torsion.is_empty() {
                return fail(format!("constant cohomology wrong at k = {k}, degree {j}: {inv}"));
            }
        }
    }
    Ok(())
}

fn cd_equals_rank<I: Int>() -> Check {
    for k in 1..=6 {
        let report = lift(cd_d_report::<I>(k))?;
        if report.cd != k {
            return fail(format!("cd mismatch at k = {k}: got {}", report.cd));
        }
        if report.cd > report.model_dimension {
            return fail(format!("cd exceeds the model dimension at k = {k}"));
        }
        if report.cd < k.min(report.model_dimension) {
            return fail(format!("cd undershoots at k = {k}"));
        }
    }
    Ok(())
}

fn phi_chain_map_commutes<I: Int>() -> Check {
    for k in 1..=3 {
        let phi = lift(phi_chain_map::<I>(k))?;
        if !phi.commutes_with_differentials() {
            return fail(format!("comparison chain map fails at k = {k}"));
        }
    }
    Ok(())
}

/// The computational content of the Yoneda reduction: substituting the
/// module actions for the ring variables is a ring homomorphism.
fn instantiation_ring_hom<I: Int>(seed: u64) -> Check {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37u64);
    for _ in 0..20 {
        // A random unimodular action (product of elementary matrices) and
        // a commuting power of it.
        let mut t = Matrix::<I>::identity(2);
        for _ in 0..4 {
            let c = I::of(rng.gen_range(-2..=2i64));
            let mut e = Matrix::identity(2);
            if rng.gen_bool(0.5) {
                e[(0, 1)] = c;
            } else {
                e[(1, 0)] = c;
            }
            t = t.mul(&e);
        }
        let t2 = t.mul(&t);
        let module = lift(OrbitModule::free_value(2, 2, vec![t.clone(), t2]))?;
        let random_poly = |rng: &mut StdRng| {
            let mut p = Laurent::<I>::zero(2);
            for _ in 0..3 {
                let exps = vec![rng.gen_range(-2..=2i32), rng.gen_range(-2..=2i32)];
                let coeff = I::of(rng.gen_range(-3..=3i64));
                p = p.add(&Laurent::monomial(2, exps, coeff));
            }
            p
        };
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        let lhs = module.instantiate(&p.mul(&q));
        let rhs = module.instantiate(&p).mul(&module.instantiate(&q));
        if lhs != rhs {
            return fail("instantiation is not multiplicative".to_string());
        }
        let sum = module.instantiate(&p.add(&q));
        if sum != module.instantiate(&p).add(&module.instantiate(&q)) {
            return fail("instantiation is not additive".to_string());
        }
        if module.instantiate(&Laurent::one(2)) != Matrix::identity(2) {
            return fail("instantiation does not preserve the unit".to_string());
        }
        if !module.diagonal_fixed_part_is_whole() {
            return fail("diagonal fixed part is not the whole value".to_string());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exterior algebra and TC bounds
// ---------------------------------------------------------------------------

fn zero_divisor_algebra<I: Int>() -> Check {
    for k in 1..=8usize {
        for i in 0..k {
            let z = uv_difference::<I>(k, i);
            if !lift(z.wedge(&z))?.is_zero() {
                return fail(format!("square of u_{i} - v_{i} nonzero at k = {k}"));
            }
        }
        let top = zero_divisor_product::<I>(k, (1u32 << k) - 1);
        if top.is_zero() {
            return fail(format!("top zero-divisor product vanishes at k = {k}"));
        }
        for i in 0..k {
            if !lift(top.wedge(&uv_difference(k, i)))?.is_zero() {
                return fail(format!("repeated factor survives at k = {k}, i = {i}"));
            }
        }
        if lift(zero_divisor_cup_length::<I>(k))? != k {
            return fail(format!("cup length differs from {k}"));
        }
    }
    Ok(())
}

fn phi_compatibility<I: Int>() -> Check {
    for k in 1..=4usize {
        for mask in 0u32..(1 << k) {
            let class = ExteriorClass::<I>::monomial(k, mask, I::one());
            let image = lift(phi_on_constant_cohomology(k, &class))?;
            if image != zero_divisor_product::<I>(k, mask) {
                return fail(format!("comparison image mismatch at k = {k}, J = {mask:b}"));
            }
            if !lift(is_essential(k, &image, mask.count_ones() as usize))? {
                return fail(format!("comparison image not essential at k = {k}, J = {mask:b}"));
            }
        }
    }
    Ok(())
}

fn essential_vanish<I: Int>() -> Check {
    let k = 3;
    for mask in 0u32..(1 << k) {
        let class = zero_divisor_product::<I>(k, mask);
        let Some(n) = class.degree() else { continue };
        if n == 0 {
            continue;
        }
        if lift(is_essential(k, &class, n))? && !lift(restrict_to_diagonal(&class))?.is_zero() {
            return fail(format!("essential class fails the diagonal test at J = {mask:b}"));
        }
    }
    // And a non-essential class for contrast.
    let u1 = ExteriorClass::<I>::generator(2 * k, 0);
    if lift(is_essential(k, &u1, 1))? {
        return fail("u_1 misclassified as essential".to_string());
    }
    Ok(())
}

fn join_wedge_formula<I: Int>() -> Check {
    for m in 1..=4usize {
        for copies in 1..=3usize {
            let complex = lift(build_join((0..m).collect(), copies))?;
            let h = complex.reduced_homology::<I>();
            let top = copies - 1;
            for (j, inv) in h.iter().enumerate() {
                let expected = if j == top { (m - 1).pow(copies as u32) } else { 0 };
                if inv.rank != expected || !inv.torsion.is_empty() {
                    return fail(format!(
                        "wedge formula fails at m = {m}, copies = {copies}, degree {j}: {inv}"
                    ));
                }
            }
            let chi: i64 = h
                .iter()
                .enumerate()
                .map(|(j, inv)| if j % 2 == 0 { inv.rank as i64 } else { -(inv.rank as i64) })
                .sum();
            if complex.reduced_euler_characteristic() != chi {
                return fail(format!("euler characteristic mismatch at m = {m}, copies = {copies}"));
            }
        }
    }
    Ok(())
}

fn join_fixed_points<I: Int>() -> Check {
    let group = GroupId::Klein;
    let ball: Vec<GroupElement<I>> = lift(group.ball(2))?;
    let complex = lift(build_join(ball.clone(), 2))?;
    let hx = lift(DiagonalSubgroup::twisted(group, crate::group::klein::x::<I>(), vec![]))?;
    let fixed = lift(crate::join::fixed_subcomplex(&complex, &hx))?;
    let coset = lift(hx.fixed_points())?;
    let expected: Vec<GroupElement<I>> = ball
        .iter()
        .filter(|g| lift(coset.contains(g)).unwrap_or(false))
        .cloned()
        .collect();
    if fixed.factors() != &expected[..] || fixed.copies() != complex.copies() {
        return fail("fixed subcomplex is not the blockwise join of fixed vertices".to_string());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Principality and bounds
// ---------------------------------------------------------------------------

fn principality_verdicts<I: Int>() -> Check {
    for (group, expect_principal) in [
        (GroupId::FreeAbelian(3), true),
        (GroupId::Free(2), true),
        (GroupId::Free(3), true),
        (GroupId::Heisenberg, true),
        (GroupId::Klein, false),
    ] {
        match lift(is_principal::<I>(group))? {
            PrincipalityVerdict::Principal { .. } if expect_principal => {}
            PrincipalityVerdict::NotPrincipal { witness, condition_b } if !expect_principal => {
                if !lift(witness.verify(group))? {
                    return fail(format!("stale witness for {group}"));
                }
                if condition_b.index != 2 {
                    return fail(format!("condition (b) index for {group} is not 2"));
                }
            }
            other => return fail(format!("verdict for {group} unexpected: {other:?}")),
        }
    }
    Ok(())
}

fn property_n_search_consistency<I: Int>(radius: u32, max_power: u32) -> Check {
    for group in [GroupId::FreeAbelian(2), GroupId::Free(2), GroupId::Heisenberg] {
        if let Some(w) = lift(property_n_witness_search::<I>(group, radius, max_power))? {
            return fail(format!("unexpected witness in {group}: {:?}", w));
        }
    }
    match lift(property_n_witness_search::<I>(GroupId::Klein, radius, max_power))? {
        Some(w) if lift(w.verify(GroupId::Klein))? => Ok(()),
        Some(_) => fail("Klein witness does not verify".to_string()),
        None => fail("no Klein witness found".to_string()),
    }
}

fn tc_bound_monotonicity<I: Int>() -> Check {
    for group in [
        GroupId::FreeAbelian(1),
        GroupId::FreeAbelian(2),
        GroupId::FreeAbelian(3),
        GroupId::FreeAbelian(4),
        GroupId::Free(1),
        GroupId::Free(2),
        GroupId::Free(3),
        GroupId::Klein,
        GroupId::Heisenberg,
    ] {
        let report = lift(tc_bounds::<I>(group))?;
        if report.lower > report.upper {
            return fail(format!("bounds cross for {group}"));
        }
        match report.exact {
            Some(v) if v != report.lower || v != report.upper => {
                return fail(format!("exact value off the bounds for {group}"));
            }
            None if report.lower == report.upper => {
                return fail(format!("missed exactness for {group}"));
            }
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let config = SelftestConfig { randomized_cases: 6, oracle_radius: 3, ..Default::default() };
        let outcomes = run_selftest::<i64>(&config);
        let failures: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
        assert!(failures.is_empty(), "failed checks: {failures:?}");
        assert_eq!(outcomes.len(), 22);
    }

    #[test]
    fn suite_is_deterministic() {
        let config = SelftestConfig { randomized_cases: 3, oracle_radius: 2, ..Default::default() };
        let a: Vec<(&str, bool)> =
            run_selftest::<i64>(&config).into_iter().map(|o| (o.name, o.passed)).collect();
        let b: Vec<(&str, bool)> =
            run_selftest::<i64>(&config).into_iter().map(|o| (o.name, o.passed)).collect();
        assert_eq!(a, b);
    }

    /// A deliberately wrong Klein multiplication (dropping the twist sign)
    /// violates the Hall identity, so the suite would catch that mutation.
    #[test]
    fn broken_klein_multiply_fails_hall_identity() {
        type E = GroupElement<i64>;
        fn broken_mul(x: &E, y: &E) -> E {
            match (x, y) {
                (E::Klein { a: m, b: n }, E::Klein { a: m2, b: n2 }) => {
                    E::Klein { a: m + m2, b: n + n2 } // missing the sign twist
                }
                _ => unreachable!(),
            }
        }
        fn broken_inverse(x: &E) -> E {
            match x {
                E::Klein { a, b } => E::Klein { a: -a, b: -b },
                _ => unreachable!(),
            }
        }
        let commutator = |x: &E, y: &E| {
            broken_mul(&broken_mul(&broken_mul(x, y), &broken_inverse(x)), &broken_inverse(y))
        };
        let ball = GroupId::Klein.ball::<i64>(2).unwrap();
        let mut violated = false;
        'outer: for x in &ball {
            for y in &ball {
                for z in &ball {
                    let lhs = commutator(&broken_mul(x, y), z);
                    let yz = commutator(y, z);
                    let rhs = broken_mul(&broken_mul(&commutator(x, &yz), &yz), &commutator(x, z));
                    // The broken product is plain addition, so commutators
                    // collapse; compare against the true group instead.
                    let true_lhs = x.mul(y).unwrap().commutator(z).unwrap();
                    let true_yz = y.commutator(z).unwrap();
                    let true_rhs = x
                        .commutator(&true_yz)
                        .unwrap()
                        .mul(&true_yz)
                        .unwrap()
                        .mul(&x.commutator(z).unwrap())
                        .unwrap();
                    assert_eq!(true_lhs, true_rhs);
                    if (lhs != true_lhs) || (rhs != true_rhs) {
                        violated = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(violated, "the broken multiplication should diverge from the group law");
    }
}
