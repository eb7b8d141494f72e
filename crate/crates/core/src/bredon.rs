//! Bredon cohomology of `Z^k x Z^k` over the two-object orbit category,
//! and the comparison map to ordinary group cohomology.
//!
//! For an abelian group `pi = Z^k` the diagonal family of `G = pi x pi`
//! has exactly two members, the trivial subgroup and the diagonal, so the
//! orbit category has two objects `G/1` and `G/Delta`. Endomorphisms of
//! `G/Delta` form the group `W = Z^k` (cosets `(a, b) -> a - b`), there
//! are no maps `G/Delta -> G/1`, and maps `G/1 -> G/Delta` are indexed by
//! `W`.
//!
//! The plane `R^k` with the `((a, b), x) -> a - b + x` action is a model
//! for the classifying space of the family; its cubical chain complex is a
//! Koszul-shaped resolution by free modules of orbit type `G/Delta`, with
//! differentials over the Laurent group ring of `W`. Evaluating
//! `Hom(free on G/Delta, M)` collapses to `M(G/Delta)` with the variables
//! `t_i` acting through the module's automorphisms `T_i`; cohomology is
//! then Smith normal form arithmetic.
//!
//! Coefficient modules are finitely generated abelian groups with `k`
//! commuting automorphisms. The augmentation-ideal modules are never
//! materialized; they are tracked at descriptor level by
//! [`splice_descriptor`].

use crate::diagonal::stabilizer_of_tuple;
use crate::error::{Error, Result};
use crate::exterior::ExteriorClass;
use crate::group::GroupId;
use crate::int::Int;
use crate::laurent::{koszul_differentials, subsets, Laurent, PolyMatrix};
use crate::linalg::{subquotient_invariants, GroupInvariants, Matrix};
use crate::principality::{is_principal, PrincipalityVerdict};

/// Largest rank with a precomputed cubical resolution.
pub const MAX_RANK: usize = 6;

/// The two-object orbit category of `Z^k x Z^k` with respect to the
/// diagonal family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrbitCategoryZk {
    pub k: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitObject {
    /// The free orbit `G/1`.
    Free,
    /// The orbit `G/Delta`.
    Diagonal,
}

impl OrbitCategoryZk {
    pub fn new(k: usize) -> Self {
        OrbitCategoryZk { k }
    }

    /// Whether any equivariant map exists between the orbits. The only
    /// empty direction is `G/Delta -> G/1`.
    pub fn has_morphisms(&self, from: OrbitObject, to: OrbitObject) -> bool {
        !matches!((from, to), (OrbitObject::Diagonal, OrbitObject::Free))
    }

    /// The invariant of a coset `(a, b) Delta`, i.e. the `W`-coordinate of
    /// a morphism into `G/Delta`.
    pub fn weyl_coordinate<I: Int>(&self, a: &[I], b: &[I]) -> Vec<I> {
        assert_eq!(a.len(), self.k);
        assert_eq!(b.len(), self.k);
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    /// Composition of endomorphisms of `G/Delta` is addition in `W`.
    pub fn compose_endomorphisms<I: Int>(&self, v: &[I], w: &[I]) -> Vec<I> {
        assert_eq!(v.len(), self.k);
        assert_eq!(w.len(), self.k);
        v.iter().zip(w).map(|(x, y)| x.clone() + y.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Coefficient modules
// ---------------------------------------------------------------------------

/// Automorphisms and their inverses giving a `Z^2k`-action.
pub type GActions<I> = (Vec<Matrix<I>>, Vec<Matrix<I>>);

/// A coefficient module for the two-object orbit category: a finitely
/// generated abelian group (the value at `G/Delta`) with `k` commuting
/// automorphisms giving the `W`-action.
///
/// For a principal module the value at `G/1` carries the `G`-action
/// `(e_i, 0) -> T_i`, `(0, e_i) -> T_i^-1`, and the restriction map to the
/// diagonal-fixed part is the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitModule<I> {
    k: usize,
    generators: usize,
    relations: Matrix<I>,
    actions: Vec<Matrix<I>>,
    inverses: Vec<Matrix<I>>,
    principal: bool,
}

impl<I: Int> OrbitModule<I> {
    /// The constant module: `Z` at every orbit, trivial action.
    pub fn constant(k: usize) -> Self {
        OrbitModule {
            k,
            generators: 1,
            relations: Matrix::zero(1, 0),
            actions: vec![Matrix::identity(1); k],
            inverses: vec![Matrix::identity(1); k],
            principal: true,
        }
    }

    /// A module on the free abelian group `Z^rank` with the given actions.
    pub fn free_value(k: usize, rank: usize, actions: Vec<Matrix<I>>) -> Result<Self> {
        Self::new(k, rank, Matrix::zero(rank, 0), actions, true)
    }

    /// General constructor; validates that the actions are commuting
    /// automorphisms compatible with the relations.
    pub fn new(
        k: usize,
        generators: usize,
        relations: Matrix<I>,
        actions: Vec<Matrix<I>>,
        principal: bool,
    ) -> Result<Self> {
        if actions.len() != k {
            return Err(Error::InvalidModule("one action per Weyl generator required"));
        }
        if relations.nrows() != generators {
            return Err(Error::InvalidModule("relation rows must match the generator count"));
        }
        for t in &actions {
            if t.nrows() != generators || t.ncols() != generators {
                return Err(Error::InvalidModule("action matrices must be square on generators"));
            }
            // The action must descend to the quotient.
            if !in_column_span(&relations, &t.mul(&relations)) {
                return Err(Error::InvalidModule("action does not preserve the relations"));
            }
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                let comm = actions[i].mul(&actions[j]).sub(&actions[j].mul(&actions[i]));
                if !in_column_span(&relations, &comm) {
                    return Err(Error::InvalidModule("actions do not commute"));
                }
            }
        }
        let inverses: Result<Vec<Matrix<I>>> =
            actions.iter().map(|t| invert_mod(t, &relations)).collect();
        Ok(OrbitModule { k, generators, relations, actions, inverses: inverses?, principal })
    }

    pub fn weyl_rank(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix<I> {
        &self.relations
    }

    pub fn actions(&self) -> &[Matrix<I>] {
        &self.actions
    }

    pub fn is_principal_module(&self) -> bool {
        self.principal
    }

    /// Rank and torsion of the value at `G/Delta`.
    pub fn value_invariants(&self) -> GroupInvariants<I> {
        let s = self.relations.smith();
        let torsion: Vec<I> =
            s.invariant_factors().into_iter().filter(|d| *d > I::one()).collect();
        GroupInvariants { rank: self.generators - s.rank, torsion }
    }

    /// Instantiate a Laurent group-ring element on this module.
    pub fn instantiate(&self, p: &Laurent<I>) -> Matrix<I> {
        p.instantiate(&self.actions, &self.inverses, self.generators)
    }

    /// For a principal module, the `G = Z^2k`-action on the principal
    /// component: the first `k` generators act by `T_i`, the last `k` by
    /// `T_i^-1`.
    pub fn principal_component_actions(&self) -> Option<GActions<I>> {
        if !self.principal {
            return None;
        }
        let mut acts = self.actions.clone();
        acts.extend(self.inverses.iter().cloned());
        let mut invs = self.inverses.clone();
        invs.extend(self.actions.iter().cloned());
        Some((acts, invs))
    }

    /// The diagonal `Delta` acts on the principal component through
    /// `T_i T_i^-1`; for a valid principal module this is the identity, so
    /// the fixed part is the whole value, matching the value at `G/Delta`.
    pub fn diagonal_fixed_part_is_whole(&self) -> bool {
        self.actions
            .iter()
            .zip(&self.inverses)
            .all(|(t, tinv)| {
                let product = t.mul(tinv).sub(&Matrix::identity(self.generators));
                in_column_span(&self.relations, &product)
            })
    }
}

/// Every column of `m` lies in the column span of `rels`.
fn in_column_span<I: Int>(rels: &Matrix<I>, m: &Matrix<I>) -> bool {
    if m.is_zero() {
        return true;
    }
    if rels.ncols() == 0 {
        return false;
    }
    rels.solve_matrix(m).is_some()
}

/// Inverse of `t` as an endomorphism of `Z^g / col(rels)`.
fn invert_mod<I: Int>(t: &Matrix<I>, rels: &Matrix<I>) -> Result<Matrix<I>> {
    let g = t.nrows();
    let stacked = t.hstack(rels);
    let mut cols = Vec::with_capacity(g);
    for j in 0..g {
        let mut e = vec![I::zero(); g];
        e[j] = I::one();
        let sol = stacked.solve(&e).ok_or(Error::InvalidModule("action is not invertible"))?;
        cols.push(sol[..g].to_vec());
    }
    Ok(Matrix::from_cols(cols))
}

// ---------------------------------------------------------------------------
// The cubical resolution
// ---------------------------------------------------------------------------

/// A length-`k` resolution of the constant module by free modules of orbit
/// type `G/Delta`: degree `j` is free of rank `binom(k, j)` and the
/// differentials are the Koszul maps over the Laurent group ring of `W`.
#[derive(Clone, Debug)]
pub struct FreeODResolution<I> {
    k: usize,
    differentials: Vec<PolyMatrix<I>>,
}

/// The cellular chain complex of `R^k` with the `((a, b), x) -> a - b + x`
/// action, i.e. the Koszul resolution on `(t_1 - 1, ..., t_k - 1)`.
pub fn cubical_resolution<I: Int>(k: usize) -> Result<FreeODResolution<I>> {
    if !(1..=MAX_RANK).contains(&k) {
        return Err(Error::RankTooLarge { rank: k, max: MAX_RANK });
    }
    Ok(FreeODResolution { k, differentials: koszul_differentials(k) })
}

impl<I: Int> FreeODResolution<I> {
    pub fn rank(&self) -> usize {
        self.k
    }

    /// Number of free generators in degree `j`.
    pub fn module_rank(&self, j: usize) -> usize {
        subsets(self.k, j).len()
    }

    /// The differential from degree `j` to degree `j - 1`.
    pub fn differential(&self, j: usize) -> &PolyMatrix<I> {
        &self.differentials[j - 1]
    }

    /// Symbolic check that consecutive differentials compose to zero.
    pub fn squares_to_zero(&self) -> bool {
        (2..=self.k).all(|j| self.differential(j - 1).mul(self.differential(j)).is_zero())
    }

    /// The augmentation of degree 0 onto the constant module sends the
    /// generator to 1; composed with `d_1` it gives `t_i - 1 -> 0`.
    pub fn augmentation_annihilates_d1(&self) -> bool {
        if self.k == 0 {
            return true;
        }
        let d1 = self.differential(1);
        (0..d1.ncols()).all(|j| d1[(0, j)].at_one().is_zero())
    }
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

/// Bredon cohomology of `Z^k x Z^k` with coefficients in `module`,
/// computed from the cubical resolution by the Yoneda reduction
/// `Hom(free on G/Delta, M) = M(G/Delta)` and Smith normal form.
pub fn bredon_cohomology<I: Int>(
    resolution: &FreeODResolution<I>,
    module: &OrbitModule<I>,
) -> Result<Vec<GroupInvariants<I>>> {
    if resolution.rank() != module.weyl_rank() {
        return Err(Error::IncompatibleRank {
            resolution: resolution.rank(),
            module: module.weyl_rank(),
        });
    }
    let k = resolution.rank();
    let g = module.generators();
    // Coboundary from cochain degree j to j + 1: block (K, J) is the
    // instantiated (J, K) entry of the chain differential d_(j+1).
    let mut coboundaries: Vec<Matrix<I>> = Vec::new();
    for j in 0..k {
        let d = resolution.differential(j + 1);
        let (m_j, m_j1) = (d.nrows(), d.ncols());
        let mut delta = Matrix::zero(m_j1 * g, m_j * g);
        for target in 0..m_j1 {
            for source in 0..m_j {
                let block = module.instantiate(&d[(source, target)]);
                for r in 0..g {
                    for c in 0..g {
                        delta[(target * g + r, source * g + c)] = block[(r, c)].clone();
                    }
                }
            }
        }
        coboundaries.push(delta);
    }
    let rel_block = |j: usize| -> Matrix<I> {
        let m = subsets(k, j).len();
        let r = module.relations().ncols();
        let mut rels = Matrix::zero(m * g, m * r);
        for b in 0..m {
            for row in 0..g {
                for col in 0..r {
                    rels[(b * g + row, b * r + col)] = module.relations()[(row, col)].clone();
                }
            }
        }
        rels
    };
    let mut out = Vec::new();
    for j in 0..=k {
        let m_j = subsets(k, j).len();
        let into = if j == 0 {
            Matrix::zero(m_j * g, 0)
        } else {
            coboundaries[j - 1].clone()
        };
        let (outgoing, rels_out) = if j == k {
            (Matrix::zero(0, m_j * g), Matrix::zero(0, 0))
        } else {
            (coboundaries[j].clone(), rel_block(j + 1))
        };
        out.push(subquotient_invariants(&into, &outgoing, &rel_block(j), &rels_out));
    }
    Ok(out)
}

/// Per-degree Bredon cohomology of the constant module, together with the
/// cohomological dimension it certifies.
#[derive(Clone, Debug)]
pub struct CdReport<I> {
    pub k: usize,
    pub per_degree: Vec<GroupInvariants<I>>,
    /// Largest degree with nonvanishing cohomology (the lower bound).
    pub cd: usize,
    /// Length of the model (the upper bound).
    pub model_dimension: usize,
}

/// Compute `cd_D(Z^k x Z^k)` from the cubical resolution: the top
/// nonvanishing degree of `H_D(.; constant)` meets the model dimension.
pub fn cd_d_report<I: Int>(k: usize) -> Result<CdReport<I>> {
    let resolution = cubical_resolution::<I>(k)?;
    let per_degree = bredon_cohomology(&resolution, &OrbitModule::constant(k))?;
    let cd = per_degree
        .iter()
        .enumerate()
        .rev()
        .find(|(_, h)| !h.is_trivial())
        .map(|(j, _)| j)
        .unwrap_or(0);
    Ok(CdReport { k, per_degree, cd, model_dimension: k })
}

// ---------------------------------------------------------------------------
// The comparison chain map
// ---------------------------------------------------------------------------

/// A chain map from the Koszul resolution of `Z` over the group ring of
/// `Z^2k` (variables `u_1..u_k, v_1..v_k`) to the cubical resolution, over
/// the ring map `u_i -> t_i`, `v_i -> t_i^-1`. Its dual induces the
/// comparison from Bredon to ordinary group cohomology.
#[derive(Clone, Debug)]
pub struct ComparisonChainMap<I> {
    k: usize,
    /// `maps[j]`: rows indexed by degree-`j` subsets of `{t_1..t_k}`,
    /// columns by degree-`j` subsets of `{u_1..u_k, v_1..v_k}`, entries in
    /// the `k`-variable Laurent ring.
    maps: Vec<PolyMatrix<I>>,
}

/// Build the comparison chain map: in degree one `e_(u_i) -> e_i` and
/// `e_(v_i) -> -t_i^-1 e_i` (because `v_i - 1` maps to
/// `t_i^-1 - 1 = -t_i^-1 (t_i - 1)`), extended multiplicatively.
pub fn phi_chain_map<I: Int>(k: usize) -> Result<ComparisonChainMap<I>> {
    if !(1..=MAX_RANK).contains(&k) {
        return Err(Error::RankTooLarge { rank: k, max: MAX_RANK });
    }
    let mut maps = Vec::new();
    for j in 0..=k {
        let sources = subsets(2 * k, j);
        let targets = subsets(k, j);
        let target_pos: std::collections::BTreeMap<u32, usize> =
            targets.iter().enumerate().map(|(p, m)| (*m, p)).collect();
        let mut matrix = PolyMatrix::zero(targets.len(), sources.len(), k);
        for (col, &source) in sources.iter().enumerate() {
            // Image of each letter: an index below k and a coefficient.
            let mut indices: Vec<usize> = Vec::with_capacity(j);
            let mut coeff = Laurent::one(k);
            let mut collision = false;
            for bit in 0..2 * k {
                if source & (1 << bit) == 0 {
                    continue;
                }
                let idx = if bit < k { bit } else { bit - k };
                if indices.contains(&idx) {
                    collision = true;
                    break;
                }
                if bit >= k {
                    coeff = coeff.mul(&Laurent::var_pow(k, idx, -1)).neg();
                }
                indices.push(idx);
            }
            if collision {
                continue;
            }
            let inversions =
                indices.iter().enumerate().fold(0usize, |acc, (p, &i)| {
                    acc + indices[..p].iter().filter(|&&earlier| earlier > i).count()
                });
            if inversions % 2 == 1 {
                coeff = coeff.neg();
            }
            let mask = indices.iter().fold(0u32, |m, &i| m | (1 << i));
            let row = target_pos[&mask];
            matrix[(row, col)] = coeff;
        }
        maps.push(matrix);
    }
    Ok(ComparisonChainMap { k, maps })
}

impl<I: Int> ComparisonChainMap<I> {
    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn degree_map(&self, j: usize) -> &PolyMatrix<I> {
        &self.maps[j]
    }

    /// Symbolic verification of the chain-map squares
    /// `f d_source = d_target f`, including the vanishing composite one
    /// degree above the target length.
    pub fn commutes_with_differentials(&self) -> bool {
        let k = self.k;
        let source = koszul_differentials::<I>(2 * k);
        let target = koszul_differentials::<I>(k);
        let push =
            |m: &PolyMatrix<I>| m.map_entries(k, |p| p.map_exponents(k, |e| {
                (0..k).map(|i| e[i] - e[k + i]).collect()
            }));
        for j in 1..=k {
            let lhs = self.maps[j - 1].mul(&push(&source[j - 1]));
            let rhs = target[j - 1].mul(&self.maps[j]);
            if lhs != rhs {
                return false;
            }
        }
        if 2 * k > k {
            // One degree above the target the composite must vanish.
            let lhs = self.maps[k].mul(&push(&source[k]));
            if !lhs.is_zero() {
                return false;
            }
        }
        true
    }

    /// The dual of the chain map at `t = 1`: the matrix sending the
    /// degree-`j` cochain basis of the cubical side to the `u, v` side.
    pub fn constant_dual(&self, j: usize) -> Matrix<I> {
        let m = &self.maps[j];
        let mut out = Matrix::zero(m.ncols(), m.nrows());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                out[(c, r)] = m[(r, c)].at_one();
            }
        }
        out
    }
}

/// The comparison map on cohomology with constant coefficients: a Bredon
/// class over the basis `eps_J` maps to
/// `sum c_J prod_(i in J) (u_i - v_i)` in the exterior algebra of the
/// torus product.
pub fn phi_on_constant_cohomology<I: Int>(
    k: usize,
    class: &ExteriorClass<I>,
) -> Result<ExteriorClass<I>> {
    if class.n_gens() != k {
        return Err(Error::RankMismatch);
    }
    if let Some(degree) = class.degree() {
        if degree > k {
            return Err(Error::DegreeTooLarge { degree, max: k });
        }
    }
    let mut out = ExteriorClass::zero(2 * k);
    for (mask, coeff) in class.terms() {
        let mut product = ExteriorClass::unit(2 * k);
        for i in 0..k {
            if mask & (1 << i) != 0 {
                let u = ExteriorClass::generator(2 * k, i);
                let v = ExteriorClass::generator(2 * k, k + i);
                product = product.wedge(&u.sub(&v)?)?;
            }
        }
        out = out.add(&product.scale(coeff))?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The spliced augmentation complex, at descriptor level
// ---------------------------------------------------------------------------

/// Projectivity tag of a term in the spliced augmentation-power complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Projectivity {
    Free,
    Projective,
    NotFree,
}

/// Status of the leading augmentation-ideal power.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdealPowerStatus {
    /// The group is principal, so the ideal powers are principal modules.
    Principal,
    /// No principality certificate: the group is not principal.
    UnknownGroupNotPrincipal,
}

/// One term of the complex, tagged with its projectivity and the tuple
/// power of the underlying orbit set when there is one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpliceEntry {
    pub name: String,
    pub principal_component: String,
    pub projectivity: Projectivity,
    /// `Some(s)`: the term is built from the orbit set of `s`-tuples.
    pub tuple_power: Option<usize>,
}

/// Descriptor of the length-`n` complex
/// `0 -> I^n -> M (x) I^(n-1) -> ... -> M -> Z -> 0` obtained by splicing
/// the augmentation sequences. The middle terms are projective because the
/// isotropy of every tuple lies in the diagonal family; the leading ideal
/// power is principal exactly when the group is.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpliceDescriptor {
    pub group: GroupId,
    pub n: usize,
    pub entries: Vec<SpliceEntry>,
    pub ideal_power_status: IdealPowerStatus,
    /// Number of sample tuples whose stabilizers were recomputed to certify
    /// the projectivity tags.
    pub isotropy_samples_checked: usize,
}

fn power_name(base: &str, r: usize) -> String {
    match r {
        0 => "Z".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{r}"),
    }
}

/// Build the splice descriptor for a catalog group.
pub fn splice_descriptor<I: Int>(group: GroupId, n: usize) -> Result<SpliceDescriptor> {
    assert!(n >= 1, "the spliced complex needs at least one step");
    let mut entries = Vec::new();
    entries.push(SpliceEntry {
        name: power_name("I", n),
        principal_component: power_name("I", n),
        projectivity: Projectivity::NotFree,
        tuple_power: None,
    });
    for r in (1..n).rev() {
        entries.push(SpliceEntry {
            name: format!("M (x) {}", power_name("I", r)),
            principal_component: format!("Z[pi] (x) {}", power_name("I", r)),
            projectivity: Projectivity::Projective,
            tuple_power: Some(r + 1),
        });
    }
    entries.push(SpliceEntry {
        name: "M".to_string(),
        principal_component: "Z[pi]".to_string(),
        projectivity: Projectivity::Free,
        tuple_power: Some(1),
    });
    entries.push(SpliceEntry {
        name: "Z".to_string(),
        principal_component: "Z".to_string(),
        projectivity: Projectivity::NotFree,
        tuple_power: None,
    });

    // Certify the free/projective tags on samples: the stabilizer of every
    // tuple is a twisted diagonal, hence lies in the family.
    let ball = group.ball::<I>(1)?;
    let mut checked = 0;
    for entry in &entries {
        let Some(s) = entry.tuple_power else { continue };
        let mut tuple = vec![ball[0].clone(); s];
        for step in 0..ball.len().min(16) {
            for slot in 0..s {
                tuple[slot] = ball[(step + slot) % ball.len()].clone();
            }
            stabilizer_of_tuple(group, &tuple)?;
            checked += 1;
        }
    }

    let ideal_power_status = match is_principal::<I>(group)? {
        PrincipalityVerdict::Principal { .. } => IdealPowerStatus::Principal,
        PrincipalityVerdict::NotPrincipal { .. } => IdealPowerStatus::UnknownGroupNotPrincipal,
    };
    Ok(SpliceDescriptor { group, n, entries, ideal_power_status, isotropy_samples_checked: checked })
}
