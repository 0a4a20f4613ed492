//! Homological invariants of a block datum.
//!
//! A datum is a triple: the rank `d` of a compact torus, a finite group `W`
//! of affine automorphisms of that torus, and a root-of-unity valued
//! 2-cocycle on `W`.  All invariants are exact integers computed from
//! group-averaged exterior-power traces over the fixed-locus components:
//!
//! * `hh_fiber_dim(chi, n)` — dimension of the degree-`n` fiber at a
//!   torsion point `chi`: average over the stabilizer `S` of `chi` of
//!   twisted `Lambda^n` traces on the fixed-locus tangent spaces of the
//!   elements of `S`.
//! * `hh_module_summary` — one row per component orbit with the generic
//!   (module) ranks of the degree-`n` pieces over the orbit's invariant
//!   function ring.
//! * `hp_dims` / `hc_tail_dims` / `k_theory_ranks` — even/odd totals of the
//!   invariant-form dimensions, the stable tails of the cyclic theory, and
//!   the rank pair of topological K-theory, which coincides with the
//!   periodic pair.
//! * `extended_quotient_point_count(chi)` — number of regular classes of
//!   the stabilizer of `chi`, i.e. points of the twisted extended quotient
//!   sitting over `chi`.

use num::BigInt;

use crate::cocycle::{
    count_irr_twisted_on, twist_character, validate_cocycle, CocycleTable, TwistCharacter,
};
use crate::cyclotomic::CycloSum;
use crate::error::{EngineError, Result};
use crate::group::{close_group, stabilizer_of_point, AffineTorusMap, GroupClosure};
use crate::lattice::{lambda_trace, restrict_to_basis, IntMatrix, RationalVector};
use crate::loci::{all_loci, pair_orbits, ComponentOrbit, FixedLocus};

/// Cocycle specification accepted by the datum constructor.
#[derive(Clone, Debug)]
pub enum CocycleInput {
    /// Modulus 1, all exponents zero.
    Trivial,
    /// Explicit exponent table over closure indices; validated on build.
    Table(CocycleTable),
}

/// A validated block datum with every derived structure precomputed:
/// closed group, checked cocycle, twist characters, fixed loci and
/// component orbits.
#[derive(Clone, Debug)]
pub struct BlockDatum {
    label: String,
    rank: usize,
    group: GroupClosure,
    cocycle: CocycleTable,
    twists: Vec<TwistCharacter>,
    loci: Vec<FixedLocus>,
    orbits: Vec<ComponentOrbit>,
}

impl BlockDatum {
    pub fn new(
        label: &str,
        rank: usize,
        generators: &[AffineTorusMap],
        cocycle: CocycleInput,
        group_cap: usize,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(EngineError::ParseError {
                detail: "torus rank must be at least 1".into(),
            });
        }
        let group = close_group(rank, generators, group_cap)?;
        let cocycle = match cocycle {
            CocycleInput::Trivial => CocycleTable::trivial(group.order()),
            CocycleInput::Table(t) => t,
        };
        validate_cocycle(&cocycle, &group)?;
        let twists = (0..group.order())
            .map(|w| twist_character(&cocycle, &group, w))
            .collect::<Result<Vec<_>>>()?;
        let loci = all_loci(&group);
        let orbits = pair_orbits(&group, &loci, &twists)?;
        Ok(BlockDatum {
            label: label.to_string(),
            rank,
            group,
            cocycle,
            twists,
            loci,
            orbits,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &GroupClosure {
        &self.group
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.cocycle
    }

    pub fn twist(&self, w: usize) -> &TwistCharacter {
        &self.twists[w]
    }

    pub fn loci(&self) -> &[FixedLocus] {
        &self.loci
    }

    pub fn orbits(&self) -> &[ComponentOrbit] {
        &self.orbits
    }

    /// Restriction of the linear part of element `s` to a direction basis.
    fn restriction(&self, s: usize, basis: &IntMatrix) -> Result<IntMatrix> {
        restrict_to_basis(self.group.element(s).linear(), basis).ok_or_else(|| {
            EngineError::InternalError {
                detail: format!("element {s} does not preserve an invariant direction lattice"),
            }
        })
    }

    /// Dimension of the degree-`n` fiber of the Hochschild module at the
    /// torsion point `chi`.
    ///
    /// The elements whose fixed locus passes through `chi` are exactly the
    /// stabilizer `S` of `chi`; the dimension is the `S`-average of
    /// `zeta^(twist_w(s)) * tr Lambda^n(s | tangent X^w)` over commuting
    /// pairs `(w, s)` in `S`.
    pub fn hh_fiber_dim(&self, chi: &RationalVector, n: usize) -> Result<usize> {
        let stab = stabilizer_of_point(&self.group, chi)?;
        let mut acc = CycloSum::new(self.cocycle.modulus());
        for &w in &stab {
            if n > self.loci[w].dimension {
                continue;
            }
            let basis = &self.loci[w].directions;
            for &s in &stab {
                if self.group.conjugate(s, w) != w {
                    continue;
                }
                let trace = lambda_trace(&self.restriction(s, basis)?, n);
                acc.add_term(self.twists[w].value(s)?, &trace);
            }
        }
        acc.to_dimension(stab.len(), &format!("fiber dimension at degree {n}"))
    }

    /// One summary row per component orbit: dimensions, stabilizer data and
    /// the generic ranks of all exterior degrees `0..=dimension` as modules
    /// over the orbit's invariant function ring.
    ///
    /// The generic rank in degree `n` is `C(dimension, n)` when the twist
    /// character vanishes on the subgroup acting pointwise-trivially on the
    /// component, and `0` otherwise (the twist then forces every invariant
    /// section to vanish identically).
    pub fn hh_module_summary(&self) -> Vec<HHModuleSummaryRow> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(id, orbit)| {
                let trivial_on_kernel = orbit
                    .pointwise_kernel
                    .iter()
                    .all(|s| orbit.twist_on_stabilizer[s] == 0);
                let r = orbit.dimension;
                let lambda_ranks = (0..=r)
                    .map(|n| if trivial_on_kernel { binomial(r, n) } else { 0 })
                    .collect();
                HHModuleSummaryRow {
                    orbit: id,
                    representative: orbit.representative(),
                    dimension: r,
                    orbit_size: orbit.orbit_size(),
                    stabilizer_order: orbit.stabilizer.len(),
                    twist_trivial_on_stabilizer: orbit.twist_trivial_on_stabilizer(),
                    lambda_ranks,
                }
            })
            .collect()
    }

    /// Dimension of the space of twisted invariant `k`-forms carried by one
    /// orbit: `(1/|S|) sum_s zeta^(twist(s)) tr Lambda^k(s | tangent)`.
    pub fn orbit_form_dim(&self, orbit: &ComponentOrbit, k: usize) -> Result<usize> {
        if k > orbit.dimension {
            return Ok(0);
        }
        let mut acc = CycloSum::new(self.cocycle.modulus());
        for &s in &orbit.stabilizer {
            let trace = lambda_trace(&self.restriction(s, &orbit.tangent)?, k);
            acc.add_term(orbit.twist_on_stabilizer[&s], &trace);
        }
        acc.to_dimension(
            orbit.stabilizer.len(),
            &format!("invariant {k}-forms on orbit of {:?}", orbit.representative()),
        )
    }

    /// Total dimension of twisted invariant `k`-forms over all orbits.
    pub fn invariant_form_dim(&self, k: usize) -> Result<usize> {
        let mut total = 0;
        for orbit in &self.orbits {
            total += self.orbit_form_dim(orbit, k)?;
        }
        Ok(total)
    }

    /// Periodic pair `(even, odd)`: alternating-degree totals of the
    /// invariant-form dimensions.
    pub fn hp_dims(&self) -> Result<(usize, usize)> {
        let mut even = 0;
        let mut odd = 0;
        for k in 0..=self.rank {
            let dim = self.invariant_form_dim(k)?;
            if k % 2 == 0 {
                even += dim;
            } else {
                odd += dim;
            }
        }
        Ok((even, odd))
    }

    /// Stable tail of the degree-`n` cyclic module: the sum of the
    /// invariant-form dimensions in degrees `n-2, n-4, ...` down to `0` or
    /// `1`.  (The leading non-stable term is a quotient of `n`-forms and is
    /// not part of this count.)
    pub fn hc_tail_dims(&self, n: usize) -> Result<usize> {
        let mut total = 0;
        let mut k = n;
        while k >= 2 {
            k -= 2;
            total += self.invariant_form_dim(k)?;
        }
        Ok(total)
    }

    /// Rank pair `(even, odd)` of topological K-theory; equals the
    /// periodic pair.
    pub fn k_theory_ranks(&self) -> Result<(usize, usize)> {
        self.hp_dims()
    }

    /// Number of points of the twisted extended quotient lying over `chi`:
    /// regular classes of the stabilizer of `chi` under the restricted
    /// cocycle.  Always equals `hh_fiber_dim(chi, 0)`.
    pub fn extended_quotient_point_count(&self, chi: &RationalVector) -> Result<usize> {
        let stab = stabilizer_of_point(&self.group, chi)?;
        count_irr_twisted_on(&self.cocycle, &self.group, &stab)
    }

    /// Signed per-orbit average `(1/|S|) sum_s zeta^(twist(s)) det(I - s|tangent)`;
    /// summed over orbits it reproduces `HP_even - HP_odd`.
    pub fn orbit_euler_term(&self, orbit: &ComponentOrbit) -> Result<BigInt> {
        let mut acc = CycloSum::new(self.cocycle.modulus());
        for &s in &orbit.stabilizer {
            let restriction = self.restriction(s, &orbit.tangent)?;
            let id = IntMatrix::identity(orbit.dimension);
            let det = id.sub(&restriction).det();
            acc.add_term(orbit.twist_on_stabilizer[&s], &det);
        }
        acc.to_signed_average(
            orbit.stabilizer.len(),
            &format!("Euler term of orbit {:?}", orbit.representative()),
        )
    }
}

/// Summary row describing one component orbit in the Hochschild module
/// decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHModuleSummaryRow {
    pub orbit: usize,
    pub representative: (usize, usize),
    pub dimension: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub twist_trivial_on_stabilizer: bool,
    /// Generic module rank of each exterior degree `0..=dimension`.
    pub lambda_ranks: Vec<usize>,
}

impl HHModuleSummaryRow {
    /// Rank in degree `n` (zero beyond the component dimension).
    pub fn rank_at(&self, n: usize) -> usize {
        self.lambda_ranks.get(n).copied().unwrap_or(0)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;
    use num::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn point(coords: &[(i64, i64)]) -> RationalVector {
        RationalVector::from_pairs(coords).unwrap()
    }

    fn map(rows: &[Vec<i64>], translation: &[(i64, i64)]) -> AffineTorusMap {
        AffineTorusMap::new(
            IntMatrix::from_rows(rows).unwrap(),
            RationalVector::from_pairs(translation).unwrap(),
        )
        .unwrap()
    }

    fn trivial_circle() -> BlockDatum {
        BlockDatum::new("circle", 1, &[], CocycleInput::Trivial, DEFAULT_GROUP_CAP).unwrap()
    }

    fn circle_inversion() -> BlockDatum {
        BlockDatum::new(
            "circle-inversion",
            1,
            &[map(&[vec![-1]], &[(0, 1)])],
            CocycleInput::Trivial,
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    fn two_torus_swap() -> BlockDatum {
        BlockDatum::new(
            "swap",
            2,
            &[map(&[vec![0, 1], vec![1, 0]], &[(0, 1), (0, 1)])],
            CocycleInput::Trivial,
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    fn three_torus_s3() -> BlockDatum {
        BlockDatum::new(
            "s3",
            3,
            &[
                map(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]], &[(0, 1), (0, 1), (0, 1)]),
                map(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]], &[(0, 1), (0, 1), (0, 1)]),
            ],
            CocycleInput::Trivial,
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    fn klein_heisenberg() -> BlockDatum {
        let g0 = map(&[vec![-1, 0], vec![0, 1]], &[(0, 1), (0, 1)]);
        let g1 = map(&[vec![1, 0], vec![0, -1]], &[(0, 1), (0, 1)]);
        let group = close_group(2, &[g0.clone(), g1.clone()], DEFAULT_GROUP_CAP).unwrap();
        let mut table = CocycleTable::with_order(2, group.order()).unwrap();
        let exp_coords = |i: usize| -> (u64, u64) {
            let m = group.element(i).linear();
            let x0 = u64::from(m.get(0, 0) == &BigInt::from(-1));
            let x1 = u64::from(m.get(1, 1) == &BigInt::from(-1));
            (x0, x1)
        };
        for i in 0..group.order() {
            for j in 0..group.order() {
                let (a0, _) = exp_coords(i);
                let (_, b1) = exp_coords(j);
                table.set(i, j, a0 * b1).unwrap();
            }
        }
        BlockDatum::new(
            "klein-heisenberg",
            2,
            &[g0, g1],
            CocycleInput::Table(table),
            DEFAULT_GROUP_CAP,
        )
        .unwrap()
    }

    #[test]
    fn trivial_circle_has_unit_invariants() {
        let d = trivial_circle();
        assert_eq!(d.hp_dims().unwrap(), (1, 1));
        assert_eq!(d.k_theory_ranks().unwrap(), (1, 1));
        let rows = d.hh_module_summary();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].lambda_ranks, vec![1, 1]);
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 5)]), 0).unwrap(), 1);
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 5)]), 1).unwrap(), 1);
    }

    #[test]
    fn circle_inversion_module_rows_match_known_block() {
        let d = circle_inversion();
        let rows = d.hh_module_summary();
        assert_eq!(rows.len(), 3, "torus orbit plus two fixed points");
        let mut at0: Vec<usize> = rows.iter().map(|r| r.rank_at(0)).collect();
        at0.sort_unstable();
        assert_eq!(at0, vec![1, 1, 1], "degree 0: three rank-1 summands");
        let mut at1: Vec<usize> = rows.iter().map(|r| r.rank_at(1)).collect();
        at1.sort_unstable();
        assert_eq!(at1, vec![0, 0, 1], "degree 1: only the torus orbit");
        for r in &rows {
            assert!(r.twist_trivial_on_stabilizer);
            assert_eq!(r.orbit_size * r.stabilizer_order, 2);
        }
    }

    #[test]
    fn circle_inversion_periodic_and_k_pairs() {
        let d = circle_inversion();
        assert_eq!(d.hp_dims().unwrap(), (3, 0));
        assert_eq!(d.k_theory_ranks().unwrap(), (3, 0));
    }

    #[test]
    fn circle_inversion_fiber_dimensions() {
        let d = circle_inversion();
        assert_eq!(d.hh_fiber_dim(&point(&[(0, 1)]), 0).unwrap(), 2);
        assert_eq!(d.hh_fiber_dim(&point(&[(0, 1)]), 1).unwrap(), 0);
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 2)]), 0).unwrap(), 2);
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 3)]), 0).unwrap(), 1);
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 3)]), 1).unwrap(), 1);
        // Beyond every component dimension the fiber vanishes.
        assert_eq!(d.hh_fiber_dim(&point(&[(1, 3)]), 2).unwrap(), 0);
    }

    #[test]
    fn circle_inversion_cyclic_tails() {
        let d = circle_inversion();
        assert_eq!(d.hc_tail_dims(0).unwrap(), 0);
        assert_eq!(d.hc_tail_dims(1).unwrap(), 0);
        assert_eq!(d.hc_tail_dims(2).unwrap(), 3, "degree-2 tail sees all 0-forms");
        assert_eq!(d.hc_tail_dims(3).unwrap(), 0, "degree-3 tail sees the 1-forms");
        assert_eq!(d.hc_tail_dims(4).unwrap(), 3);
    }

    #[test]
    fn circle_inversion_extended_quotient_counts() {
        let d = circle_inversion();
        assert_eq!(d.extended_quotient_point_count(&point(&[(0, 1)])).unwrap(), 2);
        assert_eq!(d.extended_quotient_point_count(&point(&[(1, 2)])).unwrap(), 2);
        assert_eq!(d.extended_quotient_point_count(&point(&[(1, 3)])).unwrap(), 1);
    }

    #[test]
    fn swap_block_periodic_pair() {
        let d = two_torus_swap();
        assert_eq!(d.hp_dims().unwrap(), (2, 2));
        let rows = d.hh_module_summary();
        assert_eq!(rows.len(), 2);
        // Torus orbit: generic ranks (1, 2, 1); diagonal orbit: (1, 1).
        assert_eq!(rows[0].lambda_ranks, vec![1, 2, 1]);
        assert_eq!(rows[1].lambda_ranks, vec![1, 1]);
    }

    #[test]
    fn s3_block_periodic_pair() {
        let d = three_torus_s3();
        assert_eq!(d.hp_dims().unwrap(), (4, 4));
        assert_eq!(d.invariant_form_dim(0).unwrap(), 3);
        assert_eq!(d.invariant_form_dim(1).unwrap(), 4);
        assert_eq!(d.invariant_form_dim(2).unwrap(), 1);
        assert_eq!(d.invariant_form_dim(3).unwrap(), 0);
    }

    #[test]
    fn klein_heisenberg_golden_values() {
        let d = klein_heisenberg();
        assert_eq!(d.hp_dims().unwrap(), (1, 4));
        assert_eq!(d.invariant_form_dim(0).unwrap(), 1);
        assert_eq!(d.invariant_form_dim(1).unwrap(), 4);
        assert_eq!(d.invariant_form_dim(2).unwrap(), 0);
        let origin = point(&[(0, 1), (0, 1)]);
        assert_eq!(d.hh_fiber_dim(&origin, 0).unwrap(), 1);
        assert_eq!(d.extended_quotient_point_count(&origin).unwrap(), 1);
        assert_eq!(
            crate::cocycle::count_irr_twisted(d.cocycle(), d.group()).unwrap(),
            1
        );
    }

    #[test]
    fn klein_heisenberg_euler_terms_sum_to_periodic_difference() {
        let d = klein_heisenberg();
        let (even, odd) = d.hp_dims().unwrap();
        let total: BigInt = d
            .orbits()
            .iter()
            .map(|o| d.orbit_euler_term(o).unwrap())
            .sum();
        assert_eq!(
            total,
            BigInt::from(even as i64) - BigInt::from(odd as i64),
            "per-orbit Euler terms must add to HP_even - HP_odd"
        );
        assert_eq!(total, BigInt::from(-3));
    }

    #[test]
    fn fiber_dim_matches_extended_quotient_on_sample_points() {
        let data = [circle_inversion(), two_torus_swap(), klein_heisenberg()];
        let samples: Vec<Vec<(i64, i64)>> = vec![
            vec![(0, 1)],
            vec![(1, 2)],
            vec![(1, 3)],
            vec![(2, 5)],
            vec![(0, 1), (0, 1)],
            vec![(1, 2), (0, 1)],
            vec![(1, 2), (1, 2)],
            vec![(1, 3), (1, 3)],
            vec![(1, 4), (3, 4)],
        ];
        for d in &data {
            for coords in samples.iter().filter(|c| c.len() == d.rank()) {
                let chi = point(coords);
                assert_eq!(
                    d.hh_fiber_dim(&chi, 0).unwrap(),
                    d.extended_quotient_point_count(&chi).unwrap(),
                    "degree-0 fiber must count extended-quotient points at {chi:?} of {}",
                    d.label()
                );
            }
        }
    }

    #[test]
    fn rank_zero_datum_is_rejected() {
        let err = BlockDatum::new("bad", 0, &[], CocycleInput::Trivial, 10).unwrap_err();
        assert!(matches!(err, EngineError::ParseError { .. }));
    }

    #[test]
    fn fiber_dim_rejects_wrong_dimension_points() {
        let d = circle_inversion();
        let bad = RationalVector::new(vec![rat(0, 1), rat(0, 1)]);
        assert!(matches!(
            d.hh_fiber_dim(&bad, 0),
            Err(EngineError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn binomial_helper() {
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(4, 4), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
