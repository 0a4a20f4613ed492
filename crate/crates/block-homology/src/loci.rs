//! Fixed loci of affine torus maps and their component orbits.
//!
//! The fixed points of `x -> M x + tau` on the torus solve the congruence
//! `(M - I) x = -tau  (mod Z^d)`.  Writing `U (M - I) V = D` in Smith
//! normal form and `c = U (-tau)`, the locus is nonempty exactly when
//! `c_i` is integral for every zero invariant factor; it is then a disjoint
//! union of `prod (nonzero invariant factors)` parallel subtori whose
//! common direction space is the saturated kernel of `M - I`.
//!
//! The full group permutes the components of all the loci:
//! `s . (w, c) = (s w s^{-1}, s(c))`.  Orbits of that action, together with
//! their stabilizers and the twist character restricted to the stabilizer,
//! are the bookkeeping units for every dimension formula downstream.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};

use crate::cocycle::TwistCharacter;
use crate::error::{EngineError, Result};
use crate::group::{AffineTorusMap, GroupClosure};
use crate::lattice::{
    coset_contains, saturated_kernel, smith_normal_form, IntMatrix, RationalVector,
};

/// Fixed-point set of one affine torus map.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    /// Whether the congruence has any solution at all.
    pub nonempty: bool,
    /// Common dimension of the components (rank of the direction lattice).
    pub dimension: usize,
    /// Saturated basis of the direction lattice, one column per dimension.
    pub directions: IntMatrix,
    /// One basepoint per connected component, reduced into `[0,1)^d`,
    /// sorted lexicographically; empty when the locus is empty.
    pub component_basepoints: Vec<RationalVector>,
}

impl FixedLocus {
    pub fn component_count(&self) -> usize {
        self.component_basepoints.len()
    }
}

/// Compute the fixed locus of `map` on the torus.
pub fn fixed_locus(map: &AffineTorusMap) -> FixedLocus {
    let d = map.dim();
    let b = map.linear().sub(&IntMatrix::identity(d));
    let snf = smith_normal_form(&b);
    let target = snf.u.apply_rational(&map.translation().neg());
    let directions = saturated_kernel(&b);

    // Solvability: coordinates with zero invariant factor demand integrality.
    let mut moduli: Vec<BigInt> = Vec::new(); // nonzero invariant factors
    let mut free_rows: Vec<usize> = Vec::new();
    let mut pinned_rows: Vec<usize> = Vec::new();
    for i in 0..d {
        let factor = snf.d.get(i, i).clone();
        if factor.is_zero() {
            free_rows.push(i);
        } else {
            moduli.push(factor);
            pinned_rows.push(i);
        }
    }
    let nonempty = free_rows.iter().all(|&i| target.get(i).is_integer());
    if !nonempty {
        return FixedLocus {
            nonempty: false,
            dimension: directions.cols(),
            directions,
            component_basepoints: Vec::new(),
        };
    }

    // Component basepoints: y_i = (c_i + k) / d_i for each residue k, free
    // coordinates zero, mapped back through V and reduced mod Z^d.
    let mut basepoints: Vec<RationalVector> = Vec::new();
    let mut residues = vec![BigInt::zero(); moduli.len()];
    loop {
        let mut y = RationalVector::zero(d);
        for (slot, &row) in pinned_rows.iter().enumerate() {
            let value = (target.get(row) + BigRational::from(residues[slot].clone()))
                / BigRational::from(moduli[slot].clone());
            y.set(row, value);
        }
        basepoints.push(snf.v.apply_rational(&y).reduce_mod_one());

        // Advance the mixed-radix residue counter.
        let mut carry = true;
        for slot in 0..residues.len() {
            if !carry {
                break;
            }
            residues[slot] += 1;
            if residues[slot] == moduli[slot] {
                residues[slot] = BigInt::zero();
                carry = true;
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }

    basepoints.sort();
    // Safety net: distinct residue vectors yield distinct components, but
    // dedup by coset membership in case reduction mod Z^d folded any
    // together.
    let mut deduped: Vec<RationalVector> = Vec::new();
    for p in basepoints {
        let duplicate = deduped
            .iter()
            .any(|q| coset_contains(&p, q, &directions).unwrap_or(false));
        if !duplicate {
            deduped.push(p);
        }
    }

    FixedLocus {
        nonempty: true,
        dimension: directions.cols(),
        directions,
        component_basepoints: deduped,
    }
}

/// Fixed loci of every group element, indexed like the group.
pub fn all_loci(group: &GroupClosure) -> Vec<FixedLocus> {
    (0..group.order())
        .map(|w| fixed_locus(group.element(w)))
        .collect()
}

/// Elements whose fixed locus passes through `chi`, with the component
/// direction basis of each; ascending element order.  The returned
/// element set always coincides with the stabilizer of `chi`.
pub fn components_through_point(
    group: &GroupClosure,
    loci: &[FixedLocus],
    chi: &RationalVector,
) -> Result<Vec<(usize, IntMatrix)>> {
    if chi.dim() != group.dim() {
        return Err(EngineError::DimensionMismatch {
            expected: group.dim(),
            found: chi.dim(),
            context: "components through point".into(),
        });
    }
    let reduced = chi.reduce_mod_one();
    let mut out = Vec::new();
    for w in 0..group.order() {
        if group.element(w).act_on_point(&reduced)? == reduced {
            out.push((w, loci[w].directions.clone()));
        }
    }
    Ok(out)
}

/// One orbit of the group action on pairs `(element, component)`.
#[derive(Clone, Debug)]
pub struct ComponentOrbit {
    /// All pairs in the orbit, sorted; `members[0]` is the representative.
    pub members: Vec<(usize, usize)>,
    /// Common dimension of the components in the orbit.
    pub dimension: usize,
    /// Stabilizer of the representative pair, ascending element indices.
    pub stabilizer: Vec<usize>,
    /// Twist character of the representative element restricted to the
    /// stabilizer.
    pub twist_on_stabilizer: BTreeMap<usize, u64>,
    /// Direction basis at the representative component.
    pub tangent: IntMatrix,
    /// Basepoint of the representative component.
    pub basepoint: RationalVector,
    /// Stabilizer elements acting as the identity on the representative
    /// component (fixing its basepoint and every direction vector).
    pub pointwise_kernel: Vec<usize>,
}

impl ComponentOrbit {
    pub fn representative(&self) -> (usize, usize) {
        self.members[0]
    }

    pub fn orbit_size(&self) -> usize {
        self.members.len()
    }

    pub fn twist_trivial_on_stabilizer(&self) -> bool {
        self.twist_on_stabilizer.values().all(|&v| v == 0)
    }
}

/// Image of the pair `(w, c)` under `s`: conjugate the element, move the
/// component, and locate the image component by exact coset membership.
fn act_on_pair(
    group: &GroupClosure,
    loci: &[FixedLocus],
    s: usize,
    pair: (usize, usize),
) -> Result<(usize, usize)> {
    let (w, c) = pair;
    let w2 = group.conjugate(s, w);
    let image = group
        .element(s)
        .act_on_point(&loci[w].component_basepoints[c])?;
    let target = &loci[w2];
    let mut hits = Vec::new();
    for (c2, base) in target.component_basepoints.iter().enumerate() {
        if coset_contains(&image, base, &target.directions)? {
            hits.push(c2);
        }
    }
    match hits.as_slice() {
        [c2] => Ok((w2, *c2)),
        _ => Err(EngineError::InternalError {
            detail: format!(
                "component image of ({w}, {c}) under {s} matched {} components",
                hits.len()
            ),
        }),
    }
}

/// Decompose all pairs `(element, component)` into group orbits.
///
/// Orbits are listed by ascending representative pair; members, stabilizers
/// and kernels are sorted, so the output is deterministic.
pub fn pair_orbits(
    group: &GroupClosure,
    loci: &[FixedLocus],
    twists: &[TwistCharacter],
) -> Result<Vec<ComponentOrbit>> {
    let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for w in 0..group.order() {
        for c in 0..loci[w].component_count() {
            visited.insert((w, c), false);
        }
    }

    let mut orbits = Vec::new();
    let pairs: Vec<(usize, usize)> = visited.keys().copied().collect();
    for pair in pairs {
        if visited[&pair] {
            continue;
        }
        let mut members = Vec::new();
        let mut stabilizer = Vec::new();
        for s in 0..group.order() {
            let image = act_on_pair(group, loci, s, pair)?;
            if image == pair {
                stabilizer.push(s);
            }
            members.push(image);
        }
        members.sort_unstable();
        members.dedup();
        for m in &members {
            *visited.get_mut(m).ok_or_else(|| EngineError::InternalError {
                detail: "orbit member outside the pair universe".into(),
            })? = true;
        }
        if members.len() * stabilizer.len() != group.order() {
            return Err(EngineError::InternalError {
                detail: format!(
                    "orbit-stabilizer mismatch: {} * {} != {}",
                    members.len(),
                    stabilizer.len(),
                    group.order()
                ),
            });
        }

        let (w, c) = members[0];
        let locus = &loci[w];
        let tangent = locus.directions.clone();
        let basepoint = locus.component_basepoints[c].clone();

        let mut twist_on_stabilizer = BTreeMap::new();
        for &s in &stabilizer {
            twist_on_stabilizer.insert(s, twists[w].value(s)?);
        }

        let mut pointwise_kernel = Vec::new();
        for &s in &stabilizer {
            let m = group.element(s).linear();
            let fixes_directions = m.mul(&tangent) == tangent;
            let fixes_base = group.element(s).act_on_point(&basepoint)? == basepoint;
            if fixes_directions && fixes_base {
                pointwise_kernel.push(s);
            }
        }

        orbits.push(ComponentOrbit {
            members,
            dimension: locus.dimension,
            stabilizer,
            twist_on_stabilizer,
            tangent,
            basepoint,
            pointwise_kernel,
        });
    }
    Ok(orbits)
}
