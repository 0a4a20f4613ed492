//! Finite groups of affine automorphisms of a compact torus.
//!
//! Points of the `d`-torus are written additively as rational vectors in
//! `[0, 1)^d` (coordinates mod `Z`).  An automorphism acts as
//! `x -> M x + tau` with `M` in `GL_d(Z)` and `tau` a torsion translation;
//! `tau` is reduced into `[0, 1)^d` immediately after every construction and
//! composition, so structural equality of maps is exactly equality of
//! automorphisms of the torus.

use std::collections::BTreeMap;

use num::{One, Signed};

use crate::error::{EngineError, Result};
use crate::lattice::{IntMatrix, RationalVector};

/// Default cap on the closure size; exceeding it signals malformed input
/// (e.g. a generator of infinite order) rather than a legitimate datum.
pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Affine automorphism `x -> linear * x + translation` of the torus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AffineTorusMap {
    linear: IntMatrix,
    translation: RationalVector,
}

impl AffineTorusMap {
    /// Validating constructor: `linear` must be square of the right size
    /// with determinant `+-1`, and `translation` is reduced into `[0,1)^d`.
    pub fn new(linear: IntMatrix, translation: RationalVector) -> Result<Self> {
        if !linear.is_square() {
            return Err(EngineError::DimensionMismatch {
                expected: linear.rows(),
                found: linear.cols(),
                context: "affine map: linear part must be square".into(),
            });
        }
        if translation.dim() != linear.rows() {
            return Err(EngineError::DimensionMismatch {
                expected: linear.rows(),
                found: translation.dim(),
                context: "affine map: translation length".into(),
            });
        }
        if !linear.det().abs().is_one() {
            return Err(EngineError::ParseError {
                detail: "affine map: linear part is not in GL_d(Z) (determinant is not +-1)"
                    .into(),
            });
        }
        Ok(AffineTorusMap {
            linear,
            translation: translation.reduce_mod_one(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        AffineTorusMap {
            linear: IntMatrix::identity(dim),
            translation: RationalVector::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &RationalVector {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    /// Composition `self after other`: `(a b)(x) = a(b(x))`.
    pub fn compose(&self, other: &AffineTorusMap) -> AffineTorusMap {
        assert_eq!(self.dim(), other.dim(), "composition dimension mismatch");
        let linear = self.linear.mul(&other.linear);
        let translation = self
            .linear
            .apply_rational(&other.translation)
            .add(&self.translation)
            .reduce_mod_one();
        AffineTorusMap {
            linear,
            translation,
        }
    }

    /// Group inverse: `x -> M^{-1} x - M^{-1} tau`.
    pub fn inverse(&self) -> AffineTorusMap {
        let inv = self
            .linear
            .unimodular_inverse()
            .expect("linear part is unimodular by construction");
        let translation = inv.apply_rational(&self.translation).neg().reduce_mod_one();
        AffineTorusMap {
            linear: inv,
            translation,
        }
    }

    /// Image of a torus point, reduced into `[0, 1)^d`.
    pub fn act_on_point(&self, point: &RationalVector) -> Result<RationalVector> {
        if point.dim() != self.dim() {
            return Err(EngineError::DimensionMismatch {
                expected: self.dim(),
                found: point.dim(),
                context: "affine action on point".into(),
            });
        }
        Ok(self
            .linear
            .apply_rational(point)
            .add(&self.translation)
            .reduce_mod_one())
    }
}

/// A finite group of affine torus maps, closed under composition, with
/// multiplication and inverse tables over element indices.
///
/// Element `0` is always the identity; the remaining elements appear in
/// breadth-first discovery order, which makes the indexing deterministic
/// for a fixed generator list.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    dim: usize,
    elements: Vec<AffineTorusMap>,
    index: BTreeMap<AffineTorusMap, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(&self, i: usize) -> &AffineTorusMap {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[AffineTorusMap] {
        &self.elements
    }

    pub fn index_of(&self, map: &AffineTorusMap) -> Option<usize> {
        self.index.get(map).copied()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.order() {
            return Err(EngineError::IndexOutOfRange {
                index: i,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Table lookup: index of `elements[a] compose elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    /// Table lookup: index of the inverse of `elements[a]`.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Index of `g w g^{-1}`.
    pub fn conjugate(&self, g: usize, w: usize) -> usize {
        self.mul(self.mul(g, w), self.inv(g))
    }
}

/// Breadth-first closure of a generator list under composition and inverse.
///
/// The identity sits at index 0; new elements are appended in the order they
/// are discovered by multiplying known elements on the right by the
/// generators and their inverses.  Exceeding `cap` elements aborts with
/// `GroupTooLarge`.
pub fn close_group(
    dim: usize,
    generators: &[AffineTorusMap],
    cap: usize,
) -> Result<GroupClosure> {
    for (k, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(EngineError::DimensionMismatch {
                expected: dim,
                found: g.dim(),
                context: format!("generator {k}"),
            });
        }
    }

    let mut step_maps: Vec<AffineTorusMap> = Vec::new();
    for g in generators {
        let gi = g.inverse();
        if !step_maps.contains(g) {
            step_maps.push(g.clone());
        }
        if !step_maps.contains(&gi) {
            step_maps.push(gi);
        }
    }

    let identity = AffineTorusMap::identity(dim);
    let mut elements = vec![identity.clone()];
    let mut index = BTreeMap::new();
    index.insert(identity, 0usize);

    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for step in &step_maps {
            let next = current.compose(step);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(EngineError::GroupTooLarge { cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        head += 1;
    }

    let order = elements.len();
    let mut mul = vec![0usize; order * order];
    for a in 0..order {
        for b in 0..order {
            let product = elements[a].compose(&elements[b]);
            let k = *index.get(&product).ok_or_else(|| EngineError::InternalError {
                detail: "closure is not closed under composition".into(),
            })?;
            mul[a * order + b] = k;
        }
    }
    let mut inv = vec![0usize; order];
    for a in 0..order {
        let k = *index
            .get(&elements[a].inverse())
            .ok_or_else(|| EngineError::InternalError {
                detail: "closure is not closed under inverse".into(),
            })?;
        inv[a] = k;
    }

    Ok(GroupClosure {
        dim,
        elements,
        index,
        mul,
        inv,
    })
}

/// Conjugacy classes as sorted index lists; each class is represented by its
/// smallest element index, and classes are ordered by representative.
pub fn conjugacy_classes(group: &GroupClosure) -> Vec<Vec<usize>> {
    let order = group.order();
    let mut seen = vec![false; order];
    let mut classes = Vec::new();
    for w in 0..order {
        if seen[w] {
            continue;
        }
        let mut class: Vec<usize> = (0..order).map(|g| group.conjugate(g, w)).collect();
        class.sort_unstable();
        class.dedup();
        for &m in &class {
            seen[m] = true;
        }
        classes.push(class);
    }
    classes
}

/// Indices of elements commuting with `w`, in ascending order.
pub fn centralizer(group: &GroupClosure, w: usize) -> Result<Vec<usize>> {
    group.check_index(w)?;
    Ok((0..group.order())
        .filter(|&s| group.mul(s, w) == group.mul(w, s))
        .collect())
}

/// Indices of elements fixing the torus point `chi`, in ascending order.
pub fn stabilizer_of_point(group: &GroupClosure, chi: &RationalVector) -> Result<Vec<usize>> {
    if chi.dim() != group.dim() {
        return Err(EngineError::DimensionMismatch {
            expected: group.dim(),
            found: chi.dim(),
            context: "stabilizer of point".into(),
        });
    }
    let reduced = chi.reduce_mod_one();
    let mut out = Vec::new();
    for s in 0..group.order() {
        if group.element(s).act_on_point(&reduced)? == reduced {
            out.push(s);
        }
    }
    Ok(out)
}
