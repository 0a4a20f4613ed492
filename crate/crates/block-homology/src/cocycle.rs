//! Root-of-unity valued 2-cocycles on a finite group and their twist
//! characters.
//!
//! A cocycle with values in the `N`-th roots of unity is stored as a full
//! table of exponents mod `N`, indexed by ordered pairs of group element
//! indices.  Validation checks normalization (`(e, g)` and `(g, e)` entries
//! vanish) and the 2-cocycle identity on every triple.
//!
//! For every group element `w` the cocycle induces a character of the
//! centralizer of `w`: in the twisted group algebra with basis `T_g` and
//! products `T_g T_h = zeta_N^{table(g,h)} T_{gh}`, conjugation satisfies
//! `T_w T_h T_w^{-1} T_h^{-1} = zeta_N^{chi_w(h)} T_e` for `h` commuting
//! with `w`, and `chi_w` is that exponent.  Classes on which the character
//! is trivial over the whole centralizer ("regular" classes) biject with
//! the irreducible representations of the twisted group algebra.

use std::collections::BTreeMap;

use crate::error::{EngineError, Result};
use crate::group::GroupClosure;

/// Exponent table of a normalized 2-cocycle with values in the group of
/// `N`-th roots of unity.
#[derive(Clone, Debug)]
pub struct CocycleTable {
    modulus: u64,
    order: usize,
    entries: Vec<Option<u64>>,
}

impl CocycleTable {
    /// Empty table; fill with `set` and then run `validate_cocycle`.
    pub fn with_order(modulus: u64, order: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(EngineError::ParseError {
                detail: "cocycle modulus must be at least 1".into(),
            });
        }
        Ok(CocycleTable {
            modulus,
            order,
            entries: vec![None; order * order],
        })
    }

    /// The trivial cocycle: modulus 1, all exponents zero.
    pub fn trivial(order: usize) -> Self {
        CocycleTable {
            modulus: 1,
            order,
            entries: vec![Some(0); order * order],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| *e == Some(0))
    }

    pub fn set(&mut self, left: usize, right: usize, exponent: u64) -> Result<()> {
        if left >= self.order || right >= self.order {
            return Err(EngineError::IndexOutOfRange {
                index: left.max(right),
                order: self.order,
            });
        }
        self.entries[left * self.order + right] = Some(exponent % self.modulus);
        Ok(())
    }

    /// Exponent for the pair `(left, right)`; `MissingEntry` when unset.
    pub fn get(&self, left: usize, right: usize) -> Result<u64> {
        if left >= self.order || right >= self.order {
            return Err(EngineError::IndexOutOfRange {
                index: left.max(right),
                order: self.order,
            });
        }
        self.entries[left * self.order + right]
            .ok_or(EngineError::MissingEntry { left, right })
    }
}

/// Check that the table is complete, normalized, and satisfies the cocycle
/// identity `t(g,h) + t(gh,k) = t(g,hk) + t(h,k) (mod N)` on all triples.
pub fn validate_cocycle(table: &CocycleTable, group: &GroupClosure) -> Result<()> {
    let n = group.order();
    if table.order() != n {
        return Err(EngineError::DimensionMismatch {
            expected: n,
            found: table.order(),
            context: "cocycle table order".into(),
        });
    }
    for g in 0..n {
        for h in 0..n {
            table.get(g, h)?;
        }
    }
    for g in 0..n {
        if table.get(0, g)? != 0 {
            return Err(EngineError::CocycleViolation {
                detail: format!("normalization fails: entry (e, {g}) is nonzero"),
            });
        }
        if table.get(g, 0)? != 0 {
            return Err(EngineError::CocycleViolation {
                detail: format!("normalization fails: entry ({g}, e) is nonzero"),
            });
        }
    }
    let modulus = table.modulus();
    for g in 0..n {
        for h in 0..n {
            let gh = group.mul(g, h);
            for k in 0..n {
                let hk = group.mul(h, k);
                let lhs = (table.get(g, h)? + table.get(gh, k)?) % modulus;
                let rhs = (table.get(g, hk)? + table.get(h, k)?) % modulus;
                if lhs != rhs {
                    return Err(EngineError::CocycleViolation {
                        detail: format!(
                            "cocycle identity fails on triple ({g}, {h}, {k}): \
                             {lhs} != {rhs} (mod {modulus})"
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The twist character of `w`: exponents on the centralizer of `w`.
#[derive(Clone, Debug)]
pub struct TwistCharacter {
    w: usize,
    modulus: u64,
    values: BTreeMap<usize, u64>,
}

impl TwistCharacter {
    pub fn element(&self) -> usize {
        self.w
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent at `h`; `NotCentralizing` when `h` is outside the
    /// centralizer of `w`.
    pub fn value(&self, h: usize) -> Result<u64> {
        self.values
            .get(&h)
            .copied()
            .ok_or(EngineError::NotCentralizing { w: self.w, h })
    }

    /// Domain of the character (the centralizer), ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    /// True when every listed index has exponent zero.
    pub fn is_trivial_on(&self, subset: &[usize]) -> Result<bool> {
        for &h in subset {
            if self.value(h)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Commutator exponent of the twisted basis elements:
/// `T_w T_h T_w^{-1} T_h^{-1} = zeta^{t(w,h) + t(wh, w^{-1}) - t(w, w^{-1})} T_e`
/// for `h` in the centralizer of `w`.
fn commutator_exponent(
    table: &CocycleTable,
    group: &GroupClosure,
    w: usize,
    h: usize,
) -> Result<u64> {
    let modulus = table.modulus();
    let wi = group.inv(w);
    let wh = group.mul(w, h);
    let a = table.get(w, h)?;
    let b = table.get(wh, wi)?;
    let c = table.get(w, wi)?;
    // Entries are stored reduced, so `modulus - c` cannot underflow.
    Ok((a + b + (modulus - c)) % modulus)
}

/// Build the twist character of `w` over its centralizer and verify that it
/// is multiplicative with trivial value at the identity; failures indicate
/// an engine bug (`CharacterViolation`), not bad input, because every
/// validated cocycle induces genuine characters.
pub fn twist_character(
    table: &CocycleTable,
    group: &GroupClosure,
    w: usize,
) -> Result<TwistCharacter> {
    if w >= group.order() {
        return Err(EngineError::IndexOutOfRange {
            index: w,
            order: group.order(),
        });
    }
    let centralizer = crate::group::centralizer(group, w)?;
    let mut values = BTreeMap::new();
    for &h in &centralizer {
        values.insert(h, commutator_exponent(table, group, w, h)?);
    }
    let character = TwistCharacter {
        w,
        modulus: table.modulus(),
        values,
    };
    if character.value(0)? != 0 {
        return Err(EngineError::CharacterViolation {
            detail: format!("twist character of {w} is nonzero at the identity"),
        });
    }
    for &h1 in &centralizer {
        for &h2 in &centralizer {
            let prod = group.mul(h1, h2);
            let lhs = character.value(prod)?;
            let rhs = (character.value(h1)? + character.value(h2)?) % table.modulus();
            if lhs != rhs {
                return Err(EngineError::CharacterViolation {
                    detail: format!(
                        "twist character of {w} is not multiplicative at ({h1}, {h2})"
                    ),
                });
            }
        }
    }
    Ok(character)
}

/// Number of conjugacy classes of the group whose twist character is
/// trivial on the full centralizer — the number of irreducible
/// representations of the twisted group algebra.
pub fn count_irr_twisted(table: &CocycleTable, group: &GroupClosure) -> Result<usize> {
    let all: Vec<usize> = (0..group.order()).collect();
    count_irr_twisted_on(table, group, &all)
}

/// Same count relative to a subgroup given by its sorted element indices:
/// classes are subgroup-conjugacy classes, and regularity is tested against
/// centralizers inside the subgroup.  All cocycle arithmetic happens in the
/// ambient table, which restricts to a cocycle of the subgroup.
pub fn count_irr_twisted_on(
    table: &CocycleTable,
    group: &GroupClosure,
    members: &[usize],
) -> Result<usize> {
    for &m in members {
        if m >= group.order() {
            return Err(EngineError::IndexOutOfRange {
                index: m,
                order: group.order(),
            });
        }
    }
    let mut seen: BTreeMap<usize, bool> = members.iter().map(|&m| (m, false)).collect();
    let mut regular_classes = 0usize;
    for &w in members {
        if seen[&w] {
            continue;
        }
        let mut class: Vec<usize> = members.iter().map(|&g| group.conjugate(g, w)).collect();
        class.sort_unstable();
        class.dedup();
        for &m in &class {
            if let Some(flag) = seen.get_mut(&m) {
                *flag = true;
            } else {
                return Err(EngineError::InternalError {
                    detail: "subgroup member list is not closed under conjugation".into(),
                });
            }
        }
        let inner_centralizer: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&h| group.mul(h, w) == group.mul(w, h))
            .collect();
        let regular = inner_centralizer
            .iter()
            .map(|&h| commutator_exponent(table, group, w, h))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|&e| e == 0);
        if regular {
            regular_classes += 1;
        }
    }
    Ok(regular_classes)
}
