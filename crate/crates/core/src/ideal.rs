//! Ideals of a left commutative rng.
//!
//! An ideal is an additive subgroup `I` with `R·I ⊆ I`, `I·R ⊆ I` and
//! `I ∩ ℏ⁺(R)` an ideal of `(ℏ⁺(R), +, ♯)`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::carrier::{mask_members, members_mask, Elem};
use crate::error::{LcrError, Result};
use crate::rng::LcrTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealSet {
    owner: u64,
    members: Vec<Elem>,
    /// `I ∩ R·1ℓ` for the canonical left identity.
    even_part: Vec<Elem>,
    /// `I ∩ ℏ⁺(R)`.
    odd_part: Vec<Elem>,
    contains_halo: bool,
}

impl Ord for IdealSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for IdealSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Why a set fails to be an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    NotSubgroup,
    /// `r·i ∉ I`
    LeftAbsorption { r: Elem, i: Elem },
    /// `i·r ∉ I`
    RightAbsorption { i: Elem, r: Elem },
    /// `α ♯ i ∉ I` for `α ∈ ℏ⁺`, `i ∈ I ∩ ℏ⁺`
    LocalAbsorption { alpha: Elem, i: Elem },
}

pub fn ideal_violation(rng: &LcrTable, set: &[Elem]) -> Option<IdealViolation> {
    if set.iter().any(|&x| x >= rng.order()) {
        return Some(IdealViolation::NotSubgroup);
    }
    let mask = members_mask(rng.order(), set);
    if !rng.carrier().is_subgroup(&mask) {
        return Some(IdealViolation::NotSubgroup);
    }
    for &i in set {
        for r in rng.elements() {
            if !mask[rng.mul(r, i)] {
                return Some(IdealViolation::LeftAbsorption { r, i });
            }
            if !mask[rng.mul(i, r)] {
                return Some(IdealViolation::RightAbsorption { i, r });
            }
        }
    }
    for &i in set.iter().filter(|&&i| rng.in_halo(i)) {
        for &alpha in rng.halo() {
            if !mask[rng.sharp(alpha, i)] {
                return Some(IdealViolation::LocalAbsorption { alpha, i });
            }
        }
    }
    None
}

pub fn is_ideal(rng: &LcrTable, set: &[Elem]) -> bool {
    ideal_violation(rng, set).is_none()
}

impl IdealSet {
    /// Verifies `members` (any order, duplicates allowed) and splits by parity.
    pub fn new(rng: &LcrTable, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut members: Vec<Elem> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if ideal_violation(rng, &members).is_some() {
            return Err(LcrError::NotIdeal);
        }
        Ok(Self::unchecked(rng, members))
    }

    fn unchecked(rng: &LcrTable, members: Vec<Elem>) -> Self {
        let mask = members_mask(rng.order(), &members);
        let e = rng.left_identity();
        let even_part = members.iter().copied().filter(|&x| rng.mul(x, e) == x).collect();
        let odd_part: Vec<Elem> = members.iter().copied().filter(|&x| rng.in_halo(x)).collect();
        let contains_halo = rng.halo().iter().all(|&a| mask[a]);
        IdealSet { owner: rng.fingerprint(), members, even_part, odd_part, contains_halo }
    }

    pub fn check_owner(&self, rng: &LcrTable) -> Result<()> {
        if self.owner == rng.fingerprint() {
            Ok(())
        } else {
            Err(LcrError::ForeignIdeal)
        }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn even_part(&self) -> &[Elem] {
        &self.even_part
    }

    pub fn odd_part(&self) -> &[Elem] {
        &self.odd_part
    }

    /// `I ⊇ ℏ⁺(R)`.
    pub fn is_even(&self) -> bool {
        self.contains_halo
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn contains_ideal(&self, other: &IdealSet) -> bool {
        other.members.iter().all(|&x| self.contains(x))
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        members_mask(order, &self.members)
    }

    pub fn render(&self, rng: &LcrTable) -> Vec<String> {
        self.members.iter().map(|&x| rng.render(x)).collect()
    }
}

/// `{0}`.
pub fn zero_ideal(rng: &LcrTable) -> IdealSet {
    IdealSet::unchecked(rng, vec![rng.zero()])
}

/// `R` itself.
pub fn unit_ideal(rng: &LcrTable) -> IdealSet {
    IdealSet::unchecked(rng, rng.elements().collect())
}

/// `ℏ⁺(R)` as an ideal.
pub fn halo_ideal(rng: &LcrTable) -> IdealSet {
    IdealSet::unchecked(rng, rng.halo().to_vec())
}

/// The least ideal containing `gens`: closure under `+`, `−`, multiplication
/// by `R` on both sides, and `♯` by `ℏ⁺` on the halo part.
pub fn ideal_generated(rng: &LcrTable, gens: &[Elem]) -> Result<IdealSet> {
    for &g in gens {
        rng.carrier().check(g)?;
    }
    let n = rng.order();
    let mut mask = vec![false; n];
    let mut queue = VecDeque::new();
    let push = |x: Elem, mask: &mut Vec<bool>, queue: &mut VecDeque<Elem>| {
        if !mask[x] {
            mask[x] = true;
            queue.push_back(x);
        }
    };
    push(rng.zero(), &mut mask, &mut queue);
    for &g in gens {
        push(g, &mut mask, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        push(rng.neg(x), &mut mask, &mut queue);
        for r in rng.elements() {
            push(rng.mul(r, x), &mut mask, &mut queue);
            push(rng.mul(x, r), &mut mask, &mut queue);
        }
        if rng.in_halo(x) {
            for &alpha in rng.halo() {
                push(rng.sharp(alpha, x), &mut mask, &mut queue);
            }
        }
        for y in rng.elements().filter(|&y| mask[y]).collect::<Vec<_>>() {
            push(rng.add(x, y), &mut mask, &mut queue);
        }
    }
    IdealSet::new(rng, mask_members(&mask))
        .map_err(|_| LcrError::InvariantViolation("generated closure is not an ideal".into()))
}

/// Every ideal, canonically sorted (by size, then members).
pub fn enumerate_ideals(rng: &LcrTable) -> Vec<IdealSet> {
    let mut ideals: Vec<IdealSet> = rng
        .carrier()
        .subgroups()
        .into_iter()
        .filter(|s| is_ideal(rng, s))
        .map(|s| IdealSet::unchecked(rng, s))
        .collect();
    ideals.sort();
    ideals
}

/// `I + J`.
pub fn ideal_sum(rng: &LcrTable, ideals: &[&IdealSet]) -> Result<IdealSet> {
    let gens: Vec<Elem> = ideals.iter().flat_map(|i| i.members().iter().copied()).collect();
    ideal_generated(rng, &gens)
}

/// `I ∩ J`.
pub fn ideal_intersection(rng: &LcrTable, a: &IdealSet, b: &IdealSet) -> Result<IdealSet> {
    IdealSet::new(rng, a.members().iter().copied().filter(|&x| b.contains(x)))
        .map_err(|_| LcrError::InvariantViolation("intersection of ideals is not an ideal".into()))
}

/// Intersection of a family; `R` for the empty family.
pub fn intersect_all<'a>(rng: &LcrTable, family: impl IntoIterator<Item = &'a IdealSet>) -> Result<IdealSet> {
    family.into_iter().try_fold(unit_ideal(rng), |acc, i| ideal_intersection(rng, &acc, i))
}

/// The nil radical: all nilpotent elements, cross-checked against
/// `nilrad(R·1ℓ) ⊕ nilrad(ℏ⁺(R))`.
pub fn nilradical(rng: &LcrTable) -> Result<IdealSet> {
    let elementwise = rng.nilpotent_elements();
    let even: Vec<Elem> =
        rng.even_part_with(rng.left_identity()).into_iter().filter(|&a| rng.is_power_nilpotent(a)).collect();
    let odd: Vec<Elem> = rng.halo().iter().copied().filter(|&a| rng.is_local_nilpotent(a)).collect();
    let mut direct_sum: Vec<Elem> = even.iter().flat_map(|&a| odd.iter().map(move |&b| (a, b))).map(|(a, b)| rng.add(a, b)).collect();
    direct_sum.sort_unstable();
    direct_sum.dedup();
    if direct_sum != elementwise {
        let x = elementwise
            .iter()
            .find(|x| direct_sum.binary_search(x).is_err())
            .or_else(|| direct_sum.iter().find(|x| elementwise.binary_search(x).is_err()))
            .copied()
            .unwrap_or_default();
        return Err(LcrError::InvariantViolation(format!(
            "nilpotent set and direct-sum formula disagree at {}",
            rng.render(x)
        )));
    }
    IdealSet::new(rng, elementwise)
        .map_err(|_| LcrError::InvariantViolation("the nil radical is not an ideal".into()))
}

/// `√I = { x : x₀ᵐ ∈ I₀ and x₁^♯n ∈ I₁ for some m, n ≥ 1 }`, components
/// against the canonical left identity.
pub fn radical(rng: &LcrTable, ideal: &IdealSet) -> Result<IdealSet> {
    radical_with(rng, ideal, rng.left_identity())
}

/// As [`radical`], with components taken against `bar_unit`.
pub fn radical_with(rng: &LcrTable, ideal: &IdealSet, bar_unit: Elem) -> Result<IdealSet> {
    ideal.check_owner(rng)?;
    if !rng.is_bar_unit(bar_unit) {
        return Err(LcrError::NotBarUnit(bar_unit));
    }
    let mask = ideal.mask(rng.order());
    let n = rng.order();
    let members = rng.elements().filter(|&x| {
        let even = rng.even_component_with(x, bar_unit);
        let odd = rng.odd_component_with(x, bar_unit);
        let mut acc = even;
        let even_hit = (0..n).any(|_| {
            let hit = mask[acc];
            acc = rng.mul(acc, even);
            hit
        });
        let mut acc = odd;
        even_hit
            && (0..n).any(|_| {
                let hit = mask[acc];
                acc = rng.sharp(acc, odd);
                hit
            })
    });
    IdealSet::new(rng, members.collect::<Vec<_>>())
        .map_err(|_| LcrError::InvariantViolation("the radical is not an ideal".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn el(r: &LcrTable, c: &[usize]) -> Elem {
        r.carrier().from_coords(c).unwrap()
    }

    fn set(r: &LcrTable, cs: &[[usize; 2]]) -> Vec<Elem> {
        let mut v: Vec<Elem> = cs.iter().map(|c| el(r, c)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn is_ideal_examples() {
        let r4 = corpus::r4();
        assert!(is_ideal(&r4, r4.halo()));
        assert_eq!(
            ideal_violation(&r4, &set(&r4, &[[0, 0], [1, 0]])),
            Some(IdealViolation::RightAbsorption { i: el(&r4, &[1, 0]), r: el(&r4, &[0, 1]) })
        );
        assert!(is_ideal(&r4, &[r4.zero()]));
    }

    #[test]
    fn generated_ideals() {
        let r8 = corpus::r8();
        assert_eq!(ideal_generated(&r8, &[el(&r8, &[2, 0])]).unwrap().members(), set(&r8, &[[0, 0], [2, 0]]));
        assert_eq!(ideal_generated(&r8, &[]).unwrap().members(), &[r8.zero()]);
        let r4 = corpus::r4();
        assert_eq!(ideal_generated(&r4, &[el(&r4, &[1, 0])]).unwrap().len(), 4);
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(enumerate_ideals(&corpus::r4()).len(), 3);
        assert_eq!(enumerate_ideals(&corpus::r8()).len(), 5);
        assert_eq!(enumerate_ideals(&corpus::zn(1)).len(), 1);
    }

    #[test]
    fn parity_split() {
        let r8 = corpus::r8();
        for i in enumerate_ideals(&r8) {
            let mut parts: Vec<Elem> = i
                .even_part()
                .iter()
                .flat_map(|&a| i.odd_part().iter().map(move |&b| (a, b)))
                .map(|(a, b)| r8.add(a, b))
                .collect();
            parts.sort_unstable();
            parts.dedup();
            assert_eq!(parts, i.members());
        }
    }

    #[test]
    fn nilradicals() {
        let r8 = corpus::r8();
        assert_eq!(nilradical(&r8).unwrap().members(), set(&r8, &[[0, 0], [2, 0]]));
        let r4 = corpus::r4();
        assert_eq!(nilradical(&r4).unwrap().members(), &[r4.zero()]);
        assert_eq!(nilradical(&corpus::zn(4)).unwrap().members(), &[0, 2]);
    }

    #[test]
    fn radicals() {
        let r8 = corpus::r8();
        let zero = zero_ideal(&r8);
        assert_eq!(radical(&r8, &zero).unwrap().members(), set(&r8, &[[0, 0], [2, 0]]));
        let even_prime = IdealSet::new(&r8, set(&r8, &[[0, 0], [0, 1], [2, 0], [2, 1]])).unwrap();
        assert_eq!(radical(&r8, &even_prime).unwrap(), even_prime);
        let r4 = corpus::r4();
        let h = halo_ideal(&r4);
        assert_eq!(radical(&r4, &h).unwrap(), h);
    }

    #[test]
    fn foreign_ideal_rejected() {
        let r8 = corpus::r8();
        let r4 = corpus::r4();
        assert_eq!(radical(&r8, &zero_ideal(&r4)), Err(LcrError::ForeignIdeal));
    }
}
