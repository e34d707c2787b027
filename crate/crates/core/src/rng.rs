//! Finite left commutative rngs as explicit tables.
//!
//! An [`LcrTable`] holds the product `·` on the whole carrier and the local
//! product `♯` on the additive halo `ℏ⁺(R) = { x : x·1ℓ = 0 }`. The designated
//! left identity is always the smallest-index bar-unit; the halo and every
//! other identity-dependent quantity can be recomputed against any bar-unit.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::carrier::{Elem, FiniteCarrier};
use crate::error::{LcrError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LcrTable {
    carrier: FiniteCarrier,
    mul: Vec<Elem>,
    left_identity: Elem,
    bar_units: Vec<Elem>,
    halo: Vec<Elem>,
    /// `halo.len() × halo.len()`, indexed by position in `halo`.
    local_mul: Vec<Elem>,
    local_identity: Elem,
}

/// `R = R·1ℓ ⊕ ℏ⁺(R)` for one choice of left identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub left_identity_used: Elem,
    pub even_part: Vec<Elem>,
    pub odd_part: Vec<Elem>,
    /// `(x₀, x₁)` for each element `x`.
    pub projections: Vec<(Elem, Elem)>,
}

impl LcrTable {
    /// Builds a candidate from raw parts. Only shapes and index ranges are
    /// checked here; the axioms are checked by [`crate::axioms::verify_lcr`].
    pub fn from_parts(
        carrier: FiniteCarrier,
        mul: Vec<Elem>,
        left_identity: Elem,
        halo: Vec<Elem>,
        local_mul: Vec<Elem>,
        local_identity: Elem,
    ) -> Result<Self> {
        let n = carrier.order();
        if mul.len() != n * n {
            return Err(LcrError::Structural(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(LcrError::OutOfRange(bad, n));
        }
        carrier.check(left_identity)?;
        if halo.is_empty() || halo.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LcrError::Structural("halo must be a nonempty strictly sorted list".into()));
        }
        if let Some(&bad) = halo.iter().find(|&&x| x >= n) {
            return Err(LcrError::OutOfRange(bad, n));
        }
        let h = halo.len();
        if local_mul.len() != h * h {
            return Err(LcrError::Structural(format!(
                "local product table has {} entries, expected {} for a halo of size {h}",
                local_mul.len(),
                h * h
            )));
        }
        if let Some(&bad) = local_mul.iter().find(|&&x| x >= n) {
            return Err(LcrError::OutOfRange(bad, n));
        }
        if halo.binary_search(&local_identity).is_err() {
            return Err(LcrError::NotInHalo(local_identity));
        }
        let bar_units = compute_bar_units(n, &mul);
        Ok(LcrTable { carrier, mul, left_identity, bar_units, halo, local_mul, local_identity })
    }

    /// Builds a table from `·` and a local product given on halo elements.
    ///
    /// The left identity is the smallest bar-unit; the halo is computed from
    /// it. When `local_identity` is `None` the first halo element acting as a
    /// `♯`-identity is used, falling back to zero (which the verifier will flag).
    pub fn assemble(
        carrier: FiniteCarrier,
        mul: Vec<Elem>,
        local: impl Fn(Elem, Elem) -> Elem,
        local_identity: Option<Elem>,
    ) -> Result<Self> {
        let halo = Self::candidate_halo(&carrier, &mul)?;
        let local_mul: Vec<Elem> = halo
            .iter()
            .flat_map(|&a| halo.iter().map(move |&b| (a, b)))
            .map(|(a, b)| local(a, b))
            .collect();
        Self::assemble_table(carrier, mul, local_mul, local_identity)
    }

    /// As [`LcrTable::assemble`], with the local product as a halo-indexed table.
    pub fn assemble_table(
        carrier: FiniteCarrier,
        mul: Vec<Elem>,
        local_mul: Vec<Elem>,
        local_identity: Option<Elem>,
    ) -> Result<Self> {
        let halo = Self::candidate_halo(&carrier, &mul)?;
        let n = carrier.order();
        let left_identity = compute_bar_units(n, &mul)[0];
        let h = halo.len();
        let local_identity = match local_identity {
            Some(id) => id,
            None if local_mul.len() == h * h => (0..h)
                .find(|&i| (0..h).all(|j| local_mul[i * h + j] == halo[j]))
                .map(|i| halo[i])
                .unwrap_or(carrier.zero()),
            None => carrier.zero(),
        };
        Self::from_parts(carrier, mul, left_identity, halo, local_mul, local_identity)
    }

    /// The halo relative to the smallest bar-unit of a raw product table.
    pub fn candidate_halo(carrier: &FiniteCarrier, mul: &[Elem]) -> Result<Vec<Elem>> {
        let n = carrier.order();
        if mul.len() != n * n {
            return Err(LcrError::Structural(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(LcrError::OutOfRange(bad, n));
        }
        let bars = compute_bar_units(n, mul);
        let e = *bars.first().ok_or(LcrError::NoLeftIdentity)?;
        Ok((0..n).filter(|&x| mul[x * n + e] == carrier.zero()).collect())
    }

    pub fn carrier(&self) -> &FiniteCarrier {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.carrier.elements()
    }

    pub fn zero(&self) -> Elem {
        self.carrier.zero()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.carrier.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.carrier.sub(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.carrier.neg(a)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order() + b]
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn render(&self, x: Elem) -> String {
        self.carrier.render(x)
    }

    /// The canonical left identity `1ℓ` (smallest-index bar-unit).
    pub fn left_identity(&self) -> Elem {
        self.left_identity
    }

    pub fn local_identity(&self) -> Elem {
        self.local_identity
    }

    /// `ℏ⁺(R)` relative to the canonical left identity, sorted.
    pub fn halo(&self) -> &[Elem] {
        &self.halo
    }

    pub fn halo_position(&self, x: Elem) -> Option<usize> {
        self.halo.binary_search(&x).ok()
    }

    pub fn in_halo(&self, x: Elem) -> bool {
        self.halo_position(x).is_some()
    }

    pub fn local_mul_table(&self) -> &[Elem] {
        &self.local_mul
    }

    /// `α ♯ β`, or `None` if either argument lies outside the halo.
    pub fn local_mul(&self, a: Elem, b: Elem) -> Option<Elem> {
        let i = self.halo_position(a)?;
        let j = self.halo_position(b)?;
        Some(self.local_mul[i * self.halo.len() + j])
    }

    /// `α ♯ β` for arguments known to be in the halo.
    #[inline]
    pub(crate) fn sharp(&self, a: Elem, b: Elem) -> Elem {
        self.local_mul(a, b).expect("local product of non-halo elements")
    }

    /// `ℏ×(R) = { b : b·x = x for all x }`, sorted.
    pub fn bar_units(&self) -> &[Elem] {
        &self.bar_units
    }

    pub fn is_bar_unit(&self, b: Elem) -> bool {
        self.bar_units.binary_search(&b).is_ok()
    }

    fn require_bar_unit(&self, b: Elem) -> Result<()> {
        self.carrier.check(b)?;
        if self.is_bar_unit(b) {
            Ok(())
        } else {
            Err(LcrError::NotBarUnit(b))
        }
    }

    /// `{ x : x·b = 0 }` for a bar-unit `b`, sorted.
    pub fn halo_for(&self, bar_unit: Elem) -> Result<Vec<Elem>> {
        self.require_bar_unit(bar_unit)?;
        Ok(self.elements().filter(|&x| self.mul(x, bar_unit) == self.zero()).collect())
    }

    /// Even component `x·b`.
    #[inline]
    pub fn even_component_with(&self, x: Elem, bar_unit: Elem) -> Elem {
        self.mul(x, bar_unit)
    }

    /// Odd component `x − x·b`.
    #[inline]
    pub fn odd_component_with(&self, x: Elem, bar_unit: Elem) -> Elem {
        self.sub(x, self.mul(x, bar_unit))
    }

    pub fn even_component(&self, x: Elem) -> Elem {
        self.even_component_with(x, self.left_identity)
    }

    pub fn odd_component(&self, x: Elem) -> Elem {
        self.odd_component_with(x, self.left_identity)
    }

    /// `R·b`, sorted.
    pub fn even_part_with(&self, bar_unit: Elem) -> Vec<Elem> {
        let mut part: Vec<Elem> = self.elements().map(|x| self.mul(x, bar_unit)).collect();
        part.sort_unstable();
        part.dedup();
        part
    }

    pub fn decompose(&self, bar_unit: Elem) -> Result<Decomposition> {
        self.require_bar_unit(bar_unit)?;
        Ok(Decomposition {
            left_identity_used: bar_unit,
            even_part: self.even_part_with(bar_unit),
            odd_part: self.halo_for(bar_unit)?,
            projections: self
                .elements()
                .map(|x| (self.even_component_with(x, bar_unit), self.odd_component_with(x, bar_unit)))
                .collect(),
        })
    }

    /// `aⁿ`, with `a⁰ = 1ℓ`.
    pub fn power(&self, a: Elem, n: usize) -> Elem {
        if n == 0 {
            return self.left_identity;
        }
        (1..n).fold(a, |acc, _| self.mul(acc, a))
    }

    /// `α^♯n`, with `α^♯0 = 1♯`.
    pub fn local_power(&self, a: Elem, n: usize) -> Result<Elem> {
        if !self.in_halo(a) {
            return Err(LcrError::NotInHalo(a));
        }
        if n == 0 {
            return Ok(self.local_identity);
        }
        Ok((1..n).fold(a, |acc, _| self.sharp(acc, a)))
    }

    /// True iff some power `aᵐ` with `1 ≤ m ≤ order` is zero.
    pub fn is_power_nilpotent(&self, a: Elem) -> bool {
        let mut acc = a;
        for _ in 0..self.order() {
            if acc == self.zero() {
                return true;
            }
            acc = self.mul(acc, a);
        }
        false
    }

    /// True iff some local power `α^♯n` with `1 ≤ n ≤ order` is zero.
    pub fn is_local_nilpotent(&self, a: Elem) -> bool {
        let mut acc = a;
        for _ in 0..self.order() {
            if acc == self.zero() {
                return true;
            }
            acc = self.sharp(acc, a);
        }
        false
    }

    /// `xᵐ = 0` and `x₁^♯n = 0` for some positive `m`, `n`, with `x₁` taken
    /// against the canonical left identity.
    pub fn is_nilpotent(&self, x: Elem) -> bool {
        self.is_power_nilpotent(x) && self.is_local_nilpotent(self.odd_component(x))
    }

    /// As [`LcrTable::is_nilpotent`] with the odd component taken against `bar_unit`.
    pub fn is_nilpotent_with(&self, x: Elem, bar_unit: Elem) -> Result<bool> {
        self.require_bar_unit(bar_unit)?;
        let odd = self.odd_component_with(x, bar_unit);
        if !self.in_halo(odd) {
            // halo independence failed; only possible for unverified tables
            return Err(LcrError::InvariantViolation(format!(
                "odd component {} of {} against bar-unit {} is outside the halo",
                self.render(odd),
                self.render(x),
                self.render(bar_unit)
            )));
        }
        Ok(self.is_power_nilpotent(x) && self.is_local_nilpotent(odd))
    }

    /// All nilpotent elements, sorted.
    pub fn nilpotent_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    /// Stable identity used to tie ideals to their owning rng.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

fn compute_bar_units(n: usize, mul: &[Elem]) -> Vec<Elem> {
    (0..n).filter(|&b| (0..n).all(|x| mul[b * n + x] == x)).collect()
}
