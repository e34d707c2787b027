//! Quotients `R/I` by an ideal.
//!
//! Cosets are numbered by their smallest representative, so the class of `0`
//! is always `0`. Products and local products are read off representatives
//! and checked against every other choice of representative.

use serde::{Deserialize, Serialize};

use crate::axioms::verify_lcr;
use crate::carrier::{Elem, FiniteCarrier};
use crate::error::{LcrError, Result};
use crate::ideal::IdealSet;
use crate::rng::LcrTable;

/// The canonical projection `x ↦ x + I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMap {
    image: Vec<Elem>,
    representatives: Vec<Elem>,
}

impl QuotientMap {
    /// Class index of each element of `R`.
    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    /// Smallest representative of each class.
    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn class_of(&self, x: Elem) -> Elem {
        self.image[x]
    }

    /// All elements of the class `c`.
    pub fn class_members(&self, c: Elem) -> Vec<Elem> {
        (0..self.image.len()).filter(|&x| self.image[x] == c).collect()
    }
}

/// `R/I` with `(x+I)(y+I) = xy+I` and `(α+I)♯(β+I) = α♯β+I`.
pub fn quotient(rng: &LcrTable, ideal: &IdealSet) -> Result<(LcrTable, QuotientMap)> {
    ideal.check_owner(rng)?;
    if !crate::ideal::is_ideal(rng, ideal.members()) {
        return Err(LcrError::NotIdeal);
    }
    let n = rng.order();
    let mut image = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in rng.elements() {
        if image[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &i in ideal.members() {
            image[rng.add(x, i)] = c;
        }
    }
    let m = reps.len();
    let map = QuotientMap { image, representatives: reps };

    let add = induced_table(rng, &map, |a, b| rng.add(a, b), "addition")?;
    let neg = map.representatives.iter().map(|&r| map.class_of(rng.neg(r))).collect();
    let carrier = FiniteCarrier::from_parts_unchecked(m, add, neg, map.class_of(rng.zero()));
    let mul = induced_table(rng, &map, |a, b| rng.mul(a, b), "product")?;

    let mut halo_image: Vec<Elem> = rng.halo().iter().map(|&a| map.class_of(a)).collect();
    halo_image.sort_unstable();
    halo_image.dedup();
    let halo = LcrTable::candidate_halo(&carrier, &mul)?;
    if halo != halo_image {
        return Err(LcrError::InvariantViolation(format!(
            "halo of the quotient {halo:?} differs from the image of the halo {halo_image:?}"
        )));
    }

    // α♯β + I must not depend on the halo representatives chosen
    let h = halo.len();
    let mut local_mul = vec![usize::MAX; h * h];
    for &a in rng.halo() {
        for &b in rng.halo() {
            let i = halo.binary_search(&map.class_of(a)).unwrap();
            let j = halo.binary_search(&map.class_of(b)).unwrap();
            let c = map.class_of(rng.sharp(a, b));
            let slot = &mut local_mul[i * h + j];
            if *slot == usize::MAX {
                *slot = c;
            } else if *slot != c {
                return Err(LcrError::InvariantViolation(format!(
                    "local product on the quotient depends on representatives at {} ♯ {}",
                    rng.render(a),
                    rng.render(b)
                )));
            }
        }
    }

    let left_identity = map.class_of(rng.left_identity());
    let local_identity = map.class_of(rng.local_identity());
    let out = LcrTable::assemble_table(carrier, mul, local_mul, Some(local_identity))?;
    if !out.is_bar_unit(left_identity) {
        return Err(LcrError::InvariantViolation("the class of 1ℓ is not a left identity of the quotient".into()));
    }
    let report = verify_lcr(&out);
    if let Some((name, w)) = report.failures().first() {
        return Err(LcrError::InvariantViolation(format!("quotient fails {name} at {:?}", w.elements)));
    }
    Ok((out, map))
}

fn induced_table(
    rng: &LcrTable,
    map: &QuotientMap,
    op: impl Fn(Elem, Elem) -> Elem,
    what: &str,
) -> Result<Vec<Elem>> {
    let m = map.representatives.len();
    let mut table = vec![usize::MAX; m * m];
    for a in rng.elements() {
        for b in rng.elements() {
            let slot = &mut table[map.class_of(a) * m + map.class_of(b)];
            let c = map.class_of(op(a, b));
            if *slot == usize::MAX {
                *slot = c;
            } else if *slot != c {
                return Err(LcrError::InvariantViolation(format!(
                    "{what} on the quotient depends on representatives at ({}, {})",
                    rng.render(a),
                    rng.render(b)
                )));
            }
        }
    }
    Ok(table)
}
