//! Hu-Liu prime ideals, the equivalent characterizations of primality, and
//! the spectrum split into its even and odd parts.
//!
//! With `R₀ = R·1ℓ`, `R₁ = ℏ⁺(R)` and `P_ε = P ∩ R_ε`, a proper ideal `P` is
//! a Hu-Liu prime when
//!
//! * `xy ∈ P+ℏ⁺ ⇒ x ∈ P+ℏ⁺ or y ∈ P+ℏ⁺` (the sum condition),
//! * `xy ∈ P ⇒ x ∈ P+ℏ⁺ or y ∈ P` (the product condition), and
//! * `P ⊇ ℏ⁺`, or `P₁` is a prime ideal of `(ℏ⁺, +, ♯)` (the halo condition).

use serde::{Deserialize, Serialize};

use crate::carrier::{members_mask, Elem};
use crate::error::{LcrError, Result};
use crate::ideal::{enumerate_ideals, halo_ideal, IdealSet};
use crate::quotient::quotient;
use crate::ring::CommutativeRingTable;
use crate::rng::LcrTable;

/// One characterization of primality, with the shape of its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeLaw {
    /// `[x, y]` with `xy ∈ P+ℏ⁺`, `x, y ∉ P+ℏ⁺`
    SumCondition,
    /// `[x, y]` with `xy ∈ P`, `x ∉ P+ℏ⁺`, `y ∉ P`
    ProductCondition,
    /// `[α, β]` in `ℏ⁺ ∖ P` with `α♯β ∈ P`, for `P ⊉ ℏ⁺`
    HaloCondition,
    /// `[x₀, y]` with `x₀ ∈ R₀ ∖ P`, `y ∈ R₀ ∪ R₁` outside `P`, `x₀y ∈ P`
    ComponentCondition,
    /// `[α, β]` in `ℏ⁺ ∖ P` with `α♯β ∈ P`
    LocalCondition,
    /// `[x₀, y₀]` in `R₀ ∖ P` with `x₀y₀ ∈ P`, or `[b]` with `P₀ = R₀`
    EvenPartPrime,
    /// `[x₀, y]` with `x₀ ∈ R₀ ∖ P`, `y ∉ P` and `x₀` annihilating the
    /// `R₀/P₀`-submodule of `R/P` generated by `y + P`
    ModuleFaithful,
    /// `[x, y]` outside `P ⊇ ℏ⁺` with `xy ∈ P`: `P/ℏ⁺` is not prime in `R/ℏ⁺`
    QuotientPrime,
    /// `[α, β]` in `ℏ⁺ ∖ P` with `α♯β ∈ P`: zero divisors in `ℏ⁺(R/P)`;
    /// `[]` when `ℏ⁺(R/P)` is the zero ring
    QuotientHaloDomain,
}

impl PrimeLaw {
    pub fn name(self) -> &'static str {
        match self {
            PrimeLaw::SumCondition => "sum_condition",
            PrimeLaw::ProductCondition => "product_condition",
            PrimeLaw::HaloCondition => "halo_condition",
            PrimeLaw::ComponentCondition => "component_condition",
            PrimeLaw::LocalCondition => "local_condition",
            PrimeLaw::EvenPartPrime => "even_part_prime",
            PrimeLaw::ModuleFaithful => "module_faithful",
            PrimeLaw::QuotientPrime => "quotient_prime",
            PrimeLaw::QuotientHaloDomain => "quotient_halo_domain",
        }
    }

    /// Re-evaluates a witness directly on the tables of `R`; `true` means the
    /// failure reproduces. Components are taken against `bar_unit`.
    pub fn is_violated_by(self, rng: &LcrTable, p: &IdealSet, bar_unit: Elem, w: &[Elem]) -> bool {
        if w.iter().any(|&x| x >= rng.order()) || !rng.is_bar_unit(bar_unit) {
            return false;
        }
        let ctx = Context::new(rng, p, bar_unit);
        match (self, w) {
            (PrimeLaw::SumCondition, &[x, y]) => ctx.sum_fails(x, y),
            (PrimeLaw::ProductCondition, &[x, y]) => ctx.product_fails(x, y),
            (PrimeLaw::HaloCondition, &[a, b]) => !p.is_even() && ctx.local_fails(a, b),
            (PrimeLaw::ComponentCondition, &[x, y]) => ctx.component_fails(x, y),
            (PrimeLaw::LocalCondition, &[a, b]) => ctx.local_fails(a, b),
            (PrimeLaw::EvenPartPrime, &[b]) => ctx.even[b] && ctx.in_p[b] && rng.is_bar_unit(b),
            (PrimeLaw::EvenPartPrime, &[x, y]) => ctx.even_pair_fails(x, y),
            (PrimeLaw::ModuleFaithful, &[x, y]) => ctx.annihilates(x, y),
            (PrimeLaw::QuotientPrime, &[x, y]) => {
                p.is_even() && !ctx.in_p[x] && !ctx.in_p[y] && ctx.in_p[rng.mul(x, y)]
            }
            (PrimeLaw::QuotientHaloDomain, &[]) => p.is_even(),
            (PrimeLaw::QuotientHaloDomain, &[a, b]) => !p.is_even() && ctx.local_fails(a, b),
            _ => false,
        }
    }
}

/// Verdict of one characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub law: PrimeLaw,
    pub holds: bool,
    /// Present exactly when `holds` is false.
    pub witness: Option<Vec<Elem>>,
}

impl Criterion {
    fn from_witness(law: PrimeLaw, witness: Option<Vec<Elem>>) -> Self {
        Criterion { law, holds: witness.is_none(), witness }
    }

    pub fn replays(&self, rng: &LcrTable, p: &IdealSet, bar_unit: Elem) -> bool {
        match &self.witness {
            Some(w) => self.law.is_violated_by(rng, p, bar_unit, w),
            None => true,
        }
    }
}

/// Every characterization of primality evaluated on one proper ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCriteriaReport {
    /// Bar-unit used for the even and odd components.
    pub bar_unit: Elem,
    /// `P ⊇ ℏ⁺(R)`.
    pub even: bool,
    /// Conjunction of the three defining conditions.
    pub hu_liu_prime: bool,
    pub sum_condition: Criterion,
    pub product_condition: Criterion,
    pub halo_condition: Criterion,
    /// Primality through components: `x₀y_ε ∈ P ⇒ x₀ ∈ P₀ or y_ε ∈ P_ε`.
    pub component_condition: Criterion,
    /// `α♯β ∈ P₁ ⇒ α ∈ P₁ or β ∈ P₁`.
    pub local_condition: Criterion,
    /// `P₀` prime in the ring `R₀`; equivalent to the sum condition.
    pub even_part_prime: Criterion,
    /// Every nonzero cyclic `R₀/P₀`-submodule of `R/P` is faithful;
    /// equivalent to the product condition.
    pub module_faithful: Criterion,
    /// For `P ⊇ ℏ⁺`: `P/ℏ⁺` prime in `R/ℏ⁺`.
    pub quotient_prime: Option<Criterion>,
    /// For `P ⊉ ℏ⁺`: `ℏ⁺(R/P)` is a domain; equivalent to the halo condition.
    pub quotient_halo_domain: Option<Criterion>,
}

/// Two characterizations that should agree but do not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub left: &'static str,
    pub left_holds: bool,
    pub right: &'static str,
    pub right_holds: bool,
}

impl PrimeCriteriaReport {
    /// Pairs of characterizations that should be equivalent but disagree.
    pub fn disagreements(&self) -> Vec<Disagreement> {
        let components = self.component_condition.holds && self.local_condition.holds;
        let mut pairs = vec![
            ("hu_liu_prime", self.hu_liu_prime, "component_and_local_conditions", components),
            ("sum_condition", self.sum_condition.holds, "even_part_prime", self.even_part_prime.holds),
            ("product_condition", self.product_condition.holds, "module_faithful", self.module_faithful.holds),
        ];
        if let Some(q) = &self.quotient_prime {
            pairs.push(("hu_liu_prime", self.hu_liu_prime, "quotient_prime", q.holds));
        }
        if let Some(d) = &self.quotient_halo_domain {
            pairs.push(("halo_condition", self.halo_condition.holds, "quotient_halo_domain", d.holds));
        }
        pairs
            .into_iter()
            .filter(|(_, a, _, b)| a != b)
            .map(|(left, left_holds, right, right_holds)| Disagreement { left, left_holds, right, right_holds })
            .collect()
    }

    pub fn criteria(&self) -> Vec<&Criterion> {
        let mut out = vec![
            &self.sum_condition,
            &self.product_condition,
            &self.halo_condition,
            &self.component_condition,
            &self.local_condition,
            &self.even_part_prime,
            &self.module_faithful,
        ];
        out.extend(self.quotient_prime.as_ref());
        out.extend(self.quotient_halo_domain.as_ref());
        out
    }
}

/// Membership masks shared by the element-level checks.
struct Context<'a> {
    rng: &'a LcrTable,
    in_p: Vec<bool>,
    /// `P + ℏ⁺`
    in_ph: Vec<bool>,
    /// `R₀ = R·b`
    even: Vec<bool>,
    halo: Vec<bool>,
}

impl<'a> Context<'a> {
    fn new(rng: &'a LcrTable, p: &IdealSet, bar_unit: Elem) -> Self {
        let n = rng.order();
        let in_p = p.mask(n);
        let mut in_ph = vec![false; n];
        for &x in p.members() {
            for &a in rng.halo() {
                in_ph[rng.add(x, a)] = true;
            }
        }
        let even = members_mask(n, &rng.even_part_with(bar_unit));
        let halo = members_mask(n, rng.halo());
        Context { rng, in_p, in_ph, even, halo }
    }

    fn sum_fails(&self, x: Elem, y: Elem) -> bool {
        self.in_ph[self.rng.mul(x, y)] && !self.in_ph[x] && !self.in_ph[y]
    }

    fn product_fails(&self, x: Elem, y: Elem) -> bool {
        self.in_p[self.rng.mul(x, y)] && !self.in_ph[x] && !self.in_p[y]
    }

    fn local_fails(&self, a: Elem, b: Elem) -> bool {
        self.halo[a] && self.halo[b] && !self.in_p[a] && !self.in_p[b] && self.in_p[self.rng.sharp(a, b)]
    }

    fn component_fails(&self, x: Elem, y: Elem) -> bool {
        self.even[x]
            && (self.even[y] || self.halo[y])
            && !self.in_p[x]
            && !self.in_p[y]
            && self.in_p[self.rng.mul(x, y)]
    }

    fn even_pair_fails(&self, x: Elem, y: Elem) -> bool {
        self.even[x] && self.even[y] && !self.in_p[x] && !self.in_p[y] && self.in_p[self.rng.mul(x, y)]
    }

    /// `x₀ ∈ R₀ ∖ P`, `y ∉ P`, and `x₀·(r₀y) ∈ P` for every `r₀ ∈ R₀`.
    fn annihilates(&self, x: Elem, y: Elem) -> bool {
        let rng = self.rng;
        self.even[x]
            && !self.in_p[x]
            && !self.in_p[y]
            && rng.elements().filter(|&r| self.even[r]).all(|r| self.in_p[rng.mul(x, rng.mul(r, y))])
    }

    fn find_pair(&self, xs: &[Elem], ys: &[Elem], fails: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
        xs.iter().find_map(|&x| ys.iter().find(|&&y| fails(x, y)).map(|&y| vec![x, y]))
    }
}

fn require_proper(rng: &LcrTable, p: &IdealSet) -> Result<()> {
    p.check_owner(rng)?;
    if p.len() == rng.order() {
        return Err(LcrError::ImproperIdeal);
    }
    Ok(())
}

fn definition_witnesses(ctx: &Context, p: &IdealSet) -> [Option<Vec<Elem>>; 3] {
    let all: Vec<Elem> = ctx.rng.elements().collect();
    let halo = ctx.rng.halo();
    let sum = ctx.find_pair(&all, &all, |x, y| ctx.sum_fails(x, y));
    let product = ctx.find_pair(&all, &all, |x, y| ctx.product_fails(x, y));
    let halo_cond = if p.is_even() { None } else { ctx.find_pair(halo, halo, |a, b| ctx.local_fails(a, b)) };
    [sum, product, halo_cond]
}

/// Hu-Liu primality by the defining conditions alone.
pub fn is_hu_liu_prime(rng: &LcrTable, p: &IdealSet) -> Result<bool> {
    require_proper(rng, p)?;
    let ctx = Context::new(rng, p, rng.left_identity());
    Ok(definition_witnesses(&ctx, p).iter().all(Option::is_none))
}

pub fn prime_criteria_report(rng: &LcrTable, p: &IdealSet) -> Result<PrimeCriteriaReport> {
    prime_criteria_report_with(rng, p, rng.left_identity())
}

/// Evaluates every characterization with components against `bar_unit`.
pub fn prime_criteria_report_with(rng: &LcrTable, p: &IdealSet, bar_unit: Elem) -> Result<PrimeCriteriaReport> {
    require_proper(rng, p)?;
    if !rng.is_bar_unit(bar_unit) {
        return Err(LcrError::NotBarUnit(bar_unit));
    }
    let ctx = Context::new(rng, p, bar_unit);
    let all: Vec<Elem> = rng.elements().collect();
    let halo = rng.halo().to_vec();
    let even_part = rng.even_part_with(bar_unit);

    let [sum, product, halo_cond] = definition_witnesses(&ctx, p);
    let hu_liu_prime = sum.is_none() && product.is_none() && halo_cond.is_none();

    let components: Vec<Elem> = all.iter().copied().filter(|&y| ctx.even[y] || ctx.halo[y]).collect();
    let component = ctx.find_pair(&even_part, &components, |x, y| ctx.component_fails(x, y));
    let local = ctx.find_pair(&halo, &halo, |a, b| ctx.local_fails(a, b));

    let (even_ring, embedding) = CommutativeRingTable::even_ring(rng, bar_unit)?;
    let p0: Vec<Elem> = (0..embedding.len()).filter(|&i| ctx.in_p[embedding[i]]).collect();
    let even_prime = if p0.len() == even_ring.order() {
        Some(vec![bar_unit])
    } else {
        even_ring.prime_witness(&p0).map(|(x, y)| vec![embedding[x], embedding[y]])
    };

    let module = ctx.find_pair(&even_part, &all, |x, y| ctx.annihilates(x, y));

    let quotient_prime = if p.is_even() { Some(quotient_prime_witness(rng, p)?) } else { None };
    let quotient_halo_domain = if p.is_even() { None } else { Some(quotient_domain_witness(rng, p)?) };

    Ok(PrimeCriteriaReport {
        bar_unit,
        even: p.is_even(),
        hu_liu_prime,
        sum_condition: Criterion::from_witness(PrimeLaw::SumCondition, sum),
        product_condition: Criterion::from_witness(PrimeLaw::ProductCondition, product),
        halo_condition: Criterion::from_witness(PrimeLaw::HaloCondition, halo_cond),
        component_condition: Criterion::from_witness(PrimeLaw::ComponentCondition, component),
        local_condition: Criterion::from_witness(PrimeLaw::LocalCondition, local),
        even_part_prime: Criterion::from_witness(PrimeLaw::EvenPartPrime, even_prime),
        module_faithful: Criterion::from_witness(PrimeLaw::ModuleFaithful, module),
        quotient_prime: quotient_prime.map(|w| Criterion::from_witness(PrimeLaw::QuotientPrime, w)),
        quotient_halo_domain: quotient_halo_domain.map(|w| Criterion::from_witness(PrimeLaw::QuotientHaloDomain, w)),
    })
}

/// Primality of `P/ℏ⁺` in the commutative ring `R/ℏ⁺`, computed on the
/// quotient tables; witnesses are lifted to representatives.
fn quotient_prime_witness(rng: &LcrTable, p: &IdealSet) -> Result<Option<Vec<Elem>>> {
    let (q, map) = quotient(rng, &halo_ideal(rng))?;
    let ring = CommutativeRingTable::from_zero_halo(&q)?;
    let mut image: Vec<Elem> = p.members().iter().map(|&x| map.class_of(x)).collect();
    image.sort_unstable();
    image.dedup();
    if image.len() == ring.order() {
        return Err(LcrError::InvariantViolation("a proper ideal containing the halo maps onto R/ℏ⁺".into()));
    }
    let reps = map.representatives();
    Ok(ring.prime_witness(&image).map(|(x, y)| vec![reps[x], reps[y]]))
}

/// Whether `(ℏ⁺(R/P), +, ♯)` is a domain, computed on the quotient tables.
fn quotient_domain_witness(rng: &LcrTable, p: &IdealSet) -> Result<Option<Vec<Elem>>> {
    let (q, map) = quotient(rng, p)?;
    let (local, embedding) = CommutativeRingTable::local_ring(&q)?;
    if local.order() == 1 {
        return Ok(Some(vec![]));
    }
    // lift a zero divisor pair of the quotient halo to halo elements of R
    let lift = |class: Elem| rng.halo().iter().copied().find(|&a| map.class_of(a) == class);
    Ok(match local.prime_witness(&[local.zero()]) {
        None => None,
        Some((x, y)) => {
            let a = lift(embedding[x]).ok_or(LcrError::NotInHalo(embedding[x]))?;
            let b = lift(embedding[y]).ok_or(LcrError::NotInHalo(embedding[y]))?;
            Some(vec![a, b])
        }
    })
}

/// The Hu-Liu primes, split by whether they contain the halo.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Primes `P ⊇ ℏ⁺(R)`.
    pub even: Vec<IdealSet>,
    /// Primes `P ⊉ ℏ⁺(R)`.
    pub odd: Vec<IdealSet>,
}

impl Spectrum {
    /// All primes in canonical ideal order.
    pub fn points(&self) -> Vec<IdealSet> {
        let mut all: Vec<IdealSet> = self.even.iter().chain(&self.odd).cloned().collect();
        all.sort();
        all
    }

    pub fn len(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn spectrum(rng: &LcrTable) -> Spectrum {
    spectrum_from(rng, &enumerate_ideals(rng))
}

/// The spectrum, filtering an already enumerated ideal list.
pub fn spectrum_from(rng: &LcrTable, ideals: &[IdealSet]) -> Spectrum {
    let (even, odd) = ideals
        .iter()
        .filter(|p| p.len() < rng.order())
        .filter(|p| is_hu_liu_prime(rng, p).unwrap_or(false))
        .cloned()
        .partition(|p| p.is_even());
    Spectrum { even, odd }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ideal::{unit_ideal, zero_ideal};

    fn el(r: &LcrTable, c: &[usize]) -> Elem {
        r.carrier().from_coords(c).unwrap()
    }

    fn ideal(r: &LcrTable, cs: &[[usize; 2]]) -> IdealSet {
        IdealSet::new(r, cs.iter().map(|c| el(r, c))).unwrap()
    }

    #[test]
    fn r4_zero_is_odd_prime() {
        let r4 = corpus::r4();
        let report = prime_criteria_report(&r4, &zero_ideal(&r4)).unwrap();
        assert!(report.hu_liu_prime && !report.even);
        assert!(report.criteria().iter().all(|c| c.holds));
        assert!(report.disagreements().is_empty());
    }

    #[test]
    fn r8_zero_fails_sum_condition() {
        let r8 = corpus::r8();
        let zero = zero_ideal(&r8);
        let report = prime_criteria_report(&r8, &zero).unwrap();
        assert!(!report.hu_liu_prime);
        let x = el(&r8, &[2, 0]);
        assert_eq!(report.sum_condition.witness, Some(vec![x, x]));
        assert!(report.sum_condition.replays(&r8, &zero, report.bar_unit));
        assert!(report.disagreements().is_empty());
    }

    #[test]
    fn r8_odd_prime() {
        let r8 = corpus::r8();
        let p = ideal(&r8, &[[0, 0], [2, 0]]);
        let report = prime_criteria_report(&r8, &p).unwrap();
        assert!(report.hu_liu_prime && !report.even);
        assert!(report.disagreements().is_empty());
    }

    #[test]
    fn unit_ideal_rejected() {
        let r4 = corpus::r4();
        assert_eq!(prime_criteria_report(&r4, &unit_ideal(&r4)), Err(LcrError::ImproperIdeal));
    }

    #[test]
    fn spectra_of_fixtures() {
        let r4 = corpus::r4();
        let s = spectrum(&r4);
        assert_eq!(s.even, vec![halo_ideal(&r4)]);
        assert_eq!(s.odd, vec![zero_ideal(&r4)]);

        let r8 = corpus::r8();
        let s = spectrum(&r8);
        assert_eq!(s.even, vec![ideal(&r8, &[[0, 0], [0, 1], [2, 0], [2, 1]])]);
        assert_eq!(s.odd, vec![ideal(&r8, &[[0, 0], [2, 0]])]);

        let z6 = corpus::zn(6);
        let s = spectrum(&z6);
        let members: Vec<Vec<Elem>> = s.even.iter().map(|p| p.members().to_vec()).collect();
        assert_eq!(members, vec![vec![0, 3], vec![0, 2, 4]]);
        assert!(s.odd.is_empty());

        assert!(spectrum(&corpus::zn(1)).is_empty());
    }

    #[test]
    fn reports_agree_across_bar_units() {
        for rng in [corpus::r4(), corpus::r8(), corpus::diagonal_extension()] {
            for p in enumerate_ideals(&rng).iter().filter(|p| p.len() < rng.order()) {
                let verdicts: Vec<bool> = rng
                    .bar_units()
                    .iter()
                    .map(|&b| prime_criteria_report_with(&rng, p, b).unwrap().hu_liu_prime)
                    .collect();
                assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }
}
