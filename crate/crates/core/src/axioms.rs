//! Exhaustive verification of the left commutative rng axioms.

use serde::{Deserialize, Serialize};

use crate::carrier::Elem;
use crate::rng::LcrTable;

/// The individual laws the verifier checks, each with a fixed witness shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// `(xy)z = x(yz)`; witness `[x, y, z]`
    Associativity,
    /// `x(y+z) = xy + xz`; witness `[x, y, z]`
    LeftDistributivity,
    /// `(x+y)z = xz + yz`; witness `[x, y, z]`
    RightDistributivity,
    /// `xyz = yxz`; witness `[x, y, z]`
    LeftCommutativity,
    /// `1ℓ·x = x`; witness `[1ℓ, x]`
    LeftIdentity,
    /// halo field equals `{ x : x·1ℓ = 0 }`; witness `[x]`
    HaloMembership,
    /// `α ♯ β ∈ ℏ⁺`; witness `[α, β]`
    LocalClosure,
    /// `α ♯ β = β ♯ α`; witness `[α, β]`
    LocalCommutativity,
    /// `(α♯β)♯γ = α♯(β♯γ)`; witness `[α, β, γ]`
    LocalAssociativity,
    /// `α♯(β+γ) = α♯β + α♯γ`; witness `[α, β, γ]`
    LocalDistributivity,
    /// `1♯ ♯ α = α`; witness `[1♯, α]`
    LocalIdentity,
    /// `(xα)♯β = x(α♯β)`; witness `[x, α, β]`
    Triassociativity,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Associativity => "associativity",
            Law::LeftDistributivity => "left_distributivity",
            Law::RightDistributivity => "right_distributivity",
            Law::LeftCommutativity => "left_commutativity",
            Law::LeftIdentity => "left_identity",
            Law::HaloMembership => "halo_membership",
            Law::LocalClosure => "local_closure",
            Law::LocalCommutativity => "local_commutativity",
            Law::LocalAssociativity => "local_associativity",
            Law::LocalDistributivity => "local_distributivity",
            Law::LocalIdentity => "local_identity",
            Law::Triassociativity => "triassociativity",
        }
    }

    /// Re-evaluates the law on a witness tuple; `true` means the failure
    /// reproduces.
    pub fn is_violated_by(self, rng: &LcrTable, w: &[Elem]) -> bool {
        let n = rng.order();
        if w.iter().any(|&x| x >= n) {
            return false;
        }
        let sharp = |a, b| rng.local_mul(a, b);
        match (self, w) {
            (Law::Associativity, &[x, y, z]) => rng.mul(rng.mul(x, y), z) != rng.mul(x, rng.mul(y, z)),
            (Law::LeftDistributivity, &[x, y, z]) => {
                rng.mul(x, rng.add(y, z)) != rng.add(rng.mul(x, y), rng.mul(x, z))
            }
            (Law::RightDistributivity, &[x, y, z]) => {
                rng.mul(rng.add(x, y), z) != rng.add(rng.mul(x, z), rng.mul(y, z))
            }
            (Law::LeftCommutativity, &[x, y, z]) => rng.mul(rng.mul(x, y), z) != rng.mul(rng.mul(y, x), z),
            (Law::LeftIdentity, &[e, x]) => rng.mul(e, x) != x,
            (Law::HaloMembership, &[x]) => {
                rng.in_halo(x) != (rng.mul(x, rng.left_identity()) == rng.zero())
            }
            (Law::LocalClosure, &[a, b]) => sharp(a, b).is_some_and(|p| !rng.in_halo(p)),
            (Law::LocalCommutativity, &[a, b]) => sharp(a, b) != sharp(b, a),
            (Law::LocalAssociativity, &[a, b, c]) => {
                let l = sharp(a, b).and_then(|ab| sharp(ab, c));
                let r = sharp(b, c).and_then(|bc| sharp(a, bc));
                l != r
            }
            (Law::LocalDistributivity, &[a, b, c]) => {
                let l = sharp(a, rng.add(b, c));
                let r = sharp(a, b).zip(sharp(a, c)).map(|(p, q)| rng.add(p, q));
                l != r
            }
            (Law::LocalIdentity, &[one, a]) => sharp(one, a) != Some(a),
            (Law::Triassociativity, &[x, a, b]) => {
                let l = sharp(rng.mul(x, a), b);
                let r = sharp(a, b).map(|ab| rng.mul(x, ab));
                l != r
            }
            _ => false,
        }
    }
}

/// A failed law and the element tuple exhibiting the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: Law,
    pub elements: Vec<Elem>,
}

impl Witness {
    pub fn replays(&self, rng: &LcrTable) -> bool {
        self.law.is_violated_by(rng, &self.elements)
    }
}

/// Per-axiom verdicts; `None` means the axiom holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// `·` is associative and distributes over `+`.
    pub rng: Option<Witness>,
    pub left_commutative: Option<Witness>,
    pub left_identity: Option<Witness>,
    /// `(ℏ⁺(R), +, ♯)` is a commutative ring with identity `1♯`.
    pub local_ring: Option<Witness>,
    pub triassociative: Option<Witness>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }

    /// `(axiom name, witness)` for each failing axiom.
    pub fn failures(&self) -> Vec<(&'static str, &Witness)> {
        [
            ("rng", &self.rng),
            ("left_commutative", &self.left_commutative),
            ("left_identity", &self.left_identity),
            ("local_ring", &self.local_ring),
            ("triassociative", &self.triassociative),
        ]
        .into_iter()
        .filter_map(|(name, w)| w.as_ref().map(|w| (name, w)))
        .collect()
    }
}

fn first<I: IntoIterator<Item = Vec<Elem>>>(law: Law, rng: &LcrTable, tuples: I) -> Option<Witness> {
    tuples.into_iter().find(|t| law.is_violated_by(rng, t)).map(|elements| Witness { law, elements })
}

fn triples<'a>(xs: &'a [Elem], ys: &[Elem], zs: &[Elem]) -> impl Iterator<Item = Vec<Elem>> + 'a {
    let ys = ys.to_vec();
    let zs = zs.to_vec();
    xs.iter().flat_map(move |&x| {
        let zs = zs.clone();
        ys.clone().into_iter().flat_map(move |y| zs.clone().into_iter().map(move |z| vec![x, y, z]))
    })
}

fn pairs<'a>(xs: &'a [Elem], ys: &'a [Elem]) -> impl Iterator<Item = Vec<Elem>> + 'a {
    xs.iter().flat_map(move |&x| ys.iter().map(move |&y| vec![x, y]))
}

/// Checks every axiom over all tuples. Witnesses are the first failing tuple
/// in lexicographic order of element indices.
pub fn verify_lcr(rng: &LcrTable) -> AxiomReport {
    let all: Vec<Elem> = rng.elements().collect();
    let halo = rng.halo();

    let rng_axioms = first(Law::Associativity, rng, triples(&all, &all, &all))
        .or_else(|| first(Law::LeftDistributivity, rng, triples(&all, &all, &all)))
        .or_else(|| first(Law::RightDistributivity, rng, triples(&all, &all, &all)));

    let left_commutative = first(Law::LeftCommutativity, rng, triples(&all, &all, &all));

    let e = rng.left_identity();
    let left_identity = first(Law::LeftIdentity, rng, all.iter().map(|&x| vec![e, x]))
        .or_else(|| first(Law::HaloMembership, rng, all.iter().map(|&x| vec![x])));

    let one = rng.local_identity();
    let local_ring = first(Law::LocalClosure, rng, pairs(halo, halo))
        .or_else(|| first(Law::LocalIdentity, rng, halo.iter().map(|&a| vec![one, a])))
        .or_else(|| first(Law::LocalCommutativity, rng, pairs(halo, halo)))
        .or_else(|| first(Law::LocalAssociativity, rng, triples(halo, halo, halo)))
        .or_else(|| first(Law::LocalDistributivity, rng, triples(halo, halo, halo)));

    let triassociative = first(Law::Triassociativity, rng, triples(&all, halo, halo));

    AxiomReport { rng: rng_axioms, left_commutative, left_identity, local_ring, triassociative }
}
