//! Finite commutative unital rings and their classical prime spectra.
//!
//! These stand for the rings that appear next to a left commutative rng:
//! the local ring `(ℏ⁺(R), +, ♯)`, the even ring `R·1ℓ` and the quotient
//! `R/ℏ⁺(R)`. Everything is computed by direct scans of the tables.

use serde::{Deserialize, Serialize};

use crate::carrier::{members_mask, Elem, FiniteCarrier};
use crate::error::{LcrError, Result};
use crate::rng::LcrTable;
use crate::topology::FiniteTopology;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CommutativeRingTable {
    carrier: FiniteCarrier,
    mul: Vec<Elem>,
    one: Elem,
}

impl CommutativeRingTable {
    /// `Z/n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::product(&[n])
    }

    /// `Z/n_1 × ... × Z/n_k` with componentwise multiplication.
    pub fn product(factors: &[usize]) -> Result<Self> {
        let carrier = FiniteCarrier::cyclic(factors)?;
        let n = carrier.order();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ca = carrier.coords(a).unwrap();
                let cb = carrier.coords(b).unwrap();
                let prod: Vec<usize> =
                    ca.iter().zip(cb).zip(factors).map(|((x, y), m)| (x * y) % m).collect();
                mul.push(carrier.from_coords(&prod).unwrap());
            }
        }
        let ones: Vec<usize> = factors.iter().map(|&m| 1 % m).collect();
        let one = carrier.from_coords(&ones).unwrap();
        Ok(CommutativeRingTable { carrier, mul, one })
    }

    /// Builds a ring from tables, checking every ring axiom exhaustively.
    pub fn from_parts(carrier: FiniteCarrier, mul: Vec<Elem>, one: Elem) -> Result<Self> {
        let n = carrier.order();
        if mul.len() != n * n {
            return Err(LcrError::Structural(format!(
                "ring multiplication table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(LcrError::OutOfRange(bad, n));
        }
        carrier.check(one)?;
        let ring = CommutativeRingTable { carrier, mul, one };
        ring.verify()?;
        Ok(ring)
    }

    /// Associative, commutative, unital and distributive.
    pub fn verify(&self) -> Result<()> {
        let n = self.order();
        let c = &self.carrier;
        for a in 0..n {
            if self.mul(self.one, a) != a {
                return Err(LcrError::RingAxiom(format!("{} is not an identity at {}", self.render(self.one), self.render(a))));
            }
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(LcrError::RingAxiom(format!(
                        "not commutative at ({}, {})",
                        self.render(a),
                        self.render(b)
                    )));
                }
                for d in 0..n {
                    if self.mul(self.mul(a, b), d) != self.mul(a, self.mul(b, d)) {
                        return Err(LcrError::RingAxiom(format!(
                            "not associative at ({}, {}, {})",
                            self.render(a),
                            self.render(b),
                            self.render(d)
                        )));
                    }
                    if self.mul(a, c.add(b, d)) != c.add(self.mul(a, b), self.mul(a, d)) {
                        return Err(LcrError::RingAxiom(format!(
                            "not distributive at ({}, {}, {})",
                            self.render(a),
                            self.render(b),
                            self.render(d)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(ℏ⁺(R), +, ♯)` with elements indexed by halo position, and the
    /// embedding of positions back into `R`.
    pub fn local_ring(rng: &LcrTable) -> Result<(Self, Vec<Elem>)> {
        let halo = rng.halo().to_vec();
        let h = halo.len();
        let carrier = subcarrier(rng.carrier(), &halo)?;
        let mut mul = Vec::with_capacity(h * h);
        for &a in &halo {
            for &b in &halo {
                let p = rng.local_mul(a, b).unwrap();
                mul.push(rng.halo_position(p).ok_or(LcrError::NotInHalo(p))?);
            }
        }
        let one = rng.halo_position(rng.local_identity()).ok_or(LcrError::NotInHalo(rng.local_identity()))?;
        Ok((Self::from_parts(carrier, mul, one)?, halo))
    }

    /// `(R·b, +, ·)` with identity `b`, and its embedding into `R`.
    pub fn even_ring(rng: &LcrTable, bar_unit: Elem) -> Result<(Self, Vec<Elem>)> {
        if !rng.is_bar_unit(bar_unit) {
            return Err(LcrError::NotBarUnit(bar_unit));
        }
        let part = rng.even_part_with(bar_unit);
        let carrier = subcarrier(rng.carrier(), &part)?;
        let pos = |x: Elem| part.binary_search(&x).map_err(|_| LcrError::InvariantViolation(format!("{} escapes R·1ℓ", rng.render(x))));
        let mut mul = Vec::with_capacity(part.len() * part.len());
        for &a in &part {
            for &b in &part {
                mul.push(pos(rng.mul(a, b))?);
            }
        }
        let one = pos(bar_unit)?;
        Ok((Self::from_parts(carrier, mul, one)?, part))
    }

    /// Reads a zero-halo left commutative rng (for instance `R/ℏ⁺(R)`) as a
    /// commutative ring with identity `1ℓ`.
    pub fn from_zero_halo(rng: &LcrTable) -> Result<Self> {
        if rng.halo() != [rng.zero()] {
            return Err(LcrError::Structural("the rng has a nonzero halo".into()));
        }
        Self::from_parts(rng.carrier().clone(), rng.mul_table().to_vec(), rng.left_identity())
    }

    /// The ring as a left commutative rng with halo `{0}` and `1♯ = 0`.
    pub fn to_lcr(&self) -> LcrTable {
        LcrTable::assemble(self.carrier.clone(), self.mul.clone(), |_, _| self.carrier.zero(), Some(self.carrier.zero()))
            .expect("a unital ring has a left identity")
    }

    pub fn carrier(&self) -> &FiniteCarrier {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn zero(&self) -> Elem {
        self.carrier.zero()
    }

    pub fn one(&self) -> Elem {
        self.one
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

    pub fn is_ideal(&self, members: &[Elem]) -> bool {
        let mask = members_mask(self.order(), members);
        self.carrier.is_subgroup(&mask)
            && members.iter().all(|&i| self.carrier.elements().all(|r| mask[self.mul(r, i)]))
    }

    /// All ideals, canonically sorted (by size, then members).
    pub fn ideals(&self) -> Vec<Vec<Elem>> {
        self.carrier.subgroups().into_iter().filter(|s| self.is_ideal(s)).collect()
    }

    /// A pair `(x, y)` with `xy ∈ P` but `x, y ∉ P`, if any.
    pub fn prime_witness(&self, ideal: &[Elem]) -> Option<(Elem, Elem)> {
        let mask = members_mask(self.order(), ideal);
        for x in self.carrier.elements().filter(|&x| !mask[x]) {
            for y in self.carrier.elements().filter(|&y| !mask[y]) {
                if mask[self.mul(x, y)] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Proper, and `xy ∈ P ⇒ x ∈ P or y ∈ P`.
    pub fn is_prime(&self, ideal: &[Elem]) -> bool {
        ideal.len() < self.order() && self.prime_witness(ideal).is_none()
    }

    /// Nonzero with no zero divisors.
    pub fn is_domain(&self) -> bool {
        self.is_prime(&[self.zero()])
    }

    /// Prime ideals, canonically sorted.
    pub fn spectrum(&self) -> Vec<Vec<Elem>> {
        self.ideals().into_iter().filter(|p| self.is_prime(p)).collect()
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        let mut acc = x;
        for _ in 0..self.order() {
            if acc == self.zero() {
                return true;
            }
            acc = self.mul(acc, x);
        }
        false
    }

    pub fn nilradical(&self) -> Vec<Elem> {
        self.carrier.elements().filter(|&x| self.is_nilpotent(x)).collect()
    }

    /// `{ x : xᵐ ∈ I for some m ≥ 1 }`.
    pub fn radical(&self, ideal: &[Elem]) -> Vec<Elem> {
        let mask = members_mask(self.order(), ideal);
        self.carrier
            .elements()
            .filter(|&x| {
                let mut acc = x;
                (0..self.order()).any(|_| {
                    let hit = mask[acc];
                    acc = self.mul(acc, x);
                    hit
                })
            })
            .collect()
    }

    /// Classical Zariski topology: points are the primes in [`Self::spectrum`]
    /// order, closed sets are `V(I)` over all ideals.
    pub fn zariski(&self) -> FiniteTopology {
        let primes = self.spectrum();
        let closed = self
            .ideals()
            .iter()
            .map(|ideal| {
                primes
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| ideal.iter().all(|x| p.binary_search(x).is_ok()))
                    .map(|(i, _)| i)
                    .collect::<Vec<usize>>()
            })
            .collect::<Vec<_>>();
        FiniteTopology::new(primes.len(), closed)
    }
}

/// A unital homomorphism of commutative rings, as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingHom {
    pub image: Vec<Elem>,
}

impl RingHom {
    /// Checks additivity, multiplicativity and `1 ↦ 1` exhaustively.
    pub fn verify(&self, domain: &CommutativeRingTable, codomain: &CommutativeRingTable) -> Result<()> {
        if self.image.len() != domain.order() {
            return Err(LcrError::Mismatch(format!(
                "image table has {} entries for a domain of order {}",
                self.image.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = self.image.iter().find(|&&y| y >= codomain.order()) {
            return Err(LcrError::OutOfRange(bad, codomain.order()));
        }
        let f = |x: Elem| self.image[x];
        if f(domain.one()) != codomain.one() {
            return Err(LcrError::NotRingHom("identity is not preserved".into()));
        }
        for a in 0..domain.order() {
            for b in 0..domain.order() {
                if f(domain.carrier().add(a, b)) != codomain.carrier().add(f(a), f(b)) {
                    return Err(LcrError::NotRingHom(format!(
                        "not additive at ({}, {})",
                        domain.render(a),
                        domain.render(b)
                    )));
                }
                if f(domain.mul(a, b)) != codomain.mul(f(a), f(b)) {
                    return Err(LcrError::NotRingHom(format!(
                        "not multiplicative at ({}, {})",
                        domain.render(a),
                        domain.render(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(ring: &CommutativeRingTable) -> Self {
        RingHom { image: ring.carrier().elements().collect() }
    }

    /// Coordinatewise reduction `Z/n_1 × ... → Z/m_1 × ...` with `m_i | n_i`.
    pub fn reduce(domain: &CommutativeRingTable, codomain: &CommutativeRingTable) -> Result<Self> {
        let (df, cf) = cyclic_factors(domain, codomain)?;
        if df.len() != cf.len() || df.iter().zip(cf).any(|(n, m)| n % m != 0) {
            return Err(LcrError::NotRingHom(format!("cannot reduce {df:?} onto {cf:?} coordinatewise")));
        }
        Self::by_coords(domain, codomain, |c| c.iter().zip(cf).map(|(x, m)| x % m).collect())
    }

    /// `Z/n → Z/m_1 × ... × Z/m_k`, `a ↦ (a mod m_1, ..., a mod m_k)` with `m_i | n`.
    pub fn diagonal(domain: &CommutativeRingTable, codomain: &CommutativeRingTable) -> Result<Self> {
        let (df, cf) = cyclic_factors(domain, codomain)?;
        let [n] = df else {
            return Err(LcrError::NotRingHom("diagonal map needs a cyclic domain".into()));
        };
        if cf.iter().any(|m| n % m != 0) {
            return Err(LcrError::NotRingHom(format!("Z/{n} does not reduce onto {cf:?}")));
        }
        Self::by_coords(domain, codomain, |c| cf.iter().map(|m| c[0] % m).collect())
    }

    /// The map sending everything to zero; unital only onto the zero ring.
    pub fn zero(domain: &CommutativeRingTable, codomain: &CommutativeRingTable) -> Self {
        RingHom { image: vec![codomain.zero(); domain.order()] }
    }

    fn by_coords(
        domain: &CommutativeRingTable,
        codomain: &CommutativeRingTable,
        map: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Self> {
        let image = domain
            .carrier()
            .elements()
            .map(|x| {
                let coords = map(domain.carrier().coords(x).unwrap());
                codomain.carrier().from_coords(&coords).unwrap()
            })
            .collect();
        let hom = RingHom { image };
        hom.verify(domain, codomain)?;
        Ok(hom)
    }
}

fn cyclic_factors<'a>(
    domain: &'a CommutativeRingTable,
    codomain: &'a CommutativeRingTable,
) -> Result<(&'a [usize], &'a [usize])> {
    match (domain.carrier().factors(), codomain.carrier().factors()) {
        (Some(d), Some(c)) => Ok((d, c)),
        _ => Err(LcrError::NotRingHom("rings without cyclic coordinates".into())),
    }
}

/// The subgroup `members` as a carrier of its own, indexed by position.
pub(crate) fn subcarrier(carrier: &FiniteCarrier, members: &[Elem]) -> Result<FiniteCarrier> {
    let pos = |x: Elem| {
        members
            .binary_search(&x)
            .map_err(|_| LcrError::Structural(format!("{} escapes the subgroup", carrier.render(x))))
    };
    let mut add = Vec::with_capacity(members.len() * members.len());
    for &a in members {
        for &b in members {
            add.push(pos(carrier.add(a, b))?);
        }
    }
    let neg = members.iter().map(|&a| pos(carrier.neg(a))).collect::<Result<Vec<_>>>()?;
    Ok(FiniteCarrier::from_parts_unchecked(members.len(), add, neg, pos(carrier.zero())?))
}
