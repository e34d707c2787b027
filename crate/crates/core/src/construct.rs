//! Builders for left commutative rngs: the halo extension of a commutative
//! ring by an algebra over it, and an exhaustive search over small carriers.

use std::collections::BTreeMap;

use crate::axioms::verify_lcr;
use crate::carrier::{Elem, FiniteCarrier};
use crate::error::{LcrError, Result};
use crate::ring::{subcarrier, CommutativeRingTable, RingHom};
use crate::ideal::halo_ideal;
use crate::quotient::quotient;
use crate::rng::LcrTable;

/// `A ⊕ H` with `(a,α)·(b,β) = (ab, ψ(a)β)`, halo `0 ⊕ H`, `♯` the product
/// of `H`, left identity `(1,0)` and local identity `(0,1)`.
pub fn halo_extension(a: &CommutativeRingTable, h: &CommutativeRingTable, psi: &RingHom) -> Result<LcrTable> {
    psi.verify(a, h)?;
    let carrier = FiniteCarrier::direct_sum(a.carrier(), h.carrier());
    let k = h.order();
    let n = carrier.order();
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (xa, _) = (x / k, x % k);
            let (ya, yh) = (y / k, y % k);
            mul.push(a.mul(xa, ya) * k + h.mul(psi.image[xa], yh));
        }
    }
    let zero_a = a.zero();
    let local = |x: Elem, y: Elem| zero_a * k + h.mul(x % k, y % k);
    let local_identity = zero_a * k + h.one();
    let rng = LcrTable::assemble(carrier, mul, local, Some(local_identity))?;

    let expected_halo: Vec<Elem> = (0..k).map(|y| zero_a * k + y).collect();
    if rng.halo() != expected_halo || rng.left_identity() != a.one() * k + h.zero() {
        return Err(LcrError::InvariantViolation("halo extension has an unexpected halo or left identity".into()));
    }
    let report = verify_lcr(&rng);
    if let Some((name, w)) = report.failures().first() {
        return Err(LcrError::InvariantViolation(format!("halo extension fails {name} at {:?}", w.elements)));
    }
    Ok(rng)
}

/// `A = R/ℏ⁺(R)`, `H = (ℏ⁺(R), +, ♯)` and `ψ(x + ℏ⁺) = x·1♯`: the inputs
/// from which [`halo_extension`] rebuilds a copy of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloExtensionData {
    pub base: CommutativeRingTable,
    pub algebra: CommutativeRingTable,
    pub psi: RingHom,
}

/// Reads off the halo-extension data of `rng`. Whether the extension built
/// from it is isomorphic to `rng` is checked separately.
pub fn halo_extension_data(rng: &LcrTable) -> Result<HaloExtensionData> {
    let (q, map) = quotient(rng, &halo_ideal(rng))?;
    let base = CommutativeRingTable::from_zero_halo(&q)?;
    let (algebra, embedding) = CommutativeRingTable::local_ring(rng)?;
    let one = rng.local_identity();
    let image = map
        .representatives()
        .iter()
        .map(|&x| {
            let y = rng.mul(x, one);
            embedding.binary_search(&y).map_err(|_| LcrError::NotInHalo(y))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = RingHom { image };
    psi.verify(&base, &algebra)?;
    Ok(HaloExtensionData { base, algebra, psi })
}

/// Every finite abelian group of order `n`, as invariant factor lists
/// `[n_1, ..., n_k]` with `n_{i+1} | n_i`. Order 1 gives `[[1]]`.
pub fn abelian_groups(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, bound: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in (2..=remaining.min(bound)).rev() {
            if remaining.is_multiple_of(d) && bound.is_multiple_of(d) {
                prefix.push(d);
                go(remaining / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    if n <= 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    // the first factor is a multiple of every later one, so it bounds them
    for first in (2..=n).rev().filter(|d| n.is_multiple_of(*d)) {
        let mut prefix = vec![first];
        go(n / first, first, &mut prefix, &mut out);
    }
    out
}

pub const SEARCH_ORDER_BOUND: usize = 8;

/// All left commutative rng structures on `carrier` up to isomorphism, at
/// most `max_results` of them, in canonical order.
///
/// The product is fixed by the products of the coordinate basis vectors,
/// which are assigned one at a time. Associativity and left commutativity
/// are trilinear, so they are checked on basis triples as soon as both sides
/// are determined. For each product with a left identity, the local product
/// is enumerated the same way over a generating set of the halo. Survivors
/// pass the full axiom check and are reduced to the lexicographically least
/// table pair over all additive automorphisms.
pub fn small_rng_search(carrier: &FiniteCarrier, max_results: usize) -> Result<Vec<LcrTable>> {
    let n = carrier.order();
    if n > SEARCH_ORDER_BOUND {
        return Err(LcrError::OrderTooLarge { order: n, bound: SEARCH_ORDER_BOUND });
    }
    let factors = carrier
        .factors()
        .ok_or_else(|| LcrError::Structural("search needs a carrier built from cyclic factors".into()))?
        .to_vec();
    let basis: Vec<Elem> = (0..factors.len())
        .map(|i| {
            let mut c = vec![0; factors.len()];
            c[i] = 1 % factors[i];
            carrier.from_coords(&c).unwrap()
        })
        .collect();
    let automorphisms = automorphisms(carrier, &basis);
    let mut search = Search { carrier, factors: &factors, found: BTreeMap::new(), max_results, automorphisms };
    let mut entries = vec![None; factors.len() * factors.len()];
    search.products(&mut entries, 0);
    Ok(search.found.into_values().collect())
}

struct Search<'a> {
    carrier: &'a FiniteCarrier,
    factors: &'a [usize],
    /// canonical key ↦ canonical table
    found: BTreeMap<(Vec<Elem>, Vec<Elem>), LcrTable>,
    max_results: usize,
    automorphisms: Vec<Vec<Elem>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.found.len() >= self.max_results
    }

    /// `x·y` from basis products, or `None` if a needed entry is unassigned.
    fn partial_mul(&self, entries: &[Option<Elem>], x: Elem, y: Elem) -> Option<Elem> {
        let k = self.factors.len();
        let (cx, cy) = (self.carrier.coords(x)?, self.carrier.coords(y)?);
        let mut acc = self.carrier.zero();
        for i in 0..k {
            for j in 0..k {
                let times = cx[i] * cy[j];
                if times == 0 {
                    continue;
                }
                let p = entries[i * k + j]?;
                acc = self.carrier.add(acc, self.carrier.multiple(times, p));
            }
        }
        Some(acc)
    }

    fn basis(&self, i: usize) -> Elem {
        let mut c = vec![0; self.factors.len()];
        c[i] = 1 % self.factors[i];
        self.carrier.from_coords(&c).unwrap()
    }

    fn triples_consistent(&self, entries: &[Option<Elem>]) -> bool {
        let k = self.factors.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (x, y, z) = (self.basis(a), self.basis(b), self.basis(c));
                    let xy = self.partial_mul(entries, x, y);
                    let left = xy.and_then(|xy| self.partial_mul(entries, xy, z));
                    let right = self.partial_mul(entries, y, z).and_then(|yz| self.partial_mul(entries, x, yz));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return false;
                        }
                    }
                    let yx = self.partial_mul(entries, y, x);
                    let swapped = yx.and_then(|yx| self.partial_mul(entries, yx, z));
                    if let (Some(l), Some(r)) = (left, swapped) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn products(&mut self, entries: &mut Vec<Option<Elem>>, t: usize) {
        if self.done() {
            return;
        }
        let k = self.factors.len();
        if t == k * k {
            let n = self.carrier.order();
            let mul: Vec<Elem> = (0..n * n).map(|i| self.partial_mul(entries, i / n, i % n).unwrap()).collect();
            self.local_products(mul);
            return;
        }
        // e_i·e_j is killed by both n_i and n_j
        let (i, j) = (t / k, t % k);
        let bound = gcd(self.factors[i], self.factors[j]);
        for p in self.carrier.elements() {
            if !bound.is_multiple_of(self.carrier.additive_order(p)) {
                continue;
            }
            entries[t] = Some(p);
            if self.triples_consistent(entries) {
                self.products(entries, t + 1);
            }
            entries[t] = None;
        }
    }

    fn local_products(&mut self, mul: Vec<Elem>) {
        let Ok(halo) = LcrTable::candidate_halo(self.carrier, &mul) else {
            return;
        };
        let Ok(sub) = subcarrier(self.carrier, &halo) else {
            return;
        };
        let gens = sub.generating_set();
        let g = gens.len();
        let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
        let h = halo.len();
        let mut choice = vec![0usize; pairs.len()];
        loop {
            if self.done() {
                return;
            }
            let mut gen_products = vec![vec![0; g]; g];
            for (&(i, j), &c) in pairs.iter().zip(&choice) {
                gen_products[i][j] = c;
                gen_products[j][i] = c;
            }
            if let Some(local) = bilinear_table(&sub, &gens, &gen_products) {
                let local_mul: Vec<Elem> = local.iter().map(|&p| halo[p]).collect();
                self.consider(mul.clone(), local_mul);
            }
            // next choice in mixed radix h
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return;
                }
                choice[pos] += 1;
                if choice[pos] < h {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    fn consider(&mut self, mul: Vec<Elem>, local_mul: Vec<Elem>) {
        let Ok(rng) = LcrTable::assemble_table(self.carrier.clone(), mul, local_mul, None) else {
            return;
        };
        if !verify_lcr(&rng).all_hold() {
            return;
        }
        let (key, sigma) = canonical_key(&rng, &self.automorphisms);
        if self.found.contains_key(&key) {
            return;
        }
        let canonical = transport(&rng, &sigma);
        self.found.insert(key, canonical);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The bilinear product on `sub` with `gens[i]·gens[j] = products[i][j]`
/// (elements of `sub`), or `None` if no such bilinear map exists.
fn bilinear_table(sub: &FiniteCarrier, gens: &[Elem], products: &[Vec<Elem>]) -> Option<Vec<Elem>> {
    let h = sub.order();
    // row maps: y ↦ gens[i]·y
    let rows: Vec<Vec<Elem>> = products
        .iter()
        .map(|images| sub.extend_additive(gens, images, sub).map(|m| m.into_iter().map(Option::unwrap).collect()))
        .collect::<Option<_>>()?;
    let mut table = vec![0; h * h];
    for y in 0..h {
        let images: Vec<Elem> = rows.iter().map(|r| r[y]).collect();
        let column = sub.extend_additive(gens, &images, sub)?;
        for x in 0..h {
            table[x * h + y] = column[x].unwrap();
        }
    }
    Some(table)
}

/// Additive automorphisms of a cyclic-factor carrier, as permutations.
fn automorphisms(carrier: &FiniteCarrier, basis: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(basis.len());
    fn go(carrier: &FiniteCarrier, basis: &[Elem], images: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if images.len() == basis.len() {
            if let Some(map) = carrier.extend_additive(basis, images, carrier) {
                let perm: Vec<Elem> = map.into_iter().map(Option::unwrap).collect();
                let mut seen = vec![false; perm.len()];
                if perm.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                    out.push(perm);
                }
            }
            return;
        }
        for y in carrier.elements() {
            images.push(y);
            go(carrier, basis, images, out);
            images.pop();
        }
    }
    go(carrier, basis, &mut images, &mut out);
    out
}

/// `x ♯ y` on the whole carrier, with `order` marking pairs outside the halo.
fn full_local_table(rng: &LcrTable) -> Vec<Elem> {
    let n = rng.order();
    (0..n * n).map(|i| rng.local_mul(i / n, i % n).unwrap_or(n)).collect()
}

fn transported_tables(rng: &LcrTable, sigma: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let n = rng.order();
    let local = full_local_table(rng);
    let mut mul = vec![0; n * n];
    let mut sharp = vec![n; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[sigma[x] * n + sigma[y]] = sigma[rng.mul(x, y)];
            let s = local[x * n + y];
            if s < n {
                sharp[sigma[x] * n + sigma[y]] = sigma[s];
            }
        }
    }
    (mul, sharp)
}

fn canonical_key(rng: &LcrTable, automorphisms: &[Vec<Elem>]) -> ((Vec<Elem>, Vec<Elem>), Vec<Elem>) {
    automorphisms
        .iter()
        .map(|sigma| (transported_tables(rng, sigma), sigma.clone()))
        .min()
        .expect("the identity is an automorphism")
}

fn transport(rng: &LcrTable, sigma: &[Elem]) -> LcrTable {
    let n = rng.order();
    let (mul, sharp) = transported_tables(rng, sigma);
    let halo = LcrTable::candidate_halo(rng.carrier(), &mul).expect("transport keeps bar-units");
    let local_mul: Vec<Elem> = halo.iter().flat_map(|&a| halo.iter().map(move |&b| (a, b))).map(|(a, b)| sharp[a * n + b]).collect();
    LcrTable::assemble_table(rng.carrier().clone(), mul, local_mul, Some(sigma[rng.local_identity()]))
        .expect("transport of a valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ideal::halo_ideal;
    use crate::morphism::find_isomorphism;
    use crate::quotient::quotient;

    #[test]
    fn halo_extensions_match_fixtures() {
        let z2 = CommutativeRingTable::cyclic(2).unwrap();
        let r4 = halo_extension(&z2, &z2, &RingHom::identity(&z2)).unwrap();
        // (a,α)(b,β) = (ab, aβ): rows of (0,·) vanish, rows of (1,·) copy the column
        assert_eq!(r4.mul_table(), &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 0, 1, 2, 3]);
        assert_eq!(r4.halo(), &[0, 1]);
        assert_eq!(r4.local_identity(), 1);
        assert_eq!(r4.bar_units().len(), 2);
        let z4 = CommutativeRingTable::cyclic(4).unwrap();
        let r8 = halo_extension(&z4, &z2, &RingHom::reduce(&z4, &z2).unwrap()).unwrap();
        assert_eq!(r8.order(), 8);
        assert_eq!(r8.halo().len(), 2);
    }

    #[test]
    fn zero_halo_extension_is_the_ring() {
        let z6 = CommutativeRingTable::cyclic(6).unwrap();
        let z1 = CommutativeRingTable::cyclic(1).unwrap();
        let r = halo_extension(&z6, &z1, &RingHom::zero(&z6, &z1)).unwrap();
        assert_eq!(r.halo(), &[0]);
        assert!(find_isomorphism(&r, &z6.to_lcr()).is_some());
    }

    #[test]
    fn non_unital_psi_rejected() {
        let z2 = CommutativeRingTable::cyclic(2).unwrap();
        assert!(halo_extension(&z2, &z2, &RingHom::zero(&z2, &z2)).is_err());
    }

    #[test]
    fn quotient_by_halo_recovers_base_ring() {
        let z4 = CommutativeRingTable::cyclic(4).unwrap();
        let z2 = CommutativeRingTable::cyclic(2).unwrap();
        let r8 = halo_extension(&z4, &z2, &RingHom::reduce(&z4, &z2).unwrap()).unwrap();
        let (q, _) = quotient(&r8, &halo_ideal(&r8)).unwrap();
        assert!(find_isomorphism(&q, &z4.to_lcr()).is_some());
    }

    #[test]
    fn abelian_group_lists() {
        assert_eq!(abelian_groups(1), vec![vec![1]]);
        assert_eq!(abelian_groups(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(abelian_groups(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(abelian_groups(6), vec![vec![6]]);
    }

    #[test]
    fn search_small_carriers() {
        let one = small_rng_search(&FiniteCarrier::cyclic(&[1]).unwrap(), usize::MAX).unwrap();
        assert_eq!(one.len(), 1);
        let two = small_rng_search(&FiniteCarrier::cyclic(&[2]).unwrap(), usize::MAX).unwrap();
        assert_eq!(two.len(), 1);
        assert!(find_isomorphism(&two[0], &corpus::zn(2)).is_some());
        let klein = small_rng_search(&FiniteCarrier::cyclic(&[2, 2]).unwrap(), usize::MAX).unwrap();
        assert!(klein.iter().any(|r| find_isomorphism(r, &corpus::r4()).is_some()));
        for r in &klein {
            assert!(verify_lcr(r).all_hold());
        }
    }

    #[test]
    fn search_respects_bounds() {
        let big = FiniteCarrier::cyclic(&[3, 3]).unwrap();
        assert_eq!(small_rng_search(&big, 1), Err(LcrError::OrderTooLarge { order: 9, bound: 8 }));
        let klein = FiniteCarrier::cyclic(&[2, 2]).unwrap();
        assert_eq!(small_rng_search(&klein, 1).unwrap().len(), 1);
    }
}
