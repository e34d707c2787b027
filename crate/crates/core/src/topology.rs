//! Finite topological spaces given by their closed sets, continuous point
//! maps, and the expanded Zariski topology on the Hu-Liu spectrum.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{LcrError, Result};
use crate::ideal::{enumerate_ideals, IdealSet};
use crate::prime::{spectrum, Spectrum};
use crate::rng::LcrTable;
use crate::ring::CommutativeRingTable;

/// A sorted set of point indices.
pub type PointSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteTopology {
    points: usize,
    /// Deduplicated, sorted by size then lexicographically.
    closed: Vec<PointSet>,
}

/// A failed topology axiom: the offending closed sets and the missing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyViolation {
    pub rule: &'static str,
    pub sets: Vec<PointSet>,
    pub missing: PointSet,
}

impl FiniteTopology {
    /// Family of closed sets as given (deduplicated). Use
    /// [`FiniteTopology::check_axioms`] to confirm it is a topology.
    pub fn new(points: usize, closed: impl IntoIterator<Item = PointSet>) -> Self {
        let set: BTreeSet<PointSet> = closed
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        let mut closed: Vec<PointSet> = set.into_iter().collect();
        closed.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        FiniteTopology { points, closed }
    }

    pub fn discrete(points: usize) -> Self {
        Self::new(points, (0..1usize << points).map(|bits| (0..points).filter(|i| bits >> i & 1 == 1).collect()))
    }

    pub fn indiscrete(points: usize) -> Self {
        Self::new(points, [vec![], (0..points).collect()])
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn all_points(&self) -> PointSet {
        (0..self.points).collect()
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed
    }

    /// Complements of the closed sets, in the same canonical order.
    pub fn open_sets(&self) -> Vec<PointSet> {
        let mut open: Vec<PointSet> = self.closed.iter().map(|c| complement(self.points, c)).collect();
        open.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        open
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        self.closed.binary_search_by(|c| c.len().cmp(&set.len()).then_with(|| c.as_slice().cmp(set))).is_ok()
    }

    pub fn is_open(&self, set: &[usize]) -> bool {
        self.is_closed(&complement(self.points, set))
    }

    /// `∅` and the whole space closed; closed under pairwise unions and
    /// intersections (which suffices for a finite family).
    pub fn check_axioms(&self) -> std::result::Result<(), TopologyViolation> {
        if !self.is_closed(&[]) {
            return Err(TopologyViolation { rule: "empty set closed", sets: vec![], missing: vec![] });
        }
        let all = self.all_points();
        if !self.is_closed(&all) {
            return Err(TopologyViolation { rule: "whole space closed", sets: vec![], missing: all });
        }
        for a in &self.closed {
            for b in &self.closed {
                let u = union(a, b);
                if !self.is_closed(&u) {
                    return Err(TopologyViolation { rule: "finite unions", sets: vec![a.clone(), b.clone()], missing: u });
                }
                let i = intersection(a, b);
                if !self.is_closed(&i) {
                    return Err(TopologyViolation { rule: "intersections", sets: vec![a.clone(), b.clone()], missing: i });
                }
            }
        }
        Ok(())
    }

    /// Subspace topology on `subset` (sorted); points are re-indexed by
    /// position in `subset`.
    pub fn subspace(&self, subset: &[usize]) -> FiniteTopology {
        let closed = self.closed.iter().map(|c| {
            subset.iter().enumerate().filter(|(_, p)| c.binary_search(p).is_ok()).map(|(i, _)| i).collect()
        });
        FiniteTopology::new(subset.len(), closed)
    }

    /// Final topology along the surjection `class_of: point ↦ class`: a set of
    /// classes is closed iff the union of its classes is closed.
    pub fn quotient(&self, class_of: &[usize], classes: usize) -> FiniteTopology {
        assert_eq!(class_of.len(), self.points);
        let closed = (0..1usize << classes).filter_map(|bits| {
            let chosen: PointSet = (0..classes).filter(|c| bits >> c & 1 == 1).collect();
            let preimage: PointSet = (0..self.points).filter(|&p| bits >> class_of[p] & 1 == 1).collect();
            self.is_closed(&preimage).then_some(chosen)
        });
        FiniteTopology::new(classes, closed)
    }

    /// Closure of a single point.
    pub fn closure_of_point(&self, p: usize) -> PointSet {
        self.closed
            .iter()
            .filter(|c| c.binary_search(&p).is_ok())
            .fold(self.all_points(), |acc, c| intersection(&acc, c))
    }
}

pub fn complement(points: usize, set: &[usize]) -> PointSet {
    (0..points).filter(|p| set.binary_search(p).is_err()).collect()
}

pub fn union(a: &[usize], b: &[usize]) -> PointSet {
    let mut out: PointSet = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn intersection(a: &[usize], b: &[usize]) -> PointSet {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// A total map between the point sets of two finite spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMap {
    pub domain: FiniteTopology,
    pub codomain: FiniteTopology,
    pub image: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: FiniteTopology, codomain: FiniteTopology, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.points() {
            return Err(LcrError::Mismatch(format!(
                "point map has {} images for {} domain points",
                image.len(),
                domain.points()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&q| q >= codomain.points()) {
            return Err(LcrError::OutOfRange(bad, codomain.points()));
        }
        Ok(PointMap { domain, codomain, image })
    }

    pub fn preimage(&self, set: &[usize]) -> PointSet {
        (0..self.domain.points()).filter(|&p| set.binary_search(&self.image[p]).is_ok()).collect()
    }

    pub fn direct_image(&self, set: &[usize]) -> PointSet {
        let mut out: PointSet = set.iter().map(|&p| self.image[p]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// A codomain closed set whose preimage is not closed, if any.
    pub fn continuity_witness(&self) -> Option<PointSet> {
        self.codomain.closed_sets().iter().find(|c| !self.domain.is_closed(&self.preimage(c))).cloned()
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity_witness().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.codomain.points()];
        self.image.len() == self.codomain.points() && self.image.iter().all(|&q| !std::mem::replace(&mut seen[q], true))
    }

    /// Bijective, continuous, and closed (so the inverse is continuous).
    pub fn is_homeomorphism(&self) -> bool {
        self.is_bijective()
            && self.is_continuous()
            && self.domain.closed_sets().iter().all(|c| self.codomain.is_closed(&self.direct_image(c)))
    }

    pub fn compose(&self, after: &PointMap) -> Result<PointMap> {
        if self.codomain.points() != after.domain.points() {
            return Err(LcrError::Mismatch("point maps are not composable".into()));
        }
        PointMap::new(
            self.domain.clone(),
            after.codomain.clone(),
            self.image.iter().map(|&q| after.image[q]).collect(),
        )
    }
}

/// `V(I)`: indices of the primes containing `I`, against `points`.
pub fn vanishing_in(points: &[IdealSet], ideal: &IdealSet) -> PointSet {
    points.iter().enumerate().filter(|(_, p)| p.contains_ideal(ideal)).map(|(i, _)| i).collect()
}

/// `V(I) = { P ∈ spec♯R : P ⊇ I }` as indices into [`Spectrum::points`].
pub fn vanishing(rng: &LcrTable, ideal: &IdealSet) -> Result<PointSet> {
    ideal.check_owner(rng)?;
    Ok(vanishing_in(&spectrum(rng).points(), ideal))
}

/// The spectrum together with its expanded Zariski topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSpace {
    pub spectrum: Spectrum,
    /// All primes in canonical order; topology points index into this.
    pub points: Vec<IdealSet>,
    pub ideals: Vec<IdealSet>,
    pub topology: FiniteTopology,
}

impl SpectralSpace {
    pub fn of(rng: &LcrTable) -> Self {
        let spectrum = spectrum(rng);
        let points = spectrum.points();
        let ideals = enumerate_ideals(rng);
        let topology = FiniteTopology::new(points.len(), ideals.iter().map(|i| vanishing_in(&points, i)));
        SpectralSpace { spectrum, points, ideals, topology }
    }

    pub fn index_of(&self, prime: &IdealSet) -> Option<usize> {
        self.points.iter().position(|p| p.members() == prime.members())
    }

    pub fn even_points(&self) -> PointSet {
        (0..self.points.len()).filter(|&i| self.points[i].is_even()).collect()
    }

    pub fn odd_points(&self) -> PointSet {
        (0..self.points.len()).filter(|&i| !self.points[i].is_even()).collect()
    }

    /// Covering pairs `(P, Q)` of the specialization order: `Q ⊋ P` with no
    /// prime strictly between.
    pub fn specialization_covers(&self) -> Vec<(usize, usize)> {
        let n = self.points.len();
        let above = |p: usize, q: usize| p != q && self.points[q].contains_ideal(&self.points[p]);
        let mut covers = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if above(p, q) && !(0..n).any(|m| above(p, m) && above(m, q)) {
                    covers.push((p, q));
                }
            }
        }
        covers
    }
}

/// The expanded Zariski topology on `spec♯R`.
pub fn zariski(rng: &LcrTable) -> FiniteTopology {
    SpectralSpace::of(rng).topology
}

/// Subspace topologies on the even and odd spectrum. Errors if the even part
/// is not closed or the odd part not open.
pub fn even_odd_subspaces(rng: &LcrTable) -> Result<(FiniteTopology, FiniteTopology)> {
    let space = SpectralSpace::of(rng);
    let even = space.even_points();
    let odd = space.odd_points();
    if !space.topology.is_closed(&even) {
        return Err(LcrError::InvariantViolation(format!("even spectrum {even:?} is not closed")));
    }
    if !space.topology.is_open(&odd) {
        return Err(LcrError::InvariantViolation(format!("odd spectrum {odd:?} is not open")));
    }
    Ok((space.topology.subspace(&even), space.topology.subspace(&odd)))
}

/// `spec♯₁R / ∼` where `P ∼ Q ⇔ P∩ℏ⁺(R) = Q∩ℏ⁺(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddQuotient {
    /// Each class as indices into the odd subspace (positions in
    /// [`SpectralSpace::odd_points`]).
    pub classes: Vec<Vec<usize>>,
    /// The shared halo intersection of each class.
    pub keys: Vec<Vec<usize>>,
    pub odd_subspace: FiniteTopology,
    pub topology: FiniteTopology,
}

pub fn odd_quotient(rng: &LcrTable) -> OddQuotient {
    odd_quotient_of(&SpectralSpace::of(rng))
}

pub fn odd_quotient_of(space: &SpectralSpace) -> OddQuotient {
    let odd = space.odd_points();
    let odd_subspace = space.topology.subspace(&odd);
    let mut keys: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(odd.len());
    for &p in &odd {
        let key = space.points[p].odd_part().to_vec();
        let c = match keys.iter().position(|k| *k == key) {
            Some(c) => c,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        class_of.push(c);
    }
    let classes = (0..keys.len()).map(|c| (0..odd.len()).filter(|&i| class_of[i] == c).collect()).collect();
    let topology = odd_subspace.quotient(&class_of, keys.len());
    OddQuotient { classes, keys, odd_subspace, topology }
}

/// `φ₀ : spec(R/ℏ⁺(R)) → spec♯₀R`, `P/ℏ⁺ ↦ P`, checked to be a homeomorphism
/// onto the even subspace. The codomain is the even subspace, indexed by
/// position in [`SpectralSpace::even_points`].
pub fn phi0(rng: &LcrTable) -> Result<PointMap> {
    phi0_of(rng, &SpectralSpace::of(rng))
}

pub fn phi0_of(rng: &LcrTable, space: &SpectralSpace) -> Result<PointMap> {
    let (quotient, projection) = crate::quotient::quotient(rng, &crate::ideal::halo_ideal(rng))?;
    let ring = CommutativeRingTable::from_zero_halo(&quotient)?;
    let even = space.even_points();
    let mut image = Vec::new();
    for prime in ring.spectrum() {
        let preimage: Vec<usize> =
            rng.elements().filter(|&x| prime.binary_search(&projection.image()[x]).is_ok()).collect();
        let target = space
            .points
            .iter()
            .position(|p| p.members() == preimage.as_slice())
            .and_then(|i| even.iter().position(|&e| e == i))
            .ok_or_else(|| {
                LcrError::InvariantViolation(format!("preimage {preimage:?} of a prime of R/ℏ⁺ is not an even prime"))
            })?;
        image.push(target);
    }
    let map = PointMap::new(ring.zariski(), space.topology.subspace(&even), image)?;
    if !map.is_homeomorphism() {
        return Err(LcrError::InvariantViolation(format!("φ₀ is not a homeomorphism: {:?}", map.image)));
    }
    Ok(map)
}

/// `φ₁ : spec♯₁R/∼ → spec(ℏ⁺(R), +, ♯)`, `[P] ↦ P∩ℏ⁺(R)`, checked to be a
/// homeomorphism onto its image (with the subspace topology). The codomain
/// points are positions in the image list, which is ordered like the classical
/// spectrum of the local ring.
pub fn phi1(rng: &LcrTable) -> Result<PointMap> {
    phi1_of(rng, &SpectralSpace::of(rng))
}

pub fn phi1_of(rng: &LcrTable, space: &SpectralSpace) -> Result<PointMap> {
    let quotient = odd_quotient_of(space);
    let (local, embedding) = CommutativeRingTable::local_ring(rng)?;
    let local_primes = local.spectrum();
    let mut hits = Vec::new();
    for key in &quotient.keys {
        let positions: Vec<usize> = key.iter().map(|&x| embedding.binary_search(&x).unwrap()).collect();
        let idx = local_primes.iter().position(|q| *q == positions).ok_or_else(|| {
            LcrError::InvariantViolation(format!("halo part {key:?} of an odd prime is not a prime of the local ring"))
        })?;
        hits.push(idx);
    }
    let mut subset = hits.clone();
    subset.sort_unstable();
    subset.dedup();
    let image = hits.iter().map(|h| subset.binary_search(h).unwrap()).collect();
    let map = PointMap::new(quotient.topology.clone(), local.zariski().subspace(&subset), image)?;
    if !map.is_homeomorphism() {
        return Err(LcrError::InvariantViolation(format!("φ₁ is not a homeomorphism: {:?}", map.image)));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ideal::{halo_ideal, unit_ideal, zero_ideal};

    #[test]
    fn vanishing_of_zero_and_unit() {
        for rng in [corpus::r4(), corpus::r8(), corpus::zn(6), corpus::zn(1)] {
            let n = spectrum(&rng).len();
            assert_eq!(vanishing(&rng, &zero_ideal(&rng)).unwrap(), (0..n).collect::<Vec<_>>());
            assert!(vanishing(&rng, &unit_ideal(&rng)).unwrap().is_empty());
        }
    }

    #[test]
    fn r4_and_r8_topologies() {
        for rng in [corpus::r4(), corpus::r8()] {
            let space = SpectralSpace::of(&rng);
            // points: odd prime first (smaller ideal), then the even prime
            assert_eq!(space.points.len(), 2);
            let even = space.even_points();
            assert_eq!(even.len(), 1);
            assert_eq!(space.topology.closed_sets(), &[vec![], even.clone(), vec![0, 1]]);
            space.topology.check_axioms().unwrap();
        }
        let r8 = corpus::r8();
        let v = vanishing(&r8, &halo_ideal(&r8)).unwrap();
        let space = SpectralSpace::of(&r8);
        assert_eq!(v, space.even_points());
    }

    #[test]
    fn trivial_rng_topology() {
        let t = zariski(&corpus::zn(1));
        assert_eq!(t.points(), 0);
        assert_eq!(t.closed_sets(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn even_odd_subspaces_of_fixtures() {
        let (even, odd) = even_odd_subspaces(&corpus::r4()).unwrap();
        assert_eq!((even.points(), odd.points()), (1, 1));
        let (even, odd) = even_odd_subspaces(&corpus::zn(6)).unwrap();
        assert_eq!((even.points(), odd.points()), (2, 0));
    }

    #[test]
    fn odd_quotient_classes() {
        assert_eq!(odd_quotient(&corpus::r4()).classes, vec![vec![0]]);
        assert_eq!(odd_quotient(&corpus::r8()).classes, vec![vec![0]]);
        let q = odd_quotient(&corpus::diagonal_extension());
        assert_eq!(q.classes.len(), 2);
        // keys are 0×Z2 and Z2×0 inside the halo
        let rng = corpus::diagonal_extension();
        let mut keys: Vec<Vec<String>> =
            q.keys.iter().map(|k| k.iter().map(|&x| rng.render(x)).collect()).collect();
        keys.sort();
        assert_eq!(keys, vec![vec!["(0,0,0)", "(0,0,1)"], vec!["(0,0,0)", "(0,1,0)"]]);
    }

    #[test]
    fn phi_maps_are_homeomorphisms() {
        for rng in [corpus::r4(), corpus::r8(), corpus::zn(6), corpus::diagonal_extension()] {
            let p0 = phi0(&rng).unwrap();
            assert!(p0.is_homeomorphism());
            let p1 = phi1(&rng).unwrap();
            assert!(p1.is_homeomorphism());
        }
        assert_eq!(phi1(&corpus::diagonal_extension()).unwrap().image.len(), 2);
        assert_eq!(phi0(&corpus::zn(6)).unwrap().image, vec![0, 1]);
    }

    #[test]
    fn continuity_examples() {
        let t = zariski(&corpus::r4());
        let id = PointMap::new(t.clone(), t.clone(), vec![0, 1]).unwrap();
        assert!(id.is_continuous());
        let swap = PointMap::new(t.clone(), t.clone(), vec![1, 0]).unwrap();
        assert!(!swap.is_continuous());
        let constant = PointMap::new(FiniteTopology::discrete(2), t, vec![1, 1]).unwrap();
        assert!(constant.is_continuous());
    }

    #[test]
    fn quotient_topology_merges_points() {
        // Sierpinski space collapsed to a point is indiscrete
        let s = FiniteTopology::new(2, [vec![], vec![1], vec![0, 1]]);
        let q = s.quotient(&[0, 0], 1);
        assert_eq!(q, FiniteTopology::indiscrete(1));
    }
}
