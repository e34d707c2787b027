//! Homomorphisms of left commutative rngs and the spectrum pullback.
//!
//! A homomorphism `f: R → S` is additive and multiplicative, sends some
//! bar-unit to a bar-unit, is `♯`-multiplicative on the halo and maps `1♯`
//! to `1♯`. Its pullback `f♯: spec♯S → spec♯R` is `P ↦ f⁻¹(P)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::Elem;
use crate::error::{LcrError, Result};
use crate::ideal::{halo_ideal, ideal_generated, ideal_sum, IdealSet};
use crate::prime::is_hu_liu_prime;
use crate::quotient::{quotient, QuotientMap};
use crate::ring::{CommutativeRingTable, RingHom};
use crate::rng::LcrTable;
use crate::topology::{vanishing_in, PointMap, SpectralSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngHom {
    domain: Arc<LcrTable>,
    codomain: Arc<LcrTable>,
    image: Vec<Elem>,
}

/// The defining laws of a homomorphism, plus the halo consequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomLaw {
    /// `f(x+y) = f(x)+f(y)`; witness `[x, y]`
    Additive,
    /// `f(xy) = f(x)f(y)`; witness `[x, y]`
    Multiplicative,
    /// some bar-unit maps to a bar-unit; witness `[]`
    BarUnit,
    /// `f(ℏ⁺(R)) ⊆ ℏ⁺(S)`; witness `[α]`
    HaloImage,
    /// `f(α♯β) = f(α)♯f(β)`; witness `[α, β]`
    LocalMultiplicative,
    /// `f(1♯) = 1♯`; witness `[1♯]`
    LocalIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomViolation {
    pub law: HomLaw,
    pub elements: Vec<Elem>,
}

impl HomLaw {
    pub fn name(self) -> &'static str {
        match self {
            HomLaw::Additive => "additive",
            HomLaw::Multiplicative => "multiplicative",
            HomLaw::BarUnit => "bar_unit",
            HomLaw::HaloImage => "halo_image",
            HomLaw::LocalMultiplicative => "local_multiplicative",
            HomLaw::LocalIdentity => "local_identity",
        }
    }

    /// Re-evaluates the law on a witness; `true` means the failure reproduces.
    pub fn is_violated_by(self, f: &RngHom, w: &[Elem]) -> bool {
        let (r, s) = (f.domain(), f.codomain());
        if w.iter().any(|&x| x >= r.order()) {
            return false;
        }
        let img = |x: Elem| f.apply(x);
        match (self, w) {
            (HomLaw::Additive, &[x, y]) => img(r.add(x, y)) != s.add(img(x), img(y)),
            (HomLaw::Multiplicative, &[x, y]) => img(r.mul(x, y)) != s.mul(img(x), img(y)),
            (HomLaw::BarUnit, &[]) => !r.bar_units().iter().any(|&b| s.is_bar_unit(img(b))),
            (HomLaw::HaloImage, &[a]) => r.in_halo(a) && !s.in_halo(img(a)),
            (HomLaw::LocalMultiplicative, &[a, b]) => match r.local_mul(a, b) {
                Some(ab) => Some(img(ab)) != s.local_mul(img(a), img(b)),
                None => false,
            },
            (HomLaw::LocalIdentity, &[one]) => one == r.local_identity() && img(one) != s.local_identity(),
            _ => false,
        }
    }
}

impl HomViolation {
    pub fn replays(&self, f: &RngHom) -> bool {
        self.law.is_violated_by(f, &self.elements)
    }
}

impl RngHom {
    /// A candidate map; only totality and ranges are checked here.
    pub fn new(domain: Arc<LcrTable>, codomain: Arc<LcrTable>, image: Vec<Elem>) -> Result<Self> {
        if image.len() != domain.order() {
            return Err(LcrError::Mismatch(format!(
                "image table has {} entries for a domain of order {}",
                image.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= codomain.order()) {
            return Err(LcrError::OutOfRange(bad, codomain.order()));
        }
        Ok(RngHom { domain, codomain, image })
    }

    /// As [`RngHom::new`], additionally requiring every law to hold.
    pub fn verified(domain: Arc<LcrTable>, codomain: Arc<LcrTable>, image: Vec<Elem>) -> Result<Self> {
        let f = Self::new(domain, codomain, image)?;
        if let Err(v) = f.verify_hom() {
            return Err(LcrError::NotRingHom(format!("{} fails at {:?}", v.law.name(), v.elements)));
        }
        Ok(f)
    }

    pub fn identity(rng: Arc<LcrTable>) -> Self {
        let image = rng.elements().collect();
        RngHom { domain: rng.clone(), codomain: rng, image }
    }

    pub fn domain(&self) -> &Arc<LcrTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<LcrTable> {
        &self.codomain
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    /// Checks every law exhaustively; the witness cites the first failure in
    /// the order additive, multiplicative, bar-unit, halo image, local
    /// product, local identity.
    pub fn verify_hom(&self) -> std::result::Result<(), HomViolation> {
        let r = &*self.domain;
        let fail = |law, elements| Err(HomViolation { law, elements });
        for x in r.elements() {
            for y in r.elements() {
                if HomLaw::Additive.is_violated_by(self, &[x, y]) {
                    return fail(HomLaw::Additive, vec![x, y]);
                }
            }
        }
        for x in r.elements() {
            for y in r.elements() {
                if HomLaw::Multiplicative.is_violated_by(self, &[x, y]) {
                    return fail(HomLaw::Multiplicative, vec![x, y]);
                }
            }
        }
        if HomLaw::BarUnit.is_violated_by(self, &[]) {
            return fail(HomLaw::BarUnit, vec![]);
        }
        for &a in r.halo() {
            if HomLaw::HaloImage.is_violated_by(self, &[a]) {
                return fail(HomLaw::HaloImage, vec![a]);
            }
        }
        for &a in r.halo() {
            for &b in r.halo() {
                if HomLaw::LocalMultiplicative.is_violated_by(self, &[a, b]) {
                    return fail(HomLaw::LocalMultiplicative, vec![a, b]);
                }
            }
        }
        if HomLaw::LocalIdentity.is_violated_by(self, &[r.local_identity()]) {
            return fail(HomLaw::LocalIdentity, vec![r.local_identity()]);
        }
        Ok(())
    }

    pub fn is_hom(&self) -> bool {
        self.verify_hom().is_ok()
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &RngHom) -> Result<RngHom> {
        if *self.codomain != *after.domain {
            return Err(LcrError::Mismatch("homomorphisms are not composable".into()));
        }
        Ok(RngHom {
            domain: self.domain.clone(),
            codomain: after.codomain.clone(),
            image: self.image.iter().map(|&y| after.apply(y)).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.codomain.order()];
        self.image.len() == self.codomain.order() && self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// A domain bar-unit whose image is a bar-unit (smallest such).
    pub fn unital_bar_unit(&self) -> Option<Elem> {
        self.domain.bar_units().iter().copied().find(|&b| self.codomain.is_bar_unit(self.apply(b)))
    }

    /// `f⁻¹(P)` as a sorted element list.
    pub fn preimage(&self, members: &[Elem]) -> Vec<Elem> {
        self.domain.elements().filter(|&x| members.binary_search(&self.apply(x)).is_ok()).collect()
    }

    /// `{ f(x) : x ∈ I }`, sorted.
    pub fn direct_image(&self, members: &[Elem]) -> Vec<Elem> {
        let mut out: Vec<Elem> = members.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// The projection `R → R/I` as a homomorphism.
pub fn projection(rng: &Arc<LcrTable>, ideal: &IdealSet) -> Result<(RngHom, QuotientMap)> {
    let (q, map) = quotient(rng, ideal)?;
    let f = RngHom::verified(rng.clone(), Arc::new(q), map.image().to_vec())
        .map_err(|e| LcrError::InvariantViolation(format!("projection is not a homomorphism: {e}")))?;
    Ok((f, map))
}

/// Every homomorphism `R → S`, ordered by image table.
///
/// Backtracks over images of an additive generating set of `R`. Each partial
/// assignment is extended additively to the subgroup it spans and rejected as
/// soon as a product or local product inside that subgroup is violated.
pub fn enumerate_homs(r: &Arc<LcrTable>, s: &Arc<LcrTable>) -> Vec<RngHom> {
    let gens = r.carrier().generating_set();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search_homs(r, s, &gens, &mut images, &mut found);
    found.sort_by(|a: &RngHom, b| a.image.cmp(&b.image));
    found
}

fn search_homs(
    r: &Arc<LcrTable>,
    s: &Arc<LcrTable>,
    gens: &[Elem],
    images: &mut Vec<Elem>,
    found: &mut Vec<RngHom>,
) {
    let k = images.len();
    let Some(partial) = r.carrier().extend_additive(&gens[..k], images, s.carrier()) else {
        return;
    };
    if !partial_consistent(r, s, &partial) {
        return;
    }
    if k == gens.len() {
        let image: Vec<Elem> = partial.into_iter().map(|y| y.expect("generators span the carrier")).collect();
        let f = RngHom { domain: r.clone(), codomain: s.clone(), image };
        if f.is_hom() {
            found.push(f);
        }
        return;
    }
    for y in s.elements() {
        images.push(y);
        search_homs(r, s, gens, images, found);
        images.pop();
    }
}

fn partial_consistent(r: &LcrTable, s: &LcrTable, map: &[Option<Elem>]) -> bool {
    let defined: Vec<Elem> = r.elements().filter(|&x| map[x].is_some()).collect();
    for &x in &defined {
        for &y in &defined {
            if let Some(fxy) = map[r.mul(x, y)] {
                if fxy != s.mul(map[x].unwrap(), map[y].unwrap()) {
                    return false;
                }
            }
        }
    }
    for &a in r.halo().iter().filter(|&&a| map[a].is_some()) {
        let fa = map[a].unwrap();
        if !s.in_halo(fa) {
            return false;
        }
        for &b in r.halo().iter().filter(|&&b| map[b].is_some()) {
            if let Some(fab) = map[r.sharp(a, b)] {
                if s.local_mul(fa, map[b].unwrap()) != Some(fab) {
                    return false;
                }
            }
        }
    }
    true
}

/// A bijective homomorphism `R → S`, if one exists.
pub fn find_isomorphism(r: &LcrTable, s: &LcrTable) -> Option<RngHom> {
    if r.order() != s.order() || r.halo().len() != s.halo().len() || r.bar_units().len() != s.bar_units().len() {
        return None;
    }
    let (r, s) = (Arc::new(r.clone()), Arc::new(s.clone()));
    enumerate_homs(&r, &s).into_iter().find(RngHom::is_bijective)
}

/// `f̄: R/ℏ⁺(R) → S/ℏ⁺(S)`, together with both projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedQuotientHom {
    pub domain: CommutativeRingTable,
    pub codomain: CommutativeRingTable,
    pub hom: RingHom,
    pub domain_projection: QuotientMap,
    pub codomain_projection: QuotientMap,
}

/// `f̄(x + ℏ⁺(R)) = f(x) + ℏ⁺(S)`, checked over every representative.
pub fn induced_quotient_hom(f: &RngHom) -> Result<InducedQuotientHom> {
    let (r, s) = (f.domain(), f.codomain());
    let (rq, rmap) = quotient(r, &halo_ideal(r))?;
    let (sq, smap) = quotient(s, &halo_ideal(s))?;
    let domain = CommutativeRingTable::from_zero_halo(&rq)?;
    let codomain = CommutativeRingTable::from_zero_halo(&sq)?;
    let mut image = vec![usize::MAX; domain.order()];
    for x in r.elements() {
        let c = rmap.class_of(x);
        let target = smap.class_of(f.apply(x));
        if image[c] == usize::MAX {
            image[c] = target;
        } else if image[c] != target {
            return Err(LcrError::InvariantViolation(format!(
                "induced map depends on the representative {} of its class",
                r.render(x)
            )));
        }
    }
    let hom = RingHom { image };
    hom.verify(&domain, &codomain)
        .map_err(|e| LcrError::InvariantViolation(format!("induced map is not a ring homomorphism: {e}")))?;
    Ok(InducedQuotientHom { domain, codomain, hom, domain_projection: rmap, codomain_projection: smap })
}

/// `f♯: spec♯S → spec♯R`, checked to send primes to primes of the same
/// parity and to be continuous.
pub fn pullback(f: &RngHom) -> Result<PointMap> {
    pullback_between(f, &SpectralSpace::of(f.codomain()), &SpectralSpace::of(f.domain()))
}

/// As [`pullback`], with the spectral spaces of `S` and `R` supplied.
pub fn pullback_between(f: &RngHom, s_space: &SpectralSpace, r_space: &SpectralSpace) -> Result<PointMap> {
    let r = f.domain();
    let mut image = Vec::with_capacity(s_space.points.len());
    for p in &s_space.points {
        let pre = IdealSet::new(r, f.preimage(p.members())).map_err(|_| {
            LcrError::InvariantViolation(format!("preimage of the prime {:?} is not an ideal", p.members()))
        })?;
        if pre.len() == r.order() || !is_hu_liu_prime(r, &pre)? {
            return Err(LcrError::InvariantViolation(format!(
                "preimage {:?} of the prime {:?} is not a Hu-Liu prime",
                pre.members(),
                p.members()
            )));
        }
        if pre.is_even() != p.is_even() {
            return Err(LcrError::InvariantViolation(format!(
                "preimage {:?} of the prime {:?} changes parity",
                pre.members(),
                p.members()
            )));
        }
        let idx = r_space
            .index_of(&pre)
            .ok_or_else(|| LcrError::InvariantViolation(format!("preimage {:?} missing from spec♯R", pre.members())))?;
        image.push(idx);
    }
    let map = PointMap::new(s_space.topology.clone(), r_space.topology.clone(), image)?;
    if let Some(closed) = map.continuity_witness() {
        return Err(LcrError::InvariantViolation(format!(
            "pullback is not continuous: preimage of the closed set {closed:?} is not closed"
        )));
    }
    for (s_part, r_part) in [(s_space.even_points(), r_space.even_points()), (s_space.odd_points(), r_space.odd_points())] {
        let restricted: Vec<usize> = s_part
            .iter()
            .map(|&p| r_part.binary_search(&map.image[p]).expect("parity checked above"))
            .collect();
        let piece = PointMap::new(
            s_space.topology.subspace(&s_part),
            r_space.topology.subspace(&r_part),
            restricted,
        )?;
        if let Some(closed) = piece.continuity_witness() {
            return Err(LcrError::InvariantViolation(format!(
                "restriction of the pullback to one parity is not continuous at {closed:?}"
            )));
        }
    }
    Ok(map)
}

/// Two sides of a set identity; `holds` iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetIdentity {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

impl SetIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The two identities behind continuity of the pullback for one ideal `I`
/// of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackIdentities {
    /// `(f♯)⁻¹(V(I)) = V(<f(I)>)`, as indices into `spec♯S`.
    pub vanishing: SetIdentity,
    /// `<f(I + ℏ⁺(R))> = <f(I)> + ℏ⁺(S)`, as elements of `S`.
    pub halo_sum: SetIdentity,
}

impl PullbackIdentities {
    pub fn holds(&self) -> bool {
        self.vanishing.holds() && self.halo_sum.holds()
    }
}

pub fn verify_pullback_equations(f: &RngHom, ideal: &IdealSet) -> Result<PullbackIdentities> {
    let s_space = SpectralSpace::of(f.codomain());
    let r_space = SpectralSpace::of(f.domain());
    let map = pullback_between(f, &s_space, &r_space)?;
    pullback_identities(f, ideal, &map, &s_space, &r_space)
}

/// As [`verify_pullback_equations`] with the pullback and spaces supplied.
pub fn pullback_identities(
    f: &RngHom,
    ideal: &IdealSet,
    map: &PointMap,
    s_space: &SpectralSpace,
    r_space: &SpectralSpace,
) -> Result<PullbackIdentities> {
    let (r, s) = (f.domain(), f.codomain());
    ideal.check_owner(r)?;
    let generated = ideal_generated(s, &f.direct_image(ideal.members()))?;
    let vanishing = SetIdentity {
        lhs: map.preimage(&vanishing_in(&r_space.points, ideal)),
        rhs: vanishing_in(&s_space.points, &generated),
    };
    let with_halo = ideal_sum(r, &[ideal, &halo_ideal(r)])?;
    let lhs = ideal_generated(s, &f.direct_image(with_halo.members()))?;
    let rhs = ideal_sum(s, &[&generated, &halo_ideal(s)])?;
    Ok(PullbackIdentities {
        vanishing,
        halo_sum: SetIdentity { lhs: lhs.members().to_vec(), rhs: rhs.members().to_vec() },
    })
}

/// Outcome of the functoriality checks for a composable pair `f: R → S`,
/// `g: S → T`. Each failing check carries the offending points or elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorialityReport {
    /// `g ∘ f` fails a homomorphism law.
    pub composite: Option<HomViolation>,
    /// Points `P ∈ spec♯T` with `(g∘f)♯(P) ≠ f♯(g♯(P))`.
    pub contravariance: Vec<usize>,
    /// Points moved by the pullback of an identity, on `R`, `S` or `T`.
    pub identity: Vec<usize>,
    /// Elements `x ∈ R` with `q_S(f(x)) ≠ f̄(q_R(x))`, for `f` and `g`.
    pub quotient_square: Vec<Elem>,
    /// Points `Q ∈ spec(S/ℏ⁺)` with `φ₀ᴿ(f̄*(Q)) ≠ f♯(φ₀ˢ(Q))`, for `f` and `g`.
    pub phi0_square: Vec<usize>,
}

impl FunctorialityReport {
    pub fn holds(&self) -> bool {
        self.composite.is_none()
            && self.contravariance.is_empty()
            && self.identity.is_empty()
            && self.quotient_square.is_empty()
            && self.phi0_square.is_empty()
    }
}

pub fn verify_functoriality(f: &RngHom, g: &RngHom) -> Result<FunctorialityReport> {
    let spaces = [SpectralSpace::of(f.domain()), SpectralSpace::of(g.domain()), SpectralSpace::of(g.codomain())];
    verify_functoriality_with(f, g, &spaces)
}

/// As [`verify_functoriality`] with the spectral spaces of `R`, `S`, `T` supplied.
pub fn verify_functoriality_with(f: &RngHom, g: &RngHom, spaces: &[SpectralSpace; 3]) -> Result<FunctorialityReport> {
    let [r_space, s_space, t_space] = spaces;
    let gf = f.then(g)?;
    let composite = gf.verify_hom().err();
    let mut contravariance = Vec::new();
    if composite.is_none() {
        let f_sharp = pullback_between(f, s_space, r_space)?;
        let g_sharp = pullback_between(g, t_space, s_space)?;
        let gf_sharp = pullback_between(&gf, t_space, r_space)?;
        let chained = g_sharp.compose(&f_sharp)?;
        contravariance = (0..t_space.points.len()).filter(|&p| gf_sharp.image[p] != chained.image[p]).collect();
    }

    let mut identity = Vec::new();
    for (rng, space) in [(f.domain(), r_space), (g.domain(), s_space), (g.codomain(), t_space)] {
        let id = pullback_between(&RngHom::identity(rng.clone()), space, space)?;
        identity.extend((0..space.points.len()).filter(|&p| id.image[p] != p));
    }
    identity.sort_unstable();
    identity.dedup();

    let mut quotient_square = Vec::new();
    let mut phi0_square = Vec::new();
    for (h, dom, cod) in [(f, r_space, s_space), (g, s_space, t_space)] {
        let (q, p) = induced_squares(h, dom, cod)?;
        quotient_square.extend(q);
        phi0_square.extend(p);
    }
    Ok(FunctorialityReport { composite, contravariance, identity, quotient_square, phi0_square })
}

/// Failures of the square `q_S ∘ f = f̄ ∘ q_R` (elements of `R`) and of the
/// square `φ₀ᴿ ∘ f̄* = f♯ ∘ φ₀ˢ` (primes of `S/ℏ⁺`).
pub fn induced_squares(f: &RngHom, r_space: &SpectralSpace, s_space: &SpectralSpace) -> Result<(Vec<Elem>, Vec<usize>)> {
    let induced = induced_quotient_hom(f)?;
    let quotient_failures: Vec<Elem> = f
        .domain()
        .elements()
        .filter(|&x| {
            induced.codomain_projection.class_of(f.apply(x))
                != induced.hom.image[induced.domain_projection.class_of(x)]
        })
        .collect();

    let f_sharp = pullback_between(f, s_space, r_space)?;
    let phi_r = crate::topology::phi0_of(f.domain(), r_space)?;
    let phi_s = crate::topology::phi0_of(f.codomain(), s_space)?;
    let r_even = r_space.even_points();
    let s_even = s_space.even_points();
    let r_primes = induced.domain.spectrum();
    let s_primes = induced.codomain.spectrum();
    let mut square_failures = Vec::new();
    for (qi, q) in s_primes.iter().enumerate() {
        // f̄*(Q) = f̄⁻¹(Q) in spec(R/ℏ⁺)
        let pre: Vec<Elem> =
            (0..induced.domain.order()).filter(|&c| q.binary_search(&induced.hom.image[c]).is_ok()).collect();
        let Some(pi) = r_primes.iter().position(|p| *p == pre) else {
            square_failures.push(qi);
            continue;
        };
        let left = r_even[phi_r.image[pi]];
        let right = f_sharp.image[s_even[phi_s.image[qi]]];
        if left != right {
            square_failures.push(qi);
        }
    }
    Ok((quotient_failures, square_failures))
}

/// Points of a pullback as `[source, target]` pairs.
pub fn point_pairs(map: &PointMap) -> Vec<[usize; 2]> {
    map.image.iter().enumerate().map(|(p, &q)| [p, q]).collect()
}
