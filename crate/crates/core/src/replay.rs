//! Exhaustive replay of the structural results on a single rng or
//! homomorphism, collected into named checks with counterexample
//! certificates.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::verify_lcr;
use crate::carrier::Elem;
use crate::error::Result;
use crate::ideal::{
    ideal_intersection, ideal_sum, ideal_violation, is_ideal, intersect_all, nilradical, radical, radical_with, zero_ideal, IdealSet,
};
use crate::morphism::{induced_squares, pullback_between, pullback_identities, verify_functoriality_with, RngHom};
use crate::prime::prime_criteria_report_with;
use crate::quotient::quotient;
use crate::rng::LcrTable;
use crate::topology::{intersection, odd_quotient_of, phi0_of, phi1_of, union, vanishing_in, SpectralSpace};

/// A failure of one check on one subject, with enough data to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// What the check was applied to, e.g. an ideal or a pair of ideals.
    pub subject: String,
    /// The predicate that failed.
    pub predicate: String,
    /// Rendered witness elements or points.
    pub witness: Vec<String>,
    /// Whether re-evaluating the predicate on the witness reproduces the failure.
    pub replays: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Certificate>,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Named checks in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    results: Vec<CheckResult>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, name: &str) -> &mut CheckResult {
        match self.results.iter().position(|r| r.name == name) {
            Some(i) => &mut self.results[i],
            None => {
                self.results.push(CheckResult { name: name.to_string(), cases: 0, failures: Vec::new() });
                self.results.last_mut().unwrap()
            }
        }
    }

    /// Records one evaluated case; `failure` is `None` when it passed.
    pub fn record(&mut self, name: &str, failure: Option<Certificate>) {
        let entry = self.entry(name);
        entry.cases += 1;
        entry.failures.extend(failure);
    }

    /// Records a case that passes iff `ok`, with a certificate built lazily.
    pub fn expect(&mut self, name: &str, ok: bool, certificate: impl FnOnce() -> Certificate) {
        self.record(name, (!ok).then(certificate));
    }

    pub fn extend(&mut self, other: Checks) {
        for r in other.results {
            let entry = self.entry(&r.name);
            entry.cases += r.cases;
            entry.failures.extend(r.failures);
        }
    }

    /// The same results with every check name passed through `rename`.
    pub fn renamed(mut self, rename: impl Fn(&str) -> String) -> Checks {
        for r in &mut self.results {
            r.name = rename(&r.name);
        }
        self
    }

    pub fn results(&self) -> &[CheckResult] {
        &self.results
    }

    pub fn all_hold(&self) -> bool {
        self.results.iter().all(CheckResult::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &Certificate)> {
        self.results.iter().flat_map(|r| r.failures.iter().map(move |c| (r.name.as_str(), c)))
    }
}

fn render_set(rng: &LcrTable, xs: &[Elem]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| rng.render(x)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn render_all(rng: &LcrTable, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| rng.render(x)).collect()
}

fn points(xs: &[usize]) -> Vec<String> {
    xs.iter().map(|p| format!("#{p}")).collect()
}

/// A certificate for two sides of a set identity that differ.
fn set_mismatch(subject: String, predicate: &str, lhs: Vec<String>, rhs: Vec<String>) -> Certificate {
    let replays = lhs != rhs;
    let mut witness = vec!["lhs".to_string()];
    witness.extend(lhs);
    witness.push("rhs".to_string());
    witness.extend(rhs);
    Certificate { subject, predicate: predicate.to_string(), witness, replays }
}

/// Everything about a single rng computed once and shared between checks.
pub struct Analysis<'a> {
    pub rng: &'a LcrTable,
    pub space: SpectralSpace,
}

impl<'a> Analysis<'a> {
    pub fn new(rng: &'a LcrTable) -> Self {
        Analysis { rng, space: SpectralSpace::of(rng) }
    }

    fn proper_ideals(&self) -> impl Iterator<Item = &IdealSet> {
        self.space.ideals.iter().filter(|i| i.len() < self.rng.order())
    }
}

/// Axioms, halo independence and the even/odd decomposition.
pub fn axiom_checks(a: &Analysis) -> Checks {
    let rng = a.rng;
    let mut checks = Checks::new();
    let report = verify_lcr(rng);
    let failures = report.failures();
    checks.record(
        "axioms",
        failures.first().map(|(name, w)| Certificate {
            subject: "R".into(),
            predicate: format!("{name}: {}", w.law.name()),
            witness: render_all(rng, &w.elements),
            replays: w.replays(rng),
        }),
    );
    for &b in rng.bar_units() {
        let halo = rng.halo_for(b).unwrap_or_default();
        checks.expect("halo_independence", halo == rng.halo(), || {
            set_mismatch(format!("bar-unit {}", rng.render(b)), "{x : x·b = 0} = ℏ⁺", render_all(rng, &halo), render_all(rng, rng.halo()))
        });
        for x in rng.elements() {
            let (x0, x1) = (rng.even_component_with(x, b), rng.odd_component_with(x, b));
            let ok = rng.add(x0, x1) == x && rng.mul(x0, b) == x0 && rng.mul(x1, b) == rng.zero();
            checks.expect("decomposition", ok, || Certificate {
                subject: format!("bar-unit {}", rng.render(b)),
                predicate: "x = x₀ + x₁, x₀·b = x₀, x₁·b = 0".into(),
                witness: render_all(rng, &[x, x0, x1]),
                replays: rng.add(x0, x1) != x || rng.mul(x0, b) != x0 || rng.mul(x1, b) != rng.zero(),
            });
        }
    }
    checks
}

/// The characterizations of primality agree on every proper ideal, against
/// every bar-unit, and every failing characterization's witness replays.
pub fn prime_checks(a: &Analysis) -> Checks {
    let rng = a.rng;
    let mut checks = Checks::new();
    for p in a.proper_ideals() {
        for &b in rng.bar_units() {
            let subject = format!("P = {}, bar-unit {}", render_set(rng, p.members()), rng.render(b));
            let report = match prime_criteria_report_with(rng, p, b) {
                Ok(r) => r,
                Err(e) => {
                    checks.record(
                        "prime_criteria_equivalence",
                        Some(Certificate { subject, predicate: e.to_string(), witness: vec![], replays: true }),
                    );
                    continue;
                }
            };
            let disagreements = report.disagreements();
            checks.expect("prime_criteria_equivalence", disagreements.is_empty(), || {
                let d = &disagreements[0];
                Certificate {
                    subject: subject.clone(),
                    predicate: format!("{} ⇔ {}", d.left, d.right),
                    witness: vec![format!("{}={}", d.left, d.left_holds), format!("{}={}", d.right, d.right_holds)],
                    replays: prime_criteria_report_with(rng, p, b).map(|r| !r.disagreements().is_empty()).unwrap_or(false),
                }
            });
            for c in report.criteria() {
                checks.expect("prime_witnesses_replay", c.replays(rng, p, b), || Certificate {
                    subject: subject.clone(),
                    predicate: format!("{} witness reproduces", c.law.name()),
                    witness: render_all(rng, c.witness.as_deref().unwrap_or_default()),
                    replays: false,
                });
            }
            let in_spectrum = a.space.index_of(p).is_some();
            checks.expect("spectrum_membership", in_spectrum == report.hu_liu_prime, || Certificate {
                subject: subject.clone(),
                predicate: "P ∈ spec♯R ⇔ P is a Hu-Liu prime".into(),
                witness: vec![format!("listed={in_spectrum}"), format!("prime={}", report.hu_liu_prime)],
                replays: true,
            });
        }
    }
    let spec = &a.space.spectrum;
    let even_ok = spec.even.iter().all(IdealSet::is_even) && spec.odd.iter().all(|p| !p.is_even());
    checks.expect("parity_partition", even_ok && spec.len() == a.space.points.len(), || Certificate {
        subject: "spec♯R".into(),
        predicate: "even primes contain ℏ⁺, odd primes do not".into(),
        witness: vec![],
        replays: true,
    });
    checks
}

/// Nilpotency across bar-units, the nil radical and radicals as
/// intersections of primes, and the reduced quotient.
pub fn radical_checks(a: &Analysis) -> Result<Checks> {
    let rng = a.rng;
    let mut checks = Checks::new();
    for x in rng.elements() {
        let verdicts: Vec<bool> =
            rng.bar_units().iter().map(|&b| rng.is_nilpotent_with(x, b)).collect::<Result<_>>()?;
        checks.expect("nilpotency_bar_unit_independence", verdicts.windows(2).all(|w| w[0] == w[1]), || Certificate {
            subject: "R".into(),
            predicate: "x nilpotent against every bar-unit or none".into(),
            witness: render_all(rng, &[x]),
            replays: true,
        });
    }
    let nil = nilradical(rng)?;
    let violation = ideal_violation(rng, nil.members());
    checks.expect("nilradical_is_ideal", violation.is_none(), || Certificate {
        subject: "nilrad".into(),
        predicate: format!("ideal: {violation:?}"),
        witness: render_all(rng, nil.members()),
        replays: !is_ideal(rng, nil.members()),
    });

    let (q, _) = quotient(rng, &nil)?;
    let q_nil = nilradical(&q)?;
    checks.expect("reduced_quotient", q_nil.members() == [q.zero()], || Certificate {
        subject: "R/nilrad".into(),
        predicate: "nilrad(R/nilrad) = 0".into(),
        witness: render_all(&q, q_nil.members()),
        replays: true,
    });

    let meet = intersect_all(rng, &a.space.points)?;
    checks.expect("nilradical_is_intersection_of_primes", meet.members() == nil.members(), || {
        set_mismatch("R".into(), "nilrad = ⋂ spec♯R", render_all(rng, nil.members()), render_all(rng, meet.members()))
    });

    let zero = zero_ideal(rng);
    let r0 = radical(rng, &zero)?;
    checks.expect("radical_of_zero_is_nilradical", r0.members() == nil.members(), || {
        set_mismatch("R".into(), "√0 = nilrad", render_all(rng, r0.members()), render_all(rng, nil.members()))
    });

    for i in a.proper_ideals() {
        let subject = format!("I = {}", render_set(rng, i.members()));
        let rad = radical(rng, i)?;
        let above: Vec<&IdealSet> = a.space.points.iter().filter(|p| p.contains_ideal(i)).collect();
        let meet = intersect_all(rng, above)?;
        checks.expect("radical_is_intersection_of_primes", rad.members() == meet.members(), || {
            set_mismatch(subject.clone(), "√I = ⋂{P ⊇ I}", render_all(rng, rad.members()), render_all(rng, meet.members()))
        });
        let twice = radical(rng, &rad)?;
        checks.expect("radical_idempotent", twice == rad, || {
            set_mismatch(subject.clone(), "√√I = √I", render_all(rng, twice.members()), render_all(rng, rad.members()))
        });
    }
    Ok(checks)
}

/// Whether `√I` depends on the bar-unit used for the components. This is not
/// claimed anywhere and is reported as data rather than as a check.
pub fn radical_bar_unit_dependence(a: &Analysis) -> Result<Vec<(IdealSet, Elem, Elem)>> {
    let rng = a.rng;
    let mut out = Vec::new();
    for i in &a.space.ideals {
        let base = radical_with(rng, i, rng.left_identity())?;
        for &b in rng.bar_units() {
            if radical_with(rng, i, b)? != base {
                out.push((i.clone(), rng.left_identity(), b));
            }
        }
    }
    Ok(out)
}

/// Closed-set axioms of the vanishing family, the union and intersection
/// identities, the even/odd split, and the homeomorphisms φ₀ and φ₁.
pub fn topology_checks(a: &Analysis) -> Result<Checks> {
    let rng = a.rng;
    let space = &a.space;
    let mut checks = Checks::new();
    let top = &space.topology;

    checks.record(
        "closed_set_axioms",
        top.check_axioms().err().map(|v| Certificate {
            subject: "𝒱".into(),
            predicate: v.rule.into(),
            witness: points(&v.missing),
            replays: !top.is_closed(&v.missing),
        }),
    );
    checks.expect("vanishing_of_zero_and_unit", top.is_closed(&[]) && top.is_closed(&top.all_points()), || Certificate {
        subject: "𝒱".into(),
        predicate: "V(R) = ∅ and V(0) = spec♯R".into(),
        witness: vec![],
        replays: true,
    });

    let ideals = &space.ideals;
    let v: Vec<Vec<usize>> = ideals.iter().map(|i| vanishing_in(&space.points, i)).collect();
    for (i, a_ideal) in ideals.iter().enumerate() {
        for (j, b_ideal) in ideals.iter().enumerate() {
            let meet = ideal_intersection(rng, a_ideal, b_ideal)?;
            let lhs = union(&v[i], &v[j]);
            let rhs = vanishing_in(&space.points, &meet);
            checks.expect("union_of_vanishing_sets", lhs == rhs, || {
                set_mismatch(format!("ideals #{i}, #{j}"), "V(I) ∪ V(J) = V(I ∩ J)", points(&lhs), points(&rhs))
            });
        }
    }

    // every subset of the ideal list, sums built incrementally over bitmasks
    let k = ideals.len();
    if k < usize::BITS as usize - 1 {
        let mut sums: Vec<IdealSet> = Vec::with_capacity(1 << k);
        let mut meets: Vec<Vec<usize>> = Vec::with_capacity(1 << k);
        sums.push(zero_ideal(rng));
        meets.push(top.all_points());
        for mask in 1usize..1 << k {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let sum = ideal_sum(rng, &[&sums[rest], &ideals[low]])?;
            let meet = intersection(&meets[rest], &v[low]);
            let rhs = vanishing_in(&space.points, &sum);
            checks.expect("intersection_of_vanishing_sets", meet == rhs, || {
                let members: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
                set_mismatch(format!("ideals {members:?}"), "⋂ V(I) = V(Σ I)", points(&meet), points(&rhs))
            });
            sums.push(sum);
            meets.push(meet);
        }
    }

    let even = space.even_points();
    let odd = space.odd_points();
    checks.expect("even_spectrum_closed", top.is_closed(&even), || Certificate {
        subject: "spec♯₀R".into(),
        predicate: "closed".into(),
        witness: points(&even),
        replays: !top.is_closed(&even),
    });
    checks.expect("odd_spectrum_open", top.is_open(&odd), || Certificate {
        subject: "spec♯₁R".into(),
        predicate: "open".into(),
        witness: points(&odd),
        replays: !top.is_open(&odd),
    });
    checks.expect("even_odd_partition", union(&even, &odd) == top.all_points() && intersection(&even, &odd).is_empty(), || {
        set_mismatch("spec♯R".into(), "spec♯₀ ⊔ spec♯₁ = spec♯", points(&union(&even, &odd)), points(&top.all_points()))
    });

    let quotient = odd_quotient_of(space);
    let keyed = quotient
        .classes
        .iter()
        .zip(&quotient.keys)
        .all(|(class, key)| class.iter().all(|&i| space.points[odd[i]].odd_part() == key.as_slice()));
    checks.expect("odd_classes_share_halo_part", keyed, || Certificate {
        subject: "spec♯₁R/∼".into(),
        predicate: "P ∼ Q ⇔ P∩ℏ⁺ = Q∩ℏ⁺".into(),
        witness: vec![],
        replays: true,
    });

    for (name, result) in [("phi0_homeomorphism", phi0_of(rng, space)), ("phi1_homeomorphism", phi1_of(rng, space))] {
        checks.record(
            name,
            result.err().map(|e| Certificate { subject: "R".into(), predicate: e.to_string(), witness: vec![], replays: true }),
        );
    }
    Ok(checks)
}

/// All checks on one rng, in a fixed order.
pub fn check_rng(rng: &LcrTable) -> Result<Checks> {
    let a = Analysis::new(rng);
    let mut checks = axiom_checks(&a);
    checks.extend(prime_checks(&a));
    checks.extend(radical_checks(&a)?);
    checks.extend(topology_checks(&a)?);
    Ok(checks)
}

/// Spectral spaces keyed by the fingerprint of their rng, so corpus-wide
/// replays compute each space once.
#[derive(Default)]
pub struct SpaceCache {
    spaces: BTreeMap<u64, SpectralSpace>,
}

impl SpaceCache {
    pub fn get(&mut self, rng: &LcrTable) -> &SpectralSpace {
        self.spaces.entry(rng.fingerprint()).or_insert_with(|| SpectralSpace::of(rng))
    }
}

/// Homomorphism laws, the pullback on spectra, the two vanishing identities
/// for every ideal of the domain, and the two commuting squares.
pub fn hom_checks(f: &RngHom, cache: &mut SpaceCache) -> Result<Checks> {
    let (r, s) = (f.domain().clone(), f.codomain().clone());
    let r_space = cache.get(&r).clone();
    let s_space = cache.get(&s).clone();
    let mut checks = Checks::new();
    let subject = || format!("f = {:?}", render_all(&s, f.image()));

    let verdict = f.verify_hom();
    checks.record(
        "homomorphism_laws",
        verdict.as_ref().err().map(|v| Certificate {
            subject: subject(),
            predicate: v.law.name().into(),
            witness: render_all(&r, &v.elements),
            replays: v.replays(f),
        }),
    );
    if verdict.is_err() {
        return Ok(checks);
    }
    let halo_image = r.halo().iter().all(|&a| s.in_halo(f.apply(a)));
    checks.expect("halo_maps_into_halo", halo_image, || Certificate {
        subject: subject(),
        predicate: "f(ℏ⁺(R)) ⊆ ℏ⁺(S)".into(),
        witness: vec![],
        replays: true,
    });

    let map = match pullback_between(f, &s_space, &r_space) {
        Ok(m) => {
            checks.record("pullback_primes_parity_continuity", None);
            m
        }
        Err(e) => {
            checks.record(
                "pullback_primes_parity_continuity",
                Some(Certificate { subject: subject(), predicate: e.to_string(), witness: vec![], replays: true }),
            );
            return Ok(checks);
        }
    };
    for ideal in &r_space.ideals {
        let ids = pullback_identities(f, ideal, &map, &s_space, &r_space)?;
        let who = format!("{}, I = {}", subject(), render_set(&r, ideal.members()));
        checks.expect("pullback_of_vanishing_set", ids.vanishing.holds(), || {
            set_mismatch(who.clone(), "(f♯)⁻¹(V(I)) = V(<f(I)>)", points(&ids.vanishing.lhs), points(&ids.vanishing.rhs))
        });
        checks.expect("generated_halo_sum", ids.halo_sum.holds(), || {
            set_mismatch(
                who.clone(),
                "<f(I + ℏ⁺R)> = <f(I)> + ℏ⁺S",
                render_all(&s, &ids.halo_sum.lhs),
                render_all(&s, &ids.halo_sum.rhs),
            )
        });
    }
    let (quotient_failures, square_failures) = induced_squares(f, &r_space, &s_space)?;
    checks.expect("quotient_square_commutes", quotient_failures.is_empty(), || Certificate {
        subject: subject(),
        predicate: "q_S ∘ f = f̄ ∘ q_R".into(),
        witness: render_all(&r, &quotient_failures),
        replays: true,
    });
    checks.expect("phi0_square_commutes", square_failures.is_empty(), || Certificate {
        subject: subject(),
        predicate: "φ₀ᴿ ∘ f̄* = f♯ ∘ φ₀ˢ".into(),
        witness: points(&square_failures),
        replays: true,
    });
    Ok(checks)
}

/// Composition laws for `f: R → S` followed by `g: S → T`.
pub fn composition_checks(f: &RngHom, g: &RngHom, cache: &mut SpaceCache) -> Result<Checks> {
    let spaces = [cache.get(f.domain()).clone(), cache.get(g.domain()).clone(), cache.get(g.codomain()).clone()];
    let report = verify_functoriality_with(f, g, &spaces)?;
    let mut checks = Checks::new();
    let subject = || format!("g ∘ f with f = {:?}, g = {:?}", f.image(), g.image());
    checks.record(
        "composite_is_homomorphism",
        report.composite.as_ref().map(|v| Certificate {
            subject: subject(),
            predicate: v.law.name().into(),
            witness: v.elements.iter().map(|x| x.to_string()).collect(),
            replays: true,
        }),
    );
    checks.expect("pullback_contravariance", report.contravariance.is_empty(), || Certificate {
        subject: subject(),
        predicate: "(g∘f)♯ = f♯ ∘ g♯".into(),
        witness: points(&report.contravariance),
        replays: true,
    });
    checks.expect("pullback_of_identity", report.identity.is_empty(), || Certificate {
        subject: subject(),
        predicate: "id♯ = id".into(),
        witness: points(&report.identity),
        replays: true,
    });
    checks.expect("squares_commute", report.quotient_square.is_empty() && report.phi0_square.is_empty(), || {
        Certificate { subject: subject(), predicate: "commuting squares".into(), witness: vec![], replays: true }
    });
    Ok(checks)
}
