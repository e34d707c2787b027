//! Serializable reports behind the command-line interface, and DOT export.
//!
//! Elements appear as rendered coordinates, ideals as sorted element arrays,
//! topologies as arrays of closed sets of point indices, and maps as
//! `[source, target]` pairs. Every report names the tool version and the
//! left identity the computation used.

use std::fmt::Write as _;

use serde::Serialize;

use crate::axioms::verify_lcr;
use crate::carrier::FiniteCarrier;
use crate::construct::{abelian_groups, small_rng_search};
use crate::error::Result;
use crate::ideal::{nilradical, radical, IdealSet};
use crate::morphism::{point_pairs, pullback_between, RngHom};
use crate::replay::{check_rng, composition_checks, hom_checks, radical_bar_unit_dependence, Analysis, CheckResult, SpaceCache};
use crate::rng::LcrTable;
use crate::topology::{odd_quotient_of, SpectralSpace};
use crate::workspace::{Failure, Workspace, VERSION};

fn render_ideal(rng: &LcrTable, ideal: &IdealSet) -> Vec<String> {
    ideal.render(rng)
}

#[derive(Debug, Serialize)]
pub struct AxiomVerdicts {
    pub rng: bool,
    pub left_commutative: bool,
    pub left_identity: bool,
    pub local_ring: bool,
    pub triassociative: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyEntry {
    pub name: String,
    pub order: usize,
    pub left_identity: String,
    pub holds: bool,
    pub axioms: AxiomVerdicts,
    pub failure: Option<Failure>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub holds: bool,
    pub rngs: Vec<VerifyEntry>,
}

pub fn verify_report(ws: &Workspace) -> VerifyReport {
    let rngs: Vec<VerifyEntry> = ws
        .lcrs()
        .map(|(name, rng)| {
            let r = verify_lcr(rng);
            VerifyEntry {
                name: name.to_string(),
                order: rng.order(),
                left_identity: rng.render(rng.left_identity()),
                holds: r.all_hold(),
                axioms: AxiomVerdicts {
                    rng: r.rng.is_none(),
                    left_commutative: r.left_commutative.is_none(),
                    left_identity: r.left_identity.is_none(),
                    local_ring: r.local_ring.is_none(),
                    triassociative: r.triassociative.is_none(),
                },
                failure: crate::workspace::axiom_failure(rng),
            }
        })
        .collect();
    VerifyReport { version: VERSION, holds: rngs.iter().all(|e| e.holds), rngs }
}

/// A rejected declaration, as printed when a file fails to load.
#[derive(Debug, Serialize)]
pub struct RejectedReport {
    pub version: &'static str,
    pub holds: bool,
    pub binding: String,
    pub line: usize,
    pub col: usize,
    pub failure: Failure,
}

#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub version: &'static str,
    pub rng: String,
    pub left_identity: String,
    pub even: Vec<Vec<String>>,
    pub odd: Vec<Vec<String>>,
}

pub fn spectrum_report(name: &str, rng: &LcrTable) -> SpectrumReport {
    let space = SpectralSpace::of(rng);
    SpectrumReport {
        version: VERSION,
        rng: name.to_string(),
        left_identity: rng.render(rng.left_identity()),
        even: space.spectrum.even.iter().map(|p| render_ideal(rng, p)).collect(),
        odd: space.spectrum.odd.iter().map(|p| render_ideal(rng, p)).collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct NilradicalReport {
    pub version: &'static str,
    pub rng: String,
    pub left_identity: String,
    pub nilradical: Vec<String>,
}

pub fn nilradical_report(name: &str, rng: &LcrTable) -> Result<NilradicalReport> {
    Ok(NilradicalReport {
        version: VERSION,
        rng: name.to_string(),
        left_identity: rng.render(rng.left_identity()),
        nilradical: render_ideal(rng, &nilradical(rng)?),
    })
}

#[derive(Debug, Serialize)]
pub struct RadicalReport {
    pub version: &'static str,
    pub rng: String,
    pub left_identity: String,
    pub ideal: String,
    pub members: Vec<String>,
    pub radical: Vec<String>,
}

pub fn radical_report(name: &str, rng: &LcrTable, ideal_name: &str, ideal: &IdealSet) -> Result<RadicalReport> {
    Ok(RadicalReport {
        version: VERSION,
        rng: name.to_string(),
        left_identity: rng.render(rng.left_identity()),
        ideal: ideal_name.to_string(),
        members: render_ideal(rng, ideal),
        radical: render_ideal(rng, &radical(rng, ideal)?),
    })
}

#[derive(Debug, Serialize)]
pub struct PointEntry {
    pub index: usize,
    pub parity: &'static str,
    pub prime: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct OddQuotientEntry {
    /// Odd points grouped by their halo part, as indices into `points`.
    pub classes: Vec<Vec<usize>>,
    pub closed_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct TopologyReport {
    pub version: &'static str,
    pub rng: String,
    pub left_identity: String,
    pub points: Vec<PointEntry>,
    pub closed_sets: Vec<Vec<usize>>,
    pub even_points: Vec<usize>,
    pub odd_points: Vec<usize>,
    pub specialization_covers: Vec<[usize; 2]>,
    pub odd_quotient: OddQuotientEntry,
}

fn point_entries(rng: &LcrTable, space: &SpectralSpace) -> Vec<PointEntry> {
    space
        .points
        .iter()
        .enumerate()
        .map(|(index, p)| PointEntry { index, parity: if p.is_even() { "even" } else { "odd" }, prime: render_ideal(rng, p) })
        .collect()
}

pub fn topology_report(name: &str, rng: &LcrTable) -> TopologyReport {
    let space = SpectralSpace::of(rng);
    let quotient = odd_quotient_of(&space);
    let odd = space.odd_points();
    TopologyReport {
        version: VERSION,
        rng: name.to_string(),
        left_identity: rng.render(rng.left_identity()),
        points: point_entries(rng, &space),
        closed_sets: space.topology.closed_sets().to_vec(),
        even_points: space.even_points(),
        odd_points: odd.clone(),
        specialization_covers: space.specialization_covers().into_iter().map(|(p, q)| [p, q]).collect(),
        odd_quotient: OddQuotientEntry {
            classes: quotient.classes.iter().map(|c| c.iter().map(|&i| odd[i]).collect()).collect(),
            closed_sets: quotient.topology.closed_sets().to_vec(),
        },
    }
}

/// The specialization order as a DOT digraph: even primes are boxes, odd
/// primes ellipses, and each edge runs from a prime to one covering it.
pub fn topology_dot(name: &str, rng: &LcrTable) -> String {
    let space = SpectralSpace::of(rng);
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
    let _ = writeln!(out, "  rankdir=BT;");
    for (i, p) in space.points.iter().enumerate() {
        let shape = if p.is_even() { "box" } else { "ellipse" };
        let label = format!("{{{}}}", render_ideal(rng, p).join(", "));
        let _ = writeln!(out, "  p{i} [label=\"{label}\", shape={shape}];");
    }
    for (p, q) in space.specialization_covers() {
        let _ = writeln!(out, "  p{p} -> p{q};");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct PullbackReport {
    pub version: &'static str,
    pub hom: String,
    pub domain: String,
    pub codomain: String,
    pub domain_left_identity: String,
    pub codomain_left_identity: String,
    /// Points of `spec♯` of the codomain, the source of the pullback.
    pub source_points: Vec<PointEntry>,
    /// Points of `spec♯` of the domain.
    pub target_points: Vec<PointEntry>,
    pub map: Vec<[usize; 2]>,
}

pub fn pullback_report(name: &str, domain: &str, codomain: &str, f: &RngHom) -> Result<PullbackReport> {
    let (r, s) = (f.domain(), f.codomain());
    let (r_space, s_space) = (SpectralSpace::of(r), SpectralSpace::of(s));
    let map = pullback_between(f, &s_space, &r_space)?;
    Ok(PullbackReport {
        version: VERSION,
        hom: name.to_string(),
        domain: domain.to_string(),
        codomain: codomain.to_string(),
        domain_left_identity: r.render(r.left_identity()),
        codomain_left_identity: s.render(s.left_identity()),
        source_points: point_entries(s, &s_space),
        target_points: point_entries(r, &r_space),
        map: point_pairs(&map),
    })
}

#[derive(Debug, Serialize)]
pub struct HomCheckEntry {
    pub name: String,
    pub holds: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Serialize)]
pub struct RadicalDependence {
    pub ideal: Vec<String>,
    pub left_identity: String,
    pub bar_unit: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub version: &'static str,
    pub rng: String,
    pub left_identity: String,
    pub holds: bool,
    pub checks: Vec<CheckResult>,
    pub homs: Vec<HomCheckEntry>,
    /// Bar-units against which some radical changes. Not a check.
    pub radical_bar_unit_dependence: Vec<RadicalDependence>,
}

/// The full replay on one rng and on every homomorphism into or out of it,
/// including every composable pair of such homomorphisms.
pub fn check_report(ws: &Workspace, name: &str, rng: &LcrTable) -> Result<CheckReport> {
    let checks = check_rng(rng)?;
    let mut cache = SpaceCache::default();
    let all: Vec<(&str, &str, &str, &RngHom)> = ws.lcr_homs().collect();
    let mut homs = Vec::new();
    for &(hname, _, _, f) in all.iter().filter(|(_, d, c, _)| *d == name || *c == name) {
        let mut hc = hom_checks(f, &mut cache)?;
        for &(gname, _, _, g) in &all {
            if g.domain() == f.codomain() {
                hc.extend(composition_checks(f, g, &mut cache)?.renamed(|n| format!("{n}[then {gname}]")));
            }
        }
        // pairs whose first map does not touch `name` are not reached by the outer loop
        for &(ename, _, _, e) in all.iter().filter(|(_, d, c, _)| *d != name && *c != name) {
            if e.codomain() == f.domain() {
                hc.extend(composition_checks(e, f, &mut cache)?.renamed(|n| format!("{n}[after {ename}]")));
            }
        }
        homs.push(HomCheckEntry { name: hname.to_string(), holds: hc.all_hold(), checks: hc.results().to_vec() });
    }
    let analysis = Analysis::new(rng);
    let dependence = radical_bar_unit_dependence(&analysis)?
        .into_iter()
        .map(|(ideal, e, b)| RadicalDependence {
            ideal: render_ideal(rng, &ideal),
            left_identity: rng.render(e),
            bar_unit: rng.render(b),
        })
        .collect();
    Ok(CheckReport {
        version: VERSION,
        rng: name.to_string(),
        left_identity: rng.render(rng.left_identity()),
        holds: checks.all_hold() && homs.iter().all(|h| h.holds),
        checks: checks.results().to_vec(),
        homs,
        radical_bar_unit_dependence: dependence,
    })
}

#[derive(Debug, Serialize)]
pub struct FoundStructure {
    pub index: usize,
    pub left_identity: String,
    pub bar_units: Vec<String>,
    pub halo: Vec<String>,
    pub local_identity: String,
    /// A declaration reproducing the structure in the `.lcr` language.
    pub declaration: String,
}

#[derive(Debug, Serialize)]
pub struct CarrierSearch {
    pub factors: Vec<usize>,
    pub structures: Vec<FoundStructure>,
}

#[derive(Debug, Serialize)]
pub struct SearchReport {
    pub version: &'static str,
    pub order: usize,
    pub total: usize,
    pub carriers: Vec<CarrierSearch>,
}

/// `lcr NAME = tables { ... }` for a table with coordinates.
pub fn declaration(name: &str, rng: &LcrTable) -> String {
    let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let carrier = match rng.carrier().factors() {
        Some(f) => format!("carrier = [{}]", join(f)),
        None => format!("add = [{}]", join(rng.carrier().add_table())),
    };
    format!(
        "lcr {name} = tables {{ {carrier}, mul = [{}], localmul = [{}], localid = {} }}",
        join(rng.mul_table()),
        join(rng.local_mul_table()),
        rng.local_identity()
    )
}

pub fn search_report(order: usize) -> Result<SearchReport> {
    let mut carriers = Vec::new();
    for factors in abelian_groups(order) {
        let carrier = FiniteCarrier::cyclic(&factors)?;
        let found = small_rng_search(&carrier, usize::MAX)?;
        let structures = found
            .iter()
            .enumerate()
            .map(|(index, r)| FoundStructure {
                index,
                left_identity: r.render(r.left_identity()),
                bar_units: r.bar_units().iter().map(|&b| r.render(b)).collect(),
                halo: r.halo().iter().map(|&a| r.render(a)).collect(),
                local_identity: r.render(r.local_identity()),
                declaration: declaration(&format!("S{index}"), r),
            })
            .collect();
        carriers.push(CarrierSearch { factors, structures });
    }
    let total = carriers.iter().map(|c| c.structures.len()).sum();
    Ok(SearchReport { version: VERSION, order, total, carriers })
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dsl::parse;

    #[test]
    fn r8_spectrum_has_one_even_and_one_odd_prime() {
        let r = spectrum_report("R", &corpus::r8());
        assert_eq!(r.even, vec![vec!["(0,0)", "(0,1)", "(2,0)", "(2,1)"]]);
        assert_eq!(r.odd, vec![vec!["(0,0)", "(2,0)"]]);
        assert_eq!(r.left_identity, "(1,0)");
    }

    #[test]
    fn dot_shapes_and_covers() {
        let dot = topology_dot("R8", &corpus::r8());
        assert!(dot.contains("p0 [label=\"{(0,0), (2,0)}\", shape=ellipse];"));
        assert!(dot.contains("shape=box"));
        assert!(dot.contains("p0 -> p1;"));
    }

    #[test]
    fn declarations_reparse() {
        for (name, rng) in corpus::corpus() {
            if rng.carrier().factors().is_none() {
                continue;
            }
            let ws = parse(&declaration("X", &rng)).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(ws.lcr("X").unwrap().as_ref(), &rng, "{name}");
        }
    }

    #[test]
    fn check_report_holds_on_r8_with_homs() {
        let text = "ring A = Z 4\nring H = Z 2\nhom psi : A -> H = reduce\nlcr R = halo_ext A H psi\n\
                    hom id : H -> H = identity\nlcr S = halo_ext H H id\n\
                    lcrhom g : R -> S = table [0, 1, 2, 3, 0, 1, 2, 3]\nlcrhom i : S -> S = identity\n";
        let ws = parse(text).unwrap();
        let report = check_report(&ws, "R", ws.lcr("R").unwrap()).unwrap();
        assert!(report.holds, "{}", to_json(&report));
        assert_eq!(report.homs.len(), 1);
        assert!(report.homs[0].checks.iter().any(|c| c.name.ends_with("[then i]")));
    }
}
