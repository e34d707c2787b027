//! Named bindings produced by the `.lcr` language, and their JSON form.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::verify_lcr;
use crate::carrier::{Elem, FiniteCarrier};
use crate::ideal::IdealSet;
use crate::morphism::RngHom;
use crate::ring::{CommutativeRingTable, RingHom};
use crate::rng::LcrTable;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Why a declared structure was rejected after it was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// An rng axiom fails; `witness` is rendered in the offending table.
    Axiom { axiom: String, law: String, witness: Vec<String>, replays: bool },
    /// A homomorphism law fails.
    Hom { law: String, witness: Vec<String>, replays: bool },
    /// The construction itself was refused.
    Construction { message: String },
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Axiom { axiom, law, witness, .. } => {
                write!(f, "axiom {axiom} fails ({law}) at [{}]", witness.join(", "))
            }
            Failure::Hom { law, witness, .. } => write!(f, "homomorphism law {law} fails at [{}]", witness.join(", ")),
            Failure::Construction { message } => f.write_str(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` is already defined")]
    DuplicateName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` is a {found}, expected a {expected}")]
    WrongKind { line: usize, col: usize, name: String, found: &'static str, expected: &'static str },
    #[error("{line}:{col}: `{name}` fails verification: {failure}")]
    Verification { line: usize, col: usize, name: String, failure: Failure },
}

impl DslError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            DslError::Syntax { line, col, .. }
            | DslError::UnknownName { line, col, .. }
            | DslError::DuplicateName { line, col, .. }
            | DslError::WrongKind { line, col, .. }
            | DslError::Verification { line, col, .. } => (*line, *col),
        }
    }

    /// Verification failures are verdicts about the input; the rest are
    /// malformed input.
    pub fn is_verification(&self) -> bool {
        matches!(self, DslError::Verification { .. })
    }
}

/// The first axiom failure of `rng`, if any.
pub fn axiom_failure(rng: &LcrTable) -> Option<Failure> {
    let report = verify_lcr(rng);
    let failures = report.failures();
    failures.first().map(|(axiom, w)| Failure::Axiom {
        axiom: axiom.to_string(),
        law: w.law.name().to_string(),
        witness: w.elements.iter().map(|&x| rng.render(x)).collect(),
        replays: w.replays(rng),
    })
}

/// The first homomorphism-law failure of `f`, if any.
pub fn hom_failure(f: &RngHom) -> Option<Failure> {
    f.verify_hom().err().map(|v| Failure::Hom {
        law: v.law.name().to_string(),
        witness: v.elements.iter().map(|&x| f.domain().render(x)).collect(),
        replays: v.replays(f),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Ring(CommutativeRingTable),
    RingHom { domain: String, codomain: String, hom: RingHom },
    Lcr(Arc<LcrTable>),
    Ideal { of: String, ideal: IdealSet },
    LcrHom { domain: String, codomain: String, hom: RngHom },
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Ring(_) => "ring",
            Item::RingHom { .. } => "hom",
            Item::Lcr(_) => "lcr",
            Item::Ideal { .. } => "ideal",
            Item::LcrHom { .. } => "lcrhom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub line: usize,
    pub col: usize,
    pub item: Item,
}

/// Bindings in declaration order. Names are unique and every binding refers
/// only to earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    bindings: Vec<Binding>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|b| b.name == name)
    }

    pub(crate) fn push(&mut self, binding: Binding) -> Result<(), DslError> {
        if self.get(&binding.name).is_some() {
            return Err(DslError::DuplicateName { line: binding.line, col: binding.col, name: binding.name });
        }
        self.bindings.push(binding);
        Ok(())
    }

    pub fn ring(&self, name: &str) -> Option<&CommutativeRingTable> {
        match self.get(name).map(|b| &b.item) {
            Some(Item::Ring(r)) => Some(r),
            _ => None,
        }
    }

    pub fn lcr(&self, name: &str) -> Option<&Arc<LcrTable>> {
        match self.get(name).map(|b| &b.item) {
            Some(Item::Lcr(r)) => Some(r),
            _ => None,
        }
    }

    /// The ideal together with the name of its rng.
    pub fn ideal(&self, name: &str) -> Option<(&str, &IdealSet)> {
        match self.get(name).map(|b| &b.item) {
            Some(Item::Ideal { of, ideal }) => Some((of, ideal)),
            _ => None,
        }
    }

    pub fn lcr_hom(&self, name: &str) -> Option<&RngHom> {
        match self.get(name).map(|b| &b.item) {
            Some(Item::LcrHom { hom, .. }) => Some(hom),
            _ => None,
        }
    }

    pub fn lcrs(&self) -> impl Iterator<Item = (&str, &Arc<LcrTable>)> {
        self.bindings.iter().filter_map(|b| match &b.item {
            Item::Lcr(r) => Some((b.name.as_str(), r)),
            _ => None,
        })
    }

    /// `(name, domain, codomain, hom)` for every rng homomorphism.
    pub fn lcr_homs(&self) -> impl Iterator<Item = (&str, &str, &str, &RngHom)> {
        self.bindings.iter().filter_map(|b| match &b.item {
            Item::LcrHom { domain, codomain, hom } => Some((b.name.as_str(), domain.as_str(), codomain.as_str(), hom)),
            _ => None,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = WorkspaceJson { version: VERSION.to_string(), bindings: self.bindings.iter().map(BindingJson::from).collect() };
        serde_json::to_string_pretty(&doc).expect("workspace serializes")
    }

    /// Rebuilds a workspace from [`Workspace::to_json`] output, re-running
    /// every verification.
    pub fn from_json(text: &str) -> Result<Self, DslError> {
        let doc: WorkspaceJson = serde_json::from_str(text)
            .map_err(|e| DslError::Syntax { line: e.line(), col: e.column(), message: e.to_string() })?;
        let mut ws = Workspace::new();
        for b in doc.bindings {
            let item = b.rebuild(&ws)?;
            ws.push(Binding { name: b.name, line: b.line, col: b.col, item })?;
        }
        Ok(ws)
    }
}

#[derive(Serialize, Deserialize)]
struct WorkspaceJson {
    version: String,
    bindings: Vec<BindingJson>,
}

/// A carrier as cyclic factors when it has coordinates, otherwise as its
/// addition table.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CarrierJson {
    Factors(Vec<usize>),
    AddTable(Vec<Elem>),
}

impl CarrierJson {
    fn of(c: &FiniteCarrier) -> Self {
        match c.factors() {
            Some(f) => CarrierJson::Factors(f.to_vec()),
            None => CarrierJson::AddTable(c.add_table().to_vec()),
        }
    }

    fn build(&self) -> crate::Result<FiniteCarrier> {
        match self {
            CarrierJson::Factors(f) => FiniteCarrier::cyclic(f),
            CarrierJson::AddTable(t) => FiniteCarrier::from_add_table(isqrt(t.len()), t.clone()),
        }
    }
}

pub(crate) fn isqrt(n: usize) -> usize {
    (0..=n).find(|k| k * k >= n).unwrap_or(0)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ItemJson {
    Ring { carrier: CarrierJson, mul: Vec<Elem>, one: Elem },
    Hom { domain: String, codomain: String, image: Vec<Elem> },
    Lcr { carrier: CarrierJson, mul: Vec<Elem>, left_identity: Elem, halo: Vec<Elem>, local_mul: Vec<Elem>, local_identity: Elem },
    Ideal { of: String, members: Vec<Elem> },
    Lcrhom { domain: String, codomain: String, image: Vec<Elem> },
}

#[derive(Serialize, Deserialize)]
struct BindingJson {
    name: String,
    line: usize,
    col: usize,
    #[serde(flatten)]
    item: ItemJson,
}

impl From<&Binding> for BindingJson {
    fn from(b: &Binding) -> Self {
        let item = match &b.item {
            Item::Ring(r) => ItemJson::Ring { carrier: CarrierJson::of(r.carrier()), mul: r.mul_table().to_vec(), one: r.one() },
            Item::RingHom { domain, codomain, hom } => {
                ItemJson::Hom { domain: domain.clone(), codomain: codomain.clone(), image: hom.image.clone() }
            }
            Item::Lcr(r) => ItemJson::Lcr {
                carrier: CarrierJson::of(r.carrier()),
                mul: r.mul_table().to_vec(),
                left_identity: r.left_identity(),
                halo: r.halo().to_vec(),
                local_mul: r.local_mul_table().to_vec(),
                local_identity: r.local_identity(),
            },
            Item::Ideal { of, ideal } => ItemJson::Ideal { of: of.clone(), members: ideal.members().to_vec() },
            Item::LcrHom { domain, codomain, hom } => {
                ItemJson::Lcrhom { domain: domain.clone(), codomain: codomain.clone(), image: hom.image().to_vec() }
            }
        };
        BindingJson { name: b.name.clone(), line: b.line, col: b.col, item }
    }
}

impl BindingJson {
    fn rebuild(&self, ws: &Workspace) -> Result<Item, DslError> {
        let (line, col) = (self.line, self.col);
        let fail = |failure: Failure| DslError::Verification { line, col, name: self.name.clone(), failure };
        let refused = |e: crate::LcrError| fail(Failure::Construction { message: e.to_string() });
        let lookup = |name: &str, expected: &'static str| -> Result<&Item, DslError> {
            let b = ws.get(name).ok_or_else(|| DslError::UnknownName { line, col, name: name.to_string() })?;
            if b.item.kind() != expected {
                return Err(DslError::WrongKind { line, col, name: name.to_string(), found: b.item.kind(), expected });
            }
            Ok(&b.item)
        };
        match &self.item {
            ItemJson::Ring { carrier, mul, one } => {
                let ring = CommutativeRingTable::from_parts(carrier.build().map_err(refused)?, mul.clone(), *one).map_err(refused)?;
                Ok(Item::Ring(ring))
            }
            ItemJson::Hom { domain, codomain, image } => {
                let (Item::Ring(a), Item::Ring(b)) = (lookup(domain, "ring")?, lookup(codomain, "ring")?) else {
                    unreachable!("kinds checked by lookup")
                };
                let hom = RingHom { image: image.clone() };
                hom.verify(a, b).map_err(refused)?;
                Ok(Item::RingHom { domain: domain.clone(), codomain: codomain.clone(), hom })
            }
            ItemJson::Lcr { carrier, mul, left_identity, halo, local_mul, local_identity } => {
                let rng = LcrTable::from_parts(
                    carrier.build().map_err(refused)?,
                    mul.clone(),
                    *left_identity,
                    halo.clone(),
                    local_mul.clone(),
                    *local_identity,
                )
                .map_err(refused)?;
                if let Some(f) = axiom_failure(&rng) {
                    return Err(fail(f));
                }
                if rng.halo_for(*left_identity).ok().as_deref() != Some(halo.as_slice()) {
                    return Err(fail(Failure::Construction { message: "halo does not match the left identity".into() }));
                }
                Ok(Item::Lcr(Arc::new(rng)))
            }
            ItemJson::Ideal { of, members } => {
                let Item::Lcr(rng) = lookup(of, "lcr")? else { unreachable!("kinds checked by lookup") };
                let ideal = IdealSet::new(rng, members.iter().copied()).map_err(refused)?;
                Ok(Item::Ideal { of: of.clone(), ideal })
            }
            ItemJson::Lcrhom { domain, codomain, image } => {
                let (Item::Lcr(r), Item::Lcr(s)) = (lookup(domain, "lcr")?, lookup(codomain, "lcr")?) else {
                    unreachable!("kinds checked by lookup")
                };
                let hom = RngHom::new(r.clone(), s.clone(), image.clone()).map_err(refused)?;
                if let Some(f) = hom_failure(&hom) {
                    return Err(fail(f));
                }
                Ok(Item::LcrHom { domain: domain.clone(), codomain: codomain.clone(), hom })
            }
        }
    }
}
