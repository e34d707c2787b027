//! Named example rngs used across tests, the CLI and the acceptance suite.

use crate::carrier::FiniteCarrier;
use crate::construct::{halo_extension, small_rng_search};
use crate::ring::{CommutativeRingTable, RingHom};
use crate::rng::LcrTable;

fn ring(factors: &[usize]) -> CommutativeRingTable {
    CommutativeRingTable::product(factors).expect("positive factors")
}

/// `Z/2 ⊕ Z/2` with `(a,α)(b,β) = (ab, aβ)`.
pub fn r4() -> LcrTable {
    let z2 = ring(&[2]);
    halo_extension(&z2, &z2, &RingHom::identity(&z2)).expect("valid extension")
}

/// `Z/4 ⊕ Z/2` with `(a,α)(b,β) = (ab, (a mod 2)β)`.
pub fn r8() -> LcrTable {
    let (z4, z2) = (ring(&[4]), ring(&[2]));
    halo_extension(&z4, &z2, &RingHom::reduce(&z4, &z2).unwrap()).expect("valid extension")
}

/// `Z/n` with zero halo.
pub fn zn(n: usize) -> LcrTable {
    ring(&[n]).to_lcr()
}

/// `Z/2 ⊕ (Z/2 × Z/2)` through the diagonal `Z/2 → Z/2 × Z/2`.
pub fn diagonal_extension() -> LcrTable {
    let (z2, k) = (ring(&[2]), ring(&[2, 2]));
    halo_extension(&z2, &k, &RingHom::diagonal(&z2, &k).unwrap()).expect("valid extension")
}

/// The tables of [`r4`] with the local product replaced by zero, so that no
/// halo element is a local identity.
pub fn r4_without_local_identity() -> LcrTable {
    let r = r4();
    let h = r.halo().len();
    LcrTable::assemble_table(r.carrier().clone(), r.mul_table().to_vec(), vec![r.zero(); h * h], None)
        .expect("shapes are consistent")
}

/// Carriers whose structures are all included in [`corpus`].
pub const SEARCHED_CARRIERS: [&[usize]; 5] = [&[1], &[2], &[3], &[4], &[2, 2]];

/// The fixtures together with every structure found on the carriers of
/// order at most four, each with a display name.
pub fn corpus() -> Vec<(String, LcrTable)> {
    let mut out = vec![
        ("zero".to_string(), zn(1)),
        ("Z2".to_string(), zn(2)),
        ("Z4".to_string(), zn(4)),
        ("Z6".to_string(), zn(6)),
        ("R4".to_string(), r4()),
        ("R8".to_string(), r8()),
        ("diagonal".to_string(), diagonal_extension()),
    ];
    for factors in SEARCHED_CARRIERS {
        let carrier = FiniteCarrier::cyclic(factors).expect("positive factors");
        let found = small_rng_search(&carrier, usize::MAX).expect("small carrier");
        for (i, rng) in found.into_iter().enumerate() {
            out.push((format!("search{factors:?}#{i}"), rng));
        }
    }
    out
}
