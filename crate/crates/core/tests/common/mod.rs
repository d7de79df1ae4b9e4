#![allow(dead_code)]

use std::sync::Arc;

use cfcalc::{Cf, Dyadic, SimplicialComplex};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Largest simplex count of a complex on 8 vertices of dimension ≤ 3.
pub const MAX_SIMPLICES: usize = 8 + 28 + 56 + 70;

/// Random complexes on at most 8 vertices with dimension at most 3, given
/// by up to 6 top cells.
pub fn complex() -> impl Strategy<Value = Arc<SimplicialComplex>> {
    (1u32..=8).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=4), 1..=6).prop_map(|cells| {
            let cells = cells.into_iter().map(|c| c.into_iter().collect::<Vec<_>>());
            Arc::new(SimplicialComplex::build(cells).expect("nonempty distinct cells"))
        })
    })
}

/// Raw material for a dyadic function: numerators in [-6, 6] over 1, 2 or 4.
pub fn raw_values() -> impl Strategy<Value = Vec<(i64, u64)>> {
    prop::collection::vec((-6i64..=6, 0u64..=2), MAX_SIMPLICES)
}

pub fn function(k: &Arc<SimplicialComplex>, raw: &[(i64, u64)]) -> Cf {
    let values = raw[..k.len()]
        .iter()
        .map(|&(m, e)| Dyadic::new(BigInt::from(m), e))
        .collect();
    Cf::from_values(k.clone(), values).expect("length matches")
}

pub fn int(n: i64) -> Dyadic {
    Dyadic::from(n)
}
