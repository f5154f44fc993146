//! Fixtures shared by the criterion benches.

use sgrr_core::modulidim::SweepRanges;
use sgrr_core::scalar::rat;
use sgrr_core::{ChowModel, SuperBundle};

/// The full acceptance sweep over `P^{r|s}` targets.
pub fn full_sweep() -> SweepRanges {
    SweepRanges::default()
}

/// A rank `n|n` bundle on `P^r` with roots `1, 2, ..., n` and `-1, ..., -n`.
pub fn projective_bundle(r: u32, n: i64) -> SuperBundle {
    SuperBundle::new(
        ChowModel::ProjSpace { r },
        (1..=n).map(rat).collect(),
        (1..=n).map(|k| rat(-k)).collect(),
    )
    .expect("projective space admits degree-1 roots")
}
