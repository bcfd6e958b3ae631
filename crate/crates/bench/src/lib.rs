//! Shared inputs for the criterion benchmarks in `benches/`.

use hertzinv_core::{Family, PatternSet};

/// The four pattern sets with closed forms, with their spec strings.
pub fn families() -> Vec<(&'static str, PatternSet)> {
    Family::ALL.iter().map(|f| (f.spec(), f.pattern_set())).collect()
}
