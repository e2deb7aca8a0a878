//! Shared inputs for the benchmarks.

use dualdist::catalog;
use dualdist::LinearCode;

/// The `(d, d⊥)` rows of the reference table.
pub fn table_keys() -> &'static [(usize, usize)] {
    &catalog::KEYS
}

/// Catalog witnesses, built once.
pub fn catalog_codes() -> Vec<LinearCode> {
    catalog::entries()
        .iter()
        .map(|e| e.code().expect("catalog entry"))
        .collect()
}
