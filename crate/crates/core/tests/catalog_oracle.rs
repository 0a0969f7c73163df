//! Exhaustive catalog sizes against the committed brute-force counts in
//! `oracle/matroid_counts.json` (produced by `oracle/count_matroids.py`).

use std::collections::BTreeMap;

use matx_core::catalog::{catalog_generate, exhaustive, CatalogSpec};

#[test]
fn exhaustive_counts_match_brute_force() {
    let text = include_str!("oracle/matroid_counts.json");
    let counts: BTreeMap<String, usize> = serde_json::from_str(text).unwrap();
    assert!(counts.len() >= 12);
    for (key, expected) in counts {
        let (r, n) = key.split_once(',').unwrap();
        let (r, n): (usize, usize) = (r.parse().unwrap(), n.parse().unwrap());
        assert_eq!(exhaustive(r, n).len(), expected, "rank {r} on {n} elements");
    }
}

#[test]
fn catalog_ranges_add_up() {
    // 1 + 3 + 7 + 13 for r = 2, n = 2..=5
    let entries = catalog_generate(&CatalogSpec::exhaustive(2, 5)).unwrap();
    assert_eq!(entries.len(), 24);
    let only_five = catalog_generate(&CatalogSpec::exhaustive(2, 5).with_n_min(5)).unwrap();
    assert_eq!(only_five.len(), 13);
    assert!(only_five.iter().all(|(name, m)| name.starts_with("r2n5-") && m.ground_size() == 5));
}
