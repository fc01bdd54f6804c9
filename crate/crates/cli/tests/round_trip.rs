use isospectral_cli::format::{GraphEntry, GraphFile};
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((-8i32..=8, -8i32..=8).prop_map(|(a, b)| [a as f64 / 4.0, b as f64 / 3.0]), 1..=max_len)
}

prop_compose! {
    fn graph_file()(n in 1usize..6, base in 0usize..2)
        (entries in prop::collection::vec((0..n, 0..n, coeffs(3), prop::option::of(coeffs(3))), 0..12),
         n in Just(n), base in Just(base)) -> GraphFile {
        GraphFile {
            n,
            index_base: base,
            entries: entries
                .into_iter()
                .map(|(i, j, num, den)| GraphEntry { i: i + base, j: j + base, num, den })
                .collect(),
        }
    }
}

proptest! {
    #[test]
    fn parse_canonicalize_serialize_is_a_fixed_point(f in graph_file()) {
        let text = serde_json::to_string(&f).unwrap();
        // Random denominators may vanish; such files must be rejected, not mangled.
        let Ok(loaded) = GraphFile::parse(&text).unwrap().to_graph() else {
            return Ok(());
        };
        let once = GraphFile::from_graph(&loaded.graph).to_json();
        let again = GraphFile::parse(&once).unwrap().to_graph().unwrap();
        prop_assert!(again.warnings.is_empty());
        prop_assert_eq!(GraphFile::from_graph(&again.graph).to_json(), once);
    }
}
