use fitheight::parse::parse;
use fitheight_core::constructors::{cyc, dir, wr, GroupExpr};
use proptest::prelude::*;

fn expr() -> impl Strategy<Value = GroupExpr> {
    let leaf = prop_oneof![
        (1u64..100).prop_map(cyc),
        (0u32..3).prop_map(|n| GroupExpr::Ex2 { p: 2, q: 3, n }),
        (0u32..2).prop_map(|n| GroupExpr::Ex1 { p: 2, q: 3, r: 5, t: 7, n }),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| dir(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| wr(a, b)),
        ]
    })
}

/// Pads every punctuation mark with spaces and newlines.
fn spaced(s: &str) -> String {
    s.chars().flat_map(|c| if c.is_ascii_punctuation() { vec![' ', c, '\n', '\t'] } else { vec![c] }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_printing_round_trips(e in expr()) {
        let text = e.to_string();
        prop_assert!(!text.contains(' '));
        prop_assert_eq!(&parse(&text).unwrap(), &e);
    }

    #[test]
    fn whitespace_is_ignored(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&spaced(&text)).unwrap(), e);
    }
}
