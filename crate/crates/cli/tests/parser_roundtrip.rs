use std::sync::Arc;

use duval_cli::parse_poly;
use duval_core::gfpoly::{Monomial, OrderKind, PolyFp, Ring};
use proptest::prelude::*;

fn rings() -> impl Strategy<Value = Arc<Ring>> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7, 13, 101, 2_147_483_647]),
        prop::sample::select(vec![
            vec!["x", "y", "z"],
            vec!["u", "v", "w"],
            vec!["x", "y", "z", "t"],
            vec!["x1", "y'", "Z2"],
        ]),
        prop::sample::select(vec![OrderKind::Grevlex, OrderKind::Lex]),
    )
        .prop_map(|(p, vars, order)| Ring::new(p, &vars).unwrap().reordered(order))
}

fn canonical() -> impl Strategy<Value = PolyFp> {
    rings().prop_flat_map(|r| {
        let n = r.nvars();
        prop::collection::vec((any::<i64>(), prop::collection::vec(0u32..6, n)), 0..8).prop_map(
            move |terms| {
                PolyFp::from_terms(
                    &r,
                    terms.into_iter().map(|(c, e)| (Monomial::from_exponents(e), c)),
                )
            },
        )
    })
}

/// Random expression text together with the polynomial it denotes, built with ring operations.
fn expression(r: Arc<Ring>) -> impl Strategy<Value = (String, PolyFp)> {
    let vars: Vec<String> = r.vars().to_vec();
    let r2 = r.clone();
    let leaf = prop_oneof![
        (0u64..1000).prop_map({
            let r = r.clone();
            move |c| (c.to_string(), PolyFp::constant(&r, c as i64))
        }),
        prop::sample::select(vars).prop_map(move |v| (v.clone(), PolyFp::var(&r2, &v).unwrap())),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|((a, f), (b, g))| (format!("{a} + {b}"), &f + &g)),
            (inner.clone(), inner.clone()).prop_map(|((a, f), (b, g))| (format!("{a} - ({b})"), &f - &g)),
            (inner.clone(), inner.clone()).prop_map(|((a, f), (b, g))| (format!("({a})*({b})"), &f * &g)),
            (inner.clone(), 0u32..4).prop_map(|((a, f), e)| (format!("({a})^{e}"), f.pow(e))),
            inner.prop_map(|(a, f)| (format!("-({a})"), -&f)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn parse_of_print_is_identity(f in canonical()) {
        let printed = f.to_string();
        let back = parse_poly(&printed, f.ring()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn expressions_denote_their_ring_value((text, f) in rings().prop_flat_map(expression)) {
        prop_assert_eq!(parse_poly(&text, f.ring()).unwrap(), f.clone());
        let spaced = text.replace(' ', "\n  ");
        prop_assert_eq!(parse_poly(&spaced, f.ring()).unwrap(), parse_poly(&text, f.ring()).unwrap());
    }
}

#[test]
fn examples() {
    let r = Ring::new(5, &["x", "y", "z"]).unwrap();
    assert_eq!(parse_poly("x*y - z^3", &r).unwrap().to_string(), "4*z^3 + x*y");
    assert!(parse_poly("0", &r).unwrap().is_zero());
    let rel = Ring::new(5, &["u", "v", "w"]).unwrap();
    assert_eq!(
        parse_poly("w^2 - u^2*v - 4*v^3", &rel).unwrap().to_string(),
        "4*u^2*v + v^3 + w^2"
    );
}
