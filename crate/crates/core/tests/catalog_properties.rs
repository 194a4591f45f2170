use duval_core::catalog::{
    classify, dynkin_data, equation_for, CatalogError, DynkinType, Family, Grid,
};
use duval_core::gfpoly::is_prime;
use duval_core::groebner::{buchberger, quotient_dimension};
use duval_core::tjurina::jacobian_ideal;

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

fn grid_types() -> Vec<DynkinType> {
    Grid::default().types
}

/// The table of linearly reductive / tame quotient singularities, entered row by row.
fn table(t: DynkinType, p: u64) -> (bool, bool) {
    match (t.family(), t.index()) {
        (Family::A, m) => (true, !(m as u64 + 1).is_multiple_of(p)),
        (Family::D, m) => {
            let n = m as u64 - 2;
            (p >= 3, p >= 3 && !n.is_multiple_of(p))
        }
        (Family::E, 6 | 7) => (p >= 5, p >= 5),
        (Family::E, 8) => (p >= 7, p >= 7),
        _ => unreachable!(),
    }
}

#[test]
fn classification_matches_the_table() {
    for t in grid_types() {
        for p in primes_upto(101) {
            let c = classify(t, p).unwrap();
            assert_eq!((c.linearly_reductive, c.tame), table(t, p), "{t}@{p}");
            assert_eq!(c.wild_a, t.family() == Family::A && !c.tame, "{t}@{p}");
            assert!(!c.tame || c.linearly_reductive);
        }
    }
}

#[test]
fn everything_is_linearly_reductive_from_seven() {
    let mut types = grid_types();
    types.extend((1..=50).map(|m| DynkinType::a(m).unwrap()));
    types.extend((4..=50).map(|m| DynkinType::d(m).unwrap()));
    for t in types {
        for p in primes_upto(101).into_iter().filter(|&p| p >= 7) {
            assert!(classify(t, p).unwrap().linearly_reductive, "{t}@{p}");
        }
    }
}

#[test]
fn linear_reductivity_is_monotone_in_p() {
    for t in grid_types() {
        let flags: Vec<bool> = primes_upto(101)
            .into_iter()
            .map(|p| classify(t, p).unwrap().linearly_reductive)
            .collect();
        let first = flags.iter().position(|&b| b).expect("eventually true");
        assert!(flags[first..].iter().all(|&b| b), "{t}");
    }
}

#[test]
fn non_primes_are_rejected() {
    for n in [0, 1, 4, 9, 15] {
        assert!(matches!(
            classify(DynkinType::a(3).unwrap(), n),
            Err(CatalogError::NotPrime(_))
        ));
    }
}

#[test]
fn dynkin_invariants_up_to_fifty() {
    let mut types: Vec<DynkinType> = (1..=50).map(|m| DynkinType::a(m).unwrap()).collect();
    types.extend((4..=50).map(|m| DynkinType::d(m).unwrap()));
    types.extend((6..=8).map(|k| DynkinType::e(k).unwrap()));
    for t in types {
        let d = dynkin_data(t);
        let n = t.index();
        assert_eq!(d.curve_count, n);
        assert!(d.node_degrees.iter().all(|&t| t <= 3), "{t}");
        assert_eq!(d.sum_t, 2 * (n - 1), "{t}");
        assert_eq!(d.h0_theta, 3 * n as i64 - d.sum_t as i64);
        // A tree: connected with n - 1 edges; exactly one branch point outside A.
        let branch = d.node_degrees.iter().filter(|&&t| t == 3).count();
        let expected = if t.family() == Family::A { 0 } else { 1 };
        assert_eq!(branch, expected, "{t}");
    }
}

#[test]
fn catalog_equations_define_isolated_singularities() {
    let grid = Grid::default();
    let mut in_catalog = 0;
    for (t, p) in grid.pairs() {
        match equation_for(t, p) {
            Ok(m) => {
                in_catalog += 1;
                let g = &m.equation;
                assert_eq!(g.constant_term(), 0, "{t}@{p}");
                assert!(g.gradient().iter().all(|d| d.constant_term() == 0), "{t}@{p}");
                let gb = buchberger(&jacobian_ideal(g).unwrap()).unwrap();
                assert!(quotient_dimension(&gb).finite().is_some(), "{t}@{p}");
            }
            Err(CatalogError::NotInCatalog { .. }) => {
                assert!(!classify(t, p).unwrap().linearly_reductive)
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert_eq!(in_catalog, 20 * 6 - 5 - 2 * 2 - 3);
}

#[test]
fn dihedral_index_conversion() {
    for n in 2..=30 {
        let t = DynkinType::d_from_dihedral(n).unwrap();
        assert_eq!(t.index(), n + 2);
        assert_eq!(t.dihedral_parameter(), Some(n));
        // D_m: the y-exponent of the last term is m - 1.
        let g = equation_for(t, 3).unwrap().equation;
        let max_y = g.terms().iter().map(|(m, _)| m.exponents()[1]).max().unwrap();
        assert_eq!(max_y, t.index() - 1);
    }
    for m in 1..=30 {
        assert_eq!(DynkinType::a(m).unwrap().cyclic_order(), Some(m + 1));
    }
}
