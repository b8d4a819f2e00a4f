use std::collections::BTreeSet;

use lulu::arrangement::{coxeter_arrangement, sr_ideal};
use lulu::phi::{compute_ib, phi_matrix, phi_matrix_type_a, roots_independent};
use lulu::{build_root_datum, minimal_generators, Family, Monomial, RootSystemType};

fn ty(f: Family, n: usize) -> RootSystemType {
    RootSystemType::new(f, n).unwrap()
}

/// Squarefree monomials on spanning n-subsets, found by brute force over
/// all n-subsets with an exact rank test.
fn spanning_oracle(t: RootSystemType) -> BTreeSet<Vec<usize>> {
    let arr = coxeter_arrangement(t);
    let d = arr.len();
    let n = t.rank();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << d) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let subset: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
        if arr.is_independent(&subset) {
            out.insert(subset);
        }
    }
    out
}

#[test]
fn sr_ideal_is_generated_by_spanning_sets() {
    for t in [ty(Family::A, 3), ty(Family::B, 3), ty(Family::C, 2), ty(Family::D, 4)] {
        let d = coxeter_arrangement(t).len();
        let want = minimal_generators(d, spanning_oracle(t).iter().map(|s| Monomial::squarefree(d, s))).unwrap();
        assert_eq!(sr_ideal(t).unwrap(), want, "{t}");
    }
}

#[test]
fn inclusion_small_ranks() {
    for t in [
        ty(Family::A, 2),
        ty(Family::A, 3),
        ty(Family::B, 2),
        ty(Family::C, 2),
        ty(Family::D, 3),
    ] {
        let sr = sr_ideal(t).unwrap();
        let ib = compute_ib(&build_root_datum(t).unwrap()).unwrap();
        assert!(sr.is_subset(&ib.ideal).unwrap(), "{t}");
        assert!(ib.ideal.codim().unwrap() >= t.rank());
    }
}

#[test]
fn d3_matches_a3_up_to_relabeling() {
    let a = compute_ib(&build_root_datum(ty(Family::A, 3)).unwrap()).unwrap().ideal;
    let d = compute_ib(&build_root_datum(ty(Family::D, 3)).unwrap()).unwrap().ideal;
    assert_eq!(a.len(), d.len());
    assert_eq!(a.codim().unwrap(), d.codim().unwrap());
    let degrees = |i: &lulu::MonomialIdeal| i.generators().iter().map(|g| g.degree()).collect::<Vec<_>>();
    assert_eq!(degrees(&a), degrees(&d));
}

#[test]
fn minor_supports_on_independent_sets() {
    // the lowest-degree part of q_J is nonzero exactly when J is a basis
    for t in [ty(Family::A, 3), ty(Family::B, 2)] {
        let datum = build_root_datum(t).unwrap();
        let phi = phi_matrix(&datum).unwrap();
        let d = datum.positive_roots().len();
        let n = t.rank();
        for mask in 0u32..(1 << d) {
            if mask.count_ones() as usize != n {
                continue;
            }
            let rows: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            let q = phi.q_minor(&rows).unwrap();
            let low = q.homogeneous_part(n as u32);
            assert_eq!(!low.is_zero(), roots_independent(&datum, &rows), "{t} {rows:?}");
            assert!(q.min_degree().is_none_or(|m| m as usize >= n));
        }
    }
}

#[test]
fn closed_form_agrees_with_conjugation() {
    for n in 2..=3 {
        let datum = build_root_datum(ty(Family::A, n)).unwrap();
        let closed = compute_ib(&datum).unwrap().ideal;
        let from_closed = lulu::phi::compute_ib_from(&phi_matrix_type_a(&datum).unwrap()).unwrap().ideal;
        assert_eq!(closed, from_closed);
    }
}
