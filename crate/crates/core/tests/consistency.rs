//! Cross-checks between bounds, LP systems, the catalog and published values.

use dualdist::catalog;
use dualdist::lp::{
    apply_parity_case, build_base_system, lp_lower, lp_refined_lower, refined_feasible_cases,
    ParityCase,
};
use dualdist::table1::PUBLISHED;
use dualdist::{bound_report, Method, MethodSet};
use num_bigint::BigInt;

fn known(d: usize, e: usize) -> Option<usize> {
    if d == 2 || e == 2 {
        return Some(d.max(e));
    }
    PUBLISHED
        .iter()
        .find(|r| (r.d, r.dperp) == (d, e) || (r.d, r.dperp) == (e, d))
        .map(|r| r.true_value)
}

#[test]
fn true_values_grow_with_distance() {
    for d in 3..=8 {
        for e in 2..=6 {
            let Some(t) = known(d, e) else { continue };
            if let Some(below) = known(d - 1, e) {
                assert!(below < t, "N({},{e}) = {below} vs N({d},{e}) = {t}", d - 1);
            }
            if let Some(below) = known(d, e - 1).filter(|_| e > 2) {
                assert!(below < t, "N({d},{}) = {below} vs N({d},{e}) = {t}", e - 1);
            }
        }
    }
}

#[test]
fn lower_bounds_never_exceed_known_values() {
    for d in 2..=8 {
        for e in 2..=8 {
            let r = bound_report(d, e, &MethodSet::all()).unwrap();
            if let Some(t) = known(d, e) {
                assert!(
                    r.best_lb <= t,
                    "({d},{e}) lower bound {} above {t}",
                    r.best_lb
                );
            }
            assert!(r.best_ub.unwrap() >= r.best_lb);
            for m in Method::ALL.into_iter().filter(|m| !m.is_upper()) {
                assert!(r.gv_ub.unwrap() >= r.get(m).unwrap(), "({d},{e}) {m}");
            }
        }
    }
}

#[test]
fn bound_ordering_on_table_rows() {
    for row in &PUBLISHED {
        let (d, e) = (row.d, row.dperp);
        let h = dualdist::bounds::hamming_lower(d, e).unwrap();
        let lp = lp_lower(d, e).unwrap();
        let refined = lp_refined_lower(d, e).unwrap();
        assert!(h <= lp && lp <= refined, "({d},{e}): {h} {lp} {refined}");
    }
}

#[test]
fn catalog_weights_satisfy_their_lp_systems() {
    for entry in catalog::entries() {
        let code = entry.code().unwrap();
        let (n, d, e) = entry.claimed;
        let w = code.weight_distribution().unwrap();
        let values: Vec<BigInt> = w.counts()[d..].iter().map(|&x| BigInt::from(x)).collect();
        let base = build_base_system(n, d, e).unwrap();
        assert!(base.satisfied_by(&values), "{}", entry.name);
        let case = ParityCase::from_weights(&w, &w.macwilliams().unwrap());
        let refined = apply_parity_case(&base, case, Some(code.dimension())).unwrap();
        assert!(
            refined.satisfied_by(&values),
            "{} in case {case}",
            entry.name
        );
        assert!(
            refined_feasible_cases(n, d, e)
                .unwrap()
                .contains(&(case, code.dimension())),
            "{}",
            entry.name
        );
    }
}

#[test]
fn constructors_match_table_parameters() {
    let h = catalog::hamming(3).unwrap();
    assert_eq!(
        (
            h.len(),
            h.dimension(),
            h.min_distance().unwrap(),
            h.dual_distance().unwrap()
        ),
        (7, 4, 3, 4)
    );
    let rm = catalog::reed_muller_first_order(4).unwrap();
    assert_eq!((rm.len(), rm.dual_distance().unwrap()), (16, 4));
    let s = catalog::simplex(4).unwrap();
    assert_eq!(
        (
            s.len(),
            s.min_distance().unwrap(),
            s.dual_distance().unwrap()
        ),
        (15, 8, 3)
    );
    for (d, e) in catalog::KEYS {
        let v = catalog::verify(&catalog::get(d, e).unwrap()).unwrap();
        assert!(catalog::satisfies_ell_bound(v.n, v.m, v.d));
        assert!(catalog::satisfies_ell_bound(v.n, v.n - v.m, v.dperp_direct));
    }
}

#[test]
fn remark_values() {
    for delta in 2..=12 {
        for (d, e) in [(2, delta), (delta, 2)] {
            let r = bound_report(d, e, &MethodSet::closed_form()).unwrap();
            assert_eq!(r.true_value.unwrap().n, delta);
        }
    }
}
