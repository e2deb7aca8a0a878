use dualdist::boolean::{derivative, is_resilient, satisfies_epc};
use dualdist::enumerative::{binomial_sum, ell, macwilliams};
use dualdist::lp::{apply_parity_case, build_base_system, feasible, ParityCase};
use dualdist::{exists_code, BinaryMatrix, LinearCode, SearchOptions, TruthTable, Verdict};
use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::strategy::ValueTree;

fn matrix(max_n: usize) -> impl Strategy<Value = BinaryMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        vec(any::<u64>(), 1..=n).prop_map(move |rows| BinaryMatrix::from_rows(rows, n).unwrap())
    })
}

/// A code with `1 <= m <= n - 1`.
fn proper_code(max_n: usize) -> impl Strategy<Value = LinearCode> {
    matrix(max_n).prop_filter_map("proper code", |g| {
        LinearCode::span(&g)
            .ok()
            .filter(|c| c.dimension() < c.len())
    })
}

fn brute_weights(c: &LinearCode) -> Vec<u128> {
    let mut w = vec![0u128; c.len() + 1];
    for v in 0u64..1 << c.len() {
        if c.contains(v) {
            w[v.count_ones() as usize] += 1;
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_idempotent(m in matrix(20)) {
        let (r, rank) = m.rref();
        let (rr, rank2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(rank, m.rank());
    }

    #[test]
    fn parity_check_annihilates_generator(c in proper_code(20)) {
        let h = c.parity_check().unwrap();
        prop_assert!(c.generator().mul_transpose(&h).unwrap().is_zero());
        prop_assert_eq!(h.rank(), c.len() - c.dimension());
    }

    #[test]
    fn weight_distribution_matches_brute_force(c in proper_code(12)) {
        prop_assert_eq!(c.weight_distribution().unwrap().counts().to_vec(), brute_weights(&c));
    }

    #[test]
    fn macwilliams_matches_dual_enumeration(c in proper_code(14)) {
        let w = c.weight_distribution().unwrap();
        let t = macwilliams(&w, c.len(), c.dimension()).unwrap();
        prop_assert_eq!(t, c.dual().unwrap().weight_distribution().unwrap());
        prop_assert_eq!(c.dual_distance_direct().unwrap(), c.dual_distance_macwilliams().unwrap());
    }

    #[test]
    fn puncturing_monotone(c in proper_code(12)) {
        let (d, dp) = (c.min_distance().unwrap(), c.dual_distance().unwrap());
        for j in 0..c.len() {
            let Ok(p) = c.puncture(j) else { continue };
            if p.dimension() == 0 || p.dimension() >= p.len() || p.dimension() != c.dimension() {
                continue;
            }
            let pd = p.min_distance().unwrap();
            prop_assert!(pd + 1 >= d && pd <= d, "d {} -> {}", d, pd);
            prop_assert!(p.dual_distance().unwrap() >= dp);
        }
    }

    #[test]
    fn code_weights_satisfy_lp(c in proper_code(12)) {
        let (n, m) = (c.len(), c.dimension());
        let (d, dp) = (c.min_distance().unwrap(), c.dual_distance().unwrap());
        let w = c.weight_distribution().unwrap();
        let values: Vec<BigInt> = w.counts()[d..].iter().map(|&x| BigInt::from(x)).collect();
        let base = build_base_system(n, d, dp).unwrap();
        prop_assert!(base.satisfied_by(&values));
        prop_assert!(feasible(&base));
        let case = ParityCase::from_weights(&w, &w.macwilliams().unwrap());
        let refined = apply_parity_case(&base, case, Some(m)).unwrap();
        prop_assert!(refined.satisfied_by(&values), "{:?}", case);
        prop_assert!(feasible(&refined));
    }

    #[test]
    fn lp_feasibility_ignores_ordering(
        (n, d, e) in (4usize..=11).prop_flat_map(|n| (Just(n), 2..=n / 2 + 1, 2..=n / 2 + 1)),
        seed in any::<u64>(),
    ) {
        let base = build_base_system(n, d, e).unwrap();
        let mut perm_rows = base.clone();
        let k = perm_rows.constraints.len();
        perm_rows.constraints.rotate_left((seed as usize) % k.max(1));
        perm_rows.constraints.reverse();
        let vars = base.num_vars();
        let shift = (seed >> 32) as usize % vars;
        let mut relabeled = perm_rows.clone();
        for c in &mut relabeled.constraints {
            c.coeffs.rotate_left(shift);
        }
        let f = feasible(&base);
        prop_assert_eq!(f, feasible(&perm_rows));
        prop_assert_eq!(f, feasible(&relabeled));
        prop_assert_eq!(f, feasible(&base));
    }
}

#[test]
fn ell_improves_hamming_for_even_d() {
    for d in (2..=16).step_by(2) {
        for n in d / 2..=24 {
            assert!(ell(n, d) > binomial_sum(n, 0, d / 2 - 1), "n={n} d={d}");
        }
    }
}

#[test]
fn search_witnesses_revalidate() {
    for (n, d, e) in [
        (6, 3, 3),
        (7, 3, 4),
        (8, 4, 4),
        (11, 5, 3),
        (12, 6, 3),
        (13, 5, 4),
        (9, 4, 3),
    ] {
        for sequential in [true, false] {
            let o = exists_code(
                n,
                d,
                e,
                &SearchOptions {
                    sequential,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(o.verdict, Verdict::Found, "({n},{d},{e})");
            let w = o.witness.unwrap();
            assert_eq!(w.len(), n);
            assert!(w.min_distance().unwrap() >= d && w.dual_distance().unwrap() >= e);
        }
    }
}

fn table(n: usize) -> impl Strategy<Value = TruthTable> {
    vec(any::<bool>(), 1 << n)
        .prop_map(move |bits| TruthTable::from_fn(n, |x| bits[x as usize]).unwrap())
}

fn multi_output_table() -> impl Strategy<Value = TruthTable> {
    (1usize..=5, 1usize..=2).prop_flat_map(|(n, m)| {
        vec(0u32..1 << m, 1 << n).prop_map(move |t| TruthTable::new(n, m, t).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivative_is_translation_invariant(f in table(5), delta in 0u32..32) {
        let df = derivative(&f, delta).unwrap();
        prop_assert_eq!(&df, &derivative(&f.translate(delta), delta).unwrap());
        prop_assert_eq!(df.translate(delta), df);
    }

    #[test]
    fn resilience_is_monotone(phi in multi_output_table()) {
        let n = phi.arity();
        for k in 1..=n {
            if is_resilient(&phi, k).unwrap() {
                for j in 0..k {
                    prop_assert!(is_resilient(&phi, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn balanced_functions_by_subsets(bits in subsequence((0u32..16).collect::<Vec<_>>(), 8)) {
        // exactly half the inputs map to 1, so the function is 0-resilient
        let f = TruthTable::from_fn(4, |x| bits.contains(&x)).unwrap();
        prop_assert!(is_resilient(&f, 0).unwrap());
    }
}

fn assert_epc_monotone(f: &TruthTable) {
    let n = f.arity();
    for ell in 1..=n {
        for k in 0..=n {
            if satisfies_epc(f, ell, k).unwrap() {
                for l2 in 1..=ell {
                    for k2 in 0..=k {
                        assert!(
                            satisfies_epc(f, l2, k2).unwrap(),
                            "{f:?} ({ell},{k}) but not ({l2},{k2})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn epc_is_monotone_for_small_arity() {
    // every function on at most 3 inputs
    for n in 1..=3usize {
        for bits in 0u32..1 << (1 << n) {
            assert_epc_monotone(&TruthTable::from_fn(n, |x| bits >> x & 1 == 1).unwrap());
        }
    }
    let bent = TruthTable::from_fn(4, |x| ((x & x >> 1) ^ (x >> 2 & x >> 3)) & 1 == 1).unwrap();
    assert!(satisfies_epc(&bent, 4, 0).unwrap());
    assert_epc_monotone(&bent);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..64 {
        assert_epc_monotone(&table(4).new_tree(&mut runner).unwrap().current());
    }
}
