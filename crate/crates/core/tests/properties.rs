mod common;

use std::collections::BTreeSet;

use chainzero::kostant::{ext_dim_indecomposable, Triangle};
use chainzero::qip::{objective_rising, solve_sorted_with, transport_solutions, Compositions};
use chainzero::qseries::{inverse_pochhammer, lr1_series};
use chainzero::*;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn partition_strategy(max_n: usize, max_m: u64) -> impl Strategy<Value = KostantPartition> {
    (1..=max_n).prop_flat_map(move |n| {
        let cells = (n + 1) * (n + 2) / 2;
        prop::collection::vec(0..=max_m, cells).prop_map(move |vals| {
            let entries = Interval::all(n).zip(vals);
            KostantPartition::from_entries(n, entries)
        })
    })
}

fn dims_strategy(max_n: usize, max_d: u64) -> impl Strategy<Value = Vec<u64>> {
    (2..=max_n + 1).prop_flat_map(move |len| prop::collection::vec(0..=max_d, len))
}

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-20i64..=20, order + 1).prop_map(TruncatedSeries::from_coeffs)
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i128..=3, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i128>> = v.chunks(c).map(<[i128]>::to_vec).collect();
            IntMatrix::from_rows(&rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_pattern_round_trip(m in partition_strategy(6, 5)) {
        let r = rank_pattern(&m);
        prop_assert!(r.is_monotone());
        prop_assert_eq!(partition_from_rank(&r).unwrap(), m);
    }

    #[test]
    fn codimension_matches_euler_form(m in partition_strategy(5, 4)) {
        let d = m.column_sums().unwrap();
        prop_assert_eq!(orbit_codimension(&m).unwrap(), codim_via_hom(&d, &m));
    }

    #[test]
    fn codimension_scales_quadratically(m in partition_strategy(5, 4), c in 0u64..=6) {
        let scaled = m.scaled(c).unwrap();
        let c = i128::from(c);
        prop_assert_eq!(orbit_codimension(&scaled).unwrap(), c * c * orbit_codimension(&m).unwrap());
    }

    #[test]
    fn exact_rank_matches_minors(a in matrix_strategy()) {
        prop_assert_eq!(exact_rank(&a).unwrap(), rank_by_minors(&a));
    }

    #[test]
    fn zero_one_rank_matches_minors(bits in prop::collection::vec(any::<bool>(), 25)) {
        let rows: Vec<Vec<i128>> = bits.chunks(5).map(|r| r.iter().map(|&b| i128::from(b)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(exact_rank(&a).unwrap(), rank_by_minors(&a));
    }

    #[test]
    fn series_product_is_associative(
        a in series_strategy(8), b in series_strategy(8), c in series_strategy(8)
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn pochhammer_inverts_product(s in 0u64..=12, order in 0usize..=30) {
        let mut p = inverse_pochhammer(s, order);
        for k in 1..=s as usize {
            p.mul_one_minus_qk(k);
        }
        prop_assert_eq!(p, TruncatedSeries::one(order));
    }

    #[test]
    fn series_matches_term_by_term_expansion(d in dims_strategy(3, 4), order in 0usize..=14) {
        let f = lr1_series(&dv(&d), order);
        let oracle: Vec<BigInt> = lr1_oracle(&d, order);
        prop_assert_eq!(f.coeffs(), &oracle[..]);
    }

    #[test]
    fn sorted_program_matches_listing(d in dims_strategy(4, 5)) {
        let d = dv(&d);
        let (min, sols) = sorted_program_oracle(d.dims());
        for prune in [false, true] {
            let s = solve_sorted_with(&d, SolveOptions { prune }).unwrap();
            prop_assert_eq!(s.minimum, min);
            prop_assert_eq!(&s.solutions, &sols);
        }
    }

    #[test]
    fn rising_objective_matches_literal(d in dims_strategy(4, 5)) {
        let d = dv(&d);
        for k in d.min_positions() {
            for parts in Compositions::new(d.get(k), d.order()) {
                let v = RisingVector::from_parts(k, &parts);
                let full: Vec<u64> = (0..=d.order()).map(|i| v.get(i).unwrap_or(0)).collect();
                prop_assert_eq!(objective_rising(&d, &v).unwrap(), rising_objective_literal(d.dims(), k, &full));
            }
        }
    }

    #[test]
    fn transport_and_k_independence(d in dims_strategy(4, 4)) {
        let d = dv(&d);
        let sorted = solve_sorted(&d).unwrap();
        let mut partition_sets = BTreeSet::new();
        for k in d.min_positions() {
            let rising = solve_rising(&d, k).unwrap();
            prop_assert_eq!(rising.minimum, sorted.minimum);
            prop_assert_eq!(transport_solutions(&d, k, &sorted).unwrap(), rising.solutions.clone());
            let report = components(&d, Some(k)).unwrap();
            let set: BTreeSet<KostantPartition> =
                report.components.into_iter().map(|c| c.kostant_partition).collect();
            partition_sets.insert(set);
        }
        prop_assert_eq!(partition_sets.len(), 1);
    }

    #[test]
    fn codimension_zero_iff_zero_entry(d in dims_strategy(4, 4)) {
        let d = dv(&d);
        let c = closed_form(&d).unwrap().c;
        prop_assert_eq!(c == 0, d.min() == 0);
    }

    #[test]
    fn representatives_are_partial_permutations(m in partition_strategy(4, 3)) {
        let g = diagram_of_partition(&m);
        prop_assert_eq!(partition_of_diagram(&g).unwrap(), m.clone());
        let t = representative_tuple(&g).unwrap();
        for a in t.matrices() {
            for r in 0..a.rows() {
                prop_assert!((0..a.cols()).map(|c| a.get(r, c)).sum::<i128>() <= 1);
            }
            for c in 0..a.cols() {
                prop_assert!((0..a.rows()).map(|r| a.get(r, c)).sum::<i128>() <= 1);
            }
        }
        prop_assert_eq!(partial_products_ranks(&t).unwrap(), rank_pattern(&m));
        prop_assert_eq!(product_is_zero(&t).unwrap(), lies_in_sigma(&m));
    }

    #[test]
    fn rising_diagram_multiplicity_readout(d in dims_strategy(4, 4)) {
        let d = dv(&d);
        let n = d.order();
        for k in d.min_positions() {
            for parts in Compositions::new(d.get(k), n) {
                let v = RisingVector::from_parts(k, &parts);
                let m = partition_of_diagram(&diagram_from_rising(&d, &v).unwrap()).unwrap();
                m.validate(&d).unwrap();
                prop_assert!(lies_in_sigma(&m));
                for i in k + 1..=n {
                    prop_assert_eq!(m.get(0, i - 1), v.value(i));
                }
                for i in 0..k {
                    prop_assert_eq!(m.get(i + 1, n), v.value(i));
                }
            }
        }
    }

    #[test]
    fn increasing_case_matches_rising(mut d in dims_strategy(4, 4)) {
        d.sort_unstable();
        let d = dv(&d);
        for e in Compositions::new(d.get(0), d.order()) {
            let a = partition_of_diagram(&diagram_increasing_case(&d, &e).unwrap()).unwrap();
            let rising = RisingVector::from_parts(0, &e);
            let b = partition_of_diagram(&diagram_from_rising(&d, &rising).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn counts_are_permutation_invariant(d in dims_strategy(4, 5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = d.clone();
        shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let a = closed_form(&dv(&d)).unwrap();
        let b = closed_form(&dv(&shuffled)).unwrap();
        prop_assert_eq!((a.c, a.theta), (b.c, b.theta));
        let sa = solve_sorted(&dv(&d)).unwrap();
        let sb = solve_sorted(&dv(&shuffled)).unwrap();
        prop_assert_eq!((sa.minimum, sa.theta()), (sb.minimum, sb.theta()));
    }

    #[test]
    fn literal_theta_index_agrees_when_non_negative(d in dims_strategy(5, 9)) {
        use chainzero::closedform::{binomial, theta_index_literal};
        let r = closed_form(&dv(&d)).unwrap();
        let idx = theta_index_literal(r.n_tilde, r.s);
        if idx >= 0 {
            prop_assert_eq!(binomial(r.n_tilde as u64, idx as u64), Some(r.theta));
        }
        let rho = r.s % r.n_tilde as u64;
        prop_assert_eq!(binomial(r.n_tilde as u64, r.n_tilde as u64 - rho), Some(r.theta));
    }

    #[test]
    fn open_orbit_has_codimension_zero(d in dims_strategy(6, 6)) {
        let d = dv(&d);
        let m = partition_of_diagram(&open_orbit_diagram(&d)).unwrap();
        m.validate(&d).unwrap();
        prop_assert_eq!(orbit_codimension(&m).unwrap(), 0);
    }
}

#[test]
fn enumeration_matches_column_builder() {
    for d in [
        &[2u64, 2, 2][..],
        &[1, 3, 2],
        &[2, 0, 2],
        &[3, 2, 3, 1],
        &[1, 1, 1, 1, 1],
        &[4, 2],
    ] {
        let lib: BTreeSet<Vec<(usize, usize, u64)>> =
            enumerate_partitions(&dv(d)).map(|m| triples(&m)).collect();
        let oracle = partitions_by_columns(d);
        assert_eq!(lib, oracle, "d = {d:?}");
        let sigma: BTreeSet<_> = enumerate_sigma_partitions(&dv(d))
            .map(|m| triples(&m))
            .collect();
        let filtered: BTreeSet<_> = oracle
            .into_iter()
            .filter(|t| !t.iter().any(|&(k, l, _)| (k, l) == (0, d.len() - 1)))
            .collect();
        assert_eq!(sigma, filtered, "d = {d:?}");
    }
}

#[test]
fn open_orbit_is_the_only_codimension_zero_orbit() {
    for d in [
        &[2u64, 2, 2][..],
        &[1, 3, 2],
        &[3, 1, 2, 2],
        &[2, 0, 2],
        &[1, 2, 3, 2, 1],
    ] {
        let d = dv(d);
        let open = partition_of_diagram(&open_orbit_diagram(&d)).unwrap();
        let zero: Vec<KostantPartition> = enumerate_partitions(&d)
            .filter(|m| orbit_codimension(m).unwrap() == 0)
            .collect();
        assert_eq!(zero, vec![open], "d = {d}");
    }
}

#[test]
fn two_two_two_partition_count() {
    // j of the two strands at 0 reach column 1; then a <= j old and b <= 2 - j
    // new ones reach column 2: 3 + 4 + 3 choices
    assert_eq!(partitions_by_columns(&[2, 2, 2]).len(), 10);
    assert_eq!(enumerate_partitions(&dv(&[2, 2, 2])).count(), 10);
}

#[test]
fn ext_vanishes_against_ends() {
    for n in 1..=6 {
        let all: Vec<Interval> = Interval::all(n).collect();
        for &a in &all {
            for k in 0..=n {
                assert_eq!(ext_dim_indecomposable(a, Interval::new(0, k)), 0);
                assert_eq!(ext_dim_indecomposable(Interval::new(k, n), a), 0);
            }
        }
    }
}

#[test]
fn triangle_rows_cover_every_interval() {
    let mut t = Triangle::<u64>::new(4);
    for iv in Interval::all(4) {
        *t.get_mut(iv.k, iv.l) = 1;
    }
    assert_eq!(t.rows().map(|r| r.iter().sum::<u64>()).sum::<u64>(), 15);
}
