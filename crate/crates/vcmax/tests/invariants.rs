//! Randomized and structural invariants for every module, at sizes where
//! brute force is feasible.

mod support;

use num::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;
use vcmax::generators::{
    bounded_size_family, polynomial_traces, random_family, Completeness, PointSample, PolySpec,
};
use vcmax::genus::pattern_avoiding_family;
use vcmax::io::{emit_convex_union, parse_convex_union};
use vcmax::maximum::{induces_pattern, is_d_maximum, is_d_maximum_strict};
use vcmax::stability::{check_symdiff_bound, ladder_dimension};
use vcmax::{
    is_subsequence, sauer_bound, sauer_bound_usize, Code, OrderedGround, SetFamily, Subset,
};

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn restriction_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..300u64 {
        let family = random_small_family(case, 8);
        let n = family.ground().len();
        let b = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.6)));
        let a = Subset::from_indices(n, b.iter_indices().filter(|_| rng.gen_bool(0.6)));
        let direct = family.restrict(&a).unwrap();
        let through_b = family.restrict(&b).unwrap();
        let a_labels: Vec<&str> = a
            .iter_indices()
            .map(|i| family.ground().label(i))
            .collect();
        let nested = through_b.restrict_to_labels(a_labels).unwrap();
        assert_eq!(direct, nested, "case {case}");
    }
}

#[test]
fn traces_respect_the_sauer_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for case in 0..300u64 {
        let family = random_small_family(case, 8);
        let n = family.ground().len();
        let d = family.vc_dimension().unwrap();
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let count = family.trace_count(&a).unwrap();
        assert!(
            sauer_bound(a.count() as u64, d as u64) >= count.into(),
            "case {case}: {count} traces on {} points at VC {d}",
            a.count()
        );
    }
}

#[test]
fn shattering_is_downward_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut shattered_seen = 0;
    for case in 0..400u64 {
        let family = random_small_family(case, 7);
        let n = family.ground().len();
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        if family.shatters(&a).unwrap() {
            shattered_seen += 1;
            for i in a.iter_indices() {
                let smaller = a.clone().with_bit(i, false);
                assert!(family.shatters(&smaller).unwrap(), "case {case}");
            }
        }
    }
    assert!(shattered_seen > 50, "corpus produced too few shattered sets");
}

#[test]
fn vc_dimension_never_grows_under_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for case in 0..200u64 {
        let family = random_small_family(case, 8);
        let n = family.ground().len();
        let d = family.vc_dimension().unwrap();
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.6)));
        let restricted = family.restrict(&a).unwrap();
        if !restricted.is_empty() {
            assert!(restricted.vc_dimension().unwrap() <= d, "case {case}");
        }
    }
}

#[test]
fn vc_matches_the_naive_oracle_up_to_ten_points() {
    for case in 0..60u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c0 + case);
        let n = rng.gen_range(8..=10);
        let count = rng.gen_range(2..=24);
        let family = random_family(&OrderedGround::chain(n), count, rng.gen()).unwrap();
        assert_eq!(
            family.vc_dimension().unwrap(),
            naive_vc_dimension(&family),
            "case {case}"
        );
    }
}

/// Tightness on the full ground propagates to every parameter set: each
/// corpus family, checked definitionally, meets the bound everywhere, which
/// is also exactly the statement that all its restrictions stay maximum.
#[test]
fn maximum_families_are_maximum_on_every_restriction() {
    for (name, family, d) in generated_maximum_families() {
        assert!(
            is_d_maximum_strict(&family, d, 16).unwrap(),
            "{name} fails the definitional check"
        );
    }
}

#[test]
fn fast_maximum_test_agrees_with_the_definitional_one() {
    let mut checked = 0u64;
    for case in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let n = rng.gen_range(1..=8);
        let count = rng.gen_range(1..=(1usize << n).min(24));
        let family = random_family(&OrderedGround::chain(n), count, rng.gen()).unwrap();
        let vc = family.vc_dimension().unwrap();
        for d in vc.saturating_sub(1)..=(vc + 1).min(n) {
            assert_eq!(
                is_d_maximum(&family, d),
                is_d_maximum_strict(&family, d, 16).unwrap(),
                "case {case} at d = {d}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 10_000);
    for (name, family, d) in generated_maximum_families() {
        if family.ground().len() <= 8 {
            assert!(is_d_maximum(&family, d) && is_d_maximum_strict(&family, d, 16).unwrap(),
                "{name}");
        }
    }
}

#[test]
fn greedy_pattern_matching_agrees_with_exhaustive_search_up_to_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for case in 0..1500u64 {
        let n = rng.gen_range(8..=10);
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let len = rng.gen_range(1..=4);
        let rho = Code::from_bits((0..len).map(|_| rng.gen_bool(0.5))).unwrap();
        assert_eq!(
            induces_pattern(&a, &rho),
            naive_induces_pattern(&a, &rho),
            "case {case}: word {} code {rho}",
            a.word()
        );
    }
}

proptest! {
    #[test]
    fn subsequence_is_reflexive(bits in prop::collection::vec(any::<bool>(), 1..10)) {
        let c = Code::from_bits(bits).unwrap();
        prop_assert!(is_subsequence(&c, &c));
    }

    #[test]
    fn subsequence_is_transitive(
        a in prop::collection::vec(any::<bool>(), 1..6),
        b in prop::collection::vec(any::<bool>(), 1..8),
        c in prop::collection::vec(any::<bool>(), 1..10),
    ) {
        let a = Code::from_bits(a).unwrap();
        let b = Code::from_bits(b).unwrap();
        let c = Code::from_bits(c).unwrap();
        if is_subsequence(&a, &b) && is_subsequence(&b, &c) {
            prop_assert!(is_subsequence(&a, &c));
        }
    }

    #[test]
    fn equal_length_subsequences_are_equal(
        (a, b) in (1usize..10).prop_flat_map(|len| (
            prop::collection::vec(any::<bool>(), len),
            prop::collection::vec(any::<bool>(), len),
        )),
    ) {
        let ca = Code::from_bits(a).unwrap();
        let cb = Code::from_bits(b).unwrap();
        if is_subsequence(&ca, &cb) {
            prop_assert_eq!(ca, cb);
        }
    }

    #[test]
    fn membership_words_round_trip(bits in prop::collection::vec(any::<bool>(), 0..80)) {
        let s = Subset::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
        let parsed = Subset::from_word(&s.word()).unwrap();
        prop_assert_eq!(parsed, s);
    }
}

#[test]
fn symmetric_difference_is_a_size_preserving_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for case in 0..300u64 {
        let family = random_small_family(case, 8);
        let n = family.ground().len();
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let transformed = family.symdiff(&a).unwrap();
        assert_eq!(transformed.len(), family.len(), "case {case}");
        assert_eq!(transformed.symdiff(&a).unwrap(), family, "case {case}");
    }
}

/// The trace count on a chain splits at the maximum element: traces there
/// are the traces without it plus those that extend by it.
#[test]
fn trace_counts_satisfy_the_pascal_split() {
    for (text, n) in [("01", 6), ("101", 7), ("11", 5), ("0110", 8)] {
        let eta: Code = text.parse().unwrap();
        let chain = OrderedGround::chain(n);
        let family = pattern_avoiding_family(&chain, &eta, 16).unwrap();
        let last = n - 1;
        let without_last = Subset::full(n).with_bit(last, false);
        let reduced = family.restrict(&without_last).unwrap();
        let both_ways = reduced
            .members()
            .iter()
            .filter(|t| {
                let mut wide = Subset::empty(n);
                for i in t.iter_indices() {
                    wide.set_bit(i, true);
                }
                family.contains(&wide) && family.contains(&wide.clone().with_bit(last, true))
            })
            .count();
        assert_eq!(
            family.len(),
            both_ways + reduced.len(),
            "split failed for {text} on a {n}-chain"
        );
        assert_eq!(
            both_ways,
            sauer_bound_usize(n - 1, eta.len() - 2).unwrap_or(both_ways),
            "extension family count for {text} on a {n}-chain"
        );
    }
}

/// Measured ladder values of bounded-size families: one more than the size
/// bound whenever the ground is strictly larger (the ladder tops out with a
/// full-size member plus one fresh excluded point), and transforms by a
/// member stay within `2m + 1` since every transformed member has at most
/// `2m` elements.
#[test]
fn bounded_size_ladder_values() {
    for n in 2..=6usize {
        for m in 1..n {
            let fam = bounded_size_family(&OrderedGround::chain(n), m, 16).unwrap();
            let (ld, _) = ladder_dimension(&fam).unwrap();
            assert_eq!(ld, m + 1, "LD of size-comparing family m={m} n={n}");
            assert_eq!(ld, naive_ladder_dimension(&fam), "oracle disagrees at m={m} n={n}");
            let bases = [
                Subset::empty(n),
                Subset::from_indices(n, 0..m),
            ];
            for base in bases {
                let transformed = fam.symdiff(&base).unwrap();
                let (ld_t, _) = ladder_dimension(&transformed).unwrap();
                assert!(
                    ld_t <= 2 * m + 1,
                    "transform ladder {ld_t} exceeds 2m+1 at m={m} n={n}"
                );
            }
        }
        let full = bounded_size_family(&OrderedGround::chain(n), n, 16).unwrap();
        assert_eq!(ladder_dimension(&full).unwrap().0, n);
    }
}

#[test]
fn transform_bound_report_is_internally_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for case in 0..200u64 {
        let family = random_small_family(case.wrapping_mul(0x2545_f491), 6);
        let n = family.ground().len();
        let a = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let report = check_symdiff_bound(&family, &a).unwrap();
        assert!(report.within_sharp_bound, "case {case}");
        assert_eq!(report.holds, report.ladder_dimension_after <= report.doubling_bound);
        assert!(report.ladder_dimension_after <= 2 * report.ladder_dimension + 1);
    }
}

#[test]
fn convex_union_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for case in 0..250 {
        let b = random_convex_union(&mut rng);
        let text = emit_convex_union(&b);
        let parsed = parse_convex_union(&text).unwrap();
        assert_eq!(parsed, b, "case {case}: {text}");
    }
}

/// Sampled circle traces on six lifted points in general position reach the
/// full bound `C(6, <=3) = 42` with a grid combining a lattice, nudged
/// structure circles (point, diameter, circumcircle) and huge circles whose
/// near boundary approximates each point-pair line; the result is still
/// labeled a lower bound by the sampled mode.
#[test]
fn circle_traces_reach_the_sauer_bound_on_a_dense_grid() {
    let q = rational;
    let qr = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let pts: [(i64, i64); 6] = [(0, 0), (4, 1), (1, 3), (5, 2), (2, 5), (6, 4)];
    let lifted: Vec<Vec<BigRational>> = pts
        .iter()
        .map(|&(x, y)| vec![q(x), q(y), q(x * x + y * y)])
        .collect();
    let sample = PointSample::new(3, lifted).unwrap();
    let spec = PolySpec::new(
        q(-1),
        vec![0, 0, 1],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]],
    )
    .unwrap();

    let mut grid: Vec<Vec<BigRational>> = Vec::new();
    for c1 in (-2..=12).step_by(2) {
        for c2 in (-2..=12).step_by(2) {
            for c3 in (-30..=30).step_by(2) {
                grid.push(vec![q(c1), q(c2), q(c3)]);
            }
        }
    }
    let p: Vec<(BigRational, BigRational)> = pts.iter().map(|&(x, y)| (q(x), q(y))).collect();
    let mut push_circle =
        |grid: &mut Vec<Vec<BigRational>>, a: &BigRational, b: &BigRational, s: &BigRational| {
            let c3 = s - a * a - b * b;
            for ds in [-1i64, 0, 1] {
                grid.push(vec![q(2) * a, q(2) * b, &c3 + qr(ds, 64)]);
            }
        };
    for i in 0..6 {
        push_circle(&mut grid, &p[i].0.clone(), &p[i].1.clone(), &qr(1, 128));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            let a = (&p[i].0 + &p[j].0) / q(2);
            let b = (&p[i].1 + &p[j].1) / q(2);
            let dx = &p[i].0 - &a;
            let dy = &p[i].1 - &b;
            let s = &dx * &dx + &dy * &dy;
            push_circle(&mut grid, &a, &b, &s);
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let (x1, y1) = (&p[i].0, &p[i].1);
                let (x2, y2) = (&p[j].0, &p[j].1);
                let (x3, y3) = (&p[k].0, &p[k].1);
                let d = q(2) * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
                if d == q(0) {
                    continue;
                }
                let s1 = x1 * x1 + y1 * y1;
                let s2 = x2 * x2 + y2 * y2;
                let s3 = x3 * x3 + y3 * y3;
                let a = (&s1 * (y2 - y3) + &s2 * (y3 - y1) + &s3 * (y1 - y2)) / &d;
                let b = (&s1 * (x3 - x2) + &s2 * (x1 - x3) + &s3 * (x2 - x1)) / &d;
                let dx = x1 - &a;
                let dy = y1 - &b;
                let s = &dx * &dx + &dy * &dy;
                push_circle(&mut grid, &a, &b, &s);
            }
        }
    }
    let big = q(1 << 20);
    for i in 0..6 {
        for j in 0..6 {
            if i == j {
                continue;
            }
            let n1 = &p[j].1 - &p[i].1;
            let n2 = &p[i].0 - &p[j].0;
            let h = &n1 * &p[i].0 + &n2 * &p[i].1;
            for dh in [-1i64, 0, 1] {
                let hh = &h + qr(dh, 64);
                grid.push(vec![q(2) * &big * &n1, q(2) * &big * &n2, q(-2) * &big * &hh]);
            }
        }
    }

    let result = polynomial_traces(&sample, &spec, &grid, 7).unwrap();
    assert_eq!(result.completeness, Completeness::LowerBound);
    assert_eq!(result.family.len(), 42);
    assert_eq!(result.family.len(), sauer_bound_usize(6, 3).unwrap());
}
