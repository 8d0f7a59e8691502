//! Shared oracles and corpora for the integration suites. The naive
//! implementations here deliberately avoid the pruning and fast paths of the
//! library: they check definitions directly and exist to disagree loudly if
//! a fast path is wrong.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use itertools::Itertools;
use vcmax::generators::{bounded_size_family, halfplane_traces, intervals_family, PointSample};
use vcmax::genus::{pattern_avoiding_family, Component, ConvexUnion, Endpoint};
use vcmax::{Code, OrderedGround, SetFamily, Subset};

/// VC dimension by unpruned exhaustion of every parameter set.
pub fn naive_vc_dimension(family: &SetFamily) -> usize {
    let n = family.ground().len();
    assert!(n <= 20, "naive oracle is for small grounds");
    let mut best = 0;
    for mask in 0..1u64 << n {
        let a = Subset::from_mask_u64(n, mask);
        let k = a.count();
        if k <= best {
            continue;
        }
        let restricted = family.restrict(&a).unwrap();
        if k < 63 && restricted.len() == 1usize << k {
            best = k;
        }
    }
    best
}

/// Ladder dimension by enumerating point arrangements outright: for a fixed
/// point sequence the required member intersections differ per level, so a
/// sequence extends to a ladder exactly when each level has some member
/// meeting its prescribed intersection.
pub fn naive_ladder_dimension(family: &SetFamily) -> usize {
    let n = family.ground().len();
    assert!(n <= 10 && family.len() <= 1 << 10, "naive oracle is for small inputs");
    let member_masks: Vec<u64> = family
        .members()
        .iter()
        .map(|m| m.mask_u64().unwrap())
        .collect();
    let upper = n.min(family.len());
    for k in (1..=upper).rev() {
        for points in (0..n).permutations(k) {
            let full: u64 = points.iter().map(|&p| 1u64 << p).sum();
            // B_{j+1} must meet the chosen points in exactly the first j.
            let ok = (0..k).all(|j| {
                let prefix: u64 = points[..j].iter().map(|&p| 1u64 << p).sum();
                member_masks.iter().any(|&m| m & full == prefix)
            });
            if ok {
                return k;
            }
        }
    }
    0
}

/// Pattern induction by exhaustive position search.
pub fn naive_induces_pattern(a: &Subset, rho: &Code) -> bool {
    let n = a.len();
    if rho.len() > n {
        return false;
    }
    (0..n)
        .combinations(rho.len())
        .any(|positions| positions.iter().enumerate().all(|(j, &p)| a.bit(p) == rho.bit(j)))
}

/// Seeded random family on a random ground of size at most `max_n`.
pub fn random_small_family(seed: u64, max_n: usize) -> SetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let count = rng.gen_range(1..=(1usize << n).min(24));
    let ground = OrderedGround::chain(n);
    vcmax::generators::random_family(&ground, count, rng.gen()).unwrap()
}

/// A deterministic corpus of maximum families with grounds of at most ten
/// points: interval unions, bounded cardinality, pattern avoiding, and the
/// halfplane traces of a parabola sample. Each entry carries its `d`.
pub fn generated_maximum_families() -> Vec<(String, SetFamily, usize)> {
    let mut corpus: Vec<(String, SetFamily, usize)> = Vec::new();
    for n in [4usize, 6, 8, 10] {
        let chain = OrderedGround::chain(n);
        for k in [1usize, 2] {
            let fam = intervals_family(&chain, k, 16).unwrap();
            corpus.push((format!("intervals(n={n},k={k})"), fam, 2 * k));
        }
        for m in [0usize, 1, 2, 3] {
            let fam = bounded_size_family(&chain, m, 16).unwrap();
            corpus.push((format!("bounded(n={n},m={m})"), fam, m));
        }
    }
    let codes = ["0", "1", "01", "10", "11", "00", "101", "010", "0110", "1001", "1111"];
    for n in [5usize, 8, 10] {
        let chain = OrderedGround::chain(n);
        for text in codes {
            if text.len() > n {
                continue;
            }
            let eta: Code = text.parse().unwrap();
            let fam = pattern_avoiding_family(&chain, &eta, 16).unwrap();
            corpus.push((format!("avoid(n={n},eta={text})"), fam, eta.len() - 1));
        }
    }
    let sample = PointSample::from_integer_pairs(&[
        (1, 1),
        (2, 4),
        (3, 9),
        (4, 16),
        (5, 25),
        (6, 36),
        (7, 49),
    ])
    .unwrap();
    let half = halfplane_traces(&sample).unwrap();
    assert!(half.general_position);
    corpus.push(("halfplane(parabola-7)".into(), half.family, 2));
    corpus
}

fn step(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(1i64..=6).into(),
        rng.gen_range(1i64..=4).into(),
    )
}

/// A random valid convex union with at most six components, built left to
/// right so the disjointness and maximality invariants hold by construction.
pub fn random_convex_union(rng: &mut ChaCha8Rng) -> ConvexUnion {
    let count = rng.gen_range(0..=6);
    let mut components: Vec<Component> = Vec::with_capacity(count);
    let mut cursor = BigRational::new(rng.gen_range(-12i64..=0).into(), 1.into());
    let mut prev_open_end = false;
    for i in 0..count {
        let last = i + 1 == count;
        let puncture = i > 0 && prev_open_end && rng.gen_bool(0.35);
        let left_val = if puncture {
            cursor.clone()
        } else {
            cursor.clone() + step(rng)
        };
        if !puncture && rng.gen_bool(0.25) {
            // Singleton component.
            components.push(Component::singleton(left_val.clone()));
            cursor = left_val;
            prev_open_end = false;
            continue;
        }
        let left = if i == 0 && !puncture && rng.gen_bool(0.2) {
            Endpoint::NegInf
        } else {
            Endpoint::Finite(left_val.clone())
        };
        let left_closed = !puncture && matches!(left, Endpoint::Finite(_)) && rng.gen_bool(0.5);
        let (right, right_closed, end_val, open_end) = if last && rng.gen_bool(0.2) {
            (Endpoint::PosInf, false, left_val.clone() + step(rng), false)
        } else {
            let v = left_val.clone() + step(rng);
            let closed = rng.gen_bool(0.5);
            (Endpoint::Finite(v.clone()), closed, v, !closed)
        };
        components.push(Component::interval(left, left_closed, right, right_closed));
        cursor = end_val;
        prev_open_end = open_end;
    }
    ConvexUnion::new(components).expect("generator respects the invariants")
}
