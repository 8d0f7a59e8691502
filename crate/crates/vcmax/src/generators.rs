//! Constructors for the classical example families: interval unions on a
//! chain, bounded-cardinality families, halfplane and polynomial positivity
//! traces over exact rational point samples, axis-parallel rectangle traces,
//! and seeded random families for the invariant suites.
//!
//! All geometric predicates use exact rational arithmetic; maximality
//! counting is brittle under rounding, so no floating point appears
//! anywhere.

use std::collections::BTreeSet;

use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::{check_enumeration_cap, SetFamily};
use crate::ground::OrderedGround;
use crate::subset::Subset;

/// All subsets of the chain consisting of at most `k` runs of consecutive
/// elements, including the empty set. Such unions of at most `k` intervals
/// form a 2k-maximum family.
pub fn intervals_family(chain: &OrderedGround, k: usize, cap: usize) -> Result<SetFamily> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let n = chain.len();
    check_enumeration_cap("interval-union enumeration", n, cap)?;
    let members: Vec<Subset> = (0..1u64 << n)
        .filter(|&mask| {
            let mut runs = 0;
            let mut prev = false;
            for i in 0..n {
                let bit = (mask >> i) & 1 == 1;
                if bit && !prev {
                    runs += 1;
                }
                prev = bit;
            }
            runs <= k
        })
        .map(|mask| Subset::from_mask_u64(n, mask))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(chain.clone(), members))
}

/// All subsets of cardinality at most `m`: an m-maximum family.
pub fn bounded_size_family(ground: &OrderedGround, m: usize, cap: usize) -> Result<SetFamily> {
    let n = ground.len();
    if m > n {
        return Err(Error::InvalidInput(format!(
            "size bound {m} exceeds the ground size {n}"
        )));
    }
    check_enumeration_cap("bounded-size enumeration", n, cap)?;
    let members: Vec<Subset> = (0..1u64 << n)
        .filter(|mask| (mask.count_ones() as usize) <= m)
        .map(|mask| Subset::from_mask_u64(n, mask))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(ground.clone(), members))
}

/// A finite list of distinct rational points in a fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    dimension: usize,
    points: Vec<Vec<BigRational>>,
    seed: Option<u64>,
}

impl PointSample {
    pub fn new(dimension: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for p in &points {
            if p.len() != dimension {
                return Err(Error::InvalidInput(format!(
                    "point has {} coordinates, expected {dimension}",
                    p.len()
                )));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidInput(format!(
                        "duplicate sample point at indices {i} and {j}"
                    )));
                }
            }
        }
        Ok(PointSample {
            dimension,
            points,
            seed: None,
        })
    }

    pub fn from_integer_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        PointSample::new(
            2,
            pairs
                .iter()
                .map(|&(x, y)| vec![rational(x), rational(y)])
                .collect(),
        )
    }

    /// Uniform random points with small rational coordinates; deterministic
    /// under the seed.
    pub fn random(dimension: usize, count: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points: Vec<Vec<BigRational>> = Vec::with_capacity(count);
        while points.len() < count {
            let p: Vec<BigRational> = (0..dimension)
                .map(|_| BigRational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=8).into()))
                .collect();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let mut sample = PointSample::new(dimension, points)?;
        sample.seed = Some(seed);
        Ok(sample)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// No three points collinear (meaningful in dimension two).
    pub fn no_three_collinear(&self) -> bool {
        if self.dimension != 2 {
            return true;
        }
        let p = &self.points;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    if cross(&sub(&p[j], &p[i]), &sub(&p[k], &p[i])).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The ground `p1 < p2 < ... < pn` in input order.
    pub fn ground(&self) -> OrderedGround {
        OrderedGround::new((1..=self.points.len()).map(|i| format!("p{i}")))
            .expect("sample labels are valid")
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sub(a: &[BigRational], b: &[BigRational]) -> (BigRational, BigRational) {
    (&a[0] - &b[0], &a[1] - &b[1])
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// An affine constraint `b + c1·w1 + c2·w2 >= 0` over the parameter plane.
#[derive(Clone, Debug)]
struct PlaneConstraint {
    b: BigRational,
    w1: BigRational,
    w2: BigRational,
}

impl PlaneConstraint {
    fn eval(&self, c1: &BigRational, c2: &BigRational) -> BigRational {
        &self.b + &self.w1 * c1 + &self.w2 * c2
    }

    fn is_degenerate(&self) -> bool {
        self.w1.is_zero() && self.w2.is_zero()
    }
}

/// Exact enumeration of all sign vectors (with `>= 0` as the inside) an
/// arrangement of affine constraint lines realizes over the plane.
///
/// Every full-dimensional cell has an edge on some constraint line, so
/// sampling every edge of every line and stepping off both sides by half
/// the distance to the nearest other line reaches every cell; the on-line
/// samples themselves cover the boundary faces, whose sign vectors coincide
/// with their nonnegative-side neighbors.
fn plane_arrangement_traces(constraints: &[PlaneConstraint]) -> BTreeSet<u64> {
    let n = constraints.len();
    assert!(n <= 63, "arrangement enumeration is capped well below 63");
    let mut candidates: Vec<(BigRational, BigRational)> = vec![(BigRational::zero(), BigRational::zero())];

    for (i, line) in constraints.iter().enumerate() {
        if line.is_degenerate() {
            continue;
        }
        // A base point on the line and the line's direction.
        let (base1, base2) = if !line.w1.is_zero() {
            (-&line.b / &line.w1, BigRational::zero())
        } else {
            (BigRational::zero(), -&line.b / &line.w2)
        };
        let dir = (-line.w2.clone(), line.w1.clone());

        // Parameters where the other lines cross this one.
        let mut cuts: Vec<BigRational> = Vec::new();
        for (j, other) in constraints.iter().enumerate() {
            if j == i || other.is_degenerate() {
                continue;
            }
            let denom = &other.w1 * &dir.0 + &other.w2 * &dir.1;
            if denom.is_zero() {
                continue; // parallel
            }
            let at_base = other.eval(&base1, &base2);
            cuts.push(-at_base / denom);
        }
        cuts.sort();
        cuts.dedup();

        // One sample per vertex, per edge between, and per unbounded edge.
        let mut params: Vec<BigRational> = Vec::new();
        if cuts.is_empty() {
            params.push(BigRational::zero());
        } else {
            params.push(cuts[0].clone() - BigRational::one());
            for w in cuts.windows(2) {
                params.push((w[0].clone() + w[1].clone()) / rational(2));
            }
            params.push(cuts[cuts.len() - 1].clone() + BigRational::one());
            params.extend(cuts.iter().cloned());
        }

        for t in params {
            let p1 = &base1 + &dir.0 * &t;
            let p2 = &base2 + &dir.1 * &t;
            // Step off the line by half the distance (in normal-parameter
            // units) to the nearest other line through this point.
            let mut delta = BigRational::one();
            for (j, other) in constraints.iter().enumerate() {
                if j == i || other.is_degenerate() {
                    continue;
                }
                let denom = &other.w1 * &line.w1 + &other.w2 * &line.w2;
                if denom.is_zero() {
                    continue;
                }
                let u = -other.eval(&p1, &p2) / denom;
                if !u.is_zero() {
                    let mag = u.abs() / rational(2);
                    if mag < delta {
                        delta = mag;
                    }
                }
            }
            candidates.push((p1.clone(), p2.clone()));
            candidates.push((&p1 + &line.w1 * &delta, &p2 + &line.w2 * &delta));
            candidates.push((&p1 - &line.w1 * &delta, &p2 - &line.w2 * &delta));
        }
    }

    let mut traces = BTreeSet::new();
    for (c1, c2) in candidates {
        let mut mask = 0u64;
        for (i, con) in constraints.iter().enumerate() {
            if !con.eval(&c1, &c2).is_negative() {
                mask |= 1 << i;
            }
        }
        traces.insert(mask);
    }
    traces
}

/// Exact trace enumeration along a single parameter axis
/// (`b + c·w >= 0` constraints).
fn line_arrangement_traces(constraints: &[(BigRational, BigRational)]) -> BTreeSet<u64> {
    let n = constraints.len();
    assert!(n <= 63);
    let mut roots: Vec<BigRational> = constraints
        .iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(b, w)| -b / w)
        .collect();
    roots.sort();
    roots.dedup();
    let mut params: Vec<BigRational> = vec![BigRational::zero()];
    if !roots.is_empty() {
        params.push(roots[0].clone() - BigRational::one());
        for w in roots.windows(2) {
            params.push((w[0].clone() + w[1].clone()) / rational(2));
        }
        params.push(roots[roots.len() - 1].clone() + BigRational::one());
        params.extend(roots);
    }
    let mut traces = BTreeSet::new();
    for c in params {
        let mut mask = 0u64;
        for (i, (b, w)) in constraints.iter().enumerate() {
            if !(b + w * &c).is_negative() {
                mask |= 1 << i;
            }
        }
        traces.insert(mask);
    }
    traces
}

/// The exact halfplane trace family together with the degeneracy report.
#[derive(Clone, Debug)]
pub struct HalfplaneTraces {
    pub family: SetFamily,
    /// True when no point sits at the origin, no two points are collinear
    /// with the origin, and no three points are collinear. On such samples
    /// the family is 2-maximum.
    pub general_position: bool,
    /// Indices of points whose constraint is constant over the plane.
    pub degenerate_points: Vec<usize>,
}

/// The traces `{p : 1 + c1·x_p + c2·y_p >= 0}` over all real parameters,
/// by exact cell enumeration in the parameter plane.
pub fn halfplane_traces(sample: &PointSample) -> Result<HalfplaneTraces> {
    if sample.dimension() != 2 {
        return Err(Error::InvalidInput(
            "halfplane traces need a two-dimensional sample".into(),
        ));
    }
    let n = sample.len();
    if n > 12 {
        return Err(Error::CapExceeded {
            what: "halfplane cell enumeration",
            value: n,
            cap: 12,
        });
    }
    let constraints: Vec<PlaneConstraint> = sample
        .points()
        .iter()
        .map(|p| PlaneConstraint {
            b: BigRational::one(),
            w1: p[0].clone(),
            w2: p[1].clone(),
        })
        .collect();
    let degenerate_points: Vec<usize> = constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_degenerate())
        .map(|(i, _)| i)
        .collect();

    let origin_free = degenerate_points.is_empty();
    let mut no_two_radial = true;
    let pts = sample.points();
    'outer: for i in 0..n {
        for j in i + 1..n {
            if cross(&(pts[i][0].clone(), pts[i][1].clone()), &(pts[j][0].clone(), pts[j][1].clone()))
                .is_zero()
            {
                no_two_radial = false;
                break 'outer;
            }
        }
    }
    let general_position = origin_free && no_two_radial && sample.no_three_collinear();

    let traces = plane_arrangement_traces(&constraints);
    let ground = sample.ground();
    let members: Vec<Subset> = traces
        .into_iter()
        .map(|mask| Subset::from_mask_u64(n, mask))
        .collect();
    let family = SetFamily::new_dedup(ground, members)?;
    Ok(HalfplaneTraces {
        family,
        general_position,
        degenerate_points,
    })
}

/// A linearly parameterized polynomial family: one fixed term with a fixed
/// rational coefficient, plus `d` monomials carrying free coefficients.
/// Monomials are exponent tuples over the sample coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpec {
    fixed_coefficient: BigRational,
    fixed: Vec<u32>,
    free: Vec<Vec<u32>>,
}

impl PolySpec {
    pub fn new(fixed_coefficient: BigRational, fixed: Vec<u32>, free: Vec<Vec<u32>>) -> Result<Self> {
        if free.is_empty() {
            return Err(Error::InvalidInput(
                "a polynomial family needs at least one free coefficient".into(),
            ));
        }
        let arity = fixed.len();
        for m in &free {
            if m.len() != arity {
                return Err(Error::InvalidInput(
                    "all monomials must share the variable count".into(),
                ));
            }
        }
        let mut all = free.clone();
        all.push(fixed.clone());
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("monomials must be distinct".into()));
        }
        Ok(PolySpec {
            fixed_coefficient,
            fixed,
            free,
        })
    }

    pub fn arity(&self) -> usize {
        self.fixed.len()
    }

    /// Number of free coefficients.
    pub fn degrees_of_freedom(&self) -> usize {
        self.free.len()
    }

    pub fn fixed_coefficient(&self) -> &BigRational {
        &self.fixed_coefficient
    }

    pub fn fixed_monomial(&self) -> &[u32] {
        &self.fixed
    }

    pub fn free_monomials(&self) -> &[Vec<u32>] {
        &self.free
    }

    fn eval_monomial(monomial: &[u32], point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::one();
        for (e, x) in monomial.iter().zip(point) {
            for _ in 0..*e {
                acc *= x;
            }
        }
        acc
    }

    /// Constant term and free-term values of the polynomial at a point.
    fn constraint_at(&self, point: &[BigRational]) -> (BigRational, Vec<BigRational>) {
        let b = &self.fixed_coefficient * Self::eval_monomial(&self.fixed, point);
        let ws = self
            .free
            .iter()
            .map(|m| Self::eval_monomial(m, point))
            .collect();
        (b, ws)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Cell enumeration covered the whole parameter space.
    Exact,
    /// Sampled mode: the family is a lower bound on the true trace family.
    LowerBound,
}

#[derive(Clone, Debug)]
pub struct PolyTraces {
    pub family: SetFamily,
    pub completeness: Completeness,
    /// Indices of points where every free monomial vanishes.
    pub degenerate_points: Vec<usize>,
}

/// Traces of `{a : p(c, a) >= 0}` over the coefficient space. With one or
/// two free coefficients the constraint arrangement is linear or planar and
/// is enumerated exactly; beyond that the supplied grid is evaluated and
/// refined around observed sign changes, and the result is labeled a lower
/// bound.
pub fn polynomial_traces(
    sample: &PointSample,
    spec: &PolySpec,
    coefficient_grid: &[Vec<BigRational>],
    seed: u64,
) -> Result<PolyTraces> {
    if spec.arity() != sample.dimension() {
        return Err(Error::InvalidInput(format!(
            "spec over {} variables applied to {}-dimensional points",
            spec.arity(),
            sample.dimension()
        )));
    }
    let n = sample.len();
    if n > 16 {
        return Err(Error::CapExceeded {
            what: "polynomial trace enumeration",
            value: n,
            cap: 16,
        });
    }
    let d = spec.degrees_of_freedom();
    let per_point: Vec<(BigRational, Vec<BigRational>)> = sample
        .points()
        .iter()
        .map(|p| spec.constraint_at(p))
        .collect();
    let degenerate_points: Vec<usize> = per_point
        .iter()
        .enumerate()
        .filter(|(_, (_, ws))| ws.iter().all(Zero::is_zero))
        .map(|(i, _)| i)
        .collect();
    let ground = sample.ground();

    let masks: BTreeSet<u64> = match d {
        1 => {
            let constraints: Vec<(BigRational, BigRational)> = per_point
                .iter()
                .map(|(b, ws)| (b.clone(), ws[0].clone()))
                .collect();
            line_arrangement_traces(&constraints)
        }
        2 => {
            let constraints: Vec<PlaneConstraint> = per_point
                .iter()
                .map(|(b, ws)| PlaneConstraint {
                    b: b.clone(),
                    w1: ws[0].clone(),
                    w2: ws[1].clone(),
                })
                .collect();
            plane_arrangement_traces(&constraints)
        }
        _ => {
            if coefficient_grid.is_empty() {
                return Err(Error::InvalidInput(
                    "a coefficient grid is required beyond two free coefficients".into(),
                ));
            }
            for c in coefficient_grid {
                if c.len() != d {
                    return Err(Error::InvalidInput(format!(
                        "grid vector has {} coefficients, expected {d}",
                        c.len()
                    )));
                }
            }
            let eval_mask = |c: &[BigRational]| -> u64 {
                let mut mask = 0u64;
                for (i, (b, ws)) in per_point.iter().enumerate() {
                    let mut v = b.clone();
                    for (w, ci) in ws.iter().zip(c) {
                        v += w * ci;
                    }
                    if !v.is_negative() {
                        mask |= 1 << i;
                    }
                }
                mask
            };
            let mut masks: BTreeSet<u64> = coefficient_grid.iter().map(|c| eval_mask(c)).collect();
            // Refine around sign changes: bisect between grid neighbors with
            // distinct traces, plus seeded jitter near the midpoints. Depth
            // is capped to keep the rational denominators bounded.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut frontier: Vec<(Vec<BigRational>, u64, Vec<BigRational>, u64, u32)> =
                Vec::new();
            for w in coefficient_grid.windows(2) {
                let m0 = eval_mask(&w[0]);
                let m1 = eval_mask(&w[1]);
                if m0 != m1 {
                    frontier.push((w[0].clone(), m0, w[1].clone(), m1, 0));
                }
            }
            let budget = 4 * coefficient_grid.len();
            let mut steps = 0;
            while let Some((lo, m_lo, hi, m_hi, depth)) = frontier.pop() {
                if steps >= budget || depth >= 16 {
                    continue;
                }
                steps += 1;
                let mid: Vec<BigRational> = lo
                    .iter()
                    .zip(&hi)
                    .map(|(a, b)| (a + b) / rational(2))
                    .collect();
                let jitter: Vec<BigRational> = mid
                    .iter()
                    .map(|c| c + BigRational::new(rng.gen_range(-3i64..=3).into(), 1024.into()))
                    .collect();
                let m_mid = eval_mask(&mid);
                masks.insert(m_mid);
                masks.insert(eval_mask(&jitter));
                if m_lo != m_mid {
                    frontier.push((lo, m_lo, mid.clone(), m_mid, depth + 1));
                }
                if m_mid != m_hi {
                    frontier.push((mid, m_mid, hi, m_hi, depth + 1));
                }
            }
            masks
        }
    };

    let members: Vec<Subset> = masks
        .into_iter()
        .map(|mask| Subset::from_mask_u64(n, mask))
        .collect();
    let family = SetFamily::new_dedup(ground, members)?;
    Ok(PolyTraces {
        family,
        completeness: if d <= 2 {
            Completeness::Exact
        } else {
            Completeness::LowerBound
        },
        degenerate_points,
    })
}

/// Exact traces of closed axis-parallel rectangles: every realizable trace
/// is realized by a box whose four bounds pass through sample coordinates,
/// so the candidate set of coordinate-pair boxes plus the empty set is
/// complete. Typically not maximum at VC dimension four.
pub fn rectangle_traces(sample: &PointSample) -> Result<SetFamily> {
    if sample.dimension() != 2 {
        return Err(Error::InvalidInput(
            "rectangle traces need a two-dimensional sample".into(),
        ));
    }
    let n = sample.len();
    if n > 12 {
        return Err(Error::CapExceeded {
            what: "rectangle candidate enumeration",
            value: n,
            cap: 12,
        });
    }
    let pts = sample.points();
    let mut xs: Vec<&BigRational> = pts.iter().map(|p| &p[0]).collect();
    let mut ys: Vec<&BigRational> = pts.iter().map(|p| &p[1]).collect();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let mut masks: BTreeSet<u64> = BTreeSet::new();
    masks.insert(0);
    for &x_lo in &xs {
        for &x_hi in &xs {
            if x_lo > x_hi {
                continue;
            }
            for &y_lo in &ys {
                for &y_hi in &ys {
                    if y_lo > y_hi {
                        continue;
                    }
                    let mut mask = 0u64;
                    for (i, p) in pts.iter().enumerate() {
                        if &p[0] >= x_lo && &p[0] <= x_hi && &p[1] >= y_lo && &p[1] <= y_hi {
                            mask |= 1 << i;
                        }
                    }
                    masks.insert(mask);
                }
            }
        }
    }
    let members: Vec<Subset> = masks
        .into_iter()
        .map(|mask| Subset::from_mask_u64(n, mask))
        .collect();
    SetFamily::new_dedup(sample.ground(), members)
}

/// Uniformly sampled distinct subsets; deterministic under the seed.
pub fn random_family(ground: &OrderedGround, count: usize, seed: u64) -> Result<SetFamily> {
    if count == 0 {
        return Err(Error::InvalidInput("families are nonempty".into()));
    }
    let n = ground.len();
    if n < 63 && count > (1usize << n) {
        return Err(Error::InvalidInput(format!(
            "cannot sample {count} distinct subsets of a {n}-element ground"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<Subset> = if n <= 20 {
        // Partial Fisher-Yates over all masks: exactly uniform.
        let mut pool: Vec<u64> = (0..1u64 << n).collect();
        for i in 0..count {
            let j = rng.gen_range(i..pool.len());
            pool.swap(i, j);
        }
        pool[..count]
            .iter()
            .map(|&m| Subset::from_mask_u64(n, m))
            .collect()
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < count {
            let s = Subset::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            seen.insert(s);
        }
        seen.into_iter().collect()
    };
    SetFamily::new_dedup(ground.clone(), members)
}
