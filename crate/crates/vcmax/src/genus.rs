//! Genus of finite unions of convex subsets of a dense complete linear
//! order, modeled over the extended rational line.
//!
//! A set with `d` boundary points fails to induce exactly one binary word of
//! length `d+1`; that word is its genus. Two routes compute it:
//!
//! - [`genus_scan`]: one pass over the open regions between consecutive
//!   boundary points (with infinite sentinels). Bit `i` is 0 exactly when
//!   region `i` lies inside the set. Boundary-point membership never affects
//!   the genus: `(0,1)` and `[0,1]` both have genus `101`.
//! - [`genus_oracle`]: enumerates codes by increasing length and returns the
//!   shortest one the set does not induce, asserting uniqueness at length
//!   `d+1`. This is the definitional route and guards the scan.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num::BigRational;
use num::{One, Zero};

use crate::code::{subsequence_in, Code};
use crate::error::{Error, Result};
use crate::family::{check_enumeration_cap, SetFamily};
use crate::ground::OrderedGround;
use crate::maximum::induces_pattern;
use crate::subset::Subset;

/// A point of the extended rational line.
#[derive(Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Endpoint::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Debug for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// One maximal convex component: a singleton or an interval with open/closed
/// finite endpoints (infinite endpoints are always open).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub left: Endpoint,
    pub left_closed: bool,
    pub right: Endpoint,
    pub right_closed: bool,
}

impl Component {
    pub fn singleton(q: BigRational) -> Self {
        Component {
            left: Endpoint::Finite(q.clone()),
            left_closed: true,
            right: Endpoint::Finite(q),
            right_closed: true,
        }
    }

    pub fn interval(
        left: Endpoint,
        left_closed: bool,
        right: Endpoint,
        right_closed: bool,
    ) -> Self {
        Component {
            left,
            left_closed,
            right,
            right_closed,
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.left == self.right
    }

    fn validate(&self) -> Result<()> {
        match (&self.left, &self.right) {
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => {
                return Err(Error::InvalidInput(
                    "component endpoints out of order".into(),
                ))
            }
            _ => {}
        }
        if matches!(self.left, Endpoint::NegInf) && self.left_closed {
            return Err(Error::InvalidInput("-inf cannot be closed".into()));
        }
        if matches!(self.right, Endpoint::PosInf) && self.right_closed {
            return Err(Error::InvalidInput("+inf cannot be closed".into()));
        }
        match self.left.cmp(&self.right) {
            Ordering::Greater => Err(Error::InvalidInput(
                "component endpoints out of order".into(),
            )),
            Ordering::Equal => {
                if self.left_closed && self.right_closed {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(
                        "equal endpoints are only allowed for singletons".into(),
                    ))
                }
            }
            Ordering::Less => Ok(()),
        }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let p = Endpoint::Finite(q.clone());
        let left_ok = match p.cmp(&self.left) {
            Ordering::Greater => true,
            Ordering::Equal => self.left_closed,
            Ordering::Less => false,
        };
        let right_ok = match p.cmp(&self.right) {
            Ordering::Less => true,
            Ordering::Equal => self.right_closed,
            Ordering::Greater => false,
        };
        left_ok && right_ok
    }
}

/// A finite union of pairwise disjoint maximal convex components, ordered
/// left to right. Adjacent closures may share a value only when that value
/// is excluded from both sides (a punctured point).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvexUnion {
    components: Vec<Component>,
}

impl ConvexUnion {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        for c in &components {
            c.validate()?;
        }
        for pair in components.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            match a.right.cmp(&b.left) {
                Ordering::Less => {}
                Ordering::Equal => {
                    // Touching components merge into a convex set unless the
                    // shared value is excluded from both (puncture).
                    if a.right_closed || b.left_closed {
                        return Err(Error::InvalidInput(
                            "adjacent components union to a convex set; merge them".into(),
                        ));
                    }
                }
                Ordering::Greater => {
                    return Err(Error::InvalidInput(
                        "components must be disjoint and ordered left to right".into(),
                    ))
                }
            }
        }
        Ok(ConvexUnion { components })
    }

    pub fn empty() -> Self {
        ConvexUnion { components: vec![] }
    }

    pub fn full_line() -> Self {
        ConvexUnion {
            components: vec![Component::interval(
                Endpoint::NegInf,
                false,
                Endpoint::PosInf,
                false,
            )],
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.components.iter().any(|c| c.contains(q))
    }

    /// The topological boundary: all finite component endpoints, punctured
    /// points included once, ascending. Infinities never appear.
    pub fn boundary_points(&self) -> Vec<BigRational> {
        let mut points = BTreeSet::new();
        for c in &self.components {
            if let Some(q) = c.left.finite() {
                points.insert(q.clone());
            }
            if let Some(q) = c.right.finite() {
                points.insert(q.clone());
            }
        }
        points.into_iter().collect()
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A representative interior point of each open region cut out by the
/// boundary points, with infinite sentinels: d points give d+1 regions.
fn region_representatives(boundary: &[BigRational]) -> Vec<BigRational> {
    if boundary.is_empty() {
        return vec![BigRational::zero()];
    }
    let mut reps = Vec::with_capacity(boundary.len() + 1);
    reps.push(boundary[0].clone() - BigRational::one());
    for pair in boundary.windows(2) {
        reps.push((pair[0].clone() + pair[1].clone()) / rational(2));
    }
    reps.push(boundary[boundary.len() - 1].clone() + BigRational::one());
    reps
}

/// Region rule: bit `i` of the genus is 0 exactly when the `i`-th open
/// region between consecutive boundary points lies inside the set.
pub fn genus_scan(b: &ConvexUnion) -> Code {
    let boundary = b.boundary_points();
    let bits = region_representatives(&boundary)
        .iter()
        .map(|q| !b.contains(q))
        .collect();
    Code::new(bits).expect("d+1 >= 1 regions")
}

/// A finite word that induces exactly the length-`m` codes the set does:
/// each open region contributes `m` sample points and each boundary point
/// contributes itself, in line order. Density of the order lets a region
/// host any number of points, so `m` per region is enough capacity.
fn sample_word(b: &ConvexUnion, m: usize) -> Vec<bool> {
    fn push_region(
        word: &mut Vec<bool>,
        b: &ConvexUnion,
        from: &BigRational,
        to: &BigRational,
        m: usize,
    ) {
        // m points strictly between from and to.
        let span = to - from;
        for j in 1..=m {
            let q = from + &span * BigRational::new((j as i64).into(), ((m + 1) as i64).into());
            word.push(b.contains(&q));
        }
    }

    let boundary = b.boundary_points();
    let mut word = Vec::with_capacity((boundary.len() + 1) * m + boundary.len());
    if boundary.is_empty() {
        push_region(&mut word, b, &BigRational::zero(), &BigRational::one(), m);
        return word;
    }
    let left_sentinel = boundary[0].clone() - rational(m as i64 + 1);
    push_region(&mut word, b, &left_sentinel, &boundary[0], m);
    for i in 0..boundary.len() {
        word.push(b.contains(&boundary[i]));
        let next = if i + 1 < boundary.len() {
            boundary[i + 1].clone()
        } else {
            boundary[i].clone() + rational(m as i64 + 1)
        };
        push_region(&mut word, b, &boundary[i], &next, m);
    }
    word
}

/// Whether points `a_0 < ... < a_{m-1}` of the line exist whose membership
/// in `b` spells out `rho`.
pub fn convex_union_induces(b: &ConvexUnion, rho: &Code) -> bool {
    subsequence_in(rho.bits(), sample_word(b, rho.len()))
}

/// Definitional genus: the shortest code the set does not induce. Checks
/// that no shorter code is missing and that the missing code is unique at
/// its length; a violation indicates a broken [`ConvexUnion`] invariant.
pub fn genus_oracle(b: &ConvexUnion) -> Result<Code> {
    let d = b.boundary_points().len();
    for len in 1..=d + 1 {
        let missing: Vec<Code> = Code::all_of_length(len)
            .into_iter()
            .filter(|c| !convex_union_induces(b, c))
            .collect();
        match (len == d + 1, missing.len()) {
            (false, 0) => {}
            (true, 1) => return Ok(missing.into_iter().next().unwrap()),
            _ => {
                return Err(Error::Inconsistency(format!(
                    "{} codes of length {len} not induced by a set with {d} boundary points",
                    missing.len()
                )))
            }
        }
    }
    unreachable!("loop returns at len = d + 1")
}

/// All length-`m` codes the set induces.
pub fn pattern_set(b: &ConvexUnion, m: usize) -> BTreeSet<Code> {
    assert!(m >= 1, "pattern length must be positive");
    let word = sample_word(b, m);
    Code::all_of_length(m)
        .into_iter()
        .filter(|c| subsequence_in(c.bits(), word.iter().copied()))
        .collect()
}

/// Builds a set with the prescribed genus: boundary points at `1..=d`, each
/// open region inside the set exactly when its bit is 0. Boundary-point
/// membership is forced between two inside regions (excluded) and between
/// two outside regions (included); where free, closed endpoints are chosen.
pub fn convex_union_from_genus(eta: &Code) -> ConvexUnion {
    let d = eta.len() - 1;
    // Piece sequence: region 0, point 1, region 1, ..., point d, region d.
    // in[i] for regions comes from the code; point membership derived.
    let region_in: Vec<bool> = (0..=d).map(|i| !eta.bit(i)).collect();
    let point_in: Vec<bool> = (1..=d)
        .map(|i| {
            match (region_in[i - 1], region_in[i]) {
                (true, true) => false, // puncture, forced
                (false, false) => true, // isolated point, forced
                _ => true,              // free: prefer closed
            }
        })
        .collect();

    let mut components = Vec::new();
    let mut i = 0usize; // piece index over 2d+1 pieces; even = region i/2, odd = point (i+1)/2
    let piece_in = |idx: usize| -> bool {
        if idx % 2 == 0 {
            region_in[idx / 2]
        } else {
            point_in[idx / 2]
        }
    };
    let total = 2 * d + 1;
    while i < total {
        if !piece_in(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < total && piece_in(i) {
            i += 1;
        }
        let end = i - 1; // inclusive run of inside pieces
        let (left, left_closed) = if start % 2 == 1 {
            (Endpoint::Finite(rational(((start + 1) / 2) as i64)), true)
        } else if start == 0 {
            (Endpoint::NegInf, false)
        } else {
            (Endpoint::Finite(rational((start / 2) as i64)), false)
        };
        let (right, right_closed) = if end % 2 == 1 {
            (Endpoint::Finite(rational(((end + 1) / 2) as i64)), true)
        } else if end == total - 1 {
            (Endpoint::PosInf, false)
        } else {
            (Endpoint::Finite(rational((end / 2 + 1) as i64)), false)
        };
        components.push(Component {
            left,
            left_closed,
            right,
            right_closed,
        });
    }
    ConvexUnion::new(components).expect("assembled components satisfy the invariants")
}

/// All subsets of the chain that do not induce `eta`. For `|eta| = d+1`
/// this family is d-maximum with `binom(n, <= d)` members and `eta` as its
/// only forbidden code.
pub fn pattern_avoiding_family(
    chain: &OrderedGround,
    eta: &Code,
    cap: usize,
) -> Result<SetFamily> {
    let n = chain.len();
    check_enumeration_cap("pattern-avoiding enumeration", n, cap)?;
    if eta.len() > n {
        return Err(Error::InvalidInput(format!(
            "code of length {} cannot be avoided meaningfully on a chain of {n}",
            eta.len()
        )));
    }
    let members: Vec<Subset> = (0..1u64 << n)
        .map(|mask| Subset::from_mask_u64(n, mask))
        .filter(|s| !induces_pattern(s, eta))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(chain.clone(), members))
}
