use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ground::OrderedGround;
use crate::subset::Subset;

/// A duplicate-free collection of subsets of an [`OrderedGround`], stored as
/// membership words in a canonical sorted order. Families are immutable after
/// construction; every operation returns a new value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFamily {
    ground: OrderedGround,
    members: Vec<Subset>,
}

impl SetFamily {
    /// Builds a family, rejecting duplicate members. Counting claims stay
    /// exact because nothing is silently merged; use [`SetFamily::new_dedup`]
    /// when collapsing duplicates is intended.
    pub fn new(ground: OrderedGround, members: Vec<Subset>) -> Result<Self> {
        let n = ground.len();
        for m in &members {
            if m.len() != n {
                return Err(Error::InvalidInput(format!(
                    "member word {} has width {}, ground has {} elements",
                    m.word(),
                    m.len(),
                    n
                )));
            }
        }
        let mut members = members;
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "duplicate member {}",
                w[0].word()
            )));
        }
        Ok(SetFamily { ground, members })
    }

    /// Normalizing constructor: explicitly deduplicates the given members.
    pub fn new_dedup(ground: OrderedGround, mut members: Vec<Subset>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        SetFamily::new(ground, members)
    }

    pub fn ground(&self) -> &OrderedGround {
        &self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, subset: &Subset) -> bool {
        self.members.binary_search(subset).is_ok()
    }

    fn check_parameter_set(&self, a: &Subset) -> Result<()> {
        if a.len() != self.ground.len() {
            return Err(Error::InvalidInput(format!(
                "parameter set has width {}, ground has {} elements",
                a.len(),
                self.ground.len()
            )));
        }
        Ok(())
    }

    /// The trace family on `a`: distinct intersections of members with `a`,
    /// over the sub-ground induced by `a`.
    pub fn restrict(&self, a: &Subset) -> Result<SetFamily> {
        self.check_parameter_set(a)?;
        let positions: Vec<usize> = a.iter_indices().collect();
        let sub_ground = self.ground.restrict(a);
        let mut traces: Vec<Subset> = self
            .members
            .iter()
            .map(|m| m.project(&positions))
            .collect();
        traces.sort_unstable();
        traces.dedup();
        Ok(SetFamily {
            ground: sub_ground,
            members: traces,
        })
    }

    pub fn restrict_to_labels<I, S>(&self, labels: I) -> Result<SetFamily>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let a = self.ground.subset_from_labels(labels)?;
        self.restrict(&a)
    }

    /// `|C|^A|` without materializing the restricted family.
    pub fn trace_count(&self, a: &Subset) -> Result<usize> {
        self.check_parameter_set(a)?;
        let positions: Vec<usize> = a.iter_indices().collect();
        Ok(self.trace_count_at(&positions))
    }

    pub(crate) fn trace_count_at(&self, positions: &[usize]) -> usize {
        if positions.len() <= 64 {
            let mut seen: HashSet<u64> = HashSet::with_capacity(self.members.len());
            for m in &self.members {
                let mut mask = 0u64;
                for (j, &p) in positions.iter().enumerate() {
                    if m.bit(p) {
                        mask |= 1 << j;
                    }
                }
                seen.insert(mask);
            }
            seen.len()
        } else {
            let mut seen: HashSet<Subset> = HashSet::with_capacity(self.members.len());
            for m in &self.members {
                seen.insert(m.project(positions));
            }
            seen.len()
        }
    }

    pub(crate) fn shatters_at(&self, positions: &[usize]) -> bool {
        // More than 63 positions can never be shattered by a materialized family.
        if positions.len() >= 64 || self.members.len() < (1usize << positions.len()) {
            return false;
        }
        self.trace_count_at(positions) == 1usize << positions.len()
    }

    /// Whether the trace on `a` is the full power set of `a`.
    pub fn shatters(&self, a: &Subset) -> Result<bool> {
        self.check_parameter_set(a)?;
        let positions: Vec<usize> = a.iter_indices().collect();
        Ok(self.shatters_at(&positions))
    }

    /// Largest cardinality of a shattered parameter set, by ascending
    /// exhaustive search. Shattering is downward monotone, so the search
    /// stops at the first cardinality with no shattered set.
    pub fn vc_dimension(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::InvalidInput(
                "the empty family has no VC dimension".into(),
            ));
        }
        let n = self.ground.len();
        let max_k = n.min(63).min(self.members.len().ilog2() as usize);
        let mut best = 0;
        for k in 1..=max_k {
            let found = (0..n)
                .combinations(k)
                .any(|combo| self.shatters_at(&combo));
            if !found {
                break;
            }
            best = k;
        }
        Ok(best)
    }

    /// `VC(C) <= d`, decided by checking that no (d+1)-set is shattered.
    pub fn vc_dimension_at_most(&self, d: usize) -> bool {
        let n = self.ground.len();
        if d >= n || self.is_empty() {
            return true;
        }
        if self.members.len() < (1usize << (d + 1).min(63)) {
            return true;
        }
        !(0..n)
            .combinations(d + 1)
            .any(|combo| self.shatters_at(&combo))
    }

    /// Member-wise symmetric difference with `a`; an involution that
    /// preserves member count.
    pub fn symdiff(&self, a: &Subset) -> Result<SetFamily> {
        self.check_parameter_set(a)?;
        let mut members: Vec<Subset> = self
            .members
            .iter()
            .map(|m| m.symmetric_difference(a))
            .collect();
        members.sort_unstable();
        Ok(SetFamily {
            ground: self.ground.clone(),
            members,
        })
    }

    /// The power set of the ground; ground size is capped since all `2^n`
    /// words are materialized.
    pub fn power_set(ground: OrderedGround, cap: usize) -> Result<SetFamily> {
        let n = ground.len();
        check_enumeration_cap("power set enumeration", n, cap)?;
        let members = (0..1u64 << n)
            .map(|mask| Subset::from_mask_u64(n, mask))
            .collect();
        Ok(SetFamily { ground, members })
    }

    /// Internal constructor for callers that guarantee distinctness
    /// (restriction, enumeration filters); sorts into canonical order.
    pub(crate) fn from_distinct_unchecked(
        ground: OrderedGround,
        mut members: Vec<Subset>,
    ) -> SetFamily {
        members.sort_unstable();
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { ground, members }
    }
}

/// Default bound on `n` for operations that enumerate all `2^n` subsets of
/// the ground.
pub const DEFAULT_ENUM_CAP: usize = 16;

pub(crate) fn check_enumeration_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 63 {
        return Err(Error::CapExceeded {
            what,
            value: n,
            cap: cap.min(62),
        });
    }
    Ok(())
}
