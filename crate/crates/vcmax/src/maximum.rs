use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{subsequence_in, Code};
use crate::error::{Error, Result};
use crate::family::{check_enumeration_cap, SetFamily};
use crate::ground::OrderedGround;
use crate::sauer::sauer_bound_usize;
use crate::subset::Subset;

/// Whether `family` meets the Sauer bound with equality on every parameter
/// set. Fast path: the family is d-maximum exactly when it meets the bound
/// on the full ground and has VC dimension at most `d` — tightness on the
/// whole ground propagates to every restriction. The definitional check is
/// available as [`is_d_maximum_strict`].
pub fn is_d_maximum(family: &SetFamily, d: usize) -> bool {
    let n = family.ground().len();
    match sauer_bound_usize(n, d) {
        Some(bound) if family.len() == bound => family.vc_dimension_at_most(d),
        // A bound beyond usize can never be met by a materialized family.
        _ => false,
    }
}

/// Definitional check: every parameter set `A` has exactly
/// `binom(|A|, <= d)` traces. Exhausts all `2^n` subsets.
pub fn is_d_maximum_strict(family: &SetFamily, d: usize, cap: usize) -> Result<bool> {
    let n = family.ground().len();
    check_enumeration_cap("exhaustive d-maximum check", n, cap)?;
    // Cheap pre-check: the bound at some cardinality already exceeds |C|.
    for k in 0..=n {
        if sauer_bound_usize(k, d).map_or(true, |b| b > family.len()) {
            return Ok(false);
        }
    }
    for mask in 0..1u64 << n {
        let positions: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let expected = sauer_bound_usize(positions.len(), d).unwrap();
        if family.trace_count_at(&positions) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for a parameter set witnessing that the family is not
/// d-maximum, ascending by cardinality. Used for diagnostics.
pub fn find_non_maximum_witness(family: &SetFamily, d: usize, cap: usize) -> Result<Option<Subset>> {
    let n = family.ground().len();
    check_enumeration_cap("non-maximum witness search", n, cap)?;
    for k in 0..=n {
        let expected = match sauer_bound_usize(k, d) {
            Some(b) => b,
            None => continue,
        };
        for combo in (0..n).combinations(k) {
            if family.trace_count_at(&combo) != expected {
                return Ok(Some(Subset::from_indices(n, combo)));
            }
        }
    }
    Ok(None)
}

/// The unique trace missing from the family on `a`. Fails when zero or more
/// than one trace is missing, naming the offending set.
pub fn forbidden_label(family: &SetFamily, a: &Subset) -> Result<Subset> {
    let n = family.ground().len();
    if a.len() != n {
        return Err(Error::InvalidInput(
            "parameter set width does not match the ground".into(),
        ));
    }
    let positions: Vec<usize> = a.iter_indices().collect();
    let k = positions.len();
    if k >= 63 {
        return Err(Error::CapExceeded {
            what: "forbidden label enumeration",
            value: k,
            cap: 62,
        });
    }
    let mut present = vec![false; 1 << k];
    for m in family.members() {
        let mut mask = 0usize;
        for (j, &p) in positions.iter().enumerate() {
            if m.bit(p) {
                mask |= 1 << j;
            }
        }
        present[mask] = true;
    }
    let missing: Vec<usize> = (0..1 << k).filter(|&m| !present[m]).collect();
    if missing.len() != 1 {
        return Err(Error::NotMaximum {
            d: k.saturating_sub(1),
            subset: family.ground().label_list(a),
            missing: missing.len(),
            expected: 1 << k,
        });
    }
    let mut label = Subset::empty(n);
    for (j, &p) in positions.iter().enumerate() {
        if (missing[0] >> j) & 1 == 1 {
            label.set_bit(p, true);
        }
    }
    Ok(label)
}

/// Map from every (d+1)-element parameter set to its forbidden label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenLabelTable {
    ground: OrderedGround,
    d: usize,
    entries: BTreeMap<Subset, Subset>,
}

impl ForbiddenLabelTable {
    pub fn new(
        ground: OrderedGround,
        d: usize,
        entries: BTreeMap<Subset, Subset>,
    ) -> Result<Self> {
        let n = ground.len();
        for (key, label) in &entries {
            if key.len() != n || label.len() != n {
                return Err(Error::InvalidInput("table entry width mismatch".into()));
            }
            if key.count() != d + 1 {
                return Err(Error::InvalidInput(format!(
                    "table key {{{}}} has {} elements, expected {}",
                    ground.label_list(key),
                    key.count(),
                    d + 1
                )));
            }
            if !label.is_subset_of(key) {
                return Err(Error::InvalidInput(format!(
                    "label {{{}}} is not a subset of its key {{{}}}",
                    ground.label_list(label),
                    ground.label_list(key)
                )));
            }
        }
        Ok(ForbiddenLabelTable { ground, d, entries })
    }

    pub fn ground(&self) -> &OrderedGround {
        &self.ground
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<Subset, Subset> {
        &self.entries
    }

    /// Every (d+1)-subset of the ground must appear exactly once.
    pub fn check_complete(&self) -> Result<()> {
        let n = self.ground.len();
        let mut missing = Vec::new();
        for combo in (0..n).combinations(self.d + 1) {
            let key = Subset::from_indices(n, combo);
            if !self.entries.contains_key(&key) {
                missing.push(format!("{{{}}}", self.ground.label_list(&key)));
                if missing.len() >= 8 {
                    break;
                }
            }
        }
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "incomplete forbidden-label table; missing keys include {}",
                missing.join(", ")
            )))
        }
    }
}

/// Extracts the full forbidden-label table of a d-maximum family.
pub fn forbidden_label_table(family: &SetFamily, d: usize) -> Result<ForbiddenLabelTable> {
    let n = family.ground().len();
    if n < d + 1 {
        return Err(Error::InvalidInput(format!(
            "ground of size {n} has no {}-element subsets",
            d + 1
        )));
    }
    let mut entries = BTreeMap::new();
    for combo in (0..n).combinations(d + 1) {
        let key = Subset::from_indices(n, combo);
        let label = forbidden_label(family, &key)?;
        entries.insert(key, label);
    }
    ForbiddenLabelTable::new(family.ground().clone(), d, entries)
}

/// The forbidden labels read off as binary words along the ground order:
/// bit `i` of a code says whether the `i`-th element of the parameter set
/// lies in the label.
pub fn forbidden_codes(family: &SetFamily, d: usize) -> Result<BTreeSet<Code>> {
    let table = forbidden_label_table(family, d)?;
    Ok(table
        .entries()
        .iter()
        .map(|(key, label)| {
            let positions: Vec<usize> = key.iter_indices().collect();
            Code::from_bits(positions.iter().map(|&p| label.bit(p)))
                .expect("keys have d+1 >= 1 elements")
        })
        .collect())
}

/// Rebuilds the family a complete forbidden-label table characterizes:
/// all `B` with `B ∩ A != C_A` for every table entry `(A, C_A)`.
pub fn reconstruct_from_labels(table: &ForbiddenLabelTable, cap: usize) -> Result<SetFamily> {
    table.check_complete()?;
    let n = table.ground().len();
    check_enumeration_cap("reconstruction from labels", n, cap)?;
    let constraints: Vec<(u64, u64)> = table
        .entries()
        .iter()
        .map(|(key, label)| (key.mask_u64().unwrap(), label.mask_u64().unwrap()))
        .collect();
    let members: Vec<Subset> = (0..1u64 << n)
        .filter(|&b| constraints.iter().all(|&(a, l)| b & a != l))
        .map(|b| Subset::from_mask_u64(n, b))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(
        table.ground().clone(),
        members,
    ))
}

/// Whether positions `p_0 < ... < p_{m-1}` of the ground exist whose
/// membership in `a` spells out `rho`. Equivalent to `rho` being a
/// subsequence of the membership word of `a`.
pub fn induces_pattern(a: &Subset, rho: &Code) -> bool {
    subsequence_in(rho.bits(), (0..a.len()).map(|i| a.bit(i)))
}

/// Whether membership in every trace of the family is exactly avoidance of
/// the induced pattern `eta`: for each probe `X0` and each `A ⊆ X0`,
/// `A ∈ C|^{X0}` iff no points of `X0` spell out `eta` on `A`.
///
/// With `probes = None` all subsets of the ground are probed (capped).
pub fn is_finitely_characterized(
    family: &SetFamily,
    eta: &Code,
    probes: Option<&[Subset]>,
    cap: usize,
) -> Result<bool> {
    let n = family.ground().len();
    let all_probes: Vec<Subset>;
    let probes = match probes {
        Some(p) => p,
        None => {
            check_enumeration_cap("finite characterization probes", n, cap)?;
            all_probes = (0..1u64 << n).map(|m| Subset::from_mask_u64(n, m)).collect();
            &all_probes
        }
    };
    for probe in probes {
        if probe.len() != n {
            return Err(Error::InvalidInput("probe width mismatch".into()));
        }
        let positions: Vec<usize> = probe.iter_indices().collect();
        let k = positions.len();
        if k >= 63 {
            return Err(Error::CapExceeded {
                what: "finite characterization probe",
                value: k,
                cap: 62,
            });
        }
        let mut traces: HashSet<u64> = HashSet::new();
        for m in family.members() {
            let mut mask = 0u64;
            for (j, &p) in positions.iter().enumerate() {
                if m.bit(p) {
                    mask |= 1 << j;
                }
            }
            traces.insert(mask);
        }
        for a in 0..1u64 << k {
            let in_traces = traces.contains(&a);
            let avoids = !subsequence_in(eta.bits(), (0..k).map(|j| (a >> j) & 1 == 1));
            if in_traces != avoids {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`vcm_witness_search`]: a parameter set whose trace is
/// d-maximum, or a statement that none was found within budget. Absence of
/// a witness is never a claim of nonexistence.
#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Found(Subset),
    NotFound { candidates_tried: u64 },
}

impl WitnessOutcome {
    pub fn found(&self) -> Option<&Subset> {
        match self {
            WitnessOutcome::Found(s) => Some(s),
            WitnessOutcome::NotFound { .. } => None,
        }
    }
}

/// Searches for a parameter set `A` of size `min(max_witness, n)` whose
/// trace is d-maximum: a lower-bound witness for the largest `d` at which
/// the family traces maximum systems. Exhaustive for `n <= 14`, otherwise
/// seeded random restarts with greedy growth from a (d+1)-sized seed set.
pub fn vcm_witness_search(
    family: &SetFamily,
    d: usize,
    max_witness: usize,
    budget: u64,
    seed: u64,
) -> Result<WitnessOutcome> {
    if max_witness == 0 {
        return Err(Error::InvalidInput("max_witness must be positive".into()));
    }
    if family.is_empty() {
        return Err(Error::InvalidInput("empty family".into()));
    }
    let n = family.ground().len();
    let target = max_witness.min(n);
    let mut tried = 0u64;

    let check = |positions: &[usize], tried: &mut u64| -> Result<bool> {
        *tried += 1;
        let a = Subset::from_indices(n, positions.iter().copied());
        let restricted = family.restrict(&a)?;
        Ok(is_d_maximum(&restricted, d))
    };

    if n <= 14 {
        for combo in (0..n).combinations(target) {
            if tried >= budget {
                return Ok(WitnessOutcome::NotFound { candidates_tried: tried });
            }
            if check(&combo, &mut tried)? {
                return Ok(WitnessOutcome::Found(Subset::from_indices(n, combo)));
            }
        }
        return Ok(WitnessOutcome::NotFound { candidates_tried: tried });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seed_size = (d + 1).min(target);
    while tried < budget {
        // Seed set, then greedy growth keeping the trace d-maximum.
        let mut points: Vec<usize> = Vec::with_capacity(target);
        while points.len() < seed_size {
            let p = rng.gen_range(0..n);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        points.sort_unstable();
        if !check(&points, &mut tried)? {
            continue;
        }
        let mut rest: Vec<usize> = (0..n).filter(|p| !points.contains(p)).collect();
        rest.shuffle(&mut rng);
        for p in rest {
            if points.len() == target || tried >= budget {
                break;
            }
            let mut grown = points.clone();
            grown.push(p);
            grown.sort_unstable();
            if check(&grown, &mut tried)? {
                points = grown;
            }
        }
        if points.len() == target {
            return Ok(WitnessOutcome::Found(Subset::from_indices(n, points)));
        }
    }
    Ok(WitnessOutcome::NotFound { candidates_tried: tried })
}
