use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExperimentError;
use crate::group::{ElementSet, FiniteGroup};

/// Orbit enumeration for the feasibility count is skipped above this many orbits.
const FEASIBILITY_MAX_ORBITS: usize = 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Requirements {
    pub conjugation_closed: bool,
    pub non_bipartite: bool,
    pub minimal: bool,
}

impl FromStr for Requirements {
    type Err = ExperimentError;

    /// Comma-separated subset of `conjugation_closed`, `non_bipartite`,
    /// `minimal`; `none` or the empty string for no requirement.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = Requirements::default();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "none" => {}
                "conjugation_closed" | "conj" => r.conjugation_closed = true,
                "non_bipartite" => r.non_bipartite = true,
                "minimal" => r.minimal = true,
                other => {
                    return Err(ExperimentError::Parse(format!("unknown requirement `{other}`")))
                }
            }
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenRequest {
    pub d_target: usize,
    pub requirements: Requirements,
    pub seed: u64,
    pub attempts: usize,
}

/// The inverse closure of `x`, widened to whole conjugacy classes on request.
fn closure_of(group: &FiniteGroup, x: usize, conj: bool) -> ElementSet {
    let pair = ElementSet::new([x, group.inv(x)]);
    if conj {
        group
            .conjugacy_class(x)
            .union(&group.conjugacy_class(group.inv(x)))
    } else {
        pair
    }
}

fn meets(group: &FiniteGroup, set: &ElementSet, d: usize, req: &Requirements) -> bool {
    if set.len() != d || set.contains(group.identity()) || !group.is_symmetric(set) {
        return false;
    }
    if req.conjugation_closed && !group.is_conjugation_closed(set) {
        return false;
    }
    if !group.generates(set) {
        return false;
    }
    if req.non_bipartite
        && group
            .index_two_subgroups()
            .iter()
            .any(|h| !h.intersects(set))
    {
        return false;
    }
    !req.minimal || group.minimal_generating_check(set).unwrap_or(false)
}

/// Rejection sampling: draw non-identity elements, close each under inverses
/// (and conjugation when required), reject on overshooting `d_target`.
/// Deterministic given the seed.
pub fn gen(group: &FiniteGroup, req: &GenRequest) -> Result<ElementSet, ExperimentError> {
    if req.attempts == 0 {
        return Err(ExperimentError::Validation("attempts must be at least 1".into()));
    }
    let n = group.order();
    let candidates: Vec<usize> = (0..n).filter(|&g| g != group.identity()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    if !candidates.is_empty() && req.d_target >= 1 && req.d_target < n {
        for _ in 0..req.attempts {
            let mut set = ElementSet::empty();
            for _ in 0..4 * n {
                let x = candidates[rng.gen_range(0..candidates.len())];
                set = set.union(&closure_of(group, x, req.requirements.conjugation_closed));
                if set.len() >= req.d_target {
                    break;
                }
            }
            if meets(group, &set, req.d_target, &req.requirements) {
                return Ok(set);
            }
        }
    }
    Err(ExperimentError::NoValidSet {
        attempts: req.attempts,
        feasible: feasible_count(group, req.d_target, &req.requirements),
    })
}

/// Orbits of `x ↦ x⁻¹` (and conjugation) on the non-identity elements.
pub(crate) fn closure_orbits(group: &FiniteGroup, conj: bool) -> Vec<ElementSet> {
    let mut seen = vec![false; group.order()];
    let mut out = Vec::new();
    for x in 0..group.order() {
        if x == group.identity() || seen[x] {
            continue;
        }
        let orbit = closure_of(group, x, conj);
        for y in orbit.iter() {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

/// Exhaustive number of sets meeting the request, when small enough to count.
pub fn feasible_count(group: &FiniteGroup, d: usize, req: &Requirements) -> Option<usize> {
    let orbits = closure_orbits(group, req.conjugation_closed);
    if orbits.len() > FEASIBILITY_MAX_ORBITS {
        return None;
    }
    let mut count = 0;
    for mask in 1u64..(1u64 << orbits.len()) {
        let size: usize = (0..orbits.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| orbits[i].len())
            .sum();
        if size != d {
            continue;
        }
        let set: ElementSet = (0..orbits.len())
            .filter(|&i| mask >> i & 1 == 1)
            .flat_map(|i| orbits[i].iter().collect::<Vec<_>>())
            .collect();
        if meets(group, &set, d, req) {
            count += 1;
        }
    }
    Some(count)
}
