use std::collections::BTreeSet;

use super::sampler::{closure_orbits, gen, GenRequest, Requirements};
use crate::graph::GraphKind;
use crate::group::{ElementSet, FamilySpec, FiniteGroup};

/// Conjugation-closed sets up to this size are enumerated exhaustively.
const CLOSED_MAX_DEGREE: usize = 4;
const RANDOM_DEGREES: [usize; 5] = [2, 3, 4, 6, 8];
const RANDOM_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub family: FamilySpec,
    pub set: ElementSet,
    pub kind: GraphKind,
}

/// Cyclic 3..=16, dihedral 3..=8, symmetric 3..=4, the quaternion group and
/// `Z/2 × Z/n` for `n` in 2..=8.
pub fn default_corpus_groups() -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = (3..=16).map(FamilySpec::Cyclic).collect();
    out.extend((3..=8).map(FamilySpec::Dihedral));
    out.extend((3..=4).map(FamilySpec::Symmetric));
    out.push(FamilySpec::Quaternion8);
    out.extend((2..=8).map(|n| {
        FamilySpec::Product(Box::new(FamilySpec::Cyclic(2)), Box::new(FamilySpec::Cyclic(n)))
    }));
    out
}

/// Every generating union of conjugation-and-inverse orbits of size at most
/// four (as both kinds), then five seeded random symmetric generating sets
/// per group (as Cayley graphs, and also as sum graphs when they happen to
/// be conjugation-closed). Order is deterministic given the seed.
pub fn default_corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (index, family) in default_corpus_groups().into_iter().enumerate() {
        let group = family.build().expect("corpus groups are valid");
        let mut seen = BTreeSet::new();
        let mut push = |set: ElementSet, kind: GraphKind, out: &mut Vec<CorpusEntry>| {
            if seen.insert((set.clone(), kind)) {
                out.push(CorpusEntry { family: family.clone(), set, kind });
            }
        };
        for set in closed_generating_sets(&group) {
            push(set.clone(), GraphKind::Cayley, &mut out);
            push(set, GraphKind::CayleySum, &mut out);
        }
        for (i, &d) in RANDOM_DEGREES.iter().enumerate() {
            let request = GenRequest {
                d_target: d,
                requirements: Requirements::default(),
                seed: sample_seed(seed, index, i),
                attempts: RANDOM_ATTEMPTS,
            };
            let Ok(set) = gen(&group, &request) else {
                continue;
            };
            if group.is_conjugation_closed(&set) {
                push(set.clone(), GraphKind::CayleySum, &mut out);
            }
            push(set, GraphKind::Cayley, &mut out);
        }
    }
    out
}

fn sample_seed(seed: u64, group_index: usize, sample: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((group_index as u64) << 8)
        .wrapping_add(sample as u64)
}

fn closed_generating_sets(group: &FiniteGroup) -> Vec<ElementSet> {
    let orbits = closure_orbits(group, true);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect(group, &orbits, 0, &mut chosen, 0, &mut out);
    out.sort();
    out
}

fn collect(
    group: &FiniteGroup,
    orbits: &[ElementSet],
    start: usize,
    chosen: &mut Vec<usize>,
    size: usize,
    out: &mut Vec<ElementSet>,
) {
    for i in start..orbits.len() {
        let next = size + orbits[i].len();
        if next > CLOSED_MAX_DEGREE {
            continue;
        }
        chosen.push(i);
        let set: ElementSet = chosen.iter().flat_map(|&j| orbits[j].iter().collect::<Vec<_>>()).collect();
        if group.generates(&set) {
            out.push(set);
        }
        collect(group, orbits, i + 1, chosen, next, out);
        chosen.pop();
    }
}
