//! Finite groups backed by a dense multiplication table.
//!
//! Elements are the indices `0..n`. Built-in families use a fixed element
//! ordering so that sets written as index lists stay meaningful:
//!
//! * `cyclic(n)`: residue `k` is index `k`.
//! * `dihedral(n)`: rotation `r^i` is index `i`, reflection `r^i s` is index
//!   `n + i` (with `s r s = r^-1`).
//! * `symmetric(k)`: permutations of `0..k` in lexicographic order of their
//!   one-line notation; the product `g·h` is the composition "apply `h`, then
//!   `g`".
//! * `quaternion8()`: `1, -1, i, -i, j, -j, k, -k` are indices `0..8`.
//! * `direct_product(a, b)`: the pair `(x, y)` is index `x * |b| + y`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest group order any constructor will build (7!).
pub const DEFAULT_ORDER_CAP: usize = 5040;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAGroupReason {
    NoIdentity,
    MissingInverse,
    NonAssociative,
    NotLatinSquare,
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotAGroupReason::NoIdentity => "no-identity",
            NotAGroupReason::MissingInverse => "missing-inverse",
            NotAGroupReason::NonAssociative => "non-associative",
            NotAGroupReason::NotLatinSquare => "not-latin-square",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("NotAGroup({0})")]
    NotAGroup(NotAGroupReason),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("set is not symmetric: {witness} is in the set but its inverse {inverse} is not")]
    NotSymmetric { witness: usize, inverse: usize },
    #[error("set does not generate the group (it generates a subgroup of order {generated})")]
    NotGenerating { generated: usize },
    #[error("invalid family spec `{0}`")]
    BadFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Sorted, duplicate-free list of element indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet {
    members: Vec<usize>,
}

impl ElementSet {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        ElementSet { members }
    }

    pub fn empty() -> Self {
        ElementSet::default()
    }

    /// Members of a bitmask over `0..64`.
    pub fn from_mask(mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            members.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        ElementSet { members }
    }

    pub fn from_flags(flags: &[bool]) -> Self {
        ElementSet {
            members: flags
                .iter()
                .enumerate()
                .filter_map(|(i, &f)| f.then_some(i))
                .collect(),
        }
    }

    pub fn to_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &m in &self.members {
            flags[m] = true;
        }
        flags
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.members.iter().any(|&m| other.contains(m))
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            members: self.iter().filter(|&m| !other.contains(m)).collect(),
        }
    }

    pub fn complement(&self, n: usize) -> ElementSet {
        ElementSet {
            members: (0..n).filter(|&m| !self.contains(m)).collect(),
        }
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::new(iter)
    }
}

/// Parses a comma- or whitespace-separated list of element indices.
/// `#` starts a comment that runs to the end of the line.
pub fn parse_element_list(text: &str) -> Result<Vec<usize>, GroupError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v = tok
                .parse::<usize>()
                .map_err(|_| GroupError::Parse(format!("bad element index `{tok}`")))?;
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates an arbitrary multiplication table (`table[g][h] = g·h`).
    pub fn from_mul_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_mul_table_with_cap(table, DEFAULT_ORDER_CAP)
    }

    pub fn from_mul_table_with_cap(table: &[Vec<usize>], cap: usize) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        if n > cap {
            return Err(GroupError::OrderCapExceeded { order: n, cap });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row {g} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::MalformedTable(format!(
                        "entry {x} in row {g} is out of range"
                    )));
                }
                mul.push(x as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupError::NotAGroup(NotAGroupReason::NoIdentity))?;

        let mut inv = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(GroupError::NotAGroup(NotAGroupReason::MissingInverse))?;
            inv.push(h as u32);
        }

        let mut seen = vec![0usize; n];
        for stamp in 1..=n {
            let row = stamp - 1;
            for h in 0..n {
                let x = at(row, h);
                if seen[x] == stamp {
                    return Err(GroupError::NotAGroup(NotAGroupReason::NotLatinSquare));
                }
                seen[x] = stamp;
            }
        }
        let mut seen = vec![0usize; n];
        for stamp in 1..=n {
            let col = stamp - 1;
            for g in 0..n {
                let x = at(g, col);
                if seen[x] == stamp {
                    return Err(GroupError::NotAGroup(NotAGroupReason::NotLatinSquare));
                }
                seen[x] = stamp;
            }
        }

        let group = FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
        };
        if !group.is_associative() {
            return Err(GroupError::NotAGroup(NotAGroupReason::NonAssociative));
        }
        Ok(group)
    }

    /// Light's associativity test: the elements `g` with `(xg)y = x(gy)` for
    /// all `x, y` form a submagma, so checking a generating set of the magma
    /// is enough. Costs `O(k n^2)` for `k` generators instead of `O(n^3)`.
    fn is_associative(&self) -> bool {
        let n = self.order;
        let mut in_closure = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut generators = Vec::new();
        for candidate in 0..n {
            if in_closure[candidate] {
                continue;
            }
            generators.push(candidate);
            // close `members ∪ generators` under products
            let mut queue: VecDeque<usize> = VecDeque::new();
            in_closure[candidate] = true;
            members.push(candidate);
            queue.push_back(candidate);
            while let Some(x) = queue.pop_front() {
                let snapshot = members.len();
                for i in 0..snapshot {
                    let y = members[i];
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if !in_closure[p] {
                            in_closure[p] = true;
                            members.push(p);
                            queue.push_back(p);
                        }
                    }
                }
            }
        }
        generators.iter().all(|&g| {
            (0..n).all(|x| {
                let xg = self.mul(x, g);
                (0..n).all(|y| self.mul(xg, y) == self.mul(x, self.mul(g, y)))
            })
        })
    }

    /// Builds a group from a table that is a group by construction.
    fn from_trusted_table(n: usize, mul: Vec<u32>) -> Self {
        debug_assert_eq!(mul.len(), n * n);
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] as usize == g))
            .expect("trusted table has an identity");
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mul[g * n + h] as usize == identity)
                .expect("trusted table has inverses");
            inv[g] = h as u32;
        }
        FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
        }
    }

    fn check_cap(order: usize, cap: usize) -> Result<(), GroupError> {
        if order > cap {
            Err(GroupError::OrderCapExceeded { order, cap })
        } else {
            Ok(())
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadFamily("cyclic:0".into()));
        }
        Self::check_cap(n, DEFAULT_ORDER_CAP)?;
        let mut mul = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                mul.push(((g + h) % n) as u32);
            }
        }
        Ok(Self::from_trusted_table(n, mul))
    }

    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadFamily("dihedral:0".into()));
        }
        let order = 2 * n;
        Self::check_cap(order, DEFAULT_ORDER_CAP)?;
        // (reflection flag, rotation exponent) for index x
        let split = |x: usize| (x >= n, x % n);
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (ra, i) = split(a);
                let (rb, j) = split(b);
                // r^i s^ra · r^j s^rb = r^(i ± j) s^(ra xor rb)
                let exp = if ra { (i + n - j) % n } else { (i + j) % n };
                let refl = ra ^ rb;
                mul.push((exp + if refl { n } else { 0 }) as u32);
            }
        }
        Ok(Self::from_trusted_table(order, mul))
    }

    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::BadFamily("symmetric:0".into()));
        }
        let mut order: usize = 1;
        for i in 2..=k {
            order = order.saturating_mul(i);
            Self::check_cap(order, DEFAULT_ORDER_CAP)?;
        }
        let perms = lexicographic_permutations(k);
        let index: HashMap<&[u8], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let mut mul = Vec::with_capacity(order * order);
        let mut buf = vec![0u8; k];
        for g in &perms {
            for h in &perms {
                for (slot, &hx) in buf.iter_mut().zip(h.iter()) {
                    *slot = g[hx as usize];
                }
                mul.push(index[buf.as_slice()] as u32);
            }
        }
        Ok(Self::from_trusted_table(order, mul))
    }

    pub fn quaternion8() -> Self {
        // unit index u in {1, i, j, k} = {0, 1, 2, 3}; element = sign * unit
        // unit products: (sign, unit)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let decode = |x: usize| (x % 2 == 1, x / 2);
        let mut mul = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (na, ua) = decode(a);
                let (nb, ub) = decode(b);
                let (nu, u) = UNIT[ua][ub];
                let neg = na ^ nb ^ nu;
                mul.push((2 * u + usize::from(neg)) as u32);
            }
        }
        Self::from_trusted_table(8, mul)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        let (na, nb) = (a.order, b.order);
        let order = na
            .checked_mul(nb)
            .ok_or(GroupError::OrderCapExceeded {
                order: usize::MAX,
                cap: DEFAULT_ORDER_CAP,
            })?;
        Self::check_cap(order, DEFAULT_ORDER_CAP)?;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let p = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
                mul.push(p as u32);
            }
        }
        Ok(Self::from_trusted_table(order, mul))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// `x g x^-1`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> ElementSet {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn conjugacy_class(&self, g: usize) -> ElementSet {
        (0..self.order).map(|x| self.conjugate(g, x)).collect()
    }

    pub fn check_set(&self, set: &ElementSet) -> Result<(), GroupError> {
        match set.max() {
            Some(m) if m >= self.order => Err(GroupError::ElementOutOfRange {
                element: m,
                order: self.order,
            }),
            _ => Ok(()),
        }
    }

    pub fn inverse_set(&self, set: &ElementSet) -> ElementSet {
        set.iter().map(|x| self.inv(x)).collect()
    }

    /// First element of `set` whose inverse is missing, if any.
    pub fn symmetry_witness(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&s| !set.contains(self.inv(s)))
    }

    pub fn is_symmetric(&self, set: &ElementSet) -> bool {
        self.symmetry_witness(set).is_none()
    }

    /// First `(s, x)` with `x s x^-1` outside `set`, if any.
    pub fn conjugation_witness(&self, set: &ElementSet) -> Option<(usize, usize)> {
        for s in set.iter() {
            for x in 0..self.order {
                if !set.contains(self.conjugate(s, x)) {
                    return Some((s, x));
                }
            }
        }
        None
    }

    pub fn is_conjugation_closed(&self, set: &ElementSet) -> bool {
        self.conjugation_witness(set).is_none()
    }

    /// Smallest subgroup containing `seed`; `{e}` for an empty seed.
    pub fn subgroup_closure(&self, seed: &ElementSet) -> ElementSet {
        let mut gens: Vec<usize> = seed.iter().collect();
        gens.extend(seed.iter().map(|s| self.inv(s)));
        gens.sort_unstable();
        gens.dedup();

        let mut member = vec![false; self.order];
        let mut queue = VecDeque::new();
        member[self.identity] = true;
        queue.push_back(self.identity);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        ElementSet::from_flags(&member)
    }

    pub fn generates(&self, set: &ElementSet) -> bool {
        self.subgroup_closure(set).len() == self.order
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(self.identity)
            && set.iter().all(|a| {
                set.contains(self.inv(a)) && set.iter().all(|b| set.contains(self.mul(a, b)))
            })
    }

    /// All subgroups of index two, sorted by member sequence.
    ///
    /// Every such subgroup contains `N`, the subgroup generated by all squares
    /// and commutators, and `G/N` is elementary abelian of order `2^k`. The
    /// index-two subgroups are the kernels of the `2^k - 1` nonzero
    /// functionals `G/N -> Z/2`.
    pub fn index_two_subgroups(&self) -> Vec<ElementSet> {
        let n = self.order;
        if n % 2 == 1 {
            return Vec::new();
        }
        let mut seed = Vec::new();
        for a in 0..n {
            seed.push(self.mul(a, a));
            for b in 0..n {
                seed.push(self.commutator(a, b));
            }
        }
        let kernel = self.subgroup_closure(&ElementSet::new(seed));
        if kernel.len() == n {
            return Vec::new();
        }

        // coordinates of each element in G/N w.r.t. a greedily chosen basis
        let mut coord: Vec<Option<u64>> = vec![None; n];
        for x in kernel.iter() {
            coord[x] = Some(0);
        }
        let mut current: Vec<usize> = kernel.iter().collect();
        let mut dim = 0u32;
        for b in 0..n {
            if coord[b].is_some() {
                continue;
            }
            let bit = 1u64 << dim;
            dim += 1;
            let shifted: Vec<usize> = current
                .iter()
                .map(|&x| {
                    let y = self.mul(x, b);
                    coord[y] = Some(coord[x].expect("coordinate assigned") | bit);
                    y
                })
                .collect();
            current.extend(shifted);
        }
        debug_assert_eq!(current.len(), n);

        let mut out: Vec<ElementSet> = (1..(1u64 << dim))
            .map(|functional| {
                (0..n)
                    .filter(|&g| {
                        let c = coord[g].expect("every element has a coordinate");
                        (c & functional).count_ones().is_multiple_of(2)
                    })
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    /// True iff no nonempty symmetric proper subset of `set` generates the
    /// group. Only the maximal candidates `S \ {s, s^-1}` need checking.
    pub fn minimal_generating_check(&self, set: &ElementSet) -> Result<bool, GroupError> {
        self.check_set(set)?;
        if let Some(w) = self.symmetry_witness(set) {
            return Err(GroupError::NotSymmetric {
                witness: w,
                inverse: self.inv(w),
            });
        }
        let generated = self.subgroup_closure(set).len();
        if generated != self.order {
            return Err(GroupError::NotGenerating { generated });
        }
        Ok(set.iter().all(|s| {
            let rest = set.difference(&ElementSet::new([s, self.inv(s)]));
            rest.is_empty() || !self.generates(&rest)
        }))
    }

    /// Rows of the multiplication table, as accepted by [`Self::from_mul_table`].
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect()
    }

    /// Group-table text: `n` on the first line, then one row per element.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_table_text(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GroupError::Parse("missing order line".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| GroupError::Parse(format!("bad order `{header}`")))?;
        let mut table = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| GroupError::Parse(format!("bad table entry `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        if table.len() != n {
            return Err(GroupError::Parse(format!(
                "expected {n} table rows, found {}",
                table.len()
            )));
        }
        Self::from_mul_table(&table)
    }
}

fn lexicographic_permutations(k: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..k as u8).collect();
    let mut out = vec![current.clone()];
    // next_permutation
    while let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) {
        let pivot = i - 1;
        let j = (i..k).rev().find(|&j| current[j] > current[pivot]).unwrap();
        current.swap(pivot, j);
        current[i..].reverse();
        out.push(current.clone());
    }
    out
}

/// A named built-in group such as `cyclic:5` or `cyclic:2*dihedral:4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    Product(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            FamilySpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            FamilySpec::Dihedral(n) => FiniteGroup::dihedral(*n),
            FamilySpec::Symmetric(k) => FiniteGroup::symmetric(*k),
            FamilySpec::Quaternion8 => Ok(FiniteGroup::quaternion8()),
            FamilySpec::Product(a, b) => FiniteGroup::direct_product(&a.build()?, &b.build()?),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            FamilySpec::Cyclic(n) => Some(*n),
            FamilySpec::Dihedral(n) => n.checked_mul(2),
            FamilySpec::Symmetric(k) => (1..=*k).try_fold(1usize, |acc, i| acc.checked_mul(i)),
            FamilySpec::Quaternion8 => Some(8),
            FamilySpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            FamilySpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            FamilySpec::Symmetric(k) => write!(f, "symmetric:{k}"),
            FamilySpec::Quaternion8 => f.write_str("quaternion8"),
            FamilySpec::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((head, tail)) = s.split_once('*') {
            return Ok(FamilySpec::Product(
                Box::new(head.parse()?),
                Box::new(tail.parse()?),
            ));
        }
        if s == "quaternion8" || s == "quaternion:8" {
            return Ok(FamilySpec::Quaternion8);
        }
        let bad = || GroupError::BadFamily(s.to_string());
        let (name, param) = s.split_once(':').ok_or_else(bad)?;
        let param: usize = param.trim().parse().map_err(|_| bad())?;
        if param == 0 {
            return Err(bad());
        }
        match name.trim() {
            "cyclic" | "Z" => Ok(FamilySpec::Cyclic(param)),
            "dihedral" | "D" => Ok(FamilySpec::Dihedral(param)),
            "symmetric" | "S" => Ok(FamilySpec::Symmetric(param)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_index_two(g: &FiniteGroup) -> Vec<ElementSet> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize * 2 != n {
                continue;
            }
            let set = ElementSet::from_mask(mask);
            if g.is_subgroup(&set) {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    fn check_axioms(g: &FiniteGroup) {
        let n = g.order();
        let e = g.identity();
        for a in 0..n {
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[g.mul(a, b)] = true;
                col[g.mul(b, a)] = true;
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
            assert!(row.iter().all(|&x| x) && col.iter().all(|&x| x));
        }
    }

    #[test]
    fn trivial_group_from_table() {
        let g = FiniteGroup::from_mul_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z4_from_table() {
        let table: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|h| (g + h) % 4).collect()).collect();
        let g = FiniteGroup::from_mul_table(&table).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn table_without_identity() {
        let err = FiniteGroup::from_mul_table(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NotAGroup(NotAGroupReason::NoIdentity));
    }

    #[test]
    fn non_associative_loop_rejected() {
        // smallest non-associative loop with two-sided inverses (order 5)
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_mul_table(&table).unwrap_err();
        assert_eq!(err, GroupError::NotAGroup(NotAGroupReason::NonAssociative));
    }

    #[test]
    fn not_latin() {
        // identity 0, inverses exist, but row 1 repeats an entry
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        let err = FiniteGroup::from_mul_table(&table).unwrap_err();
        assert_eq!(err, GroupError::NotAGroup(NotAGroupReason::NotLatinSquare));
    }

    #[test]
    fn builtin_families_satisfy_axioms() {
        for spec in ["cyclic:1", "cyclic:7", "dihedral:1", "dihedral:2", "dihedral:5", "symmetric:1", "symmetric:3", "symmetric:4", "quaternion8", "cyclic:2*dihedral:3"] {
            let g: FiniteGroup = spec.parse::<FamilySpec>().unwrap().build().unwrap();
            check_axioms(&g);
            // round trip through the validated path
            assert_eq!(FiniteGroup::from_mul_table(&g.table()).unwrap(), g);
        }
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            FiniteGroup::symmetric(8),
            Err(GroupError::OrderCapExceeded { cap: 5040, .. })
        ));
        assert_eq!(FiniteGroup::symmetric(7).unwrap().order(), 5040);
        assert!(FiniteGroup::cyclic(5041).is_err());
    }

    #[test]
    fn cyclic_inverse() {
        assert_eq!(FiniteGroup::cyclic(5).unwrap().inv(2), 3);
    }

    #[test]
    fn s3_has_two_elements_of_order_three() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let threes = (0..6).filter(|&x| g.element_order(x) == 3).count();
        assert_eq!(threes, 2);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn d4_center() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.center(), ElementSet::new([0, 2]));
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion8();
        // i^2 = j^2 = k^2 = ijk = -1
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!(q.mul(4, 4), 1);
        assert_eq!(q.mul(6, 6), 1);
        assert_eq!(q.mul(q.mul(2, 4), 6), 1);
        assert_eq!(q.center(), ElementSet::new([0, 1]));
    }

    #[test]
    fn conjugation_examples() {
        let z = FiniteGroup::cyclic(6).unwrap();
        for g in 0..6 {
            for x in 0..6 {
                assert_eq!(z.conjugate(g, x), g);
            }
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let transpositions: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) == 2).collect();
        let three_cycles: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) == 3).collect();
        for &t in &transpositions {
            for &c in &three_cycles {
                assert!(transpositions.contains(&s3.conjugate(t, c)));
            }
        }
        let d4 = FiniteGroup::dihedral(4).unwrap();
        for x in 4..8 {
            assert_eq!(d4.conjugate(1, x), 3);
        }
    }

    #[test]
    fn closure_examples() {
        let z8 = FiniteGroup::cyclic(8).unwrap();
        assert_eq!(z8.subgroup_closure(&ElementSet::new([2])), ElementSet::new([0, 2, 4, 6]));
        assert_eq!(z8.subgroup_closure(&ElementSet::new([1, 7])).len(), 8);
        assert_eq!(z8.subgroup_closure(&ElementSet::empty()), ElementSet::new([0]));

        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.subgroup_closure(&ElementSet::new([t]));
        assert_eq!(h, ElementSet::new([0, t]));
    }

    #[test]
    fn generation_examples() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(!z6.generates(&ElementSet::new([2, 4])));
        assert!(z6.generates(&ElementSet::new([1, 5])));
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert!(d3.generates(&ElementSet::new([3, 4, 5])));
    }

    #[test]
    fn index_two_examples() {
        assert!(FiniteGroup::cyclic(5).unwrap().index_two_subgroups().is_empty());
        assert_eq!(
            FiniteGroup::cyclic(4).unwrap().index_two_subgroups(),
            vec![ElementSet::new([0, 2])]
        );
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let even: ElementSet = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        assert_eq!(s3.index_two_subgroups(), vec![even]);
    }

    #[test]
    fn index_two_matches_brute_force() {
        for spec in ["cyclic:2", "cyclic:6", "cyclic:8", "cyclic:12", "dihedral:2", "dihedral:4", "dihedral:6", "quaternion8", "cyclic:2*cyclic:4", "cyclic:2*cyclic:6", "cyclic:2*dihedral:3", "symmetric:3"] {
            let g = spec.parse::<FamilySpec>().unwrap().build().unwrap();
            assert_eq!(g.index_two_subgroups(), brute_force_index_two(&g), "{spec}");
        }
    }

    #[test]
    fn minimality_examples() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert!(z5.minimal_generating_check(&ElementSet::new([1, 4])).unwrap());
        let z8 = FiniteGroup::cyclic(8).unwrap();
        assert!(!z8.minimal_generating_check(&ElementSet::new([1, 4, 7])).unwrap());
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert!(!d3.minimal_generating_check(&ElementSet::new([3, 4, 5])).unwrap());
        assert!(matches!(
            z8.minimal_generating_check(&ElementSet::new([1, 4])),
            Err(GroupError::NotSymmetric { witness: 1, inverse: 7 })
        ));
        assert!(matches!(
            z8.minimal_generating_check(&ElementSet::new([2, 6])),
            Err(GroupError::NotGenerating { generated: 4 })
        ));
    }

    #[test]
    fn table_text_round_trip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let text = format!("# D3\n{}", g.to_table_text());
        assert_eq!(FiniteGroup::parse_table_text(&text).unwrap(), g);
        assert!(matches!(
            FiniteGroup::parse_table_text("2\n0 1\n"),
            Err(GroupError::Parse(_))
        ));
    }

    #[test]
    fn family_spec_parsing() {
        let spec: FamilySpec = "cyclic:2*cyclic:4".parse().unwrap();
        assert_eq!(spec.to_string(), "cyclic:2*cyclic:4");
        assert_eq!(spec.order(), Some(8));
        assert!("cyclic:0".parse::<FamilySpec>().is_err());
        assert!("klein".parse::<FamilySpec>().is_err());
        assert_eq!("quaternion8".parse::<FamilySpec>().unwrap(), FamilySpec::Quaternion8);
    }

    #[test]
    fn element_list_parsing() {
        assert_eq!(parse_element_list("1,4 # comment\n 7").unwrap(), vec![1, 4, 7]);
        assert!(parse_element_list("1,x").is_err());
    }
}
