//! Matchings between finite subsets of an abelian group.
//!
//! A matching from `A` to `B` (equal cardinalities) is a bijection `phi`
//! with `a + phi(a)` outside `A` for every `a`. Each matching carries a
//! multiplicity function counting how often each group element is hit by
//! the sums `a + phi(a)`; a matching is acyclic when no other matching
//! shares its multiplicity function. This module holds the decision
//! procedures, the enumeration streams, the intersection-bound criteria,
//! and the polyadic generalization.

use std::collections::HashMap;

use crate::abelian::{GroupElement, GroupSpec, Subset};
use crate::error::{Error, Result};

/// A bijection `A -> B` stored as a permutation: `A[i] -> B[map[i]]`
/// against the canonical sorted orders of both subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingFn {
    source: Subset,
    target: Subset,
    map: Vec<usize>,
}

impl MatchingFn {
    pub fn new(source: Subset, target: Subset, map: Vec<usize>) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::structure(format!(
                "bijection needs equal cardinalities, got {} and {}",
                source.len(),
                target.len()
            )));
        }
        if map.len() != source.len() {
            return Err(Error::structure("permutation length mismatch"));
        }
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if j >= map.len() || seen[j] {
                return Err(Error::structure("map is not a permutation"));
            }
            seen[j] = true;
        }
        Ok(MatchingFn {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Subset {
        &self.source
    }

    pub fn target(&self) -> &Subset {
        &self.target
    }

    pub fn permutation(&self) -> &[usize] {
        &self.map
    }

    /// Image of the `i`-th source element.
    pub fn image(&self, i: usize) -> &GroupElement {
        &self.target.elements()[self.map[i]]
    }

    /// Pairs `(a, phi(a))` in source order.
    pub fn pairs(&self) -> impl Iterator<Item = (&GroupElement, &GroupElement)> {
        self.source
            .elements()
            .iter()
            .enumerate()
            .map(|(i, a)| (a, self.image(i)))
    }
}

/// The count map `x -> #{a in A : a + phi(a) = x}`, stored as a sorted
/// association list. Total mass equals `#A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityFunction {
    counts: Vec<(GroupElement, u64)>,
}

impl MultiplicityFunction {
    pub fn counts(&self) -> &[(GroupElement, u64)] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    pub fn get(&self, x: &GroupElement) -> u64 {
        self.counts
            .binary_search_by(|(e, _)| e.cmp(x))
            .map(|i| self.counts[i].1)
            .unwrap_or(0)
    }

    fn from_sums(mut sums: Vec<GroupElement>) -> Self {
        sums.sort();
        let mut counts: Vec<(GroupElement, u64)> = Vec::new();
        for s in sums {
            match counts.last_mut() {
                Some((e, c)) if *e == s => *c += 1,
                _ => counts.push((s, 1)),
            }
        }
        MultiplicityFunction { counts }
    }
}

/// True iff `a + phi(a)` avoids `A` for every `a` in the source.
pub fn is_matching(spec: &GroupSpec, phi: &MatchingFn) -> Result<bool> {
    for (a, b) in phi.pairs() {
        if phi.source().contains(&spec.add(a, b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The multiplicity function of a bijection (Eq. count map of the sums).
pub fn multiplicity_function(spec: &GroupSpec, phi: &MatchingFn) -> Result<MultiplicityFunction> {
    let sums = phi
        .pairs()
        .map(|(a, b)| spec.add(a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicityFunction::from_sums(sums))
}

/// Compatibility test used throughout: `a_i` may map onto `b_j` iff the
/// sum escapes `A`.
fn compatibility(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<Vec<Vec<bool>>> {
    let n = a.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            adj[i][j] = !a.contains(&spec.add(x, y)?);
        }
    }
    Ok(adj)
}

/// Decides matching existence via maximum bipartite matching on the
/// compatibility graph.
pub fn has_matching(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<bool> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::argument(
            "matching existence needs equal, nonzero cardinalities",
        ));
    }
    let adj = compatibility(spec, a, b)?;
    let lists: Vec<Vec<usize>> = adj
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &ok)| ok)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(max_bipartite_matching(&lists, b.len()) == a.len())
}

/// Hopcroft–Karp maximum matching; `adj[u]` lists right-neighbors of `u`.
pub(crate) fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![NIL; n_left];
    let mut match_r = vec![NIL; n_right];
    let mut dist = vec![NIL; n_left];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        match_l: &mut [usize],
        match_r: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let w = match_r[v];
            if w == NIL
                || (dist[w] == dist[u].wrapping_add(1) && augment(w, adj, match_l, match_r, dist))
            {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = NIL;
        false
    }

    loop {
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    reachable_free = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }
        for u in 0..n_left {
            if match_l[u] == NIL {
                augment(u, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match_l.iter().filter(|&&v| v != NIL).count()
}

/// Streams every matching from `A` to `B` exactly once, ordered
/// lexicographically by permutation array.
pub struct MatchingIter {
    source: Subset,
    target: Subset,
    adj: Vec<Vec<bool>>,
    stack: Vec<usize>,
    used: Vec<bool>,
    exhausted: bool,
    yielded_empty: bool,
}

pub fn enumerate_matchings(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<MatchingIter> {
    if a.len() != b.len() {
        return Err(Error::argument(
            "matching enumeration needs equal cardinalities",
        ));
    }
    let adj = compatibility(spec, a, b)?;
    Ok(MatchingIter {
        source: a.clone(),
        target: b.clone(),
        adj,
        stack: Vec::with_capacity(a.len()),
        used: vec![false; a.len()],
        exhausted: false,
        yielded_empty: false,
    })
}

impl MatchingIter {
    fn next_leaf(&mut self) -> bool {
        let n = self.adj.len();
        let mut col_start = if self.stack.len() == n && n > 0 {
            let c = self.stack.pop().expect("nonempty stack");
            self.used[c] = false;
            c + 1
        } else {
            0
        };
        loop {
            let row = self.stack.len();
            let mut placed = false;
            for c in col_start..n {
                if !self.used[c] && self.adj[row][c] {
                    self.stack.push(c);
                    self.used[c] = true;
                    placed = true;
                    break;
                }
            }
            if placed {
                if self.stack.len() == n {
                    return true;
                }
                col_start = 0;
            } else {
                match self.stack.pop() {
                    None => return false,
                    Some(c) => {
                        self.used[c] = false;
                        col_start = c + 1;
                    }
                }
            }
        }
    }
}

impl Iterator for MatchingIter {
    type Item = MatchingFn;

    fn next(&mut self) -> Option<MatchingFn> {
        if self.exhausted {
            return None;
        }
        if self.adj.is_empty() {
            // The empty bijection is vacuously a matching; yield it once.
            self.exhausted = true;
            if self.yielded_empty {
                return None;
            }
            self.yielded_empty = true;
            return Some(MatchingFn {
                source: self.source.clone(),
                target: self.target.clone(),
                map: vec![],
            });
        }
        if self.next_leaf() {
            Some(MatchingFn {
                source: self.source.clone(),
                target: self.target.clone(),
                map: self.stack.clone(),
            })
        } else {
            self.exhausted = true;
            None
        }
    }
}

/// How the multiplicity-function multiset is populated when testing
/// acyclicity.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum AcyclicMode {
    /// Compare among matchings only (the definitional reading).
    Matchings,
    /// Compare among all bijections (the literal multiset recipe; agrees
    /// with `Matchings` whenever `A` and `A + B` are disjoint).
    Bijections,
}

/// The matchings whose multiplicity function is shared by no other
/// matching, in enumeration order. Empty means no acyclic matching.
pub fn acyclic_matchings(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<Vec<MatchingFn>> {
    let matchings: Vec<MatchingFn> = enumerate_matchings(spec, a, b)?.collect();
    let mut counts: HashMap<MultiplicityFunction, u32> = HashMap::new();
    let mut keys = Vec::with_capacity(matchings.len());
    for phi in &matchings {
        let key = multiplicity_function(spec, phi)?;
        *counts.entry(key.clone()).or_insert(0) += 1;
        keys.push(key);
    }
    Ok(matchings
        .into_iter()
        .zip(keys)
        .filter(|(_, k)| counts[k] == 1)
        .map(|(phi, _)| phi)
        .collect())
}

/// Existence form of the acyclicity check, honoring the chosen mode.
///
/// In `Bijections` mode the verdict is: does the multiset of multiplicity
/// functions over all bijections contain an element of multiplicity one?
pub fn has_acyclic_matching(
    spec: &GroupSpec,
    a: &Subset,
    b: &Subset,
    mode: AcyclicMode,
) -> Result<bool> {
    match mode {
        AcyclicMode::Matchings => Ok(!acyclic_matchings(spec, a, b)?.is_empty()),
        AcyclicMode::Bijections => {
            if a.len() != b.len() {
                return Err(Error::argument(
                    "acyclicity check needs equal cardinalities",
                ));
            }
            let mut counts: HashMap<MultiplicityFunction, u32> = HashMap::new();
            let mut perm: Vec<usize> = (0..a.len()).collect();
            loop {
                let phi = MatchingFn {
                    source: a.clone(),
                    target: b.clone(),
                    map: perm.clone(),
                };
                let key = multiplicity_function(spec, &phi)?;
                *counts.entry(key).or_insert(0) += 1;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            Ok(counts.values().any(|&c| c == 1))
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Outcome of an intersection-bound criterion: either the bound holds for
/// every nonempty index set `J`, or the first violating `J` (1-based,
/// increasing binary-mask order) is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub violating: Option<Vec<usize>>,
}

const BOUND_INDEX_LIMIT: usize = 20;

fn check_subset_family_bound<T, FMeet, FSize>(
    n: usize,
    bound: usize,
    meet: FMeet,
    size: FSize,
) -> BoundCheck
where
    FMeet: Fn(u32) -> T,
    FSize: Fn(&T) -> usize,
{
    for mask in 1u32..(1 << n) {
        let j = mask.count_ones() as usize;
        let m = meet(mask);
        if size(&m) + j > bound {
            let violating = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            return BoundCheck {
                holds: false,
                violating: Some(violating),
            };
        }
    }
    BoundCheck {
        holds: true,
        violating: None,
    }
}

/// The matchability criterion: `A` is matched to `B` iff
/// `#meet_{i in J}((A - a_i) ∩ B) <= n - #J` for every nonempty `J`.
pub fn matchability_bound(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<BoundCheck> {
    let n = a.len();
    if n != b.len() || n == 0 {
        return Err(Error::argument(
            "bound check needs equal, nonzero cardinalities",
        ));
    }
    if n > BOUND_INDEX_LIMIT {
        return Err(Error::resource(format!(
            "2^{n} index sets exceed the bound-check limit"
        )));
    }
    let translated: Vec<Subset> = a
        .iter()
        .map(|ai| {
            let neg = spec.neg(ai)?;
            Ok(a.translate(spec, &neg)?.intersect(b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(check_subset_family_bound(
        n,
        n,
        |mask| {
            let mut acc: Option<Subset> = None;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    acc = Some(match acc {
                        None => translated[i].clone(),
                        Some(s) => s.intersect(&translated[i]),
                    });
                }
            }
            acc.expect("nonempty mask")
        },
        Subset::len,
    ))
}

/// `{a in A : a + b in A}` — the elements whose sum with `b` falls back
/// into `A`.
pub fn return_set(spec: &GroupSpec, a: &Subset, b: &GroupElement) -> Result<Subset> {
    let kept: Vec<GroupElement> = a
        .iter()
        .filter_map(|x| match spec.add(x, b) {
            Ok(s) if a.contains(&s) => Some(Ok(x.clone())),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    Subset::new(spec, kept)
}

/// Checks `#meet_{i in J} A_{b_i} <= n - #J` for every nonempty `J`,
/// where `A_b` is the return set of `b`. Holds whenever `A` is matched
/// to `B`.
pub fn return_sets_bound(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<BoundCheck> {
    let n = a.len();
    if n != b.len() || n == 0 {
        return Err(Error::argument(
            "bound check needs equal, nonzero cardinalities",
        ));
    }
    if n > BOUND_INDEX_LIMIT {
        return Err(Error::resource(format!(
            "2^{n} index sets exceed the bound-check limit"
        )));
    }
    let sets: Vec<Subset> = b
        .iter()
        .map(|bi| return_set(spec, a, bi))
        .collect::<Result<Vec<_>>>()?;
    Ok(check_subset_family_bound(
        n,
        n,
        |mask| {
            let mut acc: Option<Subset> = None;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    acc = Some(match acc {
                        None => sets[i].clone(),
                        Some(s) => s.intersect(&sets[i]),
                    });
                }
            }
            acc.expect("nonempty mask")
        },
        Subset::len,
    ))
}

/// The weak m-intersection property for a family of subsets of
/// `{1, ..., n}`: `#meet_{i in J} J_i <= m - #J` for every nonempty `J`.
///
/// Members must have cardinality at most `m - 1`.
pub fn weak_m_intersection_check(
    family: &[std::collections::BTreeSet<usize>],
    m: usize,
) -> Result<bool> {
    if family.len() > BOUND_INDEX_LIMIT {
        return Err(Error::resource(format!(
            "family of {} sets exceeds the bound-check limit",
            family.len()
        )));
    }
    for (i, member) in family.iter().enumerate() {
        if member.len() + 1 > m {
            return Err(Error::argument(format!(
                "family member {} has cardinality {} >= m = {m}",
                i + 1,
                member.len()
            )));
        }
    }
    let t = family.len();
    for mask in 1u32..(1 << t) {
        let j = mask.count_ones() as usize;
        let mut acc: Option<std::collections::BTreeSet<usize>> = None;
        for i in 0..t {
            if mask >> i & 1 == 1 {
                acc = Some(match acc {
                    None => family[i].clone(),
                    Some(s) => s.intersection(&family[i]).copied().collect(),
                });
            }
        }
        if acc.expect("nonempty mask").len() + j > m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matching condition in the 2n-ary sum structure derived from the group:
/// for every n-tuple drawn from `A`, the sum of the tuple and its images
/// must avoid `A`.
///
/// With `arity = 1` this is exactly the usual matching condition.
pub fn polyadic_matching_check(spec: &GroupSpec, phi: &MatchingFn, arity: u32) -> Result<bool> {
    if arity == 0 {
        return Err(Error::argument("arity parameter must be positive"));
    }
    let a = phi.source();
    let k = a.len();
    if k == 0 {
        return Ok(true);
    }
    let tuple_count = (k as f64).powi(arity as i32);
    if tuple_count > 1e6 {
        return Err(Error::resource(format!(
            "{k}^{arity} tuples exceed the enumeration limit"
        )));
    }
    // Sum of a tuple and its images depends only on the multiset of
    // chosen indices, so enumerate non-decreasing index tuples.
    let contribs: Vec<GroupElement> = phi
        .pairs()
        .map(|(x, y)| spec.add(x, y))
        .collect::<Result<Vec<_>>>()?;
    let mut idx = vec![0usize; arity as usize];
    loop {
        let mut total = spec.zero();
        for &i in &idx {
            total = spec.add(&total, &contribs[i])?;
        }
        if a.contains(&total) {
            return Ok(false);
        }
        // next non-decreasing tuple
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            if idx[pos] + 1 < k {
                let v = idx[pos] + 1;
                for slot in idx.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}
