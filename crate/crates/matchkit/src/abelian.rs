//! Finite abelian groups given as explicit products of cyclic groups,
//! their elements, and canonical sorted subsets with sumset arithmetic.
//!
//! A group is described by its factor list `[n_1, ..., n_r]` and models
//! `Z/n_1Z x ... x Z/n_rZ`. No isomorphism normalization is applied: the
//! factor list the caller provides is the shape used throughout. Elements
//! are residue tuples, reduced componentwise. Subsets are strictly sorted
//! element sequences; that ordering is part of the external contract, so
//! every report and witness is reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `Z/n_1Z x ... x Z/n_rZ`, every `n_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    invariant_factors: Vec<u64>,
    order: u64,
}

impl GroupSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::argument("group needs at least one factor"));
        }
        let mut order: u64 = 1;
        for &n in factors {
            if n < 2 {
                return Err(Error::argument(format!("invariant factor {n} < 2")));
            }
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::resource("group order overflows u64"))?;
        }
        Ok(GroupSpec {
            invariant_factors: factors.to_vec(),
            order,
        })
    }

    /// The cyclic group `Z/nZ`.
    pub fn cyclic(n: u64) -> Result<Self> {
        GroupSpec::new(&[n])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element from residues, reducing each coordinate.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::structure(format!(
                "element arity {} does not match group rank {}",
                residues.len(),
                self.rank()
            )));
        }
        let reduced = residues
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&r, &n)| r % n)
            .collect();
        Ok(GroupElement { residues: reduced })
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.residues.len() != self.rank() {
            return Err(Error::structure(format!(
                "element arity {} does not match group rank {}",
                g.residues.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Componentwise sum reduced modulo the invariant factors.
    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let residues = g
            .residues
            .iter()
            .zip(&h.residues)
            .zip(&self.invariant_factors)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let residues = g
            .residues
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let neg_h = self.neg(h)?;
        self.add(g, &neg_h)
    }

    /// Rank of `g` in the lexicographic element order (mixed radix, first
    /// coordinate most significant).
    pub fn index_of(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        let mut idx = 0u64;
        for (&r, &n) in g.residues.iter().zip(&self.invariant_factors) {
            idx = idx * n + r;
        }
        Ok(idx)
    }

    /// Inverse of [`GroupSpec::index_of`].
    pub fn element_at(&self, mut idx: u64) -> Result<GroupElement> {
        if idx >= self.order {
            return Err(Error::argument(format!(
                "element index {idx} out of range for order {}",
                self.order
            )));
        }
        let mut residues = vec![0u64; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.invariant_factors[i];
            residues[i] = idx % n;
            idx /= n;
        }
        Ok(GroupElement { residues })
    }
}

/// An element of a [`GroupSpec`]: a componentwise-reduced residue tuple.
///
/// Ordering is lexicographic on the tuple; it induces the canonical order
/// on subsets and enumeration streams.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            write!(f, "(")?;
            for (i, r) in self.residues.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")
        }
    }
}

/// A canonical finite subset: strictly sorted, duplicate-free elements.
///
/// The text form is `{0,4,6}` for cyclic groups and `{(0,1),(1,2)}` for
/// products; it appears verbatim in all reports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset {
    elements: Vec<GroupElement>,
}

impl Subset {
    /// Canonicalizes: validates arity against the spec, sorts, removes
    /// duplicates.
    pub fn new(spec: &GroupSpec, mut elements: Vec<GroupElement>) -> Result<Self> {
        for e in &elements {
            spec.check(e)?;
        }
        elements.sort();
        elements.dedup();
        Ok(Subset { elements })
    }

    pub fn empty() -> Self {
        Subset { elements: vec![] }
    }

    /// Convenience constructor for cyclic groups from bare residues.
    pub fn from_residues(spec: &GroupSpec, residues: &[u64]) -> Result<Self> {
        let elements = residues
            .iter()
            .map(|&r| {
                if spec.rank() != 1 {
                    return Err(Error::structure(
                        "bare residues only describe elements of cyclic groups",
                    ));
                }
                spec.element(&[r])
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::new(spec, elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `{a + b : a in self, b in other}` as a canonical subset. Empty if
    /// either side is empty.
    pub fn sumset(&self, spec: &GroupSpec, other: &Subset) -> Result<Subset> {
        let mut sums = Vec::with_capacity(self.len() * other.len());
        for a in &self.elements {
            for b in &other.elements {
                sums.push(spec.add(a, b)?);
            }
        }
        Subset::new(spec, sums)
    }

    /// `{a + t : a in self}`.
    pub fn translate(&self, spec: &GroupSpec, t: &GroupElement) -> Result<Subset> {
        let shifted = self
            .elements
            .iter()
            .map(|a| spec.add(a, t))
            .collect::<Result<Vec<_>>>()?;
        Subset::new(spec, shifted)
    }

    pub fn intersect(&self, other: &Subset) -> Subset {
        let elements = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        Subset { elements }
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.elements.iter().all(|e| !other.contains(e))
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<Subset> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::argument(format!("subset must be brace-delimited: {text}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Subset::empty());
        }
        let mut elements = Vec::new();
        if spec.rank() == 1 {
            for part in inner.split(',') {
                let r: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::argument(format!("bad residue `{part}`")))?;
                elements.push(spec.element(&[r])?);
            }
        } else {
            let mut rest = inner;
            while !rest.is_empty() {
                let rest_trim = rest.trim_start();
                let open = rest_trim
                    .strip_prefix('(')
                    .ok_or_else(|| Error::argument(format!("expected `(` in `{rest_trim}`")))?;
                let close = open
                    .find(')')
                    .ok_or_else(|| Error::argument(format!("unclosed tuple in `{inner}`")))?;
                let tuple = &open[..close];
                let residues = tuple
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::argument(format!("bad residue `{p}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                elements.push(spec.element(&residues)?);
                rest = open[close + 1..].trim_start().trim_start_matches(',');
            }
        }
        Subset::new(spec, elements)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Streams every `size`-subset exactly once, lexicographically on the
/// sorted element sequence.
pub struct SubsetIter<'a> {
    spec: &'a GroupSpec,
    size: usize,
    indices: Vec<u64>,
    started: bool,
    done: bool,
}

/// Lexicographic stream of all subsets of the given size.
pub fn enumerate_subsets(spec: &GroupSpec, size: usize) -> Result<SubsetIter<'_>> {
    if size as u64 > spec.order() {
        return Err(Error::argument(format!(
            "subset size {size} exceeds group order {}",
            spec.order()
        )));
    }
    Ok(SubsetIter {
        spec,
        size,
        indices: (0..size as u64).collect(),
        started: false,
        done: false,
    })
}

impl SubsetIter<'_> {
    fn advance(&mut self) -> bool {
        let n = self.spec.order();
        let k = self.size;
        if k == 0 {
            return false;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.indices[i] < n - (k - i) as u64 {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn materialize(&self) -> Subset {
        let elements = self
            .indices
            .iter()
            .map(|&i| self.spec.element_at(i).expect("index in range"))
            .collect();
        Subset { elements }
    }
}

impl Iterator for SubsetIter<'_> {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.materialize());
        }
        if self.advance() {
            Some(self.materialize())
        } else {
            self.done = true;
            None
        }
    }
}

/// For `G = Z/p^kZ`: the number of generators (by direct additive order
/// check) paired with the size of the largest proper subgroup.
///
/// The returned pair always satisfies `m_G = p^k - n_G`.
pub fn cyclic_generator_stats(p: u64, k: u32) -> Result<(u64, u64)> {
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::argument("exponent k must be positive"));
    }
    let mut n: u64 = 1;
    for _ in 0..k {
        n = n
            .checked_mul(p)
            .ok_or_else(|| Error::resource("p^k overflows u64"))?;
    }
    if n > 1 << 20 {
        return Err(Error::resource(format!(
            "p^k = {n} too large for direct scan"
        )));
    }
    let mut generators = 0u64;
    for g in 1..n {
        // Additive order of g by walking its multiples.
        let mut x = g;
        let mut ord = 1u64;
        while x != 0 {
            x = (x + g) % n;
            ord += 1;
        }
        if ord == n {
            generators += 1;
        }
    }
    // Largest proper subgroup of Z/nZ: scan divisor sizes directly.
    let mut largest = 1u64;
    for d in 1..n {
        if n % d == 0 && d > largest {
            largest = d;
        }
    }
    debug_assert_eq!(generators, n - largest);
    Ok((generators, largest))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn subset(spec: &GroupSpec, rs: &[u64]) -> Subset {
        Subset::from_residues(spec, rs).unwrap()
    }

    #[test]
    fn add_reduces_modularly() {
        let g5 = z(5);
        let a = g5.element(&[3]).unwrap();
        let b = g5.element(&[4]).unwrap();
        assert_eq!(g5.add(&a, &b).unwrap(), g5.element(&[2]).unwrap());
    }

    #[test]
    fn add_componentwise_in_products() {
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let x = g.element(&[1, 2]).unwrap();
        assert_eq!(g.add(&x, &x).unwrap(), g.element(&[0, 1]).unwrap());
    }

    #[test]
    fn zero_is_identity() {
        let g = GroupSpec::new(&[4, 9]).unwrap();
        let x = g.element(&[3, 7]).unwrap();
        assert_eq!(g.add(&x, &g.zero()).unwrap(), x);
    }

    #[test]
    fn arity_mismatch_is_structural() {
        let g5 = z(5);
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let x = g.element(&[1, 1]).unwrap();
        let y = g5.element(&[1]).unwrap();
        assert!(matches!(g5.add(&x, &y), Err(Error::Structure(_))));
    }

    #[test]
    fn group_law_by_exhaustion_small_orders() {
        for factors in [vec![5], vec![8], vec![2, 3], vec![4, 4], vec![2, 2, 2]] {
            let g = GroupSpec::new(&factors).unwrap();
            let elems: Vec<_> = (0..g.order()).map(|i| g.element_at(i).unwrap()).collect();
            for a in &elems {
                // identity and inverse
                assert_eq!(&g.add(a, &g.zero()).unwrap(), a);
                let neg = g.neg(a).unwrap();
                assert!(g.add(a, &neg).unwrap().is_zero());
                for b in &elems {
                    assert_eq!(g.add(a, b).unwrap(), g.add(b, a).unwrap());
                    for c in &elems {
                        let left = g.add(&g.add(a, b).unwrap(), c).unwrap();
                        let right = g.add(a, &g.add(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn sumset_example_frozen() {
        let g5 = z(5);
        let a = subset(&g5, &[1, 2]);
        let b = subset(&g5, &[1, 3]);
        // 1+1=2, 1+3=4, 2+1=3, 2+3=0
        assert_eq!(a.sumset(&g5, &b).unwrap(), subset(&g5, &[0, 2, 3, 4]));
    }

    #[test]
    fn sumset_identity_and_empty() {
        let g7 = z(7);
        let a = subset(&g7, &[0, 4, 6]);
        let zero = subset(&g7, &[0]);
        assert_eq!(a.sumset(&g7, &zero).unwrap(), a);
        assert_eq!(a.sumset(&g7, &Subset::empty()).unwrap(), Subset::empty());
        assert_eq!(Subset::empty().sumset(&g7, &a).unwrap(), Subset::empty());
    }

    #[test]
    fn sumset_matches_brute_force_small_cyclic() {
        // Direct double-loop oracle over every subset pair of Z/nZ, n <= 5,
        // plus size bound #A * #B.
        for n in 2..=5u64 {
            let g = z(n);
            let all: Vec<Subset> = (0..(1u32 << n))
                .map(|mask| {
                    let rs: Vec<u64> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    subset(&g, &rs)
                })
                .collect();
            for a in &all {
                for b in &all {
                    let got = a.sumset(&g, b).unwrap();
                    let mut expect = std::collections::BTreeSet::new();
                    for x in a.iter() {
                        for y in b.iter() {
                            expect.insert(g.add(x, y).unwrap());
                        }
                    }
                    assert_eq!(
                        got.elements().to_vec(),
                        expect.into_iter().collect::<Vec<_>>()
                    );
                    assert!(got.len() <= a.len() * b.len() || a.is_empty() || b.is_empty());
                }
            }
        }
    }

    #[test]
    fn enumerate_subsets_lexicographic_order() {
        let g3 = z(3);
        let got: Vec<String> = enumerate_subsets(&g3, 2)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, ["{0,1}", "{0,2}", "{1,2}"]);

        let g4 = z(4);
        let got: Vec<String> = enumerate_subsets(&g4, 2)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, ["{0,1}", "{0,2}", "{0,3}", "{1,2}", "{1,3}", "{2,3}"]);
    }

    #[test]
    fn enumerate_subsets_size_zero_and_counts() {
        let g5 = z(5);
        let empties: Vec<_> = enumerate_subsets(&g5, 0).unwrap().collect();
        assert_eq!(empties.len(), 1);
        assert!(empties[0].is_empty());

        let g7 = z(7);
        let zero = g7.zero();
        let count = enumerate_subsets(&g7, 3)
            .unwrap()
            .filter(|s| !s.contains(&zero))
            .count();
        assert_eq!(count, 20); // C(6,3)

        // duplicate-free binomial counts, including a product group
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let mut total = 0usize;
        for size in 0..=6 {
            let subsets: Vec<_> = enumerate_subsets(&g, size).unwrap().collect();
            let mut dedup = subsets.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), subsets.len());
            total += subsets.len();
        }
        assert_eq!(total, 64);
    }

    #[test]
    fn enumerate_subsets_rejects_oversize() {
        let g3 = z(3);
        assert!(matches!(enumerate_subsets(&g3, 4), Err(Error::Argument(_))));
    }

    #[test]
    fn generator_stats_small_prime_powers() {
        assert_eq!(cyclic_generator_stats(2, 3).unwrap(), (4, 4));
        assert_eq!(cyclic_generator_stats(3, 2).unwrap(), (6, 3));
        assert_eq!(cyclic_generator_stats(5, 1).unwrap(), (4, 1));
        assert!(matches!(
            cyclic_generator_stats(6, 1),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn subset_text_form_round_trips() {
        let g7 = z(7);
        let a = subset(&g7, &[0, 4, 6]);
        assert_eq!(a.to_string(), "{0,4,6}");
        assert_eq!(Subset::parse(&g7, "{0,4,6}").unwrap(), a);
        assert_eq!(Subset::parse(&g7, "{ 6, 4, 0 }").unwrap(), a);
        assert_eq!(Subset::parse(&g7, "{}").unwrap(), Subset::empty());

        let g = GroupSpec::new(&[2, 3]).unwrap();
        let s = Subset::new(
            &g,
            vec![g.element(&[0, 1]).unwrap(), g.element(&[1, 2]).unwrap()],
        )
        .unwrap();
        assert_eq!(s.to_string(), "{(0,1),(1,2)}");
        assert_eq!(Subset::parse(&g, "{(0,1),(1,2)}").unwrap(), s);
        assert_eq!(Subset::parse(&g, "{(1,2),(0,1)}").unwrap(), s);
    }

    #[test]
    fn element_indexing_is_lexicographic() {
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let order: Vec<String> = (0..6)
            .map(|i| g.element_at(i).unwrap().to_string())
            .collect();
        assert_eq!(
            order,
            ["(0,0)", "(0,1)", "(0,2)", "(1,0)", "(1,1)", "(1,2)"]
        );
        for i in 0..6 {
            assert_eq!(g.index_of(&g.element_at(i).unwrap()).unwrap(), i);
        }
    }
}
