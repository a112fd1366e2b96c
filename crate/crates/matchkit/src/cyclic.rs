//! Bitmask fast path for subsets of `Z/nZ`, `n <= 64`.
//!
//! The exhaustive searches live entirely on `u64` subset masks; canonical
//! [`Subset`](crate::abelian::Subset) values are materialized only at the
//! boundary (witnesses, reports). External equality and ordering are still
//! defined on the sorted element sequences.

use std::collections::HashMap;

use crate::abelian::{GroupSpec, Subset};
use crate::error::{Error, Result};

pub(crate) fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `{x + k : x in mask}` in `Z/nZ`.
pub(crate) fn rotate(mask: u64, k: u32, n: u32) -> u64 {
    debug_assert!(k < n);
    if k == 0 {
        return mask;
    }
    ((mask << k) | (mask >> (n - k))) & full_mask(n)
}

/// Sumset `A + B` on masks; empty if either side is empty.
pub(crate) fn sumset_mask(a: u64, b: u64, n: u32) -> u64 {
    let mut out = 0u64;
    let mut rest = b;
    while rest != 0 {
        let k = rest.trailing_zeros();
        out |= rotate(a, k, n);
        rest &= rest - 1;
    }
    if a == 0 {
        0
    } else {
        out
    }
}

pub(crate) fn mask_to_subset(spec: &GroupSpec, mask: u64) -> Subset {
    let residues: Vec<u64> = (0..spec.order()).filter(|&i| mask >> i & 1 == 1).collect();
    Subset::from_residues(spec, &residues).expect("mask residues are reduced")
}

pub(crate) fn subset_to_mask(s: &Subset) -> u64 {
    let mut mask = 0u64;
    for e in s.iter() {
        mask |= 1 << e.residues()[0];
    }
    mask
}

/// Per-pair verdict produced by the mask engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PairVerdict {
    pub matchings: u64,
    pub acyclic_exists: bool,
}

enum CountSink {
    /// Sorted sums packed into a u128 key, `bits` bits per sum.
    Packed { bits: u32, map: HashMap<u128, u32> },
    /// Fallback for subset sizes too large to pack.
    Listed { map: HashMap<Vec<u8>, u32> },
}

impl CountSink {
    fn new(n: u32, size: usize) -> Self {
        let bits = 64 - ((n - 1) as u64).leading_zeros();
        if bits as usize * size <= 128 {
            CountSink::Packed {
                bits,
                map: HashMap::new(),
            }
        } else {
            CountSink::Listed {
                map: HashMap::new(),
            }
        }
    }

    fn clear(&mut self) {
        match self {
            CountSink::Packed { map, .. } => map.clear(),
            CountSink::Listed { map } => map.clear(),
        }
    }

    fn bump(&mut self, sums: &[u8]) {
        let mut sorted = [0u8; 64];
        let sorted = &mut sorted[..sums.len()];
        sorted.copy_from_slice(sums);
        sorted.sort_unstable();
        match self {
            CountSink::Packed { bits, map } => {
                let mut key = 0u128;
                for &s in sorted.iter() {
                    key = (key << *bits) | s as u128;
                }
                *map.entry(key).or_insert(0) += 1;
            }
            CountSink::Listed { map } => {
                *map.entry(sorted.to_vec()).or_insert(0) += 1;
            }
        }
    }

    fn any_unique(&self) -> bool {
        match self {
            CountSink::Packed { map, .. } => map.values().any(|&c| c == 1),
            CountSink::Listed { map } => map.values().any(|&c| c == 1),
        }
    }
}

/// Reusable scratch state for deciding one pair at a time.
pub(crate) struct PairEngine {
    n: u32,
    a_elems: Vec<u8>,
    b_elems: Vec<u8>,
    sums: Vec<u8>,     // row-major size x size
    allowed: Vec<u64>, // per source element, permitted target columns
    stack: Vec<u8>,
    matchings: u64,
}

impl PairEngine {
    pub fn new(n: u32) -> Self {
        PairEngine {
            n,
            a_elems: Vec::new(),
            b_elems: Vec::new(),
            sums: Vec::new(),
            allowed: Vec::new(),
            stack: Vec::new(),
            matchings: 0,
        }
    }

    fn load(&mut self, a_mask: u64, b_mask: u64, restrict_to_matchings: bool) -> usize {
        self.a_elems.clear();
        self.b_elems.clear();
        for i in 0..self.n {
            if a_mask >> i & 1 == 1 {
                self.a_elems.push(i as u8);
            }
            if b_mask >> i & 1 == 1 {
                self.b_elems.push(i as u8);
            }
        }
        let size = self.a_elems.len();
        debug_assert_eq!(size, self.b_elems.len());
        self.sums.resize(size * size, 0);
        self.allowed.resize(size, 0);
        for (i, &a) in self.a_elems.iter().enumerate() {
            let mut row_allowed = 0u64;
            for (j, &b) in self.b_elems.iter().enumerate() {
                let s = (a as u32 + b as u32) % self.n;
                self.sums[i * size + j] = s as u8;
                if !restrict_to_matchings || a_mask >> s & 1 == 0 {
                    row_allowed |= 1 << j;
                }
            }
            self.allowed[i] = row_allowed;
        }
        size
    }

    fn dfs(&mut self, row: usize, used: u64, size: usize, sink: &mut CountSink) {
        if row == size {
            self.matchings += 1;
            sink.bump(&self.stack);
            return;
        }
        let mut candidates = self.allowed[row] & !used;
        while candidates != 0 {
            let j = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.stack.push(self.sums[row * size + j]);
            self.dfs(row + 1, used | (1 << j), size, sink);
            self.stack.pop();
        }
    }

    /// Counts matchings and decides whether some multiplicity function is
    /// unique among matchings.
    pub fn verdict_matchings(&mut self, a_mask: u64, b_mask: u64) -> PairVerdict {
        let size = self.load(a_mask, b_mask, true);
        let mut sink = CountSink::new(self.n, size);
        sink.clear();
        self.matchings = 0;
        self.stack.clear();
        self.dfs(0, 0, size, &mut sink);
        PairVerdict {
            matchings: self.matchings,
            acyclic_exists: self.matchings > 0 && sink.any_unique(),
        }
    }

    /// The literal multiset recipe: populate over all bijections and ask
    /// for an element of multiplicity one.
    pub fn verdict_bijections(&mut self, a_mask: u64, b_mask: u64) -> PairVerdict {
        let size = self.load(a_mask, b_mask, false);
        let mut sink = CountSink::new(self.n, size);
        sink.clear();
        self.matchings = 0;
        self.stack.clear();
        self.dfs(0, 0, size, &mut sink);
        let unique = sink.any_unique();
        // matchings count from the unrestricted run is the bijection
        // count; recompute the constrained existence separately.
        PairVerdict {
            matchings: if self.has_matching(a_mask, b_mask) {
                1
            } else {
                0
            },
            acyclic_exists: unique,
        }
    }

    /// Matching existence via augmenting paths on the compatibility graph.
    pub fn has_matching(&mut self, a_mask: u64, b_mask: u64) -> bool {
        let size = self.load(a_mask, b_mask, true);
        let lists: Vec<Vec<usize>> = (0..size)
            .map(|i| {
                (0..size)
                    .filter(|&j| self.allowed[i] >> j & 1 == 1)
                    .collect()
            })
            .collect();
        crate::matching::max_bipartite_matching(&lists, size) == size
    }
}

/// Lexicographic combination stream over `{0, ..., universe-1}` with
/// unranking support, used to shard searches deterministically.
pub(crate) struct Combinations {
    universe: u64,
    indices: Vec<u64>,
    fresh: bool,
}

impl Combinations {
    pub fn new(universe: u64, size: usize) -> Self {
        Combinations {
            universe,
            indices: (0..size as u64).collect(),
            fresh: true,
        }
    }

    /// Positions the stream at the combination of the given rank
    /// (combinatorial number system, lexicographic).
    pub fn seek(universe: u64, size: usize, mut rank: u128) -> Self {
        assert!(
            rank < binomial(universe, size).max(1),
            "combination rank out of range"
        );
        let mut indices = Vec::with_capacity(size);
        let mut next = 0u64;
        for slot in 0..size {
            let remaining = size - slot - 1;
            let mut v = next;
            loop {
                let after = binomial(universe - v - 1, remaining);
                if rank < after {
                    break;
                }
                rank -= after;
                v += 1;
            }
            indices.push(v);
            next = v + 1;
        }
        Combinations {
            universe,
            indices,
            fresh: true,
        }
    }

    pub fn next_combo(&mut self) -> Option<&[u64]> {
        if self.fresh {
            self.fresh = false;
            if self.indices.len() as u64 > self.universe {
                return None;
            }
            return Some(&self.indices);
        }
        let k = self.indices.len();
        if k == 0 {
            return None;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.indices[i] < self.universe - (k - i) as u64 {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return Some(&self.indices);
            }
        }
        None
    }
}

pub(crate) fn binomial(n: u64, k: usize) -> u128 {
    if k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Guards the mask fast path.
pub(crate) fn require_cyclic_width(modulus: u64) -> Result<u32> {
    if modulus < 2 {
        return Err(Error::argument("modulus must be at least 2"));
    }
    if modulus > 64 {
        return Err(Error::resource(
            "exhaustive searches are limited to moduli at most 64",
        ));
    }
    Ok(modulus as u32)
}
