//! Arithmetic in `F_p ⊂ F_{p^m}` with an explicit irreducible modulus,
//! canonical subspaces over the prime field, the subfield lattice via
//! Frobenius fixed spaces, duality, and primitivity.
//!
//! Field elements are coefficient vectors in the power basis
//! `1, t, ..., t^(m-1)`; subspaces are reduced row-echelon bases over
//! `F_p`, which makes equality and reports canonical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::is_prime;
use crate::error::{Error, Result};

const CONSTRUCTION_LIMIT: u64 = 1 << 20;

// ---------------------------------------------------------------------------
// dense linear algebra over F_p

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a zero divisor");
    (s0.rem_euclid(p as i128)) as u64
}

/// In-place reduced row echelon form; returns pivot columns and drops
/// zero rows.
pub(crate) fn rref(p: u64, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..cols {
                    let sub = factor * rows[rank][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{v : M v = 0}` for the row-listed matrix `M`.
pub fn kernel_basis(p: u64, matrix: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = matrix.to_vec();
    let pivots = rref(p, &mut rows);
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().copied().peekable();
    let free_cols: Vec<usize> = (0..cols)
        .filter(|c| {
            if pivot_iter.peek() == Some(c) {
                pivot_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &free in &free_cols {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            // pivot variable = -(row[free]) * free value
            v[pc] = (p - rows[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, if it is invertible.
pub(crate) fn invert_matrix(p: u64, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut ext: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(j == i)));
            r
        })
        .collect();
    let pivots = rref(p, &mut ext);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(ext.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// polynomial helpers over F_p (coefficient vectors, index = degree)

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (nonzero leading coefficient).
fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if db == 0 {
        return vec![]; // division by a unit
    }
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let factor = r[r.len() - 1] * lead_inv % p;
        for i in 0..=db {
            let sub = factor * b[i] % p;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_divides(p: u64, divisor: &[u64], f: &[u64]) -> bool {
    poly_rem(p, f, divisor).is_empty()
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut g = vec![0u64; d + 1];
            let mut rest = k;
            for c in g.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            g[d] = 1;
            if poly_divides(p, &g, f) {
                return false;
            }
        }
    }
    true
}

/// The pinned default modulus: the lexicographically smallest (on the
/// tuple `(c_{m-1}, ..., c_0)`) monic irreducible polynomial of degree
/// `m` over `F_p`. Returned as the full coefficient vector
/// `[c_0, ..., c_{m-1}, 1]`.
pub fn default_modulus(p: u64, m: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::argument("extension degree must be at least 1"));
    }
    let order = (p as u128).pow(m as u32);
    if order > CONSTRUCTION_LIMIT as u128 {
        return Err(Error::resource(format!(
            "field order {order} exceeds the construction limit"
        )));
    }
    for k in 0..order {
        let mut f = vec![0u64; m + 1];
        let mut rest = k;
        for c in f.iter_mut().take(m) {
            *c = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        f[m] = 1;
        if is_irreducible(p, &f) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

// ---------------------------------------------------------------------------
// field spec and elements

/// `F_p ⊂ F_{p^m}` with an explicit monic irreducible modulus of degree
/// `m` (full coefficient vector, length `m + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn new(p: u64, m: usize, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::argument(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::argument("extension degree must be at least 1"));
        }
        if (p as u128).pow(m as u32) > CONSTRUCTION_LIMIT as u128 {
            return Err(Error::resource(
                "field order exceeds the construction limit",
            ));
        }
        if modulus.len() != m + 1 {
            return Err(Error::structure(format!(
                "modulus needs {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if modulus[m] != 1 {
            return Err(Error::structure("modulus must be monic"));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::argument("modulus is reducible"));
        }
        Ok(FieldSpec { p, m, modulus })
    }

    pub fn with_default_modulus(p: u64, m: usize) -> Result<Self> {
        FieldSpec::new(p, m, default_modulus(p, m)?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// The power-basis generator `t` (equals `1` when `m = 1`).
    pub fn gen(&self) -> FieldElement {
        if self.m == 1 {
            return self.one();
        }
        let mut coeffs = vec![0; self.m];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::structure(format!(
                "element needs {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        Ok(FieldElement {
            coeffs: coeffs.iter().map(|&c| c % self.p).collect(),
        })
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.coeffs.len() != self.m {
            return Err(Error::structure("element does not belong to this field"));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        })
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let c = c % self.p;
        Ok(FieldElement {
            coeffs: a.coeffs.iter().map(|&x| x * c % self.p).collect(),
        })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let prod = poly_mul(self.p, &a.coeffs, &b.coeffs);
        let rem = poly_rem(self.p, &prod, &self.modulus);
        Ok(self.reduce_poly(rem))
    }

    fn reduce_poly(&self, mut poly: Vec<u64>) -> FieldElement {
        poly.resize(self.m, 0);
        FieldElement { coeffs: poly }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the modulus. Zero has none.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::domain("zero has no multiplicative inverse"));
        }
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem = r0.clone();
            let lead_inv = inv_mod(*r1.last().unwrap(), p);
            while rem.len() >= r1.len() && !rem.is_empty() {
                let k = rem.len() - r1.len();
                let factor = rem.last().unwrap() * lead_inv % p;
                q[k] = factor;
                for (i, &c) in r1.iter().enumerate() {
                    let sub = factor * c % p;
                    rem[k + i] = (rem[k + i] + p - sub) % p;
                }
                poly_trim(&mut rem);
            }
            poly_trim(&mut q);
            // (r0, r1) = (r1, rem); (s0, s1) = (s1, s0 - q s1)
            let qs1 = poly_mul(p, &q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), 0);
            for (i, &c) in qs1.iter().enumerate() {
                s2[i] = (s2[i] + p - c) % p;
            }
            poly_trim(&mut s2);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 = gcd, must be a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let scale = inv_mod(r0[0], p);
        let mut inv = poly_mul(p, &s0, &[scale]);
        inv = poly_rem(p, &inv, &self.modulus);
        Ok(self.reduce_poly(inv))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> Result<FieldElement> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `x -> x^(p^d)`.
    pub fn frobenius_pow(&self, a: &FieldElement, d: usize) -> Result<FieldElement> {
        let mut x = a.clone();
        for _ in 0..d {
            x = self.pow(&x, self.p)?;
        }
        Ok(x)
    }

    /// Rank of the element in the lexicographic coefficient order
    /// (`c_0` least significant).
    pub fn element_index(&self, a: &FieldElement) -> Result<u64> {
        self.check(a)?;
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        Ok(idx)
    }

    pub fn element_from_index(&self, mut idx: u64) -> Result<FieldElement> {
        if idx >= self.order() {
            return Err(Error::argument("element index out of range"));
        }
        let mut coeffs = vec![0u64; self.m];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// The full field as a subspace of itself.
    pub fn full_space(&self) -> Subspace {
        let rows = (0..self.m)
            .map(|i| {
                let mut r = vec![0u64; self.m];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            p: self.p,
            ambient: self.m,
            rows,
        }
    }

    /// Smallest and largest proper intermediate-extension degrees of
    /// `F_p ⊂ F_{p^m}`: the smallest divisor of `m` exceeding 1 and the
    /// largest proper divisor.
    pub fn degree_stats(&self) -> Result<(usize, usize)> {
        if self.m < 2 {
            return Err(Error::argument("degree statistics need m >= 2"));
        }
        let n0 = (2..=self.m).find(|d| self.m % d == 0).expect("m divides m");
        let n_max = (1..self.m)
            .rev()
            .find(|d| self.m % d == 0)
            .expect("1 divides m");
        Ok((n0, n_max))
    }

    /// The subfield `F_{p^d}` as the fixed space of the d-th Frobenius
    /// power, in echelon form.
    pub fn subfield_fixed(&self, d: usize) -> Result<Subspace> {
        if d == 0 || d > self.m || self.m % d != 0 {
            return Err(Error::argument(format!(
                "{d} does not divide the extension degree {}",
                self.m
            )));
        }
        // matrix of Frobenius^d - id on the power basis, columns acting on
        // coordinate vectors; kernel = fixed space
        let mut rows = vec![vec![0u64; self.m]; self.m];
        for j in 0..self.m {
            let mut basis_j = vec![0u64; self.m];
            basis_j[j] = 1;
            let img = self.frobenius_pow(&FieldElement { coeffs: basis_j }, d)?;
            for i in 0..self.m {
                let mut entry = img.coeffs[i];
                if i == j {
                    entry = (entry + self.p - 1) % self.p;
                }
                rows[i][j] = entry;
            }
        }
        let basis = kernel_basis(self.p, &rows, self.m);
        let space = Subspace::from_rows(self.p, self.m, basis)?;
        debug_assert_eq!(space.dim(), d);
        Ok(space)
    }

    /// An element is primitive when it generates the whole extension,
    /// i.e. no proper Frobenius power fixes it. A subspace is primitive
    /// when every nonzero element is.
    pub fn is_primitive_element(&self, x: &FieldElement) -> Result<bool> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::domain("zero generates nothing"));
        }
        for d in 1..self.m {
            if self.m % d == 0 && self.frobenius_pow(x, d)? == *x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Scans all nonzero elements of the subspace.
    pub fn is_primitive_subspace(&self, v: &Subspace) -> Result<bool> {
        if v.p != self.p || v.ambient != self.m {
            return Err(Error::structure("subspace does not live in this field"));
        }
        let count = (self.p as u128).pow(v.dim() as u32);
        if count > CONSTRUCTION_LIMIT as u128 {
            return Err(Error::resource("subspace too large for an element scan"));
        }
        for x in v.elements(self) {
            if !x.is_zero() && !self.is_primitive_element(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Element of `F_{p^m}` in the power basis; prints as `[c0,c1,...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// subspaces

/// A subspace of `F_p^ambient` held as its unique reduced row-echelon
/// basis. Also used for coordinate spaces (duals, abstract families), not
/// only for fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning list.
    pub fn from_rows(p: u64, ambient: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let mut rows: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| {
                if r.len() != ambient {
                    return Err(Error::structure(format!(
                        "row length {} does not match ambient dimension {ambient}",
                        r.len()
                    )));
                }
                Ok(r.iter().map(|&c| c % p).collect())
            })
            .collect::<Result<_>>()?;
        rref(p, &mut rows);
        Ok(Subspace { p, ambient, rows })
    }

    pub fn spanned_by(field: &FieldSpec, gens: &[FieldElement]) -> Result<Self> {
        Subspace::from_rows(
            field.p(),
            field.m(),
            gens.iter().map(|g| g.coeffs().to_vec()).collect(),
        )
    }

    pub fn zero(p: u64, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: vec![],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis rows (canonical).
    pub fn basis_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn basis_elements(&self, field: &FieldSpec) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|r| field.element(r).expect("rows match the field"))
            .collect()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.ambient != other.ambient {
            return Err(Error::structure(
                "subspaces live in different ambient spaces",
            ));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rest: Vec<u64> = v.iter().map(|&c| c % self.p).collect();
        for row in &self.rows {
            let pivot = row.iter().position(|&c| c == 1).expect("echelon row");
            let factor = rest[pivot];
            if factor != 0 {
                for (x, &r) in rest.iter_mut().zip(row) {
                    *x = (*x + (self.p - factor % self.p) * r) % self.p;
                }
            }
        }
        rest.iter().all(|&c| c == 0)
    }

    pub fn contains_element(&self, x: &FieldElement) -> bool {
        self.contains_vector(x.coeffs())
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.p, self.ambient, rows)
    }

    /// Zassenhaus intersection on the stacked block matrix.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let w = self.ambient;
        let mut block: Vec<Vec<u64>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(r.iter().copied());
            block.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(vec![0u64; w]);
            block.push(row);
        }
        rref(self.p, &mut block);
        let rows = block
            .into_iter()
            .filter(|row| row[..w].iter().all(|&c| c == 0))
            .map(|row| row[w..].to_vec())
            .collect();
        Subspace::from_rows(self.p, self.ambient, rows)
    }

    /// All elements, enumerated by base-p counters over the echelon basis.
    pub fn elements<'a>(&'a self, field: &'a FieldSpec) -> impl Iterator<Item = FieldElement> + 'a {
        let total = (field.p() as u128).pow(self.dim() as u32);
        (0..total).map(move |mut k| {
            let mut acc = field.zero();
            for row in &self.rows {
                let c = (k % field.p() as u128) as u64;
                k /= field.p() as u128;
                if c != 0 {
                    let scaled = field
                        .scalar_mul(c, &field.element(row).expect("row fits"))
                        .expect("scalar");
                    acc = field.add(&acc, &scaled).expect("add");
                }
            }
            acc
        })
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(
            self.rows
                .iter()
                .map(|row| {
                    let pivot = row.iter().position(|&c| c == 1).expect("echelon row");
                    v[pivot] % self.p
                })
                .collect(),
        )
    }
}

/// `{c·u : u ∈ U}` for a nonzero field element `c`.
pub fn scale_subspace(field: &FieldSpec, c: &FieldElement, u: &Subspace) -> Result<Subspace> {
    if c.is_zero() {
        return Err(Error::domain("scaling a subspace by zero"));
    }
    if u.p != field.p() || u.ambient != field.m() {
        return Err(Error::structure("subspace does not live in this field"));
    }
    let rows = u
        .basis_elements(field)
        .iter()
        .map(|e| field.mul(c, e).map(|x| x.coeffs().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let scaled = Subspace::from_rows(field.p(), field.m(), rows)?;
    debug_assert_eq!(scaled.dim(), u.dim());
    Ok(scaled)
}

// ---------------------------------------------------------------------------
// duality

/// A linear functional on a fixed ordered basis of a subspace, stored by
/// its values on that basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVector {
    pub coords: Vec<u64>,
}

/// Functionals on `ambient` (coordinates w.r.t. its echelon basis) that
/// vanish on `E`; there are `dim(ambient) - dim(E)` of them.
pub fn orthogonal_in(ambient: &Subspace, e: &Subspace) -> Result<Vec<DualVector>> {
    if !ambient.contains_subspace(e)? {
        return Err(Error::argument(
            "E is not contained in the ambient subspace",
        ));
    }
    let coords: Vec<Vec<u64>> = e
        .basis_rows()
        .iter()
        .map(|r| ambient.coordinates(r).expect("contained"))
        .collect();
    let kernel = kernel_basis(ambient.p, &coords, ambient.dim());
    Ok(kernel
        .into_iter()
        .map(|coords| DualVector { coords })
        .collect())
}

/// Given the coordinate matrix of an ordered basis (rows = coordinates of
/// the basis vectors in some fixed system), returns the functional matrix
/// of the dual basis: `phi_i(a_j) = delta_ij`.
pub fn dual_basis_matrix(p: u64, coord_rows: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
    let inv = invert_matrix(p, coord_rows)
        .ok_or_else(|| Error::argument("basis coordinate matrix is singular"))?;
    let n = inv.len();
    Ok((0..n)
        .map(|i| (0..n).map(|j| inv[j][i]).collect())
        .collect())
}


/// Number of `k`-dimensional subspaces of `F_p^n` (Gaussian binomial).
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let pp = p as u128;
    for i in 0..k {
        num = num.saturating_mul(pp.pow((n - i) as u32) - 1);
        den = den.saturating_mul(pp.pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Streams every `dim`-dimensional subspace of `F_p^ambient` exactly once
/// in a pinned canonical order: pivot-column sets ascending
/// lexicographically, then free entries by a base-p row-major counter.
pub fn enumerate_subspaces(p: u64, ambient: usize, dim: usize) -> impl Iterator<Item = Subspace> {
    let pivot_sets: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        let mut combo = crate::cyclic::Combinations::new(ambient as u64, dim);
        while let Some(c) = combo.next_combo() {
            out.push(c.iter().map(|&x| x as usize).collect());
        }
        out
    };
    pivot_sets.into_iter().flat_map(move |pivots| {
        // free cells: row i may fill non-pivot columns right of its pivot
        let free_cells: Vec<(usize, usize)> = (0..dim)
            .flat_map(|i| {
                let pivots = pivots.clone();
                (0..ambient)
                    .filter(move |c| *c > pivots[i] && !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = (p as u128).pow(free_cells.len() as u32);
        let pivots = pivots.clone();
        (0..total).map(move |mut counter| {
            let mut rows = vec![vec![0u64; ambient]; dim];
            for (i, &pc) in pivots.iter().enumerate() {
                rows[i][pc] = 1;
            }
            for &(i, c) in &free_cells {
                rows[i][c] = (counter % p as u128) as u64;
                counter /= p as u128;
            }
            Subspace { p, ambient, rows }
        })
    })
}

/// Uniform-ish random subspace of the requested dimension (test/suite
/// helper; retries until the rank is met).
#[doc(hidden)]
pub fn random_subspace(
    rng: &mut impl rand_core::RngCore,
    p: u64,
    ambient: usize,
    dim: usize,
) -> Subspace {
    assert!(dim <= ambient);
    loop {
        let rows: Vec<Vec<u64>> = (0..dim)
            .map(|_| (0..ambient).map(|_| rng.next_u64() % p).collect())
            .collect();
        let space = Subspace::from_rows(p, ambient, rows).expect("row lengths match");
        if space.dim() == dim {
            return space;
        }
    }
}
