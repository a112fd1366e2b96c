//! Matching criteria and constructions for subspaces of `F_p ⊂ F_{p^m}`:
//! matched bases, the dimension criterion, matched-basis construction via
//! dual transversals, Rado transversals, exact family extension, strong
//! matchings, tiny-scale acyclicity, local matchings through subfields,
//! sufficient conditions, and the primitive-subspace dimension search.

use crate::error::{Error, Result};
use crate::ffield::{
    dual_basis_matrix, enumerate_subspaces, gaussian_binomial, orthogonal_in, scale_subspace,
    FieldElement, FieldSpec, Subspace,
};
use crate::poly::{build_linear_matrix, determinant};

const FAMILY_INDEX_LIMIT: usize = 16;
const ELEMENT_SCAN_LIMIT: u128 = 1 << 20;

/// Ordered, independent list of field elements together with its span.
/// The order is semantic: the criteria are index-sensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis {
    vectors: Vec<FieldElement>,
    span: Subspace,
}

impl OrderedBasis {
    pub fn new(field: &FieldSpec, vectors: Vec<FieldElement>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::argument(
                "an ordered basis needs at least one vector",
            ));
        }
        let span = Subspace::spanned_by(field, &vectors)?;
        if span.dim() != vectors.len() {
            return Err(Error::argument("basis vectors are dependent"));
        }
        Ok(OrderedBasis { vectors, span })
    }

    /// The canonical echelon basis of a subspace, in row order.
    pub fn canonical(field: &FieldSpec, space: &Subspace) -> Result<Self> {
        OrderedBasis::new(field, space.basis_elements(field))
    }

    pub fn vectors(&self) -> &[FieldElement] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// An invertible `F_p`-linear map between equal-dimensional subspaces:
/// `coords_codomain(phi(x)) = matrix · coords_domain(x)`, coordinates
/// taken in the stored ordered bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearIso {
    domain: OrderedBasis,
    codomain: OrderedBasis,
    matrix: Vec<Vec<u64>>,
}

impl LinearIso {
    pub fn new(
        field: &FieldSpec,
        domain: OrderedBasis,
        codomain: OrderedBasis,
        matrix: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let d = domain.len();
        if codomain.len() != d {
            return Err(Error::argument("isomorphism needs equal dimensions"));
        }
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::structure("coordinate matrix has the wrong shape"));
        }
        let matrix: Vec<Vec<u64>> = matrix
            .into_iter()
            .map(|r| r.into_iter().map(|c| c % field.p()).collect())
            .collect();
        if crate::ffield::invert_matrix(field.p(), &matrix).is_none() {
            return Err(Error::structure("coordinate matrix is singular"));
        }
        Ok(LinearIso {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn domain(&self) -> &OrderedBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &OrderedBasis {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, field: &FieldSpec, x: &FieldElement) -> Result<FieldElement> {
        let coords = basis_coordinates(field, &self.domain, x)
            .ok_or_else(|| Error::argument("element outside the domain"))?;
        let image_coords = mat_vec(field.p(), &self.matrix, &coords);
        let mut out = field.zero();
        for (c, v) in image_coords.iter().zip(self.codomain.vectors()) {
            out = field.add(&out, &field.scalar_mul(*c, v)?)?;
        }
        Ok(out)
    }

    /// Images of the domain basis vectors, in order.
    pub fn image_basis(&self, field: &FieldSpec) -> Result<OrderedBasis> {
        let images = self
            .domain
            .vectors
            .iter()
            .map(|v| self.apply(field, v))
            .collect::<Result<Vec<_>>>()?;
        OrderedBasis::new(field, images)
    }
}

/// Coordinates of `x` with respect to an arbitrary ordered basis (not
/// necessarily echelon), or `None` when `x` lies outside the span.
fn basis_coordinates(
    field: &FieldSpec,
    basis: &OrderedBasis,
    x: &FieldElement,
) -> Option<Vec<u64>> {
    let echelon_coords = basis.span.coordinates(x.coeffs())?;
    let basis_rows: Vec<Vec<u64>> = basis
        .vectors
        .iter()
        .map(|v| basis.span.coordinates(v.coeffs()).expect("basis in span"))
        .collect();
    // solve c · basis_rows = echelon_coords, i.e. (basis_rows^T) c = e
    let inv = crate::ffield::invert_matrix(field.p(), &transpose(&basis_rows))
        .expect("independent basis");
    Some(mat_vec(field.p(), &inv, &echelon_coords))
}

fn transpose(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

fn mat_vec(p: u64, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
        })
        .collect()
}

/// Bound report for a family of subspaces: `dim ⋂_{i∈J} E_i <= bound - #J`
/// for every nonempty `J` (violating `J` is 1-based, first in increasing
/// binary-mask order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyBoundReport {
    pub family: Vec<Subspace>,
    pub bound: usize,
    pub holds: bool,
    pub violating: Option<Vec<usize>>,
}

/// Checks the intersection-dimension bound over every nonempty index set.
pub fn family_dimension_bound(family: &[Subspace], bound: usize) -> Result<FamilyBoundReport> {
    let k = family.len();
    if k == 0 {
        return Err(Error::argument("empty family"));
    }
    if k > FAMILY_INDEX_LIMIT {
        return Err(Error::resource(format!(
            "2^{k} index sets exceed the family-bound limit"
        )));
    }
    for w in family.windows(2) {
        if w[0].p() != w[1].p() || w[0].ambient() != w[1].ambient() {
            return Err(Error::structure("family members live in different spaces"));
        }
    }
    for mask in 1u32..(1u32 << k) {
        let j = mask.count_ones() as usize;
        let mut meet: Option<Subspace> = None;
        for i in 0..k {
            if mask >> i & 1 == 1 {
                meet = Some(match meet {
                    None => family[i].clone(),
                    Some(s) => s.intersect(&family[i])?,
                });
            }
        }
        if meet.expect("nonempty mask").dim() + j > bound {
            return Ok(FamilyBoundReport {
                family: family.to_vec(),
                bound,
                holds: false,
                violating: Some(
                    (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| i + 1)
                        .collect(),
                ),
            });
        }
    }
    Ok(FamilyBoundReport {
        family: family.to_vec(),
        bound,
        holds: true,
        violating: None,
    })
}

/// The weak linear m-intersection property: members must have dimension
/// at most `m - 1` and the meet bound must hold for every nonempty `J`.
pub fn weak_linear_m_intersection(family: &[Subspace], m: usize) -> Result<FamilyBoundReport> {
    for (i, e) in family.iter().enumerate() {
        if e.dim() + 1 > m {
            return Err(Error::argument(format!(
                "family member {} has dimension {} >= m = {m}",
                i + 1,
                e.dim()
            )));
        }
    }
    family_dimension_bound(family, m)
}

/// `a^{-1}A ∩ B` in canonical echelon form.
pub fn inv_translate_intersect(
    field: &FieldSpec,
    a: &FieldElement,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<Subspace> {
    if a.is_zero() {
        return Err(Error::domain("cannot invert the zero element"));
    }
    let scaled = scale_subspace(field, &field.inv(a)?, big_a)?;
    scaled.intersect(big_b)
}

/// Outcome of the generalized matched test: the containment verdict plus
/// a directness diagnostic (the sum `V + span` is computed either way).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchVerdict {
    pub matched: bool,
    pub sum_direct: bool,
}

/// Generalized matched test with respect to `(V, sigma)`: for each `i`,
/// `a_i^{-1}A ∩ B ⊆ V + <b_1, ..., b-hat_{sigma(i)}, ..., b_m>`.
///
/// The element lists may be dependent. `sigma` is a 0-based permutation of
/// their indices.
pub fn matched_with_respect_to(
    field: &FieldSpec,
    tilde_a: &[FieldElement],
    tilde_b: &[FieldElement],
    big_a: &Subspace,
    big_b: &Subspace,
    v: &Subspace,
    sigma: &[usize],
) -> Result<MatchVerdict> {
    let m = tilde_a.len();
    if m == 0 || tilde_b.len() != m {
        return Err(Error::argument(
            "matched test needs equal, nonzero list lengths",
        ));
    }
    if sigma.len() != m {
        return Err(Error::argument("permutation length mismatch"));
    }
    let mut seen = vec![false; m];
    for &s in sigma {
        if s >= m || seen[s] {
            return Err(Error::argument("sigma is not a permutation"));
        }
        seen[s] = true;
    }
    let mut matched = true;
    let mut sum_direct = true;
    for (i, ai) in tilde_a.iter().enumerate() {
        let meet = inv_translate_intersect(field, ai, big_a, big_b)?;
        let hat: Vec<Vec<u64>> = tilde_b
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != sigma[i])
            .map(|(_, x)| x.coeffs().to_vec())
            .collect();
        let span = Subspace::from_rows(field.p(), field.m(), hat)?;
        if !v.intersect(&span)?.is_zero() {
            sum_direct = false;
        }
        let target = v.sum(&span)?;
        if !target.contains_subspace(&meet)? {
            matched = false;
        }
    }
    Ok(MatchVerdict {
        matched,
        sum_direct,
    })
}

/// The classic matched-basis condition: `a_i^{-1}A ∩ B` inside the span of
/// the target basis with `b_i` removed, for every `i`.
pub fn basis_matched_check(
    field: &FieldSpec,
    basis_a: &OrderedBasis,
    basis_b: &OrderedBasis,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<bool> {
    if basis_a.span() != big_a || basis_b.span() != big_b {
        return Err(Error::argument("bases must span the given subspaces"));
    }
    let identity: Vec<usize> = (0..basis_a.len()).collect();
    let zero = Subspace::zero(field.p(), field.m());
    Ok(matched_with_respect_to(
        field,
        basis_a.vectors(),
        basis_b.vectors(),
        big_a,
        big_b,
        &zero,
        &identity,
    )?
    .matched)
}

/// The dimension criterion: the basis can be matched to some basis of `B`
/// iff `dim ⋂_{i∈J}(a_i^{-1}A ∩ B) <= n - #J` for every nonempty `J`.
pub fn dimension_criterion(
    field: &FieldSpec,
    basis_a: &OrderedBasis,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<FamilyBoundReport> {
    let n = basis_a.len();
    if basis_a.span() != big_a {
        return Err(Error::argument("basis must span A"));
    }
    if big_b.dim() != n {
        return Err(Error::argument("A and B must have equal dimensions"));
    }
    let family = basis_a
        .vectors()
        .iter()
        .map(|ai| inv_translate_intersect(field, ai, big_a, big_b))
        .collect::<Result<Vec<_>>>()?;
    family_dimension_bound(&family, n)
}

/// Result of a free-transversal search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transversal {
    /// Independent vectors, one from each family member (ambient
    /// coordinates).
    Found(Vec<Vec<u64>>),
    /// `dim Σ_{i∈J} E_i >= #J` fails for this 1-based `J`.
    RadoViolation(Vec<usize>),
}

/// Finds independent representatives `x_i ∈ E_i`, or reports a violating
/// index set; existence is equivalent to the sum-dimension bound holding
/// for every nonempty `J`.
pub fn free_transversal(family: &[Subspace]) -> Result<Transversal> {
    let k = family.len();
    if k == 0 {
        return Err(Error::argument("empty family"));
    }
    if k > FAMILY_INDEX_LIMIT {
        return Err(Error::resource(format!(
            "2^{k} index sets exceed the transversal limit"
        )));
    }
    let p = family[0].p();
    let ambient = family[0].ambient();
    for e in family {
        if e.p() != p || e.ambient() != ambient {
            return Err(Error::structure("family members live in different spaces"));
        }
    }
    // The bound decides existence; checking it up front makes failures
    // come with a certificate.
    for mask in 1u32..(1u32 << k) {
        let mut joined = Subspace::zero(p, ambient);
        for i in 0..k {
            if mask >> i & 1 == 1 {
                joined = joined.sum(&family[i])?;
            }
        }
        if joined.dim() < mask.count_ones() as usize {
            return Ok(Transversal::RadoViolation(
                (0..k)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| i + 1)
                    .collect(),
            ));
        }
    }

    fn candidates(p: u64, e: &Subspace) -> Vec<Vec<u64>> {
        let total = (p as u128).pow(e.dim() as u32);
        (1..total)
            .map(|mut counter| {
                let mut v = vec![0u64; e.ambient()];
                for row in e.basis_rows() {
                    let c = (counter % p as u128) as u64;
                    counter /= p as u128;
                    if c != 0 {
                        for (x, &r) in v.iter_mut().zip(row) {
                            *x = (*x + c * r) % p;
                        }
                    }
                }
                v
            })
            .collect()
    }

    fn descend(
        p: u64,
        family: &[Subspace],
        level: usize,
        span: &Subspace,
        chosen: &mut Vec<Vec<u64>>,
    ) -> Result<bool> {
        if level == family.len() {
            return Ok(true);
        }
        for cand in candidates(p, &family[level]) {
            if span.contains_vector(&cand) {
                continue;
            }
            let line = Subspace::from_rows(p, span.ambient(), vec![cand.clone()])?;
            let extended = span.sum(&line)?;
            chosen.push(cand);
            if descend(p, family, level + 1, &extended, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    let mut chosen = Vec::with_capacity(k);
    let found = descend(p, family, 0, &Subspace::zero(p, ambient), &mut chosen)?;
    if !found {
        return Err(Error::precondition(
            "transversal search failed although the bound holds",
        ));
    }
    Ok(Transversal::Found(chosen))
}

pub(crate) fn full_coordinate_space(p: u64, n: usize) -> Subspace {
    let rows = (0..n)
        .map(|i| {
            let mut r = vec![0u64; n];
            r[i] = 1;
            r
        })
        .collect();
    Subspace::from_rows(p, n, rows).expect("identity rows")
}

/// Extends each family member to a hyperplane so that every meet has
/// exact dimension `n - #J`: take a free transversal of the orthogonal
/// family in the dual and intersect the resulting hyperplanes. The
/// hypothesis bound is verified first and the equalities are
/// post-verified for every `J`.
pub fn extend_family_exact(family: &[Subspace]) -> Result<Vec<Subspace>> {
    let k = family.len();
    if k == 0 {
        return Err(Error::argument("empty family"));
    }
    let p = family[0].p();
    let n = family[0].ambient();
    let hypothesis = family_dimension_bound(family, n)?;
    if !hypothesis.holds {
        return Err(Error::precondition(format!(
            "intersection bound fails at J = {:?}",
            hypothesis.violating.unwrap_or_default()
        )));
    }
    let full = full_coordinate_space(p, n);
    let orthogonals = family
        .iter()
        .map(|e| {
            let functionals = orthogonal_in(&full, e)?;
            Subspace::from_rows(p, n, functionals.into_iter().map(|f| f.coords).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let transversal = match free_transversal(&orthogonals)? {
        Transversal::Found(v) => v,
        Transversal::RadoViolation(j) => {
            return Err(Error::precondition(format!(
                "orthogonal family misses the sum bound at J = {j:?}"
            )))
        }
    };
    let extended: Vec<Subspace> = transversal
        .iter()
        .map(|functional| {
            Subspace::from_rows(
                p,
                n,
                crate::ffield::kernel_basis(p, std::slice::from_ref(functional), n),
            )
        })
        .collect::<Result<_>>()?;
    for (e, big_e) in family.iter().zip(&extended) {
        if !big_e.contains_subspace(e)? {
            return Err(Error::precondition("extension lost a family member"));
        }
    }
    for mask in 1u32..(1u32 << k) {
        let j = mask.count_ones() as usize;
        let mut meet: Option<Subspace> = None;
        for i in 0..k {
            if mask >> i & 1 == 1 {
                meet = Some(match meet {
                    None => extended[i].clone(),
                    Some(s) => s.intersect(&extended[i])?,
                });
            }
        }
        if meet.expect("nonempty").dim() != n - j {
            return Err(Error::precondition(
                "extended family misses an exact intersection dimension",
            ));
        }
    }
    Ok(extended)
}

/// `A_b = {a ∈ A : ab ∈ A}`, computed as `A ∩ b^{-1}A`.
pub fn linear_return_set(
    field: &FieldSpec,
    big_a: &Subspace,
    b: &FieldElement,
) -> Result<Subspace> {
    if b.is_zero() {
        return Err(Error::domain("return set needs a nonzero element"));
    }
    let translated = scale_subspace(field, &field.inv(b)?, big_a)?;
    big_a.intersect(&translated)
}

/// Checks `dim ⋂_{i∈J} A_{b_i} <= n - #J` over the return sets of an
/// ordered basis of `B`; holds whenever `A` is matched to `B`, and a
/// passing report certifies the weak linear n-intersection property.
pub fn return_family_bound(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
    basis_b: &OrderedBasis,
) -> Result<FamilyBoundReport> {
    if basis_b.span() != big_b {
        return Err(Error::argument("basis must span B"));
    }
    let n = big_a.dim();
    if big_b.dim() != n || n == 0 {
        return Err(Error::argument(
            "A and B must have equal nonzero dimensions",
        ));
    }
    let family = basis_b
        .vectors()
        .iter()
        .map(|b| linear_return_set(field, big_a, b))
        .collect::<Result<Vec<_>>>()?;
    family_dimension_bound(&family, n)
}

/// Builds a basis of `B` matched to the given basis of `A`: take a free
/// transversal of the orthogonals `(a_i^{-1}A ∩ B)^⊥` inside the dual of
/// `B` and return the basis of `B` dual to it. Requires the dimension
/// criterion; the result is post-verified.
pub fn construct_matched_basis(
    field: &FieldSpec,
    basis_a: &OrderedBasis,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<OrderedBasis> {
    let criterion = dimension_criterion(field, basis_a, big_a, big_b)?;
    if !criterion.holds {
        return Err(Error::precondition(format!(
            "dimension criterion fails at J = {:?}",
            criterion.violating.unwrap_or_default()
        )));
    }
    let n = basis_a.len();
    let orthogonals = criterion
        .family
        .iter()
        .map(|meet| {
            let functionals = orthogonal_in(big_b, meet)?;
            Subspace::from_rows(
                field.p(),
                n,
                functionals.into_iter().map(|f| f.coords).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let functionals = match free_transversal(&orthogonals)? {
        Transversal::Found(v) => v,
        Transversal::RadoViolation(j) => {
            return Err(Error::precondition(format!(
                "dual family misses the sum bound at J = {j:?}"
            )))
        }
    };
    let coord_rows = dual_basis_matrix(field.p(), &functionals)?;
    let vectors = coord_rows
        .iter()
        .map(|coords| combine(field, coords, big_b))
        .collect::<Result<Vec<_>>>()?;
    let basis_b = OrderedBasis::new(field, vectors)?;
    if !basis_matched_check(field, basis_a, &basis_b, big_a, big_b)? {
        return Err(Error::precondition(
            "constructed basis failed the matched post-check",
        ));
    }
    Ok(basis_b)
}

/// Linear combination of a subspace's echelon basis by coordinate row.
fn combine(field: &FieldSpec, coords: &[u64], space: &Subspace) -> Result<FieldElement> {
    let mut x = field.zero();
    for (c, row) in coords.iter().zip(space.basis_rows()) {
        x = field.add(&x, &field.scalar_mul(*c, &field.element(row)?)?)?;
    }
    Ok(x)
}

/// Strong matchings exist iff `AB ∩ A = {0}`, checked elementwise as
/// `dim(a^{-1}A ∩ B) = 0` for every nonzero `a ∈ A`.
pub fn strong_matching_exists(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<bool> {
    if big_a.is_zero() || big_b.is_zero() {
        return Err(Error::argument("strong matching needs nonzero subspaces"));
    }
    if (field.p() as u128).pow(big_a.dim() as u32) > ELEMENT_SCAN_LIMIT {
        return Err(Error::resource("subspace too large for an element scan"));
    }
    for a in big_a.elements(field) {
        if a.is_zero() {
            continue;
        }
        if !inv_translate_intersect(field, &a, big_a, big_b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Output of the exhaustive tiny-scale acyclicity scan, including the
/// matrix-invertibility experiment for every acyclic matching found.
/// Experimental: the invertibility pattern is reported, never asserted.
#[derive(Debug, Clone)]
pub struct TinyAcyclicReport {
    pub isomorphism_count: u64,
    pub acyclic: Vec<LinearIso>,
    pub matrix_invertible: Vec<bool>,
    /// Ordered pairs where the equivalence identity holds one way but not
    /// the other.
    pub asymmetric_pairs: u64,
}

/// Enumerates all isomorphisms `A -> B` (all are strong matchings when
/// `AB ∩ A = {0}`), computes equivalence by exhausting automorphisms
/// against `a·phi(a) = theta(a)·psi(theta(a))`, returns the isomorphisms
/// unique in their class up to `K^*` scalars, and tests each one's
/// matching matrix for invertibility.
pub fn linear_acyclic_tiny(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<TinyAcyclicReport> {
    if field.order() > 16 {
        return Err(Error::resource(
            "tiny-scale scan is limited to fields of order at most 16",
        ));
    }
    let d = big_a.dim();
    if d == 0 || d > 2 || big_b.dim() != d {
        return Err(Error::resource(
            "tiny-scale scan is limited to equal dimensions 1 or 2",
        ));
    }
    if !strong_matching_exists(field, big_a, big_b)? {
        return Ok(TinyAcyclicReport {
            isomorphism_count: 0,
            acyclic: vec![],
            matrix_invertible: vec![],
            asymmetric_pairs: 0,
        });
    }
    let p = field.p();
    let domain = OrderedBasis::canonical(field, big_a)?;
    let codomain = OrderedBasis::canonical(field, big_b)?;

    let all_gl = invertible_matrices(p, d);
    let isos: Vec<LinearIso> = all_gl
        .iter()
        .map(|m| LinearIso::new(field, domain.clone(), codomain.clone(), m.clone()))
        .collect::<Result<_>>()?;

    let elements: Vec<FieldElement> = big_a.elements(field).collect();
    let images: Vec<Vec<FieldElement>> = isos
        .iter()
        .map(|phi| {
            elements
                .iter()
                .map(|a| phi.apply(field, a))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let autos: Vec<LinearIso> = all_gl
        .iter()
        .map(|m| LinearIso::new(field, domain.clone(), domain.clone(), m.clone()))
        .collect::<Result<_>>()?;
    let auto_images: Vec<Vec<FieldElement>> = autos
        .iter()
        .map(|theta| {
            elements
                .iter()
                .map(|a| theta.apply(field, a))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let index_of: std::collections::HashMap<FieldElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();

    let iso_count = isos.len();
    let mut equivalent = vec![vec![false; iso_count]; iso_count];
    for i in 0..iso_count {
        for j in 0..iso_count {
            'theta: for th in &auto_images {
                for (a_idx, a) in elements.iter().enumerate() {
                    let lhs = field.mul(a, &images[i][a_idx])?;
                    let ta = &th[a_idx];
                    let rhs = field.mul(ta, &images[j][index_of[ta]])?;
                    if lhs != rhs {
                        continue 'theta;
                    }
                }
                equivalent[i][j] = true;
                break;
            }
        }
    }
    let mut asymmetric_pairs = 0u64;
    for i in 0..iso_count {
        for j in 0..iso_count {
            if i != j && equivalent[i][j] != equivalent[j][i] {
                asymmetric_pairs += 1;
            }
        }
    }

    let scalar_multiple = |a: &LinearIso, b: &LinearIso| -> bool {
        (1..p).any(|c| {
            a.matrix()
                .iter()
                .zip(b.matrix())
                .all(|(ra, rb)| ra.iter().zip(rb).all(|(&x, &y)| x == c * y % p))
        })
    };

    let mut acyclic = Vec::new();
    let mut matrix_invertible = Vec::new();
    for (i, phi) in isos.iter().enumerate() {
        let is_acyclic =
            (0..iso_count).all(|j| !equivalent[i][j] || scalar_multiple(phi, &isos[j]));
        if is_acyclic {
            let image = phi.image_basis(field)?;
            let m = build_linear_matrix(field, domain.vectors(), image.vectors(), big_a, big_b)?;
            let (_, invertible) = determinant(&m)?;
            acyclic.push(phi.clone());
            matrix_invertible.push(invertible);
        }
    }

    Ok(TinyAcyclicReport {
        isomorphism_count: iso_count as u64,
        acyclic,
        matrix_invertible,
        asymmetric_pairs,
    })
}

fn invertible_matrices(p: u64, d: usize) -> Vec<Vec<Vec<u64>>> {
    let cells = d * d;
    let total = (p as u128).pow(cells as u32);
    (0..total)
        .filter_map(|mut counter| {
            let mut m = vec![vec![0u64; d]; d];
            for i in 0..d {
                for j in 0..d {
                    m[i][j] = (counter % p as u128) as u64;
                    counter /= p as u128;
                }
            }
            crate::ffield::invert_matrix(p, &m).is_some().then_some(m)
        })
        .collect()
}

/// Output of the local-matching construction: a basis of a subspace of
/// `A` paired with the basis of `H ∩ B`, satisfying `a_i b_i ∉ A`.
#[derive(Debug, Clone)]
pub struct WeakLocalMatch {
    pub source: OrderedBasis,
    pub target: OrderedBasis,
}

/// Local-matching construction through a proper subfield `H`: extend a
/// basis of `H ∩ B` to `B`, form the return sets `A_{b_i}`, take a free
/// transversal of their orthogonals in the dual of `A`, and dualize back.
/// The products `a_i b_i ∉ A` are post-verified.
pub fn weak_local_match(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
    subfield: &Subspace,
) -> Result<WeakLocalMatch> {
    let is_proper_subfield = (1..field.m()).filter(|d| field.m() % d == 0).any(|d| {
        field
            .subfield_fixed(d)
            .map(|s| s == *subfield)
            .unwrap_or(false)
    });
    if !is_proper_subfield {
        return Err(Error::argument(
            "H must be a proper subfield (a Frobenius-fixed space F_{p^d}, d | m, d < m)",
        ));
    }
    let n = big_a.dim();
    if big_b.dim() != n || n == 0 {
        return Err(Error::argument(
            "A and B must have equal nonzero dimensions",
        ));
    }
    let meet = subfield.intersect(big_b)?;
    if meet.is_zero() {
        return Err(Error::NoIntersection);
    }
    let h_basis = subfield.basis_elements(field);
    let mut carrier_found = false;
    for a in big_a.elements(field) {
        if a.is_zero() {
            continue;
        }
        let mut ok = true;
        for h in &h_basis {
            if !big_a.contains_element(&field.mul(&a, h)?) {
                ok = false;
                break;
            }
        }
        if ok {
            carrier_found = true;
            break;
        }
    }
    if !carrier_found {
        return Err(Error::NoCarrier);
    }
    let working = OrderedBasis::canonical(field, big_a)?;
    let criterion = dimension_criterion(field, &working, big_a, big_b)?;
    if !criterion.holds {
        return Err(Error::precondition(
            "A is not matched to B on the working basis",
        ));
    }

    // extend the basis of H ∩ B to a basis of B
    let mut b_vectors = meet.basis_elements(field);
    let mut span = meet.clone();
    for row in big_b.basis_rows() {
        if span.dim() == n {
            break;
        }
        if !span.contains_vector(row) {
            let x = field.element(row)?;
            span = span.sum(&Subspace::spanned_by(field, std::slice::from_ref(&x))?)?;
            b_vectors.push(x);
        }
    }
    debug_assert_eq!(b_vectors.len(), n);

    let return_sets = b_vectors
        .iter()
        .map(|b| linear_return_set(field, big_a, b))
        .collect::<Result<Vec<_>>>()?;
    let orthogonals = return_sets
        .iter()
        .map(|e| {
            let functionals = orthogonal_in(big_a, e)?;
            Subspace::from_rows(
                field.p(),
                n,
                functionals.into_iter().map(|f| f.coords).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let functionals = match free_transversal(&orthogonals)? {
        Transversal::Found(v) => v,
        Transversal::RadoViolation(j) => {
            return Err(Error::precondition(format!(
                "return-set bound fails (sum bound violated at J = {j:?})"
            )))
        }
    };
    let coord_rows = dual_basis_matrix(field.p(), &functionals)?;
    let a_vectors = coord_rows
        .iter()
        .map(|coords| combine(field, coords, big_a))
        .collect::<Result<Vec<_>>>()?;

    let m_dim = meet.dim();
    let source = OrderedBasis::new(field, a_vectors[..m_dim].to_vec())?;
    let target = OrderedBasis::new(field, b_vectors[..m_dim].to_vec())?;
    for (a, b) in source.vectors().iter().zip(target.vectors()) {
        if big_a.contains_element(&field.mul(a, b)?) {
            return Err(Error::precondition(
                "construction failed the a_i b_i ∉ A post-check",
            ));
        }
    }
    Ok(WeakLocalMatch { source, target })
}

/// Which sufficient condition certifies "A is matched to B", if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchedSufficiency {
    /// `dim A` is below the smallest proper intermediate degree and
    /// `1 ∉ B`.
    ByDegreeBound,
    /// `B` is a primitive subspace.
    ByPrimitivity,
    /// No sufficient condition applies; no claim is made.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SufficiencyVerdict {
    pub verdict: MatchedSufficiency,
    /// The primitivity route assumes dimension > 1; dimension-1 inputs
    /// are answered but flagged as outside that hypothesis.
    pub outside_hypothesis: bool,
}

/// Reports the first applicable sufficient condition for matchedness:
/// the degree bound, then primitivity, then no claim.
pub fn matched_sufficient(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<SufficiencyVerdict> {
    let n = big_a.dim();
    if big_b.dim() != n || n == 0 {
        return Err(Error::argument(
            "A and B must have equal nonzero dimensions",
        ));
    }
    if field.m() >= 2 {
        let (n0, _) = field.degree_stats()?;
        if n < n0 && !big_b.contains_element(&field.one()) {
            return Ok(SufficiencyVerdict {
                verdict: MatchedSufficiency::ByDegreeBound,
                outside_hypothesis: false,
            });
        }
    }
    if field.is_primitive_subspace(big_b)? {
        return Ok(SufficiencyVerdict {
            verdict: MatchedSufficiency::ByPrimitivity,
            outside_hypothesis: n == 1,
        });
    }
    Ok(SufficiencyVerdict {
        verdict: MatchedSufficiency::Unknown,
        outside_hypothesis: false,
    })
}

/// Result of the primitive-subspace dimension experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveDimensionReport {
    /// Largest dimension of a subspace all of whose nonzero elements are
    /// primitive, measured by exhaustive descent.
    pub max_primitive_dim: usize,
    /// Largest proper intermediate-extension degree.
    pub largest_proper_degree: usize,
    /// Whether `max_primitive_dim = m - largest_proper_degree`; an
    /// experimental finding, never asserted as an invariant.
    pub equality: bool,
    pub subspaces_scanned: u64,
}

/// Exhaustively measures the largest primitive-subspace dimension,
/// scanning dimensions from `m - n(K,L) + 1` downward and stopping at the
/// first success (primitivity is closed under passing to subspaces).
pub fn primitive_dimension_search(field: &FieldSpec) -> Result<PrimitiveDimensionReport> {
    if field.order() > 1 << 16 {
        return Err(Error::resource("field too large for the subspace scan"));
    }
    let (_, n_kl) = field.degree_stats()?;
    let m = field.m();
    let start = m - n_kl + 1;
    let mut scanned = 0u64;
    let mut found = 0usize;
    for d in (1..=start).rev() {
        if gaussian_binomial(field.p(), m, d) > 5_000_000 {
            return Err(Error::resource(format!(
                "too many {d}-dimensional subspaces to scan"
            )));
        }
        let mut hit = false;
        for subspace in enumerate_subspaces(field.p(), m, d) {
            scanned += 1;
            if field.is_primitive_subspace(&subspace)? {
                hit = true;
                break;
            }
        }
        if hit {
            found = d;
            break;
        }
    }
    Ok(PrimitiveDimensionReport {
        max_primitive_dim: found,
        largest_proper_degree: n_kl,
        equality: found == m - n_kl,
        subspaces_scanned: scanned,
    })
}

/// Decides "A is matched to B" (every basis of A matchable) exhaustively
/// at tiny scale by running the dimension criterion over all projective
/// independent spanning sets of `A` (scaling leaves `a^{-1}A` unchanged
/// and the criterion is index-set symmetric).
pub fn subspace_matched_exhaustive(
    field: &FieldSpec,
    big_a: &Subspace,
    big_b: &Subspace,
) -> Result<bool> {
    let n = big_a.dim();
    if big_b.dim() != n || n == 0 {
        return Err(Error::argument(
            "A and B must have equal nonzero dimensions",
        ));
    }
    if (field.p() as u128).pow(big_a.dim() as u32) > 64 {
        return Err(Error::resource(
            "exhaustive matchedness is a tiny-scale decision",
        ));
    }
    let points: Vec<FieldElement> = big_a
        .elements(field)
        .filter(|x| !x.is_zero())
        .filter(|x| {
            let coords = big_a.coordinates(x.coeffs()).expect("member");
            coords.iter().find(|&&c| c != 0) == Some(&1)
        })
        .collect();

    struct Scan<'a> {
        field: &'a FieldSpec,
        points: &'a [FieldElement],
        n: usize,
        big_a: &'a Subspace,
        big_b: &'a Subspace,
    }

    impl Scan<'_> {
        fn descend(
            &self,
            start: usize,
            chosen: &mut Vec<FieldElement>,
            span: &Subspace,
        ) -> Result<bool> {
            if chosen.len() == self.n {
                let basis = OrderedBasis::new(self.field, chosen.clone())?;
                return Ok(dimension_criterion(self.field, &basis, self.big_a, self.big_b)?.holds);
            }
            for i in start..self.points.len() {
                if span.contains_element(&self.points[i]) {
                    continue;
                }
                let line = Subspace::spanned_by(self.field, std::slice::from_ref(&self.points[i]))?;
                let extended = span.sum(&line)?;
                chosen.push(self.points[i].clone());
                let ok = self.descend(i + 1, chosen, &extended)?;
                chosen.pop();
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }

    let scan = Scan {
        field,
        points: &points,
        n,
        big_a,
        big_b,
    };
    scan.descend(0, &mut Vec::new(), &Subspace::zero(field.p(), field.m()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_core::{RngCore, SeedableRng};

    fn f4() -> FieldSpec {
        FieldSpec::with_default_modulus(2, 2).unwrap()
    }

    fn f16() -> FieldSpec {
        FieldSpec::with_default_modulus(2, 4).unwrap()
    }

    #[test]
    fn inv_translate_intersect_examples() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        // t^{-1} span{t} = span{1}, which meets span{t} trivially
        assert!(inv_translate_intersect(&f, &t, &a, &a).unwrap().is_zero());
        // a = 1 gives A ∩ B
        let full = f.full_space();
        assert_eq!(inv_translate_intersect(&f, &f.one(), &a, &full).unwrap(), a);
        assert_eq!(inv_translate_intersect(&f, &t, &full, &full).unwrap(), full);
        assert!(inv_translate_intersect(&f, &f.zero(), &a, &a).is_err());
    }

    #[test]
    fn basis_matched_frozen_example() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let basis = OrderedBasis::new(&f, vec![t.clone()]).unwrap();
        assert!(basis_matched_check(&f, &basis, &basis, &a, &a).unwrap());
    }

    #[test]
    fn matched_with_v_equal_target_is_trivial() {
        let f = f16();
        let t = f.gen();
        let t2 = f.pow(&t, 2).unwrap();
        let a = Subspace::spanned_by(&f, &[t.clone(), t2.clone()]).unwrap();
        let b = f.full_space();
        let verdict = matched_with_respect_to(
            &f,
            &[t.clone(), t2.clone()],
            &[f.one(), t.clone()],
            &a,
            &b,
            &b, // V = the whole target space
            &[0, 1],
        )
        .unwrap();
        assert!(verdict.matched);
        assert!(!verdict.sum_direct);
    }

    #[test]
    fn matched_monotone_in_v() {
        // matched w.r.t. (V, sigma) and V ⊆ W implies matched w.r.t. (W, sigma)
        let f = f16();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 60 {
            let a = crate::ffield::random_subspace(&mut rng, 2, 4, 2);
            let b = crate::ffield::random_subspace(&mut rng, 2, 4, 2);
            let v = crate::ffield::random_subspace(&mut rng, 2, 4, 1);
            let w_extra = crate::ffield::random_subspace(&mut rng, 2, 4, 1);
            let w = v.sum(&w_extra).unwrap();
            let ta: Vec<FieldElement> = a.elements(&f).filter(|x| !x.is_zero()).take(2).collect();
            let tb: Vec<FieldElement> = b.elements(&f).filter(|x| !x.is_zero()).take(2).collect();
            if ta.len() < 2 || tb.len() < 2 {
                continue;
            }
            let with_v = matched_with_respect_to(&f, &ta, &tb, &a, &b, &v, &[1, 0]).unwrap();
            if with_v.matched {
                let with_w = matched_with_respect_to(&f, &ta, &tb, &a, &b, &w, &[1, 0]).unwrap();
                assert!(with_w.matched);
            }
            checked += 1;
        }
    }

    #[test]
    fn dimension_criterion_examples() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let basis = OrderedBasis::new(&f, vec![t.clone()]).unwrap();
        assert!(dimension_criterion(&f, &basis, &a, &a).unwrap().holds);

        // B = the whole field: a_i^{-1}A ∩ B = a_i^{-1}A has dimension n
        let f16 = f16();
        let full = f16.full_space();
        let basis = OrderedBasis::canonical(&f16, &full).unwrap();
        let report = dimension_criterion(&f16, &basis, &full, &full).unwrap();
        assert!(!report.holds);
        assert!(report.violating.is_some());
    }

    #[test]
    fn construct_matched_basis_frozen() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let basis = OrderedBasis::new(&f, vec![t.clone()]).unwrap();
        let matched = construct_matched_basis(&f, &basis, &a, &a).unwrap();
        // the only basis of span{t} is {t}, and t·t = t+1 escapes A
        assert_eq!(matched.vectors(), &[t]);
    }

    #[test]
    fn construct_matched_basis_randomized_postcheck() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = f16();
        let mut built = 0;
        while built < 40 {
            let n = 1 + (rng.next_u64() % 3) as usize;
            let a = crate::ffield::random_subspace(&mut rng, 2, 4, n);
            let b = crate::ffield::random_subspace(&mut rng, 2, 4, n);
            let basis = OrderedBasis::canonical(&f, &a).unwrap();
            if dimension_criterion(&f, &basis, &a, &b).unwrap().holds {
                let matched = construct_matched_basis(&f, &basis, &a, &b).unwrap();
                assert!(basis_matched_check(&f, &basis, &matched, &a, &b).unwrap());
                built += 1;
            }
        }
    }

    #[test]
    fn free_transversal_examples() {
        let full = full_coordinate_space(2, 2);
        let e2 = Subspace::from_rows(2, 2, vec![vec![0, 1]]).unwrap();
        match free_transversal(&[full.clone(), e2]).unwrap() {
            Transversal::Found(v) => {
                assert_eq!(v.len(), 2);
                let span = Subspace::from_rows(2, 2, v).unwrap();
                assert_eq!(span.dim(), 2);
            }
            other => panic!("expected transversal, got {other:?}"),
        }

        let e1 = Subspace::from_rows(2, 2, vec![vec![1, 0]]).unwrap();
        match free_transversal(&[e1.clone(), e1]).unwrap() {
            Transversal::RadoViolation(j) => assert_eq!(j, vec![1, 2]),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn free_transversal_matches_bound_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..120 {
            let k = 1 + (rng.next_u64() % 4) as usize;
            let family: Vec<Subspace> = (0..k)
                .map(|_| {
                    let d = (rng.next_u64() % 4) as usize;
                    crate::ffield::random_subspace(&mut rng, 2, 4, d)
                })
                .collect();
            let bound_holds = (1u32..(1 << k)).all(|mask| {
                let mut joined = Subspace::zero(2, 4);
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        joined = joined.sum(&family[i]).unwrap();
                    }
                }
                joined.dim() >= mask.count_ones() as usize
            });
            match free_transversal(&family).unwrap() {
                Transversal::Found(v) => {
                    assert!(bound_holds);
                    // representatives are members and independent
                    for (x, e) in v.iter().zip(&family) {
                        assert!(e.contains_vector(x));
                    }
                    assert_eq!(Subspace::from_rows(2, 4, v).unwrap().dim(), k);
                }
                Transversal::RadoViolation(_) => assert!(!bound_holds),
            }
        }
    }

    #[test]
    fn extend_family_examples() {
        // a single hyperplane extends to itself
        let e1 = Subspace::from_rows(2, 2, vec![vec![1, 0]]).unwrap();
        let extended = extend_family_exact(std::slice::from_ref(&e1)).unwrap();
        assert_eq!(extended, vec![e1]);

        // hypothesis violation is rejected
        let full = full_coordinate_space(2, 2);
        assert!(extend_family_exact(&[full]).is_err());
    }

    #[test]
    fn return_family_bound_examples() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let basis = OrderedBasis::new(&f, vec![t.clone()]).unwrap();
        // A_t = span{t} ∩ span{1} = {0}
        let report = return_family_bound(&f, &a, &a, &basis).unwrap();
        assert!(report.holds);
        assert!(report.family[0].is_zero());

        // 1 in the basis forces A_1 = A, violating the bound at that index
        let f16 = f16();
        let full = f16.full_space();
        let basis = OrderedBasis::canonical(&f16, &full).unwrap();
        let report = return_family_bound(&f16, &full, &full, &basis).unwrap();
        assert!(!report.holds);
        assert_eq!(report.violating, Some(vec![1]));
    }

    #[test]
    fn strong_matching_examples() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t]).unwrap();
        assert!(strong_matching_exists(&f, &a, &a).unwrap());
        let full = f.full_space();
        assert!(!strong_matching_exists(&f, &full, &full).unwrap());
        let zero = Subspace::zero(2, 2);
        assert!(strong_matching_exists(&f, &zero, &a).is_err());
    }

    #[test]
    fn strong_matching_agrees_with_product_scan_sampled() {
        // full agreement over p^m <= 64 runs in the acceptance suite
        let f = f16();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let da = 1 + (rng.next_u64() % 3) as usize;
            let db = 1 + (rng.next_u64() % 3) as usize;
            let a = crate::ffield::random_subspace(&mut rng, 2, 4, da);
            let b = crate::ffield::random_subspace(&mut rng, 2, 4, db);
            let fast = strong_matching_exists(&f, &a, &b).unwrap();
            let mut scan = true;
            for x in a.elements(&f) {
                for y in b.elements(&f) {
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    if a.contains_element(&f.mul(&x, &y).unwrap()) {
                        scan = false;
                    }
                }
            }
            assert_eq!(fast, scan);
        }
    }

    #[test]
    fn tiny_acyclic_dimension_one() {
        let f = f4();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t]).unwrap();
        let report = linear_acyclic_tiny(&f, &a, &a).unwrap();
        assert_eq!(report.isomorphism_count, 1);
        assert_eq!(report.acyclic.len(), 1);
        assert_eq!(report.matrix_invertible, vec![true]);
        assert_eq!(report.asymmetric_pairs, 0);
    }

    #[test]
    fn tiny_acyclic_empty_without_strong_matching() {
        let f = f4();
        let full = f.full_space();
        let report = linear_acyclic_tiny(&f, &full, &full).unwrap();
        assert_eq!(report.isomorphism_count, 0);
        assert!(report.acyclic.is_empty());
    }

    #[test]
    fn weak_local_match_postcondition() {
        let f = f16();
        let h = f.subfield_fixed(2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut produced = 0;
        let mut attempts = 0;
        while produced < 10 && attempts < 4000 {
            attempts += 1;
            let n = 2 + (rng.next_u64() % 2) as usize;
            let a = crate::ffield::random_subspace(&mut rng, 2, 4, n);
            let b = crate::ffield::random_subspace(&mut rng, 2, 4, n);
            match weak_local_match(&f, &a, &b, &h) {
                Ok(out) => {
                    for (x, y) in out.source.vectors().iter().zip(out.target.vectors()) {
                        assert!(!a.contains_element(&f.mul(x, y).unwrap()));
                    }
                    assert_eq!(out.source.len(), h.intersect(&b).unwrap().dim());
                    produced += 1;
                }
                Err(Error::NoIntersection | Error::NoCarrier | Error::Precondition(_)) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(produced > 0, "no instance met the preconditions");
    }

    #[test]
    fn weak_local_match_error_paths() {
        let f = f16();
        let t = f.gen();
        let h = f.subfield_fixed(2).unwrap();
        // B misses H entirely
        let b = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let a = f.full_space();
        assert!(matches!(
            weak_local_match(&f, &a, &b, &h),
            Err(Error::Argument(_)) // dims differ first
        ));
        let a1 = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        assert!(matches!(
            weak_local_match(&f, &a1, &b, &h),
            Err(Error::NoIntersection)
        ));
        // the full space is not a proper subfield
        assert!(matches!(
            weak_local_match(&f, &a1, &b, &f.full_space()),
            Err(Error::Argument(_))
        ));
        // H = F_4, B = F_4-line, A without a carrier
        let ht = f.element(&[0, 1, 1, 0]).unwrap();
        let b2 = Subspace::spanned_by(&f, &[f.one(), ht]).unwrap();
        let a2 = Subspace::spanned_by(&f, &[t.clone(), f.pow(&t, 2).unwrap()]).unwrap();
        assert!(matches!(
            weak_local_match(&f, &a2, &b2, &h),
            Err(Error::NoCarrier)
        ));
    }

    #[test]
    fn matched_sufficient_branches() {
        // prime degree: everything under the degree bound
        let f5 = FieldSpec::with_default_modulus(2, 5).unwrap();
        let t = f5.gen();
        let b = Subspace::spanned_by(&f5, &[t.clone(), f5.pow(&t, 2).unwrap()]).unwrap();
        let a = Subspace::spanned_by(&f5, &[f5.one(), t.clone()]).unwrap();
        let v = matched_sufficient(&f5, &a, &b).unwrap();
        assert_eq!(v.verdict, MatchedSufficiency::ByDegreeBound);
        assert!(!v.outside_hypothesis);

        // degree bound unavailable (dim = n0), primitive target
        let f = f16();
        let t = f.gen();
        let t3 = f.pow(&t, 3).unwrap();
        let prim = Subspace::spanned_by(&f, &[t.clone(), t3]).unwrap();
        assert!(f.is_primitive_subspace(&prim).unwrap());
        let v = matched_sufficient(&f, &prim, &prim).unwrap();
        assert_eq!(v.verdict, MatchedSufficiency::ByPrimitivity);
        assert!(!v.outside_hypothesis);

        // 1 ∈ B and not primitive: no claim
        let with_one = Subspace::spanned_by(&f, &[f.one(), t.clone()]).unwrap();
        let v = matched_sufficient(&f, &with_one, &with_one).unwrap();
        assert_eq!(v.verdict, MatchedSufficiency::Unknown);

        // dimension 1 with 1 ∉ B still lands on the degree bound first
        let line = Subspace::spanned_by(&f, &[t]).unwrap();
        let v = matched_sufficient(&f, &line, &line).unwrap();
        assert_eq!(v.verdict, MatchedSufficiency::ByDegreeBound);

        // primitivity at dimension 1 only fires for the trivial extension
        // and is flagged as outside the hypothesis
        let f1 = FieldSpec::with_default_modulus(2, 1).unwrap();
        let prime_line = f1.full_space();
        let v = matched_sufficient(&f1, &prime_line, &prime_line).unwrap();
        assert_eq!(v.verdict, MatchedSufficiency::ByPrimitivity);
        assert!(v.outside_hypothesis);
    }

    #[test]
    fn primitive_dimension_tiny_cases() {
        let f2 = FieldSpec::with_default_modulus(2, 2).unwrap();
        let r = primitive_dimension_search(&f2).unwrap();
        assert_eq!(
            (r.max_primitive_dim, r.largest_proper_degree, r.equality),
            (1, 1, true)
        );

        let f3 = FieldSpec::with_default_modulus(2, 3).unwrap();
        let r = primitive_dimension_search(&f3).unwrap();
        assert_eq!(
            (r.max_primitive_dim, r.largest_proper_degree, r.equality),
            (2, 1, true)
        );
    }

    #[test]
    fn guards_and_argument_errors() {
        // family larger than the 2^16 index-set limit
        let family = vec![Subspace::zero(2, 2); 17];
        assert!(matches!(
            family_dimension_bound(&family, 2),
            Err(Error::Resource(_))
        ));
        assert!(matches!(free_transversal(&family), Err(Error::Resource(_))));
        // tiny-scale scan rejects larger fields
        let f32 = FieldSpec::with_default_modulus(2, 5).unwrap();
        let full = f32.full_space();
        assert!(matches!(
            linear_acyclic_tiny(&f32, &full, &full),
            Err(Error::Resource(_))
        ));
        // unequal dimensions are argument errors
        let f = f16();
        let t = f.gen();
        let line = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let plane = Subspace::spanned_by(&f, &[t, f.one()]).unwrap();
        assert!(matches!(
            matched_sufficient(&f, &line, &plane),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            weak_linear_m_intersection(&[plane.clone()], 2),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn matched_exhaustive_agrees_with_existence_tiny() {
        // smoke version of the tiny completeness check (full in suites)
        let f = FieldSpec::with_default_modulus(2, 3).unwrap();
        let lines: Vec<Subspace> = enumerate_subspaces(2, 3, 1).collect();
        for a in &lines {
            for b in &lines {
                let matched = subspace_matched_exhaustive(&f, a, b).unwrap();
                // for n = 1 the criterion reduces to a^{-1}A ∩ B = {0}
                let a_elt = f.element(&a.basis_rows()[0]).unwrap();
                let direct = inv_translate_intersect(&f, &a_elt, a, b).unwrap().is_zero();
                assert_eq!(matched, direct);
            }
        }
    }
}
