//! Sparse multivariate polynomials with exact integer coefficients over
//! element-indexed variables, matching matrices, and their symbolic
//! determinants.
//!
//! One variable exists per group or field element, indexed by the
//! element's canonical text form, so a single polynomial ring serves both
//! settings. Matching-matrix entries are a single variable or zero; the
//! determinant is expanded by depth-first permutation enumeration over the
//! nonzero pattern, which these matrices keep sparse.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{GroupSpec, Subset};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec, Subspace};

const DETERMINANT_LIMIT: usize = 12;

/// A ring variable, one per element; equality and order follow the
/// canonical element text form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    index: String,
}

impl Variable {
    pub fn new(index: impl Into<String>) -> Self {
        Variable {
            index: index.into(),
        }
    }

    pub fn index(&self) -> &str {
        &self.index
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{}]", self.index)
    }
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds from an unsorted variable list, merging repeats into
    /// exponents.
    pub fn from_variables(mut vars: Vec<Variable>) -> Self {
        vars.sort();
        let mut factors: Vec<(Variable, u32)> = Vec::new();
        for v in vars {
            match factors.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => factors.push((v, 1)),
            }
        }
        Monomial { factors }
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical term map: monomial -> nonzero integer coefficient. The zero
/// polynomial stores no terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Adds `coeff * monomial`, dropping the term if it cancels.
    pub fn add_term(&mut self, monomial: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.factors().is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An n x n symbolic matrix whose entries are a single variable or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingMatrix {
    entries: Vec<Vec<Option<Variable>>>,
}

impl MatchingMatrix {
    pub fn new(entries: Vec<Vec<Option<Variable>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(Error::structure(
                "matching matrix must be square and nonempty",
            ));
        }
        Ok(MatchingMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Variable> {
        self.entries[i][j].as_ref()
    }

    /// JSON array-of-arrays dump with `"0"` or `"x[<index>]"` cells.
    pub fn dump_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|row| {
                    serde_json::Value::Array(
                        row.iter()
                            .map(|cell| match cell {
                                None => serde_json::Value::String("0".into()),
                                Some(v) => serde_json::Value::String(v.to_string()),
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// The matching matrix from `A` to `B`: entry `(i, j)` is `x_{a_i + b_j}`
/// when the sum escapes `A`, else zero. Rows and columns follow the
/// canonical sorted orders.
pub fn build_group_matrix(spec: &GroupSpec, a: &Subset, b: &Subset) -> Result<MatchingMatrix> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::argument(
            "matching matrix needs equal, nonzero cardinalities",
        ));
    }
    let entries = a
        .iter()
        .map(|ai| {
            b.iter()
                .map(|bj| {
                    let sum = spec.add(ai, bj)?;
                    Ok(if a.contains(&sum) {
                        None
                    } else {
                        Some(Variable::new(sum.to_string()))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MatchingMatrix::new(entries)
}

/// The linear matching matrix: entry `(i, j)` is `x_{a_i b_j}` when
/// `a_i^{-1}A ∩ B` lies inside the span of the target basis with `b_j`
/// removed, else zero.
pub fn build_linear_matrix(
    field: &FieldSpec,
    basis_a: &[FieldElement],
    basis_b: &[FieldElement],
    a: &Subspace,
    b: &Subspace,
) -> Result<MatchingMatrix> {
    let n = basis_a.len();
    if n == 0 || basis_b.len() != n || a.dim() != n || b.dim() != n {
        return Err(Error::argument(
            "linear matching matrix needs equal nonzero dimensions and matching bases",
        ));
    }
    let check_spans = |basis: &[FieldElement], space: &Subspace| -> Result<()> {
        let spanned = Subspace::spanned_by(field, basis)?;
        if spanned.dim() != n {
            return Err(Error::argument("basis vectors are dependent"));
        }
        if spanned != *space {
            return Err(Error::argument("basis does not span the given subspace"));
        }
        Ok(())
    };
    check_spans(basis_a, a)?;
    check_spans(basis_b, b)?;

    let mut entries = Vec::with_capacity(n);
    for ai in basis_a {
        if ai.is_zero() {
            return Err(Error::domain("basis vector is zero"));
        }
        let translated = crate::ffield::scale_subspace(field, &field.inv(ai)?, a)?;
        let meet = translated.intersect(b)?;
        let mut row = Vec::with_capacity(n);
        for (j, bj) in basis_b.iter().enumerate() {
            let others: Vec<FieldElement> = basis_b
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, v)| v.clone())
                .collect();
            let hat_span = Subspace::spanned_by(field, &others)?;
            row.push(if hat_span.contains_subspace(&meet)? {
                Some(Variable::new(field.mul(ai, bj)?.to_string()))
            } else {
                None
            });
        }
        entries.push(row);
    }
    MatchingMatrix::new(entries)
}

/// Exact symbolic determinant by signed permutation enumeration over the
/// nonzero pattern, plus the invertibility verdict `det != 0`.
pub fn determinant(m: &MatchingMatrix) -> Result<(Polynomial, bool)> {
    let n = m.n();
    if n > DETERMINANT_LIMIT {
        return Err(Error::resource(format!(
            "determinant of a {n}x{n} matrix exceeds the permutation-enumeration limit"
        )));
    }
    let mut det = Polynomial::zero();
    let mut chosen: Vec<&Variable> = Vec::with_capacity(n);

    fn descend<'m>(
        m: &'m MatchingMatrix,
        row: usize,
        used: u32,
        inversions: u32,
        chosen: &mut Vec<&'m Variable>,
        det: &mut Polynomial,
    ) {
        let n = m.n();
        if row == n {
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let monomial = Monomial::from_variables(chosen.iter().map(|v| (*v).clone()).collect());
            det.add_term(monomial, BigInt::from(sign));
            return;
        }
        for col in 0..n {
            if used >> col & 1 == 1 {
                continue;
            }
            let Some(var) = m.entry(row, col) else {
                continue;
            };
            // new inversions: previously chosen columns greater than col
            let above = (used >> (col + 1)).count_ones();
            chosen.push(var);
            descend(
                m,
                row + 1,
                used | (1 << col),
                inversions + above,
                chosen,
                det,
            );
            chosen.pop();
        }
    }

    descend(m, 0, 0, 0, &mut chosen, &mut det);
    let invertible = !det.is_zero();
    Ok((det, invertible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::enumerate_subsets;
    use crate::matching::{enumerate_matchings, multiplicity_function};

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn subset(spec: &GroupSpec, rs: &[u64]) -> Subset {
        Subset::from_residues(spec, rs).unwrap()
    }

    #[test]
    fn group_matrix_frozen_example() {
        let g5 = z(5);
        let a = subset(&g5, &[1, 2]);
        let b = subset(&g5, &[1, 3]);
        let m = build_group_matrix(&g5, &a, &b).unwrap();
        assert!(m.entry(0, 0).is_none()); // 1 + 1 = 2 in A
        assert_eq!(m.entry(0, 1).unwrap().index(), "4");
        assert_eq!(m.entry(1, 0).unwrap().index(), "3");
        assert_eq!(m.entry(1, 1).unwrap().index(), "0");

        let single = build_group_matrix(&g5, &subset(&g5, &[2]), &subset(&g5, &[1])).unwrap();
        assert_eq!(single.entry(0, 0).unwrap().index(), "3");

        let zero = build_group_matrix(&g5, &subset(&g5, &[0]), &subset(&g5, &[0])).unwrap();
        assert!(zero.entry(0, 0).is_none());
    }

    #[test]
    fn determinant_frozen_examples() {
        let g5 = z(5);
        let a = subset(&g5, &[1, 2]);
        let b = subset(&g5, &[1, 3]);
        let (det, invertible) = determinant(&build_group_matrix(&g5, &a, &b).unwrap()).unwrap();
        assert!(invertible);
        assert_eq!(det.to_string(), "-1*x[3]*x[4]");

        let single = build_group_matrix(&g5, &subset(&g5, &[2]), &subset(&g5, &[1])).unwrap();
        let (det, invertible) = determinant(&single).unwrap();
        assert!(invertible);
        assert_eq!(det.to_string(), "1*x[3]");

        let zero = build_group_matrix(&g5, &subset(&g5, &[0]), &subset(&g5, &[0])).unwrap();
        let (det, invertible) = determinant(&zero).unwrap();
        assert!(!invertible);
        assert_eq!(det.to_string(), "0");
    }

    #[test]
    fn dense_three_by_three_signs() {
        // distinct variables everywhere: six terms with textbook signs
        let v = |s: &str| Some(Variable::new(s));
        let m = MatchingMatrix::new(vec![
            vec![v("a"), v("b"), v("c")],
            vec![v("d"), v("e"), v("f")],
            vec![v("g"), v("h"), v("i")],
        ])
        .unwrap();
        let (det, invertible) = determinant(&m).unwrap();
        assert!(invertible);
        assert_eq!(det.term_count(), 6);
        let coeff_of = |vars: &[&str]| {
            det.coefficient(&Monomial::from_variables(
                vars.iter().map(|s| Variable::new(*s)).collect(),
            ))
        };
        // identity and the 3-cycles are even; transpositions are odd
        assert_eq!(coeff_of(&["a", "e", "i"]), BigInt::from(1));
        assert_eq!(coeff_of(&["b", "f", "g"]), BigInt::from(1));
        assert_eq!(coeff_of(&["c", "d", "h"]), BigInt::from(1));
        assert_eq!(coeff_of(&["a", "f", "h"]), BigInt::from(-1));
        assert_eq!(coeff_of(&["b", "d", "i"]), BigInt::from(-1));
        assert_eq!(coeff_of(&["c", "e", "g"]), BigInt::from(-1));
    }

    #[test]
    fn zero_row_kills_determinant() {
        let v = |s: &str| Some(Variable::new(s));
        let m = MatchingMatrix::new(vec![vec![v("1"), v("2")], vec![None, None]]).unwrap();
        let (det, invertible) = determinant(&m).unwrap();
        assert!(det.is_zero());
        assert!(!invertible);
    }

    #[test]
    fn polynomial_canonical_under_insertion_order() {
        let mono =
            |vs: &[&str]| Monomial::from_variables(vs.iter().map(|v| Variable::new(*v)).collect());
        let mut p1 = Polynomial::zero();
        p1.add_term(mono(&["3", "4"]), BigInt::from(2));
        p1.add_term(mono(&["0"]), BigInt::from(-1));
        p1.add_term(mono(&["3", "4"]), BigInt::from(3));
        let mut p2 = Polynomial::zero();
        p2.add_term(mono(&["0"]), BigInt::from(-1));
        p2.add_term(mono(&["4", "3"]), BigInt::from(5));
        assert_eq!(p1, p2);
        assert_eq!(p1.to_string(), p2.to_string());

        // exact cancellation drops the term
        p1.add_term(mono(&["3", "4"]), BigInt::from(-5));
        assert_eq!(p1.term_count(), 1);
    }

    #[test]
    fn monomial_exponents_merge() {
        let m = Monomial::from_variables(vec![
            Variable::new("2"),
            Variable::new("1"),
            Variable::new("2"),
        ]);
        assert_eq!(m.to_string(), "x[1]*x[2]^2");
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn permutation_terms_biject_with_matchings() {
        // Nonzero permutation products of the matching matrix correspond
        // one-to-one with matchings, and each monomial's exponent vector
        // is the matching's multiplicity function.
        for n in 2..=9u64 {
            let g = z(n);
            for size in 1..=4usize.min(n as usize) {
                for sa in enumerate_subsets(&g, size).unwrap().step_by(9) {
                    for sb in enumerate_subsets(&g, size).unwrap().step_by(11) {
                        let matrix = build_group_matrix(&g, &sa, &sb).unwrap();
                        let matchings: Vec<_> =
                            enumerate_matchings(&g, &sa, &sb).unwrap().collect();
                        let nonzero_perms = count_nonzero_permutations(&matrix);
                        assert_eq!(nonzero_perms, matchings.len());
                        for phi in &matchings {
                            let mono = Monomial::from_variables(
                                phi.pairs()
                                    .map(|(x, y)| Variable::new(g.add(x, y).unwrap().to_string()))
                                    .collect(),
                            );
                            let mult = multiplicity_function(&g, phi).unwrap();
                            let expect: Vec<(Variable, u32)> = mult
                                .counts()
                                .iter()
                                .map(|(e, c)| (Variable::new(e.to_string()), *c as u32))
                                .collect();
                            assert_eq!(mono.factors(), expect.as_slice());
                        }
                    }
                }
            }
        }
    }

    fn count_nonzero_permutations(m: &MatchingMatrix) -> usize {
        fn go(m: &MatchingMatrix, row: usize, used: u32) -> usize {
            if row == m.n() {
                return 1;
            }
            (0..m.n())
                .filter(|&c| used >> c & 1 == 0 && m.entry(row, c).is_some())
                .map(|c| go(m, row + 1, used | 1 << c))
                .sum()
        }
        go(m, 0, 0)
    }

    #[test]
    fn acyclic_matching_forces_invertibility_sampled() {
        // The acceptance suite runs the full 500-instance version.
        use crate::matching::acyclic_matchings;
        let mut checked = 0;
        for n in [5u64, 7, 9] {
            let g = z(n);
            for sa in enumerate_subsets(&g, 3).unwrap().step_by(13) {
                for sb in enumerate_subsets(&g, 3).unwrap().step_by(17) {
                    if !acyclic_matchings(&g, &sa, &sb).unwrap().is_empty() {
                        let m = build_group_matrix(&g, &sa, &sb).unwrap();
                        let (_, invertible) = determinant(&m).unwrap();
                        assert!(invertible, "A={sa} B={sb} in Z/{n}Z");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn linear_matrix_frozen_example() {
        let f = FieldSpec::with_default_modulus(2, 2).unwrap();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let m = build_linear_matrix(&f, &[t.clone()], &[t.clone()], &a, &a).unwrap();
        // t^{-1}A ∩ A = {0} ⊆ <> and t * t = t + 1
        assert_eq!(m.entry(0, 0).unwrap().index(), "[1,1]");
        let (det, invertible) = determinant(&m).unwrap();
        assert!(invertible);
        assert_eq!(det.to_string(), "1*x[[1,1]]");
    }

    #[test]
    fn linear_matrix_zero_when_meet_escapes() {
        // A = B = the whole field: 1^{-1}A ∩ B = B is not inside any
        // hyperplane of B.
        let f = FieldSpec::with_default_modulus(2, 2).unwrap();
        let full = f.full_space();
        let basis = full.basis_elements(&f);
        let m = build_linear_matrix(&f, &basis, &basis, &full, &full).unwrap();
        assert!(m.entry(0, 0).is_none());
        assert!(m.entry(0, 1).is_none());

        // one-dimensional case: a^{-1}A ∩ B = B nonzero gives [0]
        let one_line = Subspace::spanned_by(&f, &[f.one()]).unwrap();
        let m = build_linear_matrix(&f, &[f.one()], &[f.one()], &one_line, &one_line).unwrap();
        assert!(m.entry(0, 0).is_none());
        let (det, invertible) = determinant(&m).unwrap();
        assert!(det.is_zero());
        assert!(!invertible);
    }

    #[test]
    fn linear_matrix_rejects_dependent_basis() {
        let f = FieldSpec::with_default_modulus(2, 2).unwrap();
        let t = f.gen();
        let a = Subspace::spanned_by(&f, &[t.clone()]).unwrap();
        let full = f.full_space();
        let dep = vec![t.clone(), t.clone()];
        assert!(build_linear_matrix(&f, &dep, &dep, &full, &full).is_err());
        assert!(build_linear_matrix(&f, &[t.clone()], &[f.one()], &a, &a).is_err());
    }

    #[test]
    fn determinant_guard() {
        let row = vec![Some(Variable::new("0")); 13];
        let m = MatchingMatrix::new(vec![row; 13]).unwrap();
        assert!(matches!(determinant(&m), Err(Error::Resource(_))));
    }

    #[test]
    fn matrix_json_dump_shape() {
        let g5 = z(5);
        let m = build_group_matrix(&g5, &subset(&g5, &[1, 2]), &subset(&g5, &[1, 3])).unwrap();
        let json = m.dump_json();
        assert_eq!(json, serde_json::json!([["0", "x[4]"], ["x[3]", "x[0]"]]));
    }
}
