//! Randomized structural properties over generated inputs.

use proptest::prelude::*;

use matchkit::abelian::{GroupSpec, Subset};
use matchkit::ffield::Subspace;
use matchkit::poly::{Monomial, Polynomial, Variable};

proptest! {
    /// Inserting the same terms in any order yields one canonical
    /// polynomial with one serialization.
    #[test]
    fn polynomial_canonical_under_permutation(
        terms in prop::collection::vec((prop::collection::vec(0u8..12, 0..5), -4i64..5), 1..10),
        seed in 0usize..1000,
    ) {
        let build = |order: &[usize]| {
            let mut p = Polynomial::zero();
            for &i in order {
                let (vars, coeff) = &terms[i];
                let mono = Monomial::from_variables(
                    vars.iter().map(|v| Variable::new(v.to_string())).collect(),
                );
                p.add_term(mono, num_bigint::BigInt::from(*coeff));
            }
            p
        };
        let forward: Vec<usize> = (0..terms.len()).collect();
        let mut shuffled = forward.clone();
        // deterministic pseudo-shuffle driven by the seed
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (seed * 31 + i * 17) % (i + 1));
        }
        let a = build(&forward);
        let b = build(&shuffled);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.to_string(), b.to_string());
    }

    /// Subset text form round-trips through parsing for cyclic groups.
    #[test]
    fn subset_display_parse_round_trip(
        n in 2u64..30,
        residues in prop::collection::vec(0u64..64, 0..10),
    ) {
        let spec = GroupSpec::cyclic(n).unwrap();
        let reduced: Vec<u64> = residues.iter().map(|r| r % n).collect();
        let subset = Subset::from_residues(&spec, &reduced).unwrap();
        let back = Subset::parse(&spec, &subset.to_string()).unwrap();
        prop_assert_eq!(subset, back);
    }

    /// Any two spanning lists of the same row space echelonize to the
    /// same canonical basis.
    #[test]
    fn echelon_canonical_under_row_mixing(
        rows in prop::collection::vec(prop::collection::vec(0u64..2, 5), 1..5),
        mix in prop::collection::vec((0usize..5, 0usize..5), 0..8),
    ) {
        let space = Subspace::from_rows(2, 5, rows.clone()).unwrap();
        // mix rows: add row j into row i (a row operation preserves span)
        let mut mixed = rows.clone();
        for &(i, j) in &mix {
            let (i, j) = (i % mixed.len(), j % mixed.len());
            if i != j {
                let rj = mixed[j].clone();
                for (x, y) in mixed[i].iter_mut().zip(rj) {
                    *x = (*x + y) % 2;
                }
            }
        }
        // also append redundant sums of existing rows
        let dup = mixed[0].clone();
        mixed.push(dup);
        let remixed = Subspace::from_rows(2, 5, mixed).unwrap();
        prop_assert_eq!(space, remixed);
    }
}
