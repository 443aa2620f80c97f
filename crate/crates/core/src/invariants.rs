//! Reynolds operators and homogeneous invariants.
//!
//! The degree-`d` Reynolds matrix `(1/|G|)·Σ_g A_g^{[d]}` is an idempotent
//! projection onto the invariants of degree `d`. Its trace is the invariant
//! dimension `a_d`, and row-reducing its columns yields an explicit basis.

use crate::action::InducedAction;
use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::linalg::{row_reduce_rank, SquareMatrix};
use crate::par;
use crate::polyring::{MonomialBasis, SparsePolynomial};
use crate::scalar::{Scalar, ROUNDING_TOLERANCE};

#[derive(Debug, Clone)]
pub struct ReynoldsMatrix<S> {
    pub d: u32,
    pub basis: MonomialBasis,
    pub matrix: SquareMatrix<S>,
}

impl<S: Scalar> ReynoldsMatrix<S> {
    /// Row-reduces the columns (the images of the basis monomials).
    pub fn rank(&self, tol: f64) -> Result<usize> {
        let columns = self.matrix.transpose().rows();
        Ok(row_reduce_rank(columns, tol)?.rank)
    }
}

/// A basis of the degree-`d` invariants, in reduced echelon form with leading
/// coefficient 1.
#[derive(Debug, Clone)]
pub struct InvariantBasis<S> {
    pub d: u32,
    pub polynomials: Vec<SparsePolynomial<S>>,
}

impl<S> InvariantBasis<S> {
    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }
}

/// `(1/|G|)·Σ_g A_g^{[d]}` over `monomial_basis(n, d)`.
pub fn reynolds_matrix<S: Scalar>(group: &FiniteMatrixGroup<S>, d: u32) -> ReynoldsMatrix<S> {
    reynolds_from_action(&InducedAction::new(group, d))
}

/// Reynolds matrix from a (possibly already populated) induced-matrix cache.
///
/// Float backends accumulate in element order; see [`par::sum_terms`].
pub fn reynolds_from_action<S: Scalar>(action: &InducedAction<'_, S>) -> ReynoldsMatrix<S> {
    let group = action.group();
    let basis = action.basis().clone();
    let sum = par::sum_terms_scalar::<S, _, _, _>(
        group.order(),
        |i| action.matrix(i).clone(),
        |a, b| a.add(&b).expect("induced matrices share a basis"),
    )
    .expect("a group has at least one element");
    let matrix = sum.scale(&S::from_ratio(1, group.order() as i64));
    ReynoldsMatrix {
        d: action.degree(),
        basis,
        matrix,
    }
}

/// The trace of the Reynolds matrix as an integer.
///
/// Exact traces must be nonnegative integers; float traces are rounded and
/// rejected if they lie more than [`ROUNDING_TOLERANCE`] from one.
pub fn invariant_dimension<S: Scalar>(reynolds: &ReynoldsMatrix<S>) -> Result<u64> {
    to_count(
        &reynolds.matrix.trace(),
        reynolds.d as usize,
        "Reynolds trace",
    )
}

pub(crate) fn to_count<S: Scalar>(value: &S, degree: usize, what: &str) -> Result<u64> {
    value
        .round_to_integer(ROUNDING_TOLERANCE)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Consistency {
            degree,
            message: format!("{what} {value} is not a nonnegative integer"),
        })
}

/// Averages every basis monomial, row-reduces the images and returns the
/// nonzero reduced rows as polynomials.
pub fn invariant_basis<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    d: u32,
) -> Result<InvariantBasis<S>> {
    invariant_basis_from(&reynolds_matrix(group, d), group.tolerance())
}

pub fn invariant_basis_from<S: Scalar>(
    reynolds: &ReynoldsMatrix<S>,
    tol: f64,
) -> Result<InvariantBasis<S>> {
    let images: Vec<Vec<S>> = reynolds
        .matrix
        .transpose()
        .rows()
        .into_iter()
        .filter(|col| col.iter().any(|x| !x.is_negligible(tol)))
        .collect();
    let reduced = row_reduce_rank(images, tol)?;
    let polynomials = reduced
        .rows
        .iter()
        .map(|row| SparsePolynomial::from_dense(&reynolds.basis, row).pruned(tol))
        .collect();
    Ok(InvariantBasis {
        d: reynolds.d,
        polynomials,
    })
}

/// Whether every generator fixes `f`. Generators suffice because the action
/// is a homomorphism.
pub fn verify_invariant<S: Scalar>(f: &SparsePolynomial<S>, group: &FiniteMatrixGroup<S>) -> bool {
    let tol = group.tolerance();
    group.generators().all(|a| {
        crate::action::act(a, f)
            .map(|image| image.approx_eq(f, tol))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, from_permutations};
    use crate::polyring::parse_polynomial;
    use crate::scalar::{parse_scalar, GaussianRational as Q};

    fn mat(rows: &[&[&str]]) -> SquareMatrix<Q> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn group(gens: &[SquareMatrix<Q>]) -> FiniteMatrixGroup<Q> {
        close_group(gens, 1000, 0.0).unwrap()
    }

    fn pm() -> FiniteMatrixGroup<Q> {
        group(&[mat(&[&["-1", "0"], &["0", "-1"]])])
    }

    fn c4() -> FiniteMatrixGroup<Q> {
        group(&[mat(&[&["0", "-1"], &["1", "0"]])])
    }

    fn s2() -> FiniteMatrixGroup<Q> {
        group(&from_permutations(&[vec![2, 1]]).unwrap())
    }

    fn poly(s: &str) -> SparsePolynomial<Q> {
        parse_polynomial(s, 2, parse_scalar).unwrap()
    }

    #[test]
    fn reynolds_examples() {
        let r = reynolds_matrix(&pm(), 2);
        assert_eq!(r.matrix, SquareMatrix::identity(3));
        assert_eq!(invariant_dimension(&r).unwrap(), 3);
        assert_eq!(invariant_dimension(&reynolds_matrix(&c4(), 2)).unwrap(), 1);
        assert_eq!(invariant_dimension(&reynolds_matrix(&s2(), 2)).unwrap(), 2);
    }

    #[test]
    fn dimension_examples() {
        let trivial = group(&[SquareMatrix::identity(3)]);
        for d in 0..5 {
            let expected = crate::polyring::homogeneous_dimension(3, d);
            assert_eq!(
                invariant_dimension(&reynolds_matrix(&trivial, d)).unwrap(),
                expected
            );
        }
        assert_eq!(invariant_dimension(&reynolds_matrix(&pm(), 3)).unwrap(), 0);
        assert_eq!(invariant_dimension(&reynolds_matrix(&c4(), 4)).unwrap(), 3);
    }

    #[test]
    fn non_integral_trace_is_a_consistency_error() {
        let r = ReynoldsMatrix {
            d: 2,
            basis: crate::polyring::monomial_basis(1, 2),
            matrix: SquareMatrix::diagonal(vec![Q::from_ratio(1, 2)]),
        };
        assert!(matches!(
            invariant_dimension(&r),
            Err(Error::Consistency { degree: 2, .. })
        ));
    }

    #[test]
    fn basis_examples() {
        let b = invariant_basis(&s2(), 2).unwrap();
        assert_eq!(b.polynomials, vec![poly("x1^2 + x2^2"), poly("x1*x2")]);
        let b = invariant_basis(&c4(), 2).unwrap();
        assert_eq!(b.polynomials, vec![poly("x1^2 + x2^2")]);
        assert!(invariant_basis(&pm(), 1).unwrap().is_empty());
        let b = invariant_basis(&c4(), 0).unwrap();
        assert_eq!(b.polynomials, vec![poly("1")]);
        let b = invariant_basis(&c4(), 4).unwrap();
        assert_eq!(b.len(), 3);
        for f in &b.polynomials {
            assert!(verify_invariant(f, &c4()));
            assert!(f.leading_term().unwrap().1.is_one());
        }
    }

    #[test]
    fn verification_examples() {
        assert!(verify_invariant(&poly("x1^2 + x2^2"), &c4()));
        assert!(!verify_invariant(&poly("x1^2"), &c4()));
        assert!(!verify_invariant(&poly("x1"), &pm()));
        assert!(verify_invariant(&poly("x1*x2"), &s2()));
    }

    #[test]
    fn reynolds_is_idempotent_and_absorbing() {
        for g in [pm(), c4(), s2()] {
            for d in 0..=4 {
                let action = InducedAction::new(&g, d);
                let r = reynolds_from_action(&action).matrix;
                assert_eq!(r.mat_mul(&r).unwrap(), r);
                for s in 0..g.order() {
                    assert_eq!(action.matrix(s).mat_mul(&r).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn products_of_invariants_are_invariant() {
        let g = c4();
        let low: Vec<_> = (1..=2)
            .flat_map(|d| invariant_basis(&g, d).unwrap().polynomials)
            .collect();
        for f in &low {
            for h in &low {
                assert!(verify_invariant(&f.mul(h).unwrap(), &g));
            }
        }
    }
}
