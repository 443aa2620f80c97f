//! The action of a group element on polynomials, `(g·f)(v) = f(g⁻¹·v)`, and
//! its matrices on the monomial bases of each degree.
//!
//! For unitary `A = [g]` this action sends `x_i` to `Σ_k conj(a_{k,i})·x_k`,
//! so the degree-1 matrix is the entrywise conjugate of `A`. Columns carry the
//! images of basis monomials, which makes `T_{hg} = T_h ∘ T_g` correspond to
//! the matrix product `A_h^{[d]}·A_g^{[d]}`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::linalg::SquareMatrix;
use crate::par;
use crate::polyring::{monomial_basis, MonomialBasis, SparsePolynomial};
use crate::scalar::Scalar;

/// First induced matrix: the entrywise conjugate of `a`.
pub fn induced_first<S: Scalar>(a: &SquareMatrix<S>) -> SquareMatrix<S> {
    a.conj()
}

/// Applies the group element represented by `a` to `f`.
pub fn act<S: Scalar>(a: &SquareMatrix<S>, f: &SparsePolynomial<S>) -> Result<SparsePolynomial<S>> {
    f.substitute_linear(&induced_first(a))
}

/// Matrix of `f ↦ g·f` on `basis`, for `g` represented by `a`.
///
/// Column `j` holds the coordinates of the image of the `j`-th basis monomial,
/// expanded as a product of the images of the variables.
pub fn induced_matrix<S: Scalar>(
    a: &SquareMatrix<S>,
    basis: &MonomialBasis,
) -> Result<SquareMatrix<S>> {
    if a.dim() != basis.nvars() {
        return Err(Error::shape(
            format!("{0}×{0} matrix", basis.nvars()),
            format!("{0}×{0}", a.dim()),
        ));
    }
    let first = induced_first(a);
    let columns = basis
        .monomials()
        .iter()
        .map(|m| {
            SparsePolynomial::term(m.clone(), S::one())
                .substitute_linear(&first)?
                .to_dense(basis)
        })
        .collect::<Result<Vec<_>>>()?;
    SquareMatrix::from_columns(&columns)
}

/// `A_g^{[d]}` tagged with the element and basis it belongs to.
#[derive(Debug, Clone)]
pub struct InducedMatrix<S> {
    pub g_index: usize,
    pub d: u32,
    pub matrix: SquareMatrix<S>,
}

/// Induced matrices of every element of a group in one degree, computed on
/// first use. Each slot is filled at most once, so concurrent readers all
/// observe the same value.
pub struct InducedAction<'g, S> {
    group: &'g FiniteMatrixGroup<S>,
    basis: MonomialBasis,
    cache: Vec<OnceLock<SquareMatrix<S>>>,
}

impl<'g, S: Scalar> InducedAction<'g, S> {
    pub fn new(group: &'g FiniteMatrixGroup<S>, d: u32) -> Self {
        InducedAction {
            group,
            basis: monomial_basis(group.dim(), d),
            cache: (0..group.order()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn group(&self) -> &'g FiniteMatrixGroup<S> {
        self.group
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn matrix(&self, g_index: usize) -> &SquareMatrix<S> {
        self.cache[g_index].get_or_init(|| {
            induced_matrix(self.group.element(g_index), &self.basis)
                .expect("group elements match the basis dimension")
        })
    }

    pub fn induced(&self, g_index: usize) -> InducedMatrix<S> {
        InducedMatrix {
            g_index,
            d: self.degree(),
            matrix: self.matrix(g_index).clone(),
        }
    }

    /// Fills every slot, in parallel when enabled.
    pub fn compute_all(&self) -> &Self {
        par::map_indices(self.cache.len(), |i| {
            self.matrix(i);
        });
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_group, from_permutations};
    use crate::scalar::GaussianRational as Q;

    fn mat(rows: &[&[&str]]) -> SquareMatrix<Q> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn first_induced_examples() {
        let rot = mat(&[&["0", "-1"], &["1", "0"]]);
        assert_eq!(induced_first(&rot), rot);
        let d = mat(&[&["i", "0"], &["0", "-i"]]);
        assert_eq!(induced_first(&d), mat(&[&["-i", "0"], &["0", "i"]]));
        assert!(induced_first(&d).is_unitary(0.0));
        let basis = monomial_basis(2, 1);
        assert_eq!(induced_matrix(&d, &basis).unwrap(), induced_first(&d));
    }

    #[test]
    fn degree_two_examples() {
        let basis = monomial_basis(2, 2);
        let minus = mat(&[&["-1", "0"], &["0", "-1"]]);
        assert_eq!(
            induced_matrix(&minus, &basis).unwrap(),
            SquareMatrix::identity(3)
        );

        let swap = mat(&[&["0", "1"], &["1", "0"]]);
        let expected = mat(&[&["0", "0", "1"], &["0", "1", "0"], &["1", "0", "0"]]);
        assert_eq!(induced_matrix(&swap, &basis).unwrap(), expected);

        let rot = mat(&[&["0", "-1"], &["1", "0"]]);
        let a2 = induced_matrix(&rot, &basis).unwrap();
        assert_eq!(
            a2,
            mat(&[&["0", "0", "1"], &["0", "-1", "0"], &["1", "0", "0"]])
        );
        assert_eq!(a2.trace(), Q::from_i64(-1));
        assert!(induced_matrix(&rot, &monomial_basis(3, 2)).is_err());
    }

    #[test]
    fn action_is_a_left_action() {
        let gens = from_permutations::<Q>(&[vec![2, 1, 3], vec![2, 3, 1]]).unwrap();
        let g = close_group(&gens, 100, 0.0).unwrap();
        for d in 0..=3 {
            let action = InducedAction::new(&g, d);
            action.compute_all();
            for h in 0..g.order() {
                for k in 0..g.order() {
                    let hk = g
                        .find(&g.element(h).mat_mul(g.element(k)).unwrap())
                        .unwrap();
                    let composed = action.matrix(h).mat_mul(action.matrix(k)).unwrap();
                    assert_eq!(action.matrix(hk), &composed);
                }
            }
        }
    }

    #[test]
    fn act_matches_induced_columns() {
        let rot = mat(&[&["0", "-1"], &["1", "0"]]);
        let basis = monomial_basis(2, 3);
        let a3 = induced_matrix(&rot, &basis).unwrap();
        for (j, m) in basis.monomials().iter().enumerate() {
            let image = act(&rot, &SparsePolynomial::term(m.clone(), Q::one())).unwrap();
            assert_eq!(image.to_dense(&basis).unwrap(), a3.column(j));
        }
    }
}
