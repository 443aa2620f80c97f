//! Molien series `Φ_G(λ) = (1/|G|)·Σ_g 1/det(id − λ·A_g)` and its
//! cross-check against Reynolds traces and invariant-basis ranks.

use crate::action::InducedAction;
use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::invariants::{invariant_basis_from, reynolds_from_action, to_count};
use crate::linalg::{det_one_minus_lambda, SquareMatrix, UnivariatePoly};
use crate::par;
use crate::scalar::{BackendKind, Scalar};

/// Power series truncated after `λ^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least c0");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Product truncated to the common order.
    pub fn mul_poly(&self, p: &UnivariatePoly<S>) -> Self {
        let coeffs = (0..=self.order())
            .map(|k| {
                (0..=k.min(p.degree().unwrap_or(0))).fold(S::zero(), |acc, j| {
                    acc.add_ref(&p.coeff(j).mul_ref(&self.coeffs[k - j]))
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

/// The series `q` with `p·q ≡ 1 (mod λ^{order+1})`, by the recurrence
/// `q_0 = 1`, `q_k = −Σ_{j=1..min(k, deg p)} p_j·q_{k−j}`.
pub fn series_reciprocal<S: Scalar>(
    p: &UnivariatePoly<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    if !p.coeff(0).is_one() {
        return Err(Error::Validation(format!(
            "series inversion needs constant term 1, got {}",
            p.coeff(0)
        )));
    }
    let deg = p.degree().unwrap_or(0);
    let mut q = vec![S::one()];
    for k in 1..=order {
        let mut acc = S::zero();
        for j in 1..=k.min(deg) {
            acc = acc.add_ref(&p.coeff(j).mul_ref(&q[k - j]));
        }
        q.push(acc.neg_ref());
    }
    Ok(TruncatedSeries { coeffs: q })
}

/// `(1/m)·Σ_i 1/det(id − λ·M_i)` truncated at `order`, for any list of
/// matrices. Float input is summed in list order.
pub fn averaged_reciprocal_series<S: Scalar>(
    matrices: &[SquareMatrix<S>],
    order: usize,
) -> Result<TruncatedSeries<S>> {
    if matrices.is_empty() {
        return Err(Error::Validation(
            "cannot average over an empty set of matrices".into(),
        ));
    }
    let terms = par::try_map_indices(matrices.len(), |i| {
        series_reciprocal(&det_one_minus_lambda(&matrices[i]), order)
    })?;
    let sum =
        par::sum_terms_scalar::<S, _, _, _>(terms.len(), |i| terms[i].clone(), |a, b| a.add(&b))
            .expect("nonempty");
    Ok(sum.scale(&S::from_ratio(1, matrices.len() as i64)))
}

/// Coefficients of the Molien series, averaged over the group.
pub fn molien_coefficients<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    averaged_reciprocal_series(group.elements(), order)
}

/// Which method produced a coefficient column of a [`MolienReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Trace,
    Rank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienReport {
    pub max_degree: usize,
    pub group_order: usize,
    /// `a_0..a_D`, taken from the series.
    pub a: Vec<u64>,
    pub series: Vec<u64>,
    pub trace: Option<Vec<u64>>,
    pub rank: Option<Vec<u64>>,
    /// `agreement[d]` holds iff every computed method gives the same `a_d`.
    pub agreement: Vec<bool>,
}

impl MolienReport {
    pub fn all_agree(&self) -> bool {
        self.agreement.iter().all(|&ok| ok)
    }

    pub fn method(&self, m: Method) -> Option<&[u64]> {
        match m {
            Method::Series => Some(&self.series),
            Method::Trace => self.trace.as_deref(),
            Method::Rank => self.rank.as_deref(),
        }
    }

    fn from_methods(
        group_order: usize,
        series: Vec<u64>,
        trace: Option<Vec<u64>>,
        rank: Option<Vec<u64>>,
    ) -> Self {
        let agreement = (0..series.len())
            .map(|d| {
                [trace.as_ref(), rank.as_ref()]
                    .into_iter()
                    .flatten()
                    .all(|col| col[d] == series[d])
            })
            .collect();
        MolienReport {
            max_degree: series.len() - 1,
            group_order,
            a: series.clone(),
            series,
            trace,
            rank,
            agreement,
        }
    }
}

/// Molien coefficients `a_0..a_D` as integers (series method only).
///
/// Sums over the representing matrices `A_g` directly. Using the first induced
/// matrices `conj(A_g)` instead conjugates every coefficient, which leaves the
/// (real) average unchanged.
pub fn molien_series<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    max_degree: usize,
) -> Result<MolienReport> {
    let series = molien_coefficients(group, max_degree)?;
    let ints = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| to_count(c, d, "Molien coefficient"))
        .collect::<Result<Vec<_>>>()?;
    if ints[0] != 1 {
        return Err(Error::Consistency {
            degree: 0,
            message: format!("a_0 = {} instead of 1", ints[0]),
        });
    }
    Ok(MolienReport::from_methods(group.order(), ints, None, None))
}

/// Runs all three methods for every degree `0..=max_degree`.
///
/// A disagreement is reported through [`MolienReport::agreement`]; only
/// non-integral values raise an error.
pub fn cross_check<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    max_degree: usize,
) -> Result<MolienReport> {
    let series = molien_series(group, max_degree)?.series;
    let tol = group.tolerance();
    let per_degree = par::try_map_indices(max_degree + 1, |d| -> Result<(u64, u64)> {
        let action = InducedAction::new(group, d as u32);
        let reynolds = reynolds_from_action(&action);
        let trace = to_count(&reynolds.matrix.trace(), d, "Reynolds trace")?;
        let rank = invariant_basis_from(&reynolds, tol)?.len() as u64;
        Ok((trace, rank))
    })?;
    let (trace, rank) = per_degree.into_iter().unzip();
    Ok(MolienReport::from_methods(
        group.order(),
        series,
        Some(trace),
        Some(rank),
    ))
}

/// The Molien series as a reduced rational function `numerator / denominator`.
///
/// The denominator starts as `Π_g det(id − λA_g)` and the numerator as
/// `(1/|G|)·Σ_g Π_{h≠g} det(id − λA_h)`; both are divided by their monic gcd
/// and scaled so the denominator has constant term 1.
pub fn molien_rational<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
) -> Result<(UnivariatePoly<S>, UnivariatePoly<S>)> {
    if S::KIND != BackendKind::Exact {
        return Err(Error::UnsupportedBackend("molien_rational"));
    }
    let dets: Vec<UnivariatePoly<S>> =
        par::map_indices(group.order(), |i| det_one_minus_lambda(group.element(i)));
    // prefix[i] = Π_{h<i}, suffix[i] = Π_{h≥i}
    let mut prefix = vec![UnivariatePoly::one()];
    for p in &dets {
        prefix.push(prefix.last().expect("seeded").mul(p));
    }
    let mut suffix = vec![UnivariatePoly::one(); dets.len() + 1];
    for i in (0..dets.len()).rev() {
        suffix[i] = suffix[i + 1].mul(&dets[i]);
    }
    let denominator = prefix[dets.len()].clone();
    let numerator = (0..dets.len())
        .fold(UnivariatePoly::zero(), |acc, g| {
            acc.add(&prefix[g].mul(&suffix[g + 1]))
        })
        .scale(&S::from_ratio(1, group.order() as i64));

    let common = numerator.gcd(&denominator)?;
    let (num, rem_n) = numerator.div_rem(&common)?;
    let (den, rem_d) = denominator.div_rem(&common)?;
    debug_assert!(rem_n.is_zero() && rem_d.is_zero());
    let norm = S::one().div_ref(&den.coeff(0))?;
    Ok((num.scale(&norm), den.scale(&norm)))
}

/// Expands `numerator / denominator` as a power series.
pub fn expand_rational<S: Scalar>(
    numerator: &UnivariatePoly<S>,
    denominator: &UnivariatePoly<S>,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    Ok(series_reciprocal(denominator, order)?.mul_poly(numerator))
}
