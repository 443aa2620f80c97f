//! Dense square matrices and univariate polynomials over a [`Scalar`] field,
//! with the characteristic-type polynomial `det(id − λA)` and Gauss–Jordan
//! rank.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{BackendKind, Scalar};

/// Row-major `n × n` matrix; entry `(k, i)` is row `k`, column `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::shape("at least one row", "0 rows"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(
                    format!("{n} entries in row {}", k + 1),
                    row.len(),
                ));
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for k in 0..n {
            for i in 0..n {
                entries.push(f(k, i));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |k, i| if k == i { S::one() } else { S::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::zero())
    }

    pub fn diagonal(diag: Vec<S>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (k, d) in diag.into_iter().enumerate() {
            m.entries[k * n + k] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.n).map(|k| self.get(k, col).clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.n).map(|k| self.row(k).to_vec()).collect()
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<S>]) -> Result<Self> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::shape(format!("columns of length {n}"), bad.len()));
        }
        Ok(Self::from_fn(n, |k, i| columns[i][k].clone()))
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::shape(
                format!("{0}×{0}", self.n),
                format!("{0}×{0}", rhs.n),
            ));
        }
        let n = self.n;
        Ok(Self::from_fn(n, |k, i| {
            let mut acc = S::zero();
            for j in 0..n {
                let a = self.get(k, j);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&a.mul_ref(rhs.get(j, i)));
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::shape(
                format!("{0}×{0}", self.n),
                format!("{0}×{0}", rhs.n),
            ));
        }
        Ok(SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |k, i| self.get(i, k).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |k, i| self.get(i, k).clone())
    }

    pub fn trace(&self) -> S {
        (0..self.n).fold(S::zero(), |acc, k| acc.add_ref(self.get(k, k)))
    }

    /// Entrywise equality within `tol` (exact equality on the exact backend).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::identity(self.n), tol)
    }

    /// `A*·A = id`, exactly or entrywise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.conj_transpose()
            .mat_mul(self)
            .map(|p| p.is_identity(tol))
            .unwrap_or(false)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |k, i| match (k < self.n, i < self.n) {
            (true, true) => self.get(k, i).clone(),
            (false, false) => other.get(k - self.n, i - self.n).clone(),
            _ => S::zero(),
        })
    }

    /// Inverse by Gauss–Jordan elimination; errors on a singular matrix.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let n = self.n;
        let rows: Vec<Vec<S>> = (0..n)
            .map(|k| {
                let mut r = self.row(k).to_vec();
                r.extend((0..n).map(|i| if i == k { S::one() } else { S::zero() }));
                r
            })
            .collect();
        let reduced = row_reduce_rank(rows, tol)?;
        if reduced.pivots != (0..n).collect::<Vec<_>>() {
            return Err(Error::Arithmetic("matrix is singular".into()));
        }
        Ok(Self::from_fn(n, |k, i| reduced.rows[k][n + i].clone()))
    }

    /// `det(id − λA)` as a polynomial in `λ`.
    pub fn det_one_minus_lambda(&self) -> UnivariatePoly<S> {
        det_one_minus_lambda(self)
    }
}

impl<S: Scalar> fmt::Display for SquareMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for k in 0..self.n {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (i, x) in self.row(k).iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Returns `Σ_{k=0..n} (−1)^k e_k λ^k`, where the `e_k` are the elementary
/// symmetric functions of the eigenvalues of `a`.
///
/// The `e_k` come from the power sums `p_k = Tr(a^k)` through Newton's
/// identities `k·e_k = Σ_{j=1..k} (−1)^{j−1} e_{k−j} p_j`, so no eigenvalues
/// are ever computed.
pub fn det_one_minus_lambda<S: Scalar>(a: &SquareMatrix<S>) -> UnivariatePoly<S> {
    let n = a.dim();
    let mut power_sums = Vec::with_capacity(n + 1);
    power_sums.push(S::from_i64(n as i64));
    let mut power = a.clone();
    for k in 1..=n {
        power_sums.push(power.trace());
        if k < n {
            power = power.mat_mul(a).expect("square powers share a dimension");
        }
    }

    let mut e = vec![S::one()];
    for k in 1..=n {
        let mut acc = S::zero();
        for j in 1..=k {
            let term = e[k - j].mul_ref(&power_sums[j]);
            acc = if j % 2 == 1 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        e.push(acc.mul_ref(&S::from_ratio(1, k as i64)));
    }
    let coeffs = e
        .into_iter()
        .enumerate()
        .map(|(k, ek)| if k % 2 == 0 { ek } else { ek.neg_ref() })
        .collect();
    UnivariatePoly::new(coeffs)
}

/// Dense univariate polynomial; `coeffs[k]` multiplies `λ^k`. Trailing exact
/// zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UnivariatePoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UnivariatePoly {
            coeffs: vec![S::one()],
        }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..len)
                .map(|k| self.coeff(k).add_ref(&rhs.coeff(k)))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..len)
                .map(|k| self.coeff(k).sub_ref(&rhs.coeff(k)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(lead) = divisor.leading() else {
            return Err(Error::Arithmetic("polynomial division by zero".into()));
        };
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty").div_ref(lead)?;
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = rem[shift + k].sub_ref(&c.mul_ref(d));
            }
            quot[shift] = c;
            // The top coefficient is cancelled exactly; drop it along with any
            // further exact zeros.
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => {
                let inv = S::one().div_ref(l)?;
                Ok(self.scale(&inv))
            }
        }
    }
}

impl<S: Scalar> fmt::Display for UnivariatePoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*l")?,
                _ => write!(f, "({c})*l^{k}")?,
            }
        }
        Ok(())
    }
}

/// Output of [`row_reduce_rank`]: the nonzero rows of the reduced row echelon
/// form, in pivot order, each with a unit pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct RowEchelon<S> {
    pub rank: usize,
    pub rows: Vec<Vec<S>>,
    /// Pivot column of each returned row.
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination.
///
/// Exact backend: any nonzero entry is a valid pivot and the first one is
/// taken. Float backend: the largest-modulus candidate is taken, and a column
/// without an entry of modulus above `tol` has no pivot.
pub fn row_reduce_rank<S: Scalar>(rows: Vec<Vec<S>>, tol: f64) -> Result<RowEchelon<S>> {
    let width = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::shape(format!("rows of length {width}"), bad.len()));
    }
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == m.len() {
            break;
        }
        let candidate = match S::KIND {
            BackendKind::Exact => (top..m.len()).find(|&r| !m[r][col].is_zero()),
            BackendKind::Float => (top..m.len())
                .filter(|&r| !m[r][col].is_negligible(tol))
                .max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude())),
        };
        let Some(p) = candidate else { continue };
        m.swap(top, p);

        let inv = S::one().div_ref(&m[top][col])?;
        let pivot_row: Vec<S> = m[top].iter().map(|x| x.mul_ref(&inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.sub_ref(&factor.mul_ref(p));
            }
            row[col] = S::zero();
        }
        m[top] = pivot_row;
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Ok(RowEchelon {
        rank: top,
        rows: m,
        pivots,
    })
}
