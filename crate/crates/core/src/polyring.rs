//! Monomials, graded monomial bases and sparse multivariate polynomials in
//! `x1, …, xn`.
//!
//! Monomials are ordered graded-lexicographically: higher total degree is
//! larger, ties broken lexicographically on the exponent vector. Bases and
//! printed polynomials list monomials in descending order, so `x1^2` comes
//! before `x1*x2`, which comes before `x2^2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            exponents: vec![0; n],
        }
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables, in descending grlex order,
/// together with the inverse index.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, j: usize) -> &Monomial {
        &self.monomials[j]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Stars and bars: the degree-`d` monomials in `n ≥ 1` variables, of which
/// there are `binomial(n + d − 1, d)`.
pub fn monomial_basis(n: usize, d: u32) -> MonomialBasis {
    assert!(n >= 1, "a monomial basis needs at least one variable");
    fn fill(prefix: &mut Vec<u32>, n: usize, left: u32, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(prefix, n, left - e, out);
            prefix.pop();
        }
    }
    let mut monomials = Vec::new();
    fill(&mut Vec::with_capacity(n), n, d, &mut monomials);
    let index = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(j, m)| (m, j))
        .collect();
    MonomialBasis {
        n,
        d,
        monomials,
        index,
    }
}

/// `binomial(n + d − 1, d)`, the dimension of the degree-`d` component.
pub fn homogeneous_dimension(n: usize, d: u32) -> u64 {
    let (top, k) = ((n as u64) + d as u64 - 1, d as u64);
    let k = k.min(top - k.min(top));
    (0..k).fold(1u64, |acc, j| acc * (top - j) / (j + 1))
}

/// Polynomial with nonzero coefficients keyed by monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial<S> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SparsePolynomial<S> {
    pub fn zero(n: usize) -> Self {
        SparsePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), S::one())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// repeated monomials.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.nvars() != n {
                return Err(Error::shape(format!("{n} variables"), m.nvars()));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::shape(format!("{} variables", self.n), other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().neg_ref()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &a.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.n);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), &a.mul_ref(b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.n, S::one());
        for _ in 0..e {
            out = out.mul(self).expect("same variable count");
        }
        out
    }

    /// Replaces every variable `x_i` by the linear form `Σ_k l[k][i]·x_k`,
    /// i.e. column `i` of `l` holds the image of `x_i`.
    ///
    /// Substituting `l` and then `m` equals substituting `m·l`.
    pub fn substitute_linear(&self, l: &SquareMatrix<S>) -> Result<Self> {
        let n = self.n;
        if l.dim() != n {
            return Err(Error::shape(
                format!("{n}×{n} substitution"),
                format!("{0}×{0}", l.dim()),
            ));
        }
        let forms: Vec<Self> = (0..n)
            .map(|i| {
                Self::from_terms(
                    n,
                    (0..n).map(|k| (Monomial::var(n, k), l.get(k, i).clone())),
                )
            })
            .collect::<Result<_>>()?;
        // powers[i][e] = forms[i]^e, grown on demand
        let mut powers: Vec<Vec<Self>> = vec![vec![Self::constant(n, S::one())]; n];
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut image = Self::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("seeded").mul(&forms[i])?;
                    powers[i].push(next);
                }
                image = image.mul(&powers[i][e as usize])?;
            }
            for (mm, cc) in image.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Coefficient vector in `basis` order.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Result<Vec<S>> {
        let mut v = vec![S::zero(); basis.len()];
        for (m, c) in &self.terms {
            let j = basis.position(m).ok_or_else(|| {
                Error::shape(format!("a monomial of degree {}", basis.degree()), m)
            })?;
            v[j] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(basis: &MonomialBasis, coeffs: &[S]) -> Self {
        let mut p = Self::zero(basis.nvars());
        for (m, c) in basis.monomials().iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    }

    /// Drops coefficients within `tol` of zero.
    pub fn pruned(&self, tol: f64) -> Self {
        SparsePolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_negligible(tol))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficientwise equality within `tol`, treating absent terms as zero.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n
            && self
                .sub(other)
                .map(|d| d.terms.values().all(|c| c.is_negligible(tol)))
                .unwrap_or(false)
    }
}

impl<S: Scalar> fmt::Display for SparsePolynomial<S> {
    /// Canonical form, e.g. `1/2*x1^2 + 1/2*x2^2` or `x1^3*x2 - x1*x2^3`.
    /// Coefficients with both a real and an imaginary part are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let z = c.to_complex64();
            let negative = (z.im == 0.0 && z.re < 0.0) || (z.re == 0.0 && z.im < 0.0);
            let c = if negative { c.neg_ref() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let z = c.to_complex64();
            let text = if z.re != 0.0 && z.im != 0.0 {
                format!("({c})")
            } else {
                c.to_string()
            };
            if m.is_one() {
                f.write_str(&text)?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{text}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical printed form back into a polynomial in `n`
/// variables. `parse_coeff` reads a single coefficient literal.
pub fn parse_polynomial<S: Scalar>(
    text: &str,
    n: usize,
    parse_coeff: impl Fn(&str) -> Result<S>,
) -> Result<SparsePolynomial<S>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = SparsePolynomial::zero(n);
    let mut negative = false;
    if bytes.first() == Some(&b'-') {
        negative = true;
        pos = 1;
    }
    let relocate = |e: Error, base: usize| match e {
        Error::Parse { offset, message } => Error::parse(base + offset, message),
        other => other,
    };
    loop {
        // coefficient
        let coeff = if bytes.get(pos) == Some(&b'(') {
            let close = text[pos..]
                .find(')')
                .map(|k| pos + k)
                .ok_or_else(|| Error::parse(pos, "unclosed parenthesis"))?;
            let c = parse_coeff(&text[pos + 1..close]).map_err(|e| relocate(e, pos + 1))?;
            pos = close + 1;
            Some(c)
        } else if bytes.get(pos) == Some(&b'x') {
            None
        } else {
            let end = text[pos..].find(['*', ' ']).map_or(text.len(), |k| pos + k);
            if end == pos {
                return Err(Error::parse(pos, "expected a term"));
            }
            let c = parse_coeff(&text[pos..end]).map_err(|e| relocate(e, pos))?;
            pos = end;
            Some(c)
        };
        let has_monomial = match coeff {
            None => true,
            Some(_) if bytes.get(pos) == Some(&b'*') => {
                pos += 1;
                true
            }
            Some(_) => false,
        };
        let mut exponents = vec![0u32; n];
        if has_monomial {
            loop {
                if bytes.get(pos) != Some(&b'x') {
                    return Err(Error::parse(pos, "expected a variable"));
                }
                pos += 1;
                let (var, next) = read_uint(bytes, pos)?;
                if var == 0 || var as usize > n {
                    return Err(Error::parse(
                        pos,
                        format!("variable index {var} out of range 1..={n}"),
                    ));
                }
                pos = next;
                let mut e = 1;
                if bytes.get(pos) == Some(&b'^') {
                    let (v, next) = read_uint(bytes, pos + 1)?;
                    e = v as u32;
                    pos = next;
                }
                exponents[var as usize - 1] += e;
                if bytes.get(pos) == Some(&b'*') {
                    pos += 1;
                } else {
                    break;
                }
            }
        }
        let mut c = coeff.unwrap_or_else(S::one);
        if negative {
            c = c.neg_ref();
        }
        out.add_term(Monomial::new(exponents), &c);

        match &text[pos..] {
            "" => return Ok(out),
            rest if rest.starts_with(" + ") => negative = false,
            rest if rest.starts_with(" - ") => negative = true,
            _ => return Err(Error::parse(pos, "expected ` + ` or ` - `")),
        }
        pos += 3;
    }
}

fn read_uint(bytes: &[u8], start: usize) -> Result<(u64, usize)> {
    let mut end = start;
    while bytes.get(end).is_some_and(u8::is_ascii_digit) {
        end += 1;
    }
    if end == start {
        return Err(Error::parse(start, "expected digits"));
    }
    std::str::from_utf8(&bytes[start..end])
        .ok()
        .and_then(|s| s.parse().ok())
        .map(|v| (v, end))
        .ok_or_else(|| Error::parse(start, "integer out of range"))
}
