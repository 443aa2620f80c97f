//! Finite matrix groups generated by unitary matrices.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::scalar::{BackendKind, Scalar, ScalarBackend};

/// Largest group order `close_group` explores unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

/// A closed list of group elements. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup<S> {
    n: usize,
    elements: Vec<SquareMatrix<S>>,
    inverse_of: Vec<usize>,
    generator_indices: Vec<usize>,
    backend: ScalarBackend,
}

impl<S: Scalar> FiniteMatrixGroup<S> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SquareMatrix<S>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SquareMatrix<S> {
        &self.elements[i]
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse_of[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn generators(&self) -> impl Iterator<Item = &SquareMatrix<S>> {
        self.generator_indices.iter().map(|&i| &self.elements[i])
    }

    pub fn backend(&self) -> ScalarBackend {
        self.backend
    }

    pub fn tolerance(&self) -> f64 {
        self.backend.tolerance
    }

    /// Index of the element equal to `m` (within tolerance), if any.
    pub fn find(&self, m: &SquareMatrix<S>) -> Option<usize> {
        let tol = self.tolerance();
        self.elements.iter().position(|e| e.approx_eq(m, tol))
    }
}

/// Hash-bucketed element lookup.
///
/// Exact matrices key on their entries. Float matrices key on a weighted sum
/// of their entries rounded to a cell wide enough that any matrix within `tol`
/// entrywise lands in the same or an adjacent cell, so lookups probe three
/// cells and confirm candidates entrywise.
struct ElementIndex<S: Scalar> {
    tol: f64,
    buckets: HashMap<BucketKey<S::Key>, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum BucketKey<K> {
    Entries(Vec<K>),
    Cell(i64),
}

impl<S: Scalar> ElementIndex<S> {
    fn new(tol: f64) -> Self {
        ElementIndex {
            tol,
            buckets: HashMap::new(),
        }
    }

    fn fingerprinted(&self) -> bool {
        S::KIND == BackendKind::Float && self.tol > 0.0
    }

    fn fingerprint(m: &SquareMatrix<S>) -> f64 {
        m.entries()
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let z = x.to_complex64();
                let w = 1.0 + (k as f64 * 0.618_033_988_749_895).fract();
                w * (z.re + std::f64::consts::FRAC_1_SQRT_2 * z.im)
            })
            .sum()
    }

    fn cell(&self, m: &SquareMatrix<S>) -> i64 {
        // |Δfingerprint| ≤ 2·(1 + 1/√2)·n²·tol < pitch
        let pitch = 4.0 * (m.entries().len() as f64) * self.tol;
        (Self::fingerprint(m) / pitch).floor() as i64
    }

    fn keys(&self, m: &SquareMatrix<S>) -> Vec<BucketKey<S::Key>> {
        if self.fingerprinted() {
            let c = self.cell(m);
            vec![
                BucketKey::Cell(c),
                BucketKey::Cell(c - 1),
                BucketKey::Cell(c + 1),
            ]
        } else {
            vec![BucketKey::Entries(
                m.entries().iter().map(|x| x.hash_key(self.tol)).collect(),
            )]
        }
    }

    fn find(&self, elements: &[SquareMatrix<S>], m: &SquareMatrix<S>) -> Option<usize> {
        self.keys(m)
            .into_iter()
            .filter_map(|k| self.buckets.get(&k))
            .flatten()
            .copied()
            .find(|&i| elements[i].approx_eq(m, self.tol))
    }

    fn insert(&mut self, m: &SquareMatrix<S>, index: usize) {
        let key = self.keys(m).swap_remove(0);
        self.buckets.entry(key).or_default().push(index);
    }
}

/// Breadth-first closure of `generators` starting from the identity.
///
/// Elements are numbered in discovery order: the queue is processed front to
/// back and each dequeued element is multiplied on the right by every
/// generator in input order. The result does not depend on any hashing or
/// thread scheduling.
pub fn close_group<S: Scalar>(
    generators: &[SquareMatrix<S>],
    max_order: usize,
    tolerance: f64,
) -> Result<FiniteMatrixGroup<S>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Validation("at least one generator is required".into()))?;
    let n = first.dim();
    let backend = ScalarBackend::for_scalar::<S>(tolerance);
    let tol = backend.tolerance;
    for (k, g) in generators.iter().enumerate() {
        if g.dim() != n {
            return Err(Error::Validation(format!(
                "generator {} is {}×{}, expected {n}×{n}",
                k + 1,
                g.dim(),
                g.dim()
            )));
        }
        if !g.is_unitary(tol) {
            return Err(Error::Validation(format!(
                "generator {} is not unitary: {g}",
                k + 1
            )));
        }
    }

    let mut elements = vec![SquareMatrix::identity(n)];
    let mut index = ElementIndex::new(tol);
    index.insert(&elements[0], 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let product = elements[i].mat_mul(g)?;
            if index.find(&elements, &product).is_some() {
                continue;
            }
            if elements.len() == max_order {
                return Err(Error::Overflow { bound: max_order });
            }
            index.insert(&product, elements.len());
            queue.push_back(elements.len());
            elements.push(product);
        }
    }

    let generator_indices = generators
        .iter()
        .map(|g| {
            index
                .find(&elements, g)
                .expect("generators are reached from the identity")
        })
        .collect();

    // For a unitary element the inverse is its conjugate transpose; look it up
    // and confirm the product is the identity, falling back to a scan.
    let mut inverse_of = Vec::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        let is_inverse =
            |j: usize| -> Result<bool> { Ok(e.mat_mul(&elements[j])?.is_identity(tol)) };
        let mut found = match index.find(&elements, &e.conj_transpose()) {
            Some(j) if is_inverse(j)? => Some(j),
            _ => None,
        };
        if found.is_none() {
            for j in 0..elements.len() {
                if is_inverse(j)? {
                    found = Some(j);
                    break;
                }
            }
        }
        let j = found.ok_or_else(|| Error::Consistency {
            degree: 1,
            message: format!("element {i} has no inverse in the closed set"),
        })?;
        inverse_of.push(j);
    }

    Ok(FiniteMatrixGroup {
        n,
        elements,
        inverse_of,
        generator_indices,
        backend,
    })
}

/// Permutation matrices: column `i` of the matrix for `π` is `e_{π(i)}`.
/// Permutations are given one-based, as images `[π(1), …, π(n)]`.
pub fn from_permutations<S: Scalar>(perms: &[Vec<usize>]) -> Result<Vec<SquareMatrix<S>>> {
    perms
        .iter()
        .enumerate()
        .map(|(k, images)| {
            let n = images.len();
            let mut seen = vec![false; n];
            for &img in images {
                if img == 0 || img > n || std::mem::replace(&mut seen[img - 1], true) {
                    return Err(Error::Validation(format!(
                        "permutation {} is not a bijection on 1..={n}: {images:?}",
                        k + 1
                    )));
                }
            }
            Ok(SquareMatrix::from_fn(n, |row, col| {
                if images[col] == row + 1 {
                    S::one()
                } else {
                    S::zero()
                }
            }))
        })
        .collect()
}

/// Parses cycle notation such as `(1 2)(3)` or `(1,2,3)` on `1..=n`.
/// `n` defaults to the largest point mentioned.
pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number: Option<(usize, usize)> = None; // (start offset, value)
    let flush = |number: &mut Option<(usize, usize)>, current: &mut Option<Vec<usize>>| {
        if let (Some((_, v)), Some(c)) = (number.take(), current.as_mut()) {
            c.push(v);
        }
    };
    for (pos, ch) in text.char_indices() {
        match ch {
            '(' if current.is_none() => current = Some(Vec::new()),
            ')' if current.is_some() => {
                flush(&mut number, &mut current);
                cycles.push(current.take().expect("open cycle"));
            }
            '0'..='9' if current.is_some() => {
                let digit = ch as usize - '0' as usize;
                let (start, v) = number.unwrap_or((pos, 0));
                let v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit))
                    .ok_or_else(|| Error::parse(start, "point out of range"))?;
                number = Some((start, v));
            }
            ' ' | ',' if current.is_some() => flush(&mut number, &mut current),
            ' ' => {}
            _ => {
                return Err(Error::parse(
                    pos,
                    format!("unexpected character {ch:?} in cycle notation"),
                ))
            }
        }
    }
    if current.is_some() {
        return Err(Error::parse(text.len(), "unclosed cycle"));
    }
    let largest = cycles.iter().flatten().copied().max().unwrap_or(0);
    let n = n.unwrap_or(largest);
    if largest > n || cycles.iter().flatten().any(|&p| p == 0) {
        return Err(Error::Validation(format!(
            "cycle points must lie in 1..={n}: {text}"
        )));
    }
    let mut images: Vec<usize> = (1..=n).collect();
    let mut seen = vec![false; n + 1];
    for cycle in &cycles {
        for (k, &p) in cycle.iter().enumerate() {
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::Validation(format!(
                    "point {p} appears twice in {text}"
                )));
            }
            images[p - 1] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(images)
}
