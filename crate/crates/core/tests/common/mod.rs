//! Shared corpus and independent oracles for integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use molien::{
    close_group, from_permutations, FiniteMatrixGroup, GaussianRational as Q, SquareMatrix,
};

/// A monomial matrix `e_i ↦ i^{phase[i]}·e_{perm[i]}` with zero-based `perm`
/// and phases taken mod 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial4 {
    pub perm: Vec<usize>,
    pub phase: Vec<u8>,
}

impl Monomial4 {
    pub fn identity(n: usize) -> Self {
        Monomial4 {
            perm: (0..n).collect(),
            phase: vec![0; n],
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let perm = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let phase = (0..n)
            .map(|i| (other.phase[i] + self.phase[other.perm[i]]) % 4)
            .collect();
        Monomial4 { perm, phase }
    }

    pub fn to_matrix(&self) -> SquareMatrix<Q> {
        let unit = |k: u8| match k {
            0 => Q::from(1),
            1 => Q::i(),
            2 => Q::from(-1),
            _ => -Q::i(),
        };
        let n = self.perm.len();
        SquareMatrix::from_fn(n, |r, c| {
            if self.perm[c] == r {
                unit(self.phase[c])
            } else {
                Q::from(0)
            }
        })
    }

    /// Pulls back `x^e` along `v ↦ self·v`: returns the new exponent vector and
    /// the phase picked up.
    fn pull_back(&self, e: &[u32]) -> (Vec<u32>, u8) {
        let n = e.len();
        let exps: Vec<u32> = (0..n).map(|i| e[self.perm[i]]).collect();
        let phase = (0..n).map(|i| self.phase[i] as u32 * exps[i]).sum::<u32>() % 4;
        (exps, phase as u8)
    }
}

pub fn monomial_closure(gens: &[Monomial4]) -> Vec<Monomial4> {
    let n = gens[0].perm.len();
    let mut seen = BTreeSet::from([Monomial4::identity(n)]);
    let mut frontier = vec![Monomial4::identity(n)];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h);
            if seen.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    seen.into_iter().collect()
}

/// All exponent vectors of total degree `d`, by filtering `[0, d]^n`.
pub fn brute_force_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if e.iter().sum::<u32>() == d {
            out.push(e.clone());
        }
        let mut k = 0;
        while k < n && e[k] == d {
            e[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
        e[k] += 1;
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, j| acc * (n - k + j) / j)
}

/// Invariant dimension of a monomial group in degree `d`: one invariant per
/// monomial orbit on which the stabilizer acts with trivial phase.
pub fn monomial_invariant_count(elements: &[Monomial4], d: u32) -> u64 {
    let n = elements[0].perm.len();
    let mut visited = HashSet::new();
    let mut count = 0;
    for m in brute_force_monomials(n, d) {
        if visited.contains(&m) {
            continue;
        }
        let mut trivial = true;
        for g in elements {
            let (image, phase) = g.pull_back(&m);
            if image == m && phase != 0 {
                trivial = false;
            }
            visited.insert(image);
        }
        count += trivial as u64;
    }
    count
}

pub struct CorpusGroup {
    pub name: &'static str,
    pub generators: Vec<Monomial4>,
}

impl CorpusGroup {
    pub fn dim(&self) -> usize {
        self.generators[0].perm.len()
    }

    pub fn matrices(&self) -> Vec<SquareMatrix<Q>> {
        self.generators.iter().map(Monomial4::to_matrix).collect()
    }

    pub fn exact(&self) -> FiniteMatrixGroup<Q> {
        close_group(&self.matrices(), 1000, 0.0).expect("corpus group closes")
    }

    pub fn oracle_elements(&self) -> Vec<Monomial4> {
        monomial_closure(&self.generators)
    }

    pub fn oracle_series(&self, max_degree: u32) -> Vec<u64> {
        let elements = self.oracle_elements();
        (0..=max_degree)
            .map(|d| monomial_invariant_count(&elements, d))
            .collect()
    }
}

fn perm(images: &[usize]) -> Monomial4 {
    Monomial4 {
        perm: images.iter().map(|&i| i - 1).collect(),
        phase: vec![0; images.len()],
    }
}

fn mono(images: &[usize], phase: &[u8]) -> Monomial4 {
    Monomial4 {
        perm: images.iter().map(|&i| i - 1).collect(),
        phase: phase.to_vec(),
    }
}

pub fn corpus() -> Vec<CorpusGroup> {
    vec![
        CorpusGroup {
            name: "trivial_1",
            generators: vec![Monomial4::identity(1)],
        },
        CorpusGroup {
            name: "trivial_2",
            generators: vec![Monomial4::identity(2)],
        },
        CorpusGroup {
            name: "trivial_3",
            generators: vec![Monomial4::identity(3)],
        },
        CorpusGroup {
            name: "plus_minus_identity",
            generators: vec![mono(&[1, 2], &[2, 2])],
        },
        CorpusGroup {
            name: "s2",
            generators: vec![perm(&[2, 1])],
        },
        CorpusGroup {
            name: "s3",
            generators: vec![perm(&[2, 3, 1]), perm(&[2, 1, 3])],
        },
        CorpusGroup {
            name: "s4",
            generators: vec![perm(&[2, 3, 4, 1]), perm(&[2, 1, 3, 4])],
        },
        // rotation by a quarter turn: e1 ↦ e2, e2 ↦ -e1
        CorpusGroup {
            name: "c4",
            generators: vec![mono(&[2, 1], &[0, 2])],
        },
        CorpusGroup {
            name: "d4",
            generators: vec![mono(&[2, 1], &[0, 2]), mono(&[1, 2], &[0, 2])],
        },
        CorpusGroup {
            name: "q8",
            generators: vec![mono(&[1, 2], &[1, 3]), mono(&[2, 1], &[0, 2])],
        },
    ]
}

pub fn corpus_group(name: &str) -> CorpusGroup {
    corpus()
        .into_iter()
        .find(|g| g.name == name)
        .expect("known corpus group")
}

/// Permutation matrices via the library, for cross-checking `to_matrix`.
pub fn library_permutations(images: &[Vec<usize>]) -> Vec<SquareMatrix<Q>> {
    from_permutations(images).unwrap()
}

/// Expected `(name, |G|, a_0..a_6)`.
pub const FROZEN: &[(&str, usize, [u64; 7])] = &[
    ("trivial_1", 1, [1, 1, 1, 1, 1, 1, 1]),
    ("trivial_2", 1, [1, 2, 3, 4, 5, 6, 7]),
    ("trivial_3", 1, [1, 3, 6, 10, 15, 21, 28]),
    ("plus_minus_identity", 2, [1, 0, 3, 0, 5, 0, 7]),
    ("s2", 2, [1, 1, 2, 2, 3, 3, 4]),
    ("s3", 6, [1, 1, 2, 3, 4, 5, 7]),
    ("s4", 24, [1, 1, 2, 3, 5, 6, 9]),
    ("c4", 4, [1, 0, 1, 0, 3, 0, 3]),
    ("d4", 8, [1, 0, 1, 0, 2, 0, 2]),
    ("q8", 8, [1, 0, 0, 0, 2, 0, 1]),
];

pub fn frozen(name: &str) -> (usize, [u64; 7]) {
    FROZEN
        .iter()
        .find(|f| f.0 == name)
        .map(|f| (f.1, f.2))
        .expect("frozen entry")
}
