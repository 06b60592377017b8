//! Small exact linear algebra over F_p, used by the brute-force
//! submodule-enumeration oracles. Everything here is dimension-bounded and
//! meant for test-scale inputs.

use std::collections::BTreeSet;

/// A vector over F_p with entries already reduced mod p.
pub type Vector = Vec<u64>;

/// Row-echelon basis of a subspace of F_p^n; rows sorted by pivot column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    p: u64,
    dim: usize,
    rows: Vec<Vector>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p.
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

impl Subspace {
    pub fn zero(p: u64, dim: usize) -> Self {
        Subspace {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    /// Reduces `v` against the basis; returns the remainder.
    fn reduce(&self, mut v: Vector) -> Vector {
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            if v[pivot] != 0 {
                let c = v[pivot] % self.p;
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + (self.p - c) * ri) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = self.reduce(v.iter().map(|&x| x % self.p).collect());
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        // Back-substitute so the representation stays canonical.
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = (*ri + (self.p - c) * vi) % self.p;
                }
            }
        }
        self.rows.push(v);
        self.rows
            .sort_by_key(|r| r.iter().position(|&x| x != 0).unwrap());
        true
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row);
        }
        out
    }
}

/// Span of a set of vectors.
pub fn span(p: u64, dim: usize, vectors: &[Vector]) -> Subspace {
    let mut s = Subspace::zero(p, dim);
    for v in vectors {
        s.insert(v);
    }
    s
}

/// Matrix-vector product: `out_i = sum_j m[i][j] v_j` mod p.
pub fn apply(p: u64, m: &[Vector], v: &[u64]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| (acc + a * b) % p)
        })
        .collect()
}

/// Smallest subspace containing `start` and closed under every operator.
pub fn closure(p: u64, _dim: usize, start: &Subspace, operators: &[Vec<Vector>]) -> Subspace {
    let mut s = start.clone();
    let mut frontier: Vec<Vector> = s.basis().to_vec();
    while let Some(v) = frontier.pop() {
        for op in operators {
            let w = apply(p, op, &v);
            if s.insert(&w) {
                frontier.push(w);
            }
        }
    }
    s
}

/// All operator-invariant subspaces, enumerated as joins of cyclic closures.
/// Valid because every invariant subspace is the join of the closures of its
/// one-dimensional subspaces. Exponential in the worst case; callers bound
/// `dim` and `p`.
pub fn invariant_subspaces(p: u64, dim: usize, operators: &[Vec<Vector>]) -> Vec<Subspace> {
    // Cyclic closures of each projective point.
    let mut cyclic: BTreeSet<Subspace> = BTreeSet::new();
    let total = (p as u128).pow(dim as u32);
    for code in 1..total {
        let mut v = vec![0u64; dim];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % p as u128) as u64;
            c /= p as u128;
        }
        // Only projective representatives: first nonzero entry = 1.
        if *v.iter().find(|&&x| x != 0).unwrap() != 1 {
            continue;
        }
        let start = span(p, dim, &[v]);
        cyclic.insert(closure(p, dim, &start, operators));
    }
    let cyclic: Vec<Subspace> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Subspace> = BTreeSet::new();
    all.insert(Subspace::zero(p, dim));
    let mut frontier: Vec<Subspace> = vec![Subspace::zero(p, dim)];
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            let j = s.join(c);
            if !all.contains(&j) {
                all.insert(j.clone());
                frontier.push(j);
            }
        }
    }
    all.into_iter().collect()
}
