//! Diagonal abelian group actions: characters, coinvariant counting,
//! Frobenius pushforward decomposition into modules of covariants, and
//! covariant generators.

use crate::exec::{self, ExecMode};
use crate::poly::is_power_of;
use crate::{Error, Result};

/// A finite abelian group presented as `Z/n_1 x ... x Z/n_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

/// A character of an [`AbelianGroup`], stored as one residue per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    residues: Vec<u64>,
}

impl Character {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidInput(
                "group orders must be positive".into(),
            ));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Self {
        AbelianGroup { orders: vec![n] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn character(&self, residues: Vec<i64>) -> Result<Character> {
        if residues.len() != self.orders.len() {
            return Err(Error::ArityMismatch(residues.len(), self.orders.len()));
        }
        Ok(Character {
            residues: residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &n)| r.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    pub fn zero_character(&self) -> Character {
        Character {
            residues: vec![0; self.orders.len()],
        }
    }

    pub fn char_add(&self, a: &Character, b: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn char_neg(&self, a: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        }
    }

    pub fn char_scale(&self, k: u64, a: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| x * (k % n) % n)
                .collect(),
        }
    }

    /// Order of a character in the character group.
    pub fn char_order(&self, a: &Character) -> u64 {
        a.residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| {
                let g = gcd(x, n);
                n / if g == 0 { n } else { g }
            })
            .fold(1, lcm)
    }

    /// Mixed-radix index of a character; the canonical enumeration order.
    pub fn char_index(&self, a: &Character) -> usize {
        let mut idx = 0usize;
        for (&r, &n) in a.residues.iter().zip(&self.orders) {
            idx = idx * n as usize + r as usize;
        }
        idx
    }

    pub fn char_from_index(&self, mut idx: usize) -> Character {
        let mut residues = vec![0u64; self.orders.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        Character { residues }
    }

    /// All characters in canonical (mixed-radix) order.
    pub fn characters(&self) -> Vec<Character> {
        (0..self.order() as usize)
            .map(|i| self.char_from_index(i))
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// A faithful diagonal action of a finite abelian group on affine `d`-space
/// in characteristic `p`, given by one weight character per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianAction {
    group: AbelianGroup,
    weights: Vec<Character>,
    p: u64,
}

impl AbelianAction {
    /// Builds the action, checking faithfulness (the weights generate the
    /// full character group) and tameness (`p` does not divide the order).
    pub fn new(group: AbelianGroup, weights: Vec<Character>, p: u64) -> Result<Self> {
        if group.order().is_multiple_of(p) {
            return Err(Error::WildAction {
                p,
                order: group.order(),
            });
        }
        // Subgroup of the character group generated by the weights.
        let n = group.order() as usize;
        let mut seen = vec![false; n];
        seen[group.char_index(&group.zero_character())] = true;
        let mut frontier = vec![group.zero_character()];
        while let Some(c) = frontier.pop() {
            for w in &weights {
                let next = group.char_add(&c, w);
                let idx = group.char_index(&next);
                if !seen[idx] {
                    seen[idx] = true;
                    frontier.push(next);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::NotFaithful);
        }
        Ok(AbelianAction { group, weights, p })
    }

    /// The cyclic action `1/n(a_1,...,a_d)`.
    pub fn cyclic(n: u64, weights: &[i64], p: u64) -> Result<Self> {
        let group = AbelianGroup::cyclic(n);
        let ws = weights
            .iter()
            .map(|&a| group.character(vec![a]))
            .collect::<Result<Vec<_>>>()?;
        AbelianAction::new(group, ws, p)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn check_power(&self, q: u64) -> Result<()> {
        if !is_power_of(q, self.p) {
            return Err(Error::NotPowerOfPrime { q, p: self.p });
        }
        Ok(())
    }

    /// Weight of the monomial `x^a`: the sum of `a_i` copies of weight `i`.
    pub fn weight_of(&self, exponents: &[u32]) -> Result<Character> {
        if exponents.len() != self.weights.len() {
            return Err(Error::ArityMismatch(exponents.len(), self.weights.len()));
        }
        let mut acc = self.group.zero_character();
        for (&a, w) in exponents.iter().zip(&self.weights) {
            acc = self
                .group
                .char_add(&acc, &self.group.char_scale(a as u64, w));
        }
        Ok(acc)
    }

    /// True iff no nontrivial element acts with weight zero on all but
    /// exactly one coordinate (i.e. there are no pseudo-reflections).
    pub fn is_small(&self) -> bool {
        let orders = self.group.orders();
        let total: u64 = orders.iter().product();
        let big_n = orders.iter().fold(1, |a, &n| lcm(a, n));
        'elements: for idx in 1..total {
            // Decode the group element in mixed radix.
            let mut g = vec![0u64; orders.len()];
            let mut rest = idx;
            for (slot, &n) in g.iter_mut().zip(orders).rev() {
                *slot = rest % n;
                rest /= n;
            }
            let mut nonzero = 0usize;
            for w in &self.weights {
                // w(g) in (1/N)Z mod Z, scaled by N.
                let mut pairing = 0u64;
                for ((&r, &gj), &n) in w.residues().iter().zip(&g).zip(orders) {
                    pairing = (pairing + r * gj % n * (big_n / n)) % big_n;
                }
                if pairing != 0 {
                    nonzero += 1;
                    if nonzero > 1 {
                        continue 'elements;
                    }
                }
            }
            if nonzero == 1 {
                return false;
            }
        }
        true
    }

    /// Character-by-character dimension counts of `S / m^{[q]}`: for each
    /// character, the number of monomials in the box `[0,q)^d` with that
    /// weight.
    pub fn coinvariant_table(&self, q: u64) -> Result<CoinvariantTable> {
        self.coinvariant_table_with(ExecMode::default(), q)
    }

    pub fn coinvariant_table_with(&self, mode: ExecMode, q: u64) -> Result<CoinvariantTable> {
        self.check_power(q)?;
        let d = self.dim();
        let n_chars = self.group.order() as usize;
        let group = &self.group;
        let weights = &self.weights;
        let counts = exec::fold_range(
            mode,
            q as usize,
            || vec![0u64; n_chars],
            |mut counts, first| {
                // Enumerate the sub-box with fixed first exponent.
                let mut exps = vec![0u32; d];
                exps[0] = first as u32;
                loop {
                    let mut acc = group.zero_character();
                    for (&a, w) in exps.iter().zip(weights) {
                        acc = group.char_add(&acc, &group.char_scale(a as u64, w));
                    }
                    counts[group.char_index(&acc)] += 1;
                    // Advance coordinates 1..d in the box [0,q).
                    let mut i = 1;
                    loop {
                        if i >= d {
                            return counts;
                        }
                        exps[i] += 1;
                        if (exps[i] as u64) < q {
                            break;
                        }
                        exps[i] = 0;
                        i += 1;
                    }
                }
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
        Ok(CoinvariantTable { counts, q })
    }

    /// Lemma-style check: every character occurs in `S / m^{[q]}`.
    pub fn contains_all_irreducibles(&self, q: u64) -> Result<bool> {
        Ok(self.coinvariant_table(q)?.counts.iter().all(|&c| c > 0))
    }

    /// Multiplicities of the modules of covariants in the decomposition of
    /// `R` over `R^q`: the multiplicity of `R^q(U_nu)` counts box monomials
    /// of weight `q * nu`.
    ///
    /// The `q * nu` twist comes from writing `R` as the sum over box
    /// monomials `x^a` of `x^a * (S_{-q^{-1} weight(a)})^q`.
    pub fn pushforward_decomposition(&self, q: u64) -> Result<Vec<u64>> {
        self.pushforward_decomposition_with(ExecMode::default(), q)
    }

    pub fn pushforward_decomposition_with(&self, mode: ExecMode, q: u64) -> Result<Vec<u64>> {
        self.check_power(q)?;
        let table = self.coinvariant_table_with(mode, q)?;
        let n = self.group.order() as usize;
        let mut mult = vec![0u64; n];
        for (nu_idx, slot) in mult.iter_mut().enumerate() {
            let nu = self.group.char_from_index(nu_idx);
            let twisted = self.group.char_scale(q, &nu);
            *slot = table.counts[self.group.char_index(&twisted)];
        }
        Ok(mult)
    }

    /// Minimal monomial generating set of the weight-`chi` graded piece of
    /// `S` as a module over `R = S^G`.
    ///
    /// Generators are searched in the box `exponent_i < order(w_i)`, which
    /// suffices because `x_i^{order(w_i)}` is invariant.
    pub fn covariant_generators(&self, chi: &Character) -> Vec<Vec<u32>> {
        let d = self.dim();
        let bounds: Vec<u64> = self
            .weights
            .iter()
            .map(|w| self.group.char_order(w))
            .collect();
        let mut candidates = Vec::new();
        let mut exps = vec![0u32; d];
        'outer: loop {
            if self.weight_of(&exps).unwrap() == *chi {
                candidates.push(exps.clone());
            }
            let mut i = 0;
            loop {
                if i >= d {
                    break 'outer;
                }
                exps[i] += 1;
                if (exps[i] as u64) < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
        // Drop candidates that factor as (smaller candidate) * (invariant).
        let minimal: Vec<Vec<u32>> = candidates
            .iter()
            .filter(|m| {
                !candidates.iter().any(|m2| {
                    m2 != *m
                        && m2.iter().zip(m.iter()).all(|(a, b)| a <= b)
                        && {
                            let diff: Vec<u32> =
                                m.iter().zip(m2.iter()).map(|(a, b)| a - b).collect();
                            self.weight_of(&diff).unwrap() == self.group.zero_character()
                        }
                })
            })
            .cloned()
            .collect();
        minimal
    }
}

/// Character-indexed dimension counts of `S / m^{[q]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinvariantTable {
    /// Indexed by canonical character index.
    pub counts: Vec<u64>,
    pub q: u64,
}
