//! Origin fibers of the Frobenius pushforward for monomial curves, the
//! action of the endomorphism ring on them, and lambda-stability.
//!
//! The fiber `R (x)_{R^q} k` at the origin has the staircase monomial basis
//! `Gamma \ (q*Gamma_{>0} + Gamma)`; the distinguished `e1` line is the class
//! of the monomial 0. Stability for the distinguished parameter
//! `lambda = (1 - q^d, 1)` reduces to an exhaustive generation test.

use std::collections::BTreeSet;

use crate::exec::{self, ExecMode};
use crate::modp;
use crate::modules::{
    end_ring_table, residue_decomposition, DecompositionBase, FractionalMonomialModule,
};
use crate::semigroup::AffineSemigroup;
use crate::{Error, Result};

const EXHAUSTIVE_BOUND: u128 = 1_000_000;
const SUBSET_BOUND: usize = 20;

/// The monomial splitting `R = R^q (+) M` at the support level: `e1` is the
/// sub-semigroup `q*Gamma`, `e2` its set complement inside `Gamma`.
#[derive(Debug, Clone)]
pub struct Splitting {
    gamma: AffineSemigroup,
    q: i64,
    e1: FractionalMonomialModule,
}

/// Support-level idempotent decomposition of a pointed monomial ring.
pub fn splitting_idempotents(gamma: &AffineSemigroup, q: i64) -> Result<Splitting> {
    let base = gamma.scaled(q);
    let zero = vec![0i64; gamma.rank()];
    let e1 = FractionalMonomialModule::new(base, vec![zero])?;
    Ok(Splitting {
        gamma: gamma.clone(),
        q,
        e1,
    })
}

impl Splitting {
    /// The `q*Gamma` component as a module over itself.
    pub fn e1(&self) -> &FractionalMonomialModule {
        &self.e1
    }

    pub fn e1_contains(&self, v: &[i64]) -> bool {
        self.e1.contains(v)
    }

    /// The complementary support `Gamma \ q*Gamma`.
    pub fn e2_contains(&self, v: &[i64]) -> bool {
        self.gamma.contains(v) && !self.e1.contains(v)
    }

    /// True iff the `e2` support is closed under adding `q*Gamma`, i.e. the
    /// monomial projection is an honest `R^q`-module splitting. Holds for
    /// saturated semigroups; fails for singular numerical ones.
    pub fn is_module_splitting(&self) -> bool {
        match self.gamma.rank() {
            1 => {
                // A gap m of Gamma with q*m in Gamma produces
                // q*m + q*(gamma' - m) in q*Gamma for suitable gamma'.
                let bound = self.gamma.conductor();
                !(1..bound).any(|m| {
                    !self.gamma.contains(&[m]) && self.gamma.contains(&[self.q * m])
                })
            }
            _ => self.gamma.is_saturated(),
        }
    }
}

/// The origin fiber with a chosen operator set acting on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberModule {
    pub p: u64,
    pub q: i64,
    /// Staircase labels, ascending.
    pub basis: Vec<i64>,
    /// Indices of basis elements in the `q`-th-power component (the class
    /// of 0 at the origin).
    pub e1_indices: Vec<usize>,
    /// Residue mod q of each basis element.
    pub residues: Vec<i64>,
    /// Square matrices over F_p, `m[to][from]` convention.
    pub operators: Vec<Vec<Vec<u64>>>,
}

impl FiberModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(|e1 part|, |e2 part|)`.
    pub fn dimension_pair(&self) -> (usize, usize) {
        (self.e1_indices.len(), self.basis.len() - self.e1_indices.len())
    }
}

/// Monomial basis of `R (x)_{R^q} k` at the origin of a numerical
/// semigroup: the elements not reachable as `q*(positive) + anything`.
pub fn fiber_at_origin(gamma: &AffineSemigroup, q: i64, p: u64) -> Result<FiberModule> {
    if gamma.rank() != 1 {
        return Err(Error::InvalidInput(
            "fiber_at_origin expects a numerical semigroup".into(),
        ));
    }
    let m0 = gamma.generators().iter().map(|g| g[0]).min().unwrap_or(1);
    // Everything at or above q*m0 + conductor is q*m0 + (conductor tail).
    let bound = q * m0 + gamma.conductor();
    let elements = gamma.elements_up_to(bound);
    let positives: Vec<i64> = elements.iter().copied().filter(|&x| x > 0).collect();
    let reachable: BTreeSet<i64> = positives
        .iter()
        .flat_map(|&g| elements.iter().map(move |&x| q * g + x))
        .collect();
    let basis: Vec<i64> = elements
        .into_iter()
        .filter(|x| !reachable.contains(x))
        .collect();
    let residues: Vec<i64> = basis.iter().map(|x| x.rem_euclid(q)).collect();
    Ok(FiberModule {
        p,
        q,
        e1_indices: vec![basis.iter().position(|&x| x == 0).unwrap()],
        basis,
        residues,
        operators: Vec::new(),
    })
}

/// The fiber together with the action of the endomorphism-ring block
/// generators: the generator `v` of `Hom(P_i, P_j)` sends a basis element
/// `u` of residue `i` to `u + v` when that is still in the fiber, else to 0.
pub fn end_action_on_fiber(gamma: &AffineSemigroup, q: i64, p: u64) -> Result<FiberModule> {
    let mut fiber = fiber_at_origin(gamma, q, p)?;
    let pieces = residue_decomposition(gamma, q, p, DecompositionBase::QthPowers)?;
    let table = end_ring_table(&pieces, q)?;
    let n = fiber.basis.len();
    let max = *fiber.basis.last().unwrap();
    let min = *fiber.basis.first().unwrap();
    for (i, pi) in pieces.iter().enumerate() {
        for (j, _) in pieces.iter().enumerate() {
            for g in table.blocks[i][j].generators() {
                let v = g[0];
                // Translations that overshoot the window act as zero.
                if min + v > max {
                    continue;
                }
                let mut m = vec![vec![0u64; n]; n];
                let mut nonzero = false;
                for (from, &u) in fiber.basis.iter().enumerate() {
                    if fiber.residues[from] != pi.residue {
                        continue;
                    }
                    if let Some(to) = fiber.basis.iter().position(|&w| w == u + v) {
                        m[to][from] = 1;
                        nonzero = true;
                    }
                }
                if nonzero {
                    fiber.operators.push(m);
                }
            }
        }
    }
    Ok(fiber)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaStatus {
    Stable,
    NotStable,
    NotAdmissible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaStabilityReport {
    pub admissible: bool,
    pub status: LambdaStatus,
    /// A vector spanning a proper invariant subspace with nonzero `e1`
    /// component, when one exists.
    pub certificate: Option<Vec<u64>>,
}

fn decode_vector(p: u64, dim: usize, mut code: u128) -> Vec<u64> {
    let mut v = vec![0u64; dim];
    for x in v.iter_mut() {
        *x = (code % p as u128) as u64;
        code /= p as u128;
    }
    v
}

/// Stability of the fiber (or a quotient) against `lambda`.
///
/// For the special `lambda = (1 - dim, 1)` shape with one `e1` line this is
/// the generation test: every vector with nonzero `e1` component must
/// generate the whole module. Other `lambda` fall back to exhaustive
/// invariant-subspace enumeration.
pub fn lambda_stability_check(
    m: &FiberModule,
    lambda: [i64; 2],
) -> Result<LambdaStabilityReport> {
    lambda_stability_check_with(ExecMode::default(), m, lambda)
}

pub fn lambda_stability_check_with(
    mode: ExecMode,
    m: &FiberModule,
    lambda: [i64; 2],
) -> Result<LambdaStabilityReport> {
    let n = m.dim();
    let (a, b) = m.dimension_pair();
    let admissible = lambda[0] * a as i64 + lambda[1] * b as i64 == 0;
    if !admissible {
        return Ok(LambdaStabilityReport {
            admissible,
            status: LambdaStatus::NotAdmissible,
            certificate: None,
        });
    }
    let total = (m.p as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= EXHAUSTIVE_BOUND)
        .ok_or(Error::DimensionTooLarge {
            size: (m.p as u128).saturating_pow(n as u32),
            bound: EXHAUSTIVE_BOUND,
        })?;
    let e1 = m.e1_indices[0];
    let certificate = if a == 1 && lambda == [1 - n as i64, 1] {
        // A proper submodule violating stability must meet
        // the e1 line, so sweep exactly those vectors.
        exec::fold_range(
            mode,
            total as usize,
            || None::<Vec<u64>>,
            |acc, code| {
                let v = decode_vector(m.p, n, code as u128);
                if v[e1] == 0 {
                    return acc;
                }
                let generated =
                    modp::closure(m.p, n, &modp::span(m.p, n, std::slice::from_ref(&v)), &m.operators);
                if generated.dim() == n {
                    return acc;
                }
                match acc {
                    Some(best) if best <= v => Some(best),
                    _ => Some(v),
                }
            },
            |x, y| match (x, y) {
                (Some(a2), Some(b2)) => Some(a2.min(b2)),
                (x, None) => x,
                (None, y) => y,
            },
        )
    } else {
        // General lambda: enumerate all invariant subspaces and evaluate
        // the pairing on each proper nonzero one.
        let subs = modp::invariant_subspaces(m.p, n, &m.operators);
        let mut cert = None;
        for s in &subs {
            if s.dim() == 0 || s.dim() == n {
                continue;
            }
            let a2 = s.basis().iter().any(|row| row[e1] != 0) as usize;
            // e2 dimension: rank after projecting off the e1 coordinate.
            let mut proj = modp::Subspace::zero(m.p, n);
            for row in s.basis() {
                let mut r = row.clone();
                r[e1] = 0;
                proj.insert(&r);
            }
            let pairing = lambda[0] * a2 as i64 + lambda[1] * proj.dim() as i64;
            if pairing <= 0 {
                cert = s.basis().first().cloned();
                break;
            }
        }
        cert
    };
    Ok(LambdaStabilityReport {
        admissible,
        status: if certificate.is_some() {
            LambdaStatus::NotStable
        } else {
            LambdaStatus::Stable
        },
        certificate,
    })
}

/// All quotients of the fiber by operator-closed monomial subspaces whose
/// quotient dimension pair equals `alpha`.
pub fn enumerate_monomial_quotients(
    m: &FiberModule,
    alpha: (usize, usize),
) -> Result<Vec<FiberModule>> {
    let n = m.dim();
    if n > SUBSET_BOUND {
        return Err(Error::DimensionTooLarge {
            size: 1u128 << n,
            bound: 1u128 << SUBSET_BOUND,
        });
    }
    let e1 = m.e1_indices[0];
    // Monomial images of each operator: from -> to (or none).
    let arrows: Vec<Vec<Option<usize>>> = m
        .operators
        .iter()
        .map(|op| {
            (0..n)
                .map(|from| (0..n).find(|&to| op[to][from] != 0))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let in_set = |i: usize| mask >> i & 1 == 1;
        let closed = (0..n).filter(|&i| in_set(i)).all(|i| {
            arrows
                .iter()
                .all(|op| op[i].map(in_set).unwrap_or(true))
        });
        if !closed {
            continue;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| !in_set(i)).collect();
        let a = kept.iter().filter(|&&i| i == e1).count();
        let b = kept.len() - a;
        if (a, b) != alpha {
            continue;
        }
        // Induced operators on the surviving labels.
        let k = kept.len();
        let pos = |i: usize| kept.iter().position(|&j| j == i);
        let operators: Vec<Vec<Vec<u64>>> = m
            .operators
            .iter()
            .map(|op| {
                let mut q = vec![vec![0u64; k]; k];
                for (col, &i) in kept.iter().enumerate() {
                    for (row, &j) in kept.iter().enumerate() {
                        q[row][col] = op[j][i];
                    }
                }
                q
            })
            .collect();
        out.push(FiberModule {
            p: m.p,
            q: m.q,
            basis: kept.iter().map(|&i| m.basis[i]).collect(),
            e1_indices: pos(e1).into_iter().collect(),
            residues: kept.iter().map(|&i| m.residues[i]).collect(),
            operators,
        });
    }
    Ok(out)
}
