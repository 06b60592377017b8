//! McKay-quiver G-constellations for abelian G with theta/lambda stability.
//!
//! A constellation here is multiplicity-one: one line per character, and each
//! variable acts by a scalar along its arrow. Submodules are then exactly the
//! arrow-closed character subsets, which keeps stability exact and fast.

use crate::ghilb::GGraph;
use crate::quotients::{AbelianAction, Character};
use crate::{Error, Result};

const SUBSET_BOUND: usize = 20;

/// Arrow `chi -> chi + w_i` of variable `i`, stored by character index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub variable: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct McKayQuiver {
    pub vertices: Vec<Character>,
    pub arrows: Vec<Arrow>,
}

pub fn mckay_quiver(action: &AbelianAction) -> McKayQuiver {
    let group = action.group();
    let vertices = group.characters();
    let mut arrows = Vec::new();
    for (i, w) in action.weights().iter().enumerate() {
        for (from, chi) in vertices.iter().enumerate() {
            let to = group.char_index(&group.char_add(chi, w));
            arrows.push(Arrow {
                variable: i,
                from,
                to,
            });
        }
    }
    McKayQuiver { vertices, arrows }
}

/// A multiplicity-one G-constellation: `coeff[i][c]` is the scalar by which
/// `x_i` maps the line of the c-th character to the line of `chi_c + w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GConstellation {
    action: AbelianAction,
    coeff: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstellationReport {
    pub valid: bool,
    pub at_origin: bool,
    pub violations: Vec<String>,
}

impl GConstellation {
    /// `coeff[i][c]` indexed by variable then character index; entries are
    /// reduced mod p.
    pub fn new(action: AbelianAction, coeff: Vec<Vec<u64>>) -> Result<Self> {
        let order = action.group().order() as usize;
        if coeff.len() != action.dim() || coeff.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidConstellation(format!(
                "need {} x {} coefficients",
                action.dim(),
                order
            )));
        }
        let p = action.p();
        let coeff = coeff
            .into_iter()
            .map(|row| row.into_iter().map(|c| c % p).collect())
            .collect();
        Ok(GConstellation { action, coeff })
    }

    pub fn action(&self) -> &AbelianAction {
        &self.action
    }

    pub fn coeff(&self, variable: usize, char_index: usize) -> u64 {
        self.coeff[variable][char_index]
    }

    /// Index of the target character of the arrow of `variable` at `from`.
    pub fn arrow_target(&self, variable: usize, from: usize) -> usize {
        let group = self.action.group();
        let chi = group.char_from_index(from);
        group.char_index(&group.char_add(&chi, &self.action.weights()[variable]))
    }

    /// Rescales every coefficient by a fixed nonzero scalar.
    pub fn rescaled(&self, c: u64) -> GConstellation {
        let p = self.action.p();
        GConstellation {
            action: self.action.clone(),
            coeff: self
                .coeff
                .iter()
                .map(|row| row.iter().map(|&x| x * (c % p) % p).collect())
                .collect(),
        }
    }
}

/// Commutation and support-at-origin checks.
pub fn check_constellation(c: &GConstellation) -> ConstellationReport {
    let action = c.action();
    let p = action.p();
    let order = action.group().order() as usize;
    let d = action.dim();
    let mut violations = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for v in 0..order {
                // Both routes v -> v + w_i + w_j.
                let via_i = c.coeff(i, v) * c.coeff(j, c.arrow_target(i, v)) % p;
                let via_j = c.coeff(j, v) * c.coeff(i, c.arrow_target(j, v)) % p;
                if via_i != via_j {
                    violations.push(format!(
                        "x{i}*x{j} != x{j}*x{i} on character {v}: {via_i} vs {via_j}"
                    ));
                }
            }
        }
    }
    // Nilpotence: the product of coefficients along each x_i-cycle must
    // vanish, otherwise some power of x_i acts invertibly on the cycle.
    let mut at_origin = true;
    for i in 0..d {
        let mut seen = vec![false; order];
        for start in 0..order {
            if seen[start] {
                continue;
            }
            let mut v = start;
            let mut product = 1u64;
            loop {
                seen[v] = true;
                product = product * c.coeff(i, v) % p;
                v = c.arrow_target(i, v);
                if v == start {
                    break;
                }
            }
            if product != 0 {
                at_origin = false;
            }
        }
    }
    ConstellationReport {
        valid: violations.is_empty(),
        at_origin,
        violations,
    }
}

/// All arrow-closed character subsets (supports of submodules), each sorted,
/// listed in increasing size then lexicographic order. Includes the empty
/// and full sets.
pub fn closed_subsets(c: &GConstellation) -> Result<Vec<Vec<usize>>> {
    let order = c.action().group().order() as usize;
    if order > SUBSET_BOUND {
        return Err(Error::DimensionTooLarge {
            size: 1u128 << order,
            bound: 1u128 << SUBSET_BOUND,
        });
    }
    let d = c.action().dim();
    let mut out = Vec::new();
    for mask in 0u32..(1 << order) {
        let closed = (0..order)
            .filter(|&v| mask >> v & 1 == 1)
            .all(|v| {
                (0..d).all(|i| {
                    c.coeff(i, v) == 0 || mask >> c.arrow_target(i, v) & 1 == 1
                })
            });
        if closed {
            out.push((0..order).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    Ok(out)
}

/// Dimension vector of a module given per-character multiplicities: the
/// entry at `chi` counts the dual character `-chi`.
pub fn dimension_vector(action: &AbelianAction, multiplicities: &[u64]) -> Vec<u64> {
    let group = action.group();
    group
        .characters()
        .iter()
        .map(|chi| multiplicities[group.char_index(&group.char_neg(chi))])
        .collect()
}

/// Integer stability parameter indexed by character, summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta {
    values: Vec<i64>,
}

impl Theta {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.iter().sum::<i64>() != 0 {
            return Err(Error::ThetaSumNonzero);
        }
        Ok(Theta { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    SemistableOnly,
    Unstable,
}

/// King stability on the closed-subset lattice: stable iff theta is positive
/// on every proper nonempty submodule support.
pub fn theta_stability(c: &GConstellation, theta: &Theta) -> Result<Stability> {
    let order = c.action().group().order() as usize;
    if theta.values().len() != order {
        return Err(Error::ArityMismatch(theta.values().len(), order));
    }
    let subsets = closed_subsets(c)?;
    let mut stable = true;
    for s in &subsets {
        if s.is_empty() || s.len() == order {
            continue;
        }
        let value: i64 = s.iter().map(|&v| theta.values()[v]).sum();
        if value < 0 {
            return Ok(Stability::Unstable);
        }
        if value == 0 {
            stable = false;
        }
    }
    Ok(if stable {
        Stability::Stable
    } else {
        Stability::SemistableOnly
    })
}

/// `lambda[chi] = theta[-chi]`, the pairing-side form of theta.
pub fn theta_to_lambda(action: &AbelianAction, theta: &Theta) -> Vec<i64> {
    let group = action.group();
    group
        .characters()
        .iter()
        .map(|chi| theta.values()[group.char_index(&group.char_neg(chi))])
        .collect()
}

/// True iff no intermediate dimension vector `0 < a' < alpha` pairs to zero
/// with `lambda`.
pub fn is_generic(lambda: &[i64], alpha: &[u64]) -> Result<bool> {
    if lambda.len() != alpha.len() {
        return Err(Error::ArityMismatch(lambda.len(), alpha.len()));
    }
    let total: u128 = alpha.iter().map(|&a| a as u128 + 1).product();
    if total > 1 << 24 {
        return Err(Error::DimensionTooLarge {
            size: total,
            bound: 1 << 24,
        });
    }
    let mut current = vec![0u64; alpha.len()];
    for _ in 1..total {
        // Mixed-radix increment.
        for (c, &a) in current.iter_mut().zip(alpha) {
            if *c < a {
                *c += 1;
                break;
            }
            *c = 0;
        }
        if current.iter().zip(alpha).all(|(&c, &a)| c == a) {
            continue;
        }
        let pairing: i64 = lambda
            .iter()
            .zip(&current)
            .map(|(&l, &c)| l * c as i64)
            .sum();
        if pairing == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The torus-fixed constellation of a G-graph: `x_i` maps a graph monomial
/// to its product when that product is still in the graph, else to zero.
pub fn g_cluster_from_graph(graph: &GGraph, action: &AbelianAction) -> Result<GConstellation> {
    let group = action.group();
    let order = group.order() as usize;
    let d = action.dim();
    let monomials = graph.monomials();
    // Graph monomial of each character.
    let mut by_char: Vec<Option<&Vec<u32>>> = vec![None; order];
    for m in monomials {
        by_char[group.char_index(&action.weight_of(m)?)] = Some(m);
    }
    let mut coeff = vec![vec![0u64; order]; d];
    for (c, m) in by_char.iter().enumerate() {
        let m = m.ok_or_else(|| Error::InvalidGraph("missing character".into()))?;
        for (i, row) in coeff.iter_mut().enumerate() {
            let mut shifted = m.to_vec();
            shifted[i] += 1;
            if monomials.contains(&shifted) {
                row[c] = 1;
            }
        }
    }
    let c = GConstellation::new(action.clone(), coeff)?;
    let report = check_constellation(&c);
    debug_assert!(report.valid && report.at_origin);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghilb::enumerate_g_graphs;
    use crate::modp;

    fn z2(p: u64) -> AbelianAction {
        AbelianAction::cyclic(2, &[1, 1], p).unwrap()
    }

    fn z3(p: u64) -> AbelianAction {
        AbelianAction::cyclic(3, &[1, 2], p).unwrap()
    }

    #[test]
    fn quiver_shape() {
        let q = mckay_quiver(&z3(2));
        assert_eq!(q.vertices.len(), 3);
        assert_eq!(q.arrows.len(), 6);
        // x-arrows shift by 1, y-arrows by 2.
        for a in &q.arrows {
            let shift = if a.variable == 0 { 1 } else { 2 };
            assert_eq!((a.from + shift) % 3, a.to);
        }
    }

    #[test]
    fn check_z2_cluster() {
        // x: e_0 -> e_1, everything else zero.
        let c = GConstellation::new(z2(3), vec![vec![1, 0], vec![0, 0]]).unwrap();
        let r = check_constellation(&c);
        assert!(r.valid);
        assert!(r.at_origin);
    }

    #[test]
    fn check_z2_cycle_not_at_origin() {
        let c = GConstellation::new(z2(3), vec![vec![1, 1], vec![0, 0]]).unwrap();
        let r = check_constellation(&c);
        assert!(r.valid);
        assert!(!r.at_origin);
    }

    #[test]
    fn commutation_violation_reported() {
        // Z/3(1,2): routes 0 -> 0 via x then y and via y then x disagree.
        let c = GConstellation::new(z3(2), vec![vec![1, 0, 0], vec![1, 1, 0]]).unwrap();
        let r = check_constellation(&c);
        assert!(!r.valid);
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn closed_subsets_examples() {
        let c = GConstellation::new(z2(3), vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            closed_subsets(&c).unwrap(),
            vec![vec![], vec![1], vec![0, 1]]
        );

        let zero = GConstellation::new(z2(3), vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(closed_subsets(&zero).unwrap().len(), 4);

        // x-arrows a full 3-cycle, y-arrows zero: only trivial subsets.
        let c = GConstellation::new(z3(2), vec![vec![1, 1, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(closed_subsets(&c).unwrap(), vec![vec![], vec![0, 1, 2]]);
    }

    #[test]
    fn closed_subsets_match_subspace_oracle() {
        // Every invariant subspace closed under the character projections is
        // a coordinate subspace; compare supports with closed_subsets.
        let candidates = [
            GConstellation::new(z2(3), vec![vec![1, 0], vec![0, 1]]).unwrap(),
            GConstellation::new(z2(3), vec![vec![1, 1], vec![0, 0]]).unwrap(),
            GConstellation::new(z3(2), vec![vec![1, 1, 0], vec![0, 0, 0]]).unwrap(),
            GConstellation::new(z3(2), vec![vec![1, 1, 1], vec![0, 0, 0]]).unwrap(),
            GConstellation::new(z3(2), vec![vec![0, 0, 0], vec![0, 0, 0]]).unwrap(),
        ];
        for c in &candidates {
            let p = c.action().p();
            let n = c.action().group().order() as usize;
            let mut operators: Vec<Vec<modp::Vector>> = Vec::new();
            for i in 0..c.action().dim() {
                let mut m = vec![vec![0u64; n]; n];
                for v in 0..n {
                    m[c.arrow_target(i, v)][v] = c.coeff(i, v);
                }
                operators.push(m);
            }
            for v in 0..n {
                let mut proj = vec![vec![0u64; n]; n];
                proj[v][v] = 1;
                operators.push(proj);
            }
            let subs = modp::invariant_subspaces(p, n, &operators);
            let mut supports: Vec<Vec<usize>> = subs
                .iter()
                .map(|s| {
                    let mut sup: Vec<usize> = s
                        .basis()
                        .iter()
                        .flat_map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|(_, &x)| x != 0)
                                .map(|(i, _)| i)
                        })
                        .collect();
                    sup.sort();
                    sup.dedup();
                    assert_eq!(sup.len(), s.dim(), "subspace is not coordinate");
                    sup
                })
                .collect();
            supports.sort_by_key(|s| (s.len(), s.clone()));
            assert_eq!(supports, closed_subsets(c).unwrap());
        }
    }

    #[test]
    fn dimension_vector_examples() {
        let action = z3(2);
        assert_eq!(dimension_vector(&action, &[1, 1, 1]), vec![1, 1, 1]);
        assert_eq!(dimension_vector(&action, &[0, 1, 0]), vec![0, 0, 1]);
        assert_eq!(dimension_vector(&action, &[2, 1, 0]), vec![2, 0, 1]);
    }

    #[test]
    fn stability_examples() {
        let cluster = GConstellation::new(z2(3), vec![vec![1, 0], vec![0, 0]]).unwrap();
        let theta = Theta::new(vec![-1, 1]).unwrap();
        assert_eq!(theta_stability(&cluster, &theta).unwrap(), Stability::Stable);

        let zero = GConstellation::new(z2(3), vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            theta_stability(&zero, &theta).unwrap(),
            Stability::Unstable
        );

        let flat = Theta::new(vec![0, 0]).unwrap();
        assert_eq!(
            theta_stability(&cluster, &flat).unwrap(),
            Stability::SemistableOnly
        );
    }

    #[test]
    fn stability_ignores_rescaling() {
        let c = GConstellation::new(z3(2), vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let theta = Theta::new(vec![-2, 1, 1]).unwrap();
        let s1 = theta_stability(&c, &theta).unwrap();
        // Over F_2 the only nonzero scalar is 1; use F_5 for a real rescale.
        let c5 = GConstellation::new(z3(5), vec![vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let s5 = theta_stability(&c5, &theta).unwrap();
        let s5r = theta_stability(&c5.rescaled(3), &theta).unwrap();
        assert_eq!(s1, s5);
        assert_eq!(s5, s5r);
    }

    #[test]
    fn lambda_translation() {
        let action = z3(2);
        let t = Theta::new(vec![-2, 1, 1]).unwrap();
        assert_eq!(theta_to_lambda(&action, &t), vec![-2, 1, 1]);
        let t = Theta::new(vec![-3, 1, 2]).unwrap();
        assert_eq!(theta_to_lambda(&action, &t), vec![-3, 2, 1]);
        let z2a = z2(3);
        let t = Theta::new(vec![-1, 1]).unwrap();
        assert_eq!(theta_to_lambda(&z2a, &t), vec![-1, 1]);
    }

    #[test]
    fn pairing_identity() {
        // theta(M) = (lambda_theta, dim M) for constellation-like modules.
        let action = z3(2);
        for mults in [[1u64, 1, 1], [0, 1, 0], [2, 1, 0], [3, 0, 2]] {
            for theta_vals in [[-2i64, 1, 1], [-3, 1, 2], [0, 5, -5]] {
                let theta = Theta::new(theta_vals.to_vec()).unwrap();
                let lhs: i64 = mults
                    .iter()
                    .zip(theta.values())
                    .map(|(&m, &t)| m as i64 * t)
                    .sum();
                let lambda = theta_to_lambda(&action, &theta);
                let dim = dimension_vector(&action, &mults);
                let rhs: i64 = lambda
                    .iter()
                    .zip(&dim)
                    .map(|(&l, &d)| l * d as i64)
                    .sum();
                assert_eq!(lhs, rhs, "mults {mults:?} theta {theta_vals:?}");
            }
        }
    }

    #[test]
    fn genericity_examples() {
        // q^d = 4: alpha = (1, 3), lambda = (-3, 1).
        assert!(is_generic(&[-3, 1], &[1, 3]).unwrap());
        assert!(!is_generic(&[0, 0], &[1, 1]).unwrap());
        assert!(is_generic(&[-1, 1], &[1, 1]).unwrap());
        // (2, 2) pairs to zero with (-1, 1) at alpha' = (1, 1).
        assert!(!is_generic(&[-1, 1], &[2, 2]).unwrap());
    }

    #[test]
    fn clusters_from_graphs_are_stable() {
        for action in [z2(3), z3(2), AbelianAction::cyclic(5, &[1, 3], 2).unwrap()] {
            let n = action.group().order() as i64;
            let theta = Theta::new(
                std::iter::once(1 - n)
                    .chain(std::iter::repeat_n(1, n as usize - 1))
                    .collect(),
            )
            .unwrap();
            for graph in enumerate_g_graphs(&action).unwrap() {
                let c = g_cluster_from_graph(&graph, &action).unwrap();
                let r = check_constellation(&c);
                assert!(r.valid && r.at_origin);
                assert_eq!(
                    theta_stability(&c, &theta).unwrap(),
                    Stability::Stable,
                    "graph {:?}",
                    graph.monomials()
                );
            }
        }
    }

    #[test]
    fn cluster_from_graph_tables() {
        let action = z2(3);
        let g = GGraph::new(&action, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let c = g_cluster_from_graph(&g, &action).unwrap();
        assert_eq!(c.coeff(0, 0), 1);
        assert_eq!(c.coeff(0, 1), 0);
        assert_eq!(c.coeff(1, 0), 0);
        assert_eq!(c.coeff(1, 1), 0);

        let action = z3(2);
        let g = GGraph::new(&action, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let c = g_cluster_from_graph(&g, &action).unwrap();
        assert_eq!(c.coeff(0, 0), 1); // x * 1 = x
        assert_eq!(c.coeff(1, 0), 1); // y * 1 = y
        assert_eq!(c.coeff(0, 1), 0);
        assert_eq!(c.coeff(1, 2), 0);
    }
}
