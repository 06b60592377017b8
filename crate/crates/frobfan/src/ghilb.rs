//! Torus-fixed G-clusters (G-graphs) for cyclic Z/n(1,a) acting on the
//! plane, and the toric fan of the G-Hilbert scheme.
//!
//! All lattice arithmetic happens in the scaled lattice
//! `n*N_G = {(u,v) : a*u = v mod n}` so that everything stays integral; the
//! quotient cone sigma has scaled boundary rays (n,0) and (0,n).

use crate::exec::{self, ExecMode};
use crate::quotients::AbelianAction;
use crate::semigroup::{cross, dot, gcd_i, primitive};
use crate::{Error, Result};

/// A G-graph: an order ideal of monomials in N^2 hitting every character of
/// Z/n(1,a) exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GGraph {
    monomials: Vec<Vec<u32>>,
}

impl GGraph {
    /// Validates the order-ideal and one-monomial-per-character conditions.
    pub fn new(action: &AbelianAction, mut monomials: Vec<Vec<u32>>) -> Result<Self> {
        let (n, _a) = cyclic_params(action)?;
        monomials.sort();
        monomials.dedup();
        if monomials.len() as u64 != n {
            return Err(Error::InvalidGraph(format!(
                "expected {n} monomials, got {}",
                monomials.len()
            )));
        }
        let has = |x: i64, y: i64| {
            x >= 0
                && y >= 0
                && monomials.binary_search(&vec![x as u32, y as u32]).is_ok()
        };
        let mut seen = vec![false; n as usize];
        for m in &monomials {
            if m.len() != 2 {
                return Err(Error::InvalidGraph("monomials must be planar".into()));
            }
            let (x, y) = (m[0] as i64, m[1] as i64);
            if (x > 0 && !has(x - 1, y)) || (y > 0 && !has(x, y - 1)) {
                return Err(Error::InvalidGraph(format!(
                    "not an order ideal at ({x}, {y})"
                )));
            }
            let w = action.weight_of(m)?;
            let idx = action.group().char_index(&w);
            if seen[idx] {
                return Err(Error::InvalidGraph(format!(
                    "character {idx} hit twice"
                )));
            }
            seen[idx] = true;
        }
        Ok(GGraph { monomials })
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }
}

/// Extracts `(n, a)` from a faithful cyclic diagonal plane action.
pub fn cyclic_params(action: &AbelianAction) -> Result<(u64, u64)> {
    if action.group().orders().len() != 1 || action.dim() != 2 {
        return Err(Error::NotCyclic);
    }
    let n = action.group().order();
    let w1 = action.weights()[0].residues()[0];
    let w2 = action.weights()[1].residues()[0];
    // Normalize so the first weight is 1: Z/n(w1,w2) = Z/n(1, w2/w1) after
    // the group automorphism g -> g/w1, which needs gcd(w1, n) = 1.
    if n == 1 {
        return Ok((1, 0));
    }
    if gcd_i(w1 as i64, n as i64) != 1 {
        return Err(Error::NotCyclic);
    }
    let inv = mod_inverse(w1, n);
    Ok((n, w2 * inv % n))
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    (1..n).find(|&x| a * x % n == 1).unwrap_or(0)
}

/// All G-graphs of Z/n(1,a): Young diagrams of size n whose boxes carry
/// pairwise distinct weights `i + a*j mod n`.
pub fn enumerate_g_graphs(action: &AbelianAction) -> Result<Vec<GGraph>> {
    if !action.is_small() {
        return Err(Error::NotSmall);
    }
    let (n, a) = cyclic_params(action)?;
    let n = n as usize;
    let mut graphs = Vec::new();
    // Column heights h_0 >= h_1 >= ... summing to n.
    let mut heights: Vec<usize> = Vec::new();
    search_diagrams(n, n, &mut heights, &mut |hs| {
        let mut seen = vec![false; n];
        let mut monomials = Vec::with_capacity(n);
        for (i, &h) in hs.iter().enumerate() {
            for j in 0..h {
                let w = (i + (a as usize) * j) % n.max(1);
                if seen[w] {
                    return;
                }
                seen[w] = true;
                monomials.push(vec![i as u32, j as u32]);
            }
        }
        monomials.sort();
        graphs.push(GGraph { monomials });
    });
    graphs.sort_by(|g, h| g.monomials.cmp(&h.monomials));
    Ok(graphs)
}

fn search_diagrams(
    remaining: usize,
    max_height: usize,
    heights: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(heights);
        return;
    }
    for h in (1..=remaining.min(max_height)).rev() {
        heights.push(h);
        search_diagrams(remaining - h, h, heights, emit);
        heights.pop();
    }
}

/// A two-dimensional cone in the scaled lattice `n*N_G`, rays ordered
/// counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone2 {
    pub rays: [[i64; 2]; 2],
}

impl Cone2 {
    /// Smooth in `N_G` iff its rays generate the scaled lattice, whose
    /// covolume is `n`.
    pub fn is_smooth(&self, n: u64) -> bool {
        cross(&self.rays[0], &self.rays[1]).unsigned_abs() == n
    }
}

/// A complete fan on the quotient cone sigma, tagged with the `(n, a)`
/// lattice data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan2 {
    pub n: u64,
    pub a: u64,
    pub cones: Vec<Cone2>,
}

impl Fan2 {
    /// All rays, counterclockwise, including the sigma boundary (n,0),(0,n).
    pub fn rays(&self) -> Vec<[i64; 2]> {
        let mut out: Vec<[i64; 2]> = Vec::new();
        for c in &self.cones {
            for r in c.rays {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out.sort_by(|p, q| cross(q, p).cmp(&0).then(p.cmp(q)));
        out
    }

    /// Rays strictly inside sigma.
    pub fn interior_rays(&self) -> Vec<[i64; 2]> {
        self.rays()
            .into_iter()
            .filter(|r| r[0] > 0 && r[1] > 0)
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| c.is_smooth(self.n))
    }
}

/// Scales a primitive integer direction to the first point of `n*N_G` on
/// its ray.
pub fn scale_to_lattice(n: u64, a: u64, dir: [i64; 2]) -> [i64; 2] {
    let d = primitive(dir);
    let n_i = n as i64;
    let k = n_i / gcd_i(n_i, (a as i64 * d[0] - d[1]).rem_euclid(n_i));
    [k * d[0], k * d[1]]
}

/// The locus in sigma where each graph monomial minimizes the valuation
/// among its character's covariant generators, as a cone in `n*N_G`.
pub fn g_graph_cone(graph: &GGraph, action: &AbelianAction) -> Result<Cone2> {
    let (n, a) = cyclic_params(action)?;
    // Inequalities <v, g - m> >= 0 plus the quadrant.
    let mut normals: Vec<[i64; 2]> = vec![[1, 0], [0, 1]];
    for m in graph.monomials() {
        let chi = action.weight_of(m)?;
        for g in action.covariant_generators(&chi) {
            let w = [g[0] as i64 - m[0] as i64, g[1] as i64 - m[1] as i64];
            if w != [0, 0] {
                normals.push(w);
            }
        }
    }
    // Candidate extremal rays: boundary directions of each half-plane.
    let mut candidates: Vec<[i64; 2]> = Vec::new();
    for w in &normals {
        candidates.push(primitive([w[1], -w[0]]));
        candidates.push(primitive([-w[1], w[0]]));
    }
    candidates.retain(|r| {
        r[0] >= 0 && r[1] >= 0 && normals.iter().all(|w| dot(w, r) >= 0)
    });
    candidates.sort_by(|p, q| cross(q, p).cmp(&0));
    candidates.dedup();
    let (Some(&first), Some(&last)) = (candidates.first(), candidates.last()) else {
        return Err(Error::EmptyConeInterior);
    };
    if cross(&first, &last) <= 0 {
        return Err(Error::EmptyConeInterior);
    }
    Ok(Cone2 {
        rays: [
            scale_to_lattice(n, a, first),
            scale_to_lattice(n, a, last),
        ],
    })
}

/// The toric fan of the G-Hilbert scheme of Z/n(1,a): one cone per G-graph,
/// verified to tile sigma.
pub fn hilb_fan(action: &AbelianAction) -> Result<Fan2> {
    hilb_fan_with(ExecMode::default(), action)
}

pub fn hilb_fan_with(mode: ExecMode, action: &AbelianAction) -> Result<Fan2> {
    let (n, a) = cyclic_params(action)?;
    let graphs = enumerate_g_graphs(action)?;
    let computed = exec::map_collect(mode, graphs, |g| g_graph_cone(&g, action));
    let mut cones: Vec<Cone2> = Vec::new();
    for c in computed {
        match c {
            Ok(c) => cones.push(c),
            Err(Error::EmptyConeInterior) => continue,
            Err(e) => return Err(e),
        }
    }
    cones.sort_by(|c, d| cross(&d.rays[0], &c.rays[0]).cmp(&0));
    // Tiling: start at (n,0), consecutive cones share a ray, end at (0,n).
    let n_i = n as i64;
    let ok = !cones.is_empty()
        && cones[0].rays[0] == [n_i, 0]
        && cones.last().unwrap().rays[1] == [0, n_i]
        && cones.windows(2).all(|w| w[0].rays[1] == w[1].rays[0])
        && cones.iter().all(|c| cross(&c.rays[0], &c.rays[1]) > 0);
    if !ok {
        return Err(Error::FanInvariant(
            "graph cones do not tile the quotient cone".into(),
        ));
    }
    Ok(Fan2 { n, a, cones })
}
