//! F-blowups of affine toric surfaces as fan refinements.
//!
//! The Frobenius pushforward splits into residue pieces; each piece is flat
//! exactly where a single minimal generator attains the minimal pairing, so
//! the universal flattening is the subdivision of the quotient cone at the
//! rays where the argmin changes. For quotient models the fan lives in the
//! same scaled lattice `n*N_G` as the G-Hilbert fan, which makes the
//! comparison a primitive-ray-set equality.

use std::collections::BTreeMap;

use crate::exec::{self, ExecMode};
use crate::ghilb::{cyclic_params, scale_to_lattice, Cone2, Fan2};
use crate::modules::FractionalMonomialModule;
use crate::quotients::AbelianAction;
use crate::semigroup::{cross, dot, primitive, AffineSemigroup};
use crate::{Error, Result};

/// A rank-2 saturated monomial model, optionally tagged with the quotient
/// data `(n, a)` that identifies its dual lattice with `N_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricSurfaceData {
    pub semigroup: AffineSemigroup,
    /// `(n, a)` when the model is the invariant ring of Z/n(1,a); `(1, 0)`
    /// for the smooth plane.
    pub lattice_tag: (u64, u64),
}

/// The invariant monomial model of Z/n(1,a): the saturated semigroup
/// `{(alpha, beta) in N^2 : alpha + a*beta = 0 mod n}`.
pub fn quotient_toric_model(action: &AbelianAction) -> Result<ToricSurfaceData> {
    if !action.is_small() && action.group().order() > 1 {
        return Err(Error::NotSmall);
    }
    let (n, a) = cyclic_params(action)?;
    let n_i = n as i64;
    let a_i = a as i64;
    // Generators: enough lattice points of the quadrant slice; the
    // constructor reduces them to the Hilbert basis.
    let mut gens: Vec<[i64; 2]> = Vec::new();
    for x in 0..=n_i {
        for y in 0..=n_i {
            if (x, y) != (0, 0) && (x + a_i * y) % n_i.max(1) == 0 {
                gens.push([x, y]);
            }
        }
    }
    let semigroup = AffineSemigroup::toric(&gens)?;
    debug_assert!(semigroup.is_saturated());
    Ok(ToricSurfaceData {
        semigroup,
        lattice_tag: (n, a),
    })
}

/// One residue summand of the Frobenius pushforward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusPiece {
    pub residue: [i64; 2],
    pub module: FractionalMonomialModule,
}

/// Splits the semigroup by residue mod q; each piece is a module over the
/// q-scaled semigroup with minimal generators.
pub fn frobenius_pieces(toric: &ToricSurfaceData, q: i64) -> Result<Vec<FrobeniusPiece>> {
    frobenius_pieces_with(ExecMode::default(), toric, q)
}

pub fn frobenius_pieces_with(
    mode: ExecMode,
    toric: &ToricSurfaceData,
    q: i64,
) -> Result<Vec<FrobeniusPiece>> {
    let gamma = &toric.semigroup;
    if !gamma.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let base = gamma.scaled(q);
    // Minimal generators of every piece lie where neither q*rp1 nor q*rp2
    // can be subtracted while staying in the cone:
    // <n2, u> < q <n2, rp1> or the symmetric bound. Enumerate the integer
    // box containing that parallelogram.
    let [n1, n2] = gamma.normals2();
    let [rp1, rp2] = gamma.ray_points2();
    let c1 = q * dot(&n1, &rp2);
    let c2 = q * dot(&n2, &rp1);
    let mut corner_max = [0i64; 2];
    for &(a1, a2) in &[(0, 0), (c1, 0), (0, c2), (c1, c2)] {
        // Solve <n1,u> = a1, <n2,u> = a2 over Q; track the bounding box.
        let ux = (a1 * n2[1] - a2 * n1[1]) as f64 / (n1[0] * n2[1] - n1[1] * n2[0]) as f64;
        let uy = (a2 * n1[0] - a1 * n2[0]) as f64 / (n1[0] * n2[1] - n1[1] * n2[0]) as f64;
        corner_max[0] = corner_max[0].max(ux.abs().ceil() as i64 + 1);
        corner_max[1] = corner_max[1].max(uy.abs().ceil() as i64 + 1);
    }
    let (bx, by) = (corner_max[0], corner_max[1]);
    let mut by_residue: BTreeMap<[i64; 2], Vec<Vec<i64>>> = BTreeMap::new();
    for x in -bx..=bx {
        for y in -by..=by {
            if gamma.contains(&[x, y]) && dot(&n1, &[x, y]) <= c1 && dot(&n2, &[x, y]) <= c2 {
                by_residue
                    .entry([x.rem_euclid(q), y.rem_euclid(q)])
                    .or_default()
                    .push(vec![x, y]);
            }
        }
    }
    let entries: Vec<([i64; 2], Vec<Vec<i64>>)> = by_residue.into_iter().collect();
    let computed = exec::map_collect(mode, entries, |(residue, members)| {
        FractionalMonomialModule::new(base.clone(), members)
            .map(|module| FrobeniusPiece { residue, module })
    });
    computed.into_iter().collect()
}

/// Interior rays of sigma where the minimizing generator of the piece
/// changes; empty exactly when the piece is locally free on all of sigma.
pub fn module_fan(piece: &FractionalMonomialModule) -> Vec<[i64; 2]> {
    let gamma = piece.base();
    let [rp1, rp2] = gamma.ray_points2();
    let gens = piece.generators();
    let mut rays: Vec<[i64; 2]> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        for h in gens.iter().skip(k + 1) {
            let d = [g[0] - h[0], g[1] - h[1]];
            // v orthogonal to d, oriented into sigma's interior.
            for v in [primitive([d[1], -d[0]]), primitive([-d[1], d[0]])] {
                if dot(&v, &rp1) > 0 && dot(&v, &rp2) > 0 {
                    let m = dot(&v, g);
                    if gens.iter().all(|k2| dot(&v, k2) >= m) && !rays.contains(&v) {
                        rays.push(v);
                    }
                }
            }
        }
    }
    rays
}

/// The F-blowup fan: sigma subdivided at the union of all pieces' rays,
/// expressed in the scaled lattice of the model's tag.
pub fn fblowup_fan(toric: &ToricSurfaceData, q: i64) -> Result<Fan2> {
    fblowup_fan_with(ExecMode::default(), toric, q)
}

pub fn fblowup_fan_with(mode: ExecMode, toric: &ToricSurfaceData, q: i64) -> Result<Fan2> {
    let pieces = frobenius_pieces_with(mode, toric, q)?;
    let ray_sets = exec::map_collect(mode, pieces, |p| module_fan(&p.module));
    let (n, a) = toric.lattice_tag;
    let gamma = &toric.semigroup;
    // sigma's boundary rays are dual to the cone's extremal rays.
    let [n1, n2] = gamma.normals2();
    let mut rays: Vec<[i64; 2]> = vec![primitive(n1), primitive(n2)];
    for set in ray_sets {
        for r in set {
            if !rays.contains(&r) {
                rays.push(r);
            }
        }
    }
    // Counterclockwise by angle.
    rays.sort_by(|p2, q2| cross(q2, p2).cmp(&0));
    let scaled: Vec<[i64; 2]> = rays
        .iter()
        .map(|&r| scale_to_lattice(n, a, r))
        .collect();
    let cones: Vec<Cone2> = scaled
        .windows(2)
        .map(|w| Cone2 { rays: [w[0], w[1]] })
        .collect();
    if cones.is_empty() || cones.iter().any(|c| cross(&c.rays[0], &c.rays[1]) <= 0) {
        return Err(Error::FanInvariant(
            "F-blowup rays do not subdivide the quotient cone".into(),
        ));
    }
    Ok(Fan2 { n, a, cones })
}

/// Outcome of the Hilb-vs-F-blowup fan comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanComparison {
    pub equal: bool,
    pub matched_rays: Vec<[i64; 2]>,
}

/// Compares the two fans through a lattice identification: identity when the
/// tags agree, otherwise the coordinate swap (which inverts `a` mod `n`).
pub fn compare_fans(hilb: &Fan2, fb: &Fan2) -> Result<FanComparison> {
    if hilb.n != fb.n {
        return Err(Error::LatticeMismatch);
    }
    let n = hilb.n;
    let same_lattice = |a1: u64, a2: u64| n <= 1 || a1 % n == a2 % n;
    let fb_rays: Vec<[i64; 2]> = if same_lattice(hilb.a, fb.a) {
        fb.rays()
    } else if same_lattice(hilb.a, inverse_mod(fb.a, n)) {
        // Swapping coordinates maps {a*u = v} to {a^{-1}*u = v}.
        fb.rays().into_iter().map(|r| [r[1], r[0]]).collect()
    } else {
        return Err(Error::LatticeMismatch);
    };
    let mut h: Vec<[i64; 2]> = hilb.rays();
    let mut f = fb_rays;
    h.sort();
    f.sort();
    let equal = h == f;
    let matched: Vec<[i64; 2]> = h.iter().filter(|r| f.contains(r)).cloned().collect();
    Ok(FanComparison {
        equal,
        matched_rays: matched,
    })
}

fn inverse_mod(a: u64, n: u64) -> u64 {
    (1..n).find(|&x| a * x % n == 1).unwrap_or(0)
}
