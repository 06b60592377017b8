//! Affine semigroups of rank 1 (numerical semigroups, possibly scaled) and
//! rank 2 (toric, with an exact cone-plus-lattice membership test).
//!
//! Rank-1 membership uses a reachability table up to the conductor; rank-2
//! semigroups carry their lattice (in Hermite normal form) and the two
//! extremal rays of their cone, so membership in the saturation is a pair of
//! half-plane tests plus a lattice test.

use crate::{Error, Result};

pub(crate) fn gcd_i(a: i64, b: i64) -> i64 {
    let (a, b) = (a.abs(), b.abs());
    if b == 0 {
        a
    } else {
        gcd_i(b, a % b)
    }
}

/// 2D cross product.
pub(crate) fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduces a nonzero vector to its primitive direction in `Z^2`.
pub(crate) fn primitive(v: [i64; 2]) -> [i64; 2] {
    let g = gcd_i(v[0], v[1]);
    [v[0] / g, v[1] / g]
}

/// A basis of a finite-index sublattice of `Z^2` in row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Lattice2 {
    /// Rows `[[a, b], [0, d]]` with `a > 0`, `d > 0`, `0 <= b < d`... stored
    /// as the two basis rows after HNF reduction.
    pub rows: [[i64; 2]; 2],
}

impl Lattice2 {
    /// HNF basis of the lattice generated by the given vectors. Requires the
    /// span to be full rank.
    pub fn from_generators(gens: &[Vec<i64>]) -> Result<Lattice2> {
        let mut rows: Vec<[i64; 2]> = gens.iter().map(|g| [g[0], g[1]]).collect();
        // Column-echelon style gcd elimination on the first coordinate.
        let mut basis: Vec<[i64; 2]> = Vec::new();
        for col in 0..2 {
            let mut pivot: Option<[i64; 2]> = None;
            let mut rest = Vec::new();
            for r in rows.drain(..) {
                if r[col] == 0 {
                    rest.push(r);
                    continue;
                }
                match pivot {
                    None => pivot = Some(r),
                    Some(mut p) => {
                        // Extended gcd step on coordinate `col`.
                        let mut r = r;
                        while r[col] != 0 {
                            let k = p[col] / r[col];
                            p = [p[0] - k * r[0], p[1] - k * r[1]];
                            std::mem::swap(&mut p, &mut r);
                        }
                        pivot = Some(p);
                        if r != [0, 0] {
                            rest.push(r);
                        }
                    }
                }
            }
            if let Some(p) = pivot {
                basis.push(p);
            }
            rows = rest;
        }
        if basis.len() != 2 {
            return Err(Error::InvalidInput(
                "semigroup generators do not span a rank-2 lattice".into(),
            ));
        }
        let mut b0 = basis[0];
        let mut b1 = basis[1];
        // Normalize: b1 = [0, d] with d > 0, b0 = [a, b] with a > 0, 0 <= b < d.
        debug_assert_eq!(b1[0], 0);
        if b1[1] < 0 {
            b1 = [0, -b1[1]];
        }
        if b0[0] < 0 {
            b0 = [-b0[0], -b0[1]];
        }
        let d = b1[1];
        b0[1] = b0[1].rem_euclid(d);
        Ok(Lattice2 { rows: [b0, [0, d]] })
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let [a, b] = self.rows[0];
        let d = self.rows[1][1];
        if v[0] % a != 0 {
            return false;
        }
        let k = v[0] / a;
        (v[1] - k * b) % d == 0
    }

    /// Index in `Z^2`.
    pub fn index(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1]
    }

    /// Smallest positive multiple of a primitive `Z^2` direction lying in
    /// this lattice.
    pub fn primitive_on_ray(&self, dir: [i64; 2]) -> [i64; 2] {
        let dir = primitive(dir);
        for k in 1..=self.index() {
            let v = [k * dir[0], k * dir[1]];
            if self.contains(&v) {
                return v;
            }
        }
        unreachable!("index bounds the denominator of any ray")
    }
}

/// An affine semigroup: rank 1 (a scaled numerical semigroup in `N`) or
/// rank 2 (lattice points in a pointed cone in `N^2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSemigroup {
    rank: usize,
    generators: Vec<Vec<i64>>,
    // Rank-1 data (zeroed for rank 2).
    step: i64,
    conductor: i64,
    small_members: Vec<bool>,
    // Rank-2 data.
    lattice: Option<Lattice2>,
    rays: Option<[[i64; 2]; 2]>,
    normals: Option<[[i64; 2]; 2]>,
    ray_points: Option<[[i64; 2]; 2]>,
    saturated: bool,
}

impl AffineSemigroup {
    /// A numerical semigroup (rank 1) from positive generators; the gcd need
    /// not be 1 (scaled semigroups such as `q*Gamma` are allowed).
    pub fn numerical(generators: &[i64]) -> Result<Self> {
        if generators.is_empty() || generators.iter().any(|&g| g <= 0) {
            return Err(Error::InvalidInput(
                "numerical semigroup generators must be positive".into(),
            ));
        }
        let mut gens: Vec<i64> = generators.to_vec();
        gens.sort();
        gens.dedup();
        let step = gens.iter().fold(0, |a, &b| gcd_i(a, b));
        // Every gap of the normalized semigroup is below m1^2 (Erdos-Graham
        // bound); reachability by DP up to there.
        let m1 = gens[gens.len() - 1] / step;
        let bound = (m1 * m1 + m1 + 1) as usize;
        let mut dp = vec![false; bound + 1];
        dp[0] = true;
        for x in 1..=bound {
            for &g in &gens {
                let g = (g / step) as usize;
                if x >= g && dp[x - g] {
                    dp[x] = true;
                    break;
                }
            }
        }
        // Conductor: past the last gap everything is in.
        let mut cond_norm = 0;
        for x in (0..=bound).rev() {
            if !dp[x] {
                cond_norm = x + 1;
                break;
            }
        }
        let conductor = cond_norm as i64 * step;
        // Drop generators reachable from the others.
        let minimal: Vec<Vec<i64>> = gens
            .iter()
            .filter(|&&g| {
                !gens.iter().any(|&h| {
                    h != g && h < g && {
                        let diff = ((g - h) / step) as usize;
                        (g - h) % step == 0 && diff < dp.len() && dp[diff]
                    }
                })
            })
            .map(|&g| vec![g])
            .collect();
        Ok(AffineSemigroup {
            rank: 1,
            generators: minimal,
            step,
            conductor,
            small_members: dp,
            lattice: None,
            rays: None,
            normals: None,
            ray_points: None,
            saturated: cond_norm <= 1,
        })
    }

    /// A rank-2 semigroup from generators in `N^2` spanning a pointed,
    /// full-dimensional cone.
    pub fn toric(generators: &[[i64; 2]]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        if generators.iter().any(|g| g[0] < 0 || g[1] < 0 || *g == [0, 0]) {
            return Err(Error::InvalidInput(
                "rank-2 generators must be nonzero and nonnegative".into(),
            ));
        }
        let gens: Vec<Vec<i64>> = {
            let mut v: Vec<Vec<i64>> = generators.iter().map(|g| g.to_vec()).collect();
            v.sort();
            v.dedup();
            v
        };
        let lattice = Lattice2::from_generators(&gens)?;
        // Extremal rays: clockwise-most and counterclockwise-most generator
        // directions (all generators lie in the first quadrant, so the
        // angular order is total).
        let mut r1 = [gens[0][0], gens[0][1]];
        let mut r2 = r1;
        for g in &gens {
            let g = [g[0], g[1]];
            if cross(&r1, &g) < 0 {
                r1 = g;
            }
            if cross(&r2, &g) > 0 {
                r2 = g;
            }
        }
        let r1 = primitive(r1);
        let r2 = primitive(r2);
        if cross(&r1, &r2) <= 0 && r1 != r2 {
            return Err(Error::NotPointed);
        }
        if r1 == r2 {
            return Err(Error::InvalidInput(
                "rank-2 semigroup generators span a 1-dimensional cone".into(),
            ));
        }
        // Inward normals: u1 vanishes on r1, u2 on r2.
        let u1 = primitive([-r1[1], r1[0]]);
        let u1 = if dot(&u1, &r2) > 0 { u1 } else { [-u1[0], -u1[1]] };
        let u2 = primitive([-r2[1], r2[0]]);
        let u2 = if dot(&u2, &r1) > 0 { u2 } else { [-u2[0], -u2[1]] };
        let rp1 = lattice.primitive_on_ray(r1);
        let rp2 = lattice.primitive_on_ray(r2);
        let mut sg = AffineSemigroup {
            rank: 2,
            generators: gens,
            step: 0,
            conductor: 0,
            small_members: Vec::new(),
            lattice: Some(lattice),
            rays: Some([r1, r2]),
            normals: Some([u1, u2]),
            ray_points: Some([rp1, rp2]),
            saturated: false,
        };
        sg.saturated = sg.check_saturation();
        if sg.saturated {
            sg.generators = sg.hilbert_basis();
        }
        Ok(sg)
    }

    /// Hilbert basis of the saturation `cone /\ lattice`: irreducible
    /// elements, all of which lie in the parallelogram spanned by the two
    /// primitive ray points.
    pub fn hilbert_basis(&self) -> Vec<Vec<i64>> {
        let [rp1, rp2] = self.ray_points.unwrap();
        let hi = [rp1[0] + rp2[0], rp1[1] + rp2[1]];
        let mut points = Vec::new();
        for x in 0..=hi[0] {
            for y in 0..=hi[1] {
                let v = [x, y];
                if v == [0, 0] {
                    continue;
                }
                if self.in_saturation(&v) {
                    points.push(vec![x, y]);
                }
            }
        }
        points
            .iter()
            .filter(|v| {
                !points.iter().any(|w| {
                    *w != **v
                        && w[0] <= v[0]
                        && w[1] <= v[1]
                        && self.in_saturation(&[v[0] - w[0], v[1] - w[1]])
                        && [v[0] - w[0], v[1] - w[1]] != [0, 0]
                })
            })
            .cloned()
            .collect()
    }

    fn check_saturation(&self) -> bool {
        // Saturated iff every Hilbert basis element of cone /\ lattice is a
        // sum of generators.
        let hb = self.hilbert_basis();
        hb.iter().all(|h| self.generated_contains(h))
    }

    /// Membership in the semigroup generated by the generator list (not the
    /// saturation), by bounded reachability.
    fn generated_contains(&self, v: &[i64]) -> bool {
        if v[0] < 0 || v[1] < 0 {
            return false;
        }
        let mut dp = vec![vec![false; v[1] as usize + 1]; v[0] as usize + 1];
        dp[0][0] = true;
        for x in 0..=v[0] as usize {
            for y in 0..=v[1] as usize {
                if dp[x][y] {
                    continue;
                }
                for g in &self.generators {
                    let (gx, gy) = (g[0] as usize, g[1] as usize);
                    if x >= gx && y >= gy && dp[x - gx][y - gy] {
                        dp[x][y] = true;
                        break;
                    }
                }
            }
        }
        dp[v[0] as usize][v[1] as usize]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Rank 1 only: the gcd of the generators.
    pub fn step(&self) -> i64 {
        debug_assert_eq!(self.rank, 1);
        self.step
    }

    /// Rank 1 only: every multiple of `step` at least this value belongs to
    /// the semigroup.
    pub fn conductor(&self) -> i64 {
        debug_assert_eq!(self.rank, 1);
        self.conductor
    }

    pub(crate) fn normals2(&self) -> [[i64; 2]; 2] {
        self.normals.unwrap()
    }

    pub(crate) fn ray_points2(&self) -> [[i64; 2]; 2] {
        self.ray_points.unwrap()
    }

    #[cfg(test)]
    pub(crate) fn lattice2(&self) -> &Lattice2 {
        self.lattice.as_ref().unwrap()
    }

    /// Membership in the saturation (for saturated rank-2 semigroups this is
    /// membership in the semigroup itself).
    pub(crate) fn in_saturation(&self, v: &[i64]) -> bool {
        let [u1, u2] = self.normals.unwrap();
        dot(&u1, v) >= 0 && dot(&u2, v) >= 0 && self.lattice.as_ref().unwrap().contains(v)
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[i64]) -> bool {
        match self.rank {
            1 => {
                let x = v[0];
                if x < 0 || x % self.step != 0 {
                    return false;
                }
                if x >= self.conductor {
                    return true;
                }
                let idx = (x / self.step) as usize;
                idx < self.small_members.len() && self.small_members[idx]
            }
            _ => {
                if self.saturated {
                    self.in_saturation(v)
                } else {
                    self.generated_contains(v)
                }
            }
        }
    }

    /// The scaled semigroup `q * Gamma`.
    pub fn scaled(&self, q: i64) -> Self {
        match self.rank {
            1 => {
                let gens: Vec<i64> = self.generators.iter().map(|g| q * g[0]).collect();
                AffineSemigroup::numerical(&gens).unwrap()
            }
            _ => {
                let gens: Vec<[i64; 2]> = self
                    .generators
                    .iter()
                    .map(|g| [q * g[0], q * g[1]])
                    .collect();
                AffineSemigroup::toric(&gens).unwrap()
            }
        }
    }

    /// Rank 1 only: all elements in `[0, bound]`, ascending.
    pub fn elements_up_to(&self, bound: i64) -> Vec<i64> {
        debug_assert_eq!(self.rank, 1);
        (0..=bound).filter(|&x| self.contains(&[x])).collect()
    }
}
