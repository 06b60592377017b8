//! End-to-end acceptance gate: one pass/fail line per criterion, all exact.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use frobfan::constellations::{
    closed_subsets, dimension_vector, g_cluster_from_graph, is_generic, theta_stability,
    theta_to_lambda, GConstellation, Stability, Theta,
};
use frobfan::fblowup::{compare_fans, fblowup_fan, quotient_toric_model};
use frobfan::fiber::{
    end_action_on_fiber, enumerate_monomial_quotients, fiber_at_origin,
    lambda_stability_check, LambdaStatus,
};
use frobfan::fpure::is_f_pure_hypersurface;
use frobfan::ghilb::{enumerate_g_graphs, hilb_fan};
use frobfan::modp;
use frobfan::modules::{end_ring_table, residue_decomposition, DecompositionBase};
use frobfan::poly::{is_prime, poly_parse, Monomial};
use frobfan::quotients::AbelianAction;
use frobfan::semigroup::AffineSemigroup;

/// Deterministic xorshift for randomized sub-checks.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// The tame small test matrix Z/n(1,a), n <= 7, one action per (n, a, p).
fn action_matrix() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n in 1..=7u64 {
        for a in 1..=n.max(1) {
            if n > 1 && (a >= n || gcd(a, n) != 1) {
                continue;
            }
            let a = if n == 1 { 0 } else { a };
            for p in [2u64, 3, 5] {
                if n % p != 0 {
                    out.push((n, a, p));
                }
            }
            if n == 1 {
                break;
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn criterion_1() -> Result<(), String> {
    for p in [3u64, 5, 7, 11, 13] {
        for d in 1..=3usize {
            let poly = (0..=d)
                .map(|i| format!("x{i}^2"))
                .collect::<Vec<_>>()
                .join("+");
            let f = poly_parse(&poly, p).map_err(|e| e.to_string())?;
            let r = is_f_pure_hypersurface(&f, p).map_err(|e| e.to_string())?;
            if !r.f_pure {
                return Err(format!("sum of squares p={p} d={d} not F-pure"));
            }
            let mut want = vec![0u32; d + 1];
            want[0] = (p - 1) as u32;
            want[1] = (p - 1) as u32;
            if r.witness != Some(Monomial::new(want)) {
                return Err(format!("wrong witness for p={p} d={d}: {:?}", r.witness));
            }
            // The witness coefficient is binom(p-1, (p-1)/2), nonzero mod p.
            let w = r.witness.unwrap();
            let g = f.pow(p - 1);
            if g.coefficient(&w) == 0 {
                return Err(format!("witness coefficient vanished p={p} d={d}"));
            }
        }
    }
    // Cusp against a direct-expansion oracle.
    let f = poly_parse("y^2-x^3", 3).map_err(|e| e.to_string())?;
    let g = f.mul(&f);
    let oracle_in_cubes = g.terms().all(|(m, _)| m.exponents().iter().any(|&e| e >= 3));
    let r = is_f_pure_hypersurface(&f, 3).map_err(|e| e.to_string())?;
    if r.f_pure || !oracle_in_cubes {
        return Err("cusp mod 3 must fail Fedder".into());
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    for (n, a, p) in action_matrix() {
        let action =
            AbelianAction::cyclic(n, &[1, a as i64], p).map_err(|e| e.to_string())?;
        let mut q = 1u64;
        while q < n {
            q *= p;
        }
        while q <= 64 {
            if !action
                .contains_all_irreducibles(q)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("missing irreducible for 1/{n}(1,{a}), p={p}, q={q}"));
            }
            q *= p;
        }
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for (n, a, p) in action_matrix() {
        let action =
            AbelianAction::cyclic(n, &[1, a as i64], p).map_err(|e| e.to_string())?;
        let mut q = 1u64;
        while q < n {
            q *= p;
        }
        while q <= 64 {
            let mult = action
                .pushforward_decomposition(q)
                .map_err(|e| e.to_string())?;
            if mult.contains(&0) || mult.iter().sum::<u64>() != q * q {
                return Err(format!("bad multiplicities for 1/{n}(1,{a}), q={q}: {mult:?}"));
            }
            q *= p;
        }
    }
    // Pinned table: Z/3(1,2), q = 4, computed via the box-count oracle.
    let action = AbelianAction::cyclic(3, &[1, 2], 2).map_err(|e| e.to_string())?;
    let mut oracle = [0u64; 3];
    for a1 in 0..4u64 {
        for a2 in 0..4u64 {
            oracle[((a1 + 2 * a2) % 3) as usize] += 1;
        }
    }
    let table = action.coinvariant_table(4).map_err(|e| e.to_string())?;
    if table.counts != oracle || table.counts != vec![6, 5, 5] {
        return Err(format!("coinvariant table {:?} != (6,5,5)", table.counts));
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let families: [&[i64]; 4] = [&[2, 3], &[2, 5], &[3, 4, 5], &[3, 5, 7]];
    for gens in families {
        let gamma = AffineSemigroup::numerical(gens).map_err(|e| e.to_string())?;
        for q in 2..=16i64 {
            let Some(p) = (2..=q as u64).find(|&p| is_prime(p) && {
                let mut m = q as u64;
                while m.is_multiple_of(p) {
                    m /= p;
                }
                m == 1
            }) else {
                continue;
            };
            if !gamma.contains(&[q]) {
                continue;
            }
            let pieces = residue_decomposition(&gamma, q, p, DecompositionBase::QthPowers)
                .map_err(|e| e.to_string())?;
            let table = end_ring_table(&pieces, q).map_err(|e| e.to_string())?;
            if !table.is_full_matrix_ring() {
                return Err(format!("expected matrix ring for {gens:?}, q={q}"));
            }
        }
    }
    // Negative case: q = 2 not in <3,4,5>.
    let gamma = AffineSemigroup::numerical(&[3, 4, 5]).map_err(|e| e.to_string())?;
    let pieces = residue_decomposition(&gamma, 2, 2, DecompositionBase::QthPowers)
        .map_err(|e| e.to_string())?;
    if end_ring_table(&pieces, 2)
        .map_err(|e| e.to_string())?
        .is_full_matrix_ring()
    {
        return Err("<3,4,5> with q=2 must not be a matrix ring".into());
    }
    // Pinned offsets for <2,3>, q = 4: c_j - c_i with c = (0, 5, 2, 3).
    let gamma = AffineSemigroup::numerical(&[2, 3]).map_err(|e| e.to_string())?;
    let pieces = residue_decomposition(&gamma, 4, 2, DecompositionBase::QthPowers)
        .map_err(|e| e.to_string())?;
    let table = end_ring_table(&pieces, 4).map_err(|e| e.to_string())?;
    let c = [0i64, 5, 2, 3];
    for i in 0..4 {
        for j in 0..4 {
            if table.offsets[i][j] != Some(c[j] - c[i]) {
                return Err(format!("offset ({i},{j}) = {:?}", table.offsets[i][j]));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    for (n, a, p, e) in [(2u64, 1u64, 3u64, 1u32), (3, 2, 2, 2), (5, 4, 11, 1), (7, 6, 2, 3)] {
        let action =
            AbelianAction::cyclic(n, &[1, a as i64], p).map_err(|e2| e2.to_string())?;
        let q = (p as i64).pow(e);
        let hilb = hilb_fan(&action).map_err(|e2| e2.to_string())?;
        let model = quotient_toric_model(&action).map_err(|e2| e2.to_string())?;
        let fb = fblowup_fan(&model, q).map_err(|e2| e2.to_string())?;
        let cmp = compare_fans(&hilb, &fb).map_err(|e2| e2.to_string())?;
        if !cmp.equal {
            return Err(format!("fans differ for 1/{n}(1,{a}), q={q}"));
        }
        if a == n - 1 && !(hilb.is_smooth() && fb.is_smooth()) {
            return Err(format!("A-type fan not smooth for n={n}"));
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let mut rng = Rng(0x5eed_cafe_f00d_1234);
    for (n, a, p) in action_matrix() {
        let action =
            AbelianAction::cyclic(n, &[1, a as i64], p).map_err(|e| e.to_string())?;
        if !action.is_small() {
            continue;
        }
        // Every G-graph cluster is stable for theta = (-(|G|-1), 1, ..., 1).
        let theta = Theta::new(
            std::iter::once(1 - n as i64)
                .chain(std::iter::repeat_n(1, n as usize - 1))
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        for graph in enumerate_g_graphs(&action).map_err(|e| e.to_string())? {
            let c = g_cluster_from_graph(&graph, &action).map_err(|e| e.to_string())?;
            if theta_stability(&c, &theta).map_err(|e| e.to_string())? != Stability::Stable
            {
                return Err(format!("unstable cluster for 1/{n}(1,{a})"));
            }
        }
        // Pairing identity on 100 randomized (module, theta) pairs.
        for _ in 0..100 {
            let mults: Vec<u64> = (0..n).map(|_| rng.below(5)).collect();
            let mut theta_vals: Vec<i64> =
                (0..n - 1).map(|_| rng.below(11) as i64 - 5).collect();
            theta_vals.push(-theta_vals.iter().sum::<i64>());
            let theta = Theta::new(theta_vals).map_err(|e| e.to_string())?;
            let lhs: i64 = mults
                .iter()
                .zip(theta.values())
                .map(|(&m, &t)| m as i64 * t)
                .sum();
            let lambda = theta_to_lambda(&action, &theta);
            let dim = dimension_vector(&action, &mults);
            let rhs: i64 = lambda.iter().zip(&dim).map(|(&l, &d)| l * d as i64).sum();
            if lhs != rhs {
                return Err(format!("pairing identity failed for 1/{n}(1,{a})"));
            }
        }
    }
    // Closed subsets against the F_2 subspace oracle for |G| <= 3 (Z/2 is
    // wild in characteristic 2, so it is checked over F_3).
    let candidates = [
        GConstellation::new(
            AbelianAction::cyclic(3, &[1, 2], 2).unwrap(),
            vec![vec![1, 1, 0], vec![0, 0, 1]],
        ),
        GConstellation::new(
            AbelianAction::cyclic(3, &[1, 2], 2).unwrap(),
            vec![vec![1, 0, 0], vec![0, 0, 0]],
        ),
        GConstellation::new(
            AbelianAction::cyclic(2, &[1, 1], 3).unwrap(),
            vec![vec![1, 0], vec![0, 1]],
        ),
    ];
    for c in candidates {
        let c = c.map_err(|e| e.to_string())?;
        let n = c.action().group().order() as usize;
        let p = c.action().p();
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
                        row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i)
                    })
                    .collect();
                sup.sort();
                sup.dedup();
                sup
            })
            .collect();
        supports.sort_by_key(|s| (s.len(), s.clone()));
        if supports != closed_subsets(&c).map_err(|e| e.to_string())? {
            return Err("closed_subsets disagrees with subspace oracle".into());
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    for k in 2..=16i64 {
        let lambda = vec![1 - k, 1];
        let alpha = vec![1u64, k as u64 - 1];
        if !is_generic(&lambda, &alpha).map_err(|e| e.to_string())? {
            return Err(format!("lambda = (1-{k}, 1) not generic"));
        }
    }
    for (gens, q) in [(vec![2i64, 3], 2i64), (vec![2, 3], 4), (vec![2, 5], 4)] {
        let gamma = AffineSemigroup::numerical(&gens).map_err(|e| e.to_string())?;
        let fiber = end_action_on_fiber(&gamma, q, 2).map_err(|e| e.to_string())?;
        let quotients = enumerate_monomial_quotients(&fiber, (1, q as usize - 1))
            .map_err(|e| e.to_string())?;
        if quotients.is_empty() {
            return Err(format!("no quotients for {gens:?}, q={q}"));
        }
        for m in &quotients {
            let r = lambda_stability_check(m, [1 - q, 1]).map_err(|e| e.to_string())?;
            if r.status != LambdaStatus::Stable {
                return Err(format!("unstable quotient for {gens:?}, q={q}"));
            }
            // Brute-force submodule oracle (p^dim <= 10^4 here throughout).
            let subs = modp::invariant_subspaces(m.p, m.dim(), &m.operators);
            let e1 = m.e1_indices[0];
            let violated = subs.iter().any(|s| {
                s.dim() > 0 && s.dim() < m.dim() && s.basis().iter().any(|r2| r2[e1] != 0)
            });
            if violated {
                return Err(format!("oracle disagrees for {gens:?}, q={q}"));
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let gamma = AffineSemigroup::numerical(&[2, 3]).map_err(|e| e.to_string())?;
    let f = fiber_at_origin(&gamma, 4, 2).map_err(|e| e.to_string())?;
    if f.basis != vec![0, 2, 3, 4, 5, 6, 7, 9] || f.dimension_pair() != (1, 7) {
        return Err(format!("fiber basis {:?}", f.basis));
    }
    let smooth = AffineSemigroup::numerical(&[1]).map_err(|e| e.to_string())?;
    for (q, p) in [(2i64, 2u64), (4, 2), (3, 3), (9, 3), (5, 5)] {
        let f = fiber_at_origin(&smooth, q, p).map_err(|e| e.to_string())?;
        if f.dim() != q as usize {
            return Err(format!("smooth fiber dim {} != q = {q}", f.dim()));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    type Criterion = fn() -> Result<(), String>;
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 Fedder sums of squares + cusp oracle", criterion_1),
        ("2 pushforward contains all irreducibles", criterion_2),
        ("3 pushforward fullness + pinned table", criterion_3),
        ("4 endomorphism matrix rings over curves", criterion_4),
        ("5 G-Hilbert fan equals F-blowup fan", criterion_5),
        ("6 cluster stability + pairing identity + subsets", criterion_6),
        ("7 genericity + quotient lambda-stability", criterion_7),
        ("8 origin fiber bases and dimensions", criterion_8),
    ];
    let mut failures = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(msg) => {
                println!("criterion {name}: FAIL ({msg})");
                failures.push(format!("{name}: {msg}"));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
