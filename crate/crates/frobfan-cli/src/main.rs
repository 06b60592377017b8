//! `frobfan` command-line interface: every pipeline of the library behind a
//! stable JSON surface, plus DOT emitters for quivers, staircases, and fans.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use frobfan::constellations::{
    g_cluster_from_graph, mckay_quiver, theta_stability, GConstellation, Stability, Theta,
};
use frobfan::fblowup::{compare_fans, fblowup_fan, quotient_toric_model};
use frobfan::fiber::{
    end_action_on_fiber, enumerate_monomial_quotients, fiber_at_origin,
    lambda_stability_check, LambdaStatus,
};
use frobfan::fpure::is_f_pure_hypersurface;
use frobfan::ghilb::{enumerate_g_graphs, hilb_fan, Fan2};
use frobfan::modules::{end_ring_table, residue_decomposition, DecompositionBase};
use frobfan::poly::poly_parse;
use frobfan::quotients::AbelianAction;
use frobfan::semigroup::AffineSemigroup;
use frobfan::Error;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "frobfan", version, about = "Exact Frobenius/McKay toolkit for toric and curve singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fedder-type F-purity checks.
    Fpure {
        #[command(subcommand)]
        sub: FpureCmd,
    },
    /// Abelian quotient singularities.
    Quotient {
        #[command(subcommand)]
        sub: QuotientCmd,
    },
    /// Toric surface F-blowups and fan comparisons.
    Toric {
        #[command(subcommand)]
        sub: ToricCmd,
    },
    /// Monomial curve endomorphism rings and fibers.
    Curve {
        #[command(subcommand)]
        sub: CurveCmd,
    },
    /// Constellation stability.
    Stability {
        #[command(subcommand)]
        sub: StabilityCmd,
    },
}

#[derive(Subcommand)]
enum FpureCmd {
    /// Check F-purity of the hypersurface k[x]/(f).
    Check {
        #[arg(long)]
        p: u64,
        /// Polynomial, e.g. "x^2+y^2".
        poly: String,
    },
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// Decompose the Frobenius pushforward of the quotient singularity.
    Decompose {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        e: u32,
    },
    /// Toric fan of the G-Hilbert scheme.
    Ghilb {
        #[command(flatten)]
        action: ActionArgs,
        /// Write the G-graphs as DOT staircase diagrams.
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// F-blowup fan of the quotient toric model.
    Fblowup {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        e: u32,
        /// Write the fan as DOT.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Compare the G-Hilbert fan with the F-blowup fan.
    Compare {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        e: u32,
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Endomorphism-ring table of a numerical semigroup ring.
    Endring {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Origin fiber of the Frobenius pushforward.
    Fiber {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Lambda-stability of fiber quotients of a target shape.
    Stability {
        #[command(flatten)]
        curve: CurveArgs,
        /// Target dimension vector, e.g. "1,3".
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// Theta-stability of a constellation from a JSON file.
    Check {
        #[command(flatten)]
        action: ActionArgs,
        /// JSON file {"coeff": {"x@0": 1, ...}}.
        #[arg(long)]
        constellation: String,
        /// Comma-separated theta values, e.g. "-2,1,1".
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Write the McKay quiver as DOT.
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Args)]
struct ActionArgs {
    /// Cyclic group action "1/n(a1,a2)".
    #[arg(long)]
    group: String,
    /// Characteristic; defaults to the smallest prime not dividing n.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct CurveArgs {
    /// Comma-separated semigroup generators, e.g. "2,3".
    #[arg(long)]
    semigroup: String,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    e: u32,
}

fn parse_group(s: &str) -> Result<(u64, Vec<i64>), Error> {
    let bad = || Error::InvalidInput(format!("group syntax is 1/n(a1,a2), got `{s}`"));
    let rest = s.trim().strip_prefix("1/").ok_or_else(bad)?;
    let open = rest.find('(').ok_or_else(bad)?;
    let n: u64 = rest[..open].parse().map_err(|_| bad())?;
    let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let weights: Vec<i64> = inner
        .split(',')
        .map(|w| w.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if weights.is_empty() {
        return Err(bad());
    }
    Ok((n, weights))
}

fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad {what} entry `{x}`")))
        })
        .collect()
}

fn default_p(n: u64) -> u64 {
    [2u64, 3, 5, 7, 11, 13]
        .into_iter()
        .find(|p| !n.is_multiple_of(*p))
        .unwrap_or(2)
}

fn make_action(args: &ActionArgs) -> Result<(AbelianAction, u64, Vec<i64>, u64), Error> {
    let (n, weights) = parse_group(&args.group)?;
    let p = args.p.unwrap_or_else(|| default_p(n));
    let action = AbelianAction::cyclic(n, &weights, p)?;
    Ok((action, n, weights, p))
}

fn fan_json(fan: &Fan2) -> Value {
    let rays = fan.rays();
    let cone_indices: Vec<Vec<usize>> = fan
        .cones
        .iter()
        .map(|c| {
            c.rays
                .iter()
                .map(|r| rays.iter().position(|x| x == r).unwrap())
                .collect()
        })
        .collect();
    json!({
        "lattice": {"n": fan.n, "a": fan.a},
        "denominator": fan.n,
        "rays_scaled": rays,
        "interior_rays": fan.interior_rays(),
        "cones": cone_indices,
        "smooth": fan.is_smooth(),
    })
}

fn fan_dot(fan: &Fan2) -> String {
    let rays = fan.rays();
    let mut out = String::from("graph fan {\n  node [shape=plaintext];\n  origin [label=\"0\"];\n");
    for (i, r) in rays.iter().enumerate() {
        out.push_str(&format!(
            "  r{i} [label=\"({}, {})/{}\"];\n  origin -- r{i};\n",
            r[0], r[1], fan.n
        ));
    }
    for (i, c) in fan.cones.iter().enumerate() {
        let a = rays.iter().position(|x| *x == c.rays[0]).unwrap();
        let b = rays.iter().position(|x| *x == c.rays[1]).unwrap();
        out.push_str(&format!("  r{a} -- r{b} [style=dashed, label=\"cone {i}\"];\n"));
    }
    out.push_str("}\n");
    out
}

fn run(cli: Cli) -> Result<Value, Error> {
    match cli.command {
        Command::Fpure { sub: FpureCmd::Check { p, poly } } => {
            let f = poly_parse(&poly, p)?;
            let report = is_f_pure_hypersurface(&f, p)?;
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"p": p, "poly": poly},
                "f_pure": report.f_pure,
                "witness": report.witness.map(|w| w.to_string()),
            }))
        }
        Command::Quotient { sub: QuotientCmd::Decompose { action, e } } => {
            let (act, n, weights, p) = make_action(&action)?;
            let q = p.pow(e);
            let table = act.coinvariant_table(q)?;
            let push = act.pushforward_decomposition(q)?;
            let full = act.contains_all_irreducibles(q)?;
            let characters: Vec<Vec<u64>> = act
                .group()
                .characters()
                .iter()
                .map(|c| c.residues().to_vec())
                .collect();
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"group": format!("1/{n}({})", join(&weights)), "p": p, "e": e},
                "q": q,
                "characters": characters,
                "coinvariants": table.counts,
                "pushforward": push,
                "full": full,
            }))
        }
        Command::Quotient { sub: QuotientCmd::Ghilb { action, dot } } => {
            let (act, n, weights, p) = make_action(&action)?;
            let fan = hilb_fan(&act)?;
            if let Some(path) = dot {
                fs::write(&path, staircases_dot(&act)?)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
            }
            let mut doc = fan_json(&fan);
            merge(&mut doc, json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"group": format!("1/{n}({})", join(&weights)), "p": p},
            }));
            Ok(doc)
        }
        Command::Toric { sub: ToricCmd::Fblowup { action, e, dot } } => {
            let (act, n, weights, p) = make_action(&action)?;
            let q = (p as i64).pow(e);
            let model = quotient_toric_model(&act)?;
            let fan = fblowup_fan(&model, q)?;
            if let Some(path) = dot {
                fs::write(&path, fan_dot(&fan))
                    .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
            }
            let mut doc = fan_json(&fan);
            merge(&mut doc, json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"group": format!("1/{n}({})", join(&weights)), "p": p, "e": e},
                "q": q,
            }));
            Ok(doc)
        }
        Command::Toric { sub: ToricCmd::Compare { action, e } } => {
            let (act, n, weights, p) = make_action(&action)?;
            let q = (p as i64).pow(e);
            let hilb = hilb_fan(&act)?;
            let model = quotient_toric_model(&act)?;
            let fb = fblowup_fan(&model, q)?;
            let cmp = compare_fans(&hilb, &fb)?;
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"group": format!("1/{n}({})", join(&weights)), "p": p, "e": e},
                "q": q,
                "equal": cmp.equal,
                "interior_rays": hilb.interior_rays(),
                "matched_rays": cmp.matched_rays,
            }))
        }
        Command::Curve { sub: CurveCmd::Endring { curve } } => {
            let (gamma, q) = make_curve(&curve)?;
            let pieces = residue_decomposition(&gamma, q, curve.p, DecompositionBase::QthPowers)?;
            let table = end_ring_table(&pieces, q)?;
            let blocks_free: Vec<Vec<bool>> = table
                .offsets
                .iter()
                .map(|row| row.iter().map(|o| o.is_some()).collect())
                .collect();
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"semigroup": curve.semigroup, "p": curve.p, "e": curve.e},
                "q": q,
                "matrix_ring": table.is_full_matrix_ring(),
                "offsets": table.offsets,
                "blocks_free": blocks_free,
                "piece_offsets": pieces.iter().map(|p| p.min_offset).collect::<Vec<_>>(),
            }))
        }
        Command::Curve { sub: CurveCmd::Fiber { curve } } => {
            let (gamma, q) = make_curve(&curve)?;
            let fiber = fiber_at_origin(&gamma, q, curve.p)?;
            let (a, b) = fiber.dimension_pair();
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"semigroup": curve.semigroup, "p": curve.p, "e": curve.e},
                "q": q,
                "basis": fiber.basis,
                "dim_vector": [a, b],
            }))
        }
        Command::Curve { sub: CurveCmd::Stability { curve, alpha } } => {
            let (gamma, q) = make_curve(&curve)?;
            let target = parse_i64_list(&alpha, "alpha")?;
            if target.len() != 2 || target.iter().any(|&x| x < 0) {
                return Err(Error::InvalidInput("alpha must be two nonnegative integers".into()));
            }
            let fiber = end_action_on_fiber(&gamma, q, curve.p)?;
            let quotients =
                enumerate_monomial_quotients(&fiber, (target[0] as usize, target[1] as usize))?;
            let lambda = [1 - (target[0] + target[1]), 1];
            let entries: Vec<Value> = quotients
                .iter()
                .map(|m| {
                    let r = lambda_stability_check(m, lambda)?;
                    Ok(json!({
                        "basis": m.basis,
                        "status": match r.status {
                            LambdaStatus::Stable => "stable",
                            LambdaStatus::NotStable => "not_stable",
                            LambdaStatus::NotAdmissible => "not_admissible",
                        },
                        "certificate": r.certificate,
                    }))
                })
                .collect::<Result<_, Error>>()?;
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"semigroup": curve.semigroup, "p": curve.p, "e": curve.e, "alpha": alpha},
                "q": q,
                "lambda": lambda,
                "quotients": entries,
            }))
        }
        Command::Stability { sub: StabilityCmd::Check { action, constellation, theta, dot } } => {
            let (act, n, weights, p) = make_action(&action)?;
            let coeff = read_constellation(&constellation, &act)?;
            let c = GConstellation::new(act.clone(), coeff)?;
            let theta_vals = parse_i64_list(&theta, "theta")?;
            let t = Theta::new(theta_vals)?;
            if let Some(path) = dot {
                fs::write(&path, quiver_dot(&act))
                    .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
            }
            let status = theta_stability(&c, &t)?;
            Ok(json!({
                "tool_version": TOOL_VERSION,
                "inputs": {"group": format!("1/{n}({})", join(&weights)), "p": p,
                           "constellation": constellation, "theta": theta},
                "status": match status {
                    Stability::Stable => "stable",
                    Stability::SemistableOnly => "semistable_only",
                    Stability::Unstable => "unstable",
                },
            }))
        }
    }
}

fn make_curve(curve: &CurveArgs) -> Result<(AffineSemigroup, i64), Error> {
    let gens = parse_i64_list(&curve.semigroup, "semigroup")?;
    let gamma = AffineSemigroup::numerical(&gens)?;
    Ok((gamma, (curve.p as i64).pow(curve.e)))
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(d), Value::Object(e)) = (doc, extra) {
        for (k, v) in e {
            d.insert(k, v);
        }
    }
}

/// Variable name for DOT/constellation keys: x, y, z, then x3, x4, ...
fn var_name(i: usize) -> String {
    match i {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        _ => format!("x{i}"),
    }
}

fn read_constellation(path: &str, action: &AbelianAction) -> Result<Vec<Vec<u64>>, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON in {path}: {e}")))?;
    let map = doc
        .get("coeff")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::InvalidInput("constellation file needs a `coeff` object".into()))?;
    let order = action.group().order() as usize;
    let mut coeff = vec![vec![0u64; order]; action.dim()];
    for (key, val) in map {
        let (var, chi) = key
            .split_once('@')
            .ok_or_else(|| Error::InvalidInput(format!("bad coeff key `{key}`; want var@char")))?;
        let i = (0..action.dim())
            .find(|&i| var_name(i) == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let chi: usize = chi
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad character index in `{key}`")))?;
        if chi >= order {
            return Err(Error::InvalidInput(format!("character index {chi} out of range")));
        }
        let v = val
            .as_u64()
            .ok_or_else(|| Error::InvalidInput(format!("coeff `{key}` must be a nonnegative integer")))?;
        coeff[i][chi] = v;
    }
    Ok(coeff)
}

fn quiver_dot(action: &AbelianAction) -> String {
    let q = mckay_quiver(action);
    let mut out = String::from("digraph mckay {\n");
    for (i, chi) in q.vertices.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{:?}\"];\n", chi.residues()));
    }
    for a in &q.arrows {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"];\n",
            a.from,
            a.to,
            var_name(a.variable)
        ));
    }
    out.push_str("}\n");
    out
}

fn staircases_dot(action: &AbelianAction) -> Result<String, Error> {
    let graphs = enumerate_g_graphs(action)?;
    let mut out = String::from("graph staircases {\n  node [shape=box];\n");
    for (gi, g) in graphs.iter().enumerate() {
        // Sanity: every enumerated graph yields a valid torus-fixed cluster.
        let _ = g_cluster_from_graph(g, action)?;
        let cells: Vec<String> = g
            .monomials()
            .iter()
            .map(|m| format!("({}, {})", m[0], m[1]))
            .collect();
        out.push_str(&format!("  g{gi} [label=\"{}\"];\n", cells.join(" ")));
    }
    out.push_str("}\n");
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version to stdout with success; keep that.
            if e.exit_code() == 0 {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(doc) => {
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_precondition() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
