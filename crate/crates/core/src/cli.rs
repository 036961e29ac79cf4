//! Command-line front end. Every subcommand prints one JSON report; exit code
//! 0 means the analysis completed, 1 that a property violation was found,
//! 2 an input or usage error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::contraction::{
    ball_projection_diameter, check_contraction, fellow_travel_radius, ContractingFamily, ContractionConstants,
};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{distance_matrix, Graph, PathSeq, QuasiConstant};
use crate::hyperbolicity::{four_point_delta, retraction_constants, thin_triangle_delta};
use crate::metric::geodesics_between;
use crate::product::{build_product, lemma_paths};
use crate::stability::{distortion_profile, stability_profile, stability_trend, EmbeddedSubset, SearchLimits};
use crate::torus::{
    annular_projection_distance, distance_formula_rhs, farey_adjacent, farey_geodesic, fit_comparison_constant,
    marking_distance, marking_neighbors, orbit_projection_bound, shadow, MappingClassMatrix, Marking, MarkingBall,
    Slope,
};

pub const SCHEMA_VERSION: &str = "coarse-lab/1";

#[derive(Parser, Debug)]
#[command(
    name = "coarse-lab",
    version,
    about = "Coarse-geometry experiments on graphs and the torus"
)]
pub struct Cli {
    /// Seed for randomly generated graphs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write a CSV trace to this file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Edge-list file: a header `n <count>` then one `u v` per line.
    #[arg(long, conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// Generator such as `grid:5x5`, `comb:8x3`, `tree:30`, `connected:30+10`.
    #[arg(long = "gen")]
    gen: Option<String>,
}

impl GraphSource {
    fn load(&self, seed: u64) -> Result<Graph> {
        match (&self.graph, &self.gen) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                Graph::parse_edge_list(&text)
            }
            (None, Some(desc)) => generators::from_description(desc, seed),
            (None, None) => Err(Error::Parse("one of --graph or --gen is required".into())),
        }
    }

    fn describe(&self) -> Value {
        match (&self.graph, &self.gen) {
            (Some(p), _) => json!({ "graph": p.display().to_string() }),
            (None, Some(d)) => json!({ "gen": d }),
            _ => Value::Null,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thin-triangle constant, four-point constant and optional retraction constants.
    Hyperbolicity {
        #[command(flatten)]
        source: GraphSource,
        /// Path for nearest-point retraction constants, e.g. `0,1,2,3`.
        #[arg(long)]
        path: Option<String>,
    },
    /// Stability profile of a subset.
    Stability {
        #[command(flatten)]
        source: GraphSource,
        /// Subset vertices, e.g. `0,24`.
        #[arg(long)]
        subset: String,
        #[arg(long = "L", default_value = "3")]
        l: QuasiConstant,
        /// Length cap; defaults to 4·d + 8 for the subset diameter d.
        #[arg(long)]
        cap: Option<usize>,
        /// Several length caps, reported as a trend.
        #[arg(long, conflicts_with = "cap")]
        caps: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        count_cap: usize,
        #[arg(long)]
        pauses: bool,
        /// Also report the distortion of the induced subgraph.
        #[arg(long)]
        distortion: bool,
    },
    /// Contraction conditions, fellow-travel radius and ball projections.
    Contraction {
        #[command(flatten)]
        source: GraphSource,
        /// Family file: `{"paths": [[..]], "projections": [..], "endpoints": [..]}`.
        #[arg(long, conflicts_with = "geodesics")]
        family: Option<PathBuf>,
        /// Family of first geodesics between every pair of these vertices.
        #[arg(long)]
        geodesics: Option<String>,
        /// `a,b,c` with `b` in (0, 1].
        #[arg(long, default_value = "1,1,2")]
        constants: ContractionConstants,
        /// Quasigeodesic constant for the fellow-travel radius.
        #[arg(long = "L")]
        l: Option<QuasiConstant>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        count_cap: usize,
        /// Ball projection `beta,x,B1`.
        #[arg(long)]
        ball: Option<String>,
    },
    /// Product graph and the diverging quasigeodesic pair.
    ProductDemo {
        #[arg(long, default_value = "path:5")]
        x: String,
        #[arg(long, default_value = "path:5")]
        y: String,
        /// Start `x1,y1`.
        #[arg(long, default_value = "0,0")]
        from: String,
        /// End `x2,y2`; defaults to the last vertex of each factor.
        #[arg(long)]
        to: Option<String>,
        /// Write the product graph as an edge list.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Farey graph queries.
    Farey {
        #[command(subcommand)]
        op: FareyOp,
    },
    /// Marking graph queries.
    Marking {
        #[command(subcommand)]
        op: MarkingOp,
    },
    /// Right-hand side of the distance formula, for one pair or fitted over a ball.
    DistanceFormula {
        #[arg(long, requires = "m2", conflicts_with = "radius")]
        m1: Option<Marking>,
        #[arg(long)]
        m2: Option<Marking>,
        /// Fit over all pairs within this radius of `--center`.
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long, default_value = "(0/1|1/0)")]
        center: Marking,
        #[arg(long, default_value = "3")]
        thresholds: String,
        #[arg(long, default_value_t = 200)]
        denominator_bound: i64,
    },
    /// Coboundedness and shadow growth along an orbit.
    Orbit {
        /// Row-major `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: MappingClassMatrix,
        #[arg(long, default_value = "(0/1|1/0)")]
        marking: Marking,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 200)]
        denominator_bound: i64,
    },
}

#[derive(Subcommand, Debug)]
enum FareyOp {
    /// Distance and one geodesic.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: Slope,
        #[arg(allow_hyphen_values = true)]
        b: Slope,
    },
    Adj {
        #[arg(allow_hyphen_values = true)]
        a: Slope,
        #[arg(allow_hyphen_values = true)]
        b: Slope,
    },
    /// Annular projection distance about `alpha`.
    Annular {
        #[arg(allow_hyphen_values = true)]
        alpha: Slope,
        #[arg(allow_hyphen_values = true)]
        beta: Slope,
        #[arg(allow_hyphen_values = true)]
        gamma: Slope,
    },
}

#[derive(Subcommand, Debug)]
enum MarkingOp {
    Neighbors {
        #[arg(allow_hyphen_values = true)]
        m: Marking,
    },
    Dist {
        #[arg(allow_hyphen_values = true)]
        m1: Marking,
        #[arg(allow_hyphen_values = true)]
        m2: Marking,
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
    Shadow {
        #[arg(allow_hyphen_values = true)]
        m: Marking,
    },
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        matrix: MappingClassMatrix,
        #[arg(allow_hyphen_values = true)]
        m: Marking,
    },
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: &'static str,
    inputs: Value,
    results: Value,
    flags: Value,
}

struct Outcome {
    report: Report,
    violation: bool,
    csv: Option<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} `{s}` in `{text}`")))
        })
        .collect()
}

fn outcome(command: &'static str, inputs: Value, results: Value, flags: Value, violation: bool) -> Outcome {
    Outcome {
        report: Report {
            version: SCHEMA_VERSION,
            command,
            inputs,
            results,
            flags,
        },
        violation,
        csv: None,
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Hyperbolicity { source, path } => {
            let g = source.load(seed)?;
            let dm = distance_matrix(&g)?;
            let thin = thin_triangle_delta(&g, &dm);
            let mut results = json!({
                "delta": thin.delta,
                "witness": to_value(&thin.witness),
                "four_point_delta": four_point_delta(&dm),
                "diameter": dm.diameter(),
            });
            if let Some(p) = path {
                let p = PathSeq::new(&g, parse_list(p, "vertex")?)?;
                results["retraction"] = to_value(&retraction_constants(&dm, &p));
            }
            let inputs = json!({ "source": source.describe(), "seed": seed, "path": path });
            Ok(outcome("hyperbolicity", inputs, results, json!({}), false))
        }
        Command::Stability {
            source,
            subset,
            l,
            cap,
            caps,
            count_cap,
            pauses,
            distortion,
        } => {
            let g = source.load(seed)?;
            let subset: Vec<usize> = parse_list(subset, "vertex")?;
            let s = EmbeddedSubset::induced(g, &subset)?;
            let d = s.subset_diameter() as usize;
            let mut inputs = json!({
                "source": source.describe(), "seed": seed, "subset": subset, "L": l.to_string(),
                "count_cap": count_cap, "pauses": pauses,
            });
            let mut out = if let Some(caps) = caps {
                let caps: Vec<usize> = parse_list(caps, "cap")?;
                inputs["caps"] = json!(caps);
                let trend = stability_trend(&s, *l, &caps, *count_cap, &[])?;
                let lower = trend.profiles.iter().any(|p| p.lower_bound);
                let csv = std::iter::once("length_cap,r_observed,lower_bound".to_string())
                    .chain(
                        trend
                            .profiles
                            .iter()
                            .map(|p| format!("{},{},{}", p.limits.length_cap, p.r_observed, p.lower_bound)),
                    )
                    .collect::<Vec<_>>()
                    .join("\n");
                let mut o = outcome(
                    "stability",
                    inputs,
                    to_value(&trend),
                    json!({ "lower_bound": lower }),
                    false,
                );
                o.csv = Some(csv + "\n");
                o
            } else {
                let length_cap = cap.unwrap_or(4 * d + 8);
                inputs["length_cap"] = json!(length_cap);
                let limits = SearchLimits::new(length_cap, *count_cap).with_pauses(*pauses);
                let profile = stability_profile(&s, *l, &limits, &[])?;
                let flags = json!({ "lower_bound": profile.lower_bound });
                outcome("stability", inputs, to_value(&profile), flags, false)
            };
            if *distortion {
                out.report.results["distortion"] = to_value(&distortion_profile(&s)?);
            }
            Ok(out)
        }
        Command::Contraction {
            source,
            family,
            geodesics,
            constants,
            l,
            cap,
            count_cap,
            ball,
        } => {
            let g = source.load(seed)?;
            let fam = match (family, geodesics) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                    ContractingFamily::from_json(g, &text)?
                }
                (None, Some(list)) => {
                    let marked: Vec<usize> = parse_list(list, "vertex")?;
                    let dm = distance_matrix(&g)?;
                    let mut paths = Vec::new();
                    for (i, &a) in marked.iter().enumerate() {
                        for &b in &marked[i + 1..] {
                            let d = dm.get(a, b) as usize;
                            paths.push(geodesics_between(&g, &dm, a, b, d.max(1))?.paths.remove(0));
                        }
                    }
                    ContractingFamily::new(g, paths, Some(marked))?
                }
                (None, None) => return Err(Error::Parse("one of --family or --geodesics is required".into())),
            };
            let report = check_contraction(&fam, *constants);
            let mut results = json!({ "check": to_value(&report) });
            let mut flags = json!({ "lower_bound": false });
            let longest = fam.paths().iter().map(|p| p.length()).max().unwrap_or(0);
            let length_cap = cap.unwrap_or(4 * longest + 8);
            if let Some(l) = l {
                let ft = fellow_travel_radius(&fam, *l, &SearchLimits::new(length_cap, *count_cap))?;
                flags["lower_bound"] = json!(ft.lower_bound);
                results["fellow_travel"] = to_value(&ft);
            }
            if let Some(spec) = ball {
                let v: Vec<u32> = parse_list(spec, "ball parameter")?;
                let [beta, x, b1] = v[..] else {
                    return Err(Error::Parse(format!("expected `beta,x,B1`, got `{spec}`")));
                };
                results["ball_projection"] = to_value(&ball_projection_diameter(&fam, beta as usize, x as usize, b1)?);
            }
            let inputs = json!({
                "source": source.describe(), "seed": seed, "constants": to_value(constants),
                "L": l.map(|l| l.to_string()), "length_cap": length_cap, "count_cap": count_cap,
                "family": family.as_ref().map(|p| p.display().to_string()), "geodesics": geodesics,
            });
            Ok(outcome("contraction", inputs, results, flags, !report.passes))
        }
        Command::ProductDemo { x, y, from, to, export } => {
            let gx = generators::from_description(x, seed)?;
            let gy = generators::from_description(y, seed)?;
            let (nx, ny) = (gx.vertex_count(), gy.vertex_count());
            let z = build_product(gx, gy)?;
            let pair = |s: &str| -> Result<(usize, usize)> {
                let v: Vec<usize> = parse_list(s, "coordinate")?;
                match v[..] {
                    [a, b] => Ok((a, b)),
                    _ => Err(Error::Parse(format!("expected `x,y`, got `{s}`"))),
                }
            };
            let z1 = pair(from)?;
            let z2 = match to {
                Some(t) => pair(t)?,
                None => (nx - 1, ny - 1),
            };
            if let Some(path) = export {
                std::fs::write(path, z.graph().to_edge_list())
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            let lp = lemma_paths(&z, z1, z2)?;
            let violation = !(lp.gamma_a_check.holds
                && lp.gamma_b_check.holds
                && lp.gamma_b_length.holds
                && lp.hausdorff >= lp.certified_hausdorff_lower_bound);
            let inputs = json!({ "x": x, "y": y, "from": [z1.0, z1.1], "to": [z2.0, z2.1], "seed": seed });
            let results = json!({
                "vertex_id": "x * |Y| + y",
                "vertex_count": z.graph().vertex_count(),
                "distance": z.distances().get(z.id(z1.0, z1.1), z.id(z2.0, z2.1)),
                "paths": to_value(&lp),
            });
            Ok(outcome("product-demo", inputs, results, json!({}), violation))
        }
        Command::Farey { op } => {
            let (inputs, results) = match op {
                FareyOp::Dist { a, b } => {
                    let path = farey_geodesic(*a, *b);
                    (
                        json!({ "op": "dist", "a": a, "b": b }),
                        json!({ "distance": path.len() - 1, "geodesic": path }),
                    )
                }
                FareyOp::Adj { a, b } => (
                    json!({ "op": "adj", "a": a, "b": b }),
                    json!({ "adjacent": farey_adjacent(*a, *b) }),
                ),
                FareyOp::Annular { alpha, beta, gamma } => {
                    let ad = annular_projection_distance(*alpha, *beta, *gamma)?;
                    (
                        json!({ "op": "annular", "alpha": alpha, "beta": beta, "gamma": gamma }),
                        to_value(&ad),
                    )
                }
            };
            Ok(outcome("farey", inputs, results, json!({}), false))
        }
        Command::Marking { op } => {
            let mut flags = json!({});
            let (inputs, results) = match op {
                MarkingOp::Neighbors { m } => {
                    let [t, ti, f] = marking_neighbors(m);
                    (
                        json!({ "op": "neighbors", "marking": m }),
                        json!({ "twist": t, "inverse_twist": ti, "flip": f }),
                    )
                }
                MarkingOp::Dist { m1, m2, cap } => {
                    let d = marking_distance(m1, m2, *cap);
                    flags["lower_bound"] = json!(!d.exact);
                    (json!({ "op": "dist", "m1": m1, "m2": m2, "cap": cap }), to_value(&d))
                }
                MarkingOp::Shadow { m } => (json!({ "op": "shadow", "marking": m }), json!({ "shadow": shadow(m) })),
                MarkingOp::Apply { matrix, m } => (
                    json!({ "op": "apply", "matrix": matrix, "marking": m }),
                    json!({ "marking": m.apply(matrix) }),
                ),
            };
            Ok(outcome("marking", inputs, results, flags, false))
        }
        Command::DistanceFormula {
            m1,
            m2,
            radius,
            center,
            thresholds,
            denominator_bound,
        } => {
            let thresholds: Vec<u32> = parse_list(thresholds, "threshold")?;
            if let (Some(m1), Some(m2)) = (m1, m2) {
                let rows = thresholds
                    .iter()
                    .map(|&a| distance_formula_rhs(m1, m2, a, *denominator_bound))
                    .collect::<Result<Vec<_>>>()?;
                let truncated = rows.iter().any(|r| r.truncated);
                let inputs =
                    json!({ "m1": m1, "m2": m2, "thresholds": thresholds, "denominator_bound": denominator_bound });
                return Ok(outcome(
                    "distance-formula",
                    inputs,
                    to_value(&rows),
                    json!({ "truncated": truncated }),
                    false,
                ));
            }
            let radius = radius.ok_or_else(|| Error::Parse("give --m1/--m2 or --radius".into()))?;
            let ball = MarkingBall::new(*center, radius);
            let table = MarkingBall::new(*center, 2 * radius);
            let pts = ball.markings();
            let mut lipschitz_violations = 0usize;
            let mut samples: Vec<Vec<(u32, u64)>> = vec![Vec::new(); thresholds.len()];
            let mut truncated = false;
            for a in pts {
                for b in pts {
                    let d = table
                        .distance(a, b)
                        .expect("pairs in a ball lie within twice its radius");
                    for (slot, &t) in samples.iter_mut().zip(&thresholds) {
                        let r = distance_formula_rhs(a, b, t, *denominator_bound)?;
                        truncated |= r.truncated;
                        slot.push((d, r.rhs));
                        if t == thresholds[0] && r.farey > 4 * d + 4 {
                            lipschitz_violations += 1;
                        }
                    }
                }
            }
            let fits: Vec<Value> = thresholds
                .iter()
                .zip(&samples)
                .map(|(&t, s)| json!({ "threshold": t, "k_fit": fit_comparison_constant(s) }))
                .collect();
            let csv = std::iter::once("threshold,k_fit".to_string())
                .chain(fits.iter().map(|f| format!("{},{}", f["threshold"], f["k_fit"])))
                .collect::<Vec<_>>()
                .join("\n");
            let inputs = json!({
                "center": center, "radius": radius, "thresholds": thresholds, "denominator_bound": denominator_bound,
            });
            let results = json!({
                "markings": pts.len(), "pairs": pts.len() * pts.len(), "fits": fits,
                "shadow_lipschitz_violations": lipschitz_violations,
            });
            let mut o = outcome(
                "distance-formula",
                inputs,
                results,
                json!({ "truncated": truncated }),
                lipschitz_violations > 0,
            );
            o.csv = Some(csv + "\n");
            Ok(o)
        }
        Command::Orbit {
            matrix,
            marking,
            kmax,
            denominator_bound,
        } => {
            let ob = orbit_projection_bound(*matrix, *marking, *kmax, *denominator_bound)?;
            let csv = std::iter::once("k,projection_max,shadow_distance".to_string())
                .chain(
                    ob.steps
                        .iter()
                        .map(|s| format!("{},{},{}", s.k, s.projection_max, s.shadow_distance)),
                )
                .collect::<Vec<_>>()
                .join("\n");
            let inputs = json!({
                "matrix": matrix, "marking": marking, "kmax": kmax, "denominator_bound": denominator_bound,
            });
            let mut o = outcome("orbit", inputs, to_value(&ob), json!({}), false);
            o.csv = Some(csv + "\n");
            Ok(o)
        }
    }
}

/// Runs a parsed invocation, returning the exit code and standard output.
pub fn run(cli: &Cli) -> (i32, String) {
    match execute(cli) {
        Ok(out) => {
            if let (Some(path), Some(csv)) = (&cli.csv, &out.csv) {
                if let Err(e) = std::fs::write(path, csv) {
                    return (2, format!("error: cannot write {}: {e}\n", path.display()));
                }
            }
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialise");
            (i32::from(out.violation), text + "\n")
        }
        Err(e) => (2, format!("error: {e}\n")),
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.render().to_string())
        }
    }
}
