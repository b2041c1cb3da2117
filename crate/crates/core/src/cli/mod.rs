//! Command-line front end. `execute_command` runs one subcommand and returns
//! the structured output instead of printing it, so the binary stays thin.

mod portrait;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use portrait::{render_graph, render_portrait, PortraitOptions};

use crate::combinat::{
    break_homoclinic, can_form_homoclinic, class_dimensions, enumerate_classes, h_chains, validate_class, HalfPlane,
    Realizability,
};
use crate::flow::{FlowError, Outcome};
use crate::invariants::{classify, residues_from_graph, Classification, InvariantsError, MetricGraph};
use crate::realize::{realize, witness, RealizationStatus, RealizeError, RealizeOptions};
use crate::stability::{check_landing_stability, protective_sector, StabilityError};
use crate::text::{format_complex, Document};
use crate::{CombinatorialDataSet, PolynomialVF};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNCERTAIN: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_INVALID_INPUT: i32 = 4;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "PVF_THREADS";

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Document,
    pub artifacts: Vec<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "pvf", version, about = "Classify and construct polynomial vector fields")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to $PVF_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PolyInput {
    /// `coeffs: a0,a1,...,1` or `roots: z1^m1, z2, ...`, or a file holding either.
    polynomial: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Combinatorial class and analytic invariants of a polynomial.
    Classify {
        #[command(flatten)]
        input: PolyInput,
        /// Also list every separatrix outcome.
        #[arg(long)]
        verbose: bool,
    },
    /// Invariants, residues read from them, and an optional metric-graph file.
    Invariants {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a polynomial from a metric-graph file or inline values.
    Realize {
        /// Metric-graph file.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        class: Option<String>,
        /// Comma separated positive reals.
        #[arg(long, requires = "class")]
        taus: Option<String>,
        /// Comma separated complex numbers such as `1+2i`.
        #[arg(long, requires = "class")]
        alphas: Option<String>,
        #[arg(long, default_value_t = 1024)]
        starts: usize,
        /// Write the polynomial here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All combinatorial classes of a degree.
    Enumerate {
        degree: usize,
        /// Realize a witness for each class to mark it confirmed.
        #[arg(long)]
        confirm: bool,
    },
    /// H-chains, homoclinic formation conditions and single-break predictions.
    Bifurcations {
        class: String,
        /// Only this formation query, `k,j`.
        #[arg(long)]
        form: Option<String>,
        /// Only this break, `k,j`.
        #[arg(long = "break")]
        break_pair: Option<String>,
        /// `+` or `-`.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        half_plane: String,
    },
    /// Protective sector and landing stability under random perturbations.
    Stability {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        sep: usize,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        verbose: bool,
    },
    /// Classify random polynomials from a coefficient box and count classes.
    Sweep {
        #[arg(long)]
        degree: usize,
        /// Real and imaginary parts of each free coefficient lie in [-box, box].
        #[arg(long = "box", default_value_t = 2.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Render an SVG phase portrait.
    Portrait {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 640)]
        size: u32,
        #[arg(long, default_value_t = 0)]
        streamlines: usize,
        #[arg(long)]
        radius: Option<f64>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    details: Vec<String>,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self { code: EXIT_INVALID_INPUT, message: message.to_string(), details: Vec::new() }
    }
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::UncertainClassification(g) => {
                Failure { code: EXIT_UNCERTAIN, message: "uncertain classification".into(), details: g.issues.clone() }
            }
            FlowError::IndexOutOfRange { .. } => Failure::input(e),
            other => Failure { code: EXIT_UNCERTAIN, message: other.to_string(), details: Vec::new() },
        }
    }
}

impl From<InvariantsError> for Failure {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Flow(f) => f.into(),
            InvariantsError::Text(_) | InvariantsError::InvalidMetricGraph(_) | InvariantsError::Combinat(_) => {
                Failure::input(e)
            }
            other => Failure { code: EXIT_UNCERTAIN, message: other.to_string(), details: Vec::new() },
        }
    }
}

impl From<RealizeError> for Failure {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::Invariants(i) => i.into(),
            RealizeError::InvalidTarget(_) | RealizeError::Combinat(_) | RealizeError::Poly(_) => Failure::input(e),
            other => Failure { code: EXIT_NO_CONVERGENCE, message: other.to_string(), details: Vec::new() },
        }
    }
}

impl From<StabilityError> for Failure {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Flow(f) => f.into(),
            StabilityError::Invariants(i) => i.into(),
            other => Failure::input(other),
        }
    }
}

fn read_polynomial(input: &PolyInput) -> Result<PolynomialVF, Failure> {
    let text = match std::fs::read_to_string(&input.polynomial) {
        Ok(contents) => contents,
        Err(_) => input.polynomial.clone(),
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Failure::input("empty polynomial input"))?;
    PolynomialVF::parse(line).map_err(Failure::input)
}

fn parse_pair(text: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.parse().map_err(Failure::input)?, b.parse().map_err(Failure::input)?)),
        _ => Err(Failure::input(format!("expected `k,j`, got `{text}`"))),
    }
}

fn write_artifact(path: &PathBuf, contents: &str, artifacts: &mut Vec<PathBuf>) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    artifacts.push(path.clone());
    Ok(())
}

fn describe_polynomial(doc: &mut Document, p: &PolynomialVF) {
    doc.push("degree", p.degree());
    doc.push("coeffs", p.coeffs_text().trim_start_matches("coeffs:").trim());
    doc.push("roots", p.roots_text().trim_start_matches("roots:").trim());
}

fn describe_classification(doc: &mut Document, c: &Classification, verbose: bool) {
    let dims = class_dimensions(c.class());
    doc.push("class", c.class());
    doc.push("dim", dims.dim);
    doc.push("codim", dims.codim);
    doc.push("m_star", dims.m_star);
    doc.push_list("taus", c.metric.taus().iter().map(|t| format!("{t:.12}")));
    doc.push_list("alphas", c.metric.alphas().iter().map(|a| format_complex(*a)));
    doc.push_list(
        "alpha_methods",
        c.alpha_methods.iter().map(|m| match m {
            crate::invariants::AlphaMethod::CrossingPath => "crossing_path",
            crate::invariants::AlphaMethod::Residues => "residues",
        }),
    );
    doc.push_list(
        "equilibria",
        c.graph.equilibria.iter().map(|e| format!("{} {} m={}", format_complex(e.position), e.kind, e.multiplicity)),
    );
    if verbose {
        for t in &c.graph.traces {
            let text = match &t.outcome {
                Outcome::Landing { equilibrium } => {
                    format!("lands at {}", format_complex(c.graph.equilibria[*equilibrium].position))
                }
                Outcome::Homoclinic { partner, tau } => format!("homoclinic to s_{partner}, tau {}", format_complex(*tau)),
                Outcome::Uncertain(d) => format!("uncertain: {d}"),
            };
            doc.push(format!("separatrix.{}", t.index), text);
        }
    }
}

fn set_threads(threads: Option<usize>) {
    let n = threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = n {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parse `argv` (program name first) and run the subcommand.
pub fn execute_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let mut payload = Document::new();
    payload.push("tool", "pvf");
    payload.push("version", env!("CARGO_PKG_VERSION"));
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID_INPUT,
            };
            payload.push("status", if code == EXIT_OK { "ok" } else { "usage_error" });
            payload.push("message", e.render().to_string().trim_end().replace('\n', "\n# "));
            return CommandResult { exit_code: code, payload, artifacts: Vec::new() };
        }
    };
    set_threads(cli.threads);
    payload.push("seed", cli.seed);
    payload.push("options", format!("{:?}", cli.command));
    let mut artifacts = Vec::new();
    match run(&cli, &mut payload, &mut artifacts) {
        Ok(code) => {
            payload.push("status", if code == EXIT_OK { "ok" } else { "failed" });
            CommandResult { exit_code: code, payload, artifacts }
        }
        Err(f) => {
            payload.push("status", "error");
            payload.push("error", &f.message);
            if !f.details.is_empty() {
                payload.push_list("diagnostics", f.details.iter());
            }
            CommandResult { exit_code: f.code, payload, artifacts }
        }
    }
}

fn run(cli: &Cli, doc: &mut Document, artifacts: &mut Vec<PathBuf>) -> Result<i32, Failure> {
    match &cli.command {
        Command::Classify { input, verbose } => {
            let p = read_polynomial(input)?;
            describe_polynomial(doc, &p);
            let c = classify(&p)?;
            describe_classification(doc, &c, *verbose);
            Ok(EXIT_OK)
        }
        Command::Invariants { input, out } => {
            let p = read_polynomial(input)?;
            describe_polynomial(doc, &p);
            let c = classify(&p)?;
            describe_classification(doc, &c, false);
            for r in residues_from_graph(&c.metric)? {
                let root = &c.graph.equilibria[c.face_roots[r.face]];
                doc.push(
                    format!("face.{}", r.face),
                    format!(
                        "{} m={} germs={:?} residue_graph={} residue_direct={} root={}",
                        r.kind,
                        r.multiplicity,
                        r.germs,
                        format_complex(r.residue),
                        format_complex(root.residue),
                        format_complex(root.position)
                    ),
                );
            }
            doc.push("residue_mismatch", format!("{:.3e}", crate::invariants::residue_mismatch(&c)?));
            if let Some(path) = out {
                write_artifact(path, &c.metric.to_text(), artifacts)?;
            }
            Ok(EXIT_OK)
        }
        Command::Realize { file, class, taus, alphas, starts, out } => {
            let target = match (file, class) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
                    MetricGraph::from_text(&text)?
                }
                (None, Some(class)) => {
                    let class = CombinatorialDataSet::parse(class).map_err(Failure::input)?;
                    let list = |s: &Option<String>| -> Vec<String> {
                        s.as_deref()
                            .map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
                            .unwrap_or_default()
                    };
                    let taus = list(taus)
                        .iter()
                        .map(|t| t.parse::<f64>().map_err(|_| Failure::input(format!("bad tau `{t}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    let alphas = list(alphas)
                        .iter()
                        .map(|a| crate::text::parse_complex(a).map_err(Failure::input))
                        .collect::<Result<Vec<Complex64>, _>>()?;
                    MetricGraph::new(class, taus, alphas)?
                }
                (None, None) => return Err(Failure::input("give a metric-graph file or --class")),
            };
            doc.push("target", target.class());
            let opts = RealizeOptions { starts: *starts, rng_seed: cli.seed, ..Default::default() };
            let r = realize(&target, None, &opts)?;
            describe_polynomial(doc, &r.polynomial);
            doc.push("realization", r.status);
            doc.push("residual", format!("{:.3e}", r.residual));
            doc.push("iterations", r.iterations);
            doc.push("achieved_class", r.achieved.class());
            if let Some(path) = out {
                write_artifact(path, &format!("{}\n", r.polynomial.coeffs_text()), artifacts)?;
            }
            Ok(if r.status == RealizationStatus::Converged { EXIT_OK } else { EXIT_NO_CONVERGENCE })
        }
        Command::Enumerate { degree, confirm } => {
            let classes = enumerate_classes(*degree).map_err(Failure::input)?;
            doc.push("degree", degree);
            doc.push("count", classes.len());
            let opts = RealizeOptions { rng_seed: cli.seed, ..Default::default() };
            let tags: Vec<Realizability> = if *confirm {
                classes
                    .par_iter()
                    .map(|c| if witness(c, &opts).is_some() { Realizability::Confirmed } else { Realizability::Candidate })
                    .collect()
            } else {
                classes.iter().map(|c| validate_class(c).realizability).collect()
            };
            for (i, (c, tag)) in classes.iter().zip(tags).enumerate() {
                let dims = class_dimensions(c);
                doc.push(format!("class.{i}"), format!("{c} dim={} codim={} {tag}", dims.dim, dims.codim));
            }
            Ok(EXIT_OK)
        }
        Command::Bifurcations { class, form, break_pair, half_plane } => {
            let c = CombinatorialDataSet::parse(class).map_err(Failure::input)?;
            doc.push("class", &c);
            let hp = match half_plane.as_str() {
                "+" | "upper" => HalfPlane::Upper,
                "-" | "lower" => HalfPlane::Lower,
                other => return Err(Failure::input(format!("half plane must be + or -, got `{other}`"))),
            };
            for (i, chain) in h_chains(&c).iter().enumerate() {
                doc.push(
                    format!("chain.{i}"),
                    format!(
                        "{:?} itinerary={} closed={} sign_changes={}",
                        chain.pairs,
                        chain.itinerary_text(),
                        chain.closed,
                        chain.sign_changes()
                    ),
                );
            }
            let queries: Vec<(usize, usize)> = match form {
                Some(text) => vec![parse_pair(text)?],
                None if break_pair.is_some() => Vec::new(),
                None => {
                    let mut q = Vec::new();
                    for &(k, _) in c.round() {
                        for &(_, j) in c.round() {
                            if !c.is_round(k, j) {
                                q.push((k, j));
                            }
                        }
                    }
                    q
                }
            };
            for (k, j) in queries {
                let r = can_form_homoclinic(&c, k, j).map_err(Failure::input)?;
                let conditions: Vec<String> =
                    r.conditions.iter().enumerate().map(|(m, s)| format!("T{} {s}", m + 1)).collect();
                doc.push(format!("form.{k}.{j}"), format!("possible={} conditions=[{}]", r.possible, conditions.join(", ")));
            }
            let breaks: Vec<(usize, usize)> = match break_pair {
                Some(text) => vec![parse_pair(text)?],
                None if form.is_some() => Vec::new(),
                None => c.round().to_vec(),
            };
            for pair in breaks {
                let planes = if break_pair.is_some() { vec![hp] } else { vec![HalfPlane::Upper, HalfPlane::Lower] };
                for plane in planes {
                    let key = format!("break.{}.{}.{plane}", pair.0, pair.1);
                    match break_homoclinic(&c, pair, plane) {
                        Ok(next) => doc.push(key, next),
                        Err(e) => doc.push(key, format!("unsupported: {e}")),
                    };
                }
            }
            Ok(EXIT_OK)
        }
        Command::Stability { input, sep, delta, trials, verbose } => {
            let p = read_polynomial(input)?;
            describe_polynomial(doc, &p);
            let sector = protective_sector(&p, *sep)?;
            doc.push("sector.case", sector.case);
            doc.push("sector.angle", format!("{:.12}", sector.angle));
            doc.push_list("sector.partial_sums", sector.partial_sums.iter().map(|a| format_complex(*a)));
            let r = check_landing_stability(&p, *sep, *delta, *trials, cli.seed)?;
            doc.push("trials", r.trials);
            doc.push("continued", r.continued);
            doc.push("elsewhere", r.elsewhere);
            doc.push("homoclinic", r.homoclinic);
            doc.push("uncertain", r.uncertain);
            doc.push("max_s_bound", format!("{:.3e}", r.max_s_bound));
            if let Some(t) = r.threshold {
                doc.push("threshold", format!("{t:.3e}"));
            }
            if *verbose {
                doc.push_list("outcomes", r.outcomes.iter().map(|o| format!("{o:?}")));
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { degree, half_width, samples } => {
            let summary = sweep(*degree, *half_width, *samples, cli.seed).map_err(Failure::input)?;
            doc.push("degree", degree);
            doc.push("samples", samples);
            doc.push("uncertain", summary.uncertain);
            doc.push("full_dimension", summary.full_dimension);
            doc.push("full_dimension_fraction", format!("{:.6}", summary.full_dimension_fraction()));
            for (class, count) in &summary.counts {
                doc.push(format!("count.{class}"), count);
            }
            Ok(EXIT_OK)
        }
        Command::Portrait { input, out, size, streamlines, radius } => {
            let p = read_polynomial(input)?;
            describe_polynomial(doc, &p);
            let opts = PortraitOptions { size: *size, streamlines: *streamlines, radius: *radius };
            let svg = render_portrait(&p, &opts)?;
            write_artifact(out, &svg, artifacts)?;
            doc.push("portrait", out.display());
            Ok(EXIT_OK)
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    pub counts: BTreeMap<String, usize>,
    pub uncertain: usize,
    pub full_dimension: usize,
}

impl SweepSummary {
    /// Share of classified samples whose class has full dimension.
    pub fn full_dimension_fraction(&self) -> f64 {
        let classified: usize = self.counts.values().sum();
        if classified == 0 {
            0.0
        } else {
            self.full_dimension as f64 / classified as f64
        }
    }
}

/// Classify `samples` monic centered polynomials whose free coefficients
/// are uniform in the square `[-half_width, half_width]^2`.
pub fn sweep(degree: usize, half_width: f64, samples: usize, seed: u64) -> Result<SweepSummary, String> {
    if degree < 2 {
        return Err(format!("degree {degree} is below 2"));
    }
    if !(half_width > 0.0) {
        return Err(format!("box half-width {half_width} must be positive"));
    }
    let outcomes: Vec<Option<CombinatorialDataSet>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut coeffs: Vec<Complex64> = (0..degree - 1)
                .map(|_| Complex64::new(rng.gen_range(-half_width..=half_width), rng.gen_range(-half_width..=half_width)))
                .collect();
            coeffs.push(Complex64::new(0.0, 0.0));
            coeffs.push(Complex64::new(1.0, 0.0));
            let p = PolynomialVF::from_coeffs(&coeffs).ok()?;
            classify(&p).ok().map(|c| c.class().clone())
        })
        .collect();
    let mut summary = SweepSummary::default();
    for o in outcomes {
        match o {
            Some(c) => {
                if class_dimensions(&c).dim == 2 * (degree - 1) {
                    summary.full_dimension += 1;
                }
                *summary.counts.entry(c.to_string()).or_default() += 1;
            }
            None => summary.uncertain += 1,
        }
    }
    Ok(summary)
}
