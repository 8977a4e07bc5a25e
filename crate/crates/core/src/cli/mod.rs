//! The `spectral-walks` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a numeric or statistical
//! check fails (the report is still written), 2 for invalid input.

pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{
    cantor_filter, cantor_filter_exact, lowpass_check, qmf_check, solenoid_covariance_exact, solenoid_covariance_mc,
    solenoid_walk, tightness_defect, transfer_apply, w_from_filter, DyadicAngle, FilterCoeffs, SolenoidStart,
    TrigPoly,
};
use crate::encoding::{canonical_int, canonical_nat, encode_int, encode_nat};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::gram::{growth_table, kl_gram_check, r_function_energy, reciprocity_spectrum, GramSpectrum, Normalization};
use crate::linalg::SquareMatrix;
use crate::path_measure::{covariance_mc, markov_check, simulate, FiniteMarkov, SIGMA_THRESHOLD};
use crate::tree::{DyadicTree, Word};
use output::{config_hash, Cell, Check, Format, Report, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(name = "spectral-walks", version, about = "Transfer operators, dipole spectra and path-space checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub out: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,

    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Dipoles and word encodings on the dyadic tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Gram matrices of dipoles and their spectra.
    #[command(subcommand)]
    Spectra(SpectraCmd),
    /// Random walks on weighted graphs.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Scaling filters and their transfer operators.
    #[command(subcommand)]
    Wavelet(WaveletCmd),
    /// Random walks on backward orbits of t -> 2t.
    #[command(subcommand)]
    Solenoid(SolenoidCmd),
    /// Invariant suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand, Serialize)]
pub enum TreeCmd {
    /// Values of v_x and its Laplacian on a truncated tree.
    Dipole {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
        depth: u32,
    },
    /// Integer encodings of binary words.
    Encode {
        /// Comma-separated words; `-` is the origin.
        #[arg(long, allow_hyphen_values = true)]
        words: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum SpectraCmd {
    /// Gram matrix, eigenpairs and R_F for a word family.
    Gram {
        #[arg(long)]
        words: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
        depth: u32,
    },
    /// Sum of squared eigenvector means for nested families.
    Growth {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=8))]
        max_depth: u32,
    },
    /// Energy-route and matrix-route Rayleigh quotients.
    Reciprocity {
        #[arg(long)]
        words: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=16))]
        depth: u32,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum WalkCmd {
    /// Simulate the conductance walk and compare estimators with exact values.
    Sim {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..=100_000))]
        steps: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
        paths: u64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FilterArgs {
    /// Comma-separated real coefficients a_0, a_1, ...
    #[arg(long, conflicts_with = "filter")]
    pub coeffs: Option<String>,
    /// JSON file {"a": [...], "degree": 2}.
    #[arg(long)]
    pub filter: Option<PathBuf>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub degree: u32,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum WaveletCmd {
    /// Orthogonality and normalization residuals.
    Qmf {
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// 1 - sum |phihat(t+n)|^2 over |n| <= K.
    Tightness {
        #[command(flatten)]
        filter: FilterArgs,
        /// Comma-separated points.
        #[arg(long, default_value = "0.3", allow_hyphen_values = true)]
        t: String,
        #[arg(long = "K", default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        k: u32,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=60))]
        depth: u32,
        /// Largest defect counted as tight.
        #[arg(long, default_value_t = 1e-3, value_parser = positive_finite)]
        tolerance: f64,
    },
    /// The Cantor filter of scaling degree 3.
    Cantor {
        /// Verify the scaling law and the low-pass test.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum SolenoidCmd {
    /// Walk on dyadic angles with preimage weights W.
    Walk {
        /// `haar`, `half`, or a filter JSON file.
        #[arg(long, default_value = "half")]
        w: String,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(2..=100))]
        steps: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
        paths: u64,
        /// `uniform:<level>` or a point `<numerator>/<2^level>`. Defaults to
        /// `0` for `haar` and `uniform:10` otherwise.
        #[arg(long)]
        start: Option<String>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum VerifyCmd {
    /// Run the invariant suite.
    All {
        /// Exact-arithmetic checks only, smaller ranges.
        #[arg(long)]
        quick: bool,
    },
}

/// Parses `argv`, runs the command, writes the report, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_INVALID,
            };
        }
    };
    let result = execute(&cli).and_then(|report| {
        let text = report.render(cli.out)?;
        match &cli.output {
            Some(path) => std::fs::write(path, &text)?,
            None => print!("{text}"),
        }
        Ok(report.passes())
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report> {
    let hash = config_hash(cli)?;
    let mut report = Report::new(command_name(&cli.command), cli.seed, hash);
    match &cli.command {
        Command::Tree(TreeCmd::Dipole { word, depth }) => tree_dipole(&mut report, word, *depth as usize)?,
        Command::Tree(TreeCmd::Encode { words }) => tree_encode(&mut report, words)?,
        Command::Spectra(SpectraCmd::Gram { words, depth }) => spectra_gram(&mut report, words, *depth as usize)?,
        Command::Spectra(SpectraCmd::Growth { max_depth }) => spectra_growth(&mut report, *max_depth as usize)?,
        Command::Spectra(SpectraCmd::Reciprocity { words, depth }) => {
            spectra_reciprocity(&mut report, words, *depth as usize)?
        }
        Command::Walk(WalkCmd::Sim { graph, steps, paths }) => {
            walk_sim(&mut report, graph, *steps as usize, *paths as usize, cli.seed)?
        }
        Command::Wavelet(WaveletCmd::Qmf { filter }) => wavelet_qmf(&mut report, filter)?,
        Command::Wavelet(WaveletCmd::Tightness { filter, t, k, depth, tolerance }) => {
            wavelet_tightness(&mut report, filter, t, *k, *depth, *tolerance)?
        }
        Command::Wavelet(WaveletCmd::Cantor { check }) => wavelet_cantor(&mut report, *check)?,
        Command::Solenoid(SolenoidCmd::Walk { w, steps, paths, start }) => {
            let start = start.as_deref().unwrap_or(if w == "haar" { "0" } else { "uniform:10" });
            solenoid(&mut report, w, *steps as usize, *paths as usize, start, cli.seed)?
        }
        Command::Verify(VerifyCmd::All { quick }) => {
            report.checks = verify::run_suite(*quick)?;
        }
    }
    Ok(report)
}

fn positive_finite(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("{s:?} is not a positive finite number")),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Tree(TreeCmd::Dipole { .. }) => "tree dipole",
        Command::Tree(TreeCmd::Encode { .. }) => "tree encode",
        Command::Spectra(SpectraCmd::Gram { .. }) => "spectra gram",
        Command::Spectra(SpectraCmd::Growth { .. }) => "spectra growth",
        Command::Spectra(SpectraCmd::Reciprocity { .. }) => "spectra reciprocity",
        Command::Walk(WalkCmd::Sim { .. }) => "walk sim",
        Command::Wavelet(WaveletCmd::Qmf { .. }) => "wavelet qmf",
        Command::Wavelet(WaveletCmd::Tightness { .. }) => "wavelet tightness",
        Command::Wavelet(WaveletCmd::Cantor { .. }) => "wavelet cantor",
        Command::Solenoid(SolenoidCmd::Walk { .. }) => "solenoid walk",
        Command::Verify(VerifyCmd::All { .. }) => "verify all",
    }
}

fn parse_words(list: &str) -> Result<Vec<Word>> {
    list.split(',').map(|s| Word::parse_base(s.trim(), 2)).collect()
}

fn parse_reals(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("{s:?} is not a finite number")))
        })
        .collect()
}

fn tree_dipole(report: &mut Report, word: &str, depth: usize) -> Result<()> {
    let x = Word::parse_base(word, 2)?;
    let tree = DyadicTree::<i64>::new(depth)?;
    let v = tree.dipole(&x)?;
    let lap = tree.graph().laplacian(&v)?;
    let origin = Word::origin();
    let mut table = Table::new("dipole", &["vertex", "v_x", "laplacian", "expected"]);
    let mut defect = 0i64;
    for (i, w) in tree.words().iter().enumerate() {
        let expected = (w == &x) as i64 - (w == &origin) as i64;
        defect += (lap[i] - expected).abs();
        table.push(vec![w.to_cli_string().into(), v[i].into(), lap[i].into(), expected.into()]);
    }
    report.tables.push(table);
    report.checks.push(Check::exact("Laplacian of v_x equals delta_x - delta_o", defect as f64));
    let norm = tree.graph().energy_norm_sq(&v)?;
    report.checks.push(Check::exact("energy norm of v_x minus l(x)", (norm - x.len() as i64).abs() as f64));
    Ok(())
}

fn tree_encode(report: &mut Report, list: &str) -> Result<()> {
    let mut table = Table::new("encodings", &["word", "nat", "canonical_nat", "int", "canonical_int"]);
    for w in parse_words(list)? {
        let (int, canon) = if w.is_origin() {
            (Cell::Text(String::new()), Cell::Text(String::new()))
        } else {
            (encode_int(&w)?.into(), canonical_int(&w)?.to_cli_string().into())
        };
        table.push(vec![w.to_cli_string().into(), encode_nat(&w)?.into(), canonical_nat(&w).to_cli_string().into(), int, canon]);
    }
    report.tables.push(table);
    Ok(())
}

fn max_abs_offdiag_gap(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
    let mut gap: f64 = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            gap = gap.max((a.get(i, j) - b.get(i, j)).abs());
        }
    }
    gap
}

fn spectra_gram(report: &mut Report, list: &str, depth: usize) -> Result<()> {
    let words = parse_words(list)?;
    let gs = GramSpectrum::from_words(&words)?;
    let n = words.len();
    let mut columns = vec!["word".to_string()];
    columns.extend(words.iter().map(|w| format!("M_{}", w.to_cli_string())));
    columns.push("lambda".into());
    columns.extend((0..n).map(|i| format!("xi_{}", i + 1)));
    columns.extend(["mean".to_string(), "R_F".to_string()]);
    let mut table = Table::with_columns("gram", columns);
    let means = gs.means();
    let r = gs.r_function();
    for i in 0..n {
        let mut row: Vec<Cell> = vec![words[i].to_cli_string().into()];
        row.extend((0..n).map(|j| Cell::Int(gs.matrix().get(i, j) as i64)));
        row.push(gs.eigenvalues()[i].into());
        row.extend(gs.eigenvectors()[i].iter().map(|x| Cell::Num(*x)));
        row.push(means[i].into());
        row.push(r[i].1.into());
        table.push(row);
    }
    report.tables.push(table);
    report.checks.push(Check::at_most("eigen residual / |M|_F", gs.residual(), 1e-10));
    let lambda_min = *gs.eigenvalues().last().expect("nonempty family");
    report.checks.push(Check::flag("M_F positive definite", lambda_min > 0.0));
    let kl_w = kl_gram_check(&gs, depth, Normalization::W)?;
    let inv = SquareMatrix::diagonal(&gs.eigenvalues().iter().map(|l| 1.0 / l).collect::<Vec<_>>());
    report.checks.push(Check::at_most("KL energy Gram vs diag(1/lambda)", max_abs_offdiag_gap(&kl_w, &inv), 1e-8));
    let energy = r_function_energy(&gs, depth)?;
    let gap = r.iter().zip(&energy).map(|((_, a), b)| (a - b).abs()).fold(0.0, f64::max);
    report.checks.push(Check::at_most("R_F vs energy route", gap, 1e-8));
    Ok(())
}

fn spectra_growth(report: &mut Report, max_depth: usize) -> Result<()> {
    let mut table = Table::new("growth", &["depth", "size", "sum_mean_sq"]);
    let mut worst: f64 = 0.0;
    for row in growth_table(max_depth)? {
        worst = worst.max((row.sum - row.size as f64).abs());
        table.push(vec![row.depth.into(), row.size.into(), row.sum.into()]);
    }
    report.tables.push(table);
    report.checks.push(Check::at_most("sum of squared means equals family size", worst, 1e-8));
    Ok(())
}

fn spectra_reciprocity(report: &mut Report, list: &str, depth: usize) -> Result<()> {
    let words = parse_words(list)?;
    let pairs = reciprocity_spectrum(&words, depth)?;
    let mut table = Table::new("reciprocity", &["lambda", "energy_rayleigh", "matrix_reciprocal"]);
    let mut worst: f64 = 0.0;
    let mut positive = true;
    for p in &pairs {
        worst = worst.max((p.energy - p.matrix).abs());
        positive &= p.energy > 0.0 && p.matrix > 0.0;
        table.push(vec![p.lambda.into(), p.energy.into(), p.matrix.into()]);
    }
    report.tables.push(table);
    report.checks.push(Check::at_most("energy route vs matrix route", worst, 1e-9));
    report.checks.push(Check::flag("all values positive", positive));
    Ok(())
}

fn walk_sim(report: &mut Report, path: &PathBuf, steps: usize, paths: usize, seed: u64) -> Result<()> {
    let g = WeightedGraph::from_json_file(path)?;
    let fm = FiniteMarkov::from_graph(&g);
    let o = g.origin();
    let n = g.vertex_count();
    let delta_o: Vec<f64> = (0..n).map(|x| (x == o) as u8 as f64).collect();
    let mut near_o = vec![0.0; n];
    for (y, _) in g.neighbors(o) {
        near_o[*y] = 1.0;
    }
    let hops: Vec<f64> = g.hop_distances(o).into_iter().map(|d| d as f64).collect();
    let functions = [("delta_o", &delta_o), ("neighbors_o", &near_o), ("hops_o", &hops)];
    let pairs = [(0, 0), (0, 1), (2, 2)];
    let ens = simulate(&fm, steps, paths, seed)?;
    let mut table = Table::new("covariance", &["f1", "f2", "n", "estimate", "exact", "se", "sigmas"]);
    let mut worst: f64 = 0.0;
    for (a, b) in pairs {
        for step in [0, steps / 2, steps - 1] {
            let est = covariance_mc(&ens, functions[a].1, functions[b].1, step)?;
            let exact = fm.covariance_exact(functions[a].1, functions[b].1, step)?;
            let sigmas = est.sigmas(exact);
            worst = worst.max(sigmas);
            table.push(vec![
                functions[a].0.into(),
                functions[b].0.into(),
                step.into(),
                est.mean.into(),
                exact.into(),
                est.se.into(),
                sigmas.into(),
            ]);
        }
    }
    report.tables.push(table);
    report.checks.push(Check::at_most("covariance identity, max sigmas", worst, SIGMA_THRESHOLD));
    let markov = markov_check(&ens, &fm, &delta_o, steps / 2)?;
    let mut table = Table::new("markov", &["condition", "estimate", "exact", "se", "sigmas", "visits"]);
    for r in &markov.rows {
        table.push(vec![r.label.clone().into(), r.estimate.into(), r.exact.into(), r.se.into(), r.sigmas.into(), r.count.into()]);
    }
    report.tables.push(table);
    if !markov.under_visited.is_empty() {
        let mut table = Table::new("under_visited", &["condition"]);
        for c in &markov.under_visited {
            table.push(vec![c.clone().into()]);
        }
        report.tables.push(table);
    }
    report.checks.push(Check::at_most("Markov property, max sigmas", markov.max_sigmas(), SIGMA_THRESHOLD));
    Ok(())
}

fn load_filter(args: &FilterArgs) -> Result<FilterCoeffs> {
    match (&args.coeffs, &args.filter) {
        (Some(list), None) => FilterCoeffs::real(&parse_reals(list)?, args.degree),
        (None, Some(path)) => FilterCoeffs::from_json_file(path),
        _ => Err(Error::InvalidArgument("give exactly one of --coeffs and --filter".into())),
    }
}

fn wavelet_qmf(report: &mut Report, args: &FilterArgs) -> Result<()> {
    let filter = load_filter(args)?;
    let qmf = qmf_check(&filter);
    let mut table = Table::new("orthogonality", &["shift", "residual"]);
    for (l, r) in &qmf.orthogonality {
        table.push(vec![(*l).into(), (*r).into()]);
    }
    report.tables.push(table);
    let worst = qmf.orthogonality.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    report.checks.push(Check::at_most("orthogonality residual", worst, 1e-10));
    report.checks.push(Check::at_most("normalization residual", qmf.normalization, 1e-10));
    Ok(())
}

fn wavelet_tightness(report: &mut Report, args: &FilterArgs, ts: &str, k: u32, depth: u32, tolerance: f64) -> Result<()> {
    let filter = load_filter(args)?;
    let mut table = Table::new("tightness", &["t", "defect"]);
    let mut worst: f64 = 0.0;
    for t in parse_reals(ts)? {
        let d = tightness_defect(&filter, t, k, depth);
        worst = worst.max(d.abs());
        table.push(vec![t.into(), d.into()]);
    }
    report.tables.push(table);
    report.checks.push(Check::at_most("max |defect|", worst, tolerance));
    Ok(())
}

fn wavelet_cantor(report: &mut Report, check: bool) -> Result<()> {
    let exact = cantor_filter_exact();
    let mut table = Table::new("coefficients", &["k", "numerator", "denominator"]);
    for (k, c) in exact.coeffs() {
        table.push(vec![k.into(), (*c.numer()).into(), (*c.denom()).into()]);
    }
    report.tables.push(table);
    if check {
        let one = TrigPoly::constant(num_rational::Rational64::from_integer(1));
        let fixed = transfer_apply(&exact, &one, 3)? == one;
        let w = cantor_filter();
        let mut values = Table::new("values", &["quantity", "value"]);
        values.push(vec!["W_F(0)".into(), w.eval(0.0).re.into()]);
        values.push(vec!["lowpass".into(), lowpass_check(&w, 3).into()]);
        report.tables.push(values);
        report.checks.push(Check::flag("T_W 1 = 1 exactly", fixed));
        report.checks.push(Check::at_most("|W_F(0) - 2/3|", (w.eval(0.0).re - 2.0 / 3.0).abs(), 1e-12));
        report.checks.push(Check::flag("W_F is not low-pass", !lowpass_check(&w, 3)));
        report.checks.push(Check::flag("Haar is low-pass", lowpass_check(&w_from_filter(&FilterCoeffs::haar()), 2)));
    }
    Ok(())
}

fn parse_start(spec: &str) -> Result<SolenoidStart> {
    let bad = || Error::InvalidArgument(format!("start {spec:?} is neither uniform:<level> nor <numerator>/<2^level>"));
    if let Some(level) = spec.strip_prefix("uniform:") {
        let level: u32 = level.parse().map_err(|_| bad())?;
        return Ok(SolenoidStart::UniformGrid(level));
    }
    let (num, den) = spec.split_once('/').unwrap_or((spec, "1"));
    let num: u128 = num.parse().map_err(|_| bad())?;
    let den: u128 = den.parse().map_err(|_| bad())?;
    if !den.is_power_of_two() {
        return Err(bad());
    }
    Ok(SolenoidStart::Point(DyadicAngle::new(num, den.trailing_zeros())?))
}

fn solenoid(report: &mut Report, w: &str, steps: usize, paths: usize, start: &str, seed: u64) -> Result<()> {
    let weight = match w {
        "haar" => w_from_filter(&FilterCoeffs::haar()),
        "half" => crate::circle::half_weight(),
        path => w_from_filter(&FilterCoeffs::from_json_file(path)?),
    };
    let start = parse_start(start)?;
    let ens = solenoid_walk(&weight, steps, paths, seed, start)?;
    let cos = |k: i64| TrigPoly::new([(k, Complex64::new(0.5, 0.0)), (-k, Complex64::new(0.5, 0.0))]);
    let functions = [("cos1", cos(1)), ("cos2", cos(2)), ("cos3", cos(3))];
    let mut table = Table::new("covariance", &["f1", "f2", "n", "estimate", "exact", "se", "sigmas"]);
    let mut worst: f64 = 0.0;
    for (a, b) in [(0, 0), (0, 1), (2, 0)] {
        for n in [0, steps / 2, steps - 1] {
            let est = solenoid_covariance_mc(&ens, &functions[a].1, &functions[b].1, n)?;
            let exact = solenoid_covariance_exact(&weight, &functions[a].1, &functions[b].1, n, start)?;
            let sigmas = est.sigmas(exact);
            worst = worst.max(sigmas);
            table.push(vec![
                functions[a].0.into(),
                functions[b].0.into(),
                n.into(),
                est.mean.into(),
                exact.into(),
                est.se.into(),
                sigmas.into(),
            ]);
        }
    }
    report.tables.push(table);
    let mut last = Table::new("final_states", &["path", "numerator", "level", "value"]);
    for i in 0..paths.min(10) {
        let z = ens.path(i)[steps];
        last.push(vec![i.into(), Cell::Text(z.numerator().to_string()), (z.level() as i64).into(), z.value().into()]);
    }
    report.tables.push(last);
    report.checks.push(Check::at_most("covariance identity, max sigmas", worst, SIGMA_THRESHOLD));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(args: &[&str]) -> Result<Report> {
        let cli = Cli::try_parse_from(std::iter::once("spectral-walks").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn gram_command_matrix() {
        let r = report(&["spectra", "gram", "--words", "1,11", "--out", "csv"]).unwrap();
        let t = &r.tables[0];
        assert_eq!(t.rows[0][1..3], [Cell::Int(1), Cell::Int(1)]);
        assert_eq!(t.rows[1][1..3], [Cell::Int(1), Cell::Int(2)]);
        assert!(r.passes());
    }

    #[test]
    fn invalid_input_codes() {
        assert_eq!(run(["spectral-walks", "walk", "sim", "--graph", "/nonexistent/g.json"]), EXIT_INVALID);
        assert_eq!(run(["spectral-walks", "nonsense"]), EXIT_INVALID);
        assert_eq!(run(["spectral-walks", "spectra", "gram", "--words", "1,1"]), EXIT_INVALID);
        assert_eq!(run(["spectral-walks", "tree", "dipole", "--word", "12"]), EXIT_INVALID);
    }

    #[test]
    fn starts_parse() {
        assert_eq!(parse_start("uniform:10").unwrap(), SolenoidStart::UniformGrid(10));
        assert_eq!(parse_start("3/8").unwrap(), SolenoidStart::Point(DyadicAngle::new(3, 3).unwrap()));
        assert_eq!(parse_start("0").unwrap(), SolenoidStart::Point(DyadicAngle::zero()));
        assert!(parse_start("1/3").is_err());
    }

    #[test]
    fn config_hash_ignores_output_path() {
        let a = Cli::try_parse_from(["x", "spectra", "growth"]).unwrap();
        let b = Cli::try_parse_from(["x", "--output", "/tmp/o.json", "spectra", "growth"]).unwrap();
        let c = Cli::try_parse_from(["x", "--seed", "1", "spectra", "growth"]).unwrap();
        assert_eq!(config_hash(&a).unwrap(), config_hash(&b).unwrap());
        assert_ne!(config_hash(&a).unwrap(), config_hash(&c).unwrap());
    }
}
