//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.
//!
//! Run alone with `cargo test --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_walks::circle::{
    cantor_filter, cantor_filter_exact, lowpass_check, qmf_check, strong_invariance_check, tightness_defect,
    transfer_apply, v_adjoint_check, w_from_filter, FilterCoeffs, TrigPoly,
};
use spectral_walks::gram::{
    energy_gram, gram_matrix, growth_table, kl_gram_check, kl_laplacian_energy, nested_family, reciprocity_pair,
    GramSpectrum, Normalization,
};
use spectral_walks::linalg::{eigh, SquareMatrix};
use spectral_walks::path_measure::{covariance_mc, martingale_check, simulate, FiniteMarkov, SIGMA_THRESHOLD};
use spectral_walks::tree::{dipole_defect, words_up_to, DyadicTree, Word};
use spectral_walks::{Result, WeightedGraph};

const RECIPROCITY_TOL: f64 = 1e-9;
const MATRIX_EXAMPLE_TOL: f64 = 1e-10;
const CLOSED_FORM_TOL: f64 = 1e-9;
const GROWTH_TOL: f64 = 1e-8;
const KL_TOL: f64 = 1e-8;
const TIGHTNESS_TOL: f64 = 1e-3;
const STRETCHED_TOL: f64 = 1e-6;
const QMF_TOL: f64 = 1e-10;
const CANTOR_TOL: f64 = 1e-12;
const ADJOINT_TOL: f64 = 1e-12;
const MC_PATHS: usize = 100_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed < Duration::from_secs(limit_s)
}

fn random_family(rng: &mut ChaCha8Rng, max_size: usize, max_len: usize) -> Vec<Word> {
    let size = rng.random_range(2..=max_size);
    let pool = words_up_to(max_len, 2);
    let mut family: Vec<Word> = Vec::with_capacity(size);
    while family.len() < size {
        let w = &pool[rng.random_range(0..pool.len())];
        if !family.contains(w) {
            family.push(w.clone());
        }
    }
    family
}

fn random_poly(rng: &mut ChaCha8Rng, degree: i64) -> TrigPoly<Complex64> {
    TrigPoly::new((-degree..=degree).map(|k| (k, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))))
}

fn max_gap(a: &SquareMatrix, b: &SquareMatrix) -> f64 {
    (0..a.dim()).flat_map(|i| (0..a.dim()).map(move |j| (i, j))).map(|(i, j)| (a.get(i, j) - b.get(i, j)).abs()).fold(0.0, f64::max)
}

fn c1_dipole_kernel() -> Result<Outcome> {
    let start = Instant::now();
    let words = words_up_to(6, 2);
    let tree = DyadicTree::<i64>::new(8)?;
    let mut defects = 0;
    let mut norms = 0;
    for x in &words {
        defects += dipole_defect(x, 8)?.values().iter().filter(|v| **v != 0).count();
        if tree.graph().energy_norm_sq(&tree.dipole(x)?)? != x.len() as i64 {
            norms += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        defects == 0 && norms == 0 && within(t, 5),
        format!("{} words, nonzero defects {defects}, norm mismatches {norms}, {:.2?}", words.len(), t),
    )
}

fn c2_gram_identity() -> Result<Outcome> {
    let start = Instant::now();
    let words = words_up_to(6, 2);
    let combinatorial = gram_matrix(&words)?;
    let energy = energy_gram(&words, 6)?;
    let mismatches =
        combinatorial.iter().flatten().zip(energy.iter().flatten()).filter(|(a, b)| **a as i64 != **b).count();
    let t = start.elapsed();
    outcome(mismatches == 0 && within(t, 10), format!("{} pairs, mismatches {mismatches}, {:.2?}", words.len().pow(2), t))
}

fn c3_reciprocity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let family = random_family(&mut rng, 16, 5);
        let mut xi: Vec<f64> = (0..family.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mean = xi.iter().sum::<f64>() / xi.len() as f64;
        xi.iter_mut().for_each(|c| *c -= mean);
        let depth = family.iter().map(Word::len).max().unwrap_or(1);
        let (energy, matrix) = reciprocity_pair(&family, &xi, depth)?;
        worst = worst.max((energy - matrix).abs());
    }
    outcome(worst <= RECIPROCITY_TOL, format!("100 trials, max |energy - matrix| = {worst:.3e}"))
}

fn r_values(m: SquareMatrix) -> Result<Vec<(f64, f64)>> {
    Ok(GramSpectrum::from_matrix(m)?.r_function())
}

fn c4_matrix_examples() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut check = |got: f64, want: f64| worst = worst.max((got - want).abs());
    let diag = SquareMatrix::diagonal(&[1.0, 3.0]);
    let e = eigh(&diag)?;
    check(e.values[0], 3.0);
    check(e.values[1], 1.0);
    for (l, r) in r_values(diag)? {
        check(r, if l > 2.0 { 2.0 / 3.0 } else { 2.0 });
    }
    for (_, r) in r_values(SquareMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]])?)? {
        check(r, 1.0);
    }
    let e = eigh(&SquareMatrix::from_rows(&[vec![3.0, 3.0], vec![3.0, 7.0]])?)?;
    check(e.values[0], 5.0 + 13f64.sqrt());
    check(e.values[1], 5.0 - 13f64.sqrt());
    let e = eigh(&SquareMatrix::from_rows(&[vec![3.0, 1.0], vec![1.0, 4.0]])?)?;
    check(e.values[0], (7.0 + 5f64.sqrt()) / 2.0);
    check(e.values[1], (7.0 - 5f64.sqrt()) / 2.0);
    let small = worst;

    let mut closed: f64 = 0.0;
    for n in [2.0, 10.0, 100.0] {
        let e = eigh(&SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, n]])?)?;
        let disc = ((n + 1.0) * (n + 1.0) - 4.0 * (n - 1.0)).sqrt();
        closed = closed.max((e.values[0] - (n + 1.0 + disc) / 2.0).abs());
        closed = closed.max((e.values[1] - (n + 1.0 - disc) / 2.0).abs());
    }
    outcome(
        small <= MATRIX_EXAMPLE_TOL && closed <= CLOSED_FORM_TOL,
        format!("worked examples max error {small:.3e}, [[1,1],[1,n]] closed form max error {closed:.3e}"),
    )
}

fn c4_lambda_minus() -> Result<Outcome> {
    let e = eigh(&SquareMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 100.0]])?)?;
    let lm = e.values[1];
    outcome(lm > 1.0 && lm < 1.02, format!("lambda_- at n=100 is {lm:.10}, required in (1, 1.02)"))
}

fn c5_growth() -> Result<Outcome> {
    let start = Instant::now();
    let rows = growth_table(5)?;
    let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
    let worst = rows.iter().map(|r| (r.sum - r.size as f64).abs()).fold(0.0, f64::max);
    let ratios: Vec<String> = rows.iter().map(|r| format!("{}:{:.6}", r.size, r.sum / r.size as f64)).collect();
    let t = start.elapsed();
    outcome(
        sizes == [2, 6, 14, 30, 62] && worst <= GROWTH_TOL && within(t, 30),
        format!("sum/size {}, max error {worst:.3e}, {:.2?}", ratios.join(" "), t),
    )
}

fn c6_kl_orthogonality() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut families = vec![nested_family(3)];
    families.extend((0..8).map(|_| random_family(&mut rng, 16, 4)));
    let mut gram_gap: f64 = 0.0;
    let mut lap_gap: f64 = 0.0;
    for family in &families {
        let gs = GramSpectrum::from_words(family)?;
        let depth = family.iter().map(Word::len).max().unwrap_or(1);
        let inv = SquareMatrix::diagonal(&gs.eigenvalues().iter().map(|l| 1.0 / l).collect::<Vec<_>>());
        gram_gap = gram_gap.max(max_gap(&kl_gram_check(&gs, depth, Normalization::W)?, &inv));
        lap_gap = lap_gap.max(max_gap(&kl_laplacian_energy(&gs, depth)?, &gs.kl_laplacian_formula()));
    }
    outcome(
        gram_gap <= KL_TOL && lap_gap <= KL_TOL,
        format!("{} families, <w_j,w_k>_E gap {gram_gap:.3e}, <u_j,Lap u_k>_E gap {lap_gap:.3e}", families.len()),
    )
}

fn covariance_case(fm: &FiniteMarkov, fs: &[(Vec<f64>, Vec<f64>)], seed: u64) -> Result<f64> {
    let ens = simulate(fm, 5, MC_PATHS, seed)?;
    let mut worst: f64 = 0.0;
    for (f1, f2) in fs {
        for n in [0, 1, 4] {
            let est = covariance_mc(&ens, f1, f2, n)?;
            worst = worst.max(est.sigmas(fm.covariance_exact(f1, f2, n)?));
        }
    }
    Ok(worst)
}

fn pairs_for(g: &WeightedGraph<f64>) -> Vec<(Vec<f64>, Vec<f64>)> {
    let n = g.vertex_count();
    let o = g.origin();
    let delta: Vec<f64> = (0..n).map(|x| (x == o) as u8 as f64).collect();
    let mut near = vec![0.0; n];
    for (y, _) in g.neighbors(o) {
        near[*y] = 1.0;
    }
    let hops: Vec<f64> = g.hop_distances(o).into_iter().map(|d| d as f64).collect();
    let wave: Vec<f64> = (0..n).map(|x| ((x + 1) as f64).sin()).collect();
    vec![(delta, near), (hops.clone(), hops.clone()), (wave, hops)]
}

fn c7_covariance() -> Result<Outcome> {
    let start = Instant::now();
    let cycle = WeightedGraph::cycle(4)?;
    let tree = DyadicTree::<f64>::new(3)?;
    let a = covariance_case(&FiniteMarkov::from_graph(&cycle), &pairs_for(&cycle), 70)?;
    let b = covariance_case(&FiniteMarkov::from_graph(tree.graph()), &pairs_for(tree.graph()), 71)?;
    let t = start.elapsed();
    outcome(
        a <= SIGMA_THRESHOLD && b <= SIGMA_THRESHOLD && tree.vertex_count() == 15 && within(t, 60),
        format!("max sigmas: 4-cycle {a:.3}, 15-vertex tree {b:.3}, {:.2?}", t),
    )
}

fn c8_martingale() -> Result<Outcome> {
    let ruin = FiniteMarkov::from_graph(&WeightedGraph::path(5)?).absorbing(&[0, 4])?;
    let h = ruin.harmonic_solve(&[(0, 0.0), (4, 1.0)])?;
    let linear = h.iter().enumerate().all(|(k, v)| (v - k as f64 / 4.0).abs() <= 1e-12);
    let ens = simulate(&ruin, 20, MC_PATHS, 8)?;
    let harmonic = martingale_check(&ens, &h)?;
    let control: Vec<f64> = h.iter().map(|v| v * v).collect();
    let control = martingale_check(&ens, &control)?;
    outcome(
        linear && harmonic.passes() && control.max_sigmas() > SIGMA_THRESHOLD,
        format!("h(k)=k/4 {linear}, harmonic {:.3} sigmas, control (k/4)^2 {:.1} sigmas", harmonic.max_sigmas(), control.max_sigmas()),
    )
}

fn c9_wavelets() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let haar = FilterCoeffs::haar();
    let worst = (0..10).map(|_| tightness_defect(&haar, rng.random_range(0.0..1.0), 512, 20).abs()).fold(0.0, f64::max);
    let stretched = tightness_defect(&FilterCoeffs::stretched_haar(), 0.5, 512, 20);
    let qmf = qmf_check(&haar).max_residual().max(qmf_check(&FilterCoeffs::daubechies4()).max_residual());
    outcome(
        worst <= TIGHTNESS_TOL && (stretched - 1.0).abs() <= STRETCHED_TOL && qmf <= QMF_TOL,
        format!("Haar max defect {worst:.3e}, stretched defect at 1/2 {stretched:.9}, QMF residual {qmf:.3e}"),
    )
}

fn c10_cantor() -> Result<Outcome> {
    let one = TrigPoly::constant(Rational64::from_integer(1));
    let fixed = transfer_apply(&cantor_filter_exact(), &one, 3)? == one;
    let w = cantor_filter();
    let at_zero = (w.eval(0.0) - Complex64::new(2.0 / 3.0, 0.0)).norm();
    let not_lowpass = !lowpass_check(&w, 3);
    let haar_lowpass = lowpass_check(&w_from_filter(&FilterCoeffs::haar()), 2);
    outcome(
        fixed && at_zero <= CANTOR_TOL && not_lowpass && haar_lowpass,
        format!("T1=1 exact {fixed}, |W_F(0)-2/3| {at_zero:.1e}, W_F not low-pass {not_lowpass}, Haar low-pass {haar_lowpass}"),
    )
}

fn c11_adjoint() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    let mut nonzero = 0;
    for i in 0..100 {
        let d = 2 + (i % 2) as u32;
        let (m, f, g) = (random_poly(&mut rng, 8), random_poly(&mut rng, 8), random_poly(&mut rng, 8));
        worst = worst.max(v_adjoint_check(&m, &f, &g, d)?);
        let exact = TrigPoly::new((-8..=8).map(|k| (k, Rational64::new(rng.random_range(-50..50), rng.random_range(1..30)))));
        if strong_invariance_check(&exact, d)? != Rational64::from_integer(0) {
            nonzero += 1;
        }
    }
    outcome(worst <= ADJOINT_TOL && nonzero == 0, format!("adjoint residual {worst:.3e}, nonzero invariance residuals {nonzero}"))
}

fn run_cli(args: &[&str], out: &Path, threads: Option<&str>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectral-walks"));
    cmd.args(args).arg("--output").arg(out);
    match threads {
        Some(t) => cmd.env("SPECTRAL_WALKS_THREADS", t),
        None => cmd.env_remove("SPECTRAL_WALKS_THREADS"),
    };
    let status = cmd.status().expect("binary runs");
    assert!(status.code().is_some_and(|c| c <= 1), "{args:?} exited with {status}");
    std::fs::read(out).expect("report written")
}

fn c12_determinism() -> Result<Outcome> {
    let dir = tempfile::tempdir()?;
    let graph = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/weighted5.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["tree", "dipole", "--word", "1011", "--depth", "6"],
        vec!["tree", "encode", "--words", "0,1,011,1101", "--out", "csv"],
        vec!["spectra", "gram", "--words", "1,11,101,0", "--depth", "6"],
        vec!["spectra", "growth", "--max-depth", "4", "--out", "csv"],
        vec!["spectra", "reciprocity", "--words", "1,11,111,10"],
        vec!["walk", "sim", "--graph", graph, "--steps", "16", "--paths", "20000"],
        vec!["walk", "sim", "--graph", graph, "--steps", "16", "--paths", "20000", "--out", "csv"],
        vec!["wavelet", "qmf", "--coeffs", "0.5,0.5"],
        vec!["wavelet", "tightness", "--coeffs", "0.5,0.5", "--t", "0.3,0.7"],
        vec!["wavelet", "cantor", "--check", "--out", "csv"],
        vec!["solenoid", "walk", "--w", "half", "--steps", "20", "--paths", "20000"],
        vec!["verify", "all", "--quick"],
    ];
    let mut differing = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let mut args = args.clone();
        args.extend(["--seed", "42"]);
        let a = run_cli(&args, &dir.path().join(format!("{i}a")), None);
        let b = run_cli(&args, &dir.path().join(format!("{i}b")), Some("1"));
        if a != b || a.is_empty() {
            differing.push(args.join(" "));
        }
    }
    outcome(differing.is_empty(), format!("{} commands, differing: {differing:?}", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 13] = [
        ("1  dipole kernel exactness", c1_dipole_kernel),
        ("2  Gram identity", c2_gram_identity),
        ("3  reciprocity", c3_reciprocity),
        ("4  matrix examples", c4_matrix_examples),
        ("4b lambda_- in (1, 1.02) at n=100", c4_lambda_minus),
        ("5  spectral growth", c5_growth),
        ("6  KL orthogonality", c6_kl_orthogonality),
        ("7  covariance identity", c7_covariance),
        ("8  harmonic vs martingale", c8_martingale),
        ("9  wavelet criteria", c9_wavelets),
        ("10 Cantor filter", c10_cantor),
        ("11 adjoint and invariance", c11_adjoint),
        ("12 determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let (pass, detail) = match criterion() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
