//! Numerical inverse of the classification: from a metric graph back to a
//! polynomial, plus the cone-scaling and adjacency experiments.
//!
//! The invariants fix the residue of `1/P` at every equilibrium, so a
//! realization is a root configuration (one position per flower face, with
//! the face's multiplicity) solving the residue equations. Newton's method on
//! those equations is run from many starts; a candidate is accepted only when
//! its own classification lands in the target class.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{flower, CombinatError, CombinatorialDataSet, Flower};
use crate::invariants::{classify, Classification, InvariantsError, MetricGraph, KAPPA};
use crate::{PolyError, PolynomialVF};

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("target is not a valid metric graph: {0}")]
    InvalidTarget(String),
    #[error("no realization inside class {class} after {attempts} starts")]
    ClassUnreachable { class: String, attempts: usize },
    #[error("residue equations did not converge (best residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationStatus {
    Converged,
    ClassBoundary,
    BudgetExhausted,
}

impl std::fmt::Display for RealizationStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RealizationStatus::Converged => "converged",
            RealizationStatus::ClassBoundary => "class_boundary",
            RealizationStatus::BudgetExhausted => "budget_exhausted",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RealizationResult {
    pub polynomial: PolynomialVF,
    /// Invariants of `polynomial` as measured by classification. For a
    /// `ClassBoundary` result this is the class actually reached.
    pub achieved: MetricGraph,
    /// Largest absolute gap between achieved and target invariants.
    pub residual: f64,
    pub iterations: usize,
    pub status: RealizationStatus,
    /// Root position of every flower face of the target class.
    pub face_positions: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub struct RealizeOptions {
    /// Random starts tried when no usable seed is given.
    pub starts: usize,
    pub newton_iterations: usize,
    /// Converged when `residual < tolerance * target.scale()`.
    pub tolerance: f64,
    pub rng_seed: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { starts: 1024, newton_iterations: 80, tolerance: 1e-8, rng_seed: 0 }
    }
}

/// Residue of `1/P` at `positions[f]` for `P = prod (z - positions[g])^mult[g]`.
pub fn configuration_residue(positions: &[Complex64], mult: &[usize], f: usize) -> Complex64 {
    let m = mult[f];
    let mut series = vec![Complex64::new(0.0, 0.0); m];
    series[0] = Complex64::new(1.0, 0.0);
    for (g, (&z, &mg)) in positions.iter().zip(mult).enumerate() {
        if g == f {
            continue;
        }
        // (c + w)^(-mg) = c^(-mg) sum_n binom(-mg, n) (w / c)^n
        let c = positions[f] - z;
        let inv = c.inv();
        let mut factor = vec![Complex64::new(0.0, 0.0); m];
        let mut term = inv.powu(mg as u32);
        for (n, slot) in factor.iter_mut().enumerate() {
            *slot = term;
            term *= -inv * ((mg + n) as f64) / ((n + 1) as f64);
        }
        let mut product = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            for j in 0..m - i {
                product[i + j] += series[i] * factor[j];
            }
        }
        series = product;
    }
    series[m - 1]
}

/// Residues at the flower faces forced by given chord values; `taus` and
/// `alphas` may be complex (perturbations out of the class).
pub fn residues_from_values(
    fl: &Flower,
    taus: &[Complex64],
    alphas: &[Complex64],
) -> Vec<Complex64> {
    let mut sums = vec![Complex64::new(0.0, 0.0); fl.faces.len()];
    for chord in &fl.chords {
        let value = if chord.round { taus[chord.index] } else { alphas[chord.index] };
        sums[chord.left_face] += value;
        sums[chord.right_face] -= value;
    }
    sums.into_iter().map(|s| s / KAPPA).collect()
}

fn equations(positions: &[Complex64], mult: &[usize], targets: &[Complex64]) -> DVector<Complex64> {
    let r = positions.len();
    let mut out = DVector::from_element(r, Complex64::new(0.0, 0.0));
    for f in 0..r - 1 {
        out[f] = configuration_residue(positions, mult, f) - targets[f];
    }
    out[r - 1] = positions.iter().zip(mult).map(|(z, &m)| z * m as f64).sum();
    out
}

/// Outcome of Newton's method on the residue equations.
#[derive(Debug, Clone)]
pub struct ResidueSolution {
    pub positions: Vec<Complex64>,
    pub iterations: usize,
    /// Residue mismatch relative to the largest target residue.
    pub residual: f64,
}

/// Solve `Res_f = targets[f]` for all faces (the targets must sum to zero)
/// with the configuration centered, starting from `start`.
pub fn solve_residues(
    mult: &[usize],
    targets: &[Complex64],
    start: &[Complex64],
    max_iterations: usize,
) -> Option<ResidueSolution> {
    let r = mult.len();
    if r == 1 {
        return Some(ResidueSolution { positions: vec![Complex64::new(0.0, 0.0)], iterations: 0, residual: 0.0 });
    }
    let scale = targets.iter().map(|t| t.norm()).fold(0.0, f64::max).max(1e-300);
    let spread = start.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-12);
    let measure = |g: &DVector<Complex64>| {
        let res = g.rows(0, r - 1).iter().map(|v| v.norm()).fold(0.0, f64::max) / scale;
        let center = g[r - 1].norm() / spread;
        res.max(center)
    };
    let mut x = start.to_vec();
    let mut g = equations(&x, mult, targets);
    let mut norm = measure(&g);
    for it in 0..max_iterations {
        if !norm.is_finite() {
            return None;
        }
        if norm < 1e-13 {
            return Some(ResidueSolution { positions: x, iterations: it, residual: norm });
        }
        let h = 1e-7 * spread;
        let mut jac = DMatrix::from_element(r, r, Complex64::new(0.0, 0.0));
        for c in 0..r {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[c] += h;
            minus[c] -= h;
            let col = (equations(&plus, mult, targets) - equations(&minus, mult, targets)) / Complex64::new(2.0 * h, 0.0);
            jac.set_column(c, &col);
        }
        let step = jac.lu().solve(&(-g.clone()))?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, b)| a + b * lambda).collect();
            let gt = equations(&trial, mult, targets);
            let nt = measure(&gt);
            if nt.is_finite() && nt < norm {
                x = trial;
                g = gt;
                norm = nt;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return if norm < 1e-10 { Some(ResidueSolution { positions: x, iterations: it, residual: norm }) } else { None };
            }
        }
    }
    (norm < 1e-10).then_some(ResidueSolution { positions: x, iterations: max_iterations, residual: norm })
}

pub fn polynomial_from_faces(positions: &[Complex64], mult: &[usize]) -> Result<PolynomialVF, PolyError> {
    let roots: Vec<(Complex64, usize)> = positions.iter().copied().zip(mult.iter().copied()).collect();
    PolynomialVF::from_roots_recentered(&roots)
}

/// Root positions of `seed` ordered by the flower faces of its own class.
pub fn face_configuration(c: &Classification) -> Vec<Complex64> {
    c.face_roots.iter().map(|&r| c.polynomial.roots()[r].position).collect()
}

fn face_multiplicities(fl: &Flower) -> Vec<usize> {
    fl.faces.iter().map(|f| f.multiplicity).collect()
}

fn random_start(rng: &mut ChaCha8Rng, r: usize, radius: f64) -> Vec<Complex64> {
    let mut z: Vec<Complex64> = (0..r)
        .map(|_| Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let mean = z.iter().sum::<Complex64>() / r as f64;
    z.iter_mut().for_each(|w| *w -= mean);
    z
}

fn absolute_gap(a: &MetricGraph, b: &MetricGraph) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn evaluate(
    target: &MetricGraph,
    mult: &[usize],
    sol: ResidueSolution,
    tolerance: f64,
) -> Option<RealizationResult> {
    let p = polynomial_from_faces(&sol.positions, mult).ok()?;
    let c = classify(&p).ok()?;
    if c.class() != target.class() {
        return Some(RealizationResult {
            polynomial: p,
            achieved: c.metric,
            residual: f64::INFINITY,
            iterations: sol.iterations,
            status: RealizationStatus::ClassBoundary,
            face_positions: sol.positions,
        });
    }
    let residual = absolute_gap(&c.metric, target);
    let status = if residual < tolerance * target.scale() {
        RealizationStatus::Converged
    } else {
        RealizationStatus::BudgetExhausted
    };
    Some(RealizationResult {
        polynomial: p,
        achieved: c.metric,
        residual,
        iterations: sol.iterations,
        status,
        face_positions: sol.positions,
    })
}

/// Continue from a known configuration of the same class to new face
/// residues, in small steps.
pub fn continue_configuration(
    mult: &[usize],
    from_targets: &[Complex64],
    to_targets: &[Complex64],
    start: &[Complex64],
    max_iterations: usize,
) -> Option<ResidueSolution> {
    let mut steps = 1;
    'outer: while steps <= 1024 {
        let mut x = start.to_vec();
        let mut total = 0;
        for s in 1..=steps {
            let t = s as f64 / steps as f64;
            let targets: Vec<Complex64> =
                from_targets.iter().zip(to_targets).map(|(a, b)| a + (b - a) * t).collect();
            match solve_residues(mult, &targets, &x, max_iterations) {
                Some(sol) => {
                    // A large jump means Newton has switched branches.
                    let jump = sol.positions.iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    let spread = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
                    if s < steps && jump > 0.25 * spread.max(1e-12) {
                        steps *= 4;
                        continue 'outer;
                    }
                    total += sol.iterations;
                    x = sol.positions;
                }
                None => {
                    steps *= 4;
                    continue 'outer;
                }
            }
        }
        let residual = {
            let g = equations(&x, mult, to_targets);
            let scale = to_targets.iter().map(|t| t.norm()).fold(0.0, f64::max).max(1e-300);
            g.rows(0, mult.len() - 1).iter().map(|v| v.norm()).fold(0.0, f64::max) / scale
        };
        return Some(ResidueSolution { positions: x, iterations: total, residual });
    }
    None
}

/// Construct a polynomial whose metric graph is `target`.
///
/// With a `seed` of the same class the residue equations are continued from
/// the seed's configuration and a class change is reported as
/// `ClassBoundary`. Otherwise random starts are tried until one lands in the
/// target class.
pub fn realize(
    target: &MetricGraph,
    seed: Option<&PolynomialVF>,
    opts: &RealizeOptions,
) -> Result<RealizationResult, RealizeError> {
    let report = crate::combinat::validate_class(target.class());
    if !report.valid {
        return Err(RealizeError::InvalidTarget(report.problems.join("; ")));
    }
    let fl = flower(target.class())?;
    let mult = face_multiplicities(&fl);
    let taus: Vec<Complex64> = target.taus().iter().map(|&t| Complex64::new(t, 0.0)).collect();
    let targets = residues_from_values(&fl, &taus, target.alphas());

    if let Some(seed) = seed {
        let c = classify(seed)?;
        if c.class() == target.class() {
            let start = face_configuration(&c);
            let fl_seed = flower(c.class())?;
            let seed_vals: Vec<Complex64> = c.metric.taus().iter().map(|&t| Complex64::new(t, 0.0)).collect();
            let from = residues_from_values(&fl_seed, &seed_vals, c.metric.alphas());
            if let Some(sol) = continue_configuration(&mult, &from, &targets, &start, opts.newton_iterations) {
                if let Some(result) = evaluate(target, &mult, sol, opts.tolerance) {
                    return Ok(result);
                }
            }
        }
    }

    let d = target.class().degree();
    let biggest = targets.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let radius = if biggest > 0.0 { 1.5 * biggest.powf(-1.0 / (d as f64 - 1.0)) } else { 1.0 };
    let mut best_residual = f64::INFINITY;
    let mut boundary: Option<RealizationResult> = None;
    let mut closest: Option<RealizationResult> = None;
    let batch = 32;
    let mut tried = 0;
    while tried < opts.starts {
        let count = batch.min(opts.starts - tried);
        let results: Vec<(Option<f64>, Option<RealizationResult>)> = (tried..tried + count)
            .into_par_iter()
            .map(|attempt| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed.wrapping_add(attempt as u64));
                let start = random_start(&mut rng, mult.len(), radius);
                match solve_residues(&mult, &targets, &start, opts.newton_iterations) {
                    Some(sol) => {
                        let res = sol.residual;
                        (Some(res), evaluate(target, &mult, sol, opts.tolerance))
                    }
                    None => (None, None),
                }
            })
            .collect();
        tried += count;
        for (res, result) in results {
            if let Some(res) = res {
                best_residual = best_residual.min(res);
            }
            match result {
                Some(r) if r.status == RealizationStatus::Converged => return Ok(r),
                // Right class, faces matched to the wrong roots.
                Some(r) if r.status == RealizationStatus::BudgetExhausted => {
                    if closest.as_ref().is_none_or(|c| r.residual < c.residual) {
                        closest = Some(r);
                    }
                }
                Some(r) => boundary = boundary.or(Some(r)),
                None => {}
            }
        }
    }
    if let Some(r) = closest {
        return Ok(r);
    }
    match boundary {
        Some(_) => Err(RealizeError::ClassUnreachable { class: target.class().to_string(), attempts: tried }),
        None => Err(RealizeError::NoConvergence { residual: best_residual }),
    }
}

/// A polynomial of class `c` (all `tau = 1`, all `alpha = i`), when one can
/// be realized; its existence upgrades the class from candidate to confirmed.
pub fn witness(c: &CombinatorialDataSet, opts: &RealizeOptions) -> Option<PolynomialVF> {
    let target = MetricGraph::new(c.clone(), vec![1.0; c.h()], vec![Complex64::new(0.0, 1.0); c.s()]).ok()?;
    realize(&target, None, opts)
        .ok()
        .filter(|r| r.status == RealizationStatus::Converged)
        .map(|r| r.polynomial)
}

/// Real rank of the inverse map at a realization: the `2s + h` real
/// invariant coordinates are moved one at a time by `step` (relative) and
/// the face positions followed by continuation.
#[derive(Debug, Clone)]
pub struct RankReport {
    pub rank: usize,
    pub expected: usize,
    pub singular_values: Vec<f64>,
}

pub fn local_rank(target: &MetricGraph, positions: &[Complex64], step: f64) -> Result<RankReport, RealizeError> {
    let fl = flower(target.class())?;
    let mult = face_multiplicities(&fl);
    let taus: Vec<Complex64> = target.taus().iter().map(|&t| Complex64::new(t, 0.0)).collect();
    let alphas = target.alphas().to_vec();
    let base = residues_from_values(&fl, &taus, &alphas);
    let expected = 2 * alphas.len() + taus.len();
    let rows = 2 * positions.len();
    let mut jac = DMatrix::<f64>::zeros(rows, expected.max(1));
    let mut column = 0;
    let mut push = |t: Vec<Complex64>, a: Vec<Complex64>, h: f64, jac: &mut DMatrix<f64>| -> Result<(), RealizeError> {
        let moved = residues_from_values(&fl, &t, &a);
        let sol = continue_configuration(&mult, &base, &moved, positions, 80)
            .ok_or(RealizeError::NoConvergence { residual: f64::INFINITY })?;
        for (i, (z, z0)) in sol.positions.iter().zip(positions).enumerate() {
            let dz = (z - z0) / h;
            jac[(2 * i, column)] = dz.re;
            jac[(2 * i + 1, column)] = dz.im;
        }
        column += 1;
        Ok(())
    };
    for i in 0..taus.len() {
        let h = step * taus[i].norm();
        let mut t = taus.clone();
        t[i] += h;
        push(t, alphas.clone(), h, &mut jac)?;
    }
    for i in 0..alphas.len() {
        for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            let h = step * alphas[i].norm();
            let mut a = alphas.clone();
            a[i] += dir * h;
            push(taus.clone(), a, h, &mut jac)?;
        }
    }
    if expected == 0 {
        return Ok(RankReport { rank: 0, expected, singular_values: Vec::new() });
    }
    let mut singular_values: Vec<f64> = jac.svd(false, false).singular_values.iter().copied().collect();
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let top = singular_values[0];
    let rank = singular_values.iter().filter(|&&s| s > 1e-6 * top).count();
    Ok(RankReport { rank, expected, singular_values })
}

#[derive(Debug, Clone)]
pub struct ConeReport {
    pub factor: f64,
    pub class: CombinatorialDataSet,
    pub class_preserved: bool,
    /// Largest relative gap between scaled invariants and `c^-(d-1)` times the originals.
    pub ratio_error: f64,
    pub original: MetricGraph,
    pub scaled: MetricGraph,
    /// `(c^k, largest lower coefficient)` for shrinking factors.
    pub shrinking: Vec<(f64, f64)>,
}

pub fn cone_scale_experiment(p: &PolynomialVF, c: f64) -> Result<ConeReport, RealizeError> {
    let base = classify(p)?;
    let scaled_p = p.scale_roots(c)?;
    let scaled = classify(&scaled_p)?;
    let d = p.degree() as i32;
    let factor = c.powi(1 - d);
    let class_preserved = base.class() == scaled.class();
    let ratio_error = if class_preserved {
        base.metric
            .values()
            .iter()
            .zip(scaled.metric.values())
            .map(|(a, b)| (a * factor - b).norm() / (a * factor).norm())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let shrinking = (1..=6)
        .map(|k| {
            let s = 10f64.powi(-k);
            let q = p.scale_roots(s).expect("positive factor");
            let lower = q.coeffs()[..p.degree()].iter().map(|a| a.norm()).fold(0.0, f64::max);
            (s, lower)
        })
        .collect();
    Ok(ConeReport {
        factor: c,
        class: base.class().clone(),
        class_preserved,
        ratio_error,
        original: base.metric,
        scaled: scaled.metric,
        shrinking,
    })
}

pub const ADJACENCY_CLASS: &str = "[0(1 2)3](4 5)";
pub const ADJACENCY_LIMIT_CLASS: &str = "[0 1]2[3 4]5";

#[derive(Debug, Clone)]
pub struct AdjacencyPoint {
    pub x: f64,
    pub result: Result<RealizationResult, String>,
    /// Distance between the two center roots.
    pub center_distance: f64,
    /// Positions of the alpha and omega roots of the strip.
    pub strip_roots: [Complex64; 2],
    pub center_residues: [Complex64; 2],
    /// `tau_1 + alpha`, constant by construction.
    pub invariant_combination: Complex64,
}

#[derive(Debug, Clone)]
pub struct AdjacencyReport {
    pub points: Vec<AdjacencyPoint>,
    /// Class of the last successful configuration after merging its two centers.
    pub merged_class: Option<String>,
    pub merged_error: Option<String>,
}

/// Follow `[0(1 2)3](4 5)` with `tau_1 = tau_2 = x`, `alpha = -x + i*alpha_im`.
pub fn adjacency_path_experiment(x_grid: &[f64], alpha_im: f64, opts: &RealizeOptions) -> Result<AdjacencyReport, RealizeError> {
    let class = CombinatorialDataSet::parse(ADJACENCY_CLASS)?;
    let fl = flower(&class)?;
    let centers: Vec<usize> =
        (0..fl.faces.len()).filter(|&f| fl.faces[f].kind == crate::EquilibriumKind::Center).collect();
    let strip: Vec<usize> = (0..fl.faces.len()).filter(|f| !centers.contains(f)).collect();
    let mut points = Vec::new();
    let mut previous: Option<PolynomialVF> = None;
    let mut last_ok: Option<RealizationResult> = None;
    for &x in x_grid {
        let target = MetricGraph::new(class.clone(), vec![x, x], vec![Complex64::new(-x, alpha_im)])?;
        let outcome = realize(&target, previous.as_ref(), opts);
        let combination = Complex64::new(x, 0.0) + target.alphas()[0];
        match outcome {
            Ok(r) if r.status == RealizationStatus::Converged => {
                let pos = &r.face_positions;
                let res = |f: usize| configuration_residue(pos, &face_multiplicities(&fl), f);
                points.push(AdjacencyPoint {
                    x,
                    center_distance: (pos[centers[0]] - pos[centers[1]]).norm(),
                    strip_roots: [pos[strip[0]], pos[strip[1]]],
                    center_residues: [res(centers[0]), res(centers[1])],
                    invariant_combination: combination,
                    result: Ok(r.clone()),
                });
                previous = Some(r.polynomial.clone());
                last_ok = Some(r);
            }
            other => {
                let message = match other {
                    Ok(r) => format!("status {}", r.status),
                    Err(e) => e.to_string(),
                };
                points.push(AdjacencyPoint {
                    x,
                    center_distance: f64::NAN,
                    strip_roots: [Complex64::new(f64::NAN, 0.0); 2],
                    center_residues: [Complex64::new(f64::NAN, 0.0); 2],
                    invariant_combination: combination,
                    result: Err(message),
                });
            }
        }
    }
    let (merged_class, merged_error) = match &last_ok {
        Some(r) => {
            let pos = &r.face_positions;
            let merged = 0.5 * (pos[centers[0]] + pos[centers[1]]);
            let roots = [(pos[strip[0]], 1), (pos[strip[1]], 1), (merged, 2)];
            match PolynomialVF::from_roots_recentered(&roots) {
                Ok(p) => match classify(&p) {
                    Ok(c) => (Some(c.class().to_string()), None),
                    Err(e) => (None, Some(e.to_string())),
                },
                Err(e) => (None, Some(e.to_string())),
            }
        }
        None => (None, Some("no successful grid point".into())),
    };
    Ok(AdjacencyReport { points, merged_class, merged_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_residue_matches_contour() {
        let positions = [c(0.3, 0.1), c(-1.0, 0.4), c(0.5, -0.9)];
        let mult = [2, 1, 3];
        let p = polynomial_from_faces(&positions, &mult).unwrap();
        for f in 0..3 {
            let shifted = p.roots().iter().position(|r| r.multiplicity == mult[f]).unwrap();
            let direct = p.residue_at(shifted);
            let mean = positions.iter().zip(&mult).map(|(z, &m)| z * m as f64).sum::<Complex64>() / 6.0;
            let moved: Vec<Complex64> = positions.iter().map(|z| z - mean).collect();
            assert!((configuration_residue(&moved, &mult, f) - direct).norm() < 1e-10 * direct.norm());
        }
    }

    #[test]
    fn realizes_z2_plus_1() {
        let target = MetricGraph::new(CombinatorialDataSet::parse("(0 1)").unwrap(), vec![PI], vec![]).unwrap();
        let r = realize(&target, None, &RealizeOptions::default()).unwrap();
        assert_eq!(r.status, RealizationStatus::Converged);
        let coeffs = r.polynomial.coeffs();
        assert!((coeffs[0] - c(1.0, 0.0)).norm() < 1e-6 && coeffs[1].norm() < 1e-6);
    }

    #[test]
    fn realizes_z2_minus_1() {
        let target = MetricGraph::new(CombinatorialDataSet::parse("[0 1]").unwrap(), vec![], vec![c(0.0, PI)]).unwrap();
        let r = realize(&target, None, &RealizeOptions::default()).unwrap();
        assert_eq!(r.status, RealizationStatus::Converged);
        assert!((r.polynomial.coeffs()[0] - c(-1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn all_unpaired_gives_monomial() {
        let target = MetricGraph::new(CombinatorialDataSet::parse("0 1 2 3 4 5").unwrap(), vec![], vec![]).unwrap();
        let r = realize(&target, None, &RealizeOptions::default()).unwrap();
        assert_eq!(r.polynomial, PolynomialVF::monomial(4).unwrap());
    }

    #[test]
    fn cone_scaling_of_z2_plus_1() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let rep = cone_scale_experiment(&p, 2.0).unwrap();
        assert!(rep.class_preserved);
        assert!((rep.scaled.taus()[0] - PI / 2.0).abs() < 1e-6);
        assert!(rep.shrinking.last().unwrap().1 < 1e-10);
    }
}
