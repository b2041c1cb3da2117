//! Landing stability under non-splitting perturbations: protective sectors,
//! random perturbations keeping every multiplicity, and trial experiments.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::flower;
use crate::flow::{trace_separatrix, FlowError, Outcome, TraceOptions};
use crate::invariants::{classify, InvariantsError};
use crate::{PolyError, PolynomialVF};

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("s_{0} does not land")]
    NotLanding(usize),
    #[error("radius {delta} is not below half the minimum root separation {limit}")]
    RadiusTooLarge { delta: f64, limit: f64 },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const SECTOR_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorCase {
    TwoSepals,
    SepalAndStrip,
    TwoStrips,
}

impl std::fmt::Display for SectorCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SectorCase::TwoSepals => "two_sepals",
            SectorCase::SepalAndStrip => "sepal_and_strip",
            SectorCase::TwoStrips => "two_strips",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectorEstimate {
    pub index: usize,
    pub angle: f64,
    pub case: SectorCase,
    pub partial_sums: Vec<Complex64>,
}

/// Opening angle of a sector around `s_index` (in rectifying time) free of
/// other ends, read off from the strips around its landing point.
///
/// Going around the landing point from `s_index` in either direction, the
/// strip invariants are summed until a sepal zone (a half plane) is met or
/// the point has been circled once. Every partial sum `A` limits the angle
/// to `min(arg A, pi - arg A)`.
pub fn protective_sector(p: &PolynomialVF, index: usize) -> Result<SectorEstimate, StabilityError> {
    protective_sector_with_margin(p, index, SECTOR_MARGIN)
}

pub fn protective_sector_with_margin(p: &PolynomialVF, index: usize, margin: f64) -> Result<SectorEstimate, StabilityError> {
    let c = classify(p)?;
    let n = c.graph.traces.len();
    if index >= n {
        return Err(FlowError::IndexOutOfRange { index, degree: p.degree() }.into());
    }
    let root = c.graph.landing_of(index).ok_or(StabilityError::NotLanding(index))?;
    let fl = flower(c.class()).map_err(InvariantsError::from)?;
    let face = c.face_roots.iter().position(|&r| r == root).expect("every root has a face");
    let germs = &fl.faces[face].germs;
    let start = germs.iter().position(|&g| g == index).expect("landing germ in its face");
    let k = germs.len();
    // Zone in the sector between germ g and the next germ counter-clockwise.
    let sector_zone = |g: usize| {
        let end = (g + 1) % n;
        c.zones.iter().find(|z| z.ends.contains(&end)).expect("every end lies in a zone")
    };
    let alpha_of = |z: &crate::combinat::Zone| {
        z.square_pair
            .and_then(|pair| c.class().square().iter().position(|&q| q == pair))
            .map(|i| c.metric.alphas()[i])
    };
    let walk = |forward: bool| -> Vec<Complex64> {
        let mut sums = Vec::new();
        let mut total = Complex64::new(0.0, 0.0);
        for step in 0..k {
            let i = if forward { (start + step) % k } else { (start + k - 1 - step) % k };
            let zone = sector_zone(germs[i]);
            if zone.kind.is_sepal() {
                break;
            }
            match alpha_of(zone) {
                Some(a) => {
                    total += a;
                    sums.push(total);
                }
                None => break,
            }
        }
        sums
    };
    let ccw = sector_zone(germs[start]).kind;
    let cw = sector_zone(germs[(start + k - 1) % k]).kind;
    let case = match (ccw.is_sepal(), cw.is_sepal()) {
        (true, true) => SectorCase::TwoSepals,
        (false, false) => SectorCase::TwoStrips,
        _ => SectorCase::SepalAndStrip,
    };
    let mut partial_sums = walk(true);
    partial_sums.extend(walk(false));
    let cap = FRAC_PI_2 - margin;
    let angle = partial_sums.iter().map(|a| a.arg().min(PI - a.arg())).fold(cap, f64::min);
    Ok(SectorEstimate { index, angle, case, partial_sums })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonSplittingSample {
    pub base: PolynomialVF,
    pub perturbed: PolynomialVF,
    pub root_displacement: f64,
    pub s_bound: f64,
}

/// Move every distinct root by a uniform draw in the `delta` disk, keep all
/// multiplicities, and re-center.
pub fn perturb_non_splitting(p: &PolynomialVF, delta: f64, seed: u64) -> Result<NonSplittingSample, StabilityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perturb_with_rng(p, delta, &mut rng)
}

fn perturb_with_rng(p: &PolynomialVF, delta: f64, rng: &mut ChaCha8Rng) -> Result<NonSplittingSample, StabilityError> {
    let limit = 0.5 * p.min_root_separation();
    if !(delta < limit) {
        return Err(StabilityError::RadiusTooLarge { delta, limit });
    }
    let moved: Vec<(Complex64, usize)> = p
        .roots()
        .iter()
        .map(|r| {
            let shift = Complex64::from_polar(delta * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
            (r.position + shift, r.multiplicity)
        })
        .collect();
    let perturbed = PolynomialVF::from_roots_recentered(&moved)?;
    let root_displacement = p
        .roots()
        .iter()
        .map(|r| perturbed.nearest_root(r.position).1)
        .fold(0.0, f64::max);
    let opts = TraceOptions::default();
    let (inner, outer) = (opts.landing_radius(p).max(1e-12), opts.escape_radius(p));
    let mut s_bound: f64 = 0.0;
    for i in 0..48 {
        let radius = inner * (outer / inner).powf(i as f64 / 47.0);
        for j in 0..64 {
            let z = Complex64::from_polar(radius, TAU * j as f64 / 64.0);
            if p.distance_to_roots(z) < 2.0 * delta.max(root_displacement) {
                continue;
            }
            s_bound = s_bound.max((perturbed.eval(z) / p.eval(z) - 1.0).norm());
        }
    }
    Ok(NonSplittingSample { base: p.clone(), perturbed, root_displacement, s_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    /// Landed at the root continuing the base landing point.
    Continued,
    Elsewhere,
    Homoclinic,
    Uncertain,
}

#[derive(Debug, Clone)]
pub struct LandingStabilityReport {
    pub index: usize,
    pub delta: f64,
    pub trials: usize,
    pub continued: usize,
    pub elsewhere: usize,
    pub homoclinic: usize,
    pub uncertain: usize,
    pub outcomes: Vec<TrialOutcome>,
    pub max_s_bound: f64,
    /// Largest radius (found by bisection) at which every trial continued,
    /// present only when some trial failed at `delta`.
    pub threshold: Option<f64>,
}

fn run_trials(
    p: &PolynomialVF,
    index: usize,
    base_root: Complex64,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<(Vec<TrialOutcome>, f64), StabilityError> {
    let opts = TraceOptions::default();
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let sample = perturb_with_rng(p, delta, &mut rng)?;
            let q = &sample.perturbed;
            let (continued_root, _) = q.nearest_root(base_root);
            let trace = trace_separatrix(q, index, &opts)?;
            let outcome = match trace.outcome {
                Outcome::Landing { equilibrium } if equilibrium == continued_root => TrialOutcome::Continued,
                Outcome::Landing { .. } => TrialOutcome::Elsewhere,
                Outcome::Homoclinic { .. } => TrialOutcome::Homoclinic,
                Outcome::Uncertain(_) => TrialOutcome::Uncertain,
            };
            Ok((outcome, sample.s_bound))
        })
        .collect::<Result<Vec<_>, StabilityError>>()?;
    let s = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok((results.into_iter().map(|r| r.0).collect(), s))
}

pub fn check_landing_stability(
    p: &PolynomialVF,
    index: usize,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<LandingStabilityReport, StabilityError> {
    let base = trace_separatrix(p, index, &TraceOptions::default())?;
    let base_root = match base.outcome {
        Outcome::Landing { equilibrium } => p.roots()[equilibrium].position,
        _ => return Err(StabilityError::NotLanding(index)),
    };
    let (outcomes, max_s_bound) = run_trials(p, index, base_root, delta, trials, seed)?;
    let count = |o: TrialOutcome| outcomes.iter().filter(|&&x| x == o).count();
    let continued = count(TrialOutcome::Continued);
    let threshold = if continued < trials {
        let (mut good, mut bad) = (0.0, delta);
        for _ in 0..12 {
            let mid = if good == 0.0 { bad / 8.0 } else { (good * bad).sqrt() };
            let (o, _) = run_trials(p, index, base_root, mid, trials, seed)?;
            if o.iter().all(|&x| x == TrialOutcome::Continued) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some(good)
    } else {
        None
    };
    Ok(LandingStabilityReport {
        index,
        delta,
        trials,
        continued,
        elsewhere: count(TrialOutcome::Elsewhere),
        homoclinic: count(TrialOutcome::Homoclinic),
        uncertain: count(TrialOutcome::Uncertain),
        outcomes,
        max_s_bound,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> PolynomialVF {
        PolynomialVF::parse(text).unwrap()
    }

    #[test]
    fn monomial_sectors_are_sepals() {
        let s = protective_sector(&PolynomialVF::monomial(3).unwrap(), 2).unwrap();
        assert_eq!(s.case, SectorCase::TwoSepals);
        assert!((s.angle - (FRAC_PI_2 - SECTOR_MARGIN)).abs() < 1e-15);
    }

    #[test]
    fn z2_minus_1_sector() {
        let s = protective_sector(&poly("coeffs: -1,0,1"), 1).unwrap();
        assert_eq!(s.case, SectorCase::TwoStrips);
        assert!((s.angle - (FRAC_PI_2 - SECTOR_MARGIN)).abs() < 1e-12);
        assert!(s.partial_sums.iter().all(|a| a.re.abs() < 1e-6));
    }

    #[test]
    fn homoclinic_is_not_landing() {
        assert!(matches!(protective_sector(&poly("coeffs: 1,0,1"), 1), Err(StabilityError::NotLanding(1))));
        assert!(matches!(check_landing_stability(&poly("coeffs: 1,0,1"), 1, 0.01, 3, 0), Err(StabilityError::NotLanding(1))));
    }

    #[test]
    fn monomial_perturbation_is_identity() {
        let p = PolynomialVF::monomial(4).unwrap();
        let s = perturb_non_splitting(&p, 0.3, 5).unwrap();
        assert_eq!(s.perturbed, p);
    }

    #[test]
    fn pattern_is_kept() {
        let p = PolynomialVF::from_roots_recentered(&[(Complex64::new(1.0, 0.0), 2), (Complex64::new(-2.0, 0.0), 1)]).unwrap();
        for seed in 0..10 {
            let s = perturb_non_splitting(&p, 0.01, seed).unwrap();
            assert_eq!(s.perturbed.multiplicity_pattern(), vec![1, 2]);
        }
        assert!(matches!(perturb_non_splitting(&p, 2.0, 0), Err(StabilityError::RadiusTooLarge { .. })));
    }

    #[test]
    fn z2_minus_1_keeps_landing() {
        let r = check_landing_stability(&poly("coeffs: -1,0,1"), 1, 0.01, 20, 0).unwrap();
        assert_eq!(r.continued, 20);
        assert!(r.threshold.is_none());
    }
}
