//! Simultaneous root iteration with a companion-matrix fallback, followed by
//! multiplicity clustering.

use nalgebra::DMatrix;
use num_complex::Complex64;

const MAX_ABERTH_ITERS: usize = 500;

/// Evaluate a polynomial given by ascending coefficients together with its
/// derivative (Horner).
pub(crate) fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Expand `prod (z - r)^m` into ascending coefficients.
pub(crate) fn expand(roots: &[(Complex64, usize)]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &(r, m) in roots {
        for _ in 0..m {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
    }
    coeffs
}

/// Relative coefficient mismatch between a root multiset and a monic
/// coefficient vector.
pub(crate) fn reconstruction_error(coeffs: &[Complex64], roots: &[(Complex64, usize)]) -> f64 {
    let rebuilt = expand(roots);
    if rebuilt.len() != coeffs.len() {
        return f64::INFINITY;
    }
    let scale = 1.0 + roots.iter().map(|(r, _)| r.norm()).fold(0.0, f64::max);
    let d = coeffs.len() - 1;
    rebuilt
        .iter()
        .zip(coeffs)
        .enumerate()
        .map(|(k, (a, b))| (a - b).norm() / scale.powi((d - k) as i32))
        .fold(0.0, f64::max)
}

fn cauchy_bound(coeffs: &[Complex64]) -> f64 {
    let lead = coeffs.last().unwrap().norm();
    1.0 + coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.norm() / lead)
        .fold(0.0, f64::max)
}

fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let radius = cauchy_bound(coeffs) * 0.5;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ABERTH_ITERS {
        let mut max_step: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..d {
            let (p, dp) = horner_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm());
            scale = scale.max(z[i].norm());
        }
        if max_step <= 1e-15 * (1.0 + scale) {
            return Some(z);
        }
    }
    // Slow linear convergence at multiple roots still yields usable clusters.
    if z.iter().all(|v| v.is_finite()) {
        Some(z)
    } else {
        None
    }
}

fn companion_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -coeffs[i];
    }
    let (_, t) = m.schur().unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

/// Merge numerically coincident roots. Pairs closer than `radius` are merged
/// unconditionally; looser clusters (up to `1e-3` of the root scale) are merged
/// only if the merged multiset still reproduces the coefficients.
pub(crate) fn cluster(coeffs: &[Complex64], raw: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = raw.iter().map(|&z| vec![z]).collect();
    let centroid = |g: &Vec<Complex64>| g.iter().sum::<Complex64>() / g.len() as f64;
    let merge_pass = |groups: &mut Vec<Vec<Complex64>>, limit: f64, check: bool| loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                let dist = (centroid(&groups[i]) - centroid(&groups[j])).norm();
                if dist < limit && best.is_none_or(|(_, _, b)| dist < b) {
                    best = Some((i, j, dist));
                }
            }
        }
        let Some((i, j, _)) = best else { break };
        let mut trial = groups.clone();
        let moved = trial.remove(j);
        trial[i].extend(moved);
        if check {
            let before = reconstruction_error(coeffs, &collapse(groups));
            let after = reconstruction_error(coeffs, &collapse(&trial));
            if after > (before * 10.0).max(1e-11) {
                break;
            }
        }
        *groups = trial;
    };
    merge_pass(&mut groups, radius, false);
    let scale = 1.0 + raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
    merge_pass(&mut groups, 1e-3 * scale, true);
    collapse(&groups)
}

fn collapse(groups: &[Vec<Complex64>]) -> Vec<(Complex64, usize)> {
    groups
        .iter()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect()
}

/// All roots of a monic polynomial (ascending coefficients) with
/// multiplicities. Returns the residual reconstruction error on failure.
pub(crate) fn solve(coeffs: &[Complex64], radius_factor: f64) -> Result<Vec<(Complex64, usize)>, f64> {
    let raw = aberth(coeffs).unwrap_or_else(|| companion_roots(coeffs));
    let pick = |raw: Vec<Complex64>| {
        let scale = 1.0 + raw.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let clustered = cluster(coeffs, &raw, radius_factor * scale);
        let err = reconstruction_error(coeffs, &clustered);
        (clustered, err)
    };
    let (clustered, err) = pick(raw);
    if err < 1e-9 {
        return Ok(clustered);
    }
    let (clustered2, err2) = pick(companion_roots(coeffs));
    if err2 < 1e-9 {
        Ok(clustered2)
    } else {
        Err(err.min(err2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expand_matches_hand_expansion() {
        // (z-1)^2 (z+2) = z^3 - 3z + 2
        let coeffs = expand(&[(c(1.0, 0.0), 2), (c(-2.0, 0.0), 1)]);
        assert_eq!(coeffs, vec![c(2.0, 0.0), c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn companion_agrees_with_aberth() {
        let coeffs = expand(&[(c(0.3, 1.0), 1), (c(-1.0, 0.2), 1), (c(0.7, -1.2), 1)]);
        let mut a = aberth(&coeffs).unwrap();
        let mut b = companion_roots(&coeffs);
        let key = |z: &Complex64| (z.re * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn triple_root_clusters() {
        let coeffs = expand(&[(c(0.5, 0.5), 3), (c(-1.5, -1.5), 1)]);
        let roots = solve(&coeffs, 1e-7).unwrap();
        assert_eq!(roots.len(), 2);
        let triple = roots.iter().find(|r| r.1 == 3).unwrap();
        assert!((triple.0 - c(0.5, 0.5)).norm() < 1e-5);
    }

    #[test]
    fn close_distinct_roots_stay_apart() {
        let coeffs = expand(&[(c(1e-3, 0.0), 1), (c(-1e-3, 0.0), 1), (c(1.0, 1.0), 1), (c(-1.0, -1.0), 1)]);
        let roots = solve(&coeffs, 1e-7).unwrap();
        assert_eq!(roots.len(), 4);
    }
}
