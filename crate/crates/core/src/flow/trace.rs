use std::f64::consts::PI;

use num_complex::Complex64;

use super::integrals::tail_time;
use super::{asymptotic_angle, Diagnostic, Direction, FlowError, Outcome, SeparatrixTrace, TraceOptions};
use crate::PolynomialVF;

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const TRAP_NODES: usize = 64;
const TRAP_EVERY: usize = 16;
const RUNAWAY_FACTOR: f64 = 1e8;

/// One embedded step of `z' = f(z)`; returns the new point, the derivative
/// there (for reuse) and the error estimate.
fn dopri_step(f: &impl Fn(Complex64) -> Complex64, z: Complex64, k1: Complex64, h: f64) -> (Complex64, Complex64, f64) {
    let mut k = [Complex64::new(0.0, 0.0); 7];
    k[0] = k1;
    for s in 1..7 {
        let mut acc = z;
        for (j, kj) in k.iter().enumerate().take(s) {
            acc += *kj * (h * A[s][j]);
        }
        k[s] = f(acc);
    }
    // The 7th stage is evaluated at the 5th order solution.
    let mut z_new = z;
    for j in 0..6 {
        z_new += k[j] * (h * A[6][j]);
    }
    let mut err = Complex64::new(0.0, 0.0);
    for j in 0..7 {
        err += k[j] * (h * E[j]);
    }
    (z_new, k[6], err.norm())
}

/// Point on the escape circle near angle `theta` where `Im T = 0`.
fn start_point(p: &PolynomialVF, theta: f64, radius: f64) -> Result<Complex64, FlowError> {
    let mut phi = 0.0;
    let max_step = PI / (8.0 * (p.degree() as f64 - 1.0));
    for _ in 0..60 {
        let z = Complex64::from_polar(radius, theta + phi);
        let g = tail_time(p, z, radius * (1.0 - 1e-12))?.im;
        let dg = (-Complex64::i() * z / p.eval(z)).im;
        if dg == 0.0 {
            break;
        }
        let step = (g / dg).clamp(-max_step, max_step);
        phi -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    Ok(Complex64::from_polar(radius, theta + phi))
}

fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    if y > PI {
        y -= two_pi;
    }
    y
}

/// Does the flow point strictly into the disk of radius `r` around `zeta`
/// everywhere on its boundary?
fn trapped(p: &PolynomialVF, zeta: Complex64, r: f64, sigma: f64) -> bool {
    (0..TRAP_NODES).all(|k| {
        let w = Complex64::from_polar(r, 2.0 * PI * k as f64 / TRAP_NODES as f64);
        let v = p.eval(zeta + w) * sigma;
        (v * w.conj()).re < 0.0
    })
}

/// Trace separatrix `index` from the escape circle inward until it lands,
/// returns to infinity along another separatrix, or the budget runs out.
pub fn trace_separatrix(p: &PolynomialVF, index: usize, opts: &TraceOptions) -> Result<SeparatrixTrace, FlowError> {
    let d = p.degree();
    let count = 2 * (d - 1);
    if index >= count {
        return Err(FlowError::IndexOutOfRange { index, degree: d });
    }
    let direction = Direction::of_index(index);
    let sigma = direction.time_sign();
    let radius = opts.escape_radius(p);
    let landing = opts.landing_radius(p);
    let angle_tol = opts.angle_tol_for(d);

    let z0 = start_point(p, asymptotic_angle(index, d), radius)?;
    let t0 = tail_time(p, z0, radius * (1.0 - 1e-12))?;

    let roots = p.roots();
    let separation: Vec<f64> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| (q.position - r.position).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let f = |z: Complex64| p.eval(z) * sigma;
    let mut path = vec![z0];
    let mut times = vec![0.0];
    let mut z = z0;
    let mut k1 = f(z);
    let mut s = 0.0;
    let (_, dist0) = p.nearest_root(z);
    let mut h = 0.05 * dist0.min(z.norm()) / k1.norm();
    let mut steps = 0usize;
    let mut attempts = 0usize;
    let mut inside = false;
    let mut excursions = 0usize;
    let mut last_residual = None;
    let mut peak = 0.0f64;
    let mut last_peak = f64::INFINITY;
    let mut tightening = true;

    let uncertain = |reason: String, z: Complex64, residual: Option<f64>, steps: usize, path, times| SeparatrixTrace {
        index,
        direction,
        outcome: Outcome::Uncertain(Diagnostic { reason, final_point: z, angular_residual: residual, steps }),
        path,
        times,
        tail_time: t0,
    };

    loop {
        if steps >= opts.step_budget || attempts >= 4 * opts.step_budget {
            return Ok(uncertain("step budget exhausted".into(), z, last_residual, steps, path, times));
        }
        attempts += 1;
        let (_, dist) = p.nearest_root(z);
        let speed = k1.norm();
        let cap = 0.2 * dist.min(z.norm().max(dist)) / speed;
        let h_try = h.min(cap);
        let (z_new, k_new, err) = dopri_step(&f, z, k1, h_try);
        let tol = opts.rtol * (dist + 1e-3 * z.norm());
        if !z_new.is_finite() || err > tol {
            let factor = if err.is_finite() && err > 0.0 { 0.9 * (tol / err).powf(0.2) } else { 0.2 };
            h = h_try * factor.clamp(0.1, 0.9);
            continue;
        }
        let factor = if err > 0.0 { 0.9 * (tol / err).powf(0.2) } else { 5.0 };
        h = h_try * factor.clamp(0.2, 5.0);
        z = z_new;
        k1 = k_new;
        s += h_try;
        steps += 1;
        path.push(z);
        times.push(sigma * s);

        let (idx_new, dist_new) = p.nearest_root(z);
        let zeta = roots[idx_new].position;
        let radial = (k1 * (z - zeta).conj()).re;
        if dist_new < landing && radial < 0.0 {
            return Ok(SeparatrixTrace {
                index,
                direction,
                outcome: Outcome::Landing { equilibrium: idx_new },
                path,
                times,
                tail_time: t0,
            });
        }
        if roots[idx_new].multiplicity == 1
            && dist_new < 0.25 * separation[idx_new]
            && steps.is_multiple_of(TRAP_EVERY)
            && radial < 0.0
            && trapped(p, zeta, dist_new, sigma)
        {
            // Finish along the linearized flow down to half the landing radius.
            let rate = p.residue_at(idx_new).inv() * sigma;
            if rate.re < 0.0 {
                let extra = (0.5 * landing / dist_new).ln() / rate.re;
                path.push(zeta + (z - zeta) * (rate * extra).exp());
                times.push(sigma * (s + extra));
            }
            return Ok(SeparatrixTrace {
                index,
                direction,
                outcome: Outcome::Landing { equilibrium: idx_new },
                path,
                times,
                tail_time: t0,
            });
        }

        let modulus = z.norm();
        if !inside {
            peak = peak.max(modulus);
        }
        if modulus < 0.9 * radius {
            if !inside && excursions > 0 {
                tightening &= peak < last_peak;
                last_peak = peak;
            }
            inside = true;
            peak = 0.0;
        }
        if modulus > radius * RUNAWAY_FACTOR {
            return Ok(uncertain("trajectory ran away toward infinity".into(), z, last_residual, steps, path, times));
        }
        if inside && modulus > radius {
            inside = false;
            excursions += 1;
            let t1 = tail_time(p, z, radius)?;
            let tau = s + sigma * (t1 - t0);
            let slot = z.arg() * (d as f64 - 1.0) / PI;
            let partner = (slot.round() as i64).rem_euclid(count as i64) as usize;
            let residual = wrap_angle(z.arg() - asymptotic_angle(partner, d)).abs();
            last_residual = Some(residual);
            let real = tau.im.abs() <= opts.reality_tol * (1.0 + tau.norm());
            if residual < angle_tol && partner % 2 != index % 2 && real && tau.re > 0.0 {
                return Ok(SeparatrixTrace {
                    index,
                    direction,
                    outcome: Outcome::Homoclinic { partner, tau },
                    path,
                    times,
                    tail_time: t0,
                });
            }
            // A spiral onto a weak focus keeps returning with shrinking peaks.
            if excursions > 4 * (d - 1) && !tightening {
                return Ok(uncertain(
                    format!("{excursions} passes near infinity without a matching return"),
                    z,
                    last_residual,
                    steps,
                    path,
                    times,
                ));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn homoclinic_of_z2_plus_1() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let t = trace_separatrix(&p, 1, &TraceOptions::default()).unwrap();
        match t.outcome {
            Outcome::Homoclinic { partner, tau } => {
                assert_eq!(partner, 0);
                assert!((tau - c(PI, 0.0)).norm() < 1e-6, "{tau}");
            }
            other => panic!("{other:?}"),
        }
        let t0 = trace_separatrix(&p, 0, &TraceOptions::default()).unwrap();
        match t0.outcome {
            Outcome::Homoclinic { partner, tau } => {
                assert_eq!(partner, 1);
                assert!((tau - c(PI, 0.0)).norm() < 1e-6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn landings_of_z2_minus_1() {
        let p = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        let opts = TraceOptions::default();
        let t1 = trace_separatrix(&p, 1, &opts).unwrap();
        let Outcome::Landing { equilibrium } = t1.outcome else { panic!("{:?}", t1.outcome) };
        assert!((p.roots()[equilibrium].position - c(-1.0, 0.0)).norm() < 1e-9);
        let t0 = trace_separatrix(&p, 0, &opts).unwrap();
        let Outcome::Landing { equilibrium } = t0.outcome else { panic!() };
        assert!((p.roots()[equilibrium].position - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn radial_field_lands_everywhere() {
        for d in 2..=4 {
            let p = PolynomialVF::monomial(d).unwrap();
            for l in 0..2 * (d - 1) {
                let t = trace_separatrix(&p, l, &TraceOptions::default()).unwrap();
                assert!(t.is_landing(), "d={d} l={l}: {:?}", t.outcome);
                let last = *t.path.last().unwrap();
                assert!(last.norm() < TraceOptions::default().landing_radius(&p));
            }
        }
    }

    #[test]
    fn index_out_of_range() {
        let p = PolynomialVF::monomial(2).unwrap();
        assert!(matches!(
            trace_separatrix(&p, 2, &TraceOptions::default()),
            Err(FlowError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn start_point_is_on_real_time_line() {
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.3), 1), (c(-0.4, 1.0), 1), (c(-0.6, -1.3), 1)]).unwrap();
        let r = TraceOptions::default().escape_radius(&p);
        for l in 0..4 {
            let z = start_point(&p, asymptotic_angle(l, 3), r).unwrap();
            let t = tail_time(&p, z, r * 0.5).unwrap();
            assert!(t.im.abs() < 1e-15 * (1.0 + t.norm()) + 1e-17, "{t}");
            assert_eq!(t.re > 0.0, l % 2 == 0);
        }
    }
}
