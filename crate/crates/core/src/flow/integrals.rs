use num_complex::Complex64;

use super::FlowError;
use crate::quad;
use crate::PolynomialVF;

/// Minimal distance from the segment `[a, b]` to `point`.
pub(crate) fn segment_distance(a: Complex64, b: Complex64, point: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (point - a).norm();
    }
    let t = ((point - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (a + ab * t - point).norm()
}

/// `integral of dz/P(z)` along a polyline. Every segment must keep a distance
/// of at least `safety` from every root.
pub fn path_time_integral(p: &PolynomialVF, path: &[Complex64], safety: f64) -> Result<Complex64, FlowError> {
    let mut total = Complex64::new(0.0, 0.0);
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        for r in p.roots() {
            let distance = segment_distance(a, b, r.position);
            if distance < safety {
                return Err(FlowError::PathThroughSingularity { root: r.position, distance, safety });
            }
        }
        let delta = b - a;
        if delta.norm() == 0.0 {
            continue;
        }
        let magnitude = delta.norm() / p.eval(a).norm().min(p.eval(b).norm()).min(p.eval(0.5 * (a + b)).norm());
        let (value, _) = quad::integrate(|s| delta / p.eval(a + delta * s), 0.0, 1.0, 1e-13 * magnitude);
        total += value;
    }
    Ok(total)
}

/// As [`path_time_integral`], with the two tails from infinity to the first
/// point and from the last point back to infinity added.
pub fn path_time_integral_with_tails(
    p: &PolynomialVF,
    path: &[Complex64],
    safety: f64,
    escape_radius: f64,
) -> Result<Complex64, FlowError> {
    let first = *path.first().expect("non-empty path");
    let last = *path.last().expect("non-empty path");
    let head = tail_time(p, first, escape_radius)?;
    let tail = tail_time(p, last, escape_radius)?;
    Ok(-head + path_time_integral(p, path, safety)? + tail)
}

/// `integral of dw/P(w)` from `z` to infinity along the outward ray.
///
/// The leading term `z^(1-d)/(d-1)` is exact; the remainder is integrated
/// after the substitution `w = z/v`, which maps the ray onto `v in (0, 1]`
/// with a smooth integrand vanishing at `v = 0`.
pub fn tail_time(p: &PolynomialVF, z: Complex64, escape_radius: f64) -> Result<Complex64, FlowError> {
    if z.norm() < escape_radius {
        return Err(FlowError::InsideEscapeRadius { point: z, radius: escape_radius });
    }
    let d = p.degree();
    let coeffs = p.coeffs();
    let zd = z.powu(d as u32);
    let leading = z.powu(d as u32 - 1).inv() / (d as f64 - 1.0);
    // Powers z^k for the rescaled polynomial Q(v) = sum a_k z^k v^(d-k).
    let zpow: Vec<Complex64> = (0..=d).map(|k| z.powu(k as u32)).collect();
    let integrand = |v: f64| {
        let mut q = Complex64::new(0.0, 0.0);
        for k in (0..=d).rev() {
            q += coeffs[k] * zpow[k] * v.powi((d - k) as i32);
        }
        z * v.powi(d as i32 - 2) * (q.inv() - zd.inv())
    };
    let (correction, _) = quad::integrate(integrand, 0.0, 1.0, 1e-15 * leading.norm());
    Ok(leading + correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tail_time_examples() {
        let z2 = PolynomialVF::monomial(2).unwrap();
        assert!((tail_time(&z2, c(10.0, 0.0), 10.0).unwrap() - c(0.1, 0.0)).norm() < 1e-10);
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let exact = PI / 2.0 - 10f64.atan();
        assert!((tail_time(&p, c(10.0, 0.0), 10.0).unwrap() - c(exact, 0.0)).norm() < 1e-12);
        let z3 = PolynomialVF::monomial(3).unwrap();
        assert!((tail_time(&z3, c(10.0, 0.0), 10.0).unwrap() - c(0.005, 0.0)).norm() < 1e-12);
        assert!(matches!(
            tail_time(&p, c(5.0, 0.0), 20.0),
            Err(FlowError::InsideEscapeRadius { .. })
        ));
    }

    #[test]
    fn tail_time_off_axis_matches_closed_form() {
        // integral from z to infinity of dw/(w^2+1) = pi/2 - arctan(z) for Re z > 0 branch
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let z = c(8.0, 6.0);
        let exact = Complex64::new(PI / 2.0, 0.0) - z.atan();
        assert!((tail_time(&p, z, 10.0).unwrap() - exact).norm() < 1e-12);
    }

    #[test]
    fn path_integral_examples() {
        let z2 = PolynomialVF::monomial(2).unwrap();
        let v = path_time_integral(&z2, &[c(2.0, 0.0), c(3.0, 0.0)], 1e-8).unwrap();
        assert!((v - c(1.0 / 6.0, 0.0)).norm() < 1e-12);

        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let v = path_time_integral_with_tails(&p, &[c(-20.0, 0.0), c(20.0, 0.0)], 1e-8, 20.0).unwrap();
        assert!((v - c(PI, 0.0)).norm() < 1e-10);

        let q = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        assert!(matches!(
            path_time_integral(&q, &[c(0.0, 0.0), c(2.0, 0.0)], 1e-8),
            Err(FlowError::PathThroughSingularity { .. })
        ));
    }

    #[test]
    fn homotopic_paths_agree() {
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.5), 1), (c(-1.0, 0.5), 1), (c(0.0, -1.0), 1)]).unwrap();
        let a = c(-2.0, -2.0);
        let b = c(2.0, -2.5);
        let direct = path_time_integral(&p, &[a, b], 1e-6).unwrap();
        let detour = path_time_integral(&p, &[a, c(-0.5, -3.0), c(1.0, -1.8), b], 1e-6).unwrap();
        assert!((direct - detour).norm() < 2e-10);
    }
}
