//! Monic centered polynomial vector fields `P(z) d/dz`, their equilibria and
//! residues.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::roots;
use crate::text::{self, format_complex, PolynomialText, TextError};

/// Centering tolerance relative to the root scale `1 + max|root|`.
pub const CENTERING_TOL: f64 = 1e-10;
/// Multiplicity clustering radius relative to the root scale.
pub const CLUSTER_RADIUS: f64 = 1e-7;
/// Band for `|Re rho| / |rho|` inside which an equilibrium counts as a center.
pub const KIND_TOL: f64 = 1e-9;
/// Quadrature nodes for residues at multiple roots.
const CONTOUR_NODES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("roots are not centered: weighted sum has modulus {0:e}")]
    NotCentered(f64),
    #[error("degree {0} is below 2")]
    DegreeTooLow(usize),
    #[error("leading coefficient must be exactly 1")]
    NotMonic,
    #[error("root solver did not converge (reconstruction residual {0:e})")]
    NoConvergence(f64),
    #[error("{0} is not a root of the polynomial")]
    NotARoot(Complex64),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error(transparent)]
    Text(#[from] TextError),
}

/// One distinct root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub position: Complex64,
    pub multiplicity: usize,
}

/// An element of the parameter space: `z^d + a_{d-2} z^{d-2} + ... + a_0`.
///
/// Both representations are stored; whichever was supplied is authoritative
/// and the other is derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialVF {
    coeffs: Vec<Complex64>,
    roots: Vec<Root>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Source,
    Sink,
    Center,
    Multiple,
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquilibriumKind::Source => "source",
            EquilibriumKind::Sink => "sink",
            EquilibriumKind::Center => "center",
            EquilibriumKind::Multiple => "multiple",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint {
    pub position: Complex64,
    pub multiplicity: usize,
    pub residue: Complex64,
    pub kind: EquilibriumKind,
    /// `|Re rho|` lies within ten times the kind tolerance.
    pub near_bifurcation: bool,
}

fn root_scale(roots: &[Root]) -> f64 {
    1.0 + roots.iter().map(|r| r.position.norm()).fold(0.0, f64::max)
}

impl PolynomialVF {
    /// Build from a root multiset. The weighted root sum must vanish to
    /// within the centering tolerance.
    pub fn from_roots(roots: &[(Complex64, usize)]) -> Result<Self, PolyError> {
        let roots: Vec<Root> = roots
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|&(position, multiplicity)| Root { position, multiplicity })
            .collect();
        let degree: usize = roots.iter().map(|r| r.multiplicity).sum();
        if degree < 2 {
            return Err(PolyError::DegreeTooLow(degree));
        }
        let sum: Complex64 = roots.iter().map(|r| r.position * r.multiplicity as f64).sum();
        if sum.norm() > CENTERING_TOL * root_scale(&roots) {
            return Err(PolyError::NotCentered(sum.norm()));
        }
        let pairs: Vec<(Complex64, usize)> = roots.iter().map(|r| (r.position, r.multiplicity)).collect();
        let mut coeffs = roots::expand(&pairs);
        coeffs[degree] = Complex64::new(1.0, 0.0);
        coeffs[degree - 1] = Complex64::new(0.0, 0.0);
        Ok(Self { coeffs, roots })
    }

    /// Build from a root multiset after subtracting the weighted mean.
    pub fn from_roots_recentered(roots: &[(Complex64, usize)]) -> Result<Self, PolyError> {
        let total: usize = roots.iter().map(|r| r.1).sum();
        if total < 2 {
            return Err(PolyError::DegreeTooLow(total));
        }
        let mean = roots.iter().map(|(z, m)| z * *m as f64).sum::<Complex64>() / total as f64;
        let shifted: Vec<_> = roots.iter().map(|&(z, m)| (z - mean, m)).collect();
        Self::from_roots(&shifted)
    }

    /// Build from ascending coefficients `a_0, ..., a_{d-2}, 0, 1`.
    pub fn from_coeffs(coeffs: &[Complex64]) -> Result<Self, PolyError> {
        if coeffs.len() < 3 {
            return Err(PolyError::DegreeTooLow(coeffs.len().saturating_sub(1)));
        }
        let d = coeffs.len() - 1;
        if coeffs[d] != Complex64::new(1.0, 0.0) {
            return Err(PolyError::NotMonic);
        }
        let coef_scale = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if coeffs[d - 1].norm() > CENTERING_TOL * coef_scale {
            return Err(PolyError::NotCentered(coeffs[d - 1].norm()));
        }
        let mut coeffs = coeffs.to_vec();
        coeffs[d - 1] = Complex64::new(0.0, 0.0);
        let found = roots::solve(&coeffs, CLUSTER_RADIUS).map_err(PolyError::NoConvergence)?;
        let roots = found
            .into_iter()
            .map(|(position, multiplicity)| Root { position, multiplicity })
            .collect();
        Ok(Self { coeffs, roots })
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        match text::parse_polynomial_text(text)? {
            PolynomialText::Coefficients(c) => Self::from_coeffs(&c),
            PolynomialText::Roots(r) => Self::from_roots(&r),
        }
    }

    /// `z^d`.
    pub fn monomial(d: usize) -> Result<Self, PolyError> {
        Self::from_roots(&[(Complex64::new(0.0, 0.0), d)])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_pairs(&self) -> Vec<(Complex64, usize)> {
        self.roots.iter().map(|r| (r.position, r.multiplicity)).collect()
    }

    /// `1 + max|root|`.
    pub fn root_scale(&self) -> f64 {
        root_scale(&self.roots)
    }

    pub fn cluster_radius(&self) -> f64 {
        CLUSTER_RADIUS * self.root_scale()
    }

    /// Evaluate `P(z)`, using the root form near the roots for accuracy.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.roots
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, r| acc * (z - r.position).powu(r.multiplicity as u32))
    }

    pub fn eval_coeffs(&self, z: Complex64) -> Complex64 {
        roots::horner(&self.coeffs, z)
    }

    /// Distance from `z` to the nearest root.
    pub fn distance_to_roots(&self, z: Complex64) -> f64 {
        self.roots
            .iter()
            .map(|r| (z - r.position).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn nearest_root(&self, z: Complex64) -> (usize, f64) {
        self.roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (z - r.position).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    pub fn min_root_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.roots.iter().enumerate() {
            for b in &self.roots[i + 1..] {
                best = best.min((a.position - b.position).norm());
            }
        }
        best
    }

    /// Residue of `1/P` at the root closest to `zeta`.
    pub fn residue(&self, zeta: Complex64) -> Result<Complex64, PolyError> {
        let (idx, dist) = self.nearest_root(zeta);
        if dist > self.cluster_radius() {
            return Err(PolyError::NotARoot(zeta));
        }
        Ok(self.residue_at(idx))
    }

    /// Residue of `1/P` at the `idx`-th distinct root.
    pub fn residue_at(&self, idx: usize) -> Complex64 {
        let root = self.roots[idx];
        if root.multiplicity == 1 {
            let derivative = self
                .roots
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, r)| {
                    acc * (root.position - r.position).powu(r.multiplicity as u32)
                });
            return derivative.inv();
        }
        let others = self
            .roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, r)| (r.position - root.position).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = if others.is_finite() { 0.4 * others } else { 1.0 };
        contour_residue(|z| self.eval(z).inv(), root.position, radius)
    }

    pub fn equilibria(&self) -> Vec<EquilibriumPoint> {
        (0..self.roots.len())
            .map(|i| {
                let residue = self.residue_at(i);
                let multiplicity = self.roots[i].multiplicity;
                let (kind, near_bifurcation) = classify_equilibrium(residue, multiplicity);
                EquilibriumPoint {
                    position: self.roots[i].position,
                    multiplicity,
                    residue,
                    kind,
                    near_bifurcation,
                }
            })
            .collect()
    }

    /// The polynomial with roots multiplied by `c > 0`.
    pub fn scale_roots(&self, c: f64) -> Result<Self, PolyError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(PolyError::NonPositiveScale(c));
        }
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * c.powi((d - k) as i32))
            .collect();
        let roots = self
            .roots
            .iter()
            .map(|r| Root { position: r.position * c, multiplicity: r.multiplicity })
            .collect();
        Ok(Self { coeffs, roots })
    }

    /// Sorted multiplicity pattern, e.g. `[1, 2]` for `(z-1)^2 (z+2)`.
    pub fn multiplicity_pattern(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.roots.iter().map(|r| r.multiplicity).collect();
        m.sort_unstable();
        m
    }

    pub fn coeffs_text(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|&c| format_complex(c)).collect();
        format!("coeffs: {}", items.join(","))
    }

    pub fn roots_text(&self) -> String {
        let items: Vec<String> = self
            .roots
            .iter()
            .map(|r| {
                if r.multiplicity == 1 {
                    format_complex(r.position)
                } else {
                    format!("{}^{}", format_complex(r.position), r.multiplicity)
                }
            })
            .collect();
        format!("roots: {}", items.join(","))
    }
}

/// `(1 / 2 pi i) * integral of f around a circle`, trapezoidal rule.
pub fn contour_residue(f: impl Fn(Complex64) -> Complex64, center: Complex64, radius: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..CONTOUR_NODES {
        let theta = 2.0 * PI * k as f64 / CONTOUR_NODES as f64;
        let offset = Complex64::from_polar(radius, theta);
        // dz = i * offset * dtheta
        acc += f(center + offset) * offset;
    }
    acc / CONTOUR_NODES as f64
}

/// Equilibrium kind from the residue and multiplicity, with the
/// near-bifurcation flag.
pub fn classify_equilibrium(residue: Complex64, multiplicity: usize) -> (EquilibriumKind, bool) {
    if multiplicity > 1 {
        return (EquilibriumKind::Multiple, false);
    }
    let band = KIND_TOL * residue.norm();
    let re = residue.re;
    let kind = if re.abs() < band {
        EquilibriumKind::Center
    } else if re > 0.0 {
        EquilibriumKind::Source
    } else {
        EquilibriumKind::Sink
    };
    (kind, re.abs() < 10.0 * band)
}

impl fmt::Display for PolynomialVF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeffs_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn from_roots_examples() {
        let p = PolynomialVF::from_roots(&[(c(0.0, 1.0), 1), (c(0.0, -1.0), 1)]).unwrap();
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let p = PolynomialVF::from_roots(&[(c(0.0, 0.0), 2)]).unwrap();
        assert_eq!(p.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.0), 2), (c(-2.0, 0.0), 1)]).unwrap();
        assert_eq!(p.coeffs(), &[c(2.0, 0.0), c(-3.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn from_roots_errors() {
        assert!(matches!(
            PolynomialVF::from_roots(&[(c(1.0, 0.0), 1), (c(0.0, 0.0), 1)]),
            Err(PolyError::NotCentered(_))
        ));
        assert!(matches!(
            PolynomialVF::from_roots(&[(c(0.0, 0.0), 1)]),
            Err(PolyError::DegreeTooLow(1))
        ));
    }

    #[test]
    fn find_roots_examples() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        assert_eq!(p.roots().len(), 2);
        assert!(p.roots().iter().any(|r| close(r.position, c(0.0, 1.0), 1e-12)));
        assert!(p.roots().iter().any(|r| close(r.position, c(0.0, -1.0), 1e-12)));

        let p = PolynomialVF::parse("coeffs: 0,0,0,1").unwrap();
        assert_eq!(p.roots().len(), 1);
        assert_eq!(p.roots()[0].multiplicity, 3);
        assert!(p.roots()[0].position.norm() < 1e-7);

        let p = PolynomialVF::parse("coeffs: 2,-3,0,1").unwrap();
        assert_eq!(p.multiplicity_pattern(), vec![1, 2]);
        for r in p.roots() {
            // substitution check
            assert!(p.eval_coeffs(r.position).norm() < 1e-12);
        }
        let double = p.roots().iter().find(|r| r.multiplicity == 2).unwrap();
        assert!(close(double.position, c(1.0, 0.0), 1e-6));
    }

    #[test]
    fn coefficient_input_errors() {
        assert!(matches!(PolynomialVF::parse("coeffs: 1,0,2"), Err(PolyError::NotMonic)));
        assert!(matches!(PolynomialVF::parse("coeffs: 1,1,1"), Err(PolyError::NotCentered(_))));
        assert!(matches!(PolynomialVF::parse("coeffs: 0,1"), Err(PolyError::DegreeTooLow(1))));
    }

    #[test]
    fn residue_examples() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        assert!(close(p.residue(c(0.0, 1.0)).unwrap(), c(0.0, -0.5), 1e-14));
        let p = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        assert!(close(p.residue(c(1.0, 0.0)).unwrap(), c(0.5, 0.0), 1e-14));
        for d in 2..6 {
            let p = PolynomialVF::monomial(d).unwrap();
            assert!(p.residue(c(0.0, 0.0)).unwrap().norm() < 1e-12);
        }
        assert!(matches!(p.residue(c(3.0, 0.0)), Err(PolyError::NotARoot(_))));
    }

    #[test]
    fn multiple_root_residue_matches_laurent_coefficient() {
        // 1/((z-1)^2 (z+2)): residue at 1 is d/dz 1/(z+2) at 1 = -1/9.
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.0), 2), (c(-2.0, 0.0), 1)]).unwrap();
        assert!(close(p.residue(c(1.0, 0.0)).unwrap(), c(-1.0 / 9.0, 0.0), 1e-13));
        assert!(close(p.residue(c(-2.0, 0.0)).unwrap(), c(1.0 / 9.0, 0.0), 1e-13));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_equilibrium(c(0.0, -0.5), 1).0, EquilibriumKind::Center);
        assert_eq!(classify_equilibrium(c(-0.5, 0.0), 1).0, EquilibriumKind::Sink);
        assert_eq!(classify_equilibrium(c(0.5, 0.0), 1).0, EquilibriumKind::Source);
        assert_eq!(classify_equilibrium(c(3.0, 1.0), 3).0, EquilibriumKind::Multiple);
        let (kind, near) = classify_equilibrium(c(5e-9, 1.0), 1);
        assert_eq!(kind, EquilibriumKind::Source);
        assert!(near);
    }

    #[test]
    fn scale_examples() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        assert_eq!(p.scale_roots(2.0).unwrap().coeffs(), &[c(4.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let z3 = PolynomialVF::monomial(3).unwrap();
        assert_eq!(z3.scale_roots(7.0).unwrap().coeffs(), z3.coeffs());
        let p = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        assert_eq!(p.scale_roots(0.5).unwrap().coeffs(), &[c(-0.25, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(p.scale_roots(0.0), Err(PolyError::NonPositiveScale(_))));
        assert!(matches!(p.scale_roots(-1.0), Err(PolyError::NonPositiveScale(_))));
    }

    #[test]
    fn text_forms_round_trip() {
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.0), 2), (c(-2.0, 0.0), 1)]).unwrap();
        assert_eq!(p.roots_text(), "roots: 1^2,-2");
        let q = PolynomialVF::parse(&p.coeffs_text()).unwrap();
        assert_eq!(q.coeffs(), p.coeffs());
    }
}
