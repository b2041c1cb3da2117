use num_complex::Complex64;
use rayon::prelude::*;

use super::{trace_separatrix, FlowError, Outcome, SeparatrixTrace, TraceOptions};
use crate::{EquilibriumKind, EquilibriumPoint, PolynomialVF};

/// A homoclinic seen from both of its ends.
#[derive(Debug, Clone, PartialEq)]
pub struct HomoclinicMatch {
    pub odd: usize,
    pub even: usize,
    pub tau_odd: Complex64,
    pub tau_even: Complex64,
}

impl HomoclinicMatch {
    /// Mean of the two one-sided values.
    pub fn tau(&self) -> Complex64 {
        0.5 * (self.tau_odd + self.tau_even)
    }

    pub fn relative_gap(&self) -> f64 {
        (self.tau_odd - self.tau_even).norm() / self.tau().norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatrixGraphNumeric {
    pub traces: Vec<SeparatrixTrace>,
    pub equilibria: Vec<EquilibriumPoint>,
    pub homoclinics: Vec<HomoclinicMatch>,
    /// Everything that prevents a confident reading; empty when consistent.
    pub issues: Vec<String>,
}

impl SeparatrixGraphNumeric {
    pub fn degree(&self) -> usize {
        self.traces.len() / 2 + 1
    }

    pub fn is_consistent(&self) -> bool {
        self.issues.is_empty()
    }

    /// Landing map: separatrix index to equilibrium index.
    pub fn landing_of(&self, index: usize) -> Option<usize> {
        match self.traces[index].outcome {
            Outcome::Landing { equilibrium } => Some(equilibrium),
            _ => None,
        }
    }
}

/// Largest relative disagreement tolerated between the two one-sided τ values.
pub const TAU_AGREEMENT: f64 = 1e-6;

/// Cross-check outcomes of already traced separatrices.
pub(crate) fn assemble(traces: Vec<SeparatrixTrace>, equilibria: Vec<EquilibriumPoint>) -> SeparatrixGraphNumeric {
    let mut issues = Vec::new();
    let mut homoclinics = Vec::new();
    let mut landings = vec![0usize; equilibria.len()];
    for t in &traces {
        match &t.outcome {
            Outcome::Uncertain(diag) => issues.push(format!("s_{}: {diag}", t.index)),
            Outcome::Landing { equilibrium } => {
                landings[*equilibrium] += 1;
                let kind = equilibria[*equilibrium].kind;
                let allowed = match kind {
                    EquilibriumKind::Multiple => true,
                    EquilibriumKind::Sink => t.index % 2 == 1,
                    EquilibriumKind::Source => t.index % 2 == 0,
                    EquilibriumKind::Center => false,
                };
                if !allowed {
                    issues.push(format!("s_{} lands at equilibrium {} of kind {kind}", t.index, equilibrium));
                }
            }
            Outcome::Homoclinic { partner, tau } => {
                if partner % 2 == t.index % 2 {
                    issues.push(format!("s_{} returns at s_{partner} of equal parity", t.index));
                    continue;
                }
                match &traces[*partner].outcome {
                    Outcome::Homoclinic { partner: back, tau: other } if *back == t.index => {
                        if t.index % 2 == 1 {
                            let m = HomoclinicMatch { odd: t.index, even: *partner, tau_odd: *tau, tau_even: *other };
                            if m.relative_gap() > TAU_AGREEMENT {
                                issues.push(format!(
                                    "homoclinic ({}, {}) one-sided times disagree by {:.3e}",
                                    m.odd,
                                    m.even,
                                    m.relative_gap()
                                ));
                            }
                            homoclinics.push(m);
                        }
                    }
                    _ => issues.push(format!("s_{} returns at s_{partner}, which does not return at s_{}", t.index, t.index)),
                }
            }
        }
    }
    for (i, e) in equilibria.iter().enumerate() {
        match e.kind {
            EquilibriumKind::Center if landings[i] > 0 => {
                issues.push(format!("center {} receives {} landing separatrices", e.position, landings[i]))
            }
            EquilibriumKind::Center => {}
            kind if landings[i] == 0 => issues.push(format!("{kind} {} receives no landing separatrix", e.position)),
            _ => {}
        }
    }
    SeparatrixGraphNumeric { traces, equilibria, homoclinics, issues }
}

/// Trace all separatrices with default options.
pub fn separatrix_graph(p: &PolynomialVF) -> Result<SeparatrixGraphNumeric, FlowError> {
    separatrix_graph_with(p, &TraceOptions::default())
}

/// Trace all `2(d-1)` separatrices concurrently and cross-match them.
/// An inconsistent result comes back as `UncertainClassification`.
pub fn separatrix_graph_with(p: &PolynomialVF, opts: &TraceOptions) -> Result<SeparatrixGraphNumeric, FlowError> {
    let count = 2 * (p.degree() - 1);
    let traces = (0..count)
        .into_par_iter()
        .map(|l| trace_separatrix(p, l, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let graph = assemble(traces, p.equilibria());
    if graph.is_consistent() {
        Ok(graph)
    } else {
        Err(FlowError::UncertainClassification(Box::new(graph)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn z2_plus_1_has_one_homoclinic() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let g = separatrix_graph(&p).unwrap();
        assert_eq!(g.homoclinics.len(), 1);
        let h = &g.homoclinics[0];
        assert_eq!((h.odd, h.even), (1, 0));
        assert!((h.tau() - Complex64::new(PI, 0.0)).norm() < 1e-6);
        assert!(g.equilibria.iter().all(|e| e.kind == EquilibriumKind::Center));
    }

    #[test]
    fn z2_minus_1_lands_both() {
        let p = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        let g = separatrix_graph(&p).unwrap();
        let at = |l| g.equilibria[g.landing_of(l).unwrap()].position;
        assert!((at(0) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!((at(1) - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn monomial_lands_at_origin() {
        let p = PolynomialVF::monomial(4).unwrap();
        let g = separatrix_graph(&p).unwrap();
        assert!((0..6).all(|l| g.landing_of(l) == Some(0)));
    }
}
