//! Trajectories of `dz/dt = P(z)`: the separatrices from infinity, their
//! outcomes, and complex time integrals of `dz/P`.

mod graph;
mod integrals;
mod trace;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub use graph::{separatrix_graph, separatrix_graph_with, HomoclinicMatch, SeparatrixGraphNumeric, TAU_AGREEMENT};
pub use integrals::{path_time_integral, path_time_integral_with_tails, tail_time};
pub use trace::trace_separatrix;

#[derive(Debug, Error, Clone)]
pub enum FlowError {
    #[error("path passes within {distance:e} of the root {root} (safety radius {safety:e})")]
    PathThroughSingularity { root: Complex64, distance: f64, safety: f64 },
    #[error("point {point} lies inside the escape radius {radius}")]
    InsideEscapeRadius { point: Complex64, radius: f64 },
    #[error("separatrix index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("separatrix graph is uncertain: {}", .0.issues.join("; "))]
    UncertainClassification(Box<SeparatrixGraphNumeric>),
}

/// Numerical knobs for separatrix tracing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Escape radius is `escape_factor * (1 + max|root|)`.
    pub escape_factor: f64,
    /// Landing radius is `landing_factor * (1 + max|root|)`.
    pub landing_factor: f64,
    pub step_budget: usize,
    /// Maximal angular residual when matching a return to infinity;
    /// `None` means `pi / (4 (d - 1))`.
    pub angle_tol: Option<f64>,
    /// `|Im tau| / (1 + |tau|)` below which a return to infinity is a homoclinic.
    pub reality_tol: f64,
    /// Local error tolerance of the integrator, relative to the local length scale.
    pub rtol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            escape_factor: 10.0,
            landing_factor: 1e-8,
            step_budget: 1_000_000,
            angle_tol: None,
            reality_tol: 1e-7,
            rtol: 1e-11,
        }
    }
}

impl TraceOptions {
    pub fn escape_radius(&self, p: &crate::PolynomialVF) -> f64 {
        self.escape_factor * p.root_scale()
    }

    pub fn landing_radius(&self, p: &crate::PolynomialVF) -> f64 {
        self.landing_factor * p.root_scale()
    }

    pub fn angle_tol_for(&self, degree: usize) -> f64 {
        self.angle_tol.unwrap_or(PI / (4.0 * (degree as f64 - 1.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Even index: reaches infinity in forward time.
    Incoming,
    /// Odd index: leaves infinity in forward time.
    Outgoing,
}

impl Direction {
    pub fn of_index(index: usize) -> Self {
        if index.is_multiple_of(2) {
            Direction::Incoming
        } else {
            Direction::Outgoing
        }
    }

    /// Sign of time along which the trace is integrated away from infinity.
    pub fn time_sign(self) -> f64 {
        match self {
            Direction::Incoming => -1.0,
            Direction::Outgoing => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub reason: String,
    pub final_point: Complex64,
    pub angular_residual: Option<f64>,
    pub steps: usize,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} after {} steps", self.reason, self.final_point, self.steps)?;
        if let Some(r) = self.angular_residual {
            write!(f, " (angular residual {r:.3e})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Landing { equilibrium: usize },
    Homoclinic { partner: usize, tau: Complex64 },
    Uncertain(Diagnostic),
}

/// One traced separatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatrixTrace {
    pub index: usize,
    pub direction: Direction,
    pub outcome: Outcome,
    /// Path from the escape circle inward.
    pub path: Vec<Complex64>,
    /// Real flow time at each path point, relative to the start point.
    pub times: Vec<f64>,
    /// `integral of dz/P` from the start point to infinity along the ray.
    pub tail_time: Complex64,
}

impl SeparatrixTrace {
    pub fn is_landing(&self) -> bool {
        matches!(self.outcome, Outcome::Landing { .. })
    }

    /// Time from infinity to path point `i` along the oriented separatrix:
    /// positive for outgoing (elapsed since leaving infinity), and for incoming
    /// traces the remaining time until infinity is reached.
    pub fn time_from_infinity(&self, i: usize) -> f64 {
        match self.direction {
            Direction::Outgoing => -self.tail_time.re + self.times[i],
            Direction::Incoming => self.tail_time.re - self.times[i],
        }
    }
}

/// Asymptotic angle of separatrix `index` in degree `d`.
pub fn asymptotic_angle(index: usize, degree: usize) -> f64 {
    PI * index as f64 / (degree as f64 - 1.0)
}
