//! Analytic invariants: `tau` for every homoclinic separatrix, `alpha` for
//! every distinguished transversal, and the residues they determine.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::combinat::{flower, CombinatError, CombinatorialDataSet, Flower, Skeleton, Zone, ZoneKind};
use crate::flow::{
    path_time_integral, separatrix_graph_with, FlowError, Outcome, SeparatrixGraphNumeric, SeparatrixTrace, TraceOptions,
};
use crate::text::{format_f64_exact, split_list, Document, TextError};
use crate::{EquilibriumKind, PolynomialVF};

/// Normalization between loop sums and residues: `sum = KAPPA * Res`.
pub const KAPPA: Complex64 = Complex64::new(0.0, 2.0 * PI);

#[derive(Debug, Error)]
pub enum InvariantsError {
    #[error("inconsistent separatrix graph: {0}")]
    InconsistentGraph(String),
    #[error("no admissible crossing path for transversal ({k}, {j}): {reason}")]
    CrossingPathHitsSingularity { k: usize, j: usize, reason: String },
    #[error("unbounded face: {0}")]
    UnboundedFace(String),
    #[error("invalid metric graph: {0}")]
    InvalidMetricGraph(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Combinat(#[from] CombinatError),
    #[error(transparent)]
    Text(#[from] TextError),
}

/// A combinatorial class together with its analytic invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    class: CombinatorialDataSet,
    /// One per round pair, in the order of `class.round()`.
    taus: Vec<f64>,
    /// One per square pair, in the order of `class.square()`.
    alphas: Vec<Complex64>,
}

impl MetricGraph {
    pub fn new(class: CombinatorialDataSet, taus: Vec<f64>, alphas: Vec<Complex64>) -> Result<Self, InvariantsError> {
        if taus.len() != class.h() || alphas.len() != class.s() {
            return Err(InvariantsError::InvalidMetricGraph(format!(
                "class {class} needs {} taus and {} alphas, got {} and {}",
                class.h(),
                class.s(),
                taus.len(),
                alphas.len()
            )));
        }
        if let Some(t) = taus.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
            return Err(InvariantsError::InvalidMetricGraph(format!("tau {t} is not a positive real")));
        }
        if let Some(a) = alphas.iter().find(|a| !(a.im > 0.0) || !a.is_finite()) {
            return Err(InvariantsError::InvalidMetricGraph(format!("alpha {a} is not in the upper half plane")));
        }
        Ok(Self { class, taus, alphas })
    }

    pub fn class(&self) -> &CombinatorialDataSet {
        &self.class
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    /// All invariants as complex numbers, taus first.
    pub fn values(&self) -> Vec<Complex64> {
        self.taus.iter().map(|&t| Complex64::new(t, 0.0)).chain(self.alphas.iter().copied()).collect()
    }

    /// Largest modulus among the invariants (1 when there are none).
    pub fn scale(&self) -> f64 {
        self.values().iter().map(|v| v.norm()).fold(0.0, f64::max).max(if self.values().is_empty() { 1.0 } else { 0.0 })
    }

    /// Largest relative difference between the invariants of two graphs of
    /// the same class.
    pub fn relative_distance(&self, other: &MetricGraph) -> Option<f64> {
        if self.class != other.class {
            return None;
        }
        Some(
            self.values()
                .iter()
                .zip(other.values())
                .map(|(a, b)| (a - b).norm() / a.norm().max(b.norm()))
                .fold(0.0, f64::max),
        )
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.push("class", &self.class);
        doc.push_list("taus", self.taus.iter().map(|&t| format_f64_exact(t)));
        doc.push_list(
            "alphas",
            self.alphas.iter().map(|a| format!("{} {}", format_f64_exact(a.re), format_f64_exact(a.im))),
        );
        doc
    }

    pub fn to_text(&self) -> String {
        self.to_document().render()
    }

    pub fn from_document(doc: &Document) -> Result<Self, InvariantsError> {
        let class = CombinatorialDataSet::parse(doc.get("class").ok_or(TextError::MissingField("class"))?)?;
        let number = |s: &str| s.trim().parse::<f64>().map_err(|_| TextError::Number(s.to_string()));
        let taus = split_list(doc.get("taus").unwrap_or("[]"))?
            .into_iter()
            .map(number)
            .collect::<Result<Vec<_>, _>>()?;
        let alphas = split_list(doc.get("alphas").unwrap_or("[]"))?
            .into_iter()
            .map(|item| {
                let mut parts = item.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(re), Some(im), None) => Ok(Complex64::new(number(re)?, number(im)?)),
                    _ => Err(TextError::Complex(item.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(class, taus, alphas)
    }

    pub fn from_text(text: &str) -> Result<Self, InvariantsError> {
        Self::from_document(&Document::parse(text)?)
    }

    /// Invariants multiplied by a positive factor (same class).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            class: self.class.clone(),
            taus: self.taus.iter().map(|t| t * factor).collect(),
            alphas: self.alphas.iter().map(|a| a * factor).collect(),
        }
    }
}

/// Everything learned from one polynomial.
#[derive(Debug, Clone)]
pub struct Classification {
    pub polynomial: PolynomialVF,
    pub graph: SeparatrixGraphNumeric,
    pub skeleton: Skeleton,
    pub zones: Vec<Zone>,
    pub metric: MetricGraph,
    /// Root index of each flower face of the class.
    pub face_roots: Vec<usize>,
    /// Largest `|Im tau| / tau` over the homoclinics.
    pub tau_imaginary: f64,
    /// One per square pair.
    pub alpha_methods: Vec<AlphaMethod>,
}

impl Classification {
    pub fn class(&self) -> &CombinatorialDataSet {
        self.metric.class()
    }
}

/// Landing/homoclinic skeleton of a numeric graph (labels are root indices).
pub fn skeleton_of(g: &SeparatrixGraphNumeric) -> Result<Skeleton, InvariantsError> {
    let n = g.traces.len();
    let mut partner = vec![None; n];
    let mut landing = vec![None; n];
    for t in &g.traces {
        match &t.outcome {
            Outcome::Landing { equilibrium } => landing[t.index] = Some(*equilibrium),
            Outcome::Homoclinic { partner: p, .. } => partner[t.index] = Some(*p),
            Outcome::Uncertain(d) => {
                return Err(InvariantsError::InconsistentGraph(format!("s_{} is uncertain: {d}", t.index)))
            }
        }
    }
    Ok(Skeleton::new(g.degree(), partner, landing)?)
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let cross = |o: Complex64, p: Complex64, q: Complex64| ((p - o).conj() * (q - o)).im;
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

fn polyline_hits(a: Complex64, b: Complex64, path: &[Complex64]) -> bool {
    let (lo, hi) = (
        Complex64::new(a.re.min(b.re), a.im.min(b.im)),
        Complex64::new(a.re.max(b.re), a.im.max(b.im)),
    );
    path.windows(2).any(|w| {
        let (c, d) = (w[0], w[1]);
        if c.re.max(d.re) < lo.re || c.re.min(d.re) > hi.re || c.im.max(d.im) < lo.im || c.im.min(d.im) > hi.im {
            return false;
        }
        segments_intersect(a, b, c, d)
    })
}

/// Path indices at given fractions of arc length, restricted to points well
/// inside the escape circle.
fn waypoint_candidates(trace: &SeparatrixTrace, radius: f64, fractions: &[f64]) -> Vec<usize> {
    let mut arc = vec![0.0];
    for w in trace.path.windows(2) {
        arc.push(arc.last().unwrap() + (w[1] - w[0]).norm());
    }
    let total = *arc.last().unwrap();
    let mut out = Vec::new();
    for &f in fractions {
        let target = f * total;
        let i = arc.partition_point(|&s| s < target).min(trace.path.len() - 2);
        if trace.path[i].norm() < 0.9 * radius && !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

const FRACTIONS: [f64; 5] = [0.5, 0.3, 0.7, 0.15, 0.85];

/// `alpha` for the transversal from end `k` (odd) to end `j` (even), both
/// bounded by landing separatrices `s_k` and `s_j`.
fn transversal_integral(
    p: &PolynomialVF,
    g: &SeparatrixGraphNumeric,
    k: usize,
    j: usize,
    radius: f64,
) -> Result<Complex64, InvariantsError> {
    let tk = &g.traces[k];
    let tj = &g.traces[j];
    let clearance = |trace: &SeparatrixTrace, i: usize| -> f64 {
        let w = trace.path[i];
        let mut best = p.distance_to_roots(w);
        for other in &g.traces {
            if other.index == trace.index {
                continue;
            }
            for &z in &other.path {
                best = best.min((z - w).norm());
            }
        }
        best
    };
    // Offset a waypoint into the zone: left of s_k, right of s_j.
    let offset = |trace: &SeparatrixTrace, i: usize, side: f64| -> (Complex64, Complex64) {
        let w = trace.path[i];
        let v = p.eval(w);
        let normal = Complex64::i() * side * v / v.norm();
        (w, w + normal * (0.25 * clearance(trace, i)))
    };
    let ck = waypoint_candidates(tk, radius, &FRACTIONS);
    let cj = waypoint_candidates(tj, radius, &FRACTIONS);
    let ok_segment = |a: Complex64, b: Complex64| -> bool {
        g.traces.iter().all(|t| !polyline_hits(a, b, &t.path))
    };
    let safety = 1e-6 * p.root_scale();
    let mut last_reason = String::from("no waypoint candidates");
    for &ik in &ck {
        let (wk, wk_off) = offset(tk, ik, 1.0);
        for &ij in &cj {
            let (wj, wj_off) = offset(tj, ij, -1.0);
            let mid = 0.5 * (wk_off + wj_off);
            let across = wj_off - wk_off;
            let mut routes: Vec<Vec<Complex64>> = vec![vec![wk_off, wj_off]];
            for t in [0.3, -0.3] {
                routes.push(vec![wk_off, mid + Complex64::i() * across * t, wj_off]);
            }
            for route in routes {
                if !route.windows(2).all(|w| ok_segment(w[0], w[1])) {
                    last_reason = "crossing path meets a separatrix".into();
                    continue;
                }
                let mut full = vec![wk];
                full.extend(&route);
                full.push(wj);
                match path_time_integral(p, &full, safety) {
                    Ok(middle) => {
                        let alpha = tk.time_from_infinity(ik) + middle + tj.time_from_infinity(ij);
                        return Ok(alpha);
                    }
                    Err(e) => last_reason = e.to_string(),
                }
            }
        }
    }
    Err(InvariantsError::CrossingPathHitsSingularity { k, j, reason: last_reason })
}

/// Chord values forced by the residues: the dual graph of the flower is a
/// tree, so each chord carries `KAPPA` times the residue sum of the faces on
/// its left.
pub fn chord_values_from_residues(fl: &Flower, face_residues: &[Complex64]) -> Vec<Complex64> {
    fl.chords
        .iter()
        .enumerate()
        .map(|(c, chord)| {
            let mut seen = vec![false; fl.faces.len()];
            let mut stack = vec![chord.left_face];
            seen[chord.left_face] = true;
            let mut sum = Complex64::new(0.0, 0.0);
            while let Some(f) = stack.pop() {
                sum += face_residues[f];
                for (o, other) in fl.chords.iter().enumerate() {
                    if o == c {
                        continue;
                    }
                    for (a, b) in [(other.left_face, other.right_face), (other.right_face, other.left_face)] {
                        if a == f && !seen[b] {
                            seen[b] = true;
                            stack.push(b);
                        }
                    }
                }
            }
            KAPPA * sum
        })
        .collect()
}

/// How an `alpha` value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMethod {
    /// Time integral along an explicit crossing path.
    CrossingPath,
    /// Forced by the residues at the equilibria (no admissible path found).
    Residues,
}

/// Largest relative gap tolerated between path integrals and the values
/// forced by the residues.
pub const RESIDUE_AGREEMENT: f64 = 1e-6;

/// Winding number of the homoclinic loop (closed counter-clockwise through
/// infinity) around `c`: 1 when `c` lies on the left of the flow.
fn left_of_homoclinic(path: &[Complex64], c: Complex64) -> bool {
    let mut turn = 0.0;
    for w in path.windows(2) {
        turn += ((w[1] - c) / (w[0] - c)).arg();
    }
    let start = path[0] - c;
    let end = path[path.len() - 1] - c;
    turn += (start.arg() - end.arg()).rem_euclid(2.0 * PI);
    (turn / (2.0 * PI)).round() as i64 == 1
}

fn center_of_zone(g: &SeparatrixGraphNumeric, zone: &Zone) -> Option<usize> {
    let candidates: Vec<usize> = g
        .equilibria
        .iter()
        .enumerate()
        .filter(|(_, e)| e.kind == EquilibriumKind::Center)
        .map(|(i, _)| i)
        .filter(|&i| {
            let c = g.equilibria[i].position;
            zone.homoclinics_left.iter().all(|&(k, _)| left_of_homoclinic(&g.traces[k].path, c))
                && zone.homoclinics_right.iter().all(|&(k, _)| !left_of_homoclinic(&g.traces[k].path, c))
        })
        .collect();
    (candidates.len() == 1).then(|| candidates[0])
}

/// Class and invariants of a consistent numeric graph.
pub fn analytic_invariants(p: &PolynomialVF, g: &SeparatrixGraphNumeric) -> Result<MetricGraph, InvariantsError> {
    Ok(classify_graph(p, g, &TraceOptions::default())?.metric)
}

fn classify_graph(p: &PolynomialVF, g: &SeparatrixGraphNumeric, opts: &TraceOptions) -> Result<Classification, InvariantsError> {
    if !g.is_consistent() {
        return Err(InvariantsError::InconsistentGraph(g.issues.join("; ")));
    }
    let skeleton = skeleton_of(g)?;
    let zones = skeleton.zones()?;
    let class = skeleton.class()?;
    let fl = flower(&class)?;

    // Match flower faces to roots and check the landing pattern agrees.
    let mut face_roots = vec![usize::MAX; fl.faces.len()];
    for (f, face) in fl.faces.iter().enumerate() {
        if let Some(&l) = face.germs.first() {
            let root = skeleton.landing(l).unwrap();
            if face.germs.iter().any(|&x| skeleton.landing(x) != Some(root)) {
                return Err(InvariantsError::InconsistentGraph(format!("face {f} collects landings at different roots")));
            }
            face_roots[f] = root;
        } else {
            let zone = zones
                .iter()
                .find(|z| z.kind.is_center() && face.ends.iter().any(|e| z.ends.contains(e)))
                .ok_or_else(|| InvariantsError::InconsistentGraph(format!("center face {f} has no center zone")))?;
            face_roots[f] = center_of_zone(g, zone)
                .ok_or_else(|| InvariantsError::InconsistentGraph(format!("no unique center inside zone {:?}", zone.ends)))?;
        }
    }
    let mut seen = face_roots.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != p.roots().len() {
        return Err(InvariantsError::InconsistentGraph("flower faces do not match the roots one to one".into()));
    }
    for (f, face) in fl.faces.iter().enumerate() {
        let e = &g.equilibria[face_roots[f]];
        if e.kind != face.kind || e.multiplicity != face.multiplicity {
            return Err(InvariantsError::InconsistentGraph(format!(
                "root {} is a {} of multiplicity {} but its face expects a {} of multiplicity {}",
                e.position, e.kind, e.multiplicity, face.kind, face.multiplicity
            )));
        }
    }

    let mut taus = Vec::new();
    let mut tau_imaginary: f64 = 0.0;
    for &(k, j) in class.round() {
        let m = g
            .homoclinics
            .iter()
            .find(|m| m.odd == k && m.even == j)
            .ok_or_else(|| InvariantsError::InconsistentGraph(format!("homoclinic ({k}, {j}) not matched")))?;
        let tau = m.tau();
        tau_imaginary = tau_imaginary.max(tau.im.abs() / tau.re.abs());
        taus.push(tau.re);
    }
    let radius = opts.escape_radius(p);
    let face_residues: Vec<Complex64> = face_roots.iter().map(|&r| g.equilibria[r].residue).collect();
    let forced = chord_values_from_residues(&fl, &face_residues);
    let forced_value = |round: bool, index: usize| {
        fl.chords.iter().position(|c| c.round == round && c.index == index).map(|c| forced[c]).unwrap()
    };
    for (i, &tau) in taus.iter().enumerate() {
        let f = forced_value(true, i);
        if (f - tau).norm() > RESIDUE_AGREEMENT * tau.abs() {
            return Err(InvariantsError::InconsistentGraph(format!(
                "homoclinic {:?}: tau {tau} disagrees with the residue value {f}",
                class.round()[i]
            )));
        }
    }
    let mut alphas = Vec::new();
    let mut alpha_methods = Vec::new();
    for (i, &(k, j)) in class.square().iter().enumerate() {
        let f = forced_value(false, i);
        let alpha = match transversal_integral(p, g, k, j, radius) {
            Ok(alpha) => {
                if (alpha - f).norm() > RESIDUE_AGREEMENT * alpha.norm() {
                    return Err(InvariantsError::InconsistentGraph(format!(
                        "transversal ({k}, {j}): alpha {alpha} disagrees with the residue value {f}"
                    )));
                }
                alpha_methods.push(AlphaMethod::CrossingPath);
                alpha
            }
            Err(InvariantsError::CrossingPathHitsSingularity { .. }) => {
                alpha_methods.push(AlphaMethod::Residues);
                f
            }
            Err(e) => return Err(e),
        };
        if !(alpha.im > 0.0) {
            return Err(InvariantsError::InconsistentGraph(format!("transversal ({k}, {j}) gives alpha = {alpha}")));
        }
        alphas.push(alpha);
    }
    let metric = MetricGraph::new(class, taus, alphas)?;
    Ok(Classification {
        polynomial: p.clone(),
        graph: g.clone(),
        skeleton,
        zones,
        metric,
        face_roots,
        tau_imaginary,
        alpha_methods,
    })
}

/// Trace, cross-check and measure `p`.
pub fn classify(p: &PolynomialVF) -> Result<Classification, InvariantsError> {
    classify_with(p, &TraceOptions::default())
}

pub fn classify_with(p: &PolynomialVF, opts: &TraceOptions) -> Result<Classification, InvariantsError> {
    let g = separatrix_graph_with(p, opts)?;
    classify_graph(p, &g, opts)
}

/// Residue predicted for one flower face.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceResidue {
    pub face: usize,
    pub germs: Vec<usize>,
    pub ends: Vec<usize>,
    pub kind: EquilibriumKind,
    pub multiplicity: usize,
    pub residue: Complex64,
}

/// Residues of `1/P` at the equilibria, read off from the invariants: each
/// face collects `+value` from chords having it on their left (chords run
/// from the odd to the even index) and `-value` otherwise, divided by `KAPPA`.
pub fn residues_from_graph(m: &MetricGraph) -> Result<Vec<FaceResidue>, InvariantsError> {
    let fl = flower(m.class()).map_err(|e| InvariantsError::UnboundedFace(e.to_string()))?;
    let mut sums = vec![Complex64::new(0.0, 0.0); fl.faces.len()];
    for chord in &fl.chords {
        let value = if chord.round { Complex64::new(m.taus[chord.index], 0.0) } else { m.alphas[chord.index] };
        sums[chord.left_face] += value;
        sums[chord.right_face] -= value;
    }
    Ok(fl
        .faces
        .iter()
        .enumerate()
        .map(|(f, face)| FaceResidue {
            face: f,
            germs: face.germs.clone(),
            ends: face.ends.clone(),
            kind: face.kind,
            multiplicity: face.multiplicity,
            residue: sums[f] / KAPPA,
        })
        .collect())
}

/// Largest relative gap between graph residues and direct residues.
pub fn residue_mismatch(c: &Classification) -> Result<f64, InvariantsError> {
    let predicted = residues_from_graph(&c.metric)?;
    let scale = c
        .graph
        .equilibria
        .iter()
        .map(|e| e.residue.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    Ok(predicted
        .iter()
        .map(|r| (r.residue - c.graph.equilibria[c.face_roots[r.face]].residue).norm() / scale)
        .fold(0.0, f64::max))
}

/// The zone kind of each flower face, for reporting.
pub fn zone_summary(zones: &[Zone]) -> Vec<String> {
    zones
        .iter()
        .map(|z| match z.kind {
            ZoneKind::AlphaOmega => format!("{} {:?}", z.kind, z.square_pair.unwrap()),
            _ => format!("{} {:?}", z.kind, z.ends),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn z2_plus_1() {
        let p = PolynomialVF::parse("coeffs: 1,0,1").unwrap();
        let cl = classify(&p).unwrap();
        assert_eq!(cl.class().to_string(), "(0 1)");
        assert!((cl.metric.taus()[0] - PI).abs() < 1e-6);
        assert!(residue_mismatch(&cl).unwrap() < 1e-6);
    }

    #[test]
    fn z2_minus_1() {
        let p = PolynomialVF::parse("coeffs: -1,0,1").unwrap();
        let cl = classify(&p).unwrap();
        assert_eq!(cl.class().to_string(), "[0 1]");
        assert!((cl.metric.alphas()[0] - c(0.0, PI)).norm() < 1e-6, "{}", cl.metric.alphas()[0]);
        let r = residues_from_graph(&cl.metric).unwrap();
        let mut values: Vec<f64> = r.iter().map(|x| x.residue.re).collect();
        values.sort_by(f64::total_cmp);
        assert!((values[0] + 0.5).abs() < 1e-6 && (values[1] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn monomial_has_no_invariants() {
        let p = PolynomialVF::monomial(3).unwrap();
        let cl = classify(&p).unwrap();
        assert_eq!(cl.class().to_string(), "0 1 2 3");
        assert!(cl.metric.values().is_empty());
    }

    #[test]
    fn residues_of_closed_forms() {
        let m = MetricGraph::new(CombinatorialDataSet::parse("(0 1)").unwrap(), vec![PI], vec![]).unwrap();
        let r = residues_from_graph(&m).unwrap();
        let mut values: Vec<Complex64> = r.iter().map(|x| x.residue).collect();
        values.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((values[0] - c(0.0, -0.5)).norm() < 1e-15);
        assert!((values[1] - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn file_round_trip_is_exact() {
        let m = MetricGraph::new(
            CombinatorialDataSet::parse("(0[1[2 3]4]5)").unwrap(),
            vec![3.0 + 1e-15],
            vec![c(1.0, 1.0 / 3.0), c(0.1, 3.0)],
        )
        .unwrap();
        let back = MetricGraph::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_bad_invariants() {
        let class = CombinatorialDataSet::parse("[0 1]").unwrap();
        assert!(MetricGraph::new(class.clone(), vec![], vec![c(1.0, -1.0)]).is_err());
        assert!(MetricGraph::new(class, vec![1.0], vec![c(1.0, 1.0)]).is_err());
    }

    #[test]
    fn random_cubic_residues_match() {
        let p = PolynomialVF::from_roots(&[(c(1.0, 0.3), 1), (c(-0.4, 1.0), 1), (c(-0.6, -1.3), 1)]).unwrap();
        let cl = classify(&p).unwrap();
        assert!(residue_mismatch(&cl).unwrap() < 1e-6);
    }
}
