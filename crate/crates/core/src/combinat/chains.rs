use std::collections::VecDeque;
use std::fmt;

use super::zones::{flower, Flower, Skeleton, Zone};
use super::{validate_class, CombinatError, CombinatorialDataSet};
use crate::EquilibriumKind;

/// How consecutive homoclinics of a chain are linked: `k_{i+1} = j_i + 1`
/// (upper, `+`) or `k_{i+1} = j_i - 1` (lower, `-`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    Plus,
    Minus,
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Link::Plus => "+",
            Link::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HChain {
    /// Round pairs `(k_i, j_i)` in chain order.
    pub pairs: Vec<(usize, usize)>,
    /// One link per consecutive pair; a closed chain also links last to first.
    pub itinerary: Vec<Link>,
    pub closed: bool,
}

/// Number of sign changes in an itinerary.
pub fn sign_changes(itinerary: &[Link]) -> usize {
    itinerary.windows(2).filter(|w| w[0] != w[1]).count()
}

impl HChain {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sign_changes(&self) -> usize {
        sign_changes(&self.itinerary)
    }

    /// Count of maximal clockwise or counter-clockwise pieces.
    pub fn monotone_pieces(&self) -> usize {
        self.sign_changes() + 1
    }

    pub fn itinerary_text(&self) -> String {
        self.itinerary.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn link(n: usize, from: (usize, usize), to: (usize, usize)) -> Option<Link> {
    if to.0 == (from.1 + 1) % n {
        Some(Link::Plus)
    } else if to.0 == (from.1 + n - 1) % n {
        Some(Link::Minus)
    } else {
        None
    }
}

fn successors(c: &CombinatorialDataSet, a: usize) -> Vec<usize> {
    let n = c.size();
    (0..c.h()).filter(|&b| b != a && link(n, c.round()[a], c.round()[b]).is_some()).collect()
}

fn build_chain(c: &CombinatorialDataSet, nodes: &[usize], closed: bool) -> HChain {
    let n = c.size();
    let pairs: Vec<(usize, usize)> = nodes.iter().map(|&i| c.round()[i]).collect();
    let mut itinerary: Vec<Link> = pairs.windows(2).map(|w| link(n, w[0], w[1]).unwrap()).collect();
    if closed {
        itinerary.push(link(n, pairs[pairs.len() - 1], pairs[0]).unwrap());
    }
    HChain { pairs, itinerary, closed }
}

/// All closed chains (simple cycles, each listed once from its smallest
/// pair) and all maximal open chains not contained in a closed one.
pub fn h_chains(c: &CombinatorialDataSet) -> Vec<HChain> {
    let h = c.h();
    let succ: Vec<Vec<usize>> = (0..h).map(|a| successors(c, a)).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut paths: Vec<Vec<usize>> = Vec::new();

    fn extend(
        path: &mut Vec<usize>,
        succ: &[Vec<usize>],
        cycles: &mut Vec<Vec<usize>>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        let mut extended = false;
        for &b in &succ[last] {
            if b == path[0] && path.len() >= 2 && path.iter().all(|&x| x >= path[0]) {
                cycles.push(path.clone());
            }
            if !path.contains(&b) {
                extended = true;
                path.push(b);
                extend(path, succ, cycles, paths);
                path.pop();
            }
        }
        if !extended {
            paths.push(path.clone());
        }
    }

    for a in 0..h {
        let mut path = vec![a];
        extend(&mut path, &succ, &mut cycles, &mut paths);
    }
    // Rotations of the same cycle are recorded once (start at the minimum),
    // but a cycle can still be found along both directions; keep unique node sets.
    let mut closed: Vec<Vec<usize>> = Vec::new();
    for cyc in cycles {
        let mut key = cyc.clone();
        key.sort_unstable();
        if !closed.iter().any(|c| {
            let mut k = c.clone();
            k.sort_unstable();
            k == key
        }) {
            closed.push(cyc);
        }
    }
    let in_cycle = |p: &Vec<usize>| closed.iter().any(|cyc| p.iter().all(|x| cyc.contains(x)));
    let mut open: Vec<Vec<usize>> = Vec::new();
    for p in paths {
        if p.len() < 2 || in_cycle(&p) {
            continue;
        }
        // maximal also toward the front
        let front_extends = (0..h).any(|x| !p.contains(&x) && succ[x].contains(&p[0]));
        if front_extends {
            continue;
        }
        if !open.contains(&p) {
            open.push(p);
        }
    }
    closed
        .iter()
        .map(|nodes| build_chain(c, nodes, true))
        .chain(open.iter().map(|nodes| build_chain(c, nodes, false)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCondition {
    Negative,
    Positive,
    Zero,
}

impl fmt::Display for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignCondition::Negative => "< 0",
            SignCondition::Positive => "> 0",
            SignCondition::Zero => "= 0",
        })
    }
}

impl SignCondition {
    pub fn holds(self, value: f64) -> bool {
        match self {
            SignCondition::Negative => value < 0.0,
            SignCondition::Positive => value > 0.0,
            SignCondition::Zero => value == 0.0,
        }
    }
}

/// Whether the homoclinic `s_{k,j}` can appear under a small perturbation of
/// the `tau` values, and the sign each partial sum `T_m = sum_{i<=m} Im dtau_i`
/// must have (last entry is `T_n = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormationReport {
    pub possible: bool,
    pub chain: Option<HChain>,
    pub conditions: Vec<SignCondition>,
}

pub fn can_form_homoclinic(c: &CombinatorialDataSet, k: usize, j: usize) -> Result<FormationReport, CombinatError> {
    let (k, j) = if k % 2 == 1 { (k, j) } else { (j, k) };
    if c.is_round(k, j) {
        return Err(CombinatError::AlreadyPaired(k, j));
    }
    let a = c.round().iter().position(|p| p.0 == k).ok_or(CombinatError::IndexNotHomoclinic(k))?;
    let b = c.round().iter().position(|p| p.1 == j).ok_or(CombinatError::IndexNotHomoclinic(j))?;
    let succ: Vec<Vec<usize>> = (0..c.h()).map(|x| successors(c, x)).collect();
    let mut prev = vec![usize::MAX; c.h()];
    let mut queue = VecDeque::from([a]);
    prev[a] = a;
    while let Some(x) = queue.pop_front() {
        for &y in &succ[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[b] == usize::MAX {
        return Ok(FormationReport { possible: false, chain: None, conditions: Vec::new() });
    }
    let mut nodes = vec![b];
    while *nodes.last().unwrap() != a {
        nodes.push(prev[*nodes.last().unwrap()]);
    }
    nodes.reverse();
    let chain = build_chain(c, &nodes, false);
    let mut conditions: Vec<SignCondition> = chain
        .itinerary
        .iter()
        .map(|l| match l {
            Link::Plus => SignCondition::Negative,
            Link::Minus => SignCondition::Positive,
        })
        .collect();
    conditions.push(SignCondition::Zero);
    Ok(FormationReport { possible: true, chain: Some(chain), conditions })
}

/// Sign of `Im tau` after the perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalfPlane::Upper => "+",
            HalfPlane::Lower => "-",
        })
    }
}

/// Equilibrium label where a separatrix of the given parity lands after
/// entering `zone`.
fn landing_in(zone: &Zone, fl: &Flower, odd: bool) -> Result<usize, CombinatError> {
    if zone.kind.is_center() {
        return fl
            .faces
            .iter()
            .position(|f| f.kind == EquilibriumKind::Center && f.ends.iter().any(|e| zone.ends.contains(e)))
            .ok_or_else(|| CombinatError::NotImplementedTransition(format!("no center found for zone {:?}", zone.ends)));
    }
    if zone.kind.is_sepal() {
        return Ok(zone.equilibria[0]);
    }
    let slot = if odd { zone.omega_point } else { zone.alpha_point };
    slot.ok_or_else(|| CombinatError::NotImplementedTransition("strip without both corners".into()))
}

/// The class after the homoclinic `(k, j)` is broken with `Im tau` moved to
/// the given half plane.
pub fn break_homoclinic(
    c: &CombinatorialDataSet,
    pair: (usize, usize),
    half_plane: HalfPlane,
) -> Result<CombinatorialDataSet, CombinatError> {
    let (k, j) = if pair.0 % 2 == 1 { pair } else { (pair.1, pair.0) };
    if !c.is_round(k, j) {
        return Err(CombinatError::NotAHomoclinic(k, j));
    }
    let fl = flower(c)?;
    let left = fl
        .zones
        .iter()
        .find(|z| z.homoclinics_left.contains(&(k, j)))
        .ok_or_else(|| CombinatError::NotImplementedTransition("homoclinic without a left zone".into()))?;
    let right = fl
        .zones
        .iter()
        .find(|z| z.homoclinics_right.contains(&(k, j)))
        .ok_or_else(|| CombinatError::NotImplementedTransition("homoclinic without a right zone".into()))?;
    // The zone below in rectifying coordinates (upper boundary) is on the right.
    let (zone_k, zone_j) = match half_plane {
        HalfPlane::Upper => (right, left),
        HalfPlane::Lower => (left, right),
    };
    let land_k = landing_in(zone_k, &fl, true)?;
    let land_j = landing_in(zone_j, &fl, false)?;
    let n = c.size();
    let mut partner: Vec<Option<usize>> = (0..n).map(|l| fl.skeleton.partner(l)).collect();
    let mut landing: Vec<Option<usize>> = (0..n).map(|l| fl.skeleton.landing(l)).collect();
    partner[k] = None;
    partner[j] = None;
    landing[k] = Some(land_k);
    landing[j] = Some(land_j);
    let broken = Skeleton::new(c.degree(), partner, landing)
        .and_then(|s| s.class())
        .map_err(|e| CombinatError::NotImplementedTransition(format!("breaking ({k}, {j}) {half_plane}: {e}")))?;
    let report = validate_class(&broken);
    if !report.valid || report.dimensions.dim <= c.dimensions().dim {
        return Err(CombinatError::NotImplementedTransition(format!(
            "breaking ({k}, {j}) {half_plane} gives {broken}, which is not a valid higher stratum"
        )));
    }
    Ok(broken)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str) -> CombinatorialDataSet {
        CombinatorialDataSet::parse(s).unwrap()
    }

    #[test]
    fn chain_of_two_homoclinics() {
        let chains = h_chains(&class("(0 1)(2 3)"));
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].len(), 2);
        assert!(chains[0].closed);
        assert!(chains[0].itinerary.iter().all(|&l| l == Link::Minus));
        assert!(h_chains(&class("[0 1]2[3 4]5")).is_empty());
    }

    #[test]
    fn sign_change_count() {
        use Link::*;
        let it = [Plus, Plus, Plus, Minus, Minus, Plus];
        assert_eq!(sign_changes(&it), 2);
    }

    #[test]
    fn formation_queries() {
        let c = class("(0 1)(2 3)");
        let r = can_form_homoclinic(&c, 1, 2).unwrap();
        assert!(r.possible);
        assert_eq!(r.conditions, vec![SignCondition::Positive, SignCondition::Zero]);
        assert!(matches!(can_form_homoclinic(&class("(0 1)"), 1, 0), Err(CombinatError::AlreadyPaired(1, 0))));
        assert!(matches!(can_form_homoclinic(&class("[0 1]"), 1, 0), Err(CombinatError::IndexNotHomoclinic(1))));
    }

    #[test]
    fn separated_homoclinics_cannot_join() {
        // Two homoclinics on either side of a strip.
        let c = class("(0 1)[2(3 4)5]");
        let r = can_form_homoclinic(&c, 1, 4).unwrap();
        assert!(!r.possible);
    }

    #[test]
    fn single_breaks() {
        let c = class("(0 1)");
        assert_eq!(break_homoclinic(&c, (1, 0), HalfPlane::Upper).unwrap().to_string(), "[0 1]");
        assert_eq!(break_homoclinic(&c, (1, 0), HalfPlane::Lower).unwrap().to_string(), "[0 1]");
        let c = class("(0 1)(2 3)");
        assert_eq!(break_homoclinic(&c, (3, 2), HalfPlane::Upper).unwrap().to_string(), "(0 1)[2 3]");
        assert!(matches!(
            break_homoclinic(&class("[0 1]"), (1, 0), HalfPlane::Upper),
            Err(CombinatError::NotAHomoclinic(1, 0))
        ));
    }
}
