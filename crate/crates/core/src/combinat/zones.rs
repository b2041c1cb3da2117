use std::collections::BTreeSet;

use super::{CombinatError, CombinatorialDataSet};
use crate::EquilibriumKind;

/// The separatrix graph up to isotopy: for each separatrix either its
/// homoclinic partner or a label of the equilibrium where it lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    degree: usize,
    partner: Vec<Option<usize>>,
    landing: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZoneKind {
    CenterOdd,
    CenterEven,
    SepalOdd,
    SepalEven,
    AlphaOmega,
}

impl ZoneKind {
    pub fn is_center(self) -> bool {
        matches!(self, ZoneKind::CenterOdd | ZoneKind::CenterEven)
    }

    pub fn is_sepal(self) -> bool {
        matches!(self, ZoneKind::SepalOdd | ZoneKind::SepalEven)
    }
}

impl std::fmt::Display for ZoneKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZoneKind::CenterOdd => "center_odd",
            ZoneKind::CenterEven => "center_even",
            ZoneKind::SepalOdd => "sepal_odd",
            ZoneKind::SepalEven => "sepal_even",
            ZoneKind::AlphaOmega => "alpha_omega",
        })
    }
}

/// A connected component of the complement of the separatrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Zone {
    pub kind: ZoneKind,
    /// Ends at infinity in boundary order.
    pub ends: Vec<usize>,
    /// Ends whose index is not a homoclinic index.
    pub free_ends: Vec<usize>,
    /// Homoclinics `(k, j)` having this zone on their left (flow direction).
    pub homoclinics_left: Vec<(usize, usize)>,
    pub homoclinics_right: Vec<(usize, usize)>,
    pub landing_separatrices: Vec<usize>,
    /// Equilibrium labels on the boundary.
    pub equilibria: Vec<usize>,
    pub alpha_point: Option<usize>,
    pub omega_point: Option<usize>,
    /// `(odd end, even end)` of the distinguished transversal.
    pub square_pair: Option<(usize, usize)>,
}

impl Skeleton {
    pub fn new(degree: usize, partner: Vec<Option<usize>>, landing: Vec<Option<usize>>) -> Result<Self, CombinatError> {
        let n = 2 * (degree - 1);
        if partner.len() != n || landing.len() != n {
            return Err(CombinatError::InconsistentZone(format!("expected {n} separatrices")));
        }
        for l in 0..n {
            match (partner[l], landing[l]) {
                (Some(p), None) => {
                    if p >= n || partner[p] != Some(l) || p % 2 == l % 2 {
                        return Err(CombinatError::InconsistentZone(format!("s_{l} has an inconsistent partner {p}")));
                    }
                }
                (None, Some(_)) => {}
                _ => {
                    return Err(CombinatError::InconsistentZone(format!(
                        "s_{l} must either land or be homoclinic"
                    )))
                }
            }
        }
        Ok(Self { degree, partner, landing })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partner(&self, l: usize) -> Option<usize> {
        self.partner[l]
    }

    pub fn landing(&self, l: usize) -> Option<usize> {
        self.landing[l]
    }

    fn size(&self) -> usize {
        2 * (self.degree - 1)
    }

    /// Separatrices landing at `label`, in counter-clockwise order.
    pub fn star(&self, label: usize) -> Vec<usize> {
        (0..self.size()).filter(|&l| self.landing[l] == Some(label)).collect()
    }

    /// The cyclically preceding separatrix in the star of the landing point of `l`.
    fn star_prev(&self, l: usize) -> usize {
        let star = self.star(self.landing[l].expect("landing separatrix"));
        let i = star.iter().position(|&x| x == l).unwrap();
        star[(i + star.len() - 1) % star.len()]
    }

    /// Boundary walk: the next end met after leaving end `e` along the
    /// separatrix on its counter-clockwise side.
    fn next_end(&self, e: usize) -> usize {
        let n = self.size();
        match self.partner[e] {
            Some(p) => (p + 1) % n,
            None => (self.star_prev(e) + 1) % n,
        }
    }

    /// Zones as cycles of the boundary walk.
    pub fn zones(&self) -> Result<Vec<Zone>, CombinatError> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut zones = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut ends = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                ends.push(e);
                e = self.next_end(e);
            }
            zones.push(self.zone_from_cycle(ends)?);
        }
        Ok(zones)
    }

    fn zone_from_cycle(&self, ends: Vec<usize>) -> Result<Zone, CombinatError> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut landing = BTreeSet::new();
        let mut free = Vec::new();
        // (equilibrium, the two separatrices bounding the zone there)
        let mut corners: Vec<(usize, usize, usize)> = Vec::new();
        for &e in &ends {
            match self.partner[e] {
                Some(p) => {
                    if e % 2 == 1 {
                        left.push((e, p));
                    } else {
                        right.push((p, e));
                    }
                }
                None => {
                    free.push(e);
                    let prev = self.star_prev(e);
                    landing.insert(e);
                    landing.insert(prev);
                    corners.push((self.landing[e].unwrap(), e, prev));
                }
            }
        }
        let equilibria: Vec<usize> = corners.iter().map(|c| c.0).collect::<BTreeSet<_>>().into_iter().collect();
        if equilibria.len() != corners.len() {
            return Err(CombinatError::InconsistentZone(format!("zone {ends:?} meets an equilibrium twice")));
        }
        let describe = || format!("zone with ends {ends:?}");
        let mut zone = Zone {
            kind: ZoneKind::AlphaOmega,
            ends: ends.clone(),
            free_ends: free.clone(),
            homoclinics_left: left,
            homoclinics_right: right,
            landing_separatrices: landing.into_iter().collect(),
            equilibria,
            alpha_point: None,
            omega_point: None,
            square_pair: None,
        };
        match corners.len() {
            0 => {
                let parity = ends[0] % 2;
                if ends.iter().any(|e| e % 2 != parity) {
                    return Err(CombinatError::InconsistentZone(format!("{} mixes end parities", describe())));
                }
                zone.kind = if parity == 1 { ZoneKind::CenterOdd } else { ZoneKind::CenterEven };
            }
            1 => {
                let (_, a, b) = corners[0];
                if a % 2 == b % 2 {
                    return Err(CombinatError::InconsistentZone(format!(
                        "{}: sepal corner needs one incoming and one outgoing separatrix",
                        describe()
                    )));
                }
                zone.kind = if free[0] % 2 == 1 { ZoneKind::SepalOdd } else { ZoneKind::SepalEven };
            }
            2 => {
                for &(eq, a, b) in &corners {
                    if a % 2 != b % 2 {
                        return Err(CombinatError::InconsistentZone(format!(
                            "{}: strip corner with mixed directions",
                            describe()
                        )));
                    }
                    if a % 2 == 0 {
                        zone.alpha_point = Some(eq);
                    } else {
                        zone.omega_point = Some(eq);
                    }
                }
                if zone.alpha_point.is_none() || zone.omega_point.is_none() {
                    return Err(CombinatError::InconsistentZone(format!("{} lacks an alpha or omega point", describe())));
                }
                let odd = free.iter().copied().find(|e| e % 2 == 1).unwrap();
                let even = free.iter().copied().find(|e| e % 2 == 0).unwrap();
                zone.square_pair = Some((odd, even));
            }
            k => {
                return Err(CombinatError::InconsistentZone(format!("{} has {k} boundary equilibria", describe())));
            }
        }
        Ok(zone)
    }

    /// The bracketing read off from the zones.
    pub fn class(&self) -> Result<CombinatorialDataSet, CombinatError> {
        let zones = self.zones()?;
        let round: Vec<(usize, usize)> = (0..self.size())
            .filter(|&l| l % 2 == 1)
            .filter_map(|l| self.partner[l].map(|p| (l, p)))
            .collect();
        let square: Vec<(usize, usize)> = zones.iter().filter_map(|z| z.square_pair).collect();
        CombinatorialDataSet::from_pairs(self.degree, &round, &square)
    }
}

/// A chord of the flower with the faces on either side, for the orientation
/// odd endpoint to even endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowerChord {
    pub round: bool,
    /// Index into `round()` or `square()` of the class.
    pub index: usize,
    pub left_face: usize,
    pub right_face: usize,
}

/// A face of the disk cut along all round and square chords; it holds
/// exactly one equilibrium.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerFace {
    /// Separatrices landing at this face's equilibrium.
    pub germs: Vec<usize>,
    /// Ends lying on this face's boundary arcs.
    pub ends: Vec<usize>,
    pub kind: EquilibriumKind,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    pub faces: Vec<FlowerFace>,
    pub chords: Vec<FlowerChord>,
    pub skeleton: Skeleton,
    pub zones: Vec<Zone>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Faces of the chord diagram, the landing pattern they induce, and the
/// resulting equilibrium kinds and multiplicities.
pub fn flower(c: &CombinatorialDataSet) -> Result<Flower, CombinatError> {
    let n = c.size();
    let m = 2 * n;
    let germ_pos = |l: usize| 2 * l;
    let end_pos = |l: usize| (2 * l + m - 1) % m;

    let mut chord_ends: Vec<(bool, usize, usize, usize)> = Vec::new();
    for (i, &(k, j)) in c.round().iter().enumerate() {
        chord_ends.push((true, i, germ_pos(k), germ_pos(j)));
    }
    for (i, &(k, j)) in c.square().iter().enumerate() {
        chord_ends.push((false, i, end_pos(k), end_pos(j)));
    }
    let mut points: Vec<usize> = chord_ends.iter().flat_map(|c| [c.2, c.3]).collect();
    points.sort_unstable();
    let arcs = points.len().max(1);
    let arc_after = |x: usize| points.iter().position(|&p| p == x).unwrap();
    let arc_before = |x: usize| (arc_after(x) + arcs - 1) % arcs;
    let arc_of = |x: usize| -> usize {
        match points.iter().rposition(|&p| p < x) {
            Some(i) => i,
            None => arcs - 1,
        }
    };
    let mut parent: Vec<usize> = (0..arcs).collect();
    if !points.is_empty() {
        for &(_, _, a, b) in &chord_ends {
            let (x, y) = (find(&mut parent, arc_before(a)), find(&mut parent, arc_after(b)));
            parent[x] = y;
            let (x, y) = (find(&mut parent, arc_after(a)), find(&mut parent, arc_before(b)));
            parent[x] = y;
        }
    }
    let mut label = vec![usize::MAX; arcs];
    let mut count = 0;
    let mut face_of_arc = vec![0; arcs];
    for a in 0..arcs {
        let r = find(&mut parent, a);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        face_of_arc[a] = label[r];
    }
    if count != c.s() + c.h() + 1 {
        return Err(CombinatError::InconsistentZone(format!("{count} flower faces, expected {}", c.s() + c.h() + 1)));
    }
    let face_at = |x: usize| face_of_arc[arc_of(x)];

    let mut partner = vec![None; n];
    for &(k, j) in c.round() {
        partner[k] = Some(j);
        partner[j] = Some(k);
    }
    let landing: Vec<Option<usize>> = (0..n)
        .map(|l| if partner[l].is_some() { None } else { Some(face_at(germ_pos(l))) })
        .collect();
    let skeleton = Skeleton::new(c.degree(), partner, landing.clone())?;
    let zones = skeleton.zones()?;
    let derived = skeleton.class()?;
    if &derived != c {
        return Err(CombinatError::InconsistentZone(format!(
            "landing pattern of {c} reads back as {derived}"
        )));
    }

    let mut faces = Vec::with_capacity(count);
    for f in 0..count {
        let germs: Vec<usize> = (0..n).filter(|&l| landing[l] == Some(f)).collect();
        let ends: Vec<usize> = (0..n)
            .filter(|&l| !points.contains(&end_pos(l)) && face_at(end_pos(l)) == f)
            .collect();
        let sepals = zones.iter().filter(|z| z.kind.is_sepal() && z.equilibria == [f]).count();
        let odd = germs.iter().filter(|&&l| l % 2 == 1).count();
        let (kind, multiplicity) = match (germs.len(), odd) {
            (0, _) => (EquilibriumKind::Center, 1),
            (g, o) if o == g => (EquilibriumKind::Sink, 1),
            (_, 0) => (EquilibriumKind::Source, 1),
            _ => (EquilibriumKind::Multiple, 1 + sepals / 2),
        };
        if (kind == EquilibriumKind::Multiple) != (sepals > 0) || sepals % 2 == 1 {
            return Err(CombinatError::InconsistentZone(format!(
                "equilibrium of face {f} has {sepals} sepal zones but kind {kind}"
            )));
        }
        faces.push(FlowerFace { germs, ends, kind, multiplicity });
    }
    let excess: usize = faces.iter().map(|f| f.multiplicity - 1).sum();
    if excess != c.m_star() {
        return Err(CombinatError::InconsistentZone(format!("multiplicity excess {excess} differs from m* = {}", c.m_star())));
    }
    let centers = faces.iter().filter(|f| f.kind == EquilibriumKind::Center).count();
    let center_zones = zones.iter().filter(|z| z.kind.is_center()).count();
    if centers != center_zones {
        return Err(CombinatError::InconsistentZone(format!("{centers} center faces but {center_zones} center zones")));
    }

    let chords = chord_ends
        .iter()
        .map(|&(round, index, a, b)| FlowerChord {
            round,
            index,
            left_face: face_of_arc[arc_after(b)],
            right_face: face_of_arc[arc_after(a)],
        })
        .collect();
    Ok(Flower { faces, chords, skeleton, zones })
}

/// Zones of a class.
pub fn zones_of(c: &CombinatorialDataSet) -> Result<Vec<Zone>, CombinatError> {
    Ok(flower(c)?.zones)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str) -> CombinatorialDataSet {
        CombinatorialDataSet::parse(s).unwrap()
    }

    fn kinds(s: &str) -> Vec<ZoneKind> {
        let mut k: Vec<ZoneKind> = zones_of(&class(s)).unwrap().iter().map(|z| z.kind).collect();
        k.sort_by_key(|k| k.to_string());
        k
    }

    #[test]
    fn zone_examples() {
        assert_eq!(kinds("(0 1)"), vec![ZoneKind::CenterEven, ZoneKind::CenterOdd]);
        assert_eq!(kinds("[0 1]"), vec![ZoneKind::AlphaOmega]);
        let k = kinds("[0 1]2[3 4]5");
        assert_eq!(k.iter().filter(|k| **k == ZoneKind::AlphaOmega).count(), 2);
        assert_eq!(k.iter().filter(|k| k.is_sepal()).count(), 2);
        assert_eq!(kinds("0 1"), vec![ZoneKind::SepalEven, ZoneKind::SepalOdd]);
    }

    #[test]
    fn flower_of_z2_minus_1() {
        let f = flower(&class("[0 1]")).unwrap();
        assert_eq!(f.faces.len(), 2);
        let source = f.faces.iter().position(|x| x.germs == [0]).unwrap();
        assert_eq!(f.faces[source].kind, EquilibriumKind::Source);
        // alpha = integral from e_1 to e_0 has the source on its left
        assert_eq!(f.chords[0].left_face, source);
    }

    #[test]
    fn flower_of_metric_graph_example() {
        let f = flower(&class("(0[1[2 3]4]5)")).unwrap();
        assert_eq!(f.faces.len(), 4);
        assert_eq!(f.faces.iter().filter(|x| x.kind == EquilibriumKind::Center).count(), 1);
        let zones = &f.zones;
        assert_eq!(zones.iter().filter(|z| z.kind == ZoneKind::AlphaOmega).count(), 2);
        let sq: Vec<_> = zones.iter().filter_map(|z| z.square_pair).collect();
        assert!(sq.contains(&(1, 4)) && sq.contains(&(3, 2)));
    }

    #[test]
    fn multiplicities_from_sepals() {
        let f = flower(&class("0 1")).unwrap();
        assert_eq!(f.faces.len(), 1);
        assert_eq!((f.faces[0].kind, f.faces[0].multiplicity), (EquilibriumKind::Multiple, 2));
        let f = flower(&class("[0 1]2[3 4]5")).unwrap();
        let mult: Vec<usize> = f.faces.iter().map(|x| x.multiplicity).collect();
        assert_eq!(mult.iter().sum::<usize>(), 4);
        assert_eq!(mult.iter().filter(|&&m| m == 2).count(), 1);
    }

    #[test]
    fn skeleton_round_trip() {
        for s in ["(0 1)(2 3)", "[0(1 2)3](4 5)", "(0 1)2 3", "[0(1 2)3]", "0 1 2 3"] {
            let f = flower(&class(s)).unwrap();
            assert_eq!(f.skeleton.class().unwrap().to_string(), s);
        }
    }
}
