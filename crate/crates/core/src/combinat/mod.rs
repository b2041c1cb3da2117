//! Bracketings of `0 1 ... 2d-3`: round pairs are homoclinic separatrices,
//! square pairs are distinguished transversals, unpaired indices are sepal ends.

mod chains;
mod enumerate;
mod zones;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use chains::{break_homoclinic, can_form_homoclinic, h_chains, FormationReport, HChain, HalfPlane, Link};
pub use enumerate::{enumerate_classes, ENUMERATION_CAP};
pub use chains::{sign_changes, SignCondition};
pub use zones::{flower, zones_of, Flower, FlowerChord, FlowerFace, Skeleton, Zone, ZoneKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("malformed bracketing: {0}")]
    MalformedBracketing(String),
    #[error("pair ({0}, {1}) joins two indices of equal parity")]
    ParityViolation(usize, usize),
    #[error("pairs ({0}, {1}) and ({2}, {3}) cross")]
    CrossingPairs(usize, usize, usize, usize),
    #[error("index {0} is used more than once")]
    IndexReuse(usize),
    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("degree {0} is below 2")]
    DegreeTooLow(usize),
    #[error("inconsistent zone: {0}")]
    InconsistentZone(String),
    #[error("enumeration is capped at degree {cap}, got {degree}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("index {0} is not part of a homoclinic pair")]
    IndexNotHomoclinic(usize),
    #[error("({0}, {1}) is not a homoclinic pair of the class")]
    NotAHomoclinic(usize, usize),
    #[error("({0}, {1}) is already a homoclinic pair")]
    AlreadyPaired(usize, usize),
    #[error("no transition rule applies: {0}")]
    NotImplementedTransition(String),
}

/// A bracketing. Pairs are stored as `(odd, even)` and kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinatorialDataSet {
    degree: usize,
    round: Vec<(usize, usize)>,
    square: Vec<(usize, usize)>,
    unpaired: Vec<usize>,
}

/// Do chords `(a, b)` and `(c, d)` of the circle cross?
pub(crate) fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d) && ![a, b].contains(&c) && ![a, b].contains(&d)
}

fn orient(a: usize, b: usize) -> (usize, usize) {
    if a % 2 == 1 {
        (a, b)
    } else {
        (b, a)
    }
}

impl CombinatorialDataSet {
    /// Build from round and square pairs; everything else is unpaired.
    pub fn from_pairs(degree: usize, round: &[(usize, usize)], square: &[(usize, usize)]) -> Result<Self, CombinatError> {
        if degree < 2 {
            return Err(CombinatError::DegreeTooLow(degree));
        }
        let n = 2 * (degree - 1);
        let mut used = BTreeSet::new();
        let all: Vec<(usize, usize)> = round.iter().chain(square).copied().collect();
        for &(a, b) in &all {
            for x in [a, b] {
                if x >= n {
                    return Err(CombinatError::IndexOutOfRange { index: x, degree });
                }
                if !used.insert(x) {
                    return Err(CombinatError::IndexReuse(x));
                }
            }
            if a % 2 == b % 2 {
                return Err(CombinatError::ParityViolation(a, b));
            }
        }
        for (i, &(a, b)) in all.iter().enumerate() {
            for &(c, d) in &all[i + 1..] {
                if chords_cross(a, b, c, d) {
                    return Err(CombinatError::CrossingPairs(a, b, c, d));
                }
            }
        }
        let mut round: Vec<_> = round.iter().map(|&(a, b)| orient(a, b)).collect();
        let mut square: Vec<_> = square.iter().map(|&(a, b)| orient(a, b)).collect();
        round.sort_unstable();
        square.sort_unstable();
        let unpaired = (0..n).filter(|x| !used.contains(x)).collect();
        Ok(Self { degree, round, square, unpaired })
    }

    /// Parse a bracket string such as `(0[1[2 3]4]5)`.
    pub fn parse(text: &str) -> Result<Self, CombinatError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Tok {
            Open(char),
            Close(char),
            Num(usize),
        }
        let mut toks = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| CombinatError::MalformedBracketing(format!("bad number {s}")))?;
                toks.push(Tok::Num(v));
                continue;
            }
            match ch {
                '(' | '[' => toks.push(Tok::Open(ch)),
                ')' | ']' => toks.push(Tok::Close(ch)),
                c if c.is_whitespace() || c == ',' => {}
                c => return Err(CombinatError::MalformedBracketing(format!("unexpected character {c:?}"))),
            }
            i += 1;
        }

        // Balance and shape: every bracket opens right before a number and
        // closes right after one.
        let mut stack: Vec<(char, Option<usize>)> = Vec::new();
        let mut pairs: Vec<(char, char, usize, usize)> = Vec::new();
        let mut numbers = Vec::new();
        let mut prev: Option<Tok> = None;
        for &t in &toks {
            match t {
                Tok::Open(c) => {
                    if matches!(prev, Some(Tok::Open(_))) {
                        return Err(CombinatError::MalformedBracketing("bracket opens on a bracket".into()));
                    }
                    stack.push((c, None));
                }
                Tok::Num(v) => {
                    numbers.push(v);
                    if let Some(top) = stack.last_mut() {
                        if top.1.is_none() {
                            top.1 = Some(v);
                        }
                    }
                }
                Tok::Close(c) => {
                    let Some(Tok::Num(last)) = prev else {
                        return Err(CombinatError::MalformedBracketing("bracket closes without a number".into()));
                    };
                    let Some((open, first)) = stack.pop() else {
                        return Err(CombinatError::MalformedBracketing("unbalanced closing bracket".into()));
                    };
                    let first = first.expect("opener followed by a number");
                    if first == last {
                        return Err(CombinatError::MalformedBracketing(format!("bracket around the single index {first}")));
                    }
                    pairs.push((open, c, first, last));
                }
            }
            prev = Some(t);
        }
        if !stack.is_empty() {
            return Err(CombinatError::MalformedBracketing("unbalanced opening bracket".into()));
        }
        for &(_, _, a, b) in &pairs {
            if a % 2 == b % 2 {
                return Err(CombinatError::ParityViolation(a, b));
            }
        }
        if numbers.is_empty() || numbers.len() % 2 == 1 {
            return Err(CombinatError::MalformedBracketing(format!("{} indices, expected an even positive count", numbers.len())));
        }
        let mut seen = BTreeSet::new();
        for &v in &numbers {
            if !seen.insert(v) {
                return Err(CombinatError::IndexReuse(v));
            }
        }
        // Indices may appear in any order (e.g. `[0 3](1 2)`) but must cover 0..n.
        if let Some(missing) = (0..numbers.len()).find(|v| !seen.contains(v)) {
            return Err(CombinatError::MalformedBracketing(format!("index {missing} is missing")));
        }
        let mut round = Vec::new();
        let mut square = Vec::new();
        for &(open, close, a, b) in &pairs {
            match (open, close) {
                ('(', ')') => round.push((a, b)),
                ('[', ']') => square.push((a, b)),
                _ => {
                    // A mismatched closer means the round and square chords interleave.
                    let other = pairs
                        .iter()
                        .find(|p| (p.2, p.3) != (a, b) && chords_cross(a, b, p.2, p.3))
                        .map(|p| (p.2, p.3))
                        .unwrap_or((a, b));
                    return Err(CombinatError::CrossingPairs(a, b, other.0, other.1));
                }
            }
        }
        let degree = numbers.len() / 2 + 1;
        Self::from_pairs(degree, &round, &square)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of indices, `2(d-1)`.
    pub fn size(&self) -> usize {
        2 * (self.degree - 1)
    }

    pub fn round(&self) -> &[(usize, usize)] {
        &self.round
    }

    pub fn square(&self) -> &[(usize, usize)] {
        &self.square
    }

    pub fn unpaired(&self) -> &[usize] {
        &self.unpaired
    }

    pub fn s(&self) -> usize {
        self.square.len()
    }

    pub fn h(&self) -> usize {
        self.round.len()
    }

    pub fn m_star(&self) -> usize {
        self.degree - 1 - self.s() - self.h()
    }

    pub fn dimensions(&self) -> ClassDimensions {
        class_dimensions(self)
    }

    /// Partner of `index` in a round pair.
    pub fn round_partner(&self, index: usize) -> Option<usize> {
        self.round.iter().find_map(|&(k, j)| match index {
            x if x == k => Some(j),
            x if x == j => Some(k),
            _ => None,
        })
    }

    pub fn is_round(&self, k: usize, j: usize) -> bool {
        self.round.contains(&orient(k, j))
    }
}

impl fmt::Display for CombinatorialDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let mut opens = vec![Vec::new(); n];
        let mut closes = vec![Vec::new(); n];
        for (pairs, (o, c)) in [(&self.round, ('(', ')')), (&self.square, ('[', ']'))] {
            for &(a, b) in pairs {
                let (lo, hi) = (a.min(b), a.max(b));
                opens[lo].push((hi, o));
                closes[hi].push((lo, c));
            }
        }
        let mut out = String::new();
        for i in 0..n {
            // outer brackets (larger span) open first and close last
            opens[i].sort_by_key(|x| std::cmp::Reverse(x.0));
            closes[i].sort_by_key(|x| std::cmp::Reverse(x.0));
            if i > 0 && opens[i].is_empty() && out.ends_with(|c: char| c.is_ascii_digit()) {
                out.push(' ');
            }
            for &(_, o) in &opens[i] {
                out.push(o);
            }
            out.push_str(&i.to_string());
            for &(_, c) in &closes[i] {
                out.push(c);
            }
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassDimensions {
    pub dim: usize,
    pub codim: usize,
    pub s: usize,
    pub h: usize,
    pub m_star: usize,
}

pub fn class_dimensions(c: &CombinatorialDataSet) -> ClassDimensions {
    let dim = 2 * c.s() + c.h();
    ClassDimensions { dim, codim: 2 * (c.degree - 1) - dim, s: c.s(), h: c.h(), m_star: c.m_star() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realizability {
    /// A witness polynomial classifies to this class.
    Confirmed,
    /// All checks pass but no witness is known.
    Candidate,
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realizability::Confirmed => "confirmed",
            Realizability::Candidate => "candidate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub valid: bool,
    pub problems: Vec<String>,
    pub dimensions: ClassDimensions,
    pub zones: Vec<Zone>,
    pub realizability: Realizability,
}

/// Re-check the structural invariants and the zone decomposition. The
/// realizability flag starts as `Candidate`; callers holding a witness
/// upgrade it.
pub fn validate_class(c: &CombinatorialDataSet) -> ValidationReport {
    let mut problems = Vec::new();
    if let Err(e) = CombinatorialDataSet::from_pairs(c.degree, &c.round, &c.square) {
        problems.push(e.to_string());
    }
    if c.unpaired.len() != 2 * c.m_star() {
        problems.push(format!("{} unpaired indices but m* = {}", c.unpaired.len(), c.m_star()));
    }
    let zones = match zones_of(c) {
        Ok(z) => z,
        Err(e) => {
            problems.push(e.to_string());
            Vec::new()
        }
    };
    ValidationReport {
        valid: problems.is_empty(),
        problems,
        dimensions: class_dimensions(c),
        zones,
        realizability: Realizability::Candidate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let c = CombinatorialDataSet::parse("(0[1[2 3]4]5)").unwrap();
        assert_eq!(c.degree(), 4);
        assert_eq!(c.round(), &[(5, 0)]);
        assert_eq!(c.square(), &[(1, 4), (3, 2)]);
        assert!(c.unpaired().is_empty());

        let c = CombinatorialDataSet::parse("[0 1]2[3 4]5").unwrap();
        assert_eq!((c.s(), c.h(), c.m_star()), (2, 0, 1));
        assert_eq!(c.unpaired(), &[2, 5]);

        assert_eq!(CombinatorialDataSet::parse("(0 2)1 3"), Err(CombinatError::ParityViolation(0, 2)));
    }

    #[test]
    fn canonical_text_round_trips() {
        for s in ["(0[1[2 3]4]5)", "[0 1]2[3 4]5", "[0(1 2)3](4 5)", "0 1", "(0 1)", "[0 1]", "(0 1)(2 3)", "[0(1 2)3]"] {
            assert_eq!(CombinatorialDataSet::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(CombinatorialDataSet::parse(" ( 0 1 ) ").unwrap().to_string(), "(0 1)");
        assert_eq!(CombinatorialDataSet::parse("[0 3](1 2)").unwrap().to_string(), "[0(1 2)3]");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(CombinatorialDataSet::parse("(0 1"), Err(CombinatError::MalformedBracketing(_))));
        assert!(matches!(CombinatorialDataSet::parse("[0 1](1 2)"), Err(CombinatError::IndexReuse(1))));
        assert!(matches!(CombinatorialDataSet::parse("0 2"), Err(CombinatError::MalformedBracketing(_))));
        assert!(matches!(CombinatorialDataSet::parse("(0[1 2)3]"), Err(CombinatError::CrossingPairs(..))));
        assert!(matches!(CombinatorialDataSet::parse("((0 1))"), Err(CombinatError::MalformedBracketing(_))));
        assert!(CombinatorialDataSet::from_pairs(3, &[(1, 0)], &[(3, 2)]).is_ok());
        assert!(CombinatorialDataSet::from_pairs(3, &[(1, 2)], &[(3, 0)]).is_ok());
        assert!(matches!(
            CombinatorialDataSet::from_pairs(3, &[(1, 0)], &[(3, 2), (1, 2)]),
            Err(CombinatError::IndexReuse(_))
        ));
        assert!(matches!(
            CombinatorialDataSet::from_pairs(4, &[(1, 4)], &[(3, 0)]),
            Err(CombinatError::CrossingPairs(..))
        ));
    }

    #[test]
    fn dimension_examples() {
        let dims = |s| class_dimensions(&CombinatorialDataSet::parse(s).unwrap());
        assert_eq!(dims("[0 1]2[3 4]5").dim, 4);
        assert_eq!(dims("[0(1 2)3](4 5)").dim, 4);
        let d = dims("(0 1)");
        assert_eq!((d.dim, d.codim, d.m_star), (1, 1, 0));
    }

    #[test]
    fn validation_examples() {
        for s in ["[0(1 2)3](4 5)", "0 1", "[0 3](1 2)", "(0[1[2 3]4]5)"] {
            let r = validate_class(&CombinatorialDataSet::parse(s).unwrap());
            assert!(r.valid, "{s}: {:?}", r.problems);
            assert_eq!(r.realizability, Realizability::Candidate);
        }
    }
}
