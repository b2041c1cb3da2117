use super::{validate_class, CombinatError, CombinatorialDataSet};

/// Largest degree accepted by [`enumerate_classes`].
pub const ENUMERATION_CAP: usize = 5;

type Chord = (usize, usize, bool);

/// All non-crossing chord sets on `lo..=hi`, odd-even chords only.
fn chord_sets(lo: usize, hi: usize, memo: &mut std::collections::HashMap<(usize, usize), Vec<Vec<Chord>>>) -> Vec<Vec<Chord>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(&(lo, hi)) {
        return v.clone();
    }
    let mut out: Vec<Vec<Chord>> = chord_sets(lo + 1, hi, memo);
    for j in (lo + 1..=hi).step_by(2) {
        let inner = if j > lo + 1 { chord_sets(lo + 1, j - 1, memo) } else { vec![Vec::new()] };
        let outer = chord_sets(j + 1, hi, memo);
        for round in [true, false] {
            for a in &inner {
                for b in &outer {
                    let mut set = vec![(lo, j, round)];
                    set.extend_from_slice(a);
                    set.extend_from_slice(b);
                    out.push(set);
                }
            }
        }
    }
    memo.insert((lo, hi), out.clone());
    out
}

/// Every bracketing of degree `d` that passes [`validate_class`], sorted by
/// text form.
pub fn enumerate_classes(d: usize) -> Result<Vec<CombinatorialDataSet>, CombinatError> {
    if d > ENUMERATION_CAP {
        return Err(CombinatError::CapExceeded { degree: d, cap: ENUMERATION_CAP });
    }
    if d < 2 {
        return Err(CombinatError::DegreeTooLow(d));
    }
    let n = 2 * (d - 1);
    let mut memo = std::collections::HashMap::new();
    let mut classes: Vec<CombinatorialDataSet> = chord_sets(0, n - 1, &mut memo)
        .into_iter()
        .filter_map(|set| {
            let round: Vec<(usize, usize)> = set.iter().filter(|c| c.2).map(|c| (c.0, c.1)).collect();
            let square: Vec<(usize, usize)> = set.iter().filter(|c| !c.2).map(|c| (c.0, c.1)).collect();
            CombinatorialDataSet::from_pairs(d, &round, &square).ok()
        })
        .filter(|c| validate_class(c).valid)
        .collect();
    classes.sort_by_cached_key(|c| c.to_string());
    classes.dedup();
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two() {
        let classes = enumerate_classes(2).unwrap();
        let text: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
        assert_eq!(text, vec!["(0 1)", "0 1", "[0 1]"]);
        let dims: Vec<usize> = classes.iter().map(|c| c.dimensions().dim).collect();
        assert_eq!(dims, vec![1, 0, 2]);
    }

    #[test]
    fn degree_four_contains_known_classes() {
        let text: Vec<String> = enumerate_classes(4).unwrap().iter().map(|c| c.to_string()).collect();
        for s in ["(0[1[2 3]4]5)", "[0 1]2[3 4]5", "[0(1 2)3](4 5)"] {
            assert!(text.iter().any(|t| t == s), "{s} missing");
        }
    }

    #[test]
    fn cap() {
        assert_eq!(enumerate_classes(6), Err(CombinatError::CapExceeded { degree: 6, cap: 5 }));
    }
}
