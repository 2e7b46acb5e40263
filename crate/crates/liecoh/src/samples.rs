//! Jacobi-consistent sample points for the classification families.
//!
//! The dimension 6 and 8 families have obvious small-support
//! representatives; for dimension 10 the dependent constants in rows
//! `k >= 4` are found by exact Jacobi completion from small-support seeds,
//! and for dimensions 12 and 14 the closure over the two spine branches is
//! used. Classes for which no listed seed completes are reported as
//! unsampled rather than invented.

use std::collections::BTreeMap;

use crate::exactlin::Scalar;
use crate::filiform::{
    build, classify, index_set, jacobi_closure, jacobi_complete, p14, ClosureBranch, Family,
    FiliformParams,
};

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

type Assignment = Vec<((usize, usize), Scalar)>;

/// Candidate seeds per family: the assigned low-row entries; everything in
/// rows `k >= 4` not assigned is treated as unknown and solved for.
fn candidates(family: Family) -> Vec<Assignment> {
    use Family::*;
    match family {
        A41 => vec![vec![]],
        A61 => vec![vec![((3, 6), q(1, 1))]],
        A62 => vec![vec![((2, 5), q(1, 1))], vec![]],
        A81 => vec![vec![((4, 8), q(1, 1))]],
        A82 => vec![vec![((2, 5), q(1, 1))]],
        A83 => vec![vec![
            ((2, 5), q(-1, 2)),
            ((3, 7), q(1, 1)),
            ((3, 8), q(1, 1)),
        ]],
        A84 => vec![vec![]],
        A101 => vec![
            vec![((2, 5), q(1, 1)), ((5, 10), q(1, 1))],
            vec![((2, 5), q(1, 1)), ((5, 10), q(1, 1)), ((3, 7), q(1, 1))],
        ],
        A102 => vec![
            vec![((5, 10), q(1, 1))],
            vec![((5, 10), q(1, 1)), ((2, 5), q(1, 1)), ((3, 7), q(-2, 1))],
        ],
        A103 => vec![
            vec![((2, 5), q(2, 1)), ((3, 7), q(1, 1))],
            vec![((2, 5), q(1, 1))],
        ],
        A104 => vec![
            vec![((2, 5), q(1, 1)), ((3, 7), q(1, 1))],
            vec![((2, 5), q(1, 1)), ((3, 7), q(-1, 1))],
        ],
        A105 => vec![
            vec![((2, 6), q(1, 1)), ((4, 9), q(1, 1))],
            vec![((2, 7), q(1, 1)), ((4, 9), q(1, 1)), ((2, 6), q(1, 1))],
        ],
        A106 => vec![
            vec![((4, 9), q(1, 1))],
            vec![((4, 9), q(1, 1)), ((2, 6), q(0, 1))],
        ],
        A107 => vec![vec![((2, 7), q(1, 1)), ((4, 9), q(0, 1))]],
        A108 => vec![
            vec![((2, 6), q(1, 1)), ((4, 10), q(1, 1)), ((4, 9), q(0, 1))],
            vec![((3, 8), q(1, 1)), ((4, 9), q(0, 1))],
        ],
        A109 => vec![vec![]],
        _ => vec![],
    }
}

/// A Jacobi-consistent point in the given family, if one of the listed seeds
/// completes; classes whose seeds all fail are reported as `None`.
pub fn class_point(n: usize, family: Family) -> Option<FiliformParams> {
    use Family::*;
    match family {
        An1 | An2 | An21 | An22 | An3 => class_point_high(n, family),
        _ => {
            for assignment in candidates(family) {
                let assigned: BTreeMap<(usize, usize), Scalar> =
                    assignment.into_iter().collect();
                let unknowns: Vec<(usize, usize)> = index_set(n)
                    .into_iter()
                    .filter(|key| key.0 >= 4 && !assigned.contains_key(key))
                    .collect();
                let Ok(params) = jacobi_complete(n, &assigned, &unknowns) else {
                    continue;
                };
                if classify(&params).map(|c| c.family) == Ok(family) {
                    debug_assert!(build(&params).is_lie_algebra());
                    return Some(params);
                }
            }
            None
        }
    }
}

fn class_point_high(n: usize, family: Family) -> Option<FiliformParams> {
    use Family::*;
    let base = |entries: Assignment| -> Option<FiliformParams> {
        let mut map: BTreeMap<(usize, usize), Scalar> = entries.into_iter().collect();
        map.insert((2, 5), Scalar::one());
        FiliformParams::new(n, map).ok()
    };
    match family {
        An1 => {
            let p = base(vec![((3, 8), q(1, 1))])?;
            jacobi_closure(&p, ClosureBranch::A1).ok()
        }
        An2 if n != 14 => {
            let p = base(vec![((3, 7), q(1, 10)), ((3, 8), q(1, 1))])?;
            jacobi_closure(&p, ClosureBranch::A2).ok()
        }
        An21 if n == 14 => {
            // On the refinement locus: set alpha_{3,10} to the polynomial's
            // value at the other free parameters.
            let free = base(vec![((3, 7), q(1, 10)), ((3, 8), q(1, 1))])?;
            let locus_value = p14(&free);
            let p = free.with_entry(3, 10, locus_value).ok()?;
            jacobi_closure(&p, ClosureBranch::A2).ok()
        }
        An22 if n == 14 => {
            let free = base(vec![((3, 7), q(1, 10)), ((3, 8), q(1, 1))])?;
            let off_locus = &p14(&free) + &Scalar::one();
            let p = free.with_entry(3, 10, off_locus).ok()?;
            jacobi_closure(&p, ClosureBranch::A2).ok()
        }
        An3 => {
            // Property (b) fails: nonzero corner entry. The spine constraint
            // no longer applies, so try a few values for alpha_{3,7} and
            // complete over all of rows >= 4 except the fixed corner.
            for a37 in [q(0, 1), q(1, 10), q(1, 1), q(-1, 1), q(1, 2)] {
                let assigned: BTreeMap<(usize, usize), Scalar> = [
                    ((2, 5), Scalar::one()),
                    ((n / 2, n), Scalar::one()),
                    ((3, 7), a37),
                ]
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect();
                let unknowns: Vec<(usize, usize)> = index_set(n)
                    .into_iter()
                    .filter(|key| key.0 >= 4 && !assigned.contains_key(key))
                    .collect();
                if let Ok(params) = jacobi_complete(n, &assigned, &unknowns) {
                    if classify(&params).map(|c| c.family) == Ok(Family::An3) {
                        return Some(params);
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Deterministic stream of small rationals for the random point generators.
fn small_rational(n: usize, seed: u64, attempt: u64, slot: u64) -> Scalar {
    let mut s = crate::structures::rng::Stream::keyed(&[n as u64, seed, attempt, slot]);
    let p = (s.next_u64() % 9) as i64 - 4;
    let d = (s.next_u64() % 3) as i64 + 1;
    Scalar::ratio(p, d)
}

/// A Jacobi-consistent filiform law of dimension `n` in {6, 8, 10, 12},
/// deterministic in `seed`: the free rows `k = 2, 3` are drawn at random and
/// the dependent rows are completed exactly, retrying with fresh draws when
/// the chosen free values admit no completion.
pub fn random_consistent(n: usize, seed: u64) -> FiliformParams {
    assert!(matches!(n, 6 | 8 | 10 | 12), "generator covers n in {{6,8,10,12}}");
    for attempt in 0..200u64 {
        if n == 12 {
            // Use the closure over a randomly chosen spine branch.
            let branch = if small_rational(n, seed, attempt, 999).is_negative() {
                ClosureBranch::A1
            } else {
                ClosureBranch::A2
            };
            let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            map.insert((2, 5), Scalar::one());
            if branch == ClosureBranch::A2 {
                map.insert((3, 7), q(1, 10));
            }
            let mut slot = 0;
            for s in 6..=12 {
                map.insert((2, s), small_rational(n, seed, attempt, slot));
                slot += 1;
            }
            for s in 8..=12 {
                map.insert((3, s), small_rational(n, seed, attempt, slot));
                slot += 1;
            }
            let Ok(p) = FiliformParams::new(12, map) else {
                continue;
            };
            if let Ok(full) = jacobi_closure(&p, branch) {
                return full;
            }
            continue;
        }
        let mut assigned: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let mut slot = 0;
        for (k, s) in index_set(n) {
            if k <= 3 {
                let v = small_rational(n, seed, attempt, slot);
                slot += 1;
                if !v.is_zero() {
                    assigned.insert((k, s), v);
                }
            }
        }
        let unknowns: Vec<(usize, usize)> = index_set(n)
            .into_iter()
            .filter(|key| key.0 >= 4)
            .collect();
        if let Ok(p) = jacobi_complete(n, &assigned, &unknowns) {
            return p;
        }
    }
    panic!("no Jacobi-consistent point found for n={n}, seed={seed}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filiform::extract_params;

    #[test]
    fn low_dimensional_class_points_exist_and_classify_correctly() {
        use Family::*;
        let table = [
            (4, A41),
            (6, A61),
            (6, A62),
            (8, A81),
            (8, A82),
            (8, A83),
            (8, A84),
            (10, A101),
            (10, A102),
            (10, A103),
            (10, A104),
            (10, A105),
            (10, A106),
            (10, A107),
            (10, A108),
            (10, A109),
        ];
        for (n, family) in table {
            let p = class_point(n, family)
                .unwrap_or_else(|| panic!("no sample for {family:?} in dimension {n}"));
            assert_eq!(classify(&p).unwrap().family, family);
            assert!(build(&p).is_lie_algebra(), "{family:?}");
        }
    }

    #[test]
    fn high_dimensional_class_points() {
        use Family::*;
        for (n, family) in [(12, An1), (12, An2), (14, An1), (14, An21), (14, An22)] {
            let p = class_point(n, family)
                .unwrap_or_else(|| panic!("no sample for {family:?} in dimension {n}"));
            assert_eq!(classify(&p).unwrap().family, family);
        }
    }

    #[test]
    fn random_points_are_filiform_laws_and_round_trip() {
        for n in [6usize, 8, 10, 12] {
            for seed in 0..4u64 {
                let p = random_consistent(n, seed);
                let g = build(&p);
                assert!(g.is_lie_algebra());
                assert!(g.series_report().unwrap().is_filiform);
                assert_eq!(extract_params(&g).unwrap(), p);
            }
        }
    }

    #[test]
    fn random_points_are_reproducible() {
        assert_eq!(random_consistent(10, 3), random_consistent(10, 3));
    }
}
