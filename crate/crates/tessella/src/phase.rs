//! Phase-shift scheduling: a cyclic clap pattern drifting against itself by
//! `(k/n) * T` per cycle. Onset times are exact rationals so the full-cycle
//! identity `shift(P, n, n) = P` holds without tolerance.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rat;

/// A cyclic onset pattern: strictly ascending onset times in `[0, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClapPattern {
    cycle_length: Rat,
    onsets: Vec<Rat>,
}

impl ClapPattern {
    pub fn new(cycle_length: Rat, onsets: impl IntoIterator<Item = Rat>) -> Result<Self> {
        if cycle_length <= Rat::zero() {
            return Err(Error::domain("cycle length must be positive"));
        }
        let onsets: Vec<Rat> = onsets.into_iter().collect();
        for w in onsets.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::domain("onsets must be strictly ascending"));
            }
        }
        if let (Some(first), Some(last)) = (onsets.first(), onsets.last()) {
            if *first < Rat::zero() || *last >= cycle_length {
                return Err(Error::domain(format!(
                    "onsets must lie in [0, {cycle_length})"
                )));
            }
        }
        Ok(ClapPattern {
            cycle_length,
            onsets,
        })
    }

    pub fn cycle_length(&self) -> Rat {
        self.cycle_length
    }

    pub fn onsets(&self) -> &[Rat] {
        &self.onsets
    }

    pub fn len(&self) -> usize {
        self.onsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.onsets.is_empty()
    }
}

/// Shifts every onset by `(k/n) * T`, reduced mod `T` and re-sorted.
pub fn shift_pattern(pattern: &ClapPattern, k: u64, n: u64) -> Result<ClapPattern> {
    if n == 0 {
        return Err(Error::domain("subdivision count n must be positive"));
    }
    let t = pattern.cycle_length();
    let delta = Rat::new(k as i64, n as i64) * t;
    let mut onsets: Vec<Rat> = pattern
        .onsets()
        .iter()
        .map(|&p| reduce_mod(p + delta, t))
        .collect();
    onsets.sort();
    ClapPattern::new(t, onsets)
}

/// The full process: patterns for `k = 0..=n`. First and last are equal.
pub fn process_schedule(pattern: &ClapPattern, n: u64) -> Result<Vec<ClapPattern>> {
    (0..=n).map(|k| shift_pattern(pattern, k, n)).collect()
}

/// Number of onset pairs within circular distance `tolerance`, greedily
/// matching nearest pairs first; each onset is used at most once.
pub fn coincidence_count(a: &ClapPattern, b: &ClapPattern, tolerance: Rat) -> Result<usize> {
    if a.cycle_length() != b.cycle_length() {
        return Err(Error::domain(format!(
            "cycle length mismatch: {} vs {}",
            a.cycle_length(),
            b.cycle_length()
        )));
    }
    if tolerance < Rat::zero() {
        return Err(Error::domain("tolerance must be non-negative"));
    }
    let t = a.cycle_length();
    let mut pairs: Vec<(Rat, usize, usize)> = Vec::new();
    for (i, &x) in a.onsets().iter().enumerate() {
        for (j, &y) in b.onsets().iter().enumerate() {
            let d = circular_distance(x, y, t);
            if d <= tolerance {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort();
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut count = 0;
    for (_, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            count += 1;
        }
    }
    Ok(count)
}

fn reduce_mod(x: Rat, t: Rat) -> Rat {
    x - (x / t).floor() * t
}

fn circular_distance(x: Rat, y: Rat, t: Rat) -> Rat {
    let d = if x >= y { x - y } else { y - x };
    let wrap = t - d;
    if d <= wrap {
        d
    } else {
        wrap
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn ints(cycle: i64, onsets: &[i64]) -> ClapPattern {
        ClapPattern::new(
            Rat::from_integer(cycle),
            onsets.iter().map(|&o| Rat::from_integer(o)),
        )
        .unwrap()
    }

    fn buleria() -> ClapPattern {
        ints(12, &[0, 3, 6, 8, 10])
    }

    #[test]
    fn full_cycle_shift_is_identity() {
        let p = buleria();
        assert_eq!(shift_pattern(&p, 12, 12).unwrap(), p);
    }

    #[test]
    fn quarter_cycle_shift() {
        let p = buleria();
        let shifted = shift_pattern(&p, 3, 12).unwrap();
        assert_eq!(shifted, ints(12, &[1, 3, 6, 9, 11]));
    }

    #[test]
    fn single_step_shift() {
        let p = buleria();
        let shifted = shift_pattern(&p, 1, 12).unwrap();
        assert_eq!(shifted, ints(12, &[1, 4, 7, 9, 11]));
    }

    #[test]
    fn zero_subdivisions_rejected() {
        assert!(shift_pattern(&buleria(), 1, 0).is_err());
    }

    #[test]
    fn schedule_is_cyclic() {
        let p = buleria();
        let schedule = process_schedule(&p, 4).unwrap();
        assert_eq!(schedule.len(), 5);
        assert_eq!(schedule[0], schedule[4]);
        assert_eq!(schedule[0], p);
    }

    #[test]
    fn schedule_of_single_onset() {
        let p = ClapPattern::new(Rat::from_integer(1), [Rat::zero()]).unwrap();
        let schedule = process_schedule(&p, 2).unwrap();
        let onsets: Vec<&[Rat]> = schedule.iter().map(|q| q.onsets()).collect();
        assert_eq!(onsets, vec![&[rat(0, 1)][..], &[rat(1, 2)][..], &[rat(0, 1)][..]]);
    }

    #[test]
    fn schedule_preserves_cardinality() {
        let schedule = process_schedule(&buleria(), 12).unwrap();
        assert_eq!(schedule.len(), 13);
        for p in &schedule {
            assert_eq!(p.len(), 5);
        }
    }

    /// Brute-force set intersection, the oracle for tolerance 0.
    fn intersection_size(a: &ClapPattern, b: &ClapPattern) -> usize {
        a.onsets()
            .iter()
            .filter(|x| b.onsets().contains(x))
            .count()
    }

    #[test]
    fn coincidence_examples() {
        let p = buleria();
        assert_eq!(coincidence_count(&p, &p, Rat::zero()).unwrap(), 5);

        let a = ints(12, &[0, 6]);
        let b = ints(12, &[3, 9]);
        assert_eq!(coincidence_count(&a, &b, Rat::zero()).unwrap(), 0);

        // Half-cycle shift of the buleria pattern: onsets {0, 2, 4, 6, 9};
        // exactly {0, 6} survive in common. Value pinned by the
        // intersection oracle.
        let half = shift_pattern(&p, 6, 12).unwrap();
        assert_eq!(half, ints(12, &[0, 2, 4, 6, 9]));
        assert_eq!(intersection_size(&p, &half), 2);
        assert_eq!(coincidence_count(&p, &half, Rat::zero()).unwrap(), 2);
    }

    #[test]
    fn coincidence_rejects_mismatched_cycles() {
        let a = ints(12, &[0]);
        let b = ints(8, &[0]);
        assert!(coincidence_count(&a, &b, Rat::zero()).is_err());
    }

    #[test]
    fn coincidence_with_tolerance_matches_each_onset_once() {
        let a = ints(12, &[0, 1]);
        let b = ints(12, &[11]);
        // 11 is within distance 1 of onset 0 (wrapping) and distance 2 of 1.
        assert_eq!(coincidence_count(&a, &b, Rat::from_integer(1)).unwrap(), 1);
        assert_eq!(coincidence_count(&a, &b, Rat::from_integer(2)).unwrap(), 1);
    }

    fn arb_pattern() -> impl Strategy<Value = ClapPattern> {
        // Random rational onsets with denominators up to 8 inside a cycle
        // of length 1..=16.
        (1i64..16, prop::collection::btree_set((0i64..128, 1i64..8), 1..8)).prop_map(
            |(cycle, raw)| {
                let t = Rat::from_integer(cycle);
                let mut onsets: Vec<Rat> = raw
                    .into_iter()
                    .map(|(num, den)| reduce_mod(Rat::new(num, den), t))
                    .collect();
                onsets.sort();
                onsets.dedup();
                ClapPattern::new(t, onsets).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn shift_identities(p in arb_pattern(), n in 1u64..24) {
            prop_assert_eq!(&shift_pattern(&p, 0, n).unwrap(), &p);
            prop_assert_eq!(&shift_pattern(&p, n, n).unwrap(), &p);
        }

        #[test]
        fn shift_is_additive(p in arb_pattern(), n in 1u64..12, k1 in 0u64..12, k2 in 0u64..12) {
            let oneshot = shift_pattern(&p, k1 + k2, n).unwrap();
            let stepped = shift_pattern(&shift_pattern(&p, k1, n).unwrap(), k2, n).unwrap();
            prop_assert_eq!(oneshot, stepped);
        }

        #[test]
        fn shift_preserves_onset_count(p in arb_pattern(), n in 1u64..12, k in 0u64..36) {
            prop_assert_eq!(shift_pattern(&p, k, n).unwrap().len(), p.len());
        }

        #[test]
        fn coincidence_is_symmetric_and_matches_intersection(
            a in arb_pattern(), b in arb_pattern()
        ) {
            // Force a common cycle length by rebuilding b over a's cycle.
            let t = a.cycle_length();
            let mut onsets: Vec<Rat> = b.onsets().iter().map(|&o| reduce_mod(o, t)).collect();
            onsets.sort();
            onsets.dedup();
            let b = ClapPattern::new(t, onsets).unwrap();
            let ab = coincidence_count(&a, &b, Rat::zero()).unwrap();
            let ba = coincidence_count(&b, &a, Rat::zero()).unwrap();
            prop_assert_eq!(ab, ba);
            prop_assert_eq!(ab, intersection_size(&a, &b));
        }
    }
}
