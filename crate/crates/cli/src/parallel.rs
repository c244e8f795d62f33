//! Brute-force tallies split across threads.
//!
//! The code space of digraphs on `n` vertices is cut into contiguous ranges
//! and each range is tallied independently. Counts are plain sums, so the
//! result does not depend on the number of workers or where the cuts fall.

use std::ops::Range;
use std::thread;

use smallcover::correspondence::{partition_codes, tally_range, Tally};
use smallcover::EnumerationCap;

/// Tallies the given code ranges with one thread per range.
pub fn tally_ranges(n: usize, ranges: &[Range<u64>]) -> smallcover::Result<Tally> {
    thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .cloned()
            .map(|r| scope.spawn(move || tally_range(n, r)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("tally worker panicked"))
            .sum::<smallcover::Result<Tally>>()
    })
}

/// Tallies all digraphs on `n` vertices using `jobs` workers.
pub fn tally_parallel(n: usize, jobs: usize, cap: EnumerationCap) -> smallcover::Result<Tally> {
    cap.check(n)?;
    let jobs = jobs.max(1);
    if jobs == 1 {
        return tally_range(n, 0..u64::MAX);
    }
    tally_ranges(n, &partition_codes(n, jobs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use smallcover::digraph::code_space;

    #[test]
    fn job_count_does_not_change_totals() {
        let cap = EnumerationCap::DEFAULT;
        let single = tally_parallel(4, 1, cap).unwrap();
        assert_eq!(single.acyclic, 543);
        assert_eq!(single.orientable, 43);
        for jobs in [2, 3, 4, 8, 17] {
            assert_eq!(tally_parallel(4, jobs, cap).unwrap(), single);
        }
    }

    #[test]
    fn respects_cap() {
        assert!(tally_parallel(5, 2, EnumerationCap::new(4)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn arbitrary_cuts_are_partition_invariant(
            mut cuts in proptest::collection::vec(0..code_space(4), 0..6)
        ) {
            cuts.push(0);
            cuts.push(code_space(4));
            cuts.sort_unstable();
            let ranges: Vec<_> = cuts.windows(2).map(|w| w[0]..w[1]).collect();
            let tally = tally_ranges(4, &ranges).unwrap();
            prop_assert_eq!(tally, tally_range(4, 0..u64::MAX).unwrap());
        }
    }
}
