//! Multi-threaded census over disjoint id ranges.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use schurdefect_core::census::{self, CensusSummary};
use schurdefect_core::{FieldSpec, Result};

/// Runs the full census with `jobs` workers. Ranges are handed out from a
/// shared queue and merged in id order, so the result does not depend on
/// `jobs` or on scheduling.
pub fn run_census(n: usize, field: FieldSpec, jobs: usize, force: bool) -> Result<CensusSummary> {
    census::check_budget(n, field, force)?;
    let jobs = jobs.max(1);
    if jobs == 1 {
        return census::enumerate_algebras(n, field, force, |_| {});
    }
    let ranges = census::partition(n, field, jobs * 16)?;
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<Result<CensusSummary>>>> = ranges.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(ranges.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(range) = ranges.get(i) else { break };
                let part = census::enumerate_range(n, field, range.clone(), |_| {});
                *results[i].lock().expect("worker panicked") = Some(part);
            });
        }
    });
    let mut merged = CensusSummary::empty(n, field);
    for slot in results {
        let part = slot.into_inner().expect("worker panicked").expect("every range is claimed");
        merged.merge(part?);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_counts_agree() {
        let f = FieldSpec::prime(3).unwrap();
        let serial = run_census(3, f, 1, false).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(run_census(3, f, jobs, false).unwrap(), serial);
        }
    }
}
