//! Parallel point-count driver with a deterministic reduction.
//!
//! The enumeration space splits into fixed-size chunks; workers pull chunk
//! indices from an atomic counter and results merge in chunk order, so the
//! combined outcome is identical for every thread count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use maxvar_core::unipotent::Ambient;
use maxvar_core::variety::{count_range, space_size, CountMethod, CountOutcome, VarietyError};

const CHUNK: u64 = 1 << 14;

pub fn parallel_count(
    amb: &Ambient,
    method: CountMethod,
    threads: usize,
) -> Result<CountOutcome, VarietyError> {
    let space = space_size(amb, method);
    if space > u64::MAX as u128 {
        return Err(VarietyError::SpaceTooLarge(space));
    }
    let space = space as u64;
    let q = amb.spec.q();
    if threads <= 1 || space <= CHUNK {
        return count_range(amb, method, 0, space);
    }
    let chunks = space.div_ceil(CHUNK);
    let next = AtomicU64::new(0);
    let results: Mutex<Vec<Option<CountOutcome>>> = Mutex::new(vec![None; chunks as usize]);
    let first_error: Mutex<Option<VarietyError>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(chunks as usize) {
            scope.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                if c >= chunks {
                    break;
                }
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(space);
                match count_range(amb, method, lo, hi) {
                    Ok(out) => {
                        results.lock().unwrap()[c as usize] = Some(out);
                    }
                    Err(e) => {
                        let mut slot = first_error.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(e);
                        }
                        break;
                    }
                }
            });
        }
    });
    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    let mut total = CountOutcome::zero(q);
    for chunk in results.into_inner().unwrap() {
        let chunk = chunk.expect("all chunks processed");
        total.absorb(&chunk);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use maxvar_core::unipotent::{GroupSpec, MulCase};

    #[test]
    fn thread_counts_agree() {
        let spec = GroupSpec::new(2, 1, 3, MulCase::Truncated).unwrap();
        let amb = Ambient::new(spec, 2).unwrap();
        let one = parallel_count(&amb, CountMethod::Fiber, 1).unwrap();
        let four = parallel_count(&amb, CountMethod::Fiber, 4).unwrap();
        assert_eq!(one, four);
        let predicted = maxvar_core::variety::predict_count(spec, 2).unwrap();
        assert_eq!(one.total.to_string(), predicted.to_string());
    }
}
