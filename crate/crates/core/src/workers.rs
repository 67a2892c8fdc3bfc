//! Deterministic chunked parallel map.
//!
//! Work is split into contiguous chunks, one per worker, and the results are
//! concatenated in input order, so output never depends on the worker count.
//! `LIEFORGE_WORKERS` caps the number of threads.

use std::thread;

const SERIAL_BELOW: usize = 512;

pub fn worker_count() -> usize {
    let available = thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var("LIEFORGE_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => cap.min(available.max(1)),
        _ => available,
    }
}

pub fn parallel_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    parallel_map_with(worker_count(), items, f)
}

pub fn parallel_map_with<T, R, F>(workers: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < SERIAL_BELOW {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_worker_count() {
        let items: Vec<u64> = (0..5000).collect();
        let one = parallel_map_with(1, &items, |x| x * x);
        for w in [2, 3, 7, 16] {
            assert_eq!(parallel_map_with(w, &items, |x| x * x), one);
        }
    }
}
