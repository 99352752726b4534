//! Bounded worker pool for data-parallel stages.
//!
//! Work items are indexed and results merge back in index order, so output is
//! identical for any worker count; worker count 1 is the determinism
//! reference and the default.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub const WORKERS_ENV: &str = "ZETAPPROX_WORKERS";

/// Effective worker count: CLI flag beats the ZETAPPROX_WORKERS environment
/// variable, which beats the config value; the default is 1.
pub fn resolve_worker_count(flag: Option<usize>, config: Option<usize>) -> usize {
    let env = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    flag.or(env).or(config).unwrap_or(1).max(1)
}

/// Apply `f` to every item, preserving input order in the output.
pub fn run_indexed<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let n = items.len();
    let slots: Vec<Mutex<Option<R>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let work: Vec<Mutex<Option<T>>> = items.into_iter().map(|t| Mutex::new(Some(t))).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let item = work[i].lock().unwrap().take().expect("item taken once");
                *slots[i].lock().unwrap() = Some(f(item));
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().unwrap().expect("slot filled"))
        .collect()
}
