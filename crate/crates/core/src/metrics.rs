use std::time::Duration;

use serde::Serialize;

/// Step counters for one engine run.
///
/// `engine_calls` counts every invocation of an engine procedure, including
/// those answered from the memo table; `cond_execs` counts executions of the
/// action dispatch itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub engine_calls: u64,
    pub cond_execs: u64,
    pub memo_hits: u64,
    pub visited_hits: u64,
    pub union_elem_ops: u64,
    pub max_frame_depth: u64,
    pub halts_seen: u64,
    /// Largest terminator set produced during the run.
    pub max_set_card: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Metrics {
    /// Engine calls plus set-union element operations.
    pub fn work(&self) -> u64 {
        self.engine_calls + self.union_elem_ops
    }
}

/// Wall-clock timer. Reads zero on `wasm32-unknown-unknown`, where
/// `std::time::Instant` is unavailable.
#[derive(Debug, Clone, Copy)]
pub struct Stopwatch {
    #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
    began: std::time::Instant,
}

impl Stopwatch {
    pub fn start() -> Stopwatch {
        Stopwatch {
            #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
            began: std::time::Instant::now(),
        }
    }

    pub fn elapsed(&self) -> Duration {
        #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
        return self.began.elapsed();
        #[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
        return Duration::ZERO;
    }
}
