//! Runs both search ranges at the default threshold and prints timings.
//!
//! cargo run --release -p qfano-core --example full_search

use std::time::Instant;

use qfano_core::search::{classify_high, classify_low};
use qfano_core::{FanoCandidate, QMax, SearchConfig};

fn show(c: &FanoCandidate) {
    println!(
        "q={} B={} [{}] -K^3={} L^3={} dims={:?}",
        c.q,
        c.basket.index_label(),
        c.basket,
        c.minus_k_cubed,
        c.l_cubed,
        c.dims
    );
}

fn main() -> qfano_core::Result<()> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    let t = Instant::now();
    let high = classify_high(&SearchConfig {
        q_min: 3,
        jobs,
        ..SearchConfig::default()
    })?;
    high.iter().for_each(show);
    println!("q >= 3: {} candidates in {:?}", high.len(), t.elapsed());

    let t = Instant::now();
    let low = classify_low(&SearchConfig {
        q_max: QMax::Fixed(2),
        jobs,
        ..SearchConfig::default()
    })?;
    low.iter().for_each(show);
    println!("q <= 2: {} candidates in {:?}", low.len(), t.elapsed());
    Ok(())
}
