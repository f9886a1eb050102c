//! Wall time of the Ryser permanent from n = 10 up to N, single-threaded and
//! on the default pool.
//!
//! cargo run --release --example permanent_benchmark [-- N]

use std::time::Instant;

use gmf::gmf::permanent_ryser;
use gmf::random::{random_complex_matrix, rng};

fn time(a: &gmf::matrix::ComplexMatrix) -> f64 {
    let t = Instant::now();
    std::hint::black_box(permanent_ryser(a).unwrap());
    t.elapsed().as_secs_f64()
}

fn main() {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(22);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut r = rng(0);
    let mut prev: Option<f64> = None;
    println!("{:>3} {:>12} {:>12} {:>8}", "n", "1 thread", "pool", "ratio");
    for n in 10..=n_max {
        let a = random_complex_matrix(n, &mut r);
        let s = single.install(|| time(&a));
        let m = time(&a);
        let ratio = prev.map(|p| format!("{:.2}", m / p)).unwrap_or_default();
        println!("{n:>3} {s:>12.4e} {m:>12.4e} {ratio:>8}");
        prev = Some(m);
    }
}
