use olc_core::graph::is_proper;
use olc_core::oracle::solve_exact;
use olc_core::patterns::padded_edge;
use olc_core::random;
use olc_core::single_edge::{solve_single_edge_free_with_stats, SingleEdgeStats};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::atomic::Ordering;

fn run(k: u32, count: usize, seed: u64, min: usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut sat, mut stage3, mut dps) = (0, 0, 0);
    let t = std::time::Instant::now();
    for case in 0..count {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.9);
        let g = random::graph_free_of(&mut rng, n, p, &[padded_edge(1)]);
        let inst = random::instance(&mut rng, g, k, min, k as usize);
        let stats = SingleEdgeStats::default();
        let got = solve_single_edge_free_with_stats(&inst, k, 1, &stats).unwrap();
        assert_eq!(got.is_some(), solve_exact(&inst).is_some(), "case {case}: {}", inst.to_json());
        if let Some(col) = got {
            sat += 1;
            assert!(is_proper(&inst, &col).unwrap());
        }
        if stats.end_tuples() > 0 { stage3 += 1; }
        dps += stats.dp_runs.load(Ordering::Relaxed);
    }
    eprintln!("k={k} min={min}: sat {sat}/{count}, stage3 {stage3}, dp runs {dps}, {:?}", t.elapsed());
}

#[test]
fn matches_oracle_three_colors() {
    run(3, 100, 11, 1);
    run(3, 100, 11, 2);
    run(3, 100, 11, 3);
}

#[test]
fn matches_oracle_four_colors() {
    run(4, 40, 12, 2);
    run(4, 40, 12, 3);
}
