//! Random graphs, lists and formulas for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Cnf3, NaeFormula};
use crate::graph::{ColorSet, Instance, OrderedGraph};
use crate::patterns::{find_induced, Pattern};

pub fn graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> OrderedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    OrderedGraph::new(n, edges).expect("generated pairs are valid")
}

/// A random graph with no induced copy of any of `patterns`.
///
/// Starts from a random graph and, while a copy exists, flips a random pair
/// inside the witness. Restarts after too many flips.
pub fn graph_free_of<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64, patterns: &[Pattern]) -> OrderedGraph {
    graph_free_of_with(rng, n, |_, _| p, patterns)
}

/// Like [`graph_free_of`] with an edge probability per pair `u < v`.
#[allow(clippy::needless_range_loop)]
pub fn graph_free_of_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    p: impl Fn(usize, usize) -> f64,
    patterns: &[Pattern],
) -> OrderedGraph {
    'restart: loop {
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                let e = rng.gen_bool(p(u, v));
                adj[u][v] = e;
                adj[v][u] = e;
            }
        }
        for _ in 0..50 * n * n + 50 {
            let g = from_matrix(&adj);
            let Some(w) = patterns.iter().find_map(|pat| find_induced(&g, pat)) else {
                return g;
            };
            if w.len() < 2 {
                continue 'restart;
            }
            let pair: Vec<usize> = w.choose_multiple(rng, 2).copied().collect();
            let (u, v) = (pair[0], pair[1]);
            adj[u][v] = !adj[u][v];
            adj[v][u] = adj[u][v];
        }
    }
}

fn from_matrix(adj: &[Vec<bool>]) -> OrderedGraph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u][v]).map(move |v| (u, v)));
    OrderedGraph::new(n, edges.collect::<Vec<_>>()).expect("matrix is symmetric and loop-free")
}

/// A nonempty random subset of `[k]` with size in `min..=max`.
pub fn list<R: Rng + ?Sized>(rng: &mut R, k: u32, min: usize, max: usize) -> ColorSet {
    let mut colors: Vec<u32> = (1..=k).collect();
    colors.shuffle(rng);
    let size = rng.gen_range(min.max(1)..=max.min(k as usize));
    colors.into_iter().take(size).collect()
}

pub fn lists<R: Rng + ?Sized>(rng: &mut R, n: usize, k: u32, min: usize, max: usize) -> Vec<ColorSet> {
    (0..n).map(|_| list(rng, k, min, max)).collect()
}

pub fn instance<R: Rng + ?Sized>(rng: &mut R, g: OrderedGraph, k: u32, min: usize, max: usize) -> Instance {
    let n = g.n();
    Instance::with_bound(g, lists(rng, n, k, min, max), k).expect("lists lie in the palette")
}

/// A `padded_fork(1)`-free, `K5`-free instance with lists in `[4]` built so
/// that a block of early vertices with a two-color list `X` sees many later
/// vertices with the complementary list. Such vertices keep many forward
/// neighbors with disjoint lists after the first vertex of each color is
/// fixed, which the 4-coloring solver treats separately.
pub fn prefix_heavy<R: Rng + ?Sized>(rng: &mut R) -> Instance {
    use crate::patterns::{contains_clique, padded_fork};
    let pairs: [[u32; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];
    loop {
        let x = *pairs.choose(rng).expect("nonempty");
        let xc: Vec<u32> = (1..=4).filter(|c| !x.contains(c)).collect();
        let (early, pre, suf) = (rng.gen_range(2..=3), rng.gen_range(2..=5), rng.gen_range(9..=11));
        let inner = rng.gen_range(0.0..0.6);
        let n = early + pre + suf;
        let safe_suffix = rng.gen_range(0..=2);
        // early, prefix, suffix, and suffix vertices whose lists meet X
        let part = |v: usize| match v {
            v if v < early => 0,
            v if v < early + pre => 1,
            v if v < n - safe_suffix => 2,
            _ => 3,
        };
        let noise = rng.gen_range(0.0..0.08);
        let g = graph_free_of_with(
            rng,
            n,
            |u, v| match (part(u), part(v)) {
                (0, 0) => 0.5,
                (0, 1) => noise,
                (0, 2) | (1, 2) | (1, 3) => 1.0 - noise,
                (1, 1) => inner,
                _ => noise,
            },
            &[padded_fork(1)],
        );
        if contains_clique(&g, 5).is_some() {
            continue;
        }
        let lists = (0..n)
            .map(|v| match part(v) {
                0 => list(rng, 4, 2, 4),
                1 if rng.gen_bool(0.85) => ColorSet::from(x),
                1 => ColorSet::from([xc[0], xc[1]]),
                2 => ColorSet::from([xc[0], xc[1]]),
                _ => list(rng, 4, 3, 3),
            })
            .collect();
        return Instance::with_bound(g, lists, 4).expect("lists lie in [4]");
    }
}

pub fn cnf3<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, num_clauses: usize) -> Cnf3 {
    assert!(num_vars >= 3);
    let vars: Vec<i32> = (1..=num_vars as i32).collect();
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut c = [0i32; 3];
            for (slot, &v) in c.iter_mut().zip(vars.choose_multiple(rng, 3)) {
                *slot = if rng.gen_bool(0.5) { v } else { -v };
            }
            c
        })
        .collect();
    Cnf3::new(num_vars, clauses).expect("distinct variables")
}

/// A random positive NAE formula in which no variable occurs more than `max_occ` times.
pub fn nae<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, num_clauses: usize, max_occ: usize) -> NaeFormula {
    assert!(num_vars >= 3);
    let mut occ = vec![0usize; num_vars];
    let mut clauses = Vec::new();
    for _ in 0..num_clauses {
        let open: Vec<usize> = (1..=num_vars).filter(|&v| occ[v - 1] < max_occ).collect();
        if open.len() < 3 {
            break;
        }
        let mut c = [0usize; 3];
        for (slot, &v) in c.iter_mut().zip(open.choose_multiple(rng, 3)) {
            *slot = v;
            occ[v - 1] += 1;
        }
        clauses.push(c);
    }
    NaeFormula::new(num_vars, clauses).expect("distinct variables")
}
