//! Acceptance run: one PASS/FAIL line per criterion, checked against
//! independent references (brute force, exhaustive search, enumeration).
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the run exits
//! nonzero when any criterion's outcome differs from that expectation.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use olc_core::cnf_reduction::{build_cnf_instance, decode_assignment};
use olc_core::easy::{solve_clique_unbounded, solve_fork_free, solve_two_lists};
use olc_core::formula::{Cnf3, NaeFormula};
use olc_core::graph::{is_proper, Instance, OrderedGraph};
use olc_core::kernel::{kernelize, Kernel};
use olc_core::links::{chain, permutation_gadget, permutation_semantics, rotation_gadget, verify_link_semantics, Link, Rotation};
use olc_core::nae_reduction::{
    indicator_gadget, indicator_semantics, nae_gadget, not_all_gadget, not_both_gadget, not_both_semantics,
    reduce_nae3sat, triple_semantics, PairSystem, TripleSystem,
};
use olc_core::oracle::{assignments, find_induced_brute, nae_brute, sat_brute, solve_exact, solve_pinned};
use olc_core::padded_fork::{self, solve4_padded_fork_free_with, Stats};
use olc_core::patterns::{
    contains_clique, edge_span, find_induced, fork, fork_tail, is_free, nested_pair, padded_edge,
    padded_fork as padded_fork_pattern, Pattern, PatternKind,
};
use olc_core::random;
use olc_core::single_edge::{dp_fixed_ends, solve_single_edge_free, BlockTuple};
use olc_core::Error;

/// The compiled 3-SAT instance has two tie vertices per literal occurrence,
/// so its size is n + 13m; criterion 8 asks for n + 10m.
const KNOWN_FAILURES: &[u32] = &[8];

#[derive(Default)]
struct Checks {
    total: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn summary(&self) -> (bool, String) {
        let mut s = format!("{} checks", self.total);
        for n in &self.notes {
            s.push_str("; ");
            s.push_str(n);
        }
        if !self.failures.is_empty() {
            s.push_str(&format!("; {} failed, first: {}", self.failures.len(), self.failures[0]));
        }
        (self.failures.is_empty(), s)
    }
}

fn graph_from_mask(n: usize, mask: u64) -> OrderedGraph {
    let pairs = (0..n).tuple_combinations::<(usize, usize)>();
    let edges: Vec<_> = pairs.enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| e).collect();
    OrderedGraph::new(n, edges).unwrap()
}

fn catalog() -> Vec<Pattern> {
    let mut ps = vec![fork(), fork_tail(), nested_pair()];
    for l in 0..=3 {
        ps.extend([edge_span(l), padded_edge(l), padded_fork_pattern(l)]);
    }
    ps.extend([3, 4].map(|s| Pattern::of(PatternKind::Clique(s))));
    ps
}

fn c1_patterns() -> Checks {
    let mut c = Checks::default();
    let pats = catalog();
    let mut graphs = 0;
    for n in 0..=6usize {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph_from_mask(n, mask);
            graphs += 1;
            for p in &pats {
                let got = find_induced(&g, p);
                c.check(got == find_induced_brute(&g, p), || format!("{} on {g:?}", p.name));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(101);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=8);
        let p = rng.gen_range(0.0..1.0);
        let g = random::graph(&mut rng, n, p);
        for pat in &pats {
            let got = find_induced(&g, pat);
            c.check(got == find_induced_brute(&g, pat), || format!("{} on {g:?}", pat.name));
        }
    }
    c.note(format!("{graphs} exhaustive + 1000 random graphs, {} patterns", pats.len()));
    c
}

fn random_instance(rng: &mut StdRng, n: usize, k: u32, p: f64) -> Instance {
    let g = random::graph(rng, n, p);
    let min = rng.gen_range(1..=k as usize);
    random::instance(rng, g, k, min, k as usize)
}

fn c2_kernel() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(102);
    let (mut no, mut sat) = (0, 0);
    for case in 0..1000 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=4);
        let p = rng.gen_range(0.1..0.9);
        let inst = random_instance(&mut rng, n, k, p);
        let truth = solve_exact(&inst);
        sat += truth.is_some() as usize;
        match kernelize(&inst) {
            Kernel::No => {
                no += 1;
                c.check(truth.is_none(), || format!("case {case}: kernel says no on a colorable instance"));
            }
            Kernel::Reduced(r) => {
                c.check(r.instance.lists().iter().all(|l| l.len() >= 2), || format!("case {case}: singleton survived"));
                let sub = solve_exact(&r.instance);
                c.check(sub.is_some() == truth.is_some(), || format!("case {case}: verdict changed"));
                if let Some(col) = sub {
                    let lifted = r.lift(&col).unwrap();
                    c.check(is_proper(&inst, &lifted).unwrap(), || format!("case {case}: lifted coloring improper"));
                }
            }
        }
    }
    c.note(format!("{sat} sat, {no} rejected by the kernel"));
    c
}

fn c3_two_lists() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(103);
    let mut sat = 0;
    for case in 0..1000 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.7);
        let g = random::graph(&mut rng, n, p);
        let inst = random::instance(&mut rng, g, 6, 1, 2);
        let got = solve_two_lists(&inst).unwrap();
        c.check(got.is_some() == solve_exact(&inst).is_some(), || format!("case {case}: {}", inst.to_json()));
        if let Some(col) = got {
            sat += 1;
            c.check(is_proper(&inst, &col).unwrap(), || format!("case {case}: improper"));
        }
    }
    c.note(format!("{sat} sat"));
    c
}

fn induces(g: &OrderedGraph, w: &[usize], p: &Pattern) -> bool {
    w.len() == p.n()
        && w.windows(2).all(|x| x[0] < x[1])
        && (0..w.len()).all(|a| (a + 1..w.len()).all(|b| g.has_edge(w[a], w[b]) == p.graph.has_edge(a, b)))
}

fn c4_chordal() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(104);
    let mut sat = 0;
    for case in 0..500 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = random::graph_free_of(&mut rng, n, p, &[fork()]);
        let min = rng.gen_range(1..=4);
        let inst = random::instance(&mut rng, g, 4, min, 4);
        let got = solve_fork_free(&inst).unwrap();
        c.check(got.is_some() == solve_exact(&inst).is_some(), || format!("case {case}: {}", inst.to_json()));
        if let Some(col) = got {
            sat += 1;
            c.check(is_proper(&inst, &col).unwrap(), || format!("case {case}: improper"));
        }
    }
    let mut rejected = 0;
    while rejected < 200 {
        let n = rng.gen_range(3..=10);
        let g = random::graph(&mut rng, n, 0.4);
        if is_free(&g, &fork()) {
            continue;
        }
        rejected += 1;
        let inst = Instance::uniform(g.clone(), 4);
        match solve_fork_free(&inst) {
            Err(Error::PatternFound { witness, .. }) => {
                c.check(induces(&g, &witness, &fork()), || format!("bad witness {witness:?} in {g:?}"))
            }
            other => c.check(false, || format!("fork input not rejected: {other:?}")),
        }
    }
    c.note(format!("{sat}/500 sat, 200 fork inputs rejected"));
    c
}

fn c5_cliques() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(105);
    let mut sat = 0;
    for n in 1..=8 {
        for case in 0..200 {
            let max = rng.gen_range(1..=n.min(10));
            let inst = random::instance(&mut rng, OrderedGraph::complete(n), 10, 1, max);
            let got = solve_clique_unbounded(&inst).unwrap();
            c.check(got.is_some() == solve_exact(&inst).is_some(), || format!("n={n} case {case}"));
            if let Some(col) = got {
                sat += 1;
                c.check(is_proper(&inst, &col).unwrap(), || format!("n={n} case {case}: improper"));
            }
        }
    }
    c.note(format!("K1..K8 x 200 list draws, {sat} sat"));
    c
}

// The block tuple a coloring of a prefix induces: each class, cut to its last ℓ.
fn tuple_of(prefix: &[u32], k: u32, ell: usize) -> BlockTuple {
    let blocks = (1..=k)
        .map(|color| {
            let class: Vec<usize> = (0..prefix.len()).filter(|&v| prefix[v] == color).collect();
            class[class.len().saturating_sub(ell)..].to_vec()
        })
        .collect();
    BlockTuple { blocks }
}

// Removes colors until no color's holders contain `edge_span(ell)`.
fn span_free_lists(rng: &mut StdRng, inst: Instance, k: u32, ell: usize) -> Instance {
    let span = edge_span(ell);
    let mut lists = inst.lists().to_vec();
    loop {
        let hit = (1..=k).find_map(|i| {
            let holders: Vec<usize> = (0..inst.n()).filter(|&v| lists[v].contains(i)).collect();
            let sub = inst.graph().induced(&holders).unwrap();
            find_induced(&sub, &span).map(|w| (i, w.iter().map(|&x| holders[x]).collect::<Vec<_>>()))
        });
        let Some((i, w)) = hit else {
            return inst.with_lists(lists).unwrap();
        };
        let v = w[rng.gen_range(0..w.len())];
        lists[v].remove(i);
    }
}

fn c6_single_edge() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(106);
    let mut sat = 0;
    for (k, count) in [(3u32, 500), (4, 200)] {
        for case in 0..count {
            let n = rng.gen_range(1..=10);
            let p = rng.gen_range(0.2..0.9);
            let g = random::graph_free_of(&mut rng, n, p, &[padded_edge(1)]);
            let min = rng.gen_range(1..=k as usize);
            let inst = random::instance(&mut rng, g, k, min, k as usize);
            let got = solve_single_edge_free(&inst, k, 1).unwrap();
            c.check(got.is_some() == solve_exact(&inst).is_some(), || format!("k={k} case {case}: {}", inst.to_json()));
            if let Some(col) = got {
                sat += 1;
                c.check(is_proper(&inst, &col).unwrap(), || format!("k={k} case {case}: improper"));
            }
        }
    }
    let mut entries = 0;
    for case in 0..300 {
        let n = rng.gen_range(1..=7);
        let k = rng.gen_range(2..=4);
        let ell = rng.gen_range(1..=2);
        let p = rng.gen_range(0.1..0.6);
        let inst = random_instance(&mut rng, n, k, p);
        let inst = span_free_lists(&mut rng, inst, k, ell);
        let (table, col) = dp_fixed_ends(&inst, k, ell).unwrap();
        c.check(col.is_some() == solve_exact(&inst).is_some(), || format!("probe {case}: verdict"));
        if let Some(col) = &col {
            c.check(is_proper(&inst, col).unwrap(), || format!("probe {case}: improper"));
        }
        // all proper colorings of each prefix, grown one vertex at a time
        let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
        for j in 0..n {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    let g = inst.graph();
                    inst.list(j)
                        .iter()
                        .filter(|&c| g.backward_neighbors(j).iter().all(|&u| p[u] != c))
                        .map(|c| {
                            let mut q = p.clone();
                            q.push(c);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let truth: HashSet<BlockTuple> = prefixes.iter().map(|p| tuple_of(p, k, ell)).collect();
            let got: HashSet<BlockTuple> = match table.rows.get(j) {
                Some(_) => table.row(j).cloned().collect(),
                None => HashSet::new(),
            };
            entries += got.len();
            c.check(got == truth, || format!("probe {case} row {j}: {} entries, {} by enumeration", got.len(), truth.len()));
            if truth.is_empty() {
                break;
            }
        }
    }
    c.note(format!("{sat}/700 sat; DP probe confirmed {entries} true entries on 300 instances"));
    c
}

fn c7_padded_fork() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(107);
    let stats = Stats::default();
    let config = padded_fork::Config::new(1);
    let mut sat = 0;
    let mut run = |c: &mut Checks, inst: &Instance, label: String| match solve4_padded_fork_free_with(inst, &config, &stats) {
        Ok(got) => {
            c.check(got.is_some() == solve_exact(inst).is_some(), || format!("{label}: {}", inst.to_json()));
            if let Some(col) = got {
                sat += 1;
                c.check(is_proper(inst, &col).unwrap(), || format!("{label}: improper"));
            }
        }
        Err(e) => c.check(false, || format!("{label}: {e}")),
    };
    let mut done = 0;
    while done < 300 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.9);
        let g = random::graph_free_of(&mut rng, n, p, &[padded_fork_pattern(1)]);
        if contains_clique(&g, 5).is_some() {
            continue;
        }
        let min = rng.gen_range(1..=4);
        let inst = random::instance(&mut rng, g, 4, min, 4);
        run(&mut c, &inst, format!("random {done}"));
        done += 1;
    }
    for case in 0..300 {
        let inst = random::prefix_heavy(&mut rng);
        run(&mut c, &inst, format!("structured {case}"));
    }
    let s = |x: &std::sync::atomic::AtomicU64| Stats::get(x);
    c.note(format!(
        "{sat}/600 sat; audits: {} common-color forks, {} bad vertices, {} two-list checks; {} final fork-free instances, {} deleted edges",
        s(&stats.common_color_forks),
        s(&stats.bad_vertices),
        s(&stats.two_list_audits),
        s(&stats.final_instances),
        s(&stats.deleted_edges)
    ));
    c
}

fn all_sign_formula() -> Cnf3 {
    let clauses = (0..8).map(|m| [1, 2, 3].map(|v: i32| if m >> (v - 1) & 1 == 1 { -v } else { v })).collect();
    Cnf3::new(3, clauses).unwrap()
}

fn c8_cnf_reduction() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(108);
    let mut formulas: Vec<Cnf3> = (0..200)
        .map(|_| {
            let n = rng.gen_range(3..=4);
            let m = rng.gen_range(0..=4);
            random::cnf3(&mut rng, n, m)
        })
        .collect();
    formulas.push(all_sign_formula());
    let (mut sat, mut size_mismatch) = (0, 0);
    for (case, f) in formulas.iter().enumerate() {
        let (inst, layout) = build_cnf_instance(f).unwrap();
        let (n, m) = (f.num_vars(), f.clauses().len());
        c.check(inst.n() == n + 13 * m, || format!("case {case}: size {}", inst.n()));
        if inst.n() != n + 10 * m {
            size_mismatch += 1;
        }
        c.check(is_free(inst.graph(), &fork_tail()), || format!("case {case}: fork-tail found"));
        let truth = sat_brute(f);
        let got = solve_exact(&inst);
        c.check(got.is_some() == truth.is_some(), || format!("case {case}: verdict"));
        if let Some(col) = got {
            sat += 1;
            let a = decode_assignment(&layout, &col).unwrap();
            c.check(f.is_satisfied(&a), || format!("case {case}: decoded assignment fails"));
        }
        for a in assignments(n) {
            let pins: Vec<(usize, u32)> =
                a.iter().enumerate().map(|(i, &b)| (layout.variables[i], if b { 1 } else { 2 })).collect();
            let feasible = solve_pinned(&inst, &pins).is_some();
            c.check(feasible == f.is_satisfied(&a), || format!("case {case}: pinning {a:?}"));
        }
    }
    c.note(format!("{sat}/{} sat; strong semantics over every variable pinning", formulas.len()));
    if size_mismatch > 0 {
        c.failures.push(format!(
            "size n + 10m fails on {size_mismatch}/{} formulas (every one with m > 0): the construction has n + 13m vertices",
            formulas.len()
        ));
    }
    c
}

fn certified(c: &mut Checks, link: &Link, what: &str) {
    c.check(is_free(link.instance().graph(), &nested_pair()), || format!("{what}: nested pair"));
}

fn pair_systems(n: usize, max: usize) -> Vec<PairSystem> {
    let mut out = Vec::new();
    for size in 0..=max {
        for firsts in (0..n.saturating_sub(1)).combinations(size) {
            if let Ok(p) = PairSystem::new(n, firsts) {
                out.push(p);
            }
        }
    }
    out
}

fn c9_gadgets() -> Checks {
    let mut c = Checks::default();
    let mut counts = [0usize; 5];
    for len in 2..=4 {
        for (j, k) in (0..len).tuple_combinations() {
            let r = rotation_gadget(len, j, k).unwrap();
            certified(&mut c, &r, "rotation");
            c.check(r.n() == 5 * len + 2, || format!("rotation ({len};{j},{k}) has {} vertices", r.n()));
            let sigma = Rotation { len, j, k }.as_permutation();
            let rep = verify_link_semantics(&r, permutation_semantics(&sigma));
            c.check(rep.passed(), || format!("rotation ({len};{j},{k}): {:?}", rep.mismatches[0]));
            counts[0] += 1;
        }
    }
    for len in 1..=4 {
        for sigma in (0..len).permutations(len) {
            let p = permutation_gadget(&sigma).unwrap();
            certified(&mut c, &p, "permutation");
            let rep = verify_link_semantics(&p, permutation_semantics(&sigma));
            c.check(rep.passed(), || format!("permutation {sigma:?}: {:?}", rep.mismatches[0]));
            counts[1] += 1;
        }
    }
    let a = permutation_gadget(&[1, 2, 0]).unwrap();
    let b = permutation_gadget(&[0, 2, 1]).unwrap();
    let composed: Vec<usize> = [1, 2, 0].iter().map(|&i| [0, 2, 1][i]).collect();
    let rep = verify_link_semantics(&chain(&a, &b).unwrap(), permutation_semantics(&composed));
    c.check(rep.passed(), || "chained permutations do not compose".into());
    for n in 1..=4 {
        for pairs in pair_systems(n, 2) {
            for color in [1, 2] {
                let ind = indicator_gadget(color, &pairs).unwrap();
                certified(&mut c, &ind, "indicator");
                let expect_n = n + (n + 2 * pairs.len()) + 3 * (n + pairs.len());
                c.check(ind.n() == expect_n, || format!("indicator size {}", ind.n()));
                let rep = verify_link_semantics(&ind, indicator_semantics(color, &pairs));
                c.check(rep.passed(), || format!("indicator c={color} {pairs:?}: {:?}", rep.mismatches[0]));
                let nb = not_both_gadget(color, &pairs).unwrap();
                certified(&mut c, &nb, "not-both");
                c.check(nb.outputs() == n - pairs.len(), || "not-both arity".into());
                let rep = verify_link_semantics(&nb, not_both_semantics(color, &pairs));
                c.check(rep.passed(), || format!("not-both c={color} {pairs:?}: {:?}", rep.mismatches[0]));
                counts[2] += 2;
            }
        }
    }
    for n in 1..=5 {
        let mut systems = vec![TripleSystem::new(n, vec![]).unwrap()];
        systems.extend((0..n).combinations(3).map(|t| TripleSystem::new(n, vec![[t[0], t[1], t[2]]]).unwrap()));
        for triples in systems {
            for color in [1, 2] {
                let g = not_all_gadget(color, &triples).unwrap();
                certified(&mut c, &g, "not-all");
                let rep = verify_link_semantics(&g, triple_semantics(&[color], &triples));
                c.check(rep.passed(), || format!("not-all c={color} {triples:?}: {:?}", rep.mismatches[0]));
                counts[3] += 1;
            }
            let g = nae_gadget(&triples).unwrap();
            certified(&mut c, &g, "nae");
            c.check(g.inputs() == n && g.outputs() == n, || "nae arity".into());
            let rep = verify_link_semantics(&g, triple_semantics(&[1, 2], &triples));
            c.check(rep.passed(), || format!("nae {triples:?}: {:?}", rep.mismatches[0]));
            counts[4] += 1;
        }
    }
    c.note(format!(
        "{} rotations, {} permutations, {} indicator/not-both, {} not-all, {} NAE gadgets",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ));
    c
}

fn pinned_feasibility(inst: &Instance, inputs: &[usize], a: &[bool]) -> bool {
    let pins: Vec<(usize, u32)> = a.iter().enumerate().map(|(i, &b)| (inputs[i], if b { 1 } else { 2 })).collect();
    solve_pinned(inst, &pins).is_some()
}

fn c10_nae_end_to_end() -> Checks {
    let mut c = Checks::default();
    let single = NaeFormula::new(3, vec![[1, 2, 3]]).unwrap();
    let (inst, layout) = reduce_nae3sat(&single).unwrap();
    for a in assignments(3) {
        let mono = a.iter().all(|&b| b) || a.iter().all(|&b| !b);
        c.check(pinned_feasibility(&inst, &layout.inputs, &a) != mono, || format!("single clause {a:?}"));
    }
    let fano = NaeFormula::fano();
    c.check(nae_brute(&fano).is_none(), || "Fano formula has a NAE assignment".into());
    let (inst, layout) = reduce_nae3sat(&fano).unwrap();
    let fano_n = inst.n();
    c.check(is_free(inst.graph(), &nested_pair()), || "Fano instance contains a nested pair".into());
    let feasible = assignments(7).filter(|a| pinned_feasibility(&inst, &layout.inputs, a)).count();
    c.check(feasible == 0, || format!("{feasible} Fano pinnings feasible"));
    c.check(solve_exact(&inst).is_none(), || "Fano instance colorable".into());

    let mut rng = StdRng::seed_from_u64(110);
    let mut sat = 0;
    for case in 0..40 {
        let f = if case % 4 == 0 {
            // the Fano formula under a random renaming of its variables
            let mut names: Vec<usize> = (1..=7).collect();
            names.shuffle(&mut rng);
            let clauses = fano.clauses().iter().map(|c| c.map(|v| names[v - 1])).collect();
            NaeFormula::new(7, clauses).unwrap()
        } else {
            let vars = rng.gen_range(3..=7);
            let clauses = rng.gen_range(0..=9);
            random::nae(&mut rng, vars, clauses, 4)
        };
        let vars = f.num_vars();
        let (inst, layout) = reduce_nae3sat(&f).unwrap();
        c.check(is_free(inst.graph(), &nested_pair()), || format!("case {case}: nested pair"));
        for a in assignments(vars) {
            c.check(pinned_feasibility(&inst, &layout.inputs, &a) == f.is_satisfied(&a), || format!("case {case}: {a:?}"));
        }
        if solve_exact(&inst).is_some() {
            sat += 1;
        }
        c.check((solve_exact(&inst).is_some()) == nae_brute(&f).is_some(), || format!("case {case}: verdict"));
    }
    c.note(format!("single clause 8 pinnings; Fano ({fano_n} vertices) 128 pinnings infeasible; 40 random formulas ({sat} sat)"));
    c
}

type Criterion = (u32, &'static str, fn() -> Checks);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "pattern detection vs brute force", c1_patterns),
        (2, "kernel equisatisfiability", c2_kernel),
        (3, "two-color lists vs oracle", c3_two_lists),
        (4, "fork-free solver vs oracle", c4_chordal),
        (5, "complete graphs by matching", c5_cliques),
        (6, "single-edge-free solver and DP probe", c6_single_edge),
        (7, "padded-fork-free 4-coloring", c7_padded_fork),
        (8, "3-SAT to fork-tail-free reduction", c8_cnf_reduction),
        (9, "link gadget semantics", c9_gadgets),
        (10, "NAE-3-SAT end to end", c10_nae_end_to_end),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let (passed, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(checks) => checks.summary(),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        let known = KNOWN_FAILURES.contains(&id);
        println!(
            "{} criterion {id}: {name} ({:.1?}) {detail}{}",
            if passed { "PASS" } else { "FAIL" },
            t.elapsed(),
            if known && !passed { " [known failure, see README]" } else { "" }
        );
        if passed == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcomes: {unexpected:?}");
        std::process::exit(1);
    }
}
