//! Polynomial solvers used directly and as subroutines: lists of size at
//! most two (2-SAT), fork-free ordered graphs (elimination-tree DP) and
//! complete graphs with arbitrary lists (bipartite matching).

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Instance};
use crate::patterns::{ensure_free, fork};

/// Solves an instance whose lists have at most two colors.
///
/// Each vertex gets one boolean, true meaning the smaller color of its list.
pub fn solve_two_lists(inst: &Instance) -> Result<Option<Coloring>> {
    if let Some(v) = (0..inst.n()).find(|&v| inst.list(v).len() > 2) {
        return Err(Error::precondition(format!(
            "vertex {v} has {} colors; at most two are allowed",
            inst.list(v).len()
        )));
    }
    if (0..inst.n()).any(|v| inst.list(v).is_empty()) {
        return Ok(None);
    }
    let n = inst.n();
    // literal 2v: v takes its smaller color; 2v+1: v takes the larger one
    let mut sat = TwoSat::new(n);
    for v in 0..n {
        if inst.list(v).len() == 1 {
            sat.add_clause(2 * v, 2 * v);
        }
    }
    let takes = |v: usize, c: u32| -> usize {
        let l = inst.list(v).as_slice();
        if l[0] == c {
            2 * v
        } else {
            2 * v + 1
        }
    };
    for (u, v) in inst.graph().edges() {
        for c in inst.list(u).intersection(inst.list(v)).iter() {
            sat.add_clause(takes(u, c) ^ 1, takes(v, c) ^ 1);
        }
    }
    Ok(sat.solve().map(|vals| {
        Coloring(
            (0..n)
                .map(|v| {
                    let l = inst.list(v).as_slice();
                    if vals[v] {
                        l[0]
                    } else {
                        l[l.len() - 1]
                    }
                })
                .collect(),
        )
    }))
}

/// 2-SAT over `n` variables; literal `2x` is x true, `2x + 1` is x false.
struct TwoSat {
    implications: Vec<Vec<usize>>,
}

impl TwoSat {
    fn new(n: usize) -> Self {
        TwoSat { implications: vec![Vec::new(); 2 * n] }
    }

    fn add_clause(&mut self, a: usize, b: usize) {
        self.implications[a ^ 1].push(b);
        self.implications[b ^ 1].push(a);
    }

    fn solve(&self) -> Option<Vec<bool>> {
        let comp = tarjan(&self.implications);
        // tarjan numbers components in reverse topological order
        (0..self.implications.len() / 2)
            .map(|x| {
                let (t, f) = (comp[2 * x], comp[2 * x + 1]);
                (t != f).then_some(t < f)
            })
            .collect()
    }
}

/// Strongly connected components, iteratively; returns a component id per node.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component members are on the stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Solves an instance on a fork-free ordered graph.
///
/// Fork-freeness makes every forward neighborhood a clique, so the vertex
/// order is a perfect elimination order. The bag of `v` is `{v} ∪ N⁺(v)` and
/// its parent is the earliest forward neighbor. For each `v`, in increasing
/// order, the table maps each proper coloring of `N⁺(v)` to a color of `v`
/// that extends to everything eliminated below `v`.
pub fn solve_fork_free(inst: &Instance) -> Result<Option<Coloring>> {
    ensure_free(inst.graph(), &fork())?;
    let g = inst.graph();
    let n = g.n();
    for v in 0..n {
        if !g.is_clique(g.forward_neighbors(v)) {
            return Err(Error::invariant(format!("forward neighborhood of {v} is not a clique")));
        }
    }
    if (0..n).any(|v| inst.list(v).is_empty()) {
        return Ok(None);
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(&p) = g.forward_neighbors(v).first() {
            children[p].push(v);
        }
    }
    let mut tables: Vec<HashMap<Vec<u32>, u32>> = vec![HashMap::new(); n];
    for v in 0..n {
        let bag = g.forward_neighbors(v);
        let mut table = HashMap::new();
        let mut assignment = Vec::with_capacity(bag.len());
        for_each_injective(inst, bag, &mut assignment, &mut |colors| {
            let choice = inst.list(v).iter().find(|&c| {
                !colors.contains(&c)
                    && children[v].iter().all(|&w| {
                        let key = child_key(g.forward_neighbors(w), v, c, bag, colors);
                        tables[w].contains_key(&key)
                    })
            });
            if let Some(c) = choice {
                table.insert(colors.to_vec(), c);
            }
        });
        tables[v] = table;
    }
    let mut colors = vec![0u32; n];
    for v in (0..n).rev() {
        let key: Vec<u32> = g.forward_neighbors(v).iter().map(|&u| colors[u]).collect();
        match tables[v].get(&key) {
            Some(&c) => colors[v] = c,
            None if g.forward_neighbors(v).is_empty() => return Ok(None),
            None => return Err(Error::invariant(format!("missing table entry while rebuilding vertex {v}"))),
        }
    }
    Ok(Some(Coloring(colors)))
}

// Colors of the child's forward neighborhood, which lies inside {v} ∪ N⁺(v).
fn child_key(child_bag: &[usize], v: usize, c: u32, bag: &[usize], colors: &[u32]) -> Vec<u32> {
    child_bag
        .iter()
        .map(|&u| {
            if u == v {
                c
            } else {
                colors[bag.binary_search(&u).expect("child bag lies in the parent bag")]
            }
        })
        .collect()
}

// Calls `f` with each assignment of distinct list colors to `vs`.
fn for_each_injective(inst: &Instance, vs: &[usize], acc: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    let Some(&v) = vs.get(acc.len()) else {
        f(acc);
        return;
    };
    for c in inst.list(v).iter() {
        if !acc.contains(&c) {
            acc.push(c);
            for_each_injective(inst, vs, acc, f);
            acc.pop();
        }
    }
}

/// Solves an instance on a complete graph with lists of any size by
/// finding a matching from vertices to colors that covers every vertex.
pub fn solve_clique_unbounded(inst: &Instance) -> Result<Option<Coloring>> {
    if !inst.graph().is_complete() {
        return Err(Error::precondition("graph is not complete"));
    }
    let n = inst.n();
    let mut owner: HashMap<u32, usize> = HashMap::new();
    for v in 0..n {
        let mut seen = HashSet::new();
        if !augment(inst, v, &mut owner, &mut seen) {
            return Ok(None);
        }
    }
    let mut colors = vec![0u32; n];
    for (c, v) in owner {
        colors[v] = c;
    }
    Ok(Some(Coloring(colors)))
}

fn augment(inst: &Instance, v: usize, owner: &mut HashMap<u32, usize>, seen: &mut HashSet<u32>) -> bool {
    for c in inst.list(v).iter() {
        if !seen.insert(c) {
            continue;
        }
        let free = match owner.get(&c) {
            None => true,
            Some(&u) => augment(inst, u, owner, seen),
        };
        if free {
            owner.insert(c, v);
            return true;
        }
    }
    false
}
