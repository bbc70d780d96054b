//! Compiles positive NAE-3-SAT into list 4-coloring on nested-pair-free
//! ordered graphs by chaining links.
//!
//! Wire color 1 means true. An indicator link adds, for chosen adjacent wire
//! pairs, a bit that is forced to `c` when both wires are `c`. A not-both
//! link forbids chosen adjacent pairs from both being `c` and drops the
//! first wire of each pair. Sandwiching them between permutation links gives
//! a link forbidding chosen triples from all being `c`; doing this for both
//! colors forbids monochromatic triples.
//!
//! All indices are 0-based. A pair `{i, i+1}` is given by its first element.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::NaeFormula;
use crate::graph::{ensure_proper, ColorSet, Coloring, Instance, OrderedGraph};
use crate::links::{chain_all, inverse, permutation_gadget, Link, Outputs};

/// Disjoint pairs `{i, i+1}` of `0..n`, stored by first element in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSystem {
    n: usize,
    firsts: Vec<usize>,
}

impl PairSystem {
    pub fn new(n: usize, mut firsts: Vec<usize>) -> Result<Self> {
        firsts.sort_unstable();
        if let Some(&i) = firsts.iter().find(|&&i| i + 1 >= n) {
            return Err(Error::precondition(format!("pair {{{i}, {}}} is out of range for {n} wires", i + 1)));
        }
        if firsts.windows(2).any(|w| w[1] < w[0] + 2) {
            return Err(Error::precondition("pairs must be disjoint"));
        }
        Ok(PairSystem { n, firsts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn firsts(&self) -> &[usize] {
        &self.firsts
    }

    pub fn len(&self) -> usize {
        self.firsts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.firsts.is_empty()
    }

    fn pair_at(&self, i: usize) -> Option<usize> {
        self.firsts.binary_search(&i).ok()
    }
}

/// Disjoint 3-sets of `0..n`, each sorted, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TripleSystem {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let mut used = vec![false; n];
        let mut sorted = Vec::with_capacity(triples.len());
        for mut t in triples {
            t.sort_unstable();
            for &v in &t {
                if v >= n {
                    return Err(Error::precondition(format!("index {v} is out of range for {n} wires")));
                }
                if std::mem::replace(&mut used[v], true) {
                    return Err(Error::precondition(format!("index {v} is in two triples")));
                }
            }
            sorted.push(t);
        }
        sorted.sort_unstable();
        Ok(TripleSystem { n, triples: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
}

fn ensure_color(c: u32) -> Result<()> {
    if c == 1 || c == 2 {
        Ok(())
    } else {
        Err(Error::precondition(format!("gadget color must be 1 or 2, got {c}")))
    }
}

/// Output positions of an indicator: wire `i` goes to `wire[i]`, the bit of
/// pair `t` to `bit[t]`, which sits right after the first wire of the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub wire: Vec<usize>,
    pub bit: Vec<usize>,
}

pub fn gamma_map(pairs: &PairSystem) -> Gamma {
    let mut wire = Vec::with_capacity(pairs.n());
    let mut bit = Vec::with_capacity(pairs.len());
    let mut pos = 0;
    for i in 0..pairs.n() {
        wire.push(pos);
        pos += 1;
        if pairs.pair_at(i).is_some() {
            bit.push(pos);
            pos += 1;
        }
    }
    Gamma { wire, bit }
}

/// Inputs of a not-both link that reach an output, in order; output `i`
/// copies input `delta[i]`. These are all positions except pair firsts.
pub fn delta_map(pairs: &PairSystem) -> Vec<usize> {
    (0..pairs.n()).filter(|&i| pairs.pair_at(i).is_none()).collect()
}

// Vertices of the five-layer construction, in order. Wire `i` of layer p is
// v(p, i); pair `t` (first element i) adds u, w on layer 2 and z on layers 3..5.
struct Layers {
    lists: Vec<ColorSet>,
    edges: Vec<(usize, usize)>,
}

impl Layers {
    fn add(&mut self, list: &[u32]) -> usize {
        self.lists.push(list.iter().copied().collect());
        self.lists.len() - 1
    }
}

// `full` builds the indicator; otherwise the not-both link.
#[allow(clippy::needless_range_loop)]
fn five_layers(pairs: &PairSystem, full: bool) -> Result<Link> {
    let n = pairs.n();
    let mut b = Layers { lists: Vec::new(), edges: Vec::new() };
    let dropped = |i: usize| !full && pairs.pair_at(i).is_some();
    let v1: Vec<usize> = (0..n).map(|_| b.add(&[1, 2])).collect();
    let mut v2 = vec![None; n];
    let mut uw = Vec::new();
    for i in 0..n {
        if !dropped(i) {
            v2[i] = Some(b.add(&[1, 2]));
        }
        if pairs.pair_at(i).is_some() {
            uw.push((b.add(&[1, 3]), b.add(&[1, 4])));
        }
    }
    let mut prev = v2.clone();
    let mut z_prev: Vec<usize> = Vec::new();
    for layer in 3..=5 {
        let mut cur = vec![None; n];
        let mut z_cur = Vec::new();
        for i in 0..n {
            if !dropped(i) {
                cur[i] = Some(b.add(&[1, 2]));
            }
            if let Some(t) = pairs.pair_at(i) {
                match (layer, full) {
                    (3, true) => z_cur.push(b.add(&[1, 3, 4])),
                    (3, false) => z_cur.push(b.add(&[3, 4])),
                    (_, true) => z_cur.push(b.add(&[1, 2])),
                    (_, false) => {}
                }
                if layer == 3 {
                    let (u, w) = uw[t];
                    b.edges.extend([(u, z_cur[t]), (w, z_cur[t])]);
                } else if full {
                    b.edges.push((z_prev[t], z_cur[t]));
                }
            }
        }
        for i in 0..n {
            if let (Some(p), Some(c)) = (prev[i], cur[i]) {
                b.edges.push((p, c));
            }
        }
        prev = cur;
        z_prev = z_cur;
    }
    for i in 0..n {
        if let Some(x) = v2[i] {
            b.edges.push((v1[i], x));
        }
        if let Some(t) = pairs.pair_at(i) {
            b.edges.push((v1[i], uw[t].0));
            b.edges.push((v1[i + 1], uw[t].1));
        }
    }
    let total = b.lists.len();
    let outputs = if full { n + pairs.len() } else { n - pairs.len() };
    let inst = Instance::new(OrderedGraph::new(total, b.edges)?, b.lists)?;
    Link::certified(inst, n, outputs)
}

fn colored(link: Link, c: u32) -> Result<Link> {
    ensure_color(c)?;
    Ok(if c == 1 { link } else { link.swap_colors() })
}

/// Copies wire `i` to output `gamma.wire[i]`; the bit of each pair is forced
/// to `c` when both its wires are `c` and may differ from `c` otherwise.
pub fn indicator_gadget(c: u32, pairs: &PairSystem) -> Result<Link> {
    ensure_color(c)?;
    colored(five_layers(pairs, true)?, c)
}

/// Forbids each pair from being colored `c` on both wires; output `i`
/// copies input `delta[i]`.
pub fn not_both_gadget(c: u32, pairs: &PairSystem) -> Result<Link> {
    ensure_color(c)?;
    colored(five_layers(pairs, false)?, c)
}

/// The permutations around the indicator and not-both links that forbid
/// each triple from being all `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleMaps {
    /// Makes the first two members of triple `t` the wires `2t, 2t+1`.
    pub sigma1: Vec<usize>,
    pub indicator_pairs: PairSystem,
    pub gamma: Gamma,
    /// Puts the bit of triple `t` at `2t` and its third member at `2t+1`.
    pub sigma2: Vec<usize>,
    pub not_both_pairs: PairSystem,
    pub delta: Vec<usize>,
    /// Restores the original wire order.
    pub sigma3: Vec<usize>,
}

fn pack(len: usize, front: &[usize]) -> Vec<usize> {
    let mut sigma = vec![usize::MAX; len];
    for (pos, &i) in front.iter().enumerate() {
        sigma[i] = pos;
    }
    for (next, s) in (front.len()..).zip(sigma.iter_mut().filter(|s| **s == usize::MAX)) {
        *s = next;
    }
    sigma
}

pub fn triple_maps(triples: &TripleSystem) -> Result<TripleMaps> {
    let n = triples.n();
    let m = triples.triples().len();
    let front: Vec<usize> = triples.triples().iter().flat_map(|t| [t[0], t[1]]).collect();
    let sigma1 = pack(n, &front);
    let indicator_pairs = PairSystem::new(n, (0..m).map(|t| 2 * t).collect())?;
    let gamma = gamma_map(&indicator_pairs);
    let big_n = n + m;
    let front2: Vec<usize> = triples
        .triples()
        .iter()
        .enumerate()
        .flat_map(|(t, tr)| [gamma.bit[t], gamma.wire[sigma1[tr[2]]]])
        .collect();
    let sigma2 = pack(big_n, &front2);
    let not_both_pairs = PairSystem::new(big_n, (0..m).map(|t| 2 * t).collect())?;
    let delta = delta_map(&not_both_pairs);
    let delta_inv = inverse_partial(&delta, big_n);
    let through: Vec<usize> = (0..n)
        .map(|i| {
            delta_inv[sigma2[gamma.wire[sigma1[i]]]]
                .ok_or_else(|| Error::invariant(format!("wire {i} is dropped by the not-both link")))
        })
        .collect::<Result<_>>()?;
    let sigma3 = inverse(&through);
    Ok(TripleMaps { sigma1, indicator_pairs, gamma, sigma2, not_both_pairs, delta, sigma3 })
}

fn inverse_partial(f: &[usize], range: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; range];
    for (i, &x) in f.iter().enumerate() {
        inv[x] = Some(i);
    }
    inv
}

/// Copies every wire and forbids each triple from being all `c`.
pub fn not_all_gadget(c: u32, triples: &TripleSystem) -> Result<Link> {
    ensure_color(c)?;
    let maps = triple_maps(triples)?;
    let links = [
        permutation_gadget(&maps.sigma1)?,
        five_layers(&maps.indicator_pairs, true)?,
        permutation_gadget(&maps.sigma2)?,
        five_layers(&maps.not_both_pairs, false)?,
        permutation_gadget(&maps.sigma3)?,
    ];
    colored(chain_all(&links)?, c)
}

/// Copies every wire and forbids each triple from being monochromatic.
pub fn nae_gadget(triples: &TripleSystem) -> Result<Link> {
    chain_all(&[not_all_gadget(1, triples)?, not_all_gadget(2, triples)?])
}

pub fn indicator_semantics(c: u32, pairs: &PairSystem) -> impl Fn(&[u32]) -> Outputs + Sync + '_ {
    move |input| {
        let g = gamma_map(pairs);
        let mut outs = vec![Vec::with_capacity(pairs.n() + pairs.len())];
        let mut slots: Vec<(usize, Vec<u32>)> = g.wire.iter().zip(input).map(|(&p, &x)| (p, vec![x])).collect();
        for (t, &i) in pairs.firsts().iter().enumerate() {
            let forced = input[i] == c && input[i + 1] == c;
            slots.push((g.bit[t], if forced { vec![c] } else { vec![1, 2] }));
        }
        slots.sort_unstable();
        for (_, choices) in slots {
            outs = outs
                .into_iter()
                .flat_map(|o| {
                    choices.iter().map(move |&x| {
                        let mut o = o.clone();
                        o.push(x);
                        o
                    })
                })
                .collect();
        }
        Some(outs.into_iter().collect())
    }
}

pub fn not_both_semantics(c: u32, pairs: &PairSystem) -> impl Fn(&[u32]) -> Outputs + Sync + '_ {
    move |input| {
        if pairs.firsts().iter().any(|&i| input[i] == c && input[i + 1] == c) {
            return None;
        }
        Some(BTreeSet::from([delta_map(pairs).iter().map(|&i| input[i]).collect()]))
    }
}

/// Feasible unless some triple is all in `forbidden`; outputs copy inputs.
pub fn triple_semantics<'a>(forbidden: &'a [u32], triples: &'a TripleSystem) -> impl Fn(&[u32]) -> Outputs + Sync + 'a {
    move |input| {
        let bad = triples
            .triples()
            .iter()
            .any(|t| forbidden.iter().any(|&c| t.iter().all(|&i| input[i] == c)));
        (!bad).then(|| BTreeSet::from([input.to_vec()]))
    }
}

/// Where the formula's parts sit in the compiled instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaeLayout {
    pub num_vars: usize,
    pub formula: Vec<[usize; 3]>,
    /// `inputs[i]` is the vertex of variable `i + 1`.
    pub inputs: Vec<usize>,
    /// Clause indices handled by each chained gadget, in chain order.
    pub classes: Vec<Vec<usize>>,
}

impl NaeLayout {
    pub fn formula(&self) -> Result<NaeFormula> {
        NaeFormula::new(self.num_vars, self.formula.clone())
    }
}

pub const MAX_OCCURRENCES: usize = 4;

/// Greedy partition of the clauses into classes of variable-disjoint
/// clauses; each clause takes the smallest class it fits in.
pub fn partition_clauses(f: &NaeFormula) -> Vec<Vec<usize>> {
    let mut classes: Vec<(Vec<usize>, BTreeSet<usize>)> = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        match classes.iter_mut().find(|(_, vars)| c.iter().all(|v| !vars.contains(v))) {
            Some((members, vars)) => {
                members.push(j);
                vars.extend(c);
            }
            None => classes.push((vec![j], c.iter().copied().collect())),
        }
    }
    classes.into_iter().map(|(m, _)| m).collect()
}

pub fn reduce_nae3sat(f: &NaeFormula) -> Result<(Instance, NaeLayout)> {
    let n = f.num_vars();
    if let Some((v, &o)) = f.occurrences().iter().enumerate().find(|(_, &o)| o > MAX_OCCURRENCES) {
        return Err(Error::precondition(format!(
            "variable {} occurs {o} times; preprocess the formula so every variable occurs at most {MAX_OCCURRENCES} times",
            v + 1
        )));
    }
    let classes = partition_clauses(f);
    let bound = 3 * (MAX_OCCURRENCES - 1) + 1;
    if classes.len() > bound {
        return Err(Error::invariant(format!("{} clause classes exceed {bound}", classes.len())));
    }
    let layout = NaeLayout { num_vars: n, formula: f.clauses().to_vec(), inputs: (0..n).collect(), classes };
    if layout.classes.is_empty() {
        let inst = Instance::new(OrderedGraph::edgeless(n), vec![ColorSet::from([1, 2]); n])?;
        return Ok((inst, layout));
    }
    let gadgets = layout
        .classes
        .iter()
        .map(|class| {
            let triples = class.iter().map(|&j| f.clauses()[j].map(|v| v - 1)).collect();
            nae_gadget(&TripleSystem::new(n, triples)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let link = chain_all(&gadgets)?;
    Ok((link.into_instance(), layout))
}

/// A variable is true iff its input vertex has color 1.
pub fn decode_nae(layout: &NaeLayout, col: &Coloring) -> Result<Vec<bool>> {
    let (inst, _) = reduce_nae3sat(&layout.formula()?)?;
    ensure_proper(&inst, col)?;
    Ok(layout.inputs.iter().map(|&v| col.color(v) == 1).collect())
}
