//! Brute-force ground truth: (0,n)-p-paths, p-cycles, p-bowties, constrained
//! path classes, and the exact min-cost oracle.
//!
//! Everything here is plain DFS with remaining-length pruning. Correctness
//! over speed; the whole crate runs at desk scale (n ≤ 10 or so).

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::ModelError;
use crate::graph::{CycleDigraph, Digraph, IncidenceVector, Node, VectorKind};
use crate::rational::Rational;

/// All simple directed (0,n)-paths of length exactly p, in DFS order
/// (ascending next-node at every level), together with their node tuples.
#[derive(Clone, Debug)]
pub struct PathSet {
    pub p: usize,
    pub nodes: Vec<Vec<Node>>,
    pub vectors: Vec<IncidenceVector>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn enumerate_paths(d: &Digraph, p: usize) -> Result<PathSet, ModelError> {
    if p < 1 || p > d.n() {
        return Err(ModelError::BadParameters(format!(
            "path length p = {p} out of range 1..={}",
            d.n()
        )));
    }
    let mut nodes = Vec::new();
    let mut stack = vec![0usize];
    let mut used = vec![false; d.node_count()];
    used[0] = true;
    dfs_paths(d, p, &mut stack, &mut used, &mut nodes);
    let vectors = nodes
        .iter()
        .map(|seq| IncidenceVector::path_from_nodes(d, seq).expect("enumerated path is simple"))
        .collect();
    Ok(PathSet { p, nodes, vectors })
}

fn dfs_paths(
    d: &Digraph,
    p: usize,
    stack: &mut Vec<Node>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<Node>>,
) {
    let cur = *stack.last().unwrap();
    let remaining = p - (stack.len() - 1);
    if remaining == 0 {
        if cur == d.n() {
            out.push(stack.clone());
        }
        return;
    }
    // Not enough unused internal nodes left to bridge to the terminus.
    if remaining >= 2 {
        let free_internal = d.internal_nodes().filter(|&v| !used[v]).count();
        if free_internal + 1 < remaining {
            return;
        }
    }
    for next in 0..=d.n() {
        if used[next] || !d.has_arc(cur, next) {
            continue;
        }
        if next == d.n() && remaining > 1 {
            continue; // terminus only as the last node
        }
        if next != d.n() && remaining == 1 {
            continue;
        }
        used[next] = true;
        stack.push(next);
        dfs_paths(d, p, stack, used, out);
        stack.pop();
        used[next] = false;
    }
}

/// All simple directed p-cycles of the complete digraph, one representative
/// per cycle (canonical rotation: smallest node first).
pub fn enumerate_cycles(cd: &CycleDigraph, p: usize) -> Vec<IncidenceVector> {
    let mut out = Vec::new();
    if p < 2 || p > cd.node_count() {
        return out;
    }
    let m = cd.max_node();
    let mut used = vec![false; m + 1];
    for start in 1..=m {
        let mut stack = vec![start];
        used[start] = true;
        dfs_cycles(cd, p, start, &mut stack, &mut used, &mut out);
        used[start] = false;
    }
    out
}

fn dfs_cycles(
    cd: &CycleDigraph,
    p: usize,
    start: Node,
    stack: &mut Vec<Node>,
    used: &mut Vec<bool>,
    out: &mut Vec<IncidenceVector>,
) {
    let cur = *stack.last().unwrap();
    if stack.len() == p {
        if cd.arc_index(cur, start).is_some() {
            let mut support: Vec<usize> = stack
                .windows(2)
                .map(|w| cd.arc_index(w[0], w[1]).unwrap())
                .collect();
            support.push(cd.arc_index(cur, start).unwrap());
            out.push(IncidenceVector::from_support(
                cd.arc_count(),
                support,
                VectorKind::Cycle,
            ));
        }
        return;
    }
    // Only nodes above the start can continue the cycle: this makes the
    // smallest node the unique representative of each rotation class.
    for next in (start + 1)..=cd.max_node() {
        if used[next] {
            continue;
        }
        used[next] = true;
        stack.push(next);
        dfs_cycles(cd, p, start, stack, used, out);
        stack.pop();
        used[next] = false;
    }
}

/// Arc sets of cardinality p that are a (0,n)-path plus a simple cycle
/// sharing exactly the tie node k.
#[derive(Clone, Debug)]
pub struct BowtieSet {
    pub tie: Node,
    pub items: Vec<IncidenceVector>,
}

pub fn enumerate_bowties(d: &Digraph, p: usize, k: Node) -> Result<BowtieSet, ModelError> {
    if !d.is_internal(k) {
        return Err(ModelError::BadParameters(format!(
            "tie node {k} must be internal"
        )));
    }
    if p < 3 {
        return Err(ModelError::BadParameters(format!(
            "a p-bowtie needs p >= 3, got {p}"
        )));
    }
    let mut items = Vec::new();
    // Split p into path length l and cycle length c = p - l. The path must
    // visit k, so l >= 2; the cycle is simple, so c >= 2 (2-cycles are
    // admitted: D contains both (i,j) and (j,i)).
    for path_len in 2..=p.saturating_sub(2) {
        let cycle_len = p - path_len;
        let paths = paths_through(d, path_len, k);
        for path_nodes in paths {
            let path_set: BTreeSet<Node> = path_nodes.iter().copied().collect();
            let mut cycles = Vec::new();
            cycles_at_anchor(d, k, cycle_len, &path_set, &mut cycles);
            for cyc in cycles {
                let mut support: Vec<usize> = path_nodes
                    .windows(2)
                    .map(|w| d.arc_index(w[0], w[1]).unwrap())
                    .collect();
                support.extend(cyc.iter());
                items.push(IncidenceVector::from_support(
                    d.arc_count(),
                    support,
                    VectorKind::Bowtie,
                ));
            }
        }
    }
    Ok(BowtieSet { tie: k, items })
}

fn paths_through(d: &Digraph, p: usize, k: Node) -> Vec<Vec<Node>> {
    match enumerate_paths(d, p) {
        Ok(ps) => ps
            .nodes
            .into_iter()
            .filter(|seq| seq.contains(&k))
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Simple directed cycles of length `len` through `anchor`, avoiding
/// `forbidden` nodes (the anchor itself excepted). Each is reported once
/// with the anchor first.
fn cycles_at_anchor(
    d: &Digraph,
    anchor: Node,
    len: usize,
    forbidden: &BTreeSet<Node>,
    out: &mut Vec<Vec<usize>>,
) {
    if len < 2 {
        return;
    }
    let mut stack = vec![anchor];
    let mut used = vec![false; d.node_count()];
    used[anchor] = true;
    dfs_anchor_cycles(d, anchor, len, forbidden, &mut stack, &mut used, out);
}

#[allow(clippy::too_many_arguments)]
fn dfs_anchor_cycles(
    d: &Digraph,
    anchor: Node,
    len: usize,
    forbidden: &BTreeSet<Node>,
    stack: &mut Vec<Node>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let cur = *stack.last().unwrap();
    if stack.len() == len {
        if d.has_arc(cur, anchor) {
            let mut arcs: Vec<usize> = stack
                .windows(2)
                .map(|w| d.arc_index(w[0], w[1]).unwrap())
                .collect();
            arcs.push(d.arc_index(cur, anchor).unwrap());
            out.push(arcs);
        }
        return;
    }
    for next in 0..=d.n() {
        if used[next] || next == anchor || forbidden.contains(&next) {
            continue;
        }
        if !d.has_arc(cur, next) {
            continue;
        }
        used[next] = true;
        stack.push(next);
        dfs_anchor_cycles(d, anchor, len, forbidden, stack, used, out);
        stack.pop();
        used[next] = false;
    }
}

/// Structural predicate for a p-bowtie tied at k, used by the subset-filter
/// oracle in tests: the arc set decomposes into a (0,n)-path and a simple
/// cycle whose node sets intersect exactly in {k}.
pub fn is_bowtie_tied_at(d: &Digraph, support: &[usize], k: Node) -> bool {
    if !d.is_internal(k) {
        return false;
    }
    let arcs: Vec<(Node, Node)> = support.iter().map(|&i| d.arc(i)).collect();
    // Out- and in-degree profile: one outgoing arc at 0, one incoming at n,
    // degree 2 at the tie node, degree <= 1 elsewhere.
    let mut outd = vec![0usize; d.node_count()];
    let mut ind = vec![0usize; d.node_count()];
    for &(t, h) in &arcs {
        outd[t] += 1;
        ind[h] += 1;
    }
    if outd[0] != 1 || ind[0] != 0 || ind[d.n()] != 1 || outd[d.n()] != 0 {
        return false;
    }
    // Internal nodes sit on the path xor the cycle (in = out = 1), are
    // unused (0), or are the tie node on both (2).
    for v in d.internal_nodes() {
        let expect = if v == k { 2 } else { 1 };
        if outd[v] != ind[v] || outd[v] > expect {
            return false;
        }
    }
    if outd[k] != 2 {
        return false;
    }
    // Walk the path from 0 to n; at the tie node try both outgoing arcs.
    let out_at = |v: Node| -> Vec<usize> {
        (0..arcs.len()).filter(|&i| arcs[i].0 == v).collect()
    };
    let try_walk = |choice_at_k: usize| -> Option<Vec<usize>> {
        let mut visited = vec![false; d.node_count()];
        let mut path_arcs = Vec::new();
        let mut cur = 0;
        visited[0] = true;
        loop {
            if cur == d.n() {
                return Some(path_arcs);
            }
            let outs = out_at(cur);
            let pick = if cur == k {
                *outs.get(choice_at_k)?
            } else {
                *outs.first()?
            };
            let (_, h) = arcs[pick];
            if visited[h] {
                return None;
            }
            visited[h] = true;
            path_arcs.push(pick);
            cur = h;
        }
    };
    for choice in 0..2 {
        let Some(path_arcs) = try_walk(choice) else {
            continue;
        };
        let path_nodes: BTreeSet<Node> = path_arcs
            .iter()
            .flat_map(|&i| [arcs[i].0, arcs[i].1])
            .collect();
        if !path_nodes.contains(&k) {
            continue;
        }
        // The remaining arcs must form one simple cycle through k, node
        // disjoint from the path except at k.
        let rest: Vec<usize> = (0..arcs.len()).filter(|i| !path_arcs.contains(i)).collect();
        if rest.is_empty() {
            continue;
        }
        let mut cyc_nodes = BTreeSet::new();
        let mut cur = k;
        let mut steps = 0;
        let mut ok = true;
        loop {
            let Some(&i) = rest.iter().find(|&&i| arcs[i].0 == cur) else {
                ok = false;
                break;
            };
            let (_, h) = arcs[i];
            steps += 1;
            if h == k {
                break;
            }
            if !cyc_nodes.insert(h) {
                ok = false;
                break;
            }
            if steps > rest.len() {
                ok = false;
                break;
            }
            cur = h;
        }
        if !ok || steps != rest.len() {
            continue;
        }
        let inter: Vec<_> = cyc_nodes.intersection(&path_nodes).collect();
        if inter.is_empty() {
            return true; // cycle nodes beyond k are disjoint from the path
        }
    }
    false
}

/// Outcome of the exact min-cost scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinCostResult {
    Optimal { value: Rational, path: IncidenceVector, nodes: Vec<Node> },
    Infeasible,
}

/// Exact optimum of `costs · x` over all (0,n)-p-paths; ties broken by
/// enumeration order. This scan is the acceptance oracle for the solver.
pub fn min_cost_path(d: &Digraph, costs: &[Rational], p: usize) -> MinCostResult {
    assert_eq!(costs.len(), d.arc_count());
    let Ok(paths) = enumerate_paths(d, p) else {
        return MinCostResult::Infeasible;
    };
    let mut best: Option<(Rational, usize)> = None;
    for (i, v) in paths.vectors.iter().enumerate() {
        let mut c = Rational::zero();
        for &k in v.support() {
            c += &costs[k];
        }
        match &best {
            Some((b, _)) if *b <= c => {}
            _ => best = Some((c, i)),
        }
    }
    match best {
        Some((value, i)) => MinCostResult::Optimal {
            value,
            path: paths.vectors[i].clone(),
            nodes: paths.nodes[i].clone(),
        },
        None => MinCostResult::Infeasible,
    }
}

/// Constrained (0,n)-path classes over which linear forms are maximized.
#[derive(Clone, Debug)]
pub enum PathClass {
    /// All (0,n)-paths of length exactly q.
    Length(usize),
    /// Length-q paths that visit the given node.
    LengthThrough(usize, Node),
    /// Length-q paths whose internal nodes all lie in the given set.
    LengthInternalWithin(usize, BTreeSet<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// Exact extremum of a linear form over a constrained path class;
/// None means the class is empty (a value, not an error).
pub fn extremum_over_paths(
    d: &Digraph,
    coeffs: &[Rational],
    class: &PathClass,
    which: Extremum,
) -> Option<Rational> {
    assert_eq!(coeffs.len(), d.arc_count());
    let q = match class {
        PathClass::Length(q) => *q,
        PathClass::LengthThrough(q, _) => *q,
        PathClass::LengthInternalWithin(q, _) => *q,
    };
    let paths = enumerate_paths(d, q).ok()?;
    let mut best: Option<Rational> = None;
    for (seq, v) in paths.nodes.iter().zip(paths.vectors.iter()) {
        let admissible = match class {
            PathClass::Length(_) => true,
            PathClass::LengthThrough(_, k) => seq.contains(k),
            PathClass::LengthInternalWithin(_, within) => {
                seq[1..seq.len() - 1].iter().all(|v| within.contains(v))
            }
        };
        if !admissible {
            continue;
        }
        let mut c = Rational::zero();
        for &k in v.support() {
            c += &coeffs[k];
        }
        best = Some(match best {
            None => c,
            Some(b) => match which {
                Extremum::Max => b.max(c),
                Extremum::Min => b.min(c),
            },
        });
    }
    best
}

/// Exact extremum of a linear form over all simple p-cycles of the complete
/// digraph on {1,…,m}.
pub fn extremum_over_cycles(
    cd: &CycleDigraph,
    coeffs: &[Rational],
    p: usize,
    which: Extremum,
) -> Option<Rational> {
    assert_eq!(coeffs.len(), cd.arc_count());
    let mut best: Option<Rational> = None;
    for v in enumerate_cycles(cd, p) {
        let mut c = Rational::zero();
        for &k in v.support() {
            c += &coeffs[k];
        }
        best = Some(match best {
            None => c,
            Some(b) => match which {
                Extremum::Max => b.max(c),
                Extremum::Min => b.min(c),
            },
        });
    }
    best
}

/// Closed-form count of (0,n)-p-paths in restricted mode: (n−1)!/(n−p)!.
pub fn path_count_formula(n: usize, p: usize) -> usize {
    ((n - p + 1)..=(n - 1)).product::<usize>().max(1) * if p <= n { 1 } else { 0 }
}
