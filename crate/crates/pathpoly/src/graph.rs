//! The arc-restricted digraph on {0,…,n}, incidence vectors, and node
//! partitions — the shared ground set for every other module.
//!
//! Arc ordering is lexicographic by (tail, head) and is part of the file
//! format contract: incidence bitstrings and coefficient vectors index
//! against it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::ModelError;

pub type Node = usize;
pub type Arc = (Node, Node);

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    /// All arcs (i,j), i≠j, except (i,0), (n,i), (0,n), (n,0): |A| = n²−n.
    Restricted,
    /// All (n+1)n ordered pairs; used for the p ≤ 3 analyses.
    Complete,
}

impl fmt::Display for GraphMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphMode::Restricted => write!(f, "restricted"),
            GraphMode::Complete => write!(f, "complete"),
        }
    }
}

impl std::str::FromStr for GraphMode {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "restricted" => Ok(GraphMode::Restricted),
            "complete" => Ok(GraphMode::Complete),
            other => Err(ModelError::BadMode(other.to_string())),
        }
    }
}

/// Digraph on node set {0,…,n} with 0 the source and n the terminus.
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    mode: GraphMode,
    arcs: Vec<Arc>,
    /// Dense (tail, head) → arc index lookup; usize::MAX marks absent arcs.
    index: Vec<usize>,
}

impl Digraph {
    pub fn build(n: usize, mode: GraphMode) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::TooFewNodes(n));
        }
        let mut arcs = Vec::new();
        for tail in 0..=n {
            for head in 0..=n {
                if tail == head {
                    continue;
                }
                if mode == GraphMode::Restricted {
                    let excluded = head == 0 || tail == n || (tail == 0 && head == n);
                    if excluded {
                        continue;
                    }
                }
                arcs.push((tail, head));
            }
        }
        let mut index = vec![usize::MAX; (n + 1) * (n + 1)];
        for (k, &(t, h)) in arcs.iter().enumerate() {
            index[t * (n + 1) + h] = k;
        }
        Ok(Digraph { n, mode, arcs, index })
    }

    pub fn restricted(n: usize) -> Result<Self, ModelError> {
        Self::build(n, GraphMode::Restricted)
    }

    pub fn complete(n: usize) -> Result<Self, ModelError> {
        Self::build(n, GraphMode::Complete)
    }

    /// The terminus label n (node set is {0,…,n}).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, idx: usize) -> Arc {
        self.arcs[idx]
    }

    /// Position in the fixed lexicographic ordering, or None if excluded.
    pub fn arc_index(&self, tail: Node, head: Node) -> Option<usize> {
        if tail > self.n || head > self.n {
            return None;
        }
        match self.index[tail * (self.n + 1) + head] {
            usize::MAX => None,
            k => Some(k),
        }
    }

    pub fn has_arc(&self, tail: Node, head: Node) -> bool {
        self.arc_index(tail, head).is_some()
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        0..=self.n
    }

    /// Internal nodes {1,…,n−1}.
    pub fn internal_nodes(&self) -> impl Iterator<Item = Node> {
        1..self.n
    }

    pub fn is_internal(&self, v: Node) -> bool {
        v >= 1 && v < self.n
    }

    pub fn out_arcs(&self, v: Node) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .filter(move |(_, &(t, _))| t == v)
            .map(|(k, _)| k)
    }

    pub fn in_arcs(&self, v: Node) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .filter(move |(_, &(_, h))| h == v)
            .map(|(k, _)| k)
    }

    pub fn out_neighbors(&self, v: Node) -> Vec<Node> {
        (0..=self.n).filter(|&w| self.has_arc(v, w)).collect()
    }
}

/// Complete digraph on node set {1,…,m}: the home of the p-cycle polytope.
/// Arc ordering is lexicographic by (tail, head), same contract as Digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDigraph {
    m: usize,
    arcs: Vec<Arc>,
}

impl CycleDigraph {
    pub fn new(m: usize) -> Result<Self, ModelError> {
        if m < 2 {
            return Err(ModelError::TooFewNodes(m));
        }
        let mut arcs = Vec::new();
        for tail in 1..=m {
            for head in 1..=m {
                if tail != head {
                    arcs.push((tail, head));
                }
            }
        }
        Ok(CycleDigraph { m, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.m
    }

    pub fn max_node(&self) -> usize {
        self.m
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_index(&self, tail: Node, head: Node) -> Option<usize> {
        if tail < 1 || head < 1 || tail > self.m || head > self.m || tail == head {
            return None;
        }
        Some((tail - 1) * (self.m - 1) + if head > tail { head - 2 } else { head - 1 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorKind {
    Path,
    Cycle,
    Bowtie,
    Other,
}

/// 0/1 vector over a fixed arc (or edge) universe, stored as the sorted
/// support plus the universe size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceVector {
    universe: usize,
    support: Vec<usize>,
    kind: VectorKind,
}

impl IncidenceVector {
    /// Build from a support set; the structural predicate for `kind` is the
    /// caller's responsibility (the enumeration module checks them).
    pub fn from_support(universe: usize, mut support: Vec<usize>, kind: VectorKind) -> Self {
        support.sort_unstable();
        support.dedup();
        assert!(support.last().map_or(true, |&k| k < universe));
        IncidenceVector { universe, support, kind }
    }

    /// Incidence vector of a directed path given as a node tuple.
    pub fn path_from_nodes(d: &Digraph, nodes: &[Node]) -> Result<Self, ModelError> {
        let mut support = Vec::with_capacity(nodes.len().saturating_sub(1));
        for w in nodes.windows(2) {
            let idx = d
                .arc_index(w[0], w[1])
                .ok_or(ModelError::MissingArc(w[0], w[1]))?;
            support.push(idx);
        }
        let distinct: BTreeSet<_> = nodes.iter().collect();
        if distinct.len() != nodes.len() {
            return Err(ModelError::NotSimple);
        }
        Ok(Self::from_support(d.arc_count(), support, VectorKind::Path))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn ones(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.support.binary_search(&idx).is_ok()
    }

    /// Dense 0/1 row, for rank computations.
    pub fn to_int_row(&self) -> Vec<i64> {
        let mut row = vec![0i64; self.universe];
        for &k in &self.support {
            row[k] = 1;
        }
        row
    }

    /// Bitstring in the documented arc ordering, e.g. "0110…".
    pub fn bitstring(&self) -> String {
        let mut s = vec![b'0'; self.universe];
        for &k in &self.support {
            s[k] = b'1';
        }
        String::from_utf8(s).unwrap()
    }
}

/// Pairwise-disjoint named blocks of {0,…,n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePartition {
    blocks: Vec<(String, BTreeSet<Node>)>,
}

impl NodePartition {
    pub fn new(blocks: Vec<(String, BTreeSet<Node>)>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for (name, block) in &blocks {
            for &v in block {
                if !seen.insert(v) {
                    return Err(ModelError::OverlappingBlocks(name.clone(), v));
                }
            }
        }
        Ok(NodePartition { blocks })
    }

    pub fn block(&self, name: &str) -> Option<&BTreeSet<Node>> {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|(_, s)| s)
    }

    pub fn blocks(&self) -> &[(String, BTreeSet<Node>)] {
        &self.blocks
    }

    /// True when the blocks cover {0,…,n} exactly.
    pub fn covers(&self, n: usize) -> bool {
        let total: usize = self.blocks.iter().map(|(_, b)| b.len()).sum();
        total == n + 1 && self.blocks.iter().all(|(_, b)| b.iter().all(|&v| v <= n))
    }
}
