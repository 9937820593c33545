//! Generators for every inequality family, plus closed-form validity and
//! facet predicates encoding exactly the stated theorem conditions.
//!
//! The facet predicates return a four-valued verdict: `SufficientTrue`
//! marks families where only sufficiency is proved (jump), and `Unknown`
//! marks parameter ranges the theorems do not cover. Everything the
//! predicates claim is cross-checked against the rank oracle in the
//! verification module's sweeps.

use std::collections::BTreeSet;

use crate::error::ModelError;
use crate::graph::{Digraph, GraphMode, Node};
use crate::ineq::{Inequality, ModelRowKind, Provenance, Sense};
use crate::rational::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetVerdict {
    True,
    False,
    /// The stated condition is only sufficient; it holds here.
    SufficientTrue,
    Unknown,
}

fn require(cond: bool, msg: &str) -> Result<(), ModelError> {
    if cond {
        Ok(())
    } else {
        Err(ModelError::BadParameters(msg.to_string()))
    }
}

/// Arcs from S to T (arbitrary disjoint node sets), as arc indices.
pub fn arcs_between(d: &Digraph, s: &BTreeSet<Node>, t: &BTreeSet<Node>) -> Vec<usize> {
    let mut out = Vec::new();
    for &i in s {
        for &j in t {
            if let Some(k) = d.arc_index(i, j) {
                out.push(k);
            }
        }
    }
    out
}

fn complement(d: &Digraph, s: &BTreeSet<Node>) -> BTreeSet<Node> {
    d.nodes().filter(|v| !s.contains(v)).collect()
}

/// The full initial system: zero rows (complete mode), flow rows, the
/// cardinality row, degree rows, all one-sided min-cut rows with
/// 3 ≤ |S| ≤ n−2, and the 0/1 bounds. Integrality is the solver's job.
pub fn gen_model_rows(d: &Digraph, p: usize) -> Vec<Inequality> {
    let n = d.n();
    let mut rows = Vec::new();
    if d.mode() == GraphMode::Complete {
        rows.push(Inequality::new(
            d.in_arcs(0).map(|k| (k, rat(1))),
            Sense::Eq,
            rat(0),
            Provenance::ModelRow { kind: ModelRowKind::SourceInDegree },
        ));
        rows.push(Inequality::new(
            d.out_arcs(n).map(|k| (k, rat(1))),
            Sense::Eq,
            rat(0),
            Provenance::ModelRow { kind: ModelRowKind::TerminusOutDegree },
        ));
    }
    for i in d.nodes().collect::<Vec<_>>() {
        let rhs = if i == 0 {
            rat(1)
        } else if i == n {
            rat(-1)
        } else {
            rat(0)
        };
        let coeffs = d
            .out_arcs(i)
            .map(|k| (k, rat(1)))
            .chain(d.in_arcs(i).map(|k| (k, rat(-1))));
        rows.push(Inequality::new(
            coeffs,
            Sense::Eq,
            rhs,
            Provenance::ModelRow { kind: ModelRowKind::Flow { node: i } },
        ));
    }
    rows.push(Inequality::new(
        (0..d.arc_count()).map(|k| (k, rat(1))),
        Sense::Eq,
        rat(p as i64),
        Provenance::ModelRow { kind: ModelRowKind::Cardinality },
    ));
    for j in d.internal_nodes().collect::<Vec<_>>() {
        rows.push(gen_degree(d, j).expect("internal node"));
    }
    // One-sided min-cut rows over every admissible S and每 l outside it.
    let internals: Vec<Node> = d.internal_nodes().collect();
    for mask in 0u64..(1u64 << internals.len()) {
        let mut s: BTreeSet<Node> = [0, n].into_iter().collect();
        for (bit, &v) in internals.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                s.insert(v);
            }
        }
        if s.len() < 3 || s.len() > n.saturating_sub(1) {
            continue;
        }
        for l in complement(d, &s) {
            rows.push(gen_one_sided_min_cut(d, &s, l).expect("admissible parameters"));
        }
    }
    for (k, &(t, h)) in d.arcs().iter().enumerate() {
        rows.push(Inequality::new(
            vec![(k, rat(1))],
            Sense::Ge,
            rat(0),
            Provenance::Nonneg { tail: t, head: h },
        ));
        rows.push(Inequality::new(
            vec![(k, rat(1))],
            Sense::Le,
            rat(1),
            Provenance::ModelRow { kind: ModelRowKind::Upper { tail: t, head: h } },
        ));
    }
    rows
}

/// x_ij ≥ 0.
pub fn gen_nonneg(d: &Digraph, tail: Node, head: Node) -> Result<Inequality, ModelError> {
    let k = d
        .arc_index(tail, head)
        .ok_or(ModelError::MissingArc(tail, head))?;
    Ok(Inequality::new(
        vec![(k, rat(1))],
        Sense::Ge,
        rat(0),
        Provenance::Nonneg { tail, head },
    ))
}

/// x(δ⁺(j)) ≤ 1 for an internal node j.
pub fn gen_degree(d: &Digraph, j: Node) -> Result<Inequality, ModelError> {
    require(d.is_internal(j), "degree constraints are for internal nodes")?;
    Ok(Inequality::new(
        d.out_arcs(j).map(|k| (k, rat(1))),
        Sense::Le,
        rat(1),
        Provenance::Degree { node: j },
    ))
}

/// Min-cut inequality x((S:V∖S)) ≥ 1 with 0, n ∈ S.
pub fn gen_min_cut(d: &Digraph, s: &BTreeSet<Node>) -> Result<Inequality, ModelError> {
    require(s.contains(&0) && s.contains(&d.n()), "min-cut needs 0, n in S")?;
    require(s.len() < d.node_count(), "S must be a proper subset of V")?;
    require(s.iter().all(|&v| v <= d.n()), "S contains an unknown node")?;
    let t = complement(d, s);
    Ok(Inequality::new(
        arcs_between(d, s, &t).into_iter().map(|k| (k, rat(1))),
        Sense::Ge,
        rat(1),
        Provenance::MinCut { s: s.iter().copied().collect() },
    ))
}

/// One-sided min-cut inequality x((S:V∖S)) ≥ x(δ⁺(l)) with 0, n ∈ S, l ∉ S.
pub fn gen_one_sided_min_cut(
    d: &Digraph,
    s: &BTreeSet<Node>,
    l: Node,
) -> Result<Inequality, ModelError> {
    require(s.contains(&0) && s.contains(&d.n()), "one-sided min-cut needs 0, n in S")?;
    require(!s.contains(&l) && l <= d.n(), "l must lie outside S")?;
    let t = complement(d, s);
    let coeffs = arcs_between(d, s, &t)
        .into_iter()
        .map(|k| (k, rat(1)))
        .chain(d.out_arcs(l).map(|k| (k, rat(-1))));
    Ok(Inequality::new(
        coeffs,
        Sense::Ge,
        rat(0),
        Provenance::OneSidedMinCut { s: s.iter().copied().collect(), l },
    ))
}

/// Generalized max-cut inequality over a partition ⟨R,S,T⟩ of V. The
/// right-hand side depends on where 0 and n sit:
/// both in S or both in T → ⌊(p+|R|)/2⌋; 0∈S, n∈T → ⌊(p+|R|+1)/2⌋;
/// 0∈T, n∈S → ⌊(p+|R|−1)/2⌋.
pub fn gen_gen_max_cut(
    d: &Digraph,
    r: &BTreeSet<Node>,
    s: &BTreeSet<Node>,
    t: &BTreeSet<Node>,
    p: usize,
) -> Result<Inequality, ModelError> {
    let n = d.n();
    require(
        r.is_disjoint(s) && r.is_disjoint(t) && s.is_disjoint(t),
        "R, S, T must be pairwise disjoint",
    )?;
    require(r.len() + s.len() + t.len() == d.node_count(), "R, S, T must cover V")?;
    require(
        !r.contains(&0) && !r.contains(&n),
        "0 and n belong to S or T, not R",
    )?;
    let rhs_num = p as i64 + r.len() as i64
        + match (s.contains(&0), s.contains(&n)) {
            (true, true) | (false, false) => 0,
            (true, false) => 1,
            (false, true) => -1,
        };
    let rhs = rat(rhs_num.div_euclid(2));
    let coeffs = arcs_between(d, s, t)
        .into_iter()
        .map(|k| (k, rat(1)))
        .chain(r.iter().flat_map(|&i| d.out_arcs(i).map(|k| (k, rat(1)))));
    Ok(Inequality::new(
        coeffs,
        Sense::Le,
        rhs,
        Provenance::GenMaxCut {
            r: r.iter().copied().collect(),
            s: s.iter().copied().collect(),
            t: t.iter().copied().collect(),
        },
    ))
}

/// With R = ∅, 0 ∈ T and n ∈ S, the generalized max-cut inequality can be
/// rewritten through the cut-balance equation as x((T:S)) ≤ ⌊(p+1)/2⌋.
/// Checkable against the family form via `equiv::equivalent`.
pub fn rewrite_even_max_cut_reversed(
    d: &Digraph,
    s: &BTreeSet<Node>,
    t: &BTreeSet<Node>,
    p: usize,
) -> Result<Inequality, ModelError> {
    require(t.contains(&0) && s.contains(&d.n()), "rewrite needs 0 ∈ T, n ∈ S")?;
    require(s.len() + t.len() == d.node_count(), "rewrite applies to R = ∅")?;
    Ok(Inequality::new(
        arcs_between(d, t, s).into_iter().map(|k| (k, rat(1))),
        Sense::Le,
        rat(((p + 1) / 2) as i64),
        Provenance::custom("even max-cut, reversed-cut form"),
    ))
}

/// Jump inequality over an ordered partition S₀={0}, S₁,…,S_p, S_{p+1}={n}.
pub fn gen_jump(d: &Digraph, blocks: &[BTreeSet<Node>]) -> Result<Inequality, ModelError> {
    let n = d.n();
    require(blocks.len() >= 4, "jump partition needs p + 2 >= 4 blocks")?;
    let p = blocks.len() - 2;
    require(
        blocks[0].len() == 1 && blocks[0].contains(&0),
        "S_0 must be exactly {0}",
    )?;
    require(
        blocks[p + 1].len() == 1 && blocks[p + 1].contains(&n),
        "S_{p+1} must be exactly {n}",
    )?;
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    require(total == d.node_count(), "blocks must partition V")?;
    let mut seen = BTreeSet::new();
    for b in blocks {
        for &v in b {
            require(v <= n && seen.insert(v), "blocks must be pairwise disjoint")?;
        }
    }
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    for i in 0..=p.saturating_sub(1) {
        for j in (i + 2)..=(p + 1) {
            for k in arcs_between(d, &blocks[i], &blocks[j]) {
                coeffs.push((k, rat(1)));
            }
        }
    }
    let late: BTreeSet<Node> = blocks[p - 1].union(&blocks[p]).copied().collect();
    let early: BTreeSet<Node> = blocks[1].union(&blocks[2]).copied().collect();
    for k in arcs_between(d, &late, &early) {
        coeffs.push((k, rat(-1)));
    }
    Ok(Inequality::new(
        coeffs,
        Sense::Ge,
        rat(1),
        Provenance::Jump { blocks: blocks.iter().map(|b| b.iter().copied().collect()).collect() },
    ))
}

/// Cardinality-path inequality for a simple internal path P of length p−1:
/// Σ_{i interior of P} x(δ⁻(i)) − x(bid(P)) ≥ 0.
pub fn gen_card_path(d: &Digraph, nodes: &[Node]) -> Result<Inequality, ModelError> {
    require(nodes.len() >= 2, "path needs at least one arc")?;
    require(
        nodes.iter().all(|&v| d.is_internal(v)),
        "cardinality-path nodes must be internal",
    )?;
    let distinct: BTreeSet<_> = nodes.iter().collect();
    require(distinct.len() == nodes.len(), "path must be simple")?;
    for w in nodes.windows(2) {
        require(
            d.has_arc(w[0], w[1]),
            "consecutive path nodes must be joined by an arc",
        )?;
    }
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    for &i in &nodes[1..nodes.len() - 1] {
        for k in d.in_arcs(i) {
            coeffs.push((k, rat(1)));
        }
    }
    for w in nodes.windows(2) {
        coeffs.push((d.arc_index(w[0], w[1]).unwrap(), rat(-1)));
        if let Some(k) = d.arc_index(w[1], w[0]) {
            coeffs.push((k, rat(-1)));
        }
    }
    Ok(Inequality::new(
        coeffs,
        Sense::Ge,
        rat(0),
        Provenance::CardPath { nodes: nodes.to_vec() },
    ))
}

/// Broom inequality x(δ⁺(i)) ≥ x_{ji} + x_{ik} for internal i, where either
/// j = k is another internal node or (j, k) = (0, n).
pub fn gen_broom(d: &Digraph, i: Node, j: Node, k: Node) -> Result<Inequality, ModelError> {
    require(d.is_internal(i), "broom center must be internal")?;
    let shape_ok = (j == k && d.is_internal(j) && j != i) || (j == 0 && k == d.n());
    require(shape_ok, "broom needs j = k internal or (j, k) = (0, n)")?;
    let coeffs = d
        .out_arcs(i)
        .map(|a| (a, rat(1)))
        .chain(d.arc_index(j, i).map(|a| (a, rat(-1))))
        .chain(d.arc_index(i, k).map(|a| (a, rat(-1))));
    Ok(Inequality::new(
        coeffs,
        Sense::Ge,
        rat(0),
        Provenance::Broom { i, j, k },
    ))
}

/// The extra facet family for p = 4 on nodes {0,1,2,3,n} with the remaining
/// internal nodes T = V∖{0,1,2,3,n} ≠ ∅.
pub fn gen_extra_p4(d: &Digraph, p: usize) -> Result<Inequality, ModelError> {
    let n = d.n();
    require(p == 4, "the extra inequality is specific to p = 4")?;
    require(n >= 5, "needs T = V∖{0,1,2,3,n} nonempty")?;
    let t: BTreeSet<Node> = (4..n).collect();
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    let mut put = |tail: Node, head: Node, c: i64| {
        if let Some(k) = d.arc_index(tail, head) {
            coeffs.push((k, rat(c)));
        }
    };
    put(0, 3, 1);
    put(3, n, -1);
    put(1, 2, 3);
    put(2, 1, -1);
    put(1, 3, 2);
    put(3, 1, -2);
    put(2, n, -2);
    for &v in &t {
        put(v, 3, 2);
        put(1, v, 1);
        put(v, 1, -1);
        put(v, 2, 1);
        put(2, v, -1);
    }
    for &a in &t {
        for &b in &t {
            if a != b {
                put(a, b, 1);
            }
        }
    }
    Ok(Inequality::new(
        coeffs,
        Sense::Ge,
        rat(0),
        Provenance::ExtraP4 { n },
    ))
}

/// Closed-form validity verdict for a family instance; `Unknown` where the
/// theorems are silent.
pub fn predicted_validity(d: &Digraph, p: usize, prov: &Provenance) -> Verdict {
    match prov {
        Provenance::ModelRow { .. } | Provenance::Nonneg { .. } | Provenance::Degree { .. } => {
            Verdict::True
        }
        // A (0,n)-p-path can stay inside S exactly when |S| ≥ p+1.
        Provenance::MinCut { s } => {
            if s.len() <= p {
                Verdict::True
            } else {
                Verdict::False
            }
        }
        Provenance::OneSidedMinCut { .. } => Verdict::True,
        Provenance::GenMaxCut { .. } => {
            if p >= 4 {
                Verdict::True
            } else {
                Verdict::Unknown
            }
        }
        Provenance::Jump { .. } => Verdict::True,
        Provenance::CardPath { .. } => Verdict::True,
        Provenance::Broom { .. } => {
            if p >= 3 {
                Verdict::True
            } else {
                Verdict::Unknown
            }
        }
        Provenance::ExtraP4 { .. } => {
            if p == 4 {
                Verdict::True
            } else {
                Verdict::Unknown
            }
        }
        _ => {
            let _ = d;
            Verdict::Unknown
        }
    }
}

/// Closed-form facet verdict encoding exactly the stated theorem
/// conditions; definitive answers only inside the standing assumption
/// 4 ≤ p ≤ n−1.
pub fn predicted_facet(d: &Digraph, p: usize, prov: &Provenance) -> FacetVerdict {
    let n = d.n();
    let in_range = p >= 4 && p + 1 <= n;
    match prov {
        Provenance::Nonneg { .. } | Provenance::Degree { .. } => {
            if in_range {
                FacetVerdict::True
            } else {
                FacetVerdict::Unknown
            }
        }
        Provenance::MinCut { s } => {
            if !in_range {
                return FacetVerdict::Unknown;
            }
            let vs = n + 1 - s.len();
            if s.len() >= 3 && s.len() <= p && vs >= 2 {
                FacetVerdict::True
            } else {
                FacetVerdict::False
            }
        }
        Provenance::OneSidedMinCut { s, .. } => {
            if !in_range {
                return FacetVerdict::Unknown;
            }
            let vs = n + 1 - s.len();
            if s.len() >= p + 1 && vs >= 2 {
                FacetVerdict::True
            } else {
                FacetVerdict::False
            }
        }
        Provenance::GenMaxCut { r, s, t } => {
            if !in_range {
                return FacetVerdict::Unknown;
            }
            let (rr, ss, tt) = (r.len(), s.len(), t.len());
            let zero_in_s = s.contains(&0);
            let n_in_s = s.contains(&n);
            let odd = (p + rr) % 2 == 1;
            let verdict = match (zero_in_s, n_in_s) {
                (true, true) => {
                    odd && 2 * (ss - 1) > p - rr
                        && 2 * tt > p - rr
                        && ((p == rr + 3 && rr >= 2 && ss == 3) || p >= rr + 5)
                }
                (false, false) => {
                    odd && 2 * ss > p - rr
                        && 2 * (tt - 1) > p - rr
                        && ((p == rr + 3 && rr >= 2 && tt == 3) || p >= rr + 5)
                }
                // 0 ∈ S, n ∈ T and 0 ∈ T, n ∈ S share their conditions.
                _ => !odd && p >= rr + 4 && 2 * ss > p - rr && 2 * tt > p - rr,
            };
            if verdict {
                FacetVerdict::True
            } else {
                FacetVerdict::False
            }
        }
        Provenance::Jump { blocks } => {
            let p_jump = blocks.len().saturating_sub(2);
            if blocks[1..=p_jump].iter().all(|b| b.len() >= 2) {
                FacetVerdict::SufficientTrue
            } else {
                FacetVerdict::Unknown
            }
        }
        Provenance::CardPath { nodes } => {
            let path_p = nodes.len();
            if path_p != p || !in_range {
                return FacetVerdict::Unknown;
            }
            let facet = ((4..=5).contains(&p) && n >= p + 2) || (p >= 6 && n >= 2 * p - 3);
            if facet {
                FacetVerdict::True
            } else {
                FacetVerdict::False
            }
        }
        Provenance::ExtraP4 { .. } => {
            if p == 4 && n >= 5 {
                FacetVerdict::True
            } else {
                FacetVerdict::Unknown
            }
        }
        _ => FacetVerdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_paths;

    fn set(vals: &[usize]) -> BTreeSet<usize> {
        vals.iter().copied().collect()
    }

    #[test]
    fn model_rows_shape() {
        let d = Digraph::restricted(5).unwrap();
        let rows = gen_model_rows(&d, 4);
        // Flow row of node 0 on the restricted digraph: x(δ⁺(0)) = 1.
        let flow0 = rows
            .iter()
            .find(|r| matches!(r.provenance(), Provenance::ModelRow { kind: ModelRowKind::Flow { node: 0 } }))
            .unwrap();
        assert_eq!(flow0.sense(), Sense::Eq);
        assert_eq!(*flow0.rhs(), rat(1));
        let out0: Vec<usize> = d.out_arcs(0).collect();
        assert_eq!(flow0.support().collect::<Vec<_>>(), out0);
        // Cardinality row x(A) = p.
        let card = rows
            .iter()
            .find(|r| matches!(r.provenance(), Provenance::ModelRow { kind: ModelRowKind::Cardinality }))
            .unwrap();
        assert_eq!(*card.rhs(), rat(4));
        assert_eq!(card.support().count(), d.arc_count());
        // One degree row per internal node.
        let degrees = rows
            .iter()
            .filter(|r| matches!(r.provenance(), Provenance::Degree { .. }))
            .count();
        assert_eq!(degrees, 4);
        // Every model row is satisfied by every 4-path.
        let paths = enumerate_paths(&d, 4).unwrap();
        for row in &rows {
            for v in &paths.vectors {
                assert!(row.satisfied_by(v), "{:?}", row.provenance());
            }
        }
    }

    #[test]
    fn min_cut_predicates() {
        let d = Digraph::restricted(6).unwrap();
        let q = gen_min_cut(&d, &set(&[0, 1, 6])).unwrap();
        assert_eq!(predicted_validity(&d, 4, q.provenance()), Verdict::True);
        assert_eq!(predicted_facet(&d, 4, q.provenance()), FacetVerdict::True);
        let big = gen_min_cut(&d, &set(&[0, 1, 2, 3, 6])).unwrap();
        assert_eq!(predicted_validity(&d, 4, big.provenance()), Verdict::False);
        assert!(gen_min_cut(&d, &set(&[1, 2])).is_err());
    }

    #[test]
    fn one_sided_min_cut_predicates() {
        let d = Digraph::restricted(7).unwrap();
        let q = gen_one_sided_min_cut(&d, &set(&[0, 1, 2, 3, 7]), 4).unwrap();
        // |S| = 5 ≥ p+1 and |V∖S| = 3 ≥ 2.
        assert_eq!(predicted_facet(&d, 4, q.provenance()), FacetVerdict::True);
        // |S| ≤ p: sum of min-cut and a degree row, not a facet.
        let small = gen_one_sided_min_cut(&d, &set(&[0, 1, 7]), 4).unwrap();
        assert_eq!(predicted_facet(&d, 4, small.provenance()), FacetVerdict::False);
        // |V∖S| = 1: the flow constraint of l.
        let d6 = Digraph::restricted(6).unwrap();
        let fl = gen_one_sided_min_cut(&d6, &set(&[0, 1, 2, 3, 4, 6]), 5).unwrap();
        assert_eq!(predicted_facet(&d6, 4, fl.provenance()), FacetVerdict::False);
    }

    #[test]
    fn gen_max_cut_rhs_and_predicates() {
        // p=5, R=∅, S={0,1,2,6}, T={3,4,5}: odd variant, rhs 2, facet.
        let d = Digraph::restricted(6).unwrap();
        let q = gen_gen_max_cut(&d, &set(&[]), &set(&[0, 1, 2, 6]), &set(&[3, 4, 5]), 5).unwrap();
        assert_eq!(*q.rhs(), rat(2));
        assert_eq!(predicted_facet(&d, 5, q.provenance()), FacetVerdict::True);
        // p=4, R=∅, S={0,1,2}, T={3,4,5}, n=5: even variant, rhs 2, facet.
        let d5 = Digraph::restricted(5).unwrap();
        let q = gen_gen_max_cut(&d5, &set(&[]), &set(&[0, 1, 2]), &set(&[3, 4, 5]), 4).unwrap();
        assert_eq!(*q.rhs(), rat(2));
        assert_eq!(predicted_facet(&d5, 4, q.provenance()), FacetVerdict::True);
        // p + |R| even with 0, n ∈ S: obtained with no rounding, not facet.
        let q = gen_gen_max_cut(&d, &set(&[]), &set(&[0, 1, 2, 6]), &set(&[3, 4, 5]), 4).unwrap();
        assert_eq!(predicted_facet(&d, 4, q.provenance()), FacetVerdict::False);
        // 0 or n inside R is rejected.
        assert!(gen_gen_max_cut(&d, &set(&[0]), &set(&[1, 2, 6]), &set(&[3, 4, 5]), 4).is_err());
    }

    #[test]
    fn jump_all_blocks_of_two_is_sufficient_true() {
        let d = Digraph::restricted(9).unwrap();
        let blocks: Vec<BTreeSet<usize>> = vec![
            set(&[0]),
            set(&[1, 5]),
            set(&[2, 6]),
            set(&[3, 7]),
            set(&[4, 8]),
            set(&[9]),
        ];
        let q = gen_jump(&d, &blocks).unwrap();
        assert_eq!(predicted_facet(&d, 4, q.provenance()), FacetVerdict::SufficientTrue);
        // Validity on every enumerated path: each one makes a jump.
        let paths = enumerate_paths(&d, 4).unwrap();
        for v in &paths.vectors {
            assert!(q.satisfied_by(v));
        }
        // A singleton block downgrades the verdict to Unknown.
        let blocks1: Vec<BTreeSet<usize>> = vec![
            set(&[0]),
            set(&[1]),
            set(&[2, 5, 6]),
            set(&[3, 7]),
            set(&[4, 8]),
            set(&[9]),
        ];
        let q1 = gen_jump(&d, &blocks1).unwrap();
        assert_eq!(predicted_facet(&d, 4, q1.provenance()), FacetVerdict::Unknown);
    }

    #[test]
    fn card_path_predicates_and_validity() {
        let d = Digraph::restricted(6).unwrap();
        let q = gen_card_path(&d, &[1, 2, 3, 4]).unwrap();
        assert_eq!(predicted_facet(&d, 4, q.provenance()), FacetVerdict::True);
        let paths = enumerate_paths(&d, 4).unwrap();
        for v in &paths.vectors {
            assert!(q.satisfied_by(v));
        }
        // p=6, n=8 needs n ≥ 2p−3 = 9: not a facet.
        let d8 = Digraph::restricted(8).unwrap();
        let q8 = gen_card_path(&d8, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(predicted_facet(&d8, 6, q8.provenance()), FacetVerdict::False);
        // Endpoints 0 or n are rejected.
        assert!(gen_card_path(&d, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn broom_validity_and_tightness() {
        let d = Digraph::restricted(6).unwrap();
        let q = gen_broom(&d, 1, 0, 6).unwrap();
        let paths = enumerate_paths(&d, 4).unwrap();
        for v in &paths.vectors {
            assert!(q.satisfied_by(v));
        }
        // A path through (j,i),(i,k) with j=k internal is tight; so is any
        // path avoiding i.
        let q2 = gen_broom(&d, 1, 2, 2).unwrap();
        let through = crate::graph::IncidenceVector::path_from_nodes(&d, &[0, 2, 1, 3, 6]).unwrap();
        assert!(q2.tight_on(&through));
        let avoiding = crate::graph::IncidenceVector::path_from_nodes(&d, &[0, 2, 3, 4, 6]).unwrap();
        assert!(q2.tight_on(&avoiding));
        assert!(gen_broom(&d, 1, 2, 3).is_err());
    }

    #[test]
    fn extra_p4_coefficients() {
        let d = Digraph::restricted(6).unwrap();
        let q = gen_extra_p4(&d, 4).unwrap();
        assert_eq!(q.coeff(d.arc_index(1, 2).unwrap()), rat(3));
        assert!(gen_extra_p4(&d, 5).is_err());
        let d4 = Digraph::restricted(4).unwrap();
        assert!(gen_extra_p4(&d4, 4).is_err());
    }

    #[test]
    fn nonneg_and_degree_predicates() {
        let d = Digraph::restricted(6).unwrap();
        let nn = gen_nonneg(&d, 1, 2).unwrap();
        assert_eq!(predicted_facet(&d, 4, nn.provenance()), FacetVerdict::True);
        assert_eq!(predicted_facet(&d, 5, nn.provenance()), FacetVerdict::True);
        let deg = gen_degree(&d, 1).unwrap();
        assert_eq!(predicted_facet(&d, 4, deg.provenance()), FacetVerdict::True);
        // Outside the 4 ≤ p ≤ n−1 range the theorems are silent.
        assert_eq!(predicted_facet(&d, 6, deg.provenance()), FacetVerdict::Unknown);
    }
}
