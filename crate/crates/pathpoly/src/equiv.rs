//! The flow/cardinality equality system, unbalanced 1-trees, and the
//! equivalence machinery built on them: a subset of arcs indexes a basis of
//! the equality system exactly when it is an unbalanced 1-tree, and any
//! valid inequality can be rewritten to prescribed coefficients on such a
//! basis without changing its tight set.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::error::ModelError;
use crate::graph::{Digraph, Node};
use crate::ineq::{Inequality, Sense};
use crate::rational::{rat, IntRankAccumulator, Rational, RationalMatrix};

/// Rows of the flow constraints (one per node) and the cardinality
/// constraint, over the digraph's arc ordering.
pub struct EqualitySystem {
    pub matrix: RationalMatrix,
    pub rhs: Vec<Rational>,
}

impl EqualitySystem {
    pub fn new(d: &Digraph, p: usize) -> Self {
        let mut matrix = RationalMatrix::zeros(d.node_count() + 1, d.arc_count());
        let mut rhs = vec![Rational::zero(); d.node_count() + 1];
        for (k, &(t, h)) in d.arcs().iter().enumerate() {
            matrix[(t, k)] = rat(1);
            matrix[(h, k)] = rat(-1);
            matrix[(d.node_count(), k)] = rat(1);
        }
        rhs[0] = rat(1);
        rhs[d.n()] = rat(-1);
        rhs[d.node_count()] = rat(p as i64);
        EqualitySystem { matrix, rhs }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Column of one arc: e_tail − e_head on the flow rows plus 1 on the
    /// cardinality row, as a small integer vector.
    fn column(d: &Digraph, arc_id: usize) -> Vec<i64> {
        let (t, h) = d.arc(arc_id);
        let mut col = vec![0i64; d.node_count() + 1];
        col[t] = 1;
        col[h] = -1;
        col[d.node_count()] = 1;
        col
    }
}

/// True iff the arc set is a spanning tree of the underlying undirected
/// graph plus one extra arc whose fundamental cycle has unequal counts of
/// forward and backward arcs (traversing the cycle in a fixed direction).
pub fn is_unbalanced_1tree(d: &Digraph, arc_ids: &[usize]) -> bool {
    let n = d.n();
    if arc_ids.len() != n + 1 {
        return false;
    }
    let mut distinct = arc_ids.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != n + 1 {
        return false;
    }
    // Grow the spanning tree by union-find; exactly one arc may close a cycle.
    let mut parent: Vec<usize> = (0..d.node_count()).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut tree: Vec<usize> = Vec::new();
    let mut extra: Option<usize> = None;
    for &id in &distinct {
        let (a, b) = d.arc(id);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            if extra.is_some() {
                return false;
            }
            extra = Some(id);
        } else {
            parent[ra] = rb;
            tree.push(id);
        }
    }
    let Some(extra) = extra else {
        return false;
    };
    let root = find(&mut parent, 0);
    if (0..d.node_count()).any(|v| find(&mut parent, v) != root) {
        return false;
    }
    // Fundamental cycle: extra arc (k,l) traversed k→l, then the tree path
    // l→k. A tree arc traversed with its own direction counts forward.
    let (k, l) = d.arc(extra);
    let mut adj: Vec<Vec<(Node, bool)>> = vec![Vec::new(); d.node_count()]; // (next, along_arc)
    for &id in &tree {
        let (a, b) = d.arc(id);
        adj[a].push((b, true));
        adj[b].push((a, false));
    }
    let mut prev: Vec<Option<(Node, bool)>> = vec![None; d.node_count()];
    let mut seen = vec![false; d.node_count()];
    let mut queue = VecDeque::from([l]);
    seen[l] = true;
    while let Some(v) = queue.pop_front() {
        if v == k {
            break;
        }
        for &(w, along) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, along));
                queue.push_back(w);
            }
        }
    }
    let mut forward = 1i64; // the extra arc itself
    let mut backward = 0i64;
    let mut cur = k;
    while cur != l {
        let (p, along) = prev[cur].expect("tree is connected");
        // The step p→cur lies on the l→k walk, so the cycle traverses it
        // cur→p... the walk below goes k back to l, which is the cycle
        // direction l→k reversed; flip accordingly.
        if along {
            forward += 1;
        } else {
            backward += 1;
        }
        cur = p;
    }
    forward != backward
}

/// Columns of the equality system indexed by the arc set are linearly
/// independent (asserted equal to `is_unbalanced_1tree` — Theorem 3 of the
/// 1-tree characterization — by exhaustive tests).
pub fn basis_check(d: &Digraph, arc_ids: &[usize]) -> bool {
    if arc_ids.len() != d.n() + 1 {
        return false;
    }
    let mut acc = IntRankAccumulator::new(d.node_count() + 1);
    for &id in arc_ids {
        if !acc.add(&EqualitySystem::column(d, id)) {
            return false;
        }
    }
    true
}

/// Lexicographically first unbalanced 1-tree: greedy over the arc ordering,
/// keeping each arc whose equality-system column is independent of those
/// already kept. Matroid greedy makes this the lex-min basis.
pub fn canonical_unbalanced_1tree(d: &Digraph) -> Vec<usize> {
    let mut acc = IntRankAccumulator::new(d.node_count() + 1);
    let mut picked = Vec::with_capacity(d.n() + 1);
    for id in 0..d.arc_count() {
        if acc.add(&EqualitySystem::column(d, id)) {
            picked.push(id);
            if picked.len() == d.n() + 1 {
                break;
            }
        }
    }
    debug_assert!(is_unbalanced_1tree(d, &picked));
    picked
}

/// Rewrite `ineq` to an equivalent inequality whose coefficients on the
/// unbalanced 1-tree `h` equal `b` (same tight-point set, sense and scale
/// preserved). The multiplier combination is uniquely determined by the
/// basis property, which is asserted.
pub fn normalize(
    d: &Digraph,
    p: usize,
    ineq: &Inequality,
    h: &[usize],
    b: &dyn Fn(usize) -> Rational,
) -> Result<Inequality, ModelError> {
    if !basis_check(d, h) {
        return Err(ModelError::BadParameters(
            "normalization arc set is not a basis of the equality system".into(),
        ));
    }
    let sys = EqualitySystem::new(d, p);
    // Solve for multipliers ω = (λ_0..λ_n, μ):   Σ_i ω_i sys[i][a] = b_a − c_a  for a ∈ h.
    let m = RationalMatrix::from_rows(
        h.iter()
            .map(|&a| (0..sys.matrix.rows).map(|i| sys.matrix[(i, a)].clone()).collect())
            .collect(),
    );
    let target: Vec<Rational> = h.iter().map(|&a| b(a) - ineq.coeff(a)).collect();
    let omega = m.solve_any(&target).expect("basis columns make this solvable");
    // The multiplier kernel is 1-dimensional (all flow rows sum to zero) and
    // acts as the zero row, so the rewritten inequality is unique.
    for kernel in m.nullspace() {
        for a in 0..d.arc_count() {
            let combo: Rational = (0..sys.matrix.rows)
                .map(|i| &kernel[i] * &sys.matrix[(i, a)])
                .sum();
            assert!(combo.is_zero(), "multiplier kernel must act as the zero row");
        }
    }
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    for a in 0..d.arc_count() {
        let mut c = ineq.coeff(a);
        for i in 0..sys.matrix.rows {
            if !sys.matrix[(i, a)].is_zero() && !omega[i].is_zero() {
                c += &omega[i] * &sys.matrix[(i, a)];
            }
        }
        if !c.is_zero() {
            coeffs.push((a, c));
        }
    }
    let mut rhs = ineq.rhs().clone();
    for i in 0..sys.matrix.rows {
        if !omega[i].is_zero() && !sys.rhs[i].is_zero() {
            rhs += &omega[i] * &sys.rhs[i];
        }
    }
    Ok(Inequality::new(coeffs, ineq.sense(), rhs, ineq.provenance().clone()))
}

/// Two valid inequalities are equivalent iff one is a positive scalar
/// multiple of the other after both are rewritten to vanish on the shared
/// canonical unbalanced 1-tree.
pub fn equivalent(d: &Digraph, p: usize, a: &Inequality, b: &Inequality) -> bool {
    if (a.sense() == Sense::Eq) != (b.sense() == Sense::Eq) {
        return false;
    }
    let h = canonical_unbalanced_1tree(d);
    let zero = |_: usize| Rational::zero();
    let na = normalize(d, p, &a.as_le(), &h, &zero).expect("canonical 1-tree is a basis");
    let nb = normalize(d, p, &b.as_le(), &h, &zero).expect("canonical 1-tree is a basis");
    let first_a = na.support().next();
    let first_b = nb.support().next();
    match (first_a, first_b) {
        (None, None) => {
            // Zero rows: related by a positive scalar iff the right-hand
            // sides have the same sign.
            let (ra, rb) = (na.rhs().clone(), nb.rhs().clone());
            (ra.is_zero() && rb.is_zero())
                || (!ra.is_zero() && !rb.is_zero() && ra.is_positive() == rb.is_positive())
        }
        (Some(ka), Some(kb)) if ka == kb => {
            let alpha = nb.coeff(ka) / na.coeff(ka);
            if !alpha.is_positive() {
                return false;
            }
            if nb.rhs() != &(na.rhs() * &alpha) {
                return false;
            }
            let mut every = na
                .terms()
                .map(|(k, c)| (k, c * &alpha))
                .collect::<Vec<_>>();
            every.sort_by_key(|(k, _)| *k);
            let theirs: Vec<(usize, Rational)> =
                nb.terms().map(|(k, c)| (k, c.clone())).collect();
            every == theirs
        }
        _ => false,
    }
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_paths;
    use crate::families;
    use crate::ineq::Provenance;
    use itertools::Itertools;

    #[test]
    fn equality_system_rank_is_n_plus_one() {
        for n in [3usize, 5, 7] {
            let d = Digraph::restricted(n).unwrap();
            let sys = EqualitySystem::new(&d, 4);
            assert_eq!(sys.rank(), n + 1);
        }
    }

    #[test]
    fn unbalanced_1tree_examples() {
        let d = Digraph::restricted(3).unwrap();
        let ids = |arcs: &[(usize, usize)]| -> Vec<usize> {
            arcs.iter().map(|&(t, h)| d.arc_index(t, h).unwrap()).collect()
        };
        // Tree {(0,1),(1,2),(2,3)} plus (1,3): fundamental cycle has 2
        // forward, 1 backward arcs.
        assert!(is_unbalanced_1tree(&d, &ids(&[(0, 1), (1, 2), (2, 3), (1, 3)])));
        // Wrong cardinality is never a 1-tree.
        assert!(!is_unbalanced_1tree(&d, &ids(&[(0, 1), (1, 2)])));
        // Anti-parallel pair: the 2-cycle (1,2),(2,1) traverses both arcs in
        // their own direction, so it is unbalanced and the set is a basis.
        let anti = ids(&[(0, 1), (1, 2), (2, 3), (2, 1)]);
        assert!(is_unbalanced_1tree(&d, &anti));
        assert!(basis_check(&d, &anti));
        // A genuinely balanced cycle: (1,2),(3,2),(3,1) is odd hence
        // unbalanced; build the balanced 4-cycle on n=4 instead.
        let d4 = Digraph::restricted(4).unwrap();
        let ids4 = |arcs: &[(usize, usize)]| -> Vec<usize> {
            arcs.iter().map(|&(t, h)| d4.arc_index(t, h).unwrap()).collect()
        };
        // Tree {(0,1),(1,2),(3,2),(3,4)} plus (1,4): cycle 1→2←3→4←1 has two
        // forward and two backward arcs; swap balance by reversing one arc.
        let balanced = ids4(&[(0, 1), (1, 2), (3, 2), (3, 4), (1, 4)]);
        assert!(!is_unbalanced_1tree(&d4, &balanced));
        assert!(!basis_check(&d4, &balanced));
    }

    #[test]
    fn theorem3_exhaustive_at_n4() {
        // Over all C(12,5) = 792 five-arc subsets: basis nonsingularity
        // coincides with the unbalanced-1-tree predicate, both directions.
        let d = Digraph::restricted(4).unwrap();
        let mut checked = 0usize;
        for subset in (0..d.arc_count()).combinations(d.n() + 1) {
            assert_eq!(
                basis_check(&d, &subset),
                is_unbalanced_1tree(&d, &subset),
                "subset {subset:?}"
            );
            checked += 1;
        }
        assert_eq!(checked, 792);
    }

    #[test]
    fn canonical_1tree_is_lex_minimal() {
        let d = Digraph::restricted(5).unwrap();
        let h = canonical_unbalanced_1tree(&d);
        assert_eq!(h.len(), 6);
        assert!(is_unbalanced_1tree(&d, &h));
        // No lexicographically smaller basis exists: check against a full
        // scan at this size.
        let best = (0..d.arc_count())
            .combinations(d.n() + 1)
            .find(|s| basis_check(&d, s))
            .unwrap();
        assert_eq!(h, best);
    }

    #[test]
    fn normalize_identity_and_annihilation() {
        let d = Digraph::restricted(5).unwrap();
        let p = 4;
        let h = canonical_unbalanced_1tree(&d);
        // Prescribing a row's own coefficients keeps it unchanged (zero
        // multipliers solve the system).
        let degree = families::gen_degree(&d, 1).unwrap();
        let own = |a: usize| degree.coeff(a);
        let same = normalize(&d, p, &degree, &h, &own).unwrap();
        assert_eq!(same, degree);
        // x(A) ≤ p normalizes to 0 ≤ 0: subtract the cardinality row.
        let card = Inequality::new(
            (0..d.arc_count()).map(|k| (k, rat(1))),
            Sense::Le,
            rat(p as i64),
            Provenance::custom("cardinality as inequality"),
        );
        let zero = |_: usize| Rational::zero();
        let z = normalize(&d, p, &card, &h, &zero).unwrap();
        assert!(z.is_zero_row());
        assert!(z.rhs().is_zero());
    }

    #[test]
    fn normalize_preserves_tight_sets_and_is_idempotent() {
        let d = Digraph::restricted(6).unwrap();
        let p = 4;
        let h = canonical_unbalanced_1tree(&d);
        let zero = |_: usize| Rational::zero();
        let mincut = families::gen_min_cut(&d, &[0, 1, 6].into_iter().collect()).unwrap();
        let norm = normalize(&d, p, &mincut, &h, &zero).unwrap();
        for &a in &h {
            assert!(norm.coeff(a).is_zero());
        }
        let paths = enumerate_paths(&d, p).unwrap();
        for v in &paths.vectors {
            assert!(norm.satisfied_by(v));
            assert_eq!(mincut.tight_on(v), norm.tight_on(v));
        }
        let again = normalize(&d, p, &norm, &h, &zero).unwrap();
        assert_eq!(again, norm);
    }

    #[test]
    fn rejects_non_basis() {
        let d = Digraph::restricted(4).unwrap();
        let ids: Vec<usize> = (0..5).collect();
        if !basis_check(&d, &ids) {
            let degree = families::gen_degree(&d, 1).unwrap();
            let zero = |_: usize| Rational::zero();
            assert!(normalize(&d, 4, &degree, &ids, &zero).is_err());
        }
    }

    #[test]
    fn equivalence_examples() {
        let d = Digraph::restricted(6).unwrap();
        let p = 4;
        let degree1 = families::gen_degree(&d, 1).unwrap();
        let scaled = Inequality::new(
            degree1.terms().map(|(k, c)| (k, c * rat(2))),
            degree1.sense(),
            degree1.rhs() * rat(2),
            Provenance::custom("scaled degree"),
        );
        assert!(equivalent(&d, p, &degree1, &scaled));
        let degree2 = families::gen_degree(&d, 2).unwrap();
        assert!(!equivalent(&d, p, &degree1, &degree2));
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let d = Digraph::restricted(5).unwrap();
        let p = 4;
        let pool = vec![
            families::gen_degree(&d, 1).unwrap(),
            families::gen_degree(&d, 2).unwrap(),
            families::gen_min_cut(&d, &[0, 1, 5].into_iter().collect()).unwrap(),
            families::gen_nonneg(&d, 1, 2).unwrap(),
            Inequality::new(
                families::gen_degree(&d, 1)
                    .unwrap()
                    .terms()
                    .map(|(k, c)| (k, c * rat(3))),
                Sense::Le,
                rat(3),
                Provenance::custom("scaled"),
            ),
        ];
        for a in &pool {
            assert!(equivalent(&d, p, a, a), "reflexive");
        }
        for a in &pool {
            for b in &pool {
                assert_eq!(equivalent(&d, p, a, b), equivalent(&d, p, b, a), "symmetric");
            }
        }
        for a in &pool {
            for b in &pool {
                for c in &pool {
                    if equivalent(&d, p, a, b) && equivalent(&d, p, b, c) {
                        assert!(equivalent(&d, p, a, c), "transitive");
                    }
                }
            }
        }
    }
}
