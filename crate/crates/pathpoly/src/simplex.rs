//! Exact rational primal simplex with bounded variables, two phases, and
//! Bland's anti-cycling rule. Deterministic: least-index entering and
//! leaving choices everywhere, so solves are reproducible bit for bit.

use num_traits::Zero;

use crate::ineq::Sense;
use crate::rational::{rat, Rational};

/// min objective · x subject to sparse rows and per-variable bounds.
/// `None` bounds are infinite.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub rows: Vec<(Vec<(usize, Rational)>, Sense, Rational)>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// All variables boxed into [0, 1], no rows yet.
    pub fn boxed(num_vars: usize, objective: Vec<Rational>) -> Self {
        LinearProgram {
            num_vars,
            objective,
            rows: Vec::new(),
            lower: vec![Some(rat(0)); num_vars],
            upper: vec![Some(rat(1)); num_vars],
        }
    }

    pub fn push_row(&mut self, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) {
        self.rows.push((coeffs, sense, rhs));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// One dual multiplier per row (sign convention: reduced cost of the
    /// row's slack), enough for weak-duality audits.
    pub duals: Vec<Rational>,
}

struct Tableau {
    m: usize,
    ncols: usize,
    structurals: usize,
    tab: Vec<Vec<Rational>>, // m × ncols, equals B⁻¹ · A_all
    rhs: Vec<Rational>,      // B⁻¹ · b
    basis: Vec<usize>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    at_upper: Vec<bool>, // nonbasic rest position (false = at lower)
}

impl Tableau {
    fn value_of_nonbasic(&self, j: usize) -> Rational {
        if self.at_upper[j] {
            self.upper[j].clone().expect("nonbasic rests at a finite bound")
        } else {
            self.lower[j].clone().expect("nonbasic rests at a finite bound")
        }
    }

    /// Current values of the basic variables.
    fn basic_values(&self) -> Vec<Rational> {
        let mut vals = self.rhs.clone();
        let in_basis = self.basis_mask();
        for j in 0..self.ncols {
            if in_basis[j] {
                continue;
            }
            let xj = self.value_of_nonbasic(j);
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.m {
                if !self.tab[i][j].is_zero() {
                    let delta = &self.tab[i][j] * &xj;
                    vals[i] -= delta;
                }
            }
        }
        vals
    }

    fn basis_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ncols];
        for &b in &self.basis {
            mask[b] = true;
        }
        mask
    }

    fn pivot(&mut self, row: usize, col: usize, cost_row: &mut [Rational], cost_rhs: &mut Rational) {
        let piv = self.tab[row][col].clone();
        for v in self.tab[row].iter_mut() {
            *v /= &piv;
        }
        self.rhs[row] /= &piv;
        for i in 0..self.m {
            if i == row || self.tab[i][col].is_zero() {
                continue;
            }
            let f = self.tab[i][col].clone();
            for j in 0..self.ncols {
                if !self.tab[row][j].is_zero() {
                    let delta = &self.tab[row][j] * &f;
                    self.tab[i][j] -= delta;
                }
            }
            let delta = &self.rhs[row] * &f;
            self.rhs[i] -= delta;
        }
        if !cost_row[col].is_zero() {
            let f = cost_row[col].clone();
            for j in 0..self.ncols {
                if !self.tab[row][j].is_zero() {
                    let delta = &self.tab[row][j] * &f;
                    cost_row[j] -= delta;
                }
            }
            let delta = &self.rhs[row] * &f;
            *cost_rhs -= delta;
        }
        self.basis[row] = col;
    }

    /// Bland-rule minimization of the given cost vector. Returns false on
    /// unboundedness.
    fn minimize(&mut self, cost: &[Rational]) -> bool {
        // Reduced cost row: c − c_B B⁻¹ A, built from the current tableau.
        let mut cost_row = cost.to_vec();
        let mut cost_rhs = Rational::zero();
        for i in 0..self.m {
            let cb = cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.tab[i][j].is_zero() {
                    let delta = &self.tab[i][j] * &cb;
                    cost_row[j] -= delta;
                }
            }
            let delta = &self.rhs[i] * &cb;
            cost_rhs -= delta;
        }
        loop {
            let in_basis = self.basis_mask();
            let mut entering: Option<(usize, bool)> = None; // (col, increase)
            for j in 0..self.ncols {
                if in_basis[j] {
                    continue;
                }
                let d = &cost_row[j];
                if d.is_zero() {
                    continue;
                }
                let negative = *d < Rational::zero();
                if negative && !self.at_upper[j] {
                    entering = Some((j, true));
                    break;
                }
                if !negative && self.at_upper[j] {
                    entering = Some((j, false));
                    break;
                }
            }
            let Some((col, increase)) = entering else {
                return true; // optimal
            };
            // Ratio test: how far can the entering variable move?
            let basics = self.basic_values();
            let dir = if increase { rat(1) } else { rat(-1) };
            // Bound flip of the entering variable itself.
            let mut best: Option<(Rational, Option<usize>)> = match (&self.lower[col], &self.upper[col]) {
                (Some(l), Some(u)) => Some((u - l, None)),
                _ => None,
            };
            for i in 0..self.m {
                let alpha = &self.tab[i][col];
                if alpha.is_zero() {
                    continue;
                }
                let delta = -(&dir * alpha); // rate of change of basic i
                let k = self.basis[i];
                let limit = if delta > Rational::zero() {
                    self.upper[k].as_ref().map(|u| (u - &basics[i]) / &delta)
                } else {
                    self.lower[k].as_ref().map(|l| (l - &basics[i]) / &delta)
                };
                let Some(limit) = limit else { continue };
                let better = match &best {
                    None => true,
                    Some((t, leave)) => {
                        limit < *t
                            || (limit == *t
                                && match leave {
                                    None => true,
                                    Some(r) => self.basis[i] < self.basis[*r],
                                })
                    }
                };
                if better {
                    best = Some((limit, Some(i)));
                }
            }
            let Some((_t, leaving)) = best else {
                return false; // unbounded direction
            };
            match leaving {
                None => {
                    // Bound flip: entering moves to its other bound.
                    self.at_upper[col] = !self.at_upper[col];
                }
                Some(row) => {
                    let old_basic = self.basis[row];
                    let basics_now = self.basic_values();
                    let alpha = &self.tab[row][col];
                    let delta = -(&dir * alpha);
                    // Does the leaving variable settle at its lower or upper bound?
                    let leaves_at_upper = delta > Rational::zero();
                    self.pivot(row, col, &mut cost_row, &mut cost_rhs);
                    self.at_upper[old_basic] = leaves_at_upper;
                    // The entering variable's rest flag is irrelevant while
                    // basic; clear for determinism.
                    self.at_upper[col] = false;
                    let _ = basics_now;
                }
            }
        }
    }
}

/// Solve the LP exactly. Phase 1 drives artificial variables out, phase 2
/// minimizes the real objective.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    let m = lp.rows.len();
    let structurals = lp.num_vars;
    let nslack = m;
    let ncols = structurals + nslack + m; // + artificials
    let mut lower = vec![None; ncols];
    let mut upper = vec![None; ncols];
    for j in 0..structurals {
        lower[j] = lp.lower[j].clone();
        upper[j] = lp.upper[j].clone();
        assert!(
            lower[j].is_some() || upper[j].is_some(),
            "free variables are not needed here"
        );
    }
    for (i, (_, sense, _)) in lp.rows.iter().enumerate() {
        let j = structurals + i;
        match sense {
            Sense::Le => lower[j] = Some(rat(0)),            // slack ≥ 0
            Sense::Ge => upper[j] = Some(rat(0)),            // slack ≤ 0
            Sense::Eq => {
                lower[j] = Some(rat(0));
                upper[j] = Some(rat(0));
            }
        }
    }
    // Dense row data.
    let mut dense = vec![vec![Rational::zero(); ncols]; m];
    let mut b = vec![Rational::zero(); m];
    for (i, (coeffs, _, rhs)) in lp.rows.iter().enumerate() {
        for (j, c) in coeffs {
            dense[i][*j] += c;
        }
        dense[i][structurals + i] = rat(1);
        b[i] = rhs.clone();
    }
    // Starting point: structurals at a finite bound (prefer lower), slacks
    // at their nearest feasible bound, artificials absorbing the residual.
    let mut at_upper = vec![false; ncols];
    for j in 0..structurals {
        if lower[j].is_none() {
            at_upper[j] = true;
        }
    }
    let start_val = |j: usize, at_up: bool| -> Rational {
        if at_up {
            upper[j].clone().unwrap()
        } else {
            lower[j].clone().unwrap()
        }
    };
    let mut residual = b.clone();
    for j in 0..structurals {
        let v = start_val(j, at_upper[j]);
        if v.is_zero() {
            continue;
        }
        for i in 0..m {
            if !dense[i][j].is_zero() {
                let delta = &dense[i][j] * &v;
                residual[i] -= delta;
            }
        }
    }
    // Pick the slack rest position that minimizes the residual the
    // artificial must cover.
    for i in 0..m {
        let j = structurals + i;
        // slack coefficient is +1: s = residual cancels when s = residual.
        let lo = lower[j].clone();
        let hi = upper[j].clone();
        let want = residual[i].clone();
        let clamped = match (&lo, &hi) {
            (Some(l), _) if want < *l => l.clone(),
            (_, Some(u)) if want > *u => u.clone(),
            (Some(l), _) if lo.is_some() && hi.is_none() => {
                if want >= *l { want.clone() } else { l.clone() }
            }
            _ => {
                // Two-sided or upper-only: clamp into range.
                match (&lo, &hi) {
                    (Some(l), Some(u)) => want.clone().max(l.clone()).min(u.clone()),
                    (None, Some(u)) => want.clone().min(u.clone()),
                    (Some(l), None) => want.clone().max(l.clone()),
                    (None, None) => want.clone(),
                }
            }
        };
        // Rest the slack at whichever bound (or value) we clamped to; a
        // slack not at a bound is only possible when it exactly matches the
        // residual, in which case either rest position works with a zero
        // artificial. Choose bounds deterministically.
        let rest_upper = match (&lo, &hi) {
            (Some(l), _) if clamped == *l => false,
            (_, Some(u)) if clamped == *u => true,
            (Some(_), _) => false,
            (_, Some(_)) => true,
            _ => false,
        };
        at_upper[j] = rest_upper;
        let rest = if rest_upper { hi.clone().unwrap() } else { lo.clone().unwrap() };
        residual[i] -= rest;
    }
    // Artificial columns: sign chosen so they start at a nonnegative value.
    for i in 0..m {
        let j = structurals + nslack + i;
        lower[j] = Some(rat(0));
        upper[j] = None;
        dense[i][j] = if residual[i] < Rational::zero() { rat(-1) } else { rat(1) };
    }
    let basis: Vec<usize> = (0..m).map(|i| structurals + nslack + i).collect();
    let mut t = Tableau {
        m,
        ncols,
        structurals,
        tab: dense,
        rhs: b,
        basis,
        lower,
        upper,
        at_upper,
    };
    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); ncols];
    for j in (structurals + nslack)..ncols {
        phase1[j] = rat(1);
    }
    if !t.minimize(&phase1) {
        unreachable!("phase 1 objective is bounded below by zero");
    }
    let basics = t.basic_values();
    let mut infeas = Rational::zero();
    for (i, &bvar) in t.basis.iter().enumerate() {
        if bvar >= structurals + nslack {
            infeas += &basics[i];
        }
    }
    for j in (structurals + nslack)..ncols {
        if !t.basis.contains(&j) {
            infeas += t.value_of_nonbasic(j);
        }
    }
    if !infeas.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Fix artificials to zero for phase 2.
    for j in (structurals + nslack)..ncols {
        t.upper[j] = Some(rat(0));
        t.at_upper[j] = false;
    }
    let mut phase2 = vec![Rational::zero(); ncols];
    phase2[..structurals].clone_from_slice(&lp.objective);
    if !t.minimize(&phase2) {
        return LpOutcome::Unbounded;
    }
    // Read out the solution.
    let basics = t.basic_values();
    let in_basis = t.basis_mask();
    let mut x = vec![Rational::zero(); ncols];
    for j in 0..ncols {
        if !in_basis[j] {
            x[j] = t.value_of_nonbasic(j);
        }
    }
    for (i, &bvar) in t.basis.iter().enumerate() {
        x[bvar] = basics[i].clone();
    }
    let value: Rational = (0..structurals).map(|j| &lp.objective[j] * &x[j]).sum();
    // Duals from the final reduced costs of the slack columns.
    let mut cost_row = phase2.clone();
    for i in 0..t.m {
        let cb = phase2[t.basis[i]].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..t.ncols {
            if !t.tab[i][j].is_zero() {
                let delta = &t.tab[i][j] * &cb;
                cost_row[j] -= delta;
            }
        }
    }
    let duals: Vec<Rational> = (0..m).map(|i| -cost_row[structurals + i].clone()).collect();
    x.truncate(structurals);
    LpOutcome::Optimal(LpSolution { value, x, duals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sparse(v: &[(usize, i64)]) -> Vec<(usize, Rational)> {
        v.iter().map(|&(j, c)| (j, rat(c))).collect()
    }

    #[test]
    fn minimal_equality_lp() {
        // min 0 over { x0 = 1, x1 = 0 } with box bounds.
        let mut lp = LinearProgram::boxed(2, vec![rat(0), rat(0)]);
        lp.push_row(sparse(&[(0, 1)]), Sense::Eq, rat(1));
        lp.push_row(sparse(&[(1, 1)]), Sense::Eq, rat(0));
        match lp_solve(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, rat(0));
                assert_eq!(sol.x, vec![rat(1), rat(0)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn simple_minimization() {
        // min x0 + x1 s.t. x0 + x1 >= 3/2, 0 <= x <= 1.
        let mut lp = LinearProgram::boxed(2, vec![rat(1), rat(1)]);
        lp.push_row(sparse(&[(0, 1), (1, 1)]), Sense::Ge, ratio(3, 2));
        match lp_solve(&lp) {
            LpOutcome::Optimal(sol) => assert_eq!(sol.value, ratio(3, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_costs_hit_upper_bounds() {
        // min -x0 - 2 x1 s.t. x0 + x1 <= 1: optimum picks x1 = 1.
        let mut lp = LinearProgram::boxed(2, vec![rat(-1), rat(-2)]);
        lp.push_row(sparse(&[(0, 1), (1, 1)]), Sense::Le, rat(1));
        match lp_solve(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, rat(-2));
                assert_eq!(sol.x, vec![rat(0), rat(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        let mut lp = LinearProgram::boxed(1, vec![rat(0)]);
        lp.push_row(sparse(&[(0, 1)]), Sense::Ge, rat(2)); // x <= 1 forces infeasible
        assert_eq!(lp_solve(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // max x0 (no upper bound): min -x0 with x0 >= 0 unbounded.
        let lp = LinearProgram {
            num_vars: 1,
            objective: vec![rat(-1)],
            rows: vec![],
            lower: vec![Some(rat(0))],
            upper: vec![None],
        };
        assert_eq!(lp_solve(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_vertex_appears() {
        // min -x0 - x1 s.t. 2x0 + x1 <= 2, x0 + 2x1 <= 2: optimum (2/3, 2/3).
        let mut lp = LinearProgram::boxed(2, vec![rat(-1), rat(-1)]);
        lp.push_row(sparse(&[(0, 2), (1, 1)]), Sense::Le, rat(2));
        lp.push_row(sparse(&[(0, 1), (1, 2)]), Sense::Le, rat(2));
        match lp_solve(&lp) {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.x, vec![ratio(2, 3), ratio(2, 3)]);
                assert_eq!(sol.value, ratio(-4, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn weak_duality_on_random_lps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for case in 0..40 {
            let nv = rng.gen_range(2..6);
            let nr = rng.gen_range(1..5);
            let mut lp = LinearProgram::boxed(
                nv,
                (0..nv).map(|_| rat(rng.gen_range(-5..=5))).collect(),
            );
            for _ in 0..nr {
                let coeffs: Vec<(usize, Rational)> = (0..nv)
                    .filter_map(|j| {
                        let c = rng.gen_range(-3..=3);
                        (c != 0).then(|| (j, rat(c)))
                    })
                    .collect();
                let sense = match rng.gen_range(0..3) {
                    0 => Sense::Le,
                    1 => Sense::Ge,
                    _ => Sense::Eq,
                };
                lp.push_row(coeffs, sense, rat(rng.gen_range(-2..=2)));
            }
            let LpOutcome::Optimal(sol) = lp_solve(&lp) else {
                continue;
            };
            // Primal feasibility, exactly.
            for (coeffs, sense, rhs) in &lp.rows {
                let lhs: Rational = coeffs.iter().map(|(j, c)| c * &sol.x[*j]).sum();
                let ok = match sense {
                    Sense::Le => lhs <= *rhs,
                    Sense::Ge => lhs >= *rhs,
                    Sense::Eq => lhs == *rhs,
                };
                assert!(ok, "case {case}: row violated");
            }
            for j in 0..nv {
                assert!(sol.x[j] >= rat(0) && sol.x[j] <= rat(1));
            }
            // Weak duality: y·b plus bound terms of the Lagrangian equals
            // the optimal value (complementary slackness at optimality).
            // Reduced costs on structurals: c_j − y·A_j; at a box optimum
            // value = y·b + Σ_j max-min contribution. Verify via the
            // Lagrangian identity c·x = y·b + Σ_j (c_j − y·A_j) x_j.
            let mut lag = Rational::zero();
            for (i, (_, _, rhs)) in lp.rows.iter().enumerate() {
                lag += &sol.duals[i] * rhs;
            }
            for j in 0..nv {
                let mut red = lp.objective[j].clone();
                for (i, (coeffs, _, _)) in lp.rows.iter().enumerate() {
                    for (jj, c) in coeffs {
                        if *jj == j {
                            red -= &sol.duals[i] * c;
                        }
                    }
                }
                lag += &red * &sol.x[j];
            }
            assert_eq!(lag, sol.value, "case {case}: Lagrangian identity");
        }
    }
}
