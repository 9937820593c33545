//! Exact rational scalars and dense rational matrices.
//!
//! Every number in this crate is a reduced fraction with positive
//! denominator; there is no floating point anywhere. Rank, solve and
//! nullspace are plain Gaussian elimination, which at desk scale
//! (a few hundred rows) is entirely adequate. A fraction-free integer
//! rank accumulator backs the hot loops (tight-set ranks over 0/1
//! incidence data), falling back to big integers on overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `rat(3)` = 3/1.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `ratio(2, -4)` = -1/2 (always reduced, denominator positive).
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "num/den" or a bare integer "num".
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(num))
        }
    }
}

/// Canonical file form: always "num/den", including "/1".
pub fn fmt_rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Dense matrix of exact rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Exact linear rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut acc = RankAccumulator::new(self.cols);
        for i in 0..self.rows {
            acc.add(self.row(i).to_vec());
        }
        acc.rank()
    }

    /// Any exact solution of `self * x = b`, or None if inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve_any(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let cols = self.cols;
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].clone();
            for v in aug[r][c..].iter_mut() {
                *v /= &inv;
            }
            for i in 0..aug.len() {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=cols {
                        let sub = &aug[r][j] * &f;
                        aug[i][j] -= sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
            if r == aug.len() {
                break;
            }
        }
        // Consistency: no row 0 = nonzero.
        for row in aug.iter().skip(r) {
            if row[..cols].iter().all(|v| v.is_zero()) && !row[cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); cols];
        for &(pr, pc) in &pivots {
            x[pc] = aug[pr][cols].clone();
        }
        Some(x)
    }

    /// Basis of the right nullspace, denominators cleared to integers.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let mut aug: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivot_col_of: Vec<Option<usize>> = Vec::new();
        let mut is_pivot = vec![false; cols];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].clone();
            for v in aug[r][c..].iter_mut() {
                *v /= &inv;
            }
            for i in 0..aug.len() {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..cols {
                        let sub = &aug[r][j] * &f;
                        aug[i][j] -= sub;
                    }
                }
            }
            pivot_col_of.push(Some(c));
            is_pivot[c] = true;
            r += 1;
            if r == aug.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (pr, pc) in pivot_col_of.iter().enumerate() {
                if let Some(pc) = pc {
                    v[*pc] = -aug[pr][free].clone();
                }
            }
            // Clear denominators so downstream integer kernels apply.
            let lcm = v
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            let lcm = Rational::from_integer(lcm);
            for x in v.iter_mut() {
                *x *= &lcm;
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental rank over exact rationals: feed rows, read off the rank.
pub struct RankAccumulator {
    cols: usize,
    /// Reduced rows sorted by leading column, leading coefficient 1.
    basis: Vec<(usize, Vec<Rational>)>,
}

impl RankAccumulator {
    pub fn new(cols: usize) -> Self {
        RankAccumulator { cols, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Returns true when the row was independent of everything seen so far.
    pub fn add(&mut self, mut row: Vec<Rational>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (lead, b) in &self.basis {
            if !row[*lead].is_zero() {
                let f = row[*lead].clone();
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    if !y.is_zero() {
                        *x -= y * &f;
                    }
                }
            }
        }
        let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[lead].clone();
        for v in row[lead..].iter_mut() {
            *v /= &inv;
        }
        let pos = self.basis.partition_point(|(l, _)| *l < lead);
        self.basis.insert(pos, (lead, row));
        true
    }
}

/// Fraction-free integer rank accumulator for 0/±1-ish data. Rows are kept
/// gcd-normalized; arithmetic runs in i128 and switches the whole state to
/// BigInt on the first overflow.
pub struct IntRankAccumulator {
    cols: usize,
    small: Option<Vec<(usize, Vec<i128>)>>,
    big: Vec<(usize, Vec<BigInt>)>,
}

impl IntRankAccumulator {
    pub fn new(cols: usize) -> Self {
        IntRankAccumulator { cols, small: Some(Vec::new()), big: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        match &self.small {
            Some(b) => b.len(),
            None => self.big.len(),
        }
    }

    pub fn add(&mut self, row: &[i64]) -> bool {
        assert_eq!(row.len(), self.cols);
        if self.small.is_some() {
            let r: Vec<i128> = row.iter().map(|&v| v as i128).collect();
            match self.try_add_small(r) {
                Some(grew) => return grew,
                None => self.demote_to_big(),
            }
        }
        let r: Vec<BigInt> = row.iter().map(|&v| BigInt::from(v)).collect();
        self.add_big(r)
    }

    fn try_add_small(&mut self, mut row: Vec<i128>) -> Option<bool> {
        let basis = self.small.as_ref().unwrap();
        for (lead, b) in basis {
            if row[*lead] != 0 {
                // row := row * b_lead - b * row_lead, fraction free.
                let rl = row[*lead];
                let bl = b[*lead];
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    let a = x.checked_mul(bl)?;
                    let c = y.checked_mul(rl)?;
                    *x = a.checked_sub(c)?;
                }
                normalize_i128(&mut row);
            }
        }
        let Some(lead) = row.iter().position(|&v| v != 0) else {
            return Some(false);
        };
        normalize_i128(&mut row);
        let basis = self.small.as_mut().unwrap();
        let pos = basis.partition_point(|(l, _)| *l < lead);
        basis.insert(pos, (lead, row));
        Some(true)
    }

    fn demote_to_big(&mut self) {
        let small = self.small.take().unwrap();
        self.big = small
            .into_iter()
            .map(|(l, r)| (l, r.into_iter().map(BigInt::from).collect()))
            .collect();
    }

    fn add_big(&mut self, mut row: Vec<BigInt>) -> bool {
        for (lead, b) in &self.big {
            if !row[*lead].is_zero() {
                let rl = row[*lead].clone();
                let bl = b[*lead].clone();
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    *x = &*x * &bl - y * &rl;
                }
                normalize_big(&mut row);
            }
        }
        let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        normalize_big(&mut row);
        let pos = self.big.partition_point(|(l, _)| *l < lead);
        self.big.insert(pos, (lead, row));
        true
    }
}

fn normalize_i128(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = num_integer::gcd(g, v.abs());
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

fn normalize_big(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        g = num_integer::gcd(g, v.abs());
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Affine dimension of a set of integer points: rank of the differences
/// from the first point. Empty input is the caller's error.
pub fn affine_dimension_int(points: &[Vec<i64>]) -> Option<usize> {
    let first = points.first()?;
    let mut acc = IntRankAccumulator::new(first.len());
    let mut diff = vec![0i64; first.len()];
    for p in &points[1..] {
        for ((d, a), b) in diff.iter_mut().zip(p.iter()).zip(first.iter()) {
            *d = a - b;
        }
        acc.add(&diff);
    }
    Some(acc.rank())
}

/// Affine dimension over exact rationals (general-purpose variant).
pub fn affine_dimension(points: &[Vec<Rational>]) -> Option<usize> {
    let first = points.first()?;
    let mut acc = RankAccumulator::new(first.len());
    for p in &points[1..] {
        let diff: Vec<Rational> = p.iter().zip(first.iter()).map(|(a, b)| a - b).collect();
        acc.add(diff);
    }
    Some(acc.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn rank_zero_and_identity() {
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let r = parse_rat("-6/4").unwrap();
        assert_eq!(r, ratio(-3, 2));
        assert_eq!(fmt_rat(&r), "-3/2");
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(fmt_rat(&rat(7)), "7/1");
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn solve_any_consistency() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(1), rat(-1)],
        ]);
        let x = m.solve_any(&[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        // Inconsistent system.
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(2), rat(2)],
        ]);
        assert!(m.solve_any(&[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn nullspace_dimensions() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1), rat(2), rat(3)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = v
                .iter()
                .zip(m.row(0))
                .map(|(a, b)| a * b)
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn integer_and_rational_rank_agree_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..8);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let mut acc = IntRankAccumulator::new(cols);
            for r in &m {
                acc.add(r);
            }
            let rm = RationalMatrix::from_rows(
                m.iter()
                    .map(|r| r.iter().map(|&v| rat(v)).collect())
                    .collect(),
            );
            assert_eq!(acc.rank(), rm.rank());
        }
    }

    #[test]
    fn affine_dimension_basics() {
        // A single point spans an affine space of dimension 0.
        assert_eq!(affine_dimension_int(&[vec![1, 0, 1]]), Some(0));
        // Three collinear points in the plane.
        assert_eq!(
            affine_dimension_int(&[vec![0, 0], vec![1, 1], vec![2, 2]]),
            Some(1)
        );
        assert_eq!(affine_dimension_int(&[]), None);
    }

    #[test]
    fn affine_dimension_is_permutation_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Vec<i64>> = (0..10)
            .map(|_| (0..6).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let base = affine_dimension_int(&pts);
        for rot in 1..pts.len() {
            let mut shuffled = pts.clone();
            shuffled.rotate_left(rot);
            assert_eq!(affine_dimension_int(&shuffled), base);
        }
    }
}
