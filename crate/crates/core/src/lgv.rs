//! Weighted monotone lattice paths and vertex-disjoint path families.
//!
//! Paths use unit East and North steps. A North step taken at an x-coordinate
//! of the marked parity has weight `q`, every other step weight 1. For the
//! index pair `(m, k)`, family member `i` runs from `(2i, -2i)` to
//! `(2i + 3, m - k - 1 - i)`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{QPoly, TPoly};
use crate::linalg::{det_bareiss, LinalgError, PolyMatrix};
use crate::qcombinatorics::binomial;
use crate::verdict::Verdict;

/// Default cap on the number of path tuples examined by brute force.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LgvError {
    #[error("need 1 <= k <= m, got m={m}, k={k}")]
    IndexOutOfRange { m: usize, k: usize },
    #[error("brute force needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    East,
    North,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, x: i64) -> bool {
        (x.rem_euclid(2) == 0) == (self == Parity::Even)
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Which x-parity of a North step carries the weight `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightConvention {
    pub marked_parity: Parity,
}

impl WeightConvention {
    pub const EVEN: Self = Self { marked_parity: Parity::Even };
    pub const ODD: Self = Self { marked_parity: Parity::Odd };
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: LatticePoint,
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn end(&self) -> LatticePoint {
        self.points().last().copied().unwrap_or(self.start)
    }

    /// Every visited lattice point, start and end included.
    pub fn points(&self) -> Vec<LatticePoint> {
        let mut p = self.start;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(p);
        for s in &self.steps {
            match s {
                Step::East => p.x += 1,
                Step::North => p.y += 1,
            }
            out.push(p);
        }
        out
    }

    pub fn north_steps(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::North).count()
    }

    /// Exponent of `q` in this path's weight.
    pub fn weight_exponent(&self, w: WeightConvention) -> usize {
        let mut x = self.start.x;
        let mut count = 0;
        for s in &self.steps {
            match s {
                Step::East => x += 1,
                Step::North if w.marked_parity.matches(x) => count += 1,
                Step::North => {}
            }
        }
        count
    }
}

/// A tuple of paths, member `i` joining start `i` to end `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pub paths: Vec<LatticePath>,
}

impl PathFamily {
    pub fn weight_exponent(&self, w: WeightConvention) -> usize {
        self.paths.iter().map(|p| p.weight_exponent(w)).sum()
    }

    pub fn north_steps(&self) -> usize {
        self.paths.iter().map(LatticePath::north_steps).sum()
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = HashSet::new();
        self.paths.iter().flat_map(LatticePath::points).all(|p| seen.insert(p))
    }
}

/// Start and end points for the `(m, k)` configuration.
pub fn endpoints(m: usize, k: usize) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>), LgvError> {
    if k == 0 || k > m {
        return Err(LgvError::IndexOutOfRange { m, k });
    }
    let (m, k) = (m as i64, k as i64);
    let starts = (0..k).map(|i| LatticePoint::new(2 * i, -2 * i)).collect();
    let ends = (0..k).map(|j| LatticePoint::new(2 * j + 3, m - k - 1 - j)).collect();
    Ok((starts, ends))
}

/// All monotone East/North paths from `a` to `b`.
pub fn enumerate_paths(a: LatticePoint, b: LatticePoint) -> Vec<LatticePath> {
    if b.x < a.x || b.y < a.y {
        return Vec::new();
    }
    let (dx, dy) = ((b.x - a.x) as usize, (b.y - a.y) as usize);
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(dx + dy);
    fn walk(dx: usize, dy: usize, a: LatticePoint, steps: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if dx == 0 && dy == 0 {
            out.push(LatticePath { start: a, steps: steps.clone() });
            return;
        }
        if dx > 0 {
            steps.push(Step::East);
            walk(dx - 1, dy, a, steps, out);
            steps.pop();
        }
        if dy > 0 {
            steps.push(Step::North);
            walk(dx, dy - 1, a, steps, out);
            steps.pop();
        }
    }
    walk(dx, dy, a, &mut steps, &mut out);
    out
}

pub fn path_weight(p: &LatticePath, w: WeightConvention) -> QPoly {
    QPoly::q_power(p.weight_exponent(w))
}

/// Generating function of paths from `a` to `b`, by dynamic programming over the grid.
pub fn weighted_path_count(a: LatticePoint, b: LatticePoint, w: WeightConvention) -> QPoly {
    if b.x < a.x || b.y < a.y {
        return QPoly::zero();
    }
    let (dx, dy) = ((b.x - a.x) as usize, (b.y - a.y) as usize);
    let north = TPoly::q_power(1);
    // column[y] holds the count for points (x, a.y + y) in the current column
    let mut column: Vec<TPoly> = Vec::with_capacity(dy + 1);
    for xi in 0..=dx {
        let x = a.x + xi as i64;
        let step_weight = if w.marked_parity.matches(x) { north.clone() } else { TPoly::one() };
        for y in 0..=dy {
            let from_west = if xi == 0 {
                if y == 0 { TPoly::one() } else { TPoly::zero() }
            } else {
                column[y].clone()
            };
            let from_south = if y == 0 { TPoly::zero() } else { &column[y - 1] * &step_weight };
            let v = from_west + from_south;
            if xi == 0 {
                column.push(v);
            } else {
                column[y] = v;
            }
        }
    }
    QPoly::try_from(column.pop().expect("non-empty grid")).expect("weights are powers of q")
}

/// The `k × k` matrix of single-pair generating functions, `(start_i, end_j)`.
pub fn lgv_matrix(m: usize, k: usize, w: WeightConvention) -> Result<PolyMatrix<TPoly>, LgvError> {
    let (starts, ends) = endpoints(m, k)?;
    Ok(PolyMatrix::from_fn(k, k, |i, j| weighted_path_count(starts[i], ends[j], w).into_tpoly()))
}

pub fn lgv_determinant(m: usize, k: usize, w: WeightConvention) -> Result<QPoly, LgvError> {
    let det = det_bareiss(&lgv_matrix(m, k, w)?)?;
    Ok(QPoly::try_from(det).expect("entries are q-polynomials"))
}

fn path_count(a: LatticePoint, b: LatticePoint) -> u128 {
    if b.x < a.x || b.y < a.y {
        return 0;
    }
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    binomial(dx + dy, dy).to_u128().unwrap_or(u128::MAX)
}

/// Every vertex-disjoint family pairing start `i` with end `i`.
///
/// Fails when the number of candidate tuples exceeds `budget`.
pub fn nonintersecting_families(m: usize, k: usize, budget: u64) -> Result<Vec<PathFamily>, LgvError> {
    let (starts, ends) = endpoints(m, k)?;
    let needed = starts
        .iter()
        .zip(&ends)
        .fold(1u128, |acc, (a, b)| acc.saturating_mul(path_count(*a, *b)));
    if needed > u128::from(budget) {
        return Err(LgvError::BudgetExceeded { needed, budget });
    }
    let candidates: Vec<Vec<(LatticePath, HashSet<LatticePoint>)>> = starts
        .iter()
        .zip(&ends)
        .map(|(a, b)| {
            enumerate_paths(*a, *b)
                .into_iter()
                .map(|p| {
                    let pts = p.points().into_iter().collect();
                    (p, pts)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    collect_families(&candidates, &mut chosen, &mut out);
    Ok(out)
}

fn collect_families(
    candidates: &[Vec<(LatticePath, HashSet<LatticePoint>)>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<PathFamily>,
) {
    let level = chosen.len();
    if level == candidates.len() {
        let paths = chosen.iter().enumerate().map(|(i, &c)| candidates[i][c].0.clone()).collect();
        out.push(PathFamily { paths });
        return;
    }
    for (idx, (_, pts)) in candidates[level].iter().enumerate() {
        let clashes = chosen
            .iter()
            .enumerate()
            .any(|(i, &c)| !candidates[i][c].1.is_disjoint(pts));
        if !clashes {
            chosen.push(idx);
            collect_families(candidates, chosen, out);
            chosen.pop();
        }
    }
}

/// Σ of weights over all vertex-disjoint families.
pub fn bruteforce_family_sum(m: usize, k: usize, w: WeightConvention, budget: u64) -> Result<QPoly, LgvError> {
    let families = nonintersecting_families(m, k, budget)?;
    let mut counts: Vec<BigInt> = Vec::new();
    for f in &families {
        let e = f.weight_exponent(w);
        if counts.len() <= e {
            counts.resize(e + 1, BigInt::zero());
        }
        counts[e] += 1;
    }
    let mut coeffs = vec![BigInt::zero(); 2 * counts.len()];
    for (e, c) in counts.into_iter().enumerate() {
        coeffs[2 * e] = c;
    }
    Ok(QPoly::try_from(TPoly::new(coeffs)).expect("even exponents only"))
}

/// Result of comparing the two weight conventions on one `(m, k)` instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport {
    pub verdict: Verdict,
    pub families_checked: usize,
}

/// Checks that every single-pair generating function is the same under both
/// conventions, and that for every disjoint family the two weight exponents
/// add up to the family's total number of North steps.
pub fn involution_check(m: usize, k: usize, budget: u64) -> Result<InvolutionReport, LgvError> {
    let even = lgv_matrix(m, k, WeightConvention::EVEN)?;
    let odd = lgv_matrix(m, k, WeightConvention::ODD)?;
    let mut verdict = Verdict::Pass;
    for i in 0..k {
        for j in 0..k {
            verdict = verdict.and(Verdict::compare(format!("entry ({i},{j})"), even.get(i, j), odd.get(i, j)));
        }
    }
    let families = nonintersecting_families(m, k, budget)?;
    for (n, f) in families.iter().enumerate() {
        let sum = f.weight_exponent(WeightConvention::EVEN) + f.weight_exponent(WeightConvention::ODD);
        verdict = verdict.and(Verdict::compare(format!("family {n} exponent sum"), &sum, &f.north_steps()));
    }
    Ok(InvolutionReport { verdict, families_checked: families.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn endpoint_lists() {
        assert_eq!(endpoints(3, 1).unwrap(), (vec![pt(0, 0)], vec![pt(3, 1)]));
        assert_eq!(endpoints(4, 2).unwrap(), (vec![pt(0, 0), pt(2, -2)], vec![pt(3, 1), pt(5, 0)]));
        assert_eq!(endpoints(2, 2).unwrap().1, vec![pt(3, -1), pt(5, -2)]);
        assert_eq!(endpoints(2, 3), Err(LgvError::IndexOutOfRange { m: 2, k: 3 }));
        assert_eq!(endpoints(2, 0), Err(LgvError::IndexOutOfRange { m: 2, k: 0 }));
    }

    #[test]
    fn path_enumeration() {
        let single = enumerate_paths(pt(1, 1), pt(1, 1));
        assert_eq!(single.len(), 1);
        assert!(single[0].steps.is_empty());
        let four = enumerate_paths(pt(0, 0), pt(3, 1));
        assert_eq!(four.len(), 4);
        assert!(four.iter().all(|p| p.end() == pt(3, 1)));
        assert!(enumerate_paths(pt(0, 0), pt(-1, 0)).is_empty());
    }

    #[test]
    fn path_weights() {
        let east = LatticePath { start: pt(0, 0), steps: vec![Step::East; 3] };
        assert_eq!(path_weight(&east, WeightConvention::EVEN), QPoly::one());
        let north_first = LatticePath { start: pt(0, 0), steps: vec![Step::North, Step::East, Step::East, Step::East] };
        assert_eq!(path_weight(&north_first, WeightConvention::EVEN), QPoly::q_power(1));
        assert_eq!(path_weight(&north_first, WeightConvention::ODD), QPoly::one());
        // negative x parity
        let neg = LatticePath { start: pt(-3, 0), steps: vec![Step::North] };
        assert_eq!(neg.weight_exponent(WeightConvention::ODD), 1);
    }

    #[test]
    fn single_pair_counts() {
        assert_eq!(weighted_path_count(pt(0, 0), pt(3, 1), WeightConvention::EVEN), QPoly::from_q_i64s(&[2, 2]));
        assert_eq!(weighted_path_count(pt(4, 4), pt(4, 4), WeightConvention::EVEN), QPoly::one());
        assert_eq!(weighted_path_count(pt(0, 0), pt(3, -1), WeightConvention::EVEN), QPoly::zero());
    }

    #[test]
    fn dp_matches_enumeration() {
        for w in [WeightConvention::EVEN, WeightConvention::ODD] {
            for sx in [-1i64, 0, 1] {
                for dx in -1i64..=6 {
                    for dy in -1i64..=6 {
                        let (a, b) = (pt(sx, 2), pt(sx + dx, 2 + dy));
                        let brute = enumerate_paths(a, b)
                            .iter()
                            .fold(QPoly::zero(), |acc, p| acc + path_weight(p, w));
                        let dp = weighted_path_count(a, b, w);
                        assert_eq!(dp, brute, "{a:?} -> {b:?}");
                        if dx >= 0 && dy >= 0 {
                            assert_eq!(dp.eval_one(), binomial(dx + dy, dy));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_family_sums() {
        assert_eq!(lgv_determinant(3, 1, WeightConvention::EVEN).unwrap(), QPoly::from_q_i64s(&[2, 2]));
        assert_eq!(lgv_determinant(1, 1, WeightConvention::EVEN).unwrap(), QPoly::zero());
        assert_eq!(
            bruteforce_family_sum(3, 1, WeightConvention::EVEN, DEFAULT_BUDGET).unwrap(),
            QPoly::from_q_i64s(&[2, 2])
        );
        assert_eq!(bruteforce_family_sum(1, 1, WeightConvention::EVEN, DEFAULT_BUDGET).unwrap(), QPoly::zero());
    }

    #[test]
    fn budget_guard() {
        let err = bruteforce_family_sum(8, 3, WeightConvention::EVEN, 10).unwrap_err();
        assert!(matches!(err, LgvError::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn determinant_matches_brute_force_on_small_cases() {
        for m in 1..=6 {
            for k in 1..=m.min(3) {
                let det = lgv_determinant(m, k, WeightConvention::EVEN).unwrap();
                let brute = bruteforce_family_sum(m, k, WeightConvention::EVEN, DEFAULT_BUDGET).unwrap();
                assert_eq!(det, brute, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn involution_small() {
        let r = involution_check(3, 1, DEFAULT_BUDGET).unwrap();
        assert!(r.verdict.is_pass());
        assert_eq!(r.families_checked, 4);
        let empty = involution_check(2, 2, DEFAULT_BUDGET).unwrap();
        assert!(empty.verdict.is_pass());
        assert_eq!(empty.families_checked, 0);
    }

    fn pairwise_disjoint(f: &PathFamily) -> bool {
        for i in 0..f.paths.len() {
            for j in i + 1..f.paths.len() {
                let a = f.paths[i].points();
                let b = f.paths[j].points();
                if a.iter().any(|p| b.contains(p)) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn disjointness_filter_agrees_with_pairwise_check() {
        use proptest::prelude::*;
        use proptest::test_runner::TestRunner;
        let step = prop_oneof![Just(Step::East), Just(Step::North)];
        let path = ((-3i64..3, -3i64..3), prop::collection::vec(step, 0..6))
            .prop_map(|((x, y), steps)| LatticePath { start: pt(x, y), steps });
        let family = prop::collection::vec(path, 1..4).prop_map(|paths| PathFamily { paths });
        TestRunner::default()
            .run(&family, |f| {
                prop_assert_eq!(f.is_vertex_disjoint(), pairwise_disjoint(&f));
                Ok(())
            })
            .unwrap();
    }
}
