//! Exact two-phase simplex on rationals and a strict-feasibility oracle
//! built on top of it.
//!
//! Bland's rule is used throughout, so pivoting is deterministic and
//! terminates on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, Matrix};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Primal optimum `x`, dual multipliers `y` (one per equality row) and
    /// the objective value.
    Optimal { x: Vec<Rational>, y: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows x (ncols + 1); last column is the right-hand side
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for x in self.t[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut red: Vec<Rational> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !self.t[i][j].is_zero() {
                    red[j] = &red[j] - cb * &self.t[i][j];
                }
            }
        }
        red
    }

    /// Runs primal simplex minimising `cost` over the columns allowed by
    /// `allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let red = self.reduced_costs(cost);
            let Some(enter) = (0..self.ncols).find(|&j| allowed(j) && red[j].is_negative()) else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if a.is_positive() {
                    let ratio = &self.t[i][rhs] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((row, _)) => self.pivot(row, enter),
            }
        }
    }
}

/// Minimises `c·x` subject to `a x = b`, `x >= 0`.
pub fn minimize(a: &Matrix, b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);
    let total = n + m;
    let mut sign = vec![Rational::one(); m];
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        if neg {
            sign[i] = -Rational::one();
        }
        let mut row = Vec::with_capacity(total + 1);
        for j in 0..n {
            let v = a.get(i, j).clone();
            row.push(if neg { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (n..total).collect(), ncols: total };

    let phase1: Vec<Rational> =
        (0..total).map(|j| if j >= n { Rational::one() } else { Rational::zero() }).collect();
    tab.optimize(&phase1, &|_| true);
    let infeas: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|&(_, &bv)| bv >= n)
        .map(|(i, _)| tab.t[i][total].clone())
        .fold(Rational::zero(), |acc, x| acc + x);
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let mut phase2 = c.to_vec();
    phase2.extend(std::iter::repeat_n(Rational::zero(), m));
    if !tab.optimize(&phase2, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[i][total].clone();
        }
    }
    // y = c_B B^{-1}; B^{-1} sits in the artificial columns
    let y: Vec<Rational> = (0..m)
        .map(|k| {
            let v = tab
                .basis
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, &bv)| acc + &phase2[bv] * &tab.t[i][n + k]);
            v * &sign[k]
        })
        .collect();
    let value = dot(c, &x);
    LpOutcome::Optimal { x, y, value }
}

/// Result of asking whether `g y < 0` (componentwise) has a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictFeasibility {
    /// `g y <= -slack` on every row, with `0 < slack <= 1`.
    Feasible { y: Vec<Rational>, slack: Rational },
    /// Nonnegative multipliers summing to one with `lambda^T g = 0`
    /// (a Gordan alternative certificate).
    Infeasible { multipliers: Vec<Rational> },
}

impl StrictFeasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, StrictFeasibility::Feasible { .. })
    }
}

/// Maximises the minimum slack `t` of `g y + t <= 0` subject to `t <= 1`.
///
/// Solved through the dual `min mu` s.t. `g^T lambda = 0`,
/// `sum(lambda) + mu = 1`, `lambda, mu >= 0`; the optimal dual multipliers are
/// the sought `y`. Both outcomes are re-checked exactly before returning.
pub fn max_slack(g: &Matrix) -> StrictFeasibility {
    let m = g.rows();
    let k = g.cols();
    if m == 0 {
        return StrictFeasibility::Feasible { y: vec![Rational::zero(); k], slack: Rational::one() };
    }
    let mut a = Matrix::zeros(k + 1, m + 1);
    for i in 0..m {
        for r in 0..k {
            a.set(r, i, g.get(i, r).clone());
        }
        a.set(k, i, Rational::one());
    }
    a.set(k, m, Rational::one());
    let mut b = vec![Rational::zero(); k + 1];
    b[k] = Rational::one();
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = Rational::one();
    let LpOutcome::Optimal { x, y, value } = minimize(&a, &b, &c) else {
        unreachable!("slack problem is feasible and bounded");
    };
    if value.is_positive() {
        let yv: Vec<Rational> = y[..k].to_vec();
        let slack = y[k].clone();
        debug_assert_eq!(slack, value);
        let gy = g.mul_vec(&yv);
        assert!(gy.iter().all(|v| v + &slack <= Rational::zero()), "slack certificate failed");
        StrictFeasibility::Feasible { y: yv, slack }
    } else {
        let lambda: Vec<Rational> = x[..m].to_vec();
        let comb = g.transpose().mul_vec(&lambda);
        assert!(comb.iter().all(Zero::is_zero), "alternative certificate failed");
        StrictFeasibility::Infeasible { multipliers: lambda }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn small_lp() {
        // min -x1 - x2 s.t. x1 + 2x2 + s1 = 4, 3x1 + x2 + s2 = 6
        let a = Matrix::from_i64(4, &[vec![1, 2, 1, 0], vec![3, 1, 0, 1]]);
        let out = minimize(&a, &[r(4), r(6)], &[r(-1), r(-1), r(0), r(0)]);
        let LpOutcome::Optimal { x, y, value } = out else { panic!() };
        assert_eq!(value, Rational::new((-14).into(), 5.into()));
        assert_eq!(x[0], Rational::new(8.into(), 5.into()));
        // dual feasibility: c - A^T y >= 0
        let red: Vec<Rational> = (0..4)
            .map(|j| [r(-1), r(-1), r(0), r(0)][j].clone() - (a.get(0, j) * &y[0] + a.get(1, j) * &y[1]))
            .collect();
        assert!(red.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = Matrix::from_i64(1, &[vec![1]]);
        assert_eq!(minimize(&a, &[r(-1)], &[r(0)]), LpOutcome::Infeasible);
        let a = Matrix::from_i64(2, &[vec![1, -1]]);
        assert_eq!(minimize(&a, &[r(0)], &[r(-1), r(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn strict_systems() {
        // y1 < 0 and -y1 < 0 is impossible
        let g = Matrix::from_i64(1, &[vec![1], vec![-1]]);
        assert!(!max_slack(&g).is_feasible());
        // y1 - y2 < 0, -y2 < 0
        let g = Matrix::from_i64(2, &[vec![1, -1], vec![0, -1]]);
        assert!(max_slack(&g).is_feasible());
        assert!(max_slack(&Matrix::zeros(0, 3)).is_feasible());
    }
}
