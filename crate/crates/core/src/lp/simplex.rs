//! Phase-one simplex over exact rationals with Bland's rule. All variables
//! are implicitly non-negative.

use num_traits::{One, Signed, Zero};

use crate::numeric::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Where a row came from; only used for bookkeeping and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Total,
    UpperBound,
    Pinned,
    Midpoint,
    Coverage,
    HallCut,
    Other,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
    pub kind: RowKind,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational, kind: RowKind) -> Self {
        Row { coeffs, relation, rhs, kind }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearProgram {
    pub n_vars: usize,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram { n_vars, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Row) {
        assert_eq!(row.coeffs.len(), self.n_vars, "row width mismatch");
        self.rows.push(row);
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.iter().all(|v| !v.is_negative()) && self.rows.iter().all(|r| r.satisfied_by(x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible,
}

/// Finds a feasible point of `lp` (with `x >= 0`) or proves there is none.
pub fn simplex_feasible(lp: &LinearProgram) -> LpOutcome {
    let n = lp.n_vars;
    let m = lp.rows.len();
    // column layout: [structural | slack/surplus per row | artificial per row]
    let width = n + 2 * m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificial = vec![false; width];
    for (i, row) in lp.rows.iter().enumerate() {
        let flip = row.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        let relation = match (row.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        let mut t = vec![Rational::zero(); width];
        for (j, c) in row.coeffs.iter().enumerate() {
            if !c.is_zero() {
                t[j] = c * &sign;
            }
        }
        match relation {
            Relation::Le => {
                t[n + i] = Rational::one();
                basis.push(n + i);
            }
            Relation::Ge => {
                t[n + i] = -Rational::one();
                t[n + m + i] = Rational::one();
                artificial[n + m + i] = true;
                basis.push(n + m + i);
            }
            Relation::Eq => {
                t[n + m + i] = Rational::one();
                artificial[n + m + i] = true;
                basis.push(n + m + i);
            }
        }
        tab.push(t);
        rhs.push(&row.rhs * &sign);
    }
    // reduced costs for "minimise the sum of artificials"
    let mut cost = vec![Rational::zero(); width];
    let mut objective = Rational::zero();
    for i in 0..m {
        if artificial[basis[i]] {
            for j in 0..width {
                if !artificial[j] && !tab[i][j].is_zero() {
                    cost[j] -= &tab[i][j];
                }
            }
            objective += &rhs[i];
        }
    }
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (r, _) = leave.expect("phase one cannot be unbounded");
        let pivot = tab[r][enter].clone();
        for v in tab[r].iter_mut().filter(|v| !v.is_zero()) {
            *v /= &pivot;
        }
        rhs[r] /= &pivot;
        let pivot_row = tab[r].clone();
        let pivot_rhs = rhs[r].clone();
        let nonzero: Vec<usize> = (0..width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..m {
            if i == r || tab[i][enter].is_zero() {
                continue;
            }
            let f = tab[i][enter].clone();
            for &j in &nonzero {
                let delta = &f * &pivot_row[j];
                tab[i][j] -= delta;
            }
            rhs[i] -= &f * &pivot_rhs;
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for &j in &nonzero {
                let delta = &f * &pivot_row[j];
                cost[j] -= delta;
            }
            objective += &f * &pivot_rhs;
        }
        basis[r] = enter;
    }
    if !objective.is_zero() {
        return LpOutcome::Infeasible;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = rhs[i].clone();
        }
    }
    LpOutcome::Feasible(x)
}
