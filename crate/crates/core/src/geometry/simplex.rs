//! Two-phase primal simplex over the rationals with Bland's rule.
//!
//! Each variable with a `x(e) ≥ 0` row in the system becomes a nonnegative
//! column (that row is absorbed); every other variable is split into a
//! difference of two nonnegative columns.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::constraint::{ConstraintSystem, Sense};
use crate::rational::{int, QPoint, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: QPoint },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&QPoint> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColumnKind {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    cost: Vec<Rational>,
    cost_rhs: Rational,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let nz: Vec<usize> = (0..self.width()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.rows[i][j] -= d;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nz {
                let d = &f * &pivot_row[j];
                self.cost[j] -= d;
            }
            self.cost_rhs -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// One Bland step on the current cost row; `allowed` filters entering columns.
    fn step(&mut self, allowed: &dyn Fn(ColumnKind) -> bool) -> Step {
        let Some(c) = (0..self.width()).find(|&j| self.cost[j].is_negative() && allowed(self.kinds[j])) else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            if !self.rows[i][c].is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / &self.rows[i][c];
            let better = match &best {
                None => true,
                Some((b, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((r, _)) => {
                self.pivot(r, c);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, allowed: &dyn Fn(ColumnKind) -> bool) -> bool {
        loop {
            match self.step(allowed) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    fn set_cost(&mut self, cost: Vec<Rational>) {
        self.cost = cost;
        self.cost_rhs = Rational::zero();
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            if self.cost[b].is_zero() {
                continue;
            }
            let f = self.cost[b].clone();
            for j in 0..self.width() {
                if !self.rows[i][j].is_zero() {
                    let d = &f * &self.rows[i][j];
                    self.cost[j] -= d;
                }
            }
            self.cost_rhs -= &f * &self.rhs[i];
        }
    }
}

/// Optimises `objective · x` over the system exactly.
pub fn lp_solve(sys: &ConstraintSystem, objective: &QPoint, direction: Direction) -> Result<LpOutcome> {
    let n = sys.dim();
    objective.check_dim(n)?;

    let mut nonneg = vec![false; n];
    let mut absorbed = vec![false; sys.len()];
    for (i, c) in sys.iter().enumerate() {
        if let Some(e) = c.as_nonnegativity() {
            if !nonneg[e] {
                nonneg[e] = true;
                absorbed[i] = true;
            }
        }
    }
    let mut kinds = Vec::new();
    let mut plus = vec![0; n];
    let mut minus = vec![None; n];
    for e in 0..n {
        plus[e] = kinds.len();
        kinds.push(ColumnKind::Plus(e));
        if !nonneg[e] {
            minus[e] = Some(kinds.len());
            kinds.push(ColumnKind::Minus(e));
        }
    }
    let structural = kinds.len();

    // rows as (coefficients over structural columns, slack sign, rhs), rhs ≥ 0
    let mut raw: Vec<(Vec<Rational>, i64, Rational)> = Vec::new();
    for (i, c) in sys.iter().enumerate() {
        if absorbed[i] {
            continue;
        }
        let mut row = vec![Rational::zero(); structural];
        for (&e, a) in c.coefficients() {
            row[plus[e]] = a.clone();
            if let Some(mcol) = minus[e] {
                row[mcol] = -a.clone();
            }
        }
        let mut slack = match c.sense {
            Sense::Le => 1,
            Sense::Ge => -1,
            Sense::Eq => 0,
        };
        let mut rhs = c.rhs.clone();
        if rhs.is_negative() {
            row.iter_mut().for_each(|v| *v = -v.clone());
            rhs = -rhs;
            slack = -slack;
        }
        raw.push((row, slack, rhs));
    }

    for (_, s, _) in &raw {
        if *s != 0 {
            kinds.push(ColumnKind::Slack);
        }
    }
    let need_artificial: Vec<bool> = raw.iter().map(|(_, s, _)| *s != 1).collect();
    for &a in &need_artificial {
        if a {
            kinds.push(ColumnKind::Artificial);
        }
    }
    let width = kinds.len();
    let mut rows = Vec::with_capacity(raw.len());
    let mut rhs = Vec::with_capacity(raw.len());
    let mut basis = Vec::with_capacity(raw.len());
    let mut next_slack = structural;
    let mut next_art = structural + raw.iter().filter(|(_, s, _)| *s != 0).count();
    for (i, (coeffs, s, b)) in raw.into_iter().enumerate() {
        let mut row = coeffs;
        row.resize(width, Rational::zero());
        let mut basic = None;
        if s != 0 {
            row[next_slack] = int(s);
            if s == 1 {
                basic = Some(next_slack);
            }
            next_slack += 1;
        }
        if need_artificial[i] {
            row[next_art] = int(1);
            basic = Some(next_art);
            next_art += 1;
        }
        rows.push(row);
        rhs.push(b);
        basis.push(basic.expect("every row has a starting basic column"));
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        kinds,
        cost: Vec::new(),
        cost_rhs: Rational::zero(),
    };

    // phase 1: minimise the sum of artificials
    let phase1: Vec<Rational> = t
        .kinds
        .iter()
        .map(|k| if *k == ColumnKind::Artificial { int(1) } else { Rational::zero() })
        .collect();
    t.set_cost(phase1);
    t.run(&|_| true);
    if !t.cost_rhs.is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    // drive zero-valued artificials out of the basis, dropping dependent rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.kinds[t.basis[i]] == ColumnKind::Artificial {
            match (0..t.width()).find(|&j| t.kinds[j] != ColumnKind::Artificial && !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // phase 2
    let sign = match direction {
        Direction::Minimize => int(1),
        Direction::Maximize => int(-1),
    };
    let phase2: Vec<Rational> = t
        .kinds
        .iter()
        .map(|k| match k {
            ColumnKind::Plus(e) => &sign * &objective[*e],
            ColumnKind::Minus(e) => -(&sign * &objective[*e]),
            _ => Rational::zero(),
        })
        .collect();
    t.set_cost(phase2);
    if !t.run(&|k| k != ColumnKind::Artificial) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut point = QPoint::zeros(n);
    for (i, &b) in t.basis.iter().enumerate() {
        match t.kinds[b] {
            ColumnKind::Plus(e) => point[e] += &t.rhs[i],
            ColumnKind::Minus(e) => point[e] -= &t.rhs[i],
            _ => {}
        }
    }
    let value = objective.dot(&point);
    debug_assert_eq!(value, -(&sign * &t.cost_rhs));
    Ok(LpOutcome::Optimal { value, point })
}

/// Some point of the system, or `None` when it is empty.
pub fn feasible_point(sys: &ConstraintSystem) -> Result<Option<QPoint>> {
    match lp_solve(sys, &QPoint::zeros(sys.dim()), Direction::Minimize)? {
        LpOutcome::Optimal { point, .. } => Ok(Some(point)),
        _ => Ok(None),
    }
}
