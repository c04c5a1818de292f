//! Dense-tableau two-phase simplex over exact rationals.
//!
//! The program is rewritten in standard form `max c·y, A y = b, y ≥ 0,
//! b ≥ 0`. Every original variable maps to one or two nonnegative columns.

use num_traits::{Signed, Zero};

use super::{LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::{one, zero, Rational};

enum Column {
    /// `x = lo + y`.
    Shift { col: usize, lo: Rational },
    /// `x = hi − y`.
    Reflect { col: usize, hi: Rational },
    /// `x = y⁺ − y⁻`.
    Split { pos: usize, neg: usize },
}

impl Column {
    fn value(&self, y: &[Rational]) -> Rational {
        match self {
            Column::Shift { col, lo } => lo + &y[*col],
            Column::Reflect { col, hi } => hi - &y[*col],
            Column::Split { pos, neg } => &y[*pos] - &y[*neg],
        }
    }

    fn direction(&self, r: &[Rational]) -> Rational {
        match self {
            Column::Shift { col, .. } => r[*col].clone(),
            Column::Reflect { col, .. } => -&r[*col],
            Column::Split { pos, neg } => &r[*pos] - &r[*neg],
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum Run {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if p != one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            let a = &self.rows[i][j];
            if !a.is_zero() && !cost[b].is_zero() {
                d -= &cost[b] * a;
            }
        }
        d
    }

    /// Maximizes `cost·y` from the current basic feasible solution, entering
    /// only columns flagged in `allowed`.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> Run {
        loop {
            let mut in_basis = vec![false; self.width];
            for &b in &self.basis {
                in_basis[b] = true;
            }
            let entering = (0..self.width)
                .find(|&j| allowed[j] && !in_basis[j] && self.reduced_cost(cost, j).is_positive());
            let Some(c) = entering else {
                return Run::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Run::Unbounded(c),
            }
        }
    }

    fn solution(&self) -> Vec<Rational> {
        let mut y = vec![zero(); self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.rhs[i].clone();
        }
        y
    }

    fn ray(&self, entering: usize) -> Vec<Rational> {
        let mut r = vec![zero(); self.width];
        r[entering] = one();
        for (i, &b) in self.basis.iter().enumerate() {
            r[b] = -&self.rows[i][entering];
        }
        r
    }
}

pub(super) fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.dim();
    let mut columns = Vec::with_capacity(n);
    let mut width = 0;
    // Extra rows `y ≤ hi − lo` for doubly bounded variables.
    let mut box_rows = Vec::new();
    for j in 0..n {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(lo), hi) => {
                if let Some(hi) = hi {
                    if hi < lo {
                        return LpOutcome::Infeasible;
                    }
                    box_rows.push((width, hi - lo));
                }
                columns.push(Column::Shift {
                    col: width,
                    lo: lo.clone(),
                });
                width += 1;
            }
            (None, Some(hi)) => {
                columns.push(Column::Reflect {
                    col: width,
                    hi: hi.clone(),
                });
                width += 1;
            }
            (None, None) => {
                columns.push(Column::Split {
                    pos: width,
                    neg: width + 1,
                });
                width += 2;
            }
        }
    }
    let structural = width;

    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut row = vec![zero(); structural];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &columns[j] {
                Column::Shift { col, lo } => {
                    row[*col] += a;
                    rhs -= a * lo;
                }
                Column::Reflect { col, hi } => {
                    row[*col] -= a;
                    rhs -= a * hi;
                }
                Column::Split { pos, neg } => {
                    row[*pos] += a;
                    row[*neg] -= a;
                }
            }
        }
        rows.push((row, c.relation, rhs));
    }
    for (col, cap) in box_rows {
        let mut row = vec![zero(); structural];
        row[col] = one();
        rows.push((row, Relation::Le, cap));
    }
    for (row, rel, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            *rhs = -&*rhs;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let total = structural + slack_count + artificial_count;
    let first_artificial = structural + slack_count;

    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        rhs: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        width: total,
    };
    let (mut next_slack, mut next_art) = (structural, first_artificial);
    for (row, rel, rhs) in rows {
        let mut full = row;
        full.resize(total, zero());
        match rel {
            Relation::Le => {
                full[next_slack] = one();
                tab.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                full[next_slack] = -one();
                next_slack += 1;
                full[next_art] = one();
                tab.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                full[next_art] = one();
                tab.basis.push(next_art);
                next_art += 1;
            }
        }
        tab.rows.push(full);
        tab.rhs.push(rhs);
    }

    if artificial_count > 0 {
        let mut cost = vec![zero(); total];
        for c in cost.iter_mut().skip(first_artificial) {
            *c = -one();
        }
        let allowed = vec![true; total];
        // Phase one is bounded above by zero, so it always ends optimal.
        let _ = tab.run(&cost, &allowed);
        let infeasible = tab
            .basis
            .iter()
            .zip(&tab.rhs)
            .any(|(&b, v)| b >= first_artificial && v.is_positive());
        if infeasible {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop rows that
        // turn out to be redundant.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![zero(); total];
    for (j, col) in columns.iter().enumerate() {
        let c = match lp.sense {
            Sense::Maximize => lp.objective[j].clone(),
            Sense::Minimize => -&lp.objective[j],
        };
        match col {
            Column::Shift { col, .. } => cost[*col] = c,
            Column::Reflect { col, .. } => cost[*col] = -c,
            Column::Split { pos, neg } => {
                cost[*neg] = -&c;
                cost[*pos] = c;
            }
        }
    }
    let allowed: Vec<bool> = (0..total).map(|j| j < first_artificial).collect();
    let outcome = tab.run(&cost, &allowed);
    let y = tab.solution();
    let point: Vec<Rational> = columns.iter().map(|c| c.value(&y)).collect();
    match outcome {
        Run::Optimal => LpOutcome::Optimal {
            value: lp.objective_value(&point),
            point,
        },
        Run::Unbounded(entering) => {
            let r = tab.ray(entering);
            let ray = columns.iter().map(|c| c.direction(&r)).collect();
            LpOutcome::Unbounded { point, ray }
        }
    }
}
