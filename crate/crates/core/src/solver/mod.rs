//! Exact linear programming and one-dimensional helpers.

mod oned;
mod simplex;

pub use oned::{concave_pwl_max, strict_feasible_1d, AffinePiece, Bound1d, PwlMax};

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// A linear program over rational variables. Variables are free unless
/// bounds are set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::DimensionMismatch(
                "a linear program needs at least one variable".into(),
            ));
        }
        let n = objective.len();
        Ok(LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        })
    }

    pub fn maximize(objective: Vec<Rational>) -> Result<Self> {
        Self::new(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<Rational>) -> Result<Self> {
        Self::new(Sense::Minimize, objective)
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self, var: usize) -> (Option<&Rational>, Option<&Rational>) {
        (self.lower[var].as_ref(), self.upper[var].as_ref())
    }

    pub fn constrain(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<&mut Self> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "constraint has {} coefficients, program has {} variables",
                coeffs.len(),
                self.dim()
            )));
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(self)
    }

    pub fn set_bounds(
        &mut self,
        var: usize,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> Result<&mut Self> {
        if var >= self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "variable {var} out of range for {} variables",
                self.dim()
            )));
        }
        self.lower[var] = lower;
        self.upper[var] = upper;
        Ok(self)
    }

    pub fn nonnegative(&mut self, var: usize) -> Result<&mut Self> {
        let upper = self.upper.get(var).cloned().flatten();
        self.set_bounds(var, Some(zero()), upper)
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }

    /// Whether `point` satisfies every constraint and bound exactly.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.dim()
            && self.constraints.iter().all(|c| c.holds(point))
            && point.iter().enumerate().all(|(j, x)| {
                self.lower[j].as_ref().map_or(true, |lo| x >= lo)
                    && self.upper[j].as_ref().map_or(true, |hi| x <= hi)
            })
    }

    /// Whether `ray` is a recession direction improving the objective.
    pub fn is_improving_ray(&self, ray: &[Rational]) -> bool {
        if ray.len() != self.dim() {
            return false;
        }
        let gain = self.objective_value(ray);
        let improving = match self.sense {
            Sense::Maximize => gain > zero(),
            Sense::Minimize => gain < zero(),
        };
        improving
            && self.constraints.iter().all(|c| {
                let lhs = c.lhs(ray);
                match c.relation {
                    Relation::Le => lhs <= zero(),
                    Relation::Eq => lhs == zero(),
                    Relation::Ge => lhs >= zero(),
                }
            })
            && ray.iter().enumerate().all(|(j, r)| {
                (self.lower[j].is_none() || *r >= zero())
                    && (self.upper[j].is_none() || *r <= zero())
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    /// `point` is feasible and `point + t·ray` stays feasible for all `t ≥ 0`
    /// while improving the objective without bound.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Solves `lp` exactly with a two-phase simplex method using Bland's rule.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    simplex::solve(lp)
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero_ref() && !y.is_zero_ref())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

trait ZeroRef {
    fn is_zero_ref(&self) -> bool;
}

impl ZeroRef for Rational {
    fn is_zero_ref(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}
