//! Concrete previsions: Value-at-Risk, conjugates, expectations and their
//! lower envelopes, and set functions on the full powerset.

use std::sync::Arc;

use crate::checker::Verdict;
use crate::checker::Witness;
use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};
use crate::space::{Assessment, ConditionalGamble, Event, Gamble, Partition};

/// A probability mass function on the atoms of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDistribution {
    partition: Arc<Partition>,
    probs: Vec<Rational>,
}

impl FiniteDistribution {
    pub fn new(partition: &Arc<Partition>, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != partition.size() {
            return Err(Error::LengthMismatch {
                expected: partition.size(),
                found: probs.len(),
            });
        }
        if probs.iter().any(|p| *p < zero()) {
            return Err(Error::InvalidParameter("negative probability".into()));
        }
        let total: Rational = probs.iter().sum();
        if total != one() {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(FiniteDistribution {
            partition: partition.clone(),
            probs,
        })
    }

    pub fn uniform(partition: &Arc<Partition>) -> Self {
        let n = partition.size() as i64;
        FiniteDistribution {
            partition: partition.clone(),
            probs: vec![Rational::new(1.into(), n.into()); partition.size()],
        }
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn probability(&self, event: &Event) -> Rational {
        event.atoms().map(|w| self.probs[w].clone()).sum()
    }

    pub fn expectation(&self, x: &Gamble) -> Rational {
        (0..self.probs.len()).map(|w| &self.probs[w] * x.value(w)).sum()
    }

    /// `E(X|B)`, defined when `B` has positive probability.
    pub fn conditional_expectation(&self, x: &ConditionalGamble) -> Result<Rational> {
        let mass = self.probability(x.cond());
        if mass == zero() {
            return Err(Error::InvalidParameter(format!(
                "conditioning event {} has probability zero",
                x.cond()
            )));
        }
        let total: Rational = x
            .cond()
            .atoms()
            .map(|w| &self.probs[w] * x.gamble().value(w))
            .sum();
        Ok(total / mass)
    }
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha <= zero() || *alpha >= one() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} is outside ]0, 1["
        )));
    }
    Ok(())
}

/// `VaR_α(X) = −inf{x : P(X ≤ x) > α}`. The infimum is the smallest value
/// of `X` whose cumulative probability exceeds `α`.
pub fn var_alpha(dist: &FiniteDistribution, x: &Gamble, alpha: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    if x.partition() != dist.partition() {
        return Err(Error::PartitionMismatch);
    }
    let mut image: Vec<&Rational> = x.values().iter().collect();
    image.sort();
    image.dedup();
    for v in image {
        let cumulative: Rational = (0..dist.probs.len())
            .filter(|&w| x.value(w) <= v)
            .map(|w| dist.probs[w].clone())
            .sum();
        if cumulative > *alpha {
            return Ok(-v.clone());
        }
    }
    unreachable!("cumulative probability of max X is one")
}

/// `P^V_α(X) = −VaR_α(X)`.
pub fn var_prevision(dist: &FiniteDistribution, x: &Gamble, alpha: &Rational) -> Result<Rational> {
    var_alpha(dist, x, alpha).map(|v| -v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarPrevision {
    alpha: Rational,
    dist: FiniteDistribution,
    domain: Vec<Gamble>,
}

impl VarPrevision {
    pub fn new(alpha: Rational, dist: FiniteDistribution, domain: Vec<Gamble>) -> Result<Self> {
        check_alpha(&alpha)?;
        if domain.iter().any(|g| g.partition() != dist.partition()) {
            return Err(Error::PartitionMismatch);
        }
        Ok(VarPrevision {
            alpha,
            dist,
            domain,
        })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn dist(&self) -> &FiniteDistribution {
        &self.dist
    }

    pub fn domain(&self) -> &[Gamble] {
        &self.domain
    }
}

/// The unconditional assessment `X ↦ P^V_α(X)` on the domain plus `0 ↦ 0`.
pub fn build_var_assessment(vp: &VarPrevision) -> Result<Assessment> {
    let partition = vp.dist.partition();
    let mut a = Assessment::new(partition);
    for x in &vp.domain {
        let v = var_prevision(&vp.dist, x, &vp.alpha)?;
        a.insert(ConditionalGamble::unconditional(x.clone()), v)?;
    }
    a.insert(
        ConditionalGamble::unconditional(Gamble::zero(partition)),
        zero(),
    )?;
    Ok(a)
}

/// For every entry, the index of the entry assessing `−X|B`.
fn negation_index(p: &Assessment) -> Result<Vec<usize>> {
    let mut missing = Vec::new();
    let mut index = Vec::with_capacity(p.len());
    for e in p.entries() {
        let neg = e.gamble.negated();
        match p.position(&neg) {
            Some(j) => index.push(j),
            None => {
                missing.push(neg.to_string());
                index.push(usize::MAX);
            }
        }
    }
    if missing.is_empty() {
        Ok(index)
    } else {
        Err(Error::MissingEntries(missing))
    }
}

/// The conjugate upper prevision `X|B ↦ −P(−X|B)` on the same domain.
pub fn conjugate(p: &Assessment) -> Result<Assessment> {
    let index = negation_index(p)?;
    Assessment::from_entries(
        p.partition(),
        p.entries()
            .iter()
            .zip(index)
            .map(|(e, j)| (e.gamble.clone(), -p.entries()[j].value.clone())),
    )
}

/// Checks `−P(−X|B) ≥ P(X|B)` on every entry. A failure is witnessed by
/// buying both `X|B` and `−X|B`.
pub fn conjugate_dominance(p: &Assessment) -> Result<Verdict> {
    let index = negation_index(p)?;
    for (i, j) in index.into_iter().enumerate() {
        if &p.entries()[i].value + &p.entries()[j].value > zero() {
            let w = Witness::from_stakes(p, &[(i, one()), (j, one())]);
            return Ok(Verdict::Violated(crate::checker::Violation::Gain(w)));
        }
    }
    Ok(Verdict::Satisfied)
}

/// The restriction of an expectation to the given conditional gambles.
pub fn expectation_assessment(
    dist: &FiniteDistribution,
    targets: &[ConditionalGamble],
) -> Result<Assessment> {
    lower_envelope(std::slice::from_ref(dist), targets)
}

/// The lower envelope of finitely many expectations on the given targets.
pub fn lower_envelope(
    dists: &[FiniteDistribution],
    targets: &[ConditionalGamble],
) -> Result<Assessment> {
    let first = dists
        .first()
        .ok_or_else(|| Error::InvalidParameter("no distributions".into()))?;
    let mut a = Assessment::new(first.partition());
    for t in targets {
        let v = dists
            .iter()
            .map(|d| d.conditional_expectation(t))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .expect("non-empty");
        a.insert(t.clone(), v)?;
    }
    Ok(a)
}

/// The unconditional assessment of every event's indicator by `f`.
pub fn set_function_assessment(
    partition: &Arc<Partition>,
    f: impl Fn(&Event) -> Rational,
) -> Result<Assessment> {
    Assessment::from_entries(
        partition,
        Event::all(partition).map(|e| (ConditionalGamble::unconditional(e.indicator()), f(&e))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{check_2convex, check_capacity, check_centered};
    use crate::rational::{int, rat};

    fn example() -> (FiniteDistribution, Gamble) {
        let p = Partition::new(["down", "up"]).unwrap();
        let d = FiniteDistribution::new(&p, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let x = Gamble::from_ints(&p, &[-1, 2]).unwrap();
        (d, x)
    }

    #[test]
    fn var_values() {
        let (d, x) = example();
        let alpha = rat(3, 5);
        assert_eq!(var_alpha(&d, &x, &alpha).unwrap(), int(-2));
        assert_eq!(var_prevision(&d, &x, &alpha).unwrap(), int(2));
        assert_eq!(var_prevision(&d, &-&x, &alpha).unwrap(), int(1));
        let zero_gamble = Gamble::zero(d.partition());
        assert_eq!(var_alpha(&d, &zero_gamble, &alpha).unwrap(), zero());
        assert_eq!(var_prevision(&d, &x, &rat(1, 4)).unwrap(), int(-1));
        // A tie with a cumulative value resolves upwards.
        assert_eq!(var_prevision(&d, &x, &rat(1, 2)).unwrap(), int(2));
        assert!(var_alpha(&d, &x, &zero()).is_err());
        assert!(var_alpha(&d, &x, &one()).is_err());
    }

    #[test]
    fn var_assessment() {
        let (d, x) = example();
        let vp = VarPrevision::new(rat(3, 5), d.clone(), vec![x.clone(), -&x]).unwrap();
        let a = build_var_assessment(&vp).unwrap();
        let values: Vec<_> = a.entries().iter().map(|e| e.value.clone()).collect();
        assert_eq!(values, vec![int(2), int(1), zero()]);
        assert!(check_centered(&a).is_satisfied());
        assert!(check_2convex(&a).is_satisfied());
        assert!(conjugate_dominance(&a).unwrap().witness().unwrap().is_valid());
        let c = conjugate(&a).unwrap();
        assert_eq!(c.entries()[0].value, int(-1));
        assert_eq!(c.entries()[2].value, zero());

        let empty = VarPrevision::new(rat(3, 5), d.clone(), vec![]).unwrap();
        assert_eq!(build_var_assessment(&empty).unwrap().len(), 1);

        let shifted = VarPrevision::new(rat(3, 5), d, vec![x.clone(), x.shift(&rat(7, 3))]).unwrap();
        let a = build_var_assessment(&shifted).unwrap();
        assert_eq!(&a.entries()[1].value - &a.entries()[0].value, rat(7, 3));
    }

    #[test]
    fn conjugate_requires_negations() {
        let (d, x) = example();
        let vp = VarPrevision::new(rat(3, 5), d, vec![x]).unwrap();
        let a = build_var_assessment(&vp).unwrap();
        assert!(matches!(conjugate(&a), Err(Error::MissingEntries(m)) if m.len() == 1));
    }

    #[test]
    fn expectations_are_self_conjugate() {
        let p = Partition::new(["a", "b", "c"]).unwrap();
        let d = FiniteDistribution::new(&p, vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        let x = Gamble::from_ints(&p, &[3, -1, 4]).unwrap();
        let targets = vec![
            ConditionalGamble::unconditional(x.clone()),
            ConditionalGamble::unconditional(-&x),
        ];
        let a = expectation_assessment(&d, &targets).unwrap();
        assert_eq!(conjugate(&a).unwrap(), a);
        assert!(conjugate_dominance(&a).unwrap().is_satisfied());

        let e = FiniteDistribution::new(&p, vec![rat(1, 6), rat(1, 6), rat(2, 3)]).unwrap();
        let env = lower_envelope(&[d, e], &targets).unwrap();
        assert!(conjugate_dominance(&env).unwrap().is_satisfied());
    }

    #[test]
    fn uniform_capacity() {
        let p = Partition::anonymous(4).unwrap();
        let d = FiniteDistribution::uniform(&p);
        let a = set_function_assessment(&p, |e| d.probability(e)).unwrap();
        assert!(check_capacity(&a).unwrap().is_satisfied());
    }
}
