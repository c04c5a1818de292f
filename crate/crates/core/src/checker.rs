//! Consistency checks for finite assessments.
//!
//! Every check either accepts the assessment or returns a [`Witness`]: a
//! finite combination of elementary gains `s·B(X − P(X|B))` whose supremum
//! on the realised conditioning event is negative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};
use crate::solver::{lp_solve, strict_feasible_1d, Bound1d, LinearProgram, LpOutcome, Relation};
use crate::space::{restrict_inf, restrict_sup, Assessment, ConditionalGamble, Event, Gamble};

/// Which of the two pairwise notions a computation follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    TwoConvex,
    TwoCoherent,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::TwoConvex => "2convex",
            Mode::TwoCoherent => "2coherent",
        })
    }
}

/// The number of elementary gains allowed in a betting scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConsistencyClass {
    /// 1-coherence.
    Internality,
    OneAul,
    TwoConvex,
    CenteredTwoConvex,
    TwoCoherent,
    NConvex(Order),
    NCoherent(Order),
    Convex,
    CConvex,
    Coherent,
    Capacity,
}

impl fmt::Display for ConsistencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConsistencyClass::*;
        match self {
            Internality => f.write_str("internality"),
            OneAul => f.write_str("1-aul"),
            TwoConvex => f.write_str("2-convex"),
            CenteredTwoConvex => f.write_str("centered-2-convex"),
            TwoCoherent => f.write_str("2-coherent"),
            NConvex(n) => write!(f, "{n}-convex"),
            NCoherent(n) => write!(f, "{n}-coherent"),
            Convex => f.write_str("convex"),
            CConvex => f.write_str("c-convex"),
            Coherent => f.write_str("coherent"),
            Capacity => f.write_str("capacity"),
        }
    }
}

/// One elementary gain of a witness. A positive stake buys the gamble at its
/// assessed value, a negative stake sells it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTerm {
    pub entry: usize,
    pub gamble: ConditionalGamble,
    pub value: Rational,
    pub stake: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub terms: Vec<WitnessTerm>,
    pub conditioning: Event,
    pub sup_value: Rational,
}

impl Witness {
    /// Builds a witness from net stakes per entry, merging repeated entries
    /// and dropping zero stakes.
    pub fn from_stakes(p: &Assessment, stakes: &[(usize, Rational)]) -> Witness {
        let mut net: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, s) in stakes {
            *net.entry(*i).or_insert_with(zero) += s;
        }
        let terms: Vec<WitnessTerm> = net
            .into_iter()
            .filter(|(_, s)| *s != zero())
            .map(|(i, stake)| {
                let e = &p.entries()[i];
                WitnessTerm {
                    entry: i,
                    gamble: e.gamble.clone(),
                    value: e.value.clone(),
                    stake,
                }
            })
            .collect();
        let mut conditioning = Event::empty(p.partition());
        for t in &terms {
            conditioning = conditioning
                .union(t.gamble.cond())
                .expect("entries share the partition");
        }
        let mut w = Witness {
            terms,
            conditioning,
            sup_value: zero(),
        };
        w.sup_value = w.recompute_sup().unwrap_or_else(zero);
        w
    }

    /// `Σ stake·B(X − value)` over the terms.
    pub fn gain(&self) -> Gamble {
        let partition = self.conditioning.partition();
        self.terms.iter().fold(Gamble::zero(partition), |acc, t| {
            &acc + &t.gamble.gain(&t.value).scale(&t.stake)
        })
    }

    /// The supremum of the gain over the conditioning event, evaluated from
    /// scratch. `None` for an empty conditioning event.
    pub fn recompute_sup(&self) -> Option<Rational> {
        restrict_sup(&self.gain(), &self.conditioning).ok()
    }

    pub fn is_valid(&self) -> bool {
        let partition = self.conditioning.partition();
        let join = self.terms.iter().fold(Event::empty(partition), |acc, t| {
            acc.union(t.gamble.cond()).expect("same partition")
        });
        self.terms.iter().all(|t| t.stake != zero())
            && join == self.conditioning
            && self.sup_value < zero()
            && self.recompute_sup().as_ref() == Some(&self.sup_value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Gain(Witness),
    /// `0|cond` is missing from the domain (`value` is `None`) or assessed
    /// at a nonzero value.
    Uncentered {
        cond: Event,
        value: Option<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated(Violation),
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated(Violation::Gain(w)) => Some(w),
            _ => None,
        }
    }

    fn gain(w: Witness) -> Verdict {
        debug_assert!(w.is_valid(), "invalid witness {w:?}");
        Verdict::Violated(Violation::Gain(w))
    }
}

/// `B(X − P(X|B))` for every entry, as a dense vector over atoms.
fn gain_table(p: &Assessment) -> Vec<Vec<Rational>> {
    p.entries()
        .iter()
        .map(|e| e.gain().values().to_vec())
        .collect()
}

fn cond_masks(p: &Assessment) -> Vec<u64> {
    p.entries().iter().map(|e| e.cond().mask()).collect()
}

pub fn check_internality(p: &Assessment) -> Verdict {
    for (i, e) in p.entries().iter().enumerate() {
        if e.value > e.gamble.sup() {
            return Verdict::gain(Witness::from_stakes(p, &[(i, one())]));
        }
        if e.value < e.gamble.inf() {
            return Verdict::gain(Witness::from_stakes(p, &[(i, -one())]));
        }
    }
    Verdict::Satisfied
}

pub fn check_1aul(p: &Assessment) -> Verdict {
    for (i, e) in p.entries().iter().enumerate() {
        if e.value > e.gamble.sup() {
            return Verdict::gain(Witness::from_stakes(p, &[(i, one())]));
        }
    }
    Verdict::Satisfied
}

/// Checks every ordered pair (sold, bought) with unit stakes, identical
/// pairs included.
pub fn check_2convex(p: &Assessment) -> Verdict {
    let gains = gain_table(p);
    let masks = cond_masks(p);
    let n = p.partition().size();
    for sold in 0..p.len() {
        for bought in 0..p.len() {
            let s = masks[sold] | masks[bought];
            let negative = (0..n)
                .filter(|&w| s & (1 << w) != 0)
                .all(|w| &gains[bought][w] - &gains[sold][w] < zero());
            if negative {
                return Verdict::gain(Witness::from_stakes(
                    p,
                    &[(bought, one()), (sold, -one())],
                ));
            }
        }
    }
    Verdict::Satisfied
}

/// Looks for `s₀` with `g₁(ω) − s₀·g₀(ω) < 0` on every atom of `mask`.
fn regime_free_stake(g1: &[Rational], g0: &[Rational], mask: u64, extra: Option<Bound1d>, extra_is_lower: bool) -> Option<Rational> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for w in 0..g1.len() {
        if mask & (1 << w) == 0 {
            continue;
        }
        let (a, b) = (&g0[w], &g1[w]);
        if *a > zero() {
            lower.push(Bound1d::strict(b / a));
        } else if *a < zero() {
            upper.push(Bound1d::strict(b / a));
        } else if *b >= zero() {
            return None;
        }
    }
    if let Some(e) = extra {
        if extra_is_lower {
            lower.push(e);
        } else {
            upper.push(e);
        }
    }
    strict_feasible_1d(&lower, &upper)
}

/// Checks every ordered pair with a nonnegative buying stake and a real
/// selling stake.
pub fn check_2coherent(p: &Assessment) -> Verdict {
    if let v @ Verdict::Violated(_) = check_internality(p) {
        // Covers the regimes with a single nonzero stake.
        return v;
    }
    let gains = gain_table(p);
    let masks = cond_masks(p);
    for sold in 0..p.len() {
        for bought in 0..p.len() {
            let mask = masks[sold] | masks[bought];
            let (g1, g0) = (&gains[bought], &gains[sold]);
            let Some(mut s0) = regime_free_stake(g1, g0, mask, None, true) else {
                continue;
            };
            if s0 == zero() {
                // The feasible set is open, so it also holds nonzero stakes.
                s0 = regime_free_stake(g1, g0, mask, Some(Bound1d::strict(zero())), true)
                    .or_else(|| {
                        regime_free_stake(g1, g0, mask, Some(Bound1d::strict(zero())), false)
                    })
                    .expect("open interval around zero");
            }
            return Verdict::gain(Witness::from_stakes(p, &[(bought, one()), (sold, -s0)]));
        }
    }
    Verdict::Satisfied
}

#[derive(Clone, Copy)]
enum SellRule {
    /// Sold stake is a free nonnegative variable; all stakes sum to one.
    Free,
    /// Sold stake fixed at one; bought stakes sum to one.
    Unit,
}

/// Maximizes the uniform margin `ε ≤ 1` of
/// `Σ b_k g_k(ω) − s·g_sold(ω) + ε ≤ 0` over the atoms of `cond`. Returns the
/// net stakes when the margin is positive.
fn margin_stakes(
    gains: &[Vec<Rational>],
    bought: &[usize],
    sold: usize,
    cond: u64,
    rule: SellRule,
) -> Option<Vec<(usize, Rational)>> {
    let k = bought.len();
    let free_sell = matches!(rule, SellRule::Free);
    let dim = k + usize::from(free_sell) + 1;
    let eps = dim - 1;
    let mut objective = vec![zero(); dim];
    objective[eps] = one();
    let mut lp = LinearProgram::maximize(objective).expect("non-empty");
    for j in 0..eps {
        lp.nonnegative(j).expect("in range");
    }
    lp.set_bounds(eps, None, Some(one())).expect("in range");
    let atoms = gains.first().map_or(0, Vec::len);
    for w in (0..atoms).filter(|w| cond & (1 << w) != 0) {
        let mut row = vec![zero(); dim];
        for (c, &i) in row.iter_mut().zip(bought) {
            *c = gains[i][w].clone();
        }
        row[eps] = one();
        let rhs = if free_sell {
            row[k] = -&gains[sold][w];
            zero()
        } else {
            gains[sold][w].clone()
        };
        lp.constrain(row, Relation::Le, rhs).expect("dimension");
    }
    let mut norm = vec![one(); dim];
    norm[eps] = zero();
    lp.constrain(norm, Relation::Eq, one()).expect("dimension");
    match lp_solve(&lp) {
        LpOutcome::Optimal { value, point } if value > zero() => {
            let mut stakes: Vec<(usize, Rational)> =
                bought.iter().copied().zip(point.iter().cloned()).collect();
            let s = if free_sell { point[k].clone() } else { one() };
            stakes.push((sold, -s));
            Some(stakes)
        }
        _ => None,
    }
}

/// All unions of non-empty families of the given masks.
fn union_closure(masks: &[u64]) -> BTreeSet<u64> {
    let mut closure: BTreeSet<u64> = BTreeSet::new();
    for &m in masks {
        let mut next: Vec<u64> = closure.iter().map(|&c| c | m).collect();
        next.push(m);
        closure.extend(next);
    }
    closure
}

fn union_of(masks: &[u64], idx: &[usize]) -> u64 {
    idx.iter().fold(0, |acc, &i| acc | masks[i])
}

fn validate_order(n: Order, min: usize, what: &str) -> Result<()> {
    match n {
        Order::Finite(k) if k < min => Err(Error::InvalidParameter(format!(
            "{what} needs n >= {min}, got {k}"
        ))),
        _ => Ok(()),
    }
}

/// Coherence restricted to betting schemes with at most `n` elementary
/// gains; `Order::Unbounded` is full (Williams) coherence.
pub fn check_n_coherent(p: &Assessment, n: Order) -> Result<Verdict> {
    validate_order(n, 1, "n-coherence")?;
    let gains = gain_table(p);
    let masks = cond_masks(p);
    let size = p.len();
    match n {
        Order::Finite(k) if k < size => {
            for t in 1..=k {
                for support in (0..size).combinations(t) {
                    let cond = union_of(&masks, &support);
                    for &sold in &support {
                        if let Some(st) = margin_stakes(&gains, &support, sold, cond, SellRule::Free) {
                            return Ok(Verdict::gain(Witness::from_stakes(p, &st)));
                        }
                    }
                }
            }
        }
        _ => {
            // A scheme conditioned on S only involves entries with B ⊆ S, so
            // it suffices to try every union S of conditioning events.
            for s in union_closure(&masks) {
                let allowed: Vec<usize> = (0..size).filter(|&i| masks[i] & !s == 0).collect();
                for &sold in &allowed {
                    if let Some(st) = margin_stakes(&gains, &allowed, sold, s, SellRule::Free) {
                        return Ok(Verdict::gain(Witness::from_stakes(p, &st)));
                    }
                }
            }
        }
    }
    Ok(Verdict::Satisfied)
}

/// Convexity restricted to one sold and at most `n − 1` bought gains;
/// `Order::Unbounded` is full convexity.
pub fn check_n_convex(p: &Assessment, n: Order) -> Result<Verdict> {
    validate_order(n, 2, "n-convexity")?;
    let gains = gain_table(p);
    let masks = cond_masks(p);
    let size = p.len();
    match n {
        Order::Finite(k) if k - 1 < size => {
            for t in 1..k {
                for support in (0..size).combinations(t) {
                    let cond = union_of(&masks, &support);
                    for sold in 0..size {
                        let c = cond | masks[sold];
                        if let Some(st) = margin_stakes(&gains, &support, sold, c, SellRule::Unit) {
                            return Ok(Verdict::gain(Witness::from_stakes(p, &st)));
                        }
                    }
                }
            }
        }
        _ => {
            let closure = union_closure(&masks);
            for sold in 0..size {
                let targets: BTreeSet<u64> = closure.iter().map(|&u| u | masks[sold]).collect();
                for s in targets {
                    let allowed: Vec<usize> =
                        (0..size).filter(|&i| masks[i] & !s == 0).collect();
                    if let Some(st) = margin_stakes(&gains, &allowed, sold, s, SellRule::Unit) {
                        return Ok(Verdict::gain(Witness::from_stakes(p, &st)));
                    }
                }
            }
        }
    }
    Ok(Verdict::Satisfied)
}

pub fn check_coherent(p: &Assessment) -> Verdict {
    check_n_coherent(p, Order::Unbounded).expect("valid order")
}

pub fn check_convex(p: &Assessment) -> Verdict {
    check_n_convex(p, Order::Unbounded).expect("valid order")
}

/// Every conditioning event `B` of the domain has `0|B` assessed at zero.
pub fn check_centered(p: &Assessment) -> Verdict {
    let mut seen = BTreeSet::new();
    for e in p.entries() {
        let cond = e.cond();
        if !seen.insert(cond.mask()) {
            continue;
        }
        let zero_gamble = ConditionalGamble::new(Gamble::zero(p.partition()), cond.clone())
            .expect("condition is non-empty");
        match p.get(&zero_gamble) {
            Some(v) if *v == zero() => {}
            other => {
                return Verdict::Violated(Violation::Uncentered {
                    cond: cond.clone(),
                    value: other.cloned(),
                })
            }
        }
    }
    Verdict::Satisfied
}

pub fn check_centered_2convex(p: &Assessment) -> Verdict {
    match check_centered(p) {
        Verdict::Satisfied => check_2convex(p),
        v => v,
    }
}

pub fn check_c_convex(p: &Assessment) -> Verdict {
    match check_centered(p) {
        Verdict::Satisfied => check_convex(p),
        v => v,
    }
}

/// For a domain consisting of exactly the unconditional indicators of all
/// events, the entry index of each event keyed by its mask.
pub fn event_domain(p: &Assessment) -> Result<Vec<usize>> {
    let partition = p.partition();
    let n = partition.size();
    if n > 20 {
        return Err(Error::InvalidParameter(format!(
            "capacity checks enumerate 2^{n} events"
        )));
    }
    let mut index = vec![None; 1 << n];
    for (i, e) in p.entries().iter().enumerate() {
        let g = e.gamble.gamble();
        let is_indicator = g.values().iter().all(|v| *v == zero() || *v == one());
        if !e.cond().is_omega() || !is_indicator {
            return Err(Error::InvalidParameter(format!(
                "{} is not an unconditional event indicator",
                e.gamble
            )));
        }
        let mask = (0..n)
            .filter(|&w| *g.value(w) == one())
            .fold(0usize, |m, w| m | (1 << w));
        index[mask] = Some(i);
    }
    let missing: Vec<String> = index
        .iter()
        .enumerate()
        .filter(|(_, i)| i.is_none())
        .map(|(m, _)| Event::from_mask(partition, m as u64).to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingEntries(missing));
    }
    Ok(index.into_iter().map(|i| i.expect("checked")).collect())
}

/// Normalised, inclusion-monotone set function on the full powerset.
pub fn check_capacity(p: &Assessment) -> Result<Verdict> {
    let index = event_domain(p)?;
    let value = |m: usize| &p.entries()[index[m]].value;
    let full = index.len() - 1;
    let empty = index[0];
    if *value(0) != zero() {
        let stake = if *value(0) > zero() { one() } else { -one() };
        return Ok(Verdict::gain(Witness::from_stakes(p, &[(empty, stake)])));
    }
    if *value(full) != one() {
        let stake = if *value(full) > one() { one() } else { -one() };
        return Ok(Verdict::gain(Witness::from_stakes(p, &[(index[full], stake)])));
    }
    // Monotonicity along single-atom steps implies it for all inclusions.
    for m in 0..=full {
        for w in 0..p.partition().size() {
            let bigger = m | (1 << w);
            if bigger != m && value(m) > value(bigger) {
                return Ok(Verdict::gain(Witness::from_stakes(
                    p,
                    &[(index[m], one()), (index[bigger], -one())],
                )));
            }
        }
    }
    Ok(Verdict::Satisfied)
}

/// `[inf((λ−1)X|B) + P(X|B), sup((λ−1)X|B) + P(X|B)]`: the range of values
/// of `P(λX|B)` compatible with 2-convexity given `P(X|B)`.
pub fn scaling_bounds(
    x: &ConditionalGamble,
    value: &Rational,
    lambda: &Rational,
) -> (Rational, Rational) {
    let d = x.gamble().scale(&(lambda - one()));
    let lo = restrict_inf(&d, x.cond()).expect("non-empty") + value;
    let hi = restrict_sup(&d, x.cond()).expect("non-empty") + value;
    (lo, hi)
}

/// A single instance of one of the structural axioms.
#[derive(Debug, Clone)]
pub enum AxiomInstance {
    /// `P(X|B) − P(Y|B) ≤ sup(X − Y|B)`.
    A1 { x: Gamble, y: Gamble, cond: Event },
    /// `X|B ≥ Y|B + μ ⇒ P(X|B) ≥ P(Y|B) + μ`.
    A1Prime {
        x: Gamble,
        y: Gamble,
        mu: Rational,
        cond: Event,
    },
    /// `P(λX|B) = λP(X|B)` for `λ ≥ 0`.
    A2 {
        x: Gamble,
        lambda: Rational,
        cond: Event,
    },
    /// `P(X + Y|B) ≥ P(X|B) + P(Y|B)`.
    A3 { x: Gamble, y: Gamble, cond: Event },
    /// `P(A(X − P(X|A∧B))|B) = 0` with `A∧B ≠ ∅`.
    A4 { x: Gamble, a: Event, b: Event },
    /// `P(λX + (1−λ)Y|B) ≥ λP(X|B) + (1−λ)P(Y|B)` for `0 < λ < 1`.
    A5 {
        x: Gamble,
        y: Gamble,
        lambda: Rational,
        cond: Event,
    },
    /// `P(λX|B) ≤ λP(X|B)` for `λ < 0`.
    A6 {
        x: Gamble,
        lambda: Rational,
        cond: Event,
    },
    /// `X|B ≥ Y|B ⇒ P(X|B) ≥ P(Y|B)`.
    Monotone { x: Gamble, y: Gamble, cond: Event },
    /// `P(X + μ|B) = P(X|B) + μ`.
    Translation {
        x: Gamble,
        mu: Rational,
        cond: Event,
    },
}

struct Lookup<'a> {
    p: &'a Assessment,
    missing: Vec<String>,
}

impl Lookup<'_> {
    fn get(&mut self, x: &Gamble, cond: &Event) -> Result<Rational> {
        let cg = ConditionalGamble::new(x.clone(), cond.clone())?;
        match self.p.get(&cg) {
            Some(v) => Ok(v.clone()),
            None => {
                self.missing.push(cg.to_string());
                Ok(zero())
            }
        }
    }
}

/// Evaluates one axiom instance exactly. Every conditional gamble the
/// instance mentions must be assessed.
pub fn check_axiom(p: &Assessment, instance: &AxiomInstance) -> Result<bool> {
    use AxiomInstance::*;
    let mut l = Lookup {
        p,
        missing: Vec::new(),
    };
    let holds = match instance {
        A1 { x, y, cond } => {
            let lhs = l.get(x, cond)? - l.get(y, cond)?;
            lhs <= restrict_sup(&x.checked_sub(y)?, cond)?
        }
        A1Prime { x, y, mu, cond } => {
            let px = l.get(x, cond)?;
            let py = l.get(y, cond)?;
            let premise = restrict_inf(&x.checked_sub(y)?, cond)? >= *mu;
            !premise || px >= py + mu
        }
        A2 { x, lambda, cond } => {
            if *lambda < zero() {
                return Err(Error::InvalidParameter("A2 needs lambda >= 0".into()));
            }
            l.get(&x.scale(lambda), cond)? == lambda * l.get(x, cond)?
        }
        A3 { x, y, cond } => {
            l.get(&x.checked_add(y)?, cond)? >= l.get(x, cond)? + l.get(y, cond)?
        }
        A4 { x, a, b } => {
            let ab = a.intersection(b)?;
            if ab.is_empty() {
                return Err(Error::InvalidParameter("A4 needs A and B to intersect".into()));
            }
            let inner = l.get(x, &ab)?;
            let composite = x.shift(&-inner).restrict(a)?;
            l.get(&composite, b)? == zero()
        }
        A5 {
            x,
            y,
            lambda,
            cond,
        } => {
            if *lambda <= zero() || *lambda >= one() {
                return Err(Error::InvalidParameter("A5 needs 0 < lambda < 1".into()));
            }
            let mix = x.scale(lambda).checked_add(&y.scale(&(one() - lambda)))?;
            l.get(&mix, cond)? >= lambda * l.get(x, cond)? + (one() - lambda) * l.get(y, cond)?
        }
        A6 { x, lambda, cond } => {
            if *lambda >= zero() {
                return Err(Error::InvalidParameter("A6 needs lambda < 0".into()));
            }
            l.get(&x.scale(lambda), cond)? <= lambda * l.get(x, cond)?
        }
        Monotone { x, y, cond } => {
            let px = l.get(x, cond)?;
            let py = l.get(y, cond)?;
            restrict_inf(&x.checked_sub(y)?, cond)? < zero() || px >= py
        }
        Translation { x, mu, cond } => l.get(&x.shift(mu), cond)? == l.get(x, cond)? + mu,
    };
    if !l.missing.is_empty() {
        l.missing.dedup();
        return Err(Error::MissingEntries(l.missing));
    }
    Ok(holds)
}

/// Every check applicable to `p`, with `n` for the n-term variants.
pub fn classify_with(p: &Assessment, n: usize) -> Result<Vec<(ConsistencyClass, Verdict)>> {
    use ConsistencyClass::*;
    let mut table = vec![
        (Internality, check_internality(p)),
        (OneAul, check_1aul(p)),
        (TwoConvex, check_2convex(p)),
        (CenteredTwoConvex, check_centered_2convex(p)),
        (TwoCoherent, check_2coherent(p)),
        (NConvex(Order::Finite(n)), check_n_convex(p, Order::Finite(n))?),
        (NCoherent(Order::Finite(n)), check_n_coherent(p, Order::Finite(n))?),
        (Convex, check_convex(p)),
        (CConvex, check_c_convex(p)),
        (Coherent, check_coherent(p)),
    ];
    if let Ok(v) = check_capacity(p) {
        table.push((Capacity, v));
    }
    debug_assert!(lattice_counterexample(&table).is_none());
    Ok(table)
}

/// [`classify_with`] using three-term variants.
pub fn classify(p: &Assessment) -> Vec<(ConsistencyClass, Verdict)> {
    classify_with(p, 3).expect("n = 3 is valid")
}

/// The first implication between classes that a table breaks, if any.
pub fn lattice_counterexample(
    table: &[(ConsistencyClass, Verdict)],
) -> Option<(ConsistencyClass, ConsistencyClass)> {
    use ConsistencyClass::*;
    let ok = |c: ConsistencyClass| {
        table
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| v.is_satisfied())
    };
    let mut implications = vec![
        (Coherent, Convex),
        (Coherent, TwoCoherent),
        (TwoCoherent, TwoConvex),
        (TwoCoherent, Internality),
        (Internality, OneAul),
        (CenteredTwoConvex, TwoConvex),
        (CenteredTwoConvex, Internality),
        (CConvex, Convex),
        (CConvex, CenteredTwoConvex),
        (Convex, TwoConvex),
    ];
    for (k, _) in table {
        match *k {
            NCoherent(n) => {
                implications.push((Coherent, NCoherent(n)));
                implications.push((NCoherent(n), TwoCoherent));
                implications.push((NCoherent(n), Internality));
            }
            NConvex(n) => {
                implications.push((Coherent, NConvex(n)));
                implications.push((Convex, NConvex(n)));
                implications.push((NConvex(n), TwoConvex));
            }
            _ => {}
        }
    }
    implications.into_iter().find(|&(a, b)| {
        // n-coherence with n = 1 does not imply 2-coherence.
        let vacuous = matches!(a, NCoherent(Order::Finite(k)) if k < 2)
            && b == TwoCoherent;
        !vacuous && ok(a) == Some(true) && ok(b) == Some(false)
    })
}

impl From<usize> for Order {
    fn from(n: usize) -> Self {
        Order::Finite(n)
    }
}
