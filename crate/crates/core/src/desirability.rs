//! The set of desirable gambles `A′` generated by an assessment.
//!
//! `A′` contains the gambles `λB(X − x) + Y` where `X|B` is an assessed
//! entry, `x < P(X|B)`, `λ ≥ 0` and `Y ≥ 0`. In 2-convex mode `λ` is fixed
//! at one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checker::{check_1aul, check_2coherent, check_centered, Mode};
use crate::rational::{max_of, one, rat, zero, ExtendedValue, Rational};
use crate::solver::{lp_solve, LinearProgram, LpOutcome, Relation};
use crate::space::{Assessment, ConditionalGamble, Event, Gamble};

pub type DesirabilityMode = Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Entry { index: usize },
    /// Membership through the nonnegative part alone (`λ = 0`).
    NonnegOnly,
}

/// `λ·B(X − price) + residual`, certifying membership in `A′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub generator: Generator,
    pub lambda: Rational,
    /// Absent for [`Generator::NonnegOnly`].
    pub price: Option<Rational>,
    pub residual: Gamble,
}

impl MembershipWitness {
    pub fn reconstruct(&self, p: &Assessment) -> Gamble {
        match (self.generator, &self.price) {
            (Generator::Entry { index }, Some(x)) => {
                let bet = p.entries()[index].gamble.gain(x).scale(&self.lambda);
                &bet + &self.residual
            }
            _ => self.residual.clone(),
        }
    }

    /// Checks the witness against `z` and the side conditions of `A′`.
    pub fn is_sound(&self, p: &Assessment, z: &Gamble, mode: Mode) -> bool {
        let side = match (self.generator, &self.price) {
            (Generator::Entry { index }, Some(x)) => {
                index < p.len()
                    && *x < p.entries()[index].value
                    && self.lambda >= zero()
                    && (mode == Mode::TwoCoherent || self.lambda == one())
            }
            (Generator::NonnegOnly, None) => {
                mode == Mode::TwoCoherent && self.lambda == zero()
            }
            _ => false,
        };
        side && self.residual.is_nonnegative() && self.reconstruct(p) == *z
    }
}

fn nonneg_witness(z: &Gamble) -> MembershipWitness {
    MembershipWitness {
        generator: Generator::NonnegOnly,
        lambda: zero(),
        price: None,
        residual: z.clone(),
    }
}

/// Decides `z ∈ A′` through entry `index`. With `λ` free the constraints are
/// linear in `(λ, μ) = (λ, λx)`.
fn member_via_entry(p: &Assessment, index: usize, z: &Gamble, mode: Mode) -> Option<MembershipWitness> {
    let e = &p.entries()[index];
    let x = e.gamble.gamble();
    let b = e.cond();
    let v = &e.value;
    let witness = |lambda: Rational, price: Rational| {
        let residual = z - &e.gamble.gain(&price).scale(&lambda);
        MembershipWitness {
            generator: Generator::Entry { index },
            lambda,
            price: Some(price),
            residual,
        }
    };
    match mode {
        Mode::TwoConvex => {
            if b.complement().atoms().any(|w| *z.value(w) < zero()) {
                return None;
            }
            let diffs: Vec<Rational> = b.atoms().map(|w| x.value(w) - z.value(w)).collect();
            let price = max_of(&diffs).expect("non-empty condition");
            (price < *v).then(|| witness(one(), price))
        }
        Mode::TwoCoherent => {
            let mut lp = LinearProgram::maximize(vec![v.clone(), -one()]).expect("dimension");
            lp.nonnegative(0).expect("in range");
            for w in 0..z.values().len() {
                // Z(ω) − λB(ω)X(ω) + μB(ω) ≥ 0.
                let (a, c) = if b.contains(w) {
                    (-x.value(w).clone(), one())
                } else {
                    (zero(), zero())
                };
                lp.constrain(vec![a, c], Relation::Ge, -z.value(w).clone())
                    .expect("dimension");
            }
            let point = match lp_solve(&lp) {
                LpOutcome::Optimal { value, point } if value > zero() => point,
                LpOutcome::Unbounded { point, ray } => {
                    let base = lp.objective_value(&point);
                    let slope = lp.objective_value(&ray);
                    let t = if base >= one() {
                        zero()
                    } else {
                        (one() - base) / slope
                    };
                    point.iter().zip(&ray).map(|(p, r)| p + &t * r).collect()
                }
                _ => return None,
            };
            // A positive objective forces λ > 0 once z ≥ 0 is excluded.
            let lambda = point[0].clone();
            if lambda <= zero() {
                return None;
            }
            let price = &point[1] / &lambda;
            Some(witness(lambda, price))
        }
    }
}

/// A witness of `z ∈ A′`, or `None` if `z` is not in the set.
pub fn aprime_member(p: &Assessment, z: &Gamble, mode: Mode) -> Option<MembershipWitness> {
    if mode == Mode::TwoCoherent && z.is_nonnegative() {
        return Some(nonneg_witness(z));
    }
    (0..p.len()).find_map(|i| member_via_entry(p, i, z, mode))
}

/// `sup{x : B(X − x) ∈ A′}` for `target = X|B`.
///
/// On assessed entries this recovers `P` when `P` is 2-coherent (resp.
/// 2-convex); on other targets it coincides with the corresponding natural
/// extension.
pub fn recover_prevision(p: &Assessment, target: &ConditionalGamble, mode: Mode) -> ExtendedValue {
    let mut best = match mode {
        Mode::TwoCoherent => ExtendedValue::Finite(target.inf()),
        Mode::TwoConvex => ExtendedValue::NegInfinity,
    };
    for e in p.entries() {
        let candidate = recover_via_entry(target, e.gamble.gamble(), e.cond(), &e.value, mode);
        if candidate > best {
            best = candidate;
            if best == ExtendedValue::PosInfinity {
                break;
            }
        }
    }
    best
}

/// Variables `(λ, μ, x)`; `λ` is pinned to one in 2-convex mode.
fn recover_via_entry(
    target: &ConditionalGamble,
    y: &Gamble,
    c: &Event,
    w: &Rational,
    mode: Mode,
) -> ExtendedValue {
    let z = target.gamble();
    let b = target.cond();
    let build = |objective: Vec<Rational>| {
        let mut lp = LinearProgram::maximize(objective).expect("dimension");
        match mode {
            Mode::TwoCoherent => lp.nonnegative(0).expect("in range"),
            Mode::TwoConvex => lp.set_bounds(0, Some(one()), Some(one())).expect("in range"),
        };
        for atom in 0..z.values().len() {
            // B(Z − x) − λC·Y + μC ≥ 0.
            let (bz, bx) = if b.contains(atom) {
                (z.value(atom).clone(), -one())
            } else {
                (zero(), zero())
            };
            let (cy, cm) = if c.contains(atom) {
                (-y.value(atom).clone(), one())
            } else {
                (zero(), zero())
            };
            lp.constrain(vec![cy, cm, bx], Relation::Ge, -bz)
                .expect("dimension");
        }
        lp
    };
    let slack = build(vec![w.clone(), -one(), zero()]);
    match lp_solve(&slack) {
        LpOutcome::Optimal { value, .. } if value > zero() => {}
        LpOutcome::Unbounded { .. } => {}
        _ => return ExtendedValue::NegInfinity,
    }
    let mut price = build(vec![zero(), zero(), one()]);
    price
        .constrain(vec![w.clone(), -one(), zero()], Relation::Ge, zero())
        .expect("dimension");
    match lp_solve(&price) {
        LpOutcome::Optimal { value, .. } => ExtendedValue::Finite(value),
        LpOutcome::Unbounded { .. } => ExtendedValue::PosInfinity,
        LpOutcome::Infeasible => ExtendedValue::NegInfinity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomProperty {
    /// `a·A′ + X⪰ ⊆ A′` (`a = 1` in 2-convex mode).
    Additivity,
    /// 2-coherent: `X⪯ ∩ A′ = {0}`. 2-convex: `X⪯ ∩ A′ = ∅` iff `P` is
    /// 1-AUL.
    NonpositiveMembers,
    /// `(A′ + A′) \ {0}` avoids `X⪯`.
    PairSums,
    /// For centered `P`, gambles strictly positive on a conditioning event
    /// and zero elsewhere are members.
    PositiveOnConditions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: usize,
    pub gamble: Gamble,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub property: AxiomProperty,
    /// Whether the property is expected to hold for this assessment; when
    /// false, counterexamples are informative only.
    pub asserted: bool,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| !o.asserted || o.counterexamples.is_empty())
    }
}

/// Uniform on `{lo, lo + 1/8, ..., hi}` with bounds given in eighths.
fn eighths(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), 8)
}

fn random_gamble(rng: &mut ChaCha8Rng, p: &Assessment, lo: i64, hi: i64) -> Gamble {
    Gamble::from_fn(p.partition(), |_| eighths(rng, lo, hi))
}

/// A random member of `A′` built from a random generator, or `None` when the
/// set has no generators.
fn random_member(rng: &mut ChaCha8Rng, p: &Assessment, mode: Mode) -> Option<Gamble> {
    let residual = random_gamble(rng, p, 0, 16);
    let choices = p.len() + usize::from(mode == Mode::TwoCoherent);
    if choices == 0 {
        return None;
    }
    let pick = rng.gen_range(0..choices);
    if pick == p.len() {
        return Some(residual);
    }
    let e = &p.entries()[pick];
    let lambda = match mode {
        Mode::TwoCoherent => eighths(rng, 0, 32),
        Mode::TwoConvex => one(),
    };
    let price = &e.value - eighths(rng, 1, 16);
    Some(&e.gamble.gain(&price).scale(&lambda) + &residual)
}

fn record(
    outcome: &mut AxiomOutcome,
    sample: usize,
    gamble: &Gamble,
    ok: bool,
    detail: impl FnOnce() -> String,
) {
    outcome.checked += 1;
    if !ok {
        outcome.counterexamples.push(Counterexample {
            sample,
            gamble: gamble.clone(),
            detail: detail(),
        });
    }
}

/// Samples members of `A′` and checks the structural properties of the set.
/// Sample `i` draws from its own stream of a generator seeded by `seed`, so
/// results do not depend on evaluation order.
pub fn axiom_suite(p: &Assessment, mode: Mode, samples: usize, seed: u64) -> AxiomReport {
    let coherent = check_2coherent(p).is_satisfied();
    let one_aul = check_1aul(p).is_satisfied();
    let centered = check_centered(p).is_satisfied();
    let new = |property, asserted| AxiomOutcome {
        property,
        asserted,
        checked: 0,
        counterexamples: Vec::new(),
    };
    let mut additivity = new(AxiomProperty::Additivity, true);
    let mut nonpositive = new(
        AxiomProperty::NonpositiveMembers,
        mode == Mode::TwoConvex || coherent,
    );
    let mut sums = new(AxiomProperty::PairSums, coherent);
    let mut positive = new(AxiomProperty::PositiveOnConditions, centered);
    let partition = p.partition();

    let member = |z: &Gamble| {
        let w = aprime_member(p, z, mode);
        if let Some(w) = &w {
            debug_assert!(w.is_sound(p, z, mode));
        }
        w.is_some()
    };

    let mut nonpositive_member: Option<(usize, Gamble)> = None;
    if mode == Mode::TwoCoherent {
        let zero_gamble = Gamble::zero(partition);
        record(&mut nonpositive, 0, &zero_gamble, member(&zero_gamble), || {
            "the zero gamble is not a member".into()
        });
    } else {
        for e in p.entries() {
            let candidate = e.gamble.gain(&e.gamble.sup());
            if member(&candidate) {
                nonpositive_member.get_or_insert((0, candidate));
            }
        }
    }

    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let Some(z) = random_member(&mut rng, p, mode) else {
            continue;
        };
        let a = match mode {
            Mode::TwoCoherent => eighths(&mut rng, 0, 32),
            Mode::TwoConvex => one(),
        };
        let extra = random_gamble(&mut rng, p, 0, 16);
        let combined = &z.scale(&a) + &extra;
        record(&mut additivity, i, &combined, member(&combined), || {
            format!("{a}·Z + Y is not a member for Z = {z}, Y = {extra}")
        });

        let n = random_gamble(&mut rng, p, -16, 0);
        match mode {
            Mode::TwoCoherent => {
                let ok = n.is_zero() || !member(&n);
                record(&mut nonpositive, i, &n, ok, || "nonpositive member".into());
                if z.is_nonpositive() {
                    record(&mut nonpositive, i, &z, z.is_zero(), || {
                        "sampled member is nonpositive and nonzero".into()
                    });
                }
            }
            Mode::TwoConvex => {
                if nonpositive_member.is_none() && member(&n) {
                    nonpositive_member = Some((i, n.clone()));
                }
            }
        }

        if mode == Mode::TwoCoherent {
            if let Some(z2) = random_member(&mut rng, p, mode) {
                let total = &z + &z2;
                let ok = total.is_zero() || total.sup() > zero();
                record(&mut sums, i, &total, ok, || {
                    format!("{z} + {z2} has nonpositive supremum")
                });
            }
        }

        if mode == Mode::TwoConvex {
            for e in p.entries() {
                let b = e.cond();
                let g = Gamble::from_fn(partition, |w| {
                    if b.contains(w) {
                        eighths(&mut rng, 1, 16)
                    } else {
                        zero()
                    }
                });
                record(&mut positive, i, &g, member(&g), || {
                    format!("positive gamble on {b} is not a member")
                });
            }
        }
    }

    let mut outcomes = vec![additivity];
    if mode == Mode::TwoConvex {
        // Emptiness of the nonpositive part must match 1-AUL.
        let found = nonpositive_member.is_some();
        nonpositive.checked += 1;
        if found == one_aul {
            let (sample, gamble) = nonpositive_member
                .unwrap_or_else(|| (0, Gamble::zero(partition)));
            nonpositive.counterexamples.push(Counterexample {
                sample,
                gamble,
                detail: format!("1-AUL is {one_aul} but a nonpositive member was found: {found}"),
            });
        }
        outcomes.push(nonpositive);
        outcomes.push(positive);
    } else {
        outcomes.push(nonpositive);
        outcomes.push(sums);
    }
    AxiomReport {
        mode,
        seed,
        samples,
        outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::space::Partition;
    use std::sync::Arc;

    fn abc() -> Arc<Partition> {
        Partition::new(["a", "b", "c"]).unwrap()
    }

    fn expectation() -> Assessment {
        let p = abc();
        let probs = [rat(1, 2), rat(1, 4), rat(1, 4)];
        let b = Event::from_labels(&p, ["a", "b"]).unwrap();
        let x = Gamble::from_ints(&p, &[2, -2, 6]).unwrap();
        let y = Gamble::from_ints(&p, &[0, 1, 1]).unwrap();
        let cond_mean = |g: &Gamble, e: &Event| {
            let mass: Rational = e.atoms().map(|w| probs[w].clone()).sum();
            e.atoms().map(|w| &probs[w] * g.value(w)).sum::<Rational>() / mass
        };
        let omega = Event::omega(&p);
        Assessment::from_entries(
            &p,
            [
                (x.clone().given(b.clone()).unwrap(), cond_mean(&x, &b)),
                (x.clone().given(omega.clone()).unwrap(), cond_mean(&x, &omega)),
                (y.clone().given(omega.clone()).unwrap(), cond_mean(&y, &omega)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn basic_members() {
        let a = expectation();
        let p = a.partition().clone();
        let zero_gamble = Gamble::zero(&p);
        let w = aprime_member(&a, &zero_gamble, Mode::TwoCoherent).unwrap();
        assert_eq!(w.generator, Generator::NonnegOnly);
        let pos = Gamble::from_ints(&p, &[0, 3, 1]).unwrap();
        assert!(aprime_member(&a, &pos, Mode::TwoCoherent).unwrap().is_sound(&a, &pos, Mode::TwoCoherent));
        let e = &a.entries()[0];
        let bet = e.gamble.gain(&(&e.value - rat(1, 3)));
        for mode in [Mode::TwoCoherent, Mode::TwoConvex] {
            let w = aprime_member(&a, &bet, mode).unwrap();
            assert!(w.is_sound(&a, &bet, mode));
        }
        let at_price = e.gamble.gain(&e.value);
        assert!(aprime_member(&a, &-&pos, Mode::TwoCoherent).is_none());
        assert!(aprime_member(&a, &at_price.shift(&rat(-1, 100)), Mode::TwoCoherent).is_none());
    }

    #[test]
    fn recovery_on_expectation() {
        let a = expectation();
        for mode in [Mode::TwoCoherent, Mode::TwoConvex] {
            for e in a.entries() {
                assert_eq!(
                    recover_prevision(&a, &e.gamble, mode),
                    ExtendedValue::Finite(e.value.clone())
                );
            }
        }
    }

    #[test]
    fn recovery_is_infinite_without_1aul() {
        let p = abc();
        let x = ConditionalGamble::unconditional(Gamble::from_ints(&p, &[0, 1, 2]).unwrap());
        let a = Assessment::from_entries(&p, [(x.clone(), int(5))]).unwrap();
        assert_eq!(recover_prevision(&a, &x, Mode::TwoCoherent), ExtendedValue::PosInfinity);
    }

    #[test]
    fn suite_on_expectation() {
        let a = expectation();
        let r = axiom_suite(&a, Mode::TwoCoherent, 50, 7);
        assert!(r.passed(), "{r:?}");
        assert!(r.outcomes.iter().all(|o| o.checked > 0));
    }

    #[test]
    fn suite_is_reproducible() {
        let a = expectation();
        assert_eq!(
            axiom_suite(&a, Mode::TwoConvex, 20, 3),
            axiom_suite(&a, Mode::TwoConvex, 20, 3)
        );
    }
}
