#![allow(dead_code)]

use std::sync::Arc;

use prevision::models::{lower_envelope, FiniteDistribution};
use prevision::{rat, Assessment, ConditionalGamble, Event, Gamble, Partition, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn quarter(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo * 4..=hi * 4), 4)
}

pub fn random_gamble(rng: &mut ChaCha8Rng, p: &Arc<Partition>) -> Gamble {
    Gamble::from_fn(p, |_| quarter(rng, -2, 2))
}

pub fn random_event(rng: &mut ChaCha8Rng, p: &Arc<Partition>) -> Event {
    loop {
        let atoms: Vec<usize> = (0..p.size()).filter(|_| rng.gen_bool(0.5)).collect();
        if !atoms.is_empty() {
            return Event::from_indices(p, atoms).unwrap();
        }
    }
}

pub fn random_distribution(rng: &mut ChaCha8Rng, p: &Arc<Partition>) -> FiniteDistribution {
    let weights: Vec<i64> = (0..p.size()).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    FiniteDistribution::new(p, weights.iter().map(|&w| rat(w, total)).collect()).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavour {
    /// Lower envelope of one or two strictly positive distributions.
    Envelope,
    /// Values inside `[inf, sup]` of each conditional gamble.
    Internal,
    /// Values anywhere on the grid.
    Arbitrary,
}

/// A random assessment with up to `max_atoms` atoms and `max_entries`
/// entries. Scaled copies, negations and zero gambles are mixed in so that
/// the pairwise structure is exercised.
pub fn random_assessment(
    rng: &mut ChaCha8Rng,
    max_atoms: usize,
    max_entries: usize,
) -> (Assessment, Flavour) {
    let flavour = match rng.gen_range(0..3) {
        0 => Flavour::Envelope,
        1 => Flavour::Internal,
        _ => Flavour::Arbitrary,
    };
    let p = Partition::anonymous(rng.gen_range(2..=max_atoms)).unwrap();
    let count = rng.gen_range(1..=max_entries);
    let mut targets: Vec<ConditionalGamble> = Vec::new();
    while targets.len() < count {
        let t = match (targets.last(), rng.gen_range(0..6)) {
            (Some(prev), 0) => {
                let lambda = [rat(-1, 1), rat(2, 1), rat(1, 2)][rng.gen_range(0..3)].clone();
                prev.scaled(&lambda)
            }
            (Some(prev), 1) => {
                ConditionalGamble::new(Gamble::zero(&p), prev.cond().clone()).unwrap()
            }
            _ => ConditionalGamble::new(random_gamble(rng, &p), random_event(rng, &p)).unwrap(),
        };
        if !targets.contains(&t) {
            targets.push(t);
        }
    }
    let assessment = match flavour {
        Flavour::Envelope => {
            let dists: Vec<FiniteDistribution> = (0..rng.gen_range(1..=2))
                .map(|_| random_distribution(rng, &p))
                .collect();
            lower_envelope(&dists, &targets).unwrap()
        }
        Flavour::Internal => Assessment::from_entries(
            &p,
            targets.iter().map(|t| {
                let (lo, hi) = (t.inf(), t.sup());
                let w = rat(rng.gen_range(0..=4), 4);
                let v = &lo + (&hi - &lo) * w;
                (t.clone(), v)
            }),
        )
        .unwrap(),
        Flavour::Arbitrary => Assessment::from_entries(
            &p,
            targets.iter().map(|t| (t.clone(), quarter(rng, -2, 2))),
        )
        .unwrap(),
    };
    (assessment, flavour)
}

/// Renders an assessment for triage output.
pub fn describe(p: &Assessment) -> String {
    let atoms = p.partition().atoms().join(",");
    let entries: Vec<String> = p
        .entries()
        .iter()
        .map(|e| format!("P({}) = {}", e.gamble, e.value))
        .collect();
    format!("atoms [{atoms}]; {}", entries.join("; "))
}
