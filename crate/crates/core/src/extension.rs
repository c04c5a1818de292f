//! The 2-convex and 2-coherent natural extensions and the Generalized Bayes
//! Rule family.

use crate::checker::{check_2coherent, check_2convex, Mode, Verdict};
use crate::error::{Error, Result};
use crate::rational::{max_of, one, zero, ExtendedValue, Rational};
use crate::solver::{concave_pwl_max, AffinePiece};
use crate::space::{Assessment, ConditionalGamble, Event, Gamble};

/// Where the supremum defining an extension comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attainment {
    /// A gain on the entry with this index; `stake` is the buying stake of
    /// the entry in the 2-coherent case.
    Entry {
        index: usize,
        stake: Option<Rational>,
    },
    /// The bound `inf(Z|B)` that needs no entry at all.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    /// The supremum of an open set of admissible prices; it is never itself
    /// admissible.
    pub value: ExtendedValue,
    /// Present exactly when `value` is finite.
    pub attained_by: Option<Attainment>,
}

/// Entries whose gain `g` is negative on every atom of `A∧¬B`, with that
/// gain. Only these can be sold in a scheme conditioned on `A∨B`.
fn admissible_gains<'a>(
    p: &'a Assessment,
    cond: &'a Event,
) -> impl Iterator<Item = (usize, Gamble)> + 'a {
    p.entries().iter().enumerate().filter_map(move |(i, e)| {
        let g = e.gain();
        let outside = e.cond().intersection(&cond.complement()).ok()?;
        let c = max_of(outside.atoms().map(|w| g.value(w)));
        match c {
            Some(c) if c >= zero() => None,
            _ => Some((i, g)),
        }
    })
}

/// `E_2c(Z|B)`: the supremum of the prices `α` at which buying `Z|B` and
/// selling one entry with unit stakes has a negative conditional supremum.
pub fn natext_2convex(p: &Assessment, target: &ConditionalGamble) -> ExtensionReport {
    let z = target.gamble();
    let b = target.cond();
    let mut best: Option<(Rational, usize)> = None;
    for (i, g) in admissible_gains(p, b) {
        let m = max_of(&b.atoms().map(|w| g.value(w) - z.value(w)).collect::<Vec<_>>())
            .expect("non-empty condition");
        let bound = -m;
        if best.as_ref().map_or(true, |(v, _)| bound > *v) {
            best = Some((bound, i));
        }
    }
    match best {
        Some((v, index)) => ExtensionReport {
            value: ExtendedValue::Finite(v),
            attained_by: Some(Attainment::Entry { index, stake: None }),
        },
        None => ExtensionReport {
            value: ExtendedValue::NegInfinity,
            attained_by: None,
        },
    }
}

/// `E_2(Z|B)`: as [`natext_2convex`] with a free nonnegative stake on the
/// sold entry, plus the stake-free bound `inf(Z|B)`.
pub fn natext_2coherent(p: &Assessment, target: &ConditionalGamble) -> ExtensionReport {
    let z = target.gamble();
    let b = target.cond();
    let mut value = ExtendedValue::Finite(target.inf());
    let mut attained_by = Some(Attainment::Vacuous);
    for (i, g) in admissible_gains(p, b) {
        let pieces: Vec<AffinePiece> = b
            .atoms()
            .map(|w| AffinePiece::new(-g.value(w), z.value(w).clone()))
            .collect();
        let r = concave_pwl_max(&pieces);
        if r.value > value {
            value = r.value;
            attained_by = r.argmax.map(|s| Attainment::Entry {
                index: i,
                stake: Some(s),
            });
            if !value.is_finite() {
                break;
            }
        }
    }
    ExtensionReport { value, attained_by }
}

pub fn natext(p: &Assessment, target: &ConditionalGamble, mode: Mode) -> ExtensionReport {
    match mode {
        Mode::TwoConvex => natext_2convex(p, target),
        Mode::TwoCoherent => natext_2coherent(p, target),
    }
}

/// Extends `p` to every target. On assessed targets the extension reproduces
/// the assessment exactly when the matching check passes.
pub fn natext_table(
    p: &Assessment,
    targets: &[ConditionalGamble],
    mode: Mode,
) -> Vec<ExtensionReport> {
    let reports: Vec<ExtensionReport> = targets.iter().map(|t| natext(p, t, mode)).collect();
    if cfg!(debug_assertions) {
        let consistent = match mode {
            Mode::TwoConvex => check_2convex(p).is_satisfied(),
            Mode::TwoCoherent => check_2coherent(p).is_satisfied(),
        };
        for (t, r) in targets.iter().zip(&reports) {
            if let Some(v) = p.get(t) {
                debug_assert!(r.value >= ExtendedValue::Finite(v.clone()));
                if consistent {
                    debug_assert_eq!(r.value, ExtendedValue::Finite(v.clone()));
                }
            }
        }
    }
    reports
}

/// `[inf(X|A), sup(X|A)]`.
pub fn gbr_interval(x: &ConditionalGamble) -> (Rational, Rational) {
    (x.inf(), x.sup())
}

/// Builds `{A → pA, X|A → pXA, A(X−r) → 0, A(X−q) → 0}` and checks it for
/// 2-coherence.
pub fn verify_gbr_family(
    a: &Event,
    x: &Gamble,
    r: &Rational,
    q: &Rational,
    pa: &Rational,
    pxa: &Rational,
) -> Result<Verdict> {
    let mut problems = Vec::new();
    if r == q {
        problems.push("r and q must differ".to_string());
    }
    if a.is_empty() || a.is_omega() {
        problems.push("A must be neither impossible nor sure".to_string());
    }
    if *pa <= zero() || *pa > one() {
        problems.push(format!("P(A) = {pa} is outside ]0, 1]"));
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParameter(problems.join("; ")));
    }
    let partition = a.partition();
    let omega = Event::omega(partition);
    let bet = |price: &Rational| -> Result<ConditionalGamble> {
        ConditionalGamble::new(x.shift(&-price.clone()).restrict(a)?, omega.clone())
    };
    let family = Assessment::from_entries(
        partition,
        [
            (ConditionalGamble::new(a.indicator(), omega.clone())?, pa.clone()),
            (ConditionalGamble::new(x.clone(), a.clone())?, pxa.clone()),
            (bet(r)?, zero()),
            (bet(q)?, zero()),
        ],
    )?;
    Ok(check_2coherent(&family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::space::{restrict_sup, Partition};
    use std::sync::Arc;

    fn abc() -> Arc<Partition> {
        Partition::new(["a", "b", "c"]).unwrap()
    }

    /// `sup L(Z|B)` for a single entry, scanning `α` over a grid.
    fn grid_2convex(entry: (&ConditionalGamble, &Rational), z: &ConditionalGamble) -> Option<Rational> {
        let (x, v) = entry;
        let g = x.gain(v);
        let cond = x.cond().union(z.cond()).unwrap();
        (-400..=400)
            .map(|k| rat(k, 16))
            .filter(|alpha| {
                let gain = &g - &z.gain(alpha);
                restrict_sup(&gain, &cond).unwrap() < zero()
            })
            .max()
    }

    #[test]
    fn zero_entry_gives_infimum() {
        let p = abc();
        let omega = Event::omega(&p);
        let zero_entry = ConditionalGamble::unconditional(Gamble::zero(&p));
        let a = Assessment::from_entries(&p, [(zero_entry.clone(), zero())]).unwrap();
        let z = ConditionalGamble::new(Gamble::from_ints(&p, &[3, -2, 5]).unwrap(), omega)
            .unwrap();
        let r = natext_2convex(&a, &z);
        assert_eq!(r.value, ExtendedValue::Finite(int(-2)));
        // The grid reaches the largest grid point strictly below the bound.
        assert_eq!(grid_2convex((&zero_entry, &zero()), &z), Some(int(-2) - rat(1, 16)));
    }

    #[test]
    fn contained_condition_gives_finite_value() {
        let p = abc();
        let c = Event::from_labels(&p, ["a"]).unwrap();
        let b = Event::from_labels(&p, ["a", "b"]).unwrap();
        let y = Gamble::from_ints(&p, &[1, 0, 0]).unwrap().given(c).unwrap();
        let a = Assessment::from_entries(&p, [(y, rat(1, 2))]).unwrap();
        let z = Gamble::from_ints(&p, &[2, 7, -3]).unwrap().given(b).unwrap();
        assert!(natext_2convex(&a, &z).value > ExtendedValue::NegInfinity);
    }

    #[test]
    fn empty_assessment() {
        let p = abc();
        let a = Assessment::new(&p);
        let z = ConditionalGamble::unconditional(Gamble::from_ints(&p, &[4, 1, 9]).unwrap());
        assert_eq!(natext_2convex(&a, &z).value, ExtendedValue::NegInfinity);
        let r = natext_2coherent(&a, &z);
        assert_eq!(r.value, ExtendedValue::Finite(int(1)));
        assert_eq!(r.attained_by, Some(Attainment::Vacuous));
    }

    #[test]
    fn non_1aul_gives_plus_infinity() {
        let p = abc();
        let z = ConditionalGamble::unconditional(Gamble::from_ints(&p, &[0, 1, 2]).unwrap());
        let a = Assessment::from_entries(&p, [(z.clone(), int(3))]).unwrap();
        assert_eq!(natext_2coherent(&a, &z).value, ExtendedValue::PosInfinity);
        let ok = Assessment::from_entries(&p, [(z.clone(), int(1))]).unwrap();
        assert_eq!(natext_2coherent(&ok, &z).value, ExtendedValue::Finite(int(1)));
        assert_eq!(natext_2convex(&ok, &z).value, ExtendedValue::Finite(int(1)));
    }

    #[test]
    fn extension_dominates_and_fixes_consistent_entries() {
        let p = abc();
        let b = Event::from_labels(&p, ["a", "b"]).unwrap();
        let x = Gamble::from_ints(&p, &[-1, 1, 0]).unwrap();
        let targets = vec![
            x.clone().given(b.clone()).unwrap(),
            x.scale(&int(2)).given(b.clone()).unwrap(),
        ];
        let convex =
            Assessment::from_entries(&p, targets.iter().cloned().zip([rat(1, 5), rat(6, 5)]))
                .unwrap();
        let r = natext_table(&convex, &targets, Mode::TwoConvex);
        assert_eq!(r[0].value, ExtendedValue::Finite(rat(1, 5)));
        assert_eq!(r[1].value, ExtendedValue::Finite(rat(6, 5)));
        // Not 2-coherent: buying 2X|B and selling X|B twice loses 4/5.
        let r = natext_table(&convex, &targets, Mode::TwoCoherent);
        assert_eq!(r[0].value, ExtendedValue::Finite(rat(3, 5)));
        assert_eq!(
            r[0].attained_by,
            Some(Attainment::Entry {
                index: 1,
                stake: Some(rat(1, 2))
            })
        );
        let homogeneous =
            Assessment::from_entries(&p, targets.iter().cloned().zip([rat(1, 5), rat(2, 5)]))
                .unwrap();
        let r = natext_table(&homogeneous, &targets, Mode::TwoCoherent);
        assert_eq!(r[0].value, ExtendedValue::Finite(rat(1, 5)));
        assert_eq!(r[1].value, ExtendedValue::Finite(rat(2, 5)));
        let bad =
            Assessment::from_entries(&p, targets.iter().cloned().zip([rat(1, 5), rat(13, 10)]))
                .unwrap();
        let r = natext_table(&bad, &targets, Mode::TwoConvex);
        assert_eq!(r[0].value, ExtendedValue::Finite(rat(3, 10)));
        assert_eq!(r[1].value, ExtendedValue::Finite(rat(13, 10)));
    }

    #[test]
    fn gbr() {
        let p = abc();
        let a = Event::from_labels(&p, ["a", "b"]).unwrap();
        let x = Gamble::from_ints(&p, &[-1, 1, 5]).unwrap();
        let xa = x.clone().given(a.clone()).unwrap();
        assert_eq!(gbr_interval(&xa), (int(-1), int(1)));
        let c = Gamble::constant(&p, rat(2, 3)).given(a.clone()).unwrap();
        assert_eq!(gbr_interval(&c), (rat(2, 3), rat(2, 3)));

        let half = rat(1, 2);
        let inside = verify_gbr_family(&a, &x, &rat(-1, 2), &rat(1, 3), &half, &zero()).unwrap();
        assert!(inside.is_satisfied());
        let outside = verify_gbr_family(&a, &x, &int(2), &zero(), &half, &zero()).unwrap();
        assert!(outside.witness().unwrap().is_valid());
        assert!(verify_gbr_family(&a, &x, &zero(), &zero(), &half, &zero()).is_err());
        assert!(
            verify_gbr_family(&Event::omega(&p), &x, &zero(), &one(), &half, &zero()).is_err()
        );
        assert!(verify_gbr_family(&a, &x, &zero(), &one(), &zero(), &zero()).is_err());
    }
}
