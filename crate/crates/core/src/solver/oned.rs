use crate::rational::{int, midpoint, zero, ExtendedValue, Rational};

/// A one-sided bound on a scalar, `s > value` / `s ≥ value` for lower bounds
/// and `s < value` / `s ≤ value` for upper bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound1d {
    pub value: Rational,
    pub strict: bool,
}

impl Bound1d {
    pub fn strict(value: Rational) -> Self {
        Bound1d {
            value,
            strict: true,
        }
    }

    pub fn weak(value: Rational) -> Self {
        Bound1d {
            value,
            strict: false,
        }
    }
}

fn tightest<'a>(bounds: &'a [Bound1d], lower: bool) -> Option<&'a Bound1d> {
    bounds.iter().reduce(|best, b| {
        let tighter = if lower {
            b.value > best.value
        } else {
            b.value < best.value
        };
        if tighter || (b.value == best.value && b.strict && !best.strict) {
            b
        } else {
            best
        }
    })
}

/// Finds some `s` satisfying every bound, or `None` if the bounds are
/// inconsistent. An empty list means no bound on that side.
pub fn strict_feasible_1d(lower: &[Bound1d], upper: &[Bound1d]) -> Option<Rational> {
    let lo = tightest(lower, true);
    let hi = tightest(upper, false);
    match (lo, hi) {
        (None, None) => Some(zero()),
        (Some(l), None) => Some(if l.strict {
            &l.value + int(1)
        } else {
            l.value.clone()
        }),
        (None, Some(h)) => Some(if h.strict {
            &h.value - int(1)
        } else {
            h.value.clone()
        }),
        (Some(l), Some(h)) => {
            if l.value < h.value {
                Some(midpoint(&l.value, &h.value))
            } else if l.value == h.value && !l.strict && !h.strict {
                Some(l.value.clone())
            } else {
                None
            }
        }
    }
}

/// The affine function `s ↦ intercept + slope·s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub slope: Rational,
    pub intercept: Rational,
}

impl AffinePiece {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        AffinePiece { slope, intercept }
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        &self.intercept + &self.slope * s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwlMax {
    pub value: ExtendedValue,
    /// Smallest maximizer; absent when the value is `+inf`.
    pub argmax: Option<Rational>,
}

fn lower_envelope(pieces: &[AffinePiece], s: &Rational) -> Rational {
    pieces
        .iter()
        .map(|p| p.eval(s))
        .min()
        .expect("non-empty pieces")
}

/// `sup_{s ≥ 0} min_i (intercept_i + slope_i·s)`.
///
/// The value is `+inf` exactly when every slope is positive (vacuously so
/// for no pieces). Otherwise the maximum is attained at `s = 0` or where two
/// pieces cross.
pub fn concave_pwl_max(pieces: &[AffinePiece]) -> PwlMax {
    if pieces.iter().all(|p| p.slope > zero()) {
        return PwlMax {
            value: ExtendedValue::PosInfinity,
            argmax: None,
        };
    }
    let mut candidates = vec![zero()];
    for (i, p) in pieces.iter().enumerate() {
        for q in &pieces[i + 1..] {
            if p.slope != q.slope {
                let s = (&q.intercept - &p.intercept) / (&p.slope - &q.slope);
                if s > zero() {
                    candidates.push(s);
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut best: Option<(Rational, Rational)> = None;
    for s in candidates {
        let v = lower_envelope(pieces, &s);
        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
            best = Some((v, s));
        }
    }
    let (value, s) = best.expect("s = 0 is always a candidate");
    PwlMax {
        value: ExtendedValue::Finite(value),
        argmax: Some(s),
    }
}
