//! Finite possibility spaces: partitions, events, gambles, conditional
//! gambles and assessments of lower previsions.
//!
//! Events are bit sets over the atoms of a shared [`Partition`]. Gambles are
//! total maps from atoms to exact rationals. A [`ConditionalGamble`] `X|B`
//! only depends on the values of `X` on the atoms of `B`, and equality is
//! defined accordingly.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{int, max_of, min_of, zero, Rational};

/// Default cap on the number of atoms of a partition.
pub const DEFAULT_MAX_ATOMS: usize = 16;

/// Events are stored as 64-bit masks, so no partition may exceed this.
pub const HARD_MAX_ATOMS: usize = 64;

/// An ordered set of mutually exclusive, exhaustive atoms.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    atoms: Vec<String>,
}

impl Partition {
    /// Builds a partition with the default atom limit.
    pub fn new<I, S>(labels: I) -> Result<Arc<Partition>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(labels, DEFAULT_MAX_ATOMS)
    }

    /// Builds a partition allowing at most `limit` atoms (never more than
    /// [`HARD_MAX_ATOMS`]).
    pub fn with_limit<I, S>(labels: I, limit: usize) -> Result<Arc<Partition>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = labels.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let limit = limit.min(HARD_MAX_ATOMS);
        if atoms.len() > limit {
            return Err(Error::TooManyAtoms {
                size: atoms.len(),
                limit,
            });
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::DuplicateAtom(a.clone()));
            }
        }
        Ok(Arc::new(Partition { atoms }))
    }

    /// A partition with atoms labelled `w0, w1, ...`.
    pub fn anonymous(size: usize) -> Result<Arc<Partition>> {
        Self::with_limit((0..size).map(|i| format!("w{i}")), HARD_MAX_ATOMS)
    }

    pub fn size(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    fn full_mask(&self) -> u64 {
        if self.atoms.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms.len()) - 1
        }
    }
}

pub(crate) fn same_partition(a: &Arc<Partition>, b: &Arc<Partition>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn ensure_same(a: &Arc<Partition>, b: &Arc<Partition>) -> Result<()> {
    if same_partition(a, b) {
        Ok(())
    } else {
        Err(Error::PartitionMismatch)
    }
}

/// A set of atoms of a partition.
#[derive(Clone)]
pub struct Event {
    partition: Arc<Partition>,
    mask: u64,
}

impl Event {
    /// The sure event.
    pub fn omega(partition: &Arc<Partition>) -> Event {
        Event {
            partition: partition.clone(),
            mask: partition.full_mask(),
        }
    }

    pub fn empty(partition: &Arc<Partition>) -> Event {
        Event {
            partition: partition.clone(),
            mask: 0,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        partition: &Arc<Partition>,
        indices: I,
    ) -> Result<Event> {
        let mut mask = 0u64;
        for i in indices {
            if i >= partition.size() {
                return Err(Error::AtomOutOfRange(i));
            }
            mask |= 1 << i;
        }
        Ok(Event {
            partition: partition.clone(),
            mask,
        })
    }

    pub fn from_labels<I, S>(partition: &Arc<Partition>, labels: I) -> Result<Event>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let indices = labels
            .into_iter()
            .map(|l| {
                partition
                    .index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownAtom(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(partition, indices)
    }

    pub(crate) fn from_mask(partition: &Arc<Partition>, mask: u64) -> Event {
        Event {
            partition: partition.clone(),
            mask: mask & partition.full_mask(),
        }
    }

    /// Every event of the partition, from `∅` up to `Ω` in mask order.
    pub fn all(partition: &Arc<Partition>) -> impl Iterator<Item = Event> + '_ {
        assert!(partition.size() < 64, "powerset too large to enumerate");
        (0..=partition.full_mask()).map(move |m| Event::from_mask(partition, m))
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub(crate) fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < 64 && self.mask & (1 << atom) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_omega(&self) -> bool {
        self.mask == self.partition.full_mask()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Indices of the atoms in this event, ascending.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.partition.size()).filter(move |&i| self.contains(i))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.atoms()
            .map(|i| self.partition.atoms[i].as_str())
            .collect()
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(Event::from_mask(&self.partition, self.mask | other.mask))
    }

    pub fn intersection(&self, other: &Event) -> Result<Event> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(Event::from_mask(&self.partition, self.mask & other.mask))
    }

    pub fn complement(&self) -> Event {
        Event::from_mask(&self.partition, !self.mask)
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(self.mask & !other.mask == 0)
    }

    /// The indicator gamble of this event.
    pub fn indicator(&self) -> Gamble {
        Gamble::from_fn(&self.partition, |i| {
            if self.contains(i) {
                int(1)
            } else {
                zero()
            }
        })
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && same_partition(&self.partition, &other.partition)
    }
}

impl Eq for Event {}

impl Hash for Event {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mask.hash(state);
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_omega() {
            return f.write_str("Ω");
        }
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

/// A payoff assigning an exact rational to every atom.
#[derive(Clone)]
pub struct Gamble {
    partition: Arc<Partition>,
    values: Vec<Rational>,
}

impl Gamble {
    pub fn new(partition: &Arc<Partition>, values: Vec<Rational>) -> Result<Gamble> {
        if values.len() != partition.size() {
            return Err(Error::LengthMismatch {
                expected: partition.size(),
                found: values.len(),
            });
        }
        Ok(Gamble {
            partition: partition.clone(),
            values,
        })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(partition: &Arc<Partition>, values: &[i64]) -> Result<Gamble> {
        Self::new(partition, values.iter().map(|&v| int(v)).collect())
    }

    pub fn from_fn<F: FnMut(usize) -> Rational>(partition: &Arc<Partition>, f: F) -> Gamble {
        Gamble {
            partition: partition.clone(),
            values: (0..partition.size()).map(f).collect(),
        }
    }

    pub fn constant(partition: &Arc<Partition>, c: Rational) -> Gamble {
        Gamble::from_fn(partition, |_| c.clone())
    }

    pub fn zero(partition: &Arc<Partition>) -> Gamble {
        Gamble::constant(partition, zero())
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> &Rational {
        &self.values[atom]
    }

    pub fn sup(&self) -> Rational {
        max_of(&self.values).expect("partitions are non-empty")
    }

    pub fn inf(&self) -> Rational {
        min_of(&self.values).expect("partitions are non-empty")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == zero())
    }

    /// `inf X ≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= zero())
    }

    /// `sup X ≤ 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.values.iter().all(|v| *v <= zero())
    }

    /// `B·X`: equal to `X` on `B` and zero elsewhere.
    pub fn restrict(&self, event: &Event) -> Result<Gamble> {
        ensure_same(&self.partition, &event.partition)?;
        Ok(self.restrict_unchecked(event))
    }

    pub(crate) fn restrict_unchecked(&self, event: &Event) -> Gamble {
        Gamble::from_fn(&self.partition, |i| {
            if event.contains(i) {
                self.values[i].clone()
            } else {
                zero()
            }
        })
    }

    pub fn scale(&self, factor: &Rational) -> Gamble {
        Gamble::from_fn(&self.partition, |i| &self.values[i] * factor)
    }

    /// `X + c`.
    pub fn shift(&self, c: &Rational) -> Gamble {
        Gamble::from_fn(&self.partition, |i| &self.values[i] + c)
    }

    pub fn checked_add(&self, other: &Gamble) -> Result<Gamble> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(Gamble::from_fn(&self.partition, |i| {
            &self.values[i] + &other.values[i]
        }))
    }

    pub fn checked_sub(&self, other: &Gamble) -> Result<Gamble> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(Gamble::from_fn(&self.partition, |i| {
            &self.values[i] - &other.values[i]
        }))
    }

    /// Pointwise `self ≥ other`.
    pub fn dominates(&self, other: &Gamble) -> Result<bool> {
        ensure_same(&self.partition, &other.partition)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a >= b))
    }

    pub fn given(self, cond: Event) -> Result<ConditionalGamble> {
        ConditionalGamble::new(self, cond)
    }
}

impl PartialEq for Gamble {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && same_partition(&self.partition, &other.partition)
    }
}

impl Eq for Gamble {}

impl fmt::Debug for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

// The operator impls panic on mismatched partitions; use the checked_*
// methods where the operands come from user input.
impl Add for &Gamble {
    type Output = Gamble;
    fn add(self, rhs: &Gamble) -> Gamble {
        self.checked_add(rhs).expect("gambles on different partitions")
    }
}

impl Sub for &Gamble {
    type Output = Gamble;
    fn sub(self, rhs: &Gamble) -> Gamble {
        self.checked_sub(rhs).expect("gambles on different partitions")
    }
}

impl Neg for &Gamble {
    type Output = Gamble;
    fn neg(self) -> Gamble {
        Gamble::from_fn(&self.partition, |i| -&self.values[i])
    }
}

impl Mul<&Gamble> for &Rational {
    type Output = Gamble;
    fn mul(self, rhs: &Gamble) -> Gamble {
        rhs.scale(self)
    }
}

/// `X|B`: a gamble evaluated only on the atoms of a non-empty event `B`.
#[derive(Clone)]
pub struct ConditionalGamble {
    gamble: Gamble,
    cond: Event,
}

impl ConditionalGamble {
    pub fn new(gamble: Gamble, cond: Event) -> Result<ConditionalGamble> {
        ensure_same(&gamble.partition, &cond.partition)?;
        if cond.is_empty() {
            return Err(Error::EmptyEvent);
        }
        Ok(ConditionalGamble { gamble, cond })
    }

    /// `X|Ω`.
    pub fn unconditional(gamble: Gamble) -> ConditionalGamble {
        let cond = Event::omega(&gamble.partition);
        ConditionalGamble { gamble, cond }
    }

    pub fn gamble(&self) -> &Gamble {
        &self.gamble
    }

    pub fn cond(&self) -> &Event {
        &self.cond
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.gamble.partition
    }

    pub fn sup(&self) -> Rational {
        restrict_sup(&self.gamble, &self.cond).expect("condition is non-empty")
    }

    pub fn inf(&self) -> Rational {
        restrict_inf(&self.gamble, &self.cond).expect("condition is non-empty")
    }

    /// The elementary gain `B·(X − price)` of buying `X|B` at `price`.
    pub fn gain(&self, price: &Rational) -> Gamble {
        Gamble::from_fn(&self.gamble.partition, |i| {
            if self.cond.contains(i) {
                &self.gamble.values[i] - price
            } else {
                zero()
            }
        })
    }

    /// The conditional gamble `−X|B`.
    pub fn negated(&self) -> ConditionalGamble {
        ConditionalGamble {
            gamble: -&self.gamble,
            cond: self.cond.clone(),
        }
    }

    /// The conditional gamble `λX|B`.
    pub fn scaled(&self, factor: &Rational) -> ConditionalGamble {
        ConditionalGamble {
            gamble: self.gamble.scale(factor),
            cond: self.cond.clone(),
        }
    }

    /// Values on the atoms of the conditioning event, in atom order.
    fn restricted_values(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.cond.atoms().map(|i| &self.gamble.values[i])
    }
}

impl PartialEq for ConditionalGamble {
    fn eq(&self, other: &Self) -> bool {
        self.cond == other.cond && self.restricted_values().eq(other.restricted_values())
    }
}

impl Eq for ConditionalGamble {}

impl fmt::Debug for ConditionalGamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConditionalGamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.gamble, self.cond)
    }
}

/// `sup(X|B)`: the largest value of `X` over the atoms of `B`.
pub fn restrict_sup(gamble: &Gamble, cond: &Event) -> Result<Rational> {
    ensure_same(&gamble.partition, &cond.partition)?;
    max_of(cond.atoms().map(|i| &gamble.values[i])).ok_or(Error::EmptyEvent)
}

/// `inf(X|B)`: the smallest value of `X` over the atoms of `B`.
pub fn restrict_inf(gamble: &Gamble, cond: &Event) -> Result<Rational> {
    ensure_same(&gamble.partition, &cond.partition)?;
    min_of(cond.atoms().map(|i| &gamble.values[i])).ok_or(Error::EmptyEvent)
}

/// Goodman–Nguyen order between conditional events:
/// `A|B ≤ C|D` iff `A∧B ⇒ C∧D` and `¬C∧D ⇒ ¬A∧B`.
pub fn gn_leq_events(lhs: (&Event, &Event), rhs: (&Event, &Event)) -> Result<bool> {
    let (a, b) = lhs;
    let (c, d) = rhs;
    for e in [b, c, d] {
        ensure_same(&a.partition, &e.partition)?;
    }
    if b.is_empty() || d.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let ab = a.mask & b.mask;
    let cd = c.mask & d.mask;
    let not_c_d = !c.mask & d.mask;
    let not_a_b = !a.mask & b.mask;
    Ok(ab & !cd == 0 && not_c_d & !not_a_b == 0)
}

/// Goodman–Nguyen order between conditional gambles.
///
/// Compares `X|B`, extended off `B` by `sup(X|B)`, with `Y|D`, extended off
/// `D` by `inf(Y|D)`, on the atoms of `B ∨ D`. Atoms outside both
/// conditioning events carry no information and are not compared.
pub fn gn_leq_gambles(lhs: &ConditionalGamble, rhs: &ConditionalGamble) -> Result<bool> {
    ensure_same(lhs.partition(), rhs.partition())?;
    let sup_x = lhs.sup();
    let inf_y = rhs.inf();
    let b = &lhs.cond;
    let d = &rhs.cond;
    let ok = (0..lhs.partition().size())
        .filter(|&i| b.contains(i) || d.contains(i))
        .all(|i| {
            let left = if b.contains(i) {
                &lhs.gamble.values[i]
            } else {
                &sup_x
            };
            let right = if d.contains(i) {
                &rhs.gamble.values[i]
            } else {
                &inf_y
            };
            left <= right
        });
    Ok(ok)
}

/// One assessed value `P(X|B) = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub gamble: ConditionalGamble,
    pub value: Rational,
}

impl Entry {
    /// `B·(X − P(X|B))`.
    pub fn gain(&self) -> Gamble {
        self.gamble.gain(&self.value)
    }

    pub fn cond(&self) -> &Event {
        &self.gamble.cond
    }
}

/// A lower prevision on a finite set of conditional gambles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    partition: Arc<Partition>,
    entries: Vec<Entry>,
}

impl Assessment {
    pub fn new(partition: &Arc<Partition>) -> Assessment {
        Assessment {
            partition: partition.clone(),
            entries: Vec::new(),
        }
    }

    pub fn from_entries<I>(partition: &Arc<Partition>, entries: I) -> Result<Assessment>
    where
        I: IntoIterator<Item = (ConditionalGamble, Rational)>,
    {
        let mut a = Assessment::new(partition);
        for (g, v) in entries {
            a.insert(g, v)?;
        }
        Ok(a)
    }

    /// Adds `P(gamble) = value`. Re-inserting an identical entry is a no-op;
    /// a different value for an existing conditional gamble is rejected.
    pub fn insert(&mut self, gamble: ConditionalGamble, value: Rational) -> Result<()> {
        ensure_same(&self.partition, gamble.partition())?;
        if let Some(existing) = self.entries.iter().find(|e| e.gamble == gamble) {
            if existing.value == value {
                return Ok(());
            }
            return Err(Error::ConflictingEntry {
                gamble: gamble.to_string(),
                first: existing.value.to_string(),
                second: value.to_string(),
            });
        }
        self.entries.push(Entry { gamble, value });
        Ok(())
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, gamble: &ConditionalGamble) -> Option<&Rational> {
        self.position(gamble).map(|i| &self.entries[i].value)
    }

    pub fn position(&self, gamble: &ConditionalGamble) -> Option<usize> {
        self.entries.iter().position(|e| &e.gamble == gamble)
    }

    /// The sub-assessment on the given entry indices.
    pub fn subset(&self, indices: &[usize]) -> Assessment {
        Assessment {
            partition: self.partition.clone(),
            entries: indices.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }
}
