//! Value types and lattice arithmetic for the two computable carriers:
//! the finite power-set algebra on `n` atoms and the ultimately periodic
//! fragment of the power set of the naturals.
//!
//! All values are immutable and every operation is pure. Equality of
//! ultimately periodic sets is decided structurally because every [`UPSet`]
//! is kept in canonical form (minimal cycle, minimal prefix).

use std::fmt;

use crate::error::{Error, Result};

/// Alignment cap for binary operations on ultimately periodic sets: the
/// product of the two cycle lengths must stay within this bound.
pub const PERIOD_PRODUCT_CAP: u64 = 1 << 16;

/// Largest atom count for which a carrier can be exhaustively enumerated.
pub const ENUM_ATOM_LIMIT: u8 = 6;

/// One of the two computable carrier algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Carrier {
    /// The power-set algebra on `atoms` atoms: elements are the bit vectors
    /// of that width. Atomic, hence ccc and (ω,2)-distributive.
    Power { atoms: u8 },
    /// The ultimately periodic subsets of the naturals, a Boolean subalgebra
    /// of the full power set.
    UpFragment,
}

impl Carrier {
    /// The power-set carrier on `atoms` atoms. The trivial algebra (0 atoms,
    /// where 0 = 1) is excluded.
    pub fn power(atoms: u8) -> Result<Carrier> {
        if atoms == 0 {
            return Err(Error::Precondition(
                "the trivial algebra (0 atoms) is excluded; 0 must differ from 1".into(),
            ));
        }
        if atoms > 63 {
            return Err(Error::CarrierTooLarge { atoms, limit: 63, context: "element bit vectors" });
        }
        Ok(Carrier::Power { atoms })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Power { .. })
    }

    /// Number of elements of a finite carrier.
    pub fn element_count(&self) -> Result<u64> {
        match self {
            Carrier::Power { atoms } => Ok(1u64 << atoms),
            Carrier::UpFragment => Err(Error::Precondition(
                "the ultimately periodic fragment is infinite".into(),
            )),
        }
    }

    /// All elements of a finite carrier, in ascending bit-vector order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        match self {
            Carrier::Power { atoms } => {
                if *atoms > ENUM_ATOM_LIMIT {
                    return Err(Error::CarrierTooLarge {
                        atoms: *atoms,
                        limit: ENUM_ATOM_LIMIT,
                        context: "carrier enumeration",
                    });
                }
                Ok((0..(1u64 << atoms)).map(|bits| Element::Finite { atoms: *atoms, bits }).collect())
            }
            Carrier::UpFragment => Err(Error::Precondition(
                "the ultimately periodic fragment cannot be enumerated".into(),
            )),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Carrier::Power { atoms } => Element::Finite { atoms: *atoms, bits: 0 },
            Carrier::UpFragment => Element::Up(UPSet::empty()),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Carrier::Power { atoms } => {
                Element::Finite { atoms: *atoms, bits: (1u64 << atoms) - 1 }
            }
            Carrier::UpFragment => Element::Up(UPSet::full()),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Power { atoms } => write!(f, "powerset:{atoms}"),
            Carrier::UpFragment => write!(f, "upfrag"),
        }
    }
}

/// An ultimately periodic subset of the naturals, stored as a finite prefix
/// followed by a repeating cycle: `m` is a member iff `prefix[m]` when
/// `m < prefix.len()`, else `cycle[(m - prefix.len()) % cycle.len()]`.
///
/// Values are always canonical — the cycle has minimal length and the prefix
/// cannot be shortened by absorbing its last bit into the cycle — so derived
/// equality coincides with equality of the denoted sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UPSet {
    prefix: Vec<bool>,
    cycle: Vec<bool>,
}

impl UPSet {
    /// Builds the canonical form of the set described by `prefix` and `cycle`.
    pub fn new(prefix: &[bool], cycle: &[bool]) -> Result<UPSet> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut s = UPSet { prefix: prefix.to_vec(), cycle: cycle.to_vec() };
        s.reduce_cycle();
        s.absorb_prefix();
        Ok(s)
    }

    /// Canonicalization as a standalone operation: returns the canonical
    /// form of an arbitrary (prefix, cycle) presentation.
    pub fn canonicalize(prefix: &[bool], cycle: &[bool]) -> Result<UPSet> {
        UPSet::new(prefix, cycle)
    }

    fn reduce_cycle(&mut self) {
        let p = self.cycle.len();
        for d in 1..=p {
            if p % d == 0 && (0..p).all(|i| self.cycle[i] == self.cycle[i % d]) {
                self.cycle.truncate(d);
                return;
            }
        }
    }

    fn absorb_prefix(&mut self) {
        let p = self.cycle.len();
        while let Some(&last) = self.prefix.last() {
            if last == self.cycle[p - 1] {
                self.prefix.pop();
                self.cycle.rotate_right(1);
            } else {
                break;
            }
        }
    }

    pub fn empty() -> UPSet {
        UPSet { prefix: vec![], cycle: vec![false] }
    }

    pub fn full() -> UPSet {
        UPSet { prefix: vec![], cycle: vec![true] }
    }

    /// The singleton set `{m}`.
    pub fn singleton(m: u64) -> UPSet {
        let mut prefix = vec![false; m as usize];
        prefix.push(true);
        UPSet::new(&prefix, &[false]).expect("cycle nonempty")
    }

    /// The tail `[lo, ∞)`.
    pub fn tail(lo: u64) -> UPSet {
        UPSet::new(&vec![false; lo as usize], &[true]).expect("cycle nonempty")
    }

    /// The half-open interval `[lo, hi)`; empty when `hi <= lo`.
    pub fn range(lo: u64, hi: u64) -> UPSet {
        if hi <= lo {
            return UPSet::empty();
        }
        let mut prefix = vec![false; lo as usize];
        prefix.extend(std::iter::repeat(true).take((hi - lo) as usize));
        UPSet::new(&prefix, &[false]).expect("cycle nonempty")
    }

    /// The finite set with exactly the given points.
    pub fn from_points(points: &[u64]) -> UPSet {
        let n = points.iter().max().map_or(0, |&m| m as usize + 1);
        let mut prefix = vec![false; n];
        for &m in points {
            prefix[m as usize] = true;
        }
        UPSet::new(&prefix, &[false]).expect("cycle nonempty")
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[bool] {
        &self.cycle
    }

    pub fn contains(&self, m: u64) -> bool {
        let n = self.prefix.len() as u64;
        if m < n {
            self.prefix[m as usize]
        } else {
            self.cycle[((m - n) % self.cycle.len() as u64) as usize]
        }
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.iter().all(|&b| !b) && self.cycle == [false]
    }

    /// Smallest member, if any.
    pub fn min_point(&self) -> Option<u64> {
        let horizon = self.prefix.len() as u64 + self.cycle.len() as u64;
        (0..horizon).find(|&m| self.contains(m))
    }

    fn zip(&self, other: &UPSet, f: impl Fn(bool, bool) -> bool) -> Result<UPSet> {
        let pa = self.cycle.len() as u64;
        let pb = other.cycle.len() as u64;
        let product = pa * pb;
        if product > PERIOD_PRODUCT_CAP {
            return Err(Error::PeriodCapExceeded { product, cap: PERIOD_PRODUCT_CAP });
        }
        let n = self.prefix.len().max(other.prefix.len()) as u64;
        let l = lcm(pa, pb);
        let prefix: Vec<bool> = (0..n).map(|m| f(self.contains(m), other.contains(m))).collect();
        let cycle: Vec<bool> =
            (0..l).map(|i| f(self.contains(n + i), other.contains(n + i))).collect();
        UPSet::new(&prefix, &cycle)
    }

    pub fn union(&self, other: &UPSet) -> Result<UPSet> {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &UPSet) -> Result<UPSet> {
        self.zip(other, |a, b| a && b)
    }

    pub fn complement(&self) -> UPSet {
        let prefix: Vec<bool> = self.prefix.iter().map(|&b| !b).collect();
        let cycle: Vec<bool> = self.cycle.iter().map(|&b| !b).collect();
        UPSet::new(&prefix, &cycle).expect("cycle nonempty")
    }

    /// Set inclusion, decided pointwise over the prefix plus one full
    /// aligned cycle.
    pub fn subset_of(&self, other: &UPSet) -> Result<bool> {
        let pa = self.cycle.len() as u64;
        let pb = other.cycle.len() as u64;
        let product = pa * pb;
        if product > PERIOD_PRODUCT_CAP {
            return Err(Error::PeriodCapExceeded { product, cap: PERIOD_PRODUCT_CAP });
        }
        let n = self.prefix.len().max(other.prefix.len()) as u64;
        let horizon = n + lcm(pa, pb);
        Ok((0..horizon).all(|m| !self.contains(m) || other.contains(m)))
    }

    /// Classifies the set as finite, cofinite or neither, with witnesses.
    pub fn classify(&self) -> SetClass {
        let n = self.prefix.len() as u64;
        if self.cycle.iter().all(|&b| !b) {
            let points = (0..n).filter(|&m| self.contains(m)).collect();
            SetClass::Finite { points }
        } else if self.cycle.iter().all(|&b| b) {
            let missing = (0..n).filter(|&m| !self.contains(m)).collect();
            SetClass::Cofinite { missing }
        } else {
            let member = (0..self.cycle.len() as u64)
                .find(|&i| self.cycle[i as usize])
                .map(|i| n + i)
                .expect("mixed cycle has a member");
            let nonmember = (0..self.cycle.len() as u64)
                .find(|&i| !self.cycle[i as usize])
                .map(|i| n + i)
                .expect("mixed cycle has a nonmember");
            SetClass::Neither { member, nonmember }
        }
    }
}

impl fmt::Display for UPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.prefix {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        write!(f, ";")?;
        for &b in &self.cycle {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Verdict of [`UPSet::classify`], carrying canonical witnesses: the full
/// point list for finite sets, the full complement for cofinite ones, and a
/// recurring member/nonmember pair otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetClass {
    Finite { points: Vec<u64> },
    Cofinite { missing: Vec<u64> },
    Neither { member: u64, nonmember: u64 },
}

impl SetClass {
    pub fn label(&self) -> &'static str {
        match self {
            SetClass::Finite { .. } => "finite",
            SetClass::Cofinite { .. } => "cofinite",
            SetClass::Neither { .. } => "neither",
        }
    }
}

/// A member of a carrier algebra.
///
/// The derived `Ord` is a storage order used for deterministic set
/// containers; the lattice order is [`Element::leq`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Finite { atoms: u8, bits: u64 },
    Up(UPSet),
}

impl Element {
    pub fn finite(carrier: Carrier, bits: u64) -> Result<Element> {
        match carrier {
            Carrier::Power { atoms } => {
                if bits >= (1u64 << atoms) {
                    return Err(Error::Precondition(format!(
                        "bit vector {bits:#b} does not fit a carrier on {atoms} atoms"
                    )));
                }
                Ok(Element::Finite { atoms, bits })
            }
            Carrier::UpFragment => Err(Error::CarrierMismatch {
                left: "powerset element".into(),
                right: Carrier::UpFragment.to_string(),
            }),
        }
    }

    pub fn up(set: UPSet) -> Element {
        Element::Up(set)
    }

    /// The atom `{α_i}` of a finite carrier.
    pub fn atom(carrier: Carrier, i: u8) -> Result<Element> {
        match carrier {
            Carrier::Power { atoms } if i < atoms => Ok(Element::Finite { atoms, bits: 1 << i }),
            Carrier::Power { atoms } => {
                Err(Error::Precondition(format!("atom index {i} out of range for {atoms} atoms")))
            }
            Carrier::UpFragment => {
                Err(Error::Precondition("the ultimately periodic fragment is atomless here".into()))
            }
        }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            Element::Finite { atoms, .. } => Carrier::Power { atoms: *atoms },
            Element::Up(_) => Carrier::UpFragment,
        }
    }

    fn same_carrier(&self, other: &Element) -> Result<()> {
        let (a, b) = (self.carrier(), other.carrier());
        if a == b {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { left: a.to_string(), right: b.to_string() })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Finite { bits, .. } => *bits == 0,
            Element::Up(s) => s.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.carrier().one()
    }

    /// Greatest lower bound.
    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.same_carrier(other)?;
        match (self, other) {
            (Element::Finite { atoms, bits: a }, Element::Finite { bits: b, .. }) => {
                Ok(Element::Finite { atoms: *atoms, bits: a & b })
            }
            (Element::Up(a), Element::Up(b)) => Ok(Element::Up(a.intersection(b)?)),
            _ => unreachable!("same_carrier checked"),
        }
    }

    /// Least upper bound.
    pub fn join(&self, other: &Element) -> Result<Element> {
        self.same_carrier(other)?;
        match (self, other) {
            (Element::Finite { atoms, bits: a }, Element::Finite { bits: b, .. }) => {
                Ok(Element::Finite { atoms: *atoms, bits: a | b })
            }
            (Element::Up(a), Element::Up(b)) => Ok(Element::Up(a.union(b)?)),
            _ => unreachable!("same_carrier checked"),
        }
    }

    pub fn complement(&self) -> Element {
        match self {
            Element::Finite { atoms, bits } => {
                Element::Finite { atoms: *atoms, bits: !bits & ((1u64 << atoms) - 1) }
            }
            Element::Up(s) => Element::Up(s.complement()),
        }
    }

    /// The lattice order: `a ≤ b` iff `a ∧ b = a`.
    pub fn leq(&self, other: &Element) -> Result<bool> {
        self.same_carrier(other)?;
        match (self, other) {
            (Element::Finite { bits: a, .. }, Element::Finite { bits: b, .. }) => Ok(a & b == *a),
            (Element::Up(a), Element::Up(b)) => a.subset_of(b),
            _ => unreachable!("same_carrier checked"),
        }
    }

    /// Strict lattice order.
    pub fn lt(&self, other: &Element) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    /// Lattice incomparability.
    pub fn incomparable(&self, other: &Element) -> Result<bool> {
        Ok(!self.leq(other)? && !other.leq(self)?)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Finite { atoms, bits } => {
                for i in 0..*atoms {
                    write!(f, "{}", if bits & (1 << i) != 0 { '1' } else { '0' })?;
                }
                Ok(())
            }
            Element::Up(s) => write!(f, "{s}"),
        }
    }
}

/// Join of a nonempty family; `carrier.zero()` for an empty one.
pub fn join_all<'a>(carrier: Carrier, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
    let mut acc = carrier.zero();
    for e in items {
        acc = acc.join(e)?;
    }
    Ok(acc)
}

/// Meet of a nonempty family; `carrier.one()` for an empty one.
pub fn meet_all<'a>(carrier: Carrier, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
    let mut acc = carrier.one();
    for e in items {
        acc = acc.meet(e)?;
    }
    Ok(acc)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
