//! Closed-set calculus for the topology whose closed sets are the
//! upward-closed, limsup-closed subsets of the carrier: the minimal-element
//! representation, the decreasing-chain operator and its transfinite
//! iteration, closed-form closures and limits, continuity of the lattice
//! operations, duality, and the closed-set census.
//!
//! Closed sets are stored as the antichain of their minimal elements.
//! Over the ultimately periodic fragment exactly two upset representations
//! are supported — finitely generated, and the family of all cofinite sets
//! (the upward closure of the tail chain, which has no minimal elements);
//! anything else is rejected loudly.

use std::collections::BTreeSet;
use std::fmt;

use crate::carrier::{join_all, Carrier, Element, SetClass, UPSet};
use crate::error::{Error, Result};
use crate::seq::{AffineMap, SeqDescriptor};

/// Largest atom count for the subset-scan census (2^16 candidate sets).
pub const SCAN_ATOM_LIMIT: u8 = 4;
/// Largest atom count for the antichain-enumeration census.
pub const ANTICHAIN_ATOM_LIMIT: u8 = 5;

/// A finitely determined upward-closed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsetFD {
    carrier: Carrier,
    kind: UpsetKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpsetKind {
    /// Generated by a finite antichain of minimal elements, kept sorted.
    Generated(Vec<Element>),
    /// All cofinite subsets of the naturals. Ultimately periodic fragment
    /// only; this family has no minimal elements.
    CofiniteFamily,
}

impl UpsetFD {
    /// The upward closure of a finite set, stored as the antichain of its
    /// minimal members. An empty set yields the empty upset, which is
    /// closed.
    pub fn up_closure(carrier: Carrier, elements: &[Element]) -> Result<UpsetFD> {
        let mut generators: Vec<Element> = Vec::new();
        for e in elements {
            if e.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.to_string(),
                    right: e.carrier().to_string(),
                });
            }
            if generators.iter().map(|q| q.leq(e)).collect::<Result<Vec<_>>>()?.contains(&true) {
                continue;
            }
            let mut kept = Vec::with_capacity(generators.len() + 1);
            for q in generators {
                if !e.leq(&q)? {
                    kept.push(q);
                }
            }
            kept.push(e.clone());
            generators = kept;
        }
        generators.sort();
        Ok(UpsetFD { carrier, kind: UpsetKind::Generated(generators) })
    }

    /// The principal upset of one element.
    pub fn principal(e: Element) -> UpsetFD {
        let carrier = e.carrier();
        UpsetFD { carrier, kind: UpsetKind::Generated(vec![e]) }
    }

    /// The whole algebra, generated by the bottom element.
    pub fn whole(carrier: Carrier) -> UpsetFD {
        UpsetFD::principal(carrier.zero())
    }

    pub fn empty(carrier: Carrier) -> UpsetFD {
        UpsetFD { carrier, kind: UpsetKind::Generated(vec![]) }
    }

    /// The family of all cofinite sets: the upward closure of the chain of
    /// tails `[n, ∞)`.
    pub fn cofinite_family() -> UpsetFD {
        UpsetFD { carrier: Carrier::UpFragment, kind: UpsetKind::CofiniteFamily }
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn kind(&self) -> &UpsetKind {
        &self.kind
    }

    /// The generating antichain; the cofinite family has none.
    pub fn generators(&self) -> Result<&[Element]> {
        match &self.kind {
            UpsetKind::Generated(q) => Ok(q),
            UpsetKind::CofiniteFamily => Err(Error::NotRepresentable(
                "the cofinite family has no minimal elements".into(),
            )),
        }
    }

    pub fn contains(&self, b: &Element) -> Result<bool> {
        if b.carrier() != self.carrier {
            return Err(Error::CarrierMismatch {
                left: self.carrier.to_string(),
                right: b.carrier().to_string(),
            });
        }
        match &self.kind {
            UpsetKind::Generated(q) => {
                for g in q {
                    if g.leq(b)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            UpsetKind::CofiniteFamily => match b {
                Element::Up(s) => Ok(matches!(s.classify(), SetClass::Cofinite { .. })),
                _ => unreachable!("carrier checked"),
            },
        }
    }

    /// The upset as an explicit element set; finite carriers only.
    pub fn to_element_set(&self) -> Result<BTreeSet<Element>> {
        let mut out = BTreeSet::new();
        for e in self.carrier.elements()? {
            if self.contains(&e)? {
                out.insert(e);
            }
        }
        Ok(out)
    }

    /// Closedness of the upset, by representation:
    ///
    /// * a finitely generated upset is closed in any carrier — a decreasing
    ///   sequence in `⋃ q↑` sits above one generator from some index on
    ///   (finitely many generators, and the sequence only shrinks), so its
    ///   meet stays in the set. The generator-subset reduction is checked
    ///   explicitly: for every nonempty `C ⊆ Q` some `q ∈ Q` lies below
    ///   `⋁C`;
    /// * the cofinite family is not closed: the tail chain `[n, ∞)` lives in
    ///   it and its limsup, the empty set, is finite.
    pub fn closedness(&self) -> Result<ClosednessReport> {
        match &self.kind {
            UpsetKind::Generated(q) => {
                for values in nonempty_subsets_of_slice(q) {
                    let bound = join_all(self.carrier, values.iter().copied())?;
                    let mut witnessed = false;
                    for g in q {
                        if g.leq(&bound)? {
                            witnessed = true;
                            break;
                        }
                    }
                    if !witnessed {
                        return Err(Error::Precondition(
                            "a generator join escaped its own upset".into(),
                        ));
                    }
                }
                Ok(ClosednessReport {
                    closed: true,
                    detail: format!(
                        "finitely generated by {} minimal elements; every join of \
                         generators lies above a generator, so recurring-value joins \
                         and decreasing-chain meets stay inside",
                        q.len()
                    ),
                    witness: None,
                })
            }
            UpsetKind::CofiniteFamily => {
                let tails = SeqDescriptor::TailAbove(AffineMap::new(1, 0)?);
                Ok(ClosednessReport {
                    closed: false,
                    detail: "the tail chain lies in the family but its limsup, the \
                             empty set, is finite"
                        .into(),
                    witness: Some(ClosednessWitness::EscapingLimsup {
                        sequence: tails.clone(),
                        limsup: tails.limsup(),
                    }),
                })
            }
        }
    }
}

impl fmt::Display for UpsetFD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            UpsetKind::Generated(q) => {
                write!(f, "{{")?;
                for (i, e) in q.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            UpsetKind::CofiniteFamily => write!(f, "cofinite-family"),
        }
    }
}

/// Diagnosed closedness verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessReport {
    pub closed: bool,
    pub detail: String,
    pub witness: Option<ClosednessWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosednessWitness {
    /// `above` lies above `member` but is missing from the set.
    NotUpward { member: Element, above: Element },
    /// A sequence in the set whose limsup escapes it.
    EscapingLimsup { sequence: SeqDescriptor, limsup: Element },
}

/// Closedness of an explicit element set over a finite carrier: upward
/// closedness suffices, because decreasing sequences in a finite algebra
/// stabilize and recurring-value joins stay above members of the set.
pub fn closedness_of_set(set: &BTreeSet<Element>, carrier: Carrier) -> Result<ClosednessReport> {
    if !carrier.is_finite() {
        return Err(Error::Precondition(
            "explicit element sets are only decidable over finite carriers".into(),
        ));
    }
    for a in set {
        for b in carrier.elements()? {
            if a.leq(&b)? && !set.contains(&b) {
                return Ok(ClosednessReport {
                    closed: false,
                    detail: format!("{b} lies above member {a} but is missing"),
                    witness: Some(ClosednessWitness::NotUpward { member: a.clone(), above: b }),
                });
            }
        }
    }
    Ok(ClosednessReport {
        closed: true,
        detail: "upward closed; on a finite carrier decreasing sequences stabilize, \
                 so the meet-closure clause is automatic"
            .into(),
        witness: None,
    })
}

/// The upward closure of a set, as an explicit element set.
pub fn up_closure_set(set: &BTreeSet<Element>, carrier: Carrier) -> Result<BTreeSet<Element>> {
    let mut out = BTreeSet::new();
    for b in carrier.elements()? {
        for a in set {
            if a.leq(&b)? {
                out.insert(b);
                break;
            }
        }
    }
    Ok(out)
}

/// The antichain of minimal elements of an upward-closed set over a finite
/// carrier. Errors when the set is not upward closed.
pub fn min_elements(set: &BTreeSet<Element>, carrier: Carrier) -> Result<Vec<Element>> {
    let report = closedness_of_set(set, carrier)?;
    if let Some(ClosednessWitness::NotUpward { member, above }) = report.witness {
        return Err(Error::NotUpwardClosed {
            member: member.to_string(),
            above: above.to_string(),
        });
    }
    let mut out = Vec::new();
    'outer: for a in set {
        for b in set {
            if b.lt(a)? {
                continue 'outer;
            }
        }
        out.push(a.clone());
    }
    Ok(out)
}

fn nonempty_subsets_of_slice(items: &[Element]) -> Vec<Vec<&Element>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e)
                .collect(),
        );
    }
    out
}

/// Membership in the image of an upset under the decreasing-chain operator,
/// which collects the meets of all decreasing sequences in the set.
///
/// * Finite carrier: chains stabilize, so the operator adds nothing and
///   membership in the image is membership in the set.
/// * Finitely generated over the ultimately periodic fragment: a decreasing
///   chain in `⋃ q↑` is eventually above a single generator (some generator
///   witnesses infinitely many terms, and earlier terms only dominate later
///   ones), so its meet stays in the set: again the operator adds nothing.
/// * Cofinite family: always a member — any set `b` is the meet of the
///   decreasing cofinite chain `b ∪ [n, ∞)`.
pub fn dec_membership(b: &Element, upset: &UpsetFD) -> Result<bool> {
    if b.carrier() != upset.carrier() {
        return Err(Error::CarrierMismatch {
            left: upset.carrier().to_string(),
            right: b.carrier().to_string(),
        });
    }
    match upset.kind() {
        UpsetKind::Generated(_) => upset.contains(b),
        UpsetKind::CofiniteFamily => Ok(true),
    }
}

/// A set given to the transfinite closure iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetPresentation {
    /// An explicit finite set of elements, over any carrier.
    Finite { carrier: Carrier, elements: Vec<Element> },
    /// The chain of tails `{[g(n), ∞) : n ∈ ω}` over the ultimately
    /// periodic fragment; its upward closure is the cofinite family.
    TailFamily(AffineMap),
}

/// One stage of a closure iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureStage {
    Set(BTreeSet<Element>),
    Upset(UpsetFD),
}

impl ClosureStage {
    pub fn contains(&self, e: &Element) -> Result<bool> {
        match self {
            ClosureStage::Set(s) => Ok(s.contains(e)),
            ClosureStage::Upset(u) => u.contains(e),
        }
    }
}

impl fmt::Display for ClosureStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureStage::Set(s) => {
                write!(f, "{{")?;
                for (i, e) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "}}")
            }
            ClosureStage::Upset(u) => write!(f, "{u}"),
        }
    }
}

/// The stages of iterating the decreasing-chain operator, starting from the
/// upward closure of the input. The trace stabilizes at the topological
/// closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecTrace {
    /// Stage 0: the upward closure of the input.
    pub up_closure: ClosureStage,
    /// Stages 1, 2, …; the last entry repeats its predecessor (or stage 0),
    /// confirming the fixpoint.
    pub stages: Vec<ClosureStage>,
    /// The first stage index whose successor added nothing.
    pub stabilized_at: usize,
}

impl DecTrace {
    /// The closure reached.
    pub fn closure(&self) -> &ClosureStage {
        self.stages.last().unwrap_or(&self.up_closure)
    }
}

fn dec_of_stage(stage: &ClosureStage) -> ClosureStage {
    match stage {
        // decreasing chains in a finite poset are eventually constant
        ClosureStage::Set(s) => ClosureStage::Set(s.clone()),
        ClosureStage::Upset(u) => match u.kind() {
            // a chain in a finitely generated upset stays above one generator
            UpsetKind::Generated(_) => ClosureStage::Upset(u.clone()),
            // every set is the meet of a decreasing cofinite chain, and the
            // empty set's upset is the whole algebra
            UpsetKind::CofiniteFamily => ClosureStage::Upset(UpsetFD::whole(u.carrier())),
        },
    }
}

/// Iterates the decreasing-chain operator to its fixpoint, starting from
/// the upward closure of the presented set.
pub fn dec_iterate(input: &SetPresentation) -> Result<DecTrace> {
    let start = match input {
        SetPresentation::Finite { carrier, elements } => {
            if carrier.is_finite() {
                ClosureStage::Set(up_closure_set(&elements.iter().cloned().collect(), *carrier)?)
            } else {
                ClosureStage::Upset(UpsetFD::up_closure(*carrier, elements)?)
            }
        }
        SetPresentation::TailFamily(_) => ClosureStage::Upset(UpsetFD::cofinite_family()),
    };

    let mut stages = Vec::new();
    let mut previous = start.clone();
    let mut index = 0usize;
    loop {
        let next = dec_of_stage(&previous);
        let fixed = next == previous;
        stages.push(next.clone());
        if fixed {
            return Ok(DecTrace { up_closure: start, stages, stabilized_at: index });
        }
        previous = next;
        index += 1;
    }
}

/// A set presented for the closed-form closure clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitDescriptor {
    FiniteSet(Vec<Element>),
    /// Orbit of a pointwise decreasing sequence.
    DecreasingChain(SeqDescriptor),
    /// Orbit of a pointwise increasing sequence.
    IncreasingChain(SeqDescriptor),
    /// Orbit of an injective enumeration of pairwise incompatible nonzero
    /// elements.
    CountableAntichain(SeqDescriptor),
    /// A dense subset of the ultimately periodic fragment.
    Dense,
}

/// The closure of the presented set, by the matching closed-form clause:
///
/// * a finite set closes to its upward closure;
/// * the orbit of a decreasing chain closes to the upset of the chain's
///   meet (the limsup of a decreasing sequence is its meet, and the
///   principal upset at the meet is closed and contains the orbit);
/// * the orbit of an increasing chain closes to the upset of its first
///   element (everything in the closure stays above the meet of the orbit,
///   which is the first element);
/// * a countable antichain has limsup 0, so 0 enters the closure and its
///   upset — the whole algebra — is the closure;
/// * a dense set contains an infinite antichain, so the same applies.
pub fn closure_special(desc: &OrbitDescriptor) -> Result<UpsetFD> {
    match desc {
        OrbitDescriptor::FiniteSet(elements) => {
            let carrier = elements
                .first()
                .ok_or_else(|| Error::Precondition("present at least one element".into()))?
                .carrier();
            UpsetFD::up_closure(carrier, elements)
        }
        OrbitDescriptor::DecreasingChain(x) => {
            if !x.is_pointwise_decreasing()? {
                return Err(Error::Precondition(
                    "the decreasing-chain clause needs a pointwise decreasing sequence".into(),
                ));
            }
            Ok(UpsetFD::principal(x.limsup()))
        }
        OrbitDescriptor::IncreasingChain(x) => {
            if !x.is_pointwise_increasing()? {
                return Err(Error::Precondition(
                    "the increasing-chain clause needs a pointwise increasing sequence".into(),
                ));
            }
            Ok(UpsetFD::principal(x.nth(0)))
        }
        OrbitDescriptor::CountableAntichain(x) => {
            validate_antichain_enumeration(x)?;
            Ok(UpsetFD::whole(x.carrier()))
        }
        OrbitDescriptor::Dense => Ok(UpsetFD::whole(Carrier::UpFragment)),
    }
}

/// Symbolic validation that the descriptor enumerates an infinite antichain
/// injectively: pairwise incompatible (meet zero) nonzero terms. The
/// diagonal families qualify; finite-range and nested families do not.
fn validate_antichain_enumeration(x: &SeqDescriptor) -> Result<()> {
    match x {
        // singletons {g(n)} with g injective are pairwise disjoint
        SeqDescriptor::SingletonDiag(_) => Ok(()),
        // blocks [g(n), g(n+1)) are nonempty and pairwise disjoint
        SeqDescriptor::BlockDiag(_) => Ok(()),
        SeqDescriptor::EventuallyPeriodic { .. } => Err(Error::Precondition(
            "an eventually periodic sequence has finite range and cannot enumerate \
             an infinite antichain injectively"
                .into(),
        )),
        SeqDescriptor::TailAbove(_) | SeqDescriptor::UnionTail { .. } => Err(Error::Precondition(
            "tail families are nested, not antichains".into(),
        )),
    }
}

/// The a-posteriori limit of a sequence in the upset topology, in closed
/// form: the principal upset of the sequence's limsup.
///
/// * Finite range: the limit is the upset of the join of the recurring
///   values, which is the limsup.
/// * Decreasing families: the limit is sandwiched between the limsup's
///   upset and the limit of the constant minorant, which agree.
/// * Diagonal families: the limsup is 0 and the limit is the whole algebra.
pub fn lim_closed_form(x: &SeqDescriptor) -> UpsetFD {
    UpsetFD::principal(x.limsup())
}

/// Witness data for membership of 0 in a limit over the ultimately periodic
/// fragment: 0 is a limit exactly when the limsup is the empty set, and a
/// nonzero limsup yields a point of it that recurs in the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroLimitReport {
    pub zero_in_lim: bool,
    pub limsup: UPSet,
    pub witness: Option<CofinalWitness>,
}

/// A point of the limsup together with the positions at which it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalWitness {
    pub point: u64,
    pub positions: CofinalPositions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CofinalPositions {
    /// The point belongs to every term.
    All,
    /// The point belongs to the terms `first, first + period, …`.
    Periodic { first: u64, period: u64 },
}

impl CofinalWitness {
    /// Checks the first `samples` claimed positions against the sequence.
    pub fn verify(&self, x: &SeqDescriptor, samples: u64) -> bool {
        let positions: Vec<u64> = match self.positions {
            CofinalPositions::All => (0..samples).collect(),
            CofinalPositions::Periodic { first, period } => {
                (0..samples).map(|k| first + k * period).collect()
            }
        };
        positions.into_iter().all(|n| match x.nth(n) {
            Element::Up(s) => s.contains(self.point),
            _ => false,
        })
    }
}

/// Decides whether 0 lies in the limit of a sequence over the ultimately
/// periodic fragment, with a verified witness in the negative case.
pub fn zero_limit_witness(x: &SeqDescriptor) -> Result<ZeroLimitReport> {
    if x.carrier() != Carrier::UpFragment {
        return Err(Error::Precondition(
            "zero-limit analysis works over the ultimately periodic fragment".into(),
        ));
    }
    let limsup = match x.limsup() {
        Element::Up(s) => s,
        _ => unreachable!("carrier checked"),
    };
    if limsup.is_empty() {
        return Ok(ZeroLimitReport { zero_in_lim: true, limsup, witness: None });
    }
    let point = limsup.min_point().expect("nonempty set has a least point");
    let positions = match x {
        SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
            let hit = cycle
                .iter()
                .position(|e| match e {
                    Element::Up(s) => s.contains(point),
                    _ => false,
                })
                .expect("a point of the limsup lies in some recurring value");
            CofinalPositions::Periodic {
                first: prefix.len() as u64 + hit as u64,
                period: cycle.len() as u64,
            }
        }
        // the base set is contained in every term
        SeqDescriptor::UnionTail { .. } => CofinalPositions::All,
        _ => unreachable!("families without recurring points have empty limsup"),
    };
    Ok(ZeroLimitReport {
        zero_in_lim: false,
        limsup,
        witness: Some(CofinalWitness { point, positions }),
    })
}

/// The preimage of an upset under `x ↦ x ∧ a`, which is again an upset:
/// `q ≤ x ∧ a` says exactly `q ≤ x` and `q ≤ a`, so the preimage is
/// generated by the generators below `a`.
pub fn preimage_meet(a: &Element, f: &UpsetFD) -> Result<UpsetFD> {
    if a.carrier() != f.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.carrier().to_string(),
            right: a.carrier().to_string(),
        });
    }
    match f.kind() {
        UpsetKind::Generated(q) => {
            let mut kept = Vec::new();
            for g in q {
                if g.leq(a)? {
                    kept.push(g.clone());
                }
            }
            UpsetFD::up_closure(f.carrier(), &kept)
        }
        UpsetKind::CofiniteFamily => match a {
            // x ∧ a is cofinite iff both complements are finite
            Element::Up(s) if matches!(s.classify(), SetClass::Cofinite { .. }) => {
                Ok(UpsetFD::cofinite_family())
            }
            _ => Ok(UpsetFD::empty(f.carrier())),
        },
    }
}

/// The preimage of an upset under `x ↦ x ∨ a`: `q ≤ x ∨ a` is equivalent to
/// `q ∧ a′ ≤ x`, so the preimage is generated by `{q ∧ a′}`.
pub fn preimage_join(a: &Element, f: &UpsetFD) -> Result<UpsetFD> {
    if a.carrier() != f.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.carrier().to_string(),
            right: a.carrier().to_string(),
        });
    }
    match f.kind() {
        UpsetKind::Generated(q) => {
            let a_comp = a.complement();
            let mut gens = Vec::new();
            for g in q {
                gens.push(g.meet(&a_comp)?);
            }
            UpsetFD::up_closure(f.carrier(), &gens)
        }
        UpsetKind::CofiniteFamily => match a {
            Element::Up(s) if matches!(s.classify(), SetClass::Cofinite { .. }) => {
                // x ∨ a is cofinite for every x
                Ok(UpsetFD::whole(f.carrier()))
            }
            _ => Err(Error::NotRepresentable(
                "the join preimage of the cofinite family under a non-cofinite shift \
                 is neither finitely generated nor the cofinite family"
                    .into(),
            )),
        },
    }
}

/// The subsequence-stabilization test for membership of `a` in the limit of
/// a finite-range sequence: every subsequence has a further subsequence
/// whose limsup is below `a` exactly when every recurring value is below
/// `a` (a constant-value subsequence realizes each recurring value, and any
/// subsequence keeps at least one of them). This agrees with membership in
/// [`lim_closed_form`].
pub fn limit_membership_by_stabilization(x: &SeqDescriptor, a: &Element) -> Result<bool> {
    let values = x.inf_value_set();
    if values.infinite_range {
        return Err(Error::NonEventuallyPeriodic { context: "stabilization test" });
    }
    for c in &values.values {
        if !c.leq(a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The closure of the orbit of a limsup-stable sequence: the upset of the
/// limsup united with the upsets of the terms, returned through its
/// minimal generators.
pub fn stable_orbit_closure(x: &SeqDescriptor) -> Result<UpsetFD> {
    if !x.is_limsup_stable()? {
        return Err(Error::Precondition(
            "orbit closure in closed form needs a limsup-stable sequence".into(),
        ));
    }
    let (prefix, cycle) = match x {
        SeqDescriptor::EventuallyPeriodic { prefix, cycle } => (prefix, cycle),
        _ => unreachable!("stability check rejects other families"),
    };
    let mut points: Vec<Element> = vec![x.limsup()];
    points.extend(prefix.iter().cloned());
    points.extend(cycle.iter().cloned());
    UpsetFD::up_closure(x.carrier(), &points)
}

/// A finitely determined downward-closed set, the complementation image of
/// an upset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetFD {
    carrier: Carrier,
    kind: DownsetKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DownsetKind {
    /// Generated downward by a finite antichain of maximal elements.
    Generated(Vec<Element>),
    /// All finite subsets of the naturals.
    FiniteFamily,
}

impl DownsetFD {
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn kind(&self) -> &DownsetKind {
        &self.kind
    }

    pub fn contains(&self, b: &Element) -> Result<bool> {
        if b.carrier() != self.carrier {
            return Err(Error::CarrierMismatch {
                left: self.carrier.to_string(),
                right: b.carrier().to_string(),
            });
        }
        match &self.kind {
            DownsetKind::Generated(q) => {
                for g in q {
                    if b.leq(g)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            DownsetKind::FiniteFamily => match b {
                Element::Up(s) => Ok(matches!(s.classify(), SetClass::Finite { .. })),
                _ => unreachable!("carrier checked"),
            },
        }
    }
}

/// The complementation image of an upset: generators map to their
/// complements, the cofinite family to the finite one.
pub fn dualize_upset(f: &UpsetFD) -> DownsetFD {
    match f.kind() {
        UpsetKind::Generated(q) => DownsetFD {
            carrier: f.carrier(),
            kind: DownsetKind::Generated(q.iter().map(Element::complement).collect()),
        },
        UpsetKind::CofiniteFamily => {
            DownsetFD { carrier: f.carrier(), kind: DownsetKind::FiniteFamily }
        }
    }
}

/// Inverse of [`dualize_upset`]; the two compose to the identity.
pub fn dualize_downset(d: &DownsetFD) -> UpsetFD {
    match &d.kind {
        DownsetKind::Generated(q) => UpsetFD {
            carrier: d.carrier,
            kind: UpsetKind::Generated({
                let mut gens: Vec<Element> = q.iter().map(Element::complement).collect();
                gens.sort();
                gens
            }),
        },
        DownsetKind::FiniteFamily => UpsetFD::cofinite_family(),
    }
}

/// The complementation image of a sequence, where representable: eventually
/// periodic sequences dualize termwise; the generator families have
/// co-tails and co-blocks outside the taxonomy.
pub fn dualize_seq(x: &SeqDescriptor) -> Result<SeqDescriptor> {
    match x {
        SeqDescriptor::EventuallyPeriodic { prefix, cycle } => SeqDescriptor::ep(
            prefix.iter().map(Element::complement).collect(),
            cycle.iter().map(Element::complement).collect(),
        ),
        _ => Err(Error::NotRepresentable(
            "complements of tail and diagonal families leave the descriptor taxonomy".into(),
        )),
    }
}

/// Closure in the order-dual topology over a finite carrier, computed by
/// conjugating the primal closure with complementation.
pub fn dual_closure_set(set: &BTreeSet<Element>, carrier: Carrier) -> Result<BTreeSet<Element>> {
    let conjugated: BTreeSet<Element> = set.iter().map(Element::complement).collect();
    let closed = up_closure_set(&conjugated, carrier)?;
    Ok(closed.iter().map(Element::complement).collect())
}

/// Enumeration strategy for the closed-set census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Sweep every subset of the carrier and keep the fixpoints of the
    /// sequential closure.
    SubsetScan,
    /// Depth-first enumeration of minimal-generator antichains in a fixed
    /// element order.
    AntichainDfs { order: ElementOrder },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementOrder {
    Ascending,
    Descending,
}

/// The closed-set census of a finite carrier: every closed set streamed as
/// its antichain of minimal generators.
#[derive(Debug, Clone)]
pub struct ClosedSetCensus {
    pub carrier: Carrier,
    pub mode: CensusMode,
    pub count: u64,
    pub min_antichains: Vec<Vec<Element>>,
}

impl ClosedSetCensus {
    /// Antichains normalized for order-independent comparison.
    pub fn normalized(&self) -> BTreeSet<Vec<Element>> {
        self.min_antichains
            .iter()
            .map(|a| {
                let mut a = a.clone();
                a.sort();
                a
            })
            .collect()
    }
}

/// Enumerates all closed sets of a finite carrier.
///
/// The subset scan tests `u(F) = F` directly: the achievable limsups of
/// sequences in `F` are the joins of nonempty subsets of `F`, computed as
/// the pairwise-join closure, and `u(F)` is their upward closure. The
/// antichain mode never looks at `u` at all: it enumerates antichains of
/// minimal generators depth-first, which are in bijection with the closed
/// sets. The two modes are independent algorithms whose counts must agree.
pub fn enumerate_closed_sets(carrier: Carrier, mode: CensusMode) -> Result<ClosedSetCensus> {
    let atoms = match carrier {
        Carrier::Power { atoms } => atoms,
        Carrier::UpFragment => {
            return Err(Error::Precondition("the census needs a finite carrier".into()))
        }
    };
    match mode {
        CensusMode::SubsetScan => {
            if atoms > SCAN_ATOM_LIMIT {
                return Err(Error::CarrierTooLarge {
                    atoms,
                    limit: SCAN_ATOM_LIMIT,
                    context: "subset-scan census",
                });
            }
            let m = 1usize << atoms;
            // superset mask per element: which elements lie above it
            let sup_masks: Vec<u64> = (0..m)
                .map(|i| (0..m).filter(|&e| i & e == i).fold(0u64, |acc, e| acc | 1 << e))
                .collect();
            let mut min_antichains = Vec::new();
            for candidate in 0u64..(1 << m) {
                if scan_u(candidate, &sup_masks) == candidate {
                    min_antichains.push(mask_minimals(candidate, m, atoms));
                }
            }
            Ok(ClosedSetCensus {
                carrier,
                mode,
                count: min_antichains.len() as u64,
                min_antichains,
            })
        }
        CensusMode::AntichainDfs { order } => {
            if atoms > ANTICHAIN_ATOM_LIMIT {
                return Err(Error::CarrierTooLarge {
                    atoms,
                    limit: ANTICHAIN_ATOM_LIMIT,
                    context: "antichain-enumeration census",
                });
            }
            let m = 1u64 << atoms;
            let mut order_vec: Vec<u64> = (0..m).collect();
            if order == ElementOrder::Descending {
                order_vec.reverse();
            }
            let mut min_antichains = Vec::new();
            let mut chosen: Vec<u64> = Vec::new();
            dfs_antichains(&order_vec, 0, &mut chosen, &mut |antichain| {
                min_antichains.push(
                    antichain
                        .iter()
                        .map(|&bits| Element::Finite { atoms, bits })
                        .collect::<Vec<Element>>(),
                );
            });
            Ok(ClosedSetCensus {
                carrier,
                mode,
                count: min_antichains.len() as u64,
                min_antichains,
            })
        }
    }
}

/// `u(F)` on a subset mask: upward closure of the pairwise-join closure.
/// The achievable limsups of sequences valued in `F` are exactly the joins
/// of nonempty subsets of `F`, which the pairwise fixpoint computes.
fn scan_u(mask: u64, sup_masks: &[u64]) -> u64 {
    let mut joins = mask;
    loop {
        let mut next = joins;
        let mut a = joins;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = joins;
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                b &= b - 1;
                next |= 1 << (i | j);
            }
        }
        if next == joins {
            break;
        }
        joins = next;
    }
    let mut up = 0u64;
    let mut a = joins;
    while a != 0 {
        let i = a.trailing_zeros() as usize;
        a &= a - 1;
        up |= sup_masks[i];
    }
    up
}

fn mask_minimals(mask: u64, m: usize, atoms: u8) -> Vec<Element> {
    let mut out = Vec::new();
    'outer: for e in 0..m {
        if mask & (1 << e) == 0 {
            continue;
        }
        for other in 0..m {
            if other != e && mask & (1 << other) != 0 && other & e == other {
                continue 'outer;
            }
        }
        out.push(Element::Finite { atoms, bits: e as u64 });
    }
    out
}

fn dfs_antichains(order: &[u64], start: usize, chosen: &mut Vec<u64>, emit: &mut impl FnMut(&[u64])) {
    emit(chosen);
    for i in start..order.len() {
        let candidate = order[i];
        let compatible = chosen
            .iter()
            .all(|&c| c & candidate != c && c & candidate != candidate);
        if compatible {
            chosen.push(candidate);
            dfs_antichains(order, i + 1, chosen, emit);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergence::{iterate_u_to_fixpoint, Convergence};

    fn p(atoms: u8) -> Carrier {
        Carrier::power(atoms).unwrap()
    }

    fn e(atoms: u8, bits: u64) -> Element {
        Element::Finite { atoms, bits }
    }

    fn set(items: &[Element]) -> BTreeSet<Element> {
        items.iter().cloned().collect()
    }

    #[test]
    fn up_closure_extracts_minimal_generators() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let one = carrier.one();
        let f = UpsetFD::up_closure(carrier, &[a.clone(), one.clone()]).unwrap();
        assert_eq!(f.generators().unwrap(), &[a.clone()]);

        let b = e(2, 0b10);
        let g = UpsetFD::up_closure(carrier, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(g.generators().unwrap(), &[a, b]);

        let h = UpsetFD::up_closure(carrier, &[one.clone()]).unwrap();
        assert_eq!(h.generators().unwrap(), &[one.clone()]);
        assert!(h.contains(&one).unwrap());
        assert!(!h.contains(&carrier.zero()).unwrap());
    }

    #[test]
    fn empty_up_closure_is_the_closed_empty_upset() {
        let f = UpsetFD::up_closure(p(2), &[]).unwrap();
        assert_eq!(f.generators().unwrap().len(), 0);
        assert!(f.closedness().unwrap().closed);
        assert!(!f.contains(&p(2).zero()).unwrap());
    }

    #[test]
    fn min_elements_examples() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let one = carrier.one();

        let f = set(&[a.clone(), b.clone(), one.clone()]);
        assert_eq!(min_elements(&f, carrier).unwrap(), vec![a.clone(), b.clone()]);

        let whole: BTreeSet<Element> = carrier.elements().unwrap().into_iter().collect();
        assert_eq!(min_elements(&whole, carrier).unwrap(), vec![carrier.zero()]);

        assert_eq!(min_elements(&set(&[one.clone()]), carrier).unwrap(), vec![one]);

        let not_up = set(&[a]);
        assert!(matches!(min_elements(&not_up, carrier), Err(Error::NotUpwardClosed { .. })));
    }

    #[test]
    fn min_representation_round_trips_on_p3() {
        let carrier = p(3);
        let census = enumerate_closed_sets(carrier, CensusMode::SubsetScan).unwrap();
        assert_eq!(census.count, 20);
        for antichain in &census.min_antichains {
            let f = UpsetFD::up_closure(carrier, antichain).unwrap();
            let rebuilt = f.to_element_set().unwrap();
            let direct = up_closure_set(&antichain.iter().cloned().collect(), carrier).unwrap();
            assert_eq!(rebuilt, direct);
            assert_eq!(
                min_elements(&rebuilt, carrier).unwrap(),
                antichain.clone(),
                "minimal elements changed on reconstruction"
            );
        }
    }

    #[test]
    fn finite_carrier_upsets_are_closed() {
        let carrier = p(3);
        let census = enumerate_closed_sets(carrier, CensusMode::SubsetScan).unwrap();
        for antichain in &census.min_antichains {
            let f = up_closure_set(&antichain.iter().cloned().collect(), carrier).unwrap();
            assert!(closedness_of_set(&f, carrier).unwrap().closed);
        }
        let a = e(3, 0b001);
        let not_up = set(&[a]);
        let report = closedness_of_set(&not_up, carrier).unwrap();
        assert!(!report.closed);
        assert!(matches!(report.witness, Some(ClosednessWitness::NotUpward { .. })));
    }

    #[test]
    fn cofinite_family_is_not_closed_with_tail_witness() {
        let f = UpsetFD::cofinite_family();
        let report = f.closedness().unwrap();
        assert!(!report.closed);
        match report.witness.unwrap() {
            ClosednessWitness::EscapingLimsup { sequence, limsup } => {
                assert_eq!(limsup, Element::Up(UPSet::empty()));
                // the witness sequence really lives in the family
                for n in 0..5 {
                    assert!(f.contains(&sequence.nth(n)).unwrap());
                }
                assert!(!f.contains(&limsup).unwrap());
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn principal_upsets_over_the_fragment_are_closed() {
        let s = UPSet::new(&[true, false, true], &[false]).unwrap();
        let f = UpsetFD::principal(Element::Up(s));
        assert!(f.closedness().unwrap().closed);
    }

    #[test]
    fn dec_membership_examples() {
        // the up-closure of the tail chain is the cofinite family, and the
        // empty set is a meet of a decreasing chain there
        let family = UpsetFD::cofinite_family();
        let empty = Element::Up(UPSet::empty());
        assert!(!family.contains(&empty).unwrap());
        assert!(dec_membership(&empty, &family).unwrap());

        // finite carrier: membership in the image is membership
        let carrier = p(2);
        let a = e(2, 0b01);
        let f = UpsetFD::principal(a.clone());
        assert!(dec_membership(&a, &f).unwrap());
        assert!(!dec_membership(&carrier.zero(), &f).unwrap());

        // a generator is the meet of its own constant chain
        let q = Element::Up(UPSet::tail(2));
        let g = UpsetFD::principal(q.clone());
        assert!(dec_membership(&q, &g).unwrap());
    }

    #[test]
    fn dec_iterate_on_finite_carriers_stops_at_the_up_closure() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let trace = dec_iterate(&SetPresentation::Finite {
            carrier,
            elements: vec![a.clone(), b.clone()],
        })
        .unwrap();
        let expected = up_closure_set(&set(&[a, b]), carrier).unwrap();
        assert_eq!(trace.closure(), &ClosureStage::Set(expected));
        assert_eq!(trace.stabilized_at, 0);
    }

    #[test]
    fn dec_iterate_on_tails_reaches_the_whole_algebra() {
        let trace = dec_iterate(&SetPresentation::TailFamily(AffineMap::new(1, 0).unwrap())).unwrap();
        assert_eq!(trace.up_closure, ClosureStage::Upset(UpsetFD::cofinite_family()));
        // the empty set enters at stage 1 and its upset is everything
        let empty = Element::Up(UPSet::empty());
        assert!(trace.stages[0].contains(&empty).unwrap());
        assert_eq!(
            trace.closure(),
            &ClosureStage::Upset(UpsetFD::whole(Carrier::UpFragment))
        );
        assert_eq!(trace.stabilized_at, 1);
    }

    #[test]
    fn dec_iterate_is_stable_on_closed_inputs() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let closed: Vec<Element> =
            up_closure_set(&set(&[a]), carrier).unwrap().into_iter().collect();
        let trace =
            dec_iterate(&SetPresentation::Finite { carrier, elements: closed.clone() }).unwrap();
        assert_eq!(trace.stabilized_at, 0);
        assert_eq!(trace.closure(), &ClosureStage::Set(closed.into_iter().collect()));
    }

    #[test]
    fn dec_trace_agrees_with_u_iteration_stagewise() {
        let carrier = p(3);
        let lambda = Convergence::limsup_up();
        let sets: Vec<Vec<Element>> = vec![
            vec![e(3, 0b001)],
            vec![e(3, 0b001), e(3, 0b010)],
            vec![e(3, 0b011), e(3, 0b101), e(3, 0b110)],
        ];
        for a in sets {
            let dec =
                dec_iterate(&SetPresentation::Finite { carrier, elements: a.clone() }).unwrap();
            let run =
                iterate_u_to_fixpoint(&a.iter().cloned().collect(), &lambda, carrier).unwrap();
            assert_eq!(dec.closure(), &ClosureStage::Set(run.result.clone()));
            // every stage of both iterations is already the closure
            for stage in &dec.stages {
                assert_eq!(stage, &ClosureStage::Set(run.result.clone()));
            }
            for stage in &run.stages {
                assert_eq!(stage, &run.result);
            }
        }
    }

    #[test]
    fn closure_special_clauses() {
        // decreasing chain: x_n = S ∪ [n, ∞) closes to S↑
        let s = UPSet::new(&[], &[true, false]).unwrap();
        let x = SeqDescriptor::UnionTail { base: s.clone(), tail: AffineMap::new(1, 0).unwrap() };
        assert_eq!(
            closure_special(&OrbitDescriptor::DecreasingChain(x)).unwrap(),
            UpsetFD::principal(Element::Up(s))
        );

        // increasing chain closes to the upset of its first element
        let a = e(2, 0b01);
        let one = p(2).one();
        let inc = SeqDescriptor::ep(vec![a.clone()], vec![one]).unwrap();
        assert_eq!(
            closure_special(&OrbitDescriptor::IncreasingChain(inc)).unwrap(),
            UpsetFD::principal(a.clone())
        );

        // a countable antichain closes to the whole algebra
        let diag = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        assert_eq!(
            closure_special(&OrbitDescriptor::CountableAntichain(diag)).unwrap(),
            UpsetFD::whole(Carrier::UpFragment)
        );
        assert_eq!(
            closure_special(&OrbitDescriptor::Dense).unwrap(),
            UpsetFD::whole(Carrier::UpFragment)
        );

        // finite sets close to their upward closure
        let b = e(2, 0b10);
        assert_eq!(
            closure_special(&OrbitDescriptor::FiniteSet(vec![a.clone(), b.clone()])).unwrap(),
            UpsetFD::up_closure(p(2), &[a, b]).unwrap()
        );
    }

    #[test]
    fn closure_special_rejects_mismatched_clauses() {
        let increasing_as_decreasing = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        assert!(closure_special(&OrbitDescriptor::DecreasingChain(increasing_as_decreasing))
            .is_err());
        let tails = SeqDescriptor::TailAbove(AffineMap::new(1, 0).unwrap());
        assert!(closure_special(&OrbitDescriptor::CountableAntichain(tails)).is_err());
        let finite_range = SeqDescriptor::constant(Element::Up(UPSet::full()));
        assert!(closure_special(&OrbitDescriptor::CountableAntichain(finite_range)).is_err());
    }

    #[test]
    fn lim_closed_form_examples() {
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let x = SeqDescriptor::ep(vec![], vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(lim_closed_form(&x), UpsetFD::principal(a.join(&b).unwrap()));

        let constant = SeqDescriptor::constant(b.clone());
        assert_eq!(lim_closed_form(&constant), UpsetFD::principal(b));

        // zero limsup yields the whole algebra
        let diag = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        assert_eq!(lim_closed_form(&diag), UpsetFD::whole(Carrier::UpFragment));
    }

    #[test]
    fn zero_limit_reports() {
        let diag = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        let report = zero_limit_witness(&diag).unwrap();
        assert!(report.zero_in_lim);
        assert!(report.witness.is_none());

        let s = UPSet::new(&[], &[true, false]).unwrap();
        let x = SeqDescriptor::UnionTail { base: s, tail: AffineMap::new(1, 0).unwrap() };
        let report = zero_limit_witness(&x).unwrap();
        assert!(!report.zero_in_lim);
        let witness = report.witness.unwrap();
        assert_eq!(witness.point, 0);
        assert!(witness.verify(&x, 16));

        let constant = SeqDescriptor::constant(Element::Up(UPSet::full()));
        let report = zero_limit_witness(&constant).unwrap();
        let witness = report.witness.unwrap();
        assert_eq!(witness.point, 0);
        assert!(witness.verify(&constant, 16));
    }

    #[test]
    fn meet_preimage_examples() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let f = UpsetFD::principal(a.clone());
        assert_eq!(preimage_meet(&a, &f).unwrap(), f);

        let one_up = UpsetFD::principal(carrier.one());
        assert_eq!(preimage_meet(&a, &one_up).unwrap(), UpsetFD::empty(carrier));

        let b = e(2, 0b10);
        let b_up = UpsetFD::principal(b);
        assert_eq!(preimage_meet(&a, &b_up).unwrap(), UpsetFD::empty(carrier));
    }

    #[test]
    fn preimages_are_closed_on_finite_carriers() {
        let carrier = p(3);
        let census = enumerate_closed_sets(carrier, CensusMode::SubsetScan).unwrap();
        for a in carrier.elements().unwrap() {
            for antichain in &census.min_antichains {
                let f = UpsetFD::up_closure(carrier, antichain).unwrap();
                for preimage in [preimage_meet(&a, &f).unwrap(), preimage_join(&a, &f).unwrap()] {
                    let as_set = preimage.to_element_set().unwrap();
                    assert!(closedness_of_set(&as_set, carrier).unwrap().closed);
                }
            }
        }
    }

    #[test]
    fn preimages_match_pointwise_definition_on_p2() {
        let carrier = p(2);
        let census = enumerate_closed_sets(carrier, CensusMode::SubsetScan).unwrap();
        for a in carrier.elements().unwrap() {
            for antichain in &census.min_antichains {
                let f = UpsetFD::up_closure(carrier, antichain).unwrap();
                let meet_pre = preimage_meet(&a, &f).unwrap();
                let join_pre = preimage_join(&a, &f).unwrap();
                for x in carrier.elements().unwrap() {
                    assert_eq!(
                        meet_pre.contains(&x).unwrap(),
                        f.contains(&x.meet(&a).unwrap()).unwrap()
                    );
                    assert_eq!(
                        join_pre.contains(&x).unwrap(),
                        f.contains(&x.join(&a).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cofinite_family_preimages() {
        let family = UpsetFD::cofinite_family();
        let cofinite = Element::Up(UPSet::tail(3));
        let neither = Element::Up(UPSet::new(&[], &[true, false]).unwrap());

        assert_eq!(preimage_meet(&cofinite, &family).unwrap(), UpsetFD::cofinite_family());
        assert_eq!(
            preimage_meet(&neither, &family).unwrap(),
            UpsetFD::empty(Carrier::UpFragment)
        );
        assert_eq!(
            preimage_join(&cofinite, &family).unwrap(),
            UpsetFD::whole(Carrier::UpFragment)
        );
        assert!(preimage_join(&neither, &family).is_err());
    }

    #[test]
    fn stabilization_test_matches_the_closed_form() {
        let carrier = p(2);
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let x = SeqDescriptor::ep(vec![], vec![a.clone(), b.clone()]).unwrap();
        let join = a.join(&b).unwrap();
        assert!(limit_membership_by_stabilization(&x, &join).unwrap());
        // a constant-b subsequence defeats membership of a
        assert!(!limit_membership_by_stabilization(&x, &a).unwrap());
        let c = SeqDescriptor::constant(a.clone());
        assert!(limit_membership_by_stabilization(&c, &a).unwrap());

        for class_values in 1u64..16 {
            let values: Vec<Element> =
                (0..4).filter(|i| class_values & (1 << i) != 0).map(|i| e(2, i)).collect();
            let x = SeqDescriptor::ep(vec![], values).unwrap();
            let closed_form = lim_closed_form(&x);
            for t in carrier.elements().unwrap() {
                assert_eq!(
                    limit_membership_by_stabilization(&x, &t).unwrap(),
                    closed_form.contains(&t).unwrap()
                );
            }
        }
    }

    #[test]
    fn stable_orbit_closure_examples() {
        let a = e(2, 0b01);
        let one = p(2).one();
        // prefix above the recurring value: generators collapse to the value
        let x = SeqDescriptor::ep(vec![one.clone()], vec![a.clone()]).unwrap();
        assert_eq!(stable_orbit_closure(&x).unwrap(), UpsetFD::principal(a.clone()));

        // incomparable prefix value stays a generator
        let b = e(2, 0b10);
        let y = SeqDescriptor::ep(vec![b.clone()], vec![a.clone()]).unwrap();
        let closure = stable_orbit_closure(&y).unwrap();
        assert_eq!(closure, UpsetFD::up_closure(p(2), &[a.clone(), b.clone()]).unwrap());
        // cross-check against the generic closure of the orbit
        let orbit = set(&[a.clone(), b]);
        let run = iterate_u_to_fixpoint(&orbit, &Convergence::limsup_up(), p(2)).unwrap();
        assert_eq!(closure.to_element_set().unwrap(), run.result);

        let constant = SeqDescriptor::constant(a.clone());
        assert_eq!(stable_orbit_closure(&constant).unwrap(), UpsetFD::principal(a));

        let unstable = SeqDescriptor::ep(vec![], vec![e(2, 1), e(2, 2)]).unwrap();
        assert!(stable_orbit_closure(&unstable).is_err());
    }

    #[test]
    fn duality_examples() {
        let a = e(2, 0b01);
        let up = UpsetFD::principal(a.clone());
        let down = dualize_upset(&up);
        // the dual of a↑ is (a′)↓
        for x in p(2).elements().unwrap() {
            assert_eq!(
                down.contains(&x).unwrap(),
                x.leq(&a.complement()).unwrap()
            );
        }
        assert_eq!(dualize_downset(&down), up);

        let family = UpsetFD::cofinite_family();
        let finite_family = dualize_upset(&family);
        assert!(finite_family.contains(&Element::Up(UPSet::singleton(3))).unwrap());
        assert!(!finite_family.contains(&Element::Up(UPSet::tail(3))).unwrap());
        assert_eq!(dualize_downset(&finite_family), family);
    }

    #[test]
    fn dual_closure_of_a_point_is_its_downset() {
        let carrier = p(2);
        for b in carrier.elements().unwrap() {
            let closure = dual_closure_set(&set(&[b.clone()]), carrier).unwrap();
            let downset: BTreeSet<Element> = carrier
                .elements()
                .unwrap()
                .into_iter()
                .filter(|x| x.leq(&b).unwrap())
                .collect();
            assert_eq!(closure, downset);
        }
    }

    #[test]
    fn dual_sequence_swaps_limsup_and_liminf() {
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let x = SeqDescriptor::ep(vec![b.clone()], vec![a.clone(), b]).unwrap();
        let dual = dualize_seq(&x).unwrap();
        assert_eq!(dual.liminf(), x.limsup().complement());
        assert_eq!(dual.limsup(), x.liminf().complement());
        assert_eq!(dualize_seq(&dual).unwrap(), x);
    }

    #[test]
    fn census_counts_small_carriers() {
        assert_eq!(enumerate_closed_sets(p(1), CensusMode::SubsetScan).unwrap().count, 3);
        assert_eq!(enumerate_closed_sets(p(2), CensusMode::SubsetScan).unwrap().count, 6);
        assert_eq!(enumerate_closed_sets(p(3), CensusMode::SubsetScan).unwrap().count, 20);
        for order in [ElementOrder::Ascending, ElementOrder::Descending] {
            let census =
                enumerate_closed_sets(p(3), CensusMode::AntichainDfs { order }).unwrap();
            assert_eq!(census.count, 20);
        }
    }

    #[test]
    fn census_modes_agree_on_p3() {
        let scan = enumerate_closed_sets(p(3), CensusMode::SubsetScan).unwrap();
        let dfs = enumerate_closed_sets(
            p(3),
            CensusMode::AntichainDfs { order: ElementOrder::Ascending },
        )
        .unwrap();
        assert_eq!(scan.normalized(), dfs.normalized());
    }

    #[test]
    fn census_refuses_oversized_carriers() {
        assert!(matches!(
            enumerate_closed_sets(p(5), CensusMode::SubsetScan),
            Err(Error::CarrierTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_closed_sets(
                Carrier::power(6).unwrap(),
                CensusMode::AntichainDfs { order: ElementOrder::Ascending }
            ),
            Err(Error::CarrierTooLarge { .. })
        ));
    }
}
