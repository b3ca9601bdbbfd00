//! Finitely presented infinite sequences of carrier elements with exactly
//! computable limsup and liminf.
//!
//! The representation is a closed descriptor taxonomy rather than arbitrary
//! generator functions: each family admits closed-form tail joins and meets,
//! so limsup and liminf are computed, never sampled.

use std::collections::BTreeSet;
use std::fmt;

use crate::carrier::{lcm, Carrier, Element, UPSet};
use crate::error::{Error, Result};

/// A strictly increasing affine map `n ↦ c·n + d` with `c ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    c: u64,
    d: u64,
}

impl AffineMap {
    pub fn new(c: u64, d: u64) -> Result<AffineMap> {
        if c == 0 {
            return Err(Error::Precondition("affine map must have slope c ≥ 1".into()));
        }
        Ok(AffineMap { c, d })
    }

    pub fn identity() -> AffineMap {
        AffineMap { c: 1, d: 0 }
    }

    pub fn slope(&self) -> u64 {
        self.c
    }

    pub fn offset(&self) -> u64 {
        self.d
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.c * n + self.d
    }

    /// The composite `self ∘ inner`, i.e. `n ↦ self(inner(n))`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap { c: self.c * inner.c, d: self.c * inner.d + self.d }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n+{}", self.c, self.d)
    }
}

/// A strictly increasing index map: a finite exception table followed by an
/// affine rule. The class is closed under composition, which keeps
/// subsequence formation inside the descriptor taxonomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    exceptions: Vec<u64>,
    affine: AffineMap,
}

impl IndexMap {
    pub fn new(exceptions: Vec<u64>, affine: AffineMap) -> Result<IndexMap> {
        let k = exceptions.len() as u64;
        for w in exceptions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Precondition("index map must be strictly increasing".into()));
            }
        }
        if let Some(&last) = exceptions.last() {
            if last >= affine.eval(k) {
                return Err(Error::Precondition(
                    "index map must be strictly increasing across the affine boundary".into(),
                ));
            }
        }
        let mut map = IndexMap { exceptions, affine };
        map.normalize();
        Ok(map)
    }

    pub fn affine(c: u64, d: u64) -> Result<IndexMap> {
        Ok(IndexMap { exceptions: vec![], affine: AffineMap::new(c, d)? })
    }

    pub fn identity() -> IndexMap {
        IndexMap { exceptions: vec![], affine: AffineMap::identity() }
    }

    fn normalize(&mut self) {
        while let Some(&last) = self.exceptions.last() {
            if last == self.affine.eval(self.exceptions.len() as u64 - 1) {
                self.exceptions.pop();
            } else {
                break;
            }
        }
    }

    pub fn eval(&self, n: u64) -> u64 {
        match self.exceptions.get(n as usize) {
            Some(&v) => v,
            None => self.affine.eval(n),
        }
    }

    /// `Some` iff the whole map coincides with its affine rule.
    pub fn as_pure_affine(&self) -> Option<AffineMap> {
        if self.exceptions.is_empty() {
            Some(self.affine)
        } else {
            None
        }
    }

    /// The composite `self ∘ inner`.
    pub fn compose(&self, inner: &IndexMap) -> IndexMap {
        let k_self = self.exceptions.len() as u64;
        // beyond this index both maps run on their affine rules and the
        // inner value has left the outer exception table
        let mut start = inner.exceptions.len() as u64;
        while inner.eval(start) < k_self {
            start += 1;
        }
        let exceptions: Vec<u64> = (0..start).map(|n| self.eval(inner.eval(n))).collect();
        let affine = self.affine.compose(&inner.affine);
        let mut map = IndexMap { exceptions, affine };
        map.normalize();
        map
    }
}

impl fmt::Display for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.exceptions.is_empty() {
            write!(f, "[")?;
            for (i, v) in self.exceptions.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "] then ")?;
        }
        write!(f, "{}", self.affine)
    }
}

/// A finitely presented infinite sequence of elements.
///
/// `EventuallyPeriodic` works over any carrier; the four generator families
/// live in the ultimately periodic fragment:
///
/// * `TailAbove(g)`: `x_n = [g(n), ∞)`, pointwise decreasing;
/// * `UnionTail(S, g)`: `x_n = S ∪ [g(n), ∞)`, pointwise decreasing;
/// * `SingletonDiag(g)`: `x_n = {g(n)}`;
/// * `BlockDiag(g)`: `x_n = [g(n), g(n+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqDescriptor {
    EventuallyPeriodic { prefix: Vec<Element>, cycle: Vec<Element> },
    TailAbove(AffineMap),
    UnionTail { base: UPSet, tail: AffineMap },
    SingletonDiag(AffineMap),
    BlockDiag(AffineMap),
}

/// The set `C` of values taken infinitely often. Generator families with an
/// injective value map have an infinite range, so `C` is empty and the flag
/// is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfValueSet {
    pub values: BTreeSet<Element>,
    pub infinite_range: bool,
}

impl SeqDescriptor {
    pub fn ep(prefix: Vec<Element>, cycle: Vec<Element>) -> Result<SeqDescriptor> {
        if cycle.is_empty() {
            return Err(Error::Precondition("eventually periodic cycle must be nonempty".into()));
        }
        let carrier = cycle[0].carrier();
        for e in prefix.iter().chain(cycle.iter()) {
            if e.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.to_string(),
                    right: e.carrier().to_string(),
                });
            }
        }
        Ok(SeqDescriptor::EventuallyPeriodic { prefix, cycle })
    }

    pub fn constant(value: Element) -> SeqDescriptor {
        SeqDescriptor::EventuallyPeriodic { prefix: vec![], cycle: vec![value] }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            SeqDescriptor::EventuallyPeriodic { cycle, .. } => cycle[0].carrier(),
            _ => Carrier::UpFragment,
        }
    }

    /// The `n`-th term of the sequence.
    pub fn nth(&self, n: u64) -> Element {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                let np = prefix.len() as u64;
                if n < np {
                    prefix[n as usize].clone()
                } else {
                    cycle[((n - np) % cycle.len() as u64) as usize].clone()
                }
            }
            SeqDescriptor::TailAbove(g) => Element::Up(UPSet::tail(g.eval(n))),
            SeqDescriptor::UnionTail { base, tail } => {
                Element::Up(base.union(&UPSet::tail(tail.eval(n))).expect("cap unreachable"))
            }
            SeqDescriptor::SingletonDiag(g) => Element::Up(UPSet::singleton(g.eval(n))),
            SeqDescriptor::BlockDiag(g) => Element::Up(UPSet::range(g.eval(n), g.eval(n + 1))),
        }
    }

    /// True iff the sequence is literally constant.
    pub fn is_constant(&self) -> bool {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                let v = &cycle[0];
                prefix.iter().all(|e| e == v) && cycle.iter().all(|e| e == v)
            }
            _ => false,
        }
    }

    /// The limsup `⋀_k ⋁_{n≥k} x_n`, in closed form per family:
    ///
    /// * eventually periodic: every tail join beyond the prefix is the join
    ///   of the cycle values, so the meet of the tail joins equals it;
    /// * `TailAbove(g)`: the tail join from `k` is `[g(k), ∞)` and `g` is
    ///   strictly increasing, so the meet over `k` is empty;
    /// * `UnionTail(S, g)`: tail joins are `S ∪ [g(k), ∞)`, whose meet is `S`;
    /// * `SingletonDiag(g)` / `BlockDiag(g)`: the tail join from `k` is
    ///   contained in `[g(k), ∞)`, so the meet is again empty.
    pub fn limsup(&self) -> Element {
        match self {
            SeqDescriptor::EventuallyPeriodic { cycle, .. } => {
                let carrier = self.carrier();
                let mut acc = carrier.zero();
                for e in cycle {
                    acc = acc.join(e).expect("single carrier");
                }
                acc
            }
            SeqDescriptor::TailAbove(_)
            | SeqDescriptor::SingletonDiag(_)
            | SeqDescriptor::BlockDiag(_) => Element::Up(UPSet::empty()),
            SeqDescriptor::UnionTail { base, .. } => Element::Up(base.clone()),
        }
    }

    /// The liminf `⋁_k ⋀_{n≥k} x_n`, dual to [`SeqDescriptor::limsup`]:
    /// tail meets of an eventually periodic sequence are the meet of the
    /// cycle values; the decreasing families have liminf equal to limsup;
    /// the diagonal families have empty tail meets.
    pub fn liminf(&self) -> Element {
        match self {
            SeqDescriptor::EventuallyPeriodic { cycle, .. } => {
                let carrier = self.carrier();
                let mut acc = carrier.one();
                for e in cycle {
                    acc = acc.meet(e).expect("single carrier");
                }
                acc
            }
            SeqDescriptor::TailAbove(_)
            | SeqDescriptor::SingletonDiag(_)
            | SeqDescriptor::BlockDiag(_) => Element::Up(UPSet::empty()),
            SeqDescriptor::UnionTail { base, .. } => Element::Up(base.clone()),
        }
    }

    /// The subsequence `x ∘ f`, kept inside the descriptor taxonomy.
    ///
    /// An eventually periodic sequence composed with an index map is again
    /// eventually periodic. A generator family composes through its affine
    /// map, which requires `f` to be purely affine (`BlockDiag` additionally
    /// needs slope 1, since its blocks must stay adjacent); anything else is
    /// reported, never silently approximated.
    pub fn subsequence(&self, f: &IndexMap) -> Result<SeqDescriptor> {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                let np = prefix.len() as u64;
                let p = cycle.len() as u64;
                // beyond this index f is affine and lands past the prefix
                let mut start = f.exceptions.len() as u64;
                while f.eval(start) < np {
                    start += 1;
                }
                let q = p / gcd_u64(f.affine.c, p);
                let new_prefix: Vec<Element> = (0..start).map(|n| self.nth(f.eval(n))).collect();
                let new_cycle: Vec<Element> =
                    (start..start + q).map(|n| self.nth(f.eval(n))).collect();
                SeqDescriptor::ep(new_prefix, new_cycle)
            }
            SeqDescriptor::TailAbove(g) => match f.as_pure_affine() {
                Some(a) => Ok(SeqDescriptor::TailAbove(g.compose(&a))),
                None => Err(Error::NotRepresentable(
                    "tail family composed with a non-affine index map".into(),
                )),
            },
            SeqDescriptor::UnionTail { base, tail } => match f.as_pure_affine() {
                Some(a) => {
                    Ok(SeqDescriptor::UnionTail { base: base.clone(), tail: tail.compose(&a) })
                }
                None => Err(Error::NotRepresentable(
                    "union-tail family composed with a non-affine index map".into(),
                )),
            },
            SeqDescriptor::SingletonDiag(g) => match f.as_pure_affine() {
                Some(a) => Ok(SeqDescriptor::SingletonDiag(g.compose(&a))),
                None => Err(Error::NotRepresentable(
                    "singleton family composed with a non-affine index map".into(),
                )),
            },
            SeqDescriptor::BlockDiag(g) => match f.as_pure_affine() {
                Some(a) if a.c == 1 => Ok(SeqDescriptor::BlockDiag(g.compose(&a))),
                _ => Err(Error::NotRepresentable(
                    "block family only composes with shift maps (slope 1)".into(),
                )),
            },
        }
    }

    /// The set of values occurring infinitely often.
    pub fn inf_value_set(&self) -> InfValueSet {
        match self {
            SeqDescriptor::EventuallyPeriodic { cycle, .. } => InfValueSet {
                values: cycle.iter().cloned().collect(),
                infinite_range: false,
            },
            // each family's value map is injective, so no value recurs
            _ => InfValueSet { values: BTreeSet::new(), infinite_range: true },
        }
    }

    /// Decides whether every subsequence has the same limsup.
    ///
    /// The subsequences of an eventually periodic sequence realize exactly
    /// the nonempty subsets `C′` of its recurring-value set `C` (pick the
    /// positions of the wanted values), and such a subsequence has limsup
    /// `⋁C′`. All of those joins agree exactly when the singleton joins do,
    /// i.e. when `C` has a single value. This reading of "stable" is an
    /// interpretation adopted by the artifact and is flagged in reports.
    pub fn is_limsup_stable(&self) -> Result<bool> {
        match self {
            SeqDescriptor::EventuallyPeriodic { .. } => {
                Ok(self.inf_value_set().values.len() == 1)
            }
            _ => Err(Error::NonEventuallyPeriodic { context: "limsup stability" }),
        }
    }

    /// Decides `x_n ≤ y_n` for all `n`. Exact for pairs of eventually
    /// periodic descriptors (one aligned cycle decides the tail) and for
    /// same-shape tail families.
    pub fn pointwise_leq(&self, other: &SeqDescriptor) -> Result<bool> {
        match (self, other) {
            (
                SeqDescriptor::EventuallyPeriodic { prefix: pa, cycle: ca },
                SeqDescriptor::EventuallyPeriodic { prefix: pb, cycle: cb },
            ) => {
                let n = pa.len().max(pb.len()) as u64;
                let horizon = n + lcm(ca.len() as u64, cb.len() as u64);
                for m in 0..horizon {
                    if !self.nth(m).leq(&other.nth(m))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (SeqDescriptor::TailAbove(g), SeqDescriptor::TailAbove(h)) => {
                // [g(n),∞) ⊆ [h(n),∞) iff g(n) ≥ h(n) for all n
                Ok(g.c >= h.c && g.d >= h.d)
            }
            _ => Err(Error::NotRepresentable(
                "pointwise comparison is only decided for eventually periodic pairs".into(),
            )),
        }
    }

    /// Symbolic monotonicity check: true iff `x_{n+1} ≤ x_n` for all `n`.
    pub fn is_pointwise_decreasing(&self) -> Result<bool> {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                let horizon = prefix.len() as u64 + cycle.len() as u64 + 1;
                for n in 0..horizon {
                    if !self.nth(n + 1).leq(&self.nth(n))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            SeqDescriptor::TailAbove(_) | SeqDescriptor::UnionTail { .. } => Ok(true),
            SeqDescriptor::SingletonDiag(_) | SeqDescriptor::BlockDiag(_) => Ok(false),
        }
    }

    /// Symbolic monotonicity check: true iff `x_n ≤ x_{n+1}` for all `n`.
    pub fn is_pointwise_increasing(&self) -> Result<bool> {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                let horizon = prefix.len() as u64 + cycle.len() as u64 + 1;
                for n in 0..horizon {
                    if !self.nth(n).leq(&self.nth(n + 1))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(false),
        }
    }
}

impl fmt::Display for SeqDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                write!(f, "ep:[")?;
                for (i, e) in prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, " | ")?;
                for (i, e) in cycle.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
            SeqDescriptor::TailAbove(g) => write!(f, "tail:{g}"),
            SeqDescriptor::UnionTail { base, tail } => write!(f, "uniontail:{base},{tail}"),
            SeqDescriptor::SingletonDiag(g) => write!(f, "diag:{g}"),
            SeqDescriptor::BlockDiag(g) => write!(f, "block:{g}"),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// The shipped library of sequences over the ultimately periodic fragment,
/// used by the zero-limit sweeps and as CLI demo material.
pub fn up_sequence_library() -> Vec<(&'static str, SeqDescriptor)> {
    let evens = UPSet::new(&[], &[true, false]).expect("cycle nonempty");
    let odds = evens.complement();
    vec![
        ("tails", SeqDescriptor::TailAbove(AffineMap::new(1, 0).unwrap())),
        ("tails-sparse", SeqDescriptor::TailAbove(AffineMap::new(2, 3).unwrap())),
        ("diag", SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap())),
        ("diag-even", SeqDescriptor::SingletonDiag(AffineMap::new(2, 0).unwrap())),
        ("blocks", SeqDescriptor::BlockDiag(AffineMap::new(1, 0).unwrap())),
        ("blocks-wide", SeqDescriptor::BlockDiag(AffineMap::new(3, 1).unwrap())),
        (
            "uniontail-evens",
            SeqDescriptor::UnionTail { base: evens.clone(), tail: AffineMap::new(1, 0).unwrap() },
        ),
        (
            "uniontail-point",
            SeqDescriptor::UnionTail { base: UPSet::singleton(5), tail: AffineMap::new(2, 1).unwrap() },
        ),
        (
            "ep-alternating",
            SeqDescriptor::ep(vec![], vec![Element::Up(evens.clone()), Element::Up(odds)]).unwrap(),
        ),
        ("ep-full", SeqDescriptor::constant(Element::Up(UPSet::full()))),
        (
            "ep-prefixed",
            SeqDescriptor::ep(
                vec![Element::Up(UPSet::empty())],
                vec![Element::Up(UPSet::singleton(0))],
            )
            .unwrap(),
        ),
        ("ep-empty", SeqDescriptor::constant(Element::Up(UPSet::empty()))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::join_all;
    use crate::carrier::meet_all;

    fn p1(bits: u64) -> Element {
        Element::Finite { atoms: 1, bits }
    }

    fn p2(bits: u64) -> Element {
        Element::Finite { atoms: 2, bits }
    }

    /// Independent limsup oracle: tail joins `J_k = ⋁_{n=k}^{k+W} x_n` over a
    /// window `W` covering a full cycle, met over all `k` up to the point
    /// where tails provably stabilize. Uses only `nth`.
    fn window_limsup(x: &SeqDescriptor) -> Element {
        let (np, p) = match x {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => (prefix.len(), cycle.len()),
            _ => panic!("oracle is for eventually periodic descriptors"),
        };
        let carrier = x.carrier();
        let window = (np + 2 * p) as u64;
        let mut acc = carrier.one();
        for k in 0..=(np + p) as u64 {
            let tail: Vec<Element> = (k..=k + window).map(|n| x.nth(n)).collect();
            let join = join_all(carrier, tail.iter()).unwrap();
            acc = acc.meet(&join).unwrap();
        }
        acc
    }

    fn window_liminf(x: &SeqDescriptor) -> Element {
        let (np, p) = match x {
            SeqDescriptor::EventuallyPeriodic { prefix, cycle } => (prefix.len(), cycle.len()),
            _ => panic!("oracle is for eventually periodic descriptors"),
        };
        let carrier = x.carrier();
        let window = (np + 2 * p) as u64;
        let mut acc = carrier.zero();
        for k in 0..=(np + p) as u64 {
            let tail: Vec<Element> = (k..=k + window).map(|n| x.nth(n)).collect();
            let meet = meet_all(carrier, tail.iter()).unwrap();
            acc = acc.join(&meet).unwrap();
        }
        acc
    }

    #[test]
    fn alternating_top_bottom_has_limsup_one() {
        let x = SeqDescriptor::ep(vec![], vec![p1(1), p1(0)]).unwrap();
        assert_eq!(x.limsup(), p1(1));
        assert_eq!(x.liminf(), p1(0));
        assert_eq!(window_limsup(&x), p1(1));
    }

    #[test]
    fn constant_sequence_limits_are_the_value() {
        let x = SeqDescriptor::constant(p2(0b10));
        assert_eq!(x.limsup(), p2(0b10));
        assert_eq!(x.liminf(), p2(0b10));
    }

    #[test]
    fn singleton_diagonal_has_empty_limsup() {
        let x = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        assert_eq!(x.limsup(), Element::Up(UPSet::empty()));
        // every point eventually leaves the sequence
        for m in 0..10u64 {
            let hits = (0..40u64).filter(|&n| {
                match x.nth(n) {
                    Element::Up(s) => s.contains(m),
                    _ => unreachable!(),
                }
            });
            assert!(hits.count() <= 1);
        }
    }

    #[test]
    fn liminf_of_alternating_atoms_is_bottom() {
        let x = SeqDescriptor::ep(vec![], vec![p2(0b01), p2(0b10)]).unwrap();
        assert_eq!(x.liminf(), p2(0));
        assert_eq!(window_liminf(&x), p2(0));
    }

    #[test]
    fn union_tail_limits_equal_base() {
        let base = UPSet::new(&[], &[true, false]).unwrap();
        let x = SeqDescriptor::UnionTail { base: base.clone(), tail: AffineMap::new(1, 0).unwrap() };
        assert_eq!(x.limsup(), Element::Up(base.clone()));
        assert_eq!(x.liminf(), Element::Up(base));
        assert!(x.is_pointwise_decreasing().unwrap());
    }

    #[test]
    fn subsequence_of_alternating_at_odd_positions_is_constant_zero() {
        let x = SeqDescriptor::ep(vec![], vec![p1(1), p1(0)]).unwrap();
        let f = IndexMap::affine(2, 1).unwrap();
        let y = x.subsequence(&f).unwrap();
        assert!(y.is_constant());
        assert_eq!(y.limsup(), p1(0));
    }

    #[test]
    fn subsequence_along_identity_is_identity() {
        let x = SeqDescriptor::ep(vec![p2(0b11)], vec![p2(0b01), p2(0b10)]).unwrap();
        assert_eq!(x.subsequence(&IndexMap::identity()).unwrap(), x);
    }

    #[test]
    fn diagonal_composes_affinely() {
        let x = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap());
        let f = IndexMap::affine(2, 0).unwrap();
        assert_eq!(
            x.subsequence(&f).unwrap(),
            SeqDescriptor::SingletonDiag(AffineMap::new(2, 0).unwrap())
        );
    }

    #[test]
    fn subsequence_terms_match_composition_pointwise() {
        let x = SeqDescriptor::ep(
            vec![p2(0b11), p2(0b00)],
            vec![p2(0b01), p2(0b10), p2(0b11)],
        )
        .unwrap();
        let f = IndexMap::new(vec![1, 4], AffineMap::new(3, 2).unwrap()).unwrap();
        let y = x.subsequence(&f).unwrap();
        for n in 0..40u64 {
            assert_eq!(y.nth(n), x.nth(f.eval(n)), "term {n}");
        }
    }

    #[test]
    fn block_family_rejects_non_shift_maps() {
        let x = SeqDescriptor::BlockDiag(AffineMap::new(1, 0).unwrap());
        assert!(x.subsequence(&IndexMap::affine(2, 0).unwrap()).is_err());
        let shifted = x.subsequence(&IndexMap::affine(1, 3).unwrap()).unwrap();
        assert_eq!(shifted, SeqDescriptor::BlockDiag(AffineMap::new(1, 3).unwrap()));
    }

    #[test]
    fn index_map_composition_matches_pointwise() {
        let f = IndexMap::new(vec![0, 2], AffineMap::new(2, 1).unwrap()).unwrap();
        let g = IndexMap::new(vec![1], AffineMap::new(3, 0).unwrap()).unwrap();
        let h = f.compose(&g);
        for n in 0..30u64 {
            assert_eq!(h.eval(n), f.eval(g.eval(n)), "index {n}");
        }
        let id = IndexMap::identity();
        assert_eq!(f.compose(&id), f);
        assert_eq!(id.compose(&f), f);
    }

    #[test]
    fn inf_value_set_examples() {
        let x = SeqDescriptor::ep(vec![p2(0b11)], vec![p2(0b01), p2(0b10)]).unwrap();
        let c = x.inf_value_set();
        assert!(!c.infinite_range);
        assert_eq!(c.values, [p2(0b01), p2(0b10)].into_iter().collect());

        let y = SeqDescriptor::ep(vec![], vec![p2(0b01), p2(0b01)]).unwrap();
        assert_eq!(y.inf_value_set().values.len(), 1);

        let d = SeqDescriptor::SingletonDiag(AffineMap::new(1, 0).unwrap()).inf_value_set();
        assert!(d.infinite_range && d.values.is_empty());
    }

    #[test]
    fn limsup_stability_examples() {
        let stable = SeqDescriptor::ep(vec![p2(0b11)], vec![p2(0b01)]).unwrap();
        assert!(stable.is_limsup_stable().unwrap());

        let unstable = SeqDescriptor::ep(vec![], vec![p2(0b01), p2(0b10)]).unwrap();
        assert!(!unstable.is_limsup_stable().unwrap());
        // witness: the constant-a subsequence has a different limsup
        let witness = unstable.subsequence(&IndexMap::affine(2, 0).unwrap()).unwrap();
        assert_ne!(witness.limsup(), unstable.limsup());

        let comparable = SeqDescriptor::ep(vec![], vec![p2(0b01), p2(0b11)]).unwrap();
        assert!(!comparable.is_limsup_stable().unwrap());

        let non_ep = SeqDescriptor::TailAbove(AffineMap::new(1, 0).unwrap());
        assert!(non_ep.is_limsup_stable().is_err());
    }

    #[test]
    fn liminf_below_limsup_across_the_library() {
        for (name, x) in up_sequence_library() {
            assert!(x.liminf().leq(&x.limsup()).unwrap(), "liminf ≰ limsup for {name}");
        }
    }

    #[test]
    fn subsequence_limsup_never_exceeds_original() {
        // exhaustive over P(2) cycles of length ≤ 3 and affine maps
        let elems: Vec<Element> = Carrier::power(2).unwrap().elements().unwrap();
        let mut cycles: Vec<Vec<Element>> = vec![];
        for a in &elems {
            cycles.push(vec![a.clone()]);
            for b in &elems {
                cycles.push(vec![a.clone(), b.clone()]);
                for c in &elems {
                    cycles.push(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        for cycle in cycles {
            let x = SeqDescriptor::ep(vec![], cycle).unwrap();
            for c in 1..=3 {
                for d in 0..=2 {
                    let f = IndexMap::affine(c, d).unwrap();
                    let y = x.subsequence(&f).unwrap();
                    assert!(
                        y.limsup().leq(&x.limsup()).unwrap(),
                        "limsup grew along {f:?} for {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn limsup_ignores_finite_prefixes() {
        let cycle = vec![p2(0b01), p2(0b10)];
        let bare = SeqDescriptor::ep(vec![], cycle.clone()).unwrap();
        let padded =
            SeqDescriptor::ep(vec![p2(0b11), p2(0b00), p2(0b11)], cycle).unwrap();
        assert_eq!(bare.limsup(), padded.limsup());
        assert_eq!(bare.liminf(), padded.liminf());
    }

    #[test]
    fn ep_limits_are_join_and_meet_of_recurring_values() {
        let elems: Vec<Element> = Carrier::power(2).unwrap().elements().unwrap();
        let carrier = Carrier::power(2).unwrap();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let x = SeqDescriptor::ep(
                        vec![c.clone()],
                        vec![a.clone(), b.clone()],
                    )
                    .unwrap();
                    let values = x.inf_value_set().values;
                    assert_eq!(x.limsup(), join_all(carrier, values.iter()).unwrap());
                    assert_eq!(x.liminf(), meet_all(carrier, values.iter()).unwrap());
                    assert_eq!(x.limsup(), window_limsup(&x));
                    assert_eq!(x.liminf(), window_liminf(&x));
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn p2_elem() -> impl Strategy<Value = Element> {
            (0u64..4).prop_map(|bits| Element::Finite { atoms: 2, bits })
        }

        fn ep_strategy() -> impl Strategy<Value = SeqDescriptor> {
            (
                prop::collection::vec(p2_elem(), 0..3),
                prop::collection::vec(p2_elem(), 1..4),
            )
                .prop_map(|(prefix, cycle)| SeqDescriptor::ep(prefix, cycle).unwrap())
        }

        fn index_map_strategy() -> impl Strategy<Value = IndexMap> {
            (1u64..4, 0u64..4).prop_map(|(c, d)| IndexMap::affine(c, d).unwrap())
        }

        proptest! {
            #[test]
            fn liminf_leq_limsup(x in ep_strategy()) {
                prop_assert!(x.liminf().leq(&x.limsup()).unwrap());
            }

            #[test]
            fn closed_forms_match_window_oracle(x in ep_strategy()) {
                prop_assert_eq!(x.limsup(), window_limsup(&x));
                prop_assert_eq!(x.liminf(), window_liminf(&x));
            }

            #[test]
            fn subsequence_is_pointwise_composition(x in ep_strategy(), f in index_map_strategy()) {
                let y = x.subsequence(&f).unwrap();
                for n in 0..24u64 {
                    prop_assert_eq!(y.nth(n), x.nth(f.eval(n)));
                }
            }
        }
    }
}
