//! Generic convergence-to-topology machinery: the closure tower under the
//! three sequential axioms, the maximal topology of a convergence, the
//! sequential-closure operator and its iteration, and brute-force
//! a-posteriori limits on finite carriers.
//!
//! Every quantifier over sequences is reduced to a finite sweep over
//! *classes* of eventually periodic sequences. The reduction is sound
//! because the limit rules considered here depend only on whether the
//! sequence is constant and on its set `C` of recurring values:
//!
//! * the subsequences of a sequence with recurring values `C` realize
//!   exactly the constant classes `⟨c⟩` for `c ∈ C` and the non-constant
//!   classes with recurring values `∅ ≠ C′ ⊆ C` (choose the positions of
//!   the wanted values);
//! * dually, the sequences having it as a subsequence realize exactly the
//!   classes with recurring values `D ⊇ C` (interleave the extra values
//!   periodically), plus the constant class itself when the sequence is
//!   constant.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::carrier::{join_all, Carrier, Element};
use crate::error::{Error, Result};
use crate::seq::SeqDescriptor;

/// Largest atom count for full topology generation: the subset sweep at 4
/// atoms touches 2^16 candidate open sets, which is instant, while 5 atoms
/// would need 2^32.
pub const TOPOLOGY_ATOM_LIMIT: u8 = 4;

/// A class of eventually periodic sequences on one carrier: whether the
/// sequence is literally constant, and its set of recurring values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EpClass {
    constant: bool,
    values: BTreeSet<Element>,
    carrier: Carrier,
}

impl EpClass {
    pub fn constant_of(value: Element) -> EpClass {
        let carrier = value.carrier();
        EpClass { constant: true, values: [value].into(), carrier }
    }

    pub fn recurring(values: BTreeSet<Element>) -> Result<EpClass> {
        let mut iter = values.iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Precondition("a sequence class needs recurring values".into()))?;
        let carrier = first.carrier();
        for v in iter {
            if v.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.to_string(),
                    right: v.carrier().to_string(),
                });
            }
        }
        Ok(EpClass { constant: false, values, carrier })
    }

    /// The class of an eventually periodic descriptor.
    pub fn of(x: &SeqDescriptor) -> Result<EpClass> {
        let values = x.inf_value_set();
        if values.infinite_range {
            return Err(Error::NonEventuallyPeriodic { context: "sequence classification" });
        }
        Ok(EpClass { constant: x.is_constant(), values: values.values, carrier: x.carrier() })
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn values(&self) -> &BTreeSet<Element> {
        &self.values
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// A concrete descriptor in this class.
    pub fn representative(&self) -> SeqDescriptor {
        let values: Vec<Element> = self.values.iter().cloned().collect();
        if self.constant {
            SeqDescriptor::constant(values[0].clone())
        } else if values.len() > 1 {
            SeqDescriptor::ep(vec![], values).expect("nonempty cycle")
        } else {
            // a single recurring value with one foreign prefix term keeps
            // the representative non-constant
            let v = &values[0];
            let junk =
                if *v == self.carrier.one() { self.carrier.zero() } else { self.carrier.one() };
            SeqDescriptor::ep(vec![junk], values).expect("nonempty cycle")
        }
    }

    /// Classes realized by subsequences of members of this class.
    pub fn subsequence_classes(&self) -> Vec<EpClass> {
        if self.constant {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        for v in &self.values {
            out.push(EpClass::constant_of(v.clone()));
        }
        for sub in nonempty_subsets(&self.values) {
            out.push(EpClass { constant: false, values: sub, carrier: self.carrier });
        }
        out
    }

    /// Classes realized by sequences having a member of this class as a
    /// subsequence. Needs a finite carrier.
    pub fn supersequence_classes(&self) -> Result<Vec<EpClass>> {
        let elements = self.carrier.elements()?;
        let mut out = Vec::new();
        if self.constant {
            out.push(self.clone());
        }
        for sup in supersets(&self.values, &elements) {
            out.push(EpClass { constant: false, values: sup, carrier: self.carrier });
        }
        Ok(out)
    }
}

fn nonempty_subsets(values: &BTreeSet<Element>) -> Vec<BTreeSet<Element>> {
    let items: Vec<&Element> = values.iter().collect();
    let mut out = Vec::new();
    for mask in 1u64..(1 << items.len()) {
        let sub: BTreeSet<Element> = items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| (*e).clone())
            .collect();
        out.push(sub);
    }
    out
}

fn supersets(values: &BTreeSet<Element>, elements: &[Element]) -> Vec<BTreeSet<Element>> {
    let free: Vec<&Element> = elements.iter().filter(|e| !values.contains(e)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut sup = values.clone();
        for (i, e) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sup.insert((*e).clone());
            }
        }
        out.push(sup);
    }
    out
}

/// All sequence classes of a finite carrier: one constant class per element
/// and one non-constant class per nonempty value set.
pub fn all_ep_classes(carrier: Carrier) -> Result<Vec<EpClass>> {
    let elements = carrier.elements()?;
    let mut out: Vec<EpClass> =
        elements.iter().map(|e| EpClass::constant_of(e.clone())).collect();
    let all: BTreeSet<Element> = elements.into_iter().collect();
    for values in nonempty_subsets(&all) {
        out.push(EpClass { constant: false, values, carrier });
    }
    Ok(out)
}

type LimitRule = Rc<dyn Fn(&EpClass) -> Result<BTreeSet<Element>>>;

/// A convergence: a rule assigning a limit set to each sequence class,
/// together with its declared axiom status. The flags are declarations;
/// [`Convergence::verify_l1`] and [`Convergence::verify_l2`] spot-check them
/// on a finite carrier.
#[derive(Clone)]
pub struct Convergence {
    name: String,
    satisfies_l1: bool,
    satisfies_l2: bool,
    rule: LimitRule,
}

impl std::fmt::Debug for Convergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Convergence")
            .field("name", &self.name)
            .field("satisfies_l1", &self.satisfies_l1)
            .field("satisfies_l2", &self.satisfies_l2)
            .finish()
    }
}

impl Convergence {
    pub fn new(
        name: impl Into<String>,
        satisfies_l1: bool,
        satisfies_l2: bool,
        rule: impl Fn(&EpClass) -> Result<BTreeSet<Element>> + 'static,
    ) -> Convergence {
        Convergence { name: name.into(), satisfies_l1, satisfies_l2, rule: Rc::new(rule) }
    }

    /// The raw limsup convergence: every sequence converges exactly to its
    /// limsup. Satisfies the constant axiom but not the subsequence axiom.
    pub fn limsup_raw() -> Convergence {
        Convergence::new("limsup", true, false, |class| {
            Ok([join_all(class.carrier(), class.values())?].into())
        })
    }

    /// The upward-closed limsup convergence: every sequence converges to
    /// everything above its limsup. This is the subsequence-closure of
    /// [`Convergence::limsup_raw`], here given directly in closed form.
    pub fn limsup_up() -> Convergence {
        Convergence::new("limsup-up", true, true, |class| {
            let bound = join_all(class.carrier(), class.values())?;
            let mut out = BTreeSet::new();
            for e in class.carrier().elements()? {
                if bound.leq(&e)? {
                    out.insert(e);
                }
            }
            Ok(out)
        })
    }

    /// The raw liminf convergence, the order dual of
    /// [`Convergence::limsup_raw`].
    pub fn liminf_raw() -> Convergence {
        Convergence::new("liminf", true, false, |class| {
            Ok([crate::carrier::meet_all(class.carrier(), class.values())?].into())
        })
    }

    /// A Hausdorff convergence: eventually constant sequences converge to
    /// their eventual value, nothing else converges.
    pub fn eventually_constant() -> Convergence {
        Convergence::new("eventually-constant", true, true, |class| {
            if class.values().len() == 1 {
                Ok(class.values().clone())
            } else {
                Ok(BTreeSet::new())
            }
        })
    }

    /// The everywhere-empty convergence, satisfying neither axiom usefully.
    pub fn empty() -> Convergence {
        Convergence::new("empty", false, true, |_| Ok(BTreeSet::new()))
    }

    /// The a-posteriori convergence of a topology.
    pub fn from_topology(topology: &FiniteTopology) -> Convergence {
        let topology = topology.clone();
        Convergence::new(format!("lim[{}]", topology.carrier), true, true, move |class| {
            lim_of_class(class, &topology)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn declares_l1(&self) -> bool {
        self.satisfies_l1
    }

    pub fn declares_l2(&self) -> bool {
        self.satisfies_l2
    }

    /// The limit set of a sequence class.
    pub fn limits_of_class(&self, class: &EpClass) -> Result<BTreeSet<Element>> {
        (self.rule)(class)
    }

    /// The limit set of an eventually periodic descriptor.
    pub fn limits(&self, x: &SeqDescriptor) -> Result<BTreeSet<Element>> {
        self.limits_of_class(&EpClass::of(x)?)
    }

    /// Spot-verifies the constant axiom on a finite carrier; returns a
    /// violating element if any.
    pub fn verify_l1(&self, carrier: Carrier) -> Result<Option<Element>> {
        for e in carrier.elements()? {
            let class = EpClass::constant_of(e.clone());
            if !self.limits_of_class(&class)?.contains(&e) {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Spot-verifies the subsequence axiom on a finite carrier; returns a
    /// violating (class, subsequence class) pair if any.
    pub fn verify_l2(&self, carrier: Carrier) -> Result<Option<(EpClass, EpClass)>> {
        for class in all_ep_classes(carrier)? {
            let limits = self.limits_of_class(&class)?;
            for sub in class.subsequence_classes() {
                if !limits.is_subset(&self.limits_of_class(&sub)?) {
                    return Ok(Some((class, sub)));
                }
            }
        }
        Ok(None)
    }

    /// True iff the rule is insensitive to the constant flag on the given
    /// carrier, i.e. it factors through the recurring-value set.
    pub fn factors_through_values(&self, carrier: Carrier) -> Result<bool> {
        for e in carrier.elements()? {
            let constant = EpClass::constant_of(e.clone());
            let class = EpClass { constant: false, values: [e].into(), carrier };
            if self.limits_of_class(&constant)? != self.limits_of_class(&class)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Minimal closure under the constant axiom: adds `a` to the limits of the
/// constant sequence `⟨a⟩` and changes nothing else.
pub fn l1_closure(lambda: &Convergence) -> Convergence {
    let inner = lambda.clone();
    Convergence::new(
        format!("{}′", lambda.name),
        true,
        lambda.satisfies_l2,
        move |class| {
            let mut out = inner.limits_of_class(class)?;
            if class.is_constant() {
                out.insert(class.values().iter().next().expect("constant class has a value").clone());
            }
            Ok(out)
        },
    )
}

/// Minimal closure under the subsequence axiom of a convergence already
/// satisfying the constant axiom: the limits of `y` are the union of the
/// limits of every sequence having `y` as a subsequence.
///
/// On sequence classes this is a finite sweep: the witnessing supersequence
/// for a value set `D ⊇ C` interleaves `y` with the extra values of `D`
/// repeated periodically, which is again eventually periodic.
pub fn l2_closure(lambda: &Convergence) -> Result<Convergence> {
    if !lambda.satisfies_l1 {
        return Err(Error::Precondition(format!(
            "subsequence closure needs the constant axiom; {} does not declare it",
            lambda.name
        )));
    }
    let inner = lambda.clone();
    Ok(Convergence::new(format!("{}¯", lambda.name), true, true, move |class| {
        let mut out = BTreeSet::new();
        for sup in class.supersequence_classes()? {
            out.extend(inner.limits_of_class(&sup)?);
        }
        Ok(out)
    }))
}

/// Minimal closure under the diagonal axiom of a convergence satisfying the
/// first two axioms whose rule factors through the recurring-value set.
///
/// The diagonal axiom quantifies over subsequences of subsequences; on
/// classes this reduces to value sets: a limit survives iff for every
/// nonempty `C′ ⊆ C` some nonempty `C″ ⊆ C′` already yields it.
pub fn l3_closure(lambda: &Convergence, carrier: Carrier) -> Result<Convergence> {
    if !lambda.satisfies_l1 || !lambda.satisfies_l2 {
        return Err(Error::Precondition(format!(
            "diagonal closure needs the first two axioms; {} does not declare them",
            lambda.name
        )));
    }
    if !lambda.factors_through_values(carrier)? {
        return Err(Error::Precondition(format!(
            "diagonal closure needs a rule factoring through recurring values; {} does not",
            lambda.name
        )));
    }
    let inner = lambda.clone();
    Ok(Convergence::new(format!("{}*", lambda.name), true, true, move |class| {
        let mut result: Option<BTreeSet<Element>> = None;
        for smaller in nonempty_subsets(class.values()) {
            let mut union = BTreeSet::new();
            for inner_values in nonempty_subsets(&smaller) {
                let c = EpClass { constant: false, values: inner_values, carrier: class.carrier() };
                union.extend(inner.limits_of_class(&c)?);
            }
            result = Some(match result {
                None => union,
                Some(acc) => acc.intersection(&union).cloned().collect(),
            });
        }
        Ok(result.unwrap_or_default())
    }))
}

/// A topology on a finite carrier, stored as its full list of open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    carrier: Carrier,
    opens: Vec<BTreeSet<Element>>,
}

impl FiniteTopology {
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn opens(&self) -> &[BTreeSet<Element>] {
        &self.opens
    }

    pub fn closed_sets(&self) -> Vec<BTreeSet<Element>> {
        let all: BTreeSet<Element> =
            self.carrier.elements().expect("finite carrier").into_iter().collect();
        self.opens.iter().map(|o| all.difference(o).cloned().collect()).collect()
    }

    pub fn is_open(&self, set: &BTreeSet<Element>) -> bool {
        self.opens.contains(set)
    }

    pub fn is_closed(&self, set: &BTreeSet<Element>) -> bool {
        self.closed_sets().contains(set)
    }

    /// Checks the topology axioms by exhaustive sweep.
    pub fn verify_axioms(&self) -> bool {
        let all: BTreeSet<Element> =
            self.carrier.elements().expect("finite carrier").into_iter().collect();
        if !self.opens.contains(&BTreeSet::new()) || !self.opens.contains(&all) {
            return false;
        }
        for a in &self.opens {
            for b in &self.opens {
                let union: BTreeSet<Element> = a.union(b).cloned().collect();
                let inter: BTreeSet<Element> = a.intersection(b).cloned().collect();
                if !self.opens.contains(&union) || !self.opens.contains(&inter) {
                    return false;
                }
            }
        }
        true
    }
}

/// Membership of a candidate set in the maximal topology of `lambda`:
/// whenever the set meets the limits of a sequence, it must contain a tail
/// of the sequence. On classes: it must contain every recurring value.
pub fn open_in_o_lambda(
    candidate: &BTreeSet<Element>,
    lambda: &Convergence,
    carrier: Carrier,
) -> Result<bool> {
    for class in all_ep_classes(carrier)? {
        let limits = lambda.limits_of_class(&class)?;
        if !candidate.is_disjoint(&limits) && !class.values().is_subset(candidate) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The maximal topology whose a-posteriori limit dominates `lambda`,
/// computed by sweeping every subset of the carrier.
pub fn generate_topology(lambda: &Convergence, carrier: Carrier) -> Result<FiniteTopology> {
    let atoms = match carrier {
        Carrier::Power { atoms } if atoms <= TOPOLOGY_ATOM_LIMIT => atoms,
        Carrier::Power { atoms } => {
            return Err(Error::CarrierTooLarge {
                atoms,
                limit: TOPOLOGY_ATOM_LIMIT,
                context: "full topology generation",
            })
        }
        Carrier::UpFragment => {
            return Err(Error::Precondition(
                "topology generation needs a finite carrier".into(),
            ))
        }
    };
    let elements = carrier.elements()?;
    let m = elements.len();
    debug_assert_eq!(m, 1 << atoms);

    // precompute per class: mask of recurring values, mask of limits;
    // constants first so that non-open candidates fail fast
    let mut classes = all_ep_classes(carrier)?;
    classes.sort_by_key(|c| (!c.is_constant(), c.values().len()));
    let index =
        |e: &Element| elements.binary_search(e).expect("element of the carrier") as u32;
    let mut table: Vec<(u64, u64)> = Vec::with_capacity(classes.len());
    for class in &classes {
        let vmask = class.values().iter().fold(0u64, |acc, e| acc | 1 << index(e));
        let lmask = lambda.limits_of_class(class)?.iter().fold(0u64, |acc, e| acc | 1 << index(e));
        table.push((vmask, lmask));
    }

    let mut opens = Vec::new();
    for candidate in 0u64..(1 << m) {
        let open = table
            .iter()
            .all(|&(vmask, lmask)| candidate & lmask == 0 || vmask & !candidate == 0);
        if open {
            opens.push(
                elements
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| candidate & (1 << i) != 0)
                    .map(|(_, e)| e.clone())
                    .collect(),
            );
        }
    }
    let topology = FiniteTopology { carrier, opens };
    debug_assert!(topology.verify_axioms());
    Ok(topology)
}

/// The sequential-closure operator: the union of the limits of all
/// sequences valued in `set`, reduced to a sweep over the nonempty subsets
/// of `set` together with the constant classes.
pub fn u_operator(
    set: &BTreeSet<Element>,
    lambda: &Convergence,
    carrier: Carrier,
) -> Result<BTreeSet<Element>> {
    let mut out = BTreeSet::new();
    for e in set {
        out.extend(lambda.limits_of_class(&EpClass::constant_of(e.clone()))?);
    }
    for values in nonempty_subsets(set) {
        let class = EpClass { constant: false, values, carrier };
        out.extend(lambda.limits_of_class(&class)?);
    }
    Ok(out)
}

/// The stages of iterating the sequential closure to its least fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointRun {
    /// `stages[k]` is the result of `k + 1` applications.
    pub stages: Vec<BTreeSet<Element>>,
    /// The fixpoint reached.
    pub result: BTreeSet<Element>,
    /// Number of strictly growing applications.
    pub steps: usize,
}

/// Iterates the sequential closure until it stabilizes. On a finite carrier
/// this happens within carrier-size many steps and yields the topological
/// closure of `set`.
pub fn iterate_u_to_fixpoint(
    set: &BTreeSet<Element>,
    lambda: &Convergence,
    carrier: Carrier,
) -> Result<FixpointRun> {
    let mut stages = Vec::new();
    let mut current = set.clone();
    let mut steps = 0;
    loop {
        let next = u_operator(&current, lambda, carrier)?;
        let grew = next != current;
        stages.push(next.clone());
        if grew {
            steps += 1;
            current = next;
        } else {
            return Ok(FixpointRun { stages, result: current, steps });
        }
    }
}

fn lim_of_class(class: &EpClass, topology: &FiniteTopology) -> Result<BTreeSet<Element>> {
    let mut result: BTreeSet<Element> =
        topology.carrier().elements()?.into_iter().collect();
    for closed in topology.closed_sets() {
        if !closed.is_disjoint(class.values()) {
            result = result.intersection(&closed).cloned().collect();
        }
    }
    Ok(result)
}

/// The a-posteriori limit of a sequence in a topology: the intersection of
/// the closed sets containing infinitely many terms. For an eventually
/// periodic sequence, a closed set contains infinitely many terms exactly
/// when it meets the recurring-value set.
pub fn lim_in_topology(
    x: &SeqDescriptor,
    topology: &FiniteTopology,
) -> Result<BTreeSet<Element>> {
    lim_of_class(&EpClass::of(x)?, topology)
}

/// The a-posteriori limit computed from the neighborhood definition: `a` is
/// a limit iff every open set containing `a` contains all but finitely many
/// terms, i.e. all recurring values.
pub fn lim_by_neighborhoods(
    x: &SeqDescriptor,
    topology: &FiniteTopology,
) -> Result<BTreeSet<Element>> {
    let class = EpClass::of(x)?;
    let mut out = BTreeSet::new();
    for a in topology.carrier().elements()? {
        let converges = topology
            .opens()
            .iter()
            .all(|open| !open.contains(&a) || class.values().is_subset(open));
        if converges {
            out.insert(a);
        }
    }
    Ok(out)
}

/// Verdict of comparing a convergence with the a-posteriori limit of its
/// own maximal topology.
#[derive(Debug, Clone)]
pub struct TopologicalVerdict {
    pub topological: bool,
    /// First class where the two disagree, with the convergence's and the
    /// topology's limit sets.
    pub witness: Option<(SeqDescriptor, BTreeSet<Element>, BTreeSet<Element>)>,
}

/// Compares `lambda` with the limit of its maximal topology over every
/// sequence class; a convergence is topological exactly when they agree.
pub fn is_topological(lambda: &Convergence, carrier: Carrier) -> Result<TopologicalVerdict> {
    let topology = generate_topology(lambda, carrier)?;
    for class in all_ep_classes(carrier)? {
        let from_rule = lambda.limits_of_class(&class)?;
        let from_topology = lim_of_class(&class, &topology)?;
        if from_rule != from_topology {
            return Ok(TopologicalVerdict {
                topological: false,
                witness: Some((class.representative(), from_rule, from_topology)),
            });
        }
    }
    Ok(TopologicalVerdict { topological: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(atoms: u8) -> Carrier {
        Carrier::power(atoms).unwrap()
    }

    fn e(atoms: u8, bits: u64) -> Element {
        Element::Finite { atoms, bits }
    }

    fn set(items: &[Element]) -> BTreeSet<Element> {
        items.iter().cloned().collect()
    }

    fn upset_of(carrier: Carrier, bound: &Element) -> BTreeSet<Element> {
        carrier.elements().unwrap().into_iter().filter(|x| bound.leq(x).unwrap()).collect()
    }

    #[test]
    fn limsup_raw_satisfies_l1_but_not_l2() {
        let lambda = Convergence::limsup_raw();
        assert_eq!(lambda.verify_l1(p(1)).unwrap(), None);
        let witness = lambda.verify_l2(p(1)).unwrap().expect("subsequence axiom fails");
        // the alternating top/bottom class shrinks to the constant-bottom class
        assert!(!witness.0.is_constant());
    }

    #[test]
    fn l1_closure_changes_only_missing_constants() {
        let lambda = Convergence::limsup_raw();
        let closed = l1_closure(&lambda);
        for class in all_ep_classes(p(2)).unwrap() {
            assert_eq!(
                closed.limits_of_class(&class).unwrap(),
                lambda.limits_of_class(&class).unwrap(),
                "limsup already satisfies the constant axiom"
            );
        }

        let empty = Convergence::empty();
        let fixed = l1_closure(&empty);
        let a = e(2, 0b01);
        assert_eq!(fixed.limits_of_class(&EpClass::constant_of(a.clone())).unwrap(), set(&[a.clone()]));
        let nonconst = EpClass::recurring([a, e(2, 0b10)].into()).unwrap();
        assert_eq!(fixed.limits_of_class(&nonconst).unwrap(), BTreeSet::new());
    }

    #[test]
    fn l2_closure_of_limsup_is_the_upset_rule() {
        let carrier = p(2);
        let bar = l2_closure(&l1_closure(&Convergence::limsup_raw())).unwrap();
        let up = Convergence::limsup_up();
        for class in all_ep_classes(carrier).unwrap() {
            assert_eq!(
                bar.limits_of_class(&class).unwrap(),
                up.limits_of_class(&class).unwrap(),
                "mismatch at {class:?}"
            );
        }
    }

    #[test]
    fn l2_closure_worked_examples() {
        let carrier = p(2);
        let bar = l2_closure(&Convergence::limsup_raw()).unwrap();
        let zero = carrier.zero();
        let one = carrier.one();
        // ⟨0⟩ gains every point above 0, i.e. the whole algebra
        assert_eq!(
            bar.limits(&SeqDescriptor::constant(zero)).unwrap(),
            carrier.elements().unwrap().into_iter().collect::<BTreeSet<_>>()
        );
        // the alternating-atoms sequence converges to everything above a∨b
        let x = SeqDescriptor::ep(vec![], vec![e(2, 0b01), e(2, 0b10)]).unwrap();
        assert_eq!(bar.limits(&x).unwrap(), set(&[one.clone()]));
        assert_eq!(bar.limits(&SeqDescriptor::constant(one.clone())).unwrap(), set(&[one]));
    }

    #[test]
    fn l2_closure_requires_the_constant_axiom() {
        assert!(l2_closure(&Convergence::empty()).is_err());
    }

    #[test]
    fn l3_closure_fixes_the_upset_rule() {
        let carrier = p(2);
        let up = Convergence::limsup_up();
        let star = l3_closure(&up, carrier).unwrap();
        for class in all_ep_classes(carrier).unwrap() {
            assert_eq!(
                star.limits_of_class(&class).unwrap(),
                up.limits_of_class(&class).unwrap()
            );
        }
        // constants still converge to themselves
        let a = e(2, 0b01);
        assert!(star.limits_of_class(&EpClass::constant_of(a)).unwrap().contains(&e(2, 0b01)));
    }

    #[test]
    fn l3_closure_rejects_non_factoring_rules() {
        // distinguishes constants from single-recurring-value classes
        let weird = Convergence::new("weird", true, true, |class| {
            if class.is_constant() {
                Ok(class.values().clone())
            } else {
                Ok(BTreeSet::new())
            }
        });
        assert!(l3_closure(&weird, p(2)).is_err());
    }

    #[test]
    fn open_membership_examples() {
        let carrier = p(2);
        let up = Convergence::limsup_up();
        let zero = carrier.zero();
        let a = e(2, 0b01);
        assert!(open_in_o_lambda(&set(&[zero.clone(), a.clone()]), &up, carrier).unwrap());
        assert!(!open_in_o_lambda(&set(&[a]), &up, carrier).unwrap());
        let whole: BTreeSet<Element> = carrier.elements().unwrap().into_iter().collect();
        assert!(open_in_o_lambda(&whole, &up, carrier).unwrap());
    }

    #[test]
    fn topology_of_upset_rule_has_the_downset_counts() {
        let t1 = generate_topology(&Convergence::limsup_up(), p(1)).unwrap();
        assert_eq!(t1.opens().len(), 3);
        assert!(t1.verify_axioms());

        let t2 = generate_topology(&Convergence::limsup_up(), p(2)).unwrap();
        assert_eq!(t2.opens().len(), 6);
        assert!(t2.verify_axioms());

        // empty set and whole space are always open
        let whole: BTreeSet<Element> = p(2).elements().unwrap().into_iter().collect();
        assert!(t2.is_open(&BTreeSet::new()));
        assert!(t2.is_open(&whole));
    }

    #[test]
    fn u_operator_examples() {
        let carrier = p(2);
        let up = Convergence::limsup_up();
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let one = carrier.one();

        assert_eq!(
            u_operator(&set(&[a.clone(), b.clone()]), &up, carrier).unwrap(),
            set(&[a.clone(), b.clone(), one])
        );
        assert_eq!(u_operator(&BTreeSet::new(), &up, carrier).unwrap(), BTreeSet::new());

        // finite additivity, spot instance
        let left = u_operator(&set(&[a.clone()]), &up, carrier).unwrap();
        let right = u_operator(&set(&[b.clone()]), &up, carrier).unwrap();
        let both = u_operator(&set(&[a, b]), &up, carrier).unwrap();
        assert_eq!(both, left.union(&right).cloned().collect());
    }

    #[test]
    fn fixpoint_iteration_examples() {
        let carrier = p(2);
        let up = Convergence::limsup_up();
        let a = e(2, 0b01);
        let b = e(2, 0b10);

        let run = iterate_u_to_fixpoint(&set(&[a.clone()]), &up, carrier).unwrap();
        assert_eq!(run.result, upset_of(carrier, &a));
        assert_eq!(run.steps, 1);

        let closed = upset_of(carrier, &a);
        let run = iterate_u_to_fixpoint(&closed, &up, carrier).unwrap();
        assert_eq!(run.result, closed);
        assert_eq!(run.steps, 0);

        let run = iterate_u_to_fixpoint(&set(&[a.clone(), b.clone()]), &up, carrier).unwrap();
        let expected: BTreeSet<Element> =
            upset_of(carrier, &a).union(&upset_of(carrier, &b)).cloned().collect();
        assert_eq!(run.result, expected);
    }

    #[test]
    fn lim_in_topology_examples() {
        let carrier = p(2);
        let topology = generate_topology(&Convergence::limsup_up(), carrier).unwrap();
        let a = e(2, 0b01);
        let b = e(2, 0b10);
        let one = carrier.one();

        let x = SeqDescriptor::ep(vec![], vec![a, b.clone()]).unwrap();
        assert_eq!(lim_in_topology(&x, &topology).unwrap(), set(&[one]));

        let constant = SeqDescriptor::constant(b.clone());
        assert_eq!(lim_in_topology(&constant, &topology).unwrap(), upset_of(carrier, &b));

        let zero = SeqDescriptor::constant(carrier.zero());
        let whole: BTreeSet<Element> = carrier.elements().unwrap().into_iter().collect();
        assert_eq!(lim_in_topology(&zero, &topology).unwrap(), whole);
    }

    #[test]
    fn closed_intersection_and_neighborhood_limits_agree() {
        for atoms in 1..=3u8 {
            let carrier = p(atoms);
            let topology = generate_topology(&Convergence::limsup_up(), carrier).unwrap();
            for class in all_ep_classes(carrier).unwrap() {
                let x = class.representative();
                assert_eq!(
                    lim_in_topology(&x, &topology).unwrap(),
                    lim_by_neighborhoods(&x, &topology).unwrap(),
                    "definitions disagree on {x}"
                );
            }
        }
    }

    #[test]
    fn raw_limsup_is_not_topological_but_the_upset_rule_is() {
        let verdict = is_topological(&Convergence::limsup_raw(), p(1)).unwrap();
        assert!(!verdict.topological);
        let (x, from_rule, from_top) = verdict.witness.unwrap();
        assert!(from_rule != from_top, "witness must separate the two: {x}");

        let verdict = is_topological(&Convergence::limsup_up(), p(2)).unwrap();
        assert!(verdict.topological);
    }

    #[test]
    fn limit_of_generated_topology_is_a_fixed_point() {
        let carrier = p(2);
        let topology = generate_topology(&Convergence::eventually_constant(), carrier).unwrap();
        let fed_back = Convergence::from_topology(&topology);
        let verdict = is_topological(&fed_back, carrier).unwrap();
        assert!(verdict.topological);
        assert_eq!(generate_topology(&fed_back, carrier).unwrap(), topology);
    }

    #[test]
    fn tower_is_pointwise_increasing_and_below_the_limit() {
        let carrier = p(2);
        let lambda = Convergence::limsup_raw();
        let prime = l1_closure(&lambda);
        let bar = l2_closure(&prime).unwrap();
        let star = l3_closure(&bar, carrier).unwrap();
        let topology = generate_topology(&lambda, carrier).unwrap();
        let lim = Convergence::from_topology(&topology);

        for class in all_ep_classes(carrier).unwrap() {
            let l0 = lambda.limits_of_class(&class).unwrap();
            let l1 = prime.limits_of_class(&class).unwrap();
            let l2 = bar.limits_of_class(&class).unwrap();
            let l3 = star.limits_of_class(&class).unwrap();
            let l4 = lim.limits_of_class(&class).unwrap();
            assert!(l0.is_subset(&l1));
            assert!(l1.is_subset(&l2));
            assert!(l2.is_subset(&l3));
            assert!(l3.is_subset(&l4));
        }
    }

    #[test]
    fn topology_is_invariant_along_the_tower() {
        let carrier = p(2);
        let lambda = Convergence::limsup_raw();
        let prime = l1_closure(&lambda);
        let bar = l2_closure(&prime).unwrap();
        let star = l3_closure(&bar, carrier).unwrap();

        let base = generate_topology(&lambda, carrier).unwrap();
        assert_eq!(generate_topology(&prime, carrier).unwrap(), base);
        assert_eq!(generate_topology(&bar, carrier).unwrap(), base);
        assert_eq!(generate_topology(&star, carrier).unwrap(), base);
    }

    #[test]
    fn hausdorff_diagonal_closure_reaches_the_topological_limit() {
        let carrier = p(2);
        let lambda = Convergence::eventually_constant();
        // Hausdorff: at most one limit per class
        for class in all_ep_classes(carrier).unwrap() {
            assert!(lambda.limits_of_class(&class).unwrap().len() <= 1);
        }
        let star = l3_closure(&lambda, carrier).unwrap();
        let topology = generate_topology(&lambda, carrier).unwrap();
        let lim = Convergence::from_topology(&topology);
        for class in all_ep_classes(carrier).unwrap() {
            assert_eq!(
                star.limits_of_class(&class).unwrap(),
                lim.limits_of_class(&class).unwrap()
            );
            assert!(star.limits_of_class(&class).unwrap().len() <= 1);
        }
    }
}
