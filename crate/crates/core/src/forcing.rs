//! Boolean-value evaluator for the name formulas that reduce to lattice
//! computations: membership of a checked label in a name, infiniteness of
//! the intersection with a checked set (a limsup in disguise), almost-
//! containment of the naturals (a liminf), and implication between values.
//!
//! Only these formula shapes are implemented; there is no general formula
//! evaluator. Countable label sets are presented by the same descriptor
//! taxonomy as sequences, which is what makes the limsup closed forms
//! available.

use std::fmt;

use crate::carrier::{Carrier, Element};
use crate::error::{Error, Result};
use crate::seq::{IndexMap, SeqDescriptor};
use crate::upset::{UpsetFD, UpsetKind};

/// A lattice truth value: 1 is forced, 0 refuted, everything in between is
/// partial information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolValue(pub Element);

impl BoolValue {
    pub fn forced(&self) -> bool {
        self.0.is_one()
    }

    pub fn refuted(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for BoolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finitely or countably presented name `{⟨label, value⟩}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BName {
    /// Finitely many labelled values.
    Finite { entries: Vec<(String, Element)> },
    /// Labels are the naturals; the value of `n` is the `n`-th term of the
    /// sequence.
    Sequence { seq: SeqDescriptor },
    /// The canonical name: labels are the nonzero elements of the carrier
    /// and each one is its own value.
    Gamma { carrier: Carrier },
}

/// A label of a name: text for finite names, an index for sequence names,
/// an element for the canonical name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    Text(String),
    Index(u64),
    Elem(Element),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Text(s) => write!(f, "{s}"),
            Label::Index(n) => write!(f, "{n}"),
            Label::Elem(e) => write!(f, "{e}"),
        }
    }
}

impl BName {
    /// A finite name. Zero values are permitted but reported back as
    /// warnings, since a zero value makes its label invisible to the
    /// evaluated formulas.
    pub fn finite(entries: Vec<(String, Element)>) -> Result<(BName, Vec<String>)> {
        let carrier = entries
            .first()
            .ok_or_else(|| Error::Precondition("a name needs at least one entry".into()))?
            .1
            .carrier();
        let mut warnings = Vec::new();
        for (label, value) in &entries {
            if value.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.to_string(),
                    right: value.carrier().to_string(),
                });
            }
            if value.is_zero() {
                warnings.push(format!("label {label:?} carries the zero value"));
            }
        }
        Ok((BName::Finite { entries }, warnings))
    }

    pub fn sequence(seq: SeqDescriptor) -> BName {
        BName::Sequence { seq }
    }

    pub fn gamma(carrier: Carrier) -> BName {
        BName::Gamma { carrier }
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            BName::Finite { entries } => entries[0].1.carrier(),
            BName::Sequence { seq } => seq.carrier(),
            BName::Gamma { carrier } => *carrier,
        }
    }

    fn lookup(&self, label: &Label) -> Result<Element> {
        match (self, label) {
            (BName::Finite { entries }, Label::Text(text)) => entries
                .iter()
                .find(|(l, _)| l == text)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::UnknownLabel(text.clone())),
            (BName::Sequence { seq }, Label::Index(n)) => Ok(seq.nth(*n)),
            (BName::Gamma { carrier }, Label::Elem(e)) => {
                if e.carrier() != *carrier {
                    return Err(Error::CarrierMismatch {
                        left: carrier.to_string(),
                        right: e.carrier().to_string(),
                    });
                }
                if e.is_zero() {
                    return Err(Error::UnknownLabel("0 (the canonical name is indexed by nonzero elements)".into()));
                }
                Ok(e.clone())
            }
            _ => Err(Error::UnknownLabel(format!("{label} (wrong label kind for this name)"))),
        }
    }
}

/// The value of `label ∈ name`: by construction, the value attached to the
/// label.
pub fn bv_membership(name: &BName, label: &Label) -> Result<BoolValue> {
    Ok(BoolValue(name.lookup(label)?))
}

/// An infinite enumeration of labels of a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelEnum {
    /// Eventually periodic enumeration of explicit labels; for finite names
    /// this is the only way to enumerate infinitely.
    Cycle { prefix: Vec<Label>, cycle: Vec<Label> },
    /// The increasing enumeration of an infinite set of naturals; sequence
    /// names only.
    ByIndexMap(IndexMap),
    /// An enumeration of nonzero elements; canonical name only.
    Elements(SeqDescriptor),
}

/// Resolves an enumeration to the sequence of attached values.
fn value_sequence(name: &BName, labels: &LabelEnum) -> Result<SeqDescriptor> {
    match (name, labels) {
        (BName::Finite { .. }, LabelEnum::Cycle { prefix, cycle }) => {
            let map = |ls: &[Label]| -> Result<Vec<Element>> {
                ls.iter().map(|l| name.lookup(l)).collect()
            };
            SeqDescriptor::ep(map(prefix)?, map(cycle)?)
        }
        (BName::Sequence { seq }, LabelEnum::ByIndexMap(f)) => seq.subsequence(f),
        (BName::Gamma { carrier }, LabelEnum::Elements(desc)) => {
            if desc.carrier() != *carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.to_string(),
                    right: desc.carrier().to_string(),
                });
            }
            let values = desc.inf_value_set();
            if !values.infinite_range {
                for v in values.values {
                    if v.is_zero() {
                        return Err(Error::UnknownLabel(
                            "0 (the canonical name is indexed by nonzero elements)".into(),
                        ));
                    }
                }
            }
            Ok(desc.clone())
        }
        _ => Err(Error::Precondition(
            "enumeration kind does not match the name presentation".into(),
        )),
    }
}

/// The value of "the name meets the enumerated set infinitely often":
/// the limsup of the enumerated value sequence.
pub fn bv_infinite_intersection(name: &BName, labels: &LabelEnum) -> Result<BoolValue> {
    Ok(BoolValue(value_sequence(name, labels)?.limsup()))
}

/// The value of "the naturals are almost contained in the name of the
/// sequence": its liminf.
pub fn bv_liminf_superset(x: &SeqDescriptor) -> BoolValue {
    BoolValue(x.liminf())
}

/// Whether the implication between two formulas is forced outright, which
/// happens exactly when the antecedent's value sits below the consequent's.
pub fn forces_implication(phi: &BoolValue, psi: &BoolValue) -> Result<bool> {
    phi.0.leq(&psi.0)
}

/// Report on a generator family presented as a name: the minimal-element
/// characterization and the two closedness routes.
#[derive(Debug, Clone)]
pub struct NameFamilyReport {
    /// Present when the values are pairwise distinct.
    pub part1: Option<MinimalityReport>,
    pub part2: ClosednessRoutes,
}

/// Three equivalent readings of "the values form the minimal elements":
/// pairwise lattice incomparability, positivity of every separating value
/// `q_x ∧ q_y′`, and the minimal-element property in the generated upset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub pairwise_incomparable: bool,
    pub separating_values_positive: bool,
    pub generators_are_minimal: bool,
    pub consistent: bool,
}

/// Closedness of the generated upset decided twice: once through the
/// recurring-value-join reduction on sequences, once through Boolean values
/// and forced implications; plus the representation's own verdict.
#[derive(Debug, Clone)]
pub struct ClosednessRoutes {
    pub lattice_route_closed: bool,
    pub forcing_route_closed: bool,
    pub representation_closed: bool,
    pub consistent: bool,
    /// An enumeration witnessing failure, when one exists.
    pub failing_enumeration: Option<String>,
}

fn nonempty_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << items.len()) {
        out.push(
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect(),
        );
    }
    out
}

/// Decides `∃ label: value ≤ bound` exactly.
///
/// For finite names the search is exhaustive. For sequence names a zero
/// bound is decided symbolically (only a zero value can sit below zero, and
/// each family knows whether it takes the zero value); a nonzero bound is
/// searched within a window, which is exact in the positive direction and
/// reported as a window-bounded negative otherwise.
fn exists_value_below(name: &BName, bound: &Element) -> Result<bool> {
    match name {
        BName::Finite { entries } => {
            for (_, q) in entries {
                if q.leq(bound)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        BName::Sequence { seq } => {
            if bound.is_zero() {
                return Ok(match seq {
                    SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
                        prefix.iter().chain(cycle.iter()).any(Element::is_zero)
                    }
                    // tails, union-tails, singletons and blocks are nonempty
                    _ => false,
                });
            }
            for n in 0..SEQUENCE_SEARCH_WINDOW {
                if seq.nth(n).leq(bound)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        BName::Gamma { .. } => {
            // every nonzero element below the bound is its own label
            Ok(!bound.is_zero())
        }
    }
}

const SEQUENCE_SEARCH_WINDOW: u64 = 64;

/// Runs the minimal-element and closedness checks over a generator family.
///
/// Finite names are swept exhaustively over the nonempty label subsets;
/// sequence names are probed with a fixed library of strictly increasing
/// enumerations. The two closedness routes must agree with each other and
/// with the verdict of the generated upset's representation.
pub fn t4107_suite(name: &BName) -> Result<NameFamilyReport> {
    let part1 = match name {
        BName::Finite { entries } => {
            let values: Vec<&Element> = entries.iter().map(|(_, v)| v).collect();
            let injective =
                (0..values.len()).all(|i| (0..i).all(|j| values[i] != values[j]));
            if injective {
                let mut incomparable = true;
                let mut separating = true;
                for i in 0..values.len() {
                    for j in 0..values.len() {
                        if i != j {
                            if !values[i].incomparable(values[j])? {
                                incomparable = false;
                            }
                            // the separating value of the pair is q_x ∧ q_y′
                            if values[i].meet(&values[j].complement())?.is_zero() {
                                separating = false;
                            }
                        }
                    }
                }
                let upset = UpsetFD::up_closure(
                    name.carrier(),
                    &values.iter().map(|v| (*v).clone()).collect::<Vec<_>>(),
                )?;
                let mut gens: Vec<Element> = upset.generators()?.to_vec();
                gens.sort();
                let mut vals: Vec<Element> = values.iter().map(|v| (*v).clone()).collect();
                vals.sort();
                vals.dedup();
                let minimal = gens == vals;
                Some(MinimalityReport {
                    pairwise_incomparable: incomparable,
                    separating_values_positive: separating,
                    generators_are_minimal: minimal,
                    consistent: incomparable == separating && separating == minimal,
                })
            } else {
                None
            }
        }
        _ => None,
    };

    let part2 = match name {
        BName::Finite { entries } => {
            let mut lattice = true;
            let mut forcing = true;
            let mut failing = None;
            for subset in nonempty_subsets(entries) {
                // lattice route: the limsup of an enumeration hitting
                // exactly these labels is the join of their values
                let cycle: Vec<Element> = subset.iter().map(|(_, v)| v.clone()).collect();
                let enumeration = SeqDescriptor::ep(vec![], cycle)?;
                let bound = enumeration.limsup();
                let lattice_here = exists_value_below(name, &bound)?;

                // forcing route: some membership value forces the
                // infinite-intersection value
                let labels: Vec<Label> =
                    subset.iter().map(|(l, _)| Label::Text(l.clone())).collect();
                let s = bv_infinite_intersection(
                    name,
                    &LabelEnum::Cycle { prefix: vec![], cycle: labels.clone() },
                )?;
                let mut forcing_here = false;
                for (label, _) in entries {
                    let q = bv_membership(name, &Label::Text(label.clone()))?;
                    if forces_implication(&q, &s)? {
                        forcing_here = true;
                        break;
                    }
                }

                if !lattice_here || !forcing_here {
                    failing.get_or_insert_with(|| {
                        let ls: Vec<String> =
                            labels.iter().map(|l| l.to_string()).collect();
                        ls.join(" ")
                    });
                }
                lattice &= lattice_here;
                forcing &= forcing_here;
            }
            let values: Vec<Element> = entries.iter().map(|(_, v)| v.clone()).collect();
            let representation =
                UpsetFD::up_closure(name.carrier(), &values)?.closedness()?.closed;
            ClosednessRoutes {
                lattice_route_closed: lattice,
                forcing_route_closed: forcing,
                representation_closed: representation,
                consistent: lattice == forcing && forcing == representation,
                failing_enumeration: failing,
            }
        }
        BName::Sequence { seq } => {
            let enumerations = [
                IndexMap::identity(),
                IndexMap::affine(2, 0)?,
                IndexMap::affine(2, 1)?,
                IndexMap::affine(3, 1)?,
            ];
            let mut lattice = true;
            let mut forcing = true;
            let mut failing = None;
            for f in &enumerations {
                let bound = seq.subsequence(f)?.limsup();
                let lattice_here = exists_value_below(name, &bound)?;

                let s = bv_infinite_intersection(name, &LabelEnum::ByIndexMap(f.clone()))?;
                let mut forcing_here = false;
                if !s.refuted() || exists_value_below(name, &s.0)? {
                    for n in 0..SEQUENCE_SEARCH_WINDOW {
                        let q = bv_membership(name, &Label::Index(n))?;
                        if forces_implication(&q, &s)? {
                            forcing_here = true;
                            break;
                        }
                    }
                }

                if !lattice_here || !forcing_here {
                    failing.get_or_insert_with(|| f.to_string());
                }
                lattice &= lattice_here;
                forcing &= forcing_here;
            }
            let representation = representation_of_sequence_family(seq)?
                .map(|u| u.closedness().map(|r| r.closed))
                .transpose()?;
            let consistent = lattice == forcing
                && representation.map_or(true, |r| r == lattice);
            ClosednessRoutes {
                lattice_route_closed: lattice,
                forcing_route_closed: forcing,
                representation_closed: representation.unwrap_or(lattice),
                consistent,
                failing_enumeration: failing,
            }
        }
        BName::Gamma { .. } => {
            return Err(Error::Precondition(
                "the generator-family suite takes an explicit family, not the canonical name"
                    .into(),
            ))
        }
    };

    Ok(NameFamilyReport { part1, part2 })
}

/// The generated upset of a sequence-presented family, where the two
/// supported representations can express it: finite-range families are
/// finitely generated, and the tail chain generates the cofinite family.
fn representation_of_sequence_family(seq: &SeqDescriptor) -> Result<Option<UpsetFD>> {
    match seq {
        SeqDescriptor::EventuallyPeriodic { prefix, cycle } => {
            let all: Vec<Element> = prefix.iter().chain(cycle.iter()).cloned().collect();
            Ok(Some(UpsetFD::up_closure(seq.carrier(), &all)?))
        }
        SeqDescriptor::TailAbove(_) => Ok(Some(UpsetFD::cofinite_family())),
        _ => Ok(None),
    }
}

/// Verdict of the canonical-name closedness probe for one enumerated
/// sequence in an upward-closed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCheck {
    pub holds: bool,
    /// The value `‖the canonical name meets the enumerated set infinitely
    /// often‖`, i.e. the limsup of the enumeration.
    pub boolean_value: Element,
    /// The witness below which the intersection is forced infinite; equals
    /// the limsup when the check holds.
    pub witness: Option<Element>,
}

/// Checks, for a sequence `A` inside an upward-closed `F`, whether some
/// member of `F` forces the canonical name to meet `A` infinitely often.
///
/// The forced value is the limsup `s` of the enumeration, and existence of
/// a forcing member of `F` below `s` is, for an upward-closed `F`,
/// membership of `s` itself. Terms of `A` must lie in `F`: explicit values
/// are checked one by one, decreasing families through their meet, and
/// diagonal families only fit the representations containing the terms'
/// eventual shape.
pub fn t4108_check(f: &UpsetFD, a: &SeqDescriptor) -> Result<GammaCheck> {
    if a.carrier() != f.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.carrier().to_string(),
            right: a.carrier().to_string(),
        });
    }
    let valid = match (a, f.kind()) {
        (SeqDescriptor::EventuallyPeriodic { prefix, cycle }, _) => {
            let mut ok = true;
            for v in prefix.iter().chain(cycle.iter()) {
                ok &= f.contains(v)?;
            }
            ok
        }
        // a decreasing chain lies in a finitely generated upset iff one
        // generator sits below every term, i.e. below the meet
        (
            SeqDescriptor::TailAbove(_) | SeqDescriptor::UnionTail { .. },
            UpsetKind::Generated(_),
        ) => f.contains(&a.liminf())?,
        // tails and union-tails are cofinite termwise
        (
            SeqDescriptor::TailAbove(_) | SeqDescriptor::UnionTail { .. },
            UpsetKind::CofiniteFamily,
        ) => true,
        // disjoint families fit a generated upset only through a zero
        // generator, which is membership of their (empty) meet
        (
            SeqDescriptor::SingletonDiag(_) | SeqDescriptor::BlockDiag(_),
            UpsetKind::Generated(_),
        ) => f.contains(&a.liminf())?,
        (
            SeqDescriptor::SingletonDiag(_) | SeqDescriptor::BlockDiag(_),
            UpsetKind::CofiniteFamily,
        ) => false,
    };
    if !valid {
        return Err(Error::Precondition(
            "the enumerated sequence must take its values inside the upset".into(),
        ));
    }

    let s = a.limsup();
    let holds = f.contains(&s)?;
    Ok(GammaCheck { holds, boolean_value: s.clone(), witness: holds.then_some(s) })
}
