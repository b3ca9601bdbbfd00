//! Textual input grammar: carrier selectors, element literals, set
//! literals, sequence literals and name literals, with position-reported
//! parse errors. Every rendered value re-parses to itself, which is what
//! makes counterexample payloads in reports actionable.
//!
//! Grammar sketch:
//!
//! ```text
//! input     := [ carrier " ; " ] payload
//! carrier   := "powerset:" digits | "upfrag"
//! payload   := set | "cofinite-family" | sequence | name | element
//! element   := bits            (powerset; one bit per atom)
//!            | bits ";" bits   (ultimately periodic: prefix ";" cycle)
//! set       := "{" [ element ("," element)* ] "}"
//! sequence  := "ep:[" element* "|" element+ "]"
//!            | "tail:" affine | "uniontail:" element "," affine
//!            | "diag:" affine | "block:" affine
//! affine    := digits "*n+" digits
//! name      := "name:{" label ":" element ("," label ":" element)* "}"
//!            | "name:seq:" sequence | "gamma"
//! ```

use crate::carrier::{Carrier, Element, UPSet};
use crate::error::{Error, Result};
use crate::forcing::BName;
use crate::seq::{AffineMap, SeqDescriptor};
use crate::upset::UpsetFD;

/// A parsed payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Element(Element),
    ElementSet(Vec<Element>),
    Sequence(SeqDescriptor),
    Upset(UpsetFD),
    Name(BName),
}

impl Parsed {
    /// Renders the payload back into the input grammar.
    pub fn render(&self) -> String {
        match self {
            Parsed::Element(e) => e.to_string(),
            Parsed::ElementSet(es) => render_set(es),
            Parsed::Sequence(x) => x.to_string(),
            Parsed::Upset(u) => u.to_string(),
            Parsed::Name(n) => render_name(n),
        }
    }
}

pub fn render_set(elements: &[Element]) -> String {
    let mut out = String::from("{");
    for (i, e) in elements.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&e.to_string());
    }
    out.push('}');
    out
}

pub fn render_name(name: &BName) -> String {
    match name {
        BName::Finite { entries } => {
            let mut out = String::from("name:{");
            for (i, (label, value)) in entries.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(label);
                out.push(':');
                out.push_str(&value.to_string());
            }
            out.push('}');
            out
        }
        BName::Sequence { seq } => format!("name:seq:{seq}"),
        BName::Gamma { .. } => "gamma".into(),
    }
}

/// Parses an input of the form `[carrier " ; "] payload`. The embedded
/// carrier wins over `default_carrier`; lacking both is an error.
pub fn parse_input(text: &str, default_carrier: Option<Carrier>) -> Result<(Carrier, Parsed)> {
    let trimmed = text.trim();
    if let Some(split) = trimmed.find(';') {
        let head = trimmed[..split].trim();
        if let Ok(carrier) = parse_carrier(head) {
            let payload = trimmed[split + 1..].trim();
            return Ok((carrier, parse_payload(payload, carrier, split + 1)?));
        }
    }
    let carrier = default_carrier.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "no carrier: prefix the input with \"powerset:N ; \" or \"upfrag ; \" \
              or pass --carrier"
            .into(),
    })?;
    Ok((carrier, parse_payload(trimmed, carrier, 0)?))
}

/// Parses a carrier selector: `powerset:N` or `upfrag`.
pub fn parse_carrier(text: &str) -> Result<Carrier> {
    let text = text.trim();
    if text == "upfrag" {
        return Ok(Carrier::UpFragment);
    }
    if let Some(rest) = text.strip_prefix("powerset:") {
        let atoms: u8 = rest.parse().map_err(|_| Error::Parse {
            pos: "powerset:".len(),
            msg: format!("atom count expected after \"powerset:\", got {rest:?}"),
        })?;
        return Carrier::power(atoms);
    }
    Err(Error::Parse { pos: 0, msg: format!("unknown carrier selector {text:?}") })
}

fn parse_payload(text: &str, carrier: Carrier, base: usize) -> Result<Parsed> {
    let at = |pos: usize| base + pos;
    if text.starts_with('{') {
        return Ok(Parsed::ElementSet(parse_set(text, carrier, base)?));
    }
    if text == "cofinite-family" {
        if carrier != Carrier::UpFragment {
            return Err(Error::Parse {
                pos: at(0),
                msg: "the cofinite family lives in the upfrag carrier".into(),
            });
        }
        return Ok(Parsed::Upset(UpsetFD::cofinite_family()));
    }
    if text.starts_with("ep:")
        || text.starts_with("tail:")
        || text.starts_with("uniontail:")
        || text.starts_with("diag:")
        || text.starts_with("block:")
    {
        return Ok(Parsed::Sequence(parse_sequence(text, carrier, base)?));
    }
    if text == "gamma" {
        return Ok(Parsed::Name(BName::gamma(carrier)));
    }
    if text.starts_with("name:") {
        return Ok(Parsed::Name(parse_name(text, carrier, base)?));
    }
    Ok(Parsed::Element(parse_element(text, carrier, base)?))
}

/// Parses one element literal in a carrier context.
pub fn parse_element(text: &str, carrier: Carrier, base: usize) -> Result<Element> {
    let text = text.trim();
    match carrier {
        Carrier::Power { atoms } => {
            let chars: Vec<char> = text.chars().collect();
            if chars.len() != atoms as usize {
                return Err(Error::Parse {
                    pos: base,
                    msg: format!(
                        "element of powerset:{atoms} needs exactly {atoms} bits, got {text:?}"
                    ),
                });
            }
            let mut bits = 0u64;
            for (i, &ch) in chars.iter().enumerate() {
                match ch {
                    '1' => bits |= 1 << i,
                    '0' => {}
                    other => {
                        return Err(Error::Parse {
                            pos: base + i,
                            msg: format!("expected bit, got {other:?}"),
                        })
                    }
                }
            }
            Ok(Element::Finite { atoms, bits })
        }
        Carrier::UpFragment => {
            let semi = text.find(';').ok_or_else(|| Error::Parse {
                pos: base,
                msg: format!("ultimately periodic literal needs \"prefix;cycle\", got {text:?}"),
            })?;
            let parse_bits = |s: &str, offset: usize| -> Result<Vec<bool>> {
                s.chars()
                    .enumerate()
                    .map(|(i, ch)| match ch {
                        '1' => Ok(true),
                        '0' => Ok(false),
                        other => Err(Error::Parse {
                            pos: base + offset + i,
                            msg: format!("expected bit, got {other:?}"),
                        }),
                    })
                    .collect()
            };
            let prefix = parse_bits(&text[..semi], 0)?;
            let cycle = parse_bits(&text[semi + 1..], semi + 1)?;
            if cycle.is_empty() {
                return Err(Error::Parse {
                    pos: base + semi + 1,
                    msg: "cycle must be nonempty".into(),
                });
            }
            Ok(Element::Up(UPSet::new(&prefix, &cycle)?))
        }
    }
}

fn parse_set(text: &str, carrier: Carrier, base: usize) -> Result<Vec<Element>> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse { pos: base, msg: "set literal needs braces".into() })?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut offset = 1;
    for part in inner.split(',') {
        out.push(parse_element(part, carrier, base + offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parses an affine-map literal `c*n+d`; the slope must be positive.
pub fn parse_affine(text: &str, base: usize) -> Result<AffineMap> {
    let text = text.trim();
    let star = text.find("*n+").ok_or_else(|| Error::Parse {
        pos: base,
        msg: format!("affine literal needs the form \"c*n+d\", got {text:?}"),
    })?;
    let c: u64 = text[..star].trim().parse().map_err(|_| Error::Parse {
        pos: base,
        msg: format!("slope expected before \"*n+\", got {:?}", &text[..star]),
    })?;
    let d: u64 = text[star + 3..].trim().parse().map_err(|_| Error::Parse {
        pos: base + star + 3,
        msg: format!("offset expected after \"*n+\", got {:?}", &text[star + 3..]),
    })?;
    AffineMap::new(c, d).map_err(|_| Error::Parse {
        pos: base,
        msg: "affine map must be strictly increasing (slope ≥ 1)".into(),
    })
}

/// Parses a sequence literal.
pub fn parse_sequence(text: &str, carrier: Carrier, base: usize) -> Result<SeqDescriptor> {
    let text = text.trim();
    if let Some(body) = text.strip_prefix("ep:") {
        let inner = body
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: base,
                msg: "eventually periodic literal needs \"ep:[prefix | cycle]\"".into(),
            })?;
        let bar = inner.find('|').ok_or_else(|| Error::Parse {
            pos: base,
            msg: "eventually periodic literal needs \"|\" between prefix and cycle".into(),
        })?;
        let parse_terms = |s: &str| -> Result<Vec<Element>> {
            s.split_whitespace().map(|tok| parse_element(tok, carrier, base)).collect()
        };
        let prefix = parse_terms(&inner[..bar])?;
        let cycle = parse_terms(&inner[bar + 1..])?;
        if cycle.is_empty() {
            return Err(Error::Parse {
                pos: base + bar,
                msg: "eventually periodic cycle must be nonempty".into(),
            });
        }
        return SeqDescriptor::ep(prefix, cycle);
    }

    let family_needs_upfrag = |pos: usize| -> Result<()> {
        if carrier != Carrier::UpFragment {
            return Err(Error::Parse {
                pos,
                msg: "generator families live in the upfrag carrier".into(),
            });
        }
        Ok(())
    };
    if let Some(body) = text.strip_prefix("tail:") {
        family_needs_upfrag(base)?;
        return Ok(SeqDescriptor::TailAbove(parse_affine(body, base + 5)?));
    }
    if let Some(body) = text.strip_prefix("uniontail:") {
        family_needs_upfrag(base)?;
        let comma = body.find(',').ok_or_else(|| Error::Parse {
            pos: base + 10,
            msg: "union-tail literal needs \"uniontail:S,c*n+d\"".into(),
        })?;
        let element = parse_element(&body[..comma], carrier, base + 10)?;
        let base_set = match element {
            Element::Up(s) => s,
            _ => unreachable!("upfrag element"),
        };
        let tail = parse_affine(&body[comma + 1..], base + 10 + comma + 1)?;
        return Ok(SeqDescriptor::UnionTail { base: base_set, tail });
    }
    if let Some(body) = text.strip_prefix("diag:") {
        family_needs_upfrag(base)?;
        return Ok(SeqDescriptor::SingletonDiag(parse_affine(body, base + 5)?));
    }
    if let Some(body) = text.strip_prefix("block:") {
        family_needs_upfrag(base)?;
        return Ok(SeqDescriptor::BlockDiag(parse_affine(body, base + 6)?));
    }
    Err(Error::Parse { pos: base, msg: format!("unknown sequence literal {text:?}") })
}

fn parse_name(text: &str, carrier: Carrier, base: usize) -> Result<BName> {
    let body = text.strip_prefix("name:").expect("caller checked");
    if let Some(seq) = body.strip_prefix("seq:") {
        return Ok(BName::sequence(parse_sequence(seq, carrier, base + 9)?));
    }
    let inner = body
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse {
            pos: base,
            msg: "name literal needs \"name:{label:element, ...}\"".into(),
        })?;
    let mut entries = Vec::new();
    let mut offset = 6;
    for part in inner.split(',') {
        let colon = part.find(':').ok_or_else(|| Error::Parse {
            pos: base + offset,
            msg: format!("name entry needs \"label:element\", got {part:?}"),
        })?;
        let label = part[..colon].trim().to_string();
        if label.is_empty() {
            return Err(Error::Parse { pos: base + offset, msg: "empty label".into() });
        }
        let value = parse_element(&part[colon + 1..], carrier, base + offset + colon + 1)?;
        entries.push((label, value));
        offset += part.len() + 1;
    }
    // zero-value warnings are surfaced by BName::finite at the API level;
    // the parser only cares about well-formedness
    Ok(BName::finite(entries)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Carrier {
        Carrier::power(2).unwrap()
    }

    #[test]
    fn carrier_and_set_combined() {
        let (carrier, parsed) = parse_input("powerset:2 ; {10,01}", None).unwrap();
        assert_eq!(carrier, p2());
        assert_eq!(
            parsed,
            Parsed::ElementSet(vec![
                Element::Finite { atoms: 2, bits: 0b01 },
                Element::Finite { atoms: 2, bits: 0b10 },
            ])
        );
    }

    #[test]
    fn upfrag_ep_sequence() {
        let (carrier, parsed) = parse_input("upfrag ; ep:[ | 101;10 0;1 ]", None).unwrap();
        assert_eq!(carrier, Carrier::UpFragment);
        match parsed {
            Parsed::Sequence(SeqDescriptor::EventuallyPeriodic { prefix, cycle }) => {
                assert!(prefix.is_empty());
                assert_eq!(cycle.len(), 2);
                assert_eq!(cycle[0], Element::Up(UPSet::new(&[true, false, true], &[true, false]).unwrap()));
            }
            other => panic!("unexpected parse {other:?}"),
        }
    }

    #[test]
    fn tail_literal() {
        let (_, parsed) = parse_input("tail:1*n+0", Some(Carrier::UpFragment)).unwrap();
        assert_eq!(
            parsed,
            Parsed::Sequence(SeqDescriptor::TailAbove(AffineMap::new(1, 0).unwrap()))
        );
    }

    #[test]
    fn default_carrier_is_used_when_not_embedded() {
        let (carrier, parsed) = parse_input("11", Some(p2())).unwrap();
        assert_eq!(carrier, p2());
        assert_eq!(parsed, Parsed::Element(Element::Finite { atoms: 2, bits: 0b11 }));
        assert!(parse_input("11", None).is_err());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_input("powerset:2 ; 1x", None).unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert!(pos > 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_input("powerset:2 ; 101", None),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn non_increasing_affine_is_a_semantic_error() {
        let err = parse_input("diag:0*n+3", Some(Carrier::UpFragment)).unwrap_err();
        match err {
            Error::Parse { msg, .. } => assert!(msg.contains("strictly increasing")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn family_tags_and_names() {
        let (_, parsed) = parse_input("upfrag ; cofinite-family", None).unwrap();
        assert_eq!(parsed, Parsed::Upset(UpsetFD::cofinite_family()));

        let (_, parsed) = parse_input("powerset:2 ; name:{x0:01, x1:10}", None).unwrap();
        match &parsed {
            Parsed::Name(BName::Finite { entries }) => {
                assert_eq!(entries.len(), 2);
                assert_eq!(entries[0].0, "x0");
            }
            other => panic!("unexpected parse {other:?}"),
        }

        let (_, parsed) = parse_input("powerset:2 ; gamma", None).unwrap();
        assert_eq!(parsed, Parsed::Name(BName::gamma(p2())));

        let (_, parsed) = parse_input("upfrag ; name:seq:tail:2*n+1", None).unwrap();
        assert_eq!(
            parsed,
            Parsed::Name(BName::sequence(SeqDescriptor::TailAbove(
                AffineMap::new(2, 1).unwrap()
            )))
        );
    }

    #[test]
    fn rendering_round_trips() {
        let inputs = [
            ("powerset:2", "10"),
            ("powerset:3", "{001,010,111}"),
            ("powerset:2", "{}"),
            ("upfrag", "101;10"),
            ("upfrag", ";1"),
            ("upfrag", "ep:[0;1 | 101;10 0;1]"),
            ("powerset:2", "ep:[ | 10 01]"),
            ("upfrag", "tail:2*n+3"),
            ("upfrag", "uniontail:;10,1*n+0"),
            ("upfrag", "diag:1*n+0"),
            ("upfrag", "block:3*n+1"),
            ("upfrag", "cofinite-family"),
            ("powerset:2", "name:{x0:01, x1:10}"),
            ("powerset:2", "gamma"),
            ("upfrag", "name:seq:tail:1*n+0"),
        ];
        for (carrier_text, payload) in inputs {
            let carrier = parse_carrier(carrier_text).unwrap();
            let (_, parsed) = parse_input(payload, Some(carrier)).unwrap();
            let rendered = parsed.render();
            let (_, reparsed) = parse_input(&rendered, Some(carrier)).unwrap();
            assert_eq!(parsed, reparsed, "round trip failed for {payload:?} via {rendered:?}");
        }
    }

    #[test]
    fn canonicalization_happens_at_parse_time() {
        let (_, parsed) = parse_input("upfrag ; 101;11", None).unwrap();
        let (_, expected) = parse_input("upfrag ; 10;1", None).unwrap();
        assert_eq!(parsed, expected);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn up_elem() -> impl Strategy<Value = Element> {
            (
                prop::collection::vec(any::<bool>(), 0..5),
                prop::collection::vec(any::<bool>(), 1..5),
            )
                .prop_map(|(p, c)| Element::Up(UPSet::new(&p, &c).unwrap()))
        }

        proptest! {
            #[test]
            fn up_element_literals_round_trip(e in up_elem()) {
                let text = e.to_string();
                let parsed = parse_element(&text, Carrier::UpFragment, 0).unwrap();
                prop_assert_eq!(parsed, e);
            }

            #[test]
            fn finite_element_literals_round_trip(bits in 0u64..16) {
                let e = Element::Finite { atoms: 4, bits };
                let parsed =
                    parse_element(&e.to_string(), Carrier::power(4).unwrap(), 0).unwrap();
                prop_assert_eq!(parsed, e);
            }
        }
    }
}
