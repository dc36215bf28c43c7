use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EndpointMark, MixedGraph, NodeId};

/// Orientation step that produced a mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Unshielded collider.
    C,
    /// Directed path alongside an edge.
    D1,
    /// Collider plus recorded non-collider one step away.
    D2,
    /// Definite discriminating path.
    D3,
    /// Arrowhead into a recorded non-collider.
    D4,
    /// `o->` completed to `->`.
    E,
    /// `o-o` oriented during node removal.
    F,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::C => "C",
            Rule::D1 => "D1",
            Rule::D2 => "D2",
            Rule::D3 => "D3",
            Rule::D4 => "D4",
            Rule::E => "E",
            Rule::F => "F",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "C" => Rule::C,
            "D1" => Rule::D1,
            "D2" => Rule::D2,
            "D3" => Rule::D3,
            "D4" => Rule::D4,
            "E" => Rule::E,
            "F" => Rule::F,
            _ => return Err(Error::InvalidData(format!("unknown rule `{s}`"))),
        })
    }
}

/// One endpoint refinement: `rule` set the mark at `at` on edge `other - at`.
///
/// Both marks are recorded as they stood right after the change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub rule: Rule,
    pub other: NodeId,
    pub other_mark: EndpointMark,
    pub at: NodeId,
    pub at_mark: EndpointMark,
}

/// Renders events one per line as `<rule> <other> <mark> <at> <mark>`.
pub fn format_trace(events: &[TraceEvent], g: &MixedGraph) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            e.rule,
            g.name(e.other),
            e.other_mark,
            g.name(e.at),
            e.at_mark
        ));
    }
    out
}

/// Inverse of [`format_trace`].
pub fn parse_trace(text: &str, g: &MixedGraph) -> Result<Vec<TraceEvent>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [rule, other, other_mark, at, at_mark] = parts[..] else {
                return Err(Error::InvalidData(format!("malformed trace line `{line}`")));
            };
            let mark = |s: &str| {
                EndpointMark::from_token(s)
                    .ok_or_else(|| Error::InvalidData(format!("unknown mark `{s}`")))
            };
            Ok(TraceEvent {
                rule: rule.parse()?,
                other: g.require(other)?,
                other_mark: mark(other_mark)?,
                at: g.require(at)?,
                at_mark: mark(at_mark)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g = MixedGraph::new(["A", "B"]).unwrap();
        let events = vec![
            TraceEvent {
                rule: Rule::C,
                other: NodeId(0),
                other_mark: EndpointMark::Circle,
                at: NodeId(1),
                at_mark: EndpointMark::Arrow,
            },
            TraceEvent {
                rule: Rule::E,
                other: NodeId(1),
                other_mark: EndpointMark::Arrow,
                at: NodeId(0),
                at_mark: EndpointMark::Tail,
            },
        ];
        let text = format_trace(&events, &g);
        assert_eq!(text, "C A circle B arrow\nE B arrow A tail\n");
        assert_eq!(parse_trace(&text, &g).unwrap(), events);
        assert!(parse_trace("X A circle B arrow\n", &g).is_err());
    }
}
