use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relationship {
    /// `as_a` is a provider of `as_b` (code `-1`).
    ProviderCustomer,
    /// Settlement-free peering (code `0`).
    Peer,
}

impl Relationship {
    pub fn code(self) -> i8 {
        match self {
            Relationship::ProviderCustomer => -1,
            Relationship::Peer => 0,
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "-1" => Some(Relationship::ProviderCustomer),
            "0" => Some(Relationship::Peer),
            _ => None,
        }
    }
}

/// One `<as1>|<as2>|<code>` line of an AS-relationship snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AsRelRecord {
    pub as_a: u64,
    pub as_b: u64,
    pub relationship: Relationship,
}

impl fmt::Display for AsRelRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.as_a, self.as_b, self.relationship.code())
    }
}

pub fn parse_asrel(text: &str) -> Result<Vec<AsRelRecord>> {
    parse_asrel_reader(text.as_bytes())
}

pub fn parse_asrel_reader(reader: impl BufRead) -> Result<Vec<AsRelRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(format!("reading line {lineno}"), e))?;
        if let Some(rec) = parse_line(&line, lineno)? {
            out.push(rec);
        }
    }
    Ok(out)
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<AsRelRecord>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let err = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    let fields: Vec<&str> = line.split('|').collect();
    if fields.len() != 3 {
        return Err(err(format!("expected 3 '|'-separated fields, found {}", fields.len())));
    }
    let asn = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| err(format!("invalid AS number {s:?}")))
    };
    let as_a = asn(fields[0])?;
    let as_b = asn(fields[1])?;
    let relationship = Relationship::from_code(fields[2])
        .ok_or_else(|| err(format!("unknown relationship code {:?}", fields[2])))?;
    if as_a == as_b {
        return Err(err(format!("self-relationship of AS {as_a}")));
    }
    Ok(Some(AsRelRecord {
        as_a,
        as_b,
        relationship,
    }))
}

pub fn serialize_asrel(records: &[AsRelRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

/// Undirected AS graph (relationship labels dropped, duplicate adjacencies
/// merged), restricted to its giant component. Dense ids map back to AS
/// numbers through [`Graph::original_id`].
pub fn asrel_to_graph(records: &[AsRelRecord]) -> Result<Graph> {
    if records.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let edges: Vec<(u64, u64)> = records.iter().map(|r| (r.as_a, r.as_b)).collect();
    Graph::from_edges_merged(&edges).giant_component()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_provider_customer() {
        let r = parse_asrel("1|2|-1").unwrap();
        assert_eq!(
            r,
            vec![AsRelRecord {
                as_a: 1,
                as_b: 2,
                relationship: Relationship::ProviderCustomer
            }]
        );
    }

    #[test]
    fn skips_comments_and_blanks() {
        let r = parse_asrel("# comment\n\n3|4|0\n").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].relationship, Relationship::Peer);
        assert_eq!((r[0].as_a, r[0].as_b), (3, 4));
    }

    #[test]
    fn rejects_self_relationship() {
        let e = parse_asrel("5|5|0").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        assert!(e.to_string().contains("self-relationship"));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        for (text, line) in [
            ("1|2|-1\n1|2\n", 2),
            ("# x\n1|2|-1\nA|2|0\n", 3),
            ("1|2|1\n", 1),
            ("1|2|0|bgp\n", 1),
            ("1|-2|0\n", 1),
        ] {
            match parse_asrel(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn duplicate_adjacencies_merge() {
        let recs = parse_asrel("1|2|-1\n2|1|0\n").unwrap();
        let g = asrel_to_graph(&recs).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn keeps_component_of_smallest_as() {
        let recs = parse_asrel("1|2|-1\n3|4|-1\n").unwrap();
        let g = asrel_to_graph(&recs).unwrap();
        assert_eq!(g.original_ids(), &[1, 2]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(asrel_to_graph(&[]), Err(Error::EmptyGraph)));
    }

    fn record() -> impl Strategy<Value = AsRelRecord> {
        (0u64..1_000_000, 0u64..1_000_000, any::<bool>())
            .prop_filter("distinct ASes", |(a, b, _)| a != b)
            .prop_map(|(as_a, as_b, peer)| AsRelRecord {
                as_a,
                as_b,
                relationship: if peer {
                    Relationship::Peer
                } else {
                    Relationship::ProviderCustomer
                },
            })
    }

    proptest! {
        #[test]
        fn parse_inverts_serialize(records in proptest::collection::vec(record(), 0..50)) {
            prop_assert_eq!(parse_asrel(&serialize_asrel(&records)).unwrap(), records);
        }
    }
}
