//! graph6, DOT export and JSON edge lists.
//!
//! graph6 follows the format description shipped with nauty: a size
//! prefix, then the upper triangle column by column in 6-bit groups offset
//! by 63.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(1, i, format!("byte {b} outside the graph6 range")));
        }
    }
    let (n, mut pos) = match bytes {
        [] => return Err(Error::parse(1, 0, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse(1, 2, "truncated size field"));
            }
            let n = rest[..6].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(1, 1, "truncated size field"));
            }
            let n = rest[..3].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let needed = total_bits.div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(Error::parse(
            1,
            bytes.len().min(pos + needed),
            format!("expected {needed} data bytes, found {}", bytes.len() - pos),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut current = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                current = bytes[pos] - 63;
                pos += 1;
            }
            if current >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeListJson::from(g)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let parsed: EdgeListJson = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    Graph::from_edges(parsed.n, parsed.edges.into_iter().map(|[u, v]| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn known_encodings() {
        // Reference strings from the nauty format description / networkx.
        assert_eq!(to_graph6(&named::complete(4)), "C~");
        assert_eq!(to_graph6(&named::path(3)), "Bg");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&named::cycle(5)), "Dhc");
    }

    #[test]
    fn decode_errors_have_offsets() {
        assert!(matches!(from_graph6("C"), Err(Error::Parse { .. })));
        assert!(matches!(from_graph6("C~~"), Err(Error::Parse { .. })));
        assert!(matches!(from_graph6("C\x01"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn large_size_prefix() {
        let g = named::cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn json_and_dot() {
        let g = named::cycle(4);
        let j = to_json(&g);
        assert_eq!(j, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(from_json(&j).unwrap(), g);
        assert!(to_dot(&g, "c4").contains("2 -- 3;"));
        assert!(from_json("{\"n\": 2, \"edges\": [[0,0]]}").is_err());
    }
}
