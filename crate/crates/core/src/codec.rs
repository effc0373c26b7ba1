//! graph6 and edge-list text formats.
//!
//! graph6 follows the nauty convention: a size header `N(n)` followed by the
//! upper triangle of the adjacency matrix in column order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed big-endian into 6-bit groups,
//! each stored as `63 + value`. The final group is zero padded.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::{Edge, Graph, MAX_N};

const HEADER: &[u8] = b">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

/// Parse one graph6 record. A leading `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, GraphError> {
    let mut start = 0;
    if text.starts_with(HEADER) {
        start = HEADER.len();
    }
    let mut end = text.len();
    while end > start && matches!(text[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &text[start..end];
    if body.is_empty() {
        return Err(GraphError::parse(start, "empty graph6 record"));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(GraphError::parse(
                start + i,
                format!("byte {b:#04x} outside graph6 range"),
            ));
        }
    }

    let (n, header_len) = if body[0] == 126 {
        if body.len() >= 2 && body[1] == 126 {
            return Err(GraphError::parse(
                start,
                "8-byte size header exceeds capacity",
            ));
        }
        if body.len() < 4 {
            return Err(GraphError::parse(
                start + body.len(),
                "truncated size header",
            ));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    } else {
        ((body[0] - 63) as usize, 1)
    };
    if n > MAX_N {
        return Err(GraphError::parse(
            start,
            format!("n={n} exceeds capacity {MAX_N}"),
        ));
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let want = pairs.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != want {
        let offset = start + header_len + data.len().min(want);
        return Err(GraphError::parse(
            offset,
            format!("expected {want} data bytes for n={n}, found {}", data.len()),
        ));
    }

    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parsed edge list together with any repeated edges that were collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Graph,
    pub duplicates: Vec<Edge>,
}

/// Parse `"n; u-v, u-v, ..."` with 0-based vertices. Error offsets are
/// character positions in `text`.
pub fn parse_edge_list(text: &str) -> Result<EdgeList, GraphError> {
    let (head, tail, tail_at) = match text.find(';') {
        Some(i) => (&text[..i], &text[i + 1..], i + 1),
        None => (text, "", text.len()),
    };
    let n: usize = head.trim().parse().map_err(|_| {
        GraphError::parse(
            leading_ws(head),
            format!("bad vertex count {:?}", head.trim()),
        )
    })?;
    if n > MAX_N {
        return Err(GraphError::parse(
            leading_ws(head),
            format!("n={n} exceeds capacity {MAX_N}"),
        ));
    }
    let mut g = Graph::new(n)?;
    let mut duplicates = Vec::new();

    let mut offset = tail_at;
    for token in tail.split(',') {
        let at = offset + leading_ws(token);
        offset += token.len() + 1;
        let tok = token.trim();
        if tok.is_empty() {
            if tail.trim().is_empty() {
                break;
            }
            return Err(GraphError::parse(at, "empty edge token"));
        }
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| GraphError::parse(at, format!("expected u-v, found {tok:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| GraphError::parse(at, format!("bad vertex index {:?}", s.trim())))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a == b {
            return Err(GraphError::parse(at, format!("loop at vertex {a}")));
        }
        if a >= n || b >= n {
            return Err(GraphError::parse(
                at,
                format!("index out of range in {tok:?} (n={n})"),
            ));
        }
        if g.has_edge(a, b) {
            duplicates.push(Edge::new(a, b)?);
        }
        g.set_edge(a, b, true);
    }
    Ok(EdgeList {
        graph: g,
        duplicates,
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{};", g.n());
    for (i, e) in g.edges().enumerate() {
        let sep = if i == 0 { " " } else { ", " };
        let _ = write!(s, "{sep}{e}");
    }
    s
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_encodes_as_a_underscore() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(write_graph6(&g), "A_");
        assert_eq!(parse_graph6(b"A_").unwrap(), g);
    }

    #[test]
    fn known_strings() {
        // Reference encodings cross-checked against networkx.to_graph6_bytes.
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(write_graph6(&p4), "Ch");
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(write_graph6(&k4), "C~");
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(write_graph6(&c5), "Dhc");
        assert_eq!(write_graph6(&Graph::new(0).unwrap()), "?");
        assert_eq!(write_graph6(&Graph::new(1).unwrap()), "@");
    }

    #[test]
    fn long_header_for_63_and_64() {
        for n in [63, 64] {
            let mut g = Graph::new(n).unwrap();
            g.set_edge(0, n - 1, true);
            g.set_edge(5, 17, true);
            let s = write_graph6(&g);
            assert_eq!(s.as_bytes()[0], 126);
            assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
        }
    }

    #[test]
    fn malformed_graph6() {
        assert!(matches!(
            parse_graph6(b"A"),
            Err(GraphError::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6(b"A__"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            parse_graph6(b"A\x20"),
            Err(GraphError::Parse { offset: 1, .. })
        ));
        assert!(parse_graph6(b"").is_err());
        // n = 65 in the 4-byte header form
        assert!(parse_graph6(&[126, 63, 64, 65]).is_err());
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(parse_graph6(b">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn edge_list_examples() {
        let p3 = parse_edge_list("3; 0-1, 1-2").unwrap();
        assert_eq!(p3.graph, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert!(p3.duplicates.is_empty());

        let k4 = parse_edge_list("4; 0-1, 0-2, 0-3, 1-2, 1-3, 2-3").unwrap();
        assert_eq!(k4.graph.edge_count(), 6);

        match parse_edge_list("3; 0-3") {
            Err(GraphError::Parse { offset, message }) => {
                assert_eq!(offset, 3);
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_list_duplicates_and_errors() {
        let d = parse_edge_list("3; 0-1, 1-0").unwrap();
        assert_eq!(d.duplicates, vec![Edge::new(0, 1).unwrap()]);
        assert_eq!(d.graph.edge_count(), 1);
        assert!(parse_edge_list("3; 1-1").is_err());
        assert!(parse_edge_list("x; 0-1").is_err());
        assert!(parse_edge_list("3; 0-1,, 1-2").is_err());
        assert_eq!(parse_edge_list("3;").unwrap().graph.edge_count(), 0);
        assert_eq!(parse_edge_list("2").unwrap().graph.n(), 2);
    }

    #[test]
    fn edge_list_writer() {
        let g = Graph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(write_edge_list(&g), "3; 0-1, 1-2");
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap().graph, g);
    }
}
