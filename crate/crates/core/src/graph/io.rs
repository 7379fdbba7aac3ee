//! graph6 and plain edge-list text formats.

use super::Graph;
use crate::error::{Error, Result};

const G6_HEADER: &str = ">>graph6<<";
const G6_MAX_N: usize = 258_047;

fn g6_byte(b: u8) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::Parse(format!("graph6: byte {b} outside 63..=126")))
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
/// Edges come back in lexicographic order.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(G6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("graph6: empty input".into()));
    }
    let (n, body) = if bytes[0] != b'~' {
        (g6_byte(bytes[0])? as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == b'~' {
        return Err(Error::Parse(format!(
            "graph6: vertex count overflow (only n <= {G6_MAX_N} supported)"
        )));
    } else {
        if bytes.len() < 4 {
            return Err(Error::Parse("graph6: truncated size field".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | g6_byte(b)? as usize;
        }
        if n < 63 {
            return Err(Error::Parse("graph6: non-canonical size field".into()));
        }
        (n, &bytes[4..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() != nbytes {
        return Err(Error::Parse(format!(
            "graph6: expected {nbytes} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = g6_byte(body[k / 6])?;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = g6_byte(body[nbytes - 1])?;
        let pad_mask = (1u8 << (6 - nbits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Error::Parse("graph6: non-zero padding bits".into()));
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges)
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > G6_MAX_N {
        return Err(Error::Parse(format!(
            "graph6: vertex count overflow ({n} > {G6_MAX_N})"
        )));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses `u v` lines with 1-based labels. `#` starts a comment, blank lines
/// are skipped, and the vertex count is the largest label seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut n = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "edge list line {}: expected two vertex labels, got {line:?}",
                lineno + 1
            )));
        }
        let parse = |f: &str| -> Result<usize> {
            match f.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(Error::Parse(format!(
                    "edge list line {}: bad vertex label {f:?}",
                    lineno + 1
                ))),
            }
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        n = n.max(u).max(v);
        pairs.push((u, v));
    }
    Graph::from_one_indexed(n, pairs)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = String::new();
    for (u, v) in g.edges_one_indexed() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn single_edge_and_edgeless() {
        let e = Graph::from_one_indexed(2, [(1, 2)]).unwrap();
        assert_eq!(emit_graph6(&e).unwrap(), "A_");
        assert_eq!(emit_graph6(&Graph::empty(2)).unwrap(), "A?");
        assert_eq!(parse_graph6("A_").unwrap(), e);
        assert_eq!(emit_graph6(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn known_strings() {
        // reference strings produced by networkx.to_graph6_bytes on the same labelings
        assert_eq!(emit_graph6(&Family::Complete(4).build().unwrap()).unwrap(), "C~");
        assert_eq!(emit_graph6(&Family::Cycle(5).build().unwrap()).unwrap(), "Dhc");
        assert_eq!(emit_graph6(&Family::Petersen.build().unwrap()).unwrap(), "IheA@GUAo");
    }

    #[test]
    fn k4_round_trip() {
        let k4 = Family::Complete(4).build().unwrap();
        assert_eq!(parse_graph6(&emit_graph6(&k4).unwrap()).unwrap(), k4);
    }

    #[test]
    fn long_form_size_field() {
        let g = Family::Cycle(70).build().unwrap();
        let s = emit_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        assert!(parse_graph6(&s).unwrap().same_edge_set(&g));
    }

    #[test]
    fn malformed_graph6() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("A`").is_err()); // padding bit set
        assert!(parse_graph6("A\x7f").is_err());
        assert!(parse_graph6("~~??????").is_err());
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap().m(), 1);
    }

    #[test]
    fn edge_list_text() {
        let text = "# a triangle with a tail\n1 2\n2 3\n\n3 1  # closing edge\n3 4\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges_one_indexed(), vec![(1, 2), (2, 3), (1, 3), (3, 4)]);
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        assert!(parse_edge_list("1 2 3\n").is_err());
        assert!(parse_edge_list("0 1\n").is_err());
        assert!(parse_edge_list("1 1\n").is_err());
        assert!(parse_edge_list("1 2\n2 1\n").is_err());
    }
}
