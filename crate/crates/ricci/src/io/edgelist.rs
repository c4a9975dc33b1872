//! Plain edge-list text format: a header line `n m` followed by `m`
//! lines `u v`.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse(text: &str) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse {
        line: Some(line),
        offset: None,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing 'n m' header".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no, "bad vertex count".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no, "bad edge count".into()))?;
    if parts.next().is_some() {
        return Err(err(header_no, "header has extra fields".into()));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(header_no, format!("expected {m} edges, found {}", edges.len())))?;
        let mut parts = line.split_whitespace();
        let u: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "bad endpoint".into()))?;
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "bad endpoint".into()))?;
        if parts.next().is_some() {
            return Err(err(line_no, "edge line has extra fields".into()));
        }
        if u >= n || v >= n {
            return Err(err(
                line_no,
                format!("edge ({u}, {v}) out of range for n = {n}"),
            ));
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(err(line_no, format!("more than {m} edge lines")));
    }
    Graph::from_edge_list(n, &edges).map_err(|e| Error::Parse {
        line: None,
        offset: None,
        message: e.to_string(),
    })
}

pub fn encode(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k2_and_c4() {
        let k2 = parse("2 1\n0 1").unwrap();
        assert_eq!(k2.edge_count(), 1);

        let c4 = parse("4 4\n0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(c4, crate::graph::cycle(4).unwrap());
    }

    #[test]
    fn round_trip() {
        let g = crate::graph::hypercube(3).unwrap();
        assert_eq!(parse(&encode(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("2 1\n0 7").unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(2), .. }));

        let err = parse("2 2\n0 1").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));

        let err = parse("2 1\n0 1\n1 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(3), .. }));

        assert!(parse("").is_err());
        assert!(parse("x y").is_err());
    }
}
