//! Graph text formats: the `n m` edge-list format and graph6.
//!
//! graph6 encodes the upper-triangular adjacency bitmap column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per printable character
//! offset by 63, after a size header (`n + 63` for `n <= 62`, otherwise a
//! `126`-prefixed 18-bit or a `126 126`-prefixed 36-bit big-endian size).

use crate::graph::Graph;
use crate::{Error, Result};

/// Serializes as `n m` followed by one `u v` line per edge, `u < v`, sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}

/// Parses the edge-list format. Endpoint order within a line is free;
/// edges are normalized on load.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = text.split_whitespace();
    let mut next_usize = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
    };
    let n = next_usize("vertex count")?;
    let m = next_usize("edge count")?;
    let mut pairs = Vec::with_capacity(m);
    for i in 0..m {
        let u = next_usize(&format!("edge {i} endpoint"))? as u32;
        let v = next_usize(&format!("edge {i} endpoint"))? as u32;
        pairs.push((u, v));
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing tokens after declared edges".into()));
    }
    Graph::from_pairs(n, &pairs)
}

const G6_MAX_N: usize = 258_047;

fn g6_push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // 18-bit size, three sextets, big-endian
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
}

/// Encodes a graph as a single graph6 line (no trailing newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > G6_MAX_N {
        return Err(Error::TooLarge {
            what: "graph6 vertex count",
            value: n,
            limit: G6_MAX_N,
        });
    }
    let mut out = Vec::new();
    g6_push_size(&mut out, n);
    let mut acc: u8 = 0;
    let mut bits = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are tolerated.
pub fn read_graph6(line: &str) -> Result<Graph> {
    let mut s = line.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte out of printable range".into()));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size header".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, 4)
    } else {
        return Err(Error::TooLarge {
            what: "graph6 vertex count",
            value: usize::MAX,
            limit: G6_MAX_N,
        });
    };
    if n > G6_MAX_N {
        return Err(Error::TooLarge {
            what: "graph6 vertex count",
            value: n,
            limit: G6_MAX_N,
        });
    }
    let body_bits = n * (n - 1) / 2;
    let body_bytes = body_bits.div_ceil(6);
    if bytes.len() - pos != body_bytes {
        return Err(Error::Parse(format!(
            "graph6 body length {} does not match n={n} (expected {body_bytes} bytes)",
            bytes.len() - pos
        )));
    }
    let mut pairs = Vec::new();
    let mut acc = 0u8;
    let mut avail = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            if avail == 0 {
                acc = bytes[pos] - 63;
                avail = 6;
                pos += 1;
            }
            if acc & 0x20 != 0 {
                pairs.push((i, j));
            }
            acc <<= 1;
            acc &= 0x3f;
            avail -= 1;
        }
    }
    Graph::from_pairs(n, &pairs)
}
