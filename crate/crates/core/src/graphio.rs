//! Simple undirected graphs: bitset adjacency, text formats, generators and
//! BFS distances.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph6: byte {byte} at offset {offset} is outside 63..=126")]
    InvalidChar { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} payload bytes, found {found}")]
    TruncatedBits { expected: usize, found: usize },
    #[error("graph6: {found} payload bytes, expected {expected}")]
    TrailingBytes { expected: usize, found: usize },
    #[error("graph6: padding bits of the last byte are not zero")]
    NonzeroPadding,
    #[error("graph6: long form (n >= 63) is not supported")]
    LongFormUnsupported,
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6 encoding requires n < 63, got {0}")]
    TooLarge(usize),
    #[error("dimacs: missing `p edge n m` header")]
    MissingHeader,
    #[error("vertex {vertex} out of range for n = {n} (line {line})")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("self-loop on vertex {vertex} (line {line})")]
    SelfLoop { line: usize, vertex: usize },
    #[error("malformed line {line}: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameter for {family}: {reason}")]
    BadParam { family: String, reason: String },
}

/// Simple undirected graph on vertices `0..n` with one bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Graph { n, words, adj: vec![0; n * words], edge_count: 0 }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops panic.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Inserts the edge `uv`; returns false when it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "self-loops are not allowed");
        if self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.adj[v * self.words + u / WORD] |= 1 << (u % WORD);
        self.edge_count += 1;
        true
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Adjacency row as a single word; only valid for `n <= 64`.
    pub fn row_mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.adj[u * self.words]
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Graph induced by relabeling: vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

/// Decodes a short-form graph6 line (n < 63).
///
/// Upper-triangle bits are read column by column: x(0,1), x(0,2), x(1,2),
/// x(0,3), ... six bits per byte, most significant first.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(GraphError::InvalidChar { offset, byte });
        }
    }
    if bytes[0] == 126 {
        return Err(GraphError::LongFormUnsupported);
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() < expected {
        return Err(GraphError::TruncatedBits { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(GraphError::TrailingBytes { expected, found: payload.len() });
    }
    let bit = |k: usize| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if !nbits.is_multiple_of(6) {
        let last = payload[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(GraphError::NonzeroPadding);
        }
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n >= 63 {
        return Err(GraphError::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut payload = vec![0u8; nbits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                payload[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(payload.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(payload.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Result of reading a DIMACS file; the graph plus the warnings the reader
/// raised while normalizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
    /// Set when the header's edge count disagrees with the distinct edges read.
    pub edge_count_mismatch: bool,
}

impl DimacsGraph {
    pub fn has_warnings(&self) -> bool {
        self.duplicate_edges > 0 || self.edge_count_mismatch
    }
}

pub fn parse_dimacs(text: &str) -> Result<DimacsGraph, GraphError> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut duplicate_edges = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let malformed = || GraphError::Malformed { line: line_no, text: raw.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 4 || !matches!(fields[1], "edge" | "col") || graph.is_some() {
                    return Err(malformed());
                }
                let n: usize = fields[2].parse().map_err(|_| malformed())?;
                declared_m = fields[3].parse().map_err(|_| malformed())?;
                graph = Some(Graph::empty(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or(GraphError::MissingHeader)?;
                if fields.len() != 3 {
                    return Err(malformed());
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[1..]) {
                    let v: i64 = f.parse().map_err(|_| malformed())?;
                    if v < 1 || v as usize > g.n() {
                        return Err(GraphError::VertexOutOfRange { line: line_no, vertex: v, n: g.n() });
                    }
                    *slot = v as usize - 1;
                }
                if ends[0] == ends[1] {
                    return Err(GraphError::SelfLoop { line: line_no, vertex: ends[0] });
                }
                if !g.add_edge(ends[0], ends[1]) {
                    duplicate_edges += 1;
                }
            }
            _ => return Err(malformed()),
        }
    }
    let graph = graph.ok_or(GraphError::MissingHeader)?;
    let edge_count_mismatch = graph.edge_count() != declared_m;
    Ok(DimacsGraph { graph, duplicate_edges, edge_count_mismatch })
}

/// Plain edge list: one `u v` pair per line, 0-based, `#` starts a comment.
/// The vertex count is one more than the largest label seen.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut pairs = Vec::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || GraphError::Malformed { line: idx + 1, text: raw.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(malformed());
        }
        let u: usize = fields[0].parse().map_err(|_| malformed())?;
        let v: usize = fields[1].parse().map_err(|_| malformed())?;
        if u == v {
            return Err(GraphError::SelfLoop { line: idx + 1, vertex: u });
        }
        n = n.max(u + 1).max(v + 1);
        pairs.push((u, v));
    }
    Ok(Graph::from_edges(n, &pairs))
}

/// Named graph families with fixed labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `K_n`.
    Complete(usize),
    /// `C_n`, `i ~ i+1 mod n`.
    Cycle(usize),
    /// `P_n`, `i ~ i+1`.
    Path(usize),
    /// `K_{1,k}`; vertex 0 is the center.
    Star(usize),
    /// `K_{a,b}`; sides `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// Outer 5-cycle `0..5`, inner pentagram `5..10` (`5+i ~ 5+(i+2)%5`), spokes `i ~ i+5`.
    Petersen,
}

impl Family {
    /// Resolves a family name and its integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Family, GraphError> {
        let bad = |reason: &str| GraphError::BadParam { family: name.to_string(), reason: reason.to_string() };
        let one = |params: &[usize]| match params {
            [p] => Ok(*p),
            _ => Err(bad("expected exactly one parameter")),
        };
        let fam = match name {
            "complete" => Family::Complete(one(params)?),
            "cycle" => Family::Cycle(one(params)?),
            "path" => Family::Path(one(params)?),
            "star" => Family::Star(one(params)?),
            "complete_bipartite" => match params {
                [a, b] => Family::CompleteBipartite(*a, *b),
                _ => return Err(bad("expected two parameters a b")),
            },
            "petersen" => {
                if !params.is_empty() {
                    return Err(bad("takes no parameters"));
                }
                Family::Petersen
            }
            _ => return Err(GraphError::UnknownFamily(name.to_string())),
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn name(&self) -> String {
        match self {
            Family::Complete(n) => format!("complete {n}"),
            Family::Cycle(n) => format!("cycle {n}"),
            Family::Path(n) => format!("path {n}"),
            Family::Star(k) => format!("star {k}"),
            Family::CompleteBipartite(a, b) => format!("complete_bipartite {a} {b}"),
            Family::Petersen => "petersen".to_string(),
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let (family, reason) = match *self {
            Family::Complete(0) => ("complete", "n must be at least 1"),
            Family::Cycle(n) if n < 3 => ("cycle", "n must be at least 3"),
            Family::Path(0) => ("path", "n must be at least 1"),
            Family::Star(0) => ("star", "k must be at least 1"),
            Family::CompleteBipartite(a, b) if a == 0 || b == 0 => ("complete_bipartite", "both sides must be nonempty"),
            _ => return Ok(()),
        };
        Err(GraphError::BadParam { family: family.to_string(), reason: reason.to_string() })
    }
}

pub fn generate(family: Family) -> Result<Graph, GraphError> {
    family.validate()?;
    let g = match family {
        Family::Complete(n) => {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            g
        }
        Family::Cycle(n) => Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()),
        Family::Path(n) => Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()),
        Family::Star(k) => Graph::from_edges(k + 1, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>()),
        Family::CompleteBipartite(a, b) => {
            let mut g = Graph::empty(a + b);
            for u in 0..a {
                for v in a..a + b {
                    g.add_edge(u, v);
                }
            }
            g
        }
        Family::Petersen => {
            let mut g = Graph::empty(10);
            for i in 0..5 {
                g.add_edge(i, (i + 1) % 5);
                g.add_edge(5 + i, 5 + (i + 2) % 5);
                g.add_edge(i, i + 5);
            }
            g
        }
    };
    Ok(g)
}

/// All-pairs BFS distances; `None` marks pairs in different components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    /// Largest finite distance.
    pub fn max_finite(&self) -> usize {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize
    }

    /// Diameter, or `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        if self.dist.contains(&UNREACHABLE) {
            None
        } else {
            Some(self.max_finite())
        }
    }
}

fn bfs(g: &Graph, source: usize, out: &mut [u32]) {
    out.fill(UNREACHABLE);
    out[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if out[v] == UNREACHABLE {
                out[v] = out[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

pub fn distance_matrix(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n * n];
    for u in 0..n {
        bfs(g, u, &mut dist[u * n..(u + 1) * n]);
    }
    DistanceMatrix { n, dist }
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut d = vec![0; g.n()];
    bfs(g, 0, &mut d);
    d.iter().all(|&x| x != UNREACHABLE)
}

/// Distance classes from `root`: `[{root}, N(root), vertices at distance 2, ...]`.
/// Vertices unreachable from `root` form a final class.
pub fn distance_partition(g: &Graph, root: usize) -> Vec<Vec<usize>> {
    let mut d = vec![0; g.n()];
    bfs(g, root, &mut d);
    let ecc = d.iter().filter(|&&x| x != UNREACHABLE).max().copied().unwrap_or(0) as usize;
    let mut classes = vec![Vec::new(); ecc + 1];
    let mut far = Vec::new();
    for (v, &dv) in d.iter().enumerate() {
        if dv == UNREACHABLE {
            far.push(v);
        } else {
            classes[dv as usize].push(v);
        }
    }
    if !far.is_empty() {
        classes.push(far);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        generate(Family::Complete(3)).unwrap()
    }

    /// Bit-by-bit decoding straight from the format rule, independent of `parse_graph6`.
    fn decode_bits(s: &str) -> Vec<(usize, usize)> {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let bits: Vec<bool> = b[1..].iter().flat_map(|&c| (0..6).rev().map(move |i| (c - 63) >> i & 1 == 1)).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges
    }

    #[test]
    fn graph6_golden_pairs() {
        assert_eq!(encode_graph6(&k3()).unwrap(), "Bw");
        assert_eq!(decode_bits("Bw"), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(parse_graph6("Bw").unwrap(), k3());
        let c5 = generate(Family::Cycle(5)).unwrap();
        assert_eq!(encode_graph6(&c5).unwrap(), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
        let mut decoded = decode_bits("Dhc");
        decoded.sort();
        assert_eq!(decoded, {
            let mut e = c5.edges();
            e.sort();
            e
        });
        assert_eq!(parse_graph6("B?").unwrap(), Graph::empty(3));
        assert_eq!(encode_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6("B\u{7f}"), Err(GraphError::InvalidChar { offset: 1, .. })));
        assert!(matches!(parse_graph6("B w"), Err(GraphError::InvalidChar { offset: 1, byte: b' ' })));
        assert_eq!(parse_graph6("D"), Err(GraphError::TruncatedBits { expected: 2, found: 0 }));
        // C5 has 10 bits; the second byte carries two padding bits.
        assert_eq!(parse_graph6("Dhd"), Err(GraphError::NonzeroPadding));
        assert_eq!(parse_graph6("~?@A"), Err(GraphError::LongFormUnsupported));
        assert_eq!(parse_graph6("Bww"), Err(GraphError::TrailingBytes { expected: 1, found: 2 }));
        assert_eq!(encode_graph6(&Graph::empty(63)), Err(GraphError::TooLarge(63)));
    }

    #[test]
    fn dimacs_cases() {
        let k = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k.graph, k3());
        assert!(!k.has_warnings());
        let iso = parse_dimacs("p edge 2 0").unwrap();
        assert_eq!(iso.graph, Graph::empty(2));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 1"), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(parse_dimacs("e 1 2"), Err(GraphError::MissingHeader)));
        assert!(matches!(parse_dimacs(""), Err(GraphError::MissingHeader)));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 3"), Err(GraphError::VertexOutOfRange { vertex: 3, .. })));
        let dup = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 2 3").unwrap();
        assert_eq!(dup.duplicate_edges, 1);
        assert!(dup.edge_count_mismatch);
        assert_eq!(dup.graph.edge_count(), 2);
    }

    #[test]
    fn edge_list() {
        let g = parse_edge_list("# triangle\n0 1\n1 2 # tail\n\n2 0\n").unwrap();
        assert_eq!(g, k3());
        assert!(parse_edge_list("0 0").is_err());
        assert!(parse_edge_list("0 1 2").is_err());
        assert_eq!(parse_edge_list("").unwrap().n(), 0);
    }

    #[test]
    fn families() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        assert_eq!(c5.edges(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        let p = generate(Family::Petersen).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!(p.degrees().iter().all(|&d| d == 3));
        let s = generate(Family::Star(3)).unwrap();
        assert_eq!(s.degrees(), vec![3, 1, 1, 1]);
        for n in 1..=10 {
            assert_eq!(generate(Family::Complete(n)).unwrap().edge_count(), n * (n - 1) / 2);
        }
        let kab = generate(Family::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(kab.edge_count(), 6);
        assert_eq!(generate(Family::Path(1)).unwrap().n(), 1);
        assert!(matches!(Family::from_name("cycle", &[2]), Err(GraphError::BadParam { .. })));
        assert!(matches!(Family::from_name("wheel", &[5]), Err(GraphError::UnknownFamily(_))));
        assert_eq!(Family::from_name("complete_bipartite", &[1, 3]).unwrap(), Family::CompleteBipartite(1, 3));
    }

    #[test]
    fn distances() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let d = distance_matrix(&c5);
        assert_eq!(d.diameter(), Some(2));
        let p = generate(Family::Petersen).unwrap();
        let dp = distance_matrix(&p);
        assert_eq!(dp.diameter(), Some(2));
        for u in 0..10 {
            for v in 0..10 {
                assert_eq!(dp.get(u, v) == Some(1), p.has_edge(u, v));
                assert_eq!(dp.get(u, v), dp.get(v, u));
            }
        }
        let e2 = distance_matrix(&Graph::empty(2));
        assert_eq!(e2.get(0, 1), None);
        assert_eq!(e2.diameter(), None);
        assert!(is_connected(&c5) && is_connected(&p));
        assert!(!is_connected(&Graph::empty(2)));
        assert!(is_connected(&Graph::empty(0)));
        assert_eq!(distance_partition(&p, 0), vec![vec![0], vec![1, 4, 5], vec![2, 3, 6, 7, 8, 9]]);
    }
}
