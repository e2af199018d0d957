//! Simple undirected graphs on `0..n` with cached degrees and adjacency lists.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph. Vertices are `0..n`; edges are stored as
/// sorted `(u, v)` pairs with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

/// Degree-regularity classification used by the equality cases of the
/// spectral-radius sandwich bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityClass {
    Regular,
    BipartiteSemiregular,
    Other,
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicate pairs.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted_unique(n, set.into_iter().collect()))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degrees = vec![0; n];
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            degrees[u] += 1;
            degrees[v] += 1;
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            degrees,
            adjacency,
        }
    }

    /// Builds a graph on `n <= 11` vertices from a bitmask over the pairs
    /// `(0,1), (0,2), .., (0,n-1), (1,2), ..` in lexicographic order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn sorted_degrees(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        self.degrees.iter().position(|&d| d == 0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Proper 2-colouring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.iter().all(|&d| d == self.degrees[0])
    }

    pub fn regularity_class(&self) -> Result<RegularityClass> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.is_regular() {
            return Ok(RegularityClass::Regular);
        }
        let Some(color) = self.two_coloring() else {
            return Ok(RegularityClass::Other);
        };
        // connected and bipartite: the colouring is unique up to swapping sides
        let mut side_degree = [None, None];
        for v in 0..self.n {
            let slot = &mut side_degree[color[v] as usize];
            match *slot {
                None => *slot = Some(self.degrees[v]),
                Some(d) if d != self.degrees[v] => return Ok(RegularityClass::Other),
                Some(_) => {}
            }
        }
        Ok(RegularityClass::BipartiteSemiregular)
    }

    /// Removes `v` and its incident edges; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::OutOfRange {
                what: "vertex",
                value: v as i64,
                expected: "below the graph order",
            });
        }
        if self.n == 1 {
            return Err(Error::EmptyGraph);
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        Ok(Self::from_sorted_unique(self.n - 1, edges))
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        Graph::from_edge_list(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn first_zagreb(&self) -> u64 {
        self.degrees.iter().map(|&d| (d * d) as u64).sum()
    }

    pub fn forgotten(&self) -> u64 {
        self.degrees.iter().map(|&d| (d * d * d) as u64).sum()
    }

    /// Serializes in the `n m` / `u v` edge-list text format.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text format: a header line `n m`, then `m`
    /// lines `u v`. Lines starting with `#` and blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line `n m`".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut pairs = Vec::with_capacity(m);
        let mut last_line = header_line;
        for (line, content) in lines {
            last_line = line;
            if pairs.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(line, content)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex index out of range 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: last_line,
                message: format!("expected {m} edges, found {}", pairs.len()),
            });
        }
        Graph::from_edge_list(n, pairs).map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let mut it = content.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid integer {tok:?}"),
        })
    };
    let a = next("first integer")?;
    let b = next("second integer")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected token {extra:?}"),
        });
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn edge_list_basics() {
        let p2 = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        assert_eq!(p2.degrees(), &[1, 1]);
        let s4 = Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(s4.degrees(), &[3, 1, 1, 1]);
        let dup = Graph::from_edge_list(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(dup.size(), 2);
        assert_eq!(dup.degrees(), &[1, 2, 1]);
    }

    #[test]
    fn edge_list_rejections() {
        assert_eq!(
            Graph::from_edge_list(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(0, []), Err(Error::EmptyGraph));
    }

    #[test]
    fn connectivity() {
        assert!(path(5).is_connected() && path(5).is_tree());
        assert!(cycle(5).is_connected() && !cycle(5).is_tree());
        let empty = Graph::from_edge_list(2, []).unwrap();
        assert!(!empty.is_connected());
    }

    #[test]
    fn deleting_vertices() {
        let s4 = Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let rest = s4.delete_vertex(0).unwrap();
        assert_eq!(rest.order(), 3);
        assert_eq!(rest.size(), 0);

        assert_eq!(path(4).delete_vertex(0).unwrap(), path(3));
        assert_eq!(path(4).delete_vertex(3).unwrap(), path(3));
        for v in 0..5 {
            let g = cycle(5).delete_vertex(v).unwrap();
            assert!(g.is_tree());
            assert_eq!(g.max_degree(), 2);
        }
        assert!(path(3).delete_vertex(3).is_err());
    }

    #[test]
    fn regularity_classes() {
        assert_eq!(cycle(6).regularity_class(), Ok(RegularityClass::Regular));
        let k23 = Graph::from_edge_list(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(k23.regularity_class(), Ok(RegularityClass::BipartiteSemiregular));
        // path with an extra leaf on the second vertex
        let z5 = Graph::from_edge_list(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(z5.regularity_class(), Ok(RegularityClass::Other));
        let two = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.regularity_class(), Err(Error::Disconnected));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# a path\n4 3\n0 1\n1 2\n# middle comment\n2 3\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g, path(4));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list_text()).unwrap(), g);

        let bad = Graph::parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 3, .. }), "{bad:?}");
        let short = Graph::parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(short, Error::Parse { line: 2, .. }), "{short:?}");
        let oob = Graph::parse_edge_list("3 1\n0 7\n").unwrap_err();
        assert!(matches!(oob, Error::Parse { line: 2, .. }), "{oob:?}");
    }

    #[test]
    fn pair_mask_matches_edge_list() {
        // bits: (0,1)=0 (0,2)=1 (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5
        let g = Graph::from_pair_mask(4, 0b101001);
        assert_eq!(g, Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3)]).unwrap());
    }

    #[test]
    fn zagreb_indices_of_p4() {
        assert_eq!(path(4).first_zagreb(), 10);
        assert_eq!(path(4).forgotten(), 18);
    }
}
