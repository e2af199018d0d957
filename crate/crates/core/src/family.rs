//! Named graph families: paths, stars, cycles, complete bipartite graphs,
//! the five extremal trees `T1..T5`, and the trees with spectral radius at
//! most two (`Z`, `W`, `H1..H6`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Path(usize),
    Star(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// Center of degree `n-2` with `n-3` leaves and one pendant path of length 2.
    T1(usize),
    /// Center of degree `n-3` with `n-4` leaves and one pendant path of length 3.
    T2(usize),
    /// Center of degree `n-3` with `n-4` leaves, adjacent to a degree-3 vertex carrying two leaves.
    T3(usize),
    /// Center of degree `n-3` with `n-5` leaves and two pendant paths of length 2.
    T4(usize),
    /// Double star whose adjacent centers have degrees `n-4` and `4`.
    T5(usize),
    /// Path on `n-1` vertices with an extra leaf on its second vertex.
    Z(usize),
    /// Path on `n-2` vertices with extra leaves on its second and second-to-last vertices.
    W(usize),
    /// `H1..H6`, the six sporadic spiders (orders 6, 7, 7, 8, 8, 9).
    H(u8),
    /// A center vertex with pendant paths of the given lengths.
    Spider(Vec<usize>),
    /// Two adjacent centers carrying the given numbers of leaves.
    DoubleStar(usize, usize),
}

const H_LEGS: [[usize; 3]; 6] = [
    [1, 2, 2],
    [1, 2, 3],
    [2, 2, 2],
    [1, 2, 4],
    [1, 3, 3],
    [1, 2, 5],
];

impl Family {
    /// Parses a family name plus its integer parameters, e.g. `("T2", [12])`,
    /// `("K_ab", [2, 3])`, `("spider", [1, 2, 2])`, `("H4", [])`.
    pub fn from_parts(name: &str, params: &[usize]) -> Result<Family> {
        let invalid = |reason: &str| Error::InvalidFamily {
            family: name.to_string(),
            reason: reason.to_string(),
        };
        let order = || match params {
            [n] => Ok(*n),
            _ => Err(invalid("expects exactly one parameter (the order n)")),
        };
        let fam = match name {
            "P" => Family::Path(order()?),
            "S" => Family::Star(order()?),
            "C" => Family::Cycle(order()?),
            "K_ab" | "K" => match params {
                [a, b] => Family::CompleteBipartite(*a, *b),
                _ => return Err(invalid("expects two parameters a, b")),
            },
            "T1" => Family::T1(order()?),
            "T2" => Family::T2(order()?),
            "T3" => Family::T3(order()?),
            "T4" => Family::T4(order()?),
            "T5" => Family::T5(order()?),
            "Z" => Family::Z(order()?),
            "W" => Family::W(order()?),
            "H1" | "H2" | "H3" | "H4" | "H5" | "H6" => {
                if !params.is_empty() {
                    return Err(invalid("has a fixed order and takes no parameters"));
                }
                Family::H(name.as_bytes()[1] - b'0')
            }
            "spider" => Family::Spider(params.to_vec()),
            "double_star" => match params {
                [a, b] => Family::DoubleStar(*a, *b),
                _ => return Err(invalid("expects two leaf counts")),
            },
            _ => return Err(invalid("unknown family name")),
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "P",
            Family::Star(_) => "S",
            Family::Cycle(_) => "C",
            Family::CompleteBipartite(..) => "K_ab",
            Family::T1(_) => "T1",
            Family::T2(_) => "T2",
            Family::T3(_) => "T3",
            Family::T4(_) => "T4",
            Family::T5(_) => "T5",
            Family::Z(_) => "Z",
            Family::W(_) => "W",
            Family::H(k) => ["H1", "H2", "H3", "H4", "H5", "H6"][*k as usize - 1],
            Family::Spider(_) => "spider",
            Family::DoubleStar(..) => "double_star",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Family::Path(n)
            | Family::Star(n)
            | Family::Cycle(n)
            | Family::T1(n)
            | Family::T2(n)
            | Family::T3(n)
            | Family::T4(n)
            | Family::T5(n)
            | Family::Z(n)
            | Family::W(n) => *n,
            Family::CompleteBipartite(a, b) => a + b,
            Family::H(k) => 1 + H_LEGS[*k as usize - 1].iter().sum::<usize>(),
            Family::Spider(legs) => 1 + legs.iter().sum::<usize>(),
            Family::DoubleStar(a, b) => 2 + a + b,
        }
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::InvalidFamily {
                family: self.name().to_string(),
                reason,
            })
        };
        let min_order = match self {
            Family::Path(_) | Family::Star(_) => 1,
            Family::Cycle(_) => 3,
            Family::T1(_) | Family::T2(_) | Family::T3(_) | Family::T4(_) | Family::T5(_) => 6,
            Family::Z(_) => 5,
            Family::W(_) => 6,
            Family::CompleteBipartite(a, b) => {
                if *a == 0 || *b == 0 {
                    return fail("both sides need at least one vertex".into());
                }
                return Ok(());
            }
            Family::H(k) => {
                if !(1..=6).contains(k) {
                    return fail(format!("H{k} does not exist; use H1..H6"));
                }
                return Ok(());
            }
            Family::Spider(legs) => {
                if legs.is_empty() || legs.contains(&0) {
                    return fail("needs at least one leg and every leg length >= 1".into());
                }
                return Ok(());
            }
            Family::DoubleStar(..) => return Ok(()),
        };
        if self.order() < min_order {
            return fail(format!("requires n >= {min_order}, got {}", self.order()));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.order();
        let mut b = Builder::default();
        match self {
            Family::Path(n) => {
                b.path(0, *n);
            }
            Family::Star(n) => b.leaves(0, n - 1),
            Family::Cycle(n) => {
                b.path(0, *n);
                b.edge(n - 1, 0);
            }
            Family::CompleteBipartite(a, bb) => {
                for u in 0..*a {
                    for v in 0..*bb {
                        b.edge(u, a + v);
                    }
                }
                b.next = n;
            }
            Family::T1(n) => spider_with_leaves(&mut b, n - 3, &[2]),
            Family::T2(n) => spider_with_leaves(&mut b, n - 4, &[3]),
            Family::T3(n) => {
                b.leaves(0, n - 4);
                let hub = b.fresh();
                b.edge(0, hub);
                b.leaves(hub, 2);
            }
            Family::T4(n) => spider_with_leaves(&mut b, n - 5, &[2, 2]),
            Family::T5(n) => double_star(&mut b, n - 5, 3),
            Family::Z(n) => {
                let end = b.path(0, n - 1);
                debug_assert_eq!(end, n - 2);
                let leaf = b.fresh();
                b.edge(1, leaf);
            }
            Family::W(n) => {
                let end = b.path(0, n - 2);
                let (a, c) = (b.fresh(), b.fresh());
                b.edge(1, a);
                b.edge(end - 1, c);
            }
            Family::H(k) => spider_with_leaves(&mut b, 0, &H_LEGS[*k as usize - 1]),
            Family::Spider(legs) => spider_with_leaves(&mut b, 0, legs),
            Family::DoubleStar(x, y) => double_star(&mut b, *x, *y),
        }
        debug_assert_eq!(b.next.max(1), n);
        Graph::from_edge_list(n, b.edges)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::H(_) => write!(f, "{}", self.name()),
            Family::CompleteBipartite(a, b) | Family::DoubleStar(a, b) => {
                write!(f, "{}:{a},{b}", self.name())
            }
            Family::Spider(legs) => {
                let legs: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
                write!(f, "spider:{}", legs.join(","))
            }
            other => write!(f, "{}:{}", other.name(), other.order()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `NAME` or `NAME:p1,p2,...`, the same form `Display` writes.
    fn from_str(s: &str) -> Result<Family> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| Error::InvalidFamily {
                    family: name.to_string(),
                    reason: format!("invalid parameter {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(name, &params)
    }
}

/// Convenience wrapper for [`Family::build`].
pub fn family(spec: &Family) -> Result<Graph> {
    spec.build()
}

#[derive(Default)]
struct Builder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        let v = self.next.max(1);
        self.next = v + 1;
        v
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn leaves(&mut self, hub: usize, count: usize) {
        for _ in 0..count {
            let leaf = self.fresh();
            self.edge(hub, leaf);
        }
    }

    /// Path on `len` vertices starting at `start` (which must already exist
    /// or be vertex 0). Returns the last vertex.
    fn path(&mut self, start: usize, len: usize) -> usize {
        let mut prev = start;
        for _ in 1..len {
            let v = self.fresh();
            self.edge(prev, v);
            prev = v;
        }
        prev
    }
}

/// Vertex 0 is the center; `leaves` pendant vertices, then one pendant path per leg.
fn spider_with_leaves(b: &mut Builder, leaves: usize, legs: &[usize]) {
    b.leaves(0, leaves);
    for &len in legs {
        let first = b.fresh();
        b.edge(0, first);
        b.path(first, len);
    }
}

fn double_star(b: &mut Builder, left: usize, right: usize) {
    let other = b.fresh();
    b.edge(0, other);
    b.leaves(0, left);
    b.leaves(other, right);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(name: &str, params: &[usize]) -> Graph {
        Family::from_parts(name, params).unwrap().build().unwrap()
    }

    fn degree_multiset(g: &Graph) -> Vec<usize> {
        g.sorted_degrees()
    }

    #[test]
    fn t1_at_twelve() {
        let g = build("T1", &[12]);
        let mut expected = vec![10, 2];
        expected.extend([1; 10]);
        assert_eq!(degree_multiset(&g), expected);
        assert!(g.is_tree());
    }

    #[test]
    fn extremal_trees_have_expected_degrees() {
        for n in 6..=16 {
            let t2 = build("T2", &[n]);
            let t3 = build("T3", &[n]);
            let t4 = build("T4", &[n]);
            let t5 = build("T5", &[n]);
            for t in [&t2, &t3, &t4, &t5] {
                assert!(t.is_tree());
                assert_eq!(t.order(), n);
            }
            assert_eq!(t2.max_degree(), n - 3);
            assert_eq!(t3.max_degree(), n - 3);
            assert_eq!(t4.max_degree(), n - 3);
            assert_eq!(degree_multiset(&t3)[1], 3);
            assert_eq!(&degree_multiset(&t4)[1..3], &[2, 2]);
            let d5 = degree_multiset(&t5);
            assert_eq!(d5[0].max(d5[1]), (n - 4).max(4));
            assert_eq!(d5[0].min(d5[1]), (n - 4).min(4));
        }
    }

    #[test]
    fn sporadic_spiders() {
        let orders = [6, 7, 7, 8, 8, 9];
        for (k, &n) in orders.iter().enumerate() {
            let g = build(&format!("H{}", k + 1), &[]);
            assert_eq!(g.order(), n);
            assert!(g.is_tree());
            assert_eq!(g.max_degree(), 3);
        }
        assert_eq!(degree_multiset(&build("H1", &[])), vec![3, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn small_families() {
        let c7 = build("C", &[7]);
        assert_eq!(c7.degrees(), &[2; 7]);
        assert_eq!(c7.size(), 7);
        let z5 = build("Z", &[5]);
        assert_eq!(degree_multiset(&z5), vec![3, 2, 1, 1, 1]);
        let w6 = build("W", &[6]);
        assert_eq!(degree_multiset(&w6), vec![3, 3, 1, 1, 1, 1]);
        let w8 = build("W", &[8]);
        assert_eq!(degree_multiset(&w8), vec![3, 3, 2, 2, 1, 1, 1, 1]);
        let k = build("K_ab", &[2, 3]);
        assert_eq!(k.size(), 6);
        assert_eq!(build("P", &[1]).size(), 0);
        assert_eq!(build("S", &[2]), build("P", &[2]));
    }

    #[test]
    fn parameter_bounds() {
        assert!(Family::from_parts("T1", &[5]).is_err());
        assert!(Family::from_parts("Z", &[4]).is_err());
        assert!(Family::from_parts("W", &[5]).is_err());
        assert!(Family::from_parts("C", &[2]).is_err());
        assert!(Family::from_parts("H7", &[]).is_err());
        assert!(Family::from_parts("H1", &[6]).is_err());
        assert!(Family::from_parts("spider", &[1, 0]).is_err());
        assert!(Family::from_parts("K_ab", &[0, 3]).is_err());
        assert!(Family::from_parts("Q", &[3]).is_err());
    }

    #[test]
    fn display_parses_back() {
        for s in ["T2:12", "K_ab:2,3", "spider:1,2,2", "H5", "double_star:4,3", "P:1"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }
}
