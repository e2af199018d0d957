//! Exhaustive generation of free trees and of small connected graphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::canon::{self, canonical_code};
use crate::error::{check_range, Result};
use crate::graph::Graph;

pub const MAX_TREE_ORDER: usize = 18;
pub const MAX_PRUFER_ORDER: usize = 12;
pub const MAX_CONNECTED_ORDER: usize = 7;

/// One tree per isomorphism class, in canonical-code order.
#[derive(Clone, Debug)]
pub struct TreeStream {
    n: usize,
    trees: std::vec::IntoIter<(String, Graph)>,
}

impl TreeStream {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for TreeStream {
    type Item = (String, Graph);

    fn next(&mut self) -> Option<Self::Item> {
        self.trees.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.trees.size_hint()
    }
}

impl ExactSizeIterator for TreeStream {}

/// All free trees on `n` vertices, paired with their canonical codes.
///
/// Rooted trees are walked in level-sequence order (Beyer–Hedetniemi
/// successor rule); only sequences rooted at a centroid are kept and the
/// survivors are deduplicated by canonical code.
pub fn free_trees(n: usize) -> Result<TreeStream> {
    check_range("n", n, 1, MAX_TREE_ORDER, "1..=18")?;
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    let mut levels: Vec<usize> = (0..n).collect();
    loop {
        if let Some(tree) = centroid_rooted_tree(&levels) {
            let code = canonical_code(&tree).expect("level sequences describe trees");
            classes.entry(code).or_insert(tree);
        }
        if !next_level_sequence(&mut levels) {
            break;
        }
    }
    Ok(TreeStream {
        n,
        trees: classes.into_iter().collect::<Vec<_>>().into_iter(),
    })
}

/// Advances a rooted-tree level sequence (root at level 0) to its
/// successor. Returns `false` after the star.
fn next_level_sequence(levels: &mut [usize]) -> bool {
    let Some(p) = levels.iter().rposition(|&l| l > 1) else {
        return false;
    };
    let q = levels[..p]
        .iter()
        .rposition(|&l| l == levels[p] - 1)
        .expect("a vertex above level 1 has a parent");
    let period = p - q;
    for i in p..levels.len() {
        levels[i] = levels[i - period];
    }
    true
}

/// Builds the tree for a level sequence if its root is a centroid.
fn centroid_rooted_tree(levels: &[usize]) -> Option<Graph> {
    let n = levels.len();
    let mut parent = vec![0usize; n];
    let mut last_at_level: Vec<usize> = vec![0; n];
    for (i, &l) in levels.iter().enumerate().skip(1) {
        parent[i] = last_at_level[l - 1];
        last_at_level[l] = i;
    }
    let mut size = vec![1usize; n];
    for i in (1..n).rev() {
        size[parent[i]] += size[i];
    }
    if (1..n).any(|i| parent[i] == 0 && 2 * size[i] > n) {
        return None;
    }
    Some(Graph::from_edge_list(n, (1..n).map(|i| (parent[i], i))).expect("valid tree edges"))
}

/// Decodes a Prüfer sequence of length `n - 2` over `0..n`.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Graph> {
    check_range("n", n, 2, usize::MAX, "at least 2")?;
    if seq.len() != n - 2 || seq.iter().any(|&s| s >= n) {
        return Err(crate::error::Error::InvalidArgument(format!(
            "Prüfer sequence for n = {n} needs {} symbols in 0..{n}",
            n - 2
        )));
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    edges.push((u, v));
    Graph::from_edge_list(n, edges)
}

/// Brute force over all `n^(n-2)` Prüfer sequences: returns the number
/// of labelled trees and the number of distinct isomorphism classes among
/// them. Classes are told apart by a bit-packed centroid-rooted code
/// computed independently of [`canonical_code`].
pub fn labeled_tree_count_oracle(n: usize) -> Result<(u64, usize)> {
    check_range("n", n, 2, MAX_PRUFER_ORDER, "2..=12")?;
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    // split on the first two symbols so a parallel pool has enough work items
    let prefix_len = len.min(2);
    let prefixes = (n as u64).pow(prefix_len as u32);
    let per_prefix = total / prefixes;
    let codes: HashSet<u64> = (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let mut local = HashSet::new();
            let mut seq = [0usize; MAX_PRUFER_ORDER];
            let mut x = prefix * per_prefix;
            for slot in seq[..len].iter_mut().rev() {
                *slot = (x % n as u64) as usize;
                x /= n as u64;
            }
            for _ in 0..per_prefix {
                local.insert(SmallTree::decode(n, &seq[..len]).code());
                // odometer increment
                for slot in seq[..len].iter_mut().rev() {
                    *slot += 1;
                    if *slot < n {
                        break;
                    }
                    *slot = 0;
                }
            }
            local
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok((total, codes.len()))
}

/// Fixed-capacity tree for the Prüfer oracle.
struct SmallTree {
    n: usize,
    adj: [[u8; MAX_PRUFER_ORDER]; MAX_PRUFER_ORDER],
    deg: [u8; MAX_PRUFER_ORDER],
}

/// A bracket code packed into bits: `0` opens, `1` closes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Packed {
    aligned: u64,
    len: u32,
}

impl Packed {
    fn bits(self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.aligned >> (64 - self.len)
        }
    }
}

impl SmallTree {
    /// Linear-time decoding.
    fn decode(n: usize, seq: &[usize]) -> SmallTree {
        let mut t = SmallTree {
            n,
            adj: [[0; MAX_PRUFER_ORDER]; MAX_PRUFER_ORDER],
            deg: [0; MAX_PRUFER_ORDER],
        };
        let mut remaining = [1u8; MAX_PRUFER_ORDER];
        for &s in seq {
            remaining[s] += 1;
        }
        let mut ptr = (0..n).find(|&v| remaining[v] == 1).expect("a leaf exists");
        let mut leaf = ptr;
        for &s in seq {
            t.link(leaf, s);
            remaining[s] -= 1;
            if remaining[s] == 1 && s < ptr {
                leaf = s;
            } else {
                ptr += 1;
                while remaining[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        t.link(leaf, n - 1);
        t
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u][self.deg[u] as usize] = v as u8;
        self.deg[u] += 1;
        self.adj[v][self.deg[v] as usize] = u as u8;
        self.deg[v] += 1;
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v][..self.deg[v] as usize].iter().map(|&w| w as usize)
    }

    fn subtree_sizes(&self, v: usize, parent: usize, size: &mut [usize]) -> usize {
        let mut total = 1;
        for w in self.neighbors(v) {
            if w != parent {
                total += self.subtree_sizes(w, v, size);
            }
        }
        size[v] = total;
        total
    }

    fn rooted(&self, v: usize, parent: usize) -> Packed {
        let mut children = [Packed { aligned: 0, len: 0 }; MAX_PRUFER_ORDER];
        let mut k = 0;
        for w in self.neighbors(v) {
            if w != parent {
                children[k] = self.rooted(w, v);
                k += 1;
            }
        }
        children[..k].sort_unstable();
        let mut bits = 0u64;
        let mut len = 1;
        for c in &children[..k] {
            bits = bits << c.len | c.bits();
            len += c.len;
        }
        bits = bits << 1 | 1;
        len += 1;
        Packed {
            aligned: bits << (64 - len),
            len,
        }
    }

    fn code(&self) -> u64 {
        let mut size = [0usize; MAX_PRUFER_ORDER];
        self.subtree_sizes(0, usize::MAX, &mut size);
        let n = self.n;
        let heaviest = |v: usize| {
            self.neighbors(v)
                .map(|w| if size[w] < size[v] { size[w] } else { n - size[v] })
                .max()
                .unwrap_or(0)
        };
        (0..n)
            .filter(|&v| 2 * heaviest(v) <= n)
            .map(|v| self.rooted(v, usize::MAX))
            .min()
            .expect("every tree has a centroid")
            .bits()
    }
}

/// Number of vertex pairs, i.e. bits in an edge mask.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Connectivity of the graph encoded by a pair mask (see [`Graph::from_pair_mask`]).
pub fn is_connected_mask(n: usize, mask: u64) -> bool {
    let mut adj = [0u16; 16];
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut reached: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached == full
}

/// Labelled connected graphs on `n` vertices, or one representative per
/// isomorphism class when `dedup` is set.
pub enum ConnectedGraphStream {
    Labeled {
        n: usize,
        next_mask: u64,
        end: u64,
    },
    Classes(std::vec::IntoIter<Graph>),
}

impl Iterator for ConnectedGraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        match self {
            ConnectedGraphStream::Labeled { n, next_mask, end } => {
                while *next_mask < *end {
                    let mask = *next_mask;
                    *next_mask += 1;
                    if is_connected_mask(*n, mask) {
                        return Some(Graph::from_pair_mask(*n, mask));
                    }
                }
                None
            }
            ConnectedGraphStream::Classes(it) => it.next(),
        }
    }
}

pub fn connected_graphs(n: usize, dedup: bool) -> Result<ConnectedGraphStream> {
    check_range(
        "n",
        n,
        2,
        MAX_CONNECTED_ORDER,
        "2..=7 (2^(n choose 2) edge subsets are scanned)",
    )?;
    let end = 1u64 << pair_count(n);
    if !dedup {
        return Ok(ConnectedGraphStream::Labeled {
            n,
            next_mask: 0,
            end,
        });
    }
    let classes: BTreeMap<(usize, u64), u64> = (0..end)
        .into_par_iter()
        .filter(|&mask| is_connected_mask(n, mask))
        .map(|mask| {
            let form = canon::small_canonical_form(&Graph::from_pair_mask(n, mask))
                .expect("n is at most 7");
            (form, mask)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, (form, mask)| {
            acc.entry(form).or_insert(mask);
            acc
        });
    let reps: Vec<Graph> = classes
        .into_values()
        .map(|mask| Graph::from_pair_mask(n, mask))
        .collect();
    Ok(ConnectedGraphStream::Classes(reps.into_iter()))
}
