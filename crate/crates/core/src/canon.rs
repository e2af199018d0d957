//! Canonical forms: AHU bracket codes for trees and a permutation-minimal
//! adjacency form for small general graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Centroid vertices of a tree (one or two).
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let (order, parent) = bfs_order(g, 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    let mut result = Vec::with_capacity(2);
    for v in 0..n {
        let mut largest = n - size[v];
        for &w in g.neighbors(v) {
            if parent[w] == Some(v) {
                largest = largest.max(size[w]);
            }
        }
        if 2 * largest <= n {
            result.push(v);
        }
    }
    result
}

fn bfs_order(g: &Graph, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let n = g.order();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                order.push(w);
            }
        }
    }
    (order, parent)
}

/// AHU code of the tree rooted at `root`: each vertex is `(` followed by
/// its children's codes in sorted order, then `)`.
pub fn rooted_code(g: &Graph, root: usize) -> String {
    let (order, parent) = bfs_order(g, root);
    let mut codes: Vec<Vec<String>> = vec![Vec::new(); g.order()];
    let mut finished: Vec<String> = vec![String::new(); g.order()];
    for &v in order.iter().rev() {
        let mut children = std::mem::take(&mut codes[v]);
        children.sort_unstable();
        let mut code = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        code.push('(');
        for c in &children {
            code.push_str(c);
        }
        code.push(')');
        match parent[v] {
            Some(p) => codes[p].push(code),
            None => finished[v] = code,
        }
    }
    std::mem::take(&mut finished[root])
}

/// Isomorphism-invariant code of a tree, rooted at its centroid (the
/// lexicographically smaller code when there are two centroids).
pub fn canonical_code(g: &Graph) -> Result<String> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(centroids(g)
        .into_iter()
        .map(|c| rooted_code(g, c))
        .min()
        .expect("a tree has at least one centroid"))
}

/// Vertex colours from iterated degree refinement. Colours are ranks of
/// isomorphism-invariant signatures, so relabelling the graph permutes
/// the colour vector accordingly.
fn refined_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color: Vec<usize> = g.degrees().to_vec();
    let mut classes = count_classes(&color);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        color = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        let next = count_classes(&color);
        if next == classes {
            return color;
        }
        classes = next;
    }
}

fn count_classes(color: &[usize]) -> usize {
    let mut c = color.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Canonical form of a graph on at most 11 vertices: the minimum pair
/// bitmask (see [`Graph::from_pair_mask`]) over all vertex orderings that
/// list colour classes of the degree refinement in increasing colour order.
pub fn small_canonical_form(g: &Graph) -> Result<(usize, u64)> {
    let n = g.order();
    if n > 11 {
        return Err(Error::OutOfRange {
            what: "order",
            value: n as i64,
            expected: "at most 11 for permutation canonical forms",
        });
    }
    let color = refined_colors(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<(usize, usize)> = color.iter().copied().zip(0..n).collect();
    by_color.sort_unstable();
    for (c, v) in by_color {
        match cells.last_mut() {
            Some(cell) if color[cell[0]] == c => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }

    let mut best = u64::MAX;
    // position[v] = new label of v
    let mut position = vec![0usize; n];
    search(g, &mut cells, 0, 0, &mut position, &mut best);
    Ok((n, best))
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn search(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    base: usize,
    position: &mut [usize],
    best: &mut u64,
) {
    if cell == cells.len() {
        let n = g.order();
        let mask = g
            .edges()
            .iter()
            .fold(0u64, |m, &(u, v)| m | 1 << pair_index(n, position[u], position[v]));
        *best = (*best).min(mask);
        return;
    }
    let len = cells[cell].len();
    permute(cells, cell, 0, len, base, g, position, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    cells: &mut [Vec<usize>],
    cell: usize,
    k: usize,
    len: usize,
    base: usize,
    g: &Graph,
    position: &mut [usize],
    best: &mut u64,
) {
    if k == len {
        for (i, &v) in cells[cell].iter().enumerate() {
            position[v] = base + i;
        }
        search(g, cells, cell + 1, base + len, position, best);
        return;
    }
    for i in k..len {
        cells[cell].swap(k, i);
        permute(cells, cell, k + 1, len, base, g, position, best);
        cells[cell].swap(k, i);
    }
}

/// Exact isomorphism test: tree codes for trees, permutation canonical forms otherwise.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() || a.sorted_degrees() != b.sorted_degrees() {
        return Ok(false);
    }
    if a.is_tree() {
        return Ok(canonical_code(a)? == canonical_code(b)?);
    }
    Ok(small_canonical_form(a)? == small_canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;

    fn fam(s: &str) -> Graph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    #[test]
    fn relabelled_p3_has_same_code() {
        let a = fam("P:3");
        let b = Graph::from_edge_list(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn p4_and_s4_differ() {
        assert_ne!(
            canonical_code(&fam("P:4")).unwrap(),
            canonical_code(&fam("S:4")).unwrap()
        );
    }

    #[test]
    fn single_vertex_and_edge() {
        assert_eq!(canonical_code(&fam("P:1")).unwrap(), "()");
        assert_eq!(canonical_code(&fam("P:2")).unwrap(), "(())");
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(canonical_code(&fam("C:5")), Err(Error::NotATree));
    }

    #[test]
    fn centroid_counts() {
        assert_eq!(centroids(&fam("P:4")), vec![1, 2]);
        assert_eq!(centroids(&fam("P:5")), vec![2]);
        assert_eq!(centroids(&fam("S:6")), vec![0]);
    }

    #[test]
    fn small_form_distinguishes_and_identifies() {
        let c6 = fam("C:6");
        let two_triangles_joined =
            Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
                .unwrap();
        let k33 = fam("K_ab:3,3");
        let prism =
            Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        // both cubic on six vertices, not isomorphic
        assert!(!is_isomorphic(&k33, &prism).unwrap());
        assert!(!is_isomorphic(&c6, &two_triangles_joined).unwrap());
        let relabelled = c6.relabel(&[3, 5, 1, 0, 2, 4]).unwrap();
        assert!(is_isomorphic(&c6, &relabelled).unwrap());
        assert_eq!(
            small_canonical_form(&c6).unwrap(),
            small_canonical_form(&relabelled).unwrap()
        );
    }
}
