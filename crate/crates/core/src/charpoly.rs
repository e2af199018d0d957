//! Exact characteristic polynomials.
//!
//! Two independent routes are provided: [`charpoly_oracle`] works on any
//! rational matrix by the Faddeev–LeVerrier trace recursion, while
//! [`charpoly_forest`] applies the edge-deletion recursion for forests
//!
//! ```text
//! phi(G) = phi(G1) phi(G2) - w(u,v)^2 phi(G1 - u) phi(G2 - v)
//! ```
//!
//! on principal submatrices of an extended adjacency matrix. The closed
//! forms for the extremal trees and paths are built on top.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{check_range, Error, Result};
use crate::exmatrix::{self, RationalSymMatrix};
use crate::graph::Graph;
use crate::polynomial::Polynomial;
use crate::rational::{self, frac, int, Rational};

/// Monic characteristic polynomial `det(xI - M)` by the Faddeev–LeVerrier
/// recursion `N_k = M N_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(M N_k) / k`.
pub fn charpoly_oracle(m: &RationalSymMatrix) -> Polynomial {
    let n = m.order();
    // sparse rows of M
    let rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(j, e)| (j, e.clone()))
                .collect()
        })
        .collect();

    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut prev = vec![Rational::zero(); n * n];
    for k in 1..=n {
        let mut next = vec![Rational::zero(); n * n];
        for (i, row) in rows.iter().enumerate() {
            for (l, a) in row {
                for j in 0..n {
                    let p = &prev[l * n + j];
                    if !p.is_zero() {
                        next[i * n + j] += a * p;
                    }
                }
            }
            next[i * n + i] += &coeffs[n - k + 1];
        }
        let mut trace = Rational::zero();
        for (i, row) in rows.iter().enumerate() {
            for (l, a) in row {
                trace += a * &next[l * n + i];
            }
        }
        coeffs[n - k] = -trace / int(k as i64);
        prev = next;
    }
    Polynomial::new(coeffs)
}

/// A forest whose vertices remember their degree in an ambient graph.
/// Edge weights are computed from the ambient degrees, so the forest
/// stands for a principal submatrix of the ambient extended adjacency
/// matrix rather than the extended adjacency matrix of the forest itself.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeLabeledForest {
    forest: Graph,
    ambient_degree: Vec<usize>,
}

impl DegreeLabeledForest {
    pub fn new(forest: Graph, ambient_degree: Vec<usize>) -> Result<Self> {
        if ambient_degree.len() != forest.order() {
            return Err(Error::InvalidArgument(format!(
                "{} ambient labels for {} vertices",
                ambient_degree.len(),
                forest.order()
            )));
        }
        let components = count_components(&forest);
        if forest.size() + components != forest.order() {
            return Err(Error::CyclicForest);
        }
        for (v, &ambient) in ambient_degree.iter().enumerate() {
            let inside = forest.degree(v);
            if ambient < inside.max(1) {
                return Err(Error::AmbientDegreeTooSmall {
                    vertex: v,
                    ambient,
                    forest: inside,
                });
            }
        }
        Ok(DegreeLabeledForest {
            forest,
            ambient_degree,
        })
    }

    /// A tree labelled with its own degrees (so its matrix is `A_ex(tree)`).
    pub fn from_tree(tree: &Graph) -> Result<Self> {
        if !tree.is_tree() {
            return Err(Error::NotATree);
        }
        Self::new(tree.clone(), tree.degrees().to_vec())
    }

    /// The subgraph of `g` induced by `vertices` (relabelled `0..k` in the
    /// given order), labelled with degrees measured in `g`.
    pub fn induced(g: &Graph, vertices: &[usize]) -> Result<Self> {
        let mut index = vec![usize::MAX; g.order()];
        for (k, &v) in vertices.iter().enumerate() {
            if v >= g.order() {
                return Err(Error::OutOfRange {
                    what: "vertex",
                    value: v as i64,
                    expected: "below the graph order",
                });
            }
            index[v] = k;
        }
        let edges = g
            .edges()
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let forest = Graph::from_edge_list(vertices.len(), edges)?;
        let ambient = vertices.iter().map(|&v| g.degree(v)).collect();
        Self::new(forest, ambient)
    }

    pub fn forest(&self) -> &Graph {
        &self.forest
    }

    pub fn ambient_degree(&self) -> &[usize] {
        &self.ambient_degree
    }

    /// The principal submatrix this forest stands for.
    pub fn matrix(&self) -> RationalSymMatrix {
        let mut m = RationalSymMatrix::zeros(self.forest.order());
        for &(u, v) in self.forest.edges() {
            let w = exmatrix::weight(self.ambient_degree[u], self.ambient_degree[v])
                .expect("ambient degrees are positive");
            m.set_sym(u, v, w);
        }
        m
    }
}

fn count_components(g: &Graph) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Vertex subset as a bitset; the memo key of the recursion.
#[derive(Clone, PartialEq, Eq, Hash)]
struct VertexSet(Vec<u64>);

impl VertexSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *words.last_mut().expect("n > 0") = (1u64 << (n % 64)) - 1;
        }
        VertexSet(words)
    }

    fn empty(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(64)])
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct ForestRecursion<'a> {
    forest: &'a DegreeLabeledForest,
    memo: HashMap<VertexSet, Polynomial>,
}

impl ForestRecursion<'_> {
    /// Product over connected components of `set`.
    fn subforest(&mut self, set: &VertexSet) -> Polynomial {
        let g = &self.forest.forest;
        let n = g.order();
        let mut seen = VertexSet::empty(n);
        let mut result = Polynomial::one();
        for s in set.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            comp.insert(s);
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if set.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            result = &result * &self.tree(comp);
        }
        result
    }

    /// Connected component: split at the edge joining its smallest leaf
    /// `u` to that leaf's neighbour `v`.
    fn tree(&mut self, comp: VertexSet) -> Polynomial {
        if let Some(p) = self.memo.get(&comp) {
            return p.clone();
        }
        let g = &self.forest.forest;
        let result = if comp.len() == 1 {
            Polynomial::x()
        } else {
            let active_neighbors =
                |v: usize| g.neighbors(v).iter().copied().filter(|&w| comp.contains(w));
            let u = comp
                .iter()
                .find(|&v| active_neighbors(v).count() == 1)
                .expect("a tree with two or more vertices has a leaf");
            let v = active_neighbors(u).next().expect("leaf has a neighbour");
            let amb = &self.forest.ambient_degree;
            let w = exmatrix::weight(amb[u], amb[v]).expect("ambient degrees are positive");

            let mut without_u = comp.clone();
            without_u.remove(u);
            let mut without_uv = without_u.clone();
            without_uv.remove(v);

            let first = Polynomial::x() * self.tree(without_u);
            let second = self.subforest(&without_uv).scale(&(&w * &w));
            &first - &second
        };
        self.memo.insert(comp, result.clone());
        result
    }
}

/// Characteristic polynomial of the principal submatrix described by a
/// degree-labelled forest, by recursive edge deletion.
pub fn charpoly_forest(f: &DegreeLabeledForest) -> Polynomial {
    let mut rec = ForestRecursion {
        forest: f,
        memo: HashMap::new(),
    };
    rec.subforest(&VertexSet::full(f.forest.order()))
}

/// `phi(A(P_n))` from `phi(P_n) = x phi(P_{n-1}) - phi(P_{n-2})`, with
/// `phi(P_1) = x` and `phi(P_2) = x^2 - 1`.
pub fn path_adjacency_charpoly(n: usize) -> Result<Polynomial> {
    check_range("n", n, 1, usize::MAX, "at least 1")?;
    let mut prev = Polynomial::one(); // P_0
    let mut cur = Polynomial::x();
    for _ in 1..n {
        let next = &(Polynomial::x() * cur.clone()) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `x^2 phi(P_{n-2}) - 2x (5/4)^2 phi(P_{n-3}) + (5/4)^4 phi(P_{n-4})`,
/// the expansion of `phi(A_ex(P_n))` obtained by removing both pendant edges.
pub fn extended_path_charpoly_expansion(n: usize) -> Result<Polynomial> {
    check_range("n", n, 5, usize::MAX, "at least 5")?;
    let w2 = frac(25, 16);
    let a = path_adjacency_charpoly(n - 2)?.shift(2);
    let b = path_adjacency_charpoly(n - 3)?.shift(1).scale(&(int(2) * &w2));
    let c = path_adjacency_charpoly(n - 4)?.scale(&(&w2 * &w2));
    Ok(&(&a - &b) + &c)
}

/// Holds `(n-3)^2`, the squared hub degree shared by the closed forms below.
struct TreeConstants {
    q: Rational,
}

impl TreeConstants {
    fn new(n: usize) -> Self {
        let m = int(n as i64 - 3);
        TreeConstants { q: &m * &m }
    }

    /// `leaves * [(n-3)^2 + 1]^2 / (4 (n-3)^2)`: squared leaf weights at a hub of degree `n-3`.
    fn leaf_mass(&self, leaves: i64) -> Rational {
        let s = &self.q + int(1);
        int(leaves) * &s * &s / (int(4) * &self.q)
    }

    /// `[(n-3)^2 + k^2]^2 / (denominator (n-3)^2)`.
    fn hub_edge(&self, k: i64, denominator: i64) -> Rational {
        let s = &self.q + int(k * k);
        &s * &s / (int(denominator) * &self.q)
    }
}

/// Quartic factor of `phi(A_ex(T2(n))) = x^{n-4} g2(x)`.
pub fn g2(n: usize) -> Result<Polynomial> {
    check_range("n", n, 7, usize::MAX, "at least 7")?;
    let c = TreeConstants::new(n);
    let a = Polynomial::x_squared_minus(c.leaf_mass(n as i64 - 4));
    let first = &a * &Polynomial::x_squared_minus(frac(41, 16));
    let second = Polynomial::x_squared_minus(frac(25, 16)).scale(&c.hub_edge(2, 16));
    Ok(&first - &second)
}

/// Quartic factor of `phi(A_ex(T3(n))) = x^{n-4} g3(x)`.
pub fn g3(n: usize) -> Result<Polynomial> {
    check_range("n", n, 7, usize::MAX, "at least 7")?;
    let c = TreeConstants::new(n);
    let a = Polynomial::x_squared_minus(c.leaf_mass(n as i64 - 4));
    let first = &a * &Polynomial::x_squared_minus(frac(50, 9));
    let second = Polynomial::monomial(c.hub_edge(3, 36), 2);
    Ok(&first - &second)
}

/// Sextic factor of `phi(A_ex(T4(n))) = x^{n-6} g4(x)`.
pub fn g4(n: usize) -> Result<Polynomial> {
    check_range("n", n, 8, usize::MAX, "at least 8")?;
    let c = TreeConstants::new(n);
    let a = Polynomial::x_squared_minus(c.leaf_mass(n as i64 - 5));
    let pendant = Polynomial::x_squared_minus(frac(25, 16));
    let first = &a * &pendant.pow(2);
    let second = &Polynomial::monomial(c.hub_edge(2, 8), 2) * &pendant;
    Ok(&first - &second)
}

/// Upper bound for bisection: `1 + max row sum`.
pub fn matrix_root_bound(m: &RationalSymMatrix) -> f64 {
    rational::to_f64(&m.max_abs_row_sum()) + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exmatrix::{adjacency, extended_adjacency};
    use crate::family::Family;

    fn fam(s: &str) -> Graph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            charpoly_oracle(&adjacency(&fam("P:2"))),
            Polynomial::from_ints(&[-1, 0, 1])
        );
        assert_eq!(
            charpoly_oracle(&extended_adjacency(&fam("P:3")).unwrap()),
            Polynomial::new(vec![int(0), frac(-25, 8), int(0), int(1)])
        );
        assert_eq!(
            charpoly_oracle(&adjacency(&fam("S:4"))),
            Polynomial::from_ints(&[0, 0, -3, 0, 1])
        );
    }

    #[test]
    fn forest_examples() {
        let p4 = DegreeLabeledForest::from_tree(&fam("P:4")).unwrap();
        let expected = Polynomial::new(vec![frac(625, 256), int(0), frac(-33, 8), int(0), int(1)]);
        assert_eq!(charpoly_forest(&p4), expected);
        assert_eq!(charpoly_oracle(&extended_adjacency(&fam("P:4")).unwrap()), expected);

        let single = DegreeLabeledForest::new(fam("P:1"), vec![3]).unwrap();
        assert_eq!(charpoly_forest(&single), Polynomial::x());
    }

    #[test]
    fn star_inside_t4_uses_ambient_degrees() {
        for n in 8..=14 {
            let t4 = fam(&format!("T4:{n}"));
            // vertex 0 is the hub, 1..=n-5 its leaves
            let star: Vec<usize> = (0..=n - 5).collect();
            let f = DegreeLabeledForest::induced(&t4, &star).unwrap();
            let s = fam(&format!("S:{}", n - 4));
            let w = exmatrix::weight(n - 3, 1).unwrap();
            let scaled = adjacency(&s).scaled(&w);
            assert_eq!(f.matrix(), scaled);
            assert_eq!(charpoly_forest(&f), charpoly_oracle(&scaled));
            // and differs from the star's own extended matrix
            assert_ne!(charpoly_forest(&f), charpoly_oracle(&extended_adjacency(&s).unwrap()));
        }
    }

    #[test]
    fn forest_validation() {
        assert_eq!(
            DegreeLabeledForest::new(fam("C:4"), vec![2; 4]),
            Err(Error::CyclicForest)
        );
        assert!(matches!(
            DegreeLabeledForest::new(fam("P:3"), vec![1, 1, 1]),
            Err(Error::AmbientDegreeTooSmall { vertex: 1, .. })
        ));
        assert!(DegreeLabeledForest::new(fam("P:3"), vec![1, 2]).is_err());
    }

    #[test]
    fn disjoint_union_multiplies() {
        let g = Graph::from_edge_list(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let f = DegreeLabeledForest::new(g, vec![1, 1, 1, 2, 1]).unwrap();
        let p = charpoly_forest(&f);
        let e = &Polynomial::from_ints(&[-1, 0, 1])
            * &Polynomial::new(vec![int(0), frac(-25, 8), int(0), int(1)]);
        assert_eq!(p, e);
    }

    #[test]
    fn path_recurrence() {
        assert_eq!(path_adjacency_charpoly(2).unwrap(), Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(path_adjacency_charpoly(3).unwrap(), Polynomial::from_ints(&[0, -2, 0, 1]));
        assert_eq!(
            path_adjacency_charpoly(5).unwrap(),
            Polynomial::from_ints(&[0, 3, 0, -4, 0, 1])
        );
        assert!(path_adjacency_charpoly(0).is_err());
    }

    #[test]
    fn path_expansion_matches_oracle() {
        for n in [5, 6, 12] {
            let oracle = charpoly_oracle(&extended_adjacency(&fam(&format!("P:{n}"))).unwrap());
            assert_eq!(extended_path_charpoly_expansion(n).unwrap(), oracle, "n = {n}");
        }
        assert!(extended_path_charpoly_expansion(4).is_err());
    }

    #[test]
    fn g2_at_twelve_matches_hand_substitution() {
        let expected = &(&Polynomial::x_squared_minus(frac(13448, 81))
            * &Polynomial::x_squared_minus(frac(41, 16)))
            - &Polynomial::x_squared_minus(frac(25, 16)).scale(&frac(7225, 1296));
        assert_eq!(g2(12).unwrap(), expected);
    }

    #[test]
    fn closed_forms_factor_the_oracle_at_twelve() {
        let t2 = charpoly_oracle(&extended_adjacency(&fam("T2:12")).unwrap());
        assert_eq!(g2(12).unwrap().shift(8), t2);
        let t4 = charpoly_oracle(&extended_adjacency(&fam("T4:12")).unwrap());
        assert_eq!(g4(12).unwrap().shift(6), t4);
    }

    #[test]
    fn thresholds() {
        assert!(g2(6).is_err());
        assert!(g3(6).is_err());
        assert!(g4(7).is_err());
        assert_eq!(g4(8).unwrap().degree(), Some(6));
        assert_eq!(g3(7).unwrap().degree(), Some(4));
    }

    #[test]
    fn largest_root_of_p5() {
        let p = path_adjacency_charpoly(5).unwrap();
        let r = crate::polynomial::largest_root(&p, 0.0, 3.0, 1e-12).unwrap();
        assert!((r - 3f64.sqrt()).abs() < 1e-11);
    }
}
