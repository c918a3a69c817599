//! Graphs, distance matrices, distance-regularity and orbit partitions.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::scheme::{verify_equitable, AssociationScheme, EquitablePartition, IntersectionNumbers};

/// A simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: IntMatrix,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// From a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency(adjacency: IntMatrix) -> Result<Graph> {
        let n = adjacency.rows();
        if adjacency.cols() != n {
            return Err(Error::DimensionMismatch(format!("adjacency is {}x{}", n, adjacency.cols())));
        }
        for r in 0..n {
            for c in 0..n {
                let v = adjacency.get(r, c);
                if v != 0 && v != 1 || (r == c && v != 0) {
                    return Err(Error::BadAlphabet { row: r, col: c, value: v });
                }
            }
        }
        if !adjacency.is_symmetric() {
            return Err(Error::NotSymmetric(1));
        }
        let neighbors = (0..n).map(|u| (0..n).filter(|&v| adjacency.get(u, v) == 1).collect()).collect();
        Ok(Graph { adjacency, neighbors })
    }

    /// From 0-based undirected edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut a = IntMatrix::zeros(n, n);
        for &(u, v) in edges {
            let bad = if u >= n { Some(u) } else if v >= n { Some(v) } else { None };
            if let Some(index) = bad {
                return Err(Error::IndexOutOfRange { index, len: n });
            }
            if u == v {
                return Err(Error::BadAlphabet { row: u, col: v, value: 1 });
            }
            a.set(u, v, 1);
            a.set(v, u, 1);
        }
        Graph::from_adjacency(a)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }
    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v) == 1
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.neighbors[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// All-pairs distances, row-major.
    pub fn distances(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let mut dist = vec![usize::MAX; n];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &v in &self.neighbors[u] {
                        if dist[v] == usize::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect();
        if let Some(pos) = rows[0].iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected(pos));
        }
        Ok(rows.concat())
    }
}

/// `A_0..A_d` with `A_i[u][v] = 1` iff `δ(u, v) = i`.
pub fn distance_matrices(graph: &Graph) -> Result<Vec<IntMatrix>> {
    let n = graph.vertex_count();
    let dist = graph.distances()?;
    let diameter = dist.iter().copied().max().unwrap_or(0);
    let mut mats = vec![IntMatrix::zeros(n, n); diameter + 1];
    for (pos, &d) in dist.iter().enumerate() {
        mats[d].set(pos / n, pos % n, 1);
    }
    Ok(mats)
}

/// `{b_0..b_{d-1}; c_1..c_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

/// Where a graph fails to be distance-regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotDrgWitness {
    pub u: usize,
    pub v: usize,
    pub distance: usize,
    /// Which parameter differs: "a", "b" or "c".
    pub parameter: &'static str,
    pub expected: i64,
    pub found: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrgResult {
    Drg(IntersectionArray),
    NotDrg(NotDrgWitness),
}

impl IntersectionArray {
    /// Validates the boundary conventions and that the valencies are integral.
    pub fn new(b: Vec<i64>, c: Vec<i64>) -> Result<IntersectionArray> {
        if b.is_empty() || b.len() != c.len() {
            return Err(Error::NotDrg(format!("array lengths {} and {}", b.len(), c.len())));
        }
        if c[0] != 1 {
            return Err(Error::NotDrg(format!("c_1 = {}", c[0])));
        }
        let k = b[0];
        if b.iter().chain(&c).any(|&x| x <= 0 || x > k) {
            return Err(Error::NotDrg("parameters must lie in 1..=k".into()));
        }
        let array = IntersectionArray { b, c };
        for i in 1..=array.diameter() {
            if array.b(i) + array.c(i) > k {
                return Err(Error::NotDrg(format!("b_{i} + c_{i} > k")));
            }
        }
        array.valencies()?;
        Ok(array)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }
    pub fn k(&self) -> i64 {
        self.b[0]
    }
    /// `b_i`, with `b_d = 0`.
    pub fn b(&self, i: usize) -> i64 {
        self.b.get(i).copied().unwrap_or(0)
    }
    /// `c_i`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }
    pub fn a(&self, i: usize) -> i64 {
        self.k() - self.b(i) - self.c(i)
    }

    /// `k_0 = 1`, `k_{i+1} = k_i b_i / c_{i+1}`.
    pub fn valencies(&self) -> Result<Vec<i64>> {
        let mut ks = vec![1i64];
        for i in 0..self.diameter() {
            let num = ks[i].checked_mul(self.b(i)).ok_or(Error::Overflow("valency"))?;
            if num % self.c(i + 1) != 0 {
                return Err(Error::NotDrg(format!("k_{} is not integral", i + 1)));
            }
            ks.push(num / self.c(i + 1));
        }
        Ok(ks)
    }

    pub fn vertex_count(&self) -> Result<i64> {
        Ok(self.valencies()?.iter().sum())
    }

    /// Intersection numbers from the array alone, via the regular
    /// representation `L_{i+1} = (L_1 L_i - b_{i-1} L_{i-1} - a_i L_i) / c_{i+1}`
    /// where `(L_i)[k][j] = p_{i,j}^k`.
    pub fn intersection_numbers(&self) -> Result<IntersectionNumbers> {
        let d = self.diameter();
        let mut l1 = IntMatrix::zeros(d + 1, d + 1);
        for j in 0..=d {
            if j > 0 {
                l1.set(j - 1, j, self.b(j - 1));
            }
            l1.set(j, j, self.a(j));
            if j < d {
                l1.set(j + 1, j, self.c(j + 1));
            }
        }
        let mut ls = vec![IntMatrix::identity(d + 1), l1.clone()];
        for i in 1..d {
            let mut next = l1.mul(&ls[i])?.sub(&ls[i - 1].scale(self.b(i - 1))?)?.sub(&ls[i].scale(self.a(i))?)?;
            let c = self.c(i + 1);
            for r in 0..=d {
                for col in 0..=d {
                    let v = next.get(r, col);
                    if v % c != 0 {
                        return Err(Error::NotDrg(format!("p_{{{},{col}}}^{r} is not integral", i + 1)));
                    }
                    next.set(r, col, v / c);
                }
            }
            ls.push(next);
        }
        let mut out = IntersectionNumbers::zeros(d);
        for (i, l) in ls.iter().enumerate() {
            for j in 0..=d {
                for k in 0..=d {
                    let v = l.get(k, j);
                    if v < 0 {
                        return Err(Error::NotDrg(format!("p_{{{i},{j}}}^{k} = {v} is negative")));
                    }
                    out.set(i, j, k, v);
                }
            }
        }
        Ok(out)
    }
}

/// Checks every pair at each distance for constant `a_i`, `b_i`, `c_i`.
pub fn intersection_array(graph: &Graph) -> Result<DrgResult> {
    let n = graph.vertex_count();
    let dist = graph.distances()?;
    let diameter = dist.iter().copied().max().unwrap_or(0);
    // (a, b, c) seen first at each distance
    let mut params: Vec<Option<(i64, i64, i64)>> = vec![None; diameter + 1];
    for u in 0..n {
        for v in 0..n {
            let i = dist[u * n + v];
            let (mut a, mut b, mut c) = (0i64, 0i64, 0i64);
            for &w in graph.neighbors(v) {
                let dw = dist[u * n + w];
                if dw + 1 == i {
                    c += 1;
                } else if dw == i {
                    a += 1;
                } else {
                    b += 1;
                }
            }
            match params[i] {
                None => params[i] = Some((a, b, c)),
                Some((ea, eb, ec)) => {
                    let diff = [("a", ea, a), ("b", eb, b), ("c", ec, c)].into_iter().find(|&(_, e, f)| e != f);
                    if let Some((parameter, expected, found)) = diff {
                        return Ok(DrgResult::NotDrg(NotDrgWitness { u, v, distance: i, parameter, expected, found }));
                    }
                }
            }
        }
    }
    let params: Vec<(i64, i64, i64)> = params.into_iter().map(|p| p.expect("every distance occurs")).collect();
    let b = params[..diameter].iter().map(|p| p.1).collect();
    let c = params[1..].iter().map(|p| p.2).collect();
    Ok(DrgResult::Drg(IntersectionArray { b, c }))
}

/// The distance scheme of a distance-regular graph.
pub fn scheme_from_drg(graph: &Graph) -> Result<AssociationScheme> {
    let array = match intersection_array(graph)? {
        DrgResult::Drg(a) => a,
        DrgResult::NotDrg(w) => {
            return Err(Error::NotDrg(format!(
                "pair ({}, {}) at distance {} has {} = {} instead of {}",
                w.u, w.v, w.distance, w.parameter, w.found, w.expected
            )))
        }
    };
    let scheme = AssociationScheme::from_matrices(distance_matrices(graph)?)?;
    let d = scheme.classes();
    for i in 0..=d {
        for j in 0..=d {
            for k in 0..=d {
                if (i + j < k || k + i < j || k + j < i) && scheme.p(i, j, k) != 0 {
                    return Err(Error::InternalInconsistency(format!("p_{{{i},{j}}}^{k} should vanish")));
                }
            }
        }
    }
    if scheme.intersection_numbers() != &array.intersection_numbers()? {
        return Err(Error::InternalInconsistency("intersection numbers disagree with the array".into()));
    }
    Ok(scheme)
}

/// A group given by generating permutations of `{0..degree}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<PermutationGroup> {
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(gi));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPermutation(gi));
                }
                seen[x] = true;
            }
        }
        Ok(PermutationGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> PermutationGroup {
        PermutationGroup { degree, generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Checks each generator preserves adjacency.
    pub fn check_automorphisms(&self, graph: &Graph) -> Result<()> {
        if graph.vertex_count() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "group of degree {} on a graph with {} vertices",
                self.degree,
                graph.vertex_count()
            )));
        }
        for (gi, g) in self.generators.iter().enumerate() {
            for (u, v) in graph.edges() {
                if !graph.has_edge(g[u], g[v]) {
                    return Err(Error::NotAnAutomorphism { generator: gi, u, v });
                }
            }
        }
        Ok(())
    }

    /// Orbits sorted by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for (x, &y) in g.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        let mut index = vec![usize::MAX; self.degree];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.degree {
            let root = find(&mut parent, x);
            if index[root] == usize::MAX {
                index[root] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[index[root]].push(x);
        }
        orbits
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub partition: EquitablePartition,
    pub equal_lengths: bool,
}

/// Orbit partition of a verified automorphism group, asserted equitable for
/// every distance matrix.
pub fn orbit_partition(group: &PermutationGroup, graph: &Graph) -> Result<OrbitPartition> {
    group.check_automorphisms(graph)?;
    let partition = EquitablePartition::new(group.degree(), group.orbits())?;
    let check = verify_equitable(&partition, &distance_matrices(graph)?)?;
    if let Some((matrix, a, b, axis)) = check.witness {
        return Err(Error::InternalInconsistency(format!(
            "orbit partition not equitable for A_{matrix}, block ({a},{b}) {axis} sums"
        )));
    }
    let equal_lengths = partition.equal_cell_size().is_some();
    Ok(OrbitPartition { partition, equal_lengths })
}

/// Small named graph families.
pub mod families {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
        Graph::from_edges(n, &edges).expect("path")
    }

    /// `K_{m,m}` with parts `{0..m}` and `{m..2m}`.
    pub fn complete_bipartite(m: usize) -> Graph {
        let edges: Vec<_> = (0..m).flat_map(|u| (m..2 * m).map(move |v| (u, v))).collect();
        Graph::from_edges(2 * m, &edges).expect("complete bipartite")
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star")
    }

    /// Hypercube `Q_m` on `{0..2^m}`, adjacent when differing in one bit.
    pub fn hypercube(m: u32) -> Graph {
        let n = 1usize << m;
        let edges: Vec<_> =
            (0..n).flat_map(|u| (0..m).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)).collect();
        Graph::from_edges(n, &edges).expect("hypercube")
    }

    /// Kneser graph `K(5, 2)`.
    pub fn petersen() -> Graph {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(10, &edges).expect("petersen")
    }
}
