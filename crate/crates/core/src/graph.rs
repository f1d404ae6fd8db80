//! Simple undirected graphs on the vertex set `1..=d`.
//!
//! Vertices are 1-indexed everywhere in the public API. The labeling a graph
//! is built with is part of its identity: closedness, weak closedness and the
//! certificates in [`crate::certify`] all depend on it.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// Largest vertex count accepted by [`hamiltonian_path`] unless a bound is given.
pub const DEFAULT_HAMILTONIAN_BOUND: usize = 20;

/// Default node budget for [`find_labeling`].
pub const DEFAULT_LABELING_BUDGET: u64 = 20_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    d: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph from a pair sequence. Pairs are normalized to `i < j`
    /// and deduplicated.
    pub fn new<I>(d: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if d == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut normalized = Vec::new();
        for (i, j) in edges {
            if i == 0 || j == 0 || i > d || j > d {
                return Err(Error::EndpointOutOfRange(i, j, d));
            }
            if i == j {
                return Err(Error::LoopEdge(i));
            }
            normalized.push((i.min(j), i.max(j)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut neighbors = vec![Vec::new(); d + 1];
        let mut matrix = vec![false; (d + 1) * (d + 1)];
        for &(i, j) in &normalized {
            neighbors[i].push(j);
            neighbors[j].push(i);
            matrix[i * (d + 1) + j] = true;
            matrix[j * (d + 1) + i] = true;
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            d,
            edges: normalized,
            neighbors,
            matrix,
        })
    }

    pub fn empty(d: usize) -> Result<Graph> {
        Graph::new(d, std::iter::empty())
    }

    pub fn complete(d: usize) -> Result<Graph> {
        Graph::new(d, (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))))
    }

    pub fn path(d: usize) -> Result<Graph> {
        Graph::new(d, (1..d).map(|i| (i, i + 1)))
    }

    /// Number of vertices.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v >= 1 && v <= self.d && self.degree(v) == 1
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i <= self.d && j <= self.d && self.matrix[i * (self.d + 1) + j]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.d
    }

    pub fn is_connected(&self) -> bool {
        components_after_removal(self, &[]).len() == 1
    }

    /// The graph in which vertex `v` is renamed `labeling.apply(v)`.
    pub fn relabel(&self, labeling: &Labeling) -> Result<Graph> {
        if labeling.len() != self.d {
            return Err(Error::InvalidLabeling(self.d));
        }
        Graph::new(
            self.d,
            self.edges
                .iter()
                .map(|&(i, j)| (labeling.apply(i), labeling.apply(j))),
        )
    }

    /// Induced subgraph on `keep`, with vertices renamed `1..` in the order of `keep`.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let mut index = vec![0usize; self.d + 1];
        for (pos, &v) in keep.iter().enumerate() {
            index[v] = pos + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| index[i] != 0 && index[j] != 0)
            .map(|&(i, j)| (index[i], index[j]));
        Graph::new(keep.len(), edges)
    }

    /// Neighbor bitmask of every vertex, bit `v - 1` for vertex `v`. Requires `d <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.d <= 64, "bitmask adjacency needs d <= 64");
        (1..=self.d)
            .map(|v| {
                self.neighbors[v]
                    .iter()
                    .fold(0u64, |acc, &w| acc | (1u64 << (w - 1)))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            d: self.d,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::new(doc.d, doc.edges.into_iter().map(|[i, j]| (i, j)))
    }

    /// Text form: the vertex count on the first line, then one `i j` pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.d);
        for &(i, j) in &self.edges {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let d = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace().map(str::parse::<usize>);
            match (parts.next(), parts.next(), parts.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => edges.push((i, j)),
                _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
            }
        }
        Graph::new(d, edges)
    }

    /// Parses either format, choosing JSON when the first non-blank character is `{`.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_text(text)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(d={}, edges={:?})", self.d, self.edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    d: usize,
    edges: Vec<[usize; 2]>,
}

/// A bijection of `1..=d`; vertex `v` receives the new name `perm[v - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    perm: Vec<usize>,
}

impl Labeling {
    pub fn new(perm: Vec<usize>) -> Result<Labeling> {
        let d = perm.len();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &v)| v != i + 1) {
            return Err(Error::InvalidLabeling(d));
        }
        Ok(Labeling { perm })
    }

    pub fn identity(d: usize) -> Labeling {
        Labeling {
            perm: (1..=d).collect(),
        }
    }

    /// The labeling that sends `order[k]` to `k + 1`, i.e. lists the vertices
    /// in their new label order.
    pub fn from_order(order: &[usize]) -> Result<Labeling> {
        let mut perm = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            if v == 0 || v > order.len() || perm[v - 1] != 0 {
                return Err(Error::InvalidLabeling(order.len()));
            }
            perm[v - 1] = k + 1;
        }
        Ok(Labeling { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Labeling {
        let mut inv = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Labeling { perm: inv }
    }
}

/// Connected components of `G \ S`, each sorted, ordered by their minimum vertex.
pub fn components_after_removal(graph: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let d = graph.d();
    let mut gone = vec![false; d + 1];
    for &s in removed {
        if s >= 1 && s <= d {
            gone[s] = true;
        }
    }
    let mut uf = UnionFind::new(d + 1);
    for &(i, j) in graph.edges() {
        if !gone[i] && !gone[j] {
            uf.union(i, j);
        }
    }
    let mut block_of_root = vec![usize::MAX; d + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 1..=d {
        if gone[v] {
            continue;
        }
        let root = uf.find(v);
        if block_of_root[root] == usize::MAX {
            block_of_root[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of_root[root]].push(v);
    }
    blocks
}

/// Number of connected components of `G \ S`.
pub fn component_count(graph: &Graph, removed: &[usize]) -> usize {
    components_after_removal(graph, removed).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingMode {
    /// Every edge `{i,k}` forces `{i,j}` and `{j,k}` for all `i < j < k`.
    Closed,
    /// Every edge `{i,k}` forces `{i,j}` or `{j,k}` for all `i < j < k`.
    WeaklyClosed,
}

impl OrderingMode {
    fn triple_ok(self, left: bool, right: bool) -> bool {
        match self {
            OrderingMode::Closed => left && right,
            OrderingMode::WeaklyClosed => left || right,
        }
    }
}

fn satisfies_ordering(graph: &Graph, labeling: &Labeling, mode: OrderingMode) -> bool {
    let Ok(relabeled) = graph.relabel(labeling) else {
        return false;
    };
    relabeled.edges().iter().all(|&(i, k)| {
        (i + 1..k).all(|j| mode.triple_ok(relabeled.has_edge(i, j), relabeled.has_edge(j, k)))
    })
}

pub fn is_closed_labeling(graph: &Graph, labeling: &Labeling) -> bool {
    satisfies_ordering(graph, labeling, OrderingMode::Closed)
}

pub fn is_weakly_closed_labeling(graph: &Graph, labeling: &Labeling) -> bool {
    satisfies_ordering(graph, labeling, OrderingMode::WeaklyClosed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingSearch {
    Found(Labeling),
    /// The search space was exhausted without a hit.
    Absent,
    BudgetExceeded,
}

impl LabelingSearch {
    pub fn found(&self) -> Option<&Labeling> {
        match self {
            LabelingSearch::Found(l) => Some(l),
            _ => None,
        }
    }
}

/// Backtracking search for a labeling satisfying `mode`.
///
/// Labels are assigned in increasing order; placing label `k` checks every
/// triple whose largest label is `k`, so a rejected prefix is never extended.
/// `budget` bounds the number of placements tried.
pub fn find_labeling(graph: &Graph, mode: OrderingMode, budget: u64) -> LabelingSearch {
    let d = graph.d();
    let mut order: Vec<usize> = Vec::with_capacity(d);
    let mut used = vec![false; d + 1];
    let mut nodes = 0u64;
    match place(graph, mode, &mut order, &mut used, &mut nodes, budget) {
        Some(true) => LabelingSearch::Found(
            Labeling::from_order(&order).expect("search builds a permutation"),
        ),
        Some(false) => LabelingSearch::Absent,
        None => LabelingSearch::BudgetExceeded,
    }
}

/// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
fn place(
    graph: &Graph,
    mode: OrderingMode,
    order: &mut Vec<usize>,
    used: &mut [bool],
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    let d = graph.d();
    if order.len() == d {
        return Some(true);
    }
    for w in 1..=d {
        if used[w] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let k = order.len();
        let consistent = (0..k).all(|i| {
            !graph.has_edge(order[i], w)
                || (i + 1..k).all(|j| {
                    mode.triple_ok(graph.has_edge(order[i], order[j]), graph.has_edge(order[j], w))
                })
        });
        if !consistent {
            continue;
        }
        order.push(w);
        used[w] = true;
        match place(graph, mode, order, used, nodes, budget) {
            Some(false) => {}
            other => return other,
        }
        order.pop();
        used[w] = false;
    }
    Some(false)
}

/// Every connected graph on `1..=d` (labeled, so isomorphic copies repeat),
/// by edge subset. Only sensible for small `d`; refuses `d > 8`.
pub fn connected_graphs(d: usize) -> Result<impl Iterator<Item = Graph>> {
    if d == 0 || d > 8 {
        return Err(Error::BoundExceeded {
            what: "labeled graph enumeration (vertices)",
            size: d as u64,
            bound: 8,
        });
    }
    let pairs: Vec<(usize, usize)> = (1..=d)
        .flat_map(|i| (i + 1..=d).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(d, edges).expect("pairs are valid edges");
        g.is_connected().then_some(g)
    }))
}

/// A Hamiltonian path (as a vertex sequence) if one exists.
///
/// Exact dynamic programming over vertex subsets; errors when `d` exceeds `bound`.
pub fn hamiltonian_path_bounded(graph: &Graph, bound: usize) -> Result<Option<Vec<usize>>> {
    let d = graph.d();
    if d > bound || d > 24 {
        return Err(Error::BoundExceeded {
            what: "hamiltonian path search",
            size: d as u64,
            bound: bound.min(24) as u64,
        });
    }
    if d == 1 {
        return Ok(Some(vec![1]));
    }
    let adj = graph.adjacency_masks();
    let full = (1usize << d) - 1;
    // ends[mask] = set of vertices at which a path covering exactly `mask` can end
    let mut ends = vec![0u32; full + 1];
    for v in 0..d {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let mut e = ends[mask];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = adj[v] as usize & !mask;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    if ends[full] == 0 {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(d);
    let mut mask = full;
    let mut last = ends[full].trailing_zeros() as usize;
    path.push(last + 1);
    while mask.count_ones() > 1 {
        mask &= !(1 << last);
        let candidates = ends[mask] & adj[last] as u32;
        last = candidates.trailing_zeros() as usize;
        path.push(last + 1);
    }
    path.reverse();
    Ok(Some(path))
}

pub fn hamiltonian_path(graph: &Graph) -> Result<Option<Vec<usize>>> {
    hamiltonian_path_bounded(graph, DEFAULT_HAMILTONIAN_BOUND)
}

/// Checks that `path` visits every vertex exactly once along edges of `graph`.
pub fn is_hamiltonian_path(graph: &Graph, path: &[usize]) -> bool {
    let d = graph.d();
    if path.len() != d {
        return false;
    }
    let mut seen = vec![false; d + 1];
    for &v in path {
        if v == 0 || v > d || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    path.windows(2).all(|w| graph.has_edge(w[0], w[1]))
}

/// Two-coloring by BFS, the smallest vertex of every component in the first class.
pub fn bipartition(graph: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = graph.d();
    let mut color: Vec<Option<bool>> = vec![None; d + 1];
    for start in 1..=d {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in graph.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for v in 1..=d {
        if color[v] == Some(false) {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    Some((a, b))
}
