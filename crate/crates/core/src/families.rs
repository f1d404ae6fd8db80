//! Generators for the graph families and gluing operations, each emitted in
//! the labeling the symbolic F-splitting arguments rely on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Labeling};

/// Complete multipartite graph; part `i` occupies a consecutive block of labels.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::InvalidFamily("multipartite graph needs at least one part".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::InvalidFamily("parts must be nonempty".into()));
    }
    if sizes.len() == 1 && sizes[0] != 1 {
        return Err(Error::InvalidFamily(
            "a single part must be a single vertex (otherwise the graph is edgeless)".into(),
        ));
    }
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut next = 1;
    for &s in sizes {
        blocks.push(next..next + s);
        next += s;
    }
    let mut edges = Vec::new();
    for (a, block) in blocks.iter().enumerate() {
        for other in &blocks[a + 1..] {
            for u in block.clone() {
                for v in other.clone() {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::new(next - 1, edges)
}

/// Leg counts `a_1, ..., a_l` of a caterpillar's spine vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaterpillarSpec {
    legs: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(legs: Vec<usize>) -> Result<Self> {
        if legs.len() < 2 {
            return Err(Error::InvalidFamily("caterpillar spine needs at least 2 vertices".into()));
        }
        if legs[0] != 0 || legs[legs.len() - 1] != 0 {
            return Err(Error::InvalidFamily("spine endpoints carry no legs".into()));
        }
        Ok(CaterpillarSpec { legs })
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn spine_len(&self) -> usize {
        self.legs.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.legs.len() + self.legs.iter().sum::<usize>()
    }

    /// Spine labels `v_1 = 1`, `v_{i+1} = v_i + a_i + 1`.
    pub fn spine(&self) -> Vec<usize> {
        let mut spine = Vec::with_capacity(self.legs.len());
        let mut v = 1;
        for &a in &self.legs {
            spine.push(v);
            v += a + 1;
        }
        spine
    }

    /// Leg count of the spine vertex labeled `v`, or `None` if `v` is a leg.
    pub fn legs_at(&self, v: usize) -> Option<usize> {
        self.spine()
            .iter()
            .position(|&s| s == v)
            .map(|i| self.legs[i])
    }
}

pub fn caterpillar(spec: &CaterpillarSpec) -> Result<Graph> {
    let spine = spec.spine();
    let mut edges = Vec::new();
    for (i, &v) in spine.iter().enumerate() {
        if let Some(&w) = spine.get(i + 1) {
            edges.push((v, w));
        }
        for k in 1..=spec.legs[i] {
            edges.push((v, v + k));
        }
    }
    Graph::new(spec.vertex_count(), edges)
}

/// Join of two graphs; the second operand is shifted past the first.
pub fn join(first: &Graph, second: &Graph) -> Result<Graph> {
    let shift = first.d();
    let mut edges: Vec<(usize, usize)> = first.edges().to_vec();
    edges.extend(second.edges().iter().map(|&(i, j)| (i + shift, j + shift)));
    for u in first.vertices() {
        for v in second.vertices() {
            edges.push((u, v + shift));
        }
    }
    Graph::new(first.d() + second.d(), edges)
}

/// Join of `K_{n0}` (labels `1..=n0`) with the disjoint union of complete
/// graphs of the given sizes, each on a consecutive label block.
pub fn join_of_completes(n0: usize, parts: &[usize]) -> Result<Graph> {
    if n0 == 0 || parts.contains(&0) {
        return Err(Error::InvalidFamily("all complete pieces need at least one vertex".into()));
    }
    let mut union_edges = Vec::new();
    let mut offset = 0;
    for &n in parts {
        for i in 1..=n {
            for j in i + 1..=n {
                union_edges.push((offset + i, offset + j));
            }
        }
        offset += n;
    }
    let union = if offset == 0 {
        None
    } else {
        Some(Graph::new(offset, union_edges)?)
    };
    let center = Graph::complete(n0)?;
    match union {
        Some(u) => join(&center, &u),
        None => Ok(center),
    }
}

/// `G_m`: vertices `1..=2m`, edges `{a, b}` for odd `a` < even `b`.
pub fn g_m(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidFamily("G_m needs m >= 1".into()));
    }
    let d = 2 * m;
    let edges = (1..=d)
        .step_by(2)
        .flat_map(move |a| (a + 1..=d).step_by(2).map(move |b| (a, b)));
    Graph::new(d, edges)
}

/// Relabeling that swaps `2k - 1` and `2k` for every `k`.
pub fn parity_swap(d: usize) -> Labeling {
    let perm = (1..=d)
        .map(|g| if g % 2 == 0 { g - 1 } else if g < d { g + 1 } else { g })
        .collect();
    Labeling::new(perm).expect("parity swap is a permutation")
}

/// `F_m`: `G_m` with every even vertex `g` renamed `g - 1` and every odd one `g + 1`.
pub fn f_m(m: usize) -> Result<Graph> {
    let g = g_m(m)?;
    g.relabel(&parity_swap(g.d()))
}

fn leaf_neighbor(graph: &Graph, leaf: usize) -> Result<usize> {
    if !graph.is_leaf(leaf) {
        return Err(Error::NotALeaf(leaf));
    }
    Ok(graph.neighbors(leaf)[0])
}

/// `(G, g) * (H, h)`: identify the leaves `g` and `h`.
///
/// `G` keeps its labels; the remaining vertices of `H` follow in increasing
/// order. For `g = d_G` and `h = 1` this is the shift `v -> v + d_G - 1`.
pub fn star_compose(g_graph: &Graph, g: usize, h_graph: &Graph, h: usize) -> Result<Graph> {
    leaf_neighbor(g_graph, g)?;
    leaf_neighbor(h_graph, h)?;
    let dg = g_graph.d();
    let mut map = vec![0usize; h_graph.d() + 1];
    let mut next = dg + 1;
    for v in h_graph.vertices() {
        if v == h {
            map[v] = g;
        } else {
            map[v] = next;
            next += 1;
        }
    }
    let mut edges = g_graph.edges().to_vec();
    edges.extend(h_graph.edges().iter().map(|&(i, j)| (map[i], map[j])));
    Graph::new(dg + h_graph.d() - 1, edges)
}

/// `(G, g) ∘ (H, h)`: identify the neighbors `g'` and `h'` of the leaves and
/// delete both leaves.
///
/// `G \ g` is relabeled order-preservingly onto `1..d_G - 1`; the vertices of
/// `H` other than `h, h'` follow in increasing order. For `g = d_G`, `h = 1`
/// (with `h' = 2`) this is the shift `v -> v + d_G - 3`.
pub fn circ_compose(g_graph: &Graph, g: usize, h_graph: &Graph, h: usize) -> Result<Graph> {
    let g_nb = leaf_neighbor(g_graph, g)?;
    let h_nb = leaf_neighbor(h_graph, h)?;
    let dg = g_graph.d();
    let shrink = |v: usize| if v > g { v - 1 } else { v };
    let mut map = vec![0usize; h_graph.d() + 1];
    let mut next = dg;
    for v in h_graph.vertices() {
        if v == h {
            continue;
        }
        if v == h_nb {
            map[v] = shrink(g_nb);
        } else {
            map[v] = next;
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = g_graph
        .edges()
        .iter()
        .filter(|&&(i, j)| i != g && j != g)
        .map(|&(i, j)| (shrink(i), shrink(j)))
        .collect();
    edges.extend(
        h_graph
            .edges()
            .iter()
            .filter(|&&(i, j)| i != h && j != h)
            .map(|&(i, j)| (map[i], map[j])),
    );
    let d = (dg + h_graph.d())
        .checked_sub(3)
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidFamily("composition would have no vertices".into()))?;
    Graph::new(d, edges)
}

/// A named family member, used by the CLI and by the proof decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyInstance {
    Multipartite(Vec<usize>),
    Caterpillar(CaterpillarSpec),
    JoinOfCompletes { n0: usize, parts: Vec<usize> },
    Gm(usize),
    Fm(usize),
    Path(usize),
    Complete(usize),
}

impl FamilyInstance {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            FamilyInstance::Multipartite(sizes) => complete_multipartite(sizes),
            FamilyInstance::Caterpillar(spec) => caterpillar(spec),
            FamilyInstance::JoinOfCompletes { n0, parts } => join_of_completes(*n0, parts),
            FamilyInstance::Gm(m) => g_m(*m),
            FamilyInstance::Fm(m) => f_m(*m),
            FamilyInstance::Path(n) => Graph::path(*n),
            FamilyInstance::Complete(n) => Graph::complete(*n),
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

fn parse_one(text: &str) -> Result<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("{text:?}: {e}")))
}

impl FromStr for FamilyInstance {
    type Err = Error;

    /// `multipartite:3,2,1`, `caterpillar:0,1,0,0`, `join:1:2,3`, `gm:3`,
    /// `fm:3`, `path:5`, `complete:4`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family spec {s:?} needs name:params")))?;
        match name.trim() {
            "multipartite" => Ok(FamilyInstance::Multipartite(parse_list(rest)?)),
            "caterpillar" => Ok(FamilyInstance::Caterpillar(CaterpillarSpec::new(parse_list(
                rest,
            )?)?)),
            "join" | "join-of-completes" => {
                let (n0, parts) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("join needs n0:parts".into()))?;
                Ok(FamilyInstance::JoinOfCompletes {
                    n0: parse_one(n0)?,
                    parts: parse_list(parts)?,
                })
            }
            "gm" => Ok(FamilyInstance::Gm(parse_one(rest)?)),
            "fm" => Ok(FamilyInstance::Fm(parse_one(rest)?)),
            "path" => Ok(FamilyInstance::Path(parse_one(rest)?)),
            "complete" => Ok(FamilyInstance::Complete(parse_one(rest)?)),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FamilyInstance::Multipartite(s) => write!(f, "multipartite:{}", join(s)),
            FamilyInstance::Caterpillar(c) => write!(f, "caterpillar:{}", join(c.legs())),
            FamilyInstance::JoinOfCompletes { n0, parts } => {
                write!(f, "join:{}:{}", n0, join(parts))
            }
            FamilyInstance::Gm(m) => write!(f, "gm:{m}"),
            FamilyInstance::Fm(m) => write!(f, "fm:{m}"),
            FamilyInstance::Path(n) => write!(f, "path:{n}"),
            FamilyInstance::Complete(n) => write!(f, "complete:{n}"),
        }
    }
}
