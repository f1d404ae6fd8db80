//! Cut sets and the minimal primes `p_S` of a binomial edge ideal.
//!
//! For a connected graph `G` on `[d]`, the minimal primes of `J_G` are the
//! ideals `p_S` with `S = ∅` or `c(S \ {s}) < c(S)` for every `s ∈ S`, where
//! `c` counts connected components of `G \ S`. Each has height
//! `|S| + d - c(S)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components_after_removal, hamiltonian_path, Graph, Labeling};

/// Default cap on the number of subsets visited by [`enumerate_minimal_primes`] (`2^22`).
pub const DEFAULT_SUBSET_BOUND: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MinimalPrime {
    #[serde(rename = "S")]
    pub cut_set: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub height: u32,
}

impl MinimalPrime {
    /// Packages `S` with the component partition of `G \ S` and its height.
    /// Does not check that `S` is a cut set.
    pub fn from_set(graph: &Graph, cut_set: &[usize]) -> MinimalPrime {
        let mut cut_set = cut_set.to_vec();
        cut_set.sort_unstable();
        cut_set.dedup();
        let components = components_after_removal(graph, &cut_set);
        let height = (cut_set.len() + graph.d() - components.len()) as u32;
        MinimalPrime {
            cut_set,
            components,
            height,
        }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Block index of every vertex (`None` for vertices of `S`), indexed by label.
    pub fn block_index(&self, d: usize) -> Vec<Option<usize>> {
        let mut index = vec![None; d + 1];
        for (b, block) in self.components.iter().enumerate() {
            for &v in block {
                index[v] = Some(b);
            }
        }
        index
    }

    /// The same prime after renaming vertex `v` to `labeling.apply(v)`.
    pub fn relabel(&self, labeling: &Labeling) -> MinimalPrime {
        let mut cut_set: Vec<usize> = self.cut_set.iter().map(|&v| labeling.apply(v)).collect();
        cut_set.sort_unstable();
        let mut components: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|b| {
                let mut b: Vec<usize> = b.iter().map(|&v| labeling.apply(v)).collect();
                b.sort_unstable();
                b
            })
            .collect();
        components.sort_unstable_by_key(|b| b[0]);
        MinimalPrime {
            cut_set,
            components,
            height: self.height,
        }
    }
}

fn check_connected(graph: &Graph) -> Result<()> {
    if graph.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// `S = ∅`, or removing any single element of `S` merges components.
pub fn is_cut_set(graph: &Graph, set: &[usize]) -> Result<bool> {
    check_connected(graph)?;
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > graph.d()) {
        return Err(Error::VertexOutOfRange(v, graph.d()));
    }
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let c = components_after_removal(graph, &set).len();
    Ok(set.iter().all(|&s| {
        let rest: Vec<usize> = set.iter().copied().filter(|&t| t != s).collect();
        components_after_removal(graph, &rest).len() < c
    }))
}

/// Components of the vertices in `remaining` under bitmask adjacency.
fn count_components(mut remaining: u64, adj: &[u64]) -> u8 {
    let mut count = 0u8;
    while remaining != 0 {
        let mut comp = remaining & remaining.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut reach = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                reach |= adj[v];
            }
            frontier = reach & remaining & !comp;
            comp |= frontier;
        }
        remaining &= !comp;
        count += 1;
    }
    count
}

fn mask_to_set(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

pub fn enumerate_minimal_primes(graph: &Graph) -> Result<Vec<MinimalPrime>> {
    enumerate_minimal_primes_bounded(graph, DEFAULT_SUBSET_BOUND)
}

/// All minimal primes, ordered by `|S|` and then lexicographically on `S`.
///
/// Tabulates `c(S)` for every subset, so the work is `2^d` component counts;
/// fails when `2^d` exceeds `subset_bound`.
pub fn enumerate_minimal_primes_bounded(
    graph: &Graph,
    subset_bound: u64,
) -> Result<Vec<MinimalPrime>> {
    check_connected(graph)?;
    let d = graph.d();
    if d >= 40 || (1u64 << d) > subset_bound {
        return Err(Error::BoundExceeded {
            what: "cut-set enumeration (2^d subsets)",
            size: if d >= 64 { u64::MAX } else { 1u64 << d },
            bound: subset_bound,
        });
    }
    let adj = graph.adjacency_masks();
    let full: u64 = (1u64 << d) - 1;
    let total = 1usize << d;
    let counts: Vec<u8> = (0..total)
        .map(|removed| count_components(full & !(removed as u64), &adj))
        .collect();

    let mut cut_sets: Vec<Vec<usize>> = (0..total)
        .filter(|&mask| {
            let c = counts[mask];
            let mut bits = mask;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                bits &= bits - 1;
                if counts[mask ^ b] >= c {
                    return false;
                }
            }
            true
        })
        .map(|mask| mask_to_set(mask as u64))
        .collect();
    cut_sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(cut_sets
        .iter()
        .map(|s| MinimalPrime::from_set(graph, s))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub ass_count: usize,
    pub unmixed: bool,
    pub accessible: bool,
    pub traceable: bool,
}

pub fn classify(graph: &Graph) -> Result<Classification> {
    let primes = enumerate_minimal_primes(graph)?;
    classify_primes(graph, &primes)
}

/// Classification from an already enumerated prime list.
pub fn classify_primes(graph: &Graph, primes: &[MinimalPrime]) -> Result<Classification> {
    let d = graph.d() as u32;
    let unmixed = primes.windows(2).all(|w| w[0].height == w[1].height);
    debug_assert_eq!(unmixed, primes.iter().all(|p| p.height + 1 == d));
    let sets: HashSet<&[usize]> = primes.iter().map(|p| p.cut_set.as_slice()).collect();
    let accessible = unmixed
        && primes.iter().filter(|p| !p.cut_set.is_empty()).all(|p| {
            p.cut_set.iter().any(|&s| {
                let rest: Vec<usize> = p.cut_set.iter().copied().filter(|&t| t != s).collect();
                sets.contains(rest.as_slice())
            })
        });
    let traceable = hamiltonian_path(graph)?.is_some();
    Ok(Classification {
        ass_count: primes.len(),
        unmixed,
        accessible,
        traceable,
    })
}

/// JSON shape of the `analyze` prime report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeReport {
    pub cut_sets: Vec<MinimalPrime>,
    #[serde(flatten)]
    pub classification: Classification,
}

pub fn prime_report(graph: &Graph) -> Result<PrimeReport> {
    let cut_sets = enumerate_minimal_primes(graph)?;
    let classification = classify_primes(graph, &cut_sets)?;
    Ok(PrimeReport {
        cut_sets,
        classification,
    })
}
