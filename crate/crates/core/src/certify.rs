//! Symbolic F-splitting and strong F-regularity certificates.
//!
//! A certificate checks, for the canonical witness
//! `f = y_1 f_{1,2} f_{2,3} ... f_{d-1,d} x_d`, that `f ∈ p_S^{h}` for every
//! minimal prime (by counting a lower bound on the `p_S`-order of each
//! factor) and that `f^{p-1}` avoids the Frobenius bracket of the maximal
//! ideal. A passing certificate is a proof; a failing one is inconclusive.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{CaterpillarSpec, FamilyInstance};
use crate::graph::{Graph, Labeling};
use crate::poly::{witness_power_outside_frobenius, witness_power_outside_frobenius_unguarded, Atom, FactoredWitness};
use crate::primes::{enumerate_minimal_primes_bounded, is_cut_set, MinimalPrime, DEFAULT_SUBSET_BOUND};

/// Default cap on relabelings examined by the exhaustive search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Hypotheses of the strong F-regularity criterion that are recorded, not computed.
pub const STRONG_F_REGULAR_ASSUMPTIONS: [&str; 2] = [
    "the symbolic Rees algebra localized at the cofactor is strongly F-regular (not verified)",
    "the symbolic Rees algebra is Noetherian (not verified)",
];

/// `[y_1, f_{1,2}, ..., f_{d-1,d}, x_d]` in the graph's current labeling.
/// The minors need not be edges.
pub fn canonical_witness(graph: &Graph) -> Result<FactoredWitness> {
    canonical_witness_for(graph.d())
}

pub fn canonical_witness_for(d: usize) -> Result<FactoredWitness> {
    if d < 2 {
        return Err(Error::WitnessTooSmall(d));
    }
    let mut factors = Vec::with_capacity(d + 1);
    factors.push(Atom::Y(1));
    factors.extend((1..d).map(|i| Atom::Minor(i, i + 1)));
    factors.push(Atom::X(d));
    FactoredWitness::new(d, factors)
}

fn block_of(prime: &MinimalPrime, v: usize) -> Option<usize> {
    prime.components.iter().position(|b| b.binary_search(&v).is_ok())
}

/// Lower bound on the largest `n` with `atom ∈ p_S^n`.
pub fn factor_order(atom: &Atom, prime: &MinimalPrime) -> u32 {
    let in_s = |v: usize| prime.cut_set.binary_search(&v).is_ok();
    match *atom {
        Atom::X(i) | Atom::Y(i) => in_s(i) as u32,
        Atom::Minor(i, j) => match (in_s(i), in_s(j)) {
            (true, true) => 2,
            (true, false) | (false, true) => 1,
            (false, false) => {
                let same = block_of(prime, i).is_some() && block_of(prime, i) == block_of(prime, j);
                same as u32
            }
        },
    }
}

/// Sum of [`factor_order`] over the factors.
pub fn order_lower_bound(witness: &FactoredWitness, prime: &MinimalPrime) -> u32 {
    witness.factors().iter().map(|a| factor_order(a, prime)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    #[serde(rename = "symbolic_f_split")]
    SymbolicFSplit,
    StrongFRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeBound {
    #[serde(rename = "S")]
    pub cut_set: Vec<usize>,
    pub height: u32,
    pub required: u32,
    pub bound: u32,
}

/// The first prime whose bound falls short, with the shortfall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blocking {
    #[serde(rename = "S")]
    pub cut_set: Vec<usize>,
    pub deficit: u32,
}

fn witness_labels<S: Serializer>(w: &FactoredWitness, s: S) -> std::result::Result<S::Ok, S::Error> {
    w.labels().serialize(s)
}

fn labeling_slice<S: Serializer>(l: &Labeling, s: S) -> std::result::Result<S::Ok, S::Error> {
    l.as_slice().serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub p: u64,
    #[serde(serialize_with = "witness_labels")]
    pub witness: FactoredWitness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor_index: Option<usize>,
    pub per_prime: Vec<PrimeBound>,
    pub frobenius_ok: bool,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
    /// `labeling_used[v - 1]` is the label given to input vertex `v`.
    #[serde(serialize_with = "labeling_slice")]
    pub labeling_used: Labeling,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking: Option<Blocking>,
    /// Relabelings examined after the identity failed, when searching.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelings_tried: Option<u64>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} p={} verdict={} frobenius={} labeling={:?}\n",
            match self.kind {
                CertificateKind::SymbolicFSplit => "symbolic_f_split",
                CertificateKind::StrongFRegular => "strong_f_regular",
            },
            self.p,
            if self.passed() { "pass" } else { "fail" },
            self.frobenius_ok,
            self.labeling_used.as_slice()
        );
        out.push_str(&format!("witness {}\n", self.witness.labels().join(" ")));
        for pb in &self.per_prime {
            out.push_str(&format!(
                "S={:?} height={} required={} bound={}\n",
                pb.cut_set, pb.height, pb.required, pb.bound
            ));
        }
        for a in &self.assumptions {
            out.push_str(&format!("assumes: {a}\n"));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub p: u64,
    pub search_labelings: bool,
    /// Relabelings tried by the exhaustive scan.
    pub labeling_budget: u64,
    pub subset_bound: u64,
    /// Labelings tried after the identity and before the exhaustive scan.
    pub hints: Vec<Labeling>,
    /// Skip the `d * (p - 1)` guard on the Frobenius check.
    pub unguarded_frobenius: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            p: 2,
            search_labelings: false,
            labeling_budget: DEFAULT_SEARCH_BUDGET,
            subset_bound: DEFAULT_SUBSET_BOUND,
            hints: Vec::new(),
            unguarded_frobenius: false,
        }
    }
}

fn frobenius_cache() -> &'static Mutex<HashMap<(usize, u64), bool>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), bool>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Frobenius check for the canonical witness on `d` vertices, memoized by `(d, p)`.
pub fn canonical_frobenius_ok(d: usize, p: u64, unguarded: bool) -> Result<bool> {
    if let Some(&ok) = frobenius_cache().lock().expect("cache lock").get(&(d, p)) {
        return Ok(ok);
    }
    let w = canonical_witness_for(d)?;
    let ok = if unguarded {
        witness_power_outside_frobenius_unguarded(&w, p)?
    } else {
        witness_power_outside_frobenius(&w, p)?
    };
    frobenius_cache().lock().expect("cache lock").insert((d, p), ok);
    Ok(ok)
}

struct Setup {
    kind: CertificateKind,
    p: u64,
    witness: FactoredWitness,
    counted: FactoredWitness,
    cofactor_index: Option<usize>,
    frobenius_ok: bool,
    primes: Vec<MinimalPrime>,
}

impl Setup {
    fn evaluate(&self, labeling: &Labeling) -> Certificate {
        let shift = match self.kind {
            CertificateKind::SymbolicFSplit => 0,
            CertificateKind::StrongFRegular => 1,
        };
        let per_prime: Vec<PrimeBound> = self
            .primes
            .iter()
            .map(|prime| {
                let prime = prime.relabel(labeling);
                PrimeBound {
                    bound: order_lower_bound(&self.counted, &prime),
                    required: prime.height.saturating_sub(shift),
                    height: prime.height,
                    cut_set: prime.cut_set,
                }
            })
            .collect();
        let blocking = per_prime.iter().find(|pb| pb.bound < pb.required).map(|pb| Blocking {
            cut_set: pb.cut_set.clone(),
            deficit: pb.required - pb.bound,
        });
        let verdict = if self.frobenius_ok && blocking.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let assumptions = match self.kind {
            CertificateKind::SymbolicFSplit => Vec::new(),
            CertificateKind::StrongFRegular => {
                STRONG_F_REGULAR_ASSUMPTIONS.iter().map(|s| s.to_string()).collect()
            }
        };
        Certificate {
            kind: self.kind,
            p: self.p,
            witness: self.witness.clone(),
            cofactor_index: self.cofactor_index,
            per_prime,
            frobenius_ok: self.frobenius_ok,
            verdict,
            assumptions,
            labeling_used: labeling.clone(),
            blocking,
            labelings_tried: None,
        }
    }
}

/// Lexicographic successor of a permutation, in place.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

fn run(setup: &Setup, d: usize, options: &CertifyOptions) -> Result<Certificate> {
    let identity = Labeling::identity(d);
    let first = setup.evaluate(&identity);
    if first.passed() || !options.search_labelings || !setup.frobenius_ok {
        return Ok(first);
    }
    let mut tried = 0u64;
    for hint in &options.hints {
        if hint.len() != d {
            return Err(Error::InvalidLabeling(d));
        }
        tried += 1;
        let cert = setup.evaluate(hint);
        if cert.passed() {
            return Ok(Certificate { labelings_tried: Some(tried), ..cert });
        }
    }
    let mut perm: Vec<usize> = (1..=d).collect();
    let mut scanned = 0u64;
    while next_permutation(&mut perm) {
        if scanned >= options.labeling_budget {
            break;
        }
        scanned += 1;
        tried += 1;
        let labeling = Labeling::new(perm.clone())?;
        let cert = setup.evaluate(&labeling);
        if cert.passed() {
            return Ok(Certificate { labelings_tried: Some(tried), ..cert });
        }
    }
    Ok(Certificate { labelings_tried: Some(tried), ..first })
}

/// Certificate that `J_G` is symbolic F-split, trying the identity labeling
/// first and, when asked, the hints and then every relabeling within budget.
pub fn certify_symbolic_fsplit(graph: &Graph, options: &CertifyOptions) -> Result<Certificate> {
    let witness = canonical_witness(graph)?;
    let setup = Setup {
        kind: CertificateKind::SymbolicFSplit,
        p: options.p,
        counted: witness.clone(),
        witness,
        cofactor_index: None,
        frobenius_ok: canonical_frobenius_ok(graph.d(), options.p, options.unguarded_frobenius)?,
        primes: enumerate_minimal_primes_bounded(graph, options.subset_bound)?,
    };
    run(&setup, graph.d(), options)
}

/// Certificate for strong F-regularity of the symbolic Rees algebra, with the
/// factor at `cofactor` split off from the witness before counting.
pub fn certify_strong_freg(graph: &Graph, cofactor: usize, options: &CertifyOptions) -> Result<Certificate> {
    let witness = canonical_witness(graph)?;
    let counted = witness.without(cofactor).ok_or(Error::InvalidCofactor(cofactor))?;
    let setup = Setup {
        kind: CertificateKind::StrongFRegular,
        p: options.p,
        counted,
        witness,
        cofactor_index: Some(cofactor),
        frobenius_ok: canonical_frobenius_ok(graph.d(), options.p, options.unguarded_frobenius)?,
        primes: enumerate_minimal_primes_bounded(graph, options.subset_bound)?,
    };
    run(&setup, graph.d(), options)
}

/// Position of `atom` in the canonical witness on `d` vertices.
pub fn cofactor_position(d: usize, atom: &Atom) -> Result<usize> {
    canonical_witness_for(d)?
        .factors()
        .iter()
        .position(|a| a == atom)
        .ok_or_else(|| Error::Parse(format!("{atom} is not a factor of the canonical witness")))
}

/// A family proof's explicit `g` and the exponent `b` it claims for `g ∈ p_S^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofDecomposition {
    pub witness: FactoredWitness,
    pub claimed_order: u32,
    /// Whether `g` divides the canonical witness as a factor multiset. The
    /// join recipe uses `x_1`, which does not; `y_1` has the same order there.
    pub divides_canonical: bool,
}

fn consecutive_minors(from: usize, to: usize) -> impl Iterator<Item = Atom> {
    (from..to).map(|i| Atom::Minor(i, i + 1))
}

/// Reproduces a family proof's factor `g` for the cut set `S` and checks its
/// exponent arithmetic against the height of `p_S`.
pub fn proof_decomposition(family: &FamilyInstance, cut_set: &[usize]) -> Result<ProofDecomposition> {
    let graph = family.graph()?;
    let d = graph.d();
    let mut s = cut_set.to_vec();
    s.sort_unstable();
    s.dedup();
    if !is_cut_set(&graph, &s)? {
        return Err(Error::NotCutSet(s));
    }
    let height = MinimalPrime::from_set(&graph, &s).height;

    let (factors, claimed): (Vec<Atom>, u32) = if s.is_empty() {
        (consecutive_minors(1, d).collect(), d as u32 - 1)
    } else {
        match family {
            FamilyInstance::Multipartite(sizes) => multipartite_recipe(sizes, &s, d)?,
            FamilyInstance::Caterpillar(spec) => caterpillar_recipe(spec, &s, d, height)?,
            FamilyInstance::JoinOfCompletes { n0, parts } => join_recipe(*n0, parts, &s)?,
            other => {
                return Err(Error::FamilyMismatch(format!(
                    "no proof recipe for {other}"
                )))
            }
        }
    };
    if claimed != height {
        return Err(Error::ProofArithmetic { claimed, height });
    }
    let witness = FactoredWitness::new(d, factors)?;
    let divides_canonical = witness.divides(&canonical_witness_for(d)?);
    Ok(ProofDecomposition {
        witness,
        claimed_order: claimed,
        divides_canonical,
    })
}

fn multipartite_recipe(sizes: &[usize], s: &[usize], d: usize) -> Result<(Vec<Atom>, u32)> {
    let mut start = 1;
    let is_part_complement = sizes.iter().any(|&n| {
        let part = start..start + n;
        start += n;
        s.len() == d - n && (1..=d).all(|v| part.contains(&v) != s.contains(&v))
    });
    if !is_part_complement {
        return Err(Error::FamilyMismatch(format!("{s:?} is not the complement of a part")));
    }
    let m = s.len();
    let mut g = Vec::new();
    g.push(if s[0] == 1 { Atom::Y(1) } else { Atom::Minor(s[0] - 1, s[0]) });
    for i in 0..m - 1 {
        g.push(Atom::Minor(s[i], s[i] + 1));
        if s[i] + 1 < s[i + 1] {
            g.push(Atom::Minor(s[i + 1] - 1, s[i + 1]));
        }
    }
    g.push(if s[m - 1] == d { Atom::X(d) } else { Atom::Minor(s[m - 1], s[m - 1] + 1) });
    // g_0 and g_m lie in p_S, each middle g_i in p_S^2
    let b = 1 + 2 * (m as u32 - 1) + 1;
    Ok((g, b))
}

fn caterpillar_recipe(spec: &CaterpillarSpec, s: &[usize], d: usize, height: u32) -> Result<(Vec<Atom>, u32)> {
    let interior = |v: usize| v != 1 && v != d && spec.legs_at(v).is_some();
    if let Some(&v) = s.iter().find(|&&v| !interior(v)) {
        return Err(Error::FamilyMismatch(format!("{v} is not an interior spine vertex")));
    }
    let a = |v: usize| spec.legs_at(v).expect("spine vertex");
    let m = s.len();
    let mut g = Vec::new();
    let mut b: i64 = 0;

    g.extend(consecutive_minors(1, s[0] - 1));
    b += s[0] as i64 - 2;
    let mut delta_sum = 0i64;
    for i in 0..m - 1 {
        let t = s[i] + a(s[i]) + 1;
        let l = s[i + 1] as i64 - t as i64;
        if l >= 2 {
            g.extend(consecutive_minors(t, t + l as usize - 1));
        }
        let delta = (l >= 1) as i64;
        delta_sum += delta;
        b += l - delta;
    }
    let tail_start = s[m - 1] + a(s[m - 1]) + 1;
    g.extend(consecutive_minors(tail_start, d));
    b += d as i64 - tail_start as i64;
    for &si in s {
        g.push(Atom::Minor(si - 1, si));
        g.push(Atom::Minor(si, si + 1));
    }
    b += 2 * m as i64;

    let legs: i64 = s.iter().map(|&v| a(v) as i64).sum();
    let closed_form = m as i64 + d as i64 - (2 + legs + delta_sum);
    if b != closed_form || b < 0 {
        return Err(Error::ProofArithmetic {
            claimed: b.max(0) as u32,
            height,
        });
    }
    g.sort();
    Ok((g, b as u32))
}

fn join_recipe(n0: usize, parts: &[usize], s: &[usize]) -> Result<(Vec<Atom>, u32)> {
    if s != (1..=n0).collect::<Vec<_>>() {
        return Err(Error::FamilyMismatch(format!("{s:?} is not the central clique 1..={n0}")));
    }
    let mut g = vec![Atom::X(1)];
    g.extend(consecutive_minors(1, n0));
    let mut b = 2 + 2 * (n0 as u32 - 1);
    let mut offset = n0;
    for &n in parts {
        g.extend(consecutive_minors(offset + 1, offset + n));
        b += n as u32 - 1;
        offset += n;
    }
    g.push(Atom::Minor(n0, n0 + 1));
    Ok((g, b))
}
